//! Integrity checks for job directories: content hashes, re-execution of
//! randomly chosen entries, and optional full replay.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use impspace::enumerate::CountTable;
use impspace::explore::{run_position, ComplexityEntry, RunRecord};
use impspace::halting::SampleEntry;
use impspace::{run, VmConfig};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::CliError;
use crate::jobs::{self, FamilyRow};
use crate::manifest::{hash_file, JobConfig, Manifest};
use crate::Progress;

#[derive(Debug, Serialize)]
pub struct AuditReport {
    pub subcommand: String,
    pub artifacts_verified: usize,
    pub spot_checks: usize,
    pub replayed: bool,
}

fn integrity(msg: String) -> CliError {
    CliError::Integrity(msg)
}

pub fn audit(
    dir: &Path,
    spot_checks: usize,
    seed: u64,
    replay: bool,
    workers: usize,
    progress: &Progress,
) -> Result<AuditReport, CliError> {
    let manifest = Manifest::read(dir)?;
    for a in &manifest.artifacts {
        let (bytes, sha) = hash_file(&dir.join(&a.file))?;
        if bytes != a.bytes || sha != a.sha256 {
            return Err(integrity(format!("{} does not match its recorded hash", a.file)));
        }
    }
    progress.note(&format!("{} artifact hashes verified", manifest.artifacts.len()));

    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let job = &manifest.job;
    let has = |file: &str| manifest.artifacts.iter().any(|a| a.file == file);
    let checked = match job.subcommand.as_str() {
        "sweep" if has(jobs::RECORDS) => check_records(job, spot_checks, &mut rng)?,
        "ctm" => check_complexity(job, spot_checks, &mut rng)?,
        "sample" => check_sample(job, spot_checks, &mut rng)?,
        "family" => check_family(job)?,
        _ => 0,
    };
    progress.note(&format!("{checked} entries re-executed"));

    if replay {
        let tmp = tempfile::tempdir().map_err(|e| CliError::io(&std::env::temp_dir(), e))?;
        let mut again = job.clone();
        again.out = tmp.path().to_path_buf();
        again.workers = Some(workers);
        let fresh = jobs::execute(&again, progress)?;
        if fresh != manifest.artifacts {
            let differing: Vec<&str> = manifest
                .artifacts
                .iter()
                .filter(|a| !fresh.contains(a))
                .map(|a| a.file.as_str())
                .collect();
            return Err(integrity(format!("replay differs in {}", differing.join(", "))));
        }
        progress.note("replay is byte-identical");
    }

    Ok(AuditReport {
        subcommand: job.subcommand.clone(),
        artifacts_verified: manifest.artifacts.len(),
        spot_checks: checked,
        replayed: replay,
    })
}

fn reader(path: &Path) -> Result<csv::Reader<BufReader<File>>, CliError> {
    let f = File::open(path).map_err(|e| CliError::io(path, e))?;
    Ok(csv::Reader::from_reader(BufReader::new(f)))
}

fn read_all<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, CliError> {
    reader(path)?
        .deserialize()
        .collect::<Result<Vec<T>, _>>()
        .map_err(|e| CliError::format(path, e))
}

fn pick(rng: &mut ChaCha20Rng, len: usize, k: usize) -> BTreeSet<usize> {
    rand::seq::index::sample(rng, len, k.min(len)).into_iter().collect()
}

fn check_records(job: &JobConfig, k: usize, rng: &mut ChaCha20Rng) -> Result<usize, CliError> {
    let path = job.out.join(jobs::RECORDS);
    let table = CountTable::new(job.max_length);
    let total = u64::try_from(table.cumulative(job.max_length))
        .map_err(|_| integrity("record space exceeds 64-bit positions".into()))?;
    let chosen = pick(rng, total as usize, k);
    let vm = VmConfig::with_budget(job.budget);
    let mut rows = 0u64;
    for (i, rec) in reader(&path)?.deserialize::<RunRecord>().enumerate() {
        let rec = rec.map_err(|e| CliError::format(&path, e))?;
        if rec.position != i as u64 {
            return Err(integrity(format!("record {i} has position {}", rec.position)));
        }
        if chosen.contains(&i) && run_position(&table, rec.position, &vm) != rec {
            return Err(integrity(format!("re-running position {} disagrees with its record", rec.position)));
        }
        rows += 1;
    }
    if rows != total {
        return Err(integrity(format!("{rows} records, expected {total}")));
    }
    Ok(chosen.len())
}

fn check_complexity(job: &JobConfig, k: usize, rng: &mut ChaCha20Rng) -> Result<usize, CliError> {
    let entries: Vec<ComplexityEntry> = read_all(&job.out.join(jobs::COMPLEXITY))?;
    let table = CountTable::new(job.max_length);
    let chosen = pick(rng, entries.len(), k);
    for &i in &chosen {
        let e = &entries[i];
        let p = table.unrank_canonical(&BigUint::from(e.witness))?;
        let r = run(&p, job.budget);
        if !r.halted || r.output() != e.output || p.len() != e.best_length {
            return Err(integrity(format!("witness {} does not reproduce `{}`", e.witness, e.output)));
        }
    }
    Ok(chosen.len())
}

fn check_sample(job: &JobConfig, k: usize, rng: &mut ChaCha20Rng) -> Result<usize, CliError> {
    let entries: Vec<SampleEntry> = read_all(&job.out.join(jobs::SAMPLE))?;
    if Some(entries.len() as u64) != job.n {
        return Err(integrity(format!("sample holds {} entries, job asked for {:?}", entries.len(), job.n)));
    }
    let table = CountTable::new(job.max_length);
    let chosen = pick(rng, entries.len(), k);
    for &i in &chosen {
        let e = &entries[i];
        let p = table.unrank_canonical(&e.position)?;
        let r = run(&p, job.budget);
        if !r.halted || r.steps != e.steps || p.len() != e.length {
            return Err(integrity(format!("sampled position {} does not reproduce", e.position)));
        }
    }
    Ok(chosen.len())
}

fn check_family(job: &JobConfig) -> Result<usize, CliError> {
    let rows: Vec<FamilyRow> = read_all(&job.out.join(jobs::FAMILY))?;
    let (family, n) = (job.family, job.n);
    let (Some(family), Some(n)) = (family, n) else {
        return Err(integrity("family manifest lacks its parameters".into()));
    };
    let expected = jobs::family_rows(family, n, job.to.unwrap_or(n), Some(job.budget));
    if rows != expected {
        return Err(integrity("family rows differ from regenerated programs".into()));
    }
    Ok(rows.len())
}
