//! Jobs that write an artifact directory described by a manifest.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use impspace::enumerate::CountTable;
use impspace::explore::{
    family_program, sweep, ComplexityTable, Family, HaltingCensus, Histograms, RunRecord,
    SweepConfig,
};
use impspace::halting::{confidence_from_sample, draw_halting_sample, SampleConfig};
use impspace::{run, Bitstring};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::manifest::{create, write_json, Artifact, HashWriter, JobConfig, Manifest};
use crate::Progress;

pub const RECORDS: &str = "records.csv";
pub const CENSUS: &str = "census.json";
pub const HISTOGRAMS: &str = "histograms.json";
pub const COMPLEXITY: &str = "complexity.csv";
pub const CTM_SUMMARY: &str = "ctm.json";
pub const SAMPLE: &str = "sample.csv";
pub const SAMPLE_SIDECAR: &str = "sample.json";
pub const FAMILY: &str = "family.csv";

/// Runs `job`, writes its artifacts and manifest into `job.out`.
pub fn run_job(job: &JobConfig, progress: &Progress) -> Result<Manifest, CliError> {
    job.validate()?;
    fs::create_dir_all(&job.out).map_err(|e| CliError::io(&job.out, e))?;
    let artifacts = execute(job, progress)?;
    let manifest = Manifest::new(job, artifacts);
    manifest.write(&job.out)?;
    Ok(manifest)
}

/// Writes the artifacts of `job` without a manifest.
pub fn execute(job: &JobConfig, progress: &Progress) -> Result<Vec<Artifact>, CliError> {
    match job.subcommand.as_str() {
        "sweep" => sweep_job(job, progress),
        "ctm" => ctm_job(job, progress),
        "sample" => sample_job(job, progress),
        "family" => family_job(job),
        other => Err(CliError::Usage(format!("`{other}` does not produce a job directory"))),
    }
}

fn csv_writer(dir: &Path, file: &str) -> Result<csv::Writer<HashWriter<std::io::BufWriter<fs::File>>>, CliError> {
    Ok(csv::Writer::from_writer(create(dir, file)?))
}

fn finish_csv<W: Write>(w: csv::Writer<HashWriter<W>>, dir: &Path, file: &str) -> Result<Artifact, CliError> {
    let path = dir.join(file);
    let inner = w.into_inner().map_err(|e| CliError::io(&path, e.into_error()))?;
    inner.finish(file).map_err(|e| CliError::io(&path, e))
}

fn space_size(job: &JobConfig) -> Result<u64, CliError> {
    let table = CountTable::new(job.max_length);
    u64::try_from(table.cumulative(job.max_length))
        .map_err(|_| impspace::explore::ExploreError::SpaceTooLarge(job.max_length).into())
}

/// Sweeps the job's space, handing every record to `each`.
fn sweep_with<F>(job: &JobConfig, progress: &Progress, mut each: F) -> Result<(), CliError>
where
    F: FnMut(&RunRecord) -> Result<(), CliError>,
{
    let total = space_size(job)?;
    let cfg = SweepConfig::new(job.max_length, job.budget, job.worker_count());
    let mut seen = 0u64;
    let mut failure = None;
    sweep(&cfg, |r| {
        if failure.is_some() {
            return;
        }
        if let Err(e) = each(&r) {
            failure = Some(e);
        }
        seen += 1;
        if seen % (1 << 20) == 0 {
            progress.note(&format!("swept {seen} of {total} programs"));
        }
    })?;
    failure.map_or(Ok(()), Err)
}

#[derive(Serialize, Deserialize)]
pub struct CensusLine {
    pub halting: u64,
    pub non_halting: u64,
    pub halting_percent: f64,
    pub non_halting_percent: f64,
}

impl From<impspace::explore::CensusRow> for CensusLine {
    fn from(r: impspace::explore::CensusRow) -> Self {
        CensusLine {
            halting: r.halting,
            non_halting: r.non_halting,
            halting_percent: r.halting_percent(),
            non_halting_percent: r.non_halting_percent(),
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct CensusDoc {
    pub job: JobConfig,
    pub lengths: BTreeMap<u32, CensusLine>,
    pub total: CensusLine,
}

#[derive(Serialize)]
struct HistogramDoc<'a> {
    job: JobConfig,
    #[serde(flatten)]
    histograms: &'a Histograms,
}

fn sweep_job(job: &JobConfig, progress: &Progress) -> Result<Vec<Artifact>, CliError> {
    let dir = &job.out;
    let mut records = match job.records.unwrap_or(true) {
        true => Some(csv_writer(dir, RECORDS)?),
        false => None,
    };
    let mut census = HaltingCensus::new();
    let mut hist = Histograms::new();
    let records_path = dir.join(RECORDS);
    sweep_with(job, progress, |r| {
        census.push(r);
        hist.push(r);
        if let Some(w) = records.as_mut() {
            w.serialize(r).map_err(|e| CliError::format(&records_path, e))?;
        }
        Ok(())
    })?;
    census.check_complete(&CountTable::new(job.max_length))?;

    let mut artifacts = Vec::new();
    if let Some(w) = records {
        artifacts.push(finish_csv(w, dir, RECORDS)?);
    }
    let mut total = impspace::explore::CensusRow::default();
    for row in census.rows.values() {
        total.halting += row.halting;
        total.non_halting += row.non_halting;
    }
    let doc = CensusDoc {
        job: job.portable(),
        lengths: census.rows.iter().map(|(l, r)| (*l, (*r).into())).collect(),
        total: total.into(),
    };
    artifacts.push(write_json(dir, CENSUS, &doc)?);
    artifacts.push(write_json(dir, HISTOGRAMS, &HistogramDoc { job: job.portable(), histograms: &hist })?);
    Ok(artifacts)
}

#[derive(Serialize, Deserialize)]
pub struct CtmSummary {
    pub job: JobConfig,
    pub total_halting: u64,
    pub distinct_outputs: usize,
    /// Halting programs whose output is the empty string.
    pub empty_output_producers: u64,
}

/// Sweeps the job's space into a complexity table.
pub fn build_complexity(job: &JobConfig, progress: &Progress) -> Result<ComplexityTable, CliError> {
    let mut table = ComplexityTable::new();
    sweep_with(job, progress, |r| {
        table.push(r);
        Ok(())
    })?;
    Ok(table)
}

fn ctm_job(job: &JobConfig, progress: &Progress) -> Result<Vec<Artifact>, CliError> {
    let table = build_complexity(job, progress)?;
    write_complexity(job, &table)
}

pub fn write_complexity(job: &JobConfig, table: &ComplexityTable) -> Result<Vec<Artifact>, CliError> {
    let dir = &job.out;
    let mut w = csv_writer(dir, COMPLEXITY)?;
    for e in table.sorted() {
        w.serialize(e).map_err(|err| CliError::format(&dir.join(COMPLEXITY), err))?;
    }
    let csv_artifact = finish_csv(w, dir, COMPLEXITY)?;
    let summary = CtmSummary {
        job: job.portable(),
        total_halting: table.total_halting(),
        distinct_outputs: table.len(),
        empty_output_producers: table.get(&Bitstring::empty()).map_or(0, |e| e.producers),
    };
    Ok(vec![csv_artifact, write_json(dir, CTM_SUMMARY, &summary)?])
}

#[derive(Serialize, Deserialize)]
pub struct SampleSidecar {
    pub job: JobConfig,
    pub space_size: String,
    pub n: u64,
    pub rejections: u64,
    pub halting_rate: f64,
    pub threshold: u64,
    pub quantile: u64,
    /// `exp(−2nλ²)` for the drawn sample size.
    pub confidence_delta: f64,
    pub per_length: BTreeMap<u32, u64>,
}

fn sample_job(job: &JobConfig, progress: &Progress) -> Result<Vec<Artifact>, CliError> {
    let params = job.params.clone().expect("validated");
    let n = match job.n {
        Some(n) => n,
        None => params.sample_size()?,
    };
    let cfg = SampleConfig {
        max_length: job.max_length,
        n,
        probe_budget: job.budget,
        seed: job.seed.expect("validated"),
        shards: job.shards.unwrap_or(impspace::halting::DEFAULT_SHARDS),
        params: params.clone(),
    };
    progress.note(&format!("drawing {n} halting programs of length at most {}", job.max_length));
    let pool = crate::pool(job.worker_count())?;
    let sample = pool.install(|| draw_halting_sample(&cfg))?;

    let dir = &job.out;
    let mut w = csv_writer(dir, SAMPLE)?;
    for e in &sample.entries {
        w.serialize(e).map_err(|err| CliError::format(&dir.join(SAMPLE), err))?;
    }
    let csv_artifact = finish_csv(w, dir, SAMPLE)?;
    let sidecar = SampleSidecar {
        job: job.portable(),
        space_size: sample.space_size.to_string(),
        n,
        rejections: sample.rejections,
        halting_rate: sample.halting_rate(),
        threshold: sample.threshold()?,
        quantile: sample.quantile()?,
        confidence_delta: confidence_from_sample(n, &params.lambda)?,
        per_length: sample.per_length.clone(),
    };
    Ok(vec![csv_artifact, write_json(dir, SAMPLE_SIDECAR, &sidecar)?])
}

/// One generated family member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub family: Family,
    pub n: u64,
    pub program_length: u32,
    pub halted: Option<bool>,
    pub steps: Option<u64>,
    pub output_length: Option<usize>,
    /// Empty unless the program ran and halted.
    pub output: String,
    pub program: String,
}

pub fn family_rows(family: Family, from: u64, to: u64, execute: Option<u64>) -> Vec<FamilyRow> {
    (from..=to)
        .map(|n| {
            let p = family_program(family, n);
            let mut row = FamilyRow {
                family,
                n,
                program_length: p.len(),
                halted: None,
                steps: None,
                output_length: None,
                output: String::new(),
                program: p.to_string(),
            };
            if let Some(budget) = execute {
                let r = run(&p, budget);
                let out = r.output();
                row.halted = Some(r.halted);
                row.steps = Some(r.steps);
                row.output_length = Some(if r.halted { out.len() } else { 0 });
                if r.halted {
                    row.output = out.to_string();
                }
            }
            row
        })
        .collect()
}

fn family_job(job: &JobConfig) -> Result<Vec<Artifact>, CliError> {
    let n = job.n.expect("validated");
    let rows = family_rows(job.family.expect("validated"), n, job.to.unwrap_or(n), Some(job.budget));
    let mut w = csv_writer(&job.out, FAMILY)?;
    for r in &rows {
        w.serialize(r).map_err(|e| CliError::format(&job.out.join(FAMILY), e))?;
    }
    Ok(vec![finish_csv(w, &job.out, FAMILY)?])
}
