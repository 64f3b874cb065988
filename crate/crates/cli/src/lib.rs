//! Command-line driver: argument parsing, job directories with hashed
//! manifests, and audits of those directories.

pub mod args;
pub mod audit;
pub mod error;
pub mod jobs;
pub mod manifest;

use std::io::Write;
use std::path::Path;

use impspace::enumerate::{rank_base, rank_canonical, unrank_base, unrank_canonical};
use impspace::explore::trivial_bound;
use impspace::halting::EstimationParams;
use impspace::{parse, run as run_program, Bitstring, CountTable};
use num_bigint::BigUint;
use serde_json::json;

use args::{Cli, Command, Format, Order};
pub use error::CliError;
use manifest::JobConfig;

/// Progress messages on stderr.
#[derive(Clone, Copy, Debug, Default)]
pub struct Progress {
    pub quiet: bool,
}

impl Progress {
    pub fn note(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }
}

pub(crate) fn pool(workers: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    writeln!(out, "{text}").map_err(|e| CliError::io(Path::new("<stdout>"), e))
}

fn parse_position(text: &str) -> Result<BigUint, CliError> {
    text.parse()
        .map_err(|_| CliError::Usage(format!("`{text}` is not a non-negative decimal integer")))
}

fn base_order(order: Order) -> bool {
    order.base && !order.canonical
}

/// Executes a parsed command line, writing results to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let progress = Progress { quiet: cli.quiet };
    match cli.command {
        Command::Count { max_length, format } => count(max_length, format, out),
        Command::Unrank { position, order } => {
            let k = parse_position(&position)?;
            let p = if base_order(order) { unrank_base(&k) } else { unrank_canonical(&k) };
            emit(out, &p.to_string())
        }
        Command::Rank { program, order } => {
            let p = parse(&program)?;
            let k = if base_order(order) { rank_base(&p) } else { rank_canonical(&p) };
            emit(out, &k.to_string())
        }
        Command::Run { program, budget } => {
            if budget == 0 {
                return Err(CliError::Usage("--budget must be at least 1".into()));
            }
            let r = run_program(&parse(&program)?, budget);
            let output = if r.halted { r.output().to_string() } else { String::new() };
            emit(out, &json!({ "halted": r.halted, "steps": r.steps, "output": output }).to_string())
        }
        Command::Sample(a) => {
            let params = EstimationParams::parse(&a.epsilon, &a.lambda, &a.delta)?;
            let mut job = JobConfig::new("sample", a.max_length, a.budget, a.out);
            job.n = Some(match a.n {
                Some(n) => n,
                None => params.sample_size()?,
            });
            job.params = Some(params);
            job.seed = Some(a.seed);
            job.shards = Some(a.shards);
            job.workers = Some(a.workers.resolve());
            let m = jobs::run_job(&job, &progress)?;
            summarize(out, &m)
        }
        Command::Sweep(a) => {
            let mut job = JobConfig::new("sweep", a.max_length, a.budget, a.out);
            job.records = Some(!a.no_records);
            job.workers = Some(a.workers.resolve());
            let m = jobs::run_job(&job, &progress)?;
            summarize(out, &m)
        }
        Command::Ctm(a) => {
            let queries = a
                .queries
                .iter()
                .map(|q| q.parse::<Bitstring>().map_err(|e| CliError::Usage(format!("bad query `{q}`: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let mut job = JobConfig::new("ctm", a.max_length, a.budget, a.out);
            job.workers = Some(a.workers.resolve());
            job.validate()?;
            std::fs::create_dir_all(&job.out).map_err(|e| CliError::io(&job.out, e))?;
            let table = jobs::build_complexity(&job, &progress)?;
            let artifacts = jobs::write_complexity(&job, &table)?;
            let m = manifest::Manifest::new(&job, artifacts);
            m.write(&job.out)?;
            for q in &queries {
                let ap = table.probability(q)?;
                let best = table.get(q).map(|e| e.best_length);
                emit(
                    out,
                    &json!({
                        "output": q.to_string(),
                        "producers": ap.producers,
                        "total_halting": ap.total_halting,
                        "probability": ap.probability,
                        "complexity_bits": ap.complexity_bits,
                        "best_length": best,
                        "trivial_length": trivial_bound(q).1,
                    })
                    .to_string(),
                )?;
            }
            if queries.is_empty() {
                summarize(out, &m)?;
            }
            Ok(())
        }
        Command::Family(a) => {
            let to = a.to.unwrap_or(a.n);
            if to < a.n {
                return Err(CliError::Usage("--to must not be below --n".into()));
            }
            if let Some(dir) = a.out {
                let mut job = JobConfig::new("family", 0, a.budget, dir);
                job.family = Some(a.family);
                job.n = Some(a.n);
                job.to = a.to;
                let m = jobs::run_job(&job, &progress)?;
                return summarize(out, &m);
            }
            if a.budget == 0 {
                return Err(CliError::Usage("--budget must be at least 1".into()));
            }
            let rows = jobs::family_rows(a.family, a.n, to, a.run.then_some(a.budget));
            match a.format {
                Format::Json => {
                    for r in &rows {
                        emit(out, &serde_json::to_string(r).expect("rows serialize"))?;
                    }
                    Ok(())
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    for r in &rows {
                        w.serialize(r).map_err(|e| CliError::format(Path::new("<stdout>"), e))?;
                    }
                    let bytes = w.into_inner().map_err(|e| CliError::io(Path::new("<stdout>"), e.into_error()))?;
                    out.write_all(&bytes).map_err(|e| CliError::io(Path::new("<stdout>"), e))
                }
            }
        }
        Command::Audit(a) => {
            let report = audit::audit(&a.dir, a.spot_checks, a.seed, a.replay, a.workers.resolve(), &progress)?;
            emit(out, &serde_json::to_string_pretty(&report).expect("report serializes"))
        }
    }
}

fn summarize(out: &mut dyn Write, m: &manifest::Manifest) -> Result<(), CliError> {
    for a in &m.artifacts {
        emit(out, &format!("{}  {}", a.sha256, a.file))?;
    }
    Ok(())
}

fn count(max_length: u32, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let table = CountTable::new(max_length);
    match format {
        Format::Csv => {
            emit(out, "length,count,cumulative")?;
            for l in 0..=max_length {
                emit(out, &format!("{l},{},{}", table.programs(l), table.cumulative(l)))?;
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = (0..=max_length)
                .map(|l| {
                    json!({
                        "length": l,
                        "count": table.programs(l).to_string(),
                        "cumulative": table.cumulative(l).to_string(),
                    })
                })
                .collect();
            emit(out, &serde_json::Value::Array(rows).to_string())?;
        }
    }
    Ok(())
}
