use std::fs::{self, File};
use std::io::{self, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use impspace::explore::Family;
use impspace::halting::EstimationParams;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::args::Format;
use crate::error::CliError;

pub const MANIFEST: &str = "manifest.json";

/// Everything needed to regenerate a job directory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobConfig {
    pub subcommand: String,
    pub max_length: u32,
    pub budget: u64,
    /// Pool size; never affects artifact bytes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<EstimationParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shards: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub records: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to: Option<u64>,
    pub format: Format,
    /// Output directory; kept out of the artifacts so a replay elsewhere is
    /// byte-identical.
    #[serde(skip)]
    pub out: PathBuf,
}

impl JobConfig {
    pub fn new(subcommand: &str, max_length: u32, budget: u64, out: PathBuf) -> Self {
        JobConfig {
            subcommand: subcommand.to_string(),
            max_length,
            budget,
            workers: None,
            seed: None,
            params: None,
            n: None,
            shards: None,
            records: None,
            family: None,
            to: None,
            format: Format::Csv,
            out,
        }
    }

    /// The configuration as embedded in artifacts.
    pub fn portable(&self) -> JobConfig {
        JobConfig { workers: None, ..self.clone() }
    }

    pub fn worker_count(&self) -> usize {
        self.workers.unwrap_or(1)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let fail = |m: &str| Err(CliError::Usage(m.to_string()));
        if self.budget == 0 {
            return fail("--budget must be at least 1");
        }
        if self.workers == Some(0) {
            return fail("--workers must be at least 1");
        }
        match self.subcommand.as_str() {
            "sample" => {
                if self.n == Some(0) {
                    return fail("--n must be at least 1");
                }
                if self.shards == Some(0) {
                    return fail("--shards must be at least 1");
                }
                if self.params.is_none() || self.seed.is_none() {
                    return fail("sampling needs estimation parameters and a seed");
                }
                if self.max_length == 0 {
                    return fail("--max-length must be at least 1 for sampling");
                }
            }
            "sweep" | "ctm" => {}
            "family" => {
                if self.family.is_none() || self.n.is_none() {
                    return fail("family jobs need a family and --n");
                }
                if self.to.is_some_and(|to| Some(to) < self.n) {
                    return fail("--to must not be below --n");
                }
            }
            other => return Err(CliError::Usage(format!("`{other}` does not produce a job directory"))),
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifact {
    pub file: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub job: JobConfig,
    pub artifacts: Vec<Artifact>,
}

impl Manifest {
    pub fn new(job: &JobConfig, artifacts: Vec<Artifact>) -> Self {
        Manifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            job: job.clone(),
            artifacts,
        }
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        let path = dir.join(MANIFEST);
        let mut text = serde_json::to_string_pretty(self).map_err(|e| CliError::format(&path, e))?;
        text.push('\n');
        fs::write(&path, text).map_err(|e| CliError::io(&path, e))
    }

    pub fn read(dir: &Path) -> Result<Self, CliError> {
        let path = dir.join(MANIFEST);
        let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
        let mut m: Manifest = serde_json::from_str(&text).map_err(|e| CliError::format(&path, e))?;
        m.job.out = dir.to_path_buf();
        Ok(m)
    }
}

/// Writer that hashes and counts everything passing through it.
pub struct HashWriter<W> {
    inner: W,
    hasher: Sha256,
    bytes: u64,
}

impl<W: Write> HashWriter<W> {
    pub fn new(inner: W) -> Self {
        HashWriter { inner, hasher: Sha256::new(), bytes: 0 }
    }

    pub fn finish(mut self, file: &str) -> io::Result<Artifact> {
        self.inner.flush()?;
        Ok(Artifact { file: file.to_string(), bytes: self.bytes, sha256: hex::encode(self.hasher.finalize()) })
    }
}

impl<W: Write> Write for HashWriter<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.hasher.update(&buf[..n]);
        self.bytes += n as u64;
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

pub fn create(dir: &Path, file: &str) -> Result<HashWriter<io::BufWriter<File>>, CliError> {
    let path = dir.join(file);
    let f = File::create(&path).map_err(|e| CliError::io(&path, e))?;
    Ok(HashWriter::new(io::BufWriter::new(f)))
}

/// Writes a pretty JSON document followed by a newline.
pub fn write_json<T: Serialize>(dir: &Path, file: &str, value: &T) -> Result<Artifact, CliError> {
    let path = dir.join(file);
    let mut w = create(dir, file)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| CliError::format(&path, e))?;
    w.write_all(b"\n").map_err(|e| CliError::io(&path, e))?;
    w.finish(file).map_err(|e| CliError::io(&path, e))
}

pub fn hash_file(path: &Path) -> Result<(u64, String), CliError> {
    let f = File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut r = BufReader::with_capacity(1 << 16, f);
    let mut hasher = Sha256::new();
    let mut buf = vec![0u8; 1 << 16];
    let mut bytes = 0u64;
    loop {
        let n = r.read(&mut buf).map_err(|e| CliError::io(path, e))?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
        bytes += n as u64;
    }
    Ok((bytes, hex::encode(hasher.finalize())))
}
