//! Append-only store of past requirement → method decisions.
//!
//! On disk the store is JSON Lines: one self-contained record per line.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::{MethodId, Registry, RegistryError};
use crate::requirements::MethodRequirements;

/// Environment variable naming the store file when no path is passed.
pub const EXPERIENCE_PATH_ENV: &str = "MCDM_EXPERIENCE_PATH";

static WRITE_LOCK: Mutex<()> = Mutex::new(());

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperienceRecord {
    pub fingerprint: String,
    pub method_id: MethodId,
    /// Nanoseconds since the Unix epoch, strictly increasing within a store.
    pub timestamp: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExperienceBase {
    records: Vec<ExperienceRecord>,
}

impl ExperienceBase {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn records(&self) -> &[ExperienceRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Appends a record in memory, stamped after every existing record.
    pub fn record(
        &mut self,
        reqs: &MethodRequirements,
        method: &MethodId,
        registry: &Registry,
    ) -> Result<ExperienceRecord, RegistryError> {
        if !registry.contains(method) {
            return Err(RegistryError::UnknownMethod(method.clone()));
        }
        let record = ExperienceRecord {
            fingerprint: reqs.fingerprint(),
            method_id: method.clone(),
            timestamp: next_timestamp(self.records.iter().map(|r| r.timestamp).max()),
        };
        self.records.push(record.clone());
        Ok(record)
    }

    pub fn push(&mut self, record: ExperienceRecord) {
        self.records.push(record);
    }
}

fn next_timestamp(last: Option<u64>) -> u64 {
    let now = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_nanos() as u64);
    match last {
        Some(last) if last >= now => last + 1,
        _ => now,
    }
}

/// Most recent method recorded for exactly these requirements. On equal
/// timestamps the record stored later wins.
pub fn select_by_experience(reqs: &MethodRequirements, base: &ExperienceBase) -> Option<MethodId> {
    let fingerprint = reqs.fingerprint();
    base.records
        .iter()
        .enumerate()
        .filter(|(_, r)| r.fingerprint == fingerprint)
        .max_by_key(|(pos, r)| (r.timestamp, *pos))
        .map(|(_, r)| r.method_id.clone())
}

/// File-backed experience store.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperienceStore {
    path: PathBuf,
}

impl ExperienceStore {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into() }
    }

    /// Uses `path` when given, otherwise the path in `MCDM_EXPERIENCE_PATH`.
    pub fn resolve(path: Option<&Path>) -> Option<Self> {
        path.map(Path::to_path_buf)
            .or_else(|| std::env::var_os(EXPERIENCE_PATH_ENV).map(PathBuf::from))
            .map(Self::new)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Reads every record. A missing file is an empty store.
    pub fn load(&self) -> Result<ExperienceBase, RegistryError> {
        let unreadable =
            |e: String| RegistryError::StoreUnreadable(format!("{}: {e}", self.path.display()));
        let file = match std::fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(ExperienceBase::new()),
            Err(e) => return Err(unreadable(e.to_string())),
        };
        let mut base = ExperienceBase::new();
        for (n, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| unreadable(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let record = serde_json::from_str(&line)
                .map_err(|e| unreadable(format!("line {}: {e}", n + 1)))?;
            base.push(record);
        }
        Ok(base)
    }

    /// Appends one record. Writers within a process are serialized; each
    /// record is written with a single append call.
    pub fn append(
        &self,
        reqs: &MethodRequirements,
        method: &MethodId,
        registry: &Registry,
    ) -> Result<ExperienceRecord, RegistryError> {
        let _guard = WRITE_LOCK
            .lock()
            .unwrap_or_else(|poisoned| poisoned.into_inner());
        let mut base = self.load()?;
        let record = base.record(reqs, method, registry)?;
        let mut line = serde_json::to_string(&record).expect("records always serialize");
        line.push('\n');
        let unwritable = |e: std::io::Error| {
            RegistryError::StoreUnwritable(format!("{}: {e}", self.path.display()))
        };
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(unwritable)?;
        file.write_all(line.as_bytes()).map_err(unwritable)?;
        Ok(record)
    }
}

/// Persists a decision so later runs on the same requirements can reuse it.
pub fn record_experience(
    reqs: &MethodRequirements,
    chosen: &MethodId,
    registry: &Registry,
    store: &ExperienceStore,
) -> Result<ExperienceRecord, RegistryError> {
    store.append(reqs, chosen, registry)
}
