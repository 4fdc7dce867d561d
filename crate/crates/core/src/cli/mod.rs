//! The `compseries` command-line tool.
//!
//! Every command takes its numeric parameters as flags, optionally merged
//! over a JSON `--config` file, and emits one artifact (CSV, JSON or text)
//! to standard output or atomically to `--output`. Artifacts echo the
//! effective configuration, so a run can be reproduced from its output.
//!
//! Exit status: 0 on success or a bounded verdict, 1 when `branch-verify`
//! finds a mismatch, 2 and 3 for inconclusive and diverging verdicts, 64 for
//! usage errors, 65 for invalid data, 69 for resource caps and 74 for I/O
//! failures.

mod args;
mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::Parser;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

pub use args::{Cli, Format, GlobalArgs};

use crate::error::{Error, Result};

/// Exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const MISMATCH: i32 = 1;
    pub const USAGE: i32 = 64;
    pub const DATA: i32 = 65;
    pub const RESOURCE: i32 = 69;
    pub const IO: i32 = 74;
}

/// Exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage(_) => exit::USAGE,
        Error::Resource(_) => exit::RESOURCE,
        Error::Io(_) => exit::IO,
        Error::Domain(_)
        | Error::OutOfRange { .. }
        | Error::Shape(_)
        | Error::Parse(_)
        | Error::Json(_) => exit::DATA,
    }
}

/// A finished command: the artifact body and the status to exit with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub artifact: String,
    pub status: i32,
}

/// Parse `args` (including the program name), run, write the artifact and
/// return the exit status. Errors are reported on standard error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::USAGE } else { exit::OK };
        }
    };
    match run(&cli).and_then(|out| emit(&cli.global, &out.artifact).map(|()| out.status)) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("compseries: {e}");
            exit_code(&e)
        }
    }
}

/// Execute a parsed command line, honouring `--threads`.
pub fn run(cli: &Cli) -> Result<Outcome> {
    match cli.global.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(usize::from(t))
            .build()
            .map_err(|e| Error::Resource(format!("cannot start {t} worker threads: {e}")))?
            .install(|| commands::dispatch(cli)),
        None => commands::dispatch(cli),
    }
}

fn emit(global: &GlobalArgs, artifact: &str) -> Result<()> {
    match &global.output {
        Some(path) => write_atomic(path, artifact.as_bytes()),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(artifact.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Write through a temporary file in the target directory, then rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Overlay the non-null values of `flags` on the config file's values.
///
/// Keys of the file must be parameters of the command.
pub(crate) fn merge_config<T>(flags: &T, config: Option<&Value>) -> Result<T>
where
    T: Serialize + DeserializeOwned + Default,
{
    let Some(config) = config else {
        return Ok(serde_json::from_value(serde_json::to_value(flags)?)?);
    };
    let Value::Object(file) = config else {
        return Err(Error::Usage("--config must hold a JSON object".into()));
    };
    let Value::Object(known) = serde_json::to_value(T::default())? else {
        unreachable!("argument structs serialize to objects");
    };
    if let Some(k) = file.keys().find(|k| !known.contains_key(*k)) {
        return Err(Error::Usage(format!("unknown key '{k}' in --config for this command")));
    }
    let Value::Object(cli) = serde_json::to_value(flags)? else {
        unreachable!("argument structs serialize to objects");
    };
    let mut merged: Map<String, Value> = file.clone();
    for (k, v) in cli {
        if !v.is_null() {
            merged.insert(k, v);
        }
    }
    serde_json::from_value(Value::Object(merged))
        .map_err(|e| Error::Usage(format!("invalid --config value: {e}")))
}

/// Drop null entries so the echoed configuration lists only what was set.
pub(crate) fn without_nulls(v: Value) -> Value {
    match v {
        Value::Object(m) => Value::Object(
            m.into_iter()
                .filter(|(_, v)| !v.is_null())
                .map(|(k, v)| (k, without_nulls(v)))
                .collect(),
        ),
        other => other,
    }
}

pub(crate) fn required<T>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::Usage(format!("missing required parameter --{name}")))
}
