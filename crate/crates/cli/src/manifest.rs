//! Run manifests: enough to reproduce a run's output byte for byte.

use std::path::Path;
use std::time::Duration;

use clap::Parser;
use prepdyn::{Caps, Error, Result};
use serde::{Deserialize, Serialize};

use crate::args::{Cli, Command};

#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Arguments after the program name, without the manifest flag.
    pub argv: Vec<String>,
    /// The parsed command, for reading; replay uses `argv`.
    pub inputs: serde_json::Value,
    pub caps: Caps,
    pub version: String,
    pub wall_time_ms: f64,
}

/// Drops `--manifest <file>` and `--manifest=<file>` from argv.
fn replayable_args(argv: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in argv.iter().skip(1) {
        if skip {
            skip = false;
        } else if a == "--manifest" {
            skip = true;
        } else if !a.starts_with("--manifest=") {
            out.push(a.clone());
        }
    }
    out
}

pub fn write(path: &Path, argv: &[String], command: &Command, caps: &Caps, elapsed: Duration) -> Result<()> {
    let manifest = RunManifest {
        command: command.name().to_string(),
        argv: replayable_args(argv),
        inputs: serde_json::to_value(command).expect("json"),
        caps: *caps,
        version: env!("CARGO_PKG_VERSION").to_string(),
        wall_time_ms: elapsed.as_secs_f64() * 1e3,
    };
    let text = serde_json::to_string_pretty(&manifest).expect("json");
    std::fs::write(path, text + "\n").map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))
}

pub fn load(path: &Path) -> Result<Cli> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    let manifest: RunManifest =
        serde_json::from_str(&text).map_err(|e| Error::input(format!("{} is not a run manifest: {e}", path.display())))?;
    if manifest.argv.iter().any(|a| a == "--replay" || a.starts_with("--replay=")) {
        return Err(Error::input("a manifest cannot replay another manifest"));
    }
    let argv = std::iter::once("prepdyn".to_string()).chain(manifest.argv);
    let cli = Cli::try_parse_from(argv).map_err(|e| Error::input(format!("manifest arguments do not parse: {e}")))?;
    if cli.caps.to_caps() != manifest.caps {
        return Err(Error::input("manifest caps disagree with its arguments"));
    }
    Ok(cli)
}
