use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;

use branequant::poisson::{Brane, BraneJson, PoissonJson, PoissonStructure};
use branequant::polyalg::{PolyJson, QPoly};

/// Marks failures caused by bad inputs (exit status 2).
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub fn input_err(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?;
    // serde_json errors carry line and column.
    serde_json::from_str(&text).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

pub fn load_poisson(path: &Path) -> Result<PoissonStructure> {
    let j: PoissonJson = read_json(path)?;
    PoissonStructure::from_json(&j).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

pub fn load_brane(path: &Path, dim: usize) -> Result<Brane> {
    let j: BraneJson = read_json(path)?;
    j.to_brane(dim).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

pub fn load_poly(path: &Path, dim: usize) -> Result<QPoly> {
    let j: PolyJson = read_json(path)?;
    let p: QPoly = j.to_poly().map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    if p.dim() != dim {
        return Err(input_err(format!("{}: dimension {} does not match π (dimension {dim})", path.display(), p.dim())));
    }
    Ok(p)
}

/// Writes pretty JSON to `out` or standard output.
pub fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(p) => fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                // A closed reader (e.g. `| head`) is not an error worth reporting.
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => r.context("writing standard output"),
            }
        }
    }
}
