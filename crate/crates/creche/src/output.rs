// SPDX-License-Identifier: MIT OR Apache-2.0

//! CSV tables and the JSON run manifest.
//!
//! Floats are written in Rust's shortest round-trip form (`{:?}`, which
//! switches to exponent notation for very small or large values), so equal
//! values always produce equal bytes.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::crossings::CrossingCurves;
use crate::error::{CrecheError, Result};
use crate::harness::{ConsistencyRow, Histogram};
use crate::modelb::TheoryCurves;

pub const TOOL: &str = "creche";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Creates `path` (and its parent directories) for buffered writing.
pub fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CrecheError::io(dir, e))?;
    }
    let f = File::create(path).map_err(|e| CrecheError::io(path, e))?;
    Ok(BufWriter::new(f))
}

/// Writes a table with `write` and flushes it to `path`.
pub fn write_file<F>(path: &Path, write: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
{
    let mut w = create(path)?;
    write(&mut w).and_then(|_| w.flush()).map_err(|e| CrecheError::io(path, e))
}

/// One row per cut `j` in `1..n`. With `change` set, an extra `is_change`
/// column marks the row `j == change`.
pub fn write_curves_csv<W: Write>(w: &mut W, curves: &CrossingCurves, change: Option<usize>) -> std::io::Result<()> {
    write!(w, "j,c_lr,c_rl,psi_lr,psi_rl,psi")?;
    if change.is_some() {
        write!(w, ",is_change")?;
    }
    writeln!(w)?;
    for j in 1..curves.n() {
        write!(
            w,
            "{:?},{:?},{:?},{:?},{:?},{:?}",
            j,
            curves.c_lr()[j],
            curves.c_rl()[j],
            curves.psi_lr_at(j),
            curves.psi_rl_at(j),
            curves.psi_at(j)
        )?;
        if let Some(c) = change {
            write!(w, ",{:?}", u8::from(j == c))?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Empirical curves of one draw next to the theoretical means.
pub fn write_model_b_csv<W: Write>(w: &mut W, curves: &CrossingCurves, theory: &TheoryCurves) -> std::io::Result<()> {
    writeln!(w, "j,c_lr,c_rl,psi_lr,psi_rl,psi,mean_lr,mean_rl,mean_psi")?;
    for j in 1..curves.n() {
        let (m_lr, m_rl) = (theory.mean_lr(j), theory.mean_rl(j));
        writeln!(
            w,
            "{:?},{:?},{:?},{:?},{:?},{:?},{:?},{:?},{:?}",
            j,
            curves.c_lr()[j],
            curves.c_rl()[j],
            curves.psi_lr_at(j),
            curves.psi_rl_at(j),
            curves.psi_at(j),
            m_lr,
            m_rl,
            m_lr.max(m_rl)
        )?;
    }
    Ok(())
}

/// Averaged `psi`, indexed from `j = 1`, optionally next to the theory mean.
pub fn write_mean_curve_csv<W: Write>(w: &mut W, mean_psi: &[f64], theory: Option<&TheoryCurves>) -> std::io::Result<()> {
    match theory {
        Some(_) => writeln!(w, "j,mean_psi,theory_psi")?,
        None => writeln!(w, "j,mean_psi")?,
    }
    for (idx, v) in mean_psi.iter().enumerate() {
        let j = idx + 1;
        match theory {
            Some(t) => writeln!(w, "{:?},{:?},{:?}", j, v, t.mean_lr(j).max(t.mean_rl(j)))?,
            None => writeln!(w, "{j:?},{v:?}")?,
        }
    }
    Ok(())
}

pub fn write_histogram_csv<W: Write>(w: &mut W, hist: &Histogram) -> std::io::Result<()> {
    writeln!(w, "bin_start,bin_end,count")?;
    let bins = hist.counts.len() as f64;
    for (i, c) in hist.counts.iter().enumerate() {
        writeln!(w, "{:?},{:?},{:?}", i as f64 / bins, (i + 1) as f64 / bins, c)?;
    }
    Ok(())
}

pub fn write_consistency_csv<W: Write>(w: &mut W, rows: &[ConsistencyRow]) -> std::io::Result<()> {
    writeln!(w, "s,exceedances,empirical,bound,within_bound")?;
    for r in rows {
        writeln!(w, "{:?},{:?},{:?},{:?},{:?}", r.s, r.exceedances, r.empirical, r.bound, r.within_bound)?;
    }
    Ok(())
}

pub fn write_estimates_csv<W: Write>(w: &mut W, estimates: &[crate::crossings::ChangePointEstimate]) -> std::io::Result<()> {
    writeln!(w, "trial,j_star,gamma_hat,psi_min")?;
    for (t, e) in estimates.iter().enumerate() {
        writeln!(w, "{:?},{:?},{:?},{:?}", t, e.j_star, e.gamma_hat, e.psi_min)?;
    }
    Ok(())
}

/// Summary of a run: what was asked for and what came out.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub spec: serde_json::Value,
    pub seed: u64,
    pub results: serde_json::Value,
    /// Files written next to the manifest.
    pub artifacts: Vec<String>,
}

impl RunManifest {
    pub fn new(spec: serde_json::Value, seed: u64, results: serde_json::Value) -> Self {
        Self {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            spec,
            seed,
            results,
            artifacts: Vec::new(),
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut w = create(path)?;
        serde_json::to_writer_pretty(&mut w, self)?;
        w.write_all(b"\n")
            .and_then(|_| w.flush())
            .map_err(|e| CrecheError::io(path, e))
    }
}
