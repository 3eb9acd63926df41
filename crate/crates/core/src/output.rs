//! CSV emission for solutions, convergence tables and stability samples.

use std::fs::File;
use std::path::{Path, PathBuf};

use crate::driver::{ErrorReport, Grid, Snapshot, Trajectory};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// 17 significant digits, enough to round-trip an `f64`.
pub fn full(v: f64) -> String {
    format!("{v:.16e}")
}

fn create(path: &Path) -> Result<csv::Writer<File>> {
    let file = File::create(path).map_err(|e| Error::Io { path: path.display().to_string(), source: e })?;
    Ok(csv::Writer::from_writer(file))
}

fn finish(mut w: csv::Writer<File>, path: &Path) -> Result<()> {
    w.flush().map_err(|e| Error::Io { path: path.display().to_string(), source: e })
}

/// Columns `x, <components...>`, one row per node.
pub fn write_solution_csv<T: Real>(grid: &Grid, names: &[String], snap: &Snapshot<T>, path: &Path) -> Result<()> {
    let m = names.len();
    let mut w = create(path)?;
    w.write_record(std::iter::once("x").chain(names.iter().map(String::as_str)))?;
    for (i, x) in grid.nodes().into_iter().enumerate() {
        let row = std::iter::once(full(x)).chain(snap.data[i * m..(i + 1) * m].iter().map(|v| full(v.to_f64_lossy())));
        w.write_record(row)?;
    }
    finish(w, path)
}

/// One CSV per snapshot in `dir`, named `<stem>_t<time>.csv`.
pub fn emit_solution_csv<T: Real>(traj: &Trajectory<T>, dir: &Path, stem: &str) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io { path: dir.display().to_string(), source: e })?;
    let mut paths = Vec::with_capacity(traj.snapshots.len());
    for snap in &traj.snapshots {
        let path = dir.join(format!("{stem}_t{:.6}.csv", snap.time));
        write_solution_csv(&traj.grid, &traj.component_names, snap, &path)?;
        paths.push(path);
    }
    Ok(paths)
}

/// Columns `n, dx, l1_error, order`; the order is empty where undefined.
pub fn emit_convergence_table(report: &ErrorReport, path: &Path) -> Result<()> {
    if report.rows.is_empty() {
        return Err(Error::config("convergence report is empty"));
    }
    let mut w = create(path)?;
    w.write_record(["n", "dx", "l1_error", "order"])?;
    for r in &report.rows {
        let order = r.order.map(full).unwrap_or_default();
        w.write_record([r.n.to_string(), full(r.dx), full(r.error), order])?;
    }
    finish(w, path)
}

/// Columns `c, h2_p1, ..., h2_p<pmax>`.
pub fn emit_stability_csv(rows: &[Vec<f64>], pmax: usize, path: &Path) -> Result<()> {
    let mut w = create(path)?;
    let header: Vec<String> = std::iter::once("c".to_string()).chain((1..=pmax).map(|p| format!("h2_p{p}"))).collect();
    w.write_record(&header)?;
    for r in rows {
        w.write_record(r.iter().map(|v| full(*v)))?;
    }
    finish(w, path)
}

/// Plain-text table in the layout `dx  error  order`.
pub fn format_report(report: &ErrorReport) -> String {
    let mut s = format!("{}\n{:>8} {:>10} {:>12} {:>7}\n", report.label, "n", "dx", "L1 error", "order");
    for r in &report.rows {
        let order = r.order.map(|o| format!("{o:.2}")).unwrap_or_default();
        s.push_str(&format!("{:>8} {:>10.4} {:>12.2e} {:>7}\n", r.n, r.dx, r.error, order));
    }
    s
}
