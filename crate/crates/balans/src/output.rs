//! Report serialization: CSV and JSON writers with atomic file replacement
//! and lossless float formatting.
//!
//! Floats in CSV are printed as `{:.16e}` (17 significant digits), which
//! round-trips every f64 bit-exactly; JSON uses serde_json's shortest
//! round-trip representation. Files are written to a temporary sibling and
//! renamed into place so readers never observe a half-written report.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use chrono::NaiveDate;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pipeline::rolling::{RollingSeries, WindowRecord};

static TEMP_COUNTER: AtomicU64 = AtomicU64::new(0);

/// Lossless float cell: 17 significant digits.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt_cell(v: Option<f64>) -> String {
    v.map(fmt_float).unwrap_or_default()
}

fn parse_opt_cell(s: &str) -> Result<Option<f64>> {
    if s.is_empty() {
        return Ok(None);
    }
    s.parse::<f64>()
        .map(Some)
        .map_err(|e| Error::Parse(format!("float cell `{s}`: {e}")))
}

/// Writes `contents` to `path` atomically (temp sibling + rename).
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| Error::Invalid(format!("output path {} has no file name", path.display())))?;
    let tmp = dir.join(format!(
        ".{}.tmp-{}-{}",
        name.to_string_lossy(),
        std::process::id(),
        TEMP_COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    fs::write(&tmp, contents)?;
    if let Err(e) = fs::rename(&tmp, path) {
        let _ = fs::remove_file(&tmp);
        return Err(e.into());
    }
    Ok(())
}

/// Serializes `value` as pretty JSON and writes it atomically.
pub fn write_json_atomic<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value)
        .map_err(|e| Error::Invalid(format!("JSON serialization: {e}")))?;
    bytes.push(b'\n');
    write_atomic(path, &bytes)
}

/// Stable series.csv column order (documented in the README):
/// `index,end_date,n_assets,kappa_weighted,kappa_binary,ratio,ratio_approx,
/// ratio_approx_rel_err,amri_<h>_<p>…,crf_<m>…,avg_corr,lambda_sum_<k>…,error`.
pub fn series_csv_bytes(series: &RollingSeries) -> Result<Vec<u8>> {
    let mut header = vec![
        "index".to_string(),
        "end_date".to_string(),
        "n_assets".to_string(),
        "kappa_weighted".to_string(),
        "kappa_binary".to_string(),
        "ratio".to_string(),
        "ratio_approx".to_string(),
        "ratio_approx_rel_err".to_string(),
    ];
    for (h, p) in &series.amri_params {
        header.push(format!("amri_{h}_{p}"));
    }
    for m in &series.crf_params {
        header.push(format!("crf_{m}"));
    }
    header.push("avg_corr".to_string());
    for k in 1..=series.top_k {
        header.push(format!("lambda_sum_{k}"));
    }
    header.push("error".to_string());

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).map_err(|e| Error::Parse(format!("CSV write: {e}")))?;
    for r in &series.records {
        let mut row = vec![
            r.index.to_string(),
            r.end_date.format("%Y-%m-%d").to_string(),
            r.n_assets.to_string(),
            opt_cell(r.kappa_weighted),
            opt_cell(r.kappa_binary),
            opt_cell(r.ratio),
            opt_cell(r.ratio_approx),
            opt_cell(r.ratio_approx_rel_err),
        ];
        row.extend(r.amri.iter().map(|v| opt_cell(*v)));
        row.extend(r.crf.iter().map(|v| opt_cell(*v)));
        row.push(opt_cell(r.avg_corr));
        row.extend(r.lambda_partial.iter().map(|v| opt_cell(*v)));
        row.push(r.error.clone().unwrap_or_default());
        w.write_record(&row).map_err(|e| Error::Parse(format!("CSV write: {e}")))?;
    }
    w.into_inner().map_err(|e| Error::Parse(format!("CSV writer: {e}")))
}

/// Parses a series.csv back into records; the inverse of
/// [`series_csv_bytes`] up to the configuration metadata.
pub fn parse_series_csv(source: impl Read) -> Result<Vec<WindowRecord>> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(source);
    let header = reader
        .headers()
        .map_err(|e| Error::Parse(format!("series header: {e}")))?
        .clone();
    let names: Vec<&str> = header.iter().collect();
    let n_amri = names.iter().filter(|n| n.starts_with("amri_")).count();
    let n_crf = names.iter().filter(|n| n.starts_with("crf_")).count();
    let n_lambda = names.iter().filter(|n| n.starts_with("lambda_sum_")).count();
    let expected_cols = 8 + n_amri + n_crf + 1 + n_lambda + 1;
    if names.len() != expected_cols {
        return Err(Error::Parse(format!(
            "series header has {} columns, expected {expected_cols}",
            names.len()
        )));
    }

    let mut out = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(format!("series row {}: {e}", line + 2)))?;
        if record.len() != expected_cols {
            return Err(Error::Parse(format!(
                "series row {}: {} fields, expected {expected_cols}",
                line + 2,
                record.len()
            )));
        }
        let mut cells = record.iter();
        let mut next = || cells.next().expect("field count checked");
        let index: usize = next()
            .parse()
            .map_err(|e| Error::Parse(format!("series row {}: index: {e}", line + 2)))?;
        let end_date = NaiveDate::parse_from_str(next(), "%Y-%m-%d")
            .map_err(|e| Error::Parse(format!("series row {}: end_date: {e}", line + 2)))?;
        let n_assets: usize = next()
            .parse()
            .map_err(|e| Error::Parse(format!("series row {}: n_assets: {e}", line + 2)))?;
        let kappa_weighted = parse_opt_cell(next())?;
        let kappa_binary = parse_opt_cell(next())?;
        let ratio = parse_opt_cell(next())?;
        let ratio_approx = parse_opt_cell(next())?;
        let ratio_approx_rel_err = parse_opt_cell(next())?;
        let mut amri = Vec::with_capacity(n_amri);
        for _ in 0..n_amri {
            amri.push(parse_opt_cell(next())?);
        }
        let mut crf = Vec::with_capacity(n_crf);
        for _ in 0..n_crf {
            crf.push(parse_opt_cell(next())?);
        }
        let avg_corr = parse_opt_cell(next())?;
        let mut lambda_partial = Vec::with_capacity(n_lambda);
        for _ in 0..n_lambda {
            lambda_partial.push(parse_opt_cell(next())?);
        }
        let err_cell = next();
        let error = if err_cell.is_empty() { None } else { Some(err_cell.to_string()) };
        out.push(WindowRecord {
            index,
            end_date,
            n_assets,
            kappa_weighted,
            kappa_binary,
            ratio,
            ratio_approx,
            ratio_approx_rel_err,
            amri,
            crf,
            avg_corr,
            lambda_partial,
            error,
        });
    }
    Ok(out)
}

/// Two-column curve CSV (`x,density`) for a KDE curve.
pub fn curve_csv_bytes(grid: &[f64], values: &[f64]) -> Result<Vec<u8>> {
    if grid.len() != values.len() {
        return Err(Error::Dimension(format!(
            "curve has {} grid points but {} values",
            grid.len(),
            values.len()
        )));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["x", "density"]).map_err(|e| Error::Parse(format!("CSV write: {e}")))?;
    for (x, d) in grid.iter().zip(values) {
        w.write_record([fmt_float(*x), fmt_float(*d)])
            .map_err(|e| Error::Parse(format!("CSV write: {e}")))?;
    }
    w.into_inner().map_err(|e| Error::Parse(format!("CSV writer: {e}")))
}

/// Parses a two-column float CSV written by [`curve_csv_bytes`].
pub fn parse_curve_csv(source: impl Read) -> Result<Vec<(f64, f64)>> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(source);
    let mut out = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(format!("curve row {}: {e}", line + 2)))?;
        if record.len() != 2 {
            return Err(Error::Parse(format!("curve row {}: expected 2 fields", line + 2)));
        }
        let x: f64 = record[0]
            .parse()
            .map_err(|e| Error::Parse(format!("curve row {}: {e}", line + 2)))?;
        let d: f64 = record[1]
            .parse()
            .map_err(|e| Error::Parse(format!("curve row {}: {e}", line + 2)))?;
        out.push((x, d));
    }
    Ok(out)
}

/// Writes series.csv and series.json into `dir`; returns the two paths.
pub fn write_series(dir: &Path, series: &RollingSeries) -> Result<(PathBuf, PathBuf)> {
    let csv_path = dir.join("series.csv");
    write_atomic(&csv_path, &series_csv_bytes(series)?)?;
    let json_path = dir.join("series.json");
    write_json_atomic(&json_path, series)?;
    Ok((csv_path, json_path))
}
