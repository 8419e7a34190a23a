//! Price/return panel ingestion: CSV with a `date,<asset>,...` header, one
//! row per trading day. Assets must have complete, strictly positive price
//! series; offenders are dropped with a warning rather than failing the run.

use std::io::Read;

use chrono::NaiveDate;

use crate::error::{Error, Result};

/// Price history for N assets over T+1 days (so T returns are available).
#[derive(Clone, Debug)]
pub struct PricePanel {
    asset_ids: Vec<String>,
    dates: Vec<NaiveDate>,
    /// N rows × (T+1) columns, strictly positive.
    prices: Vec<Vec<f64>>,
}

/// Log-return history for N assets over T days.
#[derive(Clone, Debug)]
pub struct ReturnPanel {
    asset_ids: Vec<String>,
    /// Date of each return observation (the later day of the price pair).
    dates: Vec<NaiveDate>,
    /// N rows × T columns, finite.
    returns: Vec<Vec<f64>>,
}

impl PricePanel {
    /// Validates the panel invariants: ≥2 assets, ≥3 dates (so ≥2 returns),
    /// strictly increasing dates, complete strictly positive series.
    pub fn new(asset_ids: Vec<String>, dates: Vec<NaiveDate>, prices: Vec<Vec<f64>>) -> Result<Self> {
        if asset_ids.len() < 2 {
            return Err(Error::Invalid(format!(
                "panel needs at least 2 complete assets, got {}",
                asset_ids.len()
            )));
        }
        if dates.len() < 3 {
            return Err(Error::Invalid(format!(
                "panel needs at least 3 dates, got {}",
                dates.len()
            )));
        }
        if !dates.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Invalid("panel dates are not strictly increasing".into()));
        }
        if prices.len() != asset_ids.len() {
            return Err(Error::Dimension(format!(
                "{} asset ids but {} price rows",
                asset_ids.len(),
                prices.len()
            )));
        }
        for (id, row) in asset_ids.iter().zip(&prices) {
            if row.len() != dates.len() {
                return Err(Error::Dimension(format!(
                    "asset {id}: {} prices for {} dates",
                    row.len(),
                    dates.len()
                )));
            }
            if let Some(bad) = row.iter().find(|p| !(p.is_finite() && **p > 0.0)) {
                return Err(Error::Invalid(format!("asset {id}: non-positive price {bad}")));
            }
        }
        Ok(Self { asset_ids, dates, prices })
    }

    pub fn asset_ids(&self) -> &[String] {
        &self.asset_ids
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn prices(&self) -> &[Vec<f64>] {
        &self.prices
    }
}

impl ReturnPanel {
    /// Validates: ≥2 assets, ≥2 observations, finite entries, increasing dates.
    pub fn new(asset_ids: Vec<String>, dates: Vec<NaiveDate>, returns: Vec<Vec<f64>>) -> Result<Self> {
        if asset_ids.len() < 2 {
            return Err(Error::Invalid(format!(
                "panel needs at least 2 complete assets, got {}",
                asset_ids.len()
            )));
        }
        if dates.len() < 2 {
            return Err(Error::Invalid(format!(
                "return panel needs at least 2 observations, got {}",
                dates.len()
            )));
        }
        if !dates.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Invalid("panel dates are not strictly increasing".into()));
        }
        if returns.len() != asset_ids.len() {
            return Err(Error::Dimension(format!(
                "{} asset ids but {} return rows",
                asset_ids.len(),
                returns.len()
            )));
        }
        for (id, row) in asset_ids.iter().zip(&returns) {
            if row.len() != dates.len() {
                return Err(Error::Dimension(format!(
                    "asset {id}: {} returns for {} dates",
                    row.len(),
                    dates.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::Invalid(format!("asset {id}: non-finite return value")));
            }
        }
        Ok(Self { asset_ids, dates, returns })
    }

    pub fn asset_ids(&self) -> &[String] {
        &self.asset_ids
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn returns(&self) -> &[Vec<f64>] {
        &self.returns
    }

    /// Number of assets N.
    pub fn n_assets(&self) -> usize {
        self.returns.len()
    }

    /// Number of observations T.
    pub fn n_obs(&self) -> usize {
        self.dates.len()
    }

    /// Cross-asset mean return per day, the ⟨X⟩ series event detection runs on.
    pub fn daily_mean_returns(&self) -> Vec<f64> {
        let n = self.n_assets() as f64;
        (0..self.n_obs())
            .map(|t| self.returns.iter().map(|row| row[t]).sum::<f64>() / n)
            .collect()
    }
}

/// Parsed CSV cell grid: header names + date column + numeric columns with
/// holes marked None. Shared by the price and return loaders.
type CsvGrid = (Vec<String>, Vec<NaiveDate>, Vec<Vec<Option<f64>>>);

fn read_csv_grid(source: impl Read) -> Result<CsvGrid> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(source);

    let headers = reader
        .headers()
        .map_err(|e| Error::Parse(format!("CSV header: {e}")))?
        .clone();
    if headers.len() < 2 || !headers[0].eq_ignore_ascii_case("date") {
        return Err(Error::Parse(
            "CSV header must be `date,<asset1>,<asset2>,...`".into(),
        ));
    }
    let asset_ids: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();

    let mut dates = Vec::new();
    // columns[i][t]: value of asset i on day t, None for blank/unparseable
    let mut columns: Vec<Vec<Option<f64>>> = vec![Vec::new(); asset_ids.len()];
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(format!("CSV row {}: {e}", line + 2)))?;
        if record.len() != asset_ids.len() + 1 {
            return Err(Error::Parse(format!(
                "CSV row {}: {} fields, expected {}",
                line + 2,
                record.len(),
                asset_ids.len() + 1
            )));
        }
        let date = NaiveDate::parse_from_str(&record[0], "%Y-%m-%d")
            .map_err(|e| Error::Parse(format!("CSV row {}: date `{}`: {e}", line + 2, &record[0])))?;
        dates.push(date);
        for (i, cell) in record.iter().skip(1).enumerate() {
            let value = if cell.is_empty() {
                None
            } else {
                match cell.parse::<f64>() {
                    Ok(v) if v.is_finite() => Some(v),
                    _ => {
                        return Err(Error::Parse(format!(
                            "CSV row {}: value `{cell}` for {}",
                            line + 2,
                            asset_ids[i]
                        )))
                    }
                }
            };
            columns[i].push(value);
        }
    }
    Ok((asset_ids, dates, columns))
}

/// Loads a price panel, dropping (with a warning) any asset whose series has
/// a missing or non-positive value — only complete series are analyzable.
pub fn load_price_panel(source: impl Read) -> Result<PricePanel> {
    let (asset_ids, dates, columns) = read_csv_grid(source)?;
    let mut kept_ids = Vec::new();
    let mut kept_rows = Vec::new();
    for (id, col) in asset_ids.iter().zip(columns) {
        if col.iter().all(|v| matches!(v, Some(p) if *p > 0.0)) {
            kept_ids.push(id.clone());
            kept_rows.push(col.into_iter().map(Option::unwrap).collect());
        } else {
            log::warn!("asset {id}: incomplete or non-positive price series, dropped");
        }
    }
    PricePanel::new(kept_ids, dates, kept_rows)
}

/// Loads a return panel (values are already returns, any finite sign allowed);
/// assets with holes are dropped with a warning.
pub fn load_return_panel(source: impl Read) -> Result<ReturnPanel> {
    let (asset_ids, dates, columns) = read_csv_grid(source)?;
    let mut kept_ids = Vec::new();
    let mut kept_rows = Vec::new();
    for (id, col) in asset_ids.iter().zip(columns) {
        if col.iter().all(Option::is_some) {
            kept_ids.push(id.clone());
            kept_rows.push(col.into_iter().map(Option::unwrap).collect());
        } else {
            log::warn!("asset {id}: incomplete return series, dropped");
        }
    }
    ReturnPanel::new(kept_ids, dates, kept_rows)
}

/// Log returns X_it = ln(P_{i,t+1}/P_{i,t}); each return is dated by the
/// later day of its price pair.
pub fn log_returns(p: &PricePanel) -> ReturnPanel {
    let returns: Vec<Vec<f64>> = p
        .prices
        .iter()
        .map(|row| row.windows(2).map(|w| (w[1] / w[0]).ln()).collect())
        .collect();
    ReturnPanel {
        asset_ids: p.asset_ids.clone(),
        dates: p.dates[1..].to_vec(),
        returns,
    }
}
