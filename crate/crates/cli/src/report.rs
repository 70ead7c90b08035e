//! Benchmark rows, pivot aggregation and report files.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};

/// One benchmark instance. Timing fields end in `_ms` and are the only
/// schedule-dependent values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub id: usize,
    pub instance: String,
    #[serde(rename = "T")]
    pub horizon: usize,
    pub beta: f64,
    /// Factor name → level label, used for pivots.
    pub factors: BTreeMap<String, String>,
    pub frh_objective: Option<f64>,
    pub oracle_objective: Option<f64>,
    /// Relative shortfall of the heuristic (fraction, not percent).
    pub deviation: Option<f64>,
    pub lp_count: Option<usize>,
    pub frh_ms: f64,
    pub oracle_ms: Option<f64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub factor: String,
    pub level: String,
    pub count: usize,
    /// Rows with an oracle comparison.
    pub compared: usize,
    pub non_optimal: usize,
    pub mean_deviation: Option<f64>,
    pub max_deviation: Option<f64>,
    pub failures: usize,
    pub mean_frh_ms: f64,
    pub mean_oracle_ms: Option<f64>,
}

fn mean(xs: &[f64]) -> Option<f64> {
    (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
}

/// Aggregate the rows of one pivot cell.
pub fn aggregate<'a>(factor: &str, level: &str, rows: impl IntoIterator<Item = &'a Row>) -> Aggregate {
    let rows: Vec<&Row> = rows.into_iter().collect();
    let devs: Vec<f64> = rows.iter().filter_map(|r| r.deviation).collect();
    let frh_ms: Vec<f64> = rows.iter().map(|r| r.frh_ms).collect();
    let oracle_ms: Vec<f64> = rows.iter().filter_map(|r| r.oracle_ms).collect();
    Aggregate {
        factor: factor.to_string(),
        level: level.to_string(),
        count: rows.len(),
        compared: devs.len(),
        non_optimal: devs.iter().filter(|&&d| d > 0.0).count(),
        mean_deviation: mean(&devs),
        max_deviation: devs.iter().copied().reduce(f64::max),
        failures: rows.iter().filter(|r| r.error.is_some()).count(),
        mean_frh_ms: mean(&frh_ms).unwrap_or(0.0),
        mean_oracle_ms: mean(&oracle_ms),
    }
}

/// Overall cell followed by one cell per level of each pivot factor, levels
/// in first-appearance order.
pub fn pivot(rows: &[Row], factors: &[&str]) -> Vec<Aggregate> {
    let mut out = vec![aggregate("all", "all", rows)];
    for &f in factors {
        let mut levels: Vec<&str> = Vec::new();
        for r in rows {
            if let Some(l) = r.factors.get(f) {
                if !levels.contains(&l.as_str()) {
                    levels.push(l);
                }
            }
        }
        for l in levels {
            out.push(aggregate(
                f,
                l,
                rows.iter().filter(|r| r.factors.get(f).map(String::as_str) == Some(l)),
            ));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub scheme: String,
    pub seed: u64,
    pub grid_size: usize,
    pub oracle_max_t: Option<usize>,
    pub rows: Vec<Row>,
    pub pivots: Vec<Aggregate>,
}

fn pct(x: Option<f64>) -> String {
    x.map(|d| format!("{:.2}", d * 100.0)).unwrap_or_default()
}

fn num<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl RunReport {
    /// Writes `report.json` (raw values), `rows.csv` and `pivot.csv`
    /// (deviations in percent, two decimals).
    pub fn write_dir(&self, dir: &Path) -> io::Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(
            dir.join("report.json"),
            serde_json::to_string_pretty(self).map_err(io::Error::other)?,
        )?;

        let mut w = csv::Writer::from_path(dir.join("rows.csv"))?;
        w.write_record([
            "id",
            "instance",
            "T",
            "beta",
            "frh_objective",
            "oracle_objective",
            "deviation_pct",
            "lp_count",
            "frh_ms",
            "oracle_ms",
            "error",
        ])?;
        for r in &self.rows {
            w.write_record([
                r.id.to_string(),
                r.instance.clone(),
                r.horizon.to_string(),
                r.beta.to_string(),
                num(r.frh_objective),
                num(r.oracle_objective),
                pct(r.deviation),
                num(r.lp_count),
                format!("{:.3}", r.frh_ms),
                r.oracle_ms.map(|t| format!("{t:.3}")).unwrap_or_default(),
                r.error.clone().unwrap_or_default(),
            ])?;
        }
        w.flush()?;

        let mut w = csv::Writer::from_path(dir.join("pivot.csv"))?;
        w.write_record([
            "factor",
            "level",
            "count",
            "compared",
            "non_optimal",
            "mean_deviation_pct",
            "max_deviation_pct",
            "failures",
            "mean_frh_ms",
            "mean_oracle_ms",
        ])?;
        for a in &self.pivots {
            w.write_record([
                a.factor.clone(),
                a.level.clone(),
                a.count.to_string(),
                a.compared.to_string(),
                a.non_optimal.to_string(),
                pct(a.mean_deviation),
                pct(a.max_deviation),
                a.failures.to_string(),
                format!("{:.3}", a.mean_frh_ms),
                a.mean_oracle_ms.map(|t| format!("{t:.3}")).unwrap_or_default(),
            ])?;
        }
        w.flush()
    }
}
