//! Sweep CSV and run manifests.

use std::path::{Path, PathBuf};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use pvote_core::analytic::{Comparison, ComparisonPoint};
use pvote_core::exact::to_decimal_string;
use pvote_core::sim::AvailabilityRecord;

use crate::source::FunctionSource;

pub const CSV_HEADER: [&str; 7] = [
    "pe",
    "module_avail",
    "majority_avail",
    "prob_avail",
    "majority_errors",
    "prob_errors",
    "trials",
];

pub const MAJORITY_LABEL: &str = "majority";
pub const PROB_LABEL: &str = "prob";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvRow {
    pub pe: String,
    pub module_avail: String,
    pub majority_avail: String,
    pub prob_avail: String,
    pub majority_errors: String,
    pub prob_errors: String,
    pub trials: u64,
}

fn cells(row: &CsvRow) -> [String; 7] {
    [
        row.pe.clone(),
        row.module_avail.clone(),
        row.majority_avail.clone(),
        row.prob_avail.clone(),
        row.majority_errors.clone(),
        row.prob_errors.clone(),
        row.trials.to_string(),
    ]
}

/// Rows for a Monte Carlo sweep. `pe` holds the exact grid values the
/// records were produced from, in the same order.
pub fn simulation_rows(pe: &[BigRational], records: &[AvailabilityRecord]) -> Vec<CsvRow> {
    pe.iter()
        .zip(records)
        .map(|(p, rec)| {
            let maj = rec.voter(MAJORITY_LABEL).expect("majority voter in sweep");
            let prob = rec.voter(PROB_LABEL).expect("probabilistic voter in sweep");
            CsvRow {
                pe: to_decimal_string(p),
                module_avail: rec.module.availability().to_string(),
                majority_avail: maj.availability().to_string(),
                prob_avail: prob.availability().to_string(),
                majority_errors: maj.errors().to_string(),
                prob_errors: prob.errors().to_string(),
                trials: rec.module.total,
            }
        })
        .collect()
}

/// Rows for exact curves. Error columns are expected errors over
/// `error_trials` trials; the `trials` column is 0 to mark analytic output.
pub fn analytic_rows(comparison: &Comparison, error_trials: u64) -> Vec<CsvRow> {
    let scale = BigRational::from_integer(error_trials.into());
    let errors =
        |a: &BigRational| to_decimal_string(&(&scale * (BigRational::from_integer(1.into()) - a)));
    comparison
        .points
        .iter()
        .map(
            |ComparisonPoint {
                 p,
                 module,
                 probabilistic,
                 majority,
             }| CsvRow {
                pe: to_decimal_string(p),
                module_avail: to_decimal_string(module),
                majority_avail: to_decimal_string(majority),
                prob_avail: to_decimal_string(probabilistic),
                majority_errors: errors(majority),
                prob_errors: errors(probabilistic),
                trials: 0,
            },
        )
        .collect()
}

pub fn write_csv(rows: &[CsvRow]) -> anyhow::Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(cells(row))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// A parsed sweep CSV row, keeping the original cell text.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub text: Vec<String>,
    pub values: Vec<f64>,
}

pub fn read_csv(bytes: &[u8]) -> Result<Vec<SweepRow>, String> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(bytes);
    let header = r.headers().map_err(|e| format!("unreadable header: {e}"))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(format!(
            "unexpected header `{}`, expected `{}`",
            header.iter().collect::<Vec<_>>().join(","),
            CSV_HEADER.join(",")
        ));
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| format!("line {line}: {e}"))?;
        if rec.len() != CSV_HEADER.len() {
            return Err(format!(
                "line {line}: {} fields, expected {}",
                rec.len(),
                CSV_HEADER.len()
            ));
        }
        let values = rec
            .iter()
            .zip(CSV_HEADER)
            .map(|(cell, col)| {
                cell.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| format!("line {line}: column {col}: `{cell}` is not a number"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(SweepRow {
            text: rec.iter().map(|c| c.trim().to_owned()).collect(),
            values,
        });
    }
    if rows.is_empty() {
        return Err("no data rows".into());
    }
    Ok(rows)
}

/// Everything needed to regenerate an output file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<FunctionSource>,
    /// The resolved function in `.tt` form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replicas: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tie_policy: Option<String>,
    pub pe: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_owned(),
            version: env!("CARGO_PKG_VERSION").to_owned(),
            command: command.to_owned(),
            source: None,
            function: None,
            replicas: None,
            tie_policy: None,
            pe: Vec::new(),
            trials: None,
            seed: None,
            input: None,
            outputs: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

/// `<out>.manifest.json`
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_csv() {
        assert!(read_csv(b"a,b\n1,2\n").is_err());
        let header = CSV_HEADER.join(",");
        assert!(read_csv(format!("{header}\n").as_bytes()).is_err());
        assert!(read_csv(format!("{header}\n0.1,1,1,1,0,0\n").as_bytes()).is_err());
        assert!(read_csv(format!("{header}\n0.1,x,1,1,0,0,5\n").as_bytes()).is_err());
        let ok = read_csv(format!("{header}\n0.1,0.9,0.97,0.96,3,4,5000\n").as_bytes()).unwrap();
        assert_eq!(ok[0].values[6], 5000.0);
    }

    #[test]
    fn manifest_path_appends_suffix() {
        assert_eq!(
            manifest_path(Path::new("out/sweep.csv")),
            PathBuf::from("out/sweep.csv.manifest.json")
        );
    }
}
