use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::request::ScanRequest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Column {
    Real { name: String, values: Vec<f64> },
    Complex { name: String, re: Vec<f64>, im: Vec<f64> },
}

impl Column {
    pub fn real(name: &str, values: Vec<f64>) -> Self {
        Column::Real { name: name.into(), values }
    }

    pub fn complex(name: &str, values: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let (re, im) = values.into_iter().unzip();
        Column::Complex { name: name.into(), re, im }
    }

    pub fn len(&self) -> usize {
        match self {
            Column::Real { values, .. } => values.len(),
            Column::Complex { re, .. } => re.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Column::Real { values, .. } => values.iter().all(|x| x.is_finite()),
            Column::Complex { re, im, .. } => re.iter().chain(im).all(|x| x.is_finite()),
        }
    }

    /// CSV header names; complex columns split into `_re` and `_im`.
    fn headers(&self) -> Vec<String> {
        match self {
            Column::Real { name, .. } => vec![name.clone()],
            Column::Complex { name, .. } => vec![format!("{name}_re"), format!("{name}_im")],
        }
    }

    fn cells(&self, row: usize) -> Vec<f64> {
        match self {
            Column::Real { values, .. } => vec![values[row]],
            Column::Complex { re, im, .. } => vec![re[row], im[row]],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub request: ScanRequest,
    pub version: String,
    pub tolerances: BTreeMap<String, f64>,
    /// Scan-specific scalars such as fitted scale constants.
    pub extra: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub metadata: Metadata,
    pub columns: Vec<Column>,
}

impl ScanResult {
    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Column::len)
    }
}

/// 17 significant digits in scientific notation, independent of locale.
fn number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn emit(result: &ScanResult, format: Format) -> Vec<u8> {
    match format {
        Format::Csv => {
            let mut out = String::new();
            let header: Vec<String> = result.columns.iter().flat_map(Column::headers).collect();
            out.push_str(&header.join(","));
            out.push('\n');
            for row in 0..result.rows() {
                let cells: Vec<String> = result
                    .columns
                    .iter()
                    .flat_map(|c| c.cells(row))
                    .map(number)
                    .collect();
                writeln!(out, "{}", cells.join(",")).expect("writing to a String");
            }
            out.into_bytes()
        }
        Format::Json => {
            let mut bytes = serde_json::to_vec_pretty(result).expect("finite values serialize");
            bytes.push(b'\n');
            bytes
        }
    }
}
