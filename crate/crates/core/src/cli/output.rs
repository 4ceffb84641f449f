//! CSV and JSON writers. Floats in CSV carry 17 significant digits.

use serde::Serialize;

use super::{CliError, EXIT_CONFIG};
use crate::fields::ProfileSample;

pub const PROFILE_HEADER: [&str; 5] = ["t", "x", "region", "T", "C"];
pub const SWEEP_HEADER: [&str; 6] = [
    "param",
    "value",
    "admissible",
    "front_coefficient",
    "T_k",
    "T_fixed_face",
];

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub param: &'static str,
    pub value: f64,
    pub admissible: bool,
    pub front_coefficient: Option<f64>,
    pub t_k: Option<f64>,
    pub t_fixed_face: Option<f64>,
}

fn write_rows<const N: usize>(
    header: [&str; N],
    rows: impl ExactSizeIterator<Item = [String; N]>,
) -> Result<Vec<u8>, CliError> {
    if rows.len() == 0 {
        return Err(CliError::new(EXIT_CONFIG, "nothing to write: no rows"));
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let io = |e: csv::Error| CliError::new(EXIT_CONFIG, format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    w.into_inner()
        .map_err(|e| CliError::new(EXIT_CONFIG, format!("csv: {e}")))
}

pub fn profile_csv(samples: &[ProfileSample]) -> Result<Vec<u8>, CliError> {
    write_rows(
        PROFILE_HEADER,
        samples.iter().map(|s| {
            [
                fmt_f64(s.t),
                fmt_f64(s.x),
                s.region.as_str().to_string(),
                fmt_f64(s.temperature),
                fmt_f64(s.concentration),
            ]
        }),
    )
}

pub fn sweep_csv(rows: &[SweepRow]) -> Result<Vec<u8>, CliError> {
    write_rows(
        SWEEP_HEADER,
        rows.iter().map(|r| {
            [
                r.param.to_string(),
                fmt_f64(r.value),
                r.admissible.to_string(),
                fmt_opt(r.front_coefficient),
                fmt_opt(r.t_k),
                fmt_opt(r.t_fixed_face),
            ]
        }),
    )
}

pub fn json_bytes(value: &serde_json::Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("JSON values always serialize");
    out.push(b'\n');
    out
}
