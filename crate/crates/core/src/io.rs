//! CSV datasets emitted by the experiments, with matching readers.
//!
//! Floats are written in the shortest form that parses back to the same
//! `f64`, so every file round-trips exactly.

use std::io::{Read, Write};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::magnetodynamics::{SweepPoint, Trajectory};

pub use crate::transport::TmrSweepRow;

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

/// Writes `records` with a header row derived from the field names.
pub fn write_records<W: Write, T: Serialize>(w: W, records: &[T]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    for r in records {
        wtr.serialize(r)?;
    }
    wtr.flush().map_err(|e| Error::Csv(e.to_string()))
}

/// Reads every record of a headed CSV stream.
pub fn read_records<R: Read, T: DeserializeOwned>(r: R) -> Result<Vec<T>> {
    csv::Reader::from_reader(r)
        .deserialize()
        .map(|rec| rec.map_err(Error::from))
        .collect()
}

/// Serializes to an in-memory CSV string.
pub fn to_csv_string<T: Serialize>(records: &[T]) -> Result<String> {
    let mut buf = Vec::new();
    write_records(&mut buf, records)?;
    String::from_utf8(buf).map_err(|e| Error::Csv(e.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRow {
    pub t_s: f64,
    pub mx: f64,
    pub my: f64,
    pub mz: f64,
}

pub fn trajectory_rows(traj: &Trajectory) -> Vec<TrajectoryRow> {
    traj.samples
        .iter()
        .map(|s| TrajectoryRow {
            t_s: s.t,
            mx: s.m.x,
            my: s.m.y,
            mz: s.m.z,
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SwitchProbRow {
    pub v_volts: f64,
    pub alpha_me_over_c: f64,
    pub p_switch: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub n_trials: u64,
}

impl From<&SweepPoint> for SwitchProbRow {
    fn from(p: &SweepPoint) -> Self {
        Self {
            v_volts: p.v_volts,
            alpha_me_over_c: p.alpha_me_over_c,
            p_switch: p.estimate.p,
            ci_low: p.estimate.ci_low,
            ci_high: p.estimate.ci_high,
            n_trials: p.estimate.trials,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualPortRow {
    /// `write` or `read`.
    pub op: String,
    pub row: usize,
    /// Row data, most significant column first.
    pub bits: String,
    #[serde(rename = "write_energy_fJ_per_bit")]
    pub write_energy_fj_per_bit: f64,
    #[serde(rename = "read_energy_fJ_per_bit")]
    pub read_energy_fj_per_bit: f64,
    pub latency_ns: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CamRow {
    pub row: usize,
    pub stored_word: String,
    pub key: String,
    /// `low` (match) or `high`.
    pub matchline: String,
    #[serde(rename = "read_energy_fJ_per_bit")]
    pub read_energy_fj_per_bit: f64,
    #[serde(rename = "write_energy_fJ_per_bit")]
    pub write_energy_fj_per_bit: f64,
}

/// `[true, false, true]` → `"101"`.
pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Inverse of [`bits_to_string`].
pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::invalid(
                "bits",
                format!("unexpected character {other:?} in {s:?}"),
            )),
        })
        .collect()
}
