//! Dual-port ME-MTJ memory: one write port and one read port per bit-cell, so
//! a row can be read while a different row is written in the same window.
//!
//! Bit `true` is stored as AP (positive write voltage), `false` as P.

use serde::{Deserialize, Serialize};

use crate::device::{
    EnergyKind, EnergyReport, EnergyTerm, Fidelity, MeMtjDevice, DEFAULT_READ_TIME,
    DEFAULT_READ_VOLTAGE, DEFAULT_WRITE_TIME, DEFAULT_WRITE_VOLTAGE,
};
use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::magnetodynamics::{trial_rng, SimConfig};
use crate::transport::{MagneticConfig, SeriesTransistor};

/// Current comparator: P when the cell current exceeds the reference.
pub fn sense(i_cell: f64, i_ref: f64) -> MagneticConfig {
    if i_cell > i_ref {
        MagneticConfig::Parallel
    } else {
        MagneticConfig::Antiparallel
    }
}

pub fn bit_to_config(bit: bool) -> MagneticConfig {
    if bit {
        MagneticConfig::Antiparallel
    } else {
        MagneticConfig::Parallel
    }
}

pub fn config_to_bit(config: MagneticConfig) -> bool {
    config == MagneticConfig::Antiparallel
}

/// Electrical operating point of a [`DualPortArray`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ArrayParams {
    /// Write voltage magnitude on the WBLs, V.
    pub v_write: f64,
    /// Read voltage on the RBLs, V.
    pub v_read: f64,
    pub t_write: f64,
    pub t_read: f64,
    pub write_w_over_l: f64,
    pub read_w_over_l: f64,
    pub transistor: SeriesTransistor,
    pub fidelity: Fidelity,
}

impl Default for ArrayParams {
    fn default() -> Self {
        Self {
            v_write: DEFAULT_WRITE_VOLTAGE,
            v_read: DEFAULT_READ_VOLTAGE,
            t_write: DEFAULT_WRITE_TIME,
            t_read: DEFAULT_READ_TIME,
            write_w_over_l: 4.0,
            read_w_over_l: 4.0,
            transistor: SeriesTransistor::default(),
            fidelity: Fidelity::Behavioral,
        }
    }
}

impl ArrayParams {
    pub fn validate(&self) -> Result<()> {
        require_positive("v_write", self.v_write)?;
        require_non_negative("v_read", self.v_read)?;
        require_positive("t_write", self.t_write)?;
        require_non_negative("t_read", self.t_read)?;
        require_positive("write_w_over_l", self.write_w_over_l)?;
        require_positive("read_w_over_l", self.read_w_over_l)?;
        require_non_negative("transistor.r_unit", self.transistor.r_unit)
    }
}

/// Data, energy and latency of one row operation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AccessResult {
    pub data: Vec<bool>,
    pub energy: EnergyReport,
    /// s.
    pub latency: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualPortArray {
    rows: usize,
    cols: usize,
    cells: Vec<MeMtjDevice>,
    pub params: ArrayParams,
    pub r_write_tx: f64,
    pub r_read_tx: f64,
    /// Sense reference current, A.
    pub i_ref: f64,
    /// Integration settings and seed for stochastic writes.
    pub sim: SimConfig,
    ops: u64,
}

impl DualPortArray {
    /// `rows × cols` copies of `cell`, all storing 0 (P).
    pub fn new(rows: usize, cols: usize, cell: MeMtjDevice, params: ArrayParams) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::invalid(
                "rows/cols",
                "array needs at least one row and column",
            ));
        }
        params.validate()?;
        let mut cell = cell;
        cell.set_state(MagneticConfig::Parallel);
        let r_write_tx = params.transistor.resistance(params.write_w_over_l);
        let r_read_tx = params.transistor.resistance(params.read_w_over_l);
        let i_ref = cell.reference_current(params.v_read, r_read_tx);
        Ok(Self {
            rows,
            cols,
            cells: vec![cell; rows * cols],
            params,
            r_write_tx,
            r_read_tx,
            i_ref,
            sim: SimConfig::default(),
            ops: 0,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cell(&self, row: usize, col: usize) -> &MeMtjDevice {
        &self.cells[row * self.cols + col]
    }

    fn check_row(&self, row: usize) -> Result<()> {
        if row < self.rows {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                what: "row",
                index: row,
                size: self.rows,
            })
        }
    }

    /// Stored bits of every row without performing a read.
    pub fn stored(&self) -> Vec<Option<Vec<bool>>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.cell(r, c).state().map(config_to_bit))
                    .collect()
            })
            .collect()
    }

    /// Drives every cell of `row` with ±V_write according to `data`.
    pub fn write_row(&mut self, row: usize, data: &[bool]) -> Result<AccessResult> {
        self.check_row(row)?;
        if data.len() != self.cols {
            return Err(Error::WidthMismatch {
                expected: self.cols,
                got: data.len(),
            });
        }
        let op = self.ops;
        self.ops += 1;
        let p = self.params;
        let cols = self.cols;
        let mut terms = Vec::with_capacity(cols);
        for (c, &bit) in data.iter().enumerate() {
            let v = if bit { p.v_write } else { -p.v_write };
            let mut rng = trial_rng(self.sim.seed, (op << 32) | (row * cols + c) as u64);
            let cell = &mut self.cells[row * cols + c];
            let w = cell.write_pulse_with(v, p.t_write, &self.sim, p.fidelity, &mut rng);
            terms.push(EnergyTerm {
                label: format!("write[{row},{c}]"),
                kind: EnergyKind::Write,
                energy: w.energy,
            });
        }
        Ok(AccessResult {
            data: data.to_vec(),
            energy: EnergyReport::from_terms(cols, p.t_write, terms),
            latency: p.t_write,
        })
    }

    /// Senses every cell of `row`; fails if any cell is unsettled.
    pub fn read_row(&self, row: usize) -> Result<AccessResult> {
        self.check_row(row)?;
        let p = self.params;
        let mut data = Vec::with_capacity(self.cols);
        let mut terms = Vec::with_capacity(self.cols);
        for c in 0..self.cols {
            let r =
                self.cell(row, c)
                    .read_against(p.v_read, p.t_read, self.r_read_tx, self.i_ref)?;
            data.push(config_to_bit(r.state));
            terms.push(EnergyTerm {
                label: format!("read[{row},{c}]"),
                kind: EnergyKind::Read,
                energy: r.energy,
            });
        }
        Ok(AccessResult {
            data,
            energy: EnergyReport::from_terms(self.cols, p.t_read, terms),
            latency: p.t_read,
        })
    }

    /// Writes `write_row` and reads `read_row` in one window of
    /// max(t_write, t_read). Both results carry the window as latency.
    pub fn simultaneous_access(
        &mut self,
        write_row: usize,
        data: &[bool],
        read_row: usize,
    ) -> Result<(AccessResult, AccessResult)> {
        self.check_row(write_row)?;
        self.check_row(read_row)?;
        if write_row == read_row {
            return Err(Error::PortConflict(write_row));
        }
        // The read port only sees row `read_row`, which the write never touches.
        let mut read = self.read_row(read_row)?;
        let mut write = self.write_row(write_row, data)?;
        let window = self.window();
        read.latency = window;
        write.latency = window;
        Ok((write, read))
    }

    /// Length of one dual-port window, s.
    pub fn window(&self) -> f64 {
        self.params.t_write.max(self.params.t_read)
    }

    /// Row operations per second when every window carries a read and a write.
    pub fn dual_port_throughput(&self) -> f64 {
        2.0 / self.window()
    }

    /// Row operations per second when reads and writes share one port and
    /// each still occupies a full window.
    pub fn single_port_throughput(&self) -> f64 {
        1.0 / self.window()
    }

    /// Worst sense margin min(|I_P − I_ref|, |I_AP − I_ref|), A.
    pub fn sense_margin(&self) -> f64 {
        let cell = &self.cells[0];
        let ip = cell.nominal_current(MagneticConfig::Parallel, self.params.v_read, self.r_read_tx);
        let iap = cell.nominal_current(
            MagneticConfig::Antiparallel,
            self.params.v_read,
            self.r_read_tx,
        );
        (ip - self.i_ref).abs().min((iap - self.i_ref).abs())
    }
}
