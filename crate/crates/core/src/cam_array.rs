//! Content-addressable memory built from ME-XNOR cells.
//!
//! Each cell stores a word bit in its upper magnet and receives the key bit in
//! its lower magnet, so the junction is P exactly when the two bits agree. A
//! reference MTJ on the V_READ side and the cell to ground form a divider;
//! the inverter reading the node goes high only for the low-resistance state.
//! The precharged match line falls only when every inverter in its row is
//! high.

use serde::{Deserialize, Serialize};

use crate::consts::FJ;
use crate::device::{
    EnergyKind, EnergyReport, EnergyTerm, Fidelity, MeXnorDevice, DEFAULT_WRITE_TIME,
    DEFAULT_WRITE_VOLTAGE,
};
use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::magnetodynamics::SimConfig;
use crate::transport::SeriesTransistor;

/// Read pulse amplitude, V.
pub const DEFAULT_V_READ: f64 = 1.0;
/// Per-bit search read energy the read pulse is sized for, J.
pub const TARGET_READ_ENERGY: f64 = 15.0 * FJ;
/// W/L of the lumped M1/M2 access path.
pub const ACCESS_W_OVER_L: f64 = 8.0;

/// One ME-XNOR cell with its divider.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CamCell {
    pub device: MeXnorDevice,
    /// Reference MTJ resistance, ohms.
    pub ref_mtj: f64,
    /// Inverter switching point as a fraction of V_READ.
    pub inverter_threshold: f64,
    /// Series resistance of the access transistors, ohms.
    pub r_access: f64,
}

impl CamCell {
    /// Cell with the reference MTJ at the geometric mean of the P and AP path
    /// resistances and the inverter at V_READ/2.
    pub fn new(device: MeXnorDevice, r_access: f64) -> Result<Self> {
        require_non_negative("r_access", r_access)?;
        let r = device.resistances;
        let ref_mtj = ((r.r_p + r_access) * (r.r_ap + r_access)).sqrt();
        let cell = Self {
            device,
            ref_mtj,
            inverter_threshold: 0.5,
            r_access,
        };
        cell.validate()?;
        Ok(cell)
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.device.resistances;
        if !(r.r_p + self.r_access < self.ref_mtj && self.ref_mtj < r.r_ap + self.r_access) {
            return Err(Error::invalid(
                "ref_mtj",
                format!(
                    "{} Ω does not separate the P ({} Ω) and AP ({} Ω) paths",
                    self.ref_mtj,
                    r.r_p + self.r_access,
                    r.r_ap + self.r_access
                ),
            ));
        }
        if !(self.inverter_threshold > 0.0 && self.inverter_threshold < 1.0) {
            return Err(Error::invalid("inverter_threshold", "must lie in (0, 1)"));
        }
        Ok(())
    }

    /// Resistance from the divider node to ground, ohms.
    pub fn path_resistance(&self) -> Result<f64> {
        Ok(self.device.resistance()? + self.r_access)
    }

    /// Divider node voltage for a given cell path resistance.
    pub fn divider_node(&self, v_read: f64, r_path: f64) -> f64 {
        v_read * r_path / (self.ref_mtj + r_path)
    }

    /// Energy drawn through the divider during one read, J.
    pub fn read_energy(&self, v_read: f64, t_read: f64) -> Result<f64> {
        Ok(v_read * v_read / (self.ref_mtj + self.path_resistance()?) * t_read)
    }
}

/// Inverter output and divider node voltage of `cell` at `v_read`.
pub fn evaluate_cell(cell: &CamCell, v_read: f64) -> Result<(bool, f64)> {
    let node = cell.divider_node(v_read, cell.path_resistance()?);
    Ok((node < cell.inverter_threshold * v_read, node))
}

/// Read pulse length that makes a matched (P) cell draw `target` joules.
pub fn calibrated_read_time(cell: &CamCell, v_read: f64, target: f64) -> f64 {
    let r_p_path = cell.device.resistances.r_p + cell.r_access;
    target * (cell.ref_mtj + r_p_path) / (v_read * v_read)
}

/// Outcome of one search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchResult {
    /// `true` where the match line discharged (match).
    pub matchline_low: Vec<bool>,
    pub per_cell_inverter: Vec<Vec<bool>>,
    pub energy: EnergyReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CamParams {
    pub v_read: f64,
    /// Read pulse, s; `None` back-solves it from the target read energy.
    pub t_read: Option<f64>,
    pub v_dd: f64,
    pub v_write: f64,
    pub t_write: f64,
    /// Fixed inverter and match-line energy per bit per search, J.
    pub overhead_per_bit: f64,
    pub access_w_over_l: f64,
    pub transistor: SeriesTransistor,
    pub fidelity: Fidelity,
}

impl Default for CamParams {
    fn default() -> Self {
        Self {
            v_read: DEFAULT_V_READ,
            t_read: None,
            v_dd: 1.0,
            v_write: DEFAULT_WRITE_VOLTAGE,
            t_write: DEFAULT_WRITE_TIME,
            overhead_per_bit: 0.0,
            access_w_over_l: ACCESS_W_OVER_L,
            transistor: SeriesTransistor::default(),
            fidelity: Fidelity::Behavioral,
        }
    }
}

impl CamParams {
    pub fn validate(&self) -> Result<()> {
        require_positive("v_read", self.v_read)?;
        if let Some(t) = self.t_read {
            require_positive("t_read", t)?;
        }
        require_positive("v_dd", self.v_dd)?;
        require_positive("v_write", self.v_write)?;
        require_positive("t_write", self.t_write)?;
        require_non_negative("overhead_per_bit", self.overhead_per_bit)?;
        require_positive("access_w_over_l", self.access_w_over_l)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CamArray {
    rows: usize,
    word_width: usize,
    cells: Vec<CamCell>,
    pub v_read: f64,
    pub t_read: f64,
    pub v_dd: f64,
    pub v_write: f64,
    pub t_write: f64,
    pub overhead_per_bit: f64,
    pub fidelity: Fidelity,
    pub sim: SimConfig,
    ops: u64,
}

impl CamArray {
    pub fn new(
        rows: usize,
        word_width: usize,
        device: MeXnorDevice,
        params: CamParams,
    ) -> Result<Self> {
        if rows == 0 || word_width == 0 {
            return Err(Error::invalid(
                "rows/word_width",
                "array needs at least one row and bit",
            ));
        }
        params.validate()?;
        let cell = CamCell::new(device, params.transistor.resistance(params.access_w_over_l))?;
        let t_read = params
            .t_read
            .unwrap_or_else(|| calibrated_read_time(&cell, params.v_read, TARGET_READ_ENERGY));
        Ok(Self {
            rows,
            word_width,
            cells: vec![cell; rows * word_width],
            v_read: params.v_read,
            t_read,
            v_dd: params.v_dd,
            v_write: params.v_write,
            t_write: params.t_write,
            overhead_per_bit: params.overhead_per_bit,
            fidelity: params.fidelity,
            sim: SimConfig::default(),
            ops: 0,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn word_width(&self) -> usize {
        self.word_width
    }

    pub fn cell(&self, row: usize, col: usize) -> &CamCell {
        &self.cells[row * self.word_width + col]
    }

    fn check_width(&self, bits: &[bool]) -> Result<()> {
        if bits.len() == self.word_width {
            Ok(())
        } else {
            Err(Error::WidthMismatch {
                expected: self.word_width,
                got: bits.len(),
            })
        }
    }

    fn next_op(&mut self) -> u64 {
        let op = self.ops;
        self.ops += 1;
        op
    }

    fn volts(&self, bit: bool) -> f64 {
        if bit {
            self.v_write
        } else {
            -self.v_write
        }
    }

    /// Writes `bits` into the upper magnets of `row`; returns the energy, J.
    pub fn store_word(&mut self, row: usize, bits: &[bool]) -> Result<f64> {
        if row >= self.rows {
            return Err(Error::OutOfRange {
                what: "row",
                index: row,
                size: self.rows,
            });
        }
        self.check_width(bits)?;
        let op = self.next_op();
        let (w, t, fid, sim) = (self.word_width, self.t_write, self.fidelity, self.sim);
        let mut energy = 0.0;
        for (c, &b) in bits.iter().enumerate() {
            let v = self.volts(b);
            let stream = stream_id(op, row * w + c, 0);
            energy += self.cells[row * w + c]
                .device
                .write_top(v, t, &sim, fid, stream);
        }
        Ok(energy)
    }

    /// Writes the key into the lower magnets of every row; returns the energy, J.
    pub fn input_key(&mut self, bits: &[bool]) -> Result<f64> {
        Ok(self.input_key_terms(bits)?.iter().map(|t| t.energy).sum())
    }

    fn input_key_terms(&mut self, bits: &[bool]) -> Result<Vec<EnergyTerm>> {
        self.check_width(bits)?;
        let op = self.next_op();
        let (w, t, fid, sim) = (self.word_width, self.t_write, self.fidelity, self.sim);
        let mut terms = Vec::with_capacity(self.cells.len());
        for r in 0..self.rows {
            for (c, &b) in bits.iter().enumerate() {
                let v = self.volts(b);
                let stream = stream_id(op, r * w + c, 1);
                let e = self.cells[r * w + c]
                    .device
                    .write_bottom(v, t, &sim, fid, stream);
                terms.push(EnergyTerm {
                    label: format!("key[{r},{c}]"),
                    kind: EnergyKind::Write,
                    energy: e,
                });
            }
        }
        Ok(terms)
    }

    /// Inputs `key`, evaluates every cell and resolves the match lines.
    pub fn search(&mut self, key: &[bool]) -> Result<MatchResult> {
        let mut terms = self.input_key_terms(key)?;
        let mut per_cell_inverter = Vec::with_capacity(self.rows);
        let mut matchline_low = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row = Vec::with_capacity(self.word_width);
            for c in 0..self.word_width {
                let cell = self.cell(r, c);
                let (high, _) = evaluate_cell(cell, self.v_read)?;
                row.push(high);
                terms.push(EnergyTerm {
                    label: format!("read[{r},{c}]"),
                    kind: EnergyKind::Read,
                    energy: cell.read_energy(self.v_read, self.t_read)? + self.overhead_per_bit,
                });
            }
            // Any low inverter leaves its p-MOS on and holds the precharge.
            matchline_low.push(row.iter().all(|&h| h));
            per_cell_inverter.push(row);
        }
        let bits = self.rows * self.word_width;
        Ok(MatchResult {
            matchline_low,
            per_cell_inverter,
            energy: EnergyReport::from_terms(bits, self.t_write + self.t_read, terms),
        })
    }

    /// |V_node(P) − V_node(AP)| of the calibrated cell, V.
    pub fn divider_margin(&self) -> f64 {
        let cell = &self.cells[0];
        let r = cell.device.resistances;
        (cell.divider_node(self.v_read, r.r_p + cell.r_access)
            - cell.divider_node(self.v_read, r.r_ap + cell.r_access))
        .abs()
    }
}

fn stream_id(op: u64, cell: usize, layer: u64) -> u64 {
    (op << 32) | ((cell as u64) << 1) | layer
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consts::ALPHA_ME_UNIT;
    use crate::device::CapacitorGeometry;
    use crate::magnetodynamics::MagnetParams;
    use crate::transport::{BarrierStack, LeadParams, ResistancePair};

    fn device() -> MeXnorDevice {
        MeXnorDevice::with_resistances(
            MagnetParams::default(),
            BarrierStack::default(),
            LeadParams::default(),
            CapacitorGeometry::default(),
            ALPHA_ME_UNIT,
            ResistancePair {
                r_p: 14.15e3,
                r_ap: 24.85e3,
            },
        )
        .unwrap()
    }

    fn array(rows: usize, w: usize) -> CamArray {
        CamArray::new(rows, w, device(), CamParams::default()).unwrap()
    }

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn two_word_example() {
        let mut a = array(2, 4);
        a.store_word(0, &bits("1010")).unwrap();
        a.store_word(1, &bits("1100")).unwrap();
        let m = a.search(&bits("1010")).unwrap();
        assert_eq!(m.matchline_low, vec![true, false]);
        assert_eq!(m.per_cell_inverter[1], vec![true, false, false, true]);
        let m = a.search(&bits("1011")).unwrap();
        assert_eq!(m.matchline_low, vec![false, false]);
    }

    #[test]
    fn energies_at_calibration() {
        let mut a = array(2, 4);
        let e = a.store_word(0, &bits("1111")).unwrap() / 4.0 / FJ;
        assert!((e - 0.072).abs() < 0.0072, "{e}");
        a.store_word(1, &bits("0000")).unwrap();
        let m = a.search(&bits("1111")).unwrap();
        // row 0 matches fully, row 1 (stored 0000) mismatches everywhere
        let row0: f64 = m.energy.breakdown[8..12].iter().map(|t| t.energy).sum();
        assert!((row0 / 4.0 / FJ - 15.0).abs() < 1e-9);
        let per_bit = m.energy.read_energy_per_bit() / FJ;
        assert!(per_bit > 12.0 && per_bit < 15.0, "{per_bit}");
        assert!((a.t_read - 0.51e-9).abs() < 0.01e-9, "{}", a.t_read);
    }

    #[test]
    fn reference_sits_between_paths() {
        let a = array(1, 1);
        let c = a.cell(0, 0);
        let (p, ap) = (14.15e3 + c.r_access, 24.85e3 + c.r_access);
        assert!(p < c.ref_mtj && c.ref_mtj < ap);
        // geometric mean equalizes the two node-voltage ratios
        let vp = c.divider_node(1.0, p);
        let vap = c.divider_node(1.0, ap);
        assert!((vp / (1.0 - vp) * (vap / (1.0 - vap)) - 1.0).abs() < 1e-12);
        assert!(a.divider_margin() > 0.1);
    }

    #[test]
    fn evaluate_matches_resistance_state() {
        let mut a = array(1, 1);
        let (high, _) = evaluate_cell(a.cell(0, 0), 1.0).unwrap();
        assert!(high);
        a.store_word(0, &[false]).unwrap();
        a.input_key(&[true]).unwrap();
        let (high, v) = evaluate_cell(a.cell(0, 0), 1.0).unwrap();
        assert!(!high && v > 0.5);
    }

    #[test]
    fn key_input_is_idempotent() {
        let mut a = array(3, 2);
        a.store_word(1, &bits("01")).unwrap();
        a.input_key(&bits("01")).unwrap();
        let snapshot = a.cells.clone();
        a.input_key(&bits("01")).unwrap();
        for (x, y) in snapshot.iter().zip(&a.cells) {
            assert_eq!(x.device.config(), y.device.config());
        }
    }

    #[test]
    fn unsettled_search_faults() {
        let mut a = array(1, 2);
        a.cells[1].device.top.state.m = crate::vec3::Vec3::X;
        assert!(matches!(a.search(&bits("00")), Err(Error::Sequencing(_))));
    }

    #[test]
    fn width_and_row_checks() {
        let mut a = array(2, 3);
        assert!(matches!(
            a.store_word(2, &bits("000")),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            a.search(&bits("00")),
            Err(Error::WidthMismatch { .. })
        ));
    }
}
