use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyKind {
    Write,
    Read,
}

/// One labelled energy contribution, J.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyTerm {
    pub label: String,
    pub kind: EnergyKind,
    pub energy: f64,
}

/// Energy and duration of one operation over `bits` bits.
///
/// Totals are always the sums of the breakdown terms of each kind.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub write_energy: f64,
    pub read_energy: f64,
    pub bits: usize,
    /// Operation duration, s.
    pub op_duration: f64,
    pub breakdown: Vec<EnergyTerm>,
}

impl EnergyReport {
    pub fn from_terms(bits: usize, op_duration: f64, breakdown: Vec<EnergyTerm>) -> Self {
        let sum = |k| {
            breakdown
                .iter()
                .filter(|t| t.kind == k)
                .fold(0.0, |acc, t| acc + t.energy)
        };
        Self {
            write_energy: sum(EnergyKind::Write),
            read_energy: sum(EnergyKind::Read),
            bits,
            op_duration,
            breakdown,
        }
    }

    pub fn write_energy_per_bit(&self) -> f64 {
        per_bit(self.write_energy, self.bits)
    }

    pub fn read_energy_per_bit(&self) -> f64 {
        per_bit(self.read_energy, self.bits)
    }

    pub fn total(&self) -> f64 {
        self.write_energy + self.read_energy
    }
}

fn per_bit(e: f64, bits: usize) -> f64 {
    if bits == 0 {
        0.0
    } else {
        e / bits as f64
    }
}
