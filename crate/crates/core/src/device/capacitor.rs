use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::consts::EPS0;
use crate::error::{require_positive, Result};

/// Whether a write is billed as a full charge-discharge cycle (C·V²) or only
/// the stored energy (½·C·V²).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyConvention {
    #[default]
    FullCycle,
    HalfCycle,
}

/// Parallel-plate ME capacitor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CapacitorGeometry {
    /// Plate area, m².
    pub area: f64,
    /// ME oxide thickness, m.
    pub t_me: f64,
    /// Relative permittivity of the ME oxide.
    pub eps_me: f64,
}

impl Default for CapacitorGeometry {
    /// π(25 nm)² plate on 0.5 nm of ε = 500 oxide (≈17.4 fF).
    fn default() -> Self {
        Self {
            area: PI * (25e-9f64).powi(2),
            t_me: 0.5e-9,
            eps_me: 500.0,
        }
    }
}

impl CapacitorGeometry {
    pub fn validate(&self) -> Result<()> {
        require_positive("area", self.area)?;
        require_positive("t_me", self.t_me)?;
        require_positive("eps_me", self.eps_me)
    }

    /// C = ε·ε0·A/t, farads.
    pub fn capacitance(&self) -> f64 {
        self.eps_me * EPS0 * self.area / self.t_me
    }

    /// Energy of one write at voltage `v`, J. Independent of polarity.
    pub fn write_energy(&self, v: f64, convention: EnergyConvention) -> f64 {
        let cv2 = self.capacitance() * v * v;
        match convention {
            EnergyConvention::FullCycle => cv2,
            EnergyConvention::HalfCycle => 0.5 * cv2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_geometry_capacitance() {
        // π(25 nm)², 5 nm, ε = 500 → 1.74 fF; at 0.2 V, C·V² = 0.0695 fJ
        let c = CapacitorGeometry {
            t_me: 5e-9,
            ..CapacitorGeometry::default()
        };
        assert!((c.capacitance() - 1.738e-15).abs() < 0.001e-15);
        let e = c.write_energy(0.2, EnergyConvention::FullCycle);
        assert!((e - 0.0695e-15).abs() < 0.0001e-15);
        assert_eq!(c.write_energy(0.0, EnergyConvention::FullCycle), 0.0);
    }

    #[test]
    fn default_write_energy() {
        let c = CapacitorGeometry::default();
        let e = c.write_energy(0.065, EnergyConvention::FullCycle);
        assert!((e / 1e-15 - 0.0734).abs() < 0.0005, "{e}");
        assert_eq!(e, c.write_energy(-0.065, EnergyConvention::FullCycle));
        assert_eq!(0.5 * e, c.write_energy(0.065, EnergyConvention::HalfCycle));
    }

    #[test]
    fn thicker_oxide_halves_energy() {
        let c = CapacitorGeometry::default();
        let d = CapacitorGeometry {
            t_me: 2.0 * c.t_me,
            ..c
        };
        let (a, b) = (
            c.write_energy(0.1, EnergyConvention::FullCycle),
            d.write_energy(0.1, EnergyConvention::FullCycle),
        );
        assert!((a - 2.0 * b).abs() < 1e-12 * a);
    }
}
