use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::consts::{ELECTRON_MASS, HBAR, Q};
use crate::error::{require_non_negative, require_positive, Error, Result};

/// Ferromagnetic contact bands (parabolic, exchange-split).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LeadParams {
    /// Fermi energy above the majority band bottom, eV.
    pub fermi_energy: f64,
    /// Minority band bottom above the majority band bottom, eV.
    pub exchange_splitting: f64,
    /// Effective mass in units of the electron mass.
    pub effective_mass: f64,
}

impl Default for LeadParams {
    fn default() -> Self {
        Self {
            fermi_energy: 2.25,
            exchange_splitting: 2.15,
            effective_mass: 0.73,
        }
    }
}

impl LeadParams {
    pub fn validate(&self) -> Result<()> {
        require_positive("fermi_energy", self.fermi_energy)?;
        require_non_negative("exchange_splitting", self.exchange_splitting)?;
        require_positive("effective_mass", self.effective_mass)
    }

    pub fn band_bottom(&self, spin: Spin) -> f64 {
        match spin {
            Spin::Majority => 0.0,
            Spin::Minority => self.exchange_splitting,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spin {
    Majority,
    Minority,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Majority, Spin::Minority];

    pub fn flipped(self) -> Spin {
        match self {
            Spin::Majority => Spin::Minority,
            Spin::Minority => Spin::Majority,
        }
    }
}

/// Relative orientation of the two ferromagnets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MagneticConfig {
    Parallel,
    Antiparallel,
}

/// Default number of transverse modes per m², fixed by calibrating R_P at
/// 1.2 nm MgO and 300 K to 14.15 kΩ (see [`crate::transport::calibrate_mode_density`]).
pub const DEFAULT_MODE_DENSITY: f64 = 2.137_578_512e19;

/// FM/MgO/FM tunnel junction discretized on a 1D lattice.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BarrierStack {
    /// MgO thickness, m.
    pub thickness: f64,
    /// Barrier conduction-band edge above the Fermi energy, eV.
    pub barrier_height: f64,
    /// Effective mass in the barrier, units of the electron mass.
    pub barrier_mass: f64,
    /// Lattice spacing, m.
    pub spacing: f64,
    /// Junction area, m².
    pub cross_section: f64,
    /// Transverse modes per m² used to scale the 1D conductance to the area.
    pub mode_density: f64,
    pub config: MagneticConfig,
}

impl Default for BarrierStack {
    fn default() -> Self {
        Self {
            thickness: 1.2e-9,
            barrier_height: 2.5,
            barrier_mass: 0.38,
            spacing: 0.2e-9,
            cross_section: PI * (25e-9f64).powi(2),
            mode_density: DEFAULT_MODE_DENSITY,
            config: MagneticConfig::Parallel,
        }
    }
}

impl BarrierStack {
    pub fn validate(&self) -> Result<()> {
        require_positive("thickness", self.thickness)?;
        require_positive("barrier_height", self.barrier_height)?;
        require_positive("barrier_mass", self.barrier_mass)?;
        require_positive("spacing", self.spacing)?;
        require_positive("cross_section", self.cross_section)?;
        require_positive("mode_density", self.mode_density)?;
        let ratio = self.thickness / self.spacing;
        if (ratio - ratio.round()).abs() > 1e-6 * ratio.max(1.0) {
            return Err(Error::invalid(
                "thickness",
                format!(
                    "must be a multiple of the lattice spacing {} m, got {} m",
                    self.spacing, self.thickness
                ),
            ));
        }
        if self.sites() < 1 {
            return Err(Error::invalid(
                "thickness",
                "needs at least one barrier site",
            ));
        }
        Ok(())
    }

    /// Number of barrier lattice sites.
    pub fn sites(&self) -> usize {
        (self.thickness / self.spacing).round() as usize
    }

    pub fn with_config(mut self, config: MagneticConfig) -> Self {
        self.config = config;
        self
    }

    pub fn with_thickness(mut self, thickness: f64) -> Self {
        self.thickness = thickness;
        self
    }

    /// Number of transverse modes in the junction.
    pub fn modes(&self) -> f64 {
        self.mode_density * self.cross_section
    }
}

/// Nearest-neighbour hopping ħ²/(2·m·a²) in eV.
pub fn hopping_energy(mass: f64, spacing: f64) -> f64 {
    HBAR * HBAR / (2.0 * mass * ELECTRON_MASS * spacing * spacing) / Q
}
