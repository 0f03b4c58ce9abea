use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::demag::cylinder_axial_factor;
use crate::consts::{ALPHA_ME_UNIT, GAMMA, KB, MU0};
use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::vec3::Vec3;

/// Diagonal demagnetization tensor (N_x, N_y, N_z).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DemagFactors(pub [f64; 3]);

impl DemagFactors {
    /// Infinite thin film magnetized along z.
    pub const THIN_FILM: DemagFactors = DemagFactors([0.0, 0.0, 1.0]);

    /// Magnetometric factors of a uniformly magnetized circular cylinder.
    pub fn cylinder(diameter: f64, thickness: f64) -> Self {
        let nz = cylinder_axial_factor(diameter, thickness);
        let nt = 0.5 * (1.0 - nz);
        DemagFactors([nt, nt, nz])
    }

    pub fn validate(&self) -> Result<()> {
        let [nx, ny, nz] = self.0;
        if [nx, ny, nz].iter().any(|n| !n.is_finite() || *n < 0.0) {
            return Err(Error::invalid("demag", "factors must be finite and >= 0"));
        }
        if (nx + ny + nz - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(
                "demag",
                format!("factors must sum to 1, got {}", nx + ny + nz),
            ));
        }
        Ok(())
    }
}

/// Free-layer material constants and geometry.
///
/// Fields are in SI units; `gamma` uses the γ·μ0 convention (m/(A·s)) so that
/// `gamma * H` with `H` in A/m is an angular rate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MagnetParams {
    /// Saturation magnetization, A/m.
    pub ms: f64,
    /// Gilbert damping.
    pub alpha: f64,
    /// Interface anisotropy energy, J/m².
    pub k_i: f64,
    /// Free-layer thickness, m.
    pub t_fl: f64,
    /// Free-layer diameter, m.
    pub diameter: f64,
    pub demag: DemagFactors,
    /// Temperature, K.
    pub temperature: f64,
    /// Gyromagnetic ratio, m/(A·s).
    pub gamma: f64,
}

impl Default for MagnetParams {
    /// CoFeB/MgO free layer: M_S = 1257.3 kA/m, α = 0.1, K_i = 1 mJ/m², 300 K,
    /// 50 nm × 1 nm disk in the thin-film demag limit.
    fn default() -> Self {
        Self {
            ms: 1257.3e3,
            alpha: 0.1,
            k_i: 1e-3,
            t_fl: 1.0e-9,
            diameter: 50e-9,
            demag: DemagFactors::THIN_FILM,
            temperature: 300.0,
            gamma: GAMMA,
        }
    }
}

impl MagnetParams {
    pub fn validate(&self) -> Result<()> {
        require_positive("ms", self.ms)?;
        require_non_negative("alpha", self.alpha)?;
        require_positive("t_fl", self.t_fl)?;
        require_positive("diameter", self.diameter)?;
        require_positive("gamma", self.gamma)?;
        require_non_negative("k_i", self.k_i)?;
        require_non_negative("temperature", self.temperature)?;
        self.demag.validate()
    }

    /// Cross-sectional area of the free layer, m².
    pub fn area(&self) -> f64 {
        PI * (0.5 * self.diameter).powi(2)
    }

    /// Free-layer volume, m³.
    pub fn volume(&self) -> f64 {
        self.area() * self.t_fl
    }

    /// Interface anisotropy field H_K = 2K_i/(μ0·M_S·t_FL), A/m.
    pub fn anisotropy_field(&self) -> f64 {
        2.0 * self.k_i / (MU0 * self.ms * self.t_fl)
    }

    /// Net perpendicular anisotropy field, H_K − (N_z − N_x)·M_S, A/m.
    pub fn effective_anisotropy_field(&self) -> f64 {
        let [nx, _, nz] = self.demag.0;
        self.anisotropy_field() - (nz - nx) * self.ms
    }

    /// Effective uniaxial anisotropy energy density, J/m³.
    pub fn effective_anisotropy(&self) -> f64 {
        0.5 * MU0 * self.ms * self.effective_anisotropy_field()
    }

    /// Thermal stability factor K_eff·V/(kT); infinite at T = 0.
    pub fn thermal_stability(&self) -> f64 {
        self.effective_anisotropy() * self.volume() / (KB * self.temperature)
    }

    /// Standard deviation of each thermal-field component for step `dt`, A/m.
    ///
    /// σ = sqrt(2αkT / (γ·μ0·M_S·V·dt)); the μ0 converts the Brown field
    /// from tesla to A/m under the γ·μ0 convention.
    pub fn thermal_sigma(&self, dt: f64) -> f64 {
        (2.0 * self.alpha * KB * self.temperature
            / (self.gamma * MU0 * self.ms * self.volume() * dt))
            .sqrt()
    }
}

/// Magneto-electric drive: coefficient, oxide thickness, voltage and field axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MEStimulus {
    /// ME coefficient, s/m.
    pub alpha_me: f64,
    /// ME oxide thickness, m.
    pub t_me: f64,
    /// Voltage across the ME capacitor, V.
    pub v_me: f64,
    /// Field direction for positive voltage.
    pub axis: Vec3,
}

impl Default for MEStimulus {
    /// α_ME = 1/c on a 0.5 nm ME oxide, zero volts, field along +z.
    fn default() -> Self {
        Self {
            alpha_me: ALPHA_ME_UNIT,
            t_me: 0.5e-9,
            v_me: 0.0,
            axis: Vec3::Z,
        }
    }
}

impl MEStimulus {
    pub fn with_voltage(mut self, v_me: f64) -> Self {
        self.v_me = v_me;
        self
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("t_me", self.t_me)?;
        require_non_negative("alpha_me", self.alpha_me)?;
        if !self.v_me.is_finite() {
            return Err(Error::invalid("v_me", "must be finite"));
        }
        if (self.axis.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::invalid("axis", "must be a unit vector"));
        }
        Ok(())
    }

    /// Signed field magnitude along `axis`, (1/μ0)·α_ME·V_ME/t_ME in A/m.
    pub fn field_magnitude(&self) -> f64 {
        self.alpha_me * self.v_me / (self.t_me * MU0)
    }

    /// Voltage whose ME field equals `field` (A/m) in magnitude.
    pub fn voltage_for_field(&self, field: f64) -> f64 {
        field * MU0 * self.t_me / self.alpha_me
    }
}

/// Integration settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    /// Time step, s.
    pub dt: f64,
    /// Total simulated time, s.
    pub duration: f64,
    pub seed: u64,
    pub renormalize: bool,
    /// Record every `sample_stride`-th step.
    pub sample_stride: usize,
    /// Reversal is declared when the projection on the initial easy-axis
    /// direction reaches `-reversal_threshold`.
    pub reversal_threshold: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            dt: 0.1e-12,
            duration: 1e-9,
            seed: 0,
            renormalize: true,
            sample_stride: 1,
            reversal_threshold: 0.9,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        require_positive("dt", self.dt)?;
        if !(self.duration >= self.dt) {
            return Err(Error::invalid(
                "duration",
                format!("must be >= dt ({}), got {}", self.dt, self.duration),
            ));
        }
        if self.sample_stride == 0 {
            return Err(Error::invalid("sample_stride", "must be >= 1"));
        }
        if !(self.reversal_threshold > 0.0 && self.reversal_threshold <= 1.0) {
            return Err(Error::invalid("reversal_threshold", "must be in (0, 1]"));
        }
        Ok(())
    }

    /// Number of whole steps covering `duration`.
    pub fn steps(&self) -> usize {
        steps_for(self.duration, self.dt)
    }
}

pub(crate) fn steps_for(duration: f64, dt: f64) -> usize {
    // tolerate round-off in duration/dt
    ((duration / dt) * (1.0 + 1e-12)).floor() as usize
}

/// Unit magnetization and simulation clock.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MagnetizationState {
    pub m: Vec3,
    pub t: f64,
}

impl MagnetizationState {
    pub fn new(m: Vec3) -> Self {
        Self {
            m: m.normalized(),
            t: 0.0,
        }
    }
}
