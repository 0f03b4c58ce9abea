//! ME-MTJ and ME-XNOR devices.
//!
//! Writes drive the free layer(s) through the ME field, either with the full
//! stochastic dynamics or with a behavioral polarity rule. Reads use junction
//! resistances precomputed by the transport solver.

mod capacitor;
mod energy;
mod memtj;
mod xnor;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use capacitor::{CapacitorGeometry, EnergyConvention};
pub use energy::{EnergyKind, EnergyReport, EnergyTerm};
pub use memtj::{MeMtjDevice, ReadOutcome, WriteOutcome};
pub use xnor::{Logic, MeXnorDevice};

use crate::magnetodynamics::integrator::evolve;
use crate::magnetodynamics::params::steps_for;
use crate::magnetodynamics::{me_field, MEStimulus, MagnetParams, MagnetizationState, SimConfig};
use crate::vec3::Vec3;

/// |m_z| a free layer must reach to count as settled in P or AP.
pub const SETTLE_THRESHOLD: f64 = 0.9;

/// Write voltage of the calibrated ME capacitor, V.
pub const DEFAULT_WRITE_VOLTAGE: f64 = 0.065;
/// Write pulse length, s.
pub const DEFAULT_WRITE_TIME: f64 = 1e-9;
/// Read voltage, V.
pub const DEFAULT_READ_VOLTAGE: f64 = 0.2;
/// Read pulse length, s.
pub const DEFAULT_READ_TIME: f64 = 0.5e-9;
/// Temperature at which device resistances are evaluated, K.
pub const DEFAULT_TEMPERATURE: f64 = 300.0;

/// How writes are simulated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fidelity {
    /// Above-threshold pulses set the magnet along the ME field; others hold.
    #[default]
    Behavioral,
    /// Full stochastic LLG integration of every pulse.
    Stochastic,
}

/// A free ferromagnet with its current magnetization.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreeLayer {
    pub params: MagnetParams,
    pub state: MagnetizationState,
}

impl FreeLayer {
    /// Layer resting exactly on +z (`up`) or −z.
    pub fn aligned(params: MagnetParams, up: bool) -> Self {
        Self {
            params,
            state: MagnetizationState::new(if up { Vec3::Z } else { -Vec3::Z }),
        }
    }

    pub fn is_settled(&self) -> bool {
        self.state.m.z.abs() >= SETTLE_THRESHOLD
    }

    /// `Some(true)` for +z, `Some(false)` for −z, `None` while in transit.
    pub fn is_up(&self) -> Option<bool> {
        self.is_settled().then_some(self.state.m.z > 0.0)
    }

    /// Field needed to overcome the effective anisotropy, A/m.
    pub fn switching_field(&self) -> f64 {
        self.params.effective_anisotropy_field().max(0.0)
    }

    /// Applies one rectangular ME pulse. A zero-volt pulse holds the state.
    pub(crate) fn apply_pulse<R: Rng + ?Sized>(
        &mut self,
        stimulus: &MEStimulus,
        duration: f64,
        cfg: &SimConfig,
        fidelity: Fidelity,
        rng: &mut R,
    ) {
        let field = me_field(stimulus);
        if stimulus.v_me != 0.0 {
            match fidelity {
                Fidelity::Behavioral => {
                    if field.norm() > self.switching_field() {
                        self.state.m = Vec3::new(0.0, 0.0, field.z.signum());
                    }
                }
                Fidelity::Stochastic => {
                    let steps = steps_for(duration, cfg.dt);
                    self.state = evolve(
                        self.state,
                        &self.params,
                        field,
                        steps,
                        cfg.dt,
                        cfg.renormalize,
                        rng,
                        |_| {},
                    );
                }
            }
        }
        self.state.t += duration;
    }
}
