use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{CapacitorGeometry, EnergyConvention, Fidelity, FreeLayer, DEFAULT_TEMPERATURE};
use crate::consts::ALPHA_ME_UNIT;
use crate::error::{Error, Result};
use crate::magnetodynamics::{trial_rng, MEStimulus, MagnetParams, SimConfig};
use crate::memory_array::sense;
use crate::transport::{BarrierStack, LeadParams, MagneticConfig, ResistancePair};
use crate::vec3::Vec3;

/// Outcome of one write pulse.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WriteOutcome {
    /// Settled configuration after the pulse, if any.
    pub state: Option<MagneticConfig>,
    /// Capacitor energy of the pulse, J.
    pub energy: f64,
}

/// Outcome of one read.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReadOutcome {
    /// Configuration decided by the current comparator.
    pub state: MagneticConfig,
    /// Cell current, A.
    pub current: f64,
    /// V·I·t, J.
    pub energy: f64,
}

/// MTJ whose free layer sits on an ME capacitor (terminal 1); the junction is
/// read between terminals 1 and 2 against a fixed layer along +z.
///
/// A positive write voltage drives the free layer antiparallel to the fixed
/// layer, a negative one drives it parallel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeMtjDevice {
    pub free: FreeLayer,
    pub pinned: Vec3,
    pub stack: BarrierStack,
    pub leads: LeadParams,
    pub resistances: ResistancePair,
    pub cap: CapacitorGeometry,
    /// ME coefficient, s/m.
    pub alpha_me: f64,
    pub convention: EnergyConvention,
}

impl MeMtjDevice {
    /// Builds the device in the P state, solving the transport problem for
    /// its P and AP resistances at `temperature`.
    pub fn new(
        magnet: MagnetParams,
        stack: BarrierStack,
        leads: LeadParams,
        cap: CapacitorGeometry,
        alpha_me: f64,
        temperature: f64,
    ) -> Result<Self> {
        let resistances = ResistancePair::compute(&stack, &leads, 0.0, temperature)?;
        Self::with_resistances(magnet, stack, leads, cap, alpha_me, resistances)
    }

    /// Builds the device with known resistances.
    pub fn with_resistances(
        magnet: MagnetParams,
        stack: BarrierStack,
        leads: LeadParams,
        cap: CapacitorGeometry,
        alpha_me: f64,
        resistances: ResistancePair,
    ) -> Result<Self> {
        magnet.validate()?;
        cap.validate()?;
        if !(alpha_me > 0.0) {
            return Err(Error::invalid(
                "alpha_me",
                "must be > 0 for a writable device",
            ));
        }
        if !(resistances.r_p > 0.0 && resistances.r_ap >= resistances.r_p) {
            return Err(Error::invalid("resistances", "need 0 < R_P <= R_AP"));
        }
        Ok(Self {
            free: FreeLayer::aligned(magnet, true),
            pinned: Vec3::Z,
            stack,
            leads,
            resistances,
            cap,
            alpha_me,
            convention: EnergyConvention::FullCycle,
        })
    }

    /// Calibrated default device: 50 nm × 1 nm CoFeB, 1.2 nm MgO, α_ME = 1/c.
    pub fn calibrated() -> Result<Self> {
        Self::new(
            MagnetParams::default(),
            BarrierStack::default(),
            LeadParams::default(),
            CapacitorGeometry::default(),
            ALPHA_ME_UNIT,
            DEFAULT_TEMPERATURE,
        )
    }

    /// ME stimulus produced by `v` volts on terminal 1.
    pub fn stimulus(&self, v: f64) -> MEStimulus {
        MEStimulus {
            alpha_me: self.alpha_me,
            t_me: self.cap.t_me,
            v_me: v,
            axis: -self.pinned,
        }
    }

    /// Smallest |V| whose ME field exceeds the effective anisotropy field.
    pub fn threshold_voltage(&self) -> f64 {
        self.stimulus(0.0)
            .voltage_for_field(self.free.switching_field())
    }

    /// Current configuration, or `None` while the free layer is unsettled.
    pub fn state(&self) -> Option<MagneticConfig> {
        self.free.is_up().map(|up| {
            let parallel = (self.pinned.z > 0.0) == up;
            if parallel {
                MagneticConfig::Parallel
            } else {
                MagneticConfig::Antiparallel
            }
        })
    }

    /// Forces the free layer into `config`.
    pub fn set_state(&mut self, config: MagneticConfig) {
        let m = match config {
            MagneticConfig::Parallel => self.pinned,
            MagneticConfig::Antiparallel => -self.pinned,
        };
        self.free.state.m = m;
    }

    pub fn resistance(&self) -> Result<f64> {
        Ok(self.resistances.get(self.settled_state()?))
    }

    fn settled_state(&self) -> Result<MagneticConfig> {
        self.state().ok_or_else(|| {
            Error::Sequencing(format!(
                "free layer not settled (m_z = {:.3})",
                self.free.state.m.z
            ))
        })
    }

    /// Applies a `v`-volt pulse for `duration` seconds with the stream of
    /// `cfg.seed`.
    pub fn write_pulse(
        &mut self,
        v: f64,
        duration: f64,
        cfg: &SimConfig,
        fidelity: Fidelity,
    ) -> WriteOutcome {
        let mut rng = trial_rng(cfg.seed, 0);
        self.write_pulse_with(v, duration, cfg, fidelity, &mut rng)
    }

    pub(crate) fn write_pulse_with<R: Rng + ?Sized>(
        &mut self,
        v: f64,
        duration: f64,
        cfg: &SimConfig,
        fidelity: Fidelity,
        rng: &mut R,
    ) -> WriteOutcome {
        let stim = self.stimulus(v);
        self.free.apply_pulse(&stim, duration, cfg, fidelity, rng);
        WriteOutcome {
            state: self.state(),
            energy: self.write_energy(v),
        }
    }

    pub fn write_energy(&self, v: f64) -> f64 {
        self.cap.write_energy(v, self.convention)
    }

    /// Nominal cell current in `config` through `r_series`, A.
    pub fn nominal_current(&self, config: MagneticConfig, v_read: f64, r_series: f64) -> f64 {
        v_read / (self.resistances.get(config) + r_series)
    }

    /// Geometric mean of the nominal P and AP currents.
    pub fn reference_current(&self, v_read: f64, r_series: f64) -> f64 {
        (self.nominal_current(MagneticConfig::Parallel, v_read, r_series)
            * self.nominal_current(MagneticConfig::Antiparallel, v_read, r_series))
        .sqrt()
    }

    /// Reads the junction at `v_read` for `t_read` through `r_series`.
    pub fn read(&self, v_read: f64, t_read: f64, r_series: f64) -> Result<ReadOutcome> {
        self.read_against(
            v_read,
            t_read,
            r_series,
            self.reference_current(v_read, r_series),
        )
    }

    /// Reads against an explicit reference current.
    pub fn read_against(
        &self,
        v_read: f64,
        t_read: f64,
        r_series: f64,
        i_ref: f64,
    ) -> Result<ReadOutcome> {
        let r = self.resistance()? + r_series;
        let current = v_read / r;
        Ok(ReadOutcome {
            state: sense(current.abs(), i_ref),
            current,
            energy: v_read * current * t_read,
        })
    }
}
