use serde::{Deserialize, Serialize};

use super::{CapacitorGeometry, EnergyConvention, Fidelity, FreeLayer, DEFAULT_TEMPERATURE};
use crate::consts::ALPHA_ME_UNIT;
use crate::error::{Error, Result};
use crate::magnetodynamics::{trial_rng, MEStimulus, MagnetParams, SimConfig};
use crate::transport::{BarrierStack, LeadParams, MagneticConfig, ResistancePair};
use crate::vec3::Vec3;

/// XNOR output of the two stored polarities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Logic {
    Match,
    Mismatch,
}

/// Two ME-driven free layers sharing one MgO barrier.
///
/// Terminal 1 drives the top layer, terminal 2 the bottom one. A positive
/// voltage points the layer along +z, a negative one along −z, so the stack is
/// parallel exactly when both drives had the same polarity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeXnorDevice {
    pub top: FreeLayer,
    pub bottom: FreeLayer,
    pub top_cap: CapacitorGeometry,
    pub bottom_cap: CapacitorGeometry,
    pub stack: BarrierStack,
    pub leads: LeadParams,
    pub resistances: ResistancePair,
    pub alpha_me: f64,
    pub convention: EnergyConvention,
}

impl MeXnorDevice {
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
            top: FreeLayer::aligned(magnet, true),
            bottom: FreeLayer::aligned(magnet, true),
            top_cap: cap,
            bottom_cap: cap,
            stack,
            leads,
            resistances,
            alpha_me,
            convention: EnergyConvention::FullCycle,
        })
    }

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

    fn stimulus(&self, cap: &CapacitorGeometry, v: f64) -> MEStimulus {
        MEStimulus {
            alpha_me: self.alpha_me,
            t_me: cap.t_me,
            v_me: v,
            axis: Vec3::Z,
        }
    }

    /// Drives the top layer with `v1` and the bottom layer with `v2` for
    /// `duration`; zero volts holds a layer. Returns the capacitor energy, J.
    ///
    /// The two layers use streams 0 and 1 of `cfg.seed`.
    pub fn xnor_write(
        &mut self,
        v1: f64,
        v2: f64,
        duration: f64,
        cfg: &SimConfig,
        fidelity: Fidelity,
    ) -> f64 {
        self.write_top(v1, duration, cfg, fidelity, 0)
            + self.write_bottom(v2, duration, cfg, fidelity, 1)
    }

    /// Drives only the top layer, using stream `stream` of `cfg.seed`.
    pub fn write_top(
        &mut self,
        v: f64,
        duration: f64,
        cfg: &SimConfig,
        fidelity: Fidelity,
        stream: u64,
    ) -> f64 {
        let stim = self.stimulus(&self.top_cap, v);
        let mut rng = trial_rng(cfg.seed, stream);
        self.top
            .apply_pulse(&stim, duration, cfg, fidelity, &mut rng);
        self.top_cap.write_energy(v, self.convention)
    }

    /// Drives only the bottom layer, using stream `stream` of `cfg.seed`.
    pub fn write_bottom(
        &mut self,
        v: f64,
        duration: f64,
        cfg: &SimConfig,
        fidelity: Fidelity,
        stream: u64,
    ) -> f64 {
        let stim = self.stimulus(&self.bottom_cap, v);
        let mut rng = trial_rng(cfg.seed, stream);
        self.bottom
            .apply_pulse(&stim, duration, cfg, fidelity, &mut rng);
        self.bottom_cap.write_energy(v, self.convention)
    }

    /// Relative configuration, or `None` if either layer is unsettled.
    pub fn config(&self) -> Option<MagneticConfig> {
        let (a, b) = (self.top.is_up()?, self.bottom.is_up()?);
        Some(if a == b {
            MagneticConfig::Parallel
        } else {
            MagneticConfig::Antiparallel
        })
    }

    fn settled_config(&self) -> Result<MagneticConfig> {
        self.config().ok_or_else(|| {
            Error::Sequencing(format!(
                "ME-XNOR layers not settled (top m_z = {:.3}, bottom m_z = {:.3})",
                self.top.state.m.z, self.bottom.state.m.z
            ))
        })
    }

    /// Junction resistance of the current configuration.
    pub fn resistance(&self) -> Result<f64> {
        Ok(self.resistances.get(self.settled_config()?))
    }

    /// Match iff the stack is parallel (low resistance).
    pub fn xnor_read(&self) -> Result<(Logic, f64)> {
        let config = self.settled_config()?;
        let logic = match config {
            MagneticConfig::Parallel => Logic::Match,
            MagneticConfig::Antiparallel => Logic::Mismatch,
        };
        Ok((logic, self.resistances.get(config)))
    }
}
