use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use mespin::cam_array::CamParams;
use mespin::device::{CapacitorGeometry, DEFAULT_TEMPERATURE, DEFAULT_WRITE_VOLTAGE};
use mespin::magnetodynamics::{MEStimulus, MagnetParams, PulseProtocol, SimConfig};
use mespin::memory_array::ArrayParams;
use mespin::transport::{BarrierStack, LeadParams};
use mespin::{Error, Vec3};

use crate::Experiment;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    Linear,
    Log,
}

/// `steps` points from `from` to `to`, both ends included.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    #[serde(default = "linear")]
    pub scale: Scale,
}

fn linear() -> Scale {
    Scale::Linear
}

impl Sweep {
    pub fn linear(from: f64, to: f64, steps: usize) -> Self {
        Self {
            from,
            to,
            steps,
            scale: Scale::Linear,
        }
    }

    pub fn values(&self) -> Result<Vec<f64>, String> {
        if self.steps == 0 {
            return Err("sweep needs at least one step".into());
        }
        if !(self.from.is_finite() && self.to.is_finite()) {
            return Err("sweep bounds must be finite".into());
        }
        if self.steps == 1 {
            return Ok(vec![self.from]);
        }
        let n = (self.steps - 1) as f64;
        match self.scale {
            Scale::Linear => Ok((0..self.steps)
                .map(|k| self.from + (self.to - self.from) * k as f64 / n)
                .collect()),
            Scale::Log => {
                if !(self.from > 0.0 && self.to > 0.0) {
                    return Err("log sweep bounds must be > 0".into());
                }
                let (a, b) = (self.from.ln(), self.to.ln());
                Ok((0..self.steps)
                    .map(|k| (a + (b - a) * k as f64 / n).exp())
                    .collect())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SwitchSweep {
    pub voltage: Sweep,
    /// α_ME values in units of 1/c.
    pub alpha_me_over_c: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TmrSweepSpec {
    pub t_mgo_nm: Sweep,
    pub w_over_l: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AccessSpec {
    pub write_row: usize,
    pub read_row: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualPortSpec {
    pub rows: usize,
    pub cols: usize,
    pub electrical: ArrayParams,
    /// Simultaneous write/read pairs run after the array is filled.
    pub accesses: Vec<AccessSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CamSpec {
    pub rows: usize,
    pub word_width: usize,
    pub electrical: CamParams,
    /// Stored words as bit strings; random when empty.
    pub words: Vec<String>,
    /// Search keys as bit strings; derived from the words when empty.
    pub keys: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Option<String>,
    pub seed: u64,
    pub n_trials: u64,
    pub magnet: MagnetParams,
    /// Write drive for `trajectory` and `switchprob`.
    pub stimulus: MEStimulus,
    pub sim: SimConfig,
    pub protocol: PulseProtocol,
    pub stack: BarrierStack,
    pub leads: LeadParams,
    pub capacitor: CapacitorGeometry,
    /// Temperature for transport, K.
    pub temperature: f64,
    pub switch_sweep: SwitchSweep,
    pub tmr_sweep: TmrSweepSpec,
    pub dual_port: DualPortSpec,
    pub cam: CamSpec,
}

impl ExperimentConfig {
    /// Built-in defaults; the stimulus drives a +z magnet towards −z.
    pub fn defaults() -> Self {
        Self {
            experiment: None,
            seed: 0,
            n_trials: 500,
            magnet: MagnetParams::default(),
            stimulus: MEStimulus {
                v_me: DEFAULT_WRITE_VOLTAGE,
                axis: -Vec3::Z,
                ..MEStimulus::default()
            },
            sim: SimConfig {
                sample_stride: 10,
                ..SimConfig::default()
            },
            protocol: PulseProtocol::default(),
            stack: BarrierStack::default(),
            leads: LeadParams::default(),
            capacitor: CapacitorGeometry::default(),
            temperature: DEFAULT_TEMPERATURE,
            switch_sweep: SwitchSweep {
                voltage: Sweep::linear(0.0, 0.3, 16),
                alpha_me_over_c: vec![0.25, 0.5, 1.0],
            },
            tmr_sweep: TmrSweepSpec {
                t_mgo_nm: Sweep::linear(0.8, 2.0, 7),
                w_over_l: vec![1.0, 2.0, 4.0, 8.0],
            },
            dual_port: DualPortSpec {
                rows: 4,
                cols: 8,
                electrical: ArrayParams::default(),
                accesses: vec![
                    AccessSpec {
                        write_row: 1,
                        read_row: 2,
                    },
                    AccessSpec {
                        write_row: 3,
                        read_row: 0,
                    },
                ],
            },
            cam: CamSpec {
                rows: 4,
                word_width: 4,
                electrical: CamParams::default(),
                words: Vec::new(),
                keys: Vec::new(),
            },
        }
    }

    /// Defaults overlaid with the JSON document `user` (objects merge
    /// recursively, everything else replaces). Unknown keys are rejected.
    pub fn from_json(user: &str) -> Result<Self, String> {
        let user: Value = serde_json::from_str(user).map_err(|e| format!("config: {e}"))?;
        if !user.is_object() {
            return Err("config: top level must be a JSON object".into());
        }
        let mut merged = serde_json::to_value(Self::defaults()).map_err(|e| e.to_string())?;
        merge(&mut merged, user);
        serde_json::from_value(merged).map_err(|e| format!("config: {e}"))
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text =
            std::fs::read_to_string(path).map_err(|e| format!("config {}: {e}", path.display()))?;
        Self::from_json(&text)
    }

    /// Checks every physical parameter block against its own invariants.
    pub fn validate(&self, experiment: Experiment) -> Result<(), String> {
        if let Some(name) = &self.experiment {
            if name != experiment.name() {
                return Err(format!(
                    "config is for experiment `{name}`, not `{}`",
                    experiment.name()
                ));
            }
        }
        let tag = |block: &'static str| move |e: Error| format!("{block}: {e}");
        self.magnet.validate().map_err(tag("magnet"))?;
        self.stimulus.validate().map_err(tag("stimulus"))?;
        self.sim.validate().map_err(tag("sim"))?;
        self.stack.validate().map_err(tag("stack"))?;
        self.leads.validate().map_err(tag("leads"))?;
        self.capacitor.validate().map_err(tag("capacitor"))?;
        self.dual_port
            .electrical
            .validate()
            .map_err(tag("dual_port.electrical"))?;
        self.cam
            .electrical
            .validate()
            .map_err(tag("cam.electrical"))?;
        if !(self.temperature.is_finite() && self.temperature >= 0.0) {
            return Err(format!(
                "temperature: must be >= 0, got {}",
                self.temperature
            ));
        }
        if !(self.protocol.pulse_duration > 0.0 && self.protocol.relaxation >= 0.0) {
            return Err("protocol: pulse_duration must be > 0 and relaxation >= 0".into());
        }
        match experiment {
            Experiment::Switchprob => {
                if self.n_trials < 100 {
                    return Err(format!(
                        "n_trials: need at least 100, got {}",
                        self.n_trials
                    ));
                }
                self.switch_sweep
                    .voltage
                    .values()
                    .map_err(|e| format!("switch_sweep.voltage: {e}"))?;
                if self.switch_sweep.alpha_me_over_c.is_empty()
                    || self
                        .switch_sweep
                        .alpha_me_over_c
                        .iter()
                        .any(|a| !(*a > 0.0))
                {
                    return Err("switch_sweep.alpha_me_over_c: need positive values".into());
                }
            }
            Experiment::TmrSweep => {
                for t in self
                    .tmr_sweep
                    .t_mgo_nm
                    .values()
                    .map_err(|e| format!("tmr_sweep.t_mgo_nm: {e}"))?
                {
                    self.stack
                        .with_thickness(t * 1e-9)
                        .validate()
                        .map_err(tag("tmr_sweep.t_mgo_nm"))?;
                }
                if self.tmr_sweep.w_over_l.iter().any(|w| !(*w > 0.0)) {
                    return Err("tmr_sweep.w_over_l: need positive values".into());
                }
            }
            Experiment::DualportDemo | Experiment::MemoryReport => {
                if self.dual_port.rows < 2 || self.dual_port.cols == 0 {
                    return Err("dual_port: need at least 2 rows and 1 column".into());
                }
                if self.cam.rows == 0 || self.cam.word_width == 0 {
                    return Err("cam: need at least 1 row and 1 bit".into());
                }
            }
            Experiment::CamDemo => {
                if self.cam.rows == 0 || self.cam.word_width == 0 {
                    return Err("cam: need at least 1 row and 1 bit".into());
                }
            }
            Experiment::Trajectory => {}
        }
        Ok(())
    }
}

fn merge(base: &mut Value, over: Value) {
    match (base, over) {
        // tagged enums are replaced whole so a new variant drops old fields
        (Value::Object(b), Value::Object(o)) if !o.contains_key("kind") => {
            for (k, v) in o {
                match b.get_mut(&k) {
                    Some(slot) => merge(slot, v),
                    None => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (slot, v) => *slot = v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_override_keeps_other_defaults() {
        let c = ExperimentConfig::from_json(
            r#"{"stimulus": {"v_me": 0.1}, "magnet": {"alpha": 0.05}}"#,
        )
        .unwrap();
        assert_eq!(c.stimulus.v_me, 0.1);
        assert_eq!(c.stimulus.axis, -Vec3::Z);
        assert_eq!(c.magnet.alpha, 0.05);
        assert_eq!(c.magnet.ms, MagnetParams::default().ms);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let e = ExperimentConfig::from_json(r#"{"magnet": {"alhpa": 0.05}}"#).unwrap_err();
        assert!(e.contains("alhpa"), "{e}");
        assert!(ExperimentConfig::from_json(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn validation_names_the_field() {
        let c = ExperimentConfig::from_json(r#"{"magnet": {"ms": -1.0}}"#).unwrap();
        let e = c.validate(Experiment::Trajectory).unwrap_err();
        assert!(e.contains("magnet") && e.contains("ms"), "{e}");
        let c = ExperimentConfig::from_json(r#"{"n_trials": 10}"#).unwrap();
        assert!(c.validate(Experiment::Switchprob).is_err());
        let c = ExperimentConfig::from_json(r#"{"experiment": "cam-demo"}"#).unwrap();
        assert!(c.validate(Experiment::TmrSweep).is_err());
    }

    #[test]
    fn sweeps() {
        assert_eq!(
            Sweep::linear(0.0, 1.0, 3).values().unwrap(),
            vec![0.0, 0.5, 1.0]
        );
        let log = Sweep {
            from: 1.0,
            to: 100.0,
            steps: 3,
            scale: Scale::Log,
        };
        let v = log.values().unwrap();
        assert!((v[1] - 10.0).abs() < 1e-12);
        assert!(Sweep::linear(0.0, 1.0, 0).values().is_err());
        assert!(Sweep { from: 0.0, ..log }.values().is_err());
        let s: Sweep = serde_json::from_str(r#"{"from":0,"to":1,"steps":2}"#).unwrap();
        assert_eq!(s.scale, Scale::Linear);
    }

    #[test]
    fn default_thickness_sweep_is_on_lattice() {
        let c = ExperimentConfig::defaults();
        assert!(c.validate(Experiment::TmrSweep).is_ok());
    }
}
