//! Monte Carlo write statistics: switching probability, reversal times and
//! voltage sweeps.
//!
//! Every trial owns a ChaCha8 stream selected by `(seed, trial_index)`, so
//! results do not depend on how rayon schedules the trials.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fields::me_field;
use super::integrator::evolve;
use super::params::{steps_for, MEStimulus, MagnetParams, MagnetizationState, SimConfig};
use super::trajectory::ReversalDetector;
use crate::consts::{ALPHA_ME_UNIT, KB};
use crate::stats::BinomialEstimate;
use crate::vec3::Vec3;

/// How each trial's pre-pulse state is prepared.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum InitialCondition {
    /// Start on the easy axis and relax at zero drive for `duration` seconds.
    Equilibrate { duration: f64 },
    /// Small-angle Gaussian tilt with per-component variance kT/(2·K_eff·V).
    GaussianTilt,
    /// Exactly on the easy axis.
    Aligned,
}

impl Default for InitialCondition {
    fn default() -> Self {
        InitialCondition::Equilibrate { duration: 2e-9 }
    }
}

/// Pulse protocol shared by all trials.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PulseProtocol {
    /// Pulse length, s.
    pub pulse_duration: f64,
    /// Zero-drive window after the pulse before the final state is judged, s.
    pub relaxation: f64,
    pub initial: InitialCondition,
    /// Easy-axis direction the magnet starts in: +1 (+z) or −1 (−z).
    pub start_sign: f64,
}

impl Default for PulseProtocol {
    fn default() -> Self {
        Self {
            pulse_duration: 1e-9,
            relaxation: 0.0,
            initial: InitialCondition::default(),
            start_sign: 1.0,
        }
    }
}

/// Result of one Monte Carlo trial.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrialOutcome {
    /// Magnetization at the end of the pulse (and relaxation window).
    pub final_m: Vec3,
    /// Reversal time measured from the pulse onset.
    pub reversal_time: Option<f64>,
    pub switched: bool,
}

/// Random stream for trial `trial` of an experiment seeded by `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn initial_state<R: Rng + ?Sized>(
    p: &MagnetParams,
    proto: &PulseProtocol,
    cfg: &SimConfig,
    rng: &mut R,
) -> MagnetizationState {
    let axis = Vec3::Z * proto.start_sign.signum();
    match proto.initial {
        InitialCondition::Aligned => MagnetizationState::new(axis),
        InitialCondition::GaussianTilt => {
            let k_eff_v = p.effective_anisotropy() * p.volume();
            let sigma = if p.temperature > 0.0 && k_eff_v > 0.0 {
                (KB * p.temperature / (2.0 * k_eff_v)).sqrt()
            } else {
                0.0
            };
            let tx: f64 = rng.sample::<f64, _>(StandardNormal) * sigma;
            let ty: f64 = rng.sample::<f64, _>(StandardNormal) * sigma;
            MagnetizationState::new(Vec3::new(tx, ty, axis.z))
        }
        InitialCondition::Equilibrate { duration } => {
            let steps = steps_for(duration, cfg.dt);
            let s = evolve(
                MagnetizationState::new(axis),
                p,
                Vec3::ZERO,
                steps,
                cfg.dt,
                cfg.renormalize,
                rng,
                |_| {},
            );
            MagnetizationState { m: s.m, t: 0.0 }
        }
    }
}

/// Pre-pulse magnetization of trial `trial`, exactly as [`run_trial`]
/// prepares it.
pub fn initial_magnetization(
    p: &MagnetParams,
    proto: &PulseProtocol,
    cfg: &SimConfig,
    trial: u64,
) -> Vec3 {
    let mut rng = trial_rng(cfg.seed, trial);
    initial_state(p, proto, cfg, &mut rng).m
}

/// Runs a single trial with its own stream `(cfg.seed, trial)`.
pub fn run_trial(
    p: &MagnetParams,
    s: &MEStimulus,
    proto: &PulseProtocol,
    cfg: &SimConfig,
    trial: u64,
) -> TrialOutcome {
    let mut rng = trial_rng(cfg.seed, trial);
    let start = initial_state(p, proto, cfg, &mut rng);
    let mut detector =
        ReversalDetector::new(Vec3::Z * proto.start_sign.signum(), cfg.reversal_threshold);
    let pulse_steps = steps_for(proto.pulse_duration, cfg.dt);
    let applied = me_field(s);
    let after_pulse = evolve(
        start,
        p,
        applied,
        pulse_steps,
        cfg.dt,
        cfg.renormalize,
        &mut rng,
        |st| detector.observe(st, 0.0),
    );
    let relax_steps = steps_for(proto.relaxation, cfg.dt);
    let end = evolve(
        after_pulse,
        p,
        Vec3::ZERO,
        relax_steps,
        cfg.dt,
        cfg.renormalize,
        &mut rng,
        |_| {},
    );
    let switched = proto.start_sign.signum() * end.m.z <= -cfg.reversal_threshold;
    TrialOutcome {
        final_m: end.m,
        reversal_time: detector.time,
        switched,
    }
}

/// Runs `n_trials` independent trials in parallel, returned in trial order.
pub fn run_trials(
    p: &MagnetParams,
    s: &MEStimulus,
    proto: &PulseProtocol,
    n_trials: u64,
    cfg: &SimConfig,
) -> Vec<TrialOutcome> {
    (0..n_trials)
        .into_par_iter()
        .map(|i| run_trial(p, s, proto, cfg, i))
        .collect()
}

/// Fraction of trials that end reversed, with a 95% Wilson interval.
pub fn switching_probability(
    p: &MagnetParams,
    s: &MEStimulus,
    proto: &PulseProtocol,
    n_trials: u64,
    cfg: &SimConfig,
) -> BinomialEstimate {
    let n_trials = n_trials.max(1);
    let hits = run_trials(p, s, proto, n_trials, cfg)
        .iter()
        .filter(|o| o.switched)
        .count() as u64;
    BinomialEstimate::wilson(hits, n_trials)
}

/// Median of the reversal times, counting non-reversed trials as +∞.
pub fn median_reversal_time(outcomes: &[TrialOutcome]) -> Option<f64> {
    if outcomes.is_empty() {
        return None;
    }
    let mut times: Vec<f64> = outcomes
        .iter()
        .map(|o| o.reversal_time.unwrap_or(f64::INFINITY))
        .collect();
    times.sort_by(f64::total_cmp);
    let n = times.len();
    let med = if n % 2 == 1 {
        times[n / 2]
    } else {
        0.5 * (times[n / 2 - 1] + times[n / 2])
    };
    med.is_finite().then_some(med)
}

/// One point of a switching-probability sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub v_volts: f64,
    pub alpha_me_over_c: f64,
    pub estimate: BinomialEstimate,
}

/// Switching probability over every (α_ME, V) pair, sorted by (α_ME, V).
///
/// Each point reuses `cfg.seed` with its own trial streams, so a point's value
/// does not depend on which other points are in the sweep.
pub fn switching_sweep(
    p: &MagnetParams,
    base: &MEStimulus,
    voltages: &[f64],
    alphas_over_c: &[f64],
    proto: &PulseProtocol,
    n_trials: u64,
    cfg: &SimConfig,
) -> Vec<SweepPoint> {
    let mut alphas = alphas_over_c.to_vec();
    alphas.sort_by(f64::total_cmp);
    let mut vs = voltages.to_vec();
    vs.sort_by(f64::total_cmp);
    let mut out = Vec::with_capacity(alphas.len() * vs.len());
    for &a in &alphas {
        for &v in &vs {
            let s = MEStimulus {
                alpha_me: a * ALPHA_ME_UNIT,
                v_me: v,
                ..*base
            };
            out.push(SweepPoint {
                v_volts: v,
                alpha_me_over_c: a,
                estimate: switching_probability(p, &s, proto, n_trials, cfg),
            });
        }
    }
    out
}

/// Voltage where the probability first reaches 0.5, linearly interpolated
/// between neighbouring sweep points. `points` must be sorted by voltage.
pub fn half_switching_voltage(points: &[(f64, f64)]) -> Option<f64> {
    let first = points.first()?;
    if first.1 >= 0.5 {
        return Some(first.0);
    }
    points.windows(2).find_map(|w| {
        let ((v0, p0), (v1, p1)) = (w[0], w[1]);
        (p0 < 0.5 && p1 >= 0.5).then(|| v0 + (0.5 - p0) * (v1 - v0) / (p1 - p0))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fast_cfg() -> SimConfig {
        SimConfig {
            dt: 0.2e-12,
            seed: 5,
            ..SimConfig::default()
        }
    }

    #[test]
    fn trial_streams_are_independent_of_order() {
        let p = MagnetParams::default();
        let s = MEStimulus::default().with_voltage(-0.065);
        let proto = PulseProtocol {
            pulse_duration: 0.3e-9,
            initial: InitialCondition::GaussianTilt,
            ..PulseProtocol::default()
        };
        let cfg = fast_cfg();
        let all = run_trials(&p, &s, &proto, 6, &cfg);
        for (i, o) in all.iter().enumerate().rev() {
            assert_eq!(*o, run_trial(&p, &s, &proto, &cfg, i as u64));
        }
    }

    #[test]
    fn zero_temperature_zero_drive_never_switches() {
        let p = MagnetParams {
            temperature: 0.0,
            ..MagnetParams::default()
        };
        let proto = PulseProtocol {
            initial: InitialCondition::Aligned,
            pulse_duration: 0.5e-9,
            ..PulseProtocol::default()
        };
        let est = switching_probability(&p, &MEStimulus::default(), &proto, 4, &fast_cfg());
        assert_eq!(est.successes, 0);
    }

    #[test]
    fn strong_drive_switches() {
        let p = MagnetParams::default();
        let s = MEStimulus::default().with_voltage(-0.065);
        let proto = PulseProtocol {
            initial: InitialCondition::GaussianTilt,
            ..PulseProtocol::default()
        };
        let est = switching_probability(&p, &s, &proto, 20, &fast_cfg());
        assert_eq!(est.successes, 20);
    }

    #[test]
    fn median_handles_missing_reversals() {
        let mk = |t: Option<f64>| TrialOutcome {
            final_m: Vec3::Z,
            reversal_time: t,
            switched: t.is_some(),
        };
        let v = vec![mk(Some(3.0)), mk(None), mk(Some(1.0))];
        assert_eq!(median_reversal_time(&v), Some(3.0));
        let v = vec![mk(None), mk(None), mk(Some(1.0))];
        assert_eq!(median_reversal_time(&v), None);
    }

    #[test]
    fn half_voltage_interpolates() {
        let pts = [(0.0, 0.0), (1.0, 0.2), (2.0, 0.8), (3.0, 1.0)];
        assert!((half_switching_voltage(&pts).unwrap() - 1.5).abs() < 1e-12);
        assert_eq!(half_switching_voltage(&[(0.0, 0.1)]), None);
    }
}
