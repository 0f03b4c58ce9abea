//! Stochastic macrospin dynamics of an ME-driven free layer.
//!
//! The Gilbert equation is integrated in its explicit Landau-Lifshitz form
//! with a stochastic Heun scheme. The effective field is the sum of
//! demagnetization, interface anisotropy, ME and Brown thermal fields.

mod demag;
pub mod fields;
pub mod integrator;
pub mod params;
pub mod switching;
pub mod trajectory;

pub use fields::{
    anisotropy_field, demag_field, effective_field, llg_rhs, magnetic_energy, me_field,
    thermal_field,
};
pub use integrator::{heun_step, step_in_field};
pub use params::{DemagFactors, MEStimulus, MagnetParams, MagnetizationState, SimConfig};
pub use switching::{
    half_switching_voltage, initial_magnetization, median_reversal_time, run_trial, run_trials,
    switching_probability, switching_sweep, trial_rng, InitialCondition, PulseProtocol, SweepPoint,
    TrialOutcome,
};
pub use trajectory::{
    simulate_trajectory, PulseSegment, StimulusSchedule, Trajectory, TrajectorySample,
};
