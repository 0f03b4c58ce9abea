//! Spin-resolved 1D tight-binding NEGF transport through an FM/MgO/FM stack.
//!
//! Each spin channel is a single mode. The P/AP configurations differ only in
//! which band the right contact presents to a given left-contact spin. The 1D
//! conductance is scaled to the junction area by a transverse mode density.

pub mod negf;
pub mod params;
pub mod resistance;

pub use negf::{
    broadening, lead_self_energy, transmission, Chain, LeadChannel, TransmissionSpectrum,
};
pub use params::{
    hopping_energy, BarrierStack, LeadParams, MagneticConfig, Spin, DEFAULT_MODE_DENSITY,
};
pub use resistance::{
    adaptive_trapezoid, bitcell_tmr, calibrate_mode_density, conductance_per_mode,
    current_per_mode, mtj_resistance, series_transistor_resistance, thermal_energy, tmr, tmr_sweep,
    ResistancePair, SeriesTransistor, TmrSweepRow,
};
