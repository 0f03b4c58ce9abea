//! Physical constants (SI, CODATA 2018).

/// Vacuum permeability, T·m/A.
pub const MU0: f64 = 1.256_637_062_12e-6;
/// Vacuum permittivity, F/m.
pub const EPS0: f64 = 8.854_187_812_8e-12;
/// Boltzmann constant, J/K.
pub const KB: f64 = 1.380_649e-23;
/// Elementary charge, C.
pub const Q: f64 = 1.602_176_634e-19;
/// Planck constant, J·s.
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Reduced Planck constant, J·s.
pub const HBAR: f64 = PLANCK / (2.0 * std::f64::consts::PI);
/// Electron rest mass, kg.
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
/// Speed of light, m/s.
pub const C_LIGHT: f64 = 299_792_458.0;

/// Gyromagnetic ratio in the γ·μ0 convention, m/(A·s).
///
/// With this value `GAMMA * H` for a field `H` in A/m is an angular rate in
/// rad/s. Every field in this crate is expressed in A/m.
pub const GAMMA: f64 = 2.211e5;

/// Conductance quantum per spin channel, q²/h, in siemens.
pub const G_QUANTUM: f64 = Q * Q / PLANCK;

/// ME coefficient of 1/c in s/m.
pub const ALPHA_ME_UNIT: f64 = 1.0 / C_LIGHT;

/// Femtojoule in joules.
pub const FJ: f64 = 1e-15;
