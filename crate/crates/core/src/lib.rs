//! Simulation toolkit for magneto-electric (ME) switched spintronic memories.
//!
//! The crate is organized bottom-up:
//!
//! * [`magnetodynamics`]: stochastic macrospin LLG integration (Heun) with
//!   demagnetization, interface anisotropy, thermal and ME field terms, plus
//!   Monte Carlo switching statistics.
//! * [`transport`]: 1D spin-resolved tight-binding NEGF solver giving MTJ
//!   resistance and TMR, and the bit-cell TMR with a series access transistor.
//! * [`device`]: ME-MTJ and ME-XNOR device models with capacitor write energy.
//! * [`memory_array`]: dual-port ME-MTJ array.
//! * [`cam_array`]: ME-XNOR content-addressable memory.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cam_array;
pub mod consts;
pub mod device;
pub mod error;
pub mod io;
pub mod magnetodynamics;
pub mod memory_array;
pub mod stats;
pub mod transport;
pub mod vec3;

pub use error::{Error, Result};
pub use vec3::Vec3;
