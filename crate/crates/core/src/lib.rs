//! Frequency-domain model of infrared-to-visible upconversion in a molecular
//! optomechanical cavity.
//!
//! Three bosonic modes are coupled: a visible plasmonic mode `a` driven by a
//! strong pump, an infrared mode `c` that receives the signal, and the
//! collective vibrational mode `B` of `N` identical molecules. The crate
//! solves the mean-field steady state, linearizes the quantum Langevin
//! equations around it, and evaluates the input-output scattering matrix,
//! conversion efficiencies, added noise and linear stability.
//!
//! # Units
//!
//! Every frequency and rate is an ordinary frequency in THz, i.e. the number
//! `X` in `2π × X THz`. The model is homogeneous in frequency, so the common
//! factor `2π` cancels in every dimensionless output (scattering
//! probabilities, added noise quanta, photon numbers).
//!
//! The crate is `no_std` and only needs `alloc` for tables and branch lists.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod axis;
pub mod dynmat;
pub mod error;
pub mod linalg;
pub mod params;
pub mod rwa;
pub mod scattering;
pub mod stability;
pub mod steady_state;
pub mod sweep;

pub use error::{Error, Result};
pub use linalg::C64;
pub use params::{DriveSpec, Freq, OperatingPoint, SystemParams, ValidationError};
