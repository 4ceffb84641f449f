//! Explicit similarity solutions of two-phase binary-alloy solidification with
//! flux, convective and fixed-temperature conditions at the fixed face.

pub mod cli;
pub mod fields;
pub mod model;
pub mod phase_diagram;
pub mod solver;
pub mod specfun;
pub mod verify;
