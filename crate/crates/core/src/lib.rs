//! Genuine tripartite nonlocality and entanglement of GHZ-like Dirac-field
//! states shared with observers hovering near a Schwarzschild black hole,
//! under generalized amplitude damping and local filtering.
//!
//! The pipeline runs
//! [`spacetime::dilate_state`] → [`noise::evolve`] → [`reduced::reduce`] →
//! [`measures::measure`], and [`sweep`] drives it over parameter grids.

pub mod config;
pub mod error;
pub mod measures;
pub mod noise;
pub mod optimize;
pub mod qcore;
pub mod reduced;
pub mod spacetime;
pub mod sweep;
pub mod verify;

pub use error::{CrossingKind, Error, Result};
pub use measures::{MeasureResult, MeasureSet, SearchConfig};
pub use noise::{FilterParams, GadParams};
pub use qcore::{DensityMatrix, ModeLabel, PureState, XState};
pub use reduced::{ModelParams, Subsystem};
