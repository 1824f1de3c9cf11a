//! Fock-basis simulation of continuous-variable entanglement distillation
//! (malting by phonon subtraction, mashing by Gaussification) on states stored
//! in lossy quantum memories.
//!
//! The crate is organized bottom-up:
//!
//! * [`fock`]: truncated two-mode density matrices and the squeezed vacuum.
//! * [`channels`]: memory loss, phonon detection and the mashing contraction.
//! * [`entanglement`]: logarithmic negativity.
//! * [`protocol`]: malting schedules, mashing iteration, m_c and ⟨E⟩.
//! * [`sweep`]: parameter sweeps written as CSV, driven by the `distillery` binary.

pub mod channels;
pub mod entanglement;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod protocol;
pub mod sweep;

pub use error::{Error, Result};
pub use fock::{SqueezingParam, TruncationConfig, TwoModeState};
