//! Beam-splitter derived maps: memory loss, phonon detection and mashing.

mod amplitudes;
mod kraus;
mod mash;

pub use amplitudes::{bs_amplitude, fock_bs_element, fock_bs_element_with, kraus_operator, BsConvention};
pub use kraus::{
    detect_one_mode, detect_phonons, loss_event, repeated_loss, LossChannelParams, SubtractionParams,
};
pub use mash::{mash_step, mash_step_with, MashConfig, MashOutput, VacuumProjection};
