use crate::channels::{mash_step_with, MashConfig};
use crate::entanglement::log_negativity;
use crate::error::Result;
use crate::fock::TwoModeState;

pub const DEFAULT_MAX_ITER: usize = 50;

/// Result of iterating the mashing map ρ_{i+1} = M(ρ_i, ρ₀).
#[derive(Debug, Clone, PartialEq)]
pub struct DistillationOutcome {
    pub rho_final: TwoModeState,
    /// Number of mashing steps performed.
    pub iterations: usize,
    /// Whether successive iterates came within `conv_tol` in trace distance.
    pub converged: bool,
    /// Vacuum-detection probability of each step.
    pub mash_probs: Vec<f64>,
    /// N(ρ₀), N(ρ₁), …, N(ρ_final); length `iterations + 1`.
    pub negativity_by_stage: Vec<f64>,
    /// Largest per-step weight dropped at the Fock cutoff.
    pub max_discarded_weight: f64,
}

impl DistillationOutcome {
    pub fn final_negativity(&self) -> f64 {
        *self.negativity_by_stage.last().expect("stage 0 is always present")
    }

    /// Joint probability of all vacuum detections.
    pub fn success_probability(&self) -> f64 {
        self.mash_probs.iter().product()
    }
}

/// Iterates mashing until the trace distance between successive iterates
/// drops below `conv_tol` or `max_iter` steps have run. The first step
/// interferes two copies of `rho_0`.
pub fn mash_iterate(rho_0: &TwoModeState, max_iter: usize) -> Result<DistillationOutcome> {
    mash_iterate_with(rho_0, max_iter, MashConfig::default(), true)
}

/// As [`mash_iterate`]; with `stop_on_convergence = false` exactly
/// `max_iter` steps are run.
pub fn mash_iterate_with(
    rho_0: &TwoModeState,
    max_iter: usize,
    config: MashConfig,
    stop_on_convergence: bool,
) -> Result<DistillationOutcome> {
    let conv_tol = rho_0.cfg().conv_tol();
    let mut current = rho_0.clone();
    let mut mash_probs = Vec::new();
    let mut negativity_by_stage = vec![log_negativity(rho_0)?.value];
    let mut max_discarded_weight: f64 = 0.0;
    let mut converged = false;
    for _ in 0..max_iter {
        let out = mash_step_with(&current, rho_0, config)?;
        let distance = out.state.trace_distance(&current)?;
        mash_probs.push(out.probability);
        negativity_by_stage.push(log_negativity(&out.state)?.value);
        max_discarded_weight = max_discarded_weight.max(out.discarded_weight);
        current = out.state;
        converged = distance < conv_tol;
        if converged && stop_on_convergence {
            break;
        }
    }
    Ok(DistillationOutcome {
        rho_final: current,
        iterations: mash_probs.len(),
        converged,
        mash_probs,
        negativity_by_stage,
        max_discarded_weight,
    })
}
