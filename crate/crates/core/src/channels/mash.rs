//! Vacuum-post-selected interference of two two-mode states on a pair of
//! 50/50 beam splitters.
//!
//! The iterate ρ_i occupies memories (A₂, B₂) and the fresh resource ρ₀ sits
//! in (A₁, B₁). Beam splitters act on (A₁, A₂) and on (B₁, B₂), with A₁/B₁ as
//! input port 1. The projection keeps only a four-index contraction: no
//! four-mode density matrix is ever formed.

use num_complex::Complex64 as C64;

use super::amplitudes::{fock_bs_element_with, BsConvention};
use super::kraus::nonzero_entries;
use crate::error::{Error, Result};
use crate::fock::TwoModeState;

/// Which output ports are projected onto vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VacuumProjection {
    /// Vacuum on output port 1 of each beam splitter; output port 2 of the A
    /// splitter and of the B splitter form the new state.
    #[default]
    OnePortPerArm,
    /// Vacuum on both outputs of the A splitter; the two B outputs form the
    /// new state (first B output in slot A, second in slot B).
    BothPortsOfA,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MashConfig {
    pub projection: VacuumProjection,
    pub convention: BsConvention,
}

/// Result of one mashing step.
#[derive(Debug, Clone, PartialEq)]
pub struct MashOutput {
    /// Normalized output state.
    pub state: TwoModeState,
    /// Probability of the vacuum detections.
    pub probability: f64,
    /// Part of `probability` that landed above the Fock cutoff and was dropped.
    pub discarded_weight: f64,
}

/// ρ_{i+1} ∝ ⟨vac| W (ρ_i ⊗ ρ₀) W† |vac⟩ with the default projection.
pub fn mash_step(rho_i: &TwoModeState, rho_0: &TwoModeState) -> Result<MashOutput> {
    mash_step_with(rho_i, rho_0, MashConfig::default())
}

fn check_normalized(state: &TwoModeState) -> Result<()> {
    let tol = state.cfg().trace_tol();
    if (state.trace() - 1.0).abs() > tol.max(1e-12) {
        return Err(Error::OutOfRange {
            name: "trace",
            value: state.trace(),
            expected: "mashing inputs must be normalized",
        });
    }
    Ok(())
}

pub fn mash_step_with(rho_i: &TwoModeState, rho_0: &TwoModeState, config: MashConfig) -> Result<MashOutput> {
    rho_i.check_same_dim(rho_0)?;
    check_normalized(rho_i)?;
    check_normalized(rho_0)?;
    let cfg = *rho_i.cfg();
    let d = cfg.dim();
    let t = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = TwoModeState::zeros(cfg);
    let mut full_trace = 0.0;

    match config.projection {
        VacuumProjection::OnePortPerArm => {
            // ⟨0, n₁+n₂| U |n₁, n₂⟩
            let amp: Vec<Vec<f64>> = (0..d)
                .map(|n1| {
                    (0..d)
                        .map(|n2| fock_bs_element_with(n1, n2, 0, n1 + n2, t, config.convention))
                        .collect()
                })
                .collect();
            let fresh = nonzero_entries(rho_0);
            let held = nonzero_entries(rho_i);
            for &(n1, m1, k1, l1, v0) in &fresh {
                for &(n2, m2, k2, l2, vi) in &held {
                    let (a, b, ap, bp) = (n1 + n2, m1 + m2, k1 + k2, l1 + l2);
                    let w = amp[n1][n2] * amp[m1][m2] * amp[k1][k2] * amp[l1][l2];
                    let v = v0 * vi * w;
                    if a == ap && b == bp {
                        full_trace += v.re;
                    }
                    if a < d && b < d && ap < d && bp < d {
                        out[(a * d + b, ap * d + bp)] += v;
                    }
                }
            }
        }
        VacuumProjection::BothPortsOfA => {
            let d_out = 2 * d - 1;
            let u: Vec<Vec<Vec<f64>>> = (0..d)
                .map(|m1| {
                    (0..d)
                        .map(|m2| {
                            (0..d_out)
                                .map(|b1| {
                                    if b1 <= m1 + m2 {
                                        fock_bs_element_with(m1, m2, b1, m1 + m2 - b1, t, config.convention)
                                    } else {
                                        0.0
                                    }
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect();
            let fresh: Vec<_> = nonzero_entries(rho_0).into_iter().filter(|e| e.0 == 0 && e.2 == 0).collect();
            let held: Vec<_> = nonzero_entries(rho_i).into_iter().filter(|e| e.0 == 0 && e.2 == 0).collect();
            for &(_, m1, _, l1, v0) in &fresh {
                for &(_, m2, _, l2, vi) in &held {
                    let v = v0 * vi;
                    let (total, total_p) = (m1 + m2, l1 + l2);
                    for b1 in 0..=total {
                        let b2 = total - b1;
                        let wk = u[m1][m2][b1];
                        if wk == 0.0 {
                            continue;
                        }
                        for bp1 in 0..=total_p {
                            let bp2 = total_p - bp1;
                            let w = wk * u[l1][l2][bp1];
                            if w == 0.0 {
                                continue;
                            }
                            let x = v * w;
                            if b1 == bp1 && b2 == bp2 {
                                full_trace += x.re;
                            }
                            if b1 < d && b2 < d && bp1 < d && bp2 < d {
                                out[(b1 * d + b2, bp1 * d + bp2)] += x;
                            }
                        }
                    }
                }
            }
        }
    }

    let projected = TwoModeState::from_raw(out, cfg);
    let kept = projected.trace();
    if !(full_trace > cfg.trace_tol()) || !(kept > cfg.trace_tol()) {
        return Err(Error::ZeroTrace { trace: full_trace });
    }
    let state = TwoModeState::from_raw(projected.matrix() / C64::new(kept, 0.0), cfg);
    Ok(MashOutput {
        state,
        probability: full_trace,
        discarded_weight: (full_trace - kept).max(0.0),
    })
}
