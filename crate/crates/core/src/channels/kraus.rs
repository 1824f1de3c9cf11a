//! Memory loss and phonon detection as single-mode Kraus maps.

use num_complex::Complex64 as C64;

use super::amplitudes::amplitude_table;
use crate::error::{Error, Result};
use crate::fock::{Mode, TwoModeState};

/// One clock-cycle loss event: a beam splitter of amplitude transmissivity `t`
/// whose reflected port is lost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossChannelParams {
    t: f64,
}

impl LossChannelParams {
    /// `t ∈ (0, 1]`; `t = 1` is the lossless memory.
    pub fn from_t(t: f64) -> Result<Self> {
        if t > 0.0 && t <= 1.0 {
            Ok(Self { t })
        } else {
            Err(Error::OutOfRange {
                name: "t",
                value: t,
                expected: "t must be in (0,1]",
            })
        }
    }

    /// Time-bandwidth product τ = 1/(1−t²), τ > 1.
    pub fn from_tau(tau: f64) -> Result<Self> {
        if !(tau > 1.0) {
            return Err(Error::OutOfRange {
                name: "tau",
                value: tau,
                expected: "tau must be > 1",
            });
        }
        Self::from_t((1.0 - 1.0 / tau).sqrt())
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// τ = 1/(1−t²); infinite for a lossless memory.
    pub fn tau(&self) -> f64 {
        if self.t >= 1.0 {
            f64::INFINITY
        } else {
            1.0 / (1.0 - self.t * self.t)
        }
    }
}

/// Transmissivity of the beam-splitter interaction used for phonon subtraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubtractionParams {
    t_s: f64,
}

impl SubtractionParams {
    /// `t_s ∈ (0, 1]`. At `t_s = 1` nothing is ever retrieved, so every
    /// subtraction outcome has probability zero.
    pub fn new(t_s: f64) -> Result<Self> {
        if t_s > 0.0 && t_s <= 1.0 {
            Ok(Self { t_s })
        } else {
            Err(Error::OutOfRange {
                name: "t_s",
                value: t_s,
                expected: "t_s must be in (0,1]",
            })
        }
    }

    pub fn t_s(&self) -> f64 {
        self.t_s
    }
}

/// Nonzero entries of a state as (n, m, k, l, value).
pub(crate) fn nonzero_entries(state: &TwoModeState) -> Vec<(usize, usize, usize, usize, C64)> {
    let d = state.dim();
    let rho = state.matrix();
    let mut out = Vec::new();
    for col in 0..d * d {
        for row in 0..d * d {
            let v = rho[(row, col)];
            if v.re != 0.0 || v.im != 0.0 {
                out.push((row / d, row % d, col / d, col % d, v));
            }
        }
    }
    out
}

/// Applies Σ_{q ∈ outcomes} M_q ρ M_q† on one mode, M_q = Σ_n a[n][q] |n−q⟩⟨n|.
fn sandwich(state: &TwoModeState, mode: Mode, table: &[Vec<f64>], outcomes: impl Iterator<Item = usize> + Clone) -> TwoModeState {
    let d = state.dim();
    let mut out = TwoModeState::zeros(*state.cfg());
    for (n, m, k, l, v) in nonzero_entries(state) {
        let (ket, bra) = match mode {
            Mode::A => (n, k),
            Mode::B => (m, l),
        };
        for q in outcomes.clone() {
            if q > ket || q > bra {
                continue;
            }
            let w = table[ket][q] * table[bra][q];
            if w == 0.0 {
                continue;
            }
            let (row, col) = match mode {
                Mode::A => ((n - q) * d + m, (k - q) * d + l),
                Mode::B => (n * d + (m - q), k * d + (l - q)),
            };
            out[(row, col)] += v * w;
        }
    }
    TwoModeState::from_raw(out, *state.cfg())
}

/// Both modes pass an independent loss channel with transmissivity `t`.
pub fn loss_event(state: &TwoModeState, params: LossChannelParams) -> TwoModeState {
    if params.t() >= 1.0 {
        return state.clone();
    }
    let d = state.dim();
    let table = amplitude_table(d, params.t());
    let a = sandwich(state, Mode::A, &table, 0..d);
    sandwich(&a, Mode::B, &table, 0..d)
}

/// `m` successive loss events; `m = 0` is the identity.
pub fn repeated_loss(state: &TwoModeState, params: LossChannelParams, m: usize) -> TwoModeState {
    (0..m).fold(state.clone(), |s, _| loss_event(&s, params))
}

fn check_outcome(state: &TwoModeState, q: usize) -> Result<()> {
    if q > state.cfg().n_max() {
        return Err(Error::Domain(format!(
            "outcome q = {q} exceeds n_max = {}",
            state.cfg().n_max()
        )));
    }
    Ok(())
}

/// Detects `q_a` phonons on mode A and `q_b` on mode B through subtraction
/// beam splitters of transmissivity t_s. The result is unnormalized; its trace
/// is the joint outcome probability.
pub fn detect_phonons(state: &TwoModeState, params: SubtractionParams, q_a: usize, q_b: usize) -> Result<TwoModeState> {
    check_outcome(state, q_a)?;
    check_outcome(state, q_b)?;
    let table = amplitude_table(state.dim(), params.t_s());
    let a = sandwich(state, Mode::A, &table, q_a..=q_a);
    Ok(sandwich(&a, Mode::B, &table, q_b..=q_b))
}

/// Detects `q` phonons on one mode only; the other mode is untouched.
pub fn detect_one_mode(state: &TwoModeState, params: SubtractionParams, mode: Mode, q: usize) -> Result<TwoModeState> {
    check_outcome(state, q)?;
    let table = amplitude_table(state.dim(), params.t_s());
    Ok(sandwich(state, mode, &table, q..=q))
}
