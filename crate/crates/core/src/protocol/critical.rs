//! Critical attempt count m_c and the average entanglement rate ⟨E⟩.
//!
//! Arm A is taken to succeed at cycle `fixed_arm_index` (1 by default) and
//! arm B at cycle j = 1, 2, …. For each j the malted state is mashed to its
//! fixed point and compared against the negativity of the input squeezed
//! state. The scan stops at the first j without gain.

use super::malting::ArmBScan;
use super::mashing::{mash_iterate_with, DEFAULT_MAX_ITER};
use crate::channels::{LossChannelParams, MashConfig, SubtractionParams};
use crate::entanglement::log_negativity;
use crate::error::{Error, Result};
use crate::fock::{tmss, SqueezingParam, TruncationConfig};

/// Search cap when the memory is lossless and τ is infinite.
pub const LOSSLESS_SCAN_CAP: usize = 100_000;

/// State whose negativity decides whether an attempt count still gains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GainCriterion {
    /// Final state after malting and converged mashing.
    #[default]
    FullProtocol,
    /// Malted state only.
    MaltOnly,
}

/// How many mashing steps enter the final state and P^f.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MashCount {
    /// Iterate to convergence (bounded by `max_iter`).
    #[default]
    Converged,
    /// Exactly this many steps.
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolOptions {
    pub max_iter: usize,
    /// m_c search stops at ceil(τ)·safety_factor.
    pub safety_factor: usize,
    pub fixed_arm_index: usize,
    pub criterion: GainCriterion,
    pub mash_count: MashCount,
    pub mash: MashConfig,
}

impl Default for ProtocolOptions {
    fn default() -> Self {
        Self {
            max_iter: DEFAULT_MAX_ITER,
            safety_factor: 4,
            fixed_arm_index: 1,
            criterion: GainCriterion::default(),
            mash_count: MashCount::default(),
            mash: MashConfig::default(),
        }
    }
}

impl ProtocolOptions {
    pub fn search_bound(&self, loss: LossChannelParams) -> usize {
        let tau = loss.tau();
        if tau.is_finite() {
            // τ recovered from t carries rounding noise; 100.00000000000001 is 100
            let whole = if (tau - tau.round()).abs() < 1e-9 { tau.round() } else { tau.ceil() };
            (whole as usize).saturating_mul(self.safety_factor.max(1))
        } else {
            LOSSLESS_SCAN_CAP
        }
    }
}

/// Everything computed for one success index j on arm B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttemptEvaluation {
    pub j: usize,
    /// Malting trajectory probability P_{m_A, j}.
    pub malt_prob: f64,
    /// Product of the mashing vacuum probabilities.
    pub mash_prob: f64,
    pub malted_negativity: f64,
    pub final_negativity: f64,
    pub mash_iterations: usize,
    pub converged: bool,
    pub gain: bool,
    /// Largest weight dropped at the Fock cutoff by any mashing step.
    pub max_discarded_weight: f64,
}

impl AttemptEvaluation {
    /// P^f_{m_A, j}.
    pub fn final_prob(&self) -> f64 {
        self.malt_prob * self.mash_prob
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalCount {
    pub m_c: usize,
    pub baseline_negativity: f64,
    pub fixed_arm_index: usize,
    pub search_bound: usize,
    /// Evaluations for j = 1..=m_c, followed by the first failing j if any.
    pub evaluations: Vec<AttemptEvaluation>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AvgEntanglement {
    pub value: f64,
    /// (j, P^f_{m_A, j}, N_f) for j = 1..=m_c.
    pub terms: Vec<(usize, f64, f64)>,
    pub m_c: usize,
}

/// m_c: the largest j (scanning upward) for which the protocol still beats
/// the input squeezed state; 0 if even j = 1 does not.
pub fn critical_attempts(
    lambda: SqueezingParam,
    loss: LossChannelParams,
    sub: SubtractionParams,
    cfg: &TruncationConfig,
    opts: &ProtocolOptions,
) -> Result<CriticalCount> {
    let initial = tmss(lambda, *cfg)?;
    let baseline = log_negativity(&initial)?.value;
    let bound = opts.search_bound(loss);
    let (max_iter, stop_on_convergence) = match opts.mash_count {
        MashCount::Converged => (opts.max_iter, true),
        MashCount::Fixed(n) => (n, false),
    };

    let mut evaluations = Vec::new();
    let mut m_c = 0;
    for (idx, record) in ArmBScan::new(initial, opts.fixed_arm_index, loss, sub).take(bound).enumerate() {
        let j = idx + 1;
        let record = match record {
            Ok(r) => r,
            // the success branch itself is impossible: no gain from here on
            Err(Error::ZeroTrace { .. }) => break,
            Err(e) => return Err(e),
        };
        let malted_negativity = log_negativity(&record.state)?.value;
        let (final_negativity, mash_prob, mash_iterations, converged, max_discarded_weight) =
            match mash_iterate_with(&record.state, max_iter, opts.mash, stop_on_convergence) {
                Ok(out) => (
                    out.final_negativity(),
                    out.success_probability(),
                    out.iterations,
                    out.converged,
                    out.max_discarded_weight,
                ),
                Err(Error::ZeroTrace { .. }) => (0.0, 0.0, 0, false, 0.0),
                Err(e) => return Err(e),
            };
        let decisive = match opts.criterion {
            GainCriterion::FullProtocol => final_negativity,
            GainCriterion::MaltOnly => malted_negativity,
        };
        let gain = decisive > baseline;
        evaluations.push(AttemptEvaluation {
            j,
            malt_prob: record.joint_prob,
            mash_prob,
            malted_negativity,
            final_negativity,
            mash_iterations,
            converged,
            gain,
            max_discarded_weight,
        });
        if !gain {
            break;
        }
        m_c = j;
    }
    Ok(CriticalCount {
        m_c,
        baseline_negativity: baseline,
        fixed_arm_index: opts.fixed_arm_index,
        search_bound: bound,
        evaluations,
    })
}

/// ⟨E⟩ = Σ_{j=1}^{m_c} P^f_{m_A, j} · N_f(j).
pub fn average_entanglement(
    lambda: SqueezingParam,
    loss: LossChannelParams,
    sub: SubtractionParams,
    cfg: &TruncationConfig,
    opts: &ProtocolOptions,
) -> Result<AvgEntanglement> {
    let critical = critical_attempts(lambda, loss, sub, cfg, opts)?;
    Ok(average_from(&critical))
}

/// ⟨E⟩ from an already computed m_c scan.
pub fn average_from(critical: &CriticalCount) -> AvgEntanglement {
    let terms: Vec<(usize, f64, f64)> = critical
        .evaluations
        .iter()
        .take(critical.m_c)
        .map(|e| (e.j, e.final_prob(), e.final_negativity))
        .collect();
    let value = terms.iter().fold(0.0, |acc, (_, p, n)| acc + p * n);
    AvgEntanglement {
        value,
        terms,
        m_c: critical.m_c,
    }
}
