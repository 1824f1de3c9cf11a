//! The distillery: malting with interstitial memory loss, iterative mashing,
//! the critical attempt count and the average entanglement rate.

mod critical;
mod malting;
mod mashing;

pub use critical::{
    average_entanglement, average_from, critical_attempts, AttemptEvaluation, AvgEntanglement, CriticalCount,
    GainCriterion, MashCount, ProtocolOptions, LOSSLESS_SCAN_CAP,
};
pub use malting::{malt, malt_from, subtraction_probability_matrix, ArmBScan, MaltingRecord, MaltingSchedule};
pub use mashing::{mash_iterate, mash_iterate_with, DistillationOutcome, DEFAULT_MAX_ITER};

use crate::error::Result;
use crate::fock::{SqueezingParam, TruncationConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Malt,
    Mash,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Malt => "malt",
            Phase::Mash => "mash",
        }
    }
}

/// Malting followed by mashing.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolRun {
    pub malting: MaltingRecord,
    pub mashing: DistillationOutcome,
}

impl ProtocolRun {
    /// Negativity along the whole protocol: one point per malting clock cycle
    /// (from cycle 0), then one per mashing iteration, numbered consecutively.
    pub fn negativity_trace(&self) -> Vec<(usize, Phase, f64)> {
        let mut out: Vec<(usize, Phase, f64)> =
            self.malting.negativity_trace.iter().map(|&(c, n)| (c, Phase::Malt, n)).collect();
        let last = out.last().map_or(0, |p| p.0);
        out.extend(
            self.mashing.negativity_by_stage[1..]
                .iter()
                .enumerate()
                .map(|(i, &n)| (last + i + 1, Phase::Mash, n)),
        );
        out
    }

    pub fn final_negativity(&self) -> f64 {
        self.mashing.final_negativity()
    }
}

pub fn full_protocol(
    lambda: SqueezingParam,
    schedule: &MaltingSchedule,
    cfg: &TruncationConfig,
    opts: &ProtocolOptions,
) -> Result<ProtocolRun> {
    let malting = malt(lambda, schedule, cfg)?;
    let (max_iter, stop) = match opts.mash_count {
        MashCount::Converged => (opts.max_iter, true),
        MashCount::Fixed(n) => (n, false),
    };
    let mashing = mash_iterate_with(&malting.state, max_iter, opts.mash, stop)?;
    Ok(ProtocolRun { malting, mashing })
}
