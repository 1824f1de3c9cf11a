use crate::channels::{detect_one_mode, loss_event, LossChannelParams, SubtractionParams};
use crate::entanglement::log_negativity;
use crate::error::{Error, Result};
use crate::fock::{normalize, tmss, Mode, SqueezingParam, TruncationConfig, TwoModeState};

/// Clock cycles (1-based) at which the subtraction succeeds on each arm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaltingSchedule {
    pub m_a: usize,
    pub m_b: usize,
    pub loss: LossChannelParams,
    pub sub: SubtractionParams,
}

impl MaltingSchedule {
    pub fn new(m_a: usize, m_b: usize, loss: LossChannelParams, sub: SubtractionParams) -> Result<Self> {
        for (name, v) in [("m_A", m_a), ("m_B", m_b)] {
            if v < 1 {
                return Err(Error::OutOfRange {
                    name,
                    value: v as f64,
                    expected: "success index must be at least 1",
                });
            }
        }
        Ok(Self { m_a, m_b, loss, sub })
    }

    pub fn cycles(&self) -> usize {
        self.m_a.max(self.m_b)
    }
}

/// Outcome of one malting trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct MaltingRecord {
    /// Normalized malted state ρ₀.
    pub state: TwoModeState,
    /// Probability of exactly this trajectory of detector outcomes.
    pub joint_prob: f64,
    /// (clock cycle, negativity) starting with cycle 0; empty when not recorded.
    pub negativity_trace: Vec<(usize, f64)>,
}

/// What an arm does in a given clock cycle after the loss event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ArmAction {
    /// Subtraction attempt that detected nothing.
    Vacuum,
    /// Subtraction attempt that detected one phonon.
    Subtract,
    /// Arm already succeeded: loss only.
    Idle,
}

impl ArmAction {
    pub(crate) fn at(cycle: usize, success: usize) -> Self {
        use std::cmp::Ordering::*;
        match cycle.cmp(&success) {
            Less => ArmAction::Vacuum,
            Equal => ArmAction::Subtract,
            Greater => ArmAction::Idle,
        }
    }
}

fn act(state: TwoModeState, sub: SubtractionParams, mode: Mode, action: ArmAction) -> Result<TwoModeState> {
    match action {
        ArmAction::Vacuum => detect_one_mode(&state, sub, mode, 0),
        ArmAction::Subtract => detect_one_mode(&state, sub, mode, 1),
        ArmAction::Idle => Ok(state),
    }
}

/// One clock cycle on a normalized state: loss on both memories, then the
/// detector outcomes. Returns the renormalized state and the conditional
/// probability of the outcomes.
pub(crate) fn clock_cycle(
    state: &TwoModeState,
    loss: LossChannelParams,
    sub: SubtractionParams,
    a: ArmAction,
    b: ArmAction,
) -> Result<(TwoModeState, f64)> {
    let lost = loss_event(state, loss);
    let after_a = act(lost, sub, Mode::A, a)?;
    let after_b = act(after_a, sub, Mode::B, b)?;
    normalize(&after_b)
}

/// Runs the malting schedule on an arbitrary normalized initial state.
pub fn malt_from(initial: &TwoModeState, schedule: &MaltingSchedule, record_trace: bool) -> Result<MaltingRecord> {
    let mut state = initial.clone();
    let mut joint_prob = 1.0;
    let mut negativity_trace = Vec::new();
    if record_trace {
        negativity_trace.push((0, log_negativity(&state)?.value));
    }
    for cycle in 1..=schedule.cycles() {
        let (next, p) = clock_cycle(
            &state,
            schedule.loss,
            schedule.sub,
            ArmAction::at(cycle, schedule.m_a),
            ArmAction::at(cycle, schedule.m_b),
        )?;
        state = next;
        joint_prob *= p;
        if record_trace {
            negativity_trace.push((cycle, log_negativity(&state)?.value));
        }
    }
    Ok(MaltingRecord {
        state,
        joint_prob,
        negativity_trace,
    })
}

/// Malts a two-mode squeezed state, recording the negativity after every cycle.
pub fn malt(lambda: SqueezingParam, schedule: &MaltingSchedule, cfg: &TruncationConfig) -> Result<MaltingRecord> {
    malt_from(&tmss(lambda, *cfg)?, schedule, true)
}

/// P[i−1][j−1] = probability that arm A succeeds at cycle i and arm B at cycle j.
pub fn subtraction_probability_matrix(
    lambda: SqueezingParam,
    loss: LossChannelParams,
    sub: SubtractionParams,
    cfg: &TruncationConfig,
    i_max: usize,
    j_max: usize,
) -> Result<Vec<Vec<f64>>> {
    use rayon::prelude::*;

    let initial = tmss(lambda, *cfg)?;
    (1..=i_max)
        .into_par_iter()
        .map(|i| {
            (1..=j_max)
                .map(|j| {
                    let schedule = MaltingSchedule::new(i, j, loss, sub)?;
                    Ok(malt_from(&initial, &schedule, false)?.joint_prob)
                })
                .collect()
        })
        .collect()
}

/// Malting trajectories with arm A fixed at `m_a` and arm B succeeding at
/// j = 1, 2, …, sharing the common vacuum-outcome prefix on arm B.
///
/// Each yielded record is bit-identical to [`malt_from`] with schedule
/// `(m_a, j)` and no negativity trace.
pub struct ArmBScan {
    pending: TwoModeState,
    pending_prob: f64,
    j: usize,
    m_a: usize,
    loss: LossChannelParams,
    sub: SubtractionParams,
    done: bool,
}

impl ArmBScan {
    pub fn new(initial: TwoModeState, m_a: usize, loss: LossChannelParams, sub: SubtractionParams) -> Self {
        Self {
            pending: initial,
            pending_prob: 1.0,
            j: 0,
            m_a: m_a.max(1),
            loss,
            sub,
            done: false,
        }
    }

    fn record(&self, j: usize) -> Result<MaltingRecord> {
        let (mut state, mut prob) = clock_cycle(
            &self.pending,
            self.loss,
            self.sub,
            ArmAction::at(j, self.m_a),
            ArmAction::Subtract,
        )?;
        prob *= self.pending_prob;
        for cycle in (j + 1)..=self.m_a {
            let (next, p) = clock_cycle(&state, self.loss, self.sub, ArmAction::at(cycle, self.m_a), ArmAction::Idle)?;
            state = next;
            prob *= p;
        }
        Ok(MaltingRecord {
            state,
            joint_prob: prob,
            negativity_trace: Vec::new(),
        })
    }
}

impl Iterator for ArmBScan {
    type Item = Result<MaltingRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let j = self.j + 1;
        let out = self.record(j);
        let advanced = clock_cycle(
            &self.pending,
            self.loss,
            self.sub,
            ArmAction::at(j, self.m_a),
            ArmAction::Vacuum,
        );
        match advanced {
            Ok((state, p)) => {
                self.pending = state;
                self.pending_prob *= p;
                self.j = j;
            }
            Err(_) => self.done = true,
        }
        Some(out)
    }
}
