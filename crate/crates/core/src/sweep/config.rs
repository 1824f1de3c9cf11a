use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::csv::format_g15;
use crate::channels::{LossChannelParams, SubtractionParams};
use crate::fock::{min_n_max, tail_weight, SqueezingParam, TruncationConfig, DEFAULT_TRACE_TOL};
use crate::protocol::{GainCriterion, DEFAULT_MAX_ITER};

/// Which figure-style dataset to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Negativity of a stored squeezed state under loss, vacuum detection, or both.
    Decay,
    /// Negativity along one malting trajectory.
    MaltTrace,
    /// Matrix of malting success probabilities.
    Pij,
    /// Malting followed by mashing, stage by stage.
    Distill,
    /// Critical attempt count versus t_s.
    McSweep,
    /// Average entanglement rate versus t_s.
    AvgEnt,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Decay,
        Command::MaltTrace,
        Command::Pij,
        Command::Distill,
        Command::McSweep,
        Command::AvgEnt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Decay => "decay",
            Command::MaltTrace => "malt-trace",
            Command::Pij => "pij",
            Command::Distill => "distill",
            Command::McSweep => "mc-sweep",
            Command::AvgEnt => "avg-ent",
        }
    }

    /// Whether `--ts` may be a range.
    pub fn sweeps_ts(self) -> bool {
        matches!(self, Command::Distill | Command::McSweep | Command::AvgEnt)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command `{s}`"))
    }
}

/// Inclusive `start:stop:step` range, or a single value.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SweepRange {
    pub fn single(x: f64) -> Self {
        Self {
            start: x,
            stop: x,
            step: 0.0,
        }
    }

    pub fn is_single(&self) -> bool {
        self.step == 0.0
    }

    /// Grid points start + k·step, including `stop` within half a step.
    pub fn values(&self) -> Vec<f64> {
        if self.is_single() {
            return vec![self.start];
        }
        let count = ((self.stop - self.start) / self.step + 0.5).floor() as usize + 1;
        (0..count).map(|k| self.start + k as f64 * self.step).collect()
    }
}

impl FromStr for SweepRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| p.trim().parse::<f64>().map_err(|_| format!("`{p}` is not a number"));
        match parts.as_slice() {
            [x] => Ok(Self::single(num(x)?)),
            [a, b, c] => {
                let (start, stop, step) = (num(a)?, num(b)?, num(c)?);
                if !(step > 0.0) {
                    return Err("range step must be positive".into());
                }
                if stop < start {
                    return Err("range is empty (stop < start)".into());
                }
                Ok(Self { start, stop, step })
            }
            _ => Err(format!("`{s}` is neither a number nor start:stop:step")),
        }
    }
}

/// Unvalidated run settings as they come off the command line.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    pub command: Option<Command>,
    pub lambda: Option<f64>,
    pub tau: Option<f64>,
    pub t: Option<f64>,
    pub ts: Option<String>,
    pub m_a: Option<usize>,
    pub m_b: Option<usize>,
    pub steps: Option<usize>,
    pub i_max: Option<usize>,
    pub j_max: Option<usize>,
    pub max_iter: Option<usize>,
    pub n_max: Option<usize>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub baseline: Option<String>,
}

/// Fully resolved, validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub lambda: SqueezingParam,
    pub loss: LossChannelParams,
    pub ts: Vec<SubtractionParams>,
    pub ts_spec: String,
    pub m_a: usize,
    pub m_b: usize,
    pub steps: usize,
    pub i_max: usize,
    pub j_max: usize,
    pub max_iter: usize,
    pub cfg: TruncationConfig,
    pub n_max_auto: bool,
    pub out_path: Option<PathBuf>,
    pub threads: usize,
    pub criterion: GainCriterion,
}

impl RunConfig {
    /// `key=value` pairs describing the resolved configuration.
    pub fn describe(&self) -> Vec<(String, String)> {
        let mut v = vec![
            ("command".to_string(), self.command.to_string()),
            ("lambda".to_string(), format_g15(self.lambda.value())),
            ("tau".to_string(), format_g15(self.loss.tau())),
            ("t".to_string(), format_g15(self.loss.t())),
            ("ts".to_string(), self.ts_spec.clone()),
        ];
        match self.command {
            Command::Decay => v.push(("steps".into(), self.steps.to_string())),
            Command::MaltTrace | Command::Distill => {
                v.push(("m_a".into(), self.m_a.to_string()));
                v.push(("m_b".into(), self.m_b.to_string()));
            }
            Command::Pij => {
                v.push(("i_max".into(), self.i_max.to_string()));
                v.push(("j_max".into(), self.j_max.to_string()));
            }
            Command::McSweep | Command::AvgEnt => {
                v.push(("m_a".into(), "1".into()));
                let b = match self.criterion {
                    GainCriterion::FullProtocol => "tmss",
                    GainCriterion::MaltOnly => "malt-only",
                };
                v.push(("baseline".into(), b.into()));
            }
        }
        if matches!(self.command, Command::Distill | Command::McSweep | Command::AvgEnt) {
            v.push(("max_iter".into(), self.max_iter.to_string()));
        }
        v.push(("n_max".into(), self.cfg.n_max().to_string()));
        v.push((
            "n_max_source".into(),
            if self.n_max_auto { "auto" } else { "explicit" }.into(),
        ));
        v.push((
            "tmss_tail_weight".into(),
            format_g15(tail_weight(self.lambda.value(), self.cfg.n_max())),
        ));
        v.push(("eig_tol".into(), format_g15(self.cfg.eig_tol())));
        v.push(("trace_tol".into(), format_g15(self.cfg.trace_tol())));
        v.push(("conv_tol".into(), format_g15(self.cfg.conv_tol())));
        v
    }
}

/// Every problem found in a raw configuration, one message per field.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub problems: Vec<String>,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration: {}", self.problems.join("; "))
    }
}

impl std::error::Error for ConfigError {}

/// Checks every field and resolves derived values (t from τ, automatic n_max).
pub fn validate_config(raw: &RawConfig) -> Result<RunConfig, ConfigError> {
    let mut problems = Vec::new();

    let command = raw.command.unwrap_or_else(|| {
        problems.push("command: missing".to_string());
        Command::Decay
    });

    let lambda = match raw.lambda {
        None => {
            problems.push("lambda: required".into());
            None
        }
        Some(l) => match SqueezingParam::new(l) {
            Ok(p) => Some(p),
            Err(_) => {
                problems.push(format!("lambda must be in [0,1) (got {l})"));
                None
            }
        },
    };

    let loss = match (raw.tau, raw.t) {
        (Some(tau), _) => LossChannelParams::from_tau(tau)
            .map_err(|_| problems.push(format!("tau must be > 1 (got {tau})")))
            .ok(),
        (None, Some(t)) => LossChannelParams::from_t(t)
            .map_err(|_| problems.push(format!("t must be in (0,1] (got {t})")))
            .ok(),
        (None, None) => {
            problems.push("tau: one of --tau or --t is required".into());
            None
        }
    };

    let mut ts_spec = String::new();
    let ts = match raw.ts.as_deref() {
        None => {
            problems.push("ts: required".into());
            None
        }
        Some(s) => {
            ts_spec = s.to_string();
            match s.parse::<SweepRange>() {
                Err(e) => {
                    problems.push(format!("ts: {e}"));
                    None
                }
                Ok(range) if !range.is_single() && !command.sweeps_ts() => {
                    problems.push(format!("ts: `{}` takes a single value, not a range", command));
                    None
                }
                Ok(range) => {
                    let values = range.values();
                    let mut out = Vec::with_capacity(values.len());
                    for v in values {
                        match SubtractionParams::new(v) {
                            Ok(p) => out.push(p),
                            Err(_) => {
                                problems.push(format!("ts must be in (0,1] (got {v})"));
                                break;
                            }
                        }
                    }
                    Some(out)
                }
            }
        }
    };

    let positive = |name: &str, v: Option<usize>, default: usize, problems: &mut Vec<String>| {
        let v = v.unwrap_or(default);
        if v == 0 {
            problems.push(format!("{name} must be at least 1"));
        }
        v
    };
    let m_a = positive("ma", raw.m_a, 1, &mut problems);
    let m_b = positive("mb", raw.m_b, 10, &mut problems);
    let steps = raw.steps.unwrap_or(40);
    let i_max = positive("imax", raw.i_max, 20, &mut problems);
    let j_max = positive("jmax", raw.j_max, 20, &mut problems);
    let max_iter = raw.max_iter.unwrap_or(DEFAULT_MAX_ITER);

    let criterion = match raw.baseline.as_deref() {
        None | Some("tmss") => GainCriterion::FullProtocol,
        Some("malt-only") => GainCriterion::MaltOnly,
        Some(other) => {
            problems.push(format!("baseline must be `tmss` or `malt-only` (got `{other}`)"));
            GainCriterion::FullProtocol
        }
    };

    let requested = raw.n_max.unwrap_or(0);
    let n_max_auto = requested == 0;
    let mut cfg = None;
    if let Some(lambda) = lambda {
        let n_max = if n_max_auto {
            min_n_max(lambda.value(), DEFAULT_TRACE_TOL)
        } else {
            requested
        };
        match TruncationConfig::new(n_max) {
            Ok(c) if c.admits(lambda) => cfg = Some(c),
            Ok(_) => problems.push(format!(
                "n-max {n_max} is too small for lambda {}: need at least {} (or 0 for auto)",
                lambda.value(),
                min_n_max(lambda.value(), DEFAULT_TRACE_TOL)
            )),
            Err(e) => problems.push(format!("n-max: {e}")),
        }
    }

    if !problems.is_empty() {
        return Err(ConfigError { problems });
    }
    Ok(RunConfig {
        command,
        lambda: lambda.expect("checked"),
        loss: loss.expect("checked"),
        ts: ts.expect("checked"),
        ts_spec,
        m_a,
        m_b,
        steps,
        i_max,
        j_max,
        max_iter,
        cfg: cfg.expect("checked"),
        n_max_auto,
        out_path: raw.out.clone(),
        threads: raw.threads.unwrap_or(0),
        criterion,
    })
}
