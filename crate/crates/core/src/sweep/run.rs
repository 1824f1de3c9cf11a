use std::time::Instant;

use rayon::prelude::*;

use super::config::{Command, RunConfig};
use super::csv::{format_g15, write_atomic, Cell};
use super::{SweepError, VERSION};
use crate::channels::{detect_phonons, loss_event, SubtractionParams};
use crate::entanglement::log_negativity;
use crate::error::Result;
use crate::fock::{normalize, tmss, TwoModeState};
use crate::protocol::{
    average_from, critical_attempts, full_protocol, subtraction_probability_matrix, MaltingSchedule,
    ProtocolOptions,
};

/// A finished sweep: header, rows in parameter order, and `# key=value` metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub metadata: Vec<(String, String)>,
}

impl SweepResult {
    /// Header line and rows only.
    pub fn csv_body(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    /// Metadata block followed by the body.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out.push_str(&self.csv_body());
        out
    }

    /// The row's parameter tuple, rendered as in the CSV.
    pub fn row_key(&self, row: &[Cell]) -> String {
        row[..self.key_width()].iter().map(Cell::render).collect::<Vec<_>>().join(",")
    }

    /// Number of leading columns forming each row's parameter tuple.
    pub fn key_width(&self) -> usize {
        match self.columns.first().copied() {
            Some("i") => 2,
            Some("t_s") if self.columns.get(1) == Some(&"stage") => 2,
            _ => 1,
        }
    }
}

/// Writes the result to `cfg.out_path` atomically, or to stdout.
pub fn write_output(result: &SweepResult, cfg: &RunConfig) -> std::result::Result<(), SweepError> {
    let text = result.to_csv();
    match &cfg.out_path {
        Some(path) => write_atomic(path, &text).map_err(|source| SweepError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| SweepError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

/// Per-run diagnostics gathered from the cells.
#[derive(Debug, Default)]
struct Diagnostics {
    truncation_warnings: usize,
    max_discarded_weight: f64,
}

impl Diagnostics {
    fn note_state(&mut self, state: &TwoModeState) {
        if state.edge_population() > state.cfg().trace_tol().sqrt() {
            self.truncation_warnings += 1;
        }
    }

    fn note_discarded(&mut self, w: f64, trace_tol: f64) {
        self.max_discarded_weight = self.max_discarded_weight.max(w);
        if w > trace_tol.sqrt() {
            self.truncation_warnings += 1;
        }
    }
}

/// Evaluates every cell of the sweep on a pool of `cfg.threads` workers
/// (0 picks the rayon default).
pub fn run(cfg: &RunConfig) -> std::result::Result<SweepResult, SweepError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| SweepError::Pool(e.to_string()))?;
    let started = Instant::now();
    let mut diag = Diagnostics::default();
    let (columns, rows) = pool.install(|| match cfg.command {
        Command::Decay => decay(cfg, &mut diag),
        Command::MaltTrace => malt_trace(cfg, &mut diag),
        Command::Pij => pij(cfg),
        Command::Distill => distill(cfg, &mut diag),
        Command::McSweep | Command::AvgEnt => critical(cfg, &mut diag),
    })?;
    let mut metadata = vec![("version".to_string(), VERSION.to_string())];
    metadata.extend(cfg.describe());
    metadata.push(("truncation_warnings".into(), diag.truncation_warnings.to_string()));
    metadata.push(("max_discarded_weight".into(), format_g15(diag.max_discarded_weight)));
    metadata.push(("threads".into(), pool.current_num_threads().to_string()));
    metadata.push(("wall_time_s".into(), format!("{:.3}", started.elapsed().as_secs_f64())));
    Ok(SweepResult { columns, rows, metadata })
}

type Table = (Vec<&'static str>, Vec<Vec<Cell>>);

fn numerical(params: String) -> impl FnOnce(crate::Error) -> SweepError {
    move |source| SweepError::Numerical { params, source }
}

fn single_ts(cfg: &RunConfig) -> SubtractionParams {
    cfg.ts[0]
}

fn base_params(cfg: &RunConfig) -> String {
    format!("lambda={}, tau={}", cfg.lambda.value(), cfg.loss.tau())
}

/// Negativity after m = 0..=steps cycles of one kind of disturbance, each
/// cycle followed by renormalization.
fn decay_curve(
    start: &TwoModeState,
    steps: usize,
    cycle: impl Fn(&TwoModeState) -> Result<TwoModeState>,
) -> Result<(Vec<f64>, TwoModeState)> {
    let mut state = start.clone();
    let mut out = vec![log_negativity(&state)?.value];
    for _ in 0..steps {
        state = normalize(&cycle(&state)?)?.0;
        out.push(log_negativity(&state)?.value);
    }
    Ok((out, state))
}

fn decay(cfg: &RunConfig, diag: &mut Diagnostics) -> std::result::Result<Table, SweepError> {
    let params = format!("{}, ts={}", base_params(cfg), single_ts(cfg).t_s());
    let start = tmss(cfg.lambda, cfg.cfg).map_err(numerical(params.clone()))?;
    let loss = cfg.loss;
    let sub = single_ts(cfg);
    // vacuum detection alone, with the detector's transmissivity equal to the memory's
    let vac = SubtractionParams::new(loss.t()).map_err(numerical(params.clone()))?;
    let curves: Vec<Result<(Vec<f64>, TwoModeState)>> = (0..3usize)
        .into_par_iter()
        .map(|kind| match kind {
            0 => decay_curve(&start, cfg.steps, |s| Ok(loss_event(s, loss))),
            1 => decay_curve(&start, cfg.steps, |s| detect_phonons(s, vac, 0, 0)),
            _ => decay_curve(&start, cfg.steps, |s| detect_phonons(&loss_event(s, loss), sub, 0, 0)),
        })
        .collect();
    let mut cols = Vec::new();
    for c in curves {
        let (values, last) = c.map_err(numerical(params.clone()))?;
        diag.note_state(&last);
        cols.push(values);
    }
    let rows = (0..=cfg.steps)
        .map(|m| vec![Cell::Int(m), Cell::Real(cols[0][m]), Cell::Real(cols[1][m]), Cell::Real(cols[2][m])])
        .collect();
    Ok((vec!["m", "neg_loss_only", "neg_vac_only", "neg_both"], rows))
}

fn malt_trace(cfg: &RunConfig, diag: &mut Diagnostics) -> std::result::Result<Table, SweepError> {
    let sub = single_ts(cfg);
    let params = format!("{}, ts={}, m_a={}, m_b={}", base_params(cfg), sub.t_s(), cfg.m_a, cfg.m_b);
    let schedule = MaltingSchedule::new(cfg.m_a, cfg.m_b, cfg.loss, sub).map_err(numerical(params.clone()))?;
    let record = crate::protocol::malt(cfg.lambda, &schedule, &cfg.cfg).map_err(numerical(params))?;
    diag.note_state(&record.state);
    let rows = record
        .negativity_trace
        .iter()
        .map(|&(m, n)| vec![Cell::Int(m), Cell::Real(n)])
        .collect();
    Ok((vec!["m", "negativity"], rows))
}

fn pij(cfg: &RunConfig) -> std::result::Result<Table, SweepError> {
    let sub = single_ts(cfg);
    let params = format!("{}, ts={}, imax={}, jmax={}", base_params(cfg), sub.t_s(), cfg.i_max, cfg.j_max);
    let p = subtraction_probability_matrix(cfg.lambda, cfg.loss, sub, &cfg.cfg, cfg.i_max, cfg.j_max)
        .map_err(numerical(params))?;
    let mut rows = Vec::with_capacity(cfg.i_max * cfg.j_max);
    for (i, row) in p.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            rows.push(vec![Cell::Int(i + 1), Cell::Int(j + 1), Cell::Real(v)]);
        }
    }
    Ok((vec!["i", "j", "p_ij"], rows))
}

fn options(cfg: &RunConfig) -> ProtocolOptions {
    ProtocolOptions {
        max_iter: cfg.max_iter,
        criterion: cfg.criterion,
        ..ProtocolOptions::default()
    }
}

fn distill(cfg: &RunConfig, diag: &mut Diagnostics) -> std::result::Result<Table, SweepError> {
    let opts = options(cfg);
    let runs: Vec<_> = cfg
        .ts
        .par_iter()
        .map(|&sub| {
            let params = format!("{}, ts={}, m_a={}, m_b={}", base_params(cfg), sub.t_s(), cfg.m_a, cfg.m_b);
            let schedule = MaltingSchedule::new(cfg.m_a, cfg.m_b, cfg.loss, sub).map_err(numerical(params.clone()))?;
            let run = full_protocol(cfg.lambda, &schedule, &cfg.cfg, &opts).map_err(numerical(params.clone()))?;
            if !run.mashing.converged {
                return Err(SweepError::NoConvergence {
                    params,
                    iterations: run.mashing.iterations,
                });
            }
            Ok((sub, run))
        })
        .collect::<std::result::Result<_, _>>()?;
    let mut rows = Vec::new();
    for (sub, run) in &runs {
        diag.note_state(&run.mashing.rho_final);
        diag.note_discarded(run.mashing.max_discarded_weight, cfg.cfg.trace_tol());
        for (stage, phase, n) in run.negativity_trace() {
            rows.push(vec![
                Cell::Real(sub.t_s()),
                Cell::Int(stage),
                Cell::Text(phase.as_str()),
                Cell::Real(n),
            ]);
        }
    }
    Ok((vec!["t_s", "stage", "phase", "negativity"], rows))
}

fn critical(cfg: &RunConfig, diag: &mut Diagnostics) -> std::result::Result<Table, SweepError> {
    let opts = options(cfg);
    let scans: Vec<_> = cfg
        .ts
        .par_iter()
        .map(|&sub| {
            let params = format!("{}, ts={}", base_params(cfg), sub.t_s());
            let c = critical_attempts(cfg.lambda, cfg.loss, sub, &cfg.cfg, &opts).map_err(numerical(params.clone()))?;
            if let Some(e) = c.evaluations.iter().find(|e| !e.converged && e.mash_prob > 0.0) {
                return Err(SweepError::NoConvergence {
                    params: format!("{params}, j={}", e.j),
                    iterations: e.mash_iterations,
                });
            }
            Ok((sub, c))
        })
        .collect::<std::result::Result<_, _>>()?;
    let mut rows = Vec::new();
    for (sub, c) in &scans {
        for e in &c.evaluations {
            diag.note_discarded(e.max_discarded_weight, cfg.cfg.trace_tol());
        }
        let mut row = vec![Cell::Real(sub.t_s()), Cell::Int(c.m_c)];
        match cfg.command {
            Command::AvgEnt => row.push(Cell::Real(average_from(c).value)),
            _ => row.push(Cell::Real(c.baseline_negativity)),
        }
        rows.push(row);
    }
    let columns = match cfg.command {
        Command::AvgEnt => vec!["t_s", "m_c", "avg_ent"],
        _ => vec!["t_s", "m_c", "baseline_negativity"],
    };
    Ok((columns, rows))
}
