//! Truncated two-mode Fock-space states.
//!
//! A [`TwoModeState`] stores ρ = Σ p[n,m,k,l] |n⟩_A|m⟩_B ⟨k|_A⟨l|_B as a dense
//! `dim² × dim²` complex matrix with row index `n·dim + m` and column index
//! `k·dim + l`, where `dim = n_max + 1`. States are values: every operation in
//! the crate returns a new state.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg;

pub const DEFAULT_EIG_TOL: f64 = 1e-12;
pub const DEFAULT_TRACE_TOL: f64 = 1e-14;
pub const DEFAULT_CONV_TOL: f64 = 1e-8;

/// Fock cutoff and the numerical tolerances used by every computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationConfig {
    n_max: usize,
    eig_tol: f64,
    trace_tol: f64,
    conv_tol: f64,
    allow_truncation: bool,
}

impl TruncationConfig {
    /// Cutoff `n_max` with default tolerances.
    pub fn new(n_max: usize) -> Result<Self> {
        Self::with_tolerances(n_max, DEFAULT_EIG_TOL, DEFAULT_TRACE_TOL, DEFAULT_CONV_TOL)
    }

    pub fn with_tolerances(n_max: usize, eig_tol: f64, trace_tol: f64, conv_tol: f64) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::OutOfRange {
                name: "n_max",
                value: n_max as f64,
                expected: "n_max must be at least 1",
            });
        }
        for (name, value) in [("eig_tol", eig_tol), ("trace_tol", trace_tol), ("conv_tol", conv_tol)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    expected: "tolerances must be strictly positive",
                });
            }
        }
        Ok(Self {
            n_max,
            eig_tol,
            trace_tol,
            conv_tol,
            allow_truncation: false,
        })
    }

    /// Smallest cutoff admitting a two-mode squeezed state with parameter `lambda`.
    pub fn for_lambda(lambda: SqueezingParam) -> Self {
        let n_max = min_n_max(lambda.value(), DEFAULT_TRACE_TOL);
        Self::new(n_max).expect("admission rule yields n_max >= 1")
    }

    /// Accept squeezed states whose truncated tail exceeds `trace_tol`.
    pub fn allow_truncation(mut self) -> Self {
        self.allow_truncation = true;
        self
    }

    pub fn with_conv_tol(mut self, conv_tol: f64) -> Result<Self> {
        Self::with_tolerances(self.n_max, self.eig_tol, self.trace_tol, conv_tol)?;
        self.conv_tol = conv_tol;
        Ok(self)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.n_max + 1
    }

    pub fn eig_tol(&self) -> f64 {
        self.eig_tol
    }

    pub fn trace_tol(&self) -> f64 {
        self.trace_tol
    }

    pub fn conv_tol(&self) -> f64 {
        self.conv_tol
    }

    pub fn truncation_allowed(&self) -> bool {
        self.allow_truncation
    }

    /// Whether the squeezed-state tail λ^{2(n_max+1)} is below `trace_tol`.
    pub fn admits(&self, lambda: SqueezingParam) -> bool {
        tail_weight(lambda.value(), self.n_max) < self.trace_tol
    }
}

/// Weight (1−λ²)·Σ_{n>n_max} λ^{2n} = λ^{2(n_max+1)} dropped by the cutoff.
pub fn tail_weight(lambda: f64, n_max: usize) -> f64 {
    lambda.powi(2 * (n_max as i32 + 1))
}

/// Smallest `n_max ≥ 1` whose squeezed-state tail is below `trace_tol`.
pub fn min_n_max(lambda: f64, trace_tol: f64) -> usize {
    let mut n = 1;
    while tail_weight(lambda, n) >= trace_tol {
        n += 1;
    }
    n
}

/// Squeezing parameter λ ∈ [0, 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SqueezingParam(f64);

impl SqueezingParam {
    pub fn new(lambda: f64) -> Result<Self> {
        if (0.0..1.0).contains(&lambda) {
            Ok(Self(lambda))
        } else {
            Err(Error::OutOfRange {
                name: "lambda",
                value: lambda,
                expected: "lambda must be in [0,1)",
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Closed-form logarithmic negativity of the untruncated squeezed state.
    pub fn tmss_negativity(self) -> f64 {
        ((1.0 + self.0) / (1.0 - self.0)).log2()
    }
}

/// Which of the two modes an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    A,
    B,
}

/// Truncated two-mode density matrix, possibly sub-normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    cfg: TruncationConfig,
    rho: DMatrix<C64>,
    trace: f64,
}

impl TwoModeState {
    /// Wraps a `dim² × dim²` matrix, checking shape and Hermiticity.
    pub fn from_matrix(rho: DMatrix<C64>, cfg: TruncationConfig) -> Result<Self> {
        let d2 = cfg.dim() * cfg.dim();
        if rho.nrows() != d2 || rho.ncols() != d2 {
            return Err(Error::DimensionMismatch {
                left: rho.nrows().max(rho.ncols()),
                right: d2,
            });
        }
        let deviation = linalg::hermiticity_deviation(&rho);
        if deviation > cfg.eig_tol() {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self::from_raw(rho, cfg))
    }

    pub(crate) fn from_raw(rho: DMatrix<C64>, cfg: TruncationConfig) -> Self {
        let trace = rho.diagonal().iter().map(|z| z.re).sum();
        Self { cfg, rho, trace }
    }

    pub(crate) fn zeros(cfg: TruncationConfig) -> DMatrix<C64> {
        let d2 = cfg.dim() * cfg.dim();
        DMatrix::from_element(d2, d2, C64::new(0.0, 0.0))
    }

    /// Number state |n, m⟩⟨n, m|.
    pub fn fock(n: usize, m: usize, cfg: TruncationConfig) -> Result<Self> {
        if n > cfg.n_max() || m > cfg.n_max() {
            return Err(Error::Domain(format!("|{n},{m}> exceeds n_max = {}", cfg.n_max())));
        }
        let mut rho = Self::zeros(cfg);
        let i = n * cfg.dim() + m;
        rho[(i, i)] = C64::new(1.0, 0.0);
        Ok(Self::from_raw(rho, cfg))
    }

    /// Product state σ_A ⊗ σ_B from two single-mode `dim × dim` matrices.
    pub fn product(sigma_a: &DMatrix<C64>, sigma_b: &DMatrix<C64>, cfg: TruncationConfig) -> Result<Self> {
        Self::from_matrix(sigma_a.kronecker(sigma_b), cfg)
    }

    pub fn cfg(&self) -> &TruncationConfig {
        &self.cfg
    }

    pub fn dim(&self) -> usize {
        self.cfg.dim()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.rho
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.rho
    }

    /// Cached Tr ρ.
    pub fn trace(&self) -> f64 {
        self.trace
    }

    /// Coefficient p[n, m, k, l].
    pub fn get(&self, n: usize, m: usize, k: usize, l: usize) -> C64 {
        let d = self.dim();
        self.rho[(n * d + m, k * d + l)]
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            cfg: self.cfg,
            rho: &self.rho * C64::new(factor, 0.0),
            trace: self.trace * factor,
        }
    }

    /// Exchanges the roles of modes A and B.
    pub fn swap_modes(&self) -> Self {
        let d = self.dim();
        let swap = |i: usize| (i % d) * d + i / d;
        let rho = DMatrix::from_fn(self.rho.nrows(), self.rho.ncols(), |r, c| self.rho[(swap(r), swap(c))]);
        Self::from_raw(rho, self.cfg)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.rho)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Tr ρ².
    pub fn purity(&self) -> f64 {
        self.rho.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        linalg::hermiticity_deviation(&self.rho)
    }

    /// Checks Hermiticity, positivity and the cached trace against the tolerances.
    pub fn validate(&self) -> Result<()> {
        let deviation = self.hermiticity_deviation();
        if deviation > self.cfg.eig_tol() {
            return Err(Error::NotHermitian { deviation });
        }
        let min = self.min_eigenvalue();
        if min < -self.cfg.eig_tol() {
            return Err(Error::OutOfRange {
                name: "min_eigenvalue",
                value: min,
                expected: "state must be positive semidefinite",
            });
        }
        let diag: f64 = self.rho.diagonal().iter().map(|z| z.re).sum();
        if (diag - self.trace).abs() > self.cfg.trace_tol() {
            return Err(Error::OutOfRange {
                name: "trace",
                value: self.trace,
                expected: "cached trace must match the diagonal sum",
            });
        }
        Ok(())
    }

    /// Population sitting on the cutoff level n_max of either mode.
    pub fn edge_population(&self) -> f64 {
        let d = self.dim();
        let top = d - 1;
        (0..d * d)
            .filter(|i| i / d == top || i % d == top)
            .map(|i| self.rho[(i, i)].re)
            .sum()
    }

    /// ½‖ρ − σ‖₁.
    pub fn trace_distance(&self, other: &Self) -> Result<f64> {
        self.check_same_dim(other)?;
        let diff = &self.rho - &other.rho;
        Ok(0.5 * linalg::trace_norm(&diff, self.cfg.eig_tol())?)
    }

    pub(crate) fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }
}

/// Two-mode squeezed vacuum √(1−λ²) Σ λⁿ|n,n⟩, truncated at n_max and renormalized.
pub fn tmss(lambda: SqueezingParam, cfg: TruncationConfig) -> Result<TwoModeState> {
    let l = lambda.value();
    let tail = tail_weight(l, cfg.n_max());
    if tail >= cfg.trace_tol() && !cfg.truncation_allowed() {
        return Err(Error::Truncation {
            lambda: l,
            n_max: cfg.n_max(),
            trace_tol: cfg.trace_tol(),
            tail,
        });
    }
    let d = cfg.dim();
    let amps: Vec<f64> = (0..d).map(|n| l.powi(n as i32)).collect();
    let norm: f64 = amps.iter().map(|a| a * a).sum();
    let mut rho = TwoModeState::zeros(cfg);
    for n in 0..d {
        for k in 0..d {
            rho[(n * d + n, k * d + k)] = C64::new(amps[n] * amps[k] / norm, 0.0);
        }
    }
    Ok(TwoModeState::from_raw(rho, cfg))
}

/// |0,0⟩⟨0,0|.
pub fn vacuum(cfg: TruncationConfig) -> TwoModeState {
    TwoModeState::fock(0, 0, cfg).expect("vacuum is always inside the cutoff")
}

/// Σ_{n,m} p[n,m,n,m], recomputed from the coefficients.
pub fn trace_of(state: &TwoModeState) -> f64 {
    state.matrix().diagonal().iter().map(|z| z.re).sum()
}

/// Returns (ρ/Tr ρ, Tr ρ).
pub fn normalize(state: &TwoModeState) -> Result<(TwoModeState, f64)> {
    let tr = state.trace();
    if !(tr > state.cfg().trace_tol()) {
        return Err(Error::ZeroTrace { trace: tr });
    }
    let rho = state.matrix() / C64::new(tr, 0.0);
    Ok((TwoModeState::from_raw(rho, *state.cfg()), tr))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize) -> TruncationConfig {
        TruncationConfig::new(n).unwrap()
    }

    #[test]
    fn config_rejects_bad_values() {
        assert!(TruncationConfig::new(0).is_err());
        assert!(TruncationConfig::with_tolerances(3, 0.0, 1e-14, 1e-8).is_err());
        assert!(TruncationConfig::with_tolerances(3, 1e-12, -1.0, 1e-8).is_err());
        assert!(TruncationConfig::with_tolerances(3, 1e-12, 1e-14, f64::NAN).is_err());
    }

    #[test]
    fn lambda_domain() {
        assert!(SqueezingParam::new(1.0).is_err());
        assert!(SqueezingParam::new(-0.1).is_err());
        let err = SqueezingParam::new(1.2).unwrap_err();
        assert!(err.to_string().contains("lambda must be in [0,1)"));
        assert!(SqueezingParam::new(0.0).is_ok());
    }

    #[test]
    fn admission_rule() {
        // 0.1^16 = 1e-16 < 1e-14 but 0.1^14 = 1e-14 is not strictly below.
        assert_eq!(min_n_max(0.1, 1e-14), 7);
        // 0.4^36 ≈ 4.7e-15, 0.4^34 ≈ 2.95e-14.
        assert_eq!(min_n_max(0.4, 1e-14), 17);
        assert_eq!(min_n_max(0.0, 1e-14), 1);
        let lam = SqueezingParam::new(0.4).unwrap();
        assert!(tmss(lam, cfg(10)).is_err());
        assert!(tmss(lam, cfg(10).allow_truncation()).is_ok());
        assert!(TruncationConfig::for_lambda(lam).admits(lam));
    }

    #[test]
    fn vacuum_basics() {
        let v = vacuum(cfg(4));
        assert_eq!(v.get(0, 0, 0, 0), C64::new(1.0, 0.0));
        assert_eq!(v.matrix().iter().filter(|z| z.norm() > 0.0).count(), 1);
        assert_eq!(trace_of(&v), 1.0);
        assert_eq!(v.trace(), 1.0);
    }

    #[test]
    fn zero_squeezing_is_vacuum() {
        let s = tmss(SqueezingParam::new(0.0).unwrap(), cfg(5)).unwrap();
        assert_eq!(s, vacuum(cfg(5)));
    }

    #[test]
    fn tmss_coefficients() {
        let lam = 0.1_f64;
        let s = tmss(SqueezingParam::new(lam).unwrap(), cfg(8)).unwrap();
        let norm: f64 = (0..=8).map(|n| (1.0 - lam * lam) * lam.powi(2 * n)).sum();
        for n in 0..=8 {
            for k in 0..=8 {
                let expect = (1.0 - lam * lam) * lam.powi((n + k) as i32) / norm;
                assert!((s.get(n, n, k, k).re - expect).abs() < 1e-15);
            }
        }
        assert!((s.get(0, 0, 0, 0).re - 0.99).abs() < 1e-12);
        assert_eq!(s.get(1, 0, 1, 0), C64::new(0.0, 0.0));
        assert!((trace_of(&s) - 1.0).abs() < 1e-15);
        s.validate().unwrap();
    }

    #[test]
    fn tmss_is_pure_and_swap_symmetric() {
        for &lam in &[0.1, 0.2, 0.3, 0.4] {
            let p = SqueezingParam::new(lam).unwrap();
            let c = TruncationConfig::for_lambda(p);
            let s = tmss(p, c).unwrap();
            assert!((s.purity() - 1.0).abs() <= 2.0 * tail_weight(lam, c.n_max()) + 1e-15);
            assert_eq!(s.swap_modes(), s);
        }
    }

    #[test]
    fn scaling_and_normalization() {
        let p = SqueezingParam::new(0.1).unwrap();
        let s = tmss(p, cfg(8)).unwrap();
        assert!((trace_of(&s.scaled(0.5)) - 0.5).abs() < 1e-15);

        let (v, tr) = normalize(&vacuum(cfg(3)).scaled(0.25)).unwrap();
        assert_eq!(tr, 0.25);
        assert_eq!(v, vacuum(cfg(3)));

        let (same, tr) = normalize(&s).unwrap();
        assert!((tr - 1.0).abs() < 1e-15);
        assert!((same.matrix() - s.matrix()).norm() < 1e-15);

        assert!(matches!(normalize(&s.scaled(0.0)), Err(Error::ZeroTrace { .. })));
    }

    #[test]
    fn from_matrix_checks() {
        let c = cfg(1);
        let bad_shape = DMatrix::from_element(3, 3, C64::new(0.0, 0.0));
        assert!(matches!(
            TwoModeState::from_matrix(bad_shape, c),
            Err(Error::DimensionMismatch { .. })
        ));
        let mut m = TwoModeState::zeros(c);
        m[(0, 1)] = C64::new(0.0, 1.0);
        assert!(matches!(TwoModeState::from_matrix(m, c), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn trace_distance_between_orthogonal_states() {
        let c = cfg(2);
        let a = TwoModeState::fock(1, 0, c).unwrap();
        let b = TwoModeState::fock(0, 1, c).unwrap();
        assert!((a.trace_distance(&b).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(a.trace_distance(&a).unwrap(), 0.0);
    }
}
