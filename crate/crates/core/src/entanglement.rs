//! Logarithmic negativity.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::fock::TwoModeState;
use crate::linalg;

/// Log-negativity together with diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativityResult {
    /// log₂‖ρ^{T_A}‖₁ in ebits, never negative.
    pub value: f64,
    /// Most negative eigenvalue of ρ^{T_A}.
    pub min_eig: f64,
    /// Set when the state carries noticeable population on the cutoff level.
    pub trunc_warning: bool,
}

/// ρ^{T_A}: transposes the mode-A indices, p'[n,m,k,l] = p[k,m,n,l].
///
/// The result is Hermitian with unchanged trace but in general not positive.
pub fn partial_transpose(state: &TwoModeState) -> DMatrix<C64> {
    partial_transpose_matrix(state.matrix(), state.dim())
}

pub fn partial_transpose_matrix(rho: &DMatrix<C64>, dim: usize) -> DMatrix<C64> {
    let d = dim;
    DMatrix::from_fn(rho.nrows(), rho.ncols(), |row, col| {
        let (n, m) = (row / d, row % d);
        let (k, l) = (col / d, col % d);
        rho[(k * d + m, n * d + l)]
    })
}

/// Σ|λᵢ| of a Hermitian matrix; fails if Hermiticity is violated beyond `herm_tol`.
pub fn trace_norm(matrix: &DMatrix<C64>, herm_tol: f64) -> Result<f64> {
    linalg::trace_norm(matrix, herm_tol)
}

/// N(ρ) = log₂‖ρ^{T_A}‖₁ of a normalized state.
pub fn log_negativity(state: &TwoModeState) -> Result<NegativityResult> {
    let cfg = state.cfg();
    let pt = partial_transpose(state);
    let deviation = linalg::hermiticity_deviation(&pt);
    if deviation > cfg.eig_tol() {
        return Err(crate::error::Error::NotHermitian { deviation });
    }
    let eigs = linalg::hermitian_eigenvalues(&pt);
    let min_eig = eigs.iter().copied().fold(f64::INFINITY, f64::min);
    let trunc_warning = state.edge_population() > cfg.trace_tol().sqrt();
    let value = if min_eig >= -cfg.eig_tol() {
        0.0
    } else {
        let norm: f64 = eigs.iter().map(|x| x.abs()).sum();
        norm.log2().max(0.0)
    };
    Ok(NegativityResult {
        value,
        min_eig,
        trunc_warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{tmss, vacuum, SqueezingParam, TruncationConfig};

    #[test]
    fn vacuum_has_no_entanglement() {
        let n = log_negativity(&vacuum(TruncationConfig::new(3).unwrap())).unwrap();
        assert_eq!(n.value, 0.0);
        assert!(!n.trunc_warning);
    }

    #[test]
    fn tmss_closed_form() {
        let lam = SqueezingParam::new(0.1).unwrap();
        let s = tmss(lam, TruncationConfig::new(8).unwrap()).unwrap();
        let n = log_negativity(&s).unwrap();
        assert!((n.value - 0.289506617194985).abs() < 5e-9);
        assert!(n.min_eig < 0.0);

        let lam = SqueezingParam::new(0.4).unwrap();
        let s = tmss(lam, TruncationConfig::for_lambda(lam)).unwrap();
        let n = log_negativity(&s).unwrap();
        assert!((n.value - (1.4f64 / 0.6).log2()).abs() < 1e-6);
    }

    #[test]
    fn partial_transpose_is_an_involution() {
        let lam = SqueezingParam::new(0.2).unwrap();
        let s = tmss(lam, TruncationConfig::new(6).unwrap().allow_truncation()).unwrap();
        let twice = partial_transpose_matrix(&partial_transpose(&s), s.dim());
        assert_eq!(&twice, s.matrix());
        let pt = partial_transpose(&s);
        let tr: f64 = pt.diagonal().iter().map(|z| z.re).sum();
        assert!((tr - 1.0).abs() < 1e-15);
    }

    #[test]
    fn negative_part_matches_trace_norm() {
        let lam = SqueezingParam::new(0.1).unwrap();
        let s = tmss(lam, TruncationConfig::new(8).unwrap()).unwrap();
        let pt = partial_transpose(&s);
        let full: Vec<f64> = pt.clone().symmetric_eigenvalues().iter().copied().collect();
        let neg: f64 = full.iter().filter(|x| **x < 0.0).map(|x| -x).sum();
        let norm = trace_norm(&pt, 1e-12).unwrap();
        assert!((neg - (norm - 1.0) / 2.0).abs() < 1e-13);
        assert!(neg > 0.0);
    }

    #[test]
    fn density_matrix_has_unit_trace_norm() {
        let lam = SqueezingParam::new(0.2).unwrap();
        let s = tmss(lam, TruncationConfig::for_lambda(lam)).unwrap();
        assert!((trace_norm(s.matrix(), 1e-12).unwrap() - 1.0).abs() < 1e-13);
        let pt = partial_transpose(&s);
        assert!((trace_norm(&pt, 1e-12).unwrap() - 1.5).abs() < 1e-6);
    }
}
