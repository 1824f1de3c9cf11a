//! Dense Hermitian spectra with exact block splitting.
//!
//! Every map in this crate commutes with a photon-number phase rotation, so the
//! matrices it produces (states, partial transposes, differences of states) are
//! block diagonal up to a permutation. The blocks are recovered from the exact
//! zero pattern and each block is diagonalized densely. A matrix with no zero
//! structure ends up as one block, i.e. a plain dense decomposition.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Largest |M[i,j] - conj(M[j,i])|.
pub fn hermiticity_deviation(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            worst = worst.max(d);
        }
    }
    worst
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Index sets of the connected components of the nonzero pattern of `m`.
pub fn connected_blocks(m: &DMatrix<C64>) -> Vec<Vec<usize>> {
    let n = m.nrows();
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if m[(i, j)] != C64::new(0.0, 0.0) || m[(j, i)] != C64::new(0.0, 0.0) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        if label[root] == usize::MAX {
            label[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[label[root]].push(i);
    }
    blocks
}

/// Eigenvalues of a Hermitian matrix (unordered). The input is assumed
/// Hermitian; callers check with [`hermiticity_deviation`] first.
pub fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    let mut out = Vec::with_capacity(m.nrows());
    for block in connected_blocks(m) {
        let k = block.len();
        if k == 1 {
            out.push(m[(block[0], block[0])].re);
            continue;
        }
        let sub = DMatrix::from_fn(k, k, |a, b| m[(block[a], block[b])]);
        out.extend(sub.symmetric_eigenvalues().iter().copied());
    }
    out
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(m: &DMatrix<C64>, herm_tol: f64) -> Result<f64> {
    let deviation = hermiticity_deviation(m);
    if deviation > herm_tol {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(hermitian_eigenvalues(m).iter().map(|x| x.abs()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn blocks_follow_zero_pattern() {
        let mut m = DMatrix::from_element(4, 4, c(0.0));
        m[(0, 2)] = c(1.0);
        m[(2, 0)] = c(1.0);
        m[(1, 1)] = c(3.0);
        m[(3, 3)] = c(-2.0);
        let blocks = connected_blocks(&m);
        assert_eq!(blocks, vec![vec![0, 2], vec![1], vec![3]]);
        let mut ev = hermitian_eigenvalues(&m);
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(ev.len(), 4);
        assert!((ev[0] + 2.0).abs() < 1e-14);
        assert!((ev[1] + 1.0).abs() < 1e-14);
        assert!((ev[2] - 1.0).abs() < 1e-14);
        assert!((ev[3] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn trace_norm_of_signed_diagonal() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.5), c(-0.5)]));
        assert!((trace_norm(&m, 1e-12).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = DMatrix::from_element(2, 2, c(0.0));
        m[(0, 1)] = c(1.0);
        assert!(matches!(trace_norm(&m, 1e-12), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn complex_block_matches_dense_solver() {
        let m = DMatrix::from_row_slice(
            3,
            3,
            &[
                c(2.0),
                C64::new(0.0, 1.0),
                c(0.0),
                C64::new(0.0, -1.0),
                c(2.0),
                c(0.5),
                c(0.0),
                c(0.5),
                c(-1.0),
            ],
        );
        let mut a = hermitian_eigenvalues(&m);
        let mut b: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
        a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        b.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
