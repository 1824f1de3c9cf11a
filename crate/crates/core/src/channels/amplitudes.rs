//! Beam-splitter amplitudes in the Fock basis.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// A[q, q'](t) = √C(q,q') · t^{q−q'} · r^{q'} with r = √(1−t²): amplitude for
/// q' of q photons to be reflected off a beam splitter of transmissivity t.
pub fn bs_amplitude(q: usize, q_prime: usize, t: f64) -> Result<f64> {
    if q_prime > q {
        return Err(Error::Domain(format!("A[{q},{q_prime}] needs q' <= q")));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::OutOfRange {
            name: "t",
            value: t,
            expected: "transmissivity must lie in [0,1]",
        });
    }
    Ok(amplitude(q, q_prime, t))
}

pub(crate) fn amplitude(q: usize, q_prime: usize, t: f64) -> f64 {
    let r = (1.0 - t * t).max(0.0).sqrt();
    binomial(q, q_prime).sqrt() * t.powi((q - q_prime) as i32) * r.powi(q_prime as i32)
}

/// Table `a[n][q] = A[n, q](t)`, zero for `q > n`.
pub(crate) fn amplitude_table(dim: usize, t: f64) -> Vec<Vec<f64>> {
    (0..dim)
        .map(|n| (0..dim).map(|q| if q <= n { amplitude(n, q, t) } else { 0.0 }).collect())
        .collect()
}

/// Single-mode operator M_q = Σ_n A[n,q](t)|n−q⟩⟨n| on a `dim`-level mode.
///
/// For a loss event the M_q are the Kraus operators of the channel; for a
/// detector behind a beam splitter of transmissivity t, M_q is the
/// measurement operator of outcome q.
pub fn kraus_operator(t: f64, q: usize, dim: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(dim, dim);
    for n in q..dim {
        m[(n - q, n)] = amplitude(n, q, t);
    }
    m
}

/// Sign convention of the 2×2 mode transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BsConvention {
    /// U = [[t, r], [−r, t]].
    #[default]
    MinusRLower,
    /// U = [[t, −r], [r, t]].
    MinusRUpper,
}

/// ⟨m₁, m₂| U_BS |n₁, n₂⟩ for U = [[t, r], [−r, t]].
///
/// Input creation operators transform as a₁† → t a₁† − r a₂† and
/// a₂† → r a₁† + t a₂†; the element is read off the expansion of
/// (a₁†)^{n₁}(a₂†)^{n₂}|0,0⟩/√(n₁!n₂!).
pub fn fock_bs_element(n1: usize, n2: usize, m1: usize, m2: usize, t: f64) -> f64 {
    fock_bs_element_with(n1, n2, m1, m2, t, BsConvention::MinusRLower)
}

pub fn fock_bs_element_with(n1: usize, n2: usize, m1: usize, m2: usize, t: f64, convention: BsConvention) -> f64 {
    if n1 + n2 != m1 + m2 {
        return 0.0;
    }
    let r = (1.0 - t * t).max(0.0).sqrt();
    let r = match convention {
        BsConvention::MinusRLower => r,
        BsConvention::MinusRUpper => -r,
    };
    // i photons of the first input and j = m1 - i of the second exit port 1
    let lo = m1.saturating_sub(n2);
    let hi = n1.min(m1);
    let mut sum = 0.0;
    for i in lo..=hi {
        let j = m1 - i;
        sum += binomial(n1, i)
            * binomial(n2, j)
            * t.powi((i + n2 - j) as i32)
            * (-r).powi((n1 - i) as i32)
            * r.powi(j as i32);
    }
    sum * (factorial(m1) * factorial(m2) / (factorial(n1) * factorial(n2))).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_photon_amplitudes() {
        let t = 0.8;
        let r = 0.6;
        assert!((bs_amplitude(1, 0, t).unwrap() - t).abs() < 1e-15);
        assert!((bs_amplitude(1, 1, t).unwrap() - r).abs() < 1e-15);
        assert!((bs_amplitude(2, 1, t).unwrap() - 2f64.sqrt() * t * r).abs() < 1e-15);
        assert_eq!(bs_amplitude(0, 0, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn amplitude_errors() {
        assert!(matches!(bs_amplitude(1, 2, 0.5), Err(Error::Domain(_))));
        assert!(bs_amplitude(2, 1, 1.5).is_err());
    }

    #[test]
    fn binomial_completeness() {
        let s: f64 = (0..=5).map(|q| bs_amplitude(5, q, 0.7).unwrap().powi(2)).sum();
        assert!((s - 1.0).abs() < 1e-14);
    }

    #[test]
    fn single_photon_block() {
        let t = 0.6;
        let r = 0.8;
        assert!((fock_bs_element(0, 1, 0, 1, t) - t).abs() < 1e-15);
        assert!((fock_bs_element(0, 1, 1, 0, t) - r).abs() < 1e-15);
        assert!((fock_bs_element(1, 0, 1, 0, t) - t).abs() < 1e-15);
        assert!((fock_bs_element(1, 0, 0, 1, t) + r).abs() < 1e-15);
        assert_eq!(fock_bs_element(1, 0, 1, 1, t), 0.0);
    }

    #[test]
    fn hong_ou_mandel() {
        let t = std::f64::consts::FRAC_1_SQRT_2;
        assert!((fock_bs_element(1, 1, 0, 2, t).powi(2) - 0.5).abs() < 1e-15);
        assert!((fock_bs_element(1, 1, 2, 0, t).powi(2) - 0.5).abs() < 1e-15);
        assert!(fock_bs_element(1, 1, 1, 1, t).abs() < 1e-15);
    }

    #[test]
    fn sector_unitarity() {
        for &t in &[0.3, std::f64::consts::FRAC_1_SQRT_2, 0.95] {
            for total in 0..=8usize {
                for n1 in 0..=total {
                    for n1p in 0..=total {
                        let dot: f64 = (0..=total)
                            .map(|m1| {
                                fock_bs_element(n1, total - n1, m1, total - m1, t)
                                    * fock_bs_element(n1p, total - n1p, m1, total - m1, t)
                            })
                            .sum();
                        let expect = if n1 == n1p { 1.0 } else { 0.0 };
                        assert!((dot - expect).abs() < 1e-12, "t={t} N={total} {n1},{n1p}: {dot}");
                    }
                }
            }
        }
    }

    #[test]
    fn convention_flip_only_changes_signs() {
        let t = 0.7;
        for (n1, n2, m1) in [(2, 1, 1), (1, 2, 3), (3, 0, 2)] {
            let m2 = n1 + n2 - m1;
            let a = fock_bs_element_with(n1, n2, m1, m2, t, BsConvention::MinusRLower);
            let b = fock_bs_element_with(n1, n2, m1, m2, t, BsConvention::MinusRUpper);
            assert!((a.abs() - b.abs()).abs() < 1e-14);
        }
    }

    #[test]
    fn kraus_operators_are_complete() {
        let dim = 6;
        let mut sum = DMatrix::<f64>::zeros(dim, dim);
        for q in 0..dim {
            let m = kraus_operator(0.83, q, dim);
            sum += m.transpose() * &m;
        }
        assert!((sum - DMatrix::<f64>::identity(dim, dim)).amax() < 1e-14);
    }
}
