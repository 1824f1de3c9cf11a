//! Test-only reference computations.
//!
//! Everything here is built from scratch with dense linear algebra: binomials
//! are recomputed, Kraus operators are read off a beam-splitter unitary
//! obtained by exponentiating its generator, and channels are applied as full
//! matrix products. Nothing calls into the library's channel code.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use distillery::{TruncationConfig, TwoModeState};

pub fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// exp(θ(a†b − ab†)) on two modes with `levels` Fock levels each, cos θ = t.
/// Index of |a, b⟩ is a·levels + b. Exact on every sector with a+b < levels.
pub fn bs_unitary(t: f64, levels: usize) -> DMatrix<f64> {
    bs_unitary_angle(t.clamp(-1.0, 1.0).acos(), levels)
}

/// exp(θ(a†b − ab†)) for an arbitrary mixing angle; negative θ flips the sign of r.
pub fn bs_unitary_angle(theta: f64, levels: usize) -> DMatrix<f64> {
    let n = levels * levels;
    let mut g = DMatrix::<f64>::zeros(n, n);
    for a in 0..levels {
        for b in 0..levels {
            let col = a * levels + b;
            // a†b |a,b⟩ = √((a+1)b) |a+1, b−1⟩
            if b > 0 && a + 1 < levels {
                g[((a + 1) * levels + b - 1, col)] += theta * (((a + 1) * b) as f64).sqrt();
            }
            // −ab† |a,b⟩ = −√(a(b+1)) |a−1, b+1⟩
            if a > 0 && b + 1 < levels {
                g[((a - 1) * levels + b + 1, col)] -= theta * ((a * (b + 1)) as f64).sqrt();
            }
        }
    }
    g.exp()
}

/// Single-mode Kraus operator for `q` quanta leaving through the reflected
/// port of a beam splitter with transmissivity `t`, ancilla starting in vacuum.
pub fn bs_kraus(t: f64, q: usize, dim: usize) -> DMatrix<f64> {
    let u = bs_unitary(t, dim);
    DMatrix::from_fn(dim, dim, |m, n| u[(m * dim + q, n * dim)])
}

pub fn kron(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a.kronecker(b)
}

fn to_complex(m: &DMatrix<f64>) -> DMatrix<C64> {
    m.map(|x| C64::new(x, 0.0))
}

/// Σ_ops K ρ K†.
pub fn apply_kraus(rho: &DMatrix<C64>, ops: &[DMatrix<f64>]) -> DMatrix<C64> {
    let mut out = DMatrix::<C64>::zeros(rho.nrows(), rho.ncols());
    for k in ops {
        let kc = to_complex(k);
        out += &kc * rho * kc.adjoint();
    }
    out
}

/// Loss on both modes as a dense sum over every pair of lost quanta.
pub fn dense_loss(rho: &DMatrix<C64>, t: f64, dim: usize) -> DMatrix<C64> {
    let singles: Vec<DMatrix<f64>> = (0..dim).map(|q| bs_kraus(t, q, dim)).collect();
    let mut ops = Vec::new();
    for ka in &singles {
        for kb in &singles {
            ops.push(kron(ka, kb));
        }
    }
    apply_kraus(rho, &ops)
}

pub fn dense_detect(rho: &DMatrix<C64>, t_s: f64, q_a: usize, q_b: usize, dim: usize) -> DMatrix<C64> {
    let op = kron(&bs_kraus(t_s, q_a, dim), &bs_kraus(t_s, q_b, dim));
    apply_kraus(rho, &[op])
}

pub fn real_trace(m: &DMatrix<C64>) -> f64 {
    (0..m.nrows()).map(|i| m[(i, i)].re).sum()
}

/// Truncated squeezed vacuum, normalized on the kept levels.
pub fn tmss_matrix(lambda: f64, dim: usize) -> DMatrix<C64> {
    let norm: f64 = (0..dim).map(|n| lambda.powi(2 * n as i32)).sum();
    let mut rho = DMatrix::<C64>::zeros(dim * dim, dim * dim);
    for n in 0..dim {
        for k in 0..dim {
            rho[(n * dim + n, k * dim + k)] = C64::new(lambda.powi((n + k) as i32) / norm, 0.0);
        }
    }
    rho
}

/// One loss event on both arms of the squeezed vacuum, written out in closed form:
/// ρ = Σ_{n,k,p,q} c_n c_k A_{n,p} A_{k,p} A_{n,q} A_{k,q} |n−p, n−q⟩⟨k−p, k−q|
/// with A_{n,p} = √C(n,p) t^{n−p} (1−t²)^{p/2}.
pub fn tmss_after_one_loss(lambda: f64, t: f64, dim: usize) -> DMatrix<C64> {
    let r = (1.0 - t * t).sqrt();
    let amp = |n: usize, p: usize| binom(n, p).sqrt() * t.powi((n - p) as i32) * r.powi(p as i32);
    let norm: f64 = (0..dim).map(|n| lambda.powi(2 * n as i32)).sum();
    let mut rho = DMatrix::<C64>::zeros(dim * dim, dim * dim);
    for n in 0..dim {
        for k in 0..dim {
            let c = lambda.powi((n + k) as i32) / norm;
            for p in 0..=n.min(k) {
                for q in 0..=n.min(k) {
                    let w = c * amp(n, p) * amp(k, p) * amp(n, q) * amp(k, q);
                    rho[((n - p) * dim + (n - q), (k - p) * dim + (k - q))] += C64::new(w, 0.0);
                }
            }
        }
    }
    rho
}

/// P₁₁: one loss event, then one quantum detected on each arm.
pub fn p11(lambda: f64, t: f64, t_s: f64, dim: usize) -> f64 {
    let lost = dense_loss(&tmss_matrix(lambda, dim), t, dim);
    real_trace(&dense_detect(&lost, t_s, 1, 1, dim))
}

/// One mashing step at small cutoff.
///
/// ρ₀ occupies (A1, B1) and ρ_i (A2, B2). Each arm passes a 50:50 beam
/// splitter built by exponentiation, output port 1 is projected on vacuum and
/// the port-2 state is kept in full. Returns the projected (unnormalized)
/// output and its trace. `theta_sign` = −1 flips the sign of r.
pub fn dense_mash(rho_i: &DMatrix<C64>, rho_0: &DMatrix<C64>, dim: usize, theta_sign: f64) -> (DMatrix<C64>, f64) {
    let big = 2 * dim - 1;
    let u = bs_unitary_angle(theta_sign * std::f64::consts::FRAC_PI_4, big);
    // K[(out), (n1, n2)] = ⟨0, out| U |n1, n2⟩
    let k = DMatrix::from_fn(big, dim * dim, |out, col| {
        let (n1, n2) = (col / dim, col % dim);
        u[(out, n1 * big + n2)]
    });
    // joint input in order (A1, A2, B1, B2)
    let d4 = dim * dim * dim * dim;
    let mut x = DMatrix::<C64>::zeros(d4, d4);
    let idx = |a1: usize, a2: usize, b1: usize, b2: usize| ((a1 * dim + a2) * dim + b1) * dim + b2;
    for a1 in 0..dim {
        for b1 in 0..dim {
            for a1p in 0..dim {
                for b1p in 0..dim {
                    let v0 = rho_0[(a1 * dim + b1, a1p * dim + b1p)];
                    if v0 == C64::new(0.0, 0.0) {
                        continue;
                    }
                    for a2 in 0..dim {
                        for b2 in 0..dim {
                            for a2p in 0..dim {
                                for b2p in 0..dim {
                                    let vi = rho_i[(a2 * dim + b2, a2p * dim + b2p)];
                                    x[(idx(a1, a2, b1, b2), idx(a1p, a2p, b1p, b2p))] = v0 * vi;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let kk = kron(&k, &k);
    let kc = to_complex(&kk);
    let out = &kc * x * kc.adjoint();
    let tr = real_trace(&out);
    (out, tr)
}

/// Keeps levels below `dim` of a two-mode matrix with `big` levels per mode.
pub fn truncate_two_mode(m: &DMatrix<C64>, big: usize, dim: usize) -> DMatrix<C64> {
    DMatrix::from_fn(dim * dim, dim * dim, |row, col| {
        let (a, b) = (row / dim, row % dim);
        let (ap, bp) = (col / dim, col % dim);
        m[(a * big + b, ap * big + bp)]
    })
}

/// Random density matrix G G† / tr on `dim` levels per mode.
pub fn random_state(seed: u64, cfg: TruncationConfig) -> TwoModeState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = cfg.dim() * cfg.dim();
    let g = DMatrix::from_fn(n, n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let rho = &g * g.adjoint();
    let tr = real_trace(&rho);
    let rho = rho.map(|v| v / tr);
    // exact Hermiticity
    let rho = (&rho + rho.adjoint()).map(|v| v * 0.5);
    TwoModeState::from_matrix(rho, cfg).unwrap()
}

/// Random single-mode density matrix.
pub fn random_single_mode(rng: &mut ChaCha8Rng, dim: usize) -> DMatrix<C64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let rho = &g * g.adjoint();
    let tr = real_trace(&rho);
    let rho = rho.map(|v| v / tr);
    (&rho + rho.adjoint()).map(|v| v * 0.5)
}

pub fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    (a - b).iter().map(|v| v.norm()).fold(0.0, f64::max)
}
