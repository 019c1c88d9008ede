//! Seeded random test instances.
//!
//! All generators draw from a [`ChaCha8Rng`]; a seed (and optionally a stream
//! id) fully determines the output.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{qr_phase_fixed, ComplexMatrix};

pub type TestRng = ChaCha8Rng;

/// Generator for trial `stream` under `seed`. Distinct streams are
/// independent, so trials can run in any order.
pub fn rng_for(seed: u64, stream: u64) -> TestRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn gaussian(rng: &mut TestRng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Matrix of i.i.d. standard complex Gaussians.
pub fn gaussian_matrix(rows: usize, cols: usize, rng: &mut TestRng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

pub fn real_gaussian_matrix(rows: usize, cols: usize, rng: &mut TestRng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| Complex64::new(rng.sample(StandardNormal), 0.0))
}

/// Haar-distributed unitary (QR of a complex Gaussian with phase fix).
pub fn haar_unitary(n: usize, rng: &mut TestRng) -> ComplexMatrix {
    qr_phase_fixed(&gaussian_matrix(n, n, rng)).q
}

/// Invertible matrix with singular values in `[0.5, 2]`, returned together
/// with its exact-form inverse `V diag(1/σ) U*`.
pub fn well_conditioned(n: usize, rng: &mut TestRng) -> (ComplexMatrix, ComplexMatrix) {
    let u = haar_unitary(n, rng);
    let v = haar_unitary(n, rng);
    let s: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..2.0)).collect();
    let m = &(&u * &ComplexMatrix::from_real_diag(&s)) * &v.adjoint();
    let inv_s: Vec<f64> = s.iter().map(|x| 1.0 / x).collect();
    let inv = &(&v * &ComplexMatrix::from_real_diag(&inv_s)) * &u.adjoint();
    (m, inv)
}

/// Nonzero complex scalar with modulus in `[0.5, 2]`.
pub fn unit_scale_scalar(rng: &mut TestRng) -> Complex64 {
    let r = rng.random_range(0.5..2.0);
    let theta = rng.random_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, theta)
}

/// `Σ_{k ≤ deg} c_k B^k` with random coefficients, `deg ∈ {0..3}`.
pub fn random_polynomial_in(b: &ComplexMatrix, rng: &mut TestRng) -> ComplexMatrix {
    let n = b.rows();
    let deg = rng.random_range(0..=3u32);
    let mut out = ComplexMatrix::zeros(n, n);
    let mut power = ComplexMatrix::identity(n);
    for _ in 0..=deg {
        out = &out + &power.scale(gaussian(rng));
        power = &power * b;
    }
    out
}

/// Invertible `r x r` block: diagonal (normal) or dense non-normal.
pub fn invertible_block(r: usize, make_normal: bool, rng: &mut TestRng) -> ComplexMatrix {
    if make_normal {
        let d: Vec<Complex64> = (0..r).map(|_| unit_scale_scalar(rng)).collect();
        ComplexMatrix::from_diag(&d)
    } else {
        well_conditioned(r, rng).0
    }
}

/// `Q · diag(block, 0) · Q*`.
pub fn conjugate_block(q: &ComplexMatrix, block: &ComplexMatrix) -> ComplexMatrix {
    let n = q.rows();
    let mut core = ComplexMatrix::zeros(n, n);
    core.set_block(0, 0, block);
    &(q * &core) * &q.adjoint()
}

fn check_rank(n: usize, r: usize) -> Result<()> {
    if r > n {
        return Err(Error::RankOutOfRange { rank: r, dim: n });
    }
    Ok(())
}

/// EP matrix `Q diag(B, 0) Q*` of rank `r` with Haar `Q` and invertible `B`
/// (diagonal when `make_normal`).
pub fn random_ep(n: usize, r: usize, seed: u64, make_normal: bool) -> Result<ComplexMatrix> {
    let mut rng = rng_for(seed, 0);
    random_ep_with(n, r, make_normal, &mut rng)
}

pub fn random_ep_with(n: usize, r: usize, make_normal: bool, rng: &mut TestRng) -> Result<ComplexMatrix> {
    check_rank(n, r)?;
    let q = haar_unitary(n, rng);
    let b = invertible_block(r, make_normal, rng);
    Ok(conjugate_block(&q, &b))
}

/// `(T, A)` with `T = Q diag(B, 0) Q*` EP and `A = Q diag(p(B), D) Q*`, so
/// `AT = TA`.
pub fn random_commuting_pair(n: usize, r: usize, seed: u64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let mut rng = rng_for(seed, 0);
    random_commuting_pair_with(n, r, &mut rng)
}

pub fn random_commuting_pair_with(n: usize, r: usize, rng: &mut TestRng) -> Result<(ComplexMatrix, ComplexMatrix)> {
    check_rank(n, r)?;
    let q = haar_unitary(n, rng);
    let b = invertible_block(r, false, rng);
    let cblock = random_polynomial_in(&b, rng);
    let d = gaussian_matrix(n - r, n - r, rng);
    let t = conjugate_block(&q, &b);
    let a = &(&q * &ComplexMatrix::direct_sum(&[&cblock, &d])) * &q.adjoint();
    Ok((t, a))
}

/// Rank-one complex EP matrix `u (λu)*`.
pub fn rank1_ep_complex(n: usize, rng: &mut TestRng) -> ComplexMatrix {
    let u: Vec<Complex64> = (0..n).map(|_| gaussian(rng)).collect();
    let lambda = unit_scale_scalar(rng);
    ComplexMatrix::from_fn(n, n, |i, j| u[i] * (lambda * u[j]).conj())
}

/// Rank-one real EP matrix `u (λu)ᵀ` with real `λ ≠ 0`.
pub fn rank1_ep_real(n: usize, rng: &mut TestRng) -> ComplexMatrix {
    let u: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    let mut lambda: f64 = rng.random_range(0.5..2.0);
    if rng.random_bool(0.5) {
        lambda = -lambda;
    }
    ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(u[i] * lambda * u[j], 0.0))
}

/// Rank-one matrix `u v*` with independent `u`, `v` (generically not EP).
pub fn rank1_general(n: usize, rng: &mut TestRng) -> ComplexMatrix {
    let u: Vec<Complex64> = (0..n).map(|_| gaussian(rng)).collect();
    let v: Vec<Complex64> = (0..n).map(|_| gaussian(rng)).collect();
    ComplexMatrix::from_fn(n, n, |i, j| u[i] * v[j].conj())
}

/// Rank-`r` matrix `Q1 diag(B, 0) Q2*` with independent unitaries (generically
/// not EP when `0 < r < n`).
pub fn random_low_rank(n: usize, r: usize, rng: &mut TestRng) -> ComplexMatrix {
    let q1 = haar_unitary(n, rng);
    let q2 = haar_unitary(n, rng);
    let b = invertible_block(r, false, rng);
    let mut core = ComplexMatrix::zeros(n, n);
    core.set_block(0, 0, &b);
    &(&q1 * &core) * &q2.adjoint()
}

/// Unitary with eigenvalues on the unit circle (normal and invertible).
pub fn random_unitary_like(n: usize, rng: &mut TestRng) -> ComplexMatrix {
    let q = haar_unitary(n, rng);
    let d: Vec<Complex64> = (0..n)
        .map(|_| Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))
        .collect();
    &(&q * &ComplexMatrix::from_diag(&d)) * &q.adjoint()
}

pub fn identity_scaled(n: usize, s: Complex64) -> ComplexMatrix {
    ComplexMatrix::identity(n).scale(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ep::{is_ep, is_normal};
    use crate::linalg::{approx_eq, Tolerance};

    #[test]
    fn streams_are_reproducible() {
        let a = gaussian_matrix(3, 3, &mut rng_for(7, 2));
        let b = gaussian_matrix(3, 3, &mut rng_for(7, 2));
        let c = gaussian_matrix(3, 3, &mut rng_for(7, 3));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let q = haar_unitary(6, &mut rng_for(1, 0));
        assert!((&q.adjoint() * &q).distance(&ComplexMatrix::identity(6)).unwrap() < 1e-13);
    }

    #[test]
    fn random_ep_edge_ranks() {
        let tol = Tolerance::default();
        assert_eq!(random_ep(4, 0, 3, false).unwrap(), ComplexMatrix::zeros(4, 4));
        let full = random_ep(4, 4, 3, true).unwrap();
        assert!(is_ep(&full, &tol).unwrap().verdict);
        assert!(is_normal(&full, &tol).unwrap());
        assert!(matches!(random_ep(3, 4, 0, false), Err(Error::RankOutOfRange { .. })));
        for seed in 0..20 {
            let t = random_ep(6, 1 + (seed as usize % 5), seed, false).unwrap();
            assert!(is_ep(&t, &tol).unwrap().verdict, "seed {seed}");
        }
    }

    #[test]
    fn commuting_pairs_commute() {
        let tol = Tolerance::default();
        for seed in 0..10 {
            let (t, a) = random_commuting_pair(5, 3, seed).unwrap();
            assert!(approx_eq(&(&a * &t), &(&t * &a), &tol).unwrap());
        }
    }

    #[test]
    fn well_conditioned_inverse() {
        let (m, inv) = well_conditioned(5, &mut rng_for(11, 0));
        assert!((&m * &inv).distance(&ComplexMatrix::identity(5)).unwrap() < 1e-13);
    }
}
