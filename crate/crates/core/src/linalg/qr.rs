//! Householder QR for complex matrices.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ONE, ZERO};

/// Full QR factorization `M = Q R` with `Q` unitary (`m x m`) and `R` upper
/// trapezoidal (`m x n`).
#[derive(Debug, Clone)]
pub struct Qr {
    pub q: ComplexMatrix,
    pub r: ComplexMatrix,
}

pub fn qr(m: &ComplexMatrix) -> Qr {
    let (rows, cols) = m.shape();
    let mut r = m.clone();
    let mut q = ComplexMatrix::identity(rows);

    for k in 0..cols.min(rows.saturating_sub(1)) {
        let norm_x = (k..rows).map(|i| r[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = r[(k, k)];
        let phase = if x0.norm() == 0.0 { ONE } else { x0 / x0.norm() };
        let alpha = -phase * norm_x;

        let mut v: Vec<Complex64> = (k..rows).map(|i| r[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }

        // R <- (I - 2 v v*) R on rows k.., columns k..
        for j in k..cols {
            let dot: Complex64 = v.iter().enumerate().map(|(t, vi)| vi.conj() * r[(k + t, j)]).sum();
            for (t, vi) in v.iter().enumerate() {
                r[(k + t, j)] -= *vi * dot * 2.0;
            }
        }
        // Q <- Q (I - 2 v v*) on columns k..
        for i in 0..rows {
            let dot: Complex64 = v.iter().enumerate().map(|(t, vi)| q[(i, k + t)] * vi).sum();
            for (t, vi) in v.iter().enumerate() {
                q[(i, k + t)] -= dot * vi.conj() * 2.0;
            }
        }
        for i in (k + 1)..rows {
            r[(i, k)] = ZERO;
        }
    }
    Qr { q, r }
}

/// Scales the columns of `Q` so the diagonal of `R` becomes real nonnegative.
/// Applied to a complex Gaussian matrix this yields a Haar-distributed unitary.
pub fn qr_phase_fixed(m: &ComplexMatrix) -> Qr {
    let Qr { mut q, mut r } = qr(m);
    let k = m.rows().min(m.cols());
    for j in 0..k {
        let d = r[(j, j)];
        if d.norm() == 0.0 {
            continue;
        }
        let phase = d / d.norm();
        for i in 0..q.rows() {
            q[(i, j)] *= phase;
        }
        for jj in 0..r.cols() {
            r[(j, jj)] *= phase.conj();
        }
    }
    Qr { q, r }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::c;

    #[test]
    fn qr_reconstructs_and_is_unitary() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(0.0, 1.0), c(3.0, 0.0)],
            vec![c(-1.0, 0.0), c(2.0, -2.0), c(0.5, 0.5)],
            vec![c(0.0, 0.0), c(1.0, 1.0), c(-2.0, 1.0)],
            vec![c(4.0, -1.0), c(0.0, 0.0), c(1.0, 0.0)],
        ]);
        let Qr { q, r } = qr(&m);
        assert!((&q * &r).distance(&m).unwrap() < 1e-12);
        let qhq = &q.adjoint() * &q;
        assert!(qhq.distance(&ComplexMatrix::identity(4)).unwrap() < 1e-12);
        for i in 0..4 {
            for j in 0..i.min(3) {
                assert_eq!(r[(i, j)], ZERO);
            }
        }
    }

    #[test]
    fn phase_fixed_diagonal_is_real_positive() {
        let m = ComplexMatrix::from_rows(&[vec![c(0.0, 2.0), c(1.0, 0.0)], vec![c(1.0, -1.0), c(0.0, 3.0)]]);
        let Qr { q, r } = qr_phase_fixed(&m);
        assert!((&q * &r).distance(&m).unwrap() < 1e-12);
        for j in 0..2 {
            assert!(r[(j, j)].im.abs() < 1e-14 && r[(j, j)].re > 0.0);
        }
    }
}
