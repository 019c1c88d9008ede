//! Singular value decomposition by one-sided (Hestenes) Jacobi rotations.
//!
//! The input is orthogonalized column by column with complex Jacobi
//! rotations accumulated into the right factor. Sweeps visit column pairs in
//! a fixed cyclic order, and each left singular vector is rotated so its
//! largest-magnitude entry is real and positive, so the factorization is
//! reproducible bit for bit for a fixed input.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, Tolerance, ZERO};
use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 80;

#[derive(Debug, Clone)]
pub struct SvdResult {
    /// `m x m` unitary.
    pub left: ComplexMatrix,
    /// `min(m, n)` values, descending, nonnegative.
    pub singular_values: Vec<f64>,
    /// `n x n` unitary.
    pub right: ComplexMatrix,
}

impl SvdResult {
    pub fn sigma_max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    /// Numerical rank under `tol`.
    pub fn rank(&self, tol: &Tolerance) -> usize {
        let (m, n) = (self.left.rows(), self.right.rows());
        let smax = self.sigma_max();
        if smax == 0.0 {
            return 0;
        }
        let cutoff = (tol.rank_factor(m, n) * smax).max(tol.rank_floor);
        self.singular_values.iter().take_while(|&&s| s > cutoff).count()
    }

    /// `left * diag(sigma) * right^*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let (m, n) = (self.left.rows(), self.right.rows());
        let mut sigma = ComplexMatrix::zeros(m, n);
        for (i, &s) in self.singular_values.iter().enumerate() {
            sigma[(i, i)] = Complex64::new(s, 0.0);
        }
        &(&self.left * &sigma) * &self.right.adjoint()
    }
}

/// Full SVD `M = W Σ V*`.
pub fn svd(m: &ComplexMatrix) -> Result<SvdResult> {
    let (rows, cols) = m.shape();
    let mut result = if rows >= cols {
        jacobi_tall(m)?
    } else {
        // M = (M*)* = (W Σ V*)* = V Σᵀ W*
        let t = jacobi_tall(&m.adjoint())?;
        SvdResult {
            left: t.right,
            singular_values: t.singular_values,
            right: t.left,
        }
    };
    fix_phases(&mut result);
    Ok(result)
}

/// Numerical rank of `m`: number of singular values above
/// `max(rank_factor * sigma_max, rank_floor)`. The zero matrix has rank 0.
pub fn rank(m: &ComplexMatrix, tol: &Tolerance) -> Result<usize> {
    Ok(svd(m)?.rank(tol))
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

/// One-sided Jacobi on a matrix with `rows >= cols`.
fn jacobi_tall(a: &ComplexMatrix) -> Result<SvdResult> {
    let (m, n) = a.shape();
    debug_assert!(m >= n);
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut e = vec![ZERO; n];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    let threshold = f64::EPSILON * (m.max(1) as f64);
    // Columns at or below this norm are rounding noise and are left alone.
    let negligible = {
        let f = f64::EPSILON * a.frobenius_norm();
        f * f
    };

    let mut converged = n < 2;
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let alpha = cols[i].iter().map(Complex64::norm_sqr).sum::<f64>();
                let beta = cols[j].iter().map(Complex64::norm_sqr).sum::<f64>();
                let gamma = dot(&cols[i], &cols[j]);
                let g = gamma.norm();
                if g == 0.0 || g <= threshold * (alpha * beta).sqrt() || alpha.min(beta) <= negligible {
                    continue;
                }
                rotated = true;
                // Rotate b_j = e^{-i phi} a_j against a_i with a real rotation.
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                rotate(&mut cols, i, j, phase, cs, sn);
                rotate(&mut v, i, j, phase, cs, sn);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::SvdNoConvergence { sweeps: MAX_SWEEPS });
    }

    let sigma: Vec<f64> = cols.iter().map(|c| norm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&p, &q| sigma[q].total_cmp(&sigma[p]).then(p.cmp(&q)));

    let singular_values: Vec<f64> = order.iter().map(|&k| sigma[k]).collect();
    let right = ComplexMatrix::from_columns(n, &order.iter().map(|&k| v[k].clone()).collect::<Vec<_>>());

    let candidates: Vec<Option<Vec<Complex64>>> = order
        .iter()
        .map(|&k| {
            let s = sigma[k];
            (s > 0.0).then(|| cols[k].iter().map(|z| z / s).collect())
        })
        .collect();
    let left = complete_orthonormal(m, candidates);

    Ok(SvdResult {
        left,
        singular_values,
        right,
    })
}

/// `(a_i, a_j) <- (c a_i - s e^{-i phi} a_j, s a_i + c e^{-i phi} a_j)`
fn rotate(vs: &mut [Vec<Complex64>], i: usize, j: usize, phase: Complex64, cs: f64, sn: f64) {
    let pc = phase.conj();
    let (lo, hi) = vs.split_at_mut(j);
    let (ai, aj) = (&mut lo[i], &mut hi[0]);
    for (x, y) in ai.iter_mut().zip(aj.iter_mut()) {
        let bj = pc * *y;
        let xi = *x;
        *x = xi * cs - bj * sn;
        *y = xi * sn + bj * cs;
    }
}

/// Builds an `m x m` unitary whose leading columns follow `candidates` in
/// order. Candidates are re-orthogonalized (two Gram-Schmidt passes); missing
/// or collapsed candidates and the trailing columns are filled from the
/// standard basis vector with the largest residual.
fn complete_orthonormal(m: usize, candidates: Vec<Option<Vec<Complex64>>>) -> ComplexMatrix {
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    let project_out = |basis: &[Vec<Complex64>], w: &mut Vec<Complex64>| {
        for _ in 0..2 {
            for b in basis {
                let p = dot(b, w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= p * bi;
                }
            }
        }
    };
    let fill = |basis: &[Vec<Complex64>]| -> Vec<Complex64> {
        let mut best: Option<(f64, Vec<Complex64>)> = None;
        for k in 0..m {
            let mut e = vec![ZERO; m];
            e[k] = Complex64::new(1.0, 0.0);
            project_out(basis, &mut e);
            let nrm = norm(&e);
            if best.as_ref().is_none_or(|(bn, _)| nrm > *bn) {
                best = Some((nrm, e));
            }
        }
        let (nrm, e) = best.expect("m > 0");
        e.into_iter().map(|z| z / nrm).collect()
    };

    for cand in candidates.into_iter().take(m) {
        let w = cand.and_then(|mut w| {
            project_out(&basis, &mut w);
            let nrm = norm(&w);
            (nrm >= 0.5).then(|| w.into_iter().map(|z| z / nrm).collect())
        });
        let w = w.unwrap_or_else(|| fill(&basis));
        basis.push(w);
    }
    while basis.len() < m {
        let w = fill(&basis);
        basis.push(w);
    }
    ComplexMatrix::from_columns(m, &basis)
}

/// Makes the largest-magnitude entry of each left vector real positive,
/// compensating the paired right vector.
fn fix_phases(r: &mut SvdResult) {
    let m = r.left.rows();
    let k = r.singular_values.len();
    for j in 0..m {
        let col = r.left.column(j);
        let mut idx = 0;
        let mut best = -1.0;
        for (i, z) in col.iter().enumerate() {
            if z.norm() > best {
                best = z.norm();
                idx = i;
            }
        }
        if best <= 0.0 {
            continue;
        }
        let phase = col[idx] / col[idx].norm();
        let pc = phase.conj();
        let fixed: Vec<Complex64> = col.iter().map(|z| z * pc).collect();
        r.left.set_column(j, &fixed);
        if j < k {
            let rc: Vec<Complex64> = r.right.column(j).iter().map(|z| z * pc).collect();
            r.right.set_column(j, &rc);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::c;

    fn check_invariants(m: &ComplexMatrix, r: &SvdResult) {
        let scale = m.frobenius_norm().max(1.0);
        assert!(r.reconstruct().distance(m).unwrap() <= 1e-10 * scale);
        let (rows, cols) = m.shape();
        let wl = &r.left.adjoint() * &r.left;
        assert!(wl.distance(&ComplexMatrix::identity(rows)).unwrap() <= 1e-10 * rows as f64);
        let vr = &r.right.adjoint() * &r.right;
        assert!(vr.distance(&ComplexMatrix::identity(cols)).unwrap() <= 1e-10 * cols as f64);
        assert!(r.singular_values.windows(2).all(|w| w[0] >= w[1]));
        assert!(r.singular_values.iter().all(|&s| s >= 0.0));
    }

    #[test]
    fn diagonal_singular_values() {
        let m = ComplexMatrix::from_real_diag(&[3.0, 1.0]);
        let r = svd(&m).unwrap();
        assert_eq!(r.singular_values, vec![3.0, 1.0]);
        check_invariants(&m, &r);

        let m = ComplexMatrix::from_real_diag(&[1.0, 3.0]);
        let r = svd(&m).unwrap();
        assert_eq!(r.singular_values, vec![3.0, 1.0]);
        check_invariants(&m, &r);
    }

    #[test]
    fn single_nonzero_singular_value() {
        let m = ComplexMatrix::from_real_rows(&[[0.0, 2.0], [0.0, 0.0]]);
        let r = svd(&m).unwrap();
        assert_eq!(r.singular_values, vec![2.0, 0.0]);
        check_invariants(&m, &r);
    }

    #[test]
    fn noise_level_column_converges() {
        // The middle column is pure rounding noise next to an O(1) column.
        let m = ComplexMatrix::from_rows(&[
            vec![ZERO, ZERO, ZERO],
            vec![ZERO, c(1.1102230246251565e-16, 5.551115123125783e-17), ZERO],
            vec![
                c(0.3676854390260528, -0.12095191559113423),
                c(0.9519037305706719, -0.7823360258360632),
                c(1.0, 0.0),
            ],
        ]);
        let r = svd(&m).unwrap();
        check_invariants(&m, &r);
        assert_eq!(r.rank(&Tolerance::default()), 1);
    }

    #[test]
    fn rank_one_block_from_fuglede_counterexample() {
        // T*T = [[5,5],[5,5]] has eigenvalues 10 and 0 (closed-form 2x2 eigensolve:
        // trace 10, determinant 0), so the singular values are sqrt(10) and 0.
        let m = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [2.0, 2.0]]);
        let tt = &m.adjoint() * &m;
        let (tr, det) = (
            (tt[(0, 0)] + tt[(1, 1)]).re,
            (tt[(0, 0)] * tt[(1, 1)] - tt[(0, 1)] * tt[(1, 0)]).re,
        );
        let disc = (tr * tr - 4.0 * det).sqrt();
        let oracle = [((tr + disc) / 2.0).sqrt(), ((tr - disc) / 2.0).max(0.0).sqrt()];

        let r = svd(&m).unwrap();
        assert!((r.singular_values[0] - oracle[0]).abs() < 1e-14);
        assert!((r.singular_values[0] - 10.0_f64.sqrt()).abs() < 1e-14);
        assert!(r.singular_values[1].abs() < 1e-14);
        assert!(oracle[1].abs() < 1e-14);
        check_invariants(&m, &r);
    }

    #[test]
    fn rectangular_and_degenerate_shapes() {
        let wide = ComplexMatrix::from_rows(&[vec![c(1.0, 1.0), c(0.0, 2.0), c(3.0, 0.0)]]);
        let r = svd(&wide).unwrap();
        assert_eq!(r.singular_values.len(), 1);
        assert!((r.singular_values[0] - wide.frobenius_norm()).abs() < 1e-14);
        check_invariants(&wide, &r);

        let tall = wide.adjoint();
        check_invariants(&tall, &svd(&tall).unwrap());

        let zero = ComplexMatrix::zeros(3, 2);
        let r = svd(&zero).unwrap();
        assert_eq!(r.singular_values, vec![0.0, 0.0]);
        check_invariants(&zero, &r);

        let empty = ComplexMatrix::zeros(3, 0);
        let r = svd(&empty).unwrap();
        assert!(r.singular_values.is_empty());
        assert_eq!(r.left.shape(), (3, 3));
    }

    #[test]
    fn left_vectors_have_real_positive_leading_entry() {
        let m = ComplexMatrix::from_rows(&[vec![c(0.0, 1.0), c(2.0, -1.0)], vec![c(-3.0, 0.5), c(0.0, 0.0)]]);
        let r = svd(&m).unwrap();
        for j in 0..2 {
            let col = r.left.column(j);
            let big = col
                .iter()
                .copied()
                .fold(ZERO, |a, z| if z.norm() > a.norm() { z } else { a });
            assert!(big.im.abs() < 1e-15 && big.re > 0.0);
        }
        check_invariants(&m, &r);
    }

    #[test]
    fn deterministic_for_fixed_input() {
        let m = ComplexMatrix::from_fn(5, 4, |i, j| {
            c((i * 7 + j * 3) as f64 % 5.0 - 2.0, (i + 2 * j) as f64 % 3.0)
        });
        let a = svd(&m).unwrap();
        let b = svd(&m).unwrap();
        assert_eq!(a.left, b.left);
        assert_eq!(a.right, b.right);
        assert_eq!(a.singular_values, b.singular_values);
    }

    #[test]
    fn ranks_of_reference_matrices() {
        let tol = Tolerance::default();
        assert_eq!(rank(&ComplexMatrix::zeros(3, 3), &tol).unwrap(), 0);
        assert_eq!(
            rank(&ComplexMatrix::from_real_rows(&[[1.0, 1.0], [2.0, 2.0]]), &tol).unwrap(),
            1
        );
        // nullspace is span{(1,-1,-1)}, so rank = 3 - 1
        let t3 = ComplexMatrix::from_real_rows(&[[1.0, 1.0, 0.0], [2.0, 1.0, 1.0], [-1.0, 0.0, -1.0]]);
        assert_eq!(rank(&t3, &tol).unwrap(), 2);
        assert_eq!(rank(&t3.adjoint(), &tol).unwrap(), 2);
    }
}
