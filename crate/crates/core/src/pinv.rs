//! Moore-Penrose pseudoinverse and Penrose-equation certificates.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{svd, ComplexMatrix, Tolerance};

/// Moore-Penrose inverse via the SVD, inverting singular values above the
/// numerical-rank cutoff and zeroing the rest.
///
/// The zero matrix maps to the zero matrix of transposed shape.
pub fn pinv(m: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    let f = svd(m)?;
    let r = f.rank(tol);
    let (rows, cols) = m.shape();
    let mut g = ComplexMatrix::zeros(cols, rows);
    for k in 0..r {
        let inv = 1.0 / f.singular_values[k];
        for i in 0..cols {
            let vik = f.right[(i, k)] * inv;
            for j in 0..rows {
                g[(i, j)] += vik * f.left[(j, k)].conj();
            }
        }
    }
    Ok(g)
}

/// Outcome of checking the four Penrose equations for a candidate `G` of `T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PenroseReport {
    /// `TGT = T`
    pub eq1_holds: bool,
    /// `GTG = G`
    pub eq2_holds: bool,
    /// `(TG)* = TG`
    pub eq3_holds: bool,
    /// `(GT)* = GT`
    pub eq4_holds: bool,
    /// Frobenius norms of the four defects, in equation order.
    pub residuals: [f64; 4],
}

impl PenroseReport {
    pub fn all_hold(&self) -> bool {
        self.eq1_holds && self.eq2_holds && self.eq3_holds && self.eq4_holds
    }
}

pub fn penrose_check(t: &ComplexMatrix, g: &ComplexMatrix, tol: &Tolerance) -> Result<PenroseReport> {
    if g.shape() != (t.cols(), t.rows()) {
        return Err(Error::DimensionMismatch {
            op: "penrose_check",
            left: t.shape(),
            right: g.shape(),
        });
    }
    let tg = t.matmul(g)?;
    let gt = g.matmul(t)?;
    let residuals = [
        tg.matmul(t)?.distance(t)?,
        gt.matmul(g)?.distance(g)?,
        tg.adjoint().distance(&tg)?,
        gt.adjoint().distance(&gt)?,
    ];
    let scales = [t.frobenius_norm(), g.frobenius_norm()];
    let holds = residuals.map(|r| tol.within(r, &scales));
    Ok(PenroseReport {
        eq1_holds: holds[0],
        eq2_holds: holds[1],
        eq3_holds: holds[2],
        eq4_holds: holds[3],
        residuals,
    })
}

/// Closed form for rank-one matrices: `T† = T* / trace(T*T)`.
pub fn pinv_rank1(m: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    let rank = svd(m)?.rank(tol);
    if rank != 1 {
        return Err(Error::RankNotOne { rank });
    }
    // trace(T*T) is the squared Frobenius norm
    let alpha = m.as_slice().iter().map(Complex64::norm_sqr).sum::<f64>();
    Ok(m.adjoint().scale(Complex64::new(1.0 / alpha, 0.0)))
}

/// Orthogonal projector `T T†` onto the range of `T`.
pub fn range_projector(m: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    m.matmul(&pinv(m, tol)?)
}

/// Orthogonal projector `T† T` onto the range of `T*`.
pub fn corange_projector(m: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    pinv(m, tol)?.matmul(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{approx_eq, c};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn t_rank1() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[[1.0, 1.0], [2.0, 2.0]])
    }

    fn t_rank1_pinv() -> ComplexMatrix {
        // (x1, x2) -> ((x1 + 2 x2) / 10, (x1 + 2 x2) / 10)
        ComplexMatrix::from_real_rows(&[[0.1, 0.2], [0.1, 0.2]])
    }

    #[test]
    fn pinv_of_rank_one_block() {
        let g = pinv(&t_rank1(), &tol()).unwrap();
        assert!(g.distance(&t_rank1_pinv()).unwrap() < 1e-12);
        // its adjoint is [[1,1],[2,2]]/10
        let ga = g.adjoint();
        assert!(ga.distance(&t_rank1().scale(c(0.1, 0.0))).unwrap() < 1e-12);
    }

    #[test]
    fn pinv_trivial_cases() {
        let i3 = ComplexMatrix::identity(3);
        assert!(pinv(&i3, &tol()).unwrap().distance(&i3).unwrap() < 1e-14);

        let z = ComplexMatrix::zeros(2, 3);
        let gz = pinv(&z, &tol()).unwrap();
        assert_eq!(gz, ComplexMatrix::zeros(3, 2));

        let d = ComplexMatrix::from_real_diag(&[2.0, 0.0]);
        let gd = pinv(&d, &tol()).unwrap();
        assert!(gd.distance(&ComplexMatrix::from_real_diag(&[0.5, 0.0])).unwrap() < 1e-15);
    }

    #[test]
    fn penrose_reports() {
        let t = t_rank1();
        let rep = penrose_check(&t, &t_rank1_pinv(), &tol()).unwrap();
        assert!(rep.all_hold(), "{rep:?}");

        let g = pinv(&t, &tol()).unwrap();
        assert!(penrose_check(&t, &g, &tol()).unwrap().all_hold());

        // T I T = T but I T I = T != I
        let p = ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]]);
        let rep = penrose_check(&p, &ComplexMatrix::identity(2), &tol()).unwrap();
        assert!(rep.eq1_holds);
        assert!(!rep.eq2_holds);
        assert!((rep.residuals[1] - 1.0).abs() < 1e-15);
        assert!(rep.eq3_holds && rep.eq4_holds);

        let bad = penrose_check(&ComplexMatrix::zeros(2, 3), &ComplexMatrix::zeros(2, 3), &tol());
        assert!(matches!(bad, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rank_one_closed_form() {
        let g = pinv_rank1(&t_rank1(), &tol()).unwrap();
        assert!(g.distance(&t_rank1_pinv()).unwrap() < 1e-12);

        let e11 = ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]]);
        assert_eq!(pinv_rank1(&e11, &tol()).unwrap(), e11);

        // u v* with u = (1, i), v = (2, 0): pinv = v u* / (|u|^2 |v|^2) = v u* / 8
        let u = [c(1.0, 0.0), c(0.0, 1.0)];
        let v = [c(2.0, 0.0), c(0.0, 0.0)];
        let uv = ComplexMatrix::from_fn(2, 2, |i, j| u[i] * v[j].conj());
        let oracle = ComplexMatrix::from_fn(2, 2, |i, j| v[i] * u[j].conj() / 8.0);
        let g = pinv_rank1(&uv, &tol()).unwrap();
        assert!(g.distance(&oracle).unwrap() < 1e-15);
        assert!(approx_eq(&g, &pinv(&uv, &tol()).unwrap(), &tol()).unwrap());

        assert!(matches!(
            pinv_rank1(&ComplexMatrix::identity(2), &tol()),
            Err(Error::RankNotOne { rank: 2 })
        ));
        assert!(matches!(
            pinv_rank1(&ComplexMatrix::zeros(2, 2), &tol()),
            Err(Error::RankNotOne { rank: 0 })
        ));
    }

    #[test]
    fn projectors() {
        let i2 = ComplexMatrix::identity(2);
        assert!(range_projector(&i2, &tol()).unwrap().distance(&i2).unwrap() < 1e-14);
        assert!(corange_projector(&i2, &tol()).unwrap().distance(&i2).unwrap() < 1e-14);

        let n = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        let pr = range_projector(&n, &tol()).unwrap();
        let pc = corange_projector(&n, &tol()).unwrap();
        assert!(pr.distance(&ComplexMatrix::from_real_diag(&[1.0, 0.0])).unwrap() < 1e-14);
        assert!(pc.distance(&ComplexMatrix::from_real_diag(&[0.0, 1.0])).unwrap() < 1e-14);

        let t3 = ComplexMatrix::from_real_rows(&[[1.0, 1.0, 0.0], [2.0, 1.0, 1.0], [-1.0, 0.0, -1.0]]);
        let pr = range_projector(&t3, &tol()).unwrap();
        let pc = corange_projector(&t3, &tol()).unwrap();
        assert!(approx_eq(&pr, &pc, &tol()).unwrap());
        for p in [&pr, &pc] {
            assert!(approx_eq(p, &p.adjoint(), &tol()).unwrap());
            assert!(approx_eq(p, &(p * p), &tol()).unwrap());
        }
    }
}
