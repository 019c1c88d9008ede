use crate::error::{Error, Result};
use crate::linalg::{svd, ComplexMatrix};

/// Polar decomposition `S = U P` from `S = W Σ V*`: `U = W V*` (unitary) and
/// `P = V Σ V*` (Hermitian positive semidefinite).
///
/// For singular `S` the unitary factor is not unique; the one returned is
/// fixed by the deterministic SVD.
pub fn polar_decompose(s: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if !s.is_square() {
        return Err(Error::NotSquare {
            op: "polar_decompose",
            rows: s.rows(),
            cols: s.cols(),
        });
    }
    let f = svd(s)?;
    let v_star = f.right.adjoint();
    let u = f.left.matmul(&v_star)?;
    let p = ComplexMatrix::chain(&[&f.right, &ComplexMatrix::from_real_diag(&f.singular_values), &v_star])?;
    Ok((u, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{approx_eq, Tolerance};

    fn close(a: &ComplexMatrix, b: &ComplexMatrix) -> bool {
        a.distance(b).unwrap() < 1e-13
    }

    #[test]
    fn nilpotent_block() {
        let s = ComplexMatrix::from_real_rows(&[[0.0, 2.0], [0.0, 0.0]]);
        let (u, p) = polar_decompose(&s).unwrap();
        assert!(close(&u, &ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]])));
        assert!(close(&p, &ComplexMatrix::from_real_diag(&[0.0, 2.0])));
    }

    #[test]
    fn psd_and_unitary_inputs() {
        let h = ComplexMatrix::from_real_rows(&[[2.0, 1.0], [1.0, 2.0]]);
        let (u, p) = polar_decompose(&h).unwrap();
        assert!(close(&u, &ComplexMatrix::identity(2)));
        assert!(close(&p, &h));

        let rot = ComplexMatrix::from_real_rows(&[[0.6, -0.8], [0.8, 0.6]]);
        let (u, p) = polar_decompose(&rot).unwrap();
        assert!(close(&u, &rot));
        assert!(close(&p, &ComplexMatrix::identity(2)));

        let tol = Tolerance::default();
        let t3 = ComplexMatrix::from_real_rows(&[[1.0, -1.0, 0.0], [1.0, 0.0, 1.0], [2.0, -1.0, 1.0]]);
        let (u, p) = polar_decompose(&t3).unwrap();
        assert!(approx_eq(&(&u * &p), &t3, &tol).unwrap());
        assert!(approx_eq(&(&u.adjoint() * &u), &ComplexMatrix::identity(3), &tol).unwrap());
    }

    #[test]
    fn rejects_rectangular() {
        assert!(matches!(
            polar_decompose(&ComplexMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }
}
