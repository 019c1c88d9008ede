//! Dense complex matrix arithmetic and the QR / SVD factorizations every
//! other module builds on.

mod matrix;
mod qr;
mod svd;

pub use matrix::{approx_eq, c, eq_residual, ComplexMatrix, Tolerance, ONE, ZERO};
pub use qr::{qr, qr_phase_fixed, Qr};
pub use svd::{rank, svd, SvdResult, MAX_SWEEPS};

/// Conjugate transpose (free-function form).
pub fn adjoint(m: &ComplexMatrix) -> ComplexMatrix {
    m.adjoint()
}

/// Matrix product with shape checking (free-function form).
pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> crate::Result<ComplexMatrix> {
    a.matmul(b)
}
