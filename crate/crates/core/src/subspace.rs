//! Subspaces of `C^n` held as orthonormal bases, plus the "free / constrained
//! coordinates" presentation used by the EP constructor.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{svd, ComplexMatrix, Tolerance, ONE, ZERO};

/// Pivot magnitude below which a column of an orthonormal basis is treated as
/// dependent during row reduction.
const PIVOT_TOL: f64 = 1e-10;

/// A subspace of `C^n` with an orthonormal basis (`n x d`, `d` may be 0).
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    basis: ComplexMatrix,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Self {
            ambient_dim: n,
            basis: ComplexMatrix::zeros(n, 0),
        }
    }

    pub fn full(n: usize) -> Self {
        Self {
            ambient_dim: n,
            basis: ComplexMatrix::identity(n),
        }
    }

    /// Column space of `m`, with dimension equal to its numerical rank.
    pub fn from_columns(m: &ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        let f = svd(m)?;
        let r = f.rank(tol);
        Ok(Self {
            ambient_dim: m.rows(),
            basis: f.left.leading_columns(r),
        })
    }

    /// Kernel of `m` as a subspace of `C^{cols}`.
    pub fn nullspace(m: &ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        let f = svd(m)?;
        let r = f.rank(tol);
        Ok(Self {
            ambient_dim: m.cols(),
            basis: f.right.trailing_columns(r),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    /// Orthogonal projector `Q Q*`.
    pub fn projector(&self) -> ComplexMatrix {
        &self.basis * &self.basis.adjoint()
    }

    /// Frobenius distance between the two orthogonal projectors.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.check_ambient(other)?;
        self.projector().distance(&other.projector())
    }

    /// Basis-independent equality: projector distance `<= eq_tol`.
    pub fn approx_eq(&self, other: &Self, tol: &Tolerance) -> Result<bool> {
        Ok(self.distance(other)? <= tol.eq_tol)
    }

    pub fn complement(&self, tol: &Tolerance) -> Result<Self> {
        Self::nullspace(&self.basis.adjoint(), tol)
    }

    pub fn sum(&self, other: &Self, tol: &Tolerance) -> Result<Self> {
        self.check_ambient(other)?;
        Self::from_columns(&self.basis.hstack(&other.basis)?, tol)
    }

    /// `(S1^⊥ + S2^⊥)^⊥`.
    pub fn intersect(&self, other: &Self, tol: &Tolerance) -> Result<Self> {
        self.check_ambient(other)?;
        self.complement(tol)?.sum(&other.complement(tol)?, tol)?.complement(tol)
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// Constraint form with free coordinates picked by partial-pivoting row
    /// reduction of the basis rows, scanning coordinates left to right.
    pub fn to_constraint_form(&self, _tol: &Tolerance) -> Result<ConstraintSpec> {
        let candidates: Vec<usize> = (0..self.ambient_dim).collect();
        self.constraint_form_over(&candidates)
    }

    /// Constraint form with a caller-chosen set of free coordinates
    /// (0-based, strictly increasing).
    pub fn constraint_form_with_free(&self, free: &[usize], _tol: &Tolerance) -> Result<ConstraintSpec> {
        if free.len() != self.dim() {
            return Err(Error::InvalidConstraint(format!(
                "{} free indices given for a subspace of dimension {}",
                free.len(),
                self.dim()
            )));
        }
        if free.windows(2).any(|w| w[0] >= w[1]) || free.iter().any(|&f| f >= self.ambient_dim) {
            return Err(Error::InvalidConstraint(
                "free indices must be increasing and in range".into(),
            ));
        }
        self.constraint_form_over(free)
    }

    fn constraint_form_over(&self, candidates: &[usize]) -> Result<ConstraintSpec> {
        let d = self.dim();
        let n = self.ambient_dim;
        let mut rows = self.basis.transpose();
        let mut pivots: Vec<usize> = Vec::with_capacity(d);
        for &col in candidates {
            let next = pivots.len();
            if next == d {
                break;
            }
            let (best, mag) = (next..d)
                .map(|r| (r, rows[(r, col)].norm()))
                .fold((next, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if mag <= PIVOT_TOL {
                continue;
            }
            swap_rows(&mut rows, next, best);
            let p = rows[(next, col)];
            for j in 0..n {
                rows[(next, j)] /= p;
            }
            for r in 0..d {
                if r == next {
                    continue;
                }
                let f = rows[(r, col)];
                if f == ZERO {
                    continue;
                }
                for j in 0..n {
                    let v = rows[(next, j)];
                    rows[(r, j)] -= f * v;
                }
            }
            pivots.push(col);
        }
        if pivots.len() < d {
            return Err(Error::DegenerateBasis {
                wanted: d,
                found: pivots.len(),
            });
        }
        let constrained: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
        let coefficients = constrained
            .iter()
            .map(|&cidx| (0..d).map(|k| rows[(k, cidx)]).collect())
            .collect();
        ConstraintSpec::new(n, pivots, constrained, coefficients)
    }
}

fn swap_rows(m: &mut ComplexMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let t = m[(a, j)];
        m[(a, j)] = m[(b, j)];
        m[(b, j)] = t;
    }
}

/// `W = { x : x_c = Σ_k a^{(c)}_k x_{F(k)} for every constrained c }`.
///
/// Indices are 0-based here; the JSON spec format is 1-based.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSpec {
    ambient_dim: usize,
    free_indices: Vec<usize>,
    constrained_indices: Vec<usize>,
    coefficients: Vec<Vec<Complex64>>,
}

impl ConstraintSpec {
    pub fn new(
        ambient_dim: usize,
        free_indices: Vec<usize>,
        constrained_indices: Vec<usize>,
        coefficients: Vec<Vec<Complex64>>,
    ) -> Result<Self> {
        let increasing = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
        if !increasing(&free_indices) || !increasing(&constrained_indices) {
            return Err(Error::InvalidConstraint(
                "index lists must be strictly increasing".into(),
            ));
        }
        let mut seen = vec![false; ambient_dim];
        for &i in free_indices.iter().chain(&constrained_indices) {
            if i >= ambient_dim || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidConstraint(format!(
                    "index {} is out of range or repeated",
                    i + 1
                )));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidConstraint(
                "free and constrained indices must cover every coordinate".into(),
            ));
        }
        if coefficients.len() != constrained_indices.len() {
            return Err(Error::InvalidConstraint(format!(
                "{} coefficient vectors for {} constrained indices",
                coefficients.len(),
                constrained_indices.len()
            )));
        }
        let d = free_indices.len();
        if let Some(bad) = coefficients.iter().position(|a| a.len() != d) {
            return Err(Error::InvalidConstraint(format!(
                "coefficient vector for index {} has length {}, expected {d}",
                constrained_indices[bad] + 1,
                coefficients[bad].len()
            )));
        }
        if coefficients
            .iter()
            .flatten()
            .any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::InvalidConstraint("non-finite coefficient".into()));
        }
        Ok(Self {
            ambient_dim,
            free_indices,
            constrained_indices,
            coefficients,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.free_indices.len()
    }

    pub fn free_indices(&self) -> &[usize] {
        &self.free_indices
    }

    pub fn constrained_indices(&self) -> &[usize] {
        &self.constrained_indices
    }

    /// Coefficient vectors, aligned with [`Self::constrained_indices`].
    pub fn coefficients(&self) -> &[Vec<Complex64>] {
        &self.coefficients
    }

    /// Full vector of `C^n` from its free coordinates.
    pub fn embed(&self, free_coords: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(free_coords.len(), self.dim());
        let mut x = vec![ZERO; self.ambient_dim];
        for (k, &f) in self.free_indices.iter().enumerate() {
            x[f] = free_coords[k];
        }
        for (cidx, a) in self.constrained_indices.iter().zip(&self.coefficients) {
            x[*cidx] = a.iter().zip(free_coords).map(|(ak, xk)| ak * xk).sum();
        }
        x
    }

    /// `n x d` matrix whose columns embed the free-coordinate unit vectors.
    pub fn embedding_matrix(&self) -> ComplexMatrix {
        let d = self.dim();
        let cols: Vec<Vec<Complex64>> = (0..d)
            .map(|k| {
                let mut e = vec![ZERO; d];
                e[k] = ONE;
                self.embed(&e)
            })
            .collect();
        ComplexMatrix::from_columns(self.ambient_dim, &cols)
    }

    pub fn to_subspace(&self, tol: &Tolerance) -> Result<Subspace> {
        Subspace::from_columns(&self.embedding_matrix(), tol)
    }
}

/// Subspace described by a constraint form.
pub fn from_constraint_form(spec: &ConstraintSpec, tol: &Tolerance) -> Result<Subspace> {
    spec.to_subspace(tol)
}
