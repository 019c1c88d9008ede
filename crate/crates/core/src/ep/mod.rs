//! EP matrices: `R(T) = R(T*)`.
//!
//! [`is_ep`] evaluates five equivalent characterizations independently and
//! refuses to answer if they disagree. [`ep_construct`] builds an EP matrix
//! with a prescribed range from a constraint-form description of the range.

pub mod random;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{approx_eq, eq_residual, svd, ComplexMatrix, Tolerance, ZERO};
use crate::pinv::pinv;
use crate::subspace::{ConstraintSpec, Subspace};

/// The five characterizations of EP-ness, evaluated separately.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EpReport {
    /// `R(T) = R(T*)`
    pub char_ranges_equal: bool,
    /// `T T† = T† T`
    pub char_mp_commute: bool,
    /// `N(T)^⊥ = R(T)`
    pub char_nullperp_is_range: bool,
    /// `N(T) = N(T*)`
    pub char_null_equal: bool,
    /// `T* = P T` for a bijective `P`
    pub char_witness_bijective: bool,
    /// Projector distances for the subspace tests, `‖TT† − T†T‖_F` for the
    /// commutation test and `σ_min(P)/σ_max(P)` for the witness.
    pub residuals: [f64; 5],
    pub verdict: bool,
}

impl EpReport {
    pub fn flags(&self) -> [bool; 5] {
        [
            self.char_ranges_equal,
            self.char_mp_commute,
            self.char_nullperp_is_range,
            self.char_null_equal,
            self.char_witness_bijective,
        ]
    }

    pub fn unanimous(&self) -> bool {
        let f = self.flags();
        f.iter().all(|&b| b == f[0])
    }

    pub const NAMES: [&'static str; 5] = [
        "R(T) = R(T*)",
        "T T† = T† T",
        "N(T)^⊥ = R(T)",
        "N(T) = N(T*)",
        "T* = P T, P bijective",
    ];
}

fn require_square(t: &ComplexMatrix, op: &'static str) -> Result<()> {
    if !t.is_square() {
        return Err(Error::NotSquare {
            op,
            rows: t.rows(),
            cols: t.cols(),
        });
    }
    Ok(())
}

/// Evaluates all five characterizations without enforcing agreement.
/// `verdict` is true only when all five hold.
pub fn ep_characterizations(t: &ComplexMatrix, tol: &Tolerance) -> Result<EpReport> {
    require_square(t, "is_ep")?;
    let ts = t.adjoint();

    let range_t = Subspace::from_columns(t, tol)?;
    let range_ts = Subspace::from_columns(&ts, tol)?;
    let null_t = Subspace::nullspace(t, tol)?;
    let null_ts = Subspace::nullspace(&ts, tol)?;

    let r1 = range_t.distance(&range_ts)?;

    let g = pinv(t, tol)?;
    let (r2, c2) = eq_residual(&t.matmul(&g)?, &g.matmul(t)?, tol)?;

    let r3 = null_t.complement(tol)?.distance(&range_t)?;
    let r4 = null_t.distance(&null_ts)?;

    let w = ep_witness(t, tol)?;

    let report = EpReport {
        char_ranges_equal: r1 <= tol.eq_tol,
        char_mp_commute: c2,
        char_nullperp_is_range: r3 <= tol.eq_tol,
        char_null_equal: r4 <= tol.eq_tol,
        char_witness_bijective: w.is_valid(),
        residuals: [r1, r2, r3, r4, w.min_sigma_ratio],
        verdict: false,
    };
    Ok(EpReport {
        verdict: report.flags().iter().all(|&b| b),
        ..report
    })
}

/// EP test over all five characterizations. Disagreement between them is an
/// internal error.
pub fn is_ep(t: &ComplexMatrix, tol: &Tolerance) -> Result<EpReport> {
    let report = ep_characterizations(t, tol)?;
    if !report.unanimous() {
        let detail = EpReport::NAMES
            .iter()
            .zip(report.flags())
            .zip(report.residuals)
            .map(|((n, f), r)| format!("{n}: {f} ({r:.3e})"))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(Error::CharacterizationDisagreement(detail));
    }
    Ok(report)
}

/// Convenience wrapper returning only the verdict.
pub fn ep_verdict(t: &ComplexMatrix, tol: &Tolerance) -> Result<bool> {
    Ok(is_ep(t, tol)?.verdict)
}

/// Candidate bijection `P` with `T* = P T`, plus its postcondition checks.
#[derive(Debug, Clone)]
pub struct EpWitness {
    pub p: ComplexMatrix,
    /// `P T = T*` within tolerance.
    pub intertwines: bool,
    pub intertwine_residual: f64,
    /// `P` has full numerical rank.
    pub bijective: bool,
    pub min_sigma_ratio: f64,
}

impl EpWitness {
    pub fn is_valid(&self) -> bool {
        self.intertwines && self.bijective
    }

    /// Which postcondition failed, if any.
    pub fn failure(&self) -> Option<&'static str> {
        match (self.intertwines, self.bijective) {
            (true, true) => None,
            (false, true) => Some("P T != T*"),
            (true, false) => Some("P is not bijective"),
            (false, false) => Some("P T != T* and P is not bijective"),
        }
    }
}

/// `P = T* T† + (I − T T†)`.
///
/// For EP `T` (where `T†T = TT†`) this gives `P T = T* T† T = T*`, and `P` is
/// invertible. For non-EP `T` at least one of the two checks fails.
pub fn ep_witness(t: &ComplexMatrix, tol: &Tolerance) -> Result<EpWitness> {
    require_square(t, "ep_witness")?;
    let n = t.rows();
    let ts = t.adjoint();
    let g = pinv(t, tol)?;
    let tg = t.matmul(&g)?;
    let p = &ts.matmul(&g)? + &(&ComplexMatrix::identity(n) - &tg);
    let (intertwine_residual, intertwines) = eq_residual(&p.matmul(t)?, &ts, tol)?;
    let f = svd(&p)?;
    let smax = f.sigma_max();
    let smin = f.singular_values.last().copied().unwrap_or(0.0);
    let min_sigma_ratio = if smax > 0.0 { smin / smax } else { 0.0 };
    let bijective = n == 0 || f.rank(tol) == n;
    Ok(EpWitness {
        p,
        intertwines,
        intertwine_residual,
        bijective,
        min_sigma_ratio,
    })
}

pub fn normality_residual(t: &ComplexMatrix) -> Result<f64> {
    require_square(t, "is_normal")?;
    let ts = t.adjoint();
    t.matmul(&ts)?.distance(&ts.matmul(t)?)
}

/// `‖TT* − T*T‖_F ≤ eq_tol · max(1, ‖T‖_F²)`.
pub fn is_normal(t: &ComplexMatrix, tol: &Tolerance) -> Result<bool> {
    let r = normality_residual(t)?;
    let nf = t.frobenius_norm();
    Ok(tol.within(r, &[nf * nf]))
}

/// EP matrix `T` of order `n` with `R(T) = R(T*) = W`, where `W` is given by
/// its constraint form and a basis of `W` by the free coordinates of its
/// vectors (row `j` of `free_coords` holds the free coordinates of `v_j`).
///
/// The column at the `m`-th free index is `v_m`. The column at a constrained
/// index `c` has free-slot entries `Σ_k conj(a^{(c)}_k) x_{km}` and, at every
/// constrained slot `c'`, `Σ_j Σ_k a^{(c')}_j conj(a^{(c)}_k) x_{kj}`, so every
/// column and every row of `T` lies in `W`.
pub fn ep_construct(spec: &ConstraintSpec, free_coords: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    let n = spec.ambient_dim();
    let d = spec.dim();
    if free_coords.shape() != (d, d) {
        return Err(Error::DimensionMismatch {
            op: "ep_construct",
            left: (d, d),
            right: free_coords.shape(),
        });
    }
    let rank = svd(free_coords)?.rank(tol);
    if rank < d {
        return Err(Error::SingularBasis { rank, dim: d });
    }

    let x = free_coords;
    let mut t = ComplexMatrix::zeros(n, n);
    for (m, &fm) in spec.free_indices().iter().enumerate() {
        let row: Vec<Complex64> = (0..d).map(|k| x[(m, k)]).collect();
        t.set_column(fm, &spec.embed(&row));
    }
    for (ci, &cidx) in spec.constrained_indices().iter().enumerate() {
        let a = &spec.coefficients()[ci];
        let mut col = vec![ZERO; n];
        // free part: y_m = Σ_k conj(a_k) x_{km}
        let free_part: Vec<Complex64> = (0..d).map(|m| (0..d).map(|k| a[k].conj() * x[(k, m)]).sum()).collect();
        for (m, &fm) in spec.free_indices().iter().enumerate() {
            col[fm] = free_part[m];
        }
        for (cj, &cidx2) in spec.constrained_indices().iter().enumerate() {
            let a2 = &spec.coefficients()[cj];
            col[cidx2] = (0..d)
                .map(|j| (0..d).map(|k| a2[j] * a[k].conj() * x[(k, j)]).sum::<Complex64>())
                .sum();
        }
        t.set_column(cidx, &col);
    }

    let report = is_ep(&t, tol)?;
    if !report.verdict {
        return Err(Error::Postcondition("constructed matrix is not EP".into()));
    }
    let w = spec.to_subspace(tol)?;
    let range = Subspace::from_columns(&t, tol)?;
    if !range.approx_eq(&w, tol)? {
        return Err(Error::Postcondition(format!(
            "range of constructed matrix differs from W (projector distance {:.3e})",
            range.distance(&w)?
        )));
    }
    Ok(t)
}

/// Facts relevant to the rank-one remarks: a rank-one EP matrix is normal,
/// and a real rank-one EP matrix is symmetric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rank1Remarks {
    pub is_rank1: bool,
    pub is_ep: bool,
    pub is_normal: bool,
    pub is_real: bool,
    pub is_symmetric: bool,
    pub normality_residual: f64,
    pub symmetry_residual: f64,
}

impl Rank1Remarks {
    /// Both implications hold (vacuously when the premises fail).
    pub fn implications_hold(&self) -> bool {
        let premise = self.is_rank1 && self.is_ep;
        (!premise || self.is_normal) && (!(premise && self.is_real) || self.is_symmetric)
    }
}

pub fn check_rank1_remarks(t: &ComplexMatrix, tol: &Tolerance) -> Result<Rank1Remarks> {
    require_square(t, "check_rank1_remarks")?;
    let tt = t.transpose();
    Ok(Rank1Remarks {
        is_rank1: svd(t)?.rank(tol) == 1,
        is_ep: is_ep(t, tol)?.verdict,
        is_normal: is_normal(t, tol)?,
        is_real: approx_eq(t, &t.conj(), tol)?,
        is_symmetric: approx_eq(t, &tt, tol)?,
        normality_residual: normality_residual(t)?,
        symmetry_residual: t.distance(&tt)?,
    })
}
