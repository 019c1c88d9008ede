use serde::Serialize;

use super::polar::polar_decompose;
use super::verdict::{Fact, TheoremVerdict};
use crate::ep::{is_ep, is_normal, normality_residual};
use crate::error::{Error, Result};
use crate::linalg::{svd, ComplexMatrix, Tolerance};
use crate::pinv::pinv;
use crate::subspace::Subspace;

/// Extra hypothesis of the adjoint-commutation theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdjointVariant {
    /// `A T* T = S* S A`
    StarProduct,
    /// `A T† T* = S† S* A`
    MpStar,
}

fn require_same_square(op: &'static str, mats: &[&ComplexMatrix]) -> Result<usize> {
    let first = mats[0];
    if !first.is_square() {
        return Err(Error::NotSquare {
            op,
            rows: first.rows(),
            cols: first.cols(),
        });
    }
    for m in &mats[1..] {
        if m.shape() != first.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: first.shape(),
                right: m.shape(),
            });
        }
    }
    Ok(first.rows())
}

/// EP fact with residual `‖TT† − T†T‖_F`.
fn ep_fact(name: &str, t: &ComplexMatrix, tol: &Tolerance) -> Result<Fact> {
    let report = is_ep(t, tol)?;
    Ok(Fact::new(name, report.verdict, report.residuals[1]))
}

fn normal_fact(name: &str, n: &ComplexMatrix, tol: &Tolerance) -> Result<Fact> {
    Ok(Fact::new(name, is_normal(n, tol)?, normality_residual(n)?))
}

fn product(factors: &[&ComplexMatrix]) -> Result<ComplexMatrix> {
    ComplexMatrix::chain(factors)
}

/// If `N` is normal and `AN = NA`, then `AN* = N*A`.
pub fn check_fuglede_classic(a: &ComplexMatrix, n: &ComplexMatrix, tol: &Tolerance) -> Result<TheoremVerdict> {
    require_same_square("check_fuglede_classic", &[n, a])?;
    let ns = n.adjoint();
    Ok(TheoremVerdict::new(
        "fuglede-classic",
        vec![
            normal_fact("N normal", n, tol)?,
            Fact::equality("AN = NA", &(a * n), &(n * a), tol)?,
        ],
        vec![Fact::equality("AN* = N*A", &(a * &ns), &(&ns * a), tol)?],
    ))
}

/// If `T` is EP and `AT = TA`, then `AT† = T†A`.
pub fn check_fuglede_mp(a: &ComplexMatrix, t: &ComplexMatrix, tol: &Tolerance) -> Result<TheoremVerdict> {
    require_same_square("check_fuglede_mp", &[t, a])?;
    let g = pinv(t, tol)?;
    Ok(TheoremVerdict::new(
        "fuglede-mp",
        vec![
            ep_fact("T EP", t, tol)?,
            Fact::equality("AT = TA", &(a * t), &(t * a), tol)?,
        ],
        vec![Fact::equality("AT† = T†A", &(a * &g), &(&g * a), tol)?],
    ))
}

/// If `T` is EP, `AT = TA` and the variant condition holds, then `AT* = T*A`.
pub fn check_fuglede_adjoint(
    a: &ComplexMatrix,
    t: &ComplexMatrix,
    variant: AdjointVariant,
    tol: &Tolerance,
) -> Result<TheoremVerdict> {
    require_same_square("check_fuglede_adjoint", &[t, a])?;
    let ts = t.adjoint();
    let (id, extra) = match variant {
        AdjointVariant::StarProduct => (
            "fuglede-star-product",
            Fact::equality("AT*T = T*TA", &product(&[a, &ts, t])?, &product(&[&ts, t, a])?, tol)?,
        ),
        AdjointVariant::MpStar => {
            let g = pinv(t, tol)?;
            (
                "fuglede-mp-star",
                Fact::equality("AT†T* = T†T*A", &product(&[a, &g, &ts])?, &product(&[&g, &ts, a])?, tol)?,
            )
        }
    };
    Ok(TheoremVerdict::new(
        id,
        vec![
            ep_fact("T EP", t, tol)?,
            Fact::equality("AT = TA", &(a * t), &(t * a), tol)?,
            extra,
        ],
        vec![Fact::equality("AT* = T*A", &(a * &ts), &(&ts * a), tol)?],
    ))
}

/// If `N`, `M` are normal and `AN = MA`, then `AN* = M*A`.
pub fn check_putnam_classic(
    a: &ComplexMatrix,
    n: &ComplexMatrix,
    m: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<TheoremVerdict> {
    require_same_square("check_putnam_classic", &[n, m, a])?;
    let (ns, ms) = (n.adjoint(), m.adjoint());
    Ok(TheoremVerdict::new(
        "putnam-classic",
        vec![
            normal_fact("N normal", n, tol)?,
            normal_fact("M normal", m, tol)?,
            Fact::equality("AN = MA", &(a * n), &(m * a), tol)?,
        ],
        vec![Fact::equality("AN* = M*A", &(a * &ns), &(&ms * a), tol)?],
    ))
}

/// If `T`, `S` are EP and `AT = SA`, then `AT† = S†A`.
pub fn check_putnam_mp(
    a: &ComplexMatrix,
    t: &ComplexMatrix,
    s: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<TheoremVerdict> {
    require_same_square("check_putnam_mp", &[t, s, a])?;
    let (gt, gs) = (pinv(t, tol)?, pinv(s, tol)?);
    Ok(TheoremVerdict::new(
        "putnam-mp",
        vec![
            ep_fact("T EP", t, tol)?,
            ep_fact("S EP", s, tol)?,
            Fact::equality("AT = SA", &(a * t), &(s * a), tol)?,
        ],
        vec![Fact::equality("AT† = S†A", &(a * &gt), &(&gs * a), tol)?],
    ))
}

/// If `T`, `S` are EP, `AT = SA` and the variant condition holds, then
/// `AT* = S*A`.
pub fn check_putnam_adjoint(
    a: &ComplexMatrix,
    t: &ComplexMatrix,
    s: &ComplexMatrix,
    variant: AdjointVariant,
    tol: &Tolerance,
) -> Result<TheoremVerdict> {
    require_same_square("check_putnam_adjoint", &[t, s, a])?;
    let (ts, ss) = (t.adjoint(), s.adjoint());
    let (id, extra) = match variant {
        AdjointVariant::StarProduct => (
            "putnam-star-product",
            Fact::equality("AT*T = S*SA", &product(&[a, &ts, t])?, &product(&[&ss, s, a])?, tol)?,
        ),
        AdjointVariant::MpStar => {
            let (gt, gs) = (pinv(t, tol)?, pinv(s, tol)?);
            (
                "putnam-mp-star",
                Fact::equality(
                    "AT†T* = S†S*A",
                    &product(&[a, &gt, &ts])?,
                    &product(&[&gs, &ss, a])?,
                    tol,
                )?,
            )
        }
    };
    Ok(TheoremVerdict::new(
        id,
        vec![
            ep_fact("T EP", t, tol)?,
            ep_fact("S EP", s, tol)?,
            Fact::equality("AT = SA", &(a * t), &(s * a), tol)?,
            extra,
        ],
        vec![Fact::equality("AT* = S*A", &(a * &ts), &(&ss * a), tol)?],
    ))
}

/// If `T`, `S` are EP, `AT = SB` and `AT² = S²B`, then `AT† = S†B`.
pub fn check_squares(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    t: &ComplexMatrix,
    s: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<TheoremVerdict> {
    require_same_square("check_squares", &[t, s, a, b])?;
    let (gt, gs) = (pinv(t, tol)?, pinv(s, tol)?);
    Ok(TheoremVerdict::new(
        "squares",
        vec![
            ep_fact("T EP", t, tol)?,
            ep_fact("S EP", s, tol)?,
            Fact::equality("AT = SB", &(a * t), &(s * b), tol)?,
            Fact::equality("AT² = S²B", &product(&[a, t, t])?, &product(&[s, s, b])?, tol)?,
        ],
        vec![Fact::equality("AT† = S†B", &(a * &gt), &(&gs * b), tol)?],
    ))
}

/// If `T` (and `S`) are EP, `AT = SB` and `BT = SA`, then `AT† = S†B` and
/// `BT† = S†A`. Without `S` the statement is read with `S = T`.
pub fn check_two_sided(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    t: &ComplexMatrix,
    s: Option<&ComplexMatrix>,
    tol: &Tolerance,
) -> Result<TheoremVerdict> {
    let (s, sn) = match s {
        Some(s) => (s, "S"),
        None => (t, "T"),
    };
    require_same_square("check_two_sided", &[t, s, a, b])?;
    let gt = pinv(t, tol)?;
    let gs = if sn == "S" { pinv(s, tol)? } else { gt.clone() };

    let mut hypotheses = vec![ep_fact("T EP", t, tol)?];
    if sn == "S" {
        hypotheses.push(ep_fact("S EP", s, tol)?);
    }
    hypotheses.push(Fact::equality(format!("AT = {sn}B"), &(a * t), &(s * b), tol)?);
    hypotheses.push(Fact::equality(format!("BT = {sn}A"), &(b * t), &(s * a), tol)?);
    Ok(TheoremVerdict::new(
        "two-sided",
        hypotheses,
        vec![
            Fact::equality(format!("AT† = {sn}†B"), &(a * &gt), &(&gs * b), tol)?,
            Fact::equality(format!("BT† = {sn}†A"), &(b * &gt), &(&gs * a), tol)?,
        ],
    ))
}

/// Names of the product-EP facts, in report order.
pub mod product_facts {
    pub const S_EP: &str = "S EP";
    pub const T_EP: &str = "T EP";
    pub const ST_EP: &str = "ST EP";
    pub const TS_EP: &str = "TS EP";
    pub const RANGE: &str = "R(ST) = R(S) ∩ R(T)";
    pub const NULL: &str = "N(ST) = N(S) + N(T)";
    pub const REVERSE_ORDER: &str = "(ST)† = T†S†";
    pub const LEFT_COMMUTE: &str = "S†ST = TSS†";
    pub const RIGHT_COMMUTE: &str = "STT† = T†TS";
    pub const RANGE_NULL_CRITERION: &str = "S, T EP ⇒ (ST EP ⇔ range and null conditions)";
    pub const REVERSE_ORDER_CRITERION: &str = "(ST)† = T†S† ⇒ (ST, TS EP ⇔ commutation conditions)";
}

/// Product-EP criteria for a pair `S`, `T`.
///
/// Both criteria are biconditionals under their own gate, so they are reported
/// as conclusions with no shared hypotheses; the underlying facts are listed
/// as observations.
/// Tolerance for `ST` and `TS`. Each factor may carry noise up to its own
/// rank cutoff and the multiplication adds rounding of order
/// `n eps ‖S‖ ‖T‖`, so singular values of the product below
/// `3 f ‖S‖ ‖T‖` (with `f` the relative rank factor) count as zero even
/// when the product itself is that small.
fn product_tol(s: &ComplexMatrix, t: &ComplexMatrix, tol: &Tolerance) -> Result<Tolerance> {
    let n = s.rows();
    let scale = svd(s)?.sigma_max() * svd(t)?.sigma_max();
    Ok(tol.with_rank_floor(3.0 * tol.rank_factor(n, n) * scale))
}

pub fn check_product_ep(s: &ComplexMatrix, t: &ComplexMatrix, tol: &Tolerance) -> Result<TheoremVerdict> {
    use product_facts::*;
    require_same_square("check_product_ep", &[s, t])?;
    let st = s * t;
    let ts = t * s;
    let ptol = product_tol(s, t, tol)?;
    let (gs, gt, gst) = (pinv(s, tol)?, pinv(t, tol)?, pinv(&st, &ptol)?);

    let s_ep = ep_fact(S_EP, s, tol)?;
    let t_ep = ep_fact(T_EP, t, tol)?;
    let st_ep = ep_fact(ST_EP, &st, &ptol)?;
    let ts_ep = ep_fact(TS_EP, &ts, &ptol)?;

    let range_st = Subspace::from_columns(&st, &ptol)?;
    let range_cap = Subspace::from_columns(s, tol)?.intersect(&Subspace::from_columns(t, tol)?, tol)?;
    let r = range_st.distance(&range_cap)?;
    let range = Fact::new(RANGE, r <= tol.eq_tol, r);

    let null_st = Subspace::nullspace(&st, &ptol)?;
    let null_sum = Subspace::nullspace(s, tol)?.sum(&Subspace::nullspace(t, tol)?, tol)?;
    let r = null_st.distance(&null_sum)?;
    let null = Fact::new(NULL, r <= tol.eq_tol, r);

    let rol = Fact::equality(REVERSE_ORDER, &gst, &(&gt * &gs), tol)?;
    let left = Fact::equality(LEFT_COMMUTE, &product(&[&gs, s, t])?, &product(&[t, s, &gs])?, tol)?;
    let right = Fact::equality(RIGHT_COMMUTE, &product(&[s, t, &gt])?, &product(&[&gt, t, s])?, tol)?;

    let crit1 = !(s_ep.holds && t_ep.holds) || st_ep.holds == (range.holds && null.holds);
    let crit2 = !rol.holds || (st_ep.holds && ts_ep.holds) == (left.holds && right.holds);

    Ok(TheoremVerdict::with_observations(
        "product-ep",
        Vec::new(),
        vec![
            Fact::logical(RANGE_NULL_CRITERION, crit1),
            Fact::logical(REVERSE_ORDER_CRITERION, crit2),
        ],
        vec![s_ep, t_ep, st_ep, ts_ep, range, null, rol, left, right],
    ))
}

/// With `S = UP` the polar decomposition of `S`: if `(ST)† = T†S†`, `TU` is
/// EP and `PTU = TUP`, then `ST` and `TS` are EP.
pub fn check_polar_corollary(s: &ComplexMatrix, t: &ComplexMatrix, tol: &Tolerance) -> Result<TheoremVerdict> {
    require_same_square("check_polar_corollary", &[s, t])?;
    let (u, p) = polar_decompose(s)?;
    let st = s * t;
    let ts = t * s;
    let tu = t * &u;
    let ptol = product_tol(s, t, tol)?;
    let (gs, gt, gst) = (pinv(s, tol)?, pinv(t, tol)?, pinv(&st, &ptol)?);
    Ok(TheoremVerdict::new(
        "polar-corollary",
        vec![
            Fact::equality("(ST)† = T†S†", &gst, &(&gt * &gs), tol)?,
            ep_fact("TU EP", &tu, tol)?,
            Fact::equality("PTU = TUP", &(&p * &tu), &(&tu * &p), tol)?,
        ],
        vec![ep_fact("ST EP", &st, &ptol)?, ep_fact("TS EP", &ts, &ptol)?],
    ))
}
