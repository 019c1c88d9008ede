//! Random instances that satisfy the hypotheses of each checked statement by
//! construction.

use num_complex::Complex64;
use rand::Rng;

use crate::ep::random::{
    gaussian, gaussian_matrix, haar_unitary, invertible_block, random_low_rank, random_polynomial_in,
    unit_scale_scalar, well_conditioned, TestRng,
};
use crate::fuglede::Operands;
use crate::linalg::ComplexMatrix;

fn conj(q: &ComplexMatrix, m: &ComplexMatrix) -> ComplexMatrix {
    &(q * m) * &q.adjoint()
}

/// `Q2 · m · Q1*`.
fn between(q2: &ComplexMatrix, m: &ComplexMatrix, q1: &ComplexMatrix) -> ComplexMatrix {
    &(q2 * m) * &q1.adjoint()
}

fn zeros(n: usize) -> ComplexMatrix {
    ComplexMatrix::zeros(n, n)
}

/// Random composition of `total` into `parts` non-negative summands.
fn split(total: usize, parts: usize, rng: &mut TestRng) -> Vec<usize> {
    let mut out = vec![0; parts];
    for _ in 0..total {
        out[rng.random_range(0..parts)] += 1;
    }
    out
}

/// `G · diag(blocks) · G⁻¹` with a well-conditioned `G`.
fn similar(blocks: &[&ComplexMatrix], rng: &mut TestRng) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let d = ComplexMatrix::direct_sum(blocks);
    let (g, gi) = well_conditioned(d.rows(), rng);
    (ComplexMatrix::chain(&[&g, &d, &gi]).expect("square factors"), g, gi)
}

fn ops(a: Option<ComplexMatrix>, b: Option<ComplexMatrix>, t: ComplexMatrix, s: Option<ComplexMatrix>) -> Operands {
    Operands { a, b, t: Some(t), s }
}

/// Normal `N = Q1 Λ Q1*`, `M = Q2 Μ Q2*` and `A = Q2 X Q1*` where `X` only
/// couples equal eigenvalues, so `AN = MA`. With `same` the pair is `M = N`
/// and no `S` is returned.
pub fn putnam_classic(n: usize, same: bool, rng: &mut TestRng) -> Operands {
    let k = rng.random_range(1..=n);
    let mut a = split(n - k, k, rng);
    for x in &mut a {
        *x += 1;
    }
    // M's share of each group; the last slot holds eigenvalues absent from N
    let b = if same {
        [a.clone(), vec![0]].concat()
    } else {
        split(n, k + 1, rng)
    };

    let mut lam = Vec::new();
    let mut mu = Vec::new();
    let mut x = ComplexMatrix::zeros(n, n);
    let (mut row, mut col) = (0, 0);
    for g in 0..k {
        let v = if rng.random_bool(0.15) {
            Complex64::new(0.0, 0.0)
        } else {
            gaussian(rng) * 2.0
        };
        lam.extend(std::iter::repeat_n(v, a[g]));
        mu.extend(std::iter::repeat_n(v, b[g]));
        x.set_block(row, col, &gaussian_matrix(b[g], a[g], rng));
        row += b[g];
        col += a[g];
    }
    for _ in 0..b[k] {
        mu.push(gaussian(rng) * 2.0);
    }
    let q1 = haar_unitary(n, rng);
    let q2 = if same { q1.clone() } else { haar_unitary(n, rng) };
    let nn = conj(&q1, &ComplexMatrix::from_diag(&lam));
    let mm = conj(&q2, &ComplexMatrix::from_diag(&mu));
    let a = between(&q2, &x, &q1);
    ops(Some(a), None, nn, if same { None } else { Some(mm) })
}

/// EP `T = Q1 diag(B1, 0) Q1*`, `S = Q2 diag(B2, 0) Q2*` with
/// `B1 = G1 diag(K, E1) G1⁻¹`, `B2 = G2 diag(K, E2) G2⁻¹`, and
/// `A = Q2 diag(a11, a22) Q1*` where `a11 B1 = B2 a11`, so `AT = SA`.
/// With `same` the result has `S = T`.
pub fn ep_intertwined(n: usize, same: bool, rng: &mut TestRng) -> Operands {
    let r1 = rng.random_range(0..=n);
    let kk = rng.random_range(0..=r1);
    let e1 = r1 - kk;
    let e2 = if same { e1 } else { rng.random_range(0..=n - kk) };
    let r2 = kk + e2;

    let k = invertible_block(kk, rng.random_bool(0.3), rng);
    let eb1 = invertible_block(e1, false, rng);
    let eb2 = if same {
        eb1.clone()
    } else {
        invertible_block(e2, false, rng)
    };
    let (b1, g1, g1i) = similar(&[&k, &eb1], rng);
    let (b2, g2) = if same {
        (b1.clone(), g1.clone())
    } else {
        let (b2, g2, _) = similar(&[&k, &eb2], rng);
        (b2, g2)
    };

    let pk = random_polynomial_in(&k, rng);
    let mut core = ComplexMatrix::zeros(r2, r1);
    core.set_block(0, 0, &pk);
    if same {
        core.set_block(kk, kk, &random_polynomial_in(&eb1, rng));
    }
    let a11 = ComplexMatrix::chain(&[&g2, &core, &g1i]).expect("conformable");
    let a22 = gaussian_matrix(n - r2, n - r1, rng);

    let q1 = haar_unitary(n, rng);
    let q2 = if same { q1.clone() } else { haar_unitary(n, rng) };
    let t = conj(&q1, &ComplexMatrix::direct_sum(&[&b1, &zeros(n - r1)]));
    let s = conj(&q2, &ComplexMatrix::direct_sum(&[&b2, &zeros(n - r2)]));
    let mut amid = ComplexMatrix::zeros(n, n);
    amid.set_block(0, 0, &a11);
    amid.set_block(r2, r1, &a22);
    let a = between(&q2, &amid, &q1);
    ops(Some(a), None, t, if same { None } else { Some(s) })
}

/// EP `T = Q1 diag(K1, …, Kk, E1, 0) Q1*`, `S = Q2 diag(K1, …, Kk, E2, 0) Q2*`
/// and `A = Q2 diag(α1 I, …, αk I, 0, D) Q1*`. Then `AT = SA`, `AT*T = S*SA`
/// and `AT†T* = S†S*A`. With `same`, `S = T` and the `E` block of `A` is a
/// multiple of the identity.
pub fn adjoint_commuting(n: usize, same: bool, rng: &mut TestRng) -> Operands {
    let shared = rng.random_range(0..=n);
    let nblocks = rng.random_range(1..=3usize);
    let sizes = split(shared, nblocks, rng);
    let e1 = rng.random_range(0..=n - shared);
    let e2 = if same { e1 } else { rng.random_range(0..=n - shared) };

    let ks: Vec<ComplexMatrix> = sizes.iter().map(|&k| invertible_block(k, false, rng)).collect();
    let alphas: Vec<Complex64> = sizes.iter().map(|_| gaussian(rng)).collect();
    let eb1 = invertible_block(e1, false, rng);
    let eb2 = if same {
        eb1.clone()
    } else {
        invertible_block(e2, false, rng)
    };

    let kref: Vec<&ComplexMatrix> = ks.iter().collect();
    let kblock = ComplexMatrix::direct_sum(&kref);
    let t_core = ComplexMatrix::direct_sum(&[&kblock, &eb1, &zeros(n - shared - e1)]);
    let s_core = ComplexMatrix::direct_sum(&[&kblock, &eb2, &zeros(n - shared - e2)]);

    let mut a_core = ComplexMatrix::zeros(n, n);
    let mut off = 0;
    for (&k, &alpha) in sizes.iter().zip(&alphas) {
        a_core.set_block(off, off, &ComplexMatrix::identity(k).scale(alpha));
        off += k;
    }
    if same {
        a_core.set_block(shared, shared, &ComplexMatrix::identity(e1).scale(gaussian(rng)));
    }
    let z1 = n - shared - e1;
    let z2 = n - shared - e2;
    a_core.set_block(shared + e2, shared + e1, &gaussian_matrix(z2, z1, rng));

    let q1 = haar_unitary(n, rng);
    let q2 = if same { q1.clone() } else { haar_unitary(n, rng) };
    let t = conj(&q1, &t_core);
    let s = conj(&q2, &s_core);
    let a = between(&q2, &a_core, &q1);
    ops(Some(a), None, t, if same { None } else { Some(s) })
}

/// Core pair `D1 = diag(K, L, −L, E1)`, `D2 = diag(K, L, −L, E2)` with maps
/// `U`, `V` satisfying `U D1 = D2 U` and `V D1 = −D2 V`.
struct TwoSidedCore {
    d1: ComplexMatrix,
    d2: ComplexMatrix,
    u: ComplexMatrix,
    v: ComplexMatrix,
}

/// Returns the core and the order of `D2`, at most `n`.
fn two_sided_core(n: usize, r1: usize, same: bool, rng: &mut TestRng) -> (TwoSidedCore, usize) {
    let kk = rng.random_range(0..=r1);
    let kl = rng.random_range(0..=(r1 - kk) / 2);
    let e1 = r1 - kk - 2 * kl;
    let e2 = if same {
        e1
    } else {
        rng.random_range(0..=n - kk - 2 * kl)
    };
    let r2 = kk + 2 * kl + e2;

    let k = invertible_block(kk, false, rng);
    let l = invertible_block(kl, false, rng);
    let ml = l.scale(Complex64::new(-1.0, 0.0));
    let eb1 = invertible_block(e1, false, rng);
    let eb2 = if same {
        eb1.clone()
    } else {
        invertible_block(e2, false, rng)
    };
    let d1 = ComplexMatrix::direct_sum(&[&k, &l, &ml, &eb1]);
    let d2 = ComplexMatrix::direct_sum(&[&k, &l, &ml, &eb2]);

    let mut u = ComplexMatrix::zeros(r2, r1);
    u.set_block(0, 0, &random_polynomial_in(&k, rng));
    u.set_block(kk, kk, &random_polynomial_in(&l, rng));
    u.set_block(kk + kl, kk + kl, &random_polynomial_in(&l, rng));
    let mut v = ComplexMatrix::zeros(r2, r1);
    v.set_block(kk + kl, kk, &random_polynomial_in(&l, rng));
    v.set_block(kk, kk + kl, &random_polynomial_in(&l, rng));
    if same {
        u.set_block(kk + 2 * kl, kk + 2 * kl, &random_polynomial_in(&eb1, rng));
    }
    (TwoSidedCore { d1, d2, u, v }, r2)
}

/// `A`, `B` with `AT = SB` and `BT = SA`: `A + B` intertwines `T` with `S`
/// and `A − B` intertwines `T` with `−S`. With `same`, `S = T` and no `S` is
/// returned.
pub fn two_sided(n: usize, same: bool, rng: &mut TestRng) -> Operands {
    let r1 = rng.random_range(0..=n);
    let (core, r2) = two_sided_core(n, r1, same, rng);
    let (g1, g1i) = well_conditioned(r1, rng);
    let (g2, g2i) = if same {
        (g1.clone(), g1i.clone())
    } else {
        well_conditioned(r2, rng)
    };
    let b1 = ComplexMatrix::chain(&[&g1, &core.d1, &g1i]).expect("square");
    let b2 = ComplexMatrix::chain(&[&g2, &core.d2, &g2i]).expect("square");
    let u11 = ComplexMatrix::chain(&[&g2, &core.u, &g1i]).expect("conformable");
    let v11 = ComplexMatrix::chain(&[&g2, &core.v, &g1i]).expect("conformable");

    let mut u = ComplexMatrix::zeros(n, n);
    u.set_block(0, 0, &u11);
    u.set_block(r2, r1, &gaussian_matrix(n - r2, n - r1, rng));
    let mut v = ComplexMatrix::zeros(n, n);
    v.set_block(0, 0, &v11);
    v.set_block(r2, r1, &gaussian_matrix(n - r2, n - r1, rng));

    let q1 = haar_unitary(n, rng);
    let q2 = if same { q1.clone() } else { haar_unitary(n, rng) };
    let t = conj(&q1, &ComplexMatrix::direct_sum(&[&b1, &zeros(n - r1)]));
    let s = conj(&q2, &ComplexMatrix::direct_sum(&[&b2, &zeros(n - r2)]));
    let half = Complex64::new(0.5, 0.0);
    let a = between(&q2, &(&u + &v).scale(half), &q1);
    let b = between(&q2, &(&u - &v).scale(half), &q1);
    ops(Some(a), Some(b), t, if same { None } else { Some(s) })
}

/// `A`, `B`, `T`, `S` with `AT = SB` and `AT² = S²B`: in the block
/// coordinates of `T` and `S`, `a11 = b11` intertwines the invertible parts,
/// `a21 = b12 = 0`, and the remaining blocks are free.
pub fn squares(n: usize, rng: &mut TestRng) -> Operands {
    let base = ep_intertwined(n, rng.random_bool(0.2), rng);
    let t = base.t.expect("T present");
    let s = base.s.unwrap_or_else(|| t.clone());
    let tol = crate::linalg::Tolerance::default();
    let pt = crate::pinv::range_projector(&t, &tol).expect("square");
    let ps = crate::pinv::range_projector(&s, &tol).expect("square");
    let id = ComplexMatrix::identity(n);
    let qt = &id - &pt;
    let qs = &id - &ps;
    // intertwiner restricted to R(T); it maps into R(S)
    let z = &base.a.expect("A present") * &pt;
    let mut free = |left: &ComplexMatrix, right: &ComplexMatrix| {
        ComplexMatrix::chain(&[left, &gaussian_matrix(n, n, rng), right]).expect("square")
    };
    let a12 = free(&ps, &qt);
    let a22 = free(&qs, &qt);
    let b21 = free(&qs, &pt);
    let b22 = free(&qs, &qt);
    let a = &(&z + &a12) + &a22;
    let b = &(&z + &b21) + &b22;
    ops(Some(a), Some(b), t, Some(s))
}

/// Simultaneously block-diagonal `S`, `T` (one unitary `Q`) whose blocks are
/// chosen so that `(ST)† = T†S†` holds blockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockPairKind {
    BothInvertible,
    OneZero,
    Scalars,
    /// `S` block unitary, `T = S* E` with `E` EP.
    UnitaryAligned,
    /// `T` block unitary, `S = E T*` with `E` EP.
    UnitaryAlignedRight,
    /// `S` block unitary, `T` arbitrary singular.
    UnitaryArbitrary,
    /// `T` block unitary, `S` arbitrary singular.
    UnitaryArbitraryRight,
}

fn random_ep_block(k: usize, rng: &mut TestRng) -> ComplexMatrix {
    let r = rng.random_range(0..=k);
    let q = haar_unitary(k, rng);
    let b = invertible_block(r, false, rng);
    conj(&q, &ComplexMatrix::direct_sum(&[&b, &zeros(k - r)]))
}

fn block_pair(kind: BlockPairKind, k: usize, rng: &mut TestRng) -> (ComplexMatrix, ComplexMatrix) {
    use BlockPairKind::*;
    match kind {
        BothInvertible => (invertible_block(k, false, rng), invertible_block(k, false, rng)),
        OneZero => {
            let x = gaussian_matrix(k, k, rng);
            if rng.random_bool(0.5) {
                (zeros(k), x)
            } else {
                (x, zeros(k))
            }
        }
        Scalars => {
            let s = if rng.random_bool(0.2) {
                Complex64::new(0.0, 0.0)
            } else {
                unit_scale_scalar(rng)
            };
            let t = if rng.random_bool(0.2) {
                Complex64::new(0.0, 0.0)
            } else {
                unit_scale_scalar(rng)
            };
            (ComplexMatrix::from_diag(&[s]), ComplexMatrix::from_diag(&[t]))
        }
        UnitaryAligned => {
            let u = haar_unitary(k, rng);
            let e = random_ep_block(k, rng);
            let t = &u.adjoint() * &e;
            (u, t)
        }
        UnitaryAlignedRight => {
            let u = haar_unitary(k, rng);
            let e = random_ep_block(k, rng);
            let s = &e * &u.adjoint();
            (s, u)
        }
        UnitaryArbitrary => {
            let u = haar_unitary(k, rng);
            let r = rng.random_range(0..k.max(1));
            (u, random_low_rank(k, r.min(k), rng))
        }
        UnitaryArbitraryRight => {
            let u = haar_unitary(k, rng);
            let r = rng.random_range(0..k.max(1));
            (random_low_rank(k, r.min(k), rng), u)
        }
    }
}

/// `S = Q diag(S_i) Q*`, `T = Q diag(T_i) Q*` with every block pair drawn from
/// `kinds`, so the reverse-order law `(ST)† = T†S†` holds.
pub fn reverse_order_pair(n: usize, kinds: &[BlockPairKind], rng: &mut TestRng) -> Operands {
    let nblocks = rng.random_range(1..=n.min(4));
    let mut sizes = split(n - nblocks, nblocks, rng);
    for s in &mut sizes {
        *s += 1;
    }
    let mut sb = Vec::new();
    let mut tb = Vec::new();
    for &k in &sizes {
        let mut kind = kinds[rng.random_range(0..kinds.len())];
        if kind == BlockPairKind::Scalars && k != 1 {
            kind = BlockPairKind::BothInvertible;
        }
        let (s, t) = block_pair(kind, k, rng);
        sb.push(s);
        tb.push(t);
    }
    let q = haar_unitary(n, rng);
    let s = conj(&q, &ComplexMatrix::direct_sum(&sb.iter().collect::<Vec<_>>()));
    let t = conj(&q, &ComplexMatrix::direct_sum(&tb.iter().collect::<Vec<_>>()));
    Operands {
        a: None,
        b: None,
        t: Some(t),
        s: Some(s),
    }
}

/// Block kinds for which `ST` and `TS` are EP.
pub const EP_PRODUCT_KINDS: [BlockPairKind; 5] = [
    BlockPairKind::BothInvertible,
    BlockPairKind::OneZero,
    BlockPairKind::Scalars,
    BlockPairKind::UnitaryAligned,
    BlockPairKind::UnitaryAlignedRight,
];

pub const ALL_BLOCK_KINDS: [BlockPairKind; 7] = [
    BlockPairKind::BothInvertible,
    BlockPairKind::OneZero,
    BlockPairKind::Scalars,
    BlockPairKind::UnitaryAligned,
    BlockPairKind::UnitaryAlignedRight,
    BlockPairKind::UnitaryArbitrary,
    BlockPairKind::UnitaryArbitraryRight,
];

/// Pair of EP matrices: independent (products generically not EP) or
/// simultaneously block-diagonal with EP blocks (products EP).
pub fn ep_pair(n: usize, rng: &mut TestRng) -> Operands {
    if rng.random_bool(0.5) {
        let rs = rng.random_range(0..=n);
        let rt = rng.random_range(0..=n);
        let s = crate::ep::random::random_ep_with(n, rs, false, rng).expect("rank in range");
        let t = crate::ep::random::random_ep_with(n, rt, false, rng).expect("rank in range");
        Operands {
            a: None,
            b: None,
            t: Some(t),
            s: Some(s),
        }
    } else {
        reverse_order_pair(
            n,
            &[
                BlockPairKind::BothInvertible,
                BlockPairKind::OneZero,
                BlockPairKind::Scalars,
            ],
            rng,
        )
    }
}

/// `S = UP`, `T` with `P = Q diag(c_i I) Q*`, `U = Q diag(U_i) Q*` and
/// `T = Q diag(T_i) Q*`, each `T_i` invertible or zero (zero wherever
/// `c_i = 0`).
pub fn polar_pair(n: usize, rng: &mut TestRng) -> Operands {
    let nblocks = rng.random_range(1..=n.min(4));
    let mut sizes = split(n - nblocks, nblocks, rng);
    for s in &mut sizes {
        *s += 1;
    }
    let mut sb = Vec::new();
    let mut tb = Vec::new();
    for &k in &sizes {
        let ci = if rng.random_bool(0.2) {
            0.0
        } else {
            rng.random_range(0.5..2.0)
        };
        let ui = haar_unitary(k, rng);
        sb.push(ui.scale(Complex64::new(ci, 0.0)));
        tb.push(if ci == 0.0 || rng.random_bool(0.25) {
            zeros(k)
        } else {
            invertible_block(k, false, rng)
        });
    }
    let q = haar_unitary(n, rng);
    let s = conj(&q, &ComplexMatrix::direct_sum(&sb.iter().collect::<Vec<_>>()));
    let t = conj(&q, &ComplexMatrix::direct_sum(&tb.iter().collect::<Vec<_>>()));
    Operands {
        a: None,
        b: None,
        t: Some(t),
        s: Some(s),
    }
}

/// Unstructured operand: Gaussian, low rank, EP or normal.
pub fn arbitrary(n: usize, rng: &mut TestRng) -> ComplexMatrix {
    match rng.random_range(0..5u32) {
        0 | 1 => gaussian_matrix(n, n, rng),
        2 => {
            let r = rng.random_range(0..n);
            random_low_rank(n, r, rng)
        }
        3 => {
            let r = rng.random_range(0..=n);
            crate::ep::random::random_ep_with(n, r, false, rng).expect("rank in range")
        }
        _ => {
            let q = haar_unitary(n, rng);
            let d: Vec<Complex64> = (0..n).map(|_| gaussian(rng)).collect();
            conj(&q, &ComplexMatrix::from_diag(&d))
        }
    }
}

pub fn arbitrary_operands(n: usize, rng: &mut TestRng) -> Operands {
    Operands {
        a: Some(arbitrary(n, rng)),
        b: Some(arbitrary(n, rng)),
        t: Some(arbitrary(n, rng)),
        s: Some(arbitrary(n, rng)),
    }
}
