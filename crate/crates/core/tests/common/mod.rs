#![allow(dead_code)]

use eplab_core::ep::random::{haar_unitary, rng_for};
use eplab_core::{c, ComplexMatrix, Tolerance};
use proptest::prelude::*;

pub fn tol() -> Tolerance {
    Tolerance::default()
}

/// Entries with real and imaginary parts in `[-2, 2]`.
pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), rows * cols).prop_map(move |v| {
        ComplexMatrix::new(rows, cols, v.into_iter().map(|(re, im)| c(re, im)).collect()).expect("shape")
    })
}

pub fn square(max: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max).prop_flat_map(|n| matrix(n, n))
}

pub fn rectangular(max: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(m, n)| matrix(m, n))
}

/// `F G` with inner dimension `r <= min(m, n)`, so rank deficiency is common.
pub fn low_rank(max: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max, 1..=max)
        .prop_flat_map(|(m, n)| (Just(m), Just(n), 0..=m.min(n)))
        .prop_flat_map(|(m, n, r)| (matrix(m, r), matrix(r, n)))
        .prop_map(|(f, g)| &f * &g)
}

/// Full-rank or rank-deficient, roughly half each.
pub fn any_matrix(max: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop_oneof![rectangular(max), low_rank(max)]
}

/// Square, full-rank or rank-deficient.
pub fn any_square(max: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop_oneof![
        square(max),
        (1..=max)
            .prop_flat_map(|n| (Just(n), 0..=n))
            .prop_flat_map(|(n, r)| (matrix(n, r), matrix(r, n)))
            .prop_map(|(f, g)| &f * &g),
    ]
}

pub fn unitary(n: usize, seed: u64) -> ComplexMatrix {
    haar_unitary(n, &mut rng_for(seed, 0))
}
