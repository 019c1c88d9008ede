mod common;

use common::*;
use eplab_core::subspace::{from_constraint_form, Subspace};
use proptest::prelude::*;

/// Span of `k` random vectors in `C^n`; rank deficiency comes from `k < n`
/// and from low-rank spanning sets.
fn subspace(n: usize) -> impl Strategy<Value = Subspace> {
    (0..=n)
        .prop_flat_map(move |k| {
            prop_oneof![
                matrix(n, k).boxed(),
                (0..=k)
                    .prop_flat_map(move |r| (matrix(n, r), matrix(r, k)))
                    .prop_map(|(f, g)| &f * &g)
                    .boxed()
            ]
        })
        .prop_map(|m| Subspace::from_columns(&m, &tol()).unwrap())
}

fn subspace_pair(max: usize) -> impl Strategy<Value = (Subspace, Subspace)> {
    (1..=max).prop_flat_map(|n| (subspace(n), subspace(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn complement_has_complementary_dimension(s in (1..=10usize).prop_flat_map(subspace)) {
        let c = s.complement(&tol()).unwrap();
        prop_assert_eq!(c.dim(), s.ambient_dim() - s.dim());
    }

    #[test]
    fn double_complement_is_identity(s in (1..=10usize).prop_flat_map(subspace)) {
        let cc = s.complement(&tol()).unwrap().complement(&tol()).unwrap();
        prop_assert!(cc.approx_eq(&s, &tol()).unwrap());
    }

    #[test]
    fn modular_identity((a, b) in subspace_pair(8)) {
        let sum = a.sum(&b, &tol()).unwrap();
        let cap = a.intersect(&b, &tol()).unwrap();
        prop_assert_eq!(a.dim() + b.dim(), sum.dim() + cap.dim());
    }

    #[test]
    fn constraint_form_round_trips(s in (1..=10usize).prop_flat_map(subspace)) {
        let spec = s.to_constraint_form(&tol()).unwrap();
        prop_assert_eq!(spec.dim(), s.dim());
        let back = from_constraint_form(&spec, &tol()).unwrap();
        prop_assert!(s.distance(&back).unwrap() <= tol().eq_tol);
    }
}
