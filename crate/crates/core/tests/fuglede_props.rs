mod common;

use common::*;
use eplab_core::ep::random::{gaussian, random_polynomial_in, rng_for};
use eplab_core::fuglede::{check_fuglede_classic, check_product_ep, polar_decompose, product_facts};
use eplab_core::linalg::svd;
use eplab_core::suite::generators::{reverse_order_pair, ALL_BLOCK_KINDS};
use eplab_core::{approx_eq, ComplexMatrix};
use num_complex::Complex64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn polynomial_in_normal_commutes_with_adjoint(n in 1..=10usize, seed in any::<u64>()) {
        let mut rng = rng_for(seed, 0);
        let q = unitary(n, seed);
        let d: Vec<Complex64> = (0..n).map(|_| gaussian(&mut rng)).collect();
        let normal = &(&q * &ComplexMatrix::from_diag(&d)) * &q.adjoint();
        let a = random_polynomial_in(&normal, &mut rng);
        let v = check_fuglede_classic(&a, &normal, &tol()).unwrap();
        prop_assert!(v.hypotheses_hold());
        prop_assert!(v.conclusions_hold());
    }

    #[test]
    fn polar_factors(s in any_square(10)) {
        let (u, p) = polar_decompose(&s).unwrap();
        let n = s.rows();
        prop_assert!(approx_eq(&(&u.adjoint() * &u), &ComplexMatrix::identity(n), &tol()).unwrap());
        prop_assert!(approx_eq(&p, &p.adjoint(), &tol()).unwrap());
        prop_assert!(approx_eq(&(&u * &p), &s, &tol()).unwrap());
        // A Hermitian matrix is PSD iff its trace equals the sum of its
        // singular values; the deficit bounds the negative eigenvalue mass.
        let sigma_sum: f64 = svd(&p).unwrap().singular_values.iter().sum();
        let deficit = (sigma_sum - p.trace().re) / 2.0;
        prop_assert!(deficit <= tol().eq_tol * p.frobenius_norm().max(1.0));
    }

    #[test]
    fn reverse_order_criterion_holds_both_ways(n in 2..=10usize, seed in any::<u64>()) {
        use product_facts::*;
        let ops = reverse_order_pair(n, &ALL_BLOCK_KINDS, &mut rng_for(seed, 0));
        let (s, t) = (ops.s.unwrap(), ops.t.unwrap());
        let v = check_product_ep(&s, &t, &tol()).unwrap();
        let holds = |name| v.fact(name).unwrap().holds;
        prop_assert!(holds(REVERSE_ORDER));
        prop_assert_eq!(holds(ST_EP) && holds(TS_EP), holds(LEFT_COMMUTE) && holds(RIGHT_COMMUTE));
        prop_assert!(v.consistent);
    }
}
