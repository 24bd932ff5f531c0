use proptest::prelude::*;

use sharygin_core::heptagon::{
    cos7_minpoly_check, cyclotomic_polynomial, expression_abs, expression_is_zero, search,
    SearchHit, SearchMode,
};
use sharygin_core::numeric::NumericConfig;
use sharygin_core::poly::IntPoly;
use sharygin_core::primes::divisors;

#[test]
fn cyclotomic_product_identity() {
    for n in 1..=200u64 {
        let product = divisors(&rug::Integer::from(n))
            .into_iter()
            .fold(IntPoly::constant(1), |acc, d| {
                &acc * cyclotomic_polynomial(d.to_usize().unwrap()).as_ref()
            });
        assert_eq!(product, IntPoly::x_pow_minus_one(n as usize), "n = {n}");
    }
}

#[test]
fn heptagon_identity() {
    assert!(expression_is_zero(7, 1, 2).unwrap());
    assert!(expression_is_zero(7, 2, 1).unwrap());
    assert!(cos7_minpoly_check());
    assert!(expression_is_zero(7, 1, 3).is_err());
}

#[test]
fn exact_and_numeric_search_agree() {
    let cfg = NumericConfig::default();
    let exact = search(60, SearchMode::Exact, &cfg).unwrap();
    let numeric = search(60, SearchMode::Numeric, &cfg).unwrap();
    assert_eq!(exact, numeric);
    let mut expected: Vec<SearchHit> = (1..=8)
        .flat_map(|k| {
            [
                SearchHit {
                    big_n: 7 * k,
                    m: k,
                    n: 2 * k,
                },
                SearchHit {
                    big_n: 7 * k,
                    m: 2 * k,
                    n: k,
                },
            ]
        })
        .collect();
    expected.sort();
    assert_eq!(exact, expected);
}

/// Constrained triple: `1 <= m, n` and `2(m + n) < N`.
fn triple() -> impl Strategy<Value = (u32, u32, u32)> {
    (5u32..=120)
        .prop_flat_map(|big_n| {
            let cap = (big_n - 1) / 2 - 1;
            (Just(big_n), 1..=cap).prop_flat_map(move |(big_n, m)| {
                let rest = (big_n - 1) / 2 - m;
                (Just(big_n), Just(m), 1..=rest.max(1))
            })
        })
        .prop_filter("constraints", |(big_n, m, n)| 2 * (m + n) < *big_n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn prefilter_is_sound((big_n, m, n) in triple()) {
        let cfg = NumericConfig::default();
        let value = expression_abs(&cfg, big_n, m, n);
        if value > 1e-6 {
            prop_assert!(!expression_is_zero(big_n, m, n).unwrap());
        }
        if expression_is_zero(big_n, m, n).unwrap() {
            prop_assert!(value < 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn symmetric_in_m_and_n((big_n, m, n) in triple()) {
        prop_assert_eq!(
            expression_is_zero(big_n, m, n).unwrap(),
            expression_is_zero(big_n, n, m).unwrap()
        );
    }

    #[test]
    fn scaling_is_consistent((big_n, m, n) in triple(), k in 1u32..=4) {
        prop_assert_eq!(
            expression_is_zero(big_n, m, n).unwrap(),
            expression_is_zero(k * big_n, k * m, k * n).unwrap()
        );
    }
}
