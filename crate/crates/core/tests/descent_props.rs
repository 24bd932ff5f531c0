use proptest::prelude::*;
use rug::Rational;

use sharygin_core::curve::{point_a, point_d, WeierstrassCurve, WeierstrassPoint};
use sharygin_core::descent::{
    builtin_witness_table, descent_image, hensel_sqrt17, ks2_representatives, ord17, ord2,
    same_class, square_equivalent, verify_witness, DescentConstants, TwoAdicBranch, QF17,
};

fn element() -> impl Strategy<Value = QF17> {
    (-60i64..=60, 1i64..=30, -60i64..=60, 1i64..=30)
        .prop_map(|(r, rd, s, sd)| QF17::new(Rational::from((r, rd)), Rational::from((s, sd))))
}

fn nonzero_element() -> impl Strategy<Value = QF17> {
    element().prop_filter("nonzero", |x| !x.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn norm_is_multiplicative(x in element(), y in element()) {
        let xy = &x * &y;
        prop_assert_eq!(xy.norm(), x.norm() * y.norm());
        prop_assert_eq!(xy.conj(), &x.conj() * &y.conj());
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        prop_assert_eq!(x.conj().conj(), x.clone());
    }

    #[test]
    fn ord17_is_additive(x in nonzero_element(), y in nonzero_element()) {
        let xy = &x * &y;
        prop_assert_eq!(ord17(&xy).unwrap(), ord17(&x).unwrap() + ord17(&y).unwrap());
    }

    #[test]
    fn ord2_is_additive(x in nonzero_element(), y in nonzero_element()) {
        let xy = &x * &y;
        for branch in [TwoAdicBranch::Canonical, TwoAdicBranch::Conjugate] {
            prop_assert_eq!(
                ord2(&xy, branch).unwrap(),
                ord2(&x, branch).unwrap() + ord2(&y, branch).unwrap()
            );
        }
    }

    #[test]
    fn squares_are_square_equivalent_to_one(x in nonzero_element()) {
        prop_assert!(square_equivalent(&x.square(), &QF17::one()));
        prop_assert_eq!(x.square().sqrt().map(|r| r.square()), Some(x.square()));
    }
}

#[test]
fn witnesses_verify() {
    let e = WeierstrassCurve::sharygin();
    let k = DescentConstants::default();
    let expected = ["2A", "2A+D", "3A", "A+D"];
    let table = builtin_witness_table();
    assert_eq!(table.len(), 4);
    for (row, label) in table.iter().zip(expected) {
        let w = &row.witness;
        assert_eq!(row.label, label);
        let b1z1 = &w.b1 * &w.z1.square();
        assert_eq!(&b1z1 - &(&w.b2 * &w.z2.square()), &k.e2 - &k.e1);
        assert_eq!(&b1z1 - &(&(&w.b1 * &w.b2) * &w.z3.square()), &k.e3 - &k.e1);
        let p = verify_witness(w).unwrap();
        assert!(e.contains(&p));
        assert_eq!(p, row.expected);
        assert!(same_class(
            &descent_image(&p).unwrap(),
            &(w.b1.clone(), w.b2.clone())
        ));
    }
}

#[test]
fn ks2_representatives_are_distinct_classes() {
    let reps = ks2_representatives();
    assert_eq!(reps.len(), 64);
    for (i, x) in reps.iter().enumerate() {
        for y in &reps[i + 1..] {
            assert!(!square_equivalent(x, y), "{x} ~ {y}");
        }
    }
}

#[test]
fn rank_one_images_are_distinct() {
    let e = WeierstrassCurve::sharygin();
    let pts = [
        WeierstrassPoint::Infinity,
        point_d(),
        point_a(),
        e.add(&point_a(), &point_d()),
    ];
    let images: Vec<_> = pts.iter().map(|p| descent_image(p).unwrap()).collect();
    for i in 0..4 {
        for j in i + 1..4 {
            assert!(
                !same_class(&images[i], &images[j]),
                "{} ~ {}",
                pts[i],
                pts[j]
            );
        }
    }
}

#[test]
fn two_adic_root_is_a_root() {
    for k in [5u32, 7, 16, 64, 200] {
        let [plus, minus] = hensel_sqrt17(k).unwrap();
        let m = rug::Integer::from(1) << k;
        for r in [&plus.residue, &minus.residue] {
            let d = rug::Integer::from(r * r) - 17u32;
            assert!(d.is_divisible(&m), "k = {k}");
        }
        assert_eq!(rug::Integer::from(plus.residue.mod_u(32)), 9);
    }
    assert_eq!(hensel_sqrt17(7).unwrap()[0].residue, 105);
    assert!(hensel_sqrt17(4).is_err());
}

#[test]
fn step_six_valuations() {
    let k = DescentConstants::default();
    let c = TwoAdicBranch::Canonical;
    assert_eq!(ord2(&k.two_minus, c).unwrap(), 1);
    assert_eq!(ord2(&k.two_plus, c).unwrap(), 0);
    assert_eq!(ord2(&k.e2, c).unwrap(), 5);
    assert_eq!(ord2(&k.e3, c).unwrap(), 0);
    assert_eq!(ord17(&k.sqrt17).unwrap(), Rational::from((1, 2)));
    assert_eq!(ord17(&QF17::rational(17)).unwrap(), 1);
}
