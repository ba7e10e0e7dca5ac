use expderiv_core::{
    coeff_closed, coeff_table_recursive, enumerate_partitions, evaluate_derivative, evaluate_sum,
    expand, max_nonzero_parts, oracle_expand, partition_count, ExactPoint, Expansion, FloatPoint,
    MultiplicityVector,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn bell_triangle(n: usize) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut row = vec![BigUint::one()];
    for _ in 0..=n {
        out.push(row[0].clone());
        let mut next = vec![row[row.len() - 1].clone()];
        for v in &row {
            let s = next.last().unwrap() + v;
            next.push(s);
        }
        row = next;
    }
    out
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn fact(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

#[test]
fn enumeration_is_canonical_and_strictly_decreasing() {
    for n in 0..=40u32 {
        let parts = enumerate_partitions(n).unwrap();
        assert_eq!(BigUint::from(parts.len()), partition_count(n), "n={n}");
        for k in &parts {
            assert!(k.is_canonical());
            assert_eq!(k.order(), u64::from(n));
        }
        assert!(parts.windows(2).all(|w| w[0] > w[1]), "n={n}");
        assert_eq!(parts, enumerate_partitions(n).unwrap());
    }
}

#[test]
fn extremal_coefficients_are_one() {
    for n in 1..=30u32 {
        let single = MultiplicityVector::unit(n as usize);
        let ones = MultiplicityVector::from_mults(vec![n]);
        assert!(coeff_closed(&single).unwrap().is_one());
        assert!(coeff_closed(&ones).unwrap().is_one());
    }
}

#[test]
fn closed_form_division_is_exact_to_thirty() {
    // coeff_closed panics on a remainder; also recheck the product identity
    for n in 1..=30u32 {
        for k in enumerate_partitions(n).unwrap() {
            let a = coeff_closed(&k).unwrap();
            let mut denom = BigUint::one();
            for (idx, &ki) in k.as_slice().iter().enumerate() {
                denom *= fact(u64::from(ki)) * num_traits::pow(fact(idx as u64 + 1), ki as usize);
            }
            assert_eq!(a.value() * denom, fact(u64::from(n)));
        }
    }
}

#[test]
fn term_count_matches_partition_count() {
    for n in 0..=30u32 {
        assert_eq!(BigUint::from(expand(n).unwrap().len()), partition_count(n));
    }
}

#[test]
fn staircase_attains_the_nonzero_bound() {
    for n in 1..=30u32 {
        let bound = max_nonzero_parts(u64::from(n)).unwrap() as usize;
        let e = expand(n).unwrap();
        let best = e
            .terms()
            .iter()
            .map(|t| t.monomial.nonzero_count())
            .max()
            .unwrap();
        assert_eq!(best, bound, "n={n}");
    }
}

#[test]
fn exact_evaluation_identities() {
    let bells = bell_triangle(15);
    for n in 1..=15u32 {
        let p = ExactPoint::new(rat(0), vec![rat(1); n as usize]);
        let s = evaluate_sum(&expand(n).unwrap(), &p).unwrap();
        assert_eq!(
            s,
            BigRational::from_integer(BigInt::from(bells[n as usize].clone()))
        );
    }
    for n in 1..=12u32 {
        let derivs = (1..=u64::from(n))
            .map(|i| BigRational::from_integer(BigInt::from(fact(i - 1))))
            .collect();
        let s = evaluate_sum(&expand(n).unwrap(), &ExactPoint::new(rat(0), derivs)).unwrap();
        assert_eq!(
            s,
            BigRational::from_integer(BigInt::from(fact(u64::from(n))))
        );
    }
}

#[test]
fn float_evaluation_is_deterministic() {
    let e = expand(12).unwrap();
    let p = FloatPoint::new(0.1, (1..=12).map(|i| (i as f64 * 0.37).sin()).collect());
    let a = evaluate_derivative(&e, &p).unwrap();
    let b = evaluate_derivative(&e, &p).unwrap();
    assert_eq!(a.to_bits(), b.to_bits());
}

#[test]
fn oracle_matches_expand_including_twelve() {
    for n in [11u32, 12] {
        assert_eq!(expand(n).unwrap(), oracle_expand(n).unwrap());
    }
}

#[test]
fn oracle_is_a_proper_expansion() {
    for n in 0..=8u32 {
        oracle_expand(n).unwrap().validate().unwrap();
    }
}

#[test]
fn render_is_deterministic() {
    let e = expand(9).unwrap();
    for fmt in [
        expderiv_core::Format::Text,
        expderiv_core::Format::Latex,
        expderiv_core::Format::Json,
    ] {
        assert_eq!(e.render(fmt), expand(9).unwrap().render(fmt));
    }
}

fn arb_partition(max_order: u32) -> impl Strategy<Value = MultiplicityVector> {
    proptest::collection::vec(0u32..4, 0..6)
        .prop_map(MultiplicityVector::from_mults)
        .prop_filter("order bound", move |k| k.order() <= u64::from(max_order))
}

proptest! {
    #[test]
    fn json_round_trip(n in 0u32..=20) {
        let e = expand(n).unwrap();
        prop_assert_eq!(Expansion::from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn closed_matches_recursion(k in arb_partition(12)) {
        prop_assume!(k.order() >= 1);
        let table = coeff_table_recursive(k.order() as u32).unwrap();
        prop_assert_eq!(table.get(&k), Some(&coeff_closed(&k).unwrap()));
    }

    #[test]
    fn part_list_round_trip(k in arb_partition(40)) {
        let parts: Vec<u32> = k.parts().collect();
        prop_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(MultiplicityVector::from_parts(&parts), k.clone());
        prop_assert_eq!(parts.iter().map(|&p| u64::from(p)).sum::<u64>(), k.order());
    }

    #[test]
    fn linear_collapse(n in 1u32..=10, p in -20i64..=20, q in 1i64..=9) {
        let a = BigRational::new(p.into(), q.into());
        let mut derivs = vec![BigRational::zero(); n as usize];
        derivs[0] = a.clone();
        let s = evaluate_sum(&expand(n).unwrap(), &ExactPoint::new(rat(0), derivs)).unwrap();
        prop_assert_eq!(s, num_traits::pow(a, n as usize));
    }

    #[test]
    fn nonzero_entries_respect_bound(n in 1u32..=25) {
        let bound = max_nonzero_parts(u64::from(n)).unwrap() as usize;
        for k in enumerate_partitions(n).unwrap() {
            prop_assert!(k.nonzero_count() <= bound);
        }
    }

    #[test]
    fn max_parts_is_largest_triangular_index(n in 1u64..=u64::MAX / 2) {
        let s = u128::from(max_nonzero_parts(n).unwrap());
        let n = u128::from(n);
        prop_assert!(s * (s + 1) / 2 <= n);
        prop_assert!((s + 1) * (s + 2) / 2 > n);
    }
}
