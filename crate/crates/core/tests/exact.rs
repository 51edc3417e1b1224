use idverify_core::exact::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn poly_strategy(max_degree: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-9i64..10, 1..=max_degree + 1).prop_map(|c| Poly::from_ints(&c))
}

fn rational_strategy() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=10).prop_map(|(p, q)| ratio(p, q))
}

/// Counts set partitions of {0..n} by restricted growth strings.
fn bell_by_enumeration(n: usize) -> u64 {
    fn go(i: usize, n: usize, max: usize) -> u64 {
        if i == n {
            return 1;
        }
        (0..=max + 1).map(|b| go(i + 1, n, max.max(b))).sum()
    }
    if n == 0 {
        1
    } else {
        go(1, n, 0)
    }
}

#[test]
fn finite_differences() {
    assert!(euler_finite_difference(&Poly::from_ints(&[4]), 1).is_zero());
    assert_eq!(euler_finite_difference(&Poly::from_ints(&[0, 0, 0, 1]), 3), rational(-6));
    // C(2 + k, 2) as a polynomial in k
    let p = Poly::new(vec![rational(1), ratio(3, 2), ratio(1, 2)]);
    assert_eq!(euler_finite_difference(&p, 2), rational(1));
}

#[test]
fn composite_derivative_coefficients() {
    let listed = |n| {
        let mut v: Vec<_> = mo_coefficients(n).unwrap().into_iter().map(|(k, c)| (k.parts().to_vec(), c)).collect();
        v.sort();
        v
    };
    assert_eq!(listed(1), vec![(vec![1], BigInt::from(1))]);
    assert_eq!(listed(2), vec![(vec![1, 1], BigInt::from(1)), (vec![2], BigInt::from(1))]);
    assert_eq!(listed(3), vec![(vec![1, 1, 1], BigInt::from(1)), (vec![1, 2], BigInt::from(3)), (vec![3], BigInt::from(1))]);
    assert!(mo_coefficients(0).is_err());

    for n in 1..=8u32 {
        let total: BigInt = mo_coefficients(n).unwrap().into_iter().map(|(_, c)| c).sum();
        assert_eq!(total.to_u64().unwrap(), bell_by_enumeration(n as usize), "n = {n}");
    }

    let square = Poly::from_ints(&[0, 0, 1]);
    assert!(compose_derivative_check(&square, &Poly::from_ints(&[0, 1, 0, 1]), 4, &rational(1)).unwrap());
    assert!(compose_derivative_check(&Poly::from_ints(&[0, 0, 0, 1]), &Poly::from_ints(&[2, 0, 1]), 5, &ratio(1, 2)).unwrap());
    assert!(compose_derivative_check(&square, &square, 9, &rational(1)).is_err());

    let k = MultiIndex::new(vec![1, 1, 3]).unwrap();
    assert_eq!((k.len(), k.weight(), k.multiplicities()), (3, 5, vec![2, 1]));
    assert!(MultiIndex::new(vec![]).is_err());
    assert!(MultiIndex::new(vec![0, 1]).is_err());
}

#[test]
fn lagrange_reciprocals() {
    assert!(lagrange_reciprocal_identity(&[rational(5)]).unwrap());
    assert!(lagrange_reciprocal_identity(&[rational(1), rational(2)]).unwrap());
    assert!(lagrange_reciprocal_identity(&[rational(1), rational(2), rational(3)]).unwrap());
    assert!(lagrange_reciprocal_identity(&[rational(1), rational(1)]).is_err());
    assert!(lagrange_reciprocal_identity(&[rational(0), rational(1)]).is_err());
}

#[test]
fn gregory_coefficients() {
    assert_eq!(gregory_coefficient(1).unwrap(), ratio(1, 2));
    assert_eq!(gregory_coefficient(2).unwrap(), ratio(1, 12));
    assert_eq!(gregory_coefficient(5).unwrap(), ratio(3, 160));
    assert!(gregory_bounds_hold(5).unwrap());
    assert!((1..=30).all(|k| gregory_bounds_hold(k).unwrap()));
    assert!(gregory_coefficient(0).is_err());
}

#[test]
fn identity_suite_examples() {
    assert!(binomial_identity_suite(&SuiteCheck::DblBinom12415 { n: 0 }).unwrap());
    assert!(binomial_identity_suite(&SuiteCheck::Quicky1140a { n: 3, m: 2 }).unwrap());
    assert!(binomial_identity_suite(&SuiteCheck::DblBinom12415 { n: 31 }).is_err());
    for n in 1..=12 {
        assert!(binomial_identity_suite(&SuiteCheck::AltRecip4951 { n }).unwrap());
        assert!(binomial_identity_suite(&SuiteCheck::Elem1449 { n }).unwrap());
        assert!(binomial_identity_suite(&SuiteCheck::ChebPartfrac1296 { n, t: 0.1234 }).unwrap());
        assert!(binomial_identity_suite(&SuiteCheck::ChebProduct12436 { n, x: 0.37 }).unwrap());
        for r in 1..=n {
            for s in 1..=n {
                assert!(binomial_identity_suite(&SuiteCheck::TrigSum4854 { n, r, s }).unwrap(), "{n} {r} {s}");
            }
        }
    }
}

#[test]
fn harmonic_inequality_exhaustive() {
    for m in 1..=12 {
        for n in m..=12 {
            for p in n..=12 {
                for q in p..=12 {
                    assert!(binomial_identity_suite(&SuiteCheck::HarmonicIneq4900 { m, n, p, q }).unwrap());
                }
            }
        }
    }
}

#[test]
fn searches() {
    use DiophantineKind::*;
    let sets = |kind, bound| search_diophantine(kind, bound).unwrap();
    assert_eq!(sets(FactorialPower2117, 20), vec![vec![1, 1], vec![1, 2], vec![2, 4]]);
    assert_eq!(sets(Quintuplet108E, 1_000_000), vec![vec![5]]);
    assert_eq!(sets(Pow23Square4803, 12), vec![vec![2, 1, 2]]);
    assert_eq!(sets(CubeSquare4811, 10_000), vec![vec![2]]);
    assert!(search_diophantine(Norm1447, 101).is_err());

    for (kind, small, large) in
        [(FactorialPower2117, 20, 60), (Pow23Square4803, 12, 30), (Pair4855, 20, 40), (CubeSquare4811, 1000, 20_000), (Norm1447, 10, 30)]
    {
        let a = sets(kind, small);
        let b = sets(kind, large);
        assert!(a.iter().all(|s| b.contains(s)), "{kind:?}");
        let max = |s: &Vec<u64>| *s.iter().max().unwrap();
        let restricted: Vec<_> = b
            .into_iter()
            .filter(|s| match kind {
                FactorialPower2117 => s[1] <= small,
                Pow23Square4803 => s[0] <= small && s[1] <= small,
                _ => max(s) <= small,
            })
            .collect();
        assert_eq!(a, restricted, "{kind:?}");
    }
}

#[test]
fn exchange_pairs_have_the_listed_shape() {
    for s in search_diophantine(DiophantineKind::Pair4855, 40).unwrap() {
        let (a, b) = (s[0], s[1]);
        assert!(a == 1 || b == 1 || a == b || (a, b) == (2, 3) || (a, b) == (3, 2), "{s:?}");
    }
}

#[test]
fn primes() {
    assert_eq!(primes_upto(10).unwrap(), vec![2, 3, 5, 7]);
    assert!(primes_upto(1).unwrap().is_empty());
    assert!(primes_upto(PRIME_CAP + 1).is_err());

    let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
    let oracle: Vec<u64> = (0..=20_000).filter(|&n| trial(n)).collect();
    assert_eq!(primes_upto(20_000).unwrap(), oracle);

    assert_eq!(primes_upto(1_000_000).unwrap().len(), 78498);
    assert_eq!(count_primes_segmented(1_000_000, 4096).unwrap(), 78498);
    assert_eq!(count_primes_segmented(1_000_000, 65_537).unwrap(), 78498);
}

#[test]
fn general_linear_sums() {
    assert_eq!(gl_sum(2, 2).unwrap(), vec![vec![0, 0], vec![0, 0]]);
    assert_eq!(gl_sum(2, 1).unwrap(), vec![vec![1]]);
    assert_eq!(gl_sum(3, 1).unwrap(), vec![vec![0]]);
    assert_eq!(gl_sum(3, 2).unwrap(), vec![vec![0, 0], vec![0, 0]]);
    assert!(gl_sum(4, 2).is_err());
}

#[test]
fn root_count_matches_discriminant_sign() {
    // one real root iff the discriminant is negative
    assert_eq!(real_root_count(1.0, 0.0).unwrap(), 1);
    // (z^3 - z)/2 has roots 0 and +-1
    assert_eq!(real_root_count(0.5, 0.0).unwrap(), 3);
    assert!(real_root_count(0.0, 1.0).is_err());
}

proptest! {
    #[test]
    fn low_degree_differences_vanish(p in poly_strategy(7), extra in 1u64..4) {
        let n = (p.degree().unwrap_or(0) as u64 + extra).min(8);
        prop_assume!(p.degree().unwrap_or(0) < n as usize);
        prop_assert!(euler_finite_difference(&p, n).is_zero());
    }

    #[test]
    fn top_degree_difference(p in poly_strategy(8)) {
        let Some(d) = p.degree() else { return Ok(()); };
        let lead = p.coeffs()[d].clone();
        let sign = if d % 2 == 0 { 1 } else { -1 };
        let expected = lead * BigRational::from_integer(factorial(d as u64)) * rational(sign);
        prop_assert_eq!(euler_finite_difference(&p, d as u64), expected);
    }

    #[test]
    fn composite_derivatives(f in poly_strategy(4), g in poly_strategy(3), n in 1u32..=6, x in rational_strategy()) {
        prop_assert!(compose_derivative_check(&f, &g, n, &x).unwrap());
    }

    #[test]
    fn harmonic_inequality(mut v in prop::array::uniform4(1u32..=25)) {
        v.sort();
        let check = SuiteCheck::HarmonicIneq4900 { m: v[0], n: v[1], p: v[2], q: v[3] };
        prop_assert!(binomial_identity_suite(&check).unwrap());
    }

    #[test]
    fn trig_sums(n in 1u32..=12, r in 1u32..=12, s in 1u32..=12) {
        prop_assume!(r <= n && s <= n);
        let check = SuiteCheck::TrigSum4854 { n, r, s };
        prop_assert!(binomial_identity_suite(&check).unwrap());
    }

    #[test]
    fn discriminant_forms_agree(a in rational_strategy(), b in rational_strategy()) {
        let (expanded, completed) = discriminant_2184(&a, &b);
        prop_assert_eq!(&expanded, &completed);
        let check = SuiteCheck::Discriminant2184 { a: a.clone(), b: b.clone() };
        prop_assert!(binomial_identity_suite(&check).unwrap());
        let d = expanded.to_f64().unwrap();
        let (af, bf) = (a.to_f64().unwrap(), b.to_f64().unwrap());
        prop_assume!(af != 0.0 && d.abs() > 1e-3);
        prop_assert_eq!(real_root_count(af, bf).unwrap(), if d > 0.0 { 3 } else { 1 });
    }

    #[test]
    fn lagrange_on_random_points(pts in prop::collection::btree_set(rational_strategy(), 1..=6)) {
        let pts: Vec<_> = pts.into_iter().filter(|z| !z.is_zero()).collect();
        prop_assume!(!pts.is_empty());
        prop_assert!(lagrange_reciprocal_identity(&pts).unwrap());
    }
}
