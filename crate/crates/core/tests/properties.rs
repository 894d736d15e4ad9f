use proptest::prelude::*;

use muext_core::cyclotomic::CycElem;
use muext_core::ext::{compute_ext, fppf_dimension_check};
use muext_core::finite_field::FiniteField;
use muext_core::global::RingSpec;
use muext_core::kummer::{t_group_law, t_isomorphic, LocalRing, NumberField, PowerClassRing, TScheme};
use muext_core::linalg::rank_of;
use muext_core::local::LocalFieldSpec;

const SMALL_PRIMES: [i64; 5] = [2, 3, 5, 7, 11];

fn integer(sign: bool, exps: &[u32]) -> i64 {
    let n: i64 = SMALL_PRIMES.iter().zip(exps).map(|(q, &e)| q.pow(e)).product();
    if sign {
        -n
    } else {
        n
    }
}

fn exponent_vector(sign: bool, exps: &[u32], p: u64) -> Vec<u64> {
    let mut v = vec![u64::from(sign) * u64::from(p == 2)];
    v.extend(exps.iter().map(|&e| e as u64 % p));
    v
}

fn same_span(p: u64, a: Vec<u64>, b: Vec<u64>) -> bool {
    let ra = rank_of(p, std::slice::from_ref(&a));
    ra == rank_of(p, std::slice::from_ref(&b)) && ra == rank_of(p, &[a, b])
}

/// `n` is a square in `Q_2` iff `v_2(n)` is even and the odd part is `1 mod 8`.
fn two_adic_square(n: i64) -> bool {
    let v = n.trailing_zeros();
    v.is_multiple_of(2) && (n >> v).rem_euclid(8) == 1
}

fn field_and_prime() -> impl Strategy<Value = (&'static str, u64)> {
    prop_oneof![
        Just(("F3", 2)),
        Just(("F5", 2)),
        Just(("F9", 2)),
        Just(("F4", 3)),
        Just(("F7", 3)),
        Just(("F13", 3)),
        Just(("F25", 2)),
        Just(("F19", 3)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn finite_field_isomorphism_matches_discrete_log((name, p) in field_and_prime(), i in 0usize..400, j in 0usize..400) {
        let f = FiniteField::parse(name).unwrap();
        let units: Vec<_> = f.units().collect();
        let (r, s) = (&units[i % units.len()], &units[j % units.len()]);
        let lr = f.discrete_log(r).unwrap() % p;
        let ls = f.discrete_log(s).unwrap() % p;
        prop_assert_eq!(t_isomorphic(&f, p, r, s).unwrap(), (lr == 0) == (ls == 0));
        let r_inv_power = FiniteField::pow(&f, r, p - 1);
        prop_assert!(t_isomorphic(&f, p, r, &r_inv_power).unwrap());
    }

    #[test]
    fn rational_isomorphism_matches_exponents(
        p in prop_oneof![Just(2u64), Just(3u64)],
        sa in any::<bool>(), ea in prop::collection::vec(0u32..4, 5),
        sb in any::<bool>(), eb in prop::collection::vec(0u32..4, 5),
    ) {
        let q = NumberField { conductor: 1 };
        let (a, b) = (integer(sa, &ea), integer(sb, &eb));
        let iso = t_isomorphic(&q, p, &CycElem::from_int(1, a), &CycElem::from_int(1, b)).unwrap();
        prop_assert_eq!(iso, same_span(p, exponent_vector(sa, &ea, p), exponent_vector(sb, &eb, p)));
    }

    #[test]
    fn isomorphism_survives_completion(
        p in prop_oneof![Just(2u64), Just(3u64)],
        sa in any::<bool>(), ea in prop::collection::vec(0u32..3, 5),
        sb in any::<bool>(), eb in prop::collection::vec(0u32..3, 5),
    ) {
        let q = NumberField { conductor: 1 };
        let (a, b) = (integer(sa, &ea), integer(sb, &eb));
        let local = LocalRing(LocalFieldSpec::with_default_precision(p, 1).unwrap());
        let (la, lb) = (local.0.from_int(a).unwrap(), local.0.from_int(b).unwrap());
        if t_isomorphic(&q, p, &CycElem::from_int(1, a), &CycElem::from_int(1, b)).unwrap() {
            prop_assert!(t_isomorphic(&local, p, &la, &lb).unwrap());
        }
    }

    #[test]
    fn rational_group_law_associative(
        p in prop_oneof![Just(2u64), Just(3u64)],
        s in prop_oneof![Just(2i64), Just(3), Just(-5), Just(6)],
        idx in prop::collection::vec((0u64..3, any::<bool>()), 3),
    ) {
        let q = NumberField { conductor: 1 };
        let t = TScheme::split(&q, p, CycElem::from_int(1, s)).unwrap();
        let pts: Vec<_> = idx
            .iter()
            .map(|&(i, neg)| {
                let i = i % p;
                let sign = if neg && p == 2 { -1 } else { 1 };
                t.point(CycElem::from_int(1, sign * s.pow(i as u32)), i).unwrap()
            })
            .collect();
        let left = t_group_law(&t, &t_group_law(&t, &pts[0], &pts[1]).unwrap(), &pts[2]).unwrap();
        let right = t_group_law(&t, &pts[0], &t_group_law(&t, &pts[1], &pts[2]).unwrap()).unwrap();
        prop_assert!(t.same_point(&left, &right));
        let ab = t_group_law(&t, &pts[0], &pts[1]).unwrap();
        let ba = t_group_law(&t, &pts[1], &pts[0]).unwrap();
        prop_assert!(t.same_point(&ab, &ba));
        prop_assert!(t.point(ab.a.clone(), ab.i).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn ext_over_q_matches_two_adic_squares(mask in 0u32..16) {
        let s: Vec<u64> = [3u64, 5, 7, 11].iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &q)| q).collect();
        let res = compute_ext(&RingSpec::new(1, 2, s.clone()).unwrap(), None).unwrap();
        // units of Z[1/2S] mod squares are -1, 2 and S; count those that are 2-adic squares
        let mut gens = vec![-1i64, 2];
        gens.extend(s.iter().map(|&q| q as i64));
        let kernel_size = (0u32..1 << gens.len())
            .filter(|m| two_adic_square(gens.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &g)| g).product()))
            .count();
        prop_assert_eq!(1usize << res.dimension, kernel_size);
        prop_assert!(res.audit.paths_agree && res.audit.soundness_verified);
        for g in &res.generators {
            let n = g.to_rational().unwrap();
            prop_assert!(n.is_integer());
            prop_assert!(two_adic_square(n.to_integer().try_into().unwrap()));
        }
    }

    #[test]
    fn enlarging_s_never_shrinks_ext(mask in 0u32..8, extra in prop_oneof![Just(3u64), Just(5), Just(7), Just(17)]) {
        let base: Vec<u64> = [3u64, 7, 17].iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &q)| q).collect();
        let mut bigger = base.clone();
        bigger.push(extra);
        let small = compute_ext(&RingSpec::new(1, 2, base).unwrap(), None).unwrap();
        let large = compute_ext(&RingSpec::new(1, 2, bigger).unwrap(), None).unwrap();
        prop_assert!(small.dimension <= large.dimension);
    }

    #[test]
    fn class_count_is_line_count(mask in 0u32..8) {
        let s: Vec<u64> = [3u64, 5, 7].iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &q)| q).collect();
        let c = fppf_dimension_check(&RingSpec::new(1, 2, s.clone()).unwrap()).unwrap();
        prop_assert_eq!(c.k, 2 + s.len());
        prop_assert_eq!(c.isomorphism_classes, 1 << c.k);
        prop_assert!(c.holds);
    }
}

#[test]
fn cube_classes_over_q() {
    let q = NumberField { conductor: 1 };
    let c = muext_core::ext::count_t_classes(&q, 3, &[CycElem::from_int(1, 2), CycElem::from_int(1, 3)]).unwrap();
    assert_eq!((c.unit_classes, c.isomorphism_classes, c.expected), (9, 5, 5));
    assert!(c.holds);
    assert!(q.is_pth_power(&CycElem::from_int(1, -8), 3).unwrap());
}
