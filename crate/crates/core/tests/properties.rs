mod common;

use proptest::prelude::*;

use blanchfield::algebra::{CycNum, LaurentPoly, RootOfUnity};
use blanchfield::forms::{decompose, Decomposition, JumpMap};
use blanchfield::satellite::KnotExpr;

fn cyc() -> impl Strategy<Value = CycNum> {
    (prop::collection::vec(-4i64..=4, 4), 1i64..=3).prop_map(|(c, d)| {
        c.iter()
            .enumerate()
            .fold(CycNum::zero(), |acc, (k, &a)| {
                &acc + &(&CycNum::from_ratio(a, d) * &CycNum::root_of_unity(k as i64, 12))
            })
    })
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    (-2i64..=2, prop::collection::vec(-3i64..=3, 1..5)).prop_map(|(low, c)| LaurentPoly::from_ints(low, &c))
}

fn root() -> impl Strategy<Value = RootOfUnity> {
    (1u64..=30).prop_flat_map(|n| (0..n as i64).prop_map(move |e| RootOfUnity::new(e, n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(a.conj().conj(), a.clone());
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn division_with_remainder(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a.clone());
        prop_assert!(r.is_zero() || r.span() < b.span());
    }

    #[test]
    fn gcd_and_bezout(a in poly(), b in poly()) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let (g, s, t) = a.xgcd(&b);
        prop_assert!(g.divides(&a) && g.divides(&b));
        prop_assert!((&(&s * &a) + &(&t * &b)).associate(&g));
        prop_assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn roots_of_unity(a in root(), b in root(), k in -5i64..=5) {
        prop_assert_eq!(a.mul(&b).to_cyc(), &a.to_cyc() * &b.to_cyc());
        prop_assert_eq!(a.pow(k).to_cyc(), a.to_cyc().pow(k));
        prop_assert_eq!(a.conj().to_cyc(), a.to_cyc().conj());
        prop_assert_eq!(a.to_string().parse::<RootOfUnity>().unwrap(), a);
    }

    #[test]
    fn pullbacks_compose(seed in any::<u64>(), e1 in root(), e2 in root(), m1 in 1u32..=3, m2 in 1u32..=3) {
        let mut rng = common::rng(seed);
        let d = common::random_decomposition(&mut rng, 4, false);
        let j = JumpMap::from_decomposition(&d);
        prop_assert_eq!(
            j.pullback(&e1, m1).pullback(&e2, m2),
            j.pullback(&e1.mul(&e2.pow(m1 as i64)), m1 * m2)
        );
    }

    #[test]
    fn decomposition_json_round_trip(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let d = common::random_decomposition(&mut rng, 5, true);
        prop_assert_eq!(Decomposition::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn mirror_normalization(qs in prop::collection::vec((3u64..=9, any::<bool>()), 1..5), outer in any::<bool>()) {
        let parts: Vec<String> = qs
            .iter()
            .map(|(q, neg)| format!("{}T(2,{})", if *neg { "-" } else { "" }, q | 1))
            .collect();
        let inner = parts.join(" # ");
        let src = if outer { format!("-({inner})") } else { inner };
        let e = KnotExpr::parse(&src).unwrap();
        let s = e.summands();
        for (x, (_, neg)) in s.iter().zip(&qs) {
            prop_assert_eq!(x.sign, if *neg != outer { -1 } else { 1 });
        }
        prop_assert_eq!(e.clone().mirror().mirror(), e.clone());
        let again = KnotExpr::parse(&e.normalized_string()).unwrap();
        prop_assert_eq!(again.summands(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scrambled_forms_decompose_back(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let d = common::random_decomposition(&mut rng, 3, true);
        let lf = common::scramble(&mut rng, &d.realize().unwrap(), 4);
        prop_assert!(lf.validate().is_ok());
        prop_assert_eq!(decompose(&lf).unwrap(), d);
    }

    #[test]
    fn jumps_are_additive_and_odd(seed in any::<u64>(), n in prop::sample::select(common::CONDUCTORS.to_vec())) {
        let mut rng = common::rng(seed);
        let a = common::random_decomposition_over(&mut rng, n, 3, true).realize().unwrap();
        let b = common::random_decomposition_over(&mut rng, n, 3, true).realize().unwrap();
        let j = |lf: &blanchfield::forms::LinkingForm| JumpMap::from_decomposition(&decompose(lf).unwrap());
        prop_assert_eq!(j(&a.direct_sum(&b)), j(&a).add(&j(&b)));
        prop_assert_eq!(j(&a.negate()), j(&a).neg());
        prop_assert!(j(&a.direct_sum(&a.negate())).is_zero());
    }
}
