use proptest::prelude::*;

use torusslopes::charslopes::{enumerate_affine_maps, CensusRecord};
use torusslopes::lens::{d_bound_holds, d_invariant, d_multiset, lens_d_multiset, lens_homeo, LensSpace};
use torusslopes::numtheory::{floor_div, gcd, mod_inverse, Rational};
use torusslopes::seifert::{
    surgery_cable, surgery_homeomorphic, surgery_torus_knot, Fiber, SeifertInvariants, SurgeryResult,
};
use torusslopes::surgeryfloer::{
    b_tower_grading, conjugate_index, d_surgery, d_surgery_multiset, grading_match_sums, ZeroTable,
};
use torusslopes::torusknot::{
    alexander_from_torsion, staircase_torus, torsion_coefficients, CableKnot, Knot, TorusKnot,
};

fn coprime_pair(max: i64) -> impl Strategy<Value = (i64, i64)> {
    (2..=max, 1..=max).prop_filter_map("coprime", |(p, q)| {
        let q = q % p;
        (q > 0 && gcd(p, q) == 1).then_some((p, q))
    })
}

fn torus_knot() -> impl Strategy<Value = TorusKnot> {
    (2i64..8, 3i64..20).prop_filter_map("coprime", |(r, s)| (r < s && gcd(r, s) == 1).then(|| TorusKnot::new(r, s).unwrap()))
}

fn slope(pmax: i64, qmax: i64) -> impl Strategy<Value = (i64, i64)> {
    (-pmax..=pmax, 1..=qmax).prop_filter("lowest terms, nonzero", |&(p, q)| p != 0 && gcd(p, q) == 1)
}

fn fiber() -> impl Strategy<Value = Fiber> {
    (2i64..12, -30i64..30).prop_filter_map("coprime", |(a, b)| (gcd(a, b) == 1).then(|| Fiber::new(b, a)))
}

fn seifert() -> impl Strategy<Value = SeifertInvariants> {
    (-4i64..5, prop::collection::vec(fiber(), 3)).prop_map(|(e, fs)| SeifertInvariants::new(e, fs).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalize_is_idempotent_and_keeps_euler(s in seifert()) {
        let n = s.normalize();
        prop_assert!(n.is_normalized());
        prop_assert_eq!(n.normalize(), n.clone());
        prop_assert_eq!(n.euler_number(), s.euler_number());
        prop_assert_eq!(n.h1_order(), s.h1_order());
        if n.exceptional_count() == 3 {
            let a = SurgeryResult::Seifert(s.clone());
            let b = SurgeryResult::Seifert(n);
            prop_assert!(surgery_homeomorphic(&a, &b).unwrap());
            prop_assert!(surgery_homeomorphic(&b, &a).unwrap());
        }
    }

    #[test]
    fn reversal_is_an_involution(s in seifert()) {
        let r = s.reverse_orientation();
        prop_assert_eq!(r.euler_number(), -s.euler_number());
        prop_assert_eq!(r.reverse_orientation().normalize(), s.normalize());
    }

    #[test]
    fn lens_d_symmetric_under_conjugation((p, q) in coprime_pair(60), i in 0i64..60) {
        let i = i % p;
        let j = conjugate_index(p, q, i).unwrap();
        prop_assert_eq!(d_invariant(p, q, i).unwrap(), d_invariant(p, q, j).unwrap());
    }

    #[test]
    fn homeomorphic_lens_spaces_share_multisets((p, q) in coprime_pair(80)) {
        let a = LensSpace::new(p, q).unwrap();
        let b = LensSpace::new(p, mod_inverse(q, p).unwrap()).unwrap();
        prop_assert!(lens_homeo(&a, &b, true));
        prop_assert_eq!(lens_d_multiset(&a), lens_d_multiset(&b));
        let neg: Vec<Rational> = {
            let mut v: Vec<Rational> = d_multiset(p, q).unwrap().into_iter().map(|d| -d).collect();
            v.sort();
            v
        };
        prop_assert_eq!(lens_d_multiset(&a.reverse()), neg);
    }

    #[test]
    fn lens_d_bound((p, q) in coprime_pair(150)) {
        prop_assert!(d_bound_holds(p, q).unwrap());
    }

    #[test]
    fn unknot_surgery_is_lens((p, q) in coprime_pair(50)) {
        let lens = d_multiset(p, q).unwrap();
        prop_assert_eq!(d_surgery_multiset(&ZeroTable, p, q).unwrap(), lens);
    }

    #[test]
    fn surgery_d_conjugation_invariant(k in torus_knot(), (p, q) in slope(120, 6), i in 0i64..120) {
        prop_assume!(p > 0);
        let st = staircase_torus(&k).unwrap();
        let i = i % p;
        let j = conjugate_index(p, q, i).unwrap();
        prop_assert_eq!(d_surgery(&st, p, q, i).unwrap(), d_surgery(&st, p, q, j).unwrap());
    }

    #[test]
    fn torsion_round_trip(k in torus_knot()) {
        let alex = k.alexander();
        let t = torsion_coefficients(&alex).unwrap();
        prop_assert_eq!(alexander_from_torsion(&t.as_map()).unwrap(), alex);
        let st = staircase_torus(&k).unwrap();
        prop_assert_eq!(st.genus(), k.genus());
        for j in 0..=k.genus() + 1 {
            prop_assert!(st.v(j) >= st.v(j + 1) && st.v(j) - st.v(j + 1) <= 1);
            prop_assert_eq!(st.h(-j), st.v(j));
        }
    }

    #[test]
    fn torus_surgery_h1_is_p(k in torus_knot(), (p, q) in slope(400, 7)) {
        let m = surgery_torus_knot(k.r(), k.s(), p, q).unwrap();
        prop_assert_eq!(m.h1_order(), Some(p.abs()));
        let mirror = surgery_torus_knot(k.r(), -k.s(), -p, q).unwrap();
        prop_assert_eq!(mirror.reversed(), m.resolve());
    }

    #[test]
    fn cable_surgery_reduces_to_companion(k in torus_knot(), w in 2i64..4, c in 1i64..40, q in 2i64..5, sign in prop::bool::ANY) {
        prop_assume!(gcd(w, c) == 1);
        let cable = CableKnot::new(w, c, k).unwrap();
        let p = q * w * c + if sign { 1 } else { -1 };
        let direct = surgery_torus_knot(k.r(), k.s(), p, q * w * w).unwrap();
        let via = surgery_cable(&cable, p, q).unwrap();
        prop_assert_eq!(via.h1_order(), Some(p.abs()));
        prop_assert_eq!(via, direct);
    }

    #[test]
    fn tower_gradings_step_by_floor((p, q) in slope(90, 6), i in 0i64..90, s in -6i64..6) {
        prop_assume!(p > 0);
        let i = i % p;
        let step = b_tower_grading(p, q, i, s + 1).unwrap() - b_tower_grading(p, q, i, s).unwrap();
        prop_assert_eq!(step, Rational::integer(2 * floor_div(i + p * s, q)));
    }

    #[test]
    fn grading_sums_differ_by_t(q in 2i64..9, t in -5i64..=5, m in 0i64..10, p in 1i64..200) {
        prop_assume!(t != 0 && gcd(p, q) == 1);
        let (a, b) = grading_match_sums(m, t, p, q).unwrap();
        prop_assert_eq!(b - a, t.abs());
    }

    #[test]
    fn affine_maps_include_identity_and_conjugation((p, q) in coprime_pair(40)) {
        let maps = enumerate_affine_maps(p, q).unwrap();
        prop_assert!(maps.iter().any(|m| m.a % p == 1 % p && m.b == 0));
        prop_assert!(maps.iter().any(|m| m.a == p - 1));
        for m in &maps {
            prop_assert!(m.map_type.is_some());
        }
    }

    #[test]
    fn rational_text_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
        let r = Rational::new(n, d);
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
    }

    #[test]
    fn knot_text_round_trip(k in torus_knot(), w in 2i64..5, c in -30i64..30) {
        let t = Knot::Torus(k);
        prop_assert_eq!(t.to_string().parse::<Knot>().unwrap(), t);
        if gcd(w, c) == 1 {
            let cable = Knot::Cable(CableKnot::new(w, c, k).unwrap());
            prop_assert_eq!(cable.to_string().parse::<Knot>().unwrap(), cable);
        }
    }

    #[test]
    fn census_row_round_trip(r in 2i64..9, s in 3i64..60, p in 1i64..500, q in 2i64..6, verified in prop::bool::ANY) {
        let rec = CensusRecord { r, s, p, q, w: q, c: 2 * s + 1, companion_r: r, companion_b: 3, verified };
        prop_assert_eq!(rec.to_tsv_row().parse::<CensusRecord>().unwrap(), rec);
    }
}
