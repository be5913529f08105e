//! Structural invariants over randomly chosen small rings and gradings.

mod common;

use std::sync::Arc;

use common::sample;
use gradnil::constructions::{product_grading, triangular_graded};
use gradnil::nilclean::{
    graded_m_nil_clean_witness, graded_m_nil_clean_witness_any_component, is_graded_m_nil_clean_ring,
    is_m_nil_clean_ring, lift_m_potent, pi_regular_witness, strongly_pi_regular_from_m_nil_clean,
    strongly_pi_regular_uniqueness_check,
};
use gradnil::ring::set_from;
use gradnil::{Degree, DegreeOf, FiniteGroup, FiniteRing, Grading, GradingGroup, Limits};
use proptest::prelude::*;

fn grading() -> impl Strategy<Value = Arc<Grading>> {
    (0u8..7, 2usize..7, 1usize..5, 0usize..4, 0usize..4)
        .prop_filter_map("too large", |(kind, n, k, a, b)| sample(kind, n, k, (a, b)))
}

fn holds(g: &Grading, m: u64, strong: bool) -> bool {
    is_graded_m_nil_clean_ring(g, m, strong).unwrap().holds
}

/// The hypotheses shared by the quotient, lifting and triangular laws.
fn tf_unit(g: &Grading, m: u64) -> bool {
    g.group().is_m_torsion_free(m - 1) && g.ring().is_unit(g.ring().integer(m as i64 - 1))
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 48,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn torsion_matches_definition(orders in prop::collection::vec(1usize..7, 1..3), m in 1u64..9) {
        let g = orders.iter().fold(FiniteGroup::cyclic(1).unwrap(), |acc, &k| {
            FiniteGroup::direct_product(&acc, &FiniteGroup::cyclic(k).unwrap())
        });
        let expected = (1..g.order()).all(|x| g.pow(x, m) != 0);
        prop_assert_eq!(g.is_m_torsion_free(m), expected);
        prop_assert_eq!(GradingGroup::finite(g).is_m_torsion_free(m), expected);
    }

    #[test]
    fn element_classes_are_consistent(g in grading()) {
        let r = g.ring();
        for x in r.elements() {
            if r.size() > 1 {
                prop_assert!(!(r.is_nilpotent(x) && r.is_unit(x)));
            }
            prop_assert_eq!(r.is_m_potent(x, 2), r.mul(x, x) == x);
            let c = r.classify(x, &[2]);
            prop_assert_eq!(c.nilpotency_index.is_some(), c.is_nilpotent);
            prop_assert!(c.distinct_powers <= r.size());
        }
    }

    #[test]
    fn radical_is_ideal_and_quotient_is_semiprimitive(g in grading()) {
        let limits = Limits::default();
        let r = g.ring();
        let j = r.jacobson_radical(&limits).unwrap();
        let set = set_from(r.size(), j.iter().copied());
        prop_assert!(r.check_two_sided_ideal(&set).is_ok());
        if r.size() > 1 {
            prop_assert!(!set.contains(r.one()));
        }
        let q = r.quotient(&set, &limits).unwrap();
        prop_assert_eq!(q.ring.jacobson_radical(&limits).unwrap(), vec![0]);
    }

    #[test]
    fn powers_of_homogeneous_elements_stay_homogeneous(g in grading()) {
        let r = g.ring();
        let group = g.group();
        for (x, d) in g.homogeneous_elements() {
            let DegreeOf::Homogeneous(d) = d else { continue };
            let mut p = x;
            for k in 1..=6u64 {
                prop_assert!(p == 0 || g.degree_of(p) == DegreeOf::Homogeneous(group.pow(d, k)));
                p = r.mul(p, x);
            }
        }
    }

    #[test]
    fn graded_radical_identities(g in grading()) {
        let limits = Limits::default();
        let jg = g.graded_jacobson_radical(&limits).unwrap();
        let r = g.ring();
        prop_assert!(r.check_two_sided_ideal(&jg.elements).is_ok());
        prop_assert!(g.is_homogeneous_set(&jg.elements));
        // homogeneous elements of J(R) lie in the graded radical
        for x in r.jacobson_radical(&limits).unwrap() {
            if g.is_homogeneous(x) {
                prop_assert!(jg.contains(x));
            }
        }
        if matches!(g.group(), GradingGroup::Finite(_)) {
            let (re, embedding) = g.identity_component_ring(&limits).unwrap();
            let jre: Vec<usize> = re.jacobson_radical(&limits).unwrap().into_iter().map(|i| embedding[i]).collect();
            let meet: Vec<usize> = embedding.iter().copied().filter(|&x| jg.contains(x)).collect();
            prop_assert_eq!(jre, meet);
        }
    }

    #[test]
    fn graded_quotients_preserve_degrees(g in grading()) {
        let limits = Limits::default();
        let jg = g.graded_jacobson_radical(&limits).unwrap();
        let q = g.graded_quotient(&jg.elements, &limits).unwrap();
        for (x, d) in g.homogeneous_elements() {
            let y = q.projection[x];
            if y != 0 {
                prop_assert_eq!(q.grading.degree_of(y), d);
            }
        }
    }

    #[test]
    fn component_search_agrees_with_unrestricted(g in grading(), m in 2u64..5, strong: bool) {
        for (x, _) in g.homogeneous_elements() {
            let restricted = graded_m_nil_clean_witness(&g, x, m, strong).unwrap();
            let any = graded_m_nil_clean_witness_any_component(&g, x, m, strong).unwrap();
            prop_assert_eq!(restricted.is_some(), any.is_some(), "x={}", x);
            if let Some(c) = restricted {
                prop_assert!(c.verify_graded(&g));
                if strong {
                    let pi = strongly_pi_regular_from_m_nil_clean(g.ring(), c.f, c.n, m).unwrap();
                    prop_assert!(pi.is_some());
                }
            }
        }
    }

    #[test]
    fn strongly_pi_regular_decompositions_are_unique(g in grading()) {
        let r = g.ring();
        for x in r.elements().step_by(1 + r.size() / 64) {
            prop_assert!(strongly_pi_regular_uniqueness_check(r, x));
        }
    }

    #[test]
    fn necessary_conditions_hold(g in grading(), m in 2u64..6) {
        let limits = Limits::default();
        if !is_graded_m_nil_clean_ring(&g, m, false).unwrap().holds {
            return Ok(());
        }
        let (re, _) = g.identity_component_ring(&limits).unwrap();
        prop_assert!(gradnil::nilclean::is_m_nil_clean_ring(&re, m, false).unwrap().holds);
        if g.group().is_m_torsion_free(m - 1) {
            let e = g.group().identity();
            for (x, d) in g.homogeneous_elements() {
                if d != DegreeOf::Homogeneous(e) && d != DegreeOf::Zero {
                    prop_assert!(g.ring().is_nilpotent(x));
                }
            }
        }
        prop_assert!(g.is_graded_nil(&g.graded_jacobson_radical(&limits).unwrap().elements));
    }

    #[test]
    fn nonzero_m_potents_have_torsion_degree(g in grading(), m in 2u64..6) {
        for (x, d) in g.homogeneous_elements() {
            if let DegreeOf::Homogeneous(h) = d {
                if g.ring().is_m_potent(x, m) {
                    prop_assert_eq!(g.group().pow(h, m - 1), g.group().identity());
                }
            }
        }
    }

    #[test]
    fn quotients_by_graded_nil_ideals_agree(g in grading(), m in 2u64..5) {
        prop_assume!(tf_unit(&g, m));
        let limits = Limits::default();
        let jg = g.graded_jacobson_radical(&limits).unwrap().elements;
        prop_assume!(g.is_graded_nil(&jg));
        let q = g.graded_quotient(&jg, &limits).unwrap();
        prop_assert_eq!(holds(&g, m, false), holds(&q.grading, m, false));
    }

    #[test]
    fn homomorphic_images_inherit(g in grading(), m in 2u64..5, pick in any::<prop::sample::Index>()) {
        prop_assume!(holds(&g, m, false));
        let limits = Limits::default();
        let hom = g.homogeneous_elements();
        let x = hom[pick.index(hom.len())].0;
        let ideal = g.homogeneous_two_sided_closure(&[x]).unwrap();
        let q = g.graded_quotient(&ideal.elements, &limits).unwrap();
        prop_assert!(holds(&q.grading, m, false));
    }

    #[test]
    fn products_hold_iff_every_factor_does(
        a in (0u8..7, 2usize..5, 0usize..4, 0usize..4),
        b in (0u8..7, 2usize..5, 0usize..4, 0usize..4),
        k in 1usize..3,
        m in 2u64..5,
        strong: bool,
    ) {
        let (Some(ga), Some(gb)) = (sample(a.0, a.1, k, (a.2, a.3)), sample(b.0, b.1, k, (b.2, b.3))) else {
            return Ok(());
        };
        prop_assume!(ga.group() == gb.group() && ga.ring().size() * gb.ring().size() <= 1024);
        let p = product_grading(&[ga.clone(), gb.clone()], &Limits::default()).unwrap();
        prop_assert_eq!(holds(&p, m, strong), holds(&ga, m, strong) && holds(&gb, m, strong));
    }

    #[test]
    fn lifts_exist_modulo_the_radical(g in grading(), m in 2u64..5) {
        let r = g.ring();
        prop_assume!(r.is_unit(r.integer(m as i64 - 1)));
        // J(R) of a finite ring is nil.
        let j = set_from(r.size(), r.jacobson_radical(&Limits::default()).unwrap());
        for x in r.elements() {
            if j.contains(r.sub(r.pow(x, m), x)) {
                let f = lift_m_potent(r, x, &j, m).unwrap();
                prop_assert!(f.is_some_and(|f| r.is_m_potent(f, m) && j.contains(r.sub(f, x))), "x={}", x);
            }
        }
    }

    #[test]
    fn triangular_rings_agree_with_their_base(
        n in 2usize..5,
        k in 1usize..4,
        s in prop::collection::vec(0i64..3, 3),
        big in any::<bool>(),
        m in 2u64..5,
    ) {
        let base = common::concentrated(FiniteRing::zn(n).unwrap(), common::cyclic(k));
        prop_assume!(tf_unit(&base, m));
        let size = if big && n <= 3 { 3 } else { 2 };
        prop_assume!(n.pow((size * (size + 1) / 2) as u32) <= 1024);
        let sigma: Vec<Degree> = s[..size].iter().map(|&d| Degree(d % k as i64)).collect();
        let (t, zd) = triangular_graded(&base, size, &sigma, &Limits::default()).unwrap();
        prop_assert_eq!(holds(&t, m, false), holds(&base, m, false));
        prop_assert!(t.is_graded_nil(&zd.elements));
        let q = t.graded_quotient(&zd.elements, &Limits::default()).unwrap();
        prop_assert_eq!(holds(&q.grading, m, false), holds(&t, m, false));
    }

    #[test]
    fn vanishing_cross_products_suffice(g in grading(), m in 2u64..5) {
        prop_assume!(matches!(g.group(), GradingGroup::Finite(_)));
        let r = g.ring();
        let e = g.group().identity();
        let vanish = g.support().into_iter().filter(|&d| d != e).all(|d| {
            let inv = g.group().inv(d);
            g.component_members(d).iter().all(|&a| g.component_members(inv).iter().all(|&b| r.mul(a, b) == 0))
        });
        prop_assume!(vanish);
        let (re, _) = g.identity_component_ring(&Limits::default()).unwrap();
        prop_assume!(is_m_nil_clean_ring(&re, m, false).unwrap().holds);
        prop_assert!(holds(&g, m, false));
    }

    #[test]
    fn identity_component_is_strongly_pi_regular(g in grading(), m in 2u64..5) {
        prop_assume!(holds(&g, m, false));
        let (re, _) = g.identity_component_ring(&Limits::default()).unwrap();
        for a in re.elements() {
            prop_assert!(pi_regular_witness(&re, a).is_some(), "a={}", a);
        }
    }

    #[test]
    fn gf_units_are_cyclic(p in prop::sample::select(vec![2u64, 3, 5, 7]), k in 1u32..4) {
        prop_assume!(p.pow(k) <= 343);
        let f = FiniteRing::gf(p, k).unwrap();
        let q = f.size() as u64;
        let generator = (1..f.size()).any(|a| (1..q - 1).all(|e| f.pow(a, e) != f.one()));
        prop_assert!(generator);
        prop_assert!((0..f.size()).all(|a| f.pow(a, q) == a));
    }
}

#[test]
fn integer_group_is_torsion_free() {
    for m in 1..10 {
        assert!(GradingGroup::Integers.is_m_torsion_free(m));
    }
    assert_eq!(GradingGroup::Integers.pow(Degree(-2), 3), Degree(-6));
}
