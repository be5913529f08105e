//! Library answers against definitional brute force.

mod common;

use std::sync::Arc;

use common::{concentrated, cyclic, sample};
use gradnil::constructions::{group_ring_graded, triangular_graded, MultMode};
use gradnil::nilclean::{is_graded_m_nil_clean_ring, is_m_nil_clean_ring, lift_m_potent};
use gradnil::ring::set_from;
use gradnil::{Degree, DegreeOf, Elem, FiniteRing, Grading, GradingGroup, Limits};

fn bf_unit(r: &FiniteRing, x: Elem) -> bool {
    r.elements().any(|y| r.mul(x, y) == r.one() && r.mul(y, x) == r.one())
}

fn bf_nilpotency(r: &FiniteRing, x: Elem) -> Option<u32> {
    let mut p = x;
    for k in 1..=r.size() as u32 {
        if p == 0 {
            return Some(k);
        }
        p = r.mul(p, x);
    }
    None
}

fn bf_radical(r: &FiniteRing) -> Vec<Elem> {
    r.elements()
        .filter(|&z| r.elements().all(|x| bf_unit(r, r.sub(r.one(), r.mul(x, z)))))
        .collect()
}

/// Every right ideal, as sorted element lists, by subset enumeration.
fn bf_right_ideals(r: &FiniteRing) -> Vec<Vec<Elem>> {
    let n = r.size();
    assert!(n <= 16);
    (0u32..1 << n)
        .filter(|mask| mask & 1 == 1)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s: &Vec<Elem>| {
            let has = |x: Elem| s.binary_search(&x).is_ok();
            s.iter().all(|&a| {
                has(r.neg(a)) && s.iter().all(|&b| has(r.add(a, b))) && r.elements().all(|t| has(r.mul(a, t)))
            })
        })
        .collect()
}

fn bf_graded_maximal(g: &Grading) -> Vec<Vec<Elem>> {
    let r = g.ring();
    let homogeneous: Vec<Vec<Elem>> = bf_right_ideals(r)
        .into_iter()
        .filter(|s| s.len() < r.size())
        .filter(|s| s.iter().all(|&x| g.decompose(x).values().all(|p| s.binary_search(p).is_ok())))
        .collect();
    let mut out: Vec<Vec<Elem>> = homogeneous
        .iter()
        .filter(|s| !homogeneous.iter().any(|t| t.len() > s.len() && s.iter().all(|x| t.contains(x))))
        .cloned()
        .collect();
    out.sort();
    out
}

/// `x = f + n` with `f`, `n` homogeneous (of any degrees), `f^m = f`, `n` nilpotent.
fn bf_graded_element(g: &Grading, x: Elem, m: u64, strong: bool) -> bool {
    let r = g.ring();
    let hom: Vec<Elem> = g.homogeneous_elements().into_iter().map(|p| p.0).collect();
    hom.iter().any(|&f| {
        let n = r.sub(x, f);
        let fm = (0..m - 1).fold(f, |acc, _| r.mul(acc, f));
        fm == f
            && g.is_homogeneous(n)
            && bf_nilpotency(r, n).is_some()
            && (!strong || r.mul(f, n) == r.mul(n, f))
    })
}

fn bf_element(r: &FiniteRing, x: Elem, m: u64, strong: bool) -> bool {
    r.elements().any(|f| {
        let n = r.sub(x, f);
        let fm = (0..m - 1).fold(f, |acc, _| r.mul(acc, f));
        fm == f && bf_nilpotency(r, n).is_some() && (!strong || r.mul(f, n) == r.mul(n, f))
    })
}

fn small_gradings() -> Vec<Arc<Grading>> {
    let limits = Limits::default();
    let mut out = Vec::new();
    for n in 1..=12 {
        out.push(concentrated(FiniteRing::zn(n).unwrap(), GradingGroup::trivial()));
    }
    out.push(concentrated(FiniteRing::gf(2, 2).unwrap(), cyclic(3)));
    let z2 = Arc::new(FiniteRing::zn(2).unwrap());
    out.push(concentrated(FiniteRing::product(&[z2.clone(), z2.clone()], &limits).unwrap(), cyclic(2)));
    for sigma in [[0, 1], [0, 0], [1, 0]] {
        let base = concentrated(FiniteRing::zn(2).unwrap(), cyclic(2));
        let sigma = sigma.map(Degree);
        out.push(Arc::new(triangular_graded(&base, 2, &sigma, &limits).unwrap().0));
    }
    for mode in [MultMode::Standard, MultMode::Twisted] {
        out.push(group_ring_graded(&concentrated(FiniteRing::zn(2).unwrap(), cyclic(2)), mode, &limits).unwrap().grading);
        out.push(group_ring_graded(&concentrated(FiniteRing::zn(2).unwrap(), cyclic(3)), mode, &limits).unwrap().grading);
        out.push(group_ring_graded(&concentrated(FiniteRing::zn(4).unwrap(), cyclic(2)), mode, &limits).unwrap().grading);
    }
    out
}

#[test]
fn classification_matches_definitions() {
    for kind in 0..7 {
        for n in 2..6 {
            for k in 1..4 {
                let Some(g) = sample(kind, n, k, (0, 1)) else { continue };
                let r = g.ring();
                if r.size() > 256 {
                    continue;
                }
                for x in r.elements() {
                    assert_eq!(r.is_unit(x), bf_unit(r, x), "{} {x}", r.label());
                    assert_eq!(r.nilpotency_index(x), bf_nilpotency(r, x), "{} {x}", r.label());
                }
            }
        }
    }
}

#[test]
fn radicals_match_definition() {
    let limits = Limits::default();
    for n in 1..=30 {
        let r = FiniteRing::zn(n).unwrap();
        assert_eq!(r.jacobson_radical(&limits).unwrap(), bf_radical(&r), "Z{n}");
    }
    for g in small_gradings() {
        let r = g.ring();
        assert_eq!(r.jacobson_radical(&limits).unwrap(), bf_radical(r), "{}", r.label());
    }
}

#[test]
fn graded_maximal_ideals_match_subset_enumeration() {
    let limits = Limits::default();
    for g in small_gradings() {
        let found: Vec<Vec<Elem>> = g
            .graded_maximal_right_ideals(&limits)
            .unwrap()
            .into_iter()
            .map(|i| i.members())
            .collect();
        assert_eq!(found, bf_graded_maximal(&g), "{g:?}");
    }
}

#[test]
fn graded_decisions_match_definition() {
    let mut rings = small_gradings();
    for kind in [1, 2, 4, 6] {
        for k in 1..4 {
            if let Some(g) = sample(kind, 2, k, (0, 1)) {
                rings.push(g);
            }
        }
    }
    for g in rings {
        if g.ring().size() > 64 {
            continue;
        }
        for m in 2..=4 {
            for strong in [false, true] {
                let verdict = is_graded_m_nil_clean_ring(&g, m, strong).unwrap();
                let failing = g
                    .homogeneous_elements()
                    .into_iter()
                    .map(|p| p.0)
                    .find(|&x| !bf_graded_element(&g, x, m, strong));
                assert_eq!(verdict.failing, failing, "{g:?} m={m} strong={strong}");
                let r = g.ring();
                let ungraded = r.elements().find(|&x| !bf_element(r, x, m, strong));
                assert_eq!(is_m_nil_clean_ring(r, m, strong).unwrap().failing, ungraded);
            }
        }
    }
}

#[test]
fn lifting_matches_coset_search() {
    let limits = Limits::default();
    for n in 2..=30 {
        let r = FiniteRing::zn(n).unwrap();
        let j = r.jacobson_radical(&limits).unwrap();
        let ideal = set_from(n, j.iter().copied());
        for m in 2..=5u64 {
            if !bf_unit(&r, r.integer(m as i64 - 1)) {
                continue;
            }
            for x in r.elements() {
                let t = r.sub(r.pow(x, m), x);
                if !j.contains(&t) {
                    continue;
                }
                let expected = j.iter().map(|&i| r.add(x, i)).filter(|&f| r.pow(f, m) == f).min();
                assert!(expected.is_some(), "Z{n} m={m} x={x}");
                assert_eq!(lift_m_potent(&r, x, &ideal, m).unwrap(), expected);
            }
        }
    }
}

#[test]
fn degrees_of_spec_examples() {
    let z4 = concentrated(FiniteRing::zn(4).unwrap(), GradingGroup::trivial());
    assert_eq!(z4.homogeneous_elements().len(), 4);
    assert_eq!(z4.degree_of(1), DegreeOf::Homogeneous(Degree(0)));
    let zero = concentrated(FiniteRing::zn(1).unwrap(), GradingGroup::trivial());
    assert_eq!(zero.homogeneous_elements(), vec![(0, DegreeOf::Zero)]);
}
