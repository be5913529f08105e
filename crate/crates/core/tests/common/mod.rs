#![allow(dead_code)]

use std::sync::Arc;

use gradnil::constructions::{diagonal_z_grading, group_ring_graded, matrix_graded, product_grading, triangular_graded, MultMode};
use gradnil::{Degree, FiniteGroup, FiniteRing, Grading, GradingGroup, Limits};

pub fn cyclic(k: usize) -> GradingGroup {
    GradingGroup::finite(FiniteGroup::cyclic(k).unwrap())
}

pub fn concentrated(ring: FiniteRing, group: GradingGroup) -> Arc<Grading> {
    Arc::new(Grading::concentrated(Arc::new(ring), group, &Limits::default()).unwrap())
}

/// Small graded rings indexed by a few integers; `None` when the parameters
/// do not describe a ring of at most 1024 elements.
pub fn sample(kind: u8, n: usize, k: usize, s: (usize, usize)) -> Option<Arc<Grading>> {
    let limits = Limits::default();
    let group = cyclic(k);
    let sigma = [Degree((s.0 % k) as i64), Degree((s.1 % k) as i64)];
    let zn = || FiniteRing::zn(n).unwrap();
    let g = match kind {
        0 => concentrated(zn(), group),
        1 => Arc::new(triangular_graded(&concentrated(zn(), group), 2, &sigma, &limits).ok()?.0),
        2 if n <= 3 => Arc::new(matrix_graded(&concentrated(zn(), group), 2, &sigma, &limits).ok()?),
        3 if n <= 5 => Arc::new(diagonal_z_grading(&Arc::new(zn()), 2, &limits).ok()?),
        4 => {
            let t = triangular_graded(&concentrated(FiniteRing::zn(2).unwrap(), group.clone()), 2, &sigma, &limits)
                .ok()?
                .0;
            Arc::new(product_grading(&[concentrated(zn(), group), Arc::new(t)], &limits).ok()?)
        }
        5 if n.pow(k as u32) <= 1024 => group_ring_graded(&concentrated(zn(), group), MultMode::Standard, &limits)
            .ok()?
            .grading,
        6 => Arc::new(triangular_graded(&concentrated(FiniteRing::gf(2, 2).unwrap(), group), 2, &sigma, &limits).ok()?.0),
        _ => return None,
    };
    (g.ring().size() <= 1024).then_some(g)
}
