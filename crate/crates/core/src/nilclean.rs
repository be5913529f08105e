//! Decision procedures and certificates for (strongly) m-nil clean and
//! π-regular decompositions, graded and ungraded.
//!
//! Searches walk candidates in ascending element order, so certificates are
//! deterministic. Ring-level quantifiers run in parallel but always report
//! the least failing element.

use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grading::{DegreeOf, Grading};
use crate::ring::{Elem, FiniteRing, ZERO};

/// `x = f + n` with `f^m = f` and `n` nilpotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilCleanCertificate {
    pub x: Elem,
    pub f: Elem,
    pub n: Elem,
    pub m: u64,
    pub commuting: bool,
    /// Shared degree of `x`, `f` and `n` for graded certificates.
    pub degree: Option<DegreeOf>,
}

impl NilCleanCertificate {
    pub fn verify(&self, ring: &FiniteRing) -> bool {
        ring.add(self.f, self.n) == self.x
            && ring.is_m_potent(self.f, self.m)
            && ring.is_nilpotent(self.n)
            && self.commuting == ring.commutes(self.f, self.n)
    }

    /// Additionally checks that `f` and `n` are zero or of the degree of `x`.
    pub fn verify_graded(&self, grading: &Grading) -> bool {
        let dx = grading.degree_of(self.x);
        let same = |y: Elem| y == ZERO || grading.degree_of(y) == dx;
        self.verify(grading.ring()) && dx.is_homogeneous() && same(self.f) && same(self.n)
    }
}

/// `a = f + u` with `f` idempotent, `u` a unit, `af = fa` and `faf` nilpotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiRegularCertificate {
    pub a: Elem,
    pub f: Elem,
    pub u: Elem,
}

impl PiRegularCertificate {
    pub fn verify(&self, ring: &FiniteRing) -> bool {
        let (a, f, u) = (self.a, self.f, self.u);
        ring.add(f, u) == a
            && ring.is_idempotent(f)
            && ring.is_unit(u)
            && ring.commutes(a, f)
            && ring.is_nilpotent(ring.mul(ring.mul(f, a), f))
    }

    /// Additionally requires `f` and `u` to be homogeneous.
    pub fn verify_graded(&self, grading: &Grading) -> bool {
        self.verify(grading.ring()) && grading.is_homogeneous(self.f) && grading.is_homogeneous(self.u)
    }
}

/// Outcome of a ring-level quantifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingVerdict {
    pub holds: bool,
    /// Least element without a certificate.
    pub failing: Option<Elem>,
    /// The failing element was found by the necessary-condition pre-pass
    /// and no smaller element fails.
    pub by_prepass: bool,
}

impl RingVerdict {
    fn from_failing(failing: Option<Elem>, by_prepass: bool) -> Self {
        RingVerdict {
            holds: failing.is_none(),
            failing,
            by_prepass: failing.is_some() && by_prepass,
        }
    }
}

impl fmt::Display for RingVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.failing {
            None => f.write_str("holds"),
            Some(x) => write!(f, "fails at {x}"),
        }
    }
}

fn check_m(m: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("m must be at least 2, got {m}")));
    }
    Ok(())
}

fn certificate_from(
    ring: &FiniteRing,
    x: Elem,
    candidates: &[Elem],
    m: u64,
    strong: bool,
    degree: Option<DegreeOf>,
) -> Option<NilCleanCertificate> {
    candidates.iter().find_map(|&f| {
        let n = ring.sub(x, f);
        if !ring.is_nilpotent(n) {
            return None;
        }
        let commuting = ring.commutes(f, n);
        (!strong || commuting).then_some(NilCleanCertificate {
            x,
            f,
            n,
            m,
            commuting,
            degree,
        })
    })
}

/// First certificate over the m-potents of `ring` in ascending order.
pub fn m_nil_clean_witness(ring: &FiniteRing, x: Elem, m: u64, strong: bool) -> Result<Option<NilCleanCertificate>> {
    check_m(m)?;
    let cert = certificate_from(ring, x, &ring.m_potents(m), m, strong, None);
    debug_assert!(cert.as_ref().is_none_or(|c| c.verify(ring)));
    Ok(cert)
}

/// Homogeneous certificate with `f` drawn from the component of `x`
/// (0 included), which suffices for homogeneous `x`.
pub fn graded_m_nil_clean_witness(
    grading: &Grading,
    x: Elem,
    m: u64,
    strong: bool,
) -> Result<Option<NilCleanCertificate>> {
    check_m(m)?;
    let ring = grading.ring();
    let degree = grading.degree_of(x);
    let cert = match degree {
        DegreeOf::NotHomogeneous => return Err(Error::NotHomogeneous { x }),
        DegreeOf::Zero => certificate_from(ring, x, &[ZERO], m, strong, Some(degree)),
        DegreeOf::Homogeneous(d) => {
            let comp = grading.component_index(d).expect("degree of a nonzero element is in the support");
            certificate_from(ring, x, &grading.component_m_potents(comp, m), m, strong, Some(degree))
        }
    };
    debug_assert!(cert.as_ref().is_none_or(|c| c.verify_graded(grading)));
    Ok(cert)
}

/// Like [`graded_m_nil_clean_witness`], but `f` ranges over every
/// homogeneous m-potent and only `x - f` being homogeneous is required.
pub fn graded_m_nil_clean_witness_any_component(
    grading: &Grading,
    x: Elem,
    m: u64,
    strong: bool,
) -> Result<Option<NilCleanCertificate>> {
    check_m(m)?;
    let degree = grading.degree_of(x);
    if !degree.is_homogeneous() {
        return Err(Error::NotHomogeneous { x });
    }
    let ring = grading.ring();
    let candidates: Vec<Elem> = grading
        .homogeneous_elements()
        .into_iter()
        .map(|(f, _)| f)
        .filter(|&f| ring.is_m_potent(f, m) && grading.is_homogeneous(ring.sub(x, f)))
        .collect();
    Ok(certificate_from(ring, x, &candidates, m, strong, Some(degree)))
}

/// Every homogeneous element has a graded certificate.
///
/// A pre-pass applies the necessary conditions first: `R_e` must be
/// m-nil clean, and when the group is (m-1)-torsion free every homogeneous
/// element off degree e must be nilpotent. Flagged elements are confirmed
/// by the component search, after which only smaller elements remain.
pub fn is_graded_m_nil_clean_ring(grading: &Grading, m: u64, strong: bool) -> Result<RingVerdict> {
    check_m(m)?;
    let ring = grading.ring();
    let e = grading.group().identity();
    let torsion_free = grading.group().is_m_torsion_free(m - 1);
    let homogeneous: Vec<(Elem, DegreeOf)> = grading.homogeneous_elements();
    let fails = |x: Elem| -> bool {
        graded_m_nil_clean_witness(grading, x, m, strong)
            .expect("homogeneous by construction")
            .is_none()
    };

    let prepass = homogeneous
        .par_iter()
        .filter(|(x, d)| match d {
            DegreeOf::Homogeneous(g) if *g == e => fails(*x),
            DegreeOf::Homogeneous(_) => torsion_free && !ring.is_nilpotent(*x) && fails(*x),
            _ => false,
        })
        .map(|(x, _)| *x)
        .min();
    let bound = prepass.unwrap_or(Elem::MAX);
    let full = homogeneous
        .par_iter()
        .filter(|(x, _)| *x < bound)
        .map(|(x, _)| *x)
        .find_first(|&x| fails(x));
    Ok(match full {
        Some(x) => RingVerdict::from_failing(Some(x), false),
        None => RingVerdict::from_failing(prepass, true),
    })
}

/// Every element of the ring has a certificate.
pub fn is_m_nil_clean_ring(ring: &FiniteRing, m: u64, strong: bool) -> Result<RingVerdict> {
    check_m(m)?;
    let potents = ring.m_potents(m);
    let failing = ring
        .elements()
        .into_par_iter()
        .find_first(|&x| certificate_from(ring, x, &potents, m, strong, None).is_none());
    Ok(RingVerdict::from_failing(failing, false))
}

fn pi_regular_from(ring: &FiniteRing, a: Elem, idempotents: &[Elem], homogeneous: impl Fn(Elem) -> bool) -> Option<PiRegularCertificate> {
    idempotents.iter().find_map(|&f| {
        let u = ring.sub(a, f);
        let cert = PiRegularCertificate { a, f, u };
        (homogeneous(u) && cert.verify(ring)).then_some(cert)
    })
}

/// `a = f + u` over homogeneous idempotents `f` and homogeneous units `u`.
pub fn graded_pi_regular_witness(grading: &Grading, a: Elem) -> Result<Option<PiRegularCertificate>> {
    if !grading.is_homogeneous(a) {
        return Err(Error::NotHomogeneous { x: a });
    }
    let ring = grading.ring();
    let idempotents: Vec<Elem> = ring
        .idempotents()
        .iter()
        .copied()
        .filter(|&f| grading.is_homogeneous(f))
        .collect();
    Ok(pi_regular_from(ring, a, &idempotents, |u| grading.is_homogeneous(u)))
}

/// Ungraded strongly π-regular decomposition, if any.
pub fn pi_regular_witness(ring: &FiniteRing, a: Elem) -> Option<PiRegularCertificate> {
    pi_regular_from(ring, a, &ring.idempotents(), |_| true)
}

/// From `a = f + n` (f m-potent, n nilpotent, fn = nf) builds
/// `a = (1 - f^(m-1)) + (v + n)` with `v = f + f^(m-1) - 1`.
/// `Ok(None)` means the built pair failed verification.
pub fn strongly_pi_regular_from_m_nil_clean(
    ring: &FiniteRing,
    f: Elem,
    n: Elem,
    m: u64,
) -> Result<Option<PiRegularCertificate>> {
    check_m(m)?;
    if !ring.is_m_potent(f, m) {
        return Err(Error::Hypothesis(format!("{f} is not {m}-potent")));
    }
    if !ring.is_nilpotent(n) {
        return Err(Error::Hypothesis(format!("{n} is not nilpotent")));
    }
    if !ring.commutes(f, n) {
        return Err(Error::Hypothesis(format!("{f} and {n} do not commute")));
    }
    let p = ring.pow(f, m - 1);
    let idempotent = ring.sub(ring.one(), p);
    let v = ring.sub(ring.add(f, p), ring.one());
    let cert = PiRegularCertificate {
        a: ring.add(f, n),
        f: idempotent,
        u: ring.add(v, n),
    };
    Ok(cert.verify(ring).then_some(cert))
}

/// All strongly π-regular decompositions of `a`, ascending by idempotent.
pub fn pi_regular_decompositions(ring: &FiniteRing, a: Elem) -> Vec<PiRegularCertificate> {
    ring.idempotents()
        .iter()
        .map(|&f| PiRegularCertificate { a, f, u: ring.sub(a, f) })
        .filter(|c| c.verify(ring))
        .collect()
}

/// At most one strongly π-regular decomposition exists.
pub fn strongly_pi_regular_uniqueness_check(ring: &FiniteRing, a: Elem) -> bool {
    pi_regular_decompositions(ring, a).len() <= 1
}

/// An m-potent `f` with `f - x` in the nil ideal `ideal`, the least such in
/// the coset `x + I`. `Ok(None)` means none exists although the hypotheses
/// hold.
pub fn lift_m_potent(ring: &FiniteRing, x: Elem, ideal: &FixedBitSet, m: u64) -> Result<Option<Elem>> {
    check_m(m)?;
    if !ring.is_unit(ring.integer(m as i64 - 1)) {
        return Err(Error::Hypothesis(format!("{} is not a unit", m - 1)));
    }
    ring.check_two_sided_ideal(ideal)?;
    let members: Vec<Elem> = ideal.ones().collect();
    if !ring.is_nil_set(&members) {
        return Err(Error::Hypothesis("the ideal is not nil".into()));
    }
    if !ideal.contains(ring.sub(ring.pow(x, m), x)) {
        return Err(Error::Hypothesis(format!("x^{m} - x is not in the ideal")));
    }
    Ok(members
        .iter()
        .map(|&i| ring.add(x, i))
        .filter(|&f| ring.is_m_potent(f, m))
        .min())
}

/// Both sides of an equivalence, evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    /// The side with the auxiliary m-potent `g`.
    pub lhs: bool,
    /// `a` is (graded) strongly m-nil clean.
    pub rhs: bool,
    /// The least `g` making `lhs` true.
    pub g: Option<Elem>,
}

impl Equivalence {
    pub fn agrees(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// For a strongly π-regular decomposition `a = f + u`: compares "some
/// m-potent `g` commutes with `f` and `u` and `f - g + u` is nilpotent" with
/// "`a` is strongly m-nil clean".
pub fn prop_commuting_equivalence_check(
    ring: &FiniteRing,
    a: Elem,
    f: Elem,
    u: Elem,
    m: u64,
) -> Result<Equivalence> {
    check_m(m)?;
    if !(PiRegularCertificate { a, f, u }).verify(ring) {
        return Err(Error::Hypothesis(format!("({f}, {u}) is not a strongly pi-regular decomposition of {a}")));
    }
    let g = ring.m_potents(m).iter().copied().find(|&g| {
        ring.commutes(g, f) && ring.commutes(g, u) && ring.is_nilpotent(ring.add(ring.sub(f, g), u))
    });
    let rhs = m_nil_clean_witness(ring, a, m, true)?.is_some();
    Ok(Equivalence { lhs: g.is_some(), rhs, g })
}

/// Graded form: `g` must be an m-potent of `R_e` and `u` must lie in `R_e`;
/// the other side is graded strong m-nil cleanness of `a`. Requires an
/// (m-1)-torsion free group and a homogeneous decomposition.
pub fn graded_commuting_equivalence_check(
    grading: &Grading,
    a: Elem,
    f: Elem,
    u: Elem,
    m: u64,
) -> Result<Equivalence> {
    check_m(m)?;
    if !grading.group().is_m_torsion_free(m - 1) {
        return Err(Error::Hypothesis(format!(
            "{} is not {}-torsion free",
            grading.group().label(),
            m - 1
        )));
    }
    if !grading.is_homogeneous(a) {
        return Err(Error::NotHomogeneous { x: a });
    }
    if !(PiRegularCertificate { a, f, u }).verify_graded(grading) {
        return Err(Error::Hypothesis(format!(
            "({f}, {u}) is not a graded strongly pi-regular decomposition of {a}"
        )));
    }
    let ring = grading.ring();
    let re = grading.identity_component();
    let u_in_re = re.binary_search(&u).is_ok();
    let g = if u_in_re {
        re.iter().copied().find(|&g| {
            ring.is_m_potent(g, m)
                && ring.commutes(g, f)
                && ring.commutes(g, u)
                && ring.is_nilpotent(ring.add(ring.sub(f, g), u))
        })
    } else {
        None
    };
    let rhs = graded_m_nil_clean_witness(grading, a, m, true)?.is_some();
    Ok(Equivalence { lhs: g.is_some(), rhs, g })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::constructions::triangular_graded;
    use crate::group::{Degree, FiniteGroup, GradingGroup};
    use crate::limits::Limits;
    use crate::ring::set_from;

    fn remark_ring(field: FiniteRing) -> Grading {
        let c2 = GradingGroup::finite(FiniteGroup::cyclic(2).unwrap());
        let base = Grading::concentrated(Arc::new(field), c2, &Limits::default()).unwrap();
        triangular_graded(&base, 2, &[Degree(0), Degree(1)], &Limits::default()).unwrap().0
    }

    #[test]
    fn element_witnesses() {
        let z4 = FiniteRing::zn(4).unwrap();
        let c = m_nil_clean_witness(&z4, 3, 2, false).unwrap().unwrap();
        assert_eq!((c.f, c.n), (1, 2));
        let c = m_nil_clean_witness(&z4, 0, 2, true).unwrap().unwrap();
        assert_eq!((c.f, c.n), (0, 0));
        let f3 = FiniteRing::gf(3, 1).unwrap();
        let c = m_nil_clean_witness(&f3, 2, 3, true).unwrap().unwrap();
        assert_eq!((c.f, c.n), (2, 0));
        assert!(m_nil_clean_witness(&f3, 2, 1, false).is_err());
    }

    #[test]
    fn ring_level() {
        let f3 = FiniteRing::gf(3, 1).unwrap();
        assert!(is_m_nil_clean_ring(&f3, 3, true).unwrap().holds);
        assert_eq!(is_m_nil_clean_ring(&f3, 2, false).unwrap().failing, Some(2));
        assert!(is_m_nil_clean_ring(&FiniteRing::zn(4).unwrap(), 2, false).unwrap().holds);

        let r = remark_ring(FiniteRing::gf(3, 1).unwrap());
        assert!(is_graded_m_nil_clean_ring(&r, 3, false).unwrap().holds);
        let v = is_graded_m_nil_clean_ring(&r, 2, false).unwrap();
        assert!(!v.holds);
        // least failing element is 2*E11; 2*identity also fails
        let x = v.failing.unwrap();
        assert!(graded_m_nil_clean_witness(&r, x, 2, false).unwrap().is_none());
        let zero = Grading::trivial(Arc::new(FiniteRing::zn(1).unwrap()), &Limits::default()).unwrap();
        assert!(is_graded_m_nil_clean_ring(&zero, 2, true).unwrap().holds);
    }

    #[test]
    fn strongly_counterexample_remark() {
        let r = remark_ring(FiniteRing::zn(2).unwrap());
        let e12 = 2;
        assert_eq!(r.degree_of(e12), DegreeOf::Homogeneous(Degree(1)));
        let c = graded_m_nil_clean_witness(&r, e12, 2, true).unwrap().unwrap();
        assert_eq!((c.f, c.n), (0, e12));
        assert!(graded_pi_regular_witness(&r, e12).unwrap().is_none());
        let c = graded_pi_regular_witness(&r, 0).unwrap().unwrap();
        assert_eq!((c.f, c.u), (r.ring().one(), r.ring().neg(r.ring().one())));
        let c = graded_pi_regular_witness(&r, r.ring().one()).unwrap().unwrap();
        assert_eq!((c.f, c.u), (0, r.ring().one()));
    }

    #[test]
    fn pi_regular_from_nil_clean() {
        let f3 = FiniteRing::gf(3, 1).unwrap();
        let c = strongly_pi_regular_from_m_nil_clean(&f3, 2, 0, 3).unwrap().unwrap();
        assert_eq!((c.f, c.u), (0, 2));
        let z4 = FiniteRing::zn(4).unwrap();
        let c = strongly_pi_regular_from_m_nil_clean(&z4, 1, 2, 2).unwrap().unwrap();
        assert_eq!((c.f, c.u), (0, 3));
        let c = strongly_pi_regular_from_m_nil_clean(&z4, 0, 0, 2).unwrap().unwrap();
        assert_eq!((c.f, c.u), (1, 3));
        assert!(strongly_pi_regular_from_m_nil_clean(&z4, 2, 0, 2).is_err());
        assert!(strongly_pi_regular_uniqueness_check(&FiniteRing::zn(2).unwrap(), 1));
        assert!(strongly_pi_regular_uniqueness_check(&f3, 0));
        assert!(strongly_pi_regular_uniqueness_check(&z4, 3));
    }

    #[test]
    fn lifting() {
        let z9 = FiniteRing::zn(9).unwrap();
        assert_eq!(lift_m_potent(&z9, 4, &set_from(9, [0, 3, 6]), 3).unwrap(), Some(1));
        assert_eq!(lift_m_potent(&z9, 8, &set_from(9, [0, 3, 6]), 3).unwrap(), Some(8));
        let z4 = FiniteRing::zn(4).unwrap();
        assert_eq!(lift_m_potent(&z4, 3, &set_from(4, [0, 2]), 2).unwrap(), Some(1));
        // 2 is not a unit in Z_4
        assert!(lift_m_potent(&z4, 3, &set_from(4, [0, 2]), 3).is_err());
        // not nil
        assert!(lift_m_potent(&z9, 1, &set_from(9, 0..9), 3).is_err());
    }

    #[test]
    fn commuting_equivalences() {
        let z4 = FiniteRing::zn(4).unwrap();
        let c = pi_regular_witness(&z4, 3).unwrap();
        assert!(prop_commuting_equivalence_check(&z4, 3, c.f, c.u, 2).unwrap().agrees());
        let e = prop_commuting_equivalence_check(&z4, 0, 1, 3, 2).unwrap();
        assert!(e.lhs && e.rhs);
        let f3 = FiniteRing::gf(3, 1).unwrap();
        let c = pi_regular_witness(&f3, 2).unwrap();
        let e = prop_commuting_equivalence_check(&f3, 2, c.f, c.u, 3).unwrap();
        assert!(e.lhs && e.rhs);
        assert!(prop_commuting_equivalence_check(&z4, 3, 1, 1, 2).is_err());

        let r = remark_ring(FiniteRing::gf(3, 1).unwrap());
        assert!(graded_commuting_equivalence_check(&r, 0, r.ring().one(), r.ring().neg(r.ring().one()), 3).is_err());
    }
}
