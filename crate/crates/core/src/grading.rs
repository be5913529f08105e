//! Group gradings of finite rings, homogeneous ideals and the graded
//! Jacobson radical.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use fixedbitset::FixedBitSet;

use crate::error::{Error, GradingViolation, Result};
use crate::group::{Degree, GradingGroup};
use crate::limits::Limits;
use crate::radix::MixedRadix;
use crate::ring::{set_from, Elem, FiniteRing, Quotient, Span, ZERO};

/// Degree of an element: 0 gets its own marker rather than every degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DegreeOf {
    Zero,
    Homogeneous(Degree),
    NotHomogeneous,
}

impl DegreeOf {
    pub fn is_homogeneous(self) -> bool {
        !matches!(self, DegreeOf::NotHomogeneous)
    }

    pub fn degree(self) -> Option<Degree> {
        match self {
            DegreeOf::Homogeneous(d) => Some(d),
            _ => None,
        }
    }
}

impl fmt::Display for DegreeOf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeOf::Zero => f.write_str("zero"),
            DegreeOf::Homogeneous(d) => write!(f, "{d}"),
            DegreeOf::NotHomogeneous => f.write_str("inhomogeneous"),
        }
    }
}

/// A nonzero homogeneous component.
#[derive(Clone, Debug)]
pub struct Component {
    pub degree: Degree,
    /// Ascending, starting with 0.
    pub members: Vec<Elem>,
    pub set: FixedBitSet,
    pub generators: Vec<Elem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sidedness {
    Right,
    TwoSided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousIdeal {
    pub elements: FixedBitSet,
    pub sidedness: Sidedness,
    pub generators: Vec<(Elem, Degree)>,
}

impl HomogeneousIdeal {
    pub fn contains(&self, x: Elem) -> bool {
        self.elements.contains(x)
    }

    pub fn len(&self) -> usize {
        self.elements.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn members(&self) -> Vec<Elem> {
        self.elements.ones().collect()
    }
}

/// A quotient grading and the degree-preserving projection onto it.
pub struct GradedQuotient {
    pub grading: Arc<Grading>,
    pub projection: Vec<Elem>,
    pub representatives: Vec<Elem>,
}

pub struct Grading {
    ring: Arc<FiniteRing>,
    group: GradingGroup,
    components: Vec<Component>,
    by_degree: HashMap<Degree, usize>,
    /// Component of each nonzero homogeneous element.
    component_of: HashMap<Elem, usize>,
    /// Tuple of component indices (mixed radix over component sizes) per element.
    decomposition: Vec<u32>,
    tuple_radix: MixedRadix,
    m_potents: Mutex<HashMap<(usize, u64), Arc<Vec<Elem>>>>,
}

impl fmt::Debug for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<String> = self
            .components
            .iter()
            .map(|c| format!("{}:{}", c.degree, c.members.len()))
            .collect();
        write!(f, "Grading({} over {}, [{}])", self.ring.label(), self.group.label(), sizes.join(" "))
    }
}

impl Grading {
    /// Everything in degree e.
    pub fn trivial(ring: Arc<FiniteRing>, limits: &Limits) -> Result<Self> {
        Self::concentrated(ring, GradingGroup::trivial(), limits)
    }

    /// Everything in degree e of the given group.
    pub fn concentrated(ring: Arc<FiniteRing>, group: GradingGroup, limits: &Limits) -> Result<Self> {
        let gens = ring.additive_generators().to_vec();
        let e = group.identity();
        Self::verify(ring, group, vec![(e, gens)], limits)
    }

    /// Closes each generator list additively and validates the grading axioms.
    pub fn verify(
        ring: Arc<FiniteRing>,
        group: GradingGroup,
        generators: Vec<(Degree, Vec<Elem>)>,
        limits: &Limits,
    ) -> Result<Self> {
        let mut merged: BTreeMap<Degree, Vec<Elem>> = BTreeMap::new();
        for (d, gens) in generators {
            if !group.contains(d) {
                return Err(GradingViolation::DegreeOutsideGroup(d).into());
            }
            if let Some(&x) = gens.iter().find(|&&x| x >= ring.size()) {
                return Err(Error::InvalidArgument(format!("element {x} is outside the ring")));
            }
            merged.entry(d).or_default().extend(gens);
        }
        let spans: Vec<(Degree, Span)> = merged
            .into_iter()
            .map(|(d, gens)| (d, ring.span(gens)))
            .collect();
        Self::assemble(ring, group, spans, limits)
    }

    /// Components given as full element sets; each must be an additive subgroup.
    pub fn from_component_sets(
        ring: Arc<FiniteRing>,
        group: GradingGroup,
        sets: Vec<(Degree, Vec<Elem>)>,
        limits: &Limits,
    ) -> Result<Self> {
        let mut spans = Vec::new();
        for (d, members) in sets {
            if !group.contains(d) {
                return Err(GradingViolation::DegreeOutsideGroup(d).into());
            }
            let set = set_from(ring.size(), members.iter().copied().filter(|&x| x < ring.size()));
            if let Err(Error::NotClosed { x, y, .. }) = ring.check_additive_subgroup(&set) {
                return Err(GradingViolation::NotSubgroup { degree: d, x, y }.into());
            }
            spans.push((d, ring.span(members)));
        }
        spans.sort_by_key(|(d, _)| *d);
        if spans.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidArgument("a degree is listed twice".into()));
        }
        Self::assemble(ring, group, spans, limits)
    }

    fn assemble(
        ring: Arc<FiniteRing>,
        group: GradingGroup,
        spans: Vec<(Degree, Span)>,
        limits: &Limits,
    ) -> Result<Self> {
        let components: Vec<Component> = spans
            .into_iter()
            .filter(|(_, s)| s.len() > 1)
            .map(|(degree, s)| {
                let mut members = s.members;
                members.sort_unstable();
                Component {
                    degree,
                    members,
                    set: s.set,
                    generators: s.generators,
                }
            })
            .collect();

        let product: u128 = components.iter().map(|c| c.members.len() as u128).product();
        if product != ring.size() as u128 {
            return Err(GradingViolation::SizeMismatch { product, size: ring.size() }.into());
        }
        let tuple_radix = MixedRadix::new(components.iter().map(|c| c.members.len()).collect())
            .ok_or_else(|| Error::resource("grading components", crate::radix::MAX_DIGITS as u64, components.len() as u64))?;

        // The sum map on the cartesian product of components must be a bijection.
        let mut decomposition = vec![u32::MAX; ring.size()];
        let mut partial: Vec<(Elem, u32)> = vec![(ZERO, 0)];
        for (i, c) in components.iter().enumerate() {
            let mut next = Vec::with_capacity(partial.len() * c.members.len());
            for &(s, code) in &partial {
                for (j, &x) in c.members.iter().enumerate() {
                    next.push((ring.add(s, x), code + tuple_radix.unit_vector(i, j) as u32));
                }
            }
            partial = next;
        }
        for (x, code) in partial {
            if decomposition[x] != u32::MAX {
                return Err(GradingViolation::NotIndependent { x }.into());
            }
            decomposition[x] = code;
        }
        if let Some(x) = decomposition.iter().position(|&c| c == u32::MAX) {
            return Err(GradingViolation::NotSpanning { x }.into());
        }

        let by_degree: HashMap<Degree, usize> =
            components.iter().enumerate().map(|(i, c)| (c.degree, i)).collect();
        let mut component_of = HashMap::new();
        for (i, c) in components.iter().enumerate() {
            for &x in &c.members[1..] {
                component_of.insert(x, i);
            }
        }

        // Multiplicativity. Exhaustive when affordable; otherwise on component
        // generators, which is equivalent since multiplication is bi-additive.
        let total: u64 = components.iter().map(|c| c.members.len() as u64).sum();
        let exhaustive = total * total <= limits.max_pairs.min(1 << 24);
        for a in &components {
            for b in &components {
                let expected = group.mul(a.degree, b.degree);
                let target = by_degree.get(&expected).map(|&i| &components[i].set);
                let (xs, ys) = if exhaustive {
                    (&a.members, &b.members)
                } else {
                    (&a.generators, &b.generators)
                };
                for &x in xs {
                    for &y in ys {
                        let p = ring.mul(x, y);
                        if p != ZERO && !target.is_some_and(|t| t.contains(p)) {
                            return Err(GradingViolation::Multiplicativity {
                                x,
                                gx: a.degree,
                                y,
                                gy: b.degree,
                                product: p,
                                expected,
                            }
                            .into());
                        }
                    }
                }
            }
        }

        let grading = Grading {
            ring,
            group,
            components,
            by_degree,
            component_of,
            decomposition,
            tuple_radix,
            m_potents: Mutex::new(HashMap::new()),
        };
        let one = grading.ring.one();
        if !grading.ring.is_zero_ring() && grading.degree_of(one) != DegreeOf::Homogeneous(grading.group.identity()) {
            return Err(GradingViolation::IdentityNotNeutral.into());
        }
        Ok(grading)
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, d: Degree) -> Option<&Component> {
        self.by_degree.get(&d).map(|&i| &self.components[i])
    }

    /// Members of `R_d`; just `[0]` outside the support.
    pub fn component_members(&self, d: Degree) -> &[Elem] {
        self.component(d).map_or(&[ZERO][..], |c| &c.members[..])
    }

    pub fn identity_component(&self) -> &[Elem] {
        self.component_members(self.group.identity())
    }

    pub fn support(&self) -> Vec<Degree> {
        self.components.iter().map(|c| c.degree).collect()
    }

    pub fn degree_of(&self, x: Elem) -> DegreeOf {
        if x == ZERO {
            return DegreeOf::Zero;
        }
        match self.component_of.get(&x) {
            Some(&i) => DegreeOf::Homogeneous(self.components[i].degree),
            None => DegreeOf::NotHomogeneous,
        }
    }

    pub fn is_homogeneous(&self, x: Elem) -> bool {
        self.degree_of(x).is_homogeneous()
    }

    /// Each homogeneous element once, ascending, starting with `(0, Zero)`.
    pub fn homogeneous_elements(&self) -> Vec<(Elem, DegreeOf)> {
        let mut out: Vec<(Elem, DegreeOf)> = self
            .component_of
            .iter()
            .map(|(&x, &i)| (x, DegreeOf::Homogeneous(self.components[i].degree)))
            .collect();
        out.push((ZERO, DegreeOf::Zero));
        out.sort_unstable();
        out
    }

    pub fn homogeneous_count(&self) -> usize {
        self.component_of.len() + 1
    }

    /// Nonzero homogeneous parts of `x`, keyed by degree.
    pub fn decompose(&self, x: Elem) -> BTreeMap<Degree, Elem> {
        let digits = self.tuple_radix.decode(self.decomposition[x] as usize);
        self.components
            .iter()
            .enumerate()
            .filter(|&(i, _)| digits[i] != 0)
            .map(|(i, c)| (c.degree, c.members[digits[i]]))
            .collect()
    }

    /// Homogeneous additive generators of the whole ring.
    pub fn homogeneous_generators(&self) -> Vec<Elem> {
        self.components.iter().flat_map(|c| c.generators.iter().copied()).collect()
    }

    fn require_homogeneous(&self, gens: &[Elem]) -> Result<Vec<(Elem, Degree)>> {
        gens.iter()
            .filter(|&&x| x != ZERO)
            .map(|&x| {
                self.degree_of(x)
                    .degree()
                    .map(|d| (x, d))
                    .ok_or(Error::NotHomogeneous { x })
            })
            .collect()
    }

    /// Least right ideal containing the homogeneous `gens`.
    pub fn homogeneous_right_ideal_closure(&self, gens: &[Elem]) -> Result<HomogeneousIdeal> {
        let generators = self.require_homogeneous(gens)?;
        let span = self.right_span(&generators.iter().map(|g| g.0).collect::<Vec<_>>());
        Ok(HomogeneousIdeal {
            elements: span.set,
            sidedness: Sidedness::Right,
            generators,
        })
    }

    /// Least two-sided ideal containing the homogeneous `gens`.
    pub fn homogeneous_two_sided_closure(&self, gens: &[Elem]) -> Result<HomogeneousIdeal> {
        let generators = self.require_homogeneous(gens)?;
        let hgens = self.homogeneous_generators();
        let mut span = self.ring.span(std::iter::empty());
        for &(x, _) in &generators {
            for &r in &hgens {
                let rx = self.ring.mul(r, x);
                self.ring
                    .extend_span(&mut span, hgens.iter().map(|&s| self.ring.mul(rx, s)));
            }
            self.ring.extend_span(&mut span, [x]);
        }
        Ok(HomogeneousIdeal {
            elements: span.set,
            sidedness: Sidedness::TwoSided,
            generators,
        })
    }

    /// Span of `x r` over homogeneous generators `r`; every spanning product is
    /// homogeneous when `x` is.
    fn right_span(&self, xs: &[Elem]) -> Span {
        let hgens = self.homogeneous_generators();
        let mut span = self.ring.span(xs.iter().copied());
        for &x in xs {
            self.ring
                .extend_span(&mut span, hgens.iter().map(|&r| self.ring.mul(x, r)));
        }
        span
    }

    /// `I = sum (I ∩ R_g)`, by counting: the intersections are independent,
    /// so their sizes multiply to `|I|` exactly when they exhaust `I`.
    pub fn is_homogeneous_set(&self, set: &FixedBitSet) -> bool {
        let product: u128 = self
            .components
            .iter()
            .map(|c| c.members.iter().filter(|&&x| set.contains(x)).count() as u128)
            .product();
        product == set.count_ones(..) as u128
    }

    /// Validates an explicit element set as a homogeneous ideal.
    pub fn ideal_from_set(&self, set: FixedBitSet, sidedness: Sidedness) -> Result<HomogeneousIdeal> {
        self.ring.check_ideal(&set, sidedness == Sidedness::TwoSided)?;
        if !self.is_homogeneous_set(&set) {
            let x = set
                .ones()
                .find(|&x| self.decompose(x).values().any(|&p| !set.contains(p)))
                .expect("counting criterion failed, so some part escapes");
            return Err(Error::IdealNotHomogeneous { x });
        }
        let mut span = self.ring.span(std::iter::empty());
        for c in &self.components {
            self.ring
                .extend_span(&mut span, c.members.iter().copied().filter(|&x| set.contains(x)));
        }
        let generators = span
            .generators
            .iter()
            .map(|&x| (x, self.degree_of(x).degree().unwrap()))
            .collect();
        Ok(HomogeneousIdeal {
            elements: set,
            sidedness,
            generators,
        })
    }

    /// Every homogeneous element of the set is nilpotent.
    pub fn is_graded_nil(&self, set: &FixedBitSet) -> bool {
        self.components
            .iter()
            .flat_map(|c| c.members.iter())
            .filter(|&&x| set.contains(x))
            .all(|&x| self.ring.is_nilpotent(x))
    }

    /// All graded-maximal right ideals, sorted by their element lists.
    ///
    /// The lattice of proper homogeneous right ideals is the closure of the
    /// cyclic ones `xR` (x homogeneous) under sums; an ideal is maximal iff
    /// adding any cyclic ideal it misses yields the whole ring.
    pub fn graded_maximal_right_ideals(&self, limits: &Limits) -> Result<Vec<HomogeneousIdeal>> {
        let ring = &self.ring;
        if ring.is_zero_ring() {
            return Ok(Vec::new());
        }
        let one = ring.one();
        let mut seen_seeds = HashSet::new();
        let mut seeds: Vec<Span> = Vec::new();
        for (x, _) in self.homogeneous_elements() {
            let s = self.right_span(&[x]);
            if !s.contains(one) && seen_seeds.insert(s.set.clone()) {
                seeds.push(s);
            }
        }
        let mut lattice: HashSet<FixedBitSet> = seen_seeds.clone();
        let mut queue: VecDeque<Span> = seeds.iter().cloned().collect();
        let mut maximal = Vec::new();
        while let Some(l) = queue.pop_front() {
            let mut is_maximal = true;
            for s in &seeds {
                if s.set.is_subset(&l.set) {
                    continue;
                }
                let mut sum = l.clone();
                ring.extend_span(&mut sum, s.generators.iter().copied());
                if sum.contains(one) {
                    continue;
                }
                is_maximal = false;
                if lattice.insert(sum.set.clone()) {
                    if lattice.len() > limits.max_ideals {
                        return Err(Error::resource("homogeneous right ideals", limits.max_ideals as u64, lattice.len() as u64));
                    }
                    queue.push_back(sum);
                }
            }
            if is_maximal {
                maximal.push(l);
            }
        }
        let mut out: Vec<HomogeneousIdeal> = maximal
            .into_iter()
            .map(|span| HomogeneousIdeal {
                generators: span
                    .generators
                    .iter()
                    .map(|&x| (x, self.degree_of(x).degree().expect("seed generators are homogeneous")))
                    .collect(),
                elements: span.set,
                sidedness: Sidedness::Right,
            })
            .collect();
        out.sort_by_key(|i| i.members());
        Ok(out)
    }

    /// Intersection of the graded-maximal right ideals, checked to be a
    /// homogeneous two-sided ideal. The zero ring yields itself.
    pub fn graded_jacobson_radical(&self, limits: &Limits) -> Result<HomogeneousIdeal> {
        let maximal = self.graded_maximal_right_ideals(limits)?;
        let mut set = set_from(self.ring.size(), self.ring.elements());
        for m in &maximal {
            set.intersect_with(&m.elements);
        }
        self.ideal_from_set(set, Sidedness::TwoSided)
    }

    pub fn is_graded_local(&self, limits: &Limits) -> Result<bool> {
        Ok(self.graded_maximal_right_ideals(limits)?.len() == 1)
    }

    /// `R/I` with `(R/I)_g` the image of `R_g`.
    pub fn graded_quotient(&self, ideal: &FixedBitSet, limits: &Limits) -> Result<GradedQuotient> {
        if !self.is_homogeneous_set(ideal) {
            self.ideal_from_set(ideal.clone(), Sidedness::TwoSided)?;
        }
        let Quotient {
            ring,
            projection,
            representatives,
        } = self.ring.quotient(ideal, limits)?;
        let gens = self
            .components
            .iter()
            .map(|c| (c.degree, c.generators.iter().map(|&x| projection[x]).collect()))
            .collect();
        let grading = Grading::verify(ring, self.group.clone(), gens, limits)?;
        Ok(GradedQuotient {
            grading: Arc::new(grading),
            projection,
            representatives,
        })
    }

    /// `R_e` as a ring, with its elements listed in ascending ambient order.
    pub fn identity_component_ring(&self, limits: &Limits) -> Result<(Arc<FiniteRing>, Vec<Elem>)> {
        let members = self.identity_component().to_vec();
        let label = format!("{}_e", self.ring.label());
        let sub = FiniteRing::subring(&self.ring, &members, label, limits)?;
        Ok((Arc::new(sub), members))
    }

    /// Homogeneous m-potents of the component with index `comp`, ascending.
    pub fn component_m_potents(&self, comp: usize, m: u64) -> Arc<Vec<Elem>> {
        let key = (comp, m);
        if let Some(found) = self.m_potents.lock().unwrap().get(&key) {
            return found.clone();
        }
        let list: Vec<Elem> = self.components[comp]
            .members
            .iter()
            .copied()
            .filter(|&x| self.ring.is_m_potent(x, m))
            .collect();
        let list = Arc::new(list);
        self.m_potents.lock().unwrap().insert(key, list.clone());
        list
    }

    pub fn component_index(&self, d: Degree) -> Option<usize> {
        self.by_degree.get(&d).copied()
    }

    /// Same group, same ring tables and same components.
    pub fn same_as(&self, other: &Grading) -> bool {
        self.group == other.group
            && self.ring.same_tables(&other.ring)
            && self.components.len() == other.components.len()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| a.degree == b.degree && a.members == b.members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    /// Upper-triangular 2x2 over Z_p: element a*1 + b*p + c*p^2 is [[a,b],[0,c]].
    fn triangular(p: usize) -> Arc<FiniteRing> {
        let n = p * p * p;
        let dec = |x: usize| (x % p, (x / p) % p, x / (p * p));
        let enc = |a: usize, b: usize, c: usize| a % p + (b % p) * p + (c % p) * p * p;
        let mut add = vec![vec![0; n]; n];
        let mut mul = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                let ((a, b, c), (d, e, f)) = (dec(x), dec(y));
                add[x][y] = enc(a + d, b + e, c + f);
                mul[x][y] = enc(a * d, a * e + b * f, c * f);
            }
        }
        Arc::new(FiniteRing::from_tables("T2", add, mul, enc(1, 0, 1)).unwrap())
    }

    fn c2() -> GradingGroup {
        GradingGroup::finite(FiniteGroup::cyclic(2).unwrap())
    }

    fn c2_triangular(p: usize) -> Grading {
        let r = triangular(p);
        // diagonal in degree 0, E12 in degree 1
        Grading::verify(r, c2(), vec![(Degree(0), vec![1, p * p]), (Degree(1), vec![p])], &Limits::default()).unwrap()
    }

    #[test]
    fn trivial_grading() {
        let z4 = Arc::new(FiniteRing::zn(4).unwrap());
        let g = Grading::trivial(z4, &Limits::default()).unwrap();
        assert_eq!(g.support(), vec![Degree(0)]);
        assert_eq!(g.homogeneous_elements().len(), 4);
        assert_eq!(g.degree_of(0), DegreeOf::Zero);
        assert_eq!(g.degree_of(1), DegreeOf::Homogeneous(Degree(0)));
    }

    #[test]
    fn triangular_c2() {
        let g = c2_triangular(3);
        assert_eq!(g.support(), vec![Degree(0), Degree(1)]);
        assert_eq!(g.homogeneous_elements().len(), 11);
        let x = 1 + 9 + 3; // identity + E12
        assert_eq!(g.degree_of(x), DegreeOf::NotHomogeneous);
        let parts = g.decompose(x);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&Degree(0)], 10);
        assert_eq!(parts[&Degree(1)], 3);
        assert!(g.decompose(0).is_empty());
    }

    #[test]
    fn rejects_bad_gradings() {
        let r = triangular(2);
        let limits = Limits::default();
        // E12 in degree 0, diagonal in degree 1: identity not in degree e
        let err = Grading::verify(r.clone(), c2(), vec![(Degree(1), vec![1, 4]), (Degree(0), vec![2])], &limits);
        assert!(err.is_err());
        // overlapping components
        let err = Grading::verify(r.clone(), c2(), vec![(Degree(0), vec![1, 4, 2]), (Degree(1), vec![2])], &limits).unwrap_err();
        assert!(matches!(err, Error::Grading(GradingViolation::SizeMismatch { .. })));
        // E11 in degree 1 is not multiplicative: E11*E11 = E11
        let err = Grading::verify(r.clone(), c2(), vec![(Degree(0), vec![4, 2]), (Degree(1), vec![1])], &limits).unwrap_err();
        assert!(matches!(err, Error::Grading(GradingViolation::Multiplicativity { .. })), "{err}");
        let err = Grading::verify(r, c2(), vec![(Degree(5), vec![1])], &limits).unwrap_err();
        assert!(matches!(err, Error::Grading(GradingViolation::DegreeOutsideGroup(_))));
    }

    #[test]
    fn closures() {
        let g = c2_triangular(2);
        assert_eq!(g.homogeneous_right_ideal_closure(&[0]).unwrap().members(), vec![0]);
        assert_eq!(g.homogeneous_right_ideal_closure(&[5]).unwrap().len(), 8);
        assert_eq!(g.homogeneous_right_ideal_closure(&[2]).unwrap().members(), vec![0, 2]);
        assert!(g.homogeneous_right_ideal_closure(&[3]).is_err());
    }

    #[test]
    fn maximal_ideals_and_radical() {
        let limits = Limits::default();
        let g = c2_triangular(2);
        assert_eq!(g.graded_maximal_right_ideals(&limits).unwrap().len(), 2);
        assert_eq!(g.graded_jacobson_radical(&limits).unwrap().members(), vec![0, 2]);
        let z4 = Grading::trivial(Arc::new(FiniteRing::zn(4).unwrap()), &limits).unwrap();
        let max = z4.graded_maximal_right_ideals(&limits).unwrap();
        assert_eq!(max.len(), 1);
        assert_eq!(max[0].members(), vec![0, 2]);
        assert!(z4.is_graded_local(&limits).unwrap());
        let f = Grading::trivial(Arc::new(FiniteRing::gf(3, 1).unwrap()), &limits).unwrap();
        assert_eq!(f.graded_jacobson_radical(&limits).unwrap().members(), vec![0]);
        assert!(f.is_graded_local(&limits).unwrap());
        let z2 = Arc::new(FiniteRing::zn(2).unwrap());
        let p = Arc::new(FiniteRing::product(&[z2.clone(), z2], &limits).unwrap());
        assert!(!Grading::trivial(p, &limits).unwrap().is_graded_local(&limits).unwrap());
        let zero = Grading::trivial(Arc::new(FiniteRing::zn(1).unwrap()), &limits).unwrap();
        assert_eq!(zero.graded_jacobson_radical(&limits).unwrap().members(), vec![0]);
        assert_eq!(zero.homogeneous_elements(), vec![(0, DegreeOf::Zero)]);
    }

    #[test]
    fn graded_quotients() {
        let limits = Limits::default();
        let g = c2_triangular(3);
        let i = g.homogeneous_two_sided_closure(&[3]).unwrap();
        assert_eq!(i.len(), 3);
        assert!(g.is_graded_nil(&i.elements));
        let q = g.graded_quotient(&i.elements, &limits).unwrap();
        assert_eq!(q.grading.support(), vec![Degree(0)]);
        assert_eq!(q.grading.ring().size(), 9);
        let q = g.graded_quotient(&set_from(27, [0]), &limits).unwrap();
        assert!(q.grading.same_as(&g));
        let q = g.graded_quotient(&set_from(27, 0..27), &limits).unwrap();
        assert!(q.grading.ring().is_zero_ring());
        assert!(!g.is_graded_nil(&set_from(27, 0..27)));
    }

    #[test]
    fn identity_component() {
        let g = c2_triangular(3);
        let (re, emb) = g.identity_component_ring(&Limits::default()).unwrap();
        assert_eq!(re.size(), 9);
        assert_eq!(emb.len(), 9);
        assert!(re.is_commutative());
    }
}
