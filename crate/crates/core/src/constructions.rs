//! Graded rings built from smaller graded rings: full and triangular matrix
//! rings, the diagonal integer grading, group rings, amalgamations and
//! products. Every builder returns a validated [`Grading`].

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::grading::{Grading, HomogeneousIdeal, Sidedness};
use crate::group::{Degree, FiniteGroup, GradingGroup};
use crate::limits::Limits;
use crate::radix::MixedRadix;
use crate::ring::{set_from, Arithmetic, Elem, FiniteRing, ZERO};

/// `n x n` matrices over a base ring whose entries may be nonzero only at
/// the listed positions. Digit `k` of an element is the entry at `positions[k]`.
struct PatternArith {
    base: Arc<FiniteRing>,
    n: usize,
    positions: Vec<(usize, usize)>,
    slot: Vec<Option<usize>>,
    radix: MixedRadix,
}

impl PatternArith {
    fn new(base: Arc<FiniteRing>, n: usize, positions: Vec<(usize, usize)>, limits: &Limits) -> Result<Self> {
        let reached = (base.size() as u128).saturating_pow(positions.len() as u32);
        if reached > limits.max_elements as u128 {
            return Err(Error::resource("matrix ring size", limits.max_elements as u64, reached));
        }
        let radix = MixedRadix::new(vec![base.size(); positions.len()])
            .ok_or_else(|| Error::resource("matrix entries", crate::radix::MAX_DIGITS as u64, positions.len() as u64))?;
        let mut slot = vec![None; n * n];
        for (k, &(i, j)) in positions.iter().enumerate() {
            slot[i * n + j] = Some(k);
        }
        Ok(PatternArith {
            base,
            n,
            positions,
            slot,
            radix,
        })
    }

    fn dense(&self, x: Elem) -> Vec<Elem> {
        let digits = self.radix.decode(x);
        let mut m = vec![ZERO; self.n * self.n];
        for (k, &(i, j)) in self.positions.iter().enumerate() {
            m[i * self.n + j] = digits[k];
        }
        m
    }

    fn encode(&self, m: &[Elem]) -> Elem {
        let digits: Vec<Elem> = self.positions.iter().map(|&(i, j)| m[i * self.n + j]).collect();
        self.radix.encode(&digits)
    }

    /// The element with `value` at `(i, j)` and zeros elsewhere.
    fn single(&self, i: usize, j: usize, value: Elem) -> Option<Elem> {
        self.slot[i * self.n + j].map(|k| self.radix.unit_vector(k, value))
    }
}

impl Arithmetic for PatternArith {
    fn size(&self) -> usize {
        self.radix.total()
    }
    fn one(&self) -> Elem {
        let mut m = vec![ZERO; self.n * self.n];
        for i in 0..self.n {
            m[i * self.n + i] = self.base.one();
        }
        self.encode(&m)
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (self.radix.decode(a), self.radix.decode(b));
        let sum: Vec<Elem> = (0..self.positions.len()).map(|k| self.base.add(x[k], y[k])).collect();
        self.radix.encode(&sum)
    }
    fn neg(&self, a: Elem) -> Elem {
        let x = self.radix.decode(a);
        let neg: Vec<Elem> = (0..self.positions.len()).map(|k| self.base.neg(x[k])).collect();
        self.radix.encode(&neg)
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (self.dense(a), self.dense(b));
        let n = self.n;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let xik = x[i * n + k];
                if xik == ZERO {
                    continue;
                }
                for j in 0..n {
                    let ykj = y[k * n + j];
                    if ykj != ZERO {
                        out[i * n + j] = self.base.add(out[i * n + j], self.base.mul(xik, ykj));
                    }
                }
            }
        }
        self.encode(&out)
    }
    fn render(&self, a: Elem) -> String {
        let m = self.dense(a);
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let row: Vec<String> = (0..self.n).map(|j| self.base.render(m[i * self.n + j])).collect();
                format!("[{}]", row.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
    fn spanning_set(&self) -> Option<Vec<Elem>> {
        let gens = self.base.additive_generators();
        Some(
            (0..self.positions.len())
                .flat_map(|k| gens.iter().map(move |&g| self.radix.unit_vector(k, g)))
                .collect(),
        )
    }
}

fn check_sigma(group: &GradingGroup, n: usize, sigma: &[Degree]) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix size must be at least 1".into()));
    }
    if sigma.len() != n {
        return Err(Error::InvalidArgument(format!("sigma has {} entries, expected {n}", sigma.len())));
    }
    if let Some(&d) = sigma.iter().find(|&&d| !group.contains(d)) {
        return Err(Error::InvalidArgument(format!("sigma entry {d} is not in {}", group.label())));
    }
    Ok(())
}

/// Degrees `lambda` for which some entry `g_i lambda g_j^-1` lands in the base support.
fn lambda_candidates(base: &Grading, positions: &[(usize, usize)], sigma: &[Degree]) -> Vec<Degree> {
    let group = base.group();
    let mut out = BTreeSet::new();
    for &(i, j) in positions {
        for d in base.support() {
            // g_i lambda g_j^-1 = d  <=>  lambda = g_i^-1 d g_j
            out.insert(group.mul(group.mul(group.inv(sigma[i]), d), sigma[j]));
        }
    }
    out.into_iter().collect()
}

fn pattern_graded(
    base: &Grading,
    n: usize,
    sigma: &[Degree],
    positions: Vec<(usize, usize)>,
    label: String,
    limits: &Limits,
) -> Result<Grading> {
    check_sigma(base.group(), n, sigma)?;
    let arith = PatternArith::new(base.ring().clone(), n, positions.clone(), limits)?;
    let group = base.group().clone();
    let mut gens = Vec::new();
    for lambda in lambda_candidates(base, &positions, sigma) {
        let mut g = Vec::new();
        for &(i, j) in &positions {
            let d = group.mul(group.mul(sigma[i], lambda), group.inv(sigma[j]));
            if let Some(c) = base.component(d) {
                g.extend(c.generators.iter().filter_map(|&r| arith.single(i, j, r)));
            }
        }
        gens.push((lambda, g));
    }
    let ring = Arc::new(FiniteRing::new(label, Arc::new(arith), limits)?);
    Grading::verify(ring, group, gens, limits)
}

/// `M_n(R)` with `a_ij` of degree `lambda` lying in `R_{g_i lambda g_j^-1}`.
pub fn matrix_graded(base: &Grading, n: usize, sigma: &[Degree], limits: &Limits) -> Result<Grading> {
    let positions = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let label = format!("M{n}({})", base.ring().label());
    pattern_graded(base, n, sigma, positions, label, limits)
}

/// Upper-triangular `T_n(R)` with the grading induced from [`matrix_graded`],
/// together with the homogeneous ideal of matrices with zero diagonal.
pub fn triangular_graded(
    base: &Grading,
    n: usize,
    sigma: &[Degree],
    limits: &Limits,
) -> Result<(Grading, HomogeneousIdeal)> {
    let positions = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let label = format!("T{n}({})", base.ring().label());
    let grading = pattern_graded(base, n, sigma, positions, label, limits)?;
    // Digit k is the entry at the k-th upper position in row-major order.
    let ring = grading.ring().clone();
    let radix = MixedRadix::new(vec![base.ring().size(); n * (n + 1) / 2]).expect("built above");
    let mut diag_slots = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            if i == j {
                diag_slots.push(k);
            }
            k += 1;
        }
    }
    let set = set_from(
        ring.size(),
        ring.elements().filter(|&x| diag_slots.iter().all(|&s| radix.digit(x, s) == ZERO)),
    );
    let ideal = grading.ideal_from_set(set, Sidedness::TwoSided)?;
    Ok((grading, ideal))
}

/// `M_n(A)` graded by the integers, degree `t` being the `t`-th diagonal
/// (entries `(i, i + t)`).
pub fn diagonal_z_grading(base: &Arc<FiniteRing>, n: usize, limits: &Limits) -> Result<Grading> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix size must be at least 1".into()));
    }
    let positions: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let arith = PatternArith::new(base.clone(), n, positions, limits)?;
    let gens = (-(n as i64 - 1)..n as i64)
        .map(|t| {
            let g = (0..n)
                .filter_map(|i| {
                    let j = i as i64 + t;
                    (0..n as i64).contains(&j).then_some((i, j as usize))
                })
                .flat_map(|(i, j)| {
                    base.additive_generators()
                        .iter()
                        .filter_map(|&r| arith.single(i, j, r))
                        .collect::<Vec<_>>()
                })
                .collect();
            (Degree(t), g)
        })
        .collect();
    let ring = Arc::new(FiniteRing::new(format!("M{n}({})", base.label()), Arc::new(arith), limits)?);
    Grading::verify(ring, GradingGroup::Integers, gens, limits)
}

/// Multiplication rule for group rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MultMode {
    /// `(r g')(s h') = r s (h^-1 g' h h')` for `s` homogeneous of degree `h`,
    /// extended additively through the base grading.
    Twisted,
    /// Convolution: `(r g')(s h') = r s (g' h')`.
    Standard,
}

impl fmt::Display for MultMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MultMode::Twisted => "twisted",
            MultMode::Standard => "standard",
        })
    }
}

/// Functions `G -> R`; digit `h` is the coefficient of `h`.
struct GroupRingArith {
    base: Arc<FiniteRing>,
    group: Arc<FiniteGroup>,
    radix: MixedRadix,
    mode: MultMode,
    /// Homogeneous parts `(degree index, part)` of every base element.
    parts: Vec<Vec<(usize, Elem)>>,
}

impl Arithmetic for GroupRingArith {
    fn size(&self) -> usize {
        self.radix.total()
    }
    fn one(&self) -> Elem {
        self.radix.unit_vector(0, self.base.one())
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (self.radix.decode(a), self.radix.decode(b));
        let sum: Vec<Elem> = (0..self.group.order()).map(|h| self.base.add(x[h], y[h])).collect();
        self.radix.encode(&sum)
    }
    fn neg(&self, a: Elem) -> Elem {
        let x = self.radix.decode(a);
        let neg: Vec<Elem> = (0..self.group.order()).map(|h| self.base.neg(x[h])).collect();
        self.radix.encode(&neg)
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (self.radix.decode(a), self.radix.decode(b));
        let g = &self.group;
        let mut out = vec![ZERO; g.order()];
        for gp in 0..g.order() {
            if x[gp] == ZERO {
                continue;
            }
            for hp in 0..g.order() {
                if y[hp] == ZERO {
                    continue;
                }
                match self.mode {
                    MultMode::Standard => {
                        let t = g.mul(gp, hp);
                        out[t] = self.base.add(out[t], self.base.mul(x[gp], y[hp]));
                    }
                    MultMode::Twisted => {
                        for &(h, s) in &self.parts[y[hp]] {
                            let t = g.mul(g.mul(g.mul(g.inv(h), gp), h), hp);
                            out[t] = self.base.add(out[t], self.base.mul(x[gp], s));
                        }
                    }
                }
            }
        }
        self.radix.encode(&out)
    }
    fn render(&self, a: Elem) -> String {
        let x = self.radix.decode(a);
        let terms: Vec<String> = (0..self.group.order())
            .filter(|&h| x[h] != ZERO)
            .map(|h| format!("{}*g{h}", self.base.render(x[h])))
            .collect();
        if terms.is_empty() { "0".into() } else { terms.join(" + ") }
    }
    fn spanning_set(&self) -> Option<Vec<Elem>> {
        let gens = self.base.additive_generators();
        Some(
            (0..self.group.order())
                .flat_map(|h| gens.iter().map(move |&r| self.radix.unit_vector(h, r)))
                .collect(),
        )
    }
}

/// A graded group ring and the data needed for its augmentation.
pub struct GroupRing {
    pub grading: Arc<Grading>,
    pub base: Arc<Grading>,
    pub group: Arc<FiniteGroup>,
    pub mode: MultMode,
    radix: MixedRadix,
}

impl GroupRing {
    /// Coefficient of the group element with index `h`.
    pub fn coefficient(&self, x: Elem, h: usize) -> Elem {
        self.radix.digit(x, h)
    }

    /// `r h` for a base element `r`.
    pub fn monomial(&self, r: Elem, h: usize) -> Elem {
        self.radix.unit_vector(h, r)
    }

    /// `sum r_h h  |->  sum r_h`.
    pub fn augmentation(&self, x: Elem) -> Elem {
        let base = self.base.ring();
        (0..self.group.order()).fold(ZERO, |acc, h| base.add(acc, self.coefficient(x, h)))
    }
}

/// `RG` graded by `(RG)_g = sum_h R_{g h^-1} h`, where the base is graded by
/// the same group `G`. Fails with the violated ring or grading law when the
/// chosen multiplication does not give a graded ring.
pub fn group_ring_graded(base: &Arc<Grading>, mode: MultMode, limits: &Limits) -> Result<GroupRing> {
    let group = match base.group() {
        GradingGroup::Finite(g) => g.clone(),
        GradingGroup::Integers => {
            return Err(Error::InvalidArgument("group rings need a finite grading group".into()));
        }
    };
    let r = base.ring();
    let order = group.order();
    let reached = (r.size() as u128).saturating_pow(order as u32);
    if reached > limits.max_elements as u128 {
        return Err(Error::resource("group ring size", limits.max_elements as u64, reached));
    }
    let radix = MixedRadix::new(vec![r.size(); order])
        .ok_or_else(|| Error::resource("group order", crate::radix::MAX_DIGITS as u64, order as u64))?;
    let parts = r
        .elements()
        .map(|x| {
            base.decompose(x)
                .into_iter()
                .map(|(d, p)| (d.0 as usize, p))
                .collect()
        })
        .collect();
    let arith = GroupRingArith {
        base: r.clone(),
        group: group.clone(),
        radix: radix.clone(),
        mode,
        parts,
    };
    let label = format!("{}[{}]", r.label(), group.label());
    let ring = Arc::new(FiniteRing::new(label, Arc::new(arith), limits)?);
    let grading_group = base.group().clone();
    let gens = (0..order)
        .map(|g| {
            let elems = (0..order)
                .flat_map(|h| {
                    let d = Degree(group.mul(g, group.inv(h)) as i64);
                    base.component(d)
                        .map(|c| c.generators.iter().map(|&x| radix.unit_vector(h, x)).collect::<Vec<_>>())
                        .unwrap_or_default()
                })
                .collect();
            (Degree(g as i64), elems)
        })
        .collect();
    let grading = Grading::verify(ring, grading_group, gens, limits)?;
    Ok(GroupRing {
        grading: Arc::new(grading),
        base: base.clone(),
        group,
        mode,
        radix,
    })
}

pub struct Augmentation {
    pub elements: FixedBitSet,
    /// Least `k` with `Δ^k = 0`, if any.
    pub nilpotency_index: Option<u32>,
}

/// Kernel of the augmentation map, with the nilpotency index of the ideal
/// computed from its powers.
pub fn augmentation_ideal(rg: &GroupRing) -> Result<Augmentation> {
    let ring = rg.grading.ring();
    let elements = set_from(ring.size(), ring.elements().filter(|&x| rg.augmentation(x) == ZERO));
    ring.check_two_sided_ideal(&elements)?;
    let members: Vec<Elem> = elements.ones().collect();
    let gens = ring.span(members).generators;
    let mut power = ring.span(gens.iter().copied());
    let mut k = 1;
    let nilpotency_index = loop {
        if power.len() == 1 {
            break Some(k);
        }
        let next = ring.span(
            power
                .generators
                .iter()
                .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
                .map(|(a, b)| ring.mul(a, b)),
        );
        if next.len() == power.len() {
            break None;
        }
        power = next;
        k += 1;
    };
    Ok(Augmentation {
        elements,
        nilpotency_index,
    })
}

/// Restricts a grading to a subring listed (ascending) by `embedding`; the
/// components are the intersections with the ambient components.
pub fn restrict_grading(
    ambient: &Grading,
    sub: Arc<FiniteRing>,
    embedding: &[Elem],
    limits: &Limits,
) -> Result<Grading> {
    let position = |x: Elem| embedding.binary_search(&x).ok();
    let sets = ambient
        .components()
        .iter()
        .map(|c| (c.degree, c.members.iter().filter_map(|&x| position(x)).collect()))
        .collect();
    Grading::from_component_sets(sub, ambient.group().clone(), sets, limits)
}

/// `A ⋈^f J` and the ring `f(A) + J` it projects onto.
pub struct Amalgamation {
    pub grading: Arc<Grading>,
    /// `f(A) + J` with the grading induced from `B`.
    pub image: Arc<Grading>,
    /// Elements of `A ⋈^f J` as pairs `(a, b)`, in subring order.
    pub pairs: Vec<(Elem, Elem)>,
    /// Elements of `f(A) + J` in `B`, in subring order.
    pub image_elements: Vec<Elem>,
    pub to_a: Vec<Elem>,
    pub to_image: Vec<Elem>,
}

/// The subring `{(a, f(a) + j)}` of `A x B` with components
/// `{(a_g, f(a_g) + j_g)}`. `f` lists the image of every element of `A`.
pub fn amalgamation(
    a: &Arc<Grading>,
    b: &Arc<Grading>,
    f: &[Elem],
    j: &FixedBitSet,
    limits: &Limits,
) -> Result<Amalgamation> {
    let (ra, rb) = (a.ring(), b.ring());
    if a.group() != b.group() {
        return Err(Error::InvalidArgument("A and B are graded by different groups".into()));
    }
    if !ra.is_commutative() || !rb.is_commutative() {
        return Err(Error::Hypothesis("amalgamation needs commutative rings".into()));
    }
    check_graded_homomorphism(a, b, f)?;
    let j_ideal = b.ideal_from_set(j.clone(), Sidedness::TwoSided)?;

    let product = Arc::new(FiniteRing::product(&[ra.clone(), rb.clone()], limits)?);
    let pg = product_grading(&[a.clone(), b.clone()], limits)?;
    let jm = j_ideal.members();
    let encode = |x: Elem, y: Elem| x + ra.size() * y;
    let mut elements: Vec<Elem> = ra
        .elements()
        .flat_map(|x| jm.iter().map(move |&t| (x, t)))
        .map(|(x, t)| encode(x, rb.add(f[x], t)))
        .collect();
    elements.sort_unstable();
    elements.dedup();
    let label = format!("{} amalgamated along {}", ra.label(), rb.label());
    let sub = Arc::new(FiniteRing::subring(&product, &elements, label, limits)?);
    let grading = restrict_grading(&pg, sub, &elements, limits)?;

    let mut image_elements: Vec<Elem> = ra
        .elements()
        .flat_map(|x| jm.iter().map(move |&t| rb.add(f[x], t)))
        .collect();
    image_elements.sort_unstable();
    image_elements.dedup();
    let image_ring = Arc::new(FiniteRing::subring(rb, &image_elements, format!("f({})+J", ra.label()), limits)?);
    let image = restrict_grading(b, image_ring, &image_elements, limits)?;

    let pairs: Vec<(Elem, Elem)> = elements.iter().map(|&e| (e % ra.size(), e / ra.size())).collect();
    let to_a = pairs.iter().map(|p| p.0).collect();
    let to_image = pairs
        .iter()
        .map(|p| image_elements.binary_search(&p.1).expect("second coordinates lie in f(A)+J"))
        .collect();
    Ok(Amalgamation {
        grading: Arc::new(grading),
        image: Arc::new(image),
        pairs,
        image_elements,
        to_a,
        to_image,
    })
}

/// `f(1) = 1`, additivity and multiplicativity on all pairs, and
/// `f(A_g) ⊆ B_g`.
pub fn check_graded_homomorphism(a: &Grading, b: &Grading, f: &[Elem]) -> Result<()> {
    let (ra, rb) = (a.ring(), b.ring());
    if f.len() != ra.size() || f.iter().any(|&y| y >= rb.size()) {
        return Err(Error::InvalidArgument("map does not send A into B".into()));
    }
    if f[ra.one()] != rb.one() {
        return Err(Error::Hypothesis("f(1) is not 1".into()));
    }
    for x in ra.elements() {
        for y in ra.elements() {
            if f[ra.add(x, y)] != rb.add(f[x], f[y]) {
                return Err(Error::Hypothesis(format!("f is not additive at ({x}, {y})")));
            }
            if f[ra.mul(x, y)] != rb.mul(f[x], f[y]) {
                return Err(Error::Hypothesis(format!("f is not multiplicative at ({x}, {y})")));
            }
        }
    }
    for c in a.components() {
        for &x in &c.members[1..] {
            if f[x] != ZERO && b.degree_of(f[x]).degree() != Some(c.degree) {
                return Err(Error::Hypothesis(format!("f moves {x} out of degree {}", c.degree)));
            }
        }
    }
    Ok(())
}

/// Componentwise grading of a product; factor 0 is the least significant digit.
pub fn product_grading(factors: &[Arc<Grading>], limits: &Limits) -> Result<Grading> {
    let first = factors
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty product".into()))?;
    if factors.iter().any(|g| g.group() != first.group()) {
        return Err(Error::InvalidArgument("factors are graded by different groups".into()));
    }
    let rings: Vec<Arc<FiniteRing>> = factors.iter().map(|g| g.ring().clone()).collect();
    let ring = Arc::new(FiniteRing::product(&rings, limits)?);
    let radix = MixedRadix::new(rings.iter().map(|r| r.size()).collect()).expect("product was built");
    let degrees: BTreeSet<Degree> = factors.iter().flat_map(|g| g.support()).collect();
    let gens = degrees
        .into_iter()
        .map(|d| {
            let g = factors
                .iter()
                .enumerate()
                .flat_map(|(i, gr)| {
                    gr.component(d)
                        .map(|c| c.generators.iter().map(|&x| radix.unit_vector(i, x)).collect::<Vec<_>>())
                        .unwrap_or_default()
                })
                .collect();
            (d, g)
        })
        .collect();
    Grading::verify(ring, first.group().clone(), gens, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::DegreeOf;

    fn limits() -> Limits {
        Limits::default()
    }

    fn c(n: usize) -> GradingGroup {
        GradingGroup::finite(FiniteGroup::cyclic(n).unwrap())
    }

    fn concentrated(ring: FiniteRing, group: GradingGroup) -> Arc<Grading> {
        Arc::new(Grading::concentrated(Arc::new(ring), group, &limits()).unwrap())
    }

    #[test]
    fn matrix_c2_grading_is_diagonal_antidiagonal() {
        let base = concentrated(FiniteRing::zn(3).unwrap(), c(2));
        let m = matrix_graded(&base, 2, &[Degree(0), Degree(1)], &limits()).unwrap();
        assert_eq!(m.ring().size(), 81);
        // digits: (0,0), (0,1), (1,0), (1,1) with weights 1, 3, 9, 27
        let d0 = m.component(Degree(0)).unwrap();
        assert!(d0.members.iter().all(|&x| (x / 3) % 3 == 0 && (x / 9) % 3 == 0));
        assert_eq!(d0.members.len(), 9);
        let antidiag = 2 * 3 + 2 * 9;
        assert_eq!(m.degree_of(antidiag), DegreeOf::Homogeneous(Degree(1)));
        assert!(m.ring().is_m_potent(antidiag, 3));
        assert_eq!(m.ring().render(antidiag), "[[0,2],[2,0]]");
    }

    #[test]
    fn matrix_identity_sigma_and_size_one() {
        let base = concentrated(FiniteRing::zn(2).unwrap(), c(3));
        let m = matrix_graded(&base, 2, &[Degree(0), Degree(0)], &limits()).unwrap();
        assert_eq!(m.support(), vec![Degree(0)]);
        let m1 = matrix_graded(&base, 1, &[Degree(2)], &limits()).unwrap();
        assert!(m1.same_as(&base));
        assert!(matrix_graded(&base, 2, &[Degree(0)], &limits()).is_err());
    }

    #[test]
    fn diagonal_z() {
        let z2 = Arc::new(FiniteRing::zn(2).unwrap());
        let d = diagonal_z_grading(&z2, 2, &limits()).unwrap();
        assert_eq!(d.support(), vec![Degree(-1), Degree(0), Degree(1)]);
        assert_eq!(d.component_members(Degree(1)), &[0, 2]);
        let d3 = diagonal_z_grading(&z2, 3, &limits()).unwrap();
        assert_eq!(d3.support().len(), 5);
        let d1 = diagonal_z_grading(&z2, 1, &limits()).unwrap();
        assert_eq!(d1.support(), vec![Degree(0)]);
        // same as the matrix grading with sigma = (0, 1, ..., n-1)
        let base = Arc::new(Grading::concentrated(z2, GradingGroup::Integers, &limits()).unwrap());
        let sigma: Vec<Degree> = (0..3).map(Degree).collect();
        assert!(matrix_graded(&base, 3, &sigma, &limits()).unwrap().same_as(&d3));
    }

    #[test]
    fn triangular_remark_ring() {
        let base = concentrated(FiniteRing::zn(2).unwrap(), c(2));
        let (t, i) = triangular_graded(&base, 2, &[Degree(0), Degree(1)], &limits()).unwrap();
        assert_eq!(t.ring().size(), 8);
        assert_eq!(t.component_members(Degree(1)).len(), 2);
        assert_eq!(i.len(), 2);
        let ring = t.ring();
        for &x in &i.members() {
            for &y in &i.members() {
                assert_eq!(ring.mul(x, y), ZERO);
            }
        }
        let (t1, i1) = triangular_graded(&base, 1, &[Degree(0)], &limits()).unwrap();
        assert!(t1.same_as(&base));
        assert_eq!(i1.members(), vec![0]);
    }

    #[test]
    fn group_rings() {
        let base = concentrated(FiniteRing::zn(2).unwrap(), c(2));
        for mode in [MultMode::Standard, MultMode::Twisted] {
            let rg = group_ring_graded(&base, mode, &limits()).unwrap();
            assert_eq!(rg.grading.ring().size(), 4);
            let one_plus_g = rg.monomial(1, 0) + rg.monomial(1, 1);
            assert_eq!(rg.grading.degree_of(one_plus_g), DegreeOf::NotHomogeneous);
        }
        let z4 = concentrated(FiniteRing::zn(4).unwrap(), c(2));
        let rg = group_ring_graded(&z4, MultMode::Standard, &limits()).unwrap();
        let aug = augmentation_ideal(&rg).unwrap();
        assert!(aug.nilpotency_index.is_some());
        let z3 = concentrated(FiniteRing::zn(3).unwrap(), c(2));
        let rg = group_ring_graded(&z3, MultMode::Standard, &limits()).unwrap();
        assert_eq!(augmentation_ideal(&rg).unwrap().nilpotency_index, None);
        let trivial = concentrated(FiniteRing::zn(3).unwrap(), c(1));
        let rg = group_ring_graded(&trivial, MultMode::Standard, &limits()).unwrap();
        assert_eq!(augmentation_ideal(&rg).unwrap().elements.count_ones(..), 1);
    }

    #[test]
    fn amalgamations() {
        let z4 = concentrated(FiniteRing::zn(4).unwrap(), GradingGroup::trivial());
        let id: Vec<Elem> = (0..4).collect();
        let am = amalgamation(&z4, &z4, &id, &set_from(4, [0, 2]), &limits()).unwrap();
        assert_eq!(am.grading.ring().size(), 8);
        assert_eq!(am.image.ring().size(), 4);
        let am0 = amalgamation(&z4, &z4, &id, &set_from(4, [0]), &limits()).unwrap();
        assert!(am0.grading.ring().same_tables(z4.ring()));
        let bad: Vec<Elem> = vec![0, 1, 1, 1];
        assert!(amalgamation(&z4, &z4, &bad, &set_from(4, [0]), &limits()).is_err());
    }

    #[test]
    fn products_of_gradings() {
        let base = concentrated(FiniteRing::zn(2).unwrap(), c(2));
        let (t, _) = triangular_graded(&base, 2, &[Degree(0), Degree(1)], &limits()).unwrap();
        let z3 = concentrated(FiniteRing::zn(3).unwrap(), c(2));
        let p = product_grading(&[Arc::new(t), z3.clone()], &limits()).unwrap();
        assert_eq!(p.ring().size(), 24);
        assert_eq!(p.component_members(Degree(1)).len(), 2);
        let single = product_grading(std::slice::from_ref(&z3), &limits()).unwrap();
        assert!(single.same_as(&z3));
        let other = concentrated(FiniteRing::zn(3).unwrap(), c(3));
        assert!(product_grading(&[z3, other], &limits()).is_err());
    }
}
