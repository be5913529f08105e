//! Finite unital rings with elements numbered `0..size`.
//!
//! Index 0 is always the additive identity. Small rings carry materialized
//! addition and multiplication tables; larger ones delegate to their
//! structured [`Arithmetic`] backend on every operation.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::radix::MixedRadix;

pub type Elem = usize;

pub const ZERO: Elem = 0;

/// Rings up to this size keep per-element nilpotent/unit flags once queried.
const FLAG_CACHE_CAP: usize = 1 << 20;

/// Element-level arithmetic of a finite ring with elements `0..size()`.
pub trait Arithmetic: Send + Sync {
    fn size(&self) -> usize;
    fn one(&self) -> Elem;
    fn add(&self, a: Elem, b: Elem) -> Elem;
    fn neg(&self, a: Elem) -> Elem;
    fn mul(&self, a: Elem, b: Elem) -> Elem;

    fn render(&self, a: Elem) -> String {
        a.to_string()
    }

    /// Additive generators, for backends whose multiplication is bi-additive
    /// by construction.
    fn spanning_set(&self) -> Option<Vec<Elem>> {
        None
    }
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

/// The additive subgroup generated by a list of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    pub set: FixedBitSet,
    pub members: Vec<Elem>,
    /// The generators that actually enlarged the subgroup.
    pub generators: Vec<Elem>,
}

impl Span {
    pub fn contains(&self, x: Elem) -> bool {
        self.set.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn sorted(&self) -> Vec<Elem> {
        self.set.ones().collect()
    }
}

/// Result of the power-sequence scan of [`FiniteRing::classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementClass {
    pub is_nilpotent: bool,
    pub nilpotency_index: Option<u32>,
    pub is_unit: bool,
    pub inverse: Option<Elem>,
    pub m_potent_for: Vec<(u64, bool)>,
    /// Number of distinct powers visited before the sequence repeated.
    pub distinct_powers: usize,
}

/// A quotient ring together with the canonical projection.
pub struct Quotient {
    pub ring: Arc<FiniteRing>,
    pub projection: Vec<Elem>,
    /// Least element of each coset, indexed by coset.
    pub representatives: Vec<Elem>,
}

pub struct FiniteRing {
    label: String,
    size: usize,
    one: Elem,
    tables: Option<Tables>,
    arith: Arc<dyn Arithmetic>,
    nilpotent: OnceLock<FixedBitSet>,
    units: OnceLock<FixedBitSet>,
    generators: OnceLock<Vec<Elem>>,
    commutative: OnceLock<bool>,
    m_potents: Mutex<HashMap<u64, Arc<Vec<Elem>>>>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, {} elements)", self.label, self.size)
    }
}

impl FiniteRing {
    /// Wraps a backend, materializing tables for small rings and checking the
    /// ring axioms (exhaustively up to `limits.exhaustive_axioms` elements,
    /// on additive generators beyond that).
    pub fn new(label: impl Into<String>, arith: Arc<dyn Arithmetic>, limits: &Limits) -> Result<Self> {
        let size = arith.size();
        if size == 0 {
            return Err(Error::InvalidArgument("a ring needs at least one element".into()));
        }
        if size > limits.max_elements {
            return Err(Error::resource("ring size", limits.max_elements as u64, size as u64));
        }
        let one = arith.one();
        let tables = (size <= limits.table_elements).then(|| {
            let mut add = vec![0u32; size * size];
            let mut mul = vec![0u32; size * size];
            add.par_chunks_mut(size)
                .zip(mul.par_chunks_mut(size))
                .enumerate()
                .for_each(|(a, (add_row, mul_row))| {
                    for b in 0..size {
                        add_row[b] = arith.add(a, b) as u32;
                        mul_row[b] = arith.mul(a, b) as u32;
                    }
                });
            let neg = (0..size).map(|a| arith.neg(a) as u32).collect();
            Tables { add, mul, neg }
        });
        let ring = FiniteRing {
            label: label.into(),
            size,
            one,
            tables,
            arith,
            nilpotent: OnceLock::new(),
            units: OnceLock::new(),
            generators: OnceLock::new(),
            commutative: OnceLock::new(),
            m_potents: Mutex::new(HashMap::new()),
        };
        ring.verify_axioms(size <= limits.exhaustive_axioms)?;
        Ok(ring)
    }

    /// A ring from explicit tables. Always verified exhaustively, so limited
    /// to 256 elements.
    pub fn from_tables(
        label: impl Into<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        one: Elem,
    ) -> Result<Self> {
        let size = add.len();
        if size == 0 || size > 256 {
            return Err(Error::InvalidArgument(format!("table rings need 1..=256 elements, got {size}")));
        }
        if mul.len() != size || one >= size {
            return Err(Error::InvalidArgument("table dimensions disagree".into()));
        }
        let flatten = |rows: &[Vec<usize>], what: &str| -> Result<Vec<u32>> {
            let mut out = Vec::with_capacity(size * size);
            for row in rows {
                if row.len() != size || row.iter().any(|&v| v >= size) {
                    return Err(Error::InvalidArgument(format!("malformed {what} table row")));
                }
                out.extend(row.iter().map(|&v| v as u32));
            }
            Ok(out)
        };
        let add = flatten(&add, "addition")?;
        let mul = flatten(&mul, "multiplication")?;
        for a in 0..size {
            if add[a] as usize != a || add[a * size] as usize != a {
                return Err(Error::InvalidArgument("element 0 must be the additive identity".into()));
            }
        }
        let mut neg = vec![0u32; size];
        for a in 0..size {
            match (0..size).find(|&b| add[a * size + b] == 0) {
                Some(b) => neg[a] = b as u32,
                None => return Err(Error::RingAxiom { law: "additive inverse", a, b: 0, c: 0 }),
            }
        }
        let arith = TableArith { size, one, add, mul, neg };
        let limits = Limits {
            exhaustive_axioms: 256,
            ..Limits::default()
        };
        FiniteRing::new(label, Arc::new(arith), &limits)
    }

    /// Integers modulo `n`.
    pub fn zn(n: usize) -> Result<Self> {
        Self::zn_with_limits(n, &Limits::default())
    }

    pub fn zn_with_limits(n: usize, limits: &Limits) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("Z_0 is infinite".into()));
        }
        FiniteRing::new(format!("Z{n}"), Arc::new(ZnArith { n }), limits)
    }

    /// The field with `p^k` elements, using the lexicographically least monic
    /// irreducible modulus. Element `sum c_i p^i` is the polynomial `sum c_i x^i`.
    pub fn gf(p: u64, k: u32) -> Result<Self> {
        Self::gf_with_limits(p, k, &Limits::default())
    }

    pub fn gf_with_limits(p: u64, k: u32, limits: &Limits) -> Result<Self> {
        if !crate::group::is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("GF(p^0) is not a field".into()));
        }
        let size = p
            .checked_pow(k)
            .filter(|&s| s <= limits.max_elements as u64)
            .ok_or_else(|| Error::resource("field size", limits.max_elements as u64, u64::MAX))?;
        let modulus = least_irreducible(p, k as usize);
        let arith = GfArith {
            p: p as usize,
            k: k as usize,
            modulus,
            radix: MixedRadix::uniform(p as usize, k as usize).unwrap(),
        };
        debug_assert_eq!(arith.radix.total() as u64, size);
        let label = if k == 1 { format!("GF{p}") } else { format!("GF{p}^{k}") };
        FiniteRing::new(label, Arc::new(arith), limits)
    }

    /// Componentwise product. Factor 0 is the least significant digit.
    pub fn product(factors: &[Arc<FiniteRing>], limits: &Limits) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("empty product".into()));
        }
        let radix = MixedRadix::new(factors.iter().map(|r| r.size()).collect())
            .filter(|r| r.total() <= limits.max_elements)
            .ok_or_else(|| {
                let reached = factors.iter().map(|r| r.size() as u128).product::<u128>();
                Error::resource("product ring size", limits.max_elements as u64, reached)
            })?;
        let label = factors.iter().map(|r| r.label()).collect::<Vec<_>>().join(" x ");
        let arith = ProductArith {
            factors: factors.to_vec(),
            radix,
        };
        FiniteRing::new(label, Arc::new(arith), limits)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn is_zero_ring(&self) -> bool {
        self.size == 1
    }

    pub fn arithmetic(&self) -> &Arc<dyn Arithmetic> {
        &self.arith
    }

    pub fn render(&self, x: Elem) -> String {
        self.arith.render(x)
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.add[a * self.size + b] as Elem,
            None => self.arith.add(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.mul[a * self.size + b] as Elem,
            None => self.arith.mul(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.neg[a] as Elem,
            None => self.arith.neg(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `x^k` by square-and-multiply; `x^0 = 1`.
    pub fn pow(&self, x: Elem, mut k: u64) -> Elem {
        let mut acc = self.one;
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// The image of the integer `k` in the ring.
    pub fn integer(&self, k: i64) -> Elem {
        let mut acc = ZERO;
        let mut base = if k < 0 { self.neg(self.one) } else { self.one };
        let mut k = k.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn is_m_potent(&self, x: Elem, m: u64) -> bool {
        self.pow(x, m) == x
    }

    pub fn is_idempotent(&self, x: Elem) -> bool {
        self.mul(x, x) == x
    }

    pub fn commutes(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    fn log2_size(&self) -> u32 {
        usize::BITS - (self.size.max(1) - 1).leading_zeros()
    }

    /// `x^(2^k) = 0` for `2^k >= size`, which bounds every nilpotency index.
    fn nilpotent_by_squaring(&self, x: Elem) -> bool {
        let mut y = x;
        for _ in 0..self.log2_size() {
            if y == ZERO {
                return true;
            }
            y = self.mul(y, y);
        }
        y == ZERO
    }

    /// Walks the cycle that `x^(2^k)` sits on; `x` is a unit iff 1 is on it.
    fn unit_by_cycle(&self, x: Elem) -> bool {
        let mut y = x;
        for _ in 0..self.log2_size() {
            y = self.mul(y, y);
        }
        let mut z = y;
        loop {
            if z == self.one {
                return true;
            }
            z = self.mul(z, x);
            if z == y {
                return false;
            }
        }
    }

    fn nilpotent_flags(&self) -> Option<&FixedBitSet> {
        (self.size <= FLAG_CACHE_CAP).then(|| {
            self.nilpotent.get_or_init(|| {
                let flags: Vec<bool> = (0..self.size)
                    .into_par_iter()
                    .map(|x| self.nilpotent_by_squaring(x))
                    .collect();
                bits_from(&flags)
            })
        })
    }

    pub fn unit_flags(&self) -> Option<&FixedBitSet> {
        (self.size <= FLAG_CACHE_CAP).then(|| {
            self.units.get_or_init(|| {
                let flags: Vec<bool> = (0..self.size)
                    .into_par_iter()
                    .map(|x| self.unit_by_cycle(x))
                    .collect();
                bits_from(&flags)
            })
        })
    }

    pub fn is_nilpotent(&self, x: Elem) -> bool {
        match self.nilpotent_flags() {
            Some(f) => f.contains(x),
            None => self.nilpotent_by_squaring(x),
        }
    }

    /// Least `k >= 1` with `x^k = 0`.
    pub fn nilpotency_index(&self, x: Elem) -> Option<u32> {
        if !self.is_nilpotent(x) {
            return None;
        }
        let mut k = 1;
        let mut p = x;
        while p != ZERO {
            p = self.mul(p, x);
            k += 1;
        }
        Some(k)
    }

    pub fn is_unit(&self, x: Elem) -> bool {
        match self.unit_flags() {
            Some(f) => f.contains(x),
            None => self.unit_by_cycle(x),
        }
    }

    /// Two-sided inverse, found as a power of `x` and checked on both sides.
    pub fn inverse(&self, x: Elem) -> Option<Elem> {
        if !self.is_unit(x) {
            return None;
        }
        let mut prev = self.one;
        let mut p = x;
        while p != self.one {
            prev = p;
            p = self.mul(p, x);
        }
        (self.mul(x, prev) == self.one && self.mul(prev, x) == self.one).then_some(prev)
    }

    /// Iterates `x, x^2, ...` with a seen-set until the sequence hits 0, 1 or
    /// repeats.
    pub fn classify(&self, x: Elem, ms: &[u64]) -> ElementClass {
        let mut seen = HashSet::new();
        let mut prev = self.one;
        let mut p = x;
        let mut k: u32 = 1;
        let mut nilpotency_index = None;
        let mut inverse = None;
        loop {
            if p == ZERO && nilpotency_index.is_none() {
                nilpotency_index = Some(k);
            }
            if p == self.one && inverse.is_none() {
                inverse = Some(prev);
            }
            if (nilpotency_index.is_some() && (inverse.is_some() || p != self.one)) || !seen.insert(p) {
                break;
            }
            prev = p;
            p = self.mul(p, x);
            k += 1;
        }
        let inverse = inverse.filter(|&y| self.mul(x, y) == self.one && self.mul(y, x) == self.one);
        ElementClass {
            is_nilpotent: nilpotency_index.is_some(),
            nilpotency_index,
            is_unit: inverse.is_some(),
            inverse,
            m_potent_for: ms.iter().map(|&m| (m, self.is_m_potent(x, m))).collect(),
            distinct_powers: seen.len(),
        }
    }

    /// All `x` with `x^m = x`, ascending. Cached per `m`.
    pub fn m_potents(&self, m: u64) -> Arc<Vec<Elem>> {
        if let Some(found) = self.m_potents.lock().unwrap().get(&m) {
            return found.clone();
        }
        let list: Vec<Elem> = (0..self.size)
            .into_par_iter()
            .filter(|&x| self.is_m_potent(x, m))
            .collect();
        let list = Arc::new(list);
        self.m_potents.lock().unwrap().insert(m, list.clone());
        list
    }

    pub fn idempotents(&self) -> Arc<Vec<Elem>> {
        self.m_potents(2)
    }

    /// A small additive generating set.
    pub fn additive_generators(&self) -> &[Elem] {
        self.generators.get_or_init(|| match self.arith.spanning_set() {
            Some(gens) => gens,
            None => self.span(0..self.size).generators,
        })
    }

    /// The additive subgroup generated by `gens`.
    pub fn span(&self, gens: impl IntoIterator<Item = Elem>) -> Span {
        let mut set = FixedBitSet::with_capacity(self.size);
        set.insert(ZERO);
        let mut span = Span {
            set,
            members: vec![ZERO],
            generators: Vec::new(),
        };
        self.extend_span(&mut span, gens);
        span
    }

    /// Enlarges `span` to the subgroup generated by it and `gens`.
    pub fn extend_span(&self, span: &mut Span, gens: impl IntoIterator<Item = Elem>) {
        for g in gens {
            if span.set.contains(g) {
                continue;
            }
            span.generators.push(g);
            // H + <g> is a union of cosets H + kg; stop at the first kg in H.
            let base_len = span.members.len();
            let mut c = g;
            while !span.set.contains(c) {
                for i in 0..base_len {
                    let s = self.add(span.members[i], c);
                    span.set.insert(s);
                    span.members.push(s);
                }
                c = self.add(c, g);
            }
        }
    }

    pub fn is_commutative(&self) -> bool {
        *self.commutative.get_or_init(|| {
            let gens = self.additive_generators();
            gens.iter()
                .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
        })
    }

    /// Every element of the set is nilpotent.
    pub fn is_nil_set(&self, set: &[Elem]) -> bool {
        set.iter().all(|&x| self.is_nilpotent(x))
    }

    /// `{ z : 1 - x z is a unit for every x }`, ascending.
    pub fn jacobson_radical(&self, limits: &Limits) -> Result<Vec<Elem>> {
        let n = self.size as u64;
        if n * n > limits.max_pairs {
            return Err(Error::resource("radical scan pairs", limits.max_pairs, n * n));
        }
        let units = self
            .unit_flags()
            .ok_or_else(|| Error::resource("radical ring size", FLAG_CACHE_CAP as u64, n))?;
        let radical: Vec<Elem> = (0..self.size)
            .into_par_iter()
            .filter(|&z| (0..self.size).all(|x| units.contains(self.sub(self.one, self.mul(x, z)))))
            .collect();
        let mut set = FixedBitSet::with_capacity(self.size);
        radical.iter().for_each(|&z| set.insert(z));
        self.check_two_sided_ideal(&set)?;
        Ok(radical)
    }

    /// Closed under addition and negation; witness pair on failure.
    pub fn check_additive_subgroup(&self, set: &FixedBitSet) -> Result<()> {
        if !set.contains(ZERO) {
            return Err(Error::NotClosed { law: "zero", x: ZERO, y: ZERO });
        }
        let members: Vec<Elem> = set.ones().collect();
        let span = self.span(members.iter().copied());
        if span.len() == members.len() {
            return Ok(());
        }
        for &x in &members {
            if !set.contains(self.neg(x)) {
                return Err(Error::NotClosed { law: "negation", x, y: x });
            }
            for &y in &members {
                if !set.contains(self.add(x, y)) {
                    return Err(Error::NotClosed { law: "addition", x, y });
                }
            }
        }
        unreachable!("span grew but the set is closed")
    }

    /// Additive subgroup closed under multiplication by the ring on the right
    /// (and on the left when `two_sided`). Multiplication is bi-additive, so
    /// checking additive generators of the ring suffices.
    pub fn check_ideal(&self, set: &FixedBitSet, two_sided: bool) -> Result<()> {
        self.check_additive_subgroup(set)?;
        let gens = self.additive_generators();
        for x in set.ones() {
            for &r in gens {
                if !set.contains(self.mul(x, r)) {
                    return Err(Error::NotClosed { law: "right multiplication", x, y: r });
                }
                if two_sided && !set.contains(self.mul(r, x)) {
                    return Err(Error::NotClosed { law: "left multiplication", x: r, y: x });
                }
            }
        }
        Ok(())
    }

    pub fn check_two_sided_ideal(&self, set: &FixedBitSet) -> Result<()> {
        self.check_ideal(set, true)
    }

    /// Right ideal generated by `gens`: the span of `x r` over generators `r`
    /// of the additive group.
    pub fn right_ideal(&self, gens: &[Elem]) -> Span {
        let rgens = self.additive_generators();
        let products = gens.iter().flat_map(|&x| rgens.iter().map(move |&r| (x, r)));
        self.span(products.map(|(x, r)| self.mul(x, r)))
    }

    /// Two-sided ideal generated by `gens`: the span of `r x s`.
    pub fn two_sided_ideal(&self, gens: &[Elem]) -> Span {
        let rgens = self.additive_generators();
        let mut span = self.span(std::iter::empty());
        for &x in gens {
            for &r in rgens {
                let rx = self.mul(r, x);
                self.extend_span(&mut span, rgens.iter().map(|&s| self.mul(rx, s)));
            }
        }
        span
    }

    /// `R / I` for a two-sided ideal `I`, cosets numbered by least member.
    pub fn quotient(self: &Arc<Self>, ideal: &FixedBitSet, limits: &Limits) -> Result<Quotient> {
        self.check_two_sided_ideal(ideal)?;
        let members: Vec<Elem> = ideal.ones().collect();
        let mut projection = vec![usize::MAX; self.size];
        let mut representatives = Vec::with_capacity(self.size / members.len());
        for a in 0..self.size {
            if projection[a] != usize::MAX {
                continue;
            }
            let id = representatives.len();
            representatives.push(a);
            for &i in &members {
                projection[self.add(a, i)] = id;
            }
        }
        let arith = QuotientArith {
            parent: self.clone(),
            projection: projection.clone(),
            representatives: representatives.clone(),
        };
        let ring = FiniteRing::new(format!("{}/I", self.label), Arc::new(arith), limits)?;
        Ok(Quotient {
            ring: Arc::new(ring),
            projection,
            representatives,
        })
    }

    /// The subring on `elements`, numbered in ascending ambient order.
    pub fn subring(
        ambient: &Arc<FiniteRing>,
        elements: &[Elem],
        label: impl Into<String>,
        limits: &Limits,
    ) -> Result<FiniteRing> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        let mut set = FixedBitSet::with_capacity(ambient.size());
        elements.iter().for_each(|&x| set.insert(x));
        if !set.contains(ambient.one()) {
            return Err(Error::NotClosed { law: "identity", x: ambient.one(), y: ambient.one() });
        }
        ambient.check_additive_subgroup(&set)?;
        let gens = ambient.span(elements.iter().copied()).generators;
        for &a in &gens {
            for &b in &gens {
                if !set.contains(ambient.mul(a, b)) {
                    return Err(Error::NotClosed { law: "multiplication", x: a, y: b });
                }
            }
        }
        let position: HashMap<Elem, Elem> = elements.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let one = position[&ambient.one()];
        let spanning = gens.iter().map(|g| position[g]).collect();
        let arith = SubringArith {
            ambient: ambient.clone(),
            elements,
            position,
            one,
            spanning,
        };
        FiniteRing::new(label, Arc::new(arith), limits)
    }

    /// Same size, identity and operation tables.
    pub fn same_tables(&self, other: &FiniteRing) -> bool {
        self.size == other.size
            && self.one == other.one
            && (0..self.size).all(|a| {
                self.neg(a) == other.neg(a)
                    && (0..self.size).all(|b| self.add(a, b) == other.add(a, b) && self.mul(a, b) == other.mul(a, b))
            })
    }

    fn verify_axioms(&self, exhaustive: bool) -> Result<()> {
        let (zero, one) = (ZERO, self.one);
        for a in 0..self.size {
            let fail = |law| Err(Error::RingAxiom { law, a, b: 0, c: 0 });
            if self.add(a, zero) != a || self.add(zero, a) != a {
                return fail("additive identity");
            }
            if self.add(a, self.neg(a)) != zero {
                return fail("additive inverse");
            }
            if self.mul(a, one) != a || self.mul(one, a) != a {
                return fail("multiplicative identity");
            }
        }
        let check = |a: Elem, b: Elem, c: Elem| -> Result<()> {
            let fail = |law| Err(Error::RingAxiom { law, a, b, c });
            if self.add(a, b) != self.add(b, a) {
                return fail("additive commutativity");
            }
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return fail("additive associativity");
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return fail("multiplicative associativity");
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return fail("left distributivity");
            }
            if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                return fail("right distributivity");
            }
            Ok(())
        };
        let domain: Vec<Elem> = if exhaustive {
            (0..self.size).collect()
        } else {
            self.additive_generators().to_vec()
        };
        domain.par_iter().try_for_each(|&a| {
            for &b in &domain {
                for &c in &domain {
                    check(a, b, c)?;
                }
            }
            Ok(())
        })
    }
}

fn bits_from(flags: &[bool]) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(flags.len());
    for (i, &f) in flags.iter().enumerate() {
        if f {
            set.insert(i);
        }
    }
    set
}

pub fn set_from(size: usize, elements: impl IntoIterator<Item = Elem>) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(size);
    for x in elements {
        set.insert(x);
    }
    set
}

struct TableArith {
    size: usize,
    one: Elem,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

impl Arithmetic for TableArith {
    fn size(&self) -> usize {
        self.size
    }
    fn one(&self) -> Elem {
        self.one
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.size + b] as Elem
    }
    fn neg(&self, a: Elem) -> Elem {
        self.neg[a] as Elem
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.size + b] as Elem
    }
}

struct ZnArith {
    n: usize,
}

impl Arithmetic for ZnArith {
    fn size(&self) -> usize {
        self.n
    }
    fn one(&self) -> Elem {
        1 % self.n
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        (a + b) % self.n
    }
    fn neg(&self, a: Elem) -> Elem {
        (self.n - a) % self.n
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        ((a as u128 * b as u128) % self.n as u128) as Elem
    }
    fn spanning_set(&self) -> Option<Vec<Elem>> {
        Some(if self.n > 1 { vec![1] } else { vec![] })
    }
}

struct GfArith {
    p: usize,
    k: usize,
    /// Coefficients `c_0..c_{k-1}` of the monic modulus `x^k + sum c_i x^i`.
    modulus: Vec<usize>,
    radix: MixedRadix,
}

impl Arithmetic for GfArith {
    fn size(&self) -> usize {
        self.radix.total()
    }
    fn one(&self) -> Elem {
        if self.k == 1 && self.modulus[0] == 0 { 1 % self.p } else { 1 }
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (self.radix.decode(a), self.radix.decode(b));
        let sum: Vec<Elem> = (0..self.k).map(|i| (x[i] + y[i]) % self.p).collect();
        self.radix.encode(&sum)
    }
    fn neg(&self, a: Elem) -> Elem {
        let x = self.radix.decode(a);
        let neg: Vec<Elem> = (0..self.k).map(|i| (self.p - x[i]) % self.p).collect();
        self.radix.encode(&neg)
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (self.radix.decode(a), self.radix.decode(b));
        let (p, k) = (self.p, self.k);
        let mut prod = vec![0usize; 2 * k - 1];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            // x^k = -sum modulus_i x^i
            for i in 0..k {
                let t = d - k + i;
                prod[t] = (prod[t] + (p - c) * self.modulus[i]) % p;
            }
        }
        self.radix.encode(&prod[..k])
    }
    fn render(&self, a: Elem) -> String {
        if self.k == 1 {
            return a.to_string();
        }
        let x = self.radix.decode(a);
        let terms: Vec<String> = (0..self.k)
            .filter(|&i| x[i] != 0)
            .map(|i| match (i, x[i]) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() { "0".to_string() } else { terms.join("+") }
    }
    fn spanning_set(&self) -> Option<Vec<Elem>> {
        Some((0..self.k).map(|i| self.radix.unit_vector(i, 1)).collect())
    }
}

/// Least monic irreducible of degree `k` over `Z_p`, ordered by the integer
/// `sum c_i p^i` of its non-leading coefficients.
fn least_irreducible(p: u64, k: usize) -> Vec<usize> {
    let p = p as usize;
    let tails = p.pow(k as u32);
    (0..tails)
        .map(|t| digits(t, p, k))
        .find(|tail| {
            let mut f = tail.clone();
            f.push(1);
            is_irreducible(&f, p)
        })
        .expect("irreducible polynomials exist in every degree")
}

fn digits(mut t: usize, p: usize, k: usize) -> Vec<usize> {
    (0..k)
        .map(|_| {
            let d = t % p;
            t /= p;
            d
        })
        .collect()
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(f: &[usize], p: usize) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for t in 0..p.pow(d as u32) {
            let mut g = digits(t, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `f` by monic `g` over `Z_p`.
fn poly_rem(f: &[usize], g: &[usize], p: usize) -> Vec<usize> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (i, &gc) in g.iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - lead) * gc) % p;
        }
        r.pop();
    }
    r
}

struct ProductArith {
    factors: Vec<Arc<FiniteRing>>,
    radix: MixedRadix,
}

impl ProductArith {
    fn map2(&self, a: Elem, b: Elem, op: impl Fn(&FiniteRing, Elem, Elem) -> Elem) -> Elem {
        let (x, y) = (self.radix.decode(a), self.radix.decode(b));
        let mut out = [0; crate::radix::MAX_DIGITS];
        for (i, r) in self.factors.iter().enumerate() {
            out[i] = op(r, x[i], y[i]);
        }
        self.radix.encode(&out[..self.factors.len()])
    }
}

impl Arithmetic for ProductArith {
    fn size(&self) -> usize {
        self.radix.total()
    }
    fn one(&self) -> Elem {
        let ones: Vec<Elem> = self.factors.iter().map(|r| r.one()).collect();
        self.radix.encode(&ones)
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        self.map2(a, b, FiniteRing::add)
    }
    fn neg(&self, a: Elem) -> Elem {
        self.map2(a, 0, |r, x, _| r.neg(x))
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.map2(a, b, FiniteRing::mul)
    }
    fn render(&self, a: Elem) -> String {
        let x = self.radix.decode(a);
        let parts: Vec<String> = self.factors.iter().enumerate().map(|(i, r)| r.render(x[i])).collect();
        format!("({})", parts.join(", "))
    }
    fn spanning_set(&self) -> Option<Vec<Elem>> {
        Some(
            self.factors
                .iter()
                .enumerate()
                .flat_map(|(i, r)| r.additive_generators().iter().map(move |&g| self.radix.unit_vector(i, g)))
                .collect(),
        )
    }
}

struct QuotientArith {
    parent: Arc<FiniteRing>,
    projection: Vec<Elem>,
    representatives: Vec<Elem>,
}

impl Arithmetic for QuotientArith {
    fn size(&self) -> usize {
        self.representatives.len()
    }
    fn one(&self) -> Elem {
        self.projection[self.parent.one()]
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        self.projection[self.parent.add(self.representatives[a], self.representatives[b])]
    }
    fn neg(&self, a: Elem) -> Elem {
        self.projection[self.parent.neg(self.representatives[a])]
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.projection[self.parent.mul(self.representatives[a], self.representatives[b])]
    }
    fn render(&self, a: Elem) -> String {
        format!("[{}]", self.parent.render(self.representatives[a]))
    }
    fn spanning_set(&self) -> Option<Vec<Elem>> {
        let mut gens: Vec<Elem> = self
            .parent
            .additive_generators()
            .iter()
            .map(|&g| self.projection[g])
            .filter(|&g| g != ZERO)
            .collect();
        gens.sort_unstable();
        gens.dedup();
        Some(gens)
    }
}

struct SubringArith {
    ambient: Arc<FiniteRing>,
    elements: Vec<Elem>,
    position: HashMap<Elem, Elem>,
    one: Elem,
    spanning: Vec<Elem>,
}

impl SubringArith {
    fn pos(&self, x: Elem) -> Elem {
        self.position[&x]
    }
}

impl Arithmetic for SubringArith {
    fn size(&self) -> usize {
        self.elements.len()
    }
    fn one(&self) -> Elem {
        self.one
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        self.pos(self.ambient.add(self.elements[a], self.elements[b]))
    }
    fn neg(&self, a: Elem) -> Elem {
        self.pos(self.ambient.neg(self.elements[a]))
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.pos(self.ambient.mul(self.elements[a], self.elements[b]))
    }
    fn render(&self, a: Elem) -> String {
        self.ambient.render(self.elements[a])
    }
    fn spanning_set(&self) -> Option<Vec<Elem>> {
        Some(self.spanning.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn upper_triangular_z2() -> FiniteRing {
        // basis E11, E12, E22; element = b0*E11 + b1*E12 + b2*E22 encoded as bits
        let enc = |a: [usize; 3]| a[0] | a[1] << 1 | a[2] << 2;
        let dec = |x: usize| [x & 1, (x >> 1) & 1, (x >> 2) & 1];
        let mut add = vec![vec![0; 8]; 8];
        let mut mul = vec![vec![0; 8]; 8];
        for x in 0..8 {
            for y in 0..8 {
                add[x][y] = x ^ y;
                let (a, b) = (dec(x), dec(y));
                mul[x][y] = enc([a[0] * b[0], (a[0] * b[1] + a[1] * b[2]) % 2, a[2] * b[2]]);
            }
        }
        FiniteRing::from_tables("T2(Z2)", add, mul, enc([1, 0, 1])).unwrap()
    }

    #[test]
    fn zn_basics() {
        let z1 = FiniteRing::zn(1).unwrap();
        assert_eq!(z1.one(), ZERO);
        let z4 = FiniteRing::zn(4).unwrap();
        assert_eq!(z4.mul(2, 2), 0);
        assert_eq!(z4.nilpotency_index(2), Some(2));
        assert_eq!(z4.nilpotency_index(0), Some(1));
        assert_eq!(z4.inverse(3), Some(3));
        assert!(!z4.is_unit(2));
        assert_eq!(z4.inverse(1), Some(1));
        assert!(!z4.is_m_potent(2, 2));
        let z3 = FiniteRing::zn(3).unwrap();
        assert!(z3.is_m_potent(2, 3));
        assert!((1..3).all(|x| !z3.is_nilpotent(x)));
    }

    #[test]
    fn fields() {
        let f2 = FiniteRing::gf(2, 1).unwrap();
        assert!(f2.same_tables(&FiniteRing::zn(2).unwrap()));
        let f3 = FiniteRing::gf(3, 1).unwrap();
        assert!((0..3).all(|a| f3.pow(a, 3) == a));
        let f4 = FiniteRing::gf(2, 2).unwrap();
        assert!((0..4).all(|a| f4.pow(a, 4) == a));
        assert!((1..4).all(|a| f4.is_unit(a)));
        for (p, k) in [(2u64, 3u32), (3, 2), (5, 1), (2, 4)] {
            let f = FiniteRing::gf(p, k).unwrap();
            let q = f.size() as u64;
            // the multiplicative group is cyclic of order q - 1
            let orders: Vec<u64> = (1..f.size())
                .map(|a| (1..q).find(|&e| f.pow(a, e) == f.one()).unwrap())
                .collect();
            assert!(orders.contains(&(q - 1)), "GF({p}^{k})");
        }
        assert!(FiniteRing::gf(4, 1).is_err());
    }

    #[test]
    fn gf_modulus_is_least() {
        assert_eq!(least_irreducible(2, 2), vec![1, 1]);
        assert_eq!(least_irreducible(2, 3), vec![1, 1, 0]);
        assert_eq!(least_irreducible(3, 2), vec![1, 0]);
        assert_eq!(least_irreducible(5, 1), vec![0]);
    }

    #[test]
    fn radical_examples() {
        let limits = Limits::default();
        assert_eq!(FiniteRing::gf(3, 1).unwrap().jacobson_radical(&limits).unwrap(), vec![0]);
        assert_eq!(FiniteRing::zn(4).unwrap().jacobson_radical(&limits).unwrap(), vec![0, 2]);
        let t = upper_triangular_z2();
        // {0, E12}
        assert_eq!(t.jacobson_radical(&limits).unwrap(), vec![0, 2]);
    }

    #[test]
    fn nil_sets() {
        let z4 = FiniteRing::zn(4).unwrap();
        assert!(z4.is_nil_set(&[0]));
        assert!(z4.is_nil_set(&[0, 2]));
        assert!(!z4.is_nil_set(&[1]));
    }

    #[test]
    fn quotients() {
        let limits = Limits::default();
        let z4 = Arc::new(FiniteRing::zn(4).unwrap());
        let q = z4.quotient(&set_from(4, [0]), &limits).unwrap();
        assert!(q.ring.same_tables(&z4));
        let q = z4.quotient(&set_from(4, [0, 2]), &limits).unwrap();
        assert_eq!(q.ring.size(), 2);
        assert!(q.ring.same_tables(&FiniteRing::zn(2).unwrap()));
        let q = z4.quotient(&set_from(4, 0..4), &limits).unwrap();
        assert!(q.ring.is_zero_ring());
        assert!(matches!(
            z4.quotient(&set_from(4, [0, 1]), &limits),
            Err(Error::NotClosed { .. })
        ));
        // radical of R/J(R) is trivial
        let t = Arc::new(upper_triangular_z2());
        let j = t.jacobson_radical(&limits).unwrap();
        let q = t.quotient(&set_from(8, j), &limits).unwrap();
        assert_eq!(q.ring.jacobson_radical(&limits).unwrap(), vec![0]);
    }

    #[test]
    fn products() {
        let limits = Limits::default();
        let z2 = Arc::new(FiniteRing::zn(2).unwrap());
        let z4 = Arc::new(FiniteRing::zn(4).unwrap());
        let single = FiniteRing::product(std::slice::from_ref(&z4), &limits).unwrap();
        assert!(single.same_tables(&z4));
        let p = FiniteRing::product(&[z2.clone(), z2.clone()], &limits).unwrap();
        let e = 1; // (1, 0)
        assert!(p.is_idempotent(e) && !p.is_unit(e));
        let p = FiniteRing::product(&[z2.clone(), z4.clone()], &limits).unwrap();
        let x = 2 * 2; // (0, 2)
        assert_eq!(p.render(x), "(0, 2)");
        assert_eq!(p.nilpotency_index(x), Some(2));
    }

    #[test]
    fn classification_agrees_with_fast_paths() {
        for ring in [
            FiniteRing::zn(12).unwrap(),
            FiniteRing::zn(9).unwrap(),
            FiniteRing::gf(2, 3).unwrap(),
            upper_triangular_z2(),
        ] {
            for x in ring.elements() {
                let c = ring.classify(x, &[2, 3]);
                assert_eq!(c.is_nilpotent, ring.is_nilpotent(x));
                assert_eq!(c.nilpotency_index, ring.nilpotency_index(x));
                assert_eq!(c.is_unit, ring.is_unit(x));
                assert_eq!(c.inverse, ring.inverse(x));
                assert_eq!(c.m_potent_for[0].1, ring.is_idempotent(x));
                assert!(!(c.is_nilpotent && c.is_unit));
                assert!(c.distinct_powers <= ring.size());
            }
        }
    }

    #[test]
    fn integer_images() {
        let z9 = FiniteRing::zn(9).unwrap();
        assert_eq!(z9.integer(2), 2);
        assert_eq!(z9.integer(-1), 8);
        assert_eq!(z9.integer(12), 3);
    }

    #[test]
    fn rejects_non_rings() {
        // x*y = 0 except 1*1... not unital
        let add = vec![vec![0, 1], vec![1, 0]];
        let mul = vec![vec![0, 0], vec![0, 0]];
        assert!(FiniteRing::from_tables("bad", add, mul, 1).is_err());
    }

    #[test]
    fn ideal_generation() {
        let z12 = FiniteRing::zn(12).unwrap();
        assert_eq!(z12.right_ideal(&[8]).sorted(), vec![0, 4, 8]);
        assert_eq!(z12.two_sided_ideal(&[6, 4]).sorted(), vec![0, 2, 4, 6, 8, 10]);
        let t = upper_triangular_z2();
        assert_eq!(t.right_ideal(&[2]).sorted(), vec![0, 2]);
        // E11 R = {0, E11, E12, E11+E12}
        assert_eq!(t.right_ideal(&[1]).sorted(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn subrings() {
        let limits = Limits::default();
        let t = Arc::new(upper_triangular_z2());
        // diagonal: {0, E11, E22, 1}
        let d = FiniteRing::subring(&t, &[0, 1, 4, 5], "diag", &limits).unwrap();
        assert_eq!(d.size(), 4);
        assert!(d.is_commutative());
        assert!(!t.is_commutative());
        assert!(FiniteRing::subring(&t, &[0, 1, 2, 3], "no one", &limits).is_err());
    }
}
