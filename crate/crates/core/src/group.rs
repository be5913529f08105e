//! Finite groups given by Cayley tables, and the grading groups built on them.
//!
//! Group elements are opaque indices with the identity fixed at index 0. The
//! integers are modelled separately so that finitely supported Z-gradings need
//! no table.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite group stored as a multiplication table. Equality compares
/// tables only; the label is cosmetic.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    label: String,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label, self.order)
    }
}

impl FiniteGroup {
    /// Builds a group from a full multiplication table, checking every axiom.
    pub fn from_table(rows: Vec<Vec<usize>>, label: impl Into<String>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidArgument("a group needs at least one element".into()));
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidArgument(format!(
                    "row {i} of the group table has {} entries, expected {order}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= order) {
                return Err(Error::InvalidArgument(format!("table entry {bad} out of range")));
            }
            table.extend_from_slice(row);
        }
        Self::from_flat(order, table, label.into())
    }

    fn from_flat(order: usize, table: Vec<usize>, label: String) -> Result<Self> {
        let at = |a: usize, b: usize| table[a * order + b];
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::GroupAxiom { law: "identity", a, b: 0, c: 0 });
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::GroupAxiom { law: "associativity", a, b, c });
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            match (0..order).find(|&b| at(a, b) == 0) {
                Some(b) if at(b, a) == 0 => inverse[a] = b,
                _ => return Err(Error::GroupAxiom { law: "inverse", a, b: 0, c: 0 }),
            }
        }
        Ok(FiniteGroup { order, table, inverse, label })
    }

    /// The cyclic group of order `n`, with generator at index 1.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("cyclic group of order 0".into()));
        }
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_flat(n, table, format!("C{n}"))
    }

    /// Componentwise product; the pair `(g, h)` has index `g * |H| + h`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, n) = (g.order, h.order);
        let order = m * n;
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let (a1, a2) = (a / n, a % n);
                let (b1, b2) = (b / n, b % n);
                table.push(g.mul(a1, b1) * n + h.mul(a2, b2));
            }
        }
        let inverse = (0..order)
            .map(|a| g.inv(a / n) * n + h.inv(a % n))
            .collect();
        FiniteGroup {
            order,
            table,
            inverse,
            label: format!("{}x{}", g.label, h.label),
        }
    }

    /// The symmetric group on `n` points, permutations listed lexicographically
    /// (so the identity comes first).
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::InvalidArgument(format!("symmetric group S{n} not supported")));
        }
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            perms.push(current.clone());
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        let position = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let order = perms.len();
        let mut table = Vec::with_capacity(order * order);
        for a in &perms {
            for b in &perms {
                // (a * b)(x) = a(b(x))
                let composed: Vec<usize> = (0..n).map(|x| a[b[x]]).collect();
                table.push(position(&composed));
            }
        }
        Self::from_flat(order, table, format!("S{n}"))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, g: usize, k: u64) -> usize {
        let mut acc = 0;
        let mut base = g;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Least `k >= 1` with `g^k = e`.
    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `g^m = e` forces `g = e`.
    pub fn is_m_torsion_free(&self, m: u64) -> bool {
        (1..self.order).all(|g| self.pow(g, m) != 0)
    }

    /// Every element has order a power of `p`. Rejects non-prime `p`.
    pub fn is_p_group(&self, p: u64) -> Result<bool> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok((0..self.order).all(|g| {
            let mut k = self.element_order(g) as u64;
            while k.is_multiple_of(p) {
                k /= p;
            }
            k == 1
        }))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// An element of a grading group. Finite groups use the table index, the
/// integers use the integer itself; the identity is 0 in both cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Degree(pub i64);

impl Degree {
    pub const IDENTITY: Degree = Degree(0);

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The group a ring is graded by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradingGroup {
    Finite(Arc<FiniteGroup>),
    Integers,
}

impl GradingGroup {
    pub fn finite(g: FiniteGroup) -> Self {
        GradingGroup::Finite(Arc::new(g))
    }

    pub fn trivial() -> Self {
        GradingGroup::finite(FiniteGroup::cyclic(1).unwrap())
    }

    pub fn identity(&self) -> Degree {
        Degree::IDENTITY
    }

    pub fn contains(&self, d: Degree) -> bool {
        match self {
            GradingGroup::Finite(g) => d.0 >= 0 && (d.0 as usize) < g.order(),
            GradingGroup::Integers => true,
        }
    }

    pub fn mul(&self, a: Degree, b: Degree) -> Degree {
        match self {
            GradingGroup::Finite(g) => Degree(g.mul(a.0 as usize, b.0 as usize) as i64),
            GradingGroup::Integers => Degree(a.0 + b.0),
        }
    }

    pub fn inv(&self, a: Degree) -> Degree {
        match self {
            GradingGroup::Finite(g) => Degree(g.inv(a.0 as usize) as i64),
            GradingGroup::Integers => Degree(-a.0),
        }
    }

    pub fn pow(&self, a: Degree, k: u64) -> Degree {
        match self {
            GradingGroup::Finite(g) => Degree(g.pow(a.0 as usize, k) as i64),
            GradingGroup::Integers => Degree(a.0 * k as i64),
        }
    }

    /// For the integers this holds for every `m >= 1`.
    pub fn is_m_torsion_free(&self, m: u64) -> bool {
        match self {
            GradingGroup::Finite(g) => g.is_m_torsion_free(m),
            GradingGroup::Integers => m >= 1,
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            GradingGroup::Finite(g) => Some(g.order()),
            GradingGroup::Integers => None,
        }
    }

    /// All elements, for finite groups.
    pub fn elements(&self) -> Option<Vec<Degree>> {
        self.order().map(|n| (0..n as i64).map(Degree).collect())
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            GradingGroup::Finite(g) => g.is_abelian(),
            GradingGroup::Integers => true,
        }
    }

    pub fn label(&self) -> String {
        match self {
            GradingGroup::Finite(g) => g.label().to_string(),
            GradingGroup::Integers => "Z".to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        let c1 = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(c1.order(), 1);
        let c2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(c2.mul(1, 1), 0);
        let c4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(c4.element_order(1), 4);
        assert_eq!(c4.element_order(2), 2);
        assert!(FiniteGroup::cyclic(0).is_err());
    }

    #[test]
    fn products() {
        let c1 = FiniteGroup::cyclic(1).unwrap();
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let copy = FiniteGroup::direct_product(&c1, &c3);
        assert_eq!(copy.table_rows(), c3.table_rows());

        let c2 = FiniteGroup::cyclic(2).unwrap();
        let klein = FiniteGroup::direct_product(&c2, &c2);
        assert!((1..4).all(|g| klein.element_order(g) == 2));

        let c6 = FiniteGroup::direct_product(&c2, &c3);
        assert_eq!(c6.order(), 6);
        assert!((0..6).any(|g| c6.element_order(g) == 6));
    }

    #[test]
    fn torsion_and_p_groups() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let c3 = FiniteGroup::cyclic(3).unwrap();
        assert!(!c2.is_m_torsion_free(2));
        assert!(c3.is_m_torsion_free(2));
        assert!(GradingGroup::Integers.is_m_torsion_free(2));
        assert!(GradingGroup::Integers.is_m_torsion_free(7));

        assert!(c2.is_p_group(2).unwrap());
        assert!(!FiniteGroup::cyclic(6).unwrap().is_p_group(2).unwrap());
        assert!(FiniteGroup::cyclic(4).unwrap().is_p_group(2).unwrap());
        assert!(c2.is_p_group(4).is_err());
    }

    #[test]
    fn symmetric_group() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!((0..6).map(|g| s3.element_order(g)).max(), Some(3));
    }

    #[test]
    fn rejects_bad_tables() {
        // not associative: a "group" table on {0,1,2} with a latin square but wrong structure
        let rows = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 0]];
        assert!(FiniteGroup::from_table(rows, "bad").is_err());
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]], "bad").is_err());
    }

    #[test]
    fn exhaustive_torsion_matches_definition() {
        for n in 1..=12 {
            let g = FiniteGroup::cyclic(n).unwrap();
            for m in 1..=12u64 {
                let brute = (0..n).all(|x| {
                    let mut y = 0;
                    for _ in 0..m {
                        y = g.mul(y, x);
                    }
                    y != 0 || x == 0
                });
                assert_eq!(g.is_m_torsion_free(m), brute, "C{n}, m={m}");
            }
        }
    }
}
