//! A built ring description together with memoized decisions.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use gradnil::constructions::{self, Amalgamation, GroupRing, MultMode};
use gradnil::nilclean::{self, RingVerdict};
use gradnil::{Degree, Elem, Error, FiniteRing, Grading, Limits, Result};

/// How the instance ring was constructed; checks about a construction use
/// the recorded ingredients.
pub enum Provenance {
    Leaf,
    Matrix {
        base: Arc<Grading>,
        n: usize,
        sigma: Vec<Degree>,
    },
    Triangular {
        base: Arc<Grading>,
        n: usize,
        sigma: Vec<Degree>,
        zero_diagonal: FixedBitSet,
    },
    DiagonalZ {
        base: Arc<FiniteRing>,
        n: usize,
    },
    GroupRing {
        ring: Arc<GroupRing>,
        modes: GroupRingModes,
    },
    Product {
        factors: Vec<Arc<Grading>>,
    },
    Quotient {
        base: Arc<Grading>,
        ideal: FixedBitSet,
        projection: Vec<Elem>,
    },
    Amalgamation {
        a: Arc<Grading>,
        b: Arc<Grading>,
        f: Vec<Elem>,
        j: FixedBitSet,
        result: Arc<Amalgamation>,
    },
}

impl Provenance {
    pub fn kind(&self) -> &'static str {
        match self {
            Provenance::Leaf => "leaf",
            Provenance::Matrix { .. } => "matrix",
            Provenance::Triangular { .. } => "triangular",
            Provenance::DiagonalZ { .. } => "diagonal_z",
            Provenance::GroupRing { .. } => "group_ring",
            Provenance::Product { .. } => "product",
            Provenance::Quotient { .. } => "quotient",
            Provenance::Amalgamation { .. } => "amalgamation",
        }
    }
}

/// The group ring under both multiplication rules; a rule whose result is
/// not a graded ring keeps the violation.
pub struct GroupRingModes {
    pub standard: Result<Arc<GroupRing>>,
    pub twisted: Result<Arc<GroupRing>>,
}

impl GroupRingModes {
    pub fn try_both(base: &Arc<Grading>, limits: &Limits) -> Self {
        let build = |mode| constructions::group_ring_graded(base, mode, limits).map(Arc::new);
        GroupRingModes {
            standard: build(MultMode::Standard),
            twisted: build(MultMode::Twisted),
        }
    }

    pub fn get(&self, mode: MultMode) -> &Result<Arc<GroupRing>> {
        match mode {
            MultMode::Standard => &self.standard,
            MultMode::Twisted => &self.twisted,
        }
    }

    /// The requested mode, or the first valid one (standard first).
    pub fn pick(&self, wanted: Option<MultMode>) -> Result<Arc<GroupRing>> {
        match wanted {
            Some(mode) => self.get(mode).clone(),
            None => self.standard.clone().or_else(|_| self.twisted.clone()),
        }
    }

    /// One phrase per mode: "standard: graded" or the violation.
    pub fn summary(&self) -> String {
        [MultMode::Standard, MultMode::Twisted]
            .iter()
            .map(|&mode| match self.get(mode) {
                Ok(_) => format!("{mode}: graded"),
                Err(e) => format!("{mode}: rejected ({e})"),
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

pub struct Instance {
    pub name: String,
    pub m: u64,
    pub grading: Arc<Grading>,
    pub provenance: Provenance,
    pub expected: BTreeMap<String, bool>,
    pub witnesses: BTreeMap<String, Vec<Elem>>,
    pub ideals: Vec<FixedBitSet>,
    /// Requested checks; empty means all.
    pub checks: Vec<String>,
    pub limits: Limits,
    verdicts: [OnceLock<Result<RingVerdict>>; 2],
    identity_verdicts: [OnceLock<Result<RingVerdict>>; 2],
    radical: OnceLock<Result<FixedBitSet>>,
    identity_ring: OnceLock<Result<(Arc<FiniteRing>, Vec<Elem>)>>,
}

impl Instance {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: String,
        m: u64,
        grading: Arc<Grading>,
        provenance: Provenance,
        expected: BTreeMap<String, bool>,
        witnesses: BTreeMap<String, Vec<Elem>>,
        ideals: Vec<FixedBitSet>,
        checks: Vec<String>,
        limits: Limits,
    ) -> Self {
        Instance {
            name,
            m,
            grading,
            provenance,
            expected,
            witnesses,
            ideals,
            checks,
            limits,
            verdicts: Default::default(),
            identity_verdicts: Default::default(),
            radical: OnceLock::new(),
            identity_ring: OnceLock::new(),
        }
    }

    /// A bare instance with no fixture data.
    pub fn plain(name: impl Into<String>, m: u64, grading: Arc<Grading>, limits: Limits) -> Self {
        Self::new(
            name.into(),
            m,
            grading,
            Provenance::Leaf,
            BTreeMap::new(),
            BTreeMap::new(),
            Vec::new(),
            Vec::new(),
            limits,
        )
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.grading.ring()
    }

    pub fn expected(&self, key: &str) -> Option<bool> {
        self.expected.get(key).copied()
    }

    pub fn torsion_free(&self) -> bool {
        self.grading.group().is_m_torsion_free(self.m - 1)
    }

    pub fn m_minus_one_unit(&self) -> bool {
        let ring = self.ring();
        ring.is_unit(ring.integer(self.m as i64 - 1))
    }

    pub fn verdict(&self, strong: bool) -> Result<RingVerdict> {
        self.verdicts[strong as usize]
            .get_or_init(|| nilclean::is_graded_m_nil_clean_ring(&self.grading, self.m, strong))
            .clone()
    }

    pub fn graded_radical(&self) -> Result<FixedBitSet> {
        self.radical
            .get_or_init(|| self.grading.graded_jacobson_radical(&self.limits).map(|i| i.elements))
            .clone()
    }

    /// `R_e` as a ring and its embedding into `R`.
    pub fn identity_ring(&self) -> Result<(Arc<FiniteRing>, Vec<Elem>)> {
        self.identity_ring
            .get_or_init(|| self.grading.identity_component_ring(&self.limits))
            .clone()
    }

    pub fn identity_verdict(&self, strong: bool) -> Result<RingVerdict> {
        self.identity_verdicts[strong as usize]
            .get_or_init(|| {
                let (re, _) = self.identity_ring()?;
                nilclean::is_m_nil_clean_ring(&re, self.m, strong)
            })
            .clone()
    }

    /// Homogeneous two-sided ideals worth quotienting by: the listed ones,
    /// the graded radical, and the construction's own ideal if any.
    pub fn candidate_ideals(&self) -> Result<Vec<(String, FixedBitSet)>> {
        let mut out: Vec<(String, FixedBitSet)> = self
            .ideals
            .iter()
            .enumerate()
            .map(|(i, s)| (format!("ideals[{i}]"), s.clone()))
            .collect();
        out.push(("graded radical".into(), self.graded_radical()?));
        if let Provenance::Triangular { zero_diagonal, .. } = &self.provenance {
            out.push(("zero diagonal".into(), zero_diagonal.clone()));
        }
        let mut seen: Vec<FixedBitSet> = Vec::new();
        out.retain(|(_, s)| {
            if seen.contains(s) {
                false
            } else {
                seen.push(s.clone());
                true
            }
        });
        Ok(out)
    }

    /// `x` as `render (#index, degree d)`.
    pub fn describe(&self, x: Elem) -> String {
        describe(&self.grading, x)
    }
}

pub fn describe(grading: &Grading, x: Elem) -> String {
    format!("{} (#{x}, degree {})", grading.ring().render(x), grading.degree_of(x))
}

/// Guard for quadratic element loops over derived rings.
pub fn ensure_size(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        return Err(Error::resource(what, cap as u64, size as u64));
    }
    Ok(())
}
