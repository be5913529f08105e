//! Seeded counterexample search over small structured graded rings.
//!
//! Sample `i` draws from its own ChaCha stream `i` under the given seed, so
//! results do not depend on scheduling.

use std::sync::Arc;

use gradnil::constructions::{self, MultMode};
use gradnil::nilclean;
use gradnil::{Degree, FiniteGroup, FiniteRing, Grading, GradingGroup, Limits, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::instance::{Instance, Provenance};
use crate::report::{CheckReport, Status};

/// Largest sampled ring.
pub const SAMPLE_CAP: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// `R_e` m-nil clean implies `R` graded m-nil clean. Expected to fail.
    ReImpliesGraded,
    NecessaryConditions,
    QuotientTheorem,
    JgGradedNil,
    SufficiencyCrossZero,
    TriangularTheorem,
    /// Every forward target at once.
    Forward,
}

impl Target {
    pub const ALL: [Target; 7] = [
        Target::ReImpliesGraded,
        Target::NecessaryConditions,
        Target::QuotientTheorem,
        Target::JgGradedNil,
        Target::SufficiencyCrossZero,
        Target::TriangularTheorem,
        Target::Forward,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::ReImpliesGraded => "re_mnc_implies_graded_mnc",
            Target::NecessaryConditions => "necessary_conditions",
            Target::QuotientTheorem => "quotient_theorem",
            Target::JgGradedNil => "jg_graded_nil",
            Target::SufficiencyCrossZero => "sufficiency_i",
            Target::TriangularTheorem => "triangular_theorem",
            Target::Forward => "forward",
        }
    }

    /// Whether counterexamples are expected to exist.
    pub fn is_converse(self) -> bool {
        self == Target::ReImpliesGraded
    }

    fn components(self) -> Vec<Target> {
        match self {
            Target::Forward => vec![
                Target::NecessaryConditions,
                Target::QuotientTheorem,
                Target::JgGradedNil,
                Target::SufficiencyCrossZero,
                Target::TriangularTheorem,
            ],
            t => vec![t],
        }
    }
}

impl std::str::FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let lower = s.to_ascii_lowercase();
        if lower == "re_mnc_implies_graded_mnc_without_torsion_hypothesis" {
            return Ok(Target::ReImpliesGraded);
        }
        Target::ALL
            .into_iter()
            .find(|t| t.name() == lower)
            .ok_or_else(|| {
                let names: Vec<&str> = Target::ALL.iter().map(|t| t.name()).collect();
                format!("unknown target `{s}` (known: {})", names.join(", "))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub sample: usize,
    pub description: String,
    pub m: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub target: Target,
    pub seed: u64,
    pub budget: usize,
    /// Samples that produced a valid graded ring.
    pub built: usize,
    /// Samples where the hypothesis held.
    pub hypothesis_held: usize,
    pub skipped: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl SearchReport {
    /// No records for an empty budget; otherwise one record for the target.
    pub fn records(&self) -> Vec<CheckReport> {
        if self.budget == 0 {
            return Vec::new();
        }
        let summary = format!(
            "{} samples, {} built, {} met the hypothesis, {} skipped",
            self.budget, self.built, self.hypothesis_held, self.skipped
        );
        let (status, detail) = match (self.target.is_converse(), self.counterexamples.is_empty()) {
            (true, false) => (Status::Pass, format!("counterexample found; {summary}")),
            (true, true) => (
                Status::SkippedResource,
                format!("budget exhausted without a counterexample; {summary}"),
            ),
            (false, true) => (Status::Pass, format!("no counterexample; {summary}")),
            (false, false) => (
                Status::Falsified,
                format!("{} counterexamples; {summary}", self.counterexamples.len()),
            ),
        };
        let mut witness = std::collections::BTreeMap::new();
        if let Some(c) = self.counterexamples.first() {
            witness.insert("sample".into(), c.sample.to_string());
            witness.insert("ring".into(), c.description.clone());
            witness.insert("m".into(), c.m.to_string());
            witness.insert("detail".into(), c.detail.clone());
        }
        vec![CheckReport {
            instance: format!("seed {} budget {}", self.seed, self.budget),
            check: format!("search:{}", self.target.name()),
            status,
            witness,
            detail,
            time_ms: 0,
        }]
    }
}

/// A sampled ring, its description and the exponent to test.
pub struct Sample {
    pub instance: Instance,
    pub description: String,
}

fn cyclic(k: usize) -> GradingGroup {
    GradingGroup::finite(FiniteGroup::cyclic(k).expect("k >= 1"))
}

fn concentrated(ring: FiniteRing, group: GradingGroup, limits: &Limits) -> Result<Arc<Grading>> {
    Ok(Arc::new(Grading::concentrated(Arc::new(ring), group, limits)?))
}

/// Draws one graded ring from the structured families: triangular, matrix,
/// group-ring and product constructions over small bases.
pub fn sample(rng: &mut ChaCha8Rng, limits: &Limits) -> Result<Option<Sample>> {
    let m = rng.random_range(2..=4u64);
    let k = rng.random_range(1..=4usize);
    let group = cyclic(k);
    let shift = Degree(rng.random_range(0..k) as i64);
    let e = Degree(0);
    let (grading, provenance, description) = match rng.random_range(0..8) {
        0 => {
            let n = rng.random_range(2..=12);
            let g = concentrated(FiniteRing::zn_with_limits(n, limits)?, group, limits)?;
            (g, Provenance::Leaf, format!("Z_{n} in degree e of C_{k}"))
        }
        1 | 2 => {
            let n = rng.random_range(2..=6);
            let base = concentrated(FiniteRing::zn_with_limits(n, limits)?, group, limits)?;
            let sigma = vec![e, shift];
            let (t, zd) = constructions::triangular_graded(&base, 2, &sigma, limits)?;
            let desc = format!("T_2(Z_{n}) over C_{k}, sigma (0,{})", shift.0);
            let prov = Provenance::Triangular {
                base,
                n: 2,
                sigma,
                zero_diagonal: zd.elements,
            };
            (Arc::new(t), prov, desc)
        }
        3 => {
            let n = rng.random_range(2..=3);
            let base = concentrated(FiniteRing::zn_with_limits(n, limits)?, group, limits)?;
            let sigma = vec![e, shift];
            let g = constructions::matrix_graded(&base, 2, &sigma, limits)?;
            let desc = format!("M_2(Z_{n}) over C_{k}, sigma (0,{})", shift.0);
            (Arc::new(g), Provenance::Matrix { base, n: 2, sigma }, desc)
        }
        4 => {
            let n = rng.random_range(2..=4usize);
            if n.pow(k as u32) > SAMPLE_CAP {
                return Ok(None);
            }
            let base = concentrated(FiniteRing::zn_with_limits(n, limits)?, group, limits)?;
            let rg = constructions::group_ring_graded(&base, MultMode::Standard, limits)?;
            (rg.grading.clone(), Provenance::Leaf, format!("Z_{n}[C_{k}]"))
        }
        5 => {
            let (a, b) = (rng.random_range(2..=4), rng.random_range(2..=6));
            let fa = {
                let base = concentrated(FiniteRing::zn_with_limits(a, limits)?, group.clone(), limits)?;
                Arc::new(constructions::triangular_graded(&base, 2, &[e, shift], limits)?.0)
            };
            let fb = concentrated(FiniteRing::zn_with_limits(b, limits)?, group, limits)?;
            if fa.ring().size() * fb.ring().size() > SAMPLE_CAP {
                return Ok(None);
            }
            let g = constructions::product_grading(&[fa.clone(), fb.clone()], limits)?;
            let desc = format!("T_2(Z_{a}) sigma (0,{}) x Z_{b} over C_{k}", shift.0);
            (Arc::new(g), Provenance::Product { factors: vec![fa, fb] }, desc)
        }
        6 => {
            let base = concentrated(FiniteRing::gf(2, 2)?, group, limits)?;
            let sigma = vec![e, shift];
            let (t, zd) = constructions::triangular_graded(&base, 2, &sigma, limits)?;
            let desc = format!("T_2(GF4) over C_{k}, sigma (0,{})", shift.0);
            let prov = Provenance::Triangular {
                base,
                n: 2,
                sigma,
                zero_diagonal: zd.elements,
            };
            (Arc::new(t), prov, desc)
        }
        _ => {
            let n = rng.random_range(2..=3);
            let s = Degree(rng.random_range(-1..=2));
            let base = concentrated(FiniteRing::zn_with_limits(n, limits)?, GradingGroup::Integers, limits)?;
            let sigma = vec![e, s];
            let (t, zd) = constructions::triangular_graded(&base, 2, &sigma, limits)?;
            let desc = format!("T_2(Z_{n}) over Z, sigma (0,{})", s.0);
            let prov = Provenance::Triangular {
                base,
                n: 2,
                sigma,
                zero_diagonal: zd.elements,
            };
            (Arc::new(t), prov, desc)
        }
    };
    if grading.ring().size() > SAMPLE_CAP {
        return Ok(None);
    }
    let mut instance = Instance::plain(description.clone(), m, grading, *limits);
    instance.provenance = provenance;
    Ok(Some(Sample { instance, description }))
}

/// Outcome of one target on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub hypothesis: bool,
    /// Hypothesis held and the conclusion failed.
    pub violation: Option<String>,
}

fn held(hypothesis: bool) -> Evaluation {
    Evaluation {
        hypothesis,
        violation: None,
    }
}

fn violated(detail: impl Into<String>) -> Evaluation {
    Evaluation {
        hypothesis: true,
        violation: Some(detail.into()),
    }
}

fn decide(g: &Grading, m: u64) -> Result<bool> {
    Ok(nilclean::is_graded_m_nil_clean_ring(g, m, false)?.holds)
}

pub fn evaluate(target: Target, inst: &Instance) -> Result<Evaluation> {
    let m = inst.m;
    let g = &inst.grading;
    match target {
        Target::Forward => {
            let mut any = false;
            for t in target.components() {
                let ev = evaluate(t, inst)?;
                if let Some(v) = ev.violation {
                    return Ok(violated(format!("{}: {v}", t.name())));
                }
                any |= ev.hypothesis;
            }
            Ok(held(any))
        }
        Target::ReImpliesGraded => {
            if !inst.identity_verdict(false)?.holds {
                return Ok(held(false));
            }
            let v = inst.verdict(false)?;
            Ok(match v.failing {
                Some(x) => violated(format!("R_e is m-nil clean; {} has no graded decomposition", inst.describe(x))),
                None => held(true),
            })
        }
        Target::NecessaryConditions => {
            if !inst.verdict(false)?.holds {
                return Ok(held(false));
            }
            if !inst.identity_verdict(false)?.holds {
                return Ok(violated("R_e is not m-nil clean"));
            }
            if inst.torsion_free() {
                let e = g.group().identity();
                let bad = g
                    .homogeneous_elements()
                    .into_iter()
                    .find(|&(x, d)| d.degree().is_some_and(|d| d != e) && !inst.ring().is_nilpotent(x));
                if let Some((x, _)) = bad {
                    return Ok(violated(format!("{} is not nilpotent", inst.describe(x))));
                }
            }
            Ok(held(true))
        }
        Target::QuotientTheorem => {
            if !inst.torsion_free() || !inst.m_minus_one_unit() {
                return Ok(held(false));
            }
            let holds = inst.verdict(false)?.holds;
            let mut any = false;
            for (name, ideal) in inst.candidate_ideals()? {
                if !g.is_graded_nil(&ideal) {
                    continue;
                }
                any = true;
                let q = g.graded_quotient(&ideal, &inst.limits)?;
                if decide(&q.grading, m)? != holds {
                    return Ok(violated(format!("R and R/({name}) disagree")));
                }
            }
            Ok(held(any))
        }
        Target::JgGradedNil => {
            if !inst.verdict(false)?.holds {
                return Ok(held(false));
            }
            let jg = inst.graded_radical()?;
            if g.is_graded_nil(&jg) {
                Ok(held(true))
            } else {
                Ok(violated("J^g is not graded-nil"))
            }
        }
        Target::SufficiencyCrossZero => {
            let group = g.group();
            if group.order().is_none() {
                return Ok(held(false));
            }
            let e = group.identity();
            let ring = inst.ring();
            let cross_zero = g.components().iter().filter(|c| c.degree != e).all(|c| {
                let other = g.component(group.inv(c.degree)).map(|o| o.generators.clone()).unwrap_or_default();
                c.generators.iter().all(|&a| other.iter().all(|&b| ring.mul(a, b) == 0))
            });
            if !cross_zero || !inst.identity_verdict(false)?.holds {
                return Ok(held(false));
            }
            if inst.verdict(false)?.holds {
                Ok(held(true))
            } else {
                Ok(violated("R_e m-nil clean with vanishing cross products, R not graded m-nil clean"))
            }
        }
        Target::TriangularTheorem => {
            if !inst.torsion_free() || !inst.m_minus_one_unit() {
                return Ok(held(false));
            }
            let Provenance::Triangular { base, .. } = &inst.provenance else {
                return Ok(held(false));
            };
            let (bh, th) = (decide(base, m)?, inst.verdict(false)?.holds);
            if bh == th {
                Ok(held(true))
            } else {
                Ok(violated(format!("base decides {bh}, triangular ring decides {th}")))
            }
        }
    }
}

fn stream(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Keeps at most this many counterexamples per report.
const KEEP: usize = 16;

pub fn search(target: Target, budget: usize, seed: u64, limits: &Limits) -> SearchReport {
    let results: Vec<(usize, Option<(String, u64, Result<Evaluation>)>)> = (0..budget)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(seed, i);
            match sample(&mut rng, limits) {
                Ok(Some(s)) => {
                    let ev = evaluate(target, &s.instance);
                    (i, Some((s.description, s.instance.m, ev)))
                }
                _ => (i, None),
            }
        })
        .collect();
    let mut report = SearchReport {
        target,
        seed,
        budget,
        built: 0,
        hypothesis_held: 0,
        skipped: 0,
        counterexamples: Vec::new(),
    };
    for (i, r) in results {
        match r {
            None => report.skipped += 1,
            Some((_, _, Err(_))) => report.skipped += 1,
            Some((description, m, Ok(ev))) => {
                report.built += 1;
                report.hypothesis_held += ev.hypothesis as usize;
                if let Some(detail) = ev.violation {
                    if report.counterexamples.len() < KEEP {
                        report.counterexamples.push(Counterexample {
                            sample: i,
                            description,
                            m,
                            detail,
                        });
                    }
                }
            }
        }
    }
    report
}
