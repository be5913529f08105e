//! TOML ring descriptions: parsing, construction and export.
//!
//! A document has a top-level `m`, optional `name`, `checks`, `expected`,
//! `witnesses` and `ideals`, and exactly one `[ring]` table whose `kind`
//! selects the construction. Sub-rings (`base`, `factors`, `a`, `b`) are
//! nested ring tables of the same shape.

use std::collections::BTreeMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use gradnil::constructions::{self, MultMode};
use gradnil::ring::set_from;
use gradnil::{Degree, Elem, FiniteGroup, FiniteRing, Grading, GradingGroup, Limits, Sidedness};
use serde::{Deserialize, Serialize};

use crate::instance::{GroupRingModes, Instance, Provenance};

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
    #[error("{field}: {source}")]
    Build {
        field: String,
        #[source]
        source: gradnil::Error,
    },
    #[error("cannot export: {0}")]
    Export(String),
}

impl SpecError {
    fn invalid(field: &str, message: impl Into<String>) -> Self {
        SpecError::Invalid {
            field: field.to_string(),
            message: message.into(),
        }
    }

    /// The failure is a resource cap rather than a malformed document.
    pub fn is_resource(&self) -> bool {
        matches!(self, SpecError::Build { source, .. } if source.is_resource())
    }
}

fn build_err(field: &str) -> impl FnOnce(gradnil::Error) -> SpecError + '_ {
    move |source| SpecError::Build {
        field: field.to_string(),
        source,
    }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub m: u64,
    /// Empty means every registered check.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<String>,
    /// Expected outcomes keyed by check-specific names.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expected: BTreeMap<String, bool>,
    /// Named witness elements per check, e.g. the element a negative
    /// fixture is known to fail at.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub witnesses: BTreeMap<String, Vec<ElemRef>>,
    /// Extra homogeneous two-sided ideals used by quotient and lifting checks.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ideals: Vec<IdealSpec>,
    pub ring: RingSpec,
}

/// An element by index or by its rendered form (whitespace-insensitive).
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(untagged)]
pub enum ElemRef {
    Index(usize),
    Render(String),
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingSpec {
    Zn {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grading: Option<GradingSpec>,
    },
    Gf {
        p: u64,
        k: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grading: Option<GradingSpec>,
    },
    Table {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        one: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grading: Option<GradingSpec>,
    },
    Matrix {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sigma: Option<Vec<i64>>,
        base: Box<RingSpec>,
    },
    Triangular {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sigma: Option<Vec<i64>>,
        base: Box<RingSpec>,
    },
    DiagonalZ {
        n: usize,
        base: Box<RingSpec>,
    },
    GroupRing {
        #[serde(default)]
        mode: ModeSpec,
        base: Box<RingSpec>,
    },
    Product {
        factors: Vec<RingSpec>,
    },
    Quotient {
        ideal: IdealSpec,
        base: Box<RingSpec>,
    },
    Amalgamation {
        map: MapSpec,
        ideal: IdealSpec,
        a: Box<RingSpec>,
        b: Box<RingSpec>,
    },
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GradingSpec {
    pub group: GroupSpec,
    /// Omitted: the whole ring sits in the identity degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentSpec>>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub degree: i64,
    pub generators: Vec<ElemRef>,
}

/// Group elements are indices; products index lexicographically with the
/// last factor fastest.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Trivial,
    Integers,
    Cyclic(usize),
    Symmetric(usize),
    Product(Vec<GroupSpec>),
    Table(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum ModeSpec {
    /// The first mode (standard, then twisted) that yields a graded ring.
    #[default]
    Auto,
    Standard,
    Twisted,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum IdealSpec {
    Zero,
    Whole,
    GradedRadical,
    /// The ungraded Jacobson radical; must be homogeneous.
    Radical,
    ZeroDiagonal,
    Generators(Vec<ElemRef>),
    Elements(Vec<ElemRef>),
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MapSpec {
    Identity,
    /// `Z_n -> B`, `k -> k * 1`.
    Reduction,
    Images(Vec<ElemRef>),
}

pub fn parse(text: &str) -> Result<SpecFile, SpecError> {
    Ok(toml::from_str(text)?)
}

/// Parses and builds in one step.
pub fn load(text: &str, fallback_name: &str, limits: &Limits) -> Result<Instance, SpecError> {
    let spec = parse(text)?;
    build(&spec, fallback_name, limits)
}

pub fn build(spec: &SpecFile, fallback_name: &str, limits: &Limits) -> Result<Instance, SpecError> {
    if spec.m < 2 {
        return Err(SpecError::invalid("m", format!("must be at least 2, got {}", spec.m)));
    }
    for (i, c) in spec.checks.iter().enumerate() {
        if !crate::checks::is_registered(c) {
            return Err(SpecError::invalid(&format!("checks[{i}]"), format!("unknown check `{c}`")));
        }
    }
    let built = build_ring(&spec.ring, "ring", limits)?;
    let grading = built.grading;
    let ring = grading.ring();
    let mut witnesses = BTreeMap::new();
    for (check, refs) in &spec.witnesses {
        let field = format!("witnesses.{check}");
        let elems = refs
            .iter()
            .enumerate()
            .map(|(i, r)| resolve(ring, r, &format!("{field}[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        witnesses.insert(check.clone(), elems);
    }
    let mut ideals = Vec::new();
    for (i, ideal) in spec.ideals.iter().enumerate() {
        let field = format!("ideals[{i}]");
        ideals.push(resolve_ideal(&grading, ideal, &built.provenance, &field, limits)?);
    }
    Ok(Instance::new(
        spec.name.clone().unwrap_or_else(|| fallback_name.to_string()),
        spec.m,
        grading,
        built.provenance,
        spec.expected.clone(),
        witnesses,
        ideals,
        spec.checks.clone(),
        *limits,
    ))
}

pub struct Built {
    pub grading: Arc<Grading>,
    pub provenance: Provenance,
}

fn leaf(grading: Grading) -> Built {
    Built {
        grading: Arc::new(grading),
        provenance: Provenance::Leaf,
    }
}

pub fn build_ring(spec: &RingSpec, field: &str, limits: &Limits) -> Result<Built, SpecError> {
    let sub = |name: &str| format!("{field}.{name}");
    match spec {
        RingSpec::Zn { n, grading } => {
            let ring = FiniteRing::zn_with_limits(*n, limits).map_err(build_err(&sub("n")))?;
            Ok(leaf(grade(Arc::new(ring), grading.as_ref(), &sub("grading"), limits)?))
        }
        RingSpec::Gf { p, k, grading } => {
            let ring = FiniteRing::gf_with_limits(*p, *k, limits).map_err(build_err(field))?;
            Ok(leaf(grade(Arc::new(ring), grading.as_ref(), &sub("grading"), limits)?))
        }
        RingSpec::Table { add, mul, one, grading } => {
            let ring = FiniteRing::from_tables("table", add.clone(), mul.clone(), *one).map_err(build_err(field))?;
            Ok(leaf(grade(Arc::new(ring), grading.as_ref(), &sub("grading"), limits)?))
        }
        RingSpec::Matrix { n, sigma, base } => {
            let base = build_ring(base, &sub("base"), limits)?.grading;
            let sigma = resolve_sigma(&base, *n, sigma.as_deref(), &sub("sigma"))?;
            let grading = constructions::matrix_graded(&base, *n, &sigma, limits).map_err(build_err(field))?;
            Ok(Built {
                grading: Arc::new(grading),
                provenance: Provenance::Matrix { base, n: *n, sigma },
            })
        }
        RingSpec::Triangular { n, sigma, base } => {
            let base = build_ring(base, &sub("base"), limits)?.grading;
            let sigma = resolve_sigma(&base, *n, sigma.as_deref(), &sub("sigma"))?;
            let (grading, zero_diagonal) =
                constructions::triangular_graded(&base, *n, &sigma, limits).map_err(build_err(field))?;
            Ok(Built {
                grading: Arc::new(grading),
                provenance: Provenance::Triangular {
                    base,
                    n: *n,
                    sigma,
                    zero_diagonal: zero_diagonal.elements,
                },
            })
        }
        RingSpec::DiagonalZ { n, base } => {
            let base = build_ring(base, &sub("base"), limits)?.grading.ring().clone();
            let grading = constructions::diagonal_z_grading(&base, *n, limits).map_err(build_err(field))?;
            Ok(Built {
                grading: Arc::new(grading),
                provenance: Provenance::DiagonalZ { base, n: *n },
            })
        }
        RingSpec::GroupRing { mode, base } => {
            let base = build_ring(base, &sub("base"), limits)?.grading;
            let modes = GroupRingModes::try_both(&base, limits);
            let wanted = match mode {
                ModeSpec::Standard => Some(MultMode::Standard),
                ModeSpec::Twisted => Some(MultMode::Twisted),
                ModeSpec::Auto => None,
            };
            let chosen = modes.pick(wanted).map_err(build_err(&sub("mode")))?;
            Ok(Built {
                grading: chosen.grading.clone(),
                provenance: Provenance::GroupRing { ring: chosen, modes },
            })
        }
        RingSpec::Product { factors } => {
            if factors.is_empty() {
                return Err(SpecError::invalid(&sub("factors"), "at least one factor is required"));
            }
            let factors = factors
                .iter()
                .enumerate()
                .map(|(i, f)| build_ring(f, &format!("{field}.factors[{i}]"), limits).map(|b| b.grading))
                .collect::<Result<Vec<_>, _>>()?;
            let grading = constructions::product_grading(&factors, limits).map_err(build_err(field))?;
            Ok(Built {
                grading: Arc::new(grading),
                provenance: Provenance::Product { factors },
            })
        }
        RingSpec::Quotient { ideal, base } => {
            let built = build_ring(base, &sub("base"), limits)?;
            let ideal = resolve_ideal(&built.grading, ideal, &built.provenance, &sub("ideal"), limits)?;
            let q = built
                .grading
                .graded_quotient(&ideal, limits)
                .map_err(build_err(&sub("ideal")))?;
            Ok(Built {
                grading: q.grading.clone(),
                provenance: Provenance::Quotient {
                    base: built.grading,
                    ideal,
                    projection: q.projection,
                },
            })
        }
        RingSpec::Amalgamation { map, ideal, a, b } => {
            let a_built = build_ring(a, &sub("a"), limits)?;
            let b_built = build_ring(b, &sub("b"), limits)?;
            let (ga, gb) = (a_built.grading, b_built.grading);
            let f = resolve_map(&ga, &gb, map, a, &sub("map"))?;
            let j = resolve_ideal(&gb, ideal, &b_built.provenance, &sub("ideal"), limits)?;
            let am = constructions::amalgamation(&ga, &gb, &f, &j, limits).map_err(build_err(field))?;
            Ok(Built {
                grading: am.grading.clone(),
                provenance: Provenance::Amalgamation {
                    a: ga,
                    b: gb,
                    f,
                    j,
                    result: Arc::new(am),
                },
            })
        }
    }
}

fn resolve_sigma(base: &Grading, n: usize, sigma: Option<&[i64]>, field: &str) -> Result<Vec<Degree>, SpecError> {
    let e = base.group().identity();
    match sigma {
        None => Ok(vec![e; n]),
        Some(s) if s.len() != n => Err(SpecError::invalid(field, format!("expected {n} degrees, got {}", s.len()))),
        Some(s) => s
            .iter()
            .map(|&d| {
                let d = Degree(d);
                if base.group().contains(d) {
                    Ok(d)
                } else {
                    Err(SpecError::invalid(field, format!("{d} is not in {}", base.group().label())))
                }
            })
            .collect(),
    }
}

pub fn build_group(spec: &GroupSpec, field: &str) -> Result<GradingGroup, SpecError> {
    match spec {
        GroupSpec::Integers => Ok(GradingGroup::Integers),
        other => Ok(GradingGroup::finite(build_finite_group(other, field)?)),
    }
}

fn build_finite_group(spec: &GroupSpec, field: &str) -> Result<FiniteGroup, SpecError> {
    let err = build_err(field);
    match spec {
        GroupSpec::Trivial => FiniteGroup::cyclic(1).map_err(err),
        GroupSpec::Integers => Err(SpecError::invalid(field, "the integers cannot appear inside a finite group")),
        GroupSpec::Cyclic(n) => FiniteGroup::cyclic(*n).map_err(err),
        GroupSpec::Symmetric(n) => FiniteGroup::symmetric(*n).map_err(err),
        GroupSpec::Table(rows) => FiniteGroup::from_table(rows.clone(), "G").map_err(err),
        GroupSpec::Product(parts) => {
            let mut acc = FiniteGroup::cyclic(1).map_err(build_err(field))?;
            for (i, p) in parts.iter().enumerate() {
                let g = build_finite_group(p, &format!("{field}.product[{i}]"))?;
                acc = if acc.order() == 1 { g } else { FiniteGroup::direct_product(&acc, &g) };
            }
            Ok(acc)
        }
    }
}

fn grade(ring: Arc<FiniteRing>, spec: Option<&GradingSpec>, field: &str, limits: &Limits) -> Result<Grading, SpecError> {
    let Some(spec) = spec else {
        return Grading::trivial(ring, limits).map_err(build_err(field));
    };
    let group = build_group(&spec.group, &format!("{field}.group"))?;
    match &spec.components {
        None => Grading::concentrated(ring, group, limits).map_err(build_err(field)),
        Some(components) => {
            let mut gens = Vec::new();
            for (i, c) in components.iter().enumerate() {
                let cf = format!("{field}.components[{i}]");
                let elems = c
                    .generators
                    .iter()
                    .enumerate()
                    .map(|(k, r)| resolve(&ring, r, &format!("{cf}.generators[{k}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                gens.push((Degree(c.degree), elems));
            }
            Grading::verify(ring, group, gens, limits).map_err(build_err(field))
        }
    }
}

fn squeeze(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

pub fn resolve(ring: &FiniteRing, r: &ElemRef, field: &str) -> Result<Elem, SpecError> {
    match r {
        ElemRef::Index(i) if *i < ring.size() => Ok(*i),
        ElemRef::Index(i) => Err(SpecError::invalid(
            field,
            format!("element {i} is outside {} ({} elements)", ring.label(), ring.size()),
        )),
        ElemRef::Render(s) => {
            let want = squeeze(s);
            ring.elements()
                .find(|&x| squeeze(&ring.render(x)) == want)
                .ok_or_else(|| SpecError::invalid(field, format!("no element of {} renders as `{s}`", ring.label())))
        }
    }
}

fn resolve_ideal(
    grading: &Arc<Grading>,
    spec: &IdealSpec,
    provenance: &Provenance,
    field: &str,
    limits: &Limits,
) -> Result<FixedBitSet, SpecError> {
    let ring = grading.ring();
    let size = ring.size();
    let set = match spec {
        IdealSpec::Zero => set_from(size, [0]),
        IdealSpec::Whole => set_from(size, ring.elements()),
        IdealSpec::GradedRadical => grading
            .graded_jacobson_radical(limits)
            .map_err(build_err(field))?
            .elements,
        IdealSpec::Radical => set_from(size, ring.jacobson_radical(limits).map_err(build_err(field))?),
        IdealSpec::ZeroDiagonal => match provenance {
            Provenance::Triangular { zero_diagonal, .. } => zero_diagonal.clone(),
            _ => return Err(SpecError::invalid(field, "zero_diagonal needs a triangular ring")),
        },
        IdealSpec::Generators(refs) => {
            let gens = refs
                .iter()
                .enumerate()
                .map(|(i, r)| resolve(ring, r, &format!("{field}.generators[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(&x) = gens.iter().find(|&&x| !grading.is_homogeneous(x)) {
                return Err(SpecError::invalid(field, format!("generator {} is not homogeneous", ring.render(x))));
            }
            grading
                .homogeneous_two_sided_closure(&gens)
                .map_err(build_err(field))?
                .elements
        }
        IdealSpec::Elements(refs) => {
            let elems = refs
                .iter()
                .enumerate()
                .map(|(i, r)| resolve(ring, r, &format!("{field}.elements[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            set_from(size, elems)
        }
    };
    grading
        .ideal_from_set(set, Sidedness::TwoSided)
        .map(|i| i.elements)
        .map_err(build_err(field))
}

fn resolve_map(a: &Grading, b: &Grading, map: &MapSpec, a_spec: &RingSpec, field: &str) -> Result<Vec<Elem>, SpecError> {
    let (ra, rb) = (a.ring(), b.ring());
    match map {
        MapSpec::Identity => {
            if !ra.same_tables(rb) {
                return Err(SpecError::invalid(field, "identity map needs A and B to be the same ring"));
            }
            Ok(ra.elements().collect())
        }
        MapSpec::Reduction => match a_spec {
            RingSpec::Zn { .. } => Ok(ra.elements().map(|k| rb.integer(k as i64)).collect()),
            _ => Err(SpecError::invalid(field, "reduction needs A of kind zn")),
        },
        MapSpec::Images(refs) => {
            if refs.len() != ra.size() {
                return Err(SpecError::invalid(
                    field,
                    format!("expected {} images, got {}", ra.size(), refs.len()),
                ));
            }
            refs.iter()
                .enumerate()
                .map(|(i, r)| resolve(rb, r, &format!("{field}.images[{i}]")))
                .collect()
        }
    }
}

/// Flattens an instance into a `table` document that rebuilds the same
/// ring tables and components.
pub fn export(instance: &Instance) -> Result<String, SpecError> {
    let grading = &instance.grading;
    let ring = grading.ring();
    if ring.size() > 256 {
        return Err(SpecError::Export(format!(
            "table export supports at most 256 elements, {} has {}",
            ring.label(),
            ring.size()
        )));
    }
    let rows = |op: &dyn Fn(Elem, Elem) -> Elem| -> Vec<Vec<usize>> {
        ring.elements().map(|a| ring.elements().map(|b| op(a, b)).collect()).collect()
    };
    let group = match grading.group() {
        GradingGroup::Integers => GroupSpec::Integers,
        GradingGroup::Finite(g) => GroupSpec::Table(g.table_rows()),
    };
    let components = grading
        .components()
        .iter()
        .map(|c| ComponentSpec {
            degree: c.degree.0,
            generators: c.generators.iter().map(|&x| ElemRef::Index(x)).collect(),
        })
        .collect();
    let spec = SpecFile {
        name: Some(instance.name.clone()),
        description: Some(format!("exported from {}", ring.label())),
        m: instance.m,
        checks: instance.checks.clone(),
        expected: instance.expected.clone(),
        witnesses: instance
            .witnesses
            .iter()
            .map(|(k, v)| (k.clone(), v.iter().map(|&x| ElemRef::Index(x)).collect()))
            .collect(),
        ideals: instance
            .ideals
            .iter()
            .map(|set| IdealSpec::Elements(set.ones().map(ElemRef::Index).collect()))
            .collect(),
        ring: RingSpec::Table {
            add: rows(&|a, b| ring.add(a, b)),
            mul: rows(&|a, b| ring.mul(a, b)),
            one: ring.one(),
            grading: Some(GradingSpec {
                group,
                components: Some(components),
            }),
        },
    };
    toml::to_string(&spec).map_err(|e| SpecError::Export(e.to_string()))
}
