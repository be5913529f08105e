//! The bundled example corpus, embedded at compile time.

use gradnil::Limits;
use rayon::prelude::*;

use crate::checks;
use crate::instance::Instance;
use crate::report::{self, CheckReport, Status};
use crate::spec::{self, SpecError};

macro_rules! entry {
    ($file:literal) => {
        ($file, include_str!(concat!("../corpus/", $file, ".toml")))
    };
}

/// `(file stem, document)` pairs.
pub static CORPUS: &[(&str, &str)] = &[
    entry!("amalgamation_z3_m2"),
    entry!("amalgamation_z4"),
    entry!("amalgamation_z4_z2"),
    entry!("amalgamation_z9"),
    entry!("diagonal_z_m2_gf3"),
    entry!("diagonal_z_m2_z4"),
    entry!("gf4_c2_m4"),
    entry!("group_ring_z2_c3"),
    entry!("group_ring_z4_c2"),
    entry!("lifting_z9"),
    entry!("m2_z2_converse"),
    entry!("m2_z3_antidiagonal"),
    entry!("m2_z4_trivial"),
    entry!("product_remark_z3"),
    entry!("product_t2z2_z2"),
    entry!("quotient_remark_radical"),
    entry!("quotient_z9"),
    entry!("remark_gf3_m2"),
    entry!("remark_gf3_m3"),
    entry!("remark_gf4_m2"),
    entry!("remark_gf4_m4"),
    entry!("t2_over_t2z2"),
    entry!("t2_z2_strong"),
    entry!("t2_z3_integers"),
    entry!("t3_z3_c3"),
    entry!("z2_c2"),
    entry!("z3_c3"),
    entry!("z3_integers"),
    entry!("zn4_trivial"),
];

pub fn source(stem: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(s, _)| *s == stem).map(|(_, text)| *text)
}

pub fn load(stem: &str, limits: &Limits) -> Option<Result<Instance, SpecError>> {
    source(stem).map(|text| spec::load(text, stem, limits))
}

/// Every entry, built concurrently, in corpus order.
pub fn load_all(limits: &Limits) -> Vec<(&'static str, Result<Instance, SpecError>)> {
    CORPUS
        .par_iter()
        .map(|(stem, text)| (*stem, spec::load(text, stem, limits)))
        .collect()
}

/// A record standing in for an entry that could not be built.
pub fn build_failure(name: &str, err: &SpecError) -> CheckReport {
    CheckReport {
        instance: name.to_string(),
        check: "build".to_string(),
        status: if err.is_resource() {
            Status::SkippedResource
        } else {
            Status::Falsified
        },
        witness: Default::default(),
        detail: err.to_string(),
        time_ms: 0,
    }
}

/// Runs every requested check on every entry.
pub fn run(limits: &Limits) -> Vec<CheckReport> {
    let mut out: Vec<CheckReport> = load_all(limits)
        .into_par_iter()
        .flat_map(|(stem, built)| match built {
            Ok(instance) => checks::run_checks(&instance),
            Err(e) => vec![build_failure(stem, &e)],
        })
        .collect();
    report::normalize(&mut out);
    out
}
