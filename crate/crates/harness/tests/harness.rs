use gradnil::Limits;
use gradnil_harness::report::{emit, exit_code, parse_machine};
use gradnil_harness::search::{search, Target};
use gradnil_harness::{checks, corpus, export, load, CheckReport, Format, Status};

fn record(status: Status) -> CheckReport {
    CheckReport {
        instance: "r".into(),
        check: "c".into(),
        status,
        witness: Default::default(),
        detail: String::new(),
        time_ms: 0,
    }
}

#[test]
fn export_round_trips_small_corpus_entries() {
    let limits = Limits::default();
    let mut exported = 0;
    for (stem, text) in corpus::CORPUS {
        let inst = load(text, stem, &limits).unwrap();
        if inst.ring().size() > 64 {
            continue;
        }
        let out = export(&inst).unwrap();
        let back = load(&out, stem, &limits).unwrap_or_else(|e| panic!("{stem}: {e}\n{out}"));
        assert!(back.grading.same_as(&inst.grading), "{stem}");
        assert_eq!(back.m, inst.m);
        exported += 1;
    }
    assert!(exported >= 10);
}

#[test]
fn unknown_keys_and_bad_values_are_rejected() {
    let limits = Limits::default();
    let unknown = "m = 2\ncolour = 1\n[ring]\nkind = \"zn\"\nn = 4\ngrading = { group = \"trivial\" }\n";
    assert!(load(unknown, "x", &limits).is_err());
    let small_m = "m = 1\n[ring]\nkind = \"zn\"\nn = 4\ngrading = { group = \"trivial\" }\n";
    assert!(load(small_m, "x", &limits).is_err());
    let bad_witness = "m = 2\n[witnesses]\nlifting = [\"[[9]]\"]\n[ring]\nkind = \"zn\"\nn = 4\ngrading = { group = \"trivial\" }\n";
    assert!(load(bad_witness, "x", &limits).is_err());
}

#[test]
fn oversized_rings_are_resource_errors() {
    let limits = Limits {
        max_elements: 8,
        ..Limits::default()
    };
    let text = "m = 2\n[ring]\nkind = \"zn\"\nn = 16\ngrading = { group = \"trivial\" }\n";
    assert!(matches!(load(text, "x", &limits), Err(e) if e.is_resource()));
}

#[test]
fn empty_report_is_header_only() {
    let text = emit(&[], Format::Text);
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("# gradnil report v1: 0 records"));
    assert_eq!(parse_machine(&emit(&[], Format::Machine)).unwrap(), vec![]);
    assert_eq!(exit_code(&[]), 0);
}

#[test]
fn machine_reports_round_trip_and_set_exit_codes() {
    let all = [Status::Pass, Status::Fail, Status::Falsified, Status::SkippedResource];
    let recs: Vec<CheckReport> = all.iter().map(|&s| record(s)).collect();
    assert_eq!(parse_machine(&emit(&recs, Format::Machine)).unwrap(), recs);
    assert_eq!(exit_code(&recs), 1);
    assert_eq!(exit_code(&[record(Status::Pass), record(Status::SkippedResource)]), 3);
    assert_eq!(exit_code(&[record(Status::Pass), record(Status::Fail)]), 0);
}

#[test]
fn empty_budget_search_reports_nothing() {
    for target in Target::ALL {
        assert!(search(target, 0, 3, &Limits::default()).records().is_empty());
    }
}

#[test]
fn search_is_deterministic_per_seed() {
    let limits = Limits::default();
    let a = search(Target::ReImpliesGraded, 40, 9, &limits);
    let b = search(Target::ReImpliesGraded, 40, 9, &limits);
    assert_eq!(a.built, b.built);
    assert_eq!(
        a.counterexamples.iter().map(|c| c.sample).collect::<Vec<_>>(),
        b.counterexamples.iter().map(|c| c.sample).collect::<Vec<_>>()
    );
}

#[test]
fn every_corpus_entry_names_registered_checks() {
    let limits = Limits::default();
    for (stem, text) in corpus::CORPUS {
        let inst = load(text, stem, &limits).unwrap();
        for c in &inst.checks {
            assert!(checks::is_registered(c), "{stem}: {c}");
        }
    }
}
