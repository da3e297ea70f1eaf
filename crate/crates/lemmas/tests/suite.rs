use std::collections::HashMap;
use std::sync::OnceLock;

use korbit::catalog::{build_catalog, BuildOptions, Catalog};
use korbit::perm::{Permutation, PermutationGroup};
use korbit_lemmas::*;
use serde_json::json;

fn catalog() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(|| {
        let opts = BuildOptions {
            max_family_degree: 7,
            ..Default::default()
        };
        build_catalog(&opts).unwrap().catalog
    })
}

fn config(checks: &[CheckId], max_degree: usize) -> SuiteConfig {
    SuiteConfig {
        checks: checks.to_vec(),
        max_degree: Some(max_degree),
        ..Default::default()
    }
}

fn rows_for<'a>(report: &'a SuiteReport, check: CheckId, group: &str) -> Vec<&'a CheckRow> {
    report
        .rows
        .iter()
        .filter(|r| r.check == check && r.group_id == group)
        .collect()
}

fn all_perms(n: usize) -> Vec<Permutation> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if prefix.len() == used.len() {
            out.push(Permutation::from_images(prefix).unwrap());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// 2-closure by filtering all of `S_n`: permutations mapping every ordered
/// pair into its own orbital.
fn brute_two_closure_order(g: &PermutationGroup) -> usize {
    let n = g.degree();
    let mut color = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            if color.contains_key(&(a, b)) {
                continue;
            }
            let c = color.len();
            for h in g.elements() {
                color.entry((h.apply(a), h.apply(b))).or_insert(c);
            }
        }
    }
    all_perms(n)
        .iter()
        .filter(|s| (0..n).all(|a| (0..n).all(|b| color[&(a, b)] == color[&(s.apply(a), s.apply(b))])))
        .count()
}

#[test]
fn descriptors_cover_every_check_once() {
    assert_eq!(DESCRIPTORS.len(), 19);
    let mut ids: Vec<CheckId> = CheckId::all().collect();
    ids.dedup();
    assert_eq!(ids.len(), 19);
    for id in CheckId::all() {
        assert_eq!(id.name().parse::<CheckId>().unwrap(), id);
        assert_eq!(id.name()[4..].to_lowercase().parse::<CheckId>().unwrap(), id);
        assert_eq!(serde_json::to_value(id).unwrap(), json!(id.name()));
    }
    assert!("CHK-X9".parse::<CheckId>().is_err());
    let controls: Vec<CheckId> = DESCRIPTORS.iter().filter(|d| d.control).map(|d| d.id).collect();
    assert_eq!(controls, vec![CheckId::P3, CheckId::Fks]);
}

#[test]
fn nmd_regular_s3_is_two_closed() {
    let report = run_suite(catalog(), &config(&[CheckId::L11, CheckId::S31], 6));
    let row = rows_for(&report, CheckId::L11, "S3-regular@6")[0];
    assert_eq!(row.status, Status::Pass);
    let group = catalog().get("S3-regular@6").unwrap().group().unwrap();
    assert_eq!(row.witness["closure_order"], json!(brute_two_closure_order(&group)));
    assert_eq!(row.witness["closure_order"], json!(6));

    let s31 = rows_for(&report, CheckId::S31, "S3-regular@6")[0];
    assert_eq!(s31.status, Status::Pass);
    let w: Permutation = serde_json::from_value(s31.witness["element"].clone()).unwrap();
    assert!(!w.is_identity() && w.cycle_type().is_uniform());
}

#[test]
fn lemma_16_verdicts_and_convention() {
    let report = run_suite(catalog(), &config(&[CheckId::L16], 5));
    let status = |r: &SuiteReport, g: &str| rows_for(r, CheckId::L16, g)[0].status;
    assert_eq!(status(&report, "A5@5"), Status::Pass);
    assert_eq!(status(&report, "S5@5"), Status::Fail);
    assert_eq!(status(&report, "S3@3"), Status::Fail);
    assert_eq!(status(&report, "C5@5"), Status::Vacuous);
    // A4 has the imprimitive subgroup V4.
    assert_eq!(status(&report, "A4@4"), Status::Vacuous);
    let a5 = catalog().get("A5@5").unwrap().group().unwrap();
    assert_eq!(brute_two_closure_order(&a5), 120);

    let standard = SuiteConfig {
        convention: Convention::Standard,
        ..config(&[CheckId::L16], 5)
    };
    let report = run_suite(catalog(), &standard);
    assert_eq!(status(&report, "C5@5"), Status::Fail);
    assert_eq!(status(&report, "A5@5"), Status::Pass);
}

#[test]
fn convention_only_moves_rows_in_and_out_of_vacuous() {
    let checks: Vec<CheckId> = CheckId::all().collect();
    let nonabelian = run_suite(catalog(), &config(&checks, 5));
    let standard = run_suite(
        catalog(),
        &SuiteConfig {
            convention: Convention::Standard,
            ..config(&checks, 5)
        },
    );
    assert_eq!(nonabelian.rows.len(), standard.rows.len());
    let mut moved = 0;
    for (a, b) in nonabelian.rows.iter().zip(&standard.rows) {
        assert_eq!(a.instance, b.instance);
        if a != b {
            assert!(a.check.descriptor().uses_convention, "{} changed", a.check);
            assert!(a.status == Status::Vacuous || b.status == Status::Vacuous);
            moved += 1;
        }
    }
    assert!(moved > 0);
}

#[test]
fn block_kernel_of_c4() {
    let report = run_suite(catalog(), &config(&[CheckId::P3], 4));
    let rows = rows_for(&report, CheckId::P3, "C4@4");
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].params, json!({ "partition": [[1, 3], [2, 4]] }));
    assert_eq!(rows[0].status, Status::Pass);
    assert_eq!(rows[0].witness["kernel"]["order"], json!(2));
}

#[test]
fn lemma_15_fails_on_a4_through_v4() {
    let report = run_suite(catalog(), &config(&[CheckId::L15], 4));
    let rows = rows_for(&report, CheckId::L15, "A4@4");
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].status, Status::Fail);
    assert_eq!(rows[0].witness["subgroup_order"], json!(4));
    assert_eq!(rows[0].witness["group_two_closed"], json!(false));
    assert_eq!(rows[0].witness["subgroup_two_closed"], json!(true));
    assert!(verify_witness(catalog(), rows[0], &SuiteConfig::default()).unwrap());
}

#[test]
fn empty_check_list_gives_empty_report() {
    let report = run_suite(catalog(), &config(&[], 5));
    assert!(report.rows.is_empty());
    assert_eq!(report.summary.rows, 0);
    assert_eq!(report.summary.totals.total(), 0);
    let text = report.to_jsonl();
    assert_eq!(text.lines().count(), 1);
    let summary: SuiteSummary = serde_json::from_str(text.trim()).unwrap();
    assert!(summary.summary);
}

#[test]
fn fks_passes_on_every_transitive_entry_up_to_degree_seven() {
    let report = run_suite(catalog(), &config(&[CheckId::Fks], 7));
    let transitive = catalog()
        .iter()
        .filter(|e| e.degree <= 7 && e.tags.transitive == Some(true))
        .count();
    assert_eq!(report.count(Status::Pass), transitive);
    assert_eq!(report.rows.len(), transitive);
}

#[test]
fn reports_are_deterministic_across_parallelism() {
    let checks: Vec<CheckId> = CheckId::all().collect();
    let one = run_suite(
        catalog(),
        &SuiteConfig {
            parallelism: Some(1),
            ..config(&checks, 4)
        },
    );
    let four = run_suite(
        catalog(),
        &SuiteConfig {
            parallelism: Some(4),
            ..config(&checks, 4)
        },
    );
    assert_eq!(one.to_jsonl(), four.to_jsonl());
    assert_eq!(one.to_jsonl(), run_suite(catalog(), &config(&checks, 4)).to_jsonl());
}

#[test]
fn switching_conclusions_off_keeps_vacuous_rows() {
    let checks: Vec<CheckId> = CheckId::all().collect();
    let on = run_suite(catalog(), &config(&checks, 4));
    let off = run_suite(
        catalog(),
        &SuiteConfig {
            evaluate_conclusions: false,
            ..config(&checks, 4)
        },
    );
    for (a, b) in on.rows.iter().zip(&off.rows) {
        assert_eq!(a.instance, b.instance);
        assert_eq!(a.status == Status::Vacuous, b.status == Status::Vacuous, "{}", a.instance);
        if matches!(a.status, Status::Pass | Status::Fail) {
            assert_eq!(b.status, Status::Skipped);
        }
    }
}

#[test]
fn summary_accounting_and_row_round_trip() {
    let checks: Vec<CheckId> = CheckId::all().collect();
    let report = run_suite(catalog(), &config(&checks, 5));
    let s = &report.summary;
    assert_eq!(s.rows, report.rows.len());
    assert_eq!(s.totals.total(), s.rows);
    assert_eq!(s.per_check.len(), 19);
    assert_eq!(s.per_check.iter().map(|c| c.counts.total()).sum::<usize>(), s.rows);
    assert_eq!(s.groups, catalog().iter().filter(|e| e.degree <= 5).count());
    // Every (check, group) pair gets at least one row.
    for id in CheckId::all() {
        for e in catalog().iter().filter(|e| e.degree <= 5) {
            assert!(!rows_for(&report, id, &e.id).is_empty(), "{id} {}", e.id);
        }
    }
    let text = report.to_jsonl();
    let lines: Vec<&str> = text.lines().collect();
    for (line, row) in lines.iter().zip(&report.rows) {
        assert_eq!(&serde_json::from_str::<CheckRow>(line).unwrap(), row);
    }
    let last: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_eq!(last["summary"], json!(true));
}

#[test]
fn witnesses_verify_and_tampering_is_caught() {
    let checks: Vec<CheckId> = CheckId::all().collect();
    let cfg = config(&checks, 4);
    let report = run_suite(catalog(), &cfg);
    for row in report.rows.iter().filter(|r| matches!(r.status, Status::Pass | Status::Fail)) {
        assert!(verify_witness(catalog(), row, &cfg).unwrap(), "{} {}", row.check, row.instance);
    }
    let vacuous = report.rows.iter().find(|r| r.status == Status::Vacuous).unwrap();
    assert!(matches!(
        verify_witness(catalog(), vacuous, &cfg),
        Err(LabError::NotVerifiable(Status::Vacuous))
    ));

    let fks = report.rows.iter().find(|r| r.check == CheckId::Fks && r.group_id == "C4@4").unwrap();
    let mut moved = fks.clone();
    moved.group_id = "D4@4".into();
    assert!(!verify_witness(catalog(), &moved, &cfg).unwrap());
    let mut unknown = fks.clone();
    unknown.group_id = "nope@4".into();
    assert!(verify_witness(catalog(), &unknown, &cfg).is_err());
    let mut forged = fks.clone();
    forged.witness["element"] = json!([1, 2, 3, 4]);
    assert!(!verify_witness(catalog(), &forged, &cfg).unwrap());
    let mut flipped = fks.clone();
    flipped.status = Status::Fail;
    assert!(!verify_witness(catalog(), &flipped, &cfg).unwrap());
}

#[test]
fn control_checks_never_fail() {
    let report = run_suite(catalog(), &config(&[CheckId::P3, CheckId::Fks], 7));
    assert_eq!(report.count(Status::Fail), 0);
    assert!(report.count(Status::Pass) > 0);
}

#[test]
fn truncated_lists_end_in_a_skipped_row() {
    let cfg = SuiteConfig {
        instance_cap: 3,
        ..config(&[CheckId::P4], 4)
    };
    let report = run_suite(catalog(), &cfg);
    let rows = rows_for(&report, CheckId::P4, "S4@4");
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[3].status, Status::Skipped);
    assert_eq!(rows[3].params, json!({ "truncated_after": 3 }));
}

#[test]
fn timing_is_zero_unless_requested() {
    let report = run_suite(catalog(), &config(&[CheckId::Fks], 4));
    assert!(report.rows.iter().all(|r| r.millis == 0));
}
