use std::process::Command;

use stabdiff::classification::Classification;
use stabdiff::hypothesis::{Applicability, HypothesisReport};
use stabdiff::manifold::Comparison;
use stabdiff_cli::{CatalogRow, Report, SCHEMA};

fn stabdiff(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_stabdiff")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(args: &[&str]) -> Report {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, stdout, stderr) = stabdiff(&full);
    assert_eq!(code, 0, "{args:?}: {stderr}");
    serde_json::from_str(&stdout).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(stabdiff(&["classify", "C6"]).0, 0);
    assert_eq!(stabdiff(&["--help"]).0, 0);
    for usage in [
        vec!["frobnicate"],
        vec!["classify"],
        vec!["classify", "C6", "--category", "pl"],
        vec!["classify", "NOPE"],
        vec!["catalog", "--max-order", "500"],
        vec!["ahss", "C2", "--coeff", "MU"],
        vec!["compare", "RP4 # Q", "S4", "--category", "top", "--structure", "pin+"],
    ] {
        assert_eq!(stabdiff(&usage).0, 2, "{usage:?}");
    }
    for domain in [
        vec!["classify", "D5"],
        vec!["classify", "A4", "--category", "top"],
        vec!["cohomology", "C3", "--coeff", "Zw"],
        vec!["compare", "E8", "S4", "--category", "smooth", "--structure", "pin+"],
    ] {
        assert_eq!(stabdiff(&domain).0, 1, "{domain:?}");
    }
}

#[test]
fn errors_in_json_mode_are_reports() {
    let (code, stdout, stderr) = stabdiff(&["classify", "D3", "--format", "json"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("hypothesis"));
    let r: Report = serde_json::from_str(&stdout).unwrap();
    assert_eq!(r.error.unwrap().kind, "hypothesis");
    assert!(r.result.is_none());
}

#[test]
fn json_reports_round_trip() {
    for args in [
        vec!["classify", "C10", "--category", "top"],
        vec!["check-hypothesis", "D5"],
        vec!["cohomology", "C6", "--coeff", "Zw"],
        vec!["lhs", "C6"],
        vec!["ahss", "C2", "--coeff", "STop"],
        vec!["compare", "RP4(+)", "Q(+)", "--category", "top", "--structure", "pin+"],
        vec!["tables"],
        vec!["catalog", "--max-order", "30"],
    ] {
        let r = json(&args);
        assert_eq!(r.schema, SCHEMA);
        let again: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(again, r, "{args:?}");
    }
    let c: Classification = serde_json::from_value(json(&["classify", "C6"]).result.unwrap()).unwrap();
    assert_eq!(c.counts(), vec![9, 1, 4]);
    let h: HypothesisReport = serde_json::from_value(json(&["check-hypothesis", "D5"]).result.unwrap()).unwrap();
    assert_eq!(h.applicability, Applicability::NotApplicable);
    let cmp: Comparison =
        serde_json::from_value(json(&["compare", "RP4(+)", "Q(+)", "--category", "smooth", "--structure", "pin+"]).result.unwrap()).unwrap();
    assert!(!cmp.equivalent);
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["classify", "C6xC3"], vec!["catalog", "--max-order", "60"]] {
        let mut a = json(&args);
        let mut b = json(&args);
        a.elapsed_us = 0;
        b.elapsed_us = 0;
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn catalog_rows_match_individual_runs() {
    let rows: Vec<CatalogRow> = serde_json::from_value(json(&["catalog", "--max-order", "30"]).result.unwrap()).unwrap();
    assert!(rows.windows(2).all(|w| (w[0].order, &w[0].group) <= (w[1].order, &w[1].group)));
    for row in rows.iter().filter(|r| r.applicability == Some(Applicability::Applicable)) {
        for (cat, counts) in [("smooth", &row.smooth), ("top", &row.top)] {
            let c: Classification = serde_json::from_value(json(&["classify", &row.group, "--category", cat]).result.unwrap()).unwrap();
            assert_eq!(Some(c.counts()), *counts, "{} {cat}", row.group);
        }
    }
    let (_, text, _) = stabdiff(&["catalog", "--max-order", "10"]);
    let marks: Vec<(&str, &str)> = text.lines().skip(1).map(|l| {
        let f: Vec<&str> = l.split_whitespace().collect();
        (f[0], f[2])
    }).collect();
    assert_eq!(marks, vec![("C2", "✓"), ("C6", "✓"), ("D3", "✗"), ("C10", "✓"), ("D5", "✗")]);
}

#[test]
fn text_reports() {
    let (_, out, _) = stabdiff(&["classify", "C6", "--category", "smooth"]);
    assert!(out.contains("14 stable classes") && out.contains("eta'=8"));
    let (_, out, _) = stabdiff(&["compare", "RP4(+)", "Q(+)", "--category", "top", "--structure", "pin+"]);
    assert!(out.contains(": stably homeomorphic"));
    let (_, out, _) = stabdiff(&["check-hypothesis", "D5"]);
    assert!(out.contains("not applicable") && out.contains("degree 2"));
    let (_, out, _) = stabdiff(&["ahss", "C2", "--coeff", "STop"]);
    assert!(out.contains("order bound 8") && out.contains("collapse: certified"));
    let (_, out, _) = stabdiff(&["cohomology", "C2", "--coeff", "Z2", "--degree", "3"]);
    assert_eq!(out.lines().filter(|l| l.contains("Z/2")).count(), 5);
    let (_, out, _) = stabdiff(&["tables"]);
    assert!(out.contains("Pin+") && out.contains("Z/16"));
}

#[test]
fn feasibility_bound_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_stabdiff"))
        .args(["cohomology", "D5", "--coeff", "Z"])
        .env(stabdiff::config::MAX_CELLS_VAR, "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains(stabdiff::config::MAX_CELLS_VAR));
}
