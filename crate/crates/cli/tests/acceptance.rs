//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use stabdiff::bordism::{bordism_group, coefficient_table, Category, Structure};
use stabdiff::classification::classify;
use stabdiff::cohomology::{cohomology, homology_with, inflation_map, Variance};
use stabdiff::config::Limits;
use stabdiff::gmodule::GModule;
use stabdiff::group::{odd_normal_complement, orientation_characters, parse_group};
use stabdiff::hypothesis::{thom_simplification_applicable, ActionVerdict, Applicability};
use stabdiff::linalg::{elementary_divisors, SparseMatrix};
use stabdiff::manifold::independence_matrix;
use stabdiff::resolution::{bar_resolution, best_resolution, periodic_resolution};
use stabdiff::spectral::{ahss_e2_page, diagonal_report, lhs_e2_page, twisted_thom_homology};
use stabdiff::FiniteGroup;
use stabdiff_cli::{catalog, run, Report};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Abelian groups of order at most 50 from the catalog that pass the
/// hypothesis.
fn abelian_passing() -> Result<Vec<FiniteGroup>, String> {
    let limits = Limits::default();
    let mut out = Vec::new();
    for row in catalog(50, &limits) {
        if row.applicability != Some(Applicability::Applicable) {
            continue;
        }
        let g = parse_group(&row.group).map_err(err)?;
        if g.is_abelian() {
            out.push(g);
        }
    }
    Ok(out)
}

fn criterion_1() -> Check {
    let limits = Limits::default();
    let start = Instant::now();
    let mut checked = 0;
    for order in 1..=12 {
        let g = FiniteGroup::cyclic(order);
        let bar = bar_resolution(&g, 5, &limits).map_err(err)?;
        let per = periodic_resolution(&g, 5).map_err(err)?;
        let mut modules = vec![GModule::trivial_integers(&g), GModule::mod2(&g)];
        modules.extend(orientation_characters(&g).first().map(GModule::twisted_integers));
        for m in &modules {
            for n in 0..=4 {
                let a = homology_with(&bar, m, Variance::Cochains, n).map_err(err)?;
                let b = homology_with(&per, m, Variance::Cochains, n).map_err(err)?;
                ensure(a == b, format!("C{order} degree {n}: bar {a} vs periodic {b}"))?;
                checked += 1;
            }
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), format!("took {t:?}"))?;
    Ok(format!("{checked} (group, module, degree) cases agree, {:.1} s", t.as_secs_f64()))
}

fn criterion_2(groups: &[FiniteGroup]) -> Check {
    let limits = Limits::default();
    for g in groups {
        let w = &orientation_characters(g)[0];
        for n in 1..=4 {
            let h = cohomology(g, &GModule::twisted_integers(w), n, &limits).map_err(err)?;
            ensure(matches!(h.exponent(), Some(1 | 2)), format!("{} H^{n} = {h}", g.name()))?;
        }
        let oc = odd_normal_complement(g).ok_or("no complement")?;
        let page = lhs_e2_page(g, &oc, &orientation_characters(&oc.p)[0], 4, &limits).map_err(err)?;
        for q in 0..=4 {
            ensure(page.get(0, q).is_some_and(|a| a.is_trivial()), format!("{} E2(0, {q}) nonzero", g.name()))?;
        }
    }
    Ok(format!("{} groups", groups.len()))
}

fn criterion_3(groups: &[FiniteGroup]) -> Check {
    for g in groups {
        let oc = odd_normal_complement(g).ok_or("no complement")?;
        let inf = inflation_map(&oc.projection, 4, &Limits::default()).map_err(err)?;
        ensure(inf.is_isomorphism(), format!("{}: not an isomorphism", g.name()))?;
        ensure(inf.cup_compatible, format!("{}: cup products not preserved", g.name()))?;
    }
    Ok(format!("{} groups, degrees 0..=4", groups.len()))
}

fn criterion_4(groups: &[FiniteGroup]) -> Check {
    let mut slowest = Duration::ZERO;
    let mut groups = groups.to_vec();
    groups.push(parse_group("F21xC2").map_err(err)?);
    for g in &groups {
        let t = Instant::now();
        let smooth = classify(g, Category::Smooth, &Limits::default()).map_err(err)?;
        let top = classify(g, Category::Topological, &Limits::default()).map_err(err)?;
        slowest = slowest.max(t.elapsed());
        ensure(smooth.counts() == [9, 1, 4], format!("{} smooth {:?}", g.name(), smooth.counts()))?;
        ensure(top.counts() == [10, 2, 8], format!("{} top {:?}", g.name(), top.counts()))?;
        let etas: Vec<u64> = smooth.types[0].classes.iter().map(|c| c.invariants["eta'"]).collect();
        ensure(etas == (0..=8).collect::<Vec<_>>(), format!("{} eta' labels {etas:?}", g.name()))?;
    }
    let out = run(["stabdiff", "classify", "C6", "--category", "smooth", "--format", "json"]);
    ensure(out.code == 0, "classify C6 failed")?;
    let report: Report = serde_json::from_str(&out.stdout).map_err(err)?;
    let counts: Vec<u64> = report.result.as_ref().and_then(|r| r["types"].as_array()).ok_or("no types")?.iter().filter_map(|t| t["class_count"].as_u64()).collect();
    ensure(counts == [9, 1, 4], format!("CLI counts {counts:?}"))?;
    ensure(slowest < Duration::from_secs(5), format!("slowest group took {slowest:?}"))?;
    Ok(format!("{} groups, 9/1/4 and 10/2/8", groups.len()))
}

fn criterion_5() -> Check {
    let limits = Limits::default();
    let c2 = FiniteGroup::cyclic(2);
    let w = &orientation_characters(&c2)[0];
    let x = (0..=5).map(|n| twisted_thom_homology(&c2, Some(w), n, &limits)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    let mut parts = Vec::new();
    for (coeffs, target, bound) in [(Structure::STop, Structure::Top, 8), (Structure::SO, Structure::O, 4)] {
        let d = diagonal_report(&ahss_e2_page(&x, &coefficient_table(coeffs), 5).map_err(err)?, 4);
        ensure(d.collapses, format!("{coeffs}: collapse not certified: {:?}", d.reasons))?;
        ensure(d.order_bound == Some(bound), format!("{coeffs}: bound {:?}", d.order_bound))?;
        ensure(bordism_group(target, 4).map_err(err)?.group.order() == Some(bound), format!("{target} order"))?;
        parts.push(format!("{coeffs} bound {bound}"));
    }
    Ok(parts.join(", "))
}

fn criterion_6() -> Check {
    let verdict = |cat: &str| -> Result<bool, String> {
        let out = run(["stabdiff", "compare", "RP4(+)", "Q(+)", "--category", cat, "--structure", "pin+", "--format", "json"]);
        ensure(out.code == 0, format!("compare exited {}", out.code))?;
        let report: Report = serde_json::from_str(&out.stdout).map_err(err)?;
        report.result.and_then(|r| r["equivalent"].as_bool()).ok_or_else(|| "no verdict".to_string())
    };
    ensure(!verdict("smooth")?, "smooth pin+ should distinguish RP4 and Q")?;
    ensure(verdict("top")?, "topological pin+ should identify RP4 and Q")?;
    Ok("not stably diffeomorphic, stably homeomorphic".into())
}

fn criterion_7() -> Check {
    let (rows, rank) = independence_matrix().map_err(err)?;
    ensure(rank == 3, format!("rank {rank} for {rows:?}"))?;
    Ok("rank 3".into())
}

fn criterion_8() -> Check {
    for name in ["D3", "D5"] {
        let r = thom_simplification_applicable(&parse_group(name).map_err(err)?, 4, &Limits::default()).map_err(err)?;
        ensure(r.applicability == Applicability::NotApplicable, format!("{name} applicable"))?;
        ensure(matches!(r.verdict, Some(ActionVerdict::ProvedNontrivial { degree: 2, .. })), format!("{name}: {:?}", r.verdict))?;
        let out = run(["stabdiff", "classify", name]);
        ensure(out.code == 1, format!("classify {name} exited {}", out.code))?;
    }
    Ok("D3, D5 refused with degree-2 witnesses".into())
}

fn snf_invariance() -> Result<(), String> {
    let strategy = (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        (
            prop::collection::vec(prop::collection::vec(-6i64..=6, c), r),
            prop::collection::vec((0..r, 0..r, -3i64..=3), 0..8),
            prop::collection::vec((0..c, 0..c, -3i64..=3), 0..8),
        )
    });
    let mut runner = TestRunner::new(Config { cases: 200, failure_persistence: None, ..Config::default() });
    runner
        .run(&strategy, |(m, left, right)| {
            let mut a = m.clone();
            for &(i, j, k) in &left {
                if i != j {
                    let row = a[j].clone();
                    a[i].iter_mut().zip(row).for_each(|(x, y)| *x += k * y);
                }
            }
            for &(i, j, k) in &right {
                if i != j {
                    a.iter_mut().for_each(|row| row[i] += k * row[j]);
                }
            }
            let sparse = |rows: &[Vec<i64>]| {
                SparseMatrix::from_triplets(rows.len(), rows[0].len(), rows.iter().enumerate().flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, v))))
            };
            prop_assert_eq!(elementary_divisors(&sparse(&m)).unwrap(), elementary_divisors(&sparse(&a)).unwrap());
            Ok(())
        })
        .map_err(err)
}

fn criterion_9() -> Check {
    let start = Instant::now();
    let limits = Limits::default();
    snf_invariance()?;
    let mut resolutions = 0;
    for name in ["C1", "C2", "C4", "C6", "C2xC2", "C3xC2", "D3", "D5", "Q8", "A4"] {
        let g = parse_group(name).map_err(err)?;
        bar_resolution(&g, 4, &limits).map_err(err)?.verify().map_err(|e| format!("{name} bar: {e}"))?;
        best_resolution(&g, 5, &limits).map_err(err)?.verify().map_err(|e| format!("{name}: {e}"))?;
        resolutions += 2;
    }
    for name in ["C1", "C3", "C5", "C7", "C9", "C11", "C13", "C15", "C3xC3", "C3xC5"] {
        let g = parse_group(name).map_err(err)?;
        let order = g.order() as u64;
        for n in 1..=4 {
            for m in [GModule::trivial_integers(&g), GModule::trivial(&g, &stabdiff::AbelianGroup::cyclic(3))] {
                let h = cohomology(&g, &m, n, &limits).map_err(err)?;
                ensure(h.exponent().is_some_and(|e| order.is_multiple_of(e)), format!("{name} H^{n} = {h}"))?;
            }
            ensure(cohomology(&g, &GModule::mod2(&g), n, &limits).map_err(err)?.is_trivial(), format!("{name} mod 2 H^{n}"))?;
        }
    }
    let strip = |s: &str| -> Result<Report, String> {
        let mut r: Report = serde_json::from_str(s).map_err(err)?;
        r.elapsed_us = 0;
        Ok(r)
    };
    let a = run(["stabdiff", "catalog", "--max-order", "50", "--format", "json"]);
    let b = run(["stabdiff", "catalog", "--max-order", "50", "--format", "json"]);
    ensure(strip(&a.stdout)? == strip(&b.stdout)?, "catalog output differs between runs")?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(120), format!("took {t:?}"))?;
    Ok(format!("200 SNF cases, {resolutions} resolutions, Maschke on 10 groups, catalog deterministic, {:.1} s", t.as_secs_f64()))
}

fn main() {
    let groups = abelian_passing();
    let with_groups = |f: fn(&[FiniteGroup]) -> Check| -> Check { f(groups.as_ref().map_err(Clone::clone)?) };
    let results: Vec<(u32, &str, Check)> = vec![
        (1, "cohomology oracle agreement", criterion_1()),
        (2, "twisted cohomology is 2-torsion", with_groups(criterion_2)),
        (3, "inflation from the quotient is a ring isomorphism", with_groups(criterion_3)),
        (4, "classification counts", with_groups(criterion_4)),
        (5, "AHSS order bounds", criterion_5()),
        (6, "RP4 versus Q", criterion_6()),
        (7, "independence matrix", criterion_7()),
        (8, "negative controls", criterion_8()),
        (9, "property suite", criterion_9()),
    ];
    let mut failed = 0;
    for (n, name, r) in &results {
        match r {
            Ok(detail) => println!("criterion {n} [PRIMARY] {name}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {n} [PRIMARY] {name}: FAIL ({why})");
            }
        }
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
