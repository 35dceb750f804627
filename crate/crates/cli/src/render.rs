//! Plain-text renderings of the reports.

use std::fmt::Write;

use stabdiff::bordism::CoefficientTable;
use stabdiff::classification::Classification;
use stabdiff::hypothesis::{ActionVerdict, Applicability, HypothesisReport};
use stabdiff::manifold::Comparison;
use stabdiff::spectral::E2Page;

use crate::catalog::CatalogRow;
use crate::{AhssResult, CohomologyResult};

pub fn classification(c: &Classification) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} ({}): {} stable classes", c.group, c.category, c.total());
    for t in &c.types {
        let _ = writeln!(
            s,
            "\n[{}] {} bordism, {} = {}; Aut action {}",
            t.flavor.name(),
            t.normal_structure,
            t.structure,
            t.bordism,
            t.action
        );
        let _ = writeln!(s, "  {} class{}:", t.class_count, if t.class_count == 1 { "" } else { "es" });
        for (class, orbit) in t.classes.iter().zip(&t.orbits) {
            let _ = writeln!(s, "    {:<16} orbit {:?}", class.label, orbit);
        }
    }
    s
}

pub fn hypothesis(r: &HypothesisReport) -> String {
    let mut s = String::new();
    let mark = match r.applicability {
        Applicability::Applicable => "applicable",
        Applicability::NotApplicable => "not applicable",
        Applicability::Undetermined => "undetermined",
    };
    let _ = writeln!(s, "{} (order {}): {mark}", r.group, r.order);
    match &r.decomposition {
        Some(d) => {
            let _ = writeln!(s, "  K of order {} ({}), P of order {}", d.k_order, if d.k_abelian { "abelian" } else { "nonabelian" }, d.p_order);
        }
        None => {
            let _ = writeln!(s, "  no odd normal complement");
        }
    }
    match &r.verdict {
        Some(ActionVerdict::ProvedTrivial { reason }) => {
            let _ = writeln!(s, "  action proved trivial: {reason}");
        }
        Some(ActionVerdict::ProvedNontrivial { degree, witness }) => {
            let _ = writeln!(
                s,
                "  action nontrivial in degree {degree}: coset rep {} sends class {} of H^{degree}(K; Z) (orders {:?}) to {:?}",
                witness.coset_rep, witness.class, witness.summand_orders, witness.image
            );
        }
        Some(ActionVerdict::TrivialUpTo { degree }) => {
            let _ = writeln!(s, "  no moved class through degree {degree}");
        }
        None => {}
    }
    let _ = writeln!(s, "  {}", r.conclusion);
    for n in &r.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    s
}

pub fn cohomology(r: &CohomologyResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "H^n({}; {}) via {} resolution", r.group, r.coefficients, r.resolution);
    for (n, a) in r.groups.iter().enumerate() {
        let _ = writeln!(s, "  n={n}: {a}");
    }
    s
}

pub fn page(p: &E2Page) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "E2 page ({:?}), p + q <= {}", p.kind, p.range);
    for q in (0..=p.range).rev() {
        let _ = write!(s, "  q={q:<2}|");
        for pp in 0..=p.range - q {
            let cell = match p.entry(pp, q).map(|e| e.group.as_ref()) {
                Some(Some(a)) => a.to_string(),
                _ => "?".into(),
            };
            let _ = write!(s, " {cell:>10}");
        }
        let _ = writeln!(s);
    }
    for n in &p.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    s
}

pub fn ahss(r: &AhssResult) -> String {
    let mut s = String::new();
    let d = &r.diagonal;
    let homology: Vec<String> = r.thom_homology.iter().map(ToString::to_string).collect();
    let _ = writeln!(s, "Thom homology of {}: [{}]", r.group, homology.join(", "));
    s.push_str(&page(&r.page));
    let _ = writeln!(s, "diagonal {}:", d.degree);
    for (p, q, a) in &d.entries {
        let _ = writeln!(s, "  ({p}, {q}) = {a}");
    }
    match d.order_bound {
        Some(b) => {
            let _ = writeln!(s, "  order bound {b}");
        }
        None => {
            let _ = writeln!(s, "  order unbounded");
        }
    }
    let _ = writeln!(s, "  collapse: {}", if d.collapses { "certified" } else { "not certified" });
    for reason in &d.reasons {
        let _ = writeln!(s, "    {reason}");
    }
    let _ = writeln!(s, "  {}", d.extension);
    s
}

pub fn comparison(c: &Comparison) -> String {
    let mut s = String::new();
    let verb = match (c.equivalent, c.category) {
        (true, stabdiff::bordism::Category::Smooth) => "stably diffeomorphic",
        (false, stabdiff::bordism::Category::Smooth) => "NOT stably diffeomorphic",
        (true, _) => "stably homeomorphic",
        (false, _) => "NOT stably homeomorphic",
    };
    let _ = writeln!(s, "{} vs {} ({}, {}): {verb}", c.left, c.right, c.category, c.structure);
    for (name, a, b) in &c.witness {
        let _ = writeln!(s, "  {name}: {a} vs {b}");
    }
    let _ = writeln!(s, "  note: {}", c.note);
    s
}

pub fn tables(ts: &[CoefficientTable]) -> String {
    let mut s = String::new();
    for t in ts {
        let _ = writeln!(s, "{}", t.structure);
        for e in &t.entries {
            let _ = writeln!(s, "  Omega_{} = {:<12} [{}]", e.degree, e.group.to_string(), e.citation);
        }
    }
    s
}

pub fn catalog(rows: &[CatalogRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<14} {:>5}  {:<3} {:<10} {:<10} verdict", "group", "order", "ok", "smooth", "top");
    for r in rows {
        let mark = match r.applicability {
            Some(Applicability::Applicable) => "✓",
            Some(Applicability::NotApplicable) => "✗",
            _ => "?",
        };
        let counts = |c: &Option<Vec<usize>>| {
            c.as_ref().map_or("-".to_string(), |v| v.iter().map(ToString::to_string).collect::<Vec<_>>().join("/"))
        };
        let verdict = r.error.as_deref().unwrap_or(&r.verdict);
        let _ = writeln!(s, "{:<14} {:>5}  {:<3} {:<10} {:<10} {}", r.group, r.order, mark, counts(&r.smooth), counts(&r.top), verdict);
    }
    s
}
