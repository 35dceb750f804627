//! Built-in list of groups of order 2 mod 4 and the batch scan over it.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use stabdiff::bordism::Category;
use stabdiff::classification::{classify_with, DEFAULT_CHECK_DEGREE};
use stabdiff::config::Limits;
use stabdiff::group::parse_group;
use stabdiff::hypothesis::{thom_simplification_applicable, ActionVerdict, Applicability};

/// Largest order the catalog accepts.
pub const CATALOG_BOUND: usize = 100;

/// Odd abelian groups of order at most `bound`, as invariant factors
/// `a_1 | a_2 | … | a_k` (the empty list is the trivial group).
fn odd_abelian(bound: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: Vec<usize>, order: usize, bound: usize, out: &mut Vec<Vec<usize>>) {
        out.push(prefix.clone());
        let last = prefix.last().copied().unwrap_or(1);
        let mut a = if last == 1 { 3 } else { last };
        while order * a <= bound {
            if a % last == 0 {
                let mut next = prefix.clone();
                next.push(a);
                extend(next, order * a, bound, out);
            }
            a += if last == 1 { 2 } else { 2 * last };
        }
    }
    let mut out = Vec::new();
    extend(Vec::new(), 1, bound, &mut out);
    out
}

fn product_name(factors: &[usize]) -> String {
    factors.iter().map(|a| format!("C{a}")).collect::<Vec<_>>().join("x")
}

/// Group specs of order `≡ 2 mod 4` up to `max_order`: `C2 × A` and
/// `D_m × A` for odd abelian `A`, and `F21 × C2`. Each spec parses with the
/// group grammar.
pub fn catalog_groups(max_order: usize) -> Vec<String> {
    let mut names = Vec::new();
    for a in odd_abelian(max_order / 2) {
        // C2 × A in invariant-factor form: the largest factor absorbs C2.
        let mut factors: Vec<usize> = a.iter().rev().copied().collect();
        match factors.first_mut() {
            Some(top) => *top *= 2,
            None => factors.push(2),
        }
        names.push(product_name(&factors));
    }
    for m in (3..=max_order / 2).step_by(2) {
        for a in odd_abelian(max_order / (2 * m)) {
            let mut name = format!("D{m}");
            if !a.is_empty() {
                name.push('x');
                name.push_str(&product_name(&a.iter().rev().copied().collect::<Vec<_>>()));
            }
            names.push(name);
        }
    }
    if max_order >= 42 {
        names.push("F21xC2".into());
    }
    names
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub group: String,
    pub order: usize,
    pub applicability: Option<Applicability>,
    pub verdict: String,
    pub smooth: Option<Vec<usize>>,
    pub top: Option<Vec<usize>>,
    pub error: Option<String>,
}

fn row(name: &str, limits: &Limits) -> CatalogRow {
    let mut out = CatalogRow {
        group: name.to_string(),
        order: 0,
        applicability: None,
        verdict: String::new(),
        smooth: None,
        top: None,
        error: None,
    };
    let result = parse_group(name).and_then(|g| {
        out.order = g.order();
        thom_simplification_applicable(&g, DEFAULT_CHECK_DEGREE, limits)
    });
    match result {
        Ok(report) => {
            out.applicability = Some(report.applicability);
            out.verdict = match &report.verdict {
                None => "no odd normal complement".into(),
                Some(ActionVerdict::ProvedTrivial { .. }) => "proved trivial".into(),
                Some(ActionVerdict::ProvedNontrivial { degree, .. }) => format!("moved class in degree {degree}"),
                Some(ActionVerdict::TrivialUpTo { degree }) => format!("trivial through degree {degree}"),
            };
            if report.applicable() {
                for (cat, slot) in [(Category::Smooth, &mut out.smooth), (Category::Topological, &mut out.top)] {
                    match classify_with(&report, cat) {
                        Ok(c) => *slot = Some(c.counts()),
                        Err(e) => out.error = Some(e.to_string()),
                    }
                }
            }
        }
        Err(e) => out.error = Some(e.to_string()),
    }
    out
}

/// Scans the catalog in parallel; rows are sorted by order, then name.
pub fn catalog(max_order: usize, limits: &Limits) -> Vec<CatalogRow> {
    let mut rows: Vec<CatalogRow> = catalog_groups(max_order).par_iter().map(|n| row(n, limits)).collect();
    rows.sort_by(|a, b| (a.order, &a.group).cmp(&(b.order, &b.group)));
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_catalog() {
        let rows = catalog(10, &Limits::default());
        let summary: Vec<(&str, bool)> =
            rows.iter().map(|r| (r.group.as_str(), r.applicability == Some(Applicability::Applicable))).collect();
        assert_eq!(summary, vec![("C2", true), ("C6", true), ("D3", false), ("C10", true), ("D5", false)]);
        assert_eq!(catalog(2, &Limits::default()).len(), 1);
    }

    #[test]
    fn names_parse_and_are_distinct() {
        let names = catalog_groups(CATALOG_BOUND);
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            let g = parse_group(n).unwrap();
            assert_eq!(g.order() % 4, 2, "{n}");
            assert!(seen.insert(n.clone()), "{n}");
        }
        assert!(names.contains(&"C6xC3".to_string()) && names.contains(&"D3xC5".to_string()));
    }
}
