//! E2 pages of the Lyndon–Hochschild–Serre and Atiyah–Hirzebruch spectral
//! sequences, and degree-reason collapse checks on a diagonal.

use serde::{Deserialize, Serialize};

use crate::bordism::CoefficientTable;
use crate::cohomology::{cohomology, homology, induced_action};
use crate::config::Limits;
use crate::gmodule::GModule;
use crate::group::{conjugation_action, Character2, FiniteGroup, OddComplement};
use crate::linalg::DenseMatrix;
use crate::resolution::best_resolution;
use crate::{AbelianGroup, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PageKind {
    /// `d_r : E^{p,q} → E^{p+r, q-r+1}`.
    #[serde(rename = "LHS-cohomological")]
    LhsCohomological,
    /// `d_r : E_{p,q} → E_{p-r, q+r-1}`.
    #[serde(rename = "AHSS-homological")]
    AhssHomological,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Entry {
    pub p: usize,
    pub q: usize,
    /// `None` when the entry is outside what the inputs determine.
    pub group: Option<AbelianGroup>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Page {
    pub kind: PageKind,
    /// Entries cover `p + q ≤ range`.
    pub range: usize,
    pub entries: Vec<E2Entry>,
    pub notes: Vec<String>,
}

impl E2Page {
    pub fn entry(&self, p: usize, q: usize) -> Option<&E2Entry> {
        self.entries.iter().find(|e| e.p == p && e.q == q)
    }

    pub fn get(&self, p: usize, q: usize) -> Option<&AbelianGroup> {
        self.entry(p, q).and_then(|e| e.group.as_ref())
    }
}

/// `H^q(K; Z)` as a `P`-module through the conjugation action, tensored with
/// the sign representation of `twist`.
fn kernel_cohomology_module(
    g: &FiniteGroup,
    oc: &OddComplement,
    twist: &Character2,
    q: usize,
    limits: &Limits,
) -> Result<(GModule, bool)> {
    let p_group = &oc.p;
    let action = conjugation_action(g, &oc.k_elements, &oc.coset_reps)?;
    if q == 0 || action.all_inner() {
        let a = if q == 0 { AbelianGroup::integers() } else { cohomology(&oc.k, &GModule::trivial_integers(&oc.k), q, limits)? };
        return Ok((GModule::sign_twisted(&a, twist), true));
    }
    // x ∈ P acts by pulling back along conjugation by the inverse of its
    // representative, which makes this a left action.
    let k = &oc.k;
    let pos = |x: usize| oc.k_elements.binary_search(&x).expect("element of K");
    let autos: Vec<Vec<usize>> = oc
        .coset_reps
        .iter()
        .map(|&r| {
            let r_inv = g.inv(r);
            k.elements().map(|i| pos(g.conjugate(r_inv, oc.k_elements[i]))).collect()
        })
        .collect();
    let res = best_resolution(k, q + 1, limits)?;
    let act = induced_action(&res, &autos, q)?;
    let orders = &act.summand_orders;
    let rank = orders.len();
    let rel_cols: Vec<Vec<i64>> = orders
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != 0)
        .map(|(i, &d)| (0..rank).map(|r| if r == i { d as i64 } else { 0 }).collect())
        .collect();
    let relations = DenseMatrix::from_columns(rank, &rel_cols);
    let actions = p_group
        .elements()
        .map(|x| {
            let mut m = act.matrix(x);
            if twist.value(x) {
                for i in 0..rank {
                    for j in 0..rank {
                        m[(i, j)] = -m[(i, j)];
                    }
                }
            }
            m
        })
        .collect();
    let trivial = act.is_trivial();
    Ok((GModule::new(p_group, rank, relations, actions)?, trivial))
}

/// `E_2^{p,q} = H^p(P; H^q(K; Z) ⊗ Z_w)` for `p + q ≤ range`.
pub fn lhs_e2_page(g: &FiniteGroup, oc: &OddComplement, twist: &Character2, range: usize, limits: &Limits) -> Result<E2Page> {
    if twist.group() != &oc.p {
        return Err(Error::Incompatible("twist must be a character of the quotient".into()));
    }
    let mut entries = Vec::new();
    let mut notes = Vec::new();
    for q in 0..=range {
        let (module, trivial) = kernel_cohomology_module(g, oc, twist, q, limits)?;
        if !trivial {
            notes.push(format!("P acts nontrivially on H^{q}(K; Z); entries in row {q} use the actual action"));
        }
        for p in 0..=range - q {
            let group = cohomology(&oc.p, &module, p, limits)?;
            let note = if trivial { "trivial action on H^q(K)" } else { "nontrivial action on H^q(K)" };
            entries.push(E2Entry { p, q, group: Some(group), note: note.into() });
        }
    }
    entries.sort_by_key(|e| (e.p + e.q, e.p));
    Ok(E2Page { kind: PageKind::LhsCohomological, range, entries, notes })
}

/// `H_n(X; A)` from `H_*(X; Z)` by the universal coefficient formula.
pub fn change_coefficients(integral: &[AbelianGroup], a: &AbelianGroup) -> Vec<AbelianGroup> {
    (0..integral.len())
        .map(|n| {
            let t = integral[n].tensor(a);
            if n == 0 {
                t
            } else {
                t.direct_sum(&integral[n - 1].tor(a))
            }
        })
        .collect()
}

/// Homology of the Thom spectrum of the rank-zero twist `w`, degree
/// preserving: `H_n(G; Z_w)` (untwisted `H_n(G; Z)` when `w` is `None`).
pub fn twisted_thom_homology(g: &FiniteGroup, w: Option<&Character2>, n: usize, limits: &Limits) -> Result<AbelianGroup> {
    let m = match w {
        Some(w) => {
            if w.group() != g {
                return Err(Error::Incompatible("character of a different group".into()));
            }
            GModule::twisted_integers(w)
        }
        None => GModule::trivial_integers(g),
    };
    homology(g, &m, n, limits)
}

/// `E^2_{p,q} = H_p(X; Ω_q)` for `p + q ≤ range`, from `x[p] = H_p(X; Z)`
/// for `p ≤ range`. `Ω_q` must be known for `q < range`; the corner
/// `(0, range)` is left undetermined when `Ω_range` is missing, since no
/// differential connects it to lower diagonals.
pub fn ahss_e2_page(x: &[AbelianGroup], coeffs: &CoefficientTable, range: usize) -> Result<E2Page> {
    if x.len() <= range {
        return Err(Error::DimensionMismatch { expected: range + 1, found: x.len() });
    }
    let mut entries = Vec::new();
    let mut notes = Vec::new();
    for q in 0..=range {
        let Some(omega) = coeffs.get(q) else {
            if q < range {
                return Err(Error::MissingCoefficient { structure: coeffs.structure.clone(), degree: q });
            }
            notes.push(format!("Omega_{q}^{} not tabulated; entry (0, {q}) undetermined", coeffs.structure));
            entries.push(E2Entry { p: 0, q, group: None, note: "coefficient not tabulated".into() });
            continue;
        };
        let row = change_coefficients(&x[..=range - q], omega);
        for (p, group) in row.into_iter().enumerate() {
            entries.push(E2Entry { p, q, group: Some(group), note: format!("H_{p}(X; Omega_{q}^{})", coeffs.structure) });
        }
    }
    entries.sort_by_key(|e| (e.p + e.q, e.p));
    Ok(E2Page { kind: PageKind::AhssHomological, range, entries, notes })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalReport {
    pub degree: usize,
    /// Nonzero entries `(p, q, group)` with `p + q = degree`.
    pub entries: Vec<(usize, usize, AbelianGroup)>,
    /// Product of the entry orders; `None` if some entry is infinite.
    pub order_bound: Option<u64>,
    pub collapses: bool,
    pub reasons: Vec<String>,
    pub extension: String,
}

/// Checks every differential with one end on diagonal `n`; collapse is
/// claimed only when each has a zero source or a zero target.
pub fn diagonal_report(page: &E2Page, n: usize) -> DiagonalReport {
    let mut entries = Vec::new();
    let mut reasons = Vec::new();
    let mut collapses = true;
    for p in 0..=n {
        let q = n - p;
        match page.entry(p, q).map(|e| e.group.as_ref()) {
            Some(Some(a)) if a.is_trivial() => {}
            Some(Some(a)) => entries.push((p, q, a.clone())),
            _ => {
                collapses = false;
                reasons.push(format!("entry ({p}, {q}) is not determined"));
            }
        }
    }
    for (p, q, _) in &entries {
        let (p, q) = (*p as isize, *q as isize);
        for r in 2..=(n as isize + 2) {
            let (out, inc) = match page.kind {
                PageKind::AhssHomological => ((p - r, q + r - 1), (p + r, q - r + 1)),
                PageKind::LhsCohomological => ((p + r, q - r + 1), (p - r, q + r - 1)),
            };
            for (dir, (a, b)) in [("to", out), ("from", inc)] {
                if a < 0 || b < 0 {
                    continue;
                }
                let (a, b) = (a as usize, b as usize);
                match page.get(a, b) {
                    Some(e) if e.is_trivial() => {}
                    Some(_) => {
                        collapses = false;
                        reasons.push(format!("d_{r} {dir} ({a}, {b}) may be nonzero"));
                    }
                    None if a + b > page.range => {
                        collapses = false;
                        reasons.push(format!("d_{r} {dir} ({a}, {b}) is outside the page"));
                    }
                    None => {
                        collapses = false;
                        reasons.push(format!("d_{r} {dir} ({a}, {b}) has an undetermined end"));
                    }
                }
            }
        }
    }
    if collapses {
        reasons.push(format!("every differential touching diagonal {n} has a zero source or target"));
    }
    let order_bound = entries.iter().try_fold(1u64, |acc, (_, _, a)| a.order().and_then(|o| acc.checked_mul(o)));
    let extension = if entries.len() > 1 {
        "order known; group structure needs independent generators".to_string()
    } else {
        "no extension problem".to_string()
    };
    DiagonalReport { degree: n, entries, order_bound, collapses, reasons, extension }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bordism::{coefficient_table, Structure};
    use crate::group::{odd_normal_complement, orientation_characters, parse_group};

    fn l() -> Limits {
        Limits::default()
    }

    fn c2_thom(top: usize) -> Vec<AbelianGroup> {
        let c2 = FiniteGroup::cyclic(2);
        let w = orientation_characters(&c2).remove(0);
        (0..=top).map(|n| twisted_thom_homology(&c2, Some(&w), n, &l()).unwrap()).collect()
    }

    #[test]
    fn universal_coefficients() {
        let z = AbelianGroup::integers();
        let c2 = AbelianGroup::cyclic(2);
        let h = vec![z.clone(), c2.clone(), AbelianGroup::trivial()];
        let a = z.direct_sum(&c2);
        assert_eq!(change_coefficients(&h, &a)[1], AbelianGroup::elementary(2, 2));
        assert_eq!(change_coefficients(&h, &z), h);
        assert_eq!(change_coefficients(&[z], &AbelianGroup::cyclic(16))[0], AbelianGroup::cyclic(16));
    }

    #[test]
    fn thom_homology_of_c2() {
        let h = c2_thom(4);
        for (n, a) in h.iter().enumerate() {
            assert_eq!(*a, if n % 2 == 0 { AbelianGroup::cyclic(2) } else { AbelianGroup::trivial() });
        }
        let c2 = FiniteGroup::cyclic(2);
        assert_eq!(twisted_thom_homology(&c2, None, 0, &l()).unwrap(), AbelianGroup::integers());
    }

    #[test]
    fn stop_and_so_pages() {
        let x = c2_thom(5);
        let stop = ahss_e2_page(&x, &coefficient_table(Structure::STop), 5).unwrap();
        assert_eq!(stop.get(4, 0), Some(&AbelianGroup::cyclic(2)));
        assert_eq!(stop.get(0, 4), Some(&AbelianGroup::elementary(2, 2)));
        let d = diagonal_report(&stop, 4);
        assert_eq!(d.order_bound, Some(8));
        assert!(d.collapses, "{:?}", d.reasons);
        let so = ahss_e2_page(&x, &coefficient_table(Structure::SO), 5).unwrap();
        let d = diagonal_report(&so, 4);
        assert_eq!((d.order_bound, d.collapses), (Some(4), true));
        assert_eq!(diagonal_report(&so, 1).order_bound, Some(1));
    }

    #[test]
    fn point_coefficients_give_row_zero() {
        let x = c2_thom(3);
        let page = ahss_e2_page(&x, &CoefficientTable::point(3), 3).unwrap();
        for e in &page.entries {
            let expect = if e.q == 0 { x[e.p].clone() } else { AbelianGroup::trivial() };
            assert_eq!(e.group.as_ref(), Some(&expect));
        }
    }

    #[test]
    fn missing_coefficients() {
        let x = c2_thom(6);
        assert!(matches!(ahss_e2_page(&x, &coefficient_table(Structure::STop), 6), Err(Error::MissingCoefficient { degree: 5, .. })));
        let page = ahss_e2_page(&x, &coefficient_table(Structure::STop), 5).unwrap();
        assert!(page.entry(0, 5).unwrap().group.is_none());
        assert!(!diagonal_report(&page, 5).collapses);
    }

    #[test]
    fn lhs_for_c6() {
        let g = parse_group("C6").unwrap();
        let oc = odd_normal_complement(&g).unwrap();
        let w = orientation_characters(&oc.p).remove(0);
        let page = lhs_e2_page(&g, &oc, &w, 4, &l()).unwrap();
        for p in 0..=4 {
            let expect = if p % 2 == 1 { AbelianGroup::cyclic(2) } else { AbelianGroup::trivial() };
            assert_eq!(page.get(p, 0), Some(&expect), "row 0, p = {p}");
        }
        for q in 0..=4 {
            assert!(page.get(0, q).unwrap().is_trivial(), "column 0, q = {q}");
        }
        for e in &page.entries {
            let exp = e.group.as_ref().unwrap().exponent().unwrap();
            assert!(exp.is_power_of_two(), "({}, {})", e.p, e.q);
        }
    }

    #[test]
    fn lhs_for_c2_lives_in_row_zero() {
        let g = FiniteGroup::cyclic(2);
        let oc = odd_normal_complement(&g).unwrap();
        let w = orientation_characters(&oc.p).remove(0);
        let page = lhs_e2_page(&g, &oc, &w, 4, &l()).unwrap();
        assert!(page.entries.iter().filter(|e| e.q > 0).all(|e| e.group.as_ref().unwrap().is_trivial()));
    }

    #[test]
    fn lhs_for_d5_uses_the_inversion() {
        let g = parse_group("D5").unwrap();
        let oc = odd_normal_complement(&g).unwrap();
        let w = orientation_characters(&oc.p).remove(0);
        let page = lhs_e2_page(&g, &oc, &w, 2, &l()).unwrap();
        assert!(!page.notes.is_empty());
        // Z/5 with the generator acting by (-1)(-1) = +1: invariants are Z/5.
        assert_eq!(page.get(0, 2), Some(&AbelianGroup::cyclic(5)));
    }
}
