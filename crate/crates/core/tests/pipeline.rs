use proptest::prelude::*;

use stabdiff::bordism::{bordism_group, coefficient_table, Category, Structure};
use stabdiff::classification::classify;
use stabdiff::cohomology::{cohomology, inflation_map};
use stabdiff::config::Limits;
use stabdiff::gmodule::GModule;
use stabdiff::group::{odd_normal_complement, orientation_characters, parse_group};
use stabdiff::hypothesis::{thom_simplification_applicable, ActionVerdict, Applicability};
use stabdiff::manifold::{invariant_vector, parse_expr, stably_equivalent, Tangential};
use stabdiff::spectral::{ahss_e2_page, diagonal_report, lhs_e2_page, twisted_thom_homology};
use stabdiff::FiniteGroup;

const PASSING: [&str; 8] = ["C2", "C6", "C10", "C14", "C6xC3", "C22", "C26", "C30"];

fn group(name: &str) -> FiniteGroup {
    parse_group(name).unwrap()
}

#[test]
fn abelian_groups_of_order_two_mod_four_pass() {
    let mut names: Vec<String> = (1..=25).step_by(2).map(|k| format!("C{}", 2 * k)).collect();
    names.extend(["C6xC3", "C10xC5", "C2xC3xC5", "C2xC5xC5"].map(String::from));
    for name in names {
        let r = thom_simplification_applicable(&group(&name), 4, &Limits::default()).unwrap();
        assert!(matches!(r.verdict, Some(ActionVerdict::ProvedTrivial { .. })), "{name}");
    }
}

#[test]
fn verdicts_are_stable_in_the_degree_bound() {
    for name in ["C6", "D3", "D5", "F21xC2", "A4"] {
        let g = group(name);
        let low = thom_simplification_applicable(&g, 2, &Limits::default()).unwrap();
        let high = thom_simplification_applicable(&g, 4, &Limits::default()).unwrap();
        assert_eq!(low.verdict, high.verdict, "{name}");
    }
}

#[test]
fn applicable_groups_have_isomorphic_inflation() {
    for name in PASSING {
        let g = group(name);
        let oc = odd_normal_complement(&g).unwrap();
        let inf = inflation_map(&oc.projection, 4, &Limits::default()).unwrap();
        assert!(inf.is_isomorphism() && inf.cup_compatible, "{name}");
    }
}

#[test]
fn twisted_cohomology_is_two_torsion() {
    let limits = Limits::default();
    for name in PASSING {
        let g = group(name);
        let w = &orientation_characters(&g)[0];
        for n in 1..=4 {
            let h = cohomology(&g, &GModule::twisted_integers(w), n, &limits).unwrap();
            assert!(matches!(h.exponent(), Some(1 | 2)), "{name} H^{n} = {h}");
        }
    }
}

#[test]
fn lhs_pages_are_two_primary_with_empty_first_column() {
    for name in PASSING {
        let g = group(name);
        let oc = odd_normal_complement(&g).unwrap();
        let twist = &orientation_characters(&oc.p)[0];
        let page = lhs_e2_page(&g, &oc, twist, 4, &Limits::default()).unwrap();
        for e in &page.entries {
            let a = e.group.as_ref().unwrap();
            if e.p == 0 {
                assert!(a.is_trivial(), "{name} ({}, {})", e.p, e.q);
            }
            assert!(a.exponent().is_some_and(|x| x.is_power_of_two()), "{name} ({}, {}) = {a}", e.p, e.q);
        }
    }
}

#[test]
fn thom_homology_matches_the_quotient() {
    let limits = Limits::default();
    let c2 = group("C2");
    let w2 = &orientation_characters(&c2)[0];
    for name in PASSING {
        let g = group(name);
        let w = &orientation_characters(&g)[0];
        for n in 0..=4 {
            assert_eq!(
                twisted_thom_homology(&g, Some(w), n, &limits).unwrap(),
                twisted_thom_homology(&c2, Some(w2), n, &limits).unwrap(),
                "{name} degree {n}"
            );
        }
    }
}

#[test]
fn order_bounds_match_stored_groups() {
    let limits = Limits::default();
    let c2 = group("C2");
    let w = &orientation_characters(&c2)[0];
    let x: Vec<_> = (0..=5).map(|n| twisted_thom_homology(&c2, Some(w), n, &limits).unwrap()).collect();
    for (coeffs, target) in [(Structure::STop, Structure::Top), (Structure::SO, Structure::O)] {
        let d = diagonal_report(&ahss_e2_page(&x, &coefficient_table(coeffs), 5).unwrap(), 4);
        assert!(d.collapses);
        assert_eq!(d.order_bound, bordism_group(target, 4).unwrap().group.order());
    }
}

#[test]
fn tables_do_not_depend_on_the_group() {
    for cat in [Category::Smooth, Category::Topological] {
        let reference = classify(&group("C2"), cat, &Limits::default()).unwrap();
        for name in PASSING {
            let mut c = classify(&group(name), cat, &Limits::default()).unwrap();
            assert_eq!(c.total(), if cat == Category::Smooth { 14 } else { 20 });
            c.group = reference.group.clone();
            assert_eq!(c, reference, "{name}");
        }
    }
    assert!(classify(&group("A4"), Category::Smooth, &Limits::default()).is_err());
    let r = thom_simplification_applicable(&group("D5"), 4, &Limits::default()).unwrap();
    assert_eq!(r.applicability, Applicability::NotApplicable);
}

fn expr() -> impl Strategy<Value = String> {
    let base = prop::sample::select(vec!["RP4(+)", "RP4(-)", "Q(+)", "Q(-)", "S4", "S2xS2", "E8"]);
    let extra = prop::collection::vec(prop::sample::select(vec!["S2xS2", "E8", "S4"]), 0..4);
    (base, extra).prop_map(|(b, e)| std::iter::once(b).chain(e).collect::<Vec<_>>().join(" # "))
}

proptest! {
    #[test]
    fn sums_with_spheres_change_nothing(e in expr()) {
        for cat in [Category::Smooth, Category::Topological] {
            for s in [Tangential::PinPlus, Tangential::None] {
                let base = parse_expr(&e).unwrap();
                let Ok(v) = invariant_vector(&base, cat, s) else { continue };
                for extra in ["S4", "S2xS2"] {
                    let bigger = parse_expr(&format!("{e} # {extra}")).unwrap();
                    prop_assert_eq!(invariant_vector(&bigger, cat, s).unwrap(), v);
                    prop_assert!(stably_equivalent(&base, &bigger, cat, s).unwrap().equivalent);
                }
            }
        }
    }

    #[test]
    fn changing_the_pin_structure_stays_in_the_orbit(q in any::<bool>(), extra in 0usize..3) {
        let name = if q { "Q" } else { "RP4" };
        let tail = " # S2xS2".repeat(extra);
        let a = parse_expr(&format!("{name}(+){tail}")).unwrap();
        let b = parse_expr(&format!("{name}(-)")).unwrap();
        prop_assert!(stably_equivalent(&a, &b, Category::Smooth, Tangential::PinPlus).unwrap().equivalent);
    }
}
