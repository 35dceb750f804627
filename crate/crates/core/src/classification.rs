//! Stable classification of closed unorientable 4-manifolds with
//! fundamental group `G`, `|G| ≡ 2 mod 4`, once the Thom spectrum reduces
//! to the `Z/2` quotient.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bordism::{bordism_group, identify_thom, Category, Flavor, Structure, ThomIdentification};
use crate::config::Limits;
use crate::group::FiniteGroup;
use crate::hypothesis::{thom_simplification_applicable, HypothesisReport};
use crate::manifold::{generator_invariants, Generator, InvariantVector, Summand, Tangential};
use crate::{AbelianGroup, Error, Result};

/// One of the three unorientable normal 1-types with `π₁ = G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalOneType {
    pub group: String,
    pub category: Category,
    pub flavor: Flavor,
    pub w2_normal: String,
    pub realizing_bundle: String,
    pub thom: ThomIdentification,
}

/// Degree of the hypothesis check used when none is supplied.
pub const DEFAULT_CHECK_DEGREE: usize = 4;

/// The three normal 1-types, after checking the hypothesis for `g`.
pub fn enumerate_normal_one_types(g: &FiniteGroup, category: Category, limits: &Limits) -> Result<Vec<NormalOneType>> {
    let report = thom_simplification_applicable(g, DEFAULT_CHECK_DEGREE, limits)?;
    normal_one_types(&report, category)
}

pub fn normal_one_types(report: &HypothesisReport, category: Category) -> Result<Vec<NormalOneType>> {
    report.require()?;
    if report.order % 4 != 2 {
        return Err(Error::HypothesisFailed {
            group: report.group.clone(),
            reason: format!("order {} is not 2 mod 4", report.order),
        });
    }
    Flavor::ALL
        .iter()
        .map(|&flavor| {
            Ok(NormalOneType {
                group: report.group.clone(),
                category,
                flavor,
                w2_normal: flavor.w2_normal().to_string(),
                realizing_bundle: flavor.realizing_bundle().to_string(),
                thom: identify_thom(category, flavor, report)?,
            })
        })
        .collect()
}

/// A basis generator of `Ω_4` for a structure, with its order and whether
/// the `Aut(ξ)` involution negates it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub generator: Generator,
    pub order: u64,
    pub negated: bool,
}

/// Generators of `Ω_4` in the order used for coordinates.
pub fn bordism_basis(structure: Structure) -> Result<Vec<BasisElement>> {
    let b = |generator, order, negated| BasisElement { generator, order, negated };
    // Changing the pin⁺ structure negates the class of RP4; E8 carries a
    // unique structure and is fixed.
    Ok(match structure {
        Structure::PinPlus => vec![b(Generator::RP4, 16, true)],
        Structure::PinMinus => vec![],
        Structure::O => vec![b(Generator::RP4, 2, false), b(Generator::RP2xRP2, 2, false)],
        Structure::TopPinPlus => vec![b(Generator::RP4, 8, true), b(Generator::E8, 2, false)],
        Structure::TopPinMinus => vec![b(Generator::E8, 2, false)],
        Structure::Top => {
            vec![b(Generator::RP4, 2, false), b(Generator::RP2xRP2, 2, false), b(Generator::E8, 2, false)]
        }
        other => return Err(Error::UnknownStructure(format!("{} is not the target of a normal 1-type", other.name()))),
    })
}

fn structure_context(structure: Structure) -> (Category, Tangential) {
    let cat = if structure.is_topological() { Category::Topological } else { Category::Smooth };
    let t = match structure {
        Structure::PinPlus | Structure::TopPinPlus => Tangential::PinPlus,
        Structure::PinMinus | Structure::TopPinMinus => Tangential::PinMinus,
        _ => Tangential::None,
    };
    (cat, t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitStructure {
    pub structure: Structure,
    pub bordism: AbelianGroup,
    pub basis: Vec<BasisElement>,
    /// Each orbit as a list of coordinate vectors in `basis`.
    pub orbits: Vec<Vec<Vec<u64>>>,
    pub action: String,
}

impl OrbitStructure {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    /// `(|Ω| + |Fix|) / 2` for the `Z/2` action.
    pub fn burnside_count(&self) -> usize {
        let all: Vec<Vec<u64>> = self.orbits.iter().flatten().cloned().collect();
        let fixed = all.iter().filter(|x| self.act(x) == **x).count();
        (all.len() + fixed) / 2
    }

    fn act(&self, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.basis).map(|(&c, b)| if b.negated { (b.order - c) % b.order } else { c }).collect()
    }
}

/// Orbits of `Aut(ξ)` on `Ω_4` of the given structure.
pub fn aut_orbits(structure: Structure) -> Result<OrbitStructure> {
    let bordism = bordism_group(structure, 4)?.group;
    let basis = bordism_basis(structure)?;
    if AbelianGroup::from_cyclic_orders(0, basis.iter().map(|b| b.order)) != bordism {
        return Err(Error::Incompatible(format!("basis of {} does not span the stored group", structure.name())));
    }
    let mut elements = vec![Vec::new()];
    for b in &basis {
        elements = elements.into_iter().flat_map(|e| (0..b.order).map(move |c| [e.clone(), vec![c]].concat())).collect();
    }
    let mut out = OrbitStructure {
        structure,
        bordism,
        basis,
        orbits: Vec::new(),
        action: String::new(),
    };
    out.action = if out.basis.iter().any(|b| b.negated) {
        "changing the pin+ structure acts by -1 on the RP4 summand".into()
    } else {
        "trivial".into()
    };
    let mut seen = std::collections::BTreeSet::new();
    for x in elements {
        if seen.contains(&x) {
            continue;
        }
        let y = out.act(&x);
        seen.insert(x.clone());
        seen.insert(y.clone());
        out.orbits.push(if y == x { vec![x] } else { vec![x, y] });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableClass {
    pub label: String,
    pub invariants: BTreeMap<String, u64>,
}

/// Classes of one normal 1-type; `classes[i]` is the orbit `orbits[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationTable {
    pub flavor: Flavor,
    pub structure: Structure,
    pub normal_structure: String,
    pub bordism: AbelianGroup,
    /// Coordinates are in the basis `basis`.
    pub basis: Vec<String>,
    pub action: String,
    pub orbits: Vec<Vec<Vec<u64>>>,
    pub class_count: usize,
    pub classes: Vec<StableClass>,
    pub citations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub group: String,
    pub category: Category,
    pub types: Vec<ClassificationTable>,
}

impl Classification {
    pub fn counts(&self) -> Vec<usize> {
        self.types.iter().map(|t| t.class_count).collect()
    }

    pub fn total(&self) -> usize {
        self.types.iter().map(|t| t.class_count).sum()
    }
}

fn combine(basis: &[BasisElement], x: &[u64], category: Category, t: Tangential) -> Result<InvariantVector> {
    let mut acc = InvariantVector {
        eta: (category == Category::Smooth && t == Tangential::PinPlus).then_some(0),
        s_inv: (category == Category::Topological && t == Tangential::PinPlus).then_some(0),
        ks: (category == Category::Topological).then_some(0),
        ..Default::default()
    };
    for (b, &c) in basis.iter().zip(x) {
        let v = generator_invariants(Summand { generator: b.generator, plus: true }, category, t)?;
        let scale = |a: Option<u64>, v: Option<u64>, m: u64| a.zip(v).map(|(a, v)| (a + c * v) % m);
        acc = InvariantVector {
            eta: scale(acc.eta, v.eta, 16),
            s_inv: scale(acc.s_inv, v.s_inv, 8),
            ks: scale(acc.ks, v.ks, 2),
            w4: (acc.w4 + c * v.w4) % 2,
            w2sq: (acc.w2sq + c * v.w2sq) % 2,
        };
    }
    Ok(acc)
}

/// Invariants that separate orbits, keyed by name.
fn orbit_invariants(v: &InvariantVector, category: Category, t: Tangential) -> Vec<(&'static str, u64)> {
    match (category, t) {
        (Category::Smooth, Tangential::PinPlus) => vec![("eta'", v.eta_orbit().unwrap_or(0))],
        (Category::Smooth, Tangential::PinMinus) => vec![],
        (Category::Smooth, Tangential::None) => vec![("w2^2", v.w2sq), ("w4", v.w4)],
        (Category::Topological, Tangential::PinPlus) => vec![("S'", v.s_orbit().unwrap_or(0)), ("ks", v.ks.unwrap_or(0))],
        (Category::Topological, Tangential::PinMinus) => vec![("ks", v.ks.unwrap_or(0))],
        (Category::Topological, Tangential::None) => vec![("ks", v.ks.unwrap_or(0)), ("w2^2", v.w2sq), ("w4", v.w4)],
    }
}

/// The table for one normal 1-type.
pub fn stable_classes(t: &NormalOneType) -> Result<ClassificationTable> {
    let structure = t.thom.structure;
    let orbits = aut_orbits(structure)?;
    let (category, tangential) = structure_context(structure);
    let mut rows = Vec::with_capacity(orbits.count());
    for orbit in &orbits.orbits {
        let v = combine(&orbits.basis, &orbit[0], category, tangential)?;
        for other in &orbit[1..] {
            let w = combine(&orbits.basis, other, category, tangential)?;
            if orbit_invariants(&w, category, tangential) != orbit_invariants(&v, category, tangential) {
                return Err(Error::Incompatible("orbit invariants are not constant on an orbit".into()));
            }
        }
        let inv = orbit_invariants(&v, category, tangential);
        let label = if inv.is_empty() {
            "single class".to_string()
        } else {
            inv.iter().map(|(k, x)| format!("{k}={x}")).collect::<Vec<_>>().join(" ")
        };
        let class = StableClass { label, invariants: inv.into_iter().map(|(k, x)| (k.to_string(), x)).collect() };
        rows.push((class, orbit.clone()));
    }
    let mut labels: Vec<&str> = rows.iter().map(|(c, _)| c.label.as_str()).collect();
    labels.sort_unstable();
    labels.dedup();
    if labels.len() != rows.len() {
        return Err(Error::Incompatible(format!("invariants do not separate the orbits of {}", structure.name())));
    }
    rows.sort_by(|a, b| a.0.invariants.values().cmp(b.0.invariants.values()));
    let (classes, orbit_list): (Vec<StableClass>, Vec<Vec<Vec<u64>>>) = rows.into_iter().unzip();
    Ok(ClassificationTable {
        flavor: t.flavor,
        structure,
        normal_structure: t.thom.normal_structure.clone(),
        bordism: orbits.bordism,
        basis: orbits.basis.iter().map(|b| b.generator.name().to_string()).collect(),
        action: orbits.action,
        orbits: orbit_list,
        class_count: classes.len(),
        classes,
        citations: vec![t.thom.citation.clone(), bordism_group(structure, 4)?.citation],
    })
}

/// All three tables for `g`.
pub fn classify(g: &FiniteGroup, category: Category, limits: &Limits) -> Result<Classification> {
    let report = thom_simplification_applicable(g, DEFAULT_CHECK_DEGREE, limits)?;
    classify_with(&report, category)
}

/// As [`classify`], reusing an existing hypothesis report.
pub fn classify_with(report: &HypothesisReport, category: Category) -> Result<Classification> {
    let types = normal_one_types(report, category)?.iter().map(stable_classes).collect::<Result<_>>()?;
    Ok(Classification { group: report.group.clone(), category, types })
}

/// Smooth to topological pin⁺ bordism in degree 4: `Z/16 → Z/8 ⊕ Z/2`,
/// `k ↦ (k mod 8, 0)` in the `(RP4, E8)` basis.
pub fn smooth_to_top_pin_plus(k: u64) -> (u64, u64) {
    (k % 16 % 8, 0)
}
