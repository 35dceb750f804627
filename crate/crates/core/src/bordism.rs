//! Low-degree bordism coefficient groups and Thom spectrum identifications
//! for the three unorientable normal 1-types.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::hypothesis::HypothesisReport;
use crate::{AbelianGroup, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Structure {
    #[serde(rename = "O")]
    O,
    #[serde(rename = "SO")]
    SO,
    Spin,
    #[serde(rename = "Pin+")]
    PinPlus,
    #[serde(rename = "Pin-")]
    PinMinus,
    #[serde(rename = "STop")]
    STop,
    TopSpin,
    #[serde(rename = "TopPin+")]
    TopPinPlus,
    #[serde(rename = "TopPin-")]
    TopPinMinus,
    Top,
}

impl Structure {
    pub const ALL: [Structure; 10] = [
        Structure::O,
        Structure::SO,
        Structure::Spin,
        Structure::PinPlus,
        Structure::PinMinus,
        Structure::STop,
        Structure::TopSpin,
        Structure::TopPinPlus,
        Structure::TopPinMinus,
        Structure::Top,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Structure::O => "O",
            Structure::SO => "SO",
            Structure::Spin => "Spin",
            Structure::PinPlus => "Pin+",
            Structure::PinMinus => "Pin-",
            Structure::STop => "STop",
            Structure::TopSpin => "TopSpin",
            Structure::TopPinPlus => "TopPin+",
            Structure::TopPinMinus => "TopPin-",
            Structure::Top => "Top",
        }
    }

    pub fn is_topological(self) -> bool {
        matches!(self, Structure::STop | Structure::TopSpin | Structure::TopPinPlus | Structure::TopPinMinus | Structure::Top)
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Structure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().replace('±', "").to_ascii_lowercase().replace("plus", "+").replace("minus", "-");
        Structure::ALL
            .into_iter()
            .find(|st| st.name().to_ascii_lowercase() == key)
            .ok_or_else(|| Error::UnknownStructure(s.to_string()))
    }
}

/// One stored coefficient group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientEntry {
    pub degree: usize,
    pub group: AbelianGroup,
    pub citation: String,
}

/// `Ω_q` for the degrees that are known to the library.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub structure: String,
    pub entries: Vec<CoefficientEntry>,
}

impl CoefficientTable {
    pub fn get(&self, degree: usize) -> Option<&AbelianGroup> {
        self.entries.iter().find(|e| e.degree == degree).map(|e| &e.group)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().map(|e| e.degree).max()
    }

    /// Coefficients of ordinary integral homology: `Z` in degree 0.
    pub fn point(top: usize) -> Self {
        let entries = (0..=top)
            .map(|degree| CoefficientEntry {
                degree,
                group: if degree == 0 { AbelianGroup::integers() } else { AbelianGroup::trivial() },
                citation: "coefficients of ordinary homology".into(),
            })
            .collect();
        CoefficientTable { structure: "point".into(), entries }
    }
}

const THOM: &str = "Thom, Quelques propriétés globales des variétés différentiables (1954)";
const WALL: &str = "Wall, Determination of the cobordism ring (1960)";
const ABP: &str = "Anderson-Brown-Peterson, Pin cobordism and related topics (1969)";
const MILNOR: &str = "Milnor, Spin structures on manifolds (1963); Anderson-Brown-Peterson (1966)";
const KT: &str = "Kirby-Taylor, Pin structures on low-dimensional manifolds (1990)";
const KT_PINP: &str = "Giambalvo (1973); Kirby-Taylor (1990), Theorem 5.2";
const FQ: &str = "Freedman-Quinn, Topology of 4-manifolds (1990); Kirby-Taylor (1990), section 9";
const LOW_TOP: &str = "agrees with the smooth group below dimension 4 (smoothing theory)";
const SHEAR: &str = "Peterson, Lectures on cobordism theory (1968), section 7; Kirby-Taylor, A calculation of Pin+ bordism groups (1990), Lemma 6";
const GRAY: &str = "Gray, Products in the Atiyah-Hirzebruch spectral sequence (1980), section 2";
const TOP4: &str = "Atiyah-Hirzebruch spectral sequence over STop coefficients, order 8, generated by RP4, RP2xRP2, E8";

fn z() -> AbelianGroup {
    AbelianGroup::integers()
}

fn c(n: u64) -> AbelianGroup {
    AbelianGroup::cyclic(n)
}

fn zero() -> AbelianGroup {
    AbelianGroup::trivial()
}

/// `(group, citation)` by degree.
fn raw(structure: Structure) -> Vec<(AbelianGroup, &'static str)> {
    use Structure::*;
    match structure {
        O => vec![(c(2), THOM), (zero(), THOM), (c(2), THOM), (zero(), THOM), (AbelianGroup::elementary(2, 2), THOM), (c(2), THOM)],
        SO => vec![(z(), THOM), (zero(), THOM), (zero(), THOM), (zero(), THOM), (z(), THOM), (c(2), WALL)],
        Spin => vec![(z(), MILNOR), (c(2), MILNOR), (c(2), MILNOR), (zero(), MILNOR), (z(), MILNOR), (zero(), MILNOR)],
        PinMinus => vec![(c(2), ABP), (c(2), ABP), (c(8), ABP), (zero(), ABP), (zero(), ABP), (zero(), ABP)],
        PinPlus => vec![(c(2), KT), (zero(), KT), (c(2), KT), (c(2), KT), (c(16), KT_PINP), (zero(), KT)],
        STop => vec![(z(), LOW_TOP), (zero(), LOW_TOP), (zero(), LOW_TOP), (zero(), LOW_TOP), (z().direct_sum(&c(2)), FQ)],
        TopSpin => vec![(z(), LOW_TOP), (c(2), LOW_TOP), (c(2), LOW_TOP), (zero(), LOW_TOP), (z(), FQ)],
        TopPinMinus => vec![(c(2), LOW_TOP), (c(2), LOW_TOP), (c(8), LOW_TOP), (zero(), LOW_TOP), (c(2), KT)],
        TopPinPlus => vec![(c(2), LOW_TOP), (zero(), LOW_TOP), (c(2), LOW_TOP), (c(2), LOW_TOP), (c(8).direct_sum(&c(2)), KT)],
        Top => vec![(c(2), LOW_TOP), (zero(), LOW_TOP), (c(2), LOW_TOP), (zero(), LOW_TOP), (AbelianGroup::elementary(2, 3), TOP4)],
    }
}

pub fn coefficient_table(structure: Structure) -> CoefficientTable {
    let entries = raw(structure)
        .into_iter()
        .enumerate()
        .map(|(degree, (group, citation))| CoefficientEntry { degree, group, citation: citation.to_string() })
        .collect();
    CoefficientTable { structure: structure.name().to_string(), entries }
}

pub fn all_tables() -> Vec<CoefficientTable> {
    Structure::ALL.into_iter().map(coefficient_table).collect()
}

/// `Ω_degree` of `structure` with its citation.
pub fn bordism_group(structure: Structure, degree: usize) -> Result<CoefficientEntry> {
    coefficient_table(structure)
        .entries
        .into_iter()
        .find(|e| e.degree == degree)
        .ok_or(Error::MissingCoefficient { structure: structure.name().to_string(), degree })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Smooth,
    #[serde(rename = "top")]
    Topological,
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "smooth" | "diff" => Ok(Category::Smooth),
            "top" | "topological" => Ok(Category::Topological),
            _ => Err(Error::Parse { what: "category", detail: s.to_string() }),
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Smooth => "smooth",
            Category::Topological => "top",
        })
    }
}

/// The three unorientable normal 1-types, named by the normal bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flavor {
    /// `w₂(ν) = 0`, realized by `σ`; tangentially pin⁻.
    #[serde(rename = "almost-spin-pin+")]
    NormalPinPlus,
    /// `w₂(ν) = p*x²`, realized by `3σ`; tangentially pin⁺.
    #[serde(rename = "almost-spin-pin-")]
    NormalPinMinus,
    #[serde(rename = "totally-non-spin")]
    NonSpin,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::NormalPinMinus, Flavor::NormalPinPlus, Flavor::NonSpin];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::NormalPinPlus => "almost-spin-pin+",
            Flavor::NormalPinMinus => "almost-spin-pin-",
            Flavor::NonSpin => "totally-non-spin",
        }
    }

    /// `w₂(ν)` in terms of the pulled-back generator `x`.
    pub fn w2_normal(self) -> &'static str {
        match self {
            Flavor::NormalPinPlus => "0",
            Flavor::NormalPinMinus => "p*x^2",
            Flavor::NonSpin => "not pulled back from the fundamental group",
        }
    }

    pub fn realizing_bundle(self) -> &'static str {
        match self {
            Flavor::NormalPinPlus => "sigma",
            Flavor::NormalPinMinus => "3 sigma",
            Flavor::NonSpin => "sigma",
        }
    }
}

/// `Mξ` identified with a familiar Thom spectrum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThomIdentification {
    pub group: String,
    pub category: Category,
    pub flavor: Flavor,
    /// Tangential structure whose bordism computes `Ω_*^ξ`.
    pub structure: Structure,
    /// The same structure read on the normal bundle.
    pub normal_structure: String,
    /// Normal pin± corresponds to tangential pin∓.
    pub tangent_normal_swap: bool,
    pub equivalence: String,
    pub citation: String,
}

/// Which bordism theory computes `Ω_4^ξ` for a group passing the checker.
pub fn identify_thom(category: Category, flavor: Flavor, report: &HypothesisReport) -> Result<ThomIdentification> {
    report.require()?;
    let (structure, normal, equivalence, citation) = match (category, flavor) {
        (Category::Smooth, Flavor::NormalPinPlus) => {
            (Structure::PinMinus, "normal Pin+", "MSpin ^ (BZ/2)^(sigma-1) = MTPin-", SHEAR)
        }
        (Category::Smooth, Flavor::NormalPinMinus) => {
            (Structure::PinPlus, "normal Pin-", "MSpin ^ (BZ/2)^(3sigma-3) = MTPin+", SHEAR)
        }
        (Category::Smooth, Flavor::NonSpin) => (Structure::O, "O", "MSO ^ (BZ/2)^(sigma-1) = MO", GRAY),
        (Category::Topological, Flavor::NormalPinPlus) => {
            (Structure::TopPinMinus, "normal TopPin+", "MTopSpin ^ (BZ/2)^(sigma-1) = MTTopPin-", KT)
        }
        (Category::Topological, Flavor::NormalPinMinus) => {
            (Structure::TopPinPlus, "normal TopPin-", "MTopSpin ^ (BZ/2)^(3sigma-3) = MTTopPin+", KT)
        }
        (Category::Topological, Flavor::NonSpin) => (Structure::Top, "Top", "MSTop ^ (BZ/2)^(sigma-1) = MTop", FQ),
    };
    Ok(ThomIdentification {
        group: report.group.clone(),
        category,
        flavor,
        structure,
        normal_structure: normal.to_string(),
        tangent_normal_swap: flavor != Flavor::NonSpin,
        equivalence: equivalence.to_string(),
        citation: citation.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Limits;
    use crate::group::parse_group;
    use crate::hypothesis::thom_simplification_applicable;

    #[test]
    fn stored_values() {
        assert_eq!(bordism_group(Structure::PinPlus, 4).unwrap().group, AbelianGroup::cyclic(16));
        assert!(bordism_group(Structure::PinMinus, 4).unwrap().group.is_trivial());
        assert_eq!(bordism_group(Structure::Top, 4).unwrap().group, AbelianGroup::elementary(2, 3));
        assert_eq!(bordism_group(Structure::O, 4).unwrap().group, AbelianGroup::elementary(2, 2));
        assert_eq!(bordism_group(Structure::TopPinPlus, 4).unwrap().group.order(), Some(16));
        assert!(matches!(bordism_group(Structure::Top, 5), Err(Error::MissingCoefficient { degree: 5, .. })));
    }

    #[test]
    fn every_entry_is_cited() {
        for t in all_tables() {
            assert!(t.entries.len() >= 5, "{}", t.structure);
            assert!(t.entries.iter().all(|e| !e.citation.trim().is_empty()));
            let g0 = t.get(0).unwrap();
            let oriented = matches!(t.structure.as_str(), "SO" | "Spin" | "STop" | "TopSpin");
            assert_eq!(*g0, if oriented { AbelianGroup::integers() } else { AbelianGroup::cyclic(2) }, "{}", t.structure);
        }
    }

    #[test]
    fn names_round_trip() {
        for s in Structure::ALL {
            assert_eq!(s.name().parse::<Structure>().unwrap(), s);
        }
        assert_eq!("pin+".parse::<Structure>().unwrap(), Structure::PinPlus);
        assert!("Pin".parse::<Structure>().is_err());
    }

    #[test]
    fn identifications() {
        let l = Limits::default();
        let c6 = thom_simplification_applicable(&parse_group("C6").unwrap(), 4, &l).unwrap();
        let id = identify_thom(Category::Smooth, Flavor::NormalPinMinus, &c6).unwrap();
        assert_eq!(id.structure, Structure::PinPlus);
        assert!(id.tangent_normal_swap);
        assert_eq!(identify_thom(Category::Smooth, Flavor::NonSpin, &c6).unwrap().structure, Structure::O);
        assert_eq!(identify_thom(Category::Topological, Flavor::NonSpin, &c6).unwrap().structure, Structure::Top);
        let d5 = thom_simplification_applicable(&parse_group("D5").unwrap(), 4, &l).unwrap();
        assert!(matches!(identify_thom(Category::Smooth, Flavor::NonSpin, &d5), Err(Error::HypothesisFailed { .. })));
    }
}
