//! Connected sums of named generator manifolds and their bordism invariants.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bordism::Category;
use crate::linalg::{BitMatrix, BitVec, Gf2Solver};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    RP4,
    /// The fake `RP4`, homotopy equivalent to `RP4`.
    Q,
    RP2xRP2,
    E8,
    S4,
    S2xS2,
}

impl Generator {
    pub fn name(self) -> &'static str {
        match self {
            Generator::RP4 => "RP4",
            Generator::Q => "Q",
            Generator::RP2xRP2 => "RP2xRP2",
            Generator::E8 => "E8",
            Generator::S4 => "S4",
            Generator::S2xS2 => "S2xS2",
        }
    }

    fn simply_connected(self) -> bool {
        matches!(self, Generator::E8 | Generator::S4 | Generator::S2xS2)
    }

    fn smoothable(self) -> bool {
        self != Generator::E8
    }

    fn admits(self, s: Tangential) -> bool {
        match (self, s) {
            (_, Tangential::None) => true,
            (Generator::RP4 | Generator::Q, t) => t == Tangential::PinPlus,
            (Generator::RP2xRP2, _) => false,
            _ => true,
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().replace(['×', ' '], "x").to_ascii_uppercase();
        [Generator::RP4, Generator::Q, Generator::RP2xRP2, Generator::E8, Generator::S4, Generator::S2xS2]
            .into_iter()
            .find(|g| g.name().to_ascii_uppercase() == key)
            .ok_or_else(|| Error::Parse { what: "manifold", detail: s.to_string() })
    }
}

/// Tangential structure declared for a comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tangential {
    #[serde(rename = "pin+")]
    PinPlus,
    #[serde(rename = "pin-")]
    PinMinus,
    #[serde(rename = "none")]
    None,
}

impl FromStr for Tangential {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pin+" | "pinplus" => Ok(Tangential::PinPlus),
            "pin-" | "pinminus" => Ok(Tangential::PinMinus),
            "none" | "" => Ok(Tangential::None),
            _ => Err(Error::Parse { what: "structure", detail: s.to_string() }),
        }
    }
}

impl fmt::Display for Tangential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tangential::PinPlus => "pin+",
            Tangential::PinMinus => "pin-",
            Tangential::None => "none",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Summand {
    pub generator: Generator,
    /// Which of the two pin⁺ structures, for `RP4` and `Q`.
    pub plus: bool,
}

/// `M_1 # M_2 # …` with at most one non-simply-connected summand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldExpr {
    pub summands: Vec<Summand>,
}

impl fmt::Display for ManifoldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                f.write_str(" # ")?;
            }
            f.write_str(s.generator.name())?;
            if matches!(s.generator, Generator::RP4 | Generator::Q) {
                f.write_str(if s.plus { "(+)" } else { "(-)" })?;
            }
        }
        Ok(())
    }
}

pub fn parse_expr(s: &str) -> Result<ManifoldExpr> {
    let bad = |d: &str| Error::Parse { what: "manifold expression", detail: format!("{s}: {d}") };
    let mut summands = Vec::new();
    for part in s.split('#') {
        let part = part.trim();
        let (name, tag) = match part.find('(') {
            Some(i) => {
                let tag = part[i..].strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(|| bad("unbalanced tag"))?;
                (&part[..i], Some(tag.trim()))
            }
            None => (part, None),
        };
        let generator: Generator = name.parse()?;
        let plus = match tag {
            None | Some("+") => true,
            Some("-") => false,
            Some(t) => return Err(bad(&format!("unknown tag {t}"))),
        };
        if tag.is_some() && !matches!(generator, Generator::RP4 | Generator::Q) {
            return Err(bad("pin tags apply to RP4 and Q only"));
        }
        summands.push(Summand { generator, plus });
    }
    if summands.iter().filter(|x| !x.generator.simply_connected()).count() > 1 {
        return Err(bad("more than one non-simply-connected summand"));
    }
    Ok(ManifoldExpr { summands })
}

impl FromStr for ManifoldExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

/// Bordism invariants; `None` where the declared structure does not define
/// them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantVector {
    /// η in `Z/16` (smooth pin⁺).
    pub eta: Option<u64>,
    /// Kirby–Taylor `S` in `Z/8` (topological pin⁺).
    pub s_inv: Option<u64>,
    /// Triangulation obstruction in `Z/2` (topological).
    pub ks: Option<u64>,
    pub w4: u64,
    pub w2sq: u64,
}

impl InvariantVector {
    fn add(self, o: InvariantVector) -> InvariantVector {
        let add = |a: Option<u64>, b: Option<u64>, m: u64| a.zip(b).map(|(x, y)| (x + y) % m);
        InvariantVector {
            eta: add(self.eta, o.eta, 16),
            s_inv: add(self.s_inv, o.s_inv, 8),
            ks: add(self.ks, o.ks, 2),
            w4: (self.w4 + o.w4) % 2,
            w2sq: (self.w2sq + o.w2sq) % 2,
        }
    }

    /// `η' = min(η, 16 - η)`.
    pub fn eta_orbit(&self) -> Option<u64> {
        self.eta.map(|e| e.min(16 - e) % 16)
    }

    /// `S' = min(S, 8 - S)`.
    pub fn s_orbit(&self) -> Option<u64> {
        self.s_inv.map(|s| s.min(8 - s) % 8)
    }
}

/// `F_2[a, b] / (a^{ea}, b^{eb})`, as a set of monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
struct TruncatedPoly {
    ea: u32,
    eb: u32,
    terms: BTreeSet<(u32, u32)>,
}

impl TruncatedPoly {
    fn one(ea: u32, eb: u32) -> Self {
        TruncatedPoly { ea, eb, terms: BTreeSet::from([(0, 0)]) }
    }

    fn from_terms(ea: u32, eb: u32, terms: &[(u32, u32)]) -> Self {
        let mut p = TruncatedPoly { ea, eb, terms: BTreeSet::new() };
        for &t in terms {
            p.toggle(t);
        }
        p
    }

    fn toggle(&mut self, t: (u32, u32)) {
        if t.0 < self.ea && t.1 < self.eb && !self.terms.remove(&t) {
            self.terms.insert(t);
        }
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = TruncatedPoly { ea: self.ea, eb: self.eb, terms: BTreeSet::new() };
        for &(i, j) in &self.terms {
            for &(k, l) in &o.terms {
                out.toggle((i + k, j + l));
            }
        }
        out
    }

    fn pow(&self, n: u32) -> Self {
        (0..n).fold(TruncatedPoly::one(self.ea, self.eb), |acc, _| acc.mul(self))
    }

    fn degree(&self, d: u32) -> Self {
        TruncatedPoly { ea: self.ea, eb: self.eb, terms: self.terms.iter().copied().filter(|(i, j)| i + j == d).collect() }
    }

    fn coefficient(&self, t: (u32, u32)) -> u64 {
        u64::from(self.terms.contains(&t))
    }
}

/// `(w2², w4)` from a total Stiefel–Whitney class and the monomial dual to
/// the fundamental class.
fn sw_numbers(w: &TruncatedPoly, top: (u32, u32)) -> (u64, u64) {
    let w2 = w.degree(2);
    (w2.mul(&w2).coefficient(top), w.degree(4).coefficient(top))
}

/// `w(RP^4) = (1 + a)^5` in `F_2[a]/(a^5)`.
fn rp4_numbers() -> (u64, u64) {
    sw_numbers(&TruncatedPoly::from_terms(5, 1, &[(0, 0), (1, 0)]).pow(5), (4, 0))
}

/// `w(RP^2 × RP^2) = (1 + a)^3 (1 + b)^3` in `F_2[a, b]/(a^3, b^3)`.
fn rp2_rp2_numbers() -> (u64, u64) {
    let wa = TruncatedPoly::from_terms(3, 3, &[(0, 0), (1, 0)]).pow(3);
    let wb = TruncatedPoly::from_terms(3, 3, &[(0, 0), (0, 1)]).pow(3);
    sw_numbers(&wa.mul(&wb), (2, 2))
}

/// The `E8` form (Cartan matrix of `E8`).
pub fn e8_form() -> Vec<Vec<i64>> {
    let mut q = vec![vec![0i64; 8]; 8];
    for (i, row) in q.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)] {
        q[i][j] = -1;
        q[j][i] = -1;
    }
    q
}

/// Signature of a nondegenerate symmetric form whose leading principal
/// minors are nonzero, from the sign changes of those minors.
fn signature(q: &[Vec<i64>]) -> Result<i64> {
    let n = q.len();
    let mut minors = vec![1i128];
    for k in 1..=n {
        // Bareiss elimination on the leading k × k block.
        let mut m: Vec<Vec<i128>> = (0..k).map(|i| (0..k).map(|j| i128::from(q[i][j])).collect()).collect();
        let mut prev = 1i128;
        for p in 0..k - 1 {
            if m[p][p] == 0 {
                return Err(Error::Incompatible("form needs a pivot swap".into()));
            }
            for i in p + 1..k {
                for j in p + 1..k {
                    m[i][j] = (m[i][j] * m[p][p] - m[i][p] * m[p][j]) / prev;
                }
            }
            prev = m[p][p];
        }
        let det = m[k - 1][k - 1];
        if det == 0 {
            return Err(Error::Incompatible("degenerate leading minor".into()));
        }
        minors.push(det);
    }
    let changes = minors.windows(2).filter(|w| (w[0] > 0) != (w[1] > 0)).count() as i64;
    Ok(n as i64 - 2 * changes)
}

/// Invariants of a closed simply connected topological spin-or-not
/// 4-manifold read off its intersection form: `(w2², w4, ks)`.
///
/// The Wu class `v2` is the characteristic element mod 2, `w2 = v2`,
/// `w4 = v2²`; `w4` is checked against the Euler characteristic, and for an
/// even form `ks = σ/8 mod 2`.
pub fn intersection_form_invariants(q: &[Vec<i64>]) -> Result<(u64, u64, Option<u64>)> {
    let n = q.len();
    let rows: Vec<Vec<bool>> = q.iter().map(|r| r.iter().map(|x| x.rem_euclid(2) == 1).collect()).collect();
    let a = BitMatrix::from_bools(&rows);
    let diag = BitVec::from_bools(&(0..n).map(|i| q[i][i].rem_euclid(2) == 1).collect::<Vec<_>>());
    let v = Gf2Solver::new(&a).solve(&diag).ok_or_else(|| Error::Incompatible("form is degenerate mod 2".into()))?;
    let vv: i64 = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| v.get(i) && v.get(j)).map(|(i, j)| q[i][j]).sum();
    let w4 = vv.rem_euclid(2) as u64;
    let euler = (2 + n) as u64 % 2;
    if w4 != euler {
        return Err(Error::Incompatible("Wu class and Euler characteristic disagree".into()));
    }
    let even = v.is_zero();
    let ks = if even { Some((signature(q)? / 8).rem_euclid(2) as u64) } else { None };
    Ok((w4, w4, ks))
}

/// Invariants of one generator with the declared structure.
pub fn generator_invariants(s: Summand, category: Category, structure: Tangential) -> Result<InvariantVector> {
    let g = s.generator;
    if category == Category::Smooth && !g.smoothable() {
        return Err(Error::Incompatible(format!("{} has no smooth structure", g.name())));
    }
    if !g.admits(structure) {
        return Err(Error::Incompatible(format!("{} admits no {structure} structure", g.name())));
    }
    let (w2sq, w4, ks) = match g {
        Generator::RP4 | Generator::Q => {
            // Q is homotopy equivalent to RP4, and SW numbers are homotopy invariants.
            let (a, b) = rp4_numbers();
            (a, b, 0)
        }
        Generator::RP2xRP2 => {
            let (a, b) = rp2_rp2_numbers();
            (a, b, 0)
        }
        Generator::E8 => {
            let (a, b, ks) = intersection_form_invariants(&e8_form())?;
            (a, b, ks.expect("even form"))
        }
        Generator::S4 | Generator::S2xS2 => (0, 0, 0),
    };
    // η of the pin⁺ structures (Kirby–Taylor for RP4, Stolz for Q); S is η
    // reduced mod 8 on these generators and vanishes on the rest.
    let eta = match (g, s.plus) {
        (Generator::RP4, true) => 1,
        (Generator::RP4, false) => 15,
        (Generator::Q, true) => 9,
        (Generator::Q, false) => 7,
        _ => 0,
    };
    let pin_plus = structure == Tangential::PinPlus;
    Ok(InvariantVector {
        eta: (pin_plus && category == Category::Smooth).then_some(eta),
        s_inv: (pin_plus && category == Category::Topological).then_some(eta % 8),
        ks: (category == Category::Topological).then_some(ks),
        w4,
        w2sq,
    })
}

/// Sum over the connected summands (`M # N` is bordant to `M ⊔ N`).
pub fn invariant_vector(e: &ManifoldExpr, category: Category, structure: Tangential) -> Result<InvariantVector> {
    let mut acc: Option<InvariantVector> = None;
    for s in &e.summands {
        let v = generator_invariants(*s, category, structure)?;
        acc = Some(match acc {
            None => v,
            Some(a) => a.add(v),
        });
    }
    acc.ok_or_else(|| Error::Parse { what: "manifold expression", detail: "empty".into() })
}

/// Rows `RP4, RP2xRP2, E8` evaluated on `(w2², w4, ks)` in the
/// topological category, with the rank of that matrix over `F_2`.
pub fn independence_matrix() -> Result<(Vec<Vec<bool>>, usize)> {
    let rows = [Generator::RP4, Generator::RP2xRP2, Generator::E8]
        .into_iter()
        .map(|g| {
            let v = generator_invariants(Summand { generator: g, plus: true }, Category::Topological, Tangential::None)?;
            Ok(vec![v.w2sq == 1, v.w4 == 1, v.ks == Some(1)])
        })
        .collect::<Result<Vec<_>>>()?;
    let rank = BitMatrix::from_bools(&rows).rank();
    Ok((rows, rank))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub left: String,
    pub right: String,
    pub category: Category,
    pub structure: Tangential,
    pub equivalent: bool,
    pub left_invariants: InvariantVector,
    pub right_invariants: InvariantVector,
    /// The complete invariant compared, with both values.
    pub witness: Vec<(String, u64, u64)>,
    pub note: String,
}

/// Stable equivalence within the declared normal 1-type, by comparing the
/// complete invariant of that type up to the `Aut(ξ)` identification.
pub fn stably_equivalent(e1: &ManifoldExpr, e2: &ManifoldExpr, category: Category, structure: Tangential) -> Result<Comparison> {
    let a = invariant_vector(e1, category, structure)?;
    let b = invariant_vector(e2, category, structure)?;
    let pick = |v: &InvariantVector| -> Vec<(&'static str, u64)> {
        match (category, structure) {
            (Category::Smooth, Tangential::PinPlus) => vec![("eta'", v.eta_orbit().expect("defined"))],
            (Category::Smooth, Tangential::PinMinus) => vec![],
            (Category::Smooth, Tangential::None) => vec![("w2^2", v.w2sq), ("w4", v.w4)],
            (Category::Topological, Tangential::PinPlus) => {
                vec![("S'", v.s_orbit().expect("defined")), ("ks", v.ks.expect("defined"))]
            }
            (Category::Topological, Tangential::PinMinus) => vec![("ks", v.ks.expect("defined"))],
            (Category::Topological, Tangential::None) => {
                vec![("ks", v.ks.expect("defined")), ("w2^2", v.w2sq), ("w4", v.w4)]
            }
        }
    };
    let witness: Vec<(String, u64, u64)> =
        pick(&a).into_iter().zip(pick(&b)).map(|((n, x), (_, y))| (n.to_string(), x, y)).collect();
    let equivalent = witness.iter().all(|(_, x, y)| x == y);
    Ok(Comparison {
        left: e1.to_string(),
        right: e2.to_string(),
        category,
        structure,
        equivalent,
        left_invariants: a,
        right_invariants: b,
        witness,
        note: "both sides are assumed to have the declared normal 1-type".into(),
    })
}
