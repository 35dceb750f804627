//! Truncated free resolutions of the trivial module `Z` over `Z[G]`.

use crate::config::Limits;
use crate::group::FiniteGroup;
use crate::{Error, Result};

/// One summand `coeff · element · e_generator` of a free-module element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub generator: u32,
    pub element: u32,
    pub coeff: i64,
}

/// Element of a free `Z[G]`-module as a sorted list of terms.
pub type FreeElement = Vec<Term>;

fn normalize(mut terms: Vec<Term>) -> FreeElement {
    terms.sort_by_key(|t| (t.generator, t.element));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.generator == t.generator && last.element == t.element => last.coeff += t.coeff,
            _ => out.push(t),
        }
    }
    out.retain(|t| t.coeff != 0);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolutionKind {
    /// Normalized bar resolution.
    Bar,
    /// Two-periodic resolution of a cyclic group with the given generator.
    Periodic { generator: usize },
    /// Tensor product of resolutions of the two factors `A × B`.
    Tensor { left: String, right: String },
}

/// `F_N → … → F_0 → Z`, with `F_0` of rank one and augmentation sending
/// every group element to 1.
#[derive(Clone, Debug)]
pub struct Resolution {
    group: FiniteGroup,
    kind: ResolutionKind,
    ranks: Vec<usize>,
    /// `boundaries[n][i] = ∂ e_i` for `e_i ∈ F_n`; entry 0 is empty.
    boundaries: Vec<Vec<FreeElement>>,
}

impl Resolution {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn kind(&self) -> &ResolutionKind {
        &self.kind
    }

    /// Top degree `N`.
    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    /// `∂_n : F_n → F_{n-1}` for `1 ≤ n ≤ N`.
    pub fn boundary(&self, n: usize) -> &[FreeElement] {
        assert!((1..=self.length()).contains(&n), "boundary degree out of range");
        &self.boundaries[n]
    }

    /// `g · x` for `x ∈ F_n`.
    pub fn act(&self, g: usize, x: &[Term]) -> FreeElement {
        x.iter().map(|t| Term { element: self.group.mul(g, t.element as usize) as u32, ..*t }).collect()
    }

    /// `∂_n x` for an arbitrary element `x ∈ F_n`.
    pub fn apply_boundary(&self, n: usize, x: &[Term]) -> FreeElement {
        let d = self.boundary(n);
        let mut out = Vec::new();
        for t in x {
            for s in &d[t.generator as usize] {
                out.push(Term {
                    generator: s.generator,
                    element: self.group.mul(t.element as usize, s.element as usize) as u32,
                    coeff: t.coeff * s.coeff,
                });
            }
        }
        normalize(out)
    }

    /// Checks `ε ∂_1 = 0` and `∂_{n-1} ∂_n = 0` for every generator.
    pub fn verify(&self) -> Result<()> {
        if self.ranks[0] != 1 {
            return Err(Error::DimensionMismatch { expected: 1, found: self.ranks[0] });
        }
        if self.length() >= 1 {
            for x in self.boundary(1) {
                if x.iter().map(|t| t.coeff).sum::<i64>() != 0 {
                    return Err(Error::NonzeroComposition);
                }
            }
        }
        for n in 2..=self.length() {
            for x in self.boundary(n) {
                if !self.apply_boundary(n - 1, x).is_empty() {
                    return Err(Error::NonzeroComposition);
                }
            }
        }
        Ok(())
    }

    /// Restriction to degrees `≤ n`.
    pub fn truncate(&self, n: usize) -> Resolution {
        assert!(n <= self.length());
        Resolution {
            group: self.group.clone(),
            kind: self.kind.clone(),
            ranks: self.ranks[..=n].to_vec(),
            boundaries: self.boundaries[..=n].to_vec(),
        }
    }
}

/// Mixed-radix encoding of normalized bar cells `[g_1 | … | g_n]` with
/// every `g_i ≠ 1`.
#[derive(Clone, Copy, Debug)]
pub struct BarIndex {
    base: usize,
}

impl BarIndex {
    pub fn new(order: usize) -> Self {
        BarIndex { base: order.saturating_sub(1) }
    }

    pub fn count(&self, n: usize) -> usize {
        self.base.pow(n as u32)
    }

    /// Index of a tuple of non-identity elements.
    pub fn encode(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &g| acc * self.base + (g - 1))
    }

    pub fn decode(&self, mut index: usize, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for slot in out.iter_mut().rev() {
            *slot = index % self.base + 1;
            index /= self.base;
        }
        out
    }
}

/// `∂[g_1|…|g_n]` in the normalized bar resolution.
pub fn bar_boundary(g: &FiniteGroup, idx: BarIndex, tuple: &[usize]) -> FreeElement {
    let n = tuple.len();
    let mut out = Vec::with_capacity(n + 1);
    let sign = |i: usize| if i.is_multiple_of(2) { 1 } else { -1 };
    out.push(Term { generator: idx.encode(&tuple[1..]) as u32, element: tuple[0] as u32, coeff: 1 });
    for i in 1..n {
        let merged = g.mul(tuple[i - 1], tuple[i]);
        if merged != 0 {
            let mut t: Vec<usize> = Vec::with_capacity(n - 1);
            t.extend_from_slice(&tuple[..i - 1]);
            t.push(merged);
            t.extend_from_slice(&tuple[i + 1..]);
            out.push(Term { generator: idx.encode(&t) as u32, element: 0, coeff: sign(i) });
        }
    }
    out.push(Term { generator: idx.encode(&tuple[..n - 1]) as u32, element: 0, coeff: sign(n) });
    normalize(out)
}

fn bar_cells(order: usize, n: usize) -> u128 {
    (0..=n).map(|k| ((order as u128).saturating_sub(1)).saturating_pow(k as u32)).sum()
}

/// Normalized bar resolution through degree `n`.
pub fn bar_resolution(g: &FiniteGroup, n: usize, limits: &Limits) -> Result<Resolution> {
    limits.check(bar_cells(g.order(), n))?;
    let idx = BarIndex::new(g.order());
    let ranks: Vec<usize> = (0..=n).map(|k| idx.count(k)).collect();
    let mut boundaries = vec![Vec::new()];
    for k in 1..=n {
        boundaries.push((0..ranks[k]).map(|i| bar_boundary(g, idx, &idx.decode(i, k))).collect());
    }
    Ok(Resolution { group: g.clone(), kind: ResolutionKind::Bar, ranks, boundaries })
}

/// Periodic resolution `… → Z[G] --N--> Z[G] --(t-1)--> Z[G]` of a cyclic group.
pub fn periodic_resolution(g: &FiniteGroup, n: usize) -> Result<Resolution> {
    let t = g.cyclic_generator().ok_or_else(|| Error::NotCyclic(g.name().to_string()))?;
    let minus = normalize(vec![
        Term { generator: 0, element: t as u32, coeff: 1 },
        Term { generator: 0, element: 0, coeff: -1 },
    ]);
    let norm = normalize(g.elements().map(|x| Term { generator: 0, element: x as u32, coeff: 1 }).collect());
    let mut boundaries = vec![Vec::new()];
    for k in 1..=n {
        boundaries.push(vec![if k % 2 == 1 { minus.clone() } else { norm.clone() }]);
    }
    Ok(Resolution { group: g.clone(), kind: ResolutionKind::Periodic { generator: t }, ranks: vec![1; n + 1], boundaries })
}

/// Tensor product of resolutions of commuting subgroups `A`, `B` with
/// `G = A × B`. `a_elems[i]` is the element of `G` for element `i` of `A`.
pub fn tensor_resolution(g: &FiniteGroup, ra: &Resolution, a_elems: &[usize], rb: &Resolution, b_elems: &[usize]) -> Result<Resolution> {
    let n = ra.length().min(rb.length());
    // offsets[k][p]: first generator index of the (p, k-p) block in degree k.
    let mut offsets = vec![Vec::new(); n + 1];
    let mut ranks = vec![0; n + 1];
    for k in 0..=n {
        for p in 0..=k {
            offsets[k].push(ranks[k]);
            ranks[k] += ra.rank(p) * rb.rank(k - p);
        }
    }
    let id = |k: usize, p: usize, i: usize, j: usize| (offsets[k][p] + i * rb.rank(k - p) + j) as u32;
    let mut boundaries = vec![Vec::new()];
    for k in 1..=n {
        let mut dk = Vec::with_capacity(ranks[k]);
        for p in 0..=k {
            let q = k - p;
            for i in 0..ra.rank(p) {
                for j in 0..rb.rank(q) {
                    let mut terms = Vec::new();
                    if p > 0 {
                        for t in &ra.boundary(p)[i] {
                            terms.push(Term {
                                generator: id(k - 1, p - 1, t.generator as usize, j),
                                element: a_elems[t.element as usize] as u32,
                                coeff: t.coeff,
                            });
                        }
                    }
                    if q > 0 {
                        let sign = if p % 2 == 0 { 1 } else { -1 };
                        for t in &rb.boundary(q)[j] {
                            terms.push(Term {
                                generator: id(k - 1, p, i, t.generator as usize),
                                element: b_elems[t.element as usize] as u32,
                                coeff: sign * t.coeff,
                            });
                        }
                    }
                    dk.push(normalize(terms));
                }
            }
        }
        boundaries.push(dk);
    }
    let kind = ResolutionKind::Tensor { left: ra.group.name().to_string(), right: rb.group.name().to_string() };
    Ok(Resolution { group: g.clone(), kind, ranks, boundaries })
}

/// The smallest resolution available: periodic for cyclic groups, tensor
/// products along a direct factorization, bar otherwise.
pub fn best_resolution(g: &FiniteGroup, n: usize, limits: &Limits) -> Result<Resolution> {
    if g.cyclic_generator().is_some() {
        return periodic_resolution(g, n);
    }
    if let Some((a, b)) = g.direct_factorization() {
        let (ga, _) = g.subgroup(&a, format!("{}.A", g.name()))?;
        let (gb, _) = g.subgroup(&b, format!("{}.B", g.name()))?;
        let ra = best_resolution(&ga, n, limits)?;
        let rb = best_resolution(&gb, n, limits)?;
        return tensor_resolution(g, &ra, &a, &rb, &b);
    }
    bar_resolution(g, n, limits)
}
