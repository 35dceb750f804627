//! Mod-2 cohomology rings through a fixed degree, cup products via the
//! Alexander–Whitney diagonal on the bar complex, and inflation maps.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{differential, Comparison, Variance};
use crate::config::Limits;
use crate::group::{FiniteGroup, GroupHom};
use crate::linalg::{field_kernel_basis, BitVec};
use crate::resolution::{best_resolution, Resolution};
use crate::scalar::Gf2;
use crate::{Error, Result};

/// Incremental echelon form over the two-element field that tracks, for
/// every stored row, which tagged vectors it combines.
struct Span {
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
    tags: Vec<BitVec>,
    tag_len: usize,
}

impl Span {
    fn new(tag_len: usize) -> Self {
        Span { rows: Vec::new(), pivots: Vec::new(), tags: Vec::new(), tag_len }
    }

    fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut r = v.clone();
        let mut tag = BitVec::zeros(self.tag_len);
        for (k, &p) in self.pivots.iter().enumerate() {
            if r.get(p) {
                r.xor_assign(&self.rows[k]);
                tag.xor_assign(&self.tags[k]);
            }
        }
        (r, tag)
    }

    /// Adds `v` (tagged) if independent; returns whether it was.
    fn insert(&mut self, v: &BitVec, tag: BitVec) -> bool {
        let (r, t) = self.reduce(v);
        let Some(p) = r.first_one() else { return false };
        let mut tag = tag;
        tag.xor_assign(&t);
        self.rows.push(r);
        self.pivots.push(p);
        self.tags.push(tag);
        true
    }
}

struct Degree {
    /// Chosen cocycles, one bit per generator of `F_n`.
    basis: Vec<BitVec>,
    /// Span of coboundaries and basis cocycles, tagged by basis index.
    span: Span,
}

/// `H^*(G; Z/2)` through degree `top`, with cochain representatives on a
/// fixed resolution.
pub struct Mod2Cohomology {
    group: FiniteGroup,
    top: usize,
    degrees: Vec<Degree>,
    cmp: Comparison<Gf2>,
    /// Values of all basis cocycles of degree `n` on `g_n([cell])`.
    values: HashMap<(usize, u64), BitVec>,
}

fn to_bits(v: &[Gf2]) -> BitVec {
    let mut b = BitVec::zeros(v.len());
    for (i, x) in v.iter().enumerate() {
        if x.0 {
            b.set(i, true);
        }
    }
    b
}

impl Mod2Cohomology {
    /// Basis of each degree: kernel vectors of `δ^n` in their canonical
    /// order, kept when independent modulo coboundaries and earlier picks.
    pub fn new(res: &Resolution, top: usize) -> Result<Self> {
        if res.length() < top + 1 {
            return Err(Error::DimensionMismatch { expected: top + 1, found: res.length() });
        }
        let one = |_: usize| vec![Gf2(true)];
        let mut degrees = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let c = res.rank(n);
            let into = differential::<Gf2>(res, Variance::Cochains, n as isize - 1, 1, &one);
            let out = differential::<Gf2>(res, Variance::Cochains, n as isize, 1, &one);
            let kernel = field_kernel_basis(&out);
            let mut columns: Vec<Vec<(usize, Gf2)>> = vec![Vec::new(); into.cols()];
            for i in 0..into.rows() {
                for (j, v) in into.row(i) {
                    columns[*j as usize].push((i, *v));
                }
            }
            let mut span = Span::new(kernel.len());
            for col in columns {
                let mut b = BitVec::zeros(c);
                for (i, v) in col {
                    if v.0 {
                        b.flip(i);
                    }
                }
                span.insert(&b, BitVec::zeros(kernel.len()));
            }
            let mut basis = Vec::new();
            for z in &kernel {
                let z = to_bits(z);
                if span.insert(&z, BitVec::unit(kernel.len(), basis.len())) {
                    basis.push(z);
                }
            }
            // Tags were sized for every kernel vector; shrink to the basis.
            let dim = basis.len();
            for t in span.tags.iter_mut() {
                *t = BitVec::from_bools(&(0..dim).map(|k| t.get(k)).collect::<Vec<_>>());
            }
            span.tag_len = dim;
            degrees.push(Degree { basis, span });
        }
        Ok(Mod2Cohomology { group: res.group().clone(), top, degrees, cmp: Comparison::new(res, top)?, values: HashMap::new() })
    }

    /// On the smallest available resolution.
    pub fn for_group(g: &FiniteGroup, top: usize, limits: &Limits) -> Result<Self> {
        Self::new(&best_resolution(g, top + 1, limits)?, top)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn dim(&self, n: usize) -> usize {
        self.degrees[n].basis.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.top).map(|n| self.dim(n)).collect()
    }

    /// Representative cocycle of basis class `i` in degree `n`.
    pub fn representative(&self, n: usize, i: usize) -> &BitVec {
        &self.degrees[n].basis[i]
    }

    /// Coordinates of a cocycle in the chosen basis.
    pub fn coordinates(&self, n: usize, cocycle: &BitVec) -> Result<BitVec> {
        let (rest, tag) = self.degrees[n].span.reduce(cocycle);
        if !rest.is_zero() {
            return Err(Error::InvalidModule(format!("cochain in degree {n} is not a cocycle")));
        }
        Ok(tag)
    }

    fn basis_values(&mut self, n: usize, cell: u64) -> Result<BitVec> {
        if let Some(v) = self.values.get(&(n, cell)) {
            return Ok(v.clone());
        }
        let y = self.cmp.from_bar(n, cell)?;
        let order = self.group.order();
        let mut out = BitVec::zeros(self.dim(n));
        for (k, u) in self.degrees[n].basis.iter().enumerate() {
            let val = y.iter().enumerate().filter(|(pos, v)| v.0 && u.get(pos / order)).count() % 2 == 1;
            out.set(k, val);
        }
        self.values.insert((n, cell), out.clone());
        Ok(out)
    }

    /// Cup product of basis classes `(p, i)` and `(q, j)` in coordinates.
    pub fn cup(&mut self, p: usize, i: usize, q: usize, j: usize) -> Result<BitVec> {
        let n = p + q;
        if n > self.top {
            return Err(Error::DimensionMismatch { expected: self.top, found: n });
        }
        let res_rank = self.cmp.resolution().rank(n);
        let idx = self.cmp.bar_index();
        let split = idx.count(q) as u64;
        let mut w = BitVec::zeros(res_rank);
        for m in 0..res_rank {
            let mut bit = false;
            for ((_, cell), c) in self.cmp.to_bar(n, m) {
                if !c.0 {
                    continue;
                }
                let (front, back) = (cell / split, cell % split);
                if self.basis_values(p, front)?.get(i) && self.basis_values(q, back)?.get(j) {
                    bit = !bit;
                }
            }
            w.set(m, bit);
        }
        self.coordinates(n, &w)
    }
}

/// Structure constants of a mod-2 cohomology ring through a fixed degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRingSlice {
    pub group: String,
    pub max_degree: usize,
    pub dims: Vec<usize>,
    /// Labels `h{n}_{i}` of the chosen basis classes.
    pub labels: Vec<Vec<String>>,
    /// Supports of the representative cocycles (generator indices).
    pub representatives: Vec<Vec<Vec<usize>>>,
    /// `products[&(p, i, q, j)]`: coordinates of `h{p}_{i} ⌣ h{q}_{j}`.
    pub products: Vec<((usize, usize, usize, usize), Vec<bool>)>,
}

impl CohomologyRingSlice {
    pub fn product(&self, p: usize, i: usize, q: usize, j: usize) -> Option<&[bool]> {
        self.products.iter().find(|(k, _)| *k == (p, i, q, j)).map(|(_, v)| v.as_slice())
    }

    /// `(a ⌣ b) ⌣ c = a ⌣ (b ⌣ c)` on all basis triples in range.
    pub fn is_associative(&self) -> bool {
        let times = |p: usize, x: &[bool], q: usize, j: usize| -> Vec<bool> {
            let mut out = vec![false; self.dims[p + q]];
            for (i, &b) in x.iter().enumerate() {
                if b {
                    for (k, &c) in self.product(p, i, q, j).expect("in range").iter().enumerate() {
                        out[k] ^= c;
                    }
                }
            }
            out
        };
        let times_left = |p: usize, i: usize, q: usize, y: &[bool]| -> Vec<bool> {
            let mut out = vec![false; self.dims[p + q]];
            for (j, &b) in y.iter().enumerate() {
                if b {
                    for (k, &c) in self.product(p, i, q, j).expect("in range").iter().enumerate() {
                        out[k] ^= c;
                    }
                }
            }
            out
        };
        for p in 0..=self.max_degree {
            for q in 0..=self.max_degree - p {
                for r in 0..=self.max_degree - p - q {
                    for i in 0..self.dims[p] {
                        for j in 0..self.dims[q] {
                            for k in 0..self.dims[r] {
                                let ab = self.product(p, i, q, j).expect("in range");
                                let bc = self.product(q, j, r, k).expect("in range");
                                if times(p + q, ab, r, k) != times_left(p, i, q + r, bc) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Structure constants are symmetric (graded commutativity mod 2).
    pub fn is_commutative(&self) -> bool {
        self.products.iter().all(|((p, i, q, j), v)| self.product(*q, *j, *p, *i) == Some(v.as_slice()))
    }

    /// The degree-0 class is a two-sided unit.
    pub fn has_unit(&self) -> bool {
        if self.dims[0] != 1 {
            return false;
        }
        (0..=self.max_degree).all(|n| {
            (0..self.dims[n]).all(|i| {
                let e: Vec<bool> = (0..self.dims[n]).map(|k| k == i).collect();
                self.product(0, 0, n, i) == Some(e.as_slice()) && self.product(n, i, 0, 0) == Some(e.as_slice())
            })
        })
    }
}

/// Dimensions and cup products of `H^*(G; Z/2)` through degree `top`.
pub fn mod2_ring(g: &FiniteGroup, top: usize, limits: &Limits) -> Result<CohomologyRingSlice> {
    let mut h = Mod2Cohomology::for_group(g, top, limits)?;
    ring_slice(&mut h)
}

pub(crate) fn ring_slice(h: &mut Mod2Cohomology) -> Result<CohomologyRingSlice> {
    let top = h.top();
    let dims = h.dims();
    let labels = (0..=top).map(|n| (0..dims[n]).map(|i| format!("h{n}_{i}")).collect()).collect();
    let representatives =
        (0..=top).map(|n| (0..dims[n]).map(|i| h.representative(n, i).ones().collect()).collect()).collect();
    let mut products = Vec::new();
    for p in 0..=top {
        for q in 0..=top - p {
            for i in 0..dims[p] {
                for j in 0..dims[q] {
                    let c = h.cup(p, i, q, j)?;
                    products.push(((p, i, q, j), (0..c.len()).map(|k| c.get(k)).collect()));
                }
            }
        }
    }
    Ok(CohomologyRingSlice { group: h.group().name().to_string(), max_degree: top, dims, labels, representatives, products })
}

/// `φ^* : H^n(P; Z/2) → H^n(G; Z/2)` for `n ≤ top`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InflationMap {
    pub source: String,
    pub target: String,
    /// `matrices[n][k]`: coordinates in `H^n(G)` of the image of basis
    /// class `k` of `H^n(P)`.
    pub matrices: Vec<Vec<Vec<bool>>>,
    pub source_dims: Vec<usize>,
    pub target_dims: Vec<usize>,
    /// `φ^*(a ⌣ b) = φ^*a ⌣ φ^*b` on all basis pairs in range.
    pub cup_compatible: bool,
}

fn rank_of(columns: &[Vec<bool>]) -> usize {
    let len = columns.first().map_or(0, Vec::len);
    let mut span = Span::new(0);
    columns.iter().filter(|c| span.insert(&BitVec::from_bools(c), BitVec::zeros(0))).count().min(len.max(columns.len()))
}

impl InflationMap {
    /// Bijective in degree `n`.
    pub fn is_isomorphism_in(&self, n: usize) -> bool {
        self.source_dims[n] == self.target_dims[n] && rank_of(&self.matrices[n]) == self.source_dims[n]
    }

    pub fn is_isomorphism(&self) -> bool {
        (0..self.matrices.len()).all(|n| self.is_isomorphism_in(n))
    }
}

/// Inflation along a surjection `φ : G → P`, checked for cup compatibility.
pub fn inflation_map(phi: &GroupHom, top: usize, limits: &Limits) -> Result<InflationMap> {
    if !phi.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let mut hp = Mod2Cohomology::for_group(phi.target(), top, limits)?;
    let mut hg = Mod2Cohomology::for_group(phi.source(), top, limits)?;
    let g_idx = hg.cmp.bar_index();
    let p_idx = hp.cmp.bar_index();
    let mut matrices = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let rank = hg.cmp.resolution().rank(n);
        // Images of all P-basis classes at once, one bit per class.
        let mut images = vec![BitVec::zeros(rank); hp.dim(n)];
        for m in 0..rank {
            let mut acc = BitVec::zeros(hp.dim(n));
            for ((_, cell), c) in hg.cmp.to_bar(n, m) {
                if !c.0 {
                    continue;
                }
                let tuple: Vec<usize> = g_idx.decode(cell as usize, n).into_iter().map(|x| phi.apply(x)).collect();
                if tuple.contains(&0) {
                    continue;
                }
                acc.xor_assign(&hp.basis_values(n, p_idx.encode(&tuple) as u64)?);
            }
            for (k, img) in images.iter_mut().enumerate() {
                img.set(m, acc.get(k));
            }
        }
        let cols = images
            .iter()
            .map(|img| hg.coordinates(n, img).map(|c| (0..c.len()).map(|k| c.get(k)).collect()))
            .collect::<Result<Vec<Vec<bool>>>>()?;
        matrices.push(cols);
    }
    let sp = ring_slice(&mut hp)?;
    let sg = ring_slice(&mut hg)?;
    let apply = |n: usize, x: &[bool]| -> Vec<bool> {
        let mut out = vec![false; sg.dims[n]];
        for (k, &b) in x.iter().enumerate() {
            if b {
                for (i, &c) in matrices[n][k].iter().enumerate() {
                    out[i] ^= c;
                }
            }
        }
        out
    };
    let mut cup_compatible = true;
    for p in 0..=top {
        for q in 0..=top - p {
            for a in 0..sp.dims[p] {
                for b in 0..sp.dims[q] {
                    let lhs = apply(p + q, sp.product(p, a, q, b).expect("in range"));
                    let (ma, mb) = (&matrices[p][a], &matrices[q][b]);
                    let mut rhs = vec![false; sg.dims[p + q]];
                    for (i, &x) in ma.iter().enumerate() {
                        for (j, &y) in mb.iter().enumerate() {
                            if x && y {
                                for (k, &c) in sg.product(p, i, q, j).expect("in range").iter().enumerate() {
                                    rhs[k] ^= c;
                                }
                            }
                        }
                    }
                    cup_compatible &= lhs == rhs;
                }
            }
        }
    }
    Ok(InflationMap {
        source: phi.target().name().to_string(),
        target: phi.source().name().to_string(),
        matrices,
        source_dims: sp.dims,
        target_dims: sg.dims,
        cup_compatible,
    })
}
