//! Chain maps between a resolution `F` and the normalized bar resolution.
//!
//! `F → Bar` is built from the contracting homotopy
//! `s(g_0[g_1|…|g_n]) = [g_0|g_1|…|g_n]` of the bar complex; `Bar → F` is
//! built degree by degree by solving `∂y = (lower map)(∂[t])` over the
//! `Z`-basis of `F`, memoized per bar cell.

use std::collections::{BTreeMap, HashMap};

use crate::linalg::{DenseMatrix, LinearSolver};
use crate::resolution::{bar_boundary, BarIndex, Resolution, ResolutionKind};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Element of the normalized bar complex in a fixed degree:
/// `(g_0, cell index) → coefficient` for `g_0 [cell]`.
pub type BarChain<T> = BTreeMap<(u32, u64), T>;

fn add_into<T: Scalar>(acc: &mut BarChain<T>, key: (u32, u64), v: T) -> Result<()> {
    use std::collections::btree_map::Entry;
    match acc.entry(key) {
        Entry::Vacant(e) => {
            if !v.is_zero() {
                e.insert(v);
            }
        }
        Entry::Occupied(mut e) => {
            let s = e.get().checked_add_s(&v).ok_or(crate::Overflow)?;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
    Ok(())
}

/// Comparison maps for a resolution `F` in degrees `≤ top`.
pub struct Comparison<T> {
    res: Resolution,
    idx: BarIndex,
    identity: bool,
    /// `to_bar[n][i] = h_n(e_i)`.
    to_bar: Vec<Vec<BarChain<T>>>,
    /// Solvers for `∂_n` on the `Z`-basis `(generator, element)` of `F`.
    solvers: Vec<Option<LinearSolver<T>>>,
    memo: HashMap<(usize, u64), Vec<T>>,
}

impl<T: Scalar> Comparison<T> {
    pub fn new(res: &Resolution, top: usize) -> Result<Self> {
        if res.length() < top {
            return Err(Error::DimensionMismatch { expected: top, found: res.length() });
        }
        let g = res.group();
        let idx = BarIndex::new(g.order());
        let identity = *res.kind() == ResolutionKind::Bar;
        let mut cmp = Comparison { res: res.clone(), idx, identity, to_bar: Vec::new(), solvers: Vec::new(), memo: HashMap::new() };
        if identity {
            return Ok(cmp);
        }
        let n_g = g.order();
        let mut zero = BarChain::new();
        zero.insert((0, 0), T::one());
        cmp.to_bar.push(vec![zero]);
        for n in 1..=top {
            let base_pow = (idx.count(n - 1)) as u64;
            let mut level = Vec::with_capacity(res.rank(n));
            for x in res.boundary(n) {
                // h_{n-1}(∂ e), then the contracting homotopy.
                let mut lower = BarChain::new();
                for t in x {
                    let c = T::from_i64(t.coeff);
                    for ((g0, cell), v) in &cmp.to_bar[n - 1][t.generator as usize] {
                        let key = (g.mul(t.element as usize, *g0 as usize) as u32, *cell);
                        add_into(&mut lower, key, v.checked_mul_s(&c).ok_or(crate::Overflow)?)?;
                    }
                }
                let mut up = BarChain::new();
                for ((g0, cell), v) in lower {
                    if g0 != 0 {
                        add_into(&mut up, (0, (g0 as u64 - 1) * base_pow + cell), v)?;
                    }
                }
                level.push(up);
            }
            cmp.to_bar.push(level);
        }
        cmp.solvers.push(None);
        for n in 1..=top {
            let (rows, cols) = (res.rank(n - 1) * n_g, res.rank(n) * n_g);
            let mut d = DenseMatrix::<T>::zeros(rows, cols);
            for (j, x) in res.boundary(n).iter().enumerate() {
                for k in 0..n_g {
                    for t in x {
                        let row = t.generator as usize * n_g + g.mul(k, t.element as usize);
                        d[(row, j * n_g + k)] = d[(row, j * n_g + k)].checked_add_s(&T::from_i64(t.coeff)).ok_or(crate::Overflow)?;
                    }
                }
            }
            cmp.solvers.push(Some(LinearSolver::new(&d)?));
        }
        Ok(cmp)
    }

    pub fn resolution(&self) -> &Resolution {
        &self.res
    }

    pub fn bar_index(&self) -> BarIndex {
        self.idx
    }

    /// `h_n(e_i)`.
    pub fn to_bar(&self, n: usize, i: usize) -> BarChain<T> {
        if self.identity {
            return BarChain::from([((0, i as u64), T::one())]);
        }
        self.to_bar[n][i].clone()
    }

    /// `g_n([cell])` in the `Z`-basis of `F_n` (`generator * |G| + element`).
    pub fn from_bar(&mut self, n: usize, cell: u64) -> Result<Vec<T>> {
        let order = self.res.group().order();
        let dim = self.res.rank(n) * order;
        if self.identity {
            let mut v = vec![T::zero(); dim];
            v[cell as usize * order] = T::one();
            return Ok(v);
        }
        if let Some(v) = self.memo.get(&(n, cell)) {
            return Ok(v.clone());
        }
        let v = if n == 0 {
            let mut v = vec![T::zero(); dim];
            v[0] = T::one();
            v
        } else {
            let g = self.res.group().clone();
            let tuple = self.idx.decode(cell as usize, n);
            let lower_dim = self.res.rank(n - 1) * order;
            let mut rhs = vec![T::zero(); lower_dim];
            for t in bar_boundary(&g, self.idx, &tuple) {
                let below = self.from_bar(n - 1, t.generator as u64)?;
                let c = T::from_i64(t.coeff);
                for (pos, val) in below.iter().enumerate() {
                    if val.is_zero() {
                        continue;
                    }
                    let (gen, elem) = (pos / order, pos % order);
                    let moved = gen * order + g.mul(t.element as usize, elem);
                    rhs[moved] = rhs[moved].checked_add_s(&val.checked_mul_s(&c).ok_or(crate::Overflow)?).ok_or(crate::Overflow)?;
                }
            }
            self.solvers[n]
                .as_ref()
                .expect("solver")
                .solve(&rhs)?
                .ok_or_else(|| Error::InvalidModule("resolution is not exact".into()))?
        };
        self.memo.insert((n, cell), v.clone());
        Ok(v)
    }

    /// Value of a trivial-coefficient cochain `u` (one value per generator
    /// of `F_n`) on `g_n([cell])`.
    pub fn eval(&mut self, n: usize, cell: u64, u: &[T]) -> Result<T> {
        let order = self.res.group().order();
        let y = self.from_bar(n, cell)?;
        let mut acc = T::zero();
        for (pos, val) in y.iter().enumerate() {
            let uj = &u[pos / order];
            if !val.is_zero() && !uj.is_zero() {
                acc = acc.checked_add_s(&val.checked_mul_s(uj).ok_or(crate::Overflow)?).ok_or(crate::Overflow)?;
            }
        }
        Ok(acc)
    }
}
