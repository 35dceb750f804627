use std::fmt;

use crate::linalg::Overflow;
use crate::scalar::Scalar;

/// Row-major dense matrix over a [`Scalar`] ring.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        DenseMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| T::from_i64(v)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, Overflow> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let p = a.checked_mul_s(b).ok_or(Overflow)?;
                    out[(i, j)] = out[(i, j)].checked_add_s(&p).ok_or(Overflow)?;
                }
            }
        }
        Ok(out)
    }

    pub fn checked_mul_vec(&self, v: &[T]) -> Result<Vec<T>, Overflow> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.checked_add_s(&a.checked_mul_s(b).ok_or(Overflow)?).ok_or(Overflow)?;
                    }
                }
                Ok(acc)
            })
            .collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> DenseMatrix<U> {
        DenseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += f * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, f: &T) -> Result<(), Overflow> {
        if f.is_zero() {
            return Ok(());
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let p = s.checked_mul_s(f).ok_or(Overflow)?;
            let d = &mut self.data[dst * self.cols + j];
            *d = d.checked_add_s(&p).ok_or(Overflow)?;
        }
        Ok(())
    }

    /// `col[dst] += f * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, f: &T) -> Result<(), Overflow> {
        if f.is_zero() {
            return Ok(());
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if s.is_zero() {
                continue;
            }
            let p = s.checked_mul_s(f).ok_or(Overflow)?;
            let d = &mut self.data[i * self.cols + dst];
            *d = d.checked_add_s(&p).ok_or(Overflow)?;
        }
        Ok(())
    }

    fn scale_row(&mut self, i: usize, f: &T) -> Result<(), Overflow> {
        for j in 0..self.cols {
            let d = &mut self.data[i * self.cols + j];
            *d = d.checked_mul_s(f).ok_or(Overflow)?;
        }
        Ok(())
    }

    fn scale_col(&mut self, j: usize, f: &T) -> Result<(), Overflow> {
        for i in 0..self.rows {
            let d = &mut self.data[i * self.cols + j];
            *d = d.checked_mul_s(f).ok_or(Overflow)?;
        }
        Ok(())
    }
}

impl<T> std::ops::Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for DenseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Result of a dense Smith reduction: `left * input * right = diagonal`.
#[derive(Clone, Debug)]
pub struct DenseSmith<T> {
    /// Diagonal entries `d_0 | d_1 | …`, length `min(rows, cols)`, zeros last.
    pub diagonal: Vec<T>,
    pub rank: usize,
    pub left: Option<DenseMatrix<T>>,
    pub left_inv: Option<DenseMatrix<T>>,
    pub right: Option<DenseMatrix<T>>,
    pub right_inv: Option<DenseMatrix<T>>,
}

struct Transforms<T> {
    left: DenseMatrix<T>,
    left_inv: DenseMatrix<T>,
    right: DenseMatrix<T>,
    right_inv: DenseMatrix<T>,
}

impl<T: Scalar> Transforms<T> {
    fn new(m: usize, n: usize) -> Self {
        Transforms {
            left: DenseMatrix::identity(m),
            left_inv: DenseMatrix::identity(m),
            right: DenseMatrix::identity(n),
            right_inv: DenseMatrix::identity(n),
        }
    }
}

/// Reduction state; every elementary operation is mirrored into the
/// transforms when they are retained.
struct Reducer<T> {
    a: DenseMatrix<T>,
    tr: Option<Transforms<T>>,
}

impl<T: Scalar> Reducer<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(tr) = &mut self.tr {
            tr.left.swap_rows(i, j);
            tr.left_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(tr) = &mut self.tr {
            tr.right.swap_cols(i, j);
            tr.right_inv.swap_rows(i, j);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, f: &T) -> Result<(), Overflow> {
        self.a.add_row(dst, src, f)?;
        if let Some(tr) = &mut self.tr {
            tr.left.add_row(dst, src, f)?;
            // Inverse of (row dst += f row src) acting on the right: col src -= f col dst.
            let nf = f.checked_neg_s().ok_or(Overflow)?;
            tr.left_inv.add_col(src, dst, &nf)?;
        }
        Ok(())
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &T) -> Result<(), Overflow> {
        self.a.add_col(dst, src, f)?;
        if let Some(tr) = &mut self.tr {
            tr.right.add_col(dst, src, f)?;
            let nf = f.checked_neg_s().ok_or(Overflow)?;
            tr.right_inv.add_row(src, dst, &nf)?;
        }
        Ok(())
    }

    fn scale_row_by_unit(&mut self, i: usize, u: &T) -> Result<(), Overflow> {
        self.a.scale_row(i, u)?;
        if let Some(tr) = &mut self.tr {
            tr.left.scale_row(i, u)?;
            tr.left_inv.scale_col(i, &u.unit_inverse())?;
        }
        Ok(())
    }

    fn neg(f: &T) -> Result<T, Overflow> {
        f.checked_neg_s().ok_or(Overflow)
    }

    fn run(mut self) -> Result<DenseSmith<T>, Overflow> {
        let (m, n) = (self.a.rows, self.a.cols);
        let mut t = 0;
        while t < m.min(n) {
            // Smallest nonzero entry of the remaining block becomes the pivot.
            let mut best: Option<(u128, usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let s = self.a[(i, j)].size();
                    if s > 0 && best.is_none_or(|(b, _, _)| s < b) {
                        best = Some((s, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..m {
                    while !self.a[(i, t)].is_zero() {
                        let (q, _) = self.a[(i, t)].div_rem_euclid(&self.a[(t, t)]).ok_or(Overflow)?;
                        self.add_row(i, t, &Self::neg(&q)?)?;
                        if !self.a[(i, t)].is_zero() {
                            self.swap_rows(i, t);
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..n {
                    while !self.a[(t, j)].is_zero() {
                        let (q, _) = self.a[(t, j)].div_rem_euclid(&self.a[(t, t)]).ok_or(Overflow)?;
                        self.add_col(j, t, &Self::neg(&q)?)?;
                        if !self.a[(t, j)].is_zero() {
                            self.swap_cols(j, t);
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    continue;
                }
                // Row and column are clear; enforce divisibility of the rest.
                let pivot = self.a[(t, t)].clone();
                let mut offender = None;
                'scan: for i in t + 1..m {
                    for j in t + 1..n {
                        let (_, r) = self.a[(i, j)].div_rem_euclid(&pivot).ok_or(Overflow)?;
                        if !r.is_zero() {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => self.add_row(t, i, &T::one())?,
                    None => break,
                }
            }
            let p = self.a[(t, t)].clone();
            let np = p.normalized();
            if p != np {
                // p = u * np for a unit u; multiply the row by u^{-1}.
                let (u, _) = p.div_rem_euclid(&np).ok_or(Overflow)?;
                self.scale_row_by_unit(t, &u.unit_inverse())?;
            }
            t += 1;
        }
        let rank = t;
        let diagonal = (0..m.min(n)).map(|i| self.a[(i, i)].clone()).collect();
        let (left, left_inv, right, right_inv) = match self.tr {
            Some(tr) => (Some(tr.left), Some(tr.left_inv), Some(tr.right), Some(tr.right_inv)),
            None => (None, None, None, None),
        };
        Ok(DenseSmith { diagonal, rank, left, left_inv, right, right_inv })
    }
}

/// Dense Smith normal form; transforms are computed only when requested.
pub fn dense_smith<T: Scalar>(a: &DenseMatrix<T>, transforms: bool) -> Result<DenseSmith<T>, Overflow> {
    let tr = transforms.then(|| Transforms::new(a.rows, a.cols));
    Reducer { a: a.clone(), tr }.run()
}

/// Basis (as columns) of the integer kernel `{x : a x = 0}`.
pub fn kernel_basis<T: Scalar>(a: &DenseMatrix<T>) -> Result<DenseMatrix<T>, Overflow> {
    let s = dense_smith(a, true)?;
    let v = s.right.expect("transforms requested");
    let cols: Vec<Vec<T>> = (s.rank..a.cols).map(|j| v.column(j)).collect();
    Ok(DenseMatrix::from_columns(a.cols, &cols))
}

/// Solver for `a x = b` built once from a Smith reduction.
#[derive(Clone, Debug)]
pub struct LinearSolver<T> {
    smith: DenseSmith<T>,
    cols: usize,
}

impl<T: Scalar> LinearSolver<T> {
    pub fn new(a: &DenseMatrix<T>) -> Result<Self, Overflow> {
        Ok(LinearSolver { smith: dense_smith(a, true)?, cols: a.cols })
    }

    /// Some integral solution, or `None` when `b` is not in the image.
    pub fn solve(&self, b: &[T]) -> Result<Option<Vec<T>>, Overflow> {
        let left = self.smith.left.as_ref().expect("transforms");
        let right = self.smith.right.as_ref().expect("transforms");
        let ub = left.checked_mul_vec(b)?;
        let mut y = vec![T::zero(); self.cols];
        for (i, v) in ub.iter().enumerate() {
            if i < self.smith.rank {
                let (q, r) = v.div_rem_euclid(&self.smith.diagonal[i]).ok_or(Overflow)?;
                if !r.is_zero() {
                    return Ok(None);
                }
                y[i] = q;
            } else if !v.is_zero() {
                return Ok(None);
            }
        }
        right.checked_mul_vec(&y).map(Some)
    }
}

/// The subquotient `Z / B` of `T^k` where `Z` is given by a basis and `B`
/// by generators contained in `Z`, with coordinates in invariant-factor form.
#[derive(Clone, Debug)]
pub struct Subquotient<T> {
    z_basis: DenseMatrix<T>,
    z_solver: LinearSolver<T>,
    /// Change of basis in `Z`-coordinates: `coords = change * z_coords`.
    change: DenseMatrix<T>,
    change_inv: DenseMatrix<T>,
    /// Per new basis vector: `Some(d)` for `Z/d` (d unit means trivial),
    /// `None` for a free summand.
    moduli: Vec<Option<T>>,
}

impl<T: Scalar> Subquotient<T> {
    /// `z_basis`: k×z matrix whose columns form a basis of `Z`;
    /// `b_gens`: k×b matrix whose columns generate `B ⊆ Z`.
    pub fn new(z_basis: DenseMatrix<T>, b_gens: &DenseMatrix<T>) -> Result<Self, Overflow> {
        let z = z_basis.cols;
        let z_solver = LinearSolver::new(&z_basis)?;
        let mut x_cols = Vec::with_capacity(b_gens.cols);
        for j in 0..b_gens.cols {
            let col = b_gens.column(j);
            let c = z_solver.solve(&col)?.expect("boundary generators must lie in the cycle lattice");
            x_cols.push(c);
        }
        let x = DenseMatrix::from_columns(z, &x_cols);
        let s = dense_smith(&x, true)?;
        let moduli = (0..z).map(|i| (i < s.rank).then(|| s.diagonal[i].clone())).collect();
        Ok(Subquotient {
            z_basis,
            z_solver,
            change: s.left.expect("transforms"),
            change_inv: s.left_inv.expect("transforms"),
            moduli,
        })
    }

    /// Indices (into the new basis) of the nontrivial summands.
    fn live(&self) -> impl Iterator<Item = usize> + '_ {
        self.moduli.iter().enumerate().filter(|(_, m)| m.as_ref().is_none_or(|d| !d.is_unit())).map(|(i, _)| i)
    }

    pub fn group(&self) -> crate::AbelianGroup {
        let mut rank = 0;
        let mut orders = Vec::new();
        for i in self.live() {
            match &self.moduli[i] {
                None => rank += 1,
                Some(d) => orders.push(d.to_bigint().try_into().expect("torsion coefficient fits in u64")),
            }
        }
        crate::AbelianGroup::from_cyclic_orders(rank, orders)
    }

    /// Orders of the summands in the coordinate order used by
    /// [`Subquotient::coordinates`]; `0` marks a free summand.
    pub fn summand_orders(&self) -> Vec<u64> {
        self.live()
            .map(|i| self.moduli[i].as_ref().map_or(0, |d| d.to_bigint().try_into().expect("fits")))
            .collect()
    }

    /// Coordinates of `x` in the nontrivial summands (reduced modulo each
    /// order), or `None` when `x` is not in `Z`.
    pub fn coordinates(&self, x: &[T]) -> Result<Option<Vec<T>>, Overflow> {
        let Some(zc) = self.z_solver.solve(x)? else { return Ok(None) };
        let c = self.change.checked_mul_vec(&zc)?;
        let mut out = Vec::new();
        for i in self.live() {
            let v = match &self.moduli[i] {
                None => c[i].clone(),
                Some(d) => {
                    let (_, r) = c[i].div_rem_euclid(d).ok_or(Overflow)?;
                    // Least nonnegative residue.
                    if r.to_bigint() < num_bigint::BigInt::from(0) {
                        r.checked_add_s(&d.normalized()).ok_or(Overflow)?
                    } else {
                        r
                    }
                }
            };
            out.push(v);
        }
        Ok(Some(out))
    }

    /// Representatives in `T^k` of the generators of the nontrivial summands.
    pub fn generators(&self) -> Result<Vec<Vec<T>>, Overflow> {
        self.live()
            .map(|i| {
                let zc = self.change_inv.column(i);
                self.z_basis.checked_mul_vec(&zc)
            })
            .collect()
    }

    pub fn ambient_dim(&self) -> usize {
        self.z_basis.rows
    }
}
