use crate::linalg::dense::{dense_smith, DenseMatrix};
use crate::linalg::BitVec;
use crate::linalg::Overflow;
use crate::scalar::Scalar;

/// Sparse matrix stored by rows; each row is sorted by column and holds
/// only nonzero entries.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(u32, T)>>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates are
    /// summed and zeros dropped.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut data: Vec<Vec<(u32, T)>> = vec![Vec::new(); rows];
        for (i, j, v) in triplets {
            assert!(i < rows && j < cols, "entry ({i}, {j}) out of range for {rows}x{cols}");
            data[i].push((j as u32, v));
        }
        for row in &mut data {
            *row = normalize_row(std::mem::take(row));
        }
        SparseMatrix { rows, cols, data }
    }

    /// Builds a matrix from already-formed rows of `(col, value)` pairs.
    pub fn from_rows(cols: usize, rows: Vec<Vec<(u32, T)>>) -> Self {
        let data: Vec<_> = rows.into_iter().map(normalize_row).collect();
        assert!(data.iter().flatten().all(|(j, _)| (*j as usize) < cols));
        SparseMatrix { rows: data.len(), cols, data }
    }

    pub fn from_dense(d: &DenseMatrix<T>) -> Self {
        let mut m = Self::zeros(d.rows(), d.cols());
        for i in 0..d.rows() {
            m.data[i] = d.row(i).iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j as u32, v.clone())).collect();
        }
        m
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                d[(i, *j as usize)] = v.clone();
            }
        }
        d
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, T::one())))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(u32, T)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self.data[i].binary_search_by_key(&(j as u32), |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<Vec<(u32, T)>> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j as usize].push((i as u32, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, Overflow> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc: Vec<(u32, T)> = Vec::new();
            for (k, a) in row {
                for (j, b) in &other.data[*k as usize] {
                    acc.push((*j, a.checked_mul_s(b).ok_or(Overflow)?));
                }
            }
            out.push(checked_normalize_row(acc)?);
        }
        Ok(SparseMatrix { rows: self.rows, cols: other.cols, data: out })
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SparseMatrix<U> {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| normalize_row(r.iter().map(|(j, v)| (*j, f(v))).collect())).collect(),
        }
    }

    /// Converts each entry, failing if any conversion fails.
    pub fn try_map<U: Scalar>(&self, f: impl Fn(&T) -> Option<U>) -> Option<SparseMatrix<U>> {
        let mut data = Vec::with_capacity(self.rows);
        for r in &self.data {
            let row: Option<Vec<_>> = r.iter().map(|(j, v)| f(v).map(|u| (*j, u))).collect();
            data.push(row?);
        }
        Some(SparseMatrix { rows: self.rows, cols: self.cols, data })
    }
}

fn normalize_row<T: Scalar>(row: Vec<(u32, T)>) -> Vec<(u32, T)> {
    checked_normalize_row(row).expect("overflow while summing duplicate entries")
}

fn checked_normalize_row<T: Scalar>(mut row: Vec<(u32, T)>) -> Result<Vec<(u32, T)>, Overflow> {
    row.sort_by_key(|(j, _)| *j);
    let mut out: Vec<(u32, T)> = Vec::with_capacity(row.len());
    for (j, v) in row {
        match out.last_mut() {
            Some((lj, lv)) if *lj == j => *lv = lv.checked_add_s(&v).ok_or(Overflow)?,
            _ => out.push((j, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    Ok(out)
}

/// Outcome of sparse unit-pivot elimination: the number of unit pivots
/// removed and the residual block that has no unit entries left.
pub(crate) struct Elimination<T> {
    pub units: usize,
    pub residual: DenseMatrix<T>,
    /// Pivot column and the pivot row as it was when chosen (only when
    /// recording was requested).
    pub pivots: Vec<(usize, Vec<(u32, T)>)>,
    pub col_alive: Vec<bool>,
    /// Remaining rows, left sparse, when a dense finish was requested.
    pub tail: Vec<Vec<(u32, T)>>,
}

const BUCKETS: usize = 48;
/// Shortest remaining row length at which `dense_tail` hands over.
const TAIL_SWITCH: usize = 16;

/// Eliminates unit pivots with a Markowitz-style choice (shortest row, then
/// sparsest column). Over a field this computes the rank outright. When
/// `stop_at` is given, elimination stops as soon as that many pivots were
/// found. With `dense_tail`, elimination also stops once every remaining
/// row is long, and those rows are returned as `tail` instead of `residual`.
pub(crate) fn eliminate_units<T: Scalar>(
    m: &SparseMatrix<T>,
    stop_at: Option<usize>,
    record: bool,
    dense_tail: bool,
) -> Result<Elimination<T>, Overflow> {
    let nrows = m.rows;
    let ncols = m.cols;
    let mut rows: Vec<Vec<(u32, T)>> = m.data.clone();
    let mut row_alive = vec![true; nrows];
    let mut col_alive = vec![true; ncols];
    let mut col_count = vec![0u32; ncols];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    for (i, row) in rows.iter().enumerate() {
        for (j, _) in row {
            col_count[*j as usize] += 1;
            col_rows[*j as usize].push(i as u32);
        }
    }
    let bucket_of = |len: usize| len.min(BUCKETS - 1);
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); BUCKETS];
    for (i, row) in rows.iter().enumerate().rev() {
        if !row.is_empty() {
            buckets[bucket_of(row.len())].push(i as u32);
        }
    }
    let mut units = 0usize;
    let mut pivots = Vec::new();
    let mut mark = vec![u32::MAX; nrows];
    let mut stamp = 0u32;
    let mut modified: Vec<u32> = Vec::new();
    let mut scratch: Vec<(u32, T)> = Vec::new();

    'outer: loop {
        if stop_at.is_some_and(|s| units >= s) {
            break;
        }
        // Next candidate row: smallest nonempty bucket, validated lazily.
        let mut found = None;
        for b in 1..BUCKETS {
            while let Some(r) = buckets[b].pop() {
                let r = r as usize;
                if !row_alive[r] || rows[r].is_empty() || bucket_of(rows[r].len()) != b {
                    continue;
                }
                let best = rows[r]
                    .iter()
                    .filter(|(_, v)| v.is_unit())
                    .min_by_key(|(j, _)| (col_count[*j as usize], *j))
                    .map(|(j, v)| (*j as usize, v.clone()));
                if let Some((c, u)) = best {
                    found = Some((r, c, u));
                    break;
                }
                // No unit entries: parked until a later update touches it.
            }
            if found.is_some() {
                break;
            }
        }
        let Some((r, c, u)) = found else { break 'outer };
        if dense_tail && rows[r].len() >= TAIL_SWITCH {
            break 'outer;
        }
        let uinv = u.unit_inverse();
        let pivot_row = std::mem::take(&mut rows[r]);
        row_alive[r] = false;
        stamp = stamp.wrapping_add(1);
        mark[r] = stamp;
        modified.clear();
        let candidates = std::mem::take(&mut col_rows[c]);
        for &i in &candidates {
            let i = i as usize;
            if mark[i] == stamp || !row_alive[i] {
                continue;
            }
            mark[i] = stamp;
            let Ok(k) = rows[i].binary_search_by_key(&(c as u32), |(j, _)| *j) else { continue };
            let f = rows[i][k].1.checked_mul_s(&uinv).ok_or(Overflow)?;
            // rows[i] -= f * pivot_row, merged in one pass.
            scratch.clear();
            let old = std::mem::take(&mut rows[i]);
            let (mut a, mut b) = (0, 0);
            while a < old.len() || b < pivot_row.len() {
                let ja = old.get(a).map(|e| e.0);
                let jb = pivot_row.get(b).map(|e| e.0);
                match (ja, jb) {
                    (Some(x), Some(y)) if x == y => {
                        let p = pivot_row[b].1.checked_mul_s(&f).ok_or(Overflow)?;
                        let v = old[a].1.checked_sub_s(&p).ok_or(Overflow)?;
                        if v.is_zero() {
                            col_count[x as usize] -= 1;
                        } else {
                            scratch.push((x, v));
                        }
                        a += 1;
                        b += 1;
                    }
                    (Some(x), Some(y)) if x < y => {
                        scratch.push(old[a].clone());
                        a += 1;
                    }
                    (Some(_), None) => {
                        scratch.push(old[a].clone());
                        a += 1;
                    }
                    (_, Some(y)) => {
                        let p = pivot_row[b].1.checked_mul_s(&f).ok_or(Overflow)?;
                        let v = p.checked_neg_s().ok_or(Overflow)?;
                        col_count[y as usize] += 1;
                        col_rows[y as usize].push(i as u32);
                        scratch.push((y, v));
                        b += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
            rows[i] = std::mem::take(&mut scratch);
            scratch = old;
            modified.push(i as u32);
        }
        for (j, _) in &pivot_row {
            col_count[*j as usize] -= 1;
        }
        if record {
            pivots.push((c, pivot_row));
        }
        col_alive[c] = false;
        units += 1;
        for &i in &modified {
            let len = rows[i as usize].len();
            if len > 0 {
                buckets[bucket_of(len)].push(i);
            }
        }
        // Keep column lists from growing without bound.
        if units.is_multiple_of(4096) {
            for (j, list) in col_rows.iter_mut().enumerate() {
                if col_alive[j] && list.len() > 4 * col_count[j] as usize + 8 {
                    list.sort_unstable();
                    list.dedup();
                    list.retain(|&i| row_alive[i as usize]);
                }
            }
        }
    }

    let live_rows: Vec<usize> = (0..nrows).filter(|&i| row_alive[i] && !rows[i].is_empty()).collect();
    if dense_tail {
        let tail = live_rows.into_iter().map(|i| std::mem::take(&mut rows[i])).collect();
        return Ok(Elimination { units, residual: DenseMatrix::zeros(0, 0), pivots, col_alive, tail });
    }
    let mut col_index = vec![usize::MAX; ncols];
    let mut live_cols = 0;
    for &i in &live_rows {
        for (j, _) in &rows[i] {
            let j = *j as usize;
            if col_index[j] == usize::MAX {
                col_index[j] = live_cols;
                live_cols += 1;
            }
        }
    }
    let mut residual = DenseMatrix::zeros(live_rows.len(), live_cols);
    for (ri, &i) in live_rows.iter().enumerate() {
        for (j, v) in &rows[i] {
            residual[(ri, col_index[*j as usize])] = v.clone();
        }
    }
    Ok(Elimination { units, residual, pivots, col_alive, tail: Vec::new() })
}

/// Nonzero elementary divisors of `m` (normalized, divisibility order).
pub fn elementary_divisors<T: Scalar>(m: &SparseMatrix<T>) -> Result<Vec<T>, Overflow> {
    let e = eliminate_units(m, None, false, false)?;
    let mut out = vec![T::one(); e.units];
    if e.residual.rows() > 0 && e.residual.cols() > 0 {
        let s = dense_smith(&e.residual, false)?;
        out.extend(s.diagonal.into_iter().take(s.rank));
    }
    Ok(out)
}

/// Rank over a field, optionally stopping once `stop_at` is reached.
pub fn field_rank<T: Scalar>(m: &SparseMatrix<T>, stop_at: Option<usize>) -> usize {
    assert!(T::IS_FIELD, "field_rank requires a field");
    let e = eliminate_units(m, stop_at, false, true).expect("field arithmetic cannot overflow");
    e.units + tail_rank(&e.tail, m.cols, stop_at.map(|s| s.saturating_sub(e.units)))
}

/// Rank of the long rows left over by sparse elimination, by incremental
/// dense reduction on the columns they touch.
fn tail_rank<T: Scalar>(tail: &[Vec<(u32, T)>], ncols: usize, stop_at: Option<usize>) -> usize {
    let mut col_index = vec![usize::MAX; ncols];
    let mut width = 0;
    for row in tail {
        for (j, _) in row {
            if col_index[*j as usize] == usize::MAX {
                col_index[*j as usize] = width;
                width += 1;
            }
        }
    }
    let limit = stop_at.unwrap_or(usize::MAX).min(width);
    let two_is_zero = T::one().checked_add_s(&T::one()).is_some_and(|x| x.is_zero());
    let mut rank = 0;
    if two_is_zero {
        // The only characteristic-2 field here is GF(2): nonzero means one.
        let mut pivot_of: Vec<Option<BitVec>> = vec![None; width];
        for row in tail {
            if rank >= limit {
                break;
            }
            let mut v = BitVec::zeros(width);
            for (j, _) in row {
                v.set(col_index[*j as usize], true);
            }
            while let Some(p) = v.first_one() {
                match &pivot_of[p] {
                    Some(r) => v.xor_assign(r),
                    None => {
                        pivot_of[p] = Some(v);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        return rank;
    }
    let mut pivot_of: Vec<Option<Vec<T>>> = vec![None; width];
    for row in tail {
        if rank >= limit {
            break;
        }
        let mut v = vec![T::zero(); width];
        for (j, x) in row {
            v[col_index[*j as usize]] = x.clone();
        }
        let mut start = 0;
        while let Some(p) = (start..width).find(|&k| !v[k].is_zero()) {
            match &pivot_of[p] {
                Some(r) => {
                    // Stored pivot rows are scaled to one at the pivot.
                    let f = v[p].clone();
                    for k in p..width {
                        if !r[k].is_zero() {
                            v[k] = v[k].checked_sub_s(&r[k].checked_mul_s(&f).expect("field")).expect("field");
                        }
                    }
                    start = p + 1;
                }
                None => {
                    let inv = v[p].unit_inverse();
                    for x in v.iter_mut().skip(p) {
                        *x = x.checked_mul_s(&inv).expect("field");
                    }
                    pivot_of[p] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Basis of the right kernel `{x : m x = 0}` over a field, one vector per
/// non-pivot column (that column set to one, the other non-pivot columns
/// zero), ordered by that column.
pub fn field_kernel_basis<T: Scalar>(m: &SparseMatrix<T>) -> Vec<Vec<T>> {
    assert!(T::IS_FIELD, "field_kernel_basis requires a field");
    let e = eliminate_units(m, None, true, false).expect("field arithmetic cannot overflow");
    let free: Vec<usize> = (0..m.cols).filter(|&j| e.col_alive[j]).collect();
    let mut slot = vec![usize::MAX; m.cols];
    for (k, &f) in free.iter().enumerate() {
        slot[f] = k;
    }
    // x[j] holds coordinate j of every kernel vector at once.
    let nf = free.len();
    let mut x: Vec<Vec<T>> = vec![Vec::new(); m.cols];
    for (k, &f) in free.iter().enumerate() {
        let mut v = vec![T::zero(); nf];
        v[k] = T::one();
        x[f] = v;
    }
    for (c, row) in e.pivots.iter().rev() {
        let mut acc = vec![T::zero(); nf];
        let mut pivot_value = T::one();
        for (j, v) in row {
            let j = *j as usize;
            if j == *c {
                pivot_value = v.clone();
                continue;
            }
            if x[j].is_empty() {
                continue;
            }
            for (a, b) in acc.iter_mut().zip(&x[j]) {
                if !b.is_zero() {
                    *a = a.checked_add_s(&v.checked_mul_s(b).expect("field")).expect("field");
                }
            }
        }
        let scale = pivot_value.unit_inverse().checked_neg_s().expect("field");
        for a in acc.iter_mut() {
            if !a.is_zero() {
                *a = a.checked_mul_s(&scale).expect("field");
            }
        }
        x[*c] = acc;
    }
    (0..nf)
        .map(|k| (0..m.cols).map(|j| if x[j].is_empty() { T::zero() } else { x[j][k].clone() }).collect())
        .collect()
}
