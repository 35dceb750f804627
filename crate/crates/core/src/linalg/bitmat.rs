/// Dense vector over the two-element field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        if b {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Dense matrix over the two-element field, stored as rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix { cols, rows: vec![BitVec::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix { cols: n, rows: (0..n).map(|i| BitVec::unit(n, i)).collect() }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        BitMatrix { cols, rows }
    }

    pub fn from_bools(rows: &[Vec<bool>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        BitMatrix { cols, rows: rows.iter().map(|r| BitVec::from_bools(r)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        self.rows[i].set(j, b)
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.rows[i].flip(j)
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            out.set(i, r.dot(v));
        }
        out
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows());
        let mut out = BitMatrix::zeros(self.rows(), other.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for k in r.ones() {
                out.rows[i].xor_assign(&other.rows[k]);
            }
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        RowEchelon::new(self).rank()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    /// Basis of `{x : self x = 0}`, in reduced form: each basis vector has a
    /// distinct free column set to one and is zero on the other free columns.
    /// Ordered by increasing free column, which makes the choice reproducible.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let ech = RowEchelon::new(self);
        let pivot_of_col: std::collections::HashMap<usize, usize> =
            ech.pivots.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        (0..self.cols)
            .filter(|c| !pivot_of_col.contains_key(c))
            .map(|free| {
                let mut v = BitVec::unit(self.cols, free);
                for (k, &pc) in ech.pivots.iter().enumerate() {
                    if ech.rows[k].get(free) {
                        v.set(pc, true);
                    }
                }
                v
            })
            .collect()
    }
}

/// Reduced row echelon form that remembers how to solve `a x = b`.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    cols: usize,
    /// Reduced nonzero rows.
    rows: Vec<BitVec>,
    /// Pivot column of each reduced row.
    pivots: Vec<usize>,
    /// For each reduced row, the combination of original rows producing it.
    combos: Vec<BitVec>,
}

impl RowEchelon {
    pub fn new(a: &BitMatrix) -> Self {
        let n = a.rows();
        let mut work: Vec<(BitVec, BitVec)> =
            a.rows.iter().enumerate().map(|(i, r)| (r.clone(), BitVec::unit(n, i))).collect();
        let mut rows: Vec<BitVec> = Vec::new();
        let mut pivots = Vec::new();
        let mut combos: Vec<BitVec> = Vec::new();
        let mut used = vec![false; work.len()];
        for col in 0..a.cols {
            let Some(p) = (0..work.len()).find(|&i| !used[i] && work[i].0.get(col)) else { continue };
            used[p] = true;
            let (prow, pcombo) = work[p].clone();
            for (i, (r, c)) in work.iter_mut().enumerate() {
                if i != p && r.get(col) {
                    r.xor_assign(&prow);
                    c.xor_assign(&pcombo);
                }
            }
            for (r, c) in rows.iter_mut().zip(combos.iter_mut()) {
                if r.get(col) {
                    r.xor_assign(&prow);
                    c.xor_assign(&pcombo);
                }
            }
            rows.push(prow);
            combos.push(pcombo);
            pivots.push(col);
        }
        RowEchelon { cols: a.cols, rows, pivots, combos }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the row space; the result is zero iff `v` is in it.
    /// Returns the reduced vector and the combination of original rows used.
    pub fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        let n = self.combos.first().map_or(0, BitVec::len);
        let mut r = v.clone();
        let mut combo = BitVec::zeros(n);
        for (k, &c) in self.pivots.iter().enumerate() {
            if r.get(c) {
                r.xor_assign(&self.rows[k]);
                combo.xor_assign(&self.combos[k]);
            }
        }
        (r, combo)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

/// Solver for `a x = b` over the two-element field.
#[derive(Clone, Debug)]
pub struct Gf2Solver {
    /// Echelon form of `aᵀ`: rows of `aᵀ` are the columns of `a`.
    ech: RowEchelon,
}

impl Gf2Solver {
    pub fn new(a: &BitMatrix) -> Self {
        Gf2Solver { ech: RowEchelon::new(&a.transpose()) }
    }

    /// Some solution of `a x = b`, or `None` if `b` is outside the image.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        let (rest, combo) = self.ech.reduce(b);
        rest.is_zero().then_some(combo)
    }
}

/// Rank of a matrix over the two-element field.
pub fn mod2_rank(a: &BitMatrix) -> usize {
    a.rank()
}

/// Kernel basis of a matrix over the two-element field.
pub fn mod2_kernel_basis(a: &BitMatrix) -> Vec<BitVec> {
    a.kernel_basis()
}
