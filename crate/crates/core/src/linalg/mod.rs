//! Exact integer and mod-2 linear algebra.
//!
//! The workhorse is a sparse elimination that removes unit pivots first
//! (cheap and fill-in aware) and hands the small remainder to a dense Smith
//! reduction. Integer work runs in `i64` with overflow detection and is
//! redone over [`BigInt`] when a machine word is not enough.

mod abelian;
mod bitmat;
mod dense;
mod sparse;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

pub use abelian::AbelianGroup;
pub use bitmat::{mod2_kernel_basis, mod2_rank, BitMatrix, BitVec, Gf2Solver, RowEchelon};
pub use dense::{dense_smith, kernel_basis, DenseMatrix, DenseSmith, LinearSolver, Subquotient};
pub use sparse::{elementary_divisors, field_kernel_basis, field_rank, SparseMatrix};

use crate::scalar::{LargePrimeField, Scalar};
use crate::{Error, IntMatrix};

/// Arithmetic left the range of the machine scalar type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("integer overflow in exact arithmetic")]
pub struct Overflow;

/// Smith normal form of an integer matrix.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// `d_1 | d_2 | …`, length `min(rows, cols)`; zeros at the end.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    /// Unimodular `left`, `right` with `left * m * right = diag`, only when
    /// requested.
    pub left: Option<DenseMatrix<BigInt>>,
    pub right: Option<DenseMatrix<BigInt>>,
}

impl SmithForm {
    /// Invariant factors other than 0 and 1.
    pub fn torsion(&self) -> Vec<u64> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_zero() && *d != &BigInt::from(1))
            .map(|d| d.to_u64().expect("torsion coefficient fits in u64"))
            .collect()
    }
}

fn to_i64(m: &IntMatrix) -> Option<SparseMatrix<i64>> {
    m.try_map(|v| v.to_i64())
}

/// Nonzero elementary divisors, trying machine integers first.
pub fn int_elementary_divisors(m: &IntMatrix) -> Vec<BigInt> {
    if let Some(small) = to_i64(m) {
        if let Ok(d) = elementary_divisors(&small) {
            return d.into_iter().map(BigInt::from).collect();
        }
    }
    elementary_divisors(m).expect("BigInt arithmetic does not overflow")
}

/// Nonzero elementary divisors of a machine-integer matrix, redone over
/// [`BigInt`] on overflow.
pub fn small_elementary_divisors(m: &SparseMatrix<i64>) -> Vec<BigInt> {
    match elementary_divisors(m) {
        Ok(d) => d.into_iter().map(BigInt::from).collect(),
        Err(Overflow) => elementary_divisors(&m.map(|&v| BigInt::from(v))).expect("BigInt arithmetic does not overflow"),
    }
}

/// Rank over the rationals of a machine-integer matrix; see [`rational_rank`].
pub fn small_rational_rank(m: &SparseMatrix<i64>, upper_bound: Option<usize>) -> usize {
    if let Some(ub) = upper_bound {
        let mp: SparseMatrix<LargePrimeField> = m.map(|&v| LargePrimeField::new(v));
        if field_rank(&mp, Some(ub)) >= ub {
            return ub;
        }
    }
    small_elementary_divisors(m).len()
}

/// Smith normal form of `m` without transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let nz = int_elementary_divisors(m);
    let rank = nz.len();
    let mut diagonal = nz;
    diagonal.resize(m.rows().min(m.cols()), BigInt::zero());
    SmithForm { diagonal, rank, left: None, right: None }
}

/// Smith normal form of `m` keeping unimodular transforms (dense; meant for
/// small matrices).
pub fn smith_normal_form_with_transforms(m: &IntMatrix) -> SmithForm {
    let s = dense_smith(&m.to_dense(), true).expect("BigInt arithmetic does not overflow");
    SmithForm { diagonal: s.diagonal, rank: s.rank, left: s.left, right: s.right }
}

/// Rank over the rationals.
///
/// The rank modulo a large prime is a lower bound; when it reaches
/// `upper_bound` it is exact. Otherwise the exact integer elimination
/// decides.
pub fn rational_rank(m: &IntMatrix, upper_bound: Option<usize>) -> usize {
    if let Some(ub) = upper_bound {
        let mp: SparseMatrix<LargePrimeField> =
            m.map(|v| LargePrimeField::new((v % BigInt::from(2_147_483_647i64)).to_i64().expect("reduced")));
        if field_rank(&mp, Some(ub)) >= ub {
            return ub;
        }
    }
    int_elementary_divisors(m).len()
}

/// `ker(d_out) / im(d_in)` for free chain groups, in invariant-factor form.
///
/// `d_in: Z^a -> Z^b`, `d_out: Z^b -> Z^c` (matrices act on column vectors).
pub fn homology_at(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<AbelianGroup, Error> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch { expected: d_out.cols(), found: d_in.rows() });
    }
    if !d_out.checked_mul(d_in).expect("BigInt").is_zero() {
        return Err(Error::NonzeroComposition);
    }
    let divisors = int_elementary_divisors(d_in);
    let rank_in = divisors.len();
    let rank_out = rational_rank(d_out, Some(d_out.cols() - rank_in));
    let torsion = divisors.iter().map(|d| d.to_u64().expect("fits in u64"));
    Ok(AbelianGroup::from_cyclic_orders(d_out.cols() - rank_out - rank_in, torsion))
}

/// Generic version of [`homology_at`] over any scalar ring.
pub fn generic_homology_rank<T: Scalar>(d_in: &SparseMatrix<T>, d_out: &SparseMatrix<T>) -> Result<(usize, Vec<T>), Overflow> {
    let div_in = elementary_divisors(d_in)?;
    let div_out = elementary_divisors(d_out)?;
    Ok((d_out.cols() - div_out.len() - div_in.len(), div_in))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: usize, cols: usize, t: &[(usize, usize, i64)]) -> IntMatrix {
        IntMatrix::from_triplets(rows, cols, t.iter().map(|&(i, j, v)| (i, j, BigInt::from(v))))
    }

    #[test]
    fn snf_examples() {
        let id = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(id.diagonal, vec![BigInt::from(1); 3]);
        let d = smith_normal_form(&int(2, 2, &[(0, 0, 2), (1, 1, 3)]));
        assert_eq!(d.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
        let neg = smith_normal_form(&int(1, 1, &[(0, 0, -2)]));
        assert_eq!(neg.diagonal, vec![BigInt::from(2)]);
    }

    #[test]
    fn homology_examples() {
        let zero_in = IntMatrix::zeros(1, 1);
        let minus_two = int(1, 1, &[(0, 0, -2)]);
        assert_eq!(homology_at(&zero_in, &minus_two).unwrap(), AbelianGroup::trivial());
        assert_eq!(homology_at(&minus_two, &IntMatrix::zeros(1, 1)).unwrap(), AbelianGroup::cyclic(2));
        assert_eq!(homology_at(&IntMatrix::zeros(3, 3), &IntMatrix::zeros(3, 3)).unwrap(), AbelianGroup::free(3));
    }

    #[test]
    fn nonzero_composition_is_rejected() {
        let one = IntMatrix::identity(1);
        assert!(matches!(homology_at(&one, &one), Err(Error::NonzeroComposition)));
    }

    #[test]
    fn transforms_reproduce_input() {
        let m = int(2, 3, &[(0, 0, 4), (0, 1, 6), (1, 2, 10), (1, 0, 2)]);
        let s = smith_normal_form_with_transforms(&m);
        let prod = s.left.unwrap().checked_mul(&m.to_dense()).unwrap().checked_mul(&s.right.unwrap()).unwrap();
        for i in 0..2 {
            for j in 0..3 {
                let expect = if i == j { s.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(prod[(i, j)], expect);
            }
        }
    }
}
