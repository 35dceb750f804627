//! Action of group automorphisms on integral cohomology with trivial
//! coefficients, computed at cochain level through the bar complex.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{homology_classes, Comparison, Variance};
use crate::gmodule::GModule;
use crate::linalg::{DenseMatrix, Subquotient};
use crate::resolution::Resolution;
use crate::{AbelianGroup, Error, Result};

/// `H^n(K; Z)` with the matrices of a list of automorphisms acting on it.
#[derive(Clone, Debug)]
pub struct InducedAction {
    pub degree: usize,
    pub group: AbelianGroup,
    /// Orders of the chosen generators (`0` for free ones).
    pub summand_orders: Vec<u64>,
    /// `matrices[a][j]`: coordinates of `α_a^*(x_j)`.
    pub matrices: Vec<Vec<Vec<i64>>>,
}

impl InducedAction {
    /// First `(automorphism, generator)` that is moved, with its image.
    pub fn first_moved(&self) -> Option<(usize, usize, Vec<i64>)> {
        for (a, m) in self.matrices.iter().enumerate() {
            for (j, col) in m.iter().enumerate() {
                if col.iter().enumerate().any(|(i, &x)| x != i64::from(i == j)) {
                    return Some((a, j, col.clone()));
                }
            }
        }
        None
    }

    pub fn is_trivial(&self) -> bool {
        self.first_moved().is_none()
    }

    /// The action of automorphism `a` as an integer matrix on the summands.
    pub fn matrix(&self, a: usize) -> DenseMatrix<i64> {
        DenseMatrix::from_columns(self.summand_orders.len(), &self.matrices[a])
    }
}

/// `α^*` on `H^n(K; Z)` for each automorphism `α` of `K` (given by its
/// image table), using cochains on `res`.
pub fn induced_action(res: &Resolution, automorphisms: &[Vec<usize>], n: usize) -> Result<InducedAction> {
    let k = res.group();
    for a in automorphisms {
        if a.len() != k.order() || !k.elements().all(|x| k.elements().all(|y| a[k.mul(x, y)] == k.mul(a[x], a[y]))) {
            return Err(Error::NotHomomorphism("automorphism table".into()));
        }
    }
    let classes: Subquotient<BigInt> = homology_classes(res, &GModule::trivial_integers(k), Variance::Cochains, n)?;
    let gens = classes.generators()?;
    let mut cmp = Comparison::<i64>::new(res, n)?;
    let idx = cmp.bar_index();
    let to_i64 = |v: &BigInt| v.to_i64().ok_or(crate::Overflow);
    let mut matrices = Vec::with_capacity(automorphisms.len());
    for a in automorphisms {
        let mut cols = Vec::with_capacity(gens.len());
        for u in &gens {
            let u: Vec<i64> = u.iter().map(to_i64).collect::<Result<_, _>>()?;
            let mut image = vec![BigInt::zero(); res.rank(n)];
            for (i, slot) in image.iter_mut().enumerate() {
                for ((_, cell), c) in cmp.to_bar(n, i) {
                    let moved: Vec<usize> = idx.decode(cell as usize, n).into_iter().map(|t| a[t]).collect();
                    let val = cmp.eval(n, idx.encode(&moved) as u64, &u)?;
                    *slot += BigInt::from(c) * BigInt::from(val);
                }
            }
            let coords = classes
                .coordinates(&image)?
                .ok_or_else(|| Error::InvalidModule("pulled-back cochain is not a cocycle".into()))?;
            cols.push(coords.iter().map(to_i64).collect::<Result<Vec<_>, _>>()?);
        }
        matrices.push(cols);
    }
    Ok(InducedAction { degree: n, group: classes.group(), summand_orders: classes.summand_orders(), matrices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Limits;
    use crate::group::FiniteGroup;
    use crate::resolution::{bar_resolution, best_resolution};

    fn inversion(n: usize) -> Vec<usize> {
        (0..n).map(|k| (n - k) % n).collect()
    }

    #[test]
    fn inversion_on_c5_negates_degree_two() {
        let c5 = FiniteGroup::cyclic(5);
        for res in [best_resolution(&c5, 3, &Limits::default()).unwrap(), bar_resolution(&c5, 3, &Limits::default()).unwrap()] {
            let act = induced_action(&res, &[inversion(5)], 2).unwrap();
            assert_eq!(act.group, AbelianGroup::cyclic(5));
            assert_eq!(act.matrices[0], vec![vec![4]], "{:?}", res.kind());
        }
    }

    #[test]
    fn squaring_on_c5_in_degree_four() {
        // α(k) = 2k acts on H^{2j} by 2^j.
        let c5 = FiniteGroup::cyclic(5);
        let res = best_resolution(&c5, 5, &Limits::default()).unwrap();
        let sq: Vec<usize> = (0..5).map(|k| 2 * k % 5).collect();
        assert_eq!(induced_action(&res, std::slice::from_ref(&sq), 2).unwrap().matrices[0], vec![vec![2]]);
        assert_eq!(induced_action(&res, &[sq], 4).unwrap().matrices[0], vec![vec![4]]);
    }

    #[test]
    fn identity_is_trivial() {
        let g = crate::group::parse_group("C3xC3").unwrap();
        let res = best_resolution(&g, 4, &Limits::default()).unwrap();
        let id: Vec<usize> = g.elements().collect();
        for n in 1..=3 {
            assert!(induced_action(&res, std::slice::from_ref(&id), n).unwrap().is_trivial());
        }
    }
}
