//! Finitely generated modules over the integral group ring.

use crate::group::{Character2, FiniteGroup, GroupHom};
use crate::linalg::{dense_smith, DenseMatrix, LinearSolver};
use crate::{AbelianGroup, Error, Result};

/// `Z^k / im(R)` with `G` acting by integer matrices on column vectors.
#[derive(Clone, Debug)]
pub struct GModule {
    group: FiniteGroup,
    rank: usize,
    /// `k × s`; columns are the relations.
    relations: DenseMatrix<i64>,
    actions: Vec<DenseMatrix<i64>>,
}

impl GModule {
    /// Validates the module axioms: identity acts trivially, relations are
    /// preserved and the action is multiplicative modulo relations.
    pub fn new(group: &FiniteGroup, rank: usize, relations: DenseMatrix<i64>, actions: Vec<DenseMatrix<i64>>) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidModule(m.to_string()));
        if relations.rows() != rank || actions.len() != group.order() {
            return bad("shape mismatch");
        }
        if actions.iter().any(|a| a.rows() != rank || a.cols() != rank) {
            return bad("action matrix has the wrong size");
        }
        let m = GModule { group: group.clone(), rank, relations, actions };
        let solver = LinearSolver::new(&m.relations)?;
        let in_relations = |v: &[i64]| -> Result<bool> {
            Ok(v.iter().all(|&x| x == 0) || solver.solve(v)?.is_some())
        };
        let id = DenseMatrix::identity(rank);
        let diff = |a: &DenseMatrix<i64>, b: &DenseMatrix<i64>| -> Vec<Vec<i64>> {
            (0..rank).map(|j| (0..rank).map(|i| a[(i, j)] - b[(i, j)]).collect()).collect()
        };
        for col in diff(&m.actions[0], &id) {
            if !in_relations(&col)? {
                return bad("identity does not act trivially");
            }
        }
        for a in &m.actions {
            let moved = a.checked_mul(&m.relations)?;
            for j in 0..moved.cols() {
                if !in_relations(&moved.column(j))? {
                    return bad("action does not preserve relations");
                }
            }
        }
        for g in group.elements() {
            for h in group.elements() {
                let prod = m.actions[g].checked_mul(&m.actions[h])?;
                for col in diff(&prod, &m.actions[group.mul(g, h)]) {
                    if !in_relations(&col)? {
                        return bad("action is not a homomorphism");
                    }
                }
            }
        }
        Ok(m)
    }

    /// `A` with every element acting by `±1` according to `signs`.
    fn signed(group: &FiniteGroup, a: &AbelianGroup, signs: impl Fn(usize) -> bool) -> Self {
        let orders = a.summand_orders();
        let k = orders.len();
        let torsion: Vec<Vec<i64>> = orders
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| (0..k).map(|r| if r == i { d as i64 } else { 0 }).collect())
            .collect();
        let relations = DenseMatrix::from_columns(k, &torsion);
        let actions = group
            .elements()
            .map(|g| {
                let mut m = DenseMatrix::identity(k);
                if signs(g) {
                    for i in 0..k {
                        m[(i, i)] = -1;
                    }
                }
                m
            })
            .collect();
        GModule { group: group.clone(), rank: k, relations, actions }
    }

    /// `A` with the trivial action.
    pub fn trivial(group: &FiniteGroup, a: &AbelianGroup) -> Self {
        Self::signed(group, a, |_| false)
    }

    pub fn trivial_integers(group: &FiniteGroup) -> Self {
        Self::trivial(group, &AbelianGroup::integers())
    }

    /// `A` with `g` acting as `(-1)^{α(g)}`.
    pub fn sign_twisted(a: &AbelianGroup, alpha: &Character2) -> Self {
        Self::signed(alpha.group(), a, |g| alpha.value(g))
    }

    /// `Z_α`.
    pub fn twisted_integers(alpha: &Character2) -> Self {
        Self::sign_twisted(&AbelianGroup::integers(), alpha)
    }

    /// `Z/2` with the trivial action.
    pub fn mod2(group: &FiniteGroup) -> Self {
        Self::trivial(group, &AbelianGroup::cyclic(2))
    }

    /// `M` viewed over the source of `phi`.
    pub fn pullback(&self, phi: &GroupHom) -> Result<GModule> {
        if phi.target() != &self.group {
            return Err(Error::InvalidModule("pullback along a map with the wrong target".into()));
        }
        Ok(GModule {
            group: phi.source().clone(),
            rank: self.rank,
            relations: self.relations.clone(),
            actions: phi.source().elements().map(|g| self.actions[phi.apply(g)].clone()).collect(),
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Number of generators `k`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &DenseMatrix<i64> {
        &self.relations
    }

    pub fn has_relations(&self) -> bool {
        !self.relations.is_zero()
    }

    pub fn action(&self, g: usize) -> &DenseMatrix<i64> {
        &self.actions[g]
    }

    /// The underlying abelian group.
    pub fn underlying(&self) -> AbelianGroup {
        let s = dense_smith(&self.relations, false).expect("small relation matrix");
        let orders = s.diagonal.iter().take(s.rank).map(|d| d.unsigned_abs());
        AbelianGroup::from_cyclic_orders(self.rank - s.rank, orders)
    }

    /// `Z/p` with every element acting by `±1`, as `(p, signs)`.
    pub fn as_signed_cyclic(&self) -> Option<(u64, Vec<bool>)> {
        if self.rank != 1 || self.relations.cols() != 1 {
            return None;
        }
        let p = self.relations[(0, 0)].unsigned_abs();
        let signs = self
            .actions
            .iter()
            .map(|a| match a[(0, 0)].rem_euclid(p as i64) {
                1 => Some(false),
                r if r == p as i64 - 1 => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<bool>>>()?;
        Some((p, signs))
    }

    /// True when every element acts as the identity (modulo relations).
    pub fn is_trivial_action(&self) -> bool {
        let id = DenseMatrix::identity(self.rank);
        if !self.has_relations() {
            return self.actions.iter().all(|a| *a == id);
        }
        let solver = LinearSolver::new(&self.relations).expect("small relation matrix");
        self.actions.iter().all(|a| {
            (0..self.rank).all(|j| {
                let col: Vec<i64> = (0..self.rank).map(|i| a[(i, j)] - id[(i, j)]).collect();
                col.iter().all(|&x| x == 0) || solver.solve(&col).ok().flatten().is_some()
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::orientation_characters;

    #[test]
    fn twisted_integers_signs() {
        let c2 = FiniteGroup::cyclic(2);
        let w = &orientation_characters(&c2)[0];
        let zw = GModule::twisted_integers(w);
        assert_eq!(zw.action(1)[(0, 0)], -1);
        assert_eq!(zw.action(0)[(0, 0)], 1);
        let c6 = FiniteGroup::cyclic(6);
        let p = GroupHom::new(&c6, &c2, (0..6).map(|g| g % 2).collect()).unwrap();
        let pulled = zw.pullback(&p).unwrap();
        for g in 0..6 {
            assert_eq!(pulled.action(g)[(0, 0)], if g % 2 == 1 { -1 } else { 1 });
        }
        assert!(GModule::trivial_integers(&c6).pullback(&GroupHom::identity(&c6)).unwrap().is_trivial_action());
    }

    #[test]
    fn axioms_are_checked() {
        let c2 = FiniteGroup::cyclic(2);
        let one = DenseMatrix::identity(1);
        let two = DenseMatrix::from_i64_rows(&[vec![2]]);
        assert!(GModule::new(&c2, 1, DenseMatrix::zeros(1, 0), vec![one.clone(), two.clone()]).is_err());
        let minus_one = DenseMatrix::from_i64_rows(&[vec![-1]]);
        let m = GModule::new(&c2, 1, DenseMatrix::from_i64_rows(&[vec![2]]), vec![one, minus_one]).unwrap();
        assert!(m.is_trivial_action());
        assert_eq!(m.underlying(), AbelianGroup::cyclic(2));
    }
}
