//! Finite groups stored as multiplication tables.

mod hom;
mod parse;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

pub use hom::{orientation_characters, Character2, GroupHom};
pub use parse::parse_group;

use crate::{Error, Result};

/// Hard cap on the order of a group built from generators.
pub const MAX_ORDER: usize = 2048;

/// A finite group given by its multiplication table. Element `0` is the
/// identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Validates a full multiplication table (`table[a * n + b] = ab`).
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<u32>) -> Result<Self> {
        let name = name.into();
        if order == 0 {
            return Err(Error::InvalidGroup(format!("{name}: empty group")));
        }
        if table.len() != order * order || table.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidGroup(format!("{name}: malformed table")));
        }
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::InvalidGroup(format!("{name}: element 0 is not the identity")));
            }
        }
        let mut inverses = vec![0u32; order];
        for a in 0..order {
            match (0..order).find(|&b| at(a, b) == 0) {
                Some(b) if at(b, a) == 0 => inverses[a] = b as u32,
                _ => return Err(Error::InvalidGroup(format!("{name}: element {a} has no inverse"))),
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::InvalidGroup(format!("{name}: not associative")));
                    }
                }
            }
        }
        Ok(FiniteGroup { name, order, table, inverses })
    }

    /// Builds a group from a table known to satisfy the axioms.
    fn from_trusted_table(name: String, order: usize, table: Vec<u32>) -> Self {
        let mut inverses = vec![0u32; order];
        for a in 0..order {
            let b = (0..order).find(|&b| table[a * order + b] == 0).expect("inverse exists");
            inverses[a] = b as u32;
        }
        FiniteGroup { name, order, table, inverses }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `C_n`; element `i` is `t^i`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        Self::from_trusted_table(format!("C{n}"), n, table)
    }

    /// Dihedral group of order `2n`; element `i + n j` is `r^i s^j`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let order = 2 * n;
        let mut table = vec![0u32; order * order];
        for x in 0..order {
            let (a, b) = (x % n, x / n);
            for y in 0..order {
                let (c, d) = (y % n, y / n);
                let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                table[x * order + y] = (rot + n * ((b + d) % 2)) as u32;
            }
        }
        Self::from_trusted_table(format!("D{n}"), order, table)
    }

    /// External direct product; element `(a, b)` has index `a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        let order = na * nb;
        let mut table = vec![0u32; order * order];
        for x in 0..order {
            for y in 0..order {
                let p = a.mul(x / nb, y / nb);
                let q = b.mul(x % nb, y % nb);
                table[x * order + y] = (p * nb + q) as u32;
            }
        }
        Self::from_trusted_table(format!("{}x{}", a.name, b.name), order, table)
    }

    /// Closure of permutations of `{0, …, degree-1}` (images listed per point).
    pub fn from_permutations(name: impl Into<String>, degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        let name = name.into();
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidGroup(format!("{name}: generator is not a permutation of degree {degree}")));
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index = std::collections::HashMap::new();
        index.insert(identity, 0usize);
        let mut queue = VecDeque::from([0usize]);
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&x| p[x]).collect() };
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let next = compose(&elements[i], g);
                if !index.contains_key(&next) {
                    if elements.len() >= MAX_ORDER {
                        return Err(Error::InvalidGroup(format!("{name}: more than {MAX_ORDER} elements")));
                    }
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        let order = elements.len();
        let mut table = vec![0u32; order * order];
        for (i, p) in elements.iter().enumerate() {
            for (j, q) in elements.iter().enumerate() {
                // Product `pq` means "apply q, then p".
                table[i * order + j] = index[&compose(p, q)] as u32;
            }
        }
        Ok(Self::from_trusted_table(name, order, table))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    /// `g a g⁻¹`.
    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Least element generating the group, if cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        self.elements().find(|&a| self.element_order(a) == self.order)
    }

    /// Sorted element set of the subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        self.elements().filter(|&x| seen[x]).collect()
    }

    /// Sorted element set of the smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[usize]) -> Vec<usize> {
        let conj: BTreeSet<usize> = gens.iter().flat_map(|&x| self.elements().map(move |g| (g, x))).map(|(g, x)| self.conjugate(g, x)).collect();
        self.generated_subgroup(&conj.into_iter().collect::<Vec<_>>())
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &x in set {
            member[x] = true;
        }
        member[0] && set.iter().all(|&a| set.iter().all(|&b| member[self.mul(a, b)]))
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &x in set {
            member[x] = true;
        }
        self.is_subgroup(set) && set.iter().all(|&k| self.elements().all(|g| member[self.conjugate(g, k)]))
    }

    /// Elements commuting with every element of `set`.
    pub fn centralizer(&self, set: &[usize]) -> Vec<usize> {
        self.elements().filter(|&g| set.iter().all(|&k| self.mul(g, k) == self.mul(k, g))).collect()
    }

    /// Subgroup on a sorted element set, with its inclusion.
    pub fn subgroup(&self, set: &[usize], name: impl Into<String>) -> Result<(FiniteGroup, GroupHom)> {
        if !self.is_subgroup(set) || set.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGroup("not a sorted subgroup element set".into()));
        }
        let n = set.len();
        let mut pos = vec![u32::MAX; self.order];
        for (i, &x) in set.iter().enumerate() {
            pos[x] = i as u32;
        }
        let table = (0..n * n).map(|k| pos[self.mul(set[k / n], set[k % n])]).collect();
        let sub = Self::from_trusted_table(name.into(), n, table);
        let incl = GroupHom::new(&sub, self, set.to_vec())?;
        Ok((sub, incl))
    }

    /// Quotient by a normal subgroup, with the projection. Coset `i` is
    /// represented by the least element it contains, so coset `0` is `N`.
    pub fn quotient(&self, normal: &[usize], name: impl Into<String>) -> Result<(FiniteGroup, GroupHom)> {
        if !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let mut coset = vec![u32::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if coset[g] == u32::MAX {
                for &k in normal {
                    coset[self.mul(g, k)] = reps.len() as u32;
                }
                reps.push(g);
            }
        }
        let m = reps.len();
        let table = (0..m * m).map(|k| coset[self.mul(reps[k / m], reps[k % m])]).collect();
        let q = Self::from_trusted_table(name.into(), m, table);
        let proj = GroupHom::new(self, &q, coset.iter().map(|&c| c as usize).collect())?;
        Ok((q, proj))
    }

    /// Subgroup generated by squares and commutators.
    pub fn square_commutator_subgroup(&self) -> Vec<usize> {
        let mut gens: BTreeSet<usize> = self.elements().map(|a| self.mul(a, a)).collect();
        for a in self.elements() {
            for b in self.elements() {
                gens.insert(self.commutator(a, b));
            }
        }
        self.generated_subgroup(&gens.into_iter().collect::<Vec<_>>())
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let gens: BTreeSet<usize> =
            self.elements().flat_map(|a| self.elements().map(move |b| (a, b))).map(|(a, b)| self.commutator(a, b)).collect();
        self.generated_subgroup(&gens.into_iter().collect::<Vec<_>>())
    }

    /// Internal direct factorization `G = A × B` with both factors proper,
    /// or `None`. Abelian groups split off a cyclic factor of maximal order.
    pub fn direct_factorization(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        if self.order < 4 {
            return None;
        }
        let candidates: Vec<Vec<usize>> = if self.is_abelian() {
            let exp = self.elements().map(|a| self.element_order(a)).max().unwrap_or(1);
            if exp == self.order {
                // Cyclic: split coprime parts.
                let g = self.cyclic_generator().expect("cyclic");
                let n = self.order;
                return (2..n).filter(|d| n.is_multiple_of(*d) && num_integer::gcd(*d, n / d) == 1).map(|d| {
                    (self.generated_subgroup(&[self.pow(g, n / d)]), self.generated_subgroup(&[self.pow(g, d)]))
                }).next();
            }
            self.elements().filter(|&a| self.element_order(a) == exp).map(|a| self.generated_subgroup(&[a])).collect()
        } else {
            self.elements().skip(1).map(|a| self.normal_closure(&[a])).collect()
        };
        let mut seen = BTreeSet::new();
        for a in candidates {
            if a.len() == self.order || a.len() == 1 || !seen.insert(a.clone()) {
                continue;
            }
            if let Some(b) = self.complement_of(&a) {
                return Some((a, b));
            }
        }
        None
    }

    /// A normal subgroup `B` with `A ∩ B = 1`, `|A||B| = |G|` and `[A, B] = 1`.
    fn complement_of(&self, a: &[usize]) -> Option<Vec<usize>> {
        let target = self.order / a.len();
        if self.is_abelian() {
            // Search a complement generated by few elements, greedily.
            let mut member = vec![false; self.order];
            for &x in a {
                member[x] = true;
            }
            let mut b = vec![0usize];
            for x in self.elements() {
                if b.len() == target {
                    break;
                }
                let trial = {
                    let mut gens = b.clone();
                    gens.push(x);
                    self.generated_subgroup(&gens)
                };
                if trial.len() > b.len() && trial.iter().all(|&y| y == 0 || !member[y]) && target.is_multiple_of(trial.len()) {
                    b = trial;
                }
            }
            return (b.len() == target).then_some(b);
        }
        let c = self.centralizer(a);
        let member: BTreeSet<usize> = a.iter().copied().collect();
        let b: Vec<usize> = c.into_iter().filter(|x| !member.contains(x) || *x == 0).collect();
        (b.len() == target && self.is_normal(&b)).then_some(b)
    }
}

/// `G = K ⋊ P` data: `K` the odd-order normal subgroup, `P = G/K` a 2-group.
#[derive(Clone, Debug)]
pub struct OddComplement {
    /// Sorted element set of `K` inside `G`.
    pub k_elements: Vec<usize>,
    pub k: FiniteGroup,
    pub inclusion: GroupHom,
    pub p: FiniteGroup,
    pub projection: GroupHom,
    /// Least element of `G` in each coset; `coset_reps[i]` maps to `i ∈ P`.
    pub coset_reps: Vec<usize>,
}

fn two_part(n: usize) -> usize {
    1 << n.trailing_zeros()
}

/// The odd-order normal subgroup with 2-group quotient, when it exists.
///
/// Such a subgroup consists of all odd-order elements, so it is unique.
pub fn odd_normal_complement(g: &FiniteGroup) -> Option<OddComplement> {
    let odd: Vec<usize> = g.elements().filter(|&a| g.element_order(a) % 2 == 1).collect();
    if odd.len() != g.order() / two_part(g.order()) || !g.is_normal(&odd) {
        return None;
    }
    let k_name = if odd.len() == 1 { "1".to_string() } else { format!("K({})", g.name()) };
    let (k, inclusion) = g.subgroup(&odd, k_name).ok()?;
    let (p, projection) = g.quotient(&odd, format!("{}/K", g.name())).ok()?;
    let mut coset_reps = vec![usize::MAX; p.order()];
    for x in g.elements() {
        let c = projection.apply(x);
        if coset_reps[c] == usize::MAX {
            coset_reps[c] = x;
        }
    }
    Some(OddComplement { k_elements: odd, k, inclusion, p, projection, coset_reps })
}

/// Conjugation action of coset representatives on a normal subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugationAction {
    pub reps: Vec<usize>,
    /// `automorphisms[i][k]`: index in `K` of `reps[i] · K[k] · reps[i]⁻¹`.
    pub automorphisms: Vec<Vec<usize>>,
    /// Whether each automorphism is inner for `K`.
    pub inner: Vec<bool>,
}

impl ConjugationAction {
    pub fn is_trivial(&self) -> bool {
        self.automorphisms.iter().all(|a| a.iter().enumerate().all(|(i, &j)| i == j))
    }

    pub fn all_inner(&self) -> bool {
        self.inner.iter().all(|&b| b)
    }
}

pub fn conjugation_action(g: &FiniteGroup, k_elements: &[usize], reps: &[usize]) -> Result<ConjugationAction> {
    if !g.is_normal(k_elements) {
        return Err(Error::NotNormal);
    }
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in k_elements.iter().enumerate() {
        pos[x] = i;
    }
    let inner_autos: BTreeSet<Vec<usize>> =
        k_elements.iter().map(|&h| k_elements.iter().map(|&k| pos[g.conjugate(h, k)]).collect()).collect();
    let automorphisms: Vec<Vec<usize>> =
        reps.iter().map(|&r| k_elements.iter().map(|&k| pos[g.conjugate(r, k)]).collect()).collect();
    let inner = automorphisms.iter().map(|a| inner_autos.contains(a)).collect();
    Ok(ConjugationAction { reps: reps.to_vec(), automorphisms, inner })
}
