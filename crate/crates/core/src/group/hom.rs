use super::FiniteGroup;
use crate::{Error, Result};

/// A homomorphism between finite groups, stored as an image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    images: Vec<usize>,
}

impl GroupHom {
    /// Checks the homomorphism law on all pairs.
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.order() || images.iter().any(|&x| x >= target.order()) {
            return Err(Error::NotHomomorphism("image table has the wrong shape".into()));
        }
        if images[0] != 0 {
            return Err(Error::NotHomomorphism("identity not preserved".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(Error::NotHomomorphism(format!("fails on ({a}, {b})")));
                }
            }
        }
        Ok(GroupHom { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), images: g.elements().collect() }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.images[g]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.target != other.source {
            return Err(Error::NotHomomorphism("composition of mismatched maps".into()));
        }
        Ok(GroupHom {
            source: self.source.clone(),
            target: other.target.clone(),
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &x in &self.images {
            hit[x] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.source.elements().filter(|&g| self.images[g] == 0).collect()
    }
}

/// A surjection onto the group of order 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character2 {
    hom: GroupHom,
    kernel: Vec<usize>,
}

impl Character2 {
    pub fn new(hom: GroupHom) -> Result<Self> {
        if hom.target().order() != 2 || !hom.is_surjective() {
            return Err(Error::NotSurjective);
        }
        let kernel = hom.kernel();
        Ok(Character2 { hom, kernel })
    }

    /// Character from a value table (`true` = nontrivial).
    pub fn from_values(g: &FiniteGroup, values: &[bool]) -> Result<Self> {
        let c2 = FiniteGroup::cyclic(2);
        Self::new(GroupHom::new(g, &c2, values.iter().map(|&b| b as usize).collect())?)
    }

    pub fn group(&self) -> &FiniteGroup {
        self.hom.source()
    }

    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn kernel(&self) -> &[usize] {
        &self.kernel
    }

    /// `α(g) ∈ {0, 1}` as a boolean.
    #[inline]
    pub fn value(&self, g: usize) -> bool {
        self.hom.apply(g) == 1
    }

    pub fn values(&self) -> Vec<bool> {
        self.group().elements().map(|g| self.value(g)).collect()
    }

    /// `α ∘ φ`, when that is still surjective.
    pub fn pullback(&self, phi: &GroupHom) -> Result<Character2> {
        Character2::new(phi.then(&self.hom)?)
    }
}

/// All surjections `G → C2`, ordered by their value table on a basis of
/// `G / ⟨squares, commutators⟩`.
pub fn orientation_characters(g: &FiniteGroup) -> Vec<Character2> {
    let n = g.square_commutator_subgroup();
    let (q, proj) = g.quotient(&n, "ab2").expect("normal subgroup");
    // Greedy basis of the elementary abelian quotient, with coordinates.
    let mut coords: Vec<Option<u64>> = vec![None; q.order()];
    coords[0] = Some(0);
    let mut span = vec![0usize];
    let mut rank = 0;
    for x in q.elements() {
        if coords[x].is_some() {
            continue;
        }
        let bit = 1u64 << rank;
        rank += 1;
        let new: Vec<(usize, u64)> = span.iter().map(|&s| (q.mul(s, x), coords[s].expect("spanned") | bit)).collect();
        for (y, c) in new {
            coords[y] = Some(c);
            span.push(y);
        }
    }
    (1u64..(1 << rank))
        .map(|f| {
            let values: Vec<bool> =
                g.elements().map(|x| (coords[proj.apply(x)].expect("spanned") & f).count_ones() % 2 == 1).collect();
            Character2::from_values(g, &values).expect("nonzero functional is surjective")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group;

    #[test]
    fn character_counts() {
        assert!(orientation_characters(&FiniteGroup::cyclic(3)).is_empty());
        let c6 = orientation_characters(&FiniteGroup::cyclic(6));
        assert_eq!(c6.len(), 1);
        assert_eq!(c6[0].kernel(), &[0, 2, 4][..]);
        assert_eq!(orientation_characters(&parse_group("C2xC2").unwrap()).len(), 3);
    }

    #[test]
    fn homomorphism_law_is_checked() {
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        assert!(GroupHom::new(&c4, &c2, vec![0, 1, 0, 1]).is_ok());
        assert!(GroupHom::new(&c4, &c2, vec![0, 1, 1, 0]).is_err());
    }
}
