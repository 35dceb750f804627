use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A finitely generated abelian group in invariant-factor form:
/// `Z^rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` with `2 <= t_1 | t_2 | … | t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianGroup {
    rank: usize,
    torsion: Vec<u64>,
}

fn prime_powers(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

impl AbelianGroup {
    /// Builds the group `Z^rank ⊕ ⊕ Z/orders[i]`. Orders equal to 1 are
    /// dropped and orders equal to 0 contribute a free summand; the rest are
    /// regrouped into invariant factors.
    pub fn from_cyclic_orders(rank: usize, orders: impl IntoIterator<Item = u64>) -> Self {
        let mut rank = rank;
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for n in orders {
            match n {
                0 => rank += 1,
                1 => {}
                _ => {
                    for (p, q) in prime_powers(n) {
                        by_prime.entry(p).or_default().push(q);
                    }
                }
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut torsion = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable();
            // Largest powers go to the last (largest) invariant factor.
            let offset = len - powers.len();
            for (i, q) in powers.iter().enumerate() {
                torsion[offset + i] *= q;
            }
        }
        AbelianGroup { rank, torsion }
    }

    pub fn trivial() -> Self {
        AbelianGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn integers() -> Self {
        Self::free(1)
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(0, [n])
    }

    /// `(Z/p)^k`.
    pub fn elementary(p: u64, k: usize) -> Self {
        Self::from_cyclic_orders(0, std::iter::repeat_n(p, k))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Number of elements, or `None` for infinite groups.
    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Exponent of a finite group (1 for the trivial group).
    pub fn exponent(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.last().copied().unwrap_or(1))
    }

    /// Number of minimal cyclic summands (free rank plus torsion length).
    pub fn num_generators(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Cyclic orders of the summands in order: torsion factors first, then
    /// `0` for each free summand.
    pub fn summand_orders(&self) -> Vec<u64> {
        self.torsion.iter().copied().chain(std::iter::repeat_n(0, self.rank)).collect()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_cyclic_orders(
            self.rank + other.rank,
            self.torsion.iter().chain(&other.torsion).copied(),
        )
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut orders = Vec::new();
        for &m in &self.torsion {
            orders.extend(std::iter::repeat_n(m, other.rank));
            for &n in &other.torsion {
                orders.push(m.gcd(&n));
            }
        }
        for &n in &other.torsion {
            orders.extend(std::iter::repeat_n(n, self.rank));
        }
        Self::from_cyclic_orders(self.rank * other.rank, orders)
    }

    pub fn tor(&self, other: &Self) -> Self {
        let orders = self
            .torsion
            .iter()
            .flat_map(|&m| other.torsion.iter().map(move |&n| m.gcd(&n)));
        Self::from_cyclic_orders(0, orders)
    }

    /// Size of the `k`-torsion subgroup `{x : kx = 0}` of a finite group.
    pub fn count_killed_by(&self, k: u64) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().map(|&t| t.gcd(&k)).product())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|&&x| x == t).count();
            if run == 1 {
                parts.push(format!("Z/{t}"));
            } else {
                parts.push(format!("(Z/{t})^{run}"));
            }
            i += run;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factors_are_regrouped() {
        let g = AbelianGroup::from_cyclic_orders(0, [6, 2, 1, 4]);
        assert_eq!(g.torsion(), &[2, 2, 12][..]);
        assert_eq!(g.order(), Some(48));
        assert_eq!(AbelianGroup::from_cyclic_orders(1, [0, 3, 5]).to_string(), "Z^2 + Z/15");
    }

    #[test]
    fn tensor_and_tor() {
        let z2 = AbelianGroup::cyclic(2);
        let a = AbelianGroup::integers().direct_sum(&z2);
        assert_eq!(z2.tensor(&a), AbelianGroup::elementary(2, 2));
        assert_eq!(z2.tor(&a), z2);
        assert_eq!(AbelianGroup::integers().tensor(&AbelianGroup::cyclic(16)), AbelianGroup::cyclic(16));
        assert_eq!(AbelianGroup::cyclic(4).tor(&AbelianGroup::cyclic(6)), z2);
    }

    #[test]
    fn display() {
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::elementary(2, 3).to_string(), "(Z/2)^3");
    }
}
