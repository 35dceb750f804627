use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use stabdiff::cohomology::{cohomology, homology_with, Variance};
use stabdiff::config::Limits;
use stabdiff::gmodule::GModule;
use stabdiff::group::{orientation_characters, parse_group};
use stabdiff::linalg::{mod2_rank, smith_normal_form, smith_normal_form_with_transforms, BitMatrix};
use stabdiff::resolution::{bar_resolution, best_resolution, periodic_resolution};
use stabdiff::{AbelianGroup, FiniteGroup, IntMatrix};

fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    let cols = rows.first().map_or(0, Vec::len);
    IntMatrix::from_triplets(
        rows.len(),
        cols,
        rows.iter().enumerate().flat_map(|(i, r)| r.iter().enumerate().filter(|(_, v)| **v != 0).map(move |(j, &v)| (i, j, BigInt::from(v)))),
    )
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|r| (0..cols).map(|j| (0..inner).map(|k| r[k] * b[k][j]).sum()).collect()).collect()
}

/// Product of elementary operations `row_i += c * row_j` and swaps.
fn unimodular(n: usize, ops: &[(usize, usize, i64, bool)]) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for &(i, j, c, swap) in ops {
        let (i, j) = (i % n, j % n);
        if swap {
            u.swap(i, j);
        } else if i != j {
            let row = u[j].clone();
            for (x, y) in u[i].iter_mut().zip(row) {
                *x += c * y;
            }
        }
    }
    u
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

/// All `k × k` minors.
fn minors(m: &[Vec<i64>], k: usize) -> Vec<BigInt> {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    fn det(a: Vec<Vec<BigInt>>) -> BigInt {
        if a.is_empty() {
            return BigInt::from(1);
        }
        (0..a.len())
            .map(|j| {
                let sub: Vec<Vec<BigInt>> =
                    a[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect()).collect();
                let term = &a[0][j] * det(sub);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    }
    let cols = m[0].len();
    let mut out = Vec::new();
    for rs in subsets(m.len(), k) {
        for cs in subsets(cols, k) {
            out.push(det(rs.iter().map(|&i| cs.iter().map(|&j| BigInt::from(m[i][j])).collect()).collect()));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_unimodular_invariant(
        m in matrix_strategy(),
        left in prop::collection::vec((0usize..5, 0usize..5, -3i64..=3, any::<bool>()), 0..8),
        right in prop::collection::vec((0usize..5, 0usize..5, -3i64..=3, any::<bool>()), 0..8),
    ) {
        let u = unimodular(m.len(), &left);
        let v = unimodular(m[0].len(), &right);
        let moved = mul(&mul(&u, &m), &v);
        let a = smith_normal_form(&int_matrix(&m));
        let b = smith_normal_form(&int_matrix(&moved));
        prop_assert_eq!(&a.diagonal, &b.diagonal);
        let t = smith_normal_form_with_transforms(&int_matrix(&m));
        let (l, r) = (t.left.unwrap(), t.right.unwrap());
        let d = l.checked_mul(&int_matrix(&m).to_dense()).unwrap().checked_mul(&r).unwrap();
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let expected = if i == j { t.diagonal[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(d.row(i)[j].abs(), expected.abs());
            }
        }
    }

    /// `d_1 ⋯ d_k` is the gcd of the `k × k` minors.
    #[test]
    fn smith_form_matches_determinantal_divisors(m in matrix_strategy()) {
        let s = smith_normal_form(&int_matrix(&m));
        let mut prod = BigInt::from(1);
        for k in 1..=m.len().min(m[0].len()) {
            prod *= &s.diagonal[k - 1];
            let g = minors(&m, k).into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(&x));
            prop_assert_eq!(prod.abs(), g);
        }
    }

    /// Rank over `F_2` against a count of the kernel by enumeration.
    #[test]
    fn mod2_rank_by_enumeration(rows in (1usize..=6, 1usize..=7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(any::<bool>(), c), r))) {
        let cols = rows[0].len();
        let kernel = (0u32..1 << cols)
            .filter(|x| rows.iter().all(|r| r.iter().enumerate().filter(|(j, &b)| b && x >> j & 1 == 1).count() % 2 == 0))
            .count();
        let rank = mod2_rank(&BitMatrix::from_bools(&rows));
        prop_assert_eq!(1usize << (cols - rank), kernel);
    }
}

#[test]
fn boundaries_compose_to_zero() {
    let limits = Limits::default();
    for name in ["C1", "C2", "C6", "C4", "C2xC2", "C3xC2", "D3", "D5", "C2xC2xC2", "Q8", "A4"] {
        let g = parse_group(name).unwrap();
        bar_resolution(&g, 4, &limits).unwrap().verify().unwrap();
        best_resolution(&g, 5, &limits).unwrap().verify().unwrap();
        if g.cyclic_generator().is_some() {
            periodic_resolution(&g, 8).unwrap().verify().unwrap();
        }
    }
}

/// Odd order groups: `|G|` kills positive-degree cohomology, and mod 2
/// cohomology vanishes there.
#[test]
fn maschke_vanishing() {
    let limits = Limits::default();
    for name in ["C1", "C3", "C5", "C7", "C9", "C11", "C13", "C15", "C3xC3", "C3xC5"] {
        let g = parse_group(name).unwrap();
        let order = g.order() as u64;
        for m in [GModule::trivial_integers(&g), GModule::trivial(&g, &AbelianGroup::cyclic(3))] {
            for n in 1..=4 {
                let h = cohomology(&g, &m, n, &limits).unwrap();
                assert!(h.is_finite() && order.is_multiple_of(h.exponent().unwrap()), "{name} H^{n} = {h}");
            }
        }
        for n in 1..=4 {
            assert!(cohomology(&g, &GModule::mod2(&g), n, &limits).unwrap().is_trivial(), "{name} mod 2 degree {n}");
        }
    }
}

fn cyclic_cohomology(m: u64, n: usize) -> AbelianGroup {
    match n {
        0 => AbelianGroup::integers(),
        n if n % 2 == 1 => AbelianGroup::trivial(),
        _ => AbelianGroup::cyclic(m),
    }
}

/// `H^n(A × B) = ⊕ H^i(A) ⊗ H^j(B) ⊕ ⊕_{i+j=n+1} Tor(H^i(A), H^j(B))`,
/// checked on the bar resolution of the product.
#[test]
fn kunneth_for_products_of_cyclic_groups() {
    let limits = Limits::default();
    for (a, b) in [(2u64, 2u64), (2, 3), (3, 3), (2, 4)] {
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(a as usize), &FiniteGroup::cyclic(b as usize));
        let bar = bar_resolution(&g, 4, &limits).unwrap();
        for n in 0..=3 {
            let mut expected = AbelianGroup::trivial();
            for i in 0..=n {
                expected = expected.direct_sum(&cyclic_cohomology(a, i).tensor(&cyclic_cohomology(b, n - i)));
            }
            for i in 0..=n + 1 {
                expected = expected.direct_sum(&cyclic_cohomology(a, i).tor(&cyclic_cohomology(b, n + 1 - i)));
            }
            let got = homology_with(&bar, &GModule::trivial_integers(&g), Variance::Cochains, n).unwrap();
            assert_eq!(got, expected, "C{a}xC{b} degree {n}");
            assert_eq!(cohomology(&g, &GModule::trivial_integers(&g), n, &limits).unwrap(), expected);
        }
    }
}

/// Surjections onto `C2` counted by trying every assignment on a generating
/// set and checking the multiplication table.
#[test]
fn orientation_characters_by_enumeration() {
    for name in ["C1", "C2", "C4", "C6", "C2xC2", "C2xC2xC2", "D3", "D4", "Q8", "A4", "C2xD3", "C4xC2"] {
        let g = parse_group(name).unwrap();
        let mut gens = Vec::new();
        while g.generated_subgroup(&gens).len() < g.order() {
            let span = g.generated_subgroup(&gens);
            gens.push(g.elements().find(|x| !span.contains(x)).unwrap());
        }
        let mut count = 0;
        for mask in 1u32..1 << gens.len() {
            // Extend the assignment along words in the generators.
            let mut value: Vec<Option<bool>> = vec![None; g.order()];
            value[g.identity()] = Some(false);
            let mut frontier = vec![g.identity()];
            let mut ok = true;
            while let Some(x) = frontier.pop() {
                for (k, &s) in gens.iter().enumerate() {
                    let y = g.mul(x, s);
                    let v = value[x].unwrap() ^ (mask >> k & 1 == 1);
                    match value[y] {
                        None => {
                            value[y] = Some(v);
                            frontier.push(y);
                        }
                        Some(w) if w != v => ok = false,
                        _ => {}
                    }
                }
            }
            ok &= g.elements().all(|x| g.elements().all(|y| value[g.mul(x, y)] == Some(value[x].unwrap() ^ value[y].unwrap())));
            count += usize::from(ok && value.contains(&Some(true)));
        }
        assert_eq!(orientation_characters(&g).len(), count, "{name}");
    }
}
