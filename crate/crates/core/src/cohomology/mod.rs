//! Group cohomology and homology with coefficients in a [`GModule`].
//!
//! Cochains are `Hom_G(F_n, M) = M^{r_n}` and chains `F_n ⊗_G M = M^{r_n}`
//! for a free resolution `F`. Free coefficient modules go through sparse
//! elimination, `Z/p` with a sign action goes through the prime field, and
//! everything else through a dense subquotient computation.

mod action;
mod comparison;
mod ring;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub use action::{induced_action, InducedAction};
pub use comparison::{BarChain, Comparison};
pub use ring::{inflation_map, mod2_ring, CohomologyRingSlice, InflationMap, Mod2Cohomology};

use crate::config::Limits;
use crate::gmodule::GModule;
use crate::group::FiniteGroup;
use crate::linalg::{
    dense_smith, field_rank, kernel_basis, small_elementary_divisors, small_rational_rank, DenseMatrix, SparseMatrix,
    Subquotient,
};
use crate::resolution::{best_resolution, Resolution};
use crate::scalar::{Gf2, ModP, Scalar};
use crate::{AbelianGroup, Error, Result};

/// Bound on the entries of a dense subquotient computation.
pub const DENSE_LIMIT: u128 = 4_000_000;

/// Which side of `Hom`/`⊗` the complex comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    Cochains,
    Chains,
}

fn group_inverse_or_identity(res: &Resolution, v: Variance, g: usize) -> usize {
    match v {
        Variance::Cochains => g,
        Variance::Chains => res.group().inv(g),
    }
}

/// Rank of the cochain or chain group in degree `n` (as a multiple of `k`).
fn cells(res: &Resolution, n: isize) -> usize {
    if n < 0 || n as usize > res.length() {
        0
    } else {
        res.rank(n as usize)
    }
}

/// The differential leaving degree `n`: `δ^n : C^n → C^{n+1}` or
/// `∂_n : C_n → C_{n-1}`, with `action(g)` giving the `k × k` block for `g`.
fn differential<T: Scalar>(res: &Resolution, v: Variance, n: isize, k: usize, action: &dyn Fn(usize) -> Vec<T>) -> SparseMatrix<T> {
    let (src, dst) = match v {
        Variance::Cochains => (n, n + 1),
        Variance::Chains => (n, n - 1),
    };
    let (rows, cols) = (cells(res, dst) * k, cells(res, src) * k);
    if rows == 0 || cols == 0 {
        return SparseMatrix::zeros(rows, cols);
    }
    let top = match v {
        Variance::Cochains => dst as usize,
        Variance::Chains => src as usize,
    };
    let mut triplets = Vec::new();
    for (i, x) in res.boundary(top).iter().enumerate() {
        for t in x {
            let block = action(group_inverse_or_identity(res, v, t.element as usize));
            let c = T::from_i64(t.coeff);
            let j = t.generator as usize;
            for a in 0..k {
                for b in 0..k {
                    let e = &block[a * k + b];
                    if e.is_zero() {
                        continue;
                    }
                    let val = c.checked_mul_s(e).expect("small coefficients");
                    match v {
                        Variance::Cochains => triplets.push((i * k + a, j * k + b, val)),
                        Variance::Chains => triplets.push((j * k + a, i * k + b, val)),
                    }
                }
            }
        }
    }
    SparseMatrix::from_triplets(rows, cols, triplets)
}

fn action_rows(m: &GModule) -> impl Fn(usize) -> Vec<i64> + '_ {
    move |g| {
        let a = m.action(g);
        (0..m.rank()).flat_map(|i| (0..m.rank()).map(move |j| (i, j))).map(|(i, j)| a[(i, j)]).collect()
    }
}

fn field_dimension<F: Scalar>(res: &Resolution, v: Variance, n: usize, signs: &[bool]) -> usize {
    let action = |g: usize| vec![if signs[g] { F::from_i64(-1) } else { F::one() }];
    let (into, out) = match v {
        Variance::Cochains => (differential::<F>(res, v, n as isize - 1, 1, &action), differential::<F>(res, v, n as isize, 1, &action)),
        Variance::Chains => (differential::<F>(res, v, n as isize + 1, 1, &action), differential::<F>(res, v, n as isize, 1, &action)),
    };
    let c = res.rank(n);
    let r_in = field_rank(&into, None);
    let r_out = field_rank(&out, Some(c - r_in));
    c - r_in - r_out
}

fn prime_field_dimension(res: &Resolution, v: Variance, n: usize, p: u64, signs: &[bool]) -> Option<usize> {
    Some(match p {
        2 => field_dimension::<Gf2>(res, v, n, signs),
        3 => field_dimension::<ModP<3>>(res, v, n, signs),
        5 => field_dimension::<ModP<5>>(res, v, n, signs),
        7 => field_dimension::<ModP<7>>(res, v, n, signs),
        _ => return None,
    })
}

fn check_degree(res: &Resolution, n: usize) -> Result<()> {
    if res.length() < n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, found: res.length() });
    }
    Ok(())
}

fn check_module(res: &Resolution, m: &GModule) -> Result<()> {
    if res.group() != m.group() {
        return Err(Error::InvalidModule("module and resolution are over different groups".into()));
    }
    Ok(())
}

/// Block-diagonal copies of the relation matrix, one per free generator.
fn relation_blocks(m: &GModule, copies: usize) -> DenseMatrix<BigInt> {
    let (k, s) = (m.rank(), m.relations().cols());
    let mut out = DenseMatrix::zeros(k * copies, s * copies);
    for c in 0..copies {
        for i in 0..k {
            for j in 0..s {
                out[(c * k + i, c * s + j)] = BigInt::from(m.relations()[(i, j)]);
            }
        }
    }
    out
}

fn hcat(a: &DenseMatrix<BigInt>, b: &DenseMatrix<BigInt>) -> DenseMatrix<BigInt> {
    assert_eq!(a.rows(), b.rows());
    let mut out = DenseMatrix::zeros(a.rows(), a.cols() + b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out[(i, j)] = a[(i, j)].clone();
        }
        for j in 0..b.cols() {
            out[(i, a.cols() + j)] = b[(i, j)].clone();
        }
    }
    out
}

/// `Z / B` where `Z = {x : d_out x ∈ im rel_out}` and
/// `B = im d_in + im rel_mid`, all dense.
pub fn dense_subquotient(
    d_in: &DenseMatrix<BigInt>,
    d_out: &DenseMatrix<BigInt>,
    rel_mid: &DenseMatrix<BigInt>,
    rel_out: &DenseMatrix<BigInt>,
) -> Result<Subquotient<BigInt>> {
    let c = d_out.cols();
    let wide = hcat(d_out, rel_out);
    let needed = (wide.rows() as u128 + wide.cols() as u128) * wide.cols() as u128;
    if needed > DENSE_LIMIT {
        return Err(Error::Infeasible { needed, limit: DENSE_LIMIT });
    }
    let kernel = if wide.rows() == 0 { DenseMatrix::identity(wide.cols()) } else { kernel_basis(&wide)? };
    let gens: Vec<Vec<BigInt>> = (0..kernel.cols()).map(|j| kernel.column(j)[..c].to_vec()).collect();
    let x = DenseMatrix::from_columns(c, &gens);
    let z_basis = if x.cols() == 0 {
        DenseMatrix::zeros(c, 0)
    } else {
        let s = dense_smith(&x, true)?;
        let linv = s.left_inv.expect("transforms");
        let cols: Vec<Vec<BigInt>> =
            (0..s.rank).map(|i| linv.column(i).into_iter().map(|v| v * &s.diagonal[i]).collect()).collect();
        DenseMatrix::from_columns(c, &cols)
    };
    let b = hcat(d_in, rel_mid);
    Ok(Subquotient::new(z_basis, &b)?)
}

fn to_dense_big(m: &SparseMatrix<i64>) -> DenseMatrix<BigInt> {
    m.map(|&v| BigInt::from(v)).to_dense()
}

/// The (co)homology in degree `n` as a subquotient with explicit
/// representatives (dense; meant for small complexes).
pub fn homology_classes(res: &Resolution, m: &GModule, v: Variance, n: usize) -> Result<Subquotient<BigInt>> {
    check_module(res, m)?;
    check_degree(res, n)?;
    let k = m.rank();
    let act = action_rows(m);
    let (d_in, d_out, out_deg) = match v {
        Variance::Cochains => (differential::<i64>(res, v, n as isize - 1, k, &act), differential::<i64>(res, v, n as isize, k, &act), n + 1),
        Variance::Chains => (differential::<i64>(res, v, n as isize + 1, k, &act), differential::<i64>(res, v, n as isize, k, &act), n.wrapping_sub(1)),
    };
    let out_copies = if n == 0 && v == Variance::Chains { 0 } else { res.rank(out_deg) };
    let (rows, cols) = (d_out.rows() as u128, (d_out.cols() + out_copies * m.relations().cols()) as u128);
    if (rows + cols) * cols > DENSE_LIMIT {
        return Err(Error::Infeasible { needed: (rows + cols) * cols, limit: DENSE_LIMIT });
    }
    dense_subquotient(&to_dense_big(&d_in), &to_dense_big(&d_out), &relation_blocks(m, res.rank(n)), &relation_blocks(m, out_copies))
}

/// `H^n(G; M)` or `H_n(G; M)` computed from the given resolution.
pub fn homology_with(res: &Resolution, m: &GModule, v: Variance, n: usize) -> Result<AbelianGroup> {
    check_module(res, m)?;
    check_degree(res, n)?;
    if let Some((p, signs)) = m.as_signed_cyclic() {
        if let Some(dim) = prime_field_dimension(res, v, n, p, &signs) {
            return Ok(AbelianGroup::elementary(p, dim));
        }
    }
    if m.has_relations() {
        return Ok(homology_classes(res, m, v, n)?.group());
    }
    let k = m.rank();
    let act = action_rows(m);
    let d_in = match v {
        Variance::Cochains => differential::<i64>(res, v, n as isize - 1, k, &act),
        Variance::Chains => differential::<i64>(res, v, n as isize + 1, k, &act),
    };
    let divisors = small_elementary_divisors(&d_in);
    let c = res.rank(n) * k;
    // Positive degrees are annihilated by |G|, so only degree 0 can be free.
    let r_out = if n == 0 {
        small_rational_rank(&differential::<i64>(res, v, 0, k, &act), Some(c - divisors.len()))
    } else {
        c - divisors.len()
    };
    let torsion = divisors.iter().map(|d| d.to_u64().expect("torsion coefficient fits in u64"));
    Ok(AbelianGroup::from_cyclic_orders(c - divisors.len() - r_out, torsion))
}

/// `H^n(G; M)`, using the smallest available resolution.
pub fn cohomology(g: &FiniteGroup, m: &GModule, n: usize, limits: &Limits) -> Result<AbelianGroup> {
    let res = best_resolution(g, n + 1, limits)?;
    homology_with(&res, m, Variance::Cochains, n)
}

/// `H_n(G; M)`, using the smallest available resolution.
pub fn homology(g: &FiniteGroup, m: &GModule, n: usize, limits: &Limits) -> Result<AbelianGroup> {
    let res = best_resolution(g, n + 1, limits)?;
    homology_with(&res, m, Variance::Chains, n)
}

/// `H^0..=H^top` from one resolution.
pub fn cohomology_range(g: &FiniteGroup, m: &GModule, top: usize, limits: &Limits) -> Result<Vec<AbelianGroup>> {
    let res = best_resolution(g, top + 1, limits)?;
    (0..=top).map(|n| homology_with(&res, m, Variance::Cochains, n)).collect()
}

/// `H_0..=H_top` from one resolution.
pub fn homology_range(g: &FiniteGroup, m: &GModule, top: usize, limits: &Limits) -> Result<Vec<AbelianGroup>> {
    let res = best_resolution(g, top + 1, limits)?;
    (0..=top).map(|n| homology_with(&res, m, Variance::Chains, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{orientation_characters, parse_group};
    use crate::resolution::{bar_resolution, periodic_resolution};

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn twisted_c2() {
        let c2 = FiniteGroup::cyclic(2);
        let zw = GModule::twisted_integers(&orientation_characters(&c2)[0]);
        let h = cohomology_range(&c2, &zw, 5, &l()).unwrap();
        for (n, g) in h.iter().enumerate() {
            let expect = if n % 2 == 1 { AbelianGroup::cyclic(2) } else { AbelianGroup::trivial() };
            assert_eq!(g, &expect, "H^{n}");
        }
        let hh = homology_range(&c2, &zw, 4, &l()).unwrap();
        for (n, g) in hh.iter().enumerate() {
            let expect = if n % 2 == 0 { AbelianGroup::cyclic(2) } else { AbelianGroup::trivial() };
            assert_eq!(g, &expect, "H_{n}");
        }
    }

    #[test]
    fn cyclic_three() {
        let c3 = FiniteGroup::cyclic(3);
        let z = GModule::trivial_integers(&c3);
        assert_eq!(cohomology(&c3, &z, 2, &l()).unwrap(), AbelianGroup::cyclic(3));
        assert_eq!(cohomology(&c3, &z, 1, &l()).unwrap(), AbelianGroup::trivial());
        assert_eq!(cohomology(&c3, &z, 0, &l()).unwrap(), AbelianGroup::integers());
        assert_eq!(homology(&c3, &z, 1, &l()).unwrap(), AbelianGroup::cyclic(3));
        assert_eq!(homology(&c3, &z, 0, &l()).unwrap(), AbelianGroup::integers());
    }

    #[test]
    fn pulled_back_twist_on_c6() {
        let c6 = FiniteGroup::cyclic(6);
        let w = &orientation_characters(&c6)[0];
        let h = cohomology_range(&c6, &GModule::twisted_integers(w), 4, &l()).unwrap();
        let z2 = AbelianGroup::cyclic(2);
        assert_eq!(&h[1..], &[z2.clone(), AbelianGroup::trivial(), z2, AbelianGroup::trivial()]);
    }

    #[test]
    fn routes_agree() {
        // Free, field and dense routes on the same data.
        let g = parse_group("C2xC2").unwrap();
        let bar = bar_resolution(&g, 4, &l()).unwrap();
        let best = best_resolution(&g, 4, &l()).unwrap();
        let z2 = GModule::mod2(&g);
        for n in 0..=3 {
            let a = homology_with(&bar, &z2, Variance::Cochains, n).unwrap();
            let b = homology_with(&best, &z2, Variance::Cochains, n).unwrap();
            let c = homology_classes(&best, &z2, Variance::Cochains, n).unwrap().group();
            assert_eq!(a, b);
            assert_eq!(b, c);
            assert_eq!(a, AbelianGroup::elementary(2, n + 1));
        }
    }

    #[test]
    fn bar_matches_periodic_small() {
        let c4 = FiniteGroup::cyclic(4);
        let z = GModule::trivial_integers(&c4);
        let bar = bar_resolution(&c4, 4, &l()).unwrap();
        let per = periodic_resolution(&c4, 4).unwrap();
        for n in 0..=3 {
            assert_eq!(
                homology_with(&bar, &z, Variance::Cochains, n).unwrap(),
                homology_with(&per, &z, Variance::Cochains, n).unwrap()
            );
        }
    }
}
