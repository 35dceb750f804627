//! Exact scalar rings for the linear algebra layer.
//!
//! Everything downstream (Smith normal form, cochain complexes, cohomology)
//! is generic over [`Scalar`]: a commutative ring with a Euclidean division
//! and *checked* arithmetic. Machine integers report overflow instead of
//! wrapping so callers can redo a computation over [`BigInt`]; the prime
//! fields never overflow.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A Euclidean ring element with checked arithmetic.
pub trait Scalar: Clone + Debug + PartialEq + Send + Sync + Zero + One + 'static {
    /// True when every nonzero element is invertible.
    const IS_FIELD: bool;

    fn checked_add_s(&self, other: &Self) -> Option<Self>;
    fn checked_sub_s(&self, other: &Self) -> Option<Self>;
    fn checked_mul_s(&self, other: &Self) -> Option<Self>;
    fn checked_neg_s(&self) -> Option<Self>;

    fn is_unit(&self) -> bool;
    /// Inverse of a unit. Callers must check [`Scalar::is_unit`] first.
    fn unit_inverse(&self) -> Self;

    /// `self = q * d + r` with `size(r) < size(d)`.
    fn div_rem_euclid(&self, d: &Self) -> Option<(Self, Self)>;

    /// Euclidean size used for pivot choice; 0 only for zero.
    fn size(&self) -> u128;

    /// Canonical associate (nonnegative for integers).
    fn normalized(&self) -> Self;

    fn from_i64(v: i64) -> Self;

    /// Integer representative (for fields: the least nonnegative one).
    fn to_bigint(&self) -> BigInt;
}

macro_rules! impl_scalar_int {
    ($t:ty) => {
        impl Scalar for $t {
            const IS_FIELD: bool = false;

            fn checked_add_s(&self, other: &Self) -> Option<Self> {
                self.checked_add(other)
            }
            fn checked_sub_s(&self, other: &Self) -> Option<Self> {
                self.checked_sub(other)
            }
            fn checked_mul_s(&self, other: &Self) -> Option<Self> {
                self.checked_mul(other)
            }
            fn checked_neg_s(&self) -> Option<Self> {
                <$t>::checked_neg(*self)
            }
            fn is_unit(&self) -> bool {
                *self == 1 || *self == -1
            }
            fn unit_inverse(&self) -> Self {
                *self
            }
            fn div_rem_euclid(&self, d: &Self) -> Option<(Self, Self)> {
                if *d == 0 {
                    return None;
                }
                let q = self.checked_div_euclid(*d)?;
                let r = self.checked_rem_euclid(*d)?;
                // Symmetric remainder keeps entries small.
                let ad = d.checked_abs()?;
                if r.checked_mul(2)? > ad {
                    let r2 = r.checked_sub(ad)?;
                    let q2 = if *d > 0 { q.checked_add(1)? } else { q.checked_sub(1)? };
                    return Some((q2, r2));
                }
                Some((q, r))
            }
            fn size(&self) -> u128 {
                self.unsigned_abs() as u128
            }
            fn normalized(&self) -> Self {
                self.abs()
            }
            fn from_i64(v: i64) -> Self {
                v as $t
            }
            fn to_bigint(&self) -> BigInt {
                BigInt::from(*self)
            }
        }
    };
}

impl_scalar_int!(i64);
impl_scalar_int!(i128);

impl Scalar for BigInt {
    const IS_FIELD: bool = false;

    fn checked_add_s(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_sub_s(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn checked_mul_s(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_neg_s(&self) -> Option<Self> {
        Some(-self)
    }
    fn is_unit(&self) -> bool {
        self.is_one() || (-self).is_one()
    }
    fn unit_inverse(&self) -> Self {
        self.clone()
    }
    fn div_rem_euclid(&self, d: &Self) -> Option<(Self, Self)> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_mod_floor(d);
        // Bring the remainder into [0, |d|) and then into the symmetric range.
        let ad = d.abs();
        let (mut q, mut r) = if r.is_negative() {
            (q + if d.is_positive() { -1 } else { 1 }, r + &ad)
        } else {
            (q, r)
        };
        if (&r * 2u32) > ad {
            r -= &ad;
            q += if d.is_positive() { 1 } else { -1 };
        }
        Some((q, r))
    }
    fn size(&self) -> u128 {
        self.abs().to_u128().unwrap_or(u128::MAX)
    }
    fn normalized(&self) -> Self {
        self.abs()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// The field with two elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Gf2(pub bool);

#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Add for Gf2 {
    type Output = Gf2;
    fn add(self, o: Gf2) -> Gf2 {
        Gf2(self.0 ^ o.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Mul for Gf2 {
    type Output = Gf2;
    fn mul(self, o: Gf2) -> Gf2 {
        Gf2(self.0 & o.0)
    }
}

impl Zero for Gf2 {
    fn zero() -> Self {
        Gf2(false)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for Gf2 {
    fn one() -> Self {
        Gf2(true)
    }
}

impl Scalar for Gf2 {
    const IS_FIELD: bool = true;

    fn checked_add_s(&self, other: &Self) -> Option<Self> {
        Some(*self + *other)
    }
    fn checked_sub_s(&self, other: &Self) -> Option<Self> {
        Some(*self + *other)
    }
    fn checked_mul_s(&self, other: &Self) -> Option<Self> {
        Some(*self * *other)
    }
    fn checked_neg_s(&self) -> Option<Self> {
        Some(*self)
    }
    fn is_unit(&self) -> bool {
        self.0
    }
    fn unit_inverse(&self) -> Self {
        *self
    }
    fn div_rem_euclid(&self, d: &Self) -> Option<(Self, Self)> {
        d.0.then_some((*self, Gf2(false)))
    }
    fn size(&self) -> u128 {
        self.0 as u128
    }
    fn normalized(&self) -> Self {
        *self
    }
    fn from_i64(v: i64) -> Self {
        Gf2(v.rem_euclid(2) == 1)
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(self.0 as u8)
    }
}

/// The prime field of order `P`. `P` must be prime and below 2^32.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ModP<const P: u64>(u64);

/// A Mersenne prime used for fast rational rank bounds.
pub type LargePrimeField = ModP<2_147_483_647>;

impl<const P: u64> ModP<P> {
    pub fn new(v: i64) -> Self {
        ModP(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        ModP(acc)
    }
}

impl<const P: u64> std::ops::Add for ModP<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        ModP((self.0 + o.0) % P)
    }
}

impl<const P: u64> std::ops::Mul for ModP<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        ModP(self.0 * o.0 % P)
    }
}

impl<const P: u64> Zero for ModP<P> {
    fn zero() -> Self {
        ModP(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for ModP<P> {
    fn one() -> Self {
        ModP(1 % P)
    }
}

impl<const P: u64> Scalar for ModP<P> {
    const IS_FIELD: bool = true;

    fn checked_add_s(&self, other: &Self) -> Option<Self> {
        Some(*self + *other)
    }
    fn checked_sub_s(&self, other: &Self) -> Option<Self> {
        Some(ModP((self.0 + P - other.0) % P))
    }
    fn checked_mul_s(&self, other: &Self) -> Option<Self> {
        Some(*self * *other)
    }
    fn checked_neg_s(&self) -> Option<Self> {
        Some(ModP((P - self.0) % P))
    }
    fn is_unit(&self) -> bool {
        self.0 != 0
    }
    fn unit_inverse(&self) -> Self {
        self.pow(P - 2)
    }
    fn div_rem_euclid(&self, d: &Self) -> Option<(Self, Self)> {
        if d.0 == 0 {
            return None;
        }
        Some((*self * d.unit_inverse(), ModP(0)))
    }
    fn size(&self) -> u128 {
        (self.0 != 0) as u128
    }
    fn normalized(&self) -> Self {
        if self.0 == 0 {
            *self
        } else {
            ModP(1)
        }
    }
    fn from_i64(v: i64) -> Self {
        ModP::new(v)
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(self.0)
    }
}

/// Converts a machine integer to any scalar, reducing for fields.
pub fn scalar<T: Scalar>(v: i64) -> T {
    T::from_i64(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_remainder_is_small() {
        for a in -20i64..=20 {
            for d in [-7i64, -3, -2, 2, 3, 7] {
                let (q, r) = a.div_rem_euclid(&d).unwrap();
                assert_eq!(q * d + r, a);
                assert!(2 * r.abs() <= d.abs());
                let (bq, br) = BigInt::from(a).div_rem_euclid(&BigInt::from(d)).unwrap();
                assert_eq!(bq * d + &br, BigInt::from(a));
                assert!(br.size() * 2 <= d.unsigned_abs() as u128);
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(i64::MAX.checked_add_s(&1), None);
        assert_eq!(i64::MIN.checked_neg_s(), None);
    }

    #[test]
    fn prime_field_inverse() {
        type F7 = ModP<7>;
        for v in 1..7 {
            let x = F7::new(v);
            assert_eq!(x * x.unit_inverse(), F7::one());
        }
        let big = LargePrimeField::new(-5);
        assert_eq!(big * big.unit_inverse(), LargePrimeField::one());
    }
}
