//! Coefficient arithmetic used by the elimination engine.
//!
//! Every operation that can overflow returns `None`; the caller treats that as
//! a request to promote to a wider representation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) trait Ring {
    type Elem: Clone + std::fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Option<Self::Elem>;
    fn to_bigint(&self, e: &Self::Elem) -> BigInt;
    fn is_zero(&self, e: &Self::Elem) -> bool;
    fn is_unit(&self, e: &Self::Elem) -> bool;
    /// Compares absolute size (Euclidean norm).
    fn size_cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;
    /// Quotient `q` such that `a - q*p` has the smallest size available.
    fn quotient(&self, a: &Self::Elem, p: &Self::Elem) -> Option<Self::Elem>;
    /// `a - q*b`.
    fn sub_mul(&self, a: &Self::Elem, q: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    fn bits(&self, e: &Self::Elem) -> u64;
}

/// Machine integers with overflow detection.
pub(crate) struct CheckedI64;

impl Ring for CheckedI64 {
    type Elem = i64;

    fn zero(&self) -> i64 {
        0
    }

    fn from_bigint(&self, v: &BigInt) -> Option<i64> {
        v.to_i64()
    }

    fn to_bigint(&self, e: &i64) -> BigInt {
        BigInt::from(*e)
    }

    fn is_zero(&self, e: &i64) -> bool {
        *e == 0
    }

    fn is_unit(&self, e: &i64) -> bool {
        *e == 1 || *e == -1
    }

    fn size_cmp(&self, a: &i64, b: &i64) -> Ordering {
        a.unsigned_abs().cmp(&b.unsigned_abs())
    }

    fn quotient(&self, a: &i64, p: &i64) -> Option<i64> {
        let (a, p) = (i128::from(*a), i128::from(*p));
        // round to nearest so the remainder is at most |p|/2
        let q = a.div_euclid(p);
        let r = a - q * p;
        let q = if 2 * r.abs() > p.abs() { q + p.signum() } else { q };
        i64::try_from(q).ok()
    }

    fn sub_mul(&self, a: &i64, q: &i64, b: &i64) -> Option<i64> {
        q.checked_mul(*b).and_then(|qb| a.checked_sub(qb))
    }

    fn bits(&self, e: &i64) -> u64 {
        u64::from(64 - e.unsigned_abs().leading_zeros())
    }
}

/// Arbitrary precision integers.
pub(crate) struct BigZ;

impl Ring for BigZ {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn from_bigint(&self, v: &BigInt) -> Option<BigInt> {
        Some(v.clone())
    }

    fn to_bigint(&self, e: &BigInt) -> BigInt {
        e.clone()
    }

    fn is_zero(&self, e: &BigInt) -> bool {
        e.is_zero()
    }

    fn is_unit(&self, e: &BigInt) -> bool {
        e.abs().is_one()
    }

    fn size_cmp(&self, a: &BigInt, b: &BigInt) -> Ordering {
        a.magnitude().cmp(b.magnitude())
    }

    fn quotient(&self, a: &BigInt, p: &BigInt) -> Option<BigInt> {
        let modulus = p.abs();
        let (mut q, r) = a.div_mod_floor(&modulus);
        if r * 2 > modulus {
            q += 1;
        }
        Some(q * p.signum())
    }

    fn sub_mul(&self, a: &BigInt, q: &BigInt, b: &BigInt) -> Option<BigInt> {
        Some(a - q * b)
    }

    fn bits(&self, e: &BigInt) -> u64 {
        e.bits()
    }
}

/// The prime field Z/p, with `p < 2^32`.
pub(crate) struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub(crate) fn new(p: u64) -> Self {
        assert!((2..1 << 32).contains(&p), "prime field modulus out of range");
        PrimeField { p }
    }

    fn inv(&self, a: u64) -> u64 {
        // Fermat
        let mut result = 1u64;
        let mut base = a % self.p;
        let mut exp = self.p - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        result
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn from_bigint(&self, v: &BigInt) -> Option<u64> {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64()
    }

    fn to_bigint(&self, e: &u64) -> BigInt {
        BigInt::from(*e)
    }

    fn is_zero(&self, e: &u64) -> bool {
        *e == 0
    }

    fn is_unit(&self, e: &u64) -> bool {
        *e != 0
    }

    fn size_cmp(&self, _a: &u64, _b: &u64) -> Ordering {
        Ordering::Equal
    }

    fn quotient(&self, a: &u64, p: &u64) -> Option<u64> {
        Some(a * self.inv(*p) % self.p)
    }

    fn sub_mul(&self, a: &u64, q: &u64, b: &u64) -> Option<u64> {
        let qb = q * b % self.p;
        Some((a + self.p - qb) % self.p)
    }

    fn bits(&self, _e: &u64) -> u64 {
        32
    }
}
