//! Exact coefficient fields: prime fields `F_p` with `p < 2^32` and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which field an ideal lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl FieldSpec {
    pub const DEFAULT_PRIME: u64 = 32003;

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rationals => 0,
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(Self::DEFAULT_PRIME)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "Fp {p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

/// Field operations on an element type. Implementations are small context
/// objects; elements do not carry their field.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, v: &BigInt) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, v: &BigRational) -> Self::Elem {
        let num = self.from_int(v.numer());
        let den = self.from_int(v.denom());
        self.mul(&num, &self.inv(&den))
    }
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_int(&BigInt::from(v))
    }
    /// Random element used for generic linear combinations.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Integer representative when one exists (used for printing and tests).
    fn to_bigint(&self, a: &Self::Elem) -> Option<BigInt>;
    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a - c * b`
    #[inline]
    fn sub_mul(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(c, b))
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut q = 3u64;
    while q.saturating_mul(q) <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 2;
    }
    true
}

/// `F_p` with elements stored as canonical residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1u64 << 32)).contains(&p) {
            return Err(Error::CharacteristicOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        self.pow(*a, self.p - 2)
    }
    fn from_int(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits")
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    #[inline]
    fn sub_mul(&self, a: &u64, c: &u64, b: &u64) -> u64 {
        let prod = c * b % self.p;
        self.sub(a, &prod)
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn to_bigint(&self, a: &u64) -> Option<BigInt> {
        Some(BigInt::from(*a))
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// The rationals with arbitrary precision. Correct but slow; intended for
/// cross-checking small instances.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
    fn from_int(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn from_rational(&self, v: &BigRational) -> BigRational {
        v.clone()
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        BigRational::from_integer(BigInt::from(rng.gen_range(-50i64..=50)))
    }
    fn to_bigint(&self, a: &BigRational) -> Option<BigInt> {
        a.is_integer().then(|| a.to_integer())
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.to_integer().to_string()
        } else if a.is_negative() {
            format!("-({})", -a)
        } else {
            a.to_string()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_checks() {
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(101).is_ok());
        assert_eq!(PrimeField::new(100), Err(Error::NotPrime(100)));
        assert_eq!(PrimeField::new(1), Err(Error::CharacteristicOutOfRange(1)));
        assert!(PrimeField::new(4294967311).is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(101).unwrap();
        assert_eq!(f.add(&100, &5), 4);
        assert_eq!(f.sub(&3, &5), 99);
        assert_eq!(f.neg(&0), 0);
        for a in 1..101 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.from_i64(-1), 100);
        assert_eq!(f.from_int(&BigInt::from(-203)), 100);
        assert_eq!(f.from_int(&BigInt::from(-204)), 99);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.mul(&f.from_rational(&half), &2), 1);
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let q = Rationals;
        let big = q.from_int(&BigInt::from(u64::MAX));
        let sq = q.mul(&big, &big);
        assert_eq!(
            q.to_bigint(&sq).unwrap(),
            BigInt::from(u64::MAX) * BigInt::from(u64::MAX)
        );
        let third = q.inv(&q.from_i64(3));
        assert_eq!(q.mul(&third, &q.from_i64(3)), q.one());
        assert_eq!(q.format(&q.neg(&third)), "-(1/3)");
    }
}
