//! Exact coefficient fields: arbitrary-precision rationals and prime fields.
//!
//! Elements are plain values (`BigRational`, `u64` residues); the operations
//! live on a small context object implementing [`Field`]. Every operation is
//! exact — there is no floating point anywhere in this crate.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact field of coefficients.
///
/// The context object carries whatever state the field needs (the modulus,
/// for prime fields) so that elements stay plain data. All implementations
/// are pure; contexts and elements are freely shareable across threads.
#[allow(clippy::wrong_self_convention)] // constructors need the field context
pub trait Field: Clone + PartialEq + Debug {
    type Elem: Clone + PartialEq + Eq + PartialOrd + Ord + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Parse an unsigned decimal integer of arbitrary length into the field.
    fn from_decimal_str(&self, digits: &str) -> Option<Self::Elem>;
    /// `0` means characteristic zero.
    fn characteristic(&self) -> u64;
    /// Sign and magnitude rendering for the polynomial text grammar.
    /// Prime-field residues are always rendered non-negative.
    fn display_parts(&self, a: &Self::Elem) -> (bool, String);

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// `n!` computed inside the field.
    fn factorial(&self, n: u32) -> Self::Elem {
        let mut acc = self.one();
        for i in 2..=n {
            acc = self.mul(&acc, &self.from_i64(i as i64));
        }
        acc
    }
}

/// The field of arbitrary-precision rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

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
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_decimal_str(&self, digits: &str) -> Option<BigRational> {
        BigInt::parse_bytes(digits.as_bytes(), 10).map(BigRational::from_integer)
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn display_parts(&self, a: &BigRational) -> (bool, String) {
        let neg = a.is_negative();
        let abs = if neg { -a } else { a.clone() };
        if abs.is_integer() {
            (neg, abs.numer().to_string())
        } else {
            let mut s = abs.numer().to_string();
            s.push('/');
            s.push_str(&abs.denom().to_string());
            (neg, s)
        }
    }
}

/// The prime field `F_p`, elements stored as residues in `0..p`.
///
/// The modulus is capped below 2^31 so that products of residues never
/// overflow `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < (1 << 31) && is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(Error::InvalidModulus(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// All residues `0..p`, for exhaustive loops.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
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

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    fn from_decimal_str(&self, digits: &str) -> Option<u64> {
        let mut acc = 0u64;
        if digits.is_empty() {
            return None;
        }
        for c in digits.chars() {
            let d = c.to_digit(10)? as u64;
            acc = (acc * 10 + d) % self.p;
        }
        Some(acc)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn display_parts(&self, a: &u64) -> (bool, String) {
        (false, a.to_string())
    }
}

/// Field selector used by callers that pick the coefficient field at runtime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    /// Exact arbitrary-precision rationals (stands in for characteristic 0).
    Rationals,
    /// The prime field `F_p`.
    Prime(u64),
}

impl FieldSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::Prime(p) => PrimeField::new(*p).map(|_| ()),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }
}

/// Guard shared by every operation built on formal partial derivatives:
/// accept characteristic 0 or `p` strictly larger than every degree in play.
pub fn check_apolarity_characteristic(characteristic: u64, max_degree: u32) -> Result<()> {
    if characteristic != 0 && characteristic <= max_degree as u64 {
        return Err(Error::SmallCharacteristic {
            p: characteristic,
            max_degree,
        });
    }
    Ok(())
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Inverse table for a small prime field, used by enumeration hot loops.
pub(crate) fn inverse_table(field: &PrimeField) -> Vec<u64> {
    let mut t = Vec::with_capacity(field.modulus() as usize);
    t.push(0);
    for a in 1..field.modulus() {
        t.push(field.inv(&a).unwrap());
    }
    t
}
