//! Exact coefficient fields: the rationals and the prime fields `F_p`.
//!
//! [`FieldDesc`] and [`FieldElem`] are the runtime-tagged public surface.
//! Polynomial kernels work through the [`Arith`] trait instead, so their
//! inner loops are monomorphic (`BigRational` or a bare `u64` residue).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A coefficient field: `Q` or `F_p` for a verified prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FieldDesc {
    #[serde(rename = "q")]
    Rationals,
    #[serde(rename = "fp")]
    PrimeField { p: u64 },
}

impl FieldDesc {
    pub fn rationals() -> Self {
        FieldDesc::Rationals
    }

    /// Moduli at or above this bound are rejected; residues are then
    /// multiplied in plain `u64`.
    pub const MAX_MODULUS: u64 = 1 << 32;

    /// `F_p`; `p` must pass a deterministic primality test and lie below
    /// [`FieldDesc::MAX_MODULUS`].
    pub fn prime(p: u64) -> Result<Self> {
        if p >= Self::MAX_MODULUS {
            return Err(Error::PreconditionViolated(format!("modulus {p} is not below 2^32")));
        }
        if is_prime_u64(p) {
            Ok(FieldDesc::PrimeField { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// 0 for `Q`, `p` for `F_p`.
    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldDesc::Rationals => 0,
            FieldDesc::PrimeField { p } => p,
        }
    }

    pub fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElem {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElem {
        match *self {
            FieldDesc::Rationals => FieldElem::Rational(BigRational::from_integer(v.clone())),
            FieldDesc::PrimeField { p } => FieldElem::Residue {
                value: FpArith(p).lift_bigint(v),
                p,
            },
        }
    }

    /// Parses a literal: a decimal integer or `a/b`.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad integer `{num}`")))?;
        let den = match den {
            Some(d) => BigInt::from_str(d).map_err(|_| Error::Parse(format!("bad integer `{d}`")))?,
            None => BigInt::one(),
        };
        let n = self.from_bigint(&num);
        let d = self.from_bigint(&den);
        n.div(&d).map_err(|_| Error::Parse(format!("zero denominator in `{s}`")))
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rationals => write!(f, "Q"),
            FieldDesc::PrimeField { p } => write!(f, "F_{p}"),
        }
    }
}

/// An element of `Q` (always reduced, positive denominator) or of `F_p`
/// (always in `[0, p)`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(BigRational),
    Residue { value: u64, p: u64 },
}

impl FieldElem {
    pub fn field(&self) -> FieldDesc {
        match self {
            FieldElem::Rational(_) => FieldDesc::Rationals,
            FieldElem::Residue { p, .. } => FieldDesc::PrimeField { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(r) => r.is_zero(),
            FieldElem::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(r) => r.is_one(),
            FieldElem::Residue { value, .. } => *value == 1,
        }
    }

    /// Re-reduces the value; a no-op on anything built through this API.
    pub fn canonical(&self) -> FieldElem {
        match self {
            FieldElem::Rational(r) => FieldElem::Rational(r.reduced()),
            FieldElem::Residue { value, p } => FieldElem::Residue { value: value % p, p: *p },
        }
    }

    fn binop(
        &self,
        other: &FieldElem,
        q: impl Fn(&BigRational, &BigRational) -> BigRational,
        fp: impl Fn(&FpArith, u64, u64) -> u64,
    ) -> Result<FieldElem> {
        match (self, other) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => Ok(FieldElem::Rational(q(a, b))),
            (FieldElem::Residue { value: a, p }, FieldElem::Residue { value: b, p: p2 }) if p == p2 => {
                Ok(FieldElem::Residue { value: fp(&FpArith(*p), *a, *b), p: *p })
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.binop(other, |a, b| a + b, |f, a, b| f.add(&a, &b))
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.binop(other, |a, b| a - b, |f, a, b| f.sub(&a, &b))
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.binop(other, |a, b| a * b, |f, a, b| f.mul(&a, &b))
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(-a),
            FieldElem::Residue { value, p } => FieldElem::Residue { value: FpArith(*p).neg(value), p: *p },
        }
    }

    pub fn inv(&self) -> Result<FieldElem> {
        match self {
            FieldElem::Rational(a) => QArith.inv(a).map(FieldElem::Rational),
            FieldElem::Residue { value, p } => FpArith(*p)
                .inv(value)
                .map(|value| FieldElem::Residue { value, p: *p }),
        }
        .ok_or(Error::DivisionByZero)
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        self.mul(&other.inv()?)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(r) => write!(f, "{}", fmt_rational(r)),
            FieldElem::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Deterministic trial division; moduli here are desk-scale.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Field arithmetic on bare elements. Implemented by [`QArith`] and
/// [`FpArith`]; the polynomial kernels are generic over it.
pub trait Arith: Clone + Send + Sync {
    type E: Clone + PartialEq + Eq + std::hash::Hash + fmt::Debug + Send + Sync;

    /// Whether Euclid should make every remainder monic (keeps rational
    /// coefficients from growing; pointless over `F_p`).
    const MONIC_REMAINDERS: bool;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Option<Self::E>;
    fn lift_bigint(&self, v: &BigInt) -> Self::E;

    fn is_one(&self, a: &Self::E) -> bool {
        *a == self.one()
    }

    fn lift_i64(&self, v: i64) -> Self::E {
        self.lift_bigint(&BigInt::from(v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QArith;

impl Arith for QArith {
    type E = BigRational;
    const MONIC_REMAINDERS: bool = true;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn lift_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FpArith(pub u64);

impl FpArith {
    pub fn modulus(&self) -> u64 {
        self.0
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

impl Arith for FpArith {
    type E = u64;
    const MONIC_REMAINDERS: bool = false;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.0 - (b - a)
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let g = (*a as i128).extended_gcd(&(self.0 as i128));
        (g.gcd == 1).then(|| g.x.rem_euclid(self.0 as i128) as u64)
    }
    fn lift_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.0);
        let r = v.mod_floor(&m);
        debug_assert!(!r.is_negative());
        r.to_u64().expect("residue fits in u64")
    }
    fn lift_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.0 as i128) as u64
    }
}
