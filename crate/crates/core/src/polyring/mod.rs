//! The ring `R = K[x]` over `K = Q` or `K = F_p`.
//!
//! `K[x]` is a principal ideal domain, so every ideal has a unique monic
//! generator (or is zero). Associatedness, ideal equality and ideal
//! coprimality are all decided on monic normal forms.

pub mod dense;
mod parse;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::coeff::{fmt_rational, FieldDesc, FieldElem, FpArith, QArith};
use crate::error::{Error, Result};

/// A univariate polynomial over `Q` or `F_p`, coefficients lowest degree
/// first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) enum Repr {
    Q(Vec<BigRational>),
    Fp(u64, Vec<u64>),
}

/// Runs `$body` with `$ar` bound to the field kernel and `$x` to the
/// coefficient slice; `$wrap` turns a coefficient vector back into a `Poly`.
macro_rules! unary {
    ($a:expr, $ar:ident, $x:ident, $wrap:ident => $body:expr) => {
        match &$a.repr {
            Repr::Q($x) => {
                let $ar = QArith;
                #[allow(unused)]
                let $wrap = |v: Vec<BigRational>| Poly { repr: Repr::Q(v) };
                $body
            }
            Repr::Fp(p, $x) => {
                let $ar = FpArith(*p);
                #[allow(unused)]
                let $wrap = |v: Vec<u64>| Poly { repr: Repr::Fp(*p, v) };
                $body
            }
        }
    };
}

/// As [`unary!`] for two operands; evaluates to `Err(FieldMismatch)` when
/// the fields differ, otherwise `Ok($body)`.
macro_rules! binary {
    ($a:expr, $b:expr, $ar:ident, $x:ident, $y:ident, $wrap:ident => $body:expr) => {
        match (&$a.repr, &$b.repr) {
            (Repr::Q($x), Repr::Q($y)) => {
                let $ar = QArith;
                #[allow(unused)]
                let $wrap = |v: Vec<BigRational>| Poly { repr: Repr::Q(v) };
                Ok($body)
            }
            (Repr::Fp(p, $x), Repr::Fp(p2, $y)) if p == p2 => {
                let $ar = FpArith(*p);
                #[allow(unused)]
                let $wrap = |v: Vec<u64>| Poly { repr: Repr::Fp(*p, v) };
                Ok($body)
            }
            _ => Err(Error::FieldMismatch),
        }
    };
}

impl Poly {
    pub(crate) fn from_fp_vec(p: u64, mut v: Vec<u64>) -> Poly {
        dense::trim(&FpArith(p), &mut v);
        Poly { repr: Repr::Fp(p, v) }
    }

    pub(crate) fn from_q_vec(mut v: Vec<BigRational>) -> Poly {
        dense::trim(&QArith, &mut v);
        Poly { repr: Repr::Q(v) }
    }

    /// Residue coefficients when the field is `F_p`.
    pub fn fp_coeffs(&self) -> Option<(u64, &[u64])> {
        match &self.repr {
            Repr::Fp(p, v) => Some((*p, v)),
            Repr::Q(_) => None,
        }
    }

    pub fn zero(field: FieldDesc) -> Poly {
        match field {
            FieldDesc::Rationals => Poly { repr: Repr::Q(Vec::new()) },
            FieldDesc::PrimeField { p } => Poly { repr: Repr::Fp(p, Vec::new()) },
        }
    }

    pub fn one(field: FieldDesc) -> Poly {
        Poly::constant(&field.one())
    }

    /// The indeterminate `x`.
    pub fn x(field: FieldDesc) -> Poly {
        Poly::monomial(&field.one(), 1)
    }

    pub fn constant(c: &FieldElem) -> Poly {
        Poly::monomial(c, 0)
    }

    /// `c * x^k`.
    pub fn monomial(c: &FieldElem, k: usize) -> Poly {
        let fd = c.field();
        let mut coeffs = vec![fd.zero(); k];
        coeffs.push(c.clone());
        Poly::from_coeffs(fd, coeffs).expect("coefficients share the field")
    }

    /// Builds a polynomial from lowest-degree-first coefficients.
    pub fn from_coeffs(field: FieldDesc, coeffs: Vec<FieldElem>) -> Result<Poly> {
        match field {
            FieldDesc::Rationals => {
                let v = coeffs
                    .into_iter()
                    .map(|c| match c {
                        FieldElem::Rational(r) => Ok(r),
                        _ => Err(Error::FieldMismatch),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Poly::from_q_vec(v))
            }
            FieldDesc::PrimeField { p } => {
                let v = coeffs
                    .into_iter()
                    .map(|c| match c {
                        FieldElem::Residue { value, p: q } if q == p => Ok(value),
                        _ => Err(Error::FieldMismatch),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Poly::from_fp_vec(p, v))
            }
        }
    }

    /// Integer coefficients mapped into `field`, lowest degree first.
    pub fn from_i64s(field: FieldDesc, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
            .expect("coefficients share the field")
    }

    /// Parses the polynomial expression grammar, e.g. `x^2 - 3x + 1/2`.
    pub fn parse(field: FieldDesc, s: &str) -> Result<Poly> {
        parse::parse_poly(field, s)
    }

    pub fn field(&self) -> FieldDesc {
        match &self.repr {
            Repr::Q(_) => FieldDesc::Rationals,
            Repr::Fp(p, _) => FieldDesc::PrimeField { p: *p },
        }
    }

    pub fn len(&self) -> usize {
        unary!(self, _ar, v, _w => v.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.len() <= 1
    }

    pub fn coeffs(&self) -> Vec<FieldElem> {
        match &self.repr {
            Repr::Q(v) => v.iter().cloned().map(FieldElem::Rational).collect(),
            Repr::Fp(p, v) => v.iter().map(|&value| FieldElem::Residue { value, p: *p }).collect(),
        }
    }

    pub fn coeff(&self, k: usize) -> FieldElem {
        match &self.repr {
            Repr::Q(v) => FieldElem::Rational(v.get(k).cloned().unwrap_or_else(BigRational::zero)),
            Repr::Fp(p, v) => FieldElem::Residue { value: v.get(k).copied().unwrap_or(0), p: *p },
        }
    }

    /// Leading coefficient; `None` for zero.
    pub fn leading(&self) -> Option<FieldElem> {
        self.degree().map(|d| self.coeff(d))
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        binary!(self, other, ar, a, b, wrap => wrap(dense::add(&ar, a, b)))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        binary!(self, other, ar, a, b, wrap => wrap(dense::sub(&ar, a, b)))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        binary!(self, other, ar, a, b, wrap => wrap(dense::mul(&ar, a, b)))
    }

    pub fn neg(&self) -> Poly {
        unary!(self, ar, a, wrap => wrap(dense::neg(&ar, a)))
    }

    pub fn pow(&self, e: u64) -> Poly {
        unary!(self, ar, a, wrap => wrap(dense::pow(&ar, a, e)))
    }

    pub fn scale(&self, c: &FieldElem) -> Result<Poly> {
        self.mul(&Poly::constant(c))
    }

    /// `(q, r)` with `self = q * b + r` and `deg r < deg b`.
    pub fn divrem(&self, b: &Poly) -> Result<(Poly, Poly)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        binary!(self, b, ar, x, y, wrap => {
            let (q, r) = dense::divrem(&ar, x, y);
            (wrap(q), wrap(r))
        })
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        binary!(self, b, ar, x, y, wrap => wrap(dense::rem(&ar, x, y)))
    }

    /// `self / b`, failing with `NotDivisible` on a nonzero remainder.
    pub fn exact_div(&self, b: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        if self.is_zero() {
            return Ok(other.is_zero());
        }
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        binary!(self, other, ar, a, b, wrap => wrap(dense::gcd(&ar, a, b)))
    }

    /// The monic associate (zero stays zero).
    pub fn monic(&self) -> Poly {
        unary!(self, ar, a, wrap => wrap(dense::monic(&ar, a)))
    }

    pub fn derivative(&self) -> Poly {
        unary!(self, ar, a, wrap => wrap(dense::derivative(&ar, a)))
    }

    /// Units of `K[x]` are the nonzero constants.
    pub fn is_unit(&self) -> bool {
        self.degree() == Some(0)
    }

    /// `self = u * other` for a unit `u`.
    pub fn is_associated(&self, other: &Poly) -> bool {
        self.field() == other.field() && self.monic() == other.monic()
    }

    /// `<self> + <other> = R`, i.e. the gcd is a unit.
    pub fn ideals_coprime(&self, other: &Poly) -> bool {
        self.gcd(other).is_ok_and(|g| g.is_unit())
    }

    /// Largest `k` with `q^k | self`.
    pub fn valuation(&self, q: &Poly) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroArgument);
        }
        if q.is_constant() {
            return Err(Error::PreconditionViolated("valuation base must be non-constant".into()));
        }
        let mut h = self.clone();
        let mut k = 0;
        loop {
            let (quot, r) = h.divrem(q)?;
            if !r.is_zero() {
                return Ok(k);
            }
            h = quot;
            k += 1;
        }
    }

    /// Evaluates at a field element (Horner).
    pub fn eval(&self, at: &FieldElem) -> Result<FieldElem> {
        let mut acc = self.field().zero();
        for c in self.coeffs().iter().rev() {
            acc = acc.mul(at)?.add(c)?;
        }
        Ok(acc)
    }

    /// Rational coefficients when the field is `Q`.
    pub(crate) fn q_coeffs(&self) -> Option<&[BigRational]> {
        match &self.repr {
            Repr::Q(v) => Some(v),
            Repr::Fp(..) => None,
        }
    }
}

/// An ideal of `K[x]`, held by its monic generator (or zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonicIdeal {
    generator: Poly,
}

impl MonicIdeal {
    pub fn generated_by(a: &Poly) -> MonicIdeal {
        MonicIdeal { generator: a.monic() }
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    /// `true` for `<1> = R`.
    pub fn is_whole_ring(&self) -> bool {
        self.generator.is_unit()
    }

    pub fn is_coprime_to(&self, other: &MonicIdeal) -> bool {
        self.generator.ideals_coprime(&other.generator)
    }

    /// `self | other` as ideals, i.e. `other ⊆ self`.
    pub fn divides(&self, other: &MonicIdeal) -> bool {
        self.generator.divides(&other.generator).unwrap_or(false)
    }
}

impl fmt::Display for MonicIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.generator)
    }
}

macro_rules! panicking_op {
    ($tr:ident, $m:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            /// Panics if the operands live over different fields.
            fn $m(self, rhs: &Poly) -> Poly {
                Poly::$m(self, rhs).expect("polynomials over the same field")
            }
        }
    };
}

panicking_op!(Add, add);
panicking_op!(Sub, sub);
panicking_op!(Mul, mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

fn fmt_term(out: &mut String, coeff_str: String, negative: bool, k: usize, var: &str) {
    let first = out.is_empty();
    if negative {
        out.push('-');
    } else if !first {
        out.push('+');
    }
    let mono = match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    };
    if k == 0 {
        out.push_str(&coeff_str);
    } else if coeff_str == "1" {
        out.push_str(&mono);
    } else {
        out.push_str(&coeff_str);
        out.push('*');
        out.push_str(&mono);
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        match &self.repr {
            Repr::Q(v) => {
                for (k, c) in v.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
                    fmt_term(&mut out, fmt_rational(&c.abs()), c.is_negative(), k, "x");
                }
            }
            Repr::Fp(_, v) => {
                for (k, c) in v.iter().enumerate().rev().filter(|(_, c)| **c != 0) {
                    fmt_term(&mut out, c.to_string(), false, k, "x");
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// Serializes as the canonical text form; the field travels separately.
impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field(), self)
    }
}
