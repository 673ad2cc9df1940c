//! Squarefree decomposition over `Q` and `F_p`, and complete factorization
//! over `F_p` (distinct-degree, then Cantor–Zassenhaus equal-degree
//! splitting with the trace map for `p = 2`).
//!
//! Over `Q` only linear and quadratic factors are searched for
//! ([`small_factors_q`]); nothing else in the crate needs rational
//! factorization.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{FieldDesc, FieldElem, FpArith};
use crate::error::{Error, Result};
use crate::polyring::{dense, Poly};

/// Seed used by [`factor_fp`] so that reports are reproducible.
pub const DEFAULT_SEED: u64 = 0x5eed_d1f5;

/// `unit * prod(factor^exp)`, factors monic and sorted by degree then by
/// coefficient sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElem,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies everything back out.
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(&self.unit), |acc, (f, e)| &acc * &f.pow(u64::from(*e)))
    }

    fn sort(&mut self) {
        self.factors.sort_by(|(a, ea), (b, eb)| canonical_order(a, b).then(ea.cmp(eb)));
    }
}

/// Degree first, then coefficients from the constant term up.
pub fn canonical_order(a: &Poly, b: &Poly) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| match (a.fp_coeffs(), b.fp_coeffs()) {
        (Some((_, x)), Some((_, y))) => x.cmp(y),
        _ => a.q_coeffs().cmp(&b.q_coeffs()),
    })
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() || !self.unit.is_one() {
            write!(f, "{}", self.unit)?;
            if !self.factors.is_empty() {
                f.write_str("*")?;
            }
        }
        for (p, e) in &self.factors {
            if *e == 1 {
                write!(f, "({p})")?;
            } else {
                write!(f, "({p})^{e}")?;
            }
        }
        Ok(())
    }
}

/// Squarefree decomposition: pairwise coprime squarefree monic parts with
/// distinct multiplicities (Yun over `Q`; over `F_p` the derivative-vanishing
/// case recurses on the `p`-th root).
pub fn squarefree_decomp(h: &Poly) -> Result<Factorization> {
    let unit = h.leading().ok_or(Error::ZeroArgument)?;
    let monic = h.monic();
    let mut factors = match h.field() {
        FieldDesc::Rationals => yun(&monic),
        FieldDesc::PrimeField { p } => sff_fp(&monic, p),
    };
    factors.retain(|(f, _)| !f.is_unit());
    let mut out = Factorization { unit, factors };
    out.sort();
    Ok(out)
}

fn yun(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df).unwrap();
    let mut b = f.exact_div(&a0).unwrap();
    let mut c = df.exact_div(&a0).unwrap();
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_unit() {
        let a = b.gcd(&d).unwrap();
        b = b.exact_div(&a).unwrap();
        c = d.exact_div(&a).unwrap();
        d = &c - &b.derivative();
        if !a.is_unit() {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// `g(x^p) -> g(x)`; over a prime field the coefficient `p`-th root is the
/// identity.
fn pth_root(f: &Poly, p: u64) -> Poly {
    let (_, v) = f.fp_coeffs().expect("prime field");
    let step = p as usize;
    Poly::from_fp_vec(p, v.iter().step_by(step).copied().collect())
}

fn sff_fp(f: &Poly, p: u64) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        for (g, e) in sff_fp(&pth_root(f, p), p) {
            out.push((g, e * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&df).unwrap();
    let mut w = f.exact_div(&c).unwrap();
    let mut i = 1;
    while !w.is_unit() {
        let y = w.gcd(&c).unwrap();
        let fac = w.exact_div(&y).unwrap();
        if !fac.is_unit() {
            out.push((fac, i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w).unwrap();
    }
    if !c.is_unit() {
        for (g, e) in sff_fp(&pth_root(&c, p), p) {
            out.push((g, e * p as u32));
        }
    }
    out
}

/// Complete factorization over `F_p` with the default seed.
pub fn factor_fp(h: &Poly) -> Result<Factorization> {
    factor_fp_seeded(h, DEFAULT_SEED)
}

/// Complete factorization over `F_p`; the result does not depend on the
/// seed, only the splitting path does.
pub fn factor_fp_seeded(h: &Poly, seed: u64) -> Result<Factorization> {
    factor_fp_with(h, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Complete factorization over `F_p`, drawing splitting elements from `rng`.
pub fn factor_fp_with<R: Rng + ?Sized>(h: &Poly, rng: &mut R) -> Result<Factorization> {
    let p = match h.field() {
        FieldDesc::PrimeField { p } => p,
        FieldDesc::Rationals => return Err(Error::WrongField),
    };
    let sqf = squarefree_decomp(h)?;
    let ar = FpArith(p);
    let mut factors = Vec::new();
    for (part, e) in &sqf.factors {
        let v = part.fp_coeffs().unwrap().1;
        for (g, d) in distinct_degree(&ar, v) {
            for irr in equal_degree(&ar, &g, d, rng) {
                factors.push((Poly::from_fp_vec(p, irr), *e));
            }
        }
    }
    let mut out = Factorization { unit: sqf.unit, factors };
    out.sort();
    Ok(out)
}

fn x_poly() -> Vec<u64> {
    vec![0, 1]
}

fn powmod(ar: &FpArith, base: &[u64], exp: &BigUint, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1];
    let base = dense::rem(ar, base, m);
    for i in (0..exp.bits()).rev() {
        acc = dense::mulmod(ar, &acc, &acc, m);
        if exp.bit(i) {
            acc = dense::mulmod(ar, &acc, &base, m);
        }
    }
    acc
}

/// Splits a monic squarefree `f` into products of irreducibles of equal
/// degree: `(g, d)` with every irreducible factor of `g` of degree `d`.
fn distinct_degree(ar: &FpArith, f: &[u64]) -> Vec<(Vec<u64>, usize)> {
    let p = BigUint::from(ar.modulus());
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let mut h = x_poly();
    let mut i = 1;
    while rest.len() > 2 * i {
        h = powmod(ar, &h, &p, &rest);
        let g = dense::gcd(ar, &rest, &dense::sub(ar, &h, &x_poly()));
        if g.len() > 1 {
            rest = dense::divrem(ar, &rest, &g).0;
            h = dense::rem(ar, &h, &rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.len() > 1 {
        let d = rest.len() - 1;
        out.push((rest, d));
    }
    out
}

fn equal_degree<R: Rng + ?Sized>(ar: &FpArith, f: &[u64], d: usize, rng: &mut R) -> Vec<Vec<u64>> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let p = ar.modulus();
    let exp = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let mut a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        dense::trim(ar, &mut a);
        if a.len() < 2 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(d-1))
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = dense::mulmod(ar, &t, &t, f);
                acc = dense::add(ar, &acc, &t);
            }
            acc
        } else {
            dense::sub(ar, &powmod(ar, &a, &exp, f), &[1])
        };
        let g = dense::gcd(ar, f, &b);
        if g.len() > 1 && g.len() < f.len() {
            let other = dense::divrem(ar, f, &g).0;
            let mut out = equal_degree(ar, &g, d, rng);
            out.extend(equal_degree(ar, &other, d, rng));
            return out;
        }
    }
}

/// Rabin-style test: `gcd(h, x^(p^i) - x) = 1` for `1 <= i <= deg h / 2`.
pub fn is_irreducible_fp(h: &Poly) -> Result<bool> {
    let p = match h.field() {
        FieldDesc::PrimeField { p } => p,
        FieldDesc::Rationals => return Err(Error::WrongField),
    };
    if h.is_constant() {
        return Err(Error::PreconditionViolated("irreducibility of a constant".into()));
    }
    let ar = FpArith(p);
    let m = h.monic();
    let f = m.fp_coeffs().unwrap().1;
    let n = f.len() - 1;
    let pb = BigUint::from(p);
    let mut t = x_poly();
    for _ in 0..n / 2 {
        t = powmod(&ar, &t, &pb, f);
        if dense::gcd(&ar, f, &dense::sub(&ar, &t, &x_poly())).len() > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest absolute value whose divisors [`small_factors_q`] will enumerate.
pub const SMALL_FACTOR_BOUND: u64 = 1 << 40;

/// Distinct monic irreducible factors of degree 1 or 2 of `h` over `Q`.
///
/// Rational roots come from the rational root test; quadratic factors from a
/// Kronecker search on the values at `0, 1, -1`. The second component is
/// `false` when some value exceeded [`SMALL_FACTOR_BOUND`] and the search was
/// cut short.
pub fn small_factors_q(h: &Poly) -> Result<(Vec<Poly>, bool)> {
    if h.field() != FieldDesc::Rationals {
        return Err(Error::WrongField);
    }
    if h.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let q = FieldDesc::Rationals;
    let mut found = Vec::new();
    let mut complete = true;
    let mut rest = Poly::one(q);
    for (part, _) in squarefree_decomp(h)?.factors {
        rest = &rest * &part;
    }
    let x = Poly::x(q);
    if x.divides(&rest)? {
        found.push(x.clone());
        rest = rest.exact_div(&x)?;
    }
    // rational roots
    let ints = integer_coeffs(&rest);
    if ints.len() > 1 {
        let low = ints[0].abs();
        let lead = ints.last().unwrap().abs();
        match (divisors_big(&low), divisors_big(&lead)) {
            (Some(nums), Some(dens)) => {
                for r in &nums {
                    for s in &dens {
                        for sign in [1i32, -1] {
                            let root = BigRational::new(r * BigInt::from(sign), s.clone());
                            let lin = Poly::from_coeffs(
                                q,
                                vec![FieldElem::Rational(-root), q.one()],
                            )?;
                            if !found.contains(&lin) && lin.divides(&rest)? {
                                rest = rest.exact_div(&lin)?;
                                found.push(lin);
                            }
                        }
                    }
                }
            }
            _ => complete = false,
        }
    }
    // quadratic factors
    loop {
        match rest.degree() {
            Some(d) if d < 2 => break,
            Some(2) => {
                found.push(rest.monic());
                break;
            }
            Some(_) => {}
            None => unreachable!("nonzero"),
        }
        match kronecker_quadratic(&rest) {
            Some(Some(g)) => {
                rest = rest.exact_div(&g)?;
                found.push(g);
            }
            Some(None) => break,
            None => {
                complete = false;
                break;
            }
        }
    }
    found.sort_by(canonical_order);
    Ok((found, complete))
}

/// Primitive integer coefficient vector of an associate of `h`.
fn integer_coeffs(h: &Poly) -> Vec<BigInt> {
    let v = h.q_coeffs().expect("rational polynomial");
    let l = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn divisors_big(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64().filter(|&n| n <= SMALL_FACTOR_BOUND)?;
    Some(crate::cyclokit::divisors(n).into_iter().map(BigInt::from).collect())
}

/// `Some(Some(g))`: a monic quadratic factor; `Some(None)`: none exists;
/// `None`: values too large to enumerate.
fn kronecker_quadratic(h: &Poly) -> Option<Option<Poly>> {
    let ints = integer_coeffs(h);
    let eval = |x: i64| -> BigInt {
        ints.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    };
    let (v0, v1, vm) = (eval(0), eval(1), eval(-1));
    if v0.is_zero() || v1.is_zero() || vm.is_zero() {
        // a rational root survived, caller strips those first
        return Some(None);
    }
    let d0 = divisors_big(&v0.abs())?;
    let d1 = divisors_big(&v1.abs())?;
    let dm = divisors_big(&vm.abs())?;
    let q = FieldDesc::Rationals;
    for c in d0.iter().flat_map(|d| [d.clone(), -d]) {
        // g and -g are interchangeable, so fix g(1) > 0
        for s1 in &d1 {
            for sm in dm.iter().flat_map(|d| [d.clone(), -d]) {
                let sum = s1 + &sm;
                if sum.is_odd() {
                    continue;
                }
                let a: BigInt = &sum / 2 - &c;
                let b: BigInt = (s1 - &sm) / 2;
                if a.is_zero() {
                    continue;
                }
                let g = Poly::from_coeffs(
                    q,
                    vec![q.from_bigint(&c), q.from_bigint(&b), q.from_bigint(&a)],
                )
                .ok()?;
                if g.divides(h).ok()? {
                    return Some(Some(g.monic()));
                }
            }
        }
    }
    Some(None)
}
