//! The three sequences over `R = K[x]`:
//!
//! * power differences `F_n = f^n - g^n`;
//! * Lucas sequences `L_n = (α^n - β^n)/(α - β)` given `P = α + β`, `Q = αβ`;
//! * Lehmer sequences `U_n = (λ^n - η^n)/(λ - η)` for odd `n` and
//!   `(λ^n - η^n)/(λ^2 - η^2)` for even `n`, given `Rp = (λ + η)^2`, `Q = λη`.
//!
//! Terms come from linear recurrences. [`Sequence::oracle_term`] recomputes
//! them from the defining quotients inside [`tower::Tower`].
//!
//! For Lucas and Lehmer parameters the "ratio is not a root of unity"
//! condition needs no separate test: if `α/β` were a root of unity then
//! `P^2 = cQ` for a constant `c` (resp. `Rp = cQ`). Coprimality then forces
//! `Q` to be a unit, hence both parameters are units, or `c = 0` forces
//! `P = 0` (resp. `Rp = 0`). Both are rejected by [`SeqParams::validate`].

pub mod tower;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::FieldDesc;
use crate::cyclokit::{cyclotomic_form, divisors, mobius};
use crate::error::{Error, Result};
use crate::polyring::Poly;
use tower::{Tower, TowerElem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeqKind {
    /// `F_n = f^n - g^n`, parameters `(f, g)`.
    #[serde(rename = "power")]
    PowerDiff,
    /// Parameters `(P, Q)`.
    Lucas,
    /// Parameters `(Rp, Q)`.
    Lehmer,
}

impl SeqKind {
    pub const ALL: [SeqKind; 3] = [SeqKind::PowerDiff, SeqKind::Lucas, SeqKind::Lehmer];

    pub fn name(&self) -> &'static str {
        match self {
            SeqKind::PowerDiff => "power",
            SeqKind::Lucas => "lucas",
            SeqKind::Lehmer => "lehmer",
        }
    }

    pub fn parse(s: &str) -> Result<SeqKind> {
        match s.trim().to_ascii_lowercase().as_str() {
            "power" | "powerdiff" | "power_diff" => Ok(SeqKind::PowerDiff),
            "lucas" => Ok(SeqKind::Lucas),
            "lehmer" => Ok(SeqKind::Lehmer),
            other => Err(Error::Parse(format!("unknown sequence kind `{other}`"))),
        }
    }
}

impl fmt::Display for SeqKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Validated parameters `(a, b)`: `(f, g)`, `(P, Q)` or `(Rp, Q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeqParams {
    kind: SeqKind,
    a: Poly,
    b: Poly,
}

impl SeqParams {
    /// Checks, in order: both nonzero, (power differences) `f/g` not a root
    /// of unity in `K`, `<a>` and `<b>` coprime, not both units.
    pub fn validate(kind: SeqKind, a: Poly, b: Poly) -> Result<SeqParams> {
        if a.field() != b.field() {
            return Err(Error::FieldMismatch);
        }
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroParameter);
        }
        if kind == SeqKind::PowerDiff && ratio_is_root_of_unity(&a, &b) {
            return Err(Error::RatioRootOfUnity);
        }
        if !a.ideals_coprime(&b) {
            return Err(Error::NotCoprime);
        }
        if a.is_unit() && b.is_unit() {
            return Err(Error::BothUnits);
        }
        Ok(SeqParams { kind, a, b })
    }

    pub fn kind(&self) -> SeqKind {
        self.kind
    }

    pub fn field(&self) -> FieldDesc {
        self.a.field()
    }

    pub fn characteristic(&self) -> u64 {
        self.field().characteristic()
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    /// Whether index `n` is dropped from the sequence (`p | n`, `p > 0`).
    pub fn is_excluded(&self, n: u64) -> bool {
        let p = self.characteristic();
        p > 0 && n.is_multiple_of(p)
    }
}

impl fmt::Display for SeqParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}: a = {}, b = {}", self.kind, self.field(), self.a, self.b)
    }
}

/// `f = c g` with `c` a root of unity of `K`: `±1` over `Q`, any nonzero
/// constant over `F_p`.
fn ratio_is_root_of_unity(f: &Poly, g: &Poly) -> bool {
    match f.field() {
        FieldDesc::Rationals => f == g || *f == g.neg(),
        FieldDesc::PrimeField { .. } => f.is_associated(g),
    }
}

/// A parameter set with its cache of terms, indexed from 1.
///
/// Extending the cache needs `&mut self`, so a cache has a single writer;
/// once filled, shared borrows read it concurrently.
#[derive(Debug, Clone)]
pub struct Sequence {
    params: SeqParams,
    terms: Vec<Poly>,
}

impl Sequence {
    pub fn new(params: SeqParams) -> Sequence {
        Sequence { params, terms: Vec::new() }
    }

    pub fn params(&self) -> &SeqParams {
        &self.params
    }

    /// Ensures terms `1..=n` are cached.
    pub fn fill(&mut self, n: u64) {
        let n = n as usize;
        while self.terms.len() < n {
            let k = self.terms.len() + 1;
            let next = self.next_term(k);
            self.terms.push(next);
        }
    }

    fn next_term(&self, k: usize) -> Poly {
        let field = self.params.field();
        let (a, b) = (&self.params.a, &self.params.b);
        let t = |i: usize| &self.terms[i - 1];
        match self.params.kind {
            SeqKind::PowerDiff => &a.pow(k as u64) - &b.pow(k as u64),
            SeqKind::Lucas => match k {
                1 => Poly::one(field),
                2 => a.clone(),
                _ => &(a * t(k - 1)) - &(b * t(k - 2)),
            },
            SeqKind::Lehmer => match k {
                1 | 2 => Poly::one(field),
                _ if k % 2 == 1 => &(a * t(k - 1)) - &(b * t(k - 2)),
                _ => t(k - 1) - &(b * t(k - 2)),
            },
        }
    }

    /// The `n`-th term (`n >= 1`).
    pub fn term(&mut self, n: u64) -> &Poly {
        assert!(n >= 1, "sequences are indexed from 1");
        self.fill(n);
        &self.terms[n as usize - 1]
    }

    /// Already-cached term, for readers holding a shared borrow.
    pub fn cached(&self, n: u64) -> Option<&Poly> {
        (n >= 1).then(|| self.terms.get(n as usize - 1)).flatten()
    }

    /// Terms `1..=n`.
    pub fn terms(&mut self, n: u64) -> &[Poly] {
        self.fill(n);
        &self.terms[..n as usize]
    }

    /// The term recomputed from its defining quotient in the tower algebra.
    pub fn oracle_term(&self, n: u64) -> Result<Poly> {
        assert!(n >= 1, "sequences are indexed from 1");
        let (a, b) = (&self.params.a, &self.params.b);
        match self.params.kind {
            SeqKind::PowerDiff => Err(Error::PreconditionViolated(
                "the tower oracle covers Lucas and Lehmer sequences".into(),
            )),
            SeqKind::Lehmer => oracle_lehmer(a, b, n),
            SeqKind::Lucas => oracle_lucas(a, b, n),
        }
    }

    /// Ward's `Q_n = prod_{d | n} U_d^μ(n/d)`, with `Q_1 = Q_2 = 1`.
    pub fn ward_qn(&mut self, n: u64) -> Result<Poly> {
        if self.params.kind != SeqKind::Lehmer {
            return Err(Error::PreconditionViolated("Ward's Q_n is defined for Lehmer sequences".into()));
        }
        if n <= 2 {
            return Ok(Poly::one(self.params.field()));
        }
        self.mobius_product(n)
    }

    /// A generator of `<Φ_n(·,·)>` at the sequence's roots, `n >= 3`.
    pub fn phi_eval(&mut self, n: u64) -> Result<Poly> {
        if n < 3 {
            return Err(Error::PreconditionViolated(format!("phi_eval needs n >= 3, got {n}")));
        }
        match self.params.kind {
            SeqKind::PowerDiff => cyclotomic_form(n).eval(&self.params.a, &self.params.b),
            SeqKind::Lucas => self.mobius_product(n),
            SeqKind::Lehmer => self.ward_qn(n),
        }
    }

    /// `prod_{d | n} term(d)^μ(n/d)`, by one exact division.
    fn mobius_product(&mut self, n: u64) -> Result<Poly> {
        self.fill(n);
        let field = self.params.field();
        let mut num = Poly::one(field);
        let mut den = Poly::one(field);
        for d in divisors(n) {
            match mobius(n / d) {
                1 => num = &num * self.term(d),
                -1 => den = &den * self.term(d),
                _ => {}
            }
        }
        num.exact_div(&den)
    }
}

fn mismatch(what: &str, n: u64, e: &TowerElem) -> Error {
    Error::OracleMismatch(format!(
        "{what} at n = {n}: [{}, {}, {}, {}]",
        e.coords[0], e.coords[1], e.coords[2], e.coords[3]
    ))
}

/// `λ^n - η^n` with `λ = t`, `η = s - t`.
fn power_difference(tw: &Tower, n: u64) -> TowerElem {
    let lambda = tw.t();
    let eta = tw.sub(&tw.s(), &lambda);
    tw.sub(&tw.pow(&lambda, n), &tw.pow(&eta, n))
}

fn oracle_lehmer(rp: &Poly, q: &Poly, n: u64) -> Result<Poly> {
    let tw = Tower::new(rp.clone(), q.clone());
    let num = power_difference(&tw, n);
    // λ - η = 2t - s, and (2t - s)^2 = Rp - 4Q
    let two_t = tw.add(&tw.t(), &tw.t());
    let diff = tw.sub(&two_t, &tw.s());
    let disc = rp - &(&Poly::from_i64s(rp.field(), &[4]) * q);
    // λ^2 - η^2 = (λ - η) s squares to (Rp - 4Q) Rp
    let (den, norm) = if n % 2 == 1 {
        (diff, disc)
    } else {
        (tw.mul(&diff, &tw.s()), &disc * rp)
    };
    let scaled = tw.mul(&num, &den);
    let base = scaled.base_part().ok_or_else(|| mismatch("numerator times conjugate", n, &scaled))?;
    let quot = base.exact_div(&norm).map_err(|_| mismatch("norm does not divide", n, &scaled))?;
    if tw.mul(&tw.from_base(quot.clone()), &den) != num {
        return Err(mismatch("quotient check", n, &num));
    }
    Ok(quot)
}

fn oracle_lucas(p: &Poly, q: &Poly, n: u64) -> Result<Poly> {
    // Work with s^2 = P^2, then send s to P; the quotient lands in R[s].
    let tw = Tower::new(p * p, q.clone());
    let num = power_difference(&tw, n);
    let two_t = tw.add(&tw.t(), &tw.t());
    let diff = tw.sub(&two_t, &tw.s());
    let disc = &(p * p) - &(&Poly::from_i64s(p.field(), &[4]) * q);
    let scaled = tw.mul(&num, &diff);
    let [c0, c1, c2, c3] = &scaled.coords;
    if !c2.is_zero() || !c3.is_zero() {
        return Err(mismatch("numerator times conjugate", n, &scaled));
    }
    let specialized = c0 + &(c1 * p);
    specialized.exact_div(&disc).map_err(|_| mismatch("discriminant does not divide", n, &scaled))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Poly {
        Poly::parse(FieldDesc::Rationals, s).unwrap()
    }

    fn fp(p: u64, s: &str) -> Poly {
        Poly::parse(FieldDesc::prime(p).unwrap(), s).unwrap()
    }

    fn seq(kind: SeqKind, a: &str, b: &str) -> Sequence {
        Sequence::new(SeqParams::validate(kind, q(a), q(b)).unwrap())
    }

    #[test]
    fn validation() {
        assert!(SeqParams::validate(SeqKind::Lucas, q("x"), q("1")).is_ok());
        assert_eq!(
            SeqParams::validate(SeqKind::PowerDiff, fp(5, "2x"), fp(5, "x")),
            Err(Error::RatioRootOfUnity)
        );
        assert_eq!(SeqParams::validate(SeqKind::Lucas, q("x"), q("x^2+x")), Err(Error::NotCoprime));
        assert_eq!(SeqParams::validate(SeqKind::Lehmer, q("0"), q("x")), Err(Error::ZeroParameter));
        assert_eq!(SeqParams::validate(SeqKind::Lucas, q("2"), q("3")), Err(Error::BothUnits));
        assert_eq!(SeqParams::validate(SeqKind::PowerDiff, q("x+1"), q("-x-1")), Err(Error::RatioRootOfUnity));
        // over Q a ratio of 2 is not a root of unity; coprimality fails instead
        assert_eq!(SeqParams::validate(SeqKind::PowerDiff, q("2x"), q("x")), Err(Error::NotCoprime));
        assert_eq!(SeqParams::validate(SeqKind::Lucas, q("x"), fp(3, "1")), Err(Error::FieldMismatch));
    }

    #[test]
    fn recurrences() {
        let mut l = seq(SeqKind::Lucas, "x", "1");
        assert_eq!(*l.term(4), q("x^3-2x"));
        let mut u = seq(SeqKind::Lehmer, "x", "1");
        let want = ["1", "1", "x-1", "x-2", "x^2-3x+1", "x^2-4x+3"];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(*u.term(n as u64 + 1), q(w), "U_{}", n + 1);
        }
        let mut f = seq(SeqKind::PowerDiff, "x+1", "x");
        assert_eq!(*f.term(1), q("1"));
        assert_eq!(*f.term(2), q("2x+1"));
        assert_eq!(f.cached(2), Some(&q("2x+1")));
        assert_eq!(f.cached(3), None);
    }

    #[test]
    fn tower_oracle() {
        let u = seq(SeqKind::Lehmer, "x", "1");
        assert_eq!(u.oracle_term(4).unwrap(), q("x-2"));
        assert_eq!(u.oracle_term(1).unwrap(), q("1"));
        let l = seq(SeqKind::Lucas, "x", "1");
        assert_eq!(l.oracle_term(3).unwrap(), q("x^2-1"));
        assert_eq!(l.oracle_term(1).unwrap(), q("1"));
        let f = seq(SeqKind::PowerDiff, "x+1", "x");
        assert!(f.oracle_term(3).is_err());
    }

    #[test]
    fn ward_and_phi() {
        let mut u = seq(SeqKind::Lehmer, "x", "1");
        assert_eq!(u.ward_qn(3).unwrap(), q("x-1"));
        assert_eq!(u.ward_qn(6).unwrap(), q("x-3"));
        assert_eq!(u.ward_qn(2).unwrap(), q("1"));
        assert_eq!(u.ward_qn(1).unwrap(), q("1"));

        let mut f = seq(SeqKind::PowerDiff, "x+1", "x");
        assert_eq!(f.phi_eval(3).unwrap(), q("3x^2+3x+1"));
        assert!(f.ward_qn(3).is_err());
        let mut l = seq(SeqKind::Lucas, "x", "1");
        assert_eq!(l.phi_eval(4).unwrap(), q("x^2-2"));
        assert_eq!(l.phi_eval(6).unwrap(), q("x^2-3"));
        assert!(l.phi_eval(2).is_err());
    }

    #[test]
    fn excluded_indices() {
        let p = SeqParams::validate(SeqKind::PowerDiff, fp(3, "x+1"), fp(3, "x")).unwrap();
        assert!(p.is_excluded(3) && p.is_excluded(6) && !p.is_excluded(4));
        let p = SeqParams::validate(SeqKind::Lucas, q("x"), q("1")).unwrap();
        assert!(!p.is_excluded(3));
    }
}
