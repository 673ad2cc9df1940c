//! Homogeneous bivariate integer forms: the cyclotomic forms `Φ_n(X, Y)`,
//! `P_n(X, Y) = (X^n - Y^n)/(X - Y)`, the quotient `C_n` of `P_n` by
//! `(X + Y)^2`, Sylvester resultants, and evaluation at elements of `K[x]`.
//!
//! A form of degree `d` is stored as `d + 1` integers, index `k` holding the
//! coefficient of `X^(d-k) Y^k`. Divisibility questions are answered on the
//! coefficient sequence read as a polynomial in `t = Y/X`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polyring::Poly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BivarForm {
    coeffs: Vec<BigInt>,
}

impl BivarForm {
    /// Coefficients of `X^d, X^(d-1) Y, ..., Y^d`; an empty vector is not
    /// allowed (the zero form still has a degree).
    pub fn new(coeffs: Vec<BigInt>) -> BivarForm {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        BivarForm { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> BivarForm {
        BivarForm::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: i64) -> BivarForm {
        BivarForm::from_i64s(&[c])
    }

    /// `X^a Y^b`.
    pub fn monomial(a: usize, b: usize) -> BivarForm {
        let mut coeffs = vec![BigInt::zero(); a + b + 1];
        coeffs[b] = BigInt::one();
        BivarForm { coeffs }
    }

    /// `X^n - Y^n`.
    pub fn x_pow_minus_y_pow(n: usize) -> BivarForm {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] += 1;
        coeffs[n] -= 1;
        BivarForm { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Coefficient sequence is a palindrome (form symmetric in `X`, `Y`).
    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn mul(&self, other: &BivarForm) -> BivarForm {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        BivarForm { coeffs }
    }

    pub fn add(&self, other: &BivarForm) -> Result<BivarForm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(BivarForm { coeffs })
    }

    pub fn sub(&self, other: &BivarForm) -> Result<BivarForm> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> BivarForm {
        BivarForm { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Exact quotient in `Z[X, Y]`.
    pub fn exact_div(&self, divisor: &BivarForm) -> Result<BivarForm> {
        let (q, r) = t_divrem(&self.coeffs, &divisor.coeffs)?;
        if r.iter().any(|c| !c.is_zero()) || self.degree() < divisor.degree() && !self.is_zero() {
            return Err(Error::NotDivisible);
        }
        let qdeg = self.degree().saturating_sub(divisor.degree());
        if q.len() > qdeg + 1 {
            // the quotient would need a negative power of X
            return Err(Error::NotDivisible);
        }
        let mut coeffs = q;
        coeffs.resize(qdeg + 1, BigInt::zero());
        Ok(BivarForm { coeffs })
    }

    /// Substitutes `X <- u`, `Y <- v` in `K[x]`.
    pub fn eval(&self, u: &Poly, v: &Poly) -> Result<Poly> {
        let field = u.field();
        if v.field() != field {
            return Err(Error::FieldMismatch);
        }
        let d = self.degree();
        let mut upow = vec![Poly::one(field)];
        let mut vpow = vec![Poly::one(field)];
        for i in 0..d {
            upow.push(&upow[i] * u);
            vpow.push(&vpow[i] * v);
        }
        let mut acc = Poly::zero(field);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = &(&upow[d - k] * &vpow[k]) * &Poly::constant(&field.from_bigint(c));
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

/// Long division of integer coefficient sequences read as polynomials in
/// `t`. Fails with `NotDivisible` as soon as a quotient coefficient would
/// not be an integer.
fn t_divrem(a: &[BigInt], b: &[BigInt]) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let top = |v: &[BigInt]| v.iter().rposition(|c| !c.is_zero());
    let Some(db) = top(b) else {
        return Err(Error::DivisionByZero);
    };
    let mut r: Vec<BigInt> = a.to_vec();
    let Some(da) = top(&r) else {
        return Ok((Vec::new(), Vec::new()));
    };
    if da < db {
        return Ok((Vec::new(), r));
    }
    let lead = &b[db];
    let mut q = vec![BigInt::zero(); da - db + 1];
    for k in (0..q.len()).rev() {
        let c = &r[k + db];
        if c.is_zero() {
            continue;
        }
        let (t, rem) = c.div_rem(lead);
        if !rem.is_zero() {
            return Err(Error::NotDivisible);
        }
        for (j, bj) in b[..=db].iter().enumerate() {
            r[k + j] -= &t * bj;
        }
        q[k] = t;
    }
    Ok((q, r))
}

static CYCLOTOMIC: LazyLock<RwLock<HashMap<u64, Arc<BivarForm>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// `Φ_n(X, Y)`, obtained from `X^n - Y^n` by dividing out `Φ_d` for every
/// proper divisor `d`. Results are memoized process-wide; concurrent callers
/// may both compute an entry, and the insert is idempotent.
pub fn cyclotomic_form(n: u64) -> Arc<BivarForm> {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(f) = CYCLOTOMIC.read().unwrap().get(&n) {
        return Arc::clone(f);
    }
    let mut acc = BivarForm::x_pow_minus_y_pow(n as usize);
    for d in divisors(n) {
        if d < n {
            acc = acc
                .exact_div(&cyclotomic_form(d))
                .expect("X^n - Y^n is divisible by its cyclotomic factors");
        }
    }
    let acc = Arc::new(acc);
    CYCLOTOMIC.write().unwrap().entry(n).or_insert_with(|| Arc::clone(&acc)).clone()
}

/// `P_n(X, Y) = sum_{k < n} X^(n-1-k) Y^k`.
pub fn pn_form(n: u64) -> BivarForm {
    assert!(n >= 1, "P_n needs n >= 1");
    BivarForm { coeffs: vec![BigInt::one(); n as usize] }
}

/// `(X + Y)^2`.
pub fn x_plus_y_squared() -> BivarForm {
    BivarForm::from_i64s(&[1, 2, 1])
}

/// Determinant of the Sylvester matrix of the two coefficient sequences.
pub fn resultant(a: &BivarForm, b: &BivarForm) -> Result<BigInt> {
    let (m, n) = (a.degree(), b.degree());
    if m == 0 || n == 0 {
        return Err(Error::ConstantForm);
    }
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in a.coeffs.iter().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.coeffs.iter().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    Ok(bareiss_det(mat))
}

/// Fraction-free Gaussian elimination; every division is exact.
pub fn bareiss_det(mut mat: Vec<Vec<BigInt>>) -> BigInt {
    let size = mat.len();
    if size == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..size - 1 {
        if mat[k][k].is_zero() {
            match (k + 1..size).find(|&i| !mat[i][k].is_zero()) {
                Some(i) => {
                    mat.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = v / &prev;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// `Res(P_m, P_n)` together with whether it obeys the coprimality rule:
/// `±1` when `gcd(m, n) = 1`, and `0` otherwise (the forms then share the
/// factor `Φ_gcd(m,n)`).
pub fn check_res_pm_pn(m: u64, n: u64) -> (bool, BigInt) {
    assert!(m >= 2 && n >= 2, "P_1 is constant");
    let r = resultant(&pn_form(m), &pn_form(n)).expect("non-constant forms");
    let ok = if m.gcd(&n) == 1 { r.abs().is_one() } else { r.is_zero() };
    (ok, r)
}

/// Remainder of `a` modulo `(X + Y)^2`, as a form of the same degree
/// supported on `X^d` and `X^(d-1) Y`; `None` when `(X + Y)^2` divides `a`.
pub fn rem_mod_xy_squared(a: &BivarForm) -> Option<BivarForm> {
    let (_, r) = t_divrem(&a.coeffs, &x_plus_y_squared().coeffs).expect("monic divisor");
    if r.iter().all(Zero::is_zero) {
        return None;
    }
    let mut coeffs = r;
    coeffs.resize(a.coeffs.len(), BigInt::zero());
    coeffs.truncate(a.coeffs.len());
    Some(BivarForm { coeffs })
}

/// The form `C_n` with `P_n = (X+Y)^2 C_n + (-1)^((n-1)/2) (XY)^((n-1)/2)`,
/// for odd `n >= 3`.
pub fn cn_form(n: u64) -> Result<BivarForm> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::PreconditionViolated(format!("C_n needs odd n >= 3, got {n}")));
    }
    let k = ((n - 1) / 2) as usize;
    pn_form(n).sub(&signed_xy_power(k))?.exact_div(&x_plus_y_squared())
}

/// `(-1)^k (XY)^k`.
pub fn signed_xy_power(k: usize) -> BivarForm {
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    BivarForm::monomial(k, k).scale(&BigInt::from(sign))
}

/// `Φ_n(u, v)` in `K[x]`.
pub fn eval_form(form: &BivarForm, u: &Poly, v: &Poly) -> Result<Poly> {
    form.eval(u, v)
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The Möbius function.
pub fn mobius(mut n: u64) -> i8 {
    assert!(n >= 1, "mobius needs n >= 1");
    let mut sign = 1i8;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

impl fmt::Display for BivarForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if c.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let mut mono = Vec::new();
            match d - k {
                0 => {}
                1 => mono.push("X".to_string()),
                e => mono.push(format!("X^{e}")),
            }
            match k {
                0 => {}
                1 => mono.push("Y".to_string()),
                e => mono.push(format!("Y^{e}")),
            }
            let abs = c.abs();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for BivarForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarForm[{}]({})", self.degree(), self)
    }
}

/// Serialized as a JSON array of decimal strings; the degree is implied by
/// the length.
impl Serialize for BivarForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(ToString::to_string))
    }
}

impl<'de> Deserialize<'de> for BivarForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        if raw.is_empty() {
            return Err(serde::de::Error::custom("a form needs at least one coefficient"));
        }
        raw.iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(BivarForm::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::FieldDesc;
    use proptest::prelude::*;

    fn f(c: &[i64]) -> BivarForm {
        BivarForm::from_i64s(c)
    }

    #[test]
    fn products_and_sums() {
        assert_eq!(f(&[1, -1]).mul(&f(&[1, 1])), f(&[1, 0, -1]));
        assert_eq!(f(&[1, 1]).add(&f(&[1, -1])).unwrap(), f(&[2, 0]));
        assert_eq!(f(&[1, 1, 1]).mul(&f(&[1])), f(&[1, 1, 1]));
        assert_eq!(f(&[1, 1]).add(&f(&[1, 1, 1])), Err(Error::DegreeMismatch(1, 2)));
    }

    #[test]
    fn exact_division() {
        assert_eq!(f(&[1, 0, -1]).exact_div(&f(&[1, 1])).unwrap(), f(&[1, -1]));
        assert_eq!(f(&[1, 0, 0, -1]).exact_div(&f(&[1, -1])).unwrap(), f(&[1, 1, 1]));
        assert_eq!(f(&[1, 0, 1]).exact_div(&f(&[1, 1])), Err(Error::NotDivisible));
        // X^2 / X = X, X / X^2 fails, Y / X fails
        assert_eq!(f(&[1, 0, 0]).exact_div(&f(&[1, 0])).unwrap(), f(&[1, 0]));
        assert_eq!(f(&[1, 0]).exact_div(&f(&[1, 0, 0])), Err(Error::NotDivisible));
        assert_eq!(f(&[0, 1]).exact_div(&f(&[1, 0])), Err(Error::NotDivisible));
        // 2X / 4 is not integral
        assert_eq!(f(&[2, 0]).exact_div(&f(&[4])), Err(Error::NotDivisible));
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(*cyclotomic_form(1), f(&[1, -1]));
        assert_eq!(*cyclotomic_form(2), f(&[1, 1]));
        assert_eq!(*cyclotomic_form(6), f(&[1, -1, 1]));
        assert_eq!(cyclotomic_form(6).to_string(), "X^2-X*Y+Y^2");
        // Φ_105 is the first with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic_form(105).coeffs().iter().any(|c| c.abs() == BigInt::from(2)));
        assert_eq!(cyclotomic_form(105).degree(), 48);
    }

    #[test]
    fn pn_examples() {
        assert_eq!(pn_form(1), f(&[1]));
        assert_eq!(pn_form(4), f(&[1, 1, 1, 1]));
        assert_eq!(pn_form(3).to_string(), "X^2+X*Y+Y^2");
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&pn_form(2), &pn_form(3)).unwrap(), BigInt::from(1));
        assert_eq!(resultant(&cyclotomic_form(1), &cyclotomic_form(2)).unwrap(), BigInt::from(2));
        assert_eq!(resultant(&pn_form(2), &pn_form(4)).unwrap(), BigInt::zero());
        assert_eq!(resultant(&pn_form(1), &pn_form(4)), Err(Error::ConstantForm));
        assert!(check_res_pm_pn(2, 3).0);
        assert_eq!(check_res_pm_pn(4, 6), (true, BigInt::zero()));
        assert!(check_res_pm_pn(3, 5).0);
        assert_eq!(check_res_pm_pn(3, 5).1.abs(), BigInt::one());
    }

    #[test]
    fn congruence_examples() {
        assert_eq!(rem_mod_xy_squared(&f(&[1, 2, 1])), None);
        assert_eq!(rem_mod_xy_squared(&f(&[1, 0, -2, 0, 1])), None);
        // P_3 = (X+Y)^2 - XY, so the remainder is -XY expressed as r0 X^2 + r1 XY
        let r = rem_mod_xy_squared(&pn_form(3)).unwrap();
        assert_eq!(r, f(&[0, -1, 0]));
        assert_eq!(rem_mod_xy_squared(&f(&[5])), Some(f(&[5])));
    }

    #[test]
    fn cn_examples() {
        assert_eq!(cn_form(3).unwrap(), f(&[1]));
        assert_eq!(cn_form(5).unwrap(), f(&[1, -1, 1]));
        let c7 = cn_form(7).unwrap();
        assert_eq!(c7.degree(), 4);
        assert!(c7.is_symmetric());
        let back = x_plus_y_squared().mul(&c7).add(&signed_xy_power(3)).unwrap();
        assert_eq!(back, pn_form(7));
        assert!(cn_form(4).is_err());
        assert!(cn_form(1).is_err());
    }

    #[test]
    fn evaluation() {
        let q = FieldDesc::Rationals;
        let u = Poly::parse(q, "x+1").unwrap();
        let v = Poly::parse(q, "x").unwrap();
        assert_eq!(eval_form(&cyclotomic_form(2), &u, &v).unwrap().to_string(), "2*x+1");
        assert_eq!(eval_form(&cyclotomic_form(3), &u, &v).unwrap().to_string(), "3*x^2+3*x+1");
        assert_eq!(eval_form(&pn_form(1), &u, &v).unwrap().to_string(), "1");
        let w = Poly::x(FieldDesc::prime(5).unwrap());
        assert_eq!(eval_form(&pn_form(2), &u, &w), Err(Error::FieldMismatch));
    }

    #[test]
    fn arithmetic_functions() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(7), -1);
        assert_eq!(mobius(6), 1);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn json_form() {
        let s = serde_json::to_string(&*cyclotomic_form(6)).unwrap();
        assert_eq!(s, r#"["1","-1","1"]"#);
        let back: BivarForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, *cyclotomic_form(6));
    }

    fn small_form(max_deg: usize) -> impl Strategy<Value = BivarForm> {
        prop::collection::vec(-4i64..5, 2..max_deg + 2)
            .prop_filter("not identically zero", |v| v.iter().any(|&c| c != 0))
            .prop_map(|v| BivarForm::from_i64s(&v))
    }

    proptest! {
        #[test]
        fn resultant_is_multiplicative(a in small_form(3), b in small_form(2), c in small_form(2)) {
            let lhs = resultant(&a, &b.mul(&c)).unwrap();
            let rhs = resultant(&a, &b).unwrap() * resultant(&a, &c).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn product_divides_back(a in small_form(3), b in small_form(3)) {
            prop_assert_eq!(a.mul(&b).exact_div(&b).unwrap(), a);
        }
    }
}
