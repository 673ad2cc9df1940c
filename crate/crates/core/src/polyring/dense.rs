//! Dense coefficient-vector kernels, lowest degree first. Every function
//! returns trimmed vectors (no trailing zeros).

use crate::coeff::Arith;

pub fn trim<A: Arith>(ar: &A, v: &mut Vec<A::E>) {
    while v.last().is_some_and(|c| ar.is_zero(c)) {
        v.pop();
    }
}

pub fn add<A: Arith>(ar: &A, a: &[A::E], b: &[A::E]) -> Vec<A::E> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = ar.add(o, s);
    }
    trim(ar, &mut out);
    out
}

pub fn neg<A: Arith>(ar: &A, a: &[A::E]) -> Vec<A::E> {
    a.iter().map(|c| ar.neg(c)).collect()
}

pub fn sub<A: Arith>(ar: &A, a: &[A::E], b: &[A::E]) -> Vec<A::E> {
    let n = a.len().max(b.len());
    let zero = ar.zero();
    let mut out: Vec<A::E> = (0..n)
        .map(|i| ar.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(ar, &mut out);
    out
}

pub fn scale<A: Arith>(ar: &A, a: &[A::E], c: &A::E) -> Vec<A::E> {
    if ar.is_zero(c) {
        return Vec::new();
    }
    a.iter().map(|x| ar.mul(x, c)).collect()
}

pub fn mul<A: Arith>(ar: &A, a: &[A::E], b: &[A::E]) -> Vec<A::E> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ar.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if ar.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = ar.mul(x, y);
            out[i + j] = ar.add(&out[i + j], &t);
        }
    }
    trim(ar, &mut out);
    out
}

pub fn pow<A: Arith>(ar: &A, a: &[A::E], mut e: u64) -> Vec<A::E> {
    let mut acc = vec![ar.one()];
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(ar, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(ar, &base, &base);
        }
    }
    acc
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem<A: Arith>(ar: &A, a: &[A::E], b: &[A::E]) -> (Vec<A::E>, Vec<A::E>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let lead_inv = ar.inv(b.last().unwrap()).expect("nonzero leading coefficient");
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![ar.zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db];
        if ar.is_zero(c) {
            continue;
        }
        let t = ar.mul(c, &lead_inv);
        for (j, bj) in b.iter().enumerate() {
            let prod = ar.mul(&t, bj);
            r[k + j] = ar.sub(&r[k + j], &prod);
        }
        q[k] = t;
    }
    r.truncate(db);
    trim(ar, &mut r);
    trim(ar, &mut q);
    (q, r)
}

pub fn rem<A: Arith>(ar: &A, a: &[A::E], b: &[A::E]) -> Vec<A::E> {
    if a.len() < b.len() {
        return a.to_vec();
    }
    let lead_inv = ar.inv(b.last().unwrap()).expect("nonzero leading coefficient");
    let db = b.len() - 1;
    let mut r = a.to_vec();
    for k in (0..=(a.len() - b.len())).rev() {
        let c = &r[k + db];
        if ar.is_zero(c) {
            continue;
        }
        let t = ar.mul(c, &lead_inv);
        for (j, bj) in b.iter().enumerate() {
            let prod = ar.mul(&t, bj);
            r[k + j] = ar.sub(&r[k + j], &prod);
        }
    }
    r.truncate(db);
    trim(ar, &mut r);
    r
}

pub fn monic<A: Arith>(ar: &A, a: &[A::E]) -> Vec<A::E> {
    match a.last() {
        None => Vec::new(),
        Some(l) if ar.is_one(l) => a.to_vec(),
        Some(l) => scale(ar, a, &ar.inv(l).expect("nonzero")),
    }
}

/// Monic Euclidean gcd; `gcd(0, 0) = 0`.
pub fn gcd<A: Arith>(ar: &A, a: &[A::E], b: &[A::E]) -> Vec<A::E> {
    let mut x = monic(ar, a);
    let mut y = monic(ar, b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = rem(ar, &x, &y);
        x = y;
        y = if A::MONIC_REMAINDERS { monic(ar, &r) } else { r };
    }
    monic(ar, &x)
}

pub fn derivative<A: Arith>(ar: &A, a: &[A::E]) -> Vec<A::E> {
    let mut out: Vec<A::E> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ar.mul(c, &ar.lift_i64(i as i64)))
        .collect();
    trim(ar, &mut out);
    out
}

pub fn mulmod<A: Arith>(ar: &A, a: &[A::E], b: &[A::E], m: &[A::E]) -> Vec<A::E> {
    rem(ar, &mul(ar, a, b), m)
}
