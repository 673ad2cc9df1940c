//! The algebra `T = R[s, t] / (s^2 - Rp, t^2 - s t + Q)`.
//!
//! With `λ = t` and `η = s - t` we get `λ + η = s`, `(λ + η)^2 = Rp` and
//! `λ η = s t - t^2 = Q`, so `T` holds a generic pair with the prescribed
//! symmetric functions without ever naming `λ` or `η` as algebraic
//! functions. Elements are `c0 + c1 s + c2 t + c3 s t`.

use crate::polyring::Poly;

#[derive(Debug, Clone)]
pub struct Tower {
    rp: Poly,
    q: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerElem {
    pub coords: [Poly; 4],
}

impl Tower {
    pub fn new(rp: Poly, q: Poly) -> Tower {
        Tower { rp, q }
    }

    fn zero_poly(&self) -> Poly {
        Poly::zero(self.rp.field())
    }

    pub fn from_base(&self, c: Poly) -> TowerElem {
        let z = self.zero_poly();
        TowerElem { coords: [c, z.clone(), z.clone(), z] }
    }

    pub fn one(&self) -> TowerElem {
        self.from_base(Poly::one(self.rp.field()))
    }

    pub fn s(&self) -> TowerElem {
        let (z, o) = (self.zero_poly(), Poly::one(self.rp.field()));
        TowerElem { coords: [z.clone(), o, z.clone(), z] }
    }

    pub fn t(&self) -> TowerElem {
        let (z, o) = (self.zero_poly(), Poly::one(self.rp.field()));
        TowerElem { coords: [z.clone(), z.clone(), o, z] }
    }

    pub fn add(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        TowerElem { coords: std::array::from_fn(|i| &a.coords[i] + &b.coords[i]) }
    }

    pub fn sub(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        TowerElem { coords: std::array::from_fn(|i| &a.coords[i] - &b.coords[i]) }
    }

    /// `(x0 + x1 s)(y0 + y1 s)` in `R[s]/(s^2 - Rp)`.
    fn mul_s(&self, x: (&Poly, &Poly), y: (&Poly, &Poly)) -> (Poly, Poly) {
        let c0 = &(x.0 * y.0) + &(&self.rp * &(x.1 * y.1));
        let c1 = &(x.0 * y.1) + &(x.1 * y.0);
        (c0, c1)
    }

    pub fn mul(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        // (A + B t)(C + D t) = (AC - Q BD) + (AD + BC + s BD) t
        let [a0, a1, a2, a3] = &a.coords;
        let [b0, b1, b2, b3] = &b.coords;
        let ac = self.mul_s((a0, a1), (b0, b1));
        let ad = self.mul_s((a0, a1), (b2, b3));
        let bc = self.mul_s((a2, a3), (b0, b1));
        let bd = self.mul_s((a2, a3), (b2, b3));
        // s * (x0 + x1 s) = Rp x1 + x0 s
        let s_bd = (&self.rp * &bd.1, bd.0.clone());
        TowerElem {
            coords: [
                &ac.0 - &(&self.q * &bd.0),
                &ac.1 - &(&self.q * &bd.1),
                &(&ad.0 + &bc.0) + &s_bd.0,
                &(&ad.1 + &bc.1) + &s_bd.1,
            ],
        }
    }

    pub fn pow(&self, a: &TowerElem, mut e: u64) -> TowerElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

impl TowerElem {
    /// The coordinate in `R` when the element lies in the base ring.
    pub fn base_part(&self) -> Option<&Poly> {
        self.coords[1..].iter().all(Poly::is_zero).then_some(&self.coords[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::FieldDesc;

    #[test]
    fn defining_relations() {
        let q = FieldDesc::Rationals;
        let rp = Poly::parse(q, "x^2+1").unwrap();
        let qq = Poly::parse(q, "x").unwrap();
        let tw = Tower::new(rp.clone(), qq.clone());
        let (s, t) = (tw.s(), tw.t());
        assert_eq!(tw.mul(&s, &s), tw.from_base(rp));
        let eta = tw.sub(&s, &t);
        assert_eq!(tw.mul(&t, &eta), tw.from_base(qq));
        assert_eq!(tw.add(&t, &eta), s);
        // associativity on a non-trivial triple
        let a = tw.add(&t, &tw.one());
        let b = tw.mul(&s, &t);
        let c = tw.sub(&s, &tw.from_base(Poly::x(q)));
        assert_eq!(tw.mul(&tw.mul(&a, &b), &c), tw.mul(&a, &tw.mul(&b, &c)));
    }
}
