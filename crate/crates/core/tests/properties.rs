use proptest::prelude::*;

use seqdiv::cyclokit::{cyclotomic_form, divisors};
use seqdiv::divisibility::{primitive_part, strong_div_check};
use seqdiv::sequences::{SeqKind, SeqParams, Sequence};
use seqdiv::{FieldDesc, Poly};

fn field() -> impl Strategy<Value = FieldDesc> {
    prop_oneof![
        Just(FieldDesc::Rationals),
        Just(FieldDesc::PrimeField { p: 2 }),
        Just(FieldDesc::PrimeField { p: 3 }),
        Just(FieldDesc::PrimeField { p: 5 }),
        Just(FieldDesc::PrimeField { p: 7 }),
    ]
}

fn coeffs(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 1..=max_deg + 1)
}

fn params(kind: SeqKind) -> impl Strategy<Value = SeqParams> {
    (field(), coeffs(2), coeffs(2)).prop_filter_map("inadmissible", move |(f, a, b)| {
        SeqParams::validate(kind, Poly::from_i64s(f, &a), Poly::from_i64s(f, &b)).ok()
    })
}

fn any_params() -> impl Strategy<Value = SeqParams> {
    prop_oneof![params(SeqKind::PowerDiff), params(SeqKind::Lucas), params(SeqKind::Lehmer)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn recurrence_matches_oracle(p in prop_oneof![params(SeqKind::Lucas), params(SeqKind::Lehmer)]) {
        let mut s = Sequence::new(p);
        for n in 1..=16 {
            let t = s.term(n).clone();
            prop_assert_eq!(s.oracle_term(n).unwrap(), t);
        }
    }

    #[test]
    fn power_difference_is_product_of_cyclotomic_values(p in params(SeqKind::PowerDiff)) {
        let mut s = Sequence::new(p.clone());
        for n in 1..=14u64 {
            let product = divisors(n).into_iter().fold(Poly::one(p.field()), |acc, d| {
                &acc * &cyclotomic_form(d).eval(p.a(), p.b()).unwrap()
            });
            prop_assert_eq!(&product, s.term(n));
        }
    }

    #[test]
    fn lehmer_terms_reassemble_from_ward_factors(p in params(SeqKind::Lehmer)) {
        let mut s = Sequence::new(p.clone());
        for n in 1..=14u64 {
            let mut product = Poly::one(p.field());
            for d in divisors(n) {
                product = &product * &s.ward_qn(d).unwrap();
            }
            prop_assert_eq!(&product, s.term(n));
        }
    }

    #[test]
    fn frobenius_collapses_multiples_of_p(p in any_params()) {
        let ch = p.characteristic();
        prop_assume!(ch > 0 && ch <= 5);
        let f = p.field();
        let (a, b) = (p.a().clone(), p.b().clone());
        // (λ - η)^2, i.e. P^2 - 4Q or Rp - 4Q
        let disc = match p.kind() {
            SeqKind::Lucas => &(&a * &a) - &(&Poly::from_i64s(f, &[4]) * &b),
            _ => &a - &(&Poly::from_i64s(f, &[4]) * &b),
        };
        let half = (ch - 1) / 2;
        let mut s = Sequence::new(p.clone());
        for n in 1..=3u64 {
            let small = s.term(n).clone().pow(ch);
            let expected = match (p.kind(), ch, n % 2) {
                (SeqKind::PowerDiff, _, _) => small,
                (SeqKind::Lucas, 2, _) => &small * &a,
                (SeqKind::Lucas, _, _) => &small * &disc.pow(half),
                (SeqKind::Lehmer, 2, 1) => small,
                (SeqKind::Lehmer, 2, _) => &small * &a,
                (SeqKind::Lehmer, _, 1) => &small * &disc.pow(half),
                (SeqKind::Lehmer, _, _) => &small * &(&disc * &a).pow(half),
            };
            prop_assert_eq!(s.term(ch * n), &expected, "n = {}", n);
        }
    }

    #[test]
    fn power_difference_degree_growth(p in params(SeqKind::PowerDiff)) {
        let (df, dg) = (p.a().degree().unwrap(), p.b().degree().unwrap());
        prop_assume!(df != dg);
        let mut s = Sequence::new(p);
        for n in 1..=12u64 {
            prop_assert_eq!(s.term(n).degree(), Some(n as usize * df.max(dg)));
        }
    }

    #[test]
    fn strong_divisibility_everywhere(p in any_params()) {
        let mut s = Sequence::new(p);
        for m in 1..=12 {
            for n in m..=12 {
                prop_assert!(strong_div_check(&mut s, m, n), "m = {}, n = {}", m, n);
            }
        }
    }

    #[test]
    fn primitive_report_invariants(p in any_params()) {
        let mut s = Sequence::new(p.clone());
        for n in 1..=10 {
            let r = primitive_part(&mut s, n).unwrap();
            prop_assert!(r.primitive_part.is_monic());
            prop_assert!(r.primitive_part.divides(&r.term).unwrap());
            prop_assert_eq!(r.has_primitive, !r.primitive_part.is_unit());
            if let Some(primes) = &r.primitive_primes {
                let back = primes
                    .iter()
                    .fold(Poly::one(p.field()), |acc, f| &acc * &f.factor.pow(u64::from(f.exp)));
                prop_assert!(back.is_associated(&r.primitive_part));
            }
            if n >= 3 && !r.excluded {
                prop_assert!(r.matches_phi, "n = {}", n);
            }
        }
    }
}
