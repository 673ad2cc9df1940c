//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::cell::OnceCell;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::Integer;

use seqdiv::cyclokit::{
    check_res_pm_pn, cn_form, cyclotomic_form, divisors, pn_form, rem_mod_xy_squared, signed_xy_power,
    x_plus_y_squared, BivarForm,
};
use seqdiv::divisibility::primitive_report;
use seqdiv::factorization::factor_fp;
use seqdiv::sequences::{SeqKind, Sequence};
use seqdiv::verifier::{enumerate_params, run_campaign, CampaignConfig, Check, Enumeration, VerifyReport};
use seqdiv::{FieldDesc, Poly};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn fp(p: u64) -> FieldDesc {
    FieldDesc::prime(p).unwrap()
}

fn cyclotomic_identities() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=200u64 {
        let mut all = BivarForm::constant(1);
        let mut from_two = BivarForm::constant(1);
        for d in divisors(n) {
            all = all.mul(&cyclotomic_form(d));
            if d >= 2 {
                from_two = from_two.mul(&cyclotomic_form(d));
            }
        }
        if all != BivarForm::x_pow_minus_y_pow(n as usize) || from_two != pn_form(n) {
            bad.push(n);
        }
    }
    outcome(bad.is_empty(), format!("n <= 200, mismatches {bad:?}"))
}

fn resultants() -> Outcome {
    let mut bad = Vec::new();
    let mut units = 0;
    for n in 3..=30u64 {
        for m in 2..n {
            let (ok, r) = check_res_pm_pn(m, n);
            if !ok {
                bad.push((m, n, r.to_string()));
            } else if m.gcd(&n) == 1 {
                units += 1;
            }
        }
    }
    outcome(bad.is_empty(), format!("{units} coprime pairs with |Res| = 1, failures {bad:?}"))
}

fn congruences() -> Outcome {
    let mut bad = Vec::new();
    for k in 1..=60usize {
        let sign = if k % 2 == 0 { 2 } else { -2 };
        let lhs = BivarForm::monomial(2 * k, 0)
            .add(&BivarForm::monomial(0, 2 * k))
            .unwrap()
            .sub(&BivarForm::monomial(k, k).scale(&sign.into()))
            .unwrap();
        if rem_mod_xy_squared(&lhs).is_some() {
            bad.push(format!("even power k = {k}"));
        }
        let odd = pn_form(2 * k as u64 + 1).sub(&signed_xy_power(k)).unwrap();
        if rem_mod_xy_squared(&odd).is_some() {
            bad.push(format!("P_(2k+1) k = {k}"));
        }
    }
    for n in (3..=99u64).step_by(2) {
        let c = cn_form(n).unwrap();
        let back = x_plus_y_squared().mul(&c).add(&signed_xy_power(((n - 1) / 2) as usize)).unwrap();
        if back != pn_form(n) || !c.is_symmetric() || c.degree() != n as usize - 3 {
            bad.push(format!("C_{n}"));
        }
    }
    outcome(bad.is_empty(), format!("k <= 60, odd n <= 99, failures {bad:?}"))
}

fn describe(r: &VerifyReport) -> String {
    format!(
        "{} params ({} rejected), {}/{} cases",
        r.params_yielded, r.params_rejected, r.cases_passed, r.cases_run
    )
}

fn first_failures(reports: &[VerifyReport]) -> String {
    reports
        .iter()
        .flat_map(|r| r.failures.iter())
        .take(3)
        .map(|f| format!("[{} {} ({}, {}) {} {:?}]", f.field, f.kind, f.a, f.b, f.check.name(), f.witnesses.first()))
        .collect::<Vec<_>>()
        .join(" ")
}

fn power_difference_grid() -> Outcome {
    let mut reports = Vec::new();
    for p in [2, 3, 5] {
        let mut cfg = CampaignConfig::new(fp(p), vec![SeqKind::PowerDiff], 2, Enumeration::Exhaustive);
        cfg.checks = vec![Check::StrongDiv, Check::Zsigmondy, Check::PrimitivePartPhi];
        cfg.n_max = 20;
        cfg.m_max = 20;
        reports.push(run_campaign(&cfg).unwrap());
    }
    let ok = reports.iter().all(VerifyReport::passed);
    let summary: Vec<_> = reports.iter().map(|r| format!("F_{}: {}", r.config.field.characteristic(), describe(r))).collect();
    outcome(ok, format!("{} {}", summary.join("; "), first_failures(&reports)))
}

fn rational_list() -> Vec<(String, String)> {
    [("x", "1"), ("x^2+1", "x"), ("x+1", "x^2+x+1"), ("2*x+1", "x^2")]
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .to_vec()
}

fn rational_campaign() -> Outcome {
    let mut cfg = CampaignConfig::new(
        FieldDesc::Rationals,
        vec![SeqKind::Lucas, SeqKind::Lehmer],
        2,
        Enumeration::Explicit { params: rational_list() },
    );
    cfg.checks = vec![Check::StrongDiv, Check::Zsigmondy, Check::PrimitivePartPhi];
    cfg.n_max = 18;
    cfg.m_max = 18;
    let r = run_campaign(&cfg).unwrap();
    let ok = r.passed() && r.params_yielded == 8;
    outcome(ok, format!("{} {}", describe(&r), first_failures(std::slice::from_ref(&r))))
}

fn fields() -> [FieldDesc; 4] {
    [FieldDesc::Rationals, fp(2), fp(3), fp(5)]
}

fn random_config(field: FieldDesc, kind: SeqKind, seed: u64) -> CampaignConfig {
    CampaignConfig::new(field, vec![kind], 3, Enumeration::Random { count: 50, seed })
}

fn oracle_equivalence() -> Outcome {
    let mut reports = Vec::new();
    for (i, field) in fields().into_iter().enumerate() {
        for kind in [SeqKind::Lucas, SeqKind::Lehmer] {
            let mut cfg = random_config(field, kind, 100 + i as u64);
            cfg.checks = vec![Check::OracleEquivalence];
            cfg.n_max = 40;
            reports.push(run_campaign(&cfg).unwrap());
        }
    }
    let ok = reports.iter().all(|r| r.passed() && r.params_yielded == 50);
    let total: usize = reports.iter().map(|r| r.cases_passed).sum();
    outcome(ok, format!("{total} parameter sets x 40 terms agree {}", first_failures(&reports)))
}

/// Grids for the lemma checks: the rational list, the random sets of the
/// oracle criterion, and every Lehmer pair of degree <= 2 over F_2, F_3, F_5.
fn lemma_reports() -> Vec<VerifyReport> {
    let checks = vec![Check::LemmaVU, Check::Lemma28, Check::Lemma27, Check::CoprimePairs];
    let mut cfgs = Vec::new();
    let mut cfg = CampaignConfig::new(
        FieldDesc::Rationals,
        SeqKind::ALL.to_vec(),
        2,
        Enumeration::Explicit { params: rational_list() },
    );
    cfg.checks = checks.clone();
    cfgs.push(cfg);
    for (i, field) in fields().into_iter().enumerate() {
        for kind in [SeqKind::Lucas, SeqKind::Lehmer] {
            let mut cfg = random_config(field, kind, 100 + i as u64);
            cfg.checks = checks.clone();
            cfgs.push(cfg);
        }
    }
    for p in [2, 3, 5] {
        let mut cfg = CampaignConfig::new(fp(p), vec![SeqKind::Lehmer], 2, Enumeration::Exhaustive);
        cfg.checks = checks.clone();
        cfgs.push(cfg);
    }
    cfgs.iter().map(|c| run_campaign(c).unwrap()).collect()
}

fn lemma_outcome(reports: &[VerifyReport], checks: &[Check]) -> Outcome {
    let mut run = 0;
    let mut passed = 0;
    for r in reports {
        for t in r.per_check.iter().filter(|t| checks.contains(&t.check)) {
            run += t.run;
            passed += t.passed;
        }
    }
    let failing: Vec<_> = reports
        .iter()
        .flat_map(|r| r.failures.iter())
        .filter(|f| checks.contains(&f.check))
        .take(3)
        .map(|f| format!("[{} {} ({}, {}) {} {:?}]", f.field, f.kind, f.a, f.b, f.check.name(), f.witnesses.first()))
        .collect();
    outcome(run > 0 && run == passed, format!("{passed}/{run} cases {}", failing.join(" ")))
}

fn sabotage() -> Outcome {
    let mut cfg = CampaignConfig::new(
        fp(2),
        vec![SeqKind::PowerDiff],
        1,
        Enumeration::Explicit { params: vec![("x+1".into(), "x".into())] },
    );
    cfg.checks = vec![Check::Zsigmondy];
    cfg.n_max = 20;
    let pruned = run_campaign(&cfg).unwrap();
    cfg.include_excluded = true;
    let unpruned = run_campaign(&cfg).unwrap();
    let indices: Vec<u64> = unpruned
        .failures
        .iter()
        .flat_map(|f| f.witnesses.iter().flat_map(|w| w.indices.clone()))
        .collect();
    outcome(
        pruned.passed() && !unpruned.passed() && !indices.is_empty(),
        format!("pruned run passes; unpruned run fails at n = {indices:?}"),
    )
}

/// `prod q^v_q(term(n))` over the irreducible `q | term(n)` dividing no
/// earlier term, from full factorizations.
fn factored_primitive_part(field: FieldDesc, factored: &[Vec<(Poly, u32)>], n: usize) -> Poly {
    let mut out = Poly::one(field);
    for (q, e) in &factored[n - 1] {
        let earlier = factored[..n - 1].iter().any(|fs| fs.iter().any(|(r, _)| r == q));
        if !earlier {
            out = &out * &q.pow(u64::from(*e));
        }
    }
    out
}

fn primitive_part_oracle() -> Outcome {
    let mut compared = 0usize;
    let mut bad = Vec::new();
    for p in [2, 3, 5] {
        let cfg = CampaignConfig::new(fp(p), vec![SeqKind::PowerDiff], 2, Enumeration::Exhaustive);
        for params in enumerate_params(&cfg).unwrap() {
            let mut seq = Sequence::new(params);
            let factored: Vec<_> = seq.terms(12).iter().map(|t| factor_fp(t).unwrap().factors).collect();
            for n in 1..=12 {
                let stripped = primitive_report(&mut seq, n as u64, false).unwrap().primitive_part;
                compared += 1;
                if !stripped.is_associated(&factored_primitive_part(fp(p), &factored, n)) && bad.len() < 3 {
                    bad.push(format!("{} n = {n}", seq.params()));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{compared} terms compared, mismatches {bad:?}"))
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let mut all_ok = true;
    let mut report = |id: u32, name: &str, limit: Option<Duration>, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let o = f();
        let took = start.elapsed();
        let in_time = limit.is_none_or(|l| took <= l);
        let ok = o.ok && in_time;
        all_ok &= ok;
        let budget = limit.map(|l| format!(" (limit {}s)", l.as_secs())).unwrap_or_default();
        println!(
            "criterion {id:>2} {}: {name} [{:.1}s{budget}] {}",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            o.detail
        );
    };
    let secs = |s| Some(Duration::from_secs(s));
    report(1, "cyclotomic product identities", secs(10), &cyclotomic_identities);
    report(2, "resultants of P_m and P_n", secs(30), &resultants);
    report(3, "congruences modulo (X+Y)^2 and C_n", None, &congruences);
    report(4, "power differences over F_2, F_3, F_5", secs(300), &power_difference_grid);
    report(5, "Lucas and Lehmer over Q", secs(120), &rational_campaign);
    report(6, "recurrence against defining quotient", None, &oracle_equivalence);
    // criteria 7 and 8 share one set of campaigns
    let lemmas = OnceCell::new();
    report(7, "valuation stability", None, &|| {
        lemma_outcome(lemmas.get_or_init(lemma_reports), &[Check::LemmaVU])
    });
    report(8, "coprimality lemmas", None, &|| {
        lemma_outcome(lemmas.get_or_init(lemma_reports), &[Check::Lemma28, Check::Lemma27, Check::CoprimePairs])
    });
    report(9, "unpruned Zsigmondy run fails", None, &sabotage);
    report(10, "primitive part against factorization", None, &primitive_part_oracle);
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
