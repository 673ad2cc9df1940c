//! Verification campaigns: enumerate or sample admissible parameters, run
//! the checks of [`crate::divisibility`] over index grids and collect every
//! failure with enough data to replay it.
//!
//! Exhaustive enumeration keeps one representative per class of parameter
//! pairs that differ by a unit scaling which multiplies every term by a
//! unit: `f` monic for power differences, `P` monic for Lucas sequences, and
//! the leading coefficient of `Rp` in `{1, n}` (`n` the least non-square) for
//! Lehmer sequences.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coeff::{FieldDesc, FpArith};
use crate::divisibility::{
    divisibility_check, lemma_abn_check, lemma_coprime_pair_check, lemma_pmn_check, lemma_vu_check,
    strong_div_check, zsigmondy_run, ZsigmondyRun,
};
use crate::error::{Error, Result};
use crate::factorization::{factor_fp, small_factors_q};
use crate::polyring::Poly;
use crate::sequences::{SeqKind, SeqParams, Sequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    StrongDiv,
    Zsigmondy,
    PrimitivePartPhi,
    #[serde(rename = "lemma_vu")]
    LemmaVU,
    #[serde(rename = "lemma28")]
    Lemma28,
    #[serde(rename = "lemma27")]
    Lemma27,
    CoprimePairs,
    OracleEquivalence,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::StrongDiv,
        Check::Zsigmondy,
        Check::PrimitivePartPhi,
        Check::LemmaVU,
        Check::Lemma28,
        Check::Lemma27,
        Check::CoprimePairs,
        Check::OracleEquivalence,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Check::StrongDiv => "strong_div",
            Check::Zsigmondy => "zsigmondy",
            Check::PrimitivePartPhi => "primitive_part_phi",
            Check::LemmaVU => "lemma_vu",
            Check::Lemma28 => "lemma28",
            Check::Lemma27 => "lemma27",
            Check::CoprimePairs => "coprime_pairs",
            Check::OracleEquivalence => "oracle_equivalence",
        }
    }

    pub fn parse(s: &str) -> Result<Check> {
        let key = s.trim().to_ascii_lowercase().replace(['-', ' '], "_");
        Check::ALL
            .into_iter()
            .find(|c| c.name() == key || format!("{c:?}").to_ascii_lowercase() == key.replace('_', ""))
            .ok_or_else(|| Error::ConfigInvalid(format!("unknown check `{s}`")))
    }

    /// Whether the check says anything about sequences of this kind.
    pub fn applies_to(&self, kind: SeqKind) -> bool {
        match self {
            Check::LemmaVU | Check::Lemma28 | Check::Lemma27 => kind == SeqKind::Lehmer,
            Check::OracleEquivalence => kind != SeqKind::PowerDiff,
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Enumeration {
    Exhaustive,
    Random { count: usize, seed: u64 },
    /// A fixed list of `(a, b)` texts, tried for every kind.
    Explicit { params: Vec<(String, String)> },
}

fn default_lemma_n_max() -> u64 {
    19
}
fn default_pmn_max() -> u64 {
    7
}
fn default_vu_n_max() -> u64 {
    8
}
fn default_vu_m_max() -> u64 {
    5
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub field: FieldDesc,
    pub kinds: Vec<SeqKind>,
    pub max_param_degree: usize,
    pub enumeration: Enumeration,
    /// Largest index for primitive-divisor and oracle checks.
    pub n_max: u64,
    /// Largest index for strong divisibility and coprime pairs.
    pub m_max: u64,
    pub checks: Vec<Check>,
    /// Also demand primitive divisors at indices divisible by `p`.
    #[serde(default)]
    pub include_excluded: bool,
    /// Stop after the first parameter set with a failure.
    #[serde(default)]
    pub stop_on_failure: bool,
    /// Odd `n` up to this bound for the `U_n`/`Rp` coprimality check.
    #[serde(default = "default_lemma_n_max")]
    pub lemma_n_max: u64,
    /// Odd `m, n` up to this bound for the `U_{mn}/U_n`, `U_{2n}/U_n` check.
    #[serde(default = "default_pmn_max")]
    pub pmn_max: u64,
    /// `n` bound for the valuation check.
    #[serde(default = "default_vu_n_max")]
    pub vu_n_max: u64,
    /// `m` bound for the valuation check.
    #[serde(default = "default_vu_m_max")]
    pub vu_m_max: u64,
}

impl CampaignConfig {
    /// A config with every check enabled and the default lemma bounds.
    pub fn new(field: FieldDesc, kinds: Vec<SeqKind>, max_param_degree: usize, enumeration: Enumeration) -> Self {
        CampaignConfig {
            field,
            kinds,
            max_param_degree,
            enumeration,
            n_max: 20,
            m_max: 20,
            checks: Check::ALL.to_vec(),
            include_excluded: false,
            stop_on_failure: false,
            lemma_n_max: default_lemma_n_max(),
            pmn_max: default_pmn_max(),
            vu_n_max: default_vu_n_max(),
            vu_m_max: default_vu_m_max(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::ConfigInvalid(m.to_string()));
        if self.kinds.is_empty() {
            return bad("no sequence kinds selected");
        }
        if self.checks.is_empty() {
            return bad("no checks selected");
        }
        if self.n_max == 0 || self.m_max == 0 {
            return bad("n_max and m_max must be positive");
        }
        if let FieldDesc::PrimeField { p } = self.field {
            FieldDesc::prime(p).map_err(|e| Error::ConfigInvalid(e.to_string()))?;
        }
        if self.enumeration == Enumeration::Exhaustive {
            match self.field {
                FieldDesc::PrimeField { p } if p <= 7 && self.max_param_degree <= 3 => {}
                _ => return bad("exhaustive enumeration needs F_p with p <= 7 and degree <= 3"),
            }
        }
        Ok(())
    }

    /// Reads JSON (when the text starts with `{`) or `key = value` lines.
    ///
    /// Keys: `field` (`q`/`fp`), `p`, `kinds`, `max_param_degree`,
    /// `enumeration` (`exhaustive`/`random`/`explicit`), `count`, `seed`,
    /// `params` (`a,b; a,b; ...`), `n_max`, `m_max`, `checks` (list or
    /// `all`), `include_excluded`, `stop_on_failure`, `lemma_n_max`,
    /// `pmn_max`, `vu_n_max`, `vu_m_max`. `#` starts a comment.
    pub fn from_text(text: &str) -> Result<CampaignConfig> {
        let cfg: CampaignConfig = if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| Error::ConfigInvalid(e.to_string()))?
        } else {
            Self::from_key_values(text)?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn from_key_values(text: &str) -> Result<CampaignConfig> {
        let mut kv = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::ConfigInvalid(format!("line {}: expected key = value", i + 1)))?;
            kv.insert(k.trim().to_ascii_lowercase(), v.trim().to_string());
        }
        let take = |k: &str| kv.get(k).map(String::as_str);
        let num = |k: &str, default: u64| -> Result<u64> {
            match take(k) {
                None => Ok(default),
                Some(v) => v.parse().map_err(|_| Error::ConfigInvalid(format!("`{k}` is not a number: {v}"))),
            }
        };
        let flag = |k: &str| -> Result<bool> {
            match take(k) {
                None => Ok(false),
                Some("true" | "yes" | "1") => Ok(true),
                Some("false" | "no" | "0") => Ok(false),
                Some(v) => Err(Error::ConfigInvalid(format!("`{k}` is not a boolean: {v}"))),
            }
        };
        let field = match take("field").unwrap_or("q") {
            "q" | "Q" => FieldDesc::Rationals,
            "fp" => FieldDesc::prime(num("p", 0)?).map_err(|e| Error::ConfigInvalid(e.to_string()))?,
            other => return Err(Error::ConfigInvalid(format!("unknown field `{other}`"))),
        };
        let kinds = take("kinds")
            .unwrap_or("power,lucas,lehmer")
            .split(',')
            .map(|s| SeqKind::parse(s).map_err(|e| Error::ConfigInvalid(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let enumeration = match take("enumeration").unwrap_or("exhaustive") {
            "exhaustive" => Enumeration::Exhaustive,
            "random" => Enumeration::Random { count: num("count", 10)? as usize, seed: num("seed", 0)? },
            "explicit" => Enumeration::Explicit { params: parse_param_list(take("params").unwrap_or(""))? },
            other => return Err(Error::ConfigInvalid(format!("unknown enumeration `{other}`"))),
        };
        let checks = match take("checks").unwrap_or("all") {
            "all" => Check::ALL.to_vec(),
            list => list.split(',').map(Check::parse).collect::<Result<Vec<_>>>()?,
        };
        let known = [
            "field", "p", "kinds", "max_param_degree", "enumeration", "count", "seed", "params", "n_max",
            "m_max", "checks", "include_excluded", "stop_on_failure", "lemma_n_max", "pmn_max", "vu_n_max",
            "vu_m_max",
        ];
        if let Some(k) = kv.keys().find(|k| !known.contains(&k.as_str())) {
            return Err(Error::ConfigInvalid(format!("unknown key `{k}`")));
        }
        Ok(CampaignConfig {
            field,
            kinds,
            max_param_degree: num("max_param_degree", 2)? as usize,
            enumeration,
            n_max: num("n_max", 20)?,
            m_max: num("m_max", 20)?,
            checks,
            include_excluded: flag("include_excluded")?,
            stop_on_failure: flag("stop_on_failure")?,
            lemma_n_max: num("lemma_n_max", default_lemma_n_max())?,
            pmn_max: num("pmn_max", default_pmn_max())?,
            vu_n_max: num("vu_n_max", default_vu_n_max())?,
            vu_m_max: num("vu_m_max", default_vu_m_max())?,
        })
    }
}

fn parse_param_list(s: &str) -> Result<Vec<(String, String)>> {
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.split_once(',')
                .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
                .ok_or_else(|| Error::ConfigInvalid(format!("parameter pair `{p}` needs `a,b`")))
        })
        .collect()
}

/// Admissible parameters in a deterministic order; inadmissible candidates
/// are counted in [`ParamStream::rejected`].
pub struct ParamStream {
    source: Source,
    rejected: usize,
}

enum Source {
    Exhaustive { field: FieldDesc, kinds: Vec<SeqKind>, polys: Vec<Poly>, k: usize, i: usize, j: usize },
    Random { field: FieldDesc, kinds: Vec<SeqKind>, degree: usize, rng: Box<ChaCha8Rng>, left: usize, tries: usize },
    Explicit { kinds: Vec<SeqKind>, pairs: Vec<(Poly, Poly)>, k: usize, i: usize },
}

const RANDOM_TRIES_PER_SAMPLE: usize = 1000;

impl ParamStream {
    pub fn rejected(&self) -> usize {
        self.rejected
    }

    fn admit(&mut self, kind: SeqKind, a: &Poly, b: &Poly) -> Option<SeqParams> {
        match SeqParams::validate(kind, a.clone(), b.clone()) {
            Ok(p) => Some(p),
            Err(_) => {
                self.rejected += 1;
                None
            }
        }
    }
}

impl Iterator for ParamStream {
    type Item = SeqParams;

    fn next(&mut self) -> Option<SeqParams> {
        loop {
            let (kind, a, b) = match &mut self.source {
                Source::Exhaustive { field, kinds, polys, k, i, j } => {
                    if *j == polys.len() {
                        *j = 0;
                        *i += 1;
                    }
                    while *i < polys.len() && !is_representative(kinds[*k], *field, &polys[*i]) {
                        *i += 1;
                    }
                    if *i == polys.len() {
                        *i = 0;
                        *k += 1;
                        continue_if(*k < kinds.len())?;
                        continue;
                    }
                    let item = (kinds[*k], polys[*i].clone(), polys[*j].clone());
                    *j += 1;
                    item
                }
                Source::Random { field, kinds, degree, rng, left, tries } => {
                    continue_if(*left > 0)?;
                    if *tries == 0 {
                        return None;
                    }
                    *tries -= 1;
                    let kind = kinds[rng.gen_range(0..kinds.len())];
                    let a = random_poly(*field, *degree, rng);
                    let b = random_poly(*field, *degree, rng);
                    (kind, a, b)
                }
                Source::Explicit { kinds, pairs, k, i } => {
                    if *i == pairs.len() {
                        *i = 0;
                        *k += 1;
                    }
                    continue_if(*k < kinds.len() && !pairs.is_empty())?;
                    let (a, b) = pairs[*i].clone();
                    *i += 1;
                    (kinds[*k], a, b)
                }
            };
            if let Some(p) = self.admit(kind, &a, &b) {
                if let Source::Random { left, .. } = &mut self.source {
                    *left -= 1;
                }
                return Some(p);
            }
        }
    }
}

fn continue_if(cond: bool) -> Option<()> {
    cond.then_some(())
}

/// Every polynomial of degree at most `d` over `F_p`, zero first, ordered
/// by the coefficient tuple read from the leading end.
fn all_polys(p: u64, d: usize) -> Vec<Poly> {
    let field = FieldDesc::PrimeField { p };
    let total = p.pow(d as u32 + 1);
    (0..total)
        .map(|mut idx| {
            let coeffs: Vec<i64> = (0..=d)
                .map(|_| {
                    let c = idx % p;
                    idx /= p;
                    c as i64
                })
                .collect();
            Poly::from_i64s(field, &coeffs)
        })
        .collect()
}

fn least_non_square(p: u64) -> Option<u64> {
    let f = FpArith(p);
    (2..p).find(|&c| f.pow(c, (p - 1) / 2) != 1)
}

fn is_representative(kind: SeqKind, field: FieldDesc, a: &Poly) -> bool {
    let Some(lead) = a.leading() else { return true };
    if lead.is_one() {
        return true;
    }
    kind == SeqKind::Lehmer
        && least_non_square(field.characteristic()).is_some_and(|n| lead == field.from_i64(n as i64))
}

fn random_poly(field: FieldDesc, max_degree: usize, rng: &mut ChaCha8Rng) -> Poly {
    let d = rng.gen_range(0..=max_degree);
    let coeffs: Vec<i64> = (0..=d)
        .map(|_| match field {
            FieldDesc::Rationals => rng.gen_range(-3..=3),
            FieldDesc::PrimeField { p } => rng.gen_range(0..p) as i64,
        })
        .collect();
    Poly::from_i64s(field, &coeffs)
}

/// The admissible parameters of a campaign.
pub fn enumerate_params(config: &CampaignConfig) -> Result<ParamStream> {
    config.validate()?;
    let kinds = config.kinds.clone();
    let source = match &config.enumeration {
        Enumeration::Exhaustive => {
            let polys = all_polys(config.field.characteristic(), config.max_param_degree);
            Source::Exhaustive { field: config.field, kinds, polys, k: 0, i: 0, j: 0 }
        }
        Enumeration::Random { count, seed } => Source::Random {
            field: config.field,
            kinds,
            degree: config.max_param_degree,
            rng: Box::new(ChaCha8Rng::seed_from_u64(*seed)),
            left: *count,
            tries: count.saturating_mul(RANDOM_TRIES_PER_SAMPLE),
        },
        Enumeration::Explicit { params } => {
            let parse = |s: &str| Poly::parse(config.field, s).map_err(|e| Error::ConfigInvalid(e.to_string()));
            let pairs = params
                .iter()
                .map(|(a, b)| Ok((parse(a)?, parse(b)?)))
                .collect::<Result<Vec<_>>>()?;
            Source::Explicit { kinds, pairs, k: 0, i: 0 }
        }
    };
    Ok(ParamStream { source, rejected: 0 })
}

/// Indices and polynomials that falsify a check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub indices: Vec<u64>,
    pub polys: Vec<Poly>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// Position of the parameter set in the enumeration.
    pub param_index: usize,
    pub kind: SeqKind,
    pub field: FieldDesc,
    pub a: Poly,
    pub b: Poly,
    pub check: Check,
    /// At most [`MAX_WITNESSES`] witnesses are kept.
    pub witnesses: Vec<Witness>,
    pub witness_count: usize,
}

pub const MAX_WITNESSES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub check: Check,
    pub run: usize,
    pub passed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub config: CampaignConfig,
    pub execution: Execution,
    pub params_yielded: usize,
    pub params_rejected: usize,
    /// One case is one parameter set under one applicable check.
    pub cases_run: usize,
    pub cases_passed: usize,
    pub per_check: Vec<CheckTally>,
    pub failures: Vec<Failure>,
    /// Set when `stop_on_failure` cut the run short.
    pub stopped_early: bool,
    pub wall_time_secs: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "field {}  kinds {}  params {} (rejected {})  {:.2}s {:?}",
            self.config.field,
            self.config.kinds.iter().map(SeqKind::name).collect::<Vec<_>>().join(","),
            self.params_yielded,
            self.params_rejected,
            self.wall_time_secs,
            self.execution,
        );
        let _ = writeln!(out, "{:<20} {:>8} {:>8} {:>8}", "check", "run", "passed", "failed");
        for t in &self.per_check {
            let _ = writeln!(out, "{:<20} {:>8} {:>8} {:>8}", t.check.name(), t.run, t.passed, t.run - t.passed);
        }
        let _ = writeln!(
            out,
            "{:<20} {:>8} {:>8} {:>8}",
            "total",
            self.cases_run,
            self.cases_passed,
            self.cases_run - self.cases_passed
        );
        for f in &self.failures {
            let w = f.witnesses.first();
            let _ = writeln!(
                out,
                "FAIL #{} {} ({}, {}) {}: {} witness(es){}",
                f.param_index,
                f.kind,
                f.a,
                f.b,
                f.check.name(),
                f.witness_count,
                w.map(|w| format!(", first at {:?}: {}", w.indices, w.detail)).unwrap_or_default(),
            );
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    Sequential,
    /// Falls back to sequential without the `parallel` feature.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

fn map_ordered<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel {
        use rayon::prelude::*;
        return items.par_iter().enumerate().map(|(i, t)| f(i, t)).collect();
    }
    let _ = exec;
    items.iter().enumerate().map(|(i, t)| f(i, t)).collect()
}

/// Runs the campaign with the default execution mode.
pub fn run_campaign(config: &CampaignConfig) -> Result<VerifyReport> {
    run_campaign_with(config, Execution::default())
}

pub fn run_campaign_with(config: &CampaignConfig, exec: Execution) -> Result<VerifyReport> {
    let start = Instant::now();
    let mut stream = enumerate_params(config)?;
    let params: Vec<SeqParams> = stream.by_ref().collect();
    let rejected = stream.rejected();
    let first_failure = AtomicUsize::new(usize::MAX);
    let outcomes = map_ordered(&params, exec, |i, p| {
        if config.stop_on_failure && i > first_failure.load(Ordering::Relaxed) {
            return None;
        }
        let cases = run_param_set(config, p);
        if config.stop_on_failure && cases.iter().any(|(_, w)| !w.is_empty()) {
            first_failure.fetch_min(i, Ordering::Relaxed);
        }
        Some(cases)
    });
    let cutoff = first_failure.into_inner();
    let mut per_check: Vec<CheckTally> =
        config.checks.iter().map(|&check| CheckTally { check, run: 0, passed: 0 }).collect();
    let mut failures = Vec::new();
    for (i, (p, cases)) in params.iter().zip(outcomes).enumerate() {
        if config.stop_on_failure && i > cutoff {
            break;
        }
        for (check, witnesses) in cases.expect("cases before the cutoff all ran") {
            let tally = per_check.iter_mut().find(|t| t.check == check).expect("configured check");
            tally.run += 1;
            if witnesses.is_empty() {
                tally.passed += 1;
                continue;
            }
            failures.push(Failure {
                param_index: i,
                kind: p.kind(),
                field: p.field(),
                a: p.a().clone(),
                b: p.b().clone(),
                check,
                witness_count: witnesses.len(),
                witnesses: witnesses.into_iter().take(MAX_WITNESSES).collect(),
            });
        }
    }
    let cases_run = per_check.iter().map(|t| t.run).sum();
    let cases_passed = per_check.iter().map(|t| t.passed).sum();
    Ok(VerifyReport {
        config: config.clone(),
        execution: exec,
        params_yielded: params.len(),
        params_rejected: rejected,
        cases_run,
        cases_passed,
        per_check,
        failures,
        stopped_early: config.stop_on_failure && cutoff != usize::MAX,
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

/// Runs every applicable configured check on one parameter set.
pub fn run_param_set(config: &CampaignConfig, params: &SeqParams) -> Vec<(Check, Vec<Witness>)> {
    let mut seq = Sequence::new(params.clone());
    let mut zsig: Option<Result<ZsigmondyRun>> = None;
    let mut out = Vec::new();
    for &check in &config.checks {
        if !check.applies_to(params.kind()) {
            continue;
        }
        let witnesses = match run_check(config, &mut seq, &mut zsig, check) {
            Ok(w) => w,
            Err(e) => vec![Witness { indices: vec![], polys: vec![], detail: format!("{}: {e}", e.name()) }],
        };
        out.push((check, witnesses));
    }
    out
}

fn witness(indices: Vec<u64>, polys: Vec<Poly>, detail: impl Into<String>) -> Witness {
    Witness { indices, polys, detail: detail.into() }
}

fn run_check(
    cfg: &CampaignConfig,
    seq: &mut Sequence,
    zsig: &mut Option<Result<ZsigmondyRun>>,
    check: Check,
) -> Result<Vec<Witness>> {
    let mut ws = Vec::new();
    match check {
        Check::StrongDiv => {
            seq.fill(cfg.m_max);
            for m in 1..=cfg.m_max {
                for n in m..=cfg.m_max {
                    if !strong_div_check(seq, m, n) {
                        let g = seq.term(m).clone().gcd(seq.term(n))?;
                        ws.push(witness(
                            vec![m, n],
                            vec![seq.term(m).clone(), seq.term(n).clone(), g],
                            "gcd of the terms is not associated to the term at gcd(m, n)",
                        ));
                    }
                    if !divisibility_check(seq, m, n) {
                        ws.push(witness(
                            vec![m, n],
                            vec![seq.term(m).clone(), seq.term(n).clone()],
                            "term(m) does not divide term(n)",
                        ));
                    }
                }
            }
        }
        Check::Zsigmondy | Check::PrimitivePartPhi => {
            let run = zsig
                .get_or_insert_with(|| zsigmondy_run(seq, cfg.n_max, cfg.include_excluded, false))
                .as_ref()
                .map_err(Clone::clone)?;
            let report = |n: u64| &run.reports[n as usize - 1];
            if check == Check::Zsigmondy {
                for &n in &run.missing_primitive {
                    let r = report(n);
                    let detail = if r.excluded {
                        "no primitive divisor at an excluded index".to_string()
                    } else {
                        match seq.phi_eval(n) {
                            Ok(phi) if phi.is_unit() => format!("no primitive divisor; phi_eval = {phi} is a unit"),
                            _ => "no primitive divisor".to_string(),
                        }
                    };
                    ws.push(witness(vec![n], vec![r.term.clone()], detail));
                }
            } else {
                for &n in &run.phi_mismatch {
                    let r = report(n);
                    let phi = seq.phi_eval(n)?;
                    ws.push(witness(vec![n], vec![r.primitive_part.clone(), phi], "primitive part differs from phi_eval"));
                }
            }
        }
        Check::LemmaVU => {
            let p = seq.params().characteristic();
            for n in 3..=cfg.vu_n_max {
                let un = seq.term(n).clone();
                if un.is_constant() {
                    continue;
                }
                let primes = if p == 0 {
                    small_factors_q(&un)?.0
                } else {
                    factor_fp(&un)?.factors.into_iter().map(|(f, _)| f).collect()
                };
                for q in &primes {
                    for m in (1..=cfg.vu_m_max).filter(|m| p == 0 || m % p != 0) {
                        if !lemma_vu_check(seq, q, n, m)? {
                            ws.push(witness(
                                vec![n, m],
                                vec![q.clone(), un.clone(), seq.term(m * n).clone()],
                                "v_q(U_mn) differs from v_q(U_n)",
                            ));
                        }
                    }
                }
            }
        }
        Check::Lemma28 => {
            for n in (1..=cfg.lemma_n_max).step_by(2) {
                if !lemma_abn_check(seq, n)? {
                    ws.push(witness(vec![n], vec![seq.term(n).clone()], "U_n and Rp are not coprime"));
                }
            }
        }
        Check::Lemma27 => {
            for m in (1..=cfg.pmn_max).step_by(2) {
                for n in (1..=cfg.pmn_max).step_by(2) {
                    if !lemma_pmn_check(seq, m, n)? {
                        ws.push(witness(vec![m, n], vec![], "U_mn/U_n and U_2n/U_n are not coprime"));
                    }
                }
            }
        }
        Check::CoprimePairs => {
            for m in 1..=cfg.m_max {
                for n in (m + 1..=cfg.m_max).filter(|n| num_integer::gcd(m, *n) == 1) {
                    if !lemma_coprime_pair_check(seq, m, n)? {
                        ws.push(witness(
                            vec![m, n],
                            vec![seq.term(m).clone(), seq.term(n).clone()],
                            "terms at coprime indices share a factor",
                        ));
                    }
                }
            }
        }
        Check::OracleEquivalence => {
            seq.fill(cfg.n_max);
            for n in 1..=cfg.n_max {
                let term = seq.term(n).clone();
                match seq.oracle_term(n) {
                    Ok(o) if o == term => {}
                    Ok(o) => ws.push(witness(vec![n], vec![term, o], "recurrence and oracle disagree")),
                    Err(e) => ws.push(witness(vec![n], vec![term], format!("{}: {e}", e.name()))),
                }
            }
        }
    }
    Ok(ws)
}
