//! Strong divisibility, primitive parts and the coprimality and valuation
//! statements behind them, as checks on concrete sequences.
//!
//! The primitive part of a term is found without factoring: every earlier
//! term is gcd-stripped from it until the gcd is a unit, which removes each
//! non-primitive irreducible with its full multiplicity and leaves the
//! primitive ones untouched. This works the same over `Q` and `F_p`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorization::factor_fp;
use crate::polyring::Poly;
use crate::sequences::{SeqKind, Sequence};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeFactor {
    pub factor: Poly,
    pub exp: u32,
}

/// What is known about the primitive divisors of one term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimitiveReport {
    pub n: u64,
    /// Position in the subsequence with the excluded indices deleted;
    /// `None` for an excluded index.
    pub position: Option<u64>,
    pub term: Poly,
    /// Monic; `1` when there is no primitive divisor.
    pub primitive_part: Poly,
    pub has_primitive: bool,
    /// Whether `primitive_part` generates the same ideal as
    /// [`Sequence::phi_eval`]. Always `false` for `n < 3` and for excluded `n`.
    pub matches_phi: bool,
    pub excluded: bool,
    /// Irreducible factorization of `primitive_part`; only over `F_p`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primitive_primes: Option<Vec<PrimeFactor>>,
}

/// Whether `gcd(term(m), term(n))` and `term(gcd(m, n))` are associated.
pub fn strong_div_check(seq: &mut Sequence, m: u64, n: u64) -> bool {
    seq.fill(m.max(n));
    let g = seq.term(m).clone().gcd(seq.term(n)).expect("one field");
    g.is_associated(seq.term(m.gcd(&n)))
}

/// `m | n` implies `term(m) | term(n)`; vacuously true otherwise.
pub fn divisibility_check(seq: &mut Sequence, m: u64, n: u64) -> bool {
    if !n.is_multiple_of(m) {
        return true;
    }
    seq.fill(n);
    seq.term(m).clone().divides(seq.term(n)).expect("one field")
}

/// Position of `n` once every excluded index is deleted.
pub fn pruned_position(seq: &Sequence, n: u64) -> Option<u64> {
    match seq.params().characteristic() {
        0 => Some(n),
        p if n.is_multiple_of(p) => None,
        p => Some(n - n / p),
    }
}

/// The primitive part of `term(n)`, with its irreducible factors over `F_p`.
pub fn primitive_part(seq: &mut Sequence, n: u64) -> Result<PrimitiveReport> {
    primitive_report(seq, n, true)
}

/// As [`primitive_part`]; `with_primes = false` skips the factorization.
pub fn primitive_report(seq: &mut Sequence, n: u64, with_primes: bool) -> Result<PrimitiveReport> {
    if n == 0 {
        return Err(Error::PreconditionViolated("sequences are indexed from 1".into()));
    }
    seq.fill(n);
    let term = seq.term(n).clone();
    let mut b = term.clone();
    for m in 1..n {
        let earlier = seq.term(m);
        loop {
            let g = b.gcd(earlier)?;
            if g.is_unit() {
                break;
            }
            b = b.exact_div(&g)?;
        }
    }
    let primitive_part = b.monic();
    let excluded = seq.params().is_excluded(n);
    let has_primitive = !primitive_part.is_unit();
    let matches_phi = n >= 3 && !excluded && primitive_part.is_associated(&seq.phi_eval(n)?);
    let primitive_primes = match (with_primes, primitive_part.fp_coeffs()) {
        (true, Some(_)) => Some(
            factor_fp(&primitive_part)?
                .factors
                .into_iter()
                .map(|(factor, exp)| PrimeFactor { factor, exp })
                .collect(),
        ),
        _ => None,
    };
    Ok(PrimitiveReport {
        n,
        position: pruned_position(seq, n),
        term,
        primitive_part,
        has_primitive,
        matches_phi,
        excluded,
        primitive_primes,
    })
}

/// Reports for `1..=n_max` and the indices at which the primitive divisor
/// statement fails.
#[derive(Debug, Clone, Serialize)]
pub struct ZsigmondyRun {
    pub reports: Vec<PrimitiveReport>,
    /// Checked indices without a primitive divisor.
    pub missing_primitive: Vec<u64>,
    /// Non-excluded `n >= 3` whose primitive part is not `<Φ_n>`.
    pub phi_mismatch: Vec<u64>,
}

impl ZsigmondyRun {
    pub fn holds(&self) -> bool {
        self.missing_primitive.is_empty() && self.phi_mismatch.is_empty()
    }

    /// The weaker reading that only asks for a primitive divisor from the
    /// third position of the pruned subsequence on.
    pub fn holds_by_position(&self) -> bool {
        self.reports
            .iter()
            .filter(|r| r.position.is_some_and(|k| k >= 3))
            .all(|r| r.has_primitive && r.matches_phi)
    }
}

/// Primitive parts for `1..=n_max`. Every `n >= 3` with `excluded = false`
/// must have a primitive divisor equal to `<Φ_n>`; with `include_excluded`
/// the excluded `n >= 3` are also required to have a primitive divisor.
pub fn zsigmondy_check(seq: &mut Sequence, n_max: u64, include_excluded: bool) -> Result<ZsigmondyRun> {
    zsigmondy_run(seq, n_max, include_excluded, true)
}

pub(crate) fn zsigmondy_run(
    seq: &mut Sequence,
    n_max: u64,
    include_excluded: bool,
    with_primes: bool,
) -> Result<ZsigmondyRun> {
    let mut run = ZsigmondyRun { reports: Vec::new(), missing_primitive: Vec::new(), phi_mismatch: Vec::new() };
    for n in 1..=n_max {
        let r = primitive_report(seq, n, with_primes)?;
        if n >= 3 && (include_excluded || !r.excluded) && !r.has_primitive {
            run.missing_primitive.push(n);
        }
        if n >= 3 && !r.excluded && !r.matches_phi {
            run.phi_mismatch.push(n);
        }
        run.reports.push(r);
    }
    Ok(run)
}

fn require_lehmer(seq: &Sequence) -> Result<()> {
    if seq.params().kind() == SeqKind::Lehmer {
        Ok(())
    } else {
        Err(Error::PreconditionViolated("check applies to Lehmer sequences".into()))
    }
}

/// `v_q(U_{mn}) = v_q(U_n)` for an irreducible `q | U_n` and `p ∤ m`.
pub fn lemma_vu_check(seq: &mut Sequence, q: &Poly, n: u64, m: u64) -> Result<bool> {
    require_lehmer(seq)?;
    if n < 3 || m == 0 {
        return Err(Error::PreconditionViolated(format!("need n >= 3 and m >= 1, got n = {n}, m = {m}")));
    }
    if seq.params().is_excluded(m) {
        return Err(Error::PreconditionViolated(format!("the characteristic divides m = {m}")));
    }
    seq.fill(m * n);
    if !q.divides(seq.term(n))? {
        return Err(Error::PreconditionViolated(format!("{q} does not divide U_{n}")));
    }
    Ok(seq.term(m * n).valuation(q)? == seq.term(n).valuation(q)?)
}

/// `U_n` and `Rp` generate coprime ideals (odd `n`).
pub fn lemma_abn_check(seq: &mut Sequence, n: u64) -> Result<bool> {
    require_lehmer(seq)?;
    if n.is_multiple_of(2) {
        return Err(Error::PreconditionViolated(format!("n = {n} is even")));
    }
    let rp = seq.params().a().clone();
    Ok(seq.term(n).ideals_coprime(&rp))
}

/// `U_{mn}/U_n` and `U_{2n}/U_n` generate coprime ideals (odd `m`, `n`).
pub fn lemma_pmn_check(seq: &mut Sequence, m: u64, n: u64) -> Result<bool> {
    require_lehmer(seq)?;
    if m.is_multiple_of(2) || n.is_multiple_of(2) {
        return Err(Error::PreconditionViolated(format!("m = {m} and n = {n} must be odd")));
    }
    seq.fill(m.max(2) * n);
    let un = seq.term(n).clone();
    let pm = seq.term(m * n).exact_div(&un)?;
    let plus = seq.term(2 * n).exact_div(&un)?;
    Ok(pm.ideals_coprime(&plus))
}

/// `term(m)` and `term(n)` generate coprime ideals when `gcd(m, n) = 1`.
///
/// For power differences the pair checked is `P_m(f, g)`, `P_n(f, g)`, that
/// is `F_m/(f - g)` and `F_n/(f - g)`.
pub fn lemma_coprime_pair_check(seq: &mut Sequence, m: u64, n: u64) -> Result<bool> {
    if m == 0 || n == 0 || m.gcd(&n) != 1 {
        return Err(Error::PreconditionViolated(format!("m = {m} and n = {n} are not coprime")));
    }
    seq.fill(m.max(n));
    let (tm, tn) = (seq.term(m).clone(), seq.term(n).clone());
    if seq.params().kind() == SeqKind::PowerDiff {
        let d = seq.term(1).clone();
        return Ok(tm.exact_div(&d)?.ideals_coprime(&tn.exact_div(&d)?));
    }
    Ok(tm.ideals_coprime(&tn))
}
