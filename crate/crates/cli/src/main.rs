//! `seq`: generate sequences, inspect primitive parts and run campaigns.
//!
//! Exit codes: 0 success, 1 a campaign found failures, 2 bad input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use seqdiv::cyclokit::{cyclotomic_form, pn_form, resultant};
use seqdiv::divisibility::{primitive_part, PrimitiveReport};
use seqdiv::factorization::{factor_fp_seeded, squarefree_decomp, Factorization, DEFAULT_SEED};
use seqdiv::sequences::{SeqKind, SeqParams, Sequence};
use seqdiv::verifier::{run_campaign, CampaignConfig, Check, Enumeration};
use seqdiv::{Error, FieldDesc, Poly, Result};

#[derive(Parser)]
#[command(name = "seq", version, about = "Lucas, Lehmer and power-difference sequences over Q[x] and F_p[x]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the terms 1..n.
    Gen {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Primitive part of one term (--n) or of every term up to --n-max.
    Primitive {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, conflicts_with = "n_max", required_unless_present = "n_max")]
        n: Option<u64>,
        #[arg(long)]
        n_max: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification campaign from --config or from inline flags.
    Verify(VerifyArgs),
    /// The homogeneous cyclotomic form Φ_n(X, Y).
    Cyclo {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Res(P_m, P_n) with P_n = (X^n - Y^n)/(X - Y).
    Resultant {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Factor a polynomial over F_p, or decompose it squarefree.
    Factor {
        #[command(flatten)]
        field: FieldArgs,
        /// Polynomial expression, e.g. "x^2+1".
        poly: String,
        /// Squarefree decomposition instead of full factorization.
        #[arg(long)]
        squarefree: bool,
        #[arg(long, env = "SEQ_SEED")]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldKind {
    Q,
    Fp,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long, value_enum, default_value = "q")]
    field: FieldKind,
    /// Characteristic for --field fp.
    #[arg(long)]
    p: Option<u64>,
}

impl FieldArgs {
    fn desc(&self) -> Result<FieldDesc> {
        match (self.field, self.p) {
            (FieldKind::Q, _) => Ok(FieldDesc::Rationals),
            (FieldKind::Fp, Some(p)) => FieldDesc::prime(p),
            (FieldKind::Fp, None) => Err(Error::Parse("--field fp needs --p".into())),
        }
    }
}

#[derive(Args)]
struct SeqArgs {
    /// power, lucas or lehmer.
    #[arg(long)]
    kind: String,
    #[command(flatten)]
    field: FieldArgs,
    /// f, P or Rp.
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// g or Q.
    #[arg(long, allow_hyphen_values = true)]
    b: String,
}

impl SeqArgs {
    fn params(&self) -> Result<SeqParams> {
        let field = self.field.desc()?;
        let kind = SeqKind::parse(&self.kind)?;
        SeqParams::validate(kind, Poly::parse(field, &self.a)?, Poly::parse(field, &self.b)?)
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Campaign file (key = value lines or JSON); other flags are ignored.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    field: FieldArgs,
    /// Comma-separated kinds.
    #[arg(long, default_value = "power,lucas,lehmer")]
    kind: String,
    /// Single parameter pair; omit for exhaustive or random enumeration.
    #[arg(long, allow_hyphen_values = true, requires = "b")]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "a")]
    b: Option<String>,
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
    /// Sample this many parameter sets instead of enumerating all.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, env = "SEQ_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    n_max: u64,
    #[arg(long, default_value_t = 20)]
    m_max: u64,
    /// Comma-separated checks, or "all".
    #[arg(long, default_value = "all")]
    checks: String,
    /// Also require primitive divisors at indices divisible by p.
    #[arg(long)]
    include_excluded: bool,
    #[arg(long)]
    stop_on_failure: bool,
    #[arg(long)]
    json: bool,
}

impl VerifyArgs {
    fn config(&self) -> Result<CampaignConfig> {
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::ConfigInvalid(format!("{}: {e}", path.display())))?;
            return CampaignConfig::from_text(&text);
        }
        let kinds = self.kind.split(',').map(SeqKind::parse).collect::<Result<Vec<_>>>()?;
        let enumeration = match (&self.a, &self.b, self.random) {
            (Some(a), Some(b), _) => {
                let field = self.field.desc()?;
                Poly::parse(field, a)?;
                Poly::parse(field, b)?;
                Enumeration::Explicit { params: vec![(a.clone(), b.clone())] }
            }
            (_, _, Some(count)) => Enumeration::Random { count, seed: self.seed },
            _ => Enumeration::Exhaustive,
        };
        let mut cfg = CampaignConfig::new(self.field.desc()?, kinds, self.max_degree, enumeration);
        cfg.n_max = self.n_max;
        cfg.m_max = self.m_max;
        cfg.include_excluded = self.include_excluded;
        cfg.stop_on_failure = self.stop_on_failure;
        if self.checks != "all" {
            cfg.checks = self.checks.split(',').map(Check::parse).collect::<Result<Vec<_>>>()?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn field_json(f: FieldDesc) -> Value {
    serde_json::to_value(f).expect("serializable")
}

fn factorization_json(f: &Factorization) -> Value {
    json!({
        "unit": f.unit.to_string(),
        "factors": f.factors.iter().map(|(q, e)| json!({"factor": q.to_string(), "exp": e})).collect::<Vec<_>>(),
    })
}

fn report_text(r: &PrimitiveReport) -> String {
    let mut line = format!(
        "n={} term={} primitive_part={} has_primitive={} matches_phi={} excluded={}",
        r.n, r.term, r.primitive_part, r.has_primitive, r.matches_phi, r.excluded
    );
    if let Some(primes) = &r.primitive_primes {
        let list: Vec<_> = primes.iter().map(|f| format!("({})^{}", f.factor, f.exp)).collect();
        line.push_str(&format!(" primitive_primes=[{}]", list.join(", ")));
    }
    line
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen { seq, n, json } => {
            let params = seq.params()?;
            let mut s = Sequence::new(params.clone());
            let terms: Vec<String> = s.terms(n).iter().map(Poly::to_string).collect();
            if json {
                print_json(&json!({
                    "kind": params.kind().name(),
                    "field": field_json(params.field()),
                    "params": {"a": params.a().to_string(), "b": params.b().to_string()},
                    "terms": terms,
                }));
            } else {
                terms.iter().for_each(|t| println!("{t}"));
            }
        }
        Command::Primitive { seq, n, n_max, json } => {
            let mut s = Sequence::new(seq.params()?);
            let indices = match (n, n_max) {
                (Some(n), _) => n..=n,
                (None, Some(m)) => 1..=m,
                (None, None) => unreachable!("clap requires one of --n and --n-max"),
            };
            if indices.start() == &0 {
                return Err(Error::PreconditionViolated("indices start at 1".into()));
            }
            let reports = indices.map(|k| primitive_part(&mut s, k)).collect::<Result<Vec<_>>>()?;
            match (json, n.is_some()) {
                (true, true) => print_json(&reports[0]),
                (true, false) => print_json(&reports),
                (false, _) => reports.iter().for_each(|r| println!("{}", report_text(r))),
            }
        }
        Command::Verify(args) => {
            let report = run_campaign(&args.config()?)?;
            if args.json {
                print_json(&report);
            } else {
                print!("{}", report.summary_table());
            }
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Cyclo { n, json } => {
            if n == 0 {
                return Err(Error::PreconditionViolated("n must be positive".into()));
            }
            let phi = cyclotomic_form(n);
            if json {
                print_json(&json!({"n": n, "phi": phi.to_string(), "coeffs": &*phi}));
            } else {
                println!("{phi}");
            }
        }
        Command::Resultant { m, n, json } => {
            if m == 0 || n == 0 {
                return Err(Error::PreconditionViolated("m and n must be positive".into()));
            }
            let r = resultant(&pn_form(m), &pn_form(n))?;
            if json {
                print_json(&json!({"m": m, "n": n, "resultant": r.to_string()}));
            } else {
                println!("{r}");
            }
        }
        Command::Factor { field, poly, squarefree, seed, json } => {
            let field = field.desc()?;
            let h = Poly::parse(field, &poly)?;
            let f = match (field, squarefree) {
                (_, true) => squarefree_decomp(&h)?,
                (FieldDesc::Rationals, false) => return Err(Error::UnsupportedField),
                (FieldDesc::PrimeField { .. }, false) => factor_fp_seeded(&h, seed.unwrap_or(DEFAULT_SEED))?,
            };
            if json {
                print_json(&factorization_json(&f));
            } else {
                println!("{f}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(2)
        }
    }
}
