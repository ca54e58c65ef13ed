//! The `lpi` command line.

use std::ffi::OsString;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use super::descriptor::AlgebraSpec;
use super::expr::parse;
use super::lower::{parse_laurent, parse_polynomial, parse_word, to_laurent, to_polynomial, to_quotient};
use super::report::Report;
use crate::checkers::{
    al_verify, bounds_from_d, check_group_identity, check_lpi, finite_annihilator, idempotent_centrality,
    infinite_counterexample, nil_exponent_search, quotient_pi_check, s3_expand, GroundSet, Mode, Outcome,
    SearchConfig, Verdict, DEFAULT_BUDGET,
};
use crate::matrix::DEFAULT_CAP;
use crate::rings::{Integers, Ring, RingSpec};
use crate::with_ring;

#[derive(Debug, Parser)]
#[command(name = "lpi", version, about = "Checks Laurent polynomial identities on small matrix algebras")]
pub struct Cli {
    /// Seed for random mode; generated and recorded when omitted.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// exhaustive or random.
    #[arg(long, global = true, default_value = "exhaustive")]
    pub mode: Mode,
    /// Number of random samples.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Largest exhaustive search size.
    #[arg(long, global = true, env = "LPI_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    #[arg(long, global = true, env = "LPI_WORKERS", default_value_t = 1)]
    pub workers: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Context {
    Laurent,
    Quotient,
    Polynomial,
}

impl FromStr for Context {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "laurent" => Ok(Context::Laurent),
            "quotient" => Ok(Context::Quotient),
            "poly" => Ok(Context::Polynomial),
            other => Err(format!("unknown context {other:?} (laurent, quotient or poly)")),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse an expression and print its tree and canonical form.
    Parse {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value = "laurent")]
        context: Context,
        #[arg(long, default_value = "ZZ")]
        ring: RingSpec,
    },
    /// Check a Laurent polynomial identity on an algebra.
    CheckLpi {
        #[arg(long)]
        algebra: AlgebraSpec,
        #[arg(long)]
        expr: String,
        /// auto, elements or units.
        #[arg(long, default_value = "auto")]
        ground: GroundSet,
    },
    /// Check a group identity on the units of an algebra.
    CheckGi {
        #[arg(long)]
        algebra: AlgebraSpec,
        #[arg(long)]
        word: String,
    },
    /// Check S_{2n} on M_n(F_p).
    AlVerify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        field: RingSpec,
    },
    /// Profile (l, r, d) and normalized form of an LPI.
    Witness {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value = "ZZ")]
        ring: RingSpec,
    },
    /// Least m with (bacu)^m = 0 whenever a^2 = bc = 0.
    Nilbound {
        #[arg(long)]
        algebra: AlgebraSpec,
        #[arg(long, default_value_t = 8)]
        m_max: u32,
    },
    /// A polynomial g with g(ab) = 0 for all square-zero a, b.
    Annihilator {
        #[arg(long)]
        algebra: AlgebraSpec,
        /// Keep one factor per element instead of merging repeats.
        #[arg(long)]
        keep_duplicates: bool,
    },
    /// Square-zero a, b in M_2(ZZ) with g(ab) != 0.
    Counterexample {
        /// Polynomial in x over ZZ.
        #[arg(long)]
        g: String,
    },
    /// Field-size and dimension bounds from d.
    Bounds {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Standard identities on ZZ<x,y>/(x^2, y^2).
    Quotient {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value = "ZZ")]
        ring: RingSpec,
    },
    /// Expand S_3(X, Y, XY) and compare with the reference formula.
    S3Expand,
    /// Idempotents that are not central.
    Idempotents {
        #[arg(long)]
        algebra: AlgebraSpec,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Parse { .. } => "parse",
            Command::CheckLpi { .. } => "check-lpi",
            Command::CheckGi { .. } => "check-gi",
            Command::AlVerify { .. } => "al-verify",
            Command::Witness { .. } => "witness",
            Command::Nilbound { .. } => "nilbound",
            Command::Annihilator { .. } => "annihilator",
            Command::Counterexample { .. } => "counterexample",
            Command::Bounds { .. } => "bounds",
            Command::Quotient { .. } => "quotient",
            Command::S3Expand => "s3-expand",
            Command::Idempotents { .. } => "idempotents",
        }
    }
}

/// Result of one invocation: exit code, standard output, standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let argv: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Invocation { code: 2, stdout: String::new(), stderr: text }
            } else {
                Invocation { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli, &argv) {
        Ok(report) => Invocation {
            code: report.exit_code(),
            stdout: serde_json::to_string_pretty(&report.to_json()).expect("json") + "\n",
            stderr: String::new(),
        },
        Err(msg) => Invocation { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

fn config(cli: &Cli, force_random: bool) -> SearchConfig {
    let mode = if force_random { Mode::Random } else { cli.mode };
    let seed = match (cli.seed, mode) {
        (Some(s), _) => s,
        (None, Mode::Random) => rand::random(),
        (None, Mode::Exhaustive) => 0,
    };
    SearchConfig { mode, budget: cli.budget, cap: cli.cap, seed, workers: cli.workers.max(1) }
}

fn success(cfg: &SearchConfig, evaluations: u64, started: Instant) -> Verdict {
    Verdict::new(Outcome::Holds, cfg, evaluations, started)
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

pub fn execute(cli: &Cli, argv: &[String]) -> Result<Report, String> {
    let started = Instant::now();
    let name = cli.command.name();
    let random_only = matches!(cli.command, Command::Quotient { .. });
    let cfg = config(cli, random_only);
    let report = |v: Verdict| Report::new(name, argv, cfg, v);
    match &cli.command {
        Command::Parse { expr, context, ring } => {
            let tree = parse(expr).map_err(err)?;
            let (canonical, terms) = with_ring!(*ring, |r| match context {
                Context::Laurent => {
                    let e = to_laurent(&r, &tree).map_err(err)?;
                    (e.to_string(), e.len())
                }
                Context::Quotient => {
                    let e = to_quotient(&r, &tree).map_err(err)?;
                    (e.to_string(), e.support_size())
                }
                Context::Polynomial => {
                    let p = to_polynomial(&r, &tree).map_err(err)?;
                    (p.display("x"), p.coeffs().iter().filter(|c| !r.is_zero(c)).count())
                }
            });
            let v = success(&cfg, 0, started)
                .detail("tree", tree.to_string())
                .detail("canonical", canonical.clone())
                .detail("terms", terms)
                .detail("ring", ring.to_string());
            Ok(report(v).expression(canonical))
        }
        Command::CheckLpi { algebra, expr, ground } => with_ring!(algebra.ring, |r| {
            let h = algebra.handle(r).map_err(err)?;
            let e = parse_laurent(&r, expr).map_err(err)?;
            let v = check_lpi(&h, &e, *ground, &cfg).map_err(err)?;
            Ok(report(v).algebra(algebra).expression(&e))
        }),
        Command::CheckGi { algebra, word } => with_ring!(algebra.ring, |r| {
            let h = algebra.handle(r).map_err(err)?;
            let w = parse_word(word).map_err(err)?;
            let v = check_group_identity(&h, &w, &cfg).map_err(err)?;
            Ok(report(v).algebra(algebra).expression(&w))
        }),
        Command::AlVerify { n, field } => {
            let RingSpec::PrimeField(p) = field else {
                return Err(format!("al-verify needs a prime field, got {field}"));
            };
            let v = al_verify(*n, u64::from(*p), &cfg).map_err(err)?;
            Ok(report(v).algebra(format!("M{n}@{field}")).expression(format!("S({})", 2 * n)))
        }
        Command::Witness { expr, ring } => with_ring!(*ring, |r| {
            let e = parse_laurent(&r, expr).map_err(err)?;
            let norm = e.normalize().map_err(err)?;
            let profile = norm.element.profile().map_err(err)?;
            let (diagonal, f0) = norm.element.diagonal_specialize().map_err(err)?;
            let v = success(&cfg, 0, started)
                .detail("l", profile.l)
                .detail("r", profile.r)
                .detail("d", profile.d)
                .detail("admissible", true)
                .detail("normalized", norm.element.to_string())
                .detail("substitution", norm.variable.map(|var| json!({"variable": format!("x{var}"), "k": norm.k})))
                .detail("k", norm.k)
                .detail("diagonal", diagonal.to_string())
                .detail("f0", f0.display("t"));
            Ok(report(v).expression(&e))
        }),
        Command::Nilbound { algebra, m_max } => with_ring!(algebra.ring, |r| {
            let h = algebra.handle(r).map_err(err)?;
            let res = nil_exponent_search(&h, *m_max, &cfg).map_err(err)?;
            Ok(report(res.verdict).algebra(algebra))
        }),
        Command::Annihilator { algebra, keep_duplicates } => with_ring!(algebra.ring, |r| {
            let h = algebra.handle(r).map_err(err)?;
            let a = finite_annihilator(&h, *keep_duplicates, cfg.cap).map_err(err)?;
            let factors: Vec<_> = a.factors.iter().map(|(r, t)| json!({"r": r, "t": t})).collect();
            let v = success(&cfg, a.pairs_checked, started)
                .detail("g", a.g.display("x"))
                .detail("degree", a.g.degree().to_string())
                .detail("factors", factors)
                .detail("pairs_checked", a.pairs_checked)
                .detail("verified", true)
                .detail("merged_duplicates", !keep_duplicates);
            Ok(report(v).algebra(algebra).expression(a.g.display("x")))
        }),
        Command::Counterexample { g } => {
            let poly = parse_polynomial(&Integers, g).map_err(err)?;
            let pair = infinite_counterexample(&poly).map_err(err)?;
            let v = success(&cfg, pair.trials, started)
                .with_witness(json!({"a": pair.a.to_json(), "b": pair.b.to_json()}))
                .detail("t", pair.t.to_string())
                .detail("trials", pair.trials)
                .detail("degree", poly.degree().to_string())
                .detail("value", pair.value.to_json());
            Ok(report(v).algebra("M2@ZZ").expression(poly.display("x")))
        }
        Command::Bounds { d, q } => {
            let b = bounds_from_d(*d, *q).map_err(err)?;
            let v = success(&cfg, 0, started)
                .detail("d", b.d)
                .detail("q", b.q)
                .detail("max_field_size", b.max_field_size)
                .detail("max_n", b.max_n)
                .detail("field_bound", format!("|K| <= {}", b.max_field_size))
                .detail("dimension_bound", format!("n <= {}", b.max_n));
            Ok(report(v))
        }
        Command::Quotient { n, ring } => with_ring!(*ring, |r| {
            let v = quotient_pi_check(r, *n, &cfg).map_err(err)?;
            Ok(report(v).algebra(format!("F@{ring}")).expression(format!("S({})", 2 * n)))
        }),
        Command::S3Expand => {
            let c = s3_expand().map_err(err)?;
            let mut v = success(&cfg, 6, started);
            if let serde_json::Value::Object(m) = c.to_json() {
                v.details.extend(m);
            }
            Ok(report(v).expression("S(3)(X, Y, X*Y)"))
        }
        Command::Idempotents { algebra } => with_ring!(algebra.ring, |r| {
            let h = algebra.handle(r).map_err(err)?;
            let bad = idempotent_centrality(&h, cfg.cap).map_err(err)?;
            let count = h.enumeration_size(cfg.cap).map_err(err)?;
            let v = success(&cfg, count, started)
                .detail("noncentral", bad.iter().map(|m| m.to_json()).collect::<Vec<_>>())
                .detail("noncentral_count", bad.len());
            Ok(report(v).algebra(algebra))
        }),
    }
}
