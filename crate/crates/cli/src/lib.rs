//! Command dispatch for the `sac` binary. Everything returns its output as
//! strings so the same code path serves the binary and the tests.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use sac_core::certify::{Assumption, Rule};
use sac_core::ideal::{cumulative_rank_identity, layer_ranks, ulrich_rank_formula};
use sac_core::resolution::{ext_deg_window, ext_dims, tor_dims};
use sac_core::{
    certify, Certificate, CertifyOptions, ExtDegReport, Field, Invariants, MonomialAlgebra,
    NumericalSemigroup, PresentedModule, PrimeField, Rationals, RingDescriptor, SemigroupIdeal,
    UlrichReport, DEFAULT_PRIME,
};

const DESCRIPTOR_HELP: &str = "\
Ring descriptors:
  sgp(a,b,...)                 k[[H]] for H = <a,b,...>
  trunc(sgp(...),q)            k[H]/(t^q)
  glued(sgp(...),n,m)          k[[nH + <m>]]
  powser(X)                    X[[T]]
  qpow(X,l,n)                  X/Q^l, Q a parameter ideal of length n
  upow(X,ideal(g,...),l)       X/I^l
  ci(label)                    a complete intersection
  ffcover(X,Y)                 X with a finite flat dimension map to Y
  abstract(label)              a ring with no known properties

Assumptions (--assume, repeatable): sac(X), gorenstein(X), dim(X,d).";

#[derive(Debug, Parser)]
#[command(name = "sac", version, about = "Exact computations for numerical semigroup rings")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Semigroup invariants.
    #[command(subcommand)]
    Sgp(SgpCommand),
    /// Ulrich tests and power layers of monomial ideals.
    #[command(subcommand)]
    Ideal(IdealCommand),
    /// Glue a semigroup: nH + <m>.
    Glue {
        #[arg(long, value_parser = parse_gens)]
        gens: Gens,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
    },
    /// Ext dimensions over a truncated semigroup ring.
    #[command(subcommand)]
    Ext(TableCommand),
    /// Tor dimensions over a truncated semigroup ring.
    #[command(subcommand)]
    Tor(TableCommand),
    /// Scan Ext^i(M+A, M+A) for 1 <= i <= window.
    Extdeg {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long = "mod", default_value = "k")]
        module: String,
        #[arg(long, default_value_t = 12)]
        window: usize,
    },
    /// Sweep the layer-rank ratio bound and the cumulative rank identity.
    Lemma42 {
        #[arg(long, default_value_t = 8)]
        n: u64,
        #[arg(long, default_value_t = 14)]
        cmax: u64,
    },
    /// Search for a certificate of the symmetric Auslander condition.
    #[command(after_help = DESCRIPTOR_HELP)]
    Certify {
        #[arg(long, value_parser = parse_ring)]
        ring: RingDescriptor,
        #[arg(long = "assume", value_parser = parse_assumption)]
        assume: Vec<Assumption>,
        /// Only try this rule at the root.
        #[arg(long, value_parser = parse_rule)]
        rule: Option<Rule>,
        #[arg(long = "disable", value_parser = parse_rule)]
        disable: Vec<Rule>,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum SgpCommand {
    Info {
        #[arg(long, value_parser = parse_gens)]
        gens: Gens,
    },
}

#[derive(Debug, Subcommand)]
pub enum IdealCommand {
    Ulrich {
        #[arg(long, value_parser = parse_gens)]
        gens: Gens,
        #[arg(long, value_parser = parse_gens)]
        ideal: Gens,
        #[arg(long)]
        q: u64,
    },
    /// Lengths of I^i / I^{i+1} next to the Ulrich prediction.
    Powers {
        #[arg(long, value_parser = parse_gens)]
        gens: Gens,
        #[arg(long, value_parser = parse_gens)]
        ideal: Gens,
        /// Reduction degree; defaults to the smallest generator.
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = 5)]
        up_to: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum TableCommand {
    Table {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long = "mod", default_value = "k")]
        module: String,
        /// Second argument; defaults to the module itself.
        #[arg(long)]
        with: Option<String>,
        /// Inclusive range such as 0..8.
        #[arg(long, value_parser = parse_range, default_value = "0..8")]
        range: RangeInclusive<usize>,
    },
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    /// Semigroup generators.
    #[arg(long = "H", value_parser = parse_gens)]
    h: Gens,
    /// Truncation degree: the algebra is k[H]/(t^q).
    #[arg(long)]
    q: u64,
    /// Field characteristic; 0 selects the rationals.
    #[arg(long, env = "SAC_PRIME", default_value_t = DEFAULT_PRIME)]
    p: u64,
}

#[derive(Debug, Clone)]
pub struct Gens(pub Vec<u64>);

fn parse_gens(s: &str) -> Result<Gens, String> {
    let v = sac_core::semigroup::parse_list(s).map_err(|e| e.to_string())?;
    if v.is_empty() {
        return Err("expected a comma-separated list of positive integers".into());
    }
    Ok(Gens(v))
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a..b, got {s}"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad range start in {s}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad range end in {s}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..=b)
}

fn parse_ring(s: &str) -> Result<RingDescriptor, String> {
    s.parse().map_err(|e: sac_core::certify::CertifyError| e.to_string())
}

fn parse_assumption(s: &str) -> Result<Assumption, String> {
    s.parse().map_err(|e: sac_core::certify::CertifyError| e.to_string())
}

fn parse_rule(s: &str) -> Result<Rule, String> {
    s.parse().map_err(|e: sac_core::certify::CertifyError| e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SgpInfo {
    pub generators: NumericalSemigroup,
    #[serde(flatten)]
    pub invariants: Invariants,
    pub symmetric: bool,
    pub minimal_multiplicity: bool,
    pub almost_minimal_multiplicity: bool,
    /// Apéry set with respect to the multiplicity.
    pub apery: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UlrichOutput {
    pub semigroup: NumericalSemigroup,
    pub ideal: Vec<u64>,
    pub q: u64,
    #[serde(flatten)]
    pub report: UlrichReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerLayer {
    pub i: u32,
    pub length: u64,
    /// `ulrich_rank_formula(1, mu, i) * colength`.
    pub predicted: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowersOutput {
    pub semigroup: NumericalSemigroup,
    pub ideal: Vec<u64>,
    pub q: u64,
    pub is_ulrich: bool,
    pub colength: u64,
    pub mu: u64,
    pub layers: Vec<PowerLayer>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueOutput {
    pub inner: NumericalSemigroup,
    pub n: u64,
    pub m: u64,
    pub result: SgpInfo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimTable {
    pub functor: String,
    pub algebra: String,
    pub module: String,
    pub with: String,
    pub start: usize,
    pub dims: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtDegOutput {
    pub algebra: String,
    pub module: String,
    #[serde(flatten)]
    pub report: ExtDegReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioCase {
    pub n: u64,
    pub c: u64,
    pub l: u64,
    pub numerator: String,
    pub denominator: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepOutput {
    pub n_max: u64,
    pub c_max: u64,
    pub ratio_cases: u64,
    pub ratio_failures: u64,
    pub identity_cases: u64,
    pub identity_failures: u64,
    /// The case with the largest ratio.
    pub worst: Option<RatioCase>,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok(stdout) => Output { code: 0, stdout, stderr: String::new() },
        Err(msg) => Output { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

fn emit<T: Serialize>(json: bool, value: &T, human: impl FnOnce(&T) -> String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(value).expect("serializable");
        s.push('\n');
        s
    } else {
        human(value)
    }
}

/// `key: value` lines for every field of a JSON object, nested objects
/// flattened with dotted keys.
fn key_values(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, x, out);
                }
            }
            Value::Null => {
                let _ = writeln!(out, "{prefix}: -");
            }
            Value::String(s) => {
                let _ = writeln!(out, "{prefix}: {s}");
            }
            other => {
                let _ = writeln!(out, "{prefix}: {other}");
            }
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

fn plain<T: Serialize>(value: &T) -> String {
    key_values(&serde_json::to_value(value).expect("serializable"))
}

fn semigroup(g: &Gens) -> Result<NumericalSemigroup, String> {
    NumericalSemigroup::from_generators(&g.0).map_err(|e| e.to_string())
}

fn sgp_info(h: &NumericalSemigroup) -> Result<SgpInfo, String> {
    Ok(SgpInfo {
        generators: h.clone(),
        invariants: h.invariants(),
        symmetric: h.is_symmetric(),
        minimal_multiplicity: h.has_minimal_multiplicity(),
        almost_minimal_multiplicity: h.has_almost_minimal_multiplicity(),
        apery: h.apery_set(h.multiplicity()).map_err(|e| e.to_string())?,
    })
}

/// Builds `k[H]/(t^q)` over the requested field and evaluates `$body` with
/// `$a` bound to it.
macro_rules! with_algebra {
    ($args:expr, |$a:ident| $body:expr) => {{
        let args: &AlgebraArgs = $args;
        let h = semigroup(&args.h)?;
        if args.p == 0 {
            let $a = Arc::new(MonomialAlgebra::truncation(Rationals, &h, args.q).map_err(|e| e.to_string())?);
            $body
        } else {
            let field = PrimeField::new(args.p).map_err(|e| e.to_string())?;
            let $a = Arc::new(MonomialAlgebra::truncation(field, &h, args.q).map_err(|e| e.to_string())?);
            $body
        }
    }};
}

fn dispatch(cli: &Cli) -> Result<String, String> {
    let json = cli.json;
    match &cli.command {
        Command::Sgp(SgpCommand::Info { gens }) => {
            let info = sgp_info(&semigroup(gens)?)?;
            Ok(emit(json, &info, plain))
        }
        Command::Ideal(IdealCommand::Ulrich { gens, ideal, q }) => {
            let h = semigroup(gens)?;
            let i = SemigroupIdeal::new(&h, &ideal.0).map_err(|e| e.to_string())?;
            let report = i.is_ulrich(*q).map_err(|e| e.to_string())?;
            let out = UlrichOutput {
                semigroup: h,
                ideal: i.generators().to_vec(),
                q: *q,
                report,
            };
            Ok(emit(json, &out, plain))
        }
        Command::Ideal(IdealCommand::Powers { gens, ideal, q, up_to }) => {
            let h = semigroup(gens)?;
            let i = SemigroupIdeal::new(&h, &ideal.0).map_err(|e| e.to_string())?;
            let q = q.unwrap_or(i.generators()[0]);
            let report = i.is_ulrich(q).map_err(|e| e.to_string())?;
            let lengths = i.power_layer_lengths(*up_to).map_err(|e| e.to_string())?;
            let mut layers = Vec::new();
            for (idx, &length) in lengths.iter().enumerate() {
                let i = idx as u32 + 1;
                let p = ulrich_rank_formula(1, report.mu, i as u64).map_err(|e| e.to_string())? * report.colength;
                let predicted = u64::try_from(p).map_err(|_| "prediction overflows u64".to_string())?;
                layers.push(PowerLayer { i, length, predicted });
            }
            let out = PowersOutput {
                semigroup: h,
                ideal: i.generators().to_vec(),
                q,
                is_ulrich: report.is_ulrich,
                colength: report.colength,
                mu: report.mu,
                layers,
            };
            Ok(emit(json, &out, |o| {
                let mut head = serde_json::to_value(o).expect("serializable");
                head.as_object_mut().expect("object").remove("layers");
                let mut s = key_values(&head);
                s.push_str("i\tlength\tpredicted\n");
                for l in &o.layers {
                    let _ = writeln!(s, "{}\t{}\t{}", l.i, l.length, l.predicted);
                }
                s
            }))
        }
        Command::Glue { gens, n, m } => {
            let h = semigroup(gens)?;
            let glued = h.glue(*n, *m).map_err(|e| e.to_string())?;
            let out = GlueOutput {
                inner: h,
                n: *n,
                m: *m,
                result: sgp_info(&glued)?,
            };
            Ok(emit(json, &out, plain))
        }
        Command::Ext(TableCommand::Table { algebra, module, with, range }) => {
            let t = with_algebra!(algebra, |a| table(&a, "ext", module, with.as_deref(), range.clone()))?;
            Ok(emit(json, &t, render_table))
        }
        Command::Tor(TableCommand::Table { algebra, module, with, range }) => {
            let t = with_algebra!(algebra, |a| table(&a, "tor", module, with.as_deref(), range.clone()))?;
            Ok(emit(json, &t, render_table))
        }
        Command::Extdeg { algebra, module, window } => {
            let out = with_algebra!(algebra, |a| {
                let m = PresentedModule::parse(a.clone(), module).map_err(|e| e.to_string())?;
                let report = ext_deg_window(&m, *window).map_err(|e| e.to_string())?;
                ExtDegOutput {
                    algebra: a.descriptor(),
                    module: module.clone(),
                    report,
                }
            });
            Ok(emit(json, &out, plain))
        }
        Command::Lemma42 { n, cmax } => {
            let out = sweep(*n, *cmax)?;
            Ok(emit(json, &out, plain))
        }
        Command::Certify { ring, assume, rule, disable, depth } => {
            let opts = CertifyOptions {
                depth_bound: *depth,
                assumptions: assume.iter().cloned().collect(),
                root_rule: *rule,
                disabled: disable.iter().copied().collect(),
            };
            let cert = certify(ring, &opts);
            if json {
                Ok(cert.to_json() + "\n")
            } else {
                let mut s = String::new();
                render_certificate(&cert, 0, &mut s);
                Ok(s)
            }
        }
    }
}

fn table<F: Field>(
    a: &Arc<MonomialAlgebra<F>>,
    functor: &str,
    module: &str,
    with: Option<&str>,
    range: RangeInclusive<usize>,
) -> Result<DimTable, String> {
    let with = with.unwrap_or(module);
    let m = PresentedModule::parse(a.clone(), module).map_err(|e| e.to_string())?;
    let n = PresentedModule::parse(a.clone(), with).map_err(|e| e.to_string())?;
    let start = *range.start();
    let dims = if functor == "ext" {
        ext_dims(&m, &n, range)
    } else {
        tor_dims(&m, &n, range)
    }
    .map_err(|e| e.to_string())?;
    Ok(DimTable {
        functor: functor.to_string(),
        algebra: a.descriptor(),
        module: module.to_string(),
        with: with.to_string(),
        start,
        dims,
    })
}

fn render_table(t: &DimTable) -> String {
    let name = if t.functor == "ext" { "Ext" } else { "Tor" };
    let mut s = format!("algebra: {}\n{name}^j({}, {})\nj\tdim\n", t.algebra, t.module, t.with);
    for (k, d) in t.dims.iter().enumerate() {
        let _ = writeln!(s, "{}\t{d}", t.start + k);
    }
    s
}

fn render_certificate(c: &Certificate, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let how = match (&c.rule, &c.citation) {
        (Some(r), Some(cit)) => format!(" by {r} [{}]", cit.locator),
        (Some(r), None) => format!(" by {r}"),
        _ => String::new(),
    };
    let _ = writeln!(out, "{pad}{}: {:?}{how}", c.goal, c.verdict);
    for p in &c.premises {
        let status = serde_json::to_value(p.status).expect("serializable");
        let _ = writeln!(out, "{pad}  premise ({}): {}", status.as_str().unwrap_or_default(), p.statement);
    }
    for t in &c.trace {
        let _ = writeln!(out, "{pad}  tried {}: {}", t.rule, t.outcome);
    }
    for child in &c.children {
        render_certificate(child, depth + 1, out);
    }
}

fn sweep(n_max: u64, c_max: u64) -> Result<SweepOutput, String> {
    if n_max < 2 {
        return Err("--n must be at least 2".into());
    }
    let mut out = SweepOutput {
        n_max,
        c_max,
        ratio_cases: 0,
        ratio_failures: 0,
        identity_cases: 0,
        identity_failures: 0,
        worst: None,
    };
    let mut worst: Option<(BigUint, BigUint, RatioCase)> = None;
    for n in 2..=n_max {
        for c in n..=c_max {
            for l in 2..=n {
                let a = layer_ranks(n, c, l).map_err(|e| e.to_string())?;
                let (last, rest) = a.split_last().expect("l >= 2");
                let num: BigUint = rest.iter().fold(BigUint::from(1u32), |acc, x| acc + x);
                out.ratio_cases += 1;
                if num >= *last {
                    out.ratio_failures += 1;
                }
                let beats = worst.as_ref().is_none_or(|(wn, wd, _)| &num * wd > wn * last);
                if beats {
                    let case = RatioCase {
                        n,
                        c,
                        l,
                        numerator: num.to_string(),
                        denominator: last.to_string(),
                    };
                    worst = Some((num.clone(), last.clone(), case));
                }
                if l >= 3 {
                    out.identity_cases += 1;
                    if cumulative_rank_identity(n, c, l) != Ok(true) {
                        out.identity_failures += 1;
                    }
                }
            }
        }
    }
    out.worst = worst.map(|(_, _, case)| case);
    Ok(out)
}
