//! `orbit-equiv`: command-line front end for the orbit-equiv library.
//!
//! Exit codes: 0 success, 1 a verification came out false, 2 usage error,
//! 3 computational failure.

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use orbit_equiv::catalog::{Catalog, Payload};
use orbit_equiv::chains::{classify_membership, orbit, ChainSpec};
use orbit_equiv::families::{catalog_family, family_report};
use orbit_equiv::morphisms::{find_isomorphisms, invert, one_indexed, Morphism, SearchOptions};
use orbit_equiv::polyring::discriminant;
use orbit_equiv::quotient::{compose_mod, reduce};
use orbit_equiv::realroots::{isolate, signature};
use orbit_equiv::report::Report;
use orbit_equiv::{Error, IntPoly, Modulus, RatPoly};

const THREADS_VAR: &str = "ORBIT_EQUIV_THREADS";

#[derive(Parser)]
#[command(name = "orbit-equiv", version, about = "Exact checks of equivalences among orbital equations of polynomial maps")]
#[command(after_help = "Polynomials are written as x^5-x^4-4x^3+3x^2+3x-1 or as an ascending list [-1,3,3,-4,-1,1]. \
A catalog key such as @V or @D4 (or the bare key) may be used wherever a polynomial is expected.\n\
Set ORBIT_EQUIV_THREADS to cap the number of worker threads.")]
struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Discriminant of a polynomial.
    Disc { poly: String },
    /// Check that a map sends roots of the source to roots of the target.
    Verify {
        #[arg(long)]
        map: String,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Find every polynomial map between two fields of equal degree.
    Search {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        /// Largest denominator accepted in a reconstructed coefficient.
        #[arg(long, default_value_t = 12)]
        denom_bound: u64,
        /// Highest root precision tried, in bits.
        #[arg(long, default_value_t = 256)]
        max_bits: usize,
    },
    /// Inverse of a verified map.
    Invert {
        #[arg(long)]
        map: String,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Automorphisms of the field defined by a polynomial.
    Auto { poly: String },
    /// Permutation of the real roots induced by a map (1-indexed).
    Perm {
        #[arg(long)]
        map: String,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// outer(inner(x)), optionally reduced modulo a polynomial.
    Compose {
        #[arg(long)]
        outer: String,
        #[arg(long)]
        inner: String,
        #[arg(long = "mod")]
        modulus: Option<String>,
    },
    /// Member of a catalog family at parameter n.
    Family {
        label: String,
        #[arg(long, allow_negative_numbers = true)]
        n: BigInt,
    },
    /// Re-check every family claim of the catalog.
    FamilyVerify {
        /// Parameter range a..b (inclusive) for the discriminant sweeps.
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        range: Option<(i64, i64)>,
    },
    /// Follow the quadratic transformation chain over a base polynomial.
    Chain {
        #[arg(long)]
        base: String,
        /// A constant rational, or a comma-separated list a_0,a_1,...
        #[arg(long, default_value = "2", allow_negative_numbers = true)]
        alpha: String,
        #[arg(long)]
        iters: usize,
    },
    /// Isolate and approximate the real roots.
    Isolate {
        poly: String,
        #[arg(long, default_value_t = 6)]
        digits: usize,
    },
    /// Check that map^period(x) - x is divisible by a polynomial.
    IterateDiv {
        #[arg(long)]
        map: String,
        #[arg(long)]
        period: usize,
        #[arg(long)]
        divisor: String,
    },
    /// Run every self-check of the built-in catalog.
    CatalogCheck,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: i64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: i64 = b.trim().trim_start_matches('=').parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

#[derive(Debug)]
enum Failure {
    /// A map given as a morphism is not one.
    Refuted(String),
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::UnknownKey(_)
            | Error::DegenerateModulus(_)
            | Error::ZeroPolynomial
            | Error::ConstantPolynomial
            | Error::NotSquarefree
            | Error::DegreeMismatch(..)
            | Error::DegreeTooLarge { .. }
            | Error::UndefinedAlpha(_) => Failure::Usage(e.to_string()),
            Error::NotAMorphism { .. } => Failure::Refuted(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

/// What a command produced: text, JSON and whether its claim held.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }

    fn verdict(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

fn catalog() -> &'static Catalog {
    Catalog::builtin()
}

/// `@key`, a bare catalog polynomial key, or polynomial text.
fn resolve(arg: &str) -> Result<RatPoly, Failure> {
    let cat = catalog();
    if let Some(key) = arg.strip_prefix('@') {
        return Ok(cat.poly(key)?.to_rat());
    }
    if let Ok(entry) = cat.get(arg) {
        if let Payload::Poly(p) = &entry.payload {
            return Ok(p.to_rat());
        }
    }
    Ok(RatPoly::from_str(arg)?)
}

fn resolve_int(arg: &str) -> Result<IntPoly, Failure> {
    resolve(arg)?
        .to_int_poly()
        .ok_or_else(|| Failure::Usage(format!("{arg:?} must have integer coefficients")))
}

fn poly_json(p: &IntPoly) -> Value {
    json!({
        "text": p.to_string(),
        "coeffs": p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn rat_json(p: &RatPoly) -> Value {
    json!({
        "text": p.to_string(),
        "coeffs": p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn report_json(r: &Report) -> Value {
    json!({
        "items": r.items,
        "passed": r.count(orbit_equiv::report::Status::Pass),
        "failed": r.count(orbit_equiv::report::Status::Fail),
        "flagged": r.count(orbit_equiv::report::Status::Flagged),
    })
}

fn morphism_json(m: &Morphism) -> Value {
    serde_json::to_value(m.to_record()).expect("records serialise")
}

fn morphism_text(m: &Morphism) -> String {
    match m.permutation() {
        Some(p) => format!("{}  {}", m.map().rep(), one_indexed(p)),
        None => m.map().rep().to_string(),
    }
}

fn run(command: Command) -> Result<Output, Failure> {
    Ok(match command {
        Command::Disc { poly } => {
            let p = resolve_int(&poly)?;
            let d = discriminant(&p)?;
            Output::new(
                d.to_string(),
                json!({"command": "disc", "poly": poly_json(&p), "discriminant": d.to_string()}),
            )
        }
        Command::Verify { map, source, target } => {
            let (t, s, g) = (resolve(&map)?, resolve_int(&source)?, resolve_int(&target)?);
            let ok = orbit_equiv::morphisms::verify(&t, &s, &g)?;
            Output::new(
                ok.to_string(),
                json!({
                    "command": "verify",
                    "map": rat_json(&t),
                    "source": poly_json(&s),
                    "target": poly_json(&g),
                    "verified": ok,
                }),
            )
            .verdict(ok)
        }
        Command::Search {
            source,
            target,
            denom_bound,
            max_bits,
        } => {
            let (s, g) = (resolve_int(&source)?, resolve_int(&target)?);
            let opts = SearchOptions {
                denom_bound,
                max_bits,
                ..SearchOptions::default()
            };
            let found = find_isomorphisms(&s, &g, &opts)?;
            let mut text = format!("{} morphism(s)", found.morphisms.len());
            for m in &found.morphisms {
                write!(text, "\n{}", morphism_text(m)).unwrap();
            }
            Output::new(
                text,
                json!({
                    "command": "search",
                    "source": poly_json(&s),
                    "target": poly_json(&g),
                    "denom_bound": denom_bound,
                    "morphisms": found.morphisms.iter().map(morphism_json).collect::<Vec<_>>(),
                    "rejected": found.rejected.len(),
                }),
            )
        }
        Command::Invert { map, source, target } => {
            let m = Morphism::new(&resolve(&map)?, &resolve_int(&source)?, &resolve_int(&target)?)?;
            let inv = invert(&m)?;
            Output::new(
                inv.map().rep().to_string(),
                json!({"command": "invert", "morphism": morphism_json(&inv)}),
            )
        }
        Command::Auto { poly } => {
            let f = resolve_int(&poly)?;
            let found = find_isomorphisms(&f, &f, &SearchOptions::default())?;
            let n = found.morphisms.len();
            let mut text = format!("order {n}");
            for m in &found.morphisms {
                write!(text, "\n{}", morphism_text(m)).unwrap();
            }
            Output::new(
                text,
                json!({
                    "command": "auto",
                    "poly": poly_json(&f),
                    "order": n,
                    "morphisms": found.morphisms.iter().map(morphism_json).collect::<Vec<_>>(),
                }),
            )
        }
        Command::Perm { map, source, target } => {
            let m = Morphism::new(&resolve(&map)?, &resolve_int(&source)?, &resolve_int(&target)?)?.with_permutation()?;
            let perm: Vec<usize> = m.permutation().expect("just computed").iter().map(|i| i + 1).collect();
            Output::new(
                one_indexed(m.permutation().unwrap()),
                json!({"command": "perm", "morphism": morphism_json(&m), "permutation": perm}),
            )
        }
        Command::Compose { outer, inner, modulus } => {
            let (o, i) = (resolve(&outer)?, resolve(&inner)?);
            let (result, m) = match modulus {
                Some(m) => {
                    let f = resolve_int(&m)?;
                    let r = compose_mod(&o, &reduce(&i, &Modulus::new(&f)?));
                    (r.rep().clone(), Some(poly_json(&f)))
                }
                None => (o.compose(&i), None),
            };
            Output::new(
                result.to_string(),
                json!({"command": "compose", "result": rat_json(&result), "modulus": m}),
            )
        }
        Command::Family { label, n } => {
            let spec = catalog_family(catalog(), &label)?;
            let member = spec.member(&n);
            let d = discriminant(&member)?;
            Output::new(
                member.to_string(),
                json!({
                    "command": "family",
                    "label": label,
                    "n": n.to_string(),
                    "member": poly_json(&member),
                    "discriminant": d.to_string(),
                }),
            )
        }
        Command::FamilyVerify { range } => {
            let report = match range {
                Some((a, b)) => family_report(catalog(), a..=b, a..=b),
                None => family_report(catalog(), -20..=20, -5..=5),
            };
            let ok = report.passed();
            Output::new(
                report.to_string(),
                json!({"command": "family-verify", "report": report_json(&report)}),
            )
            .verdict(ok)
        }
        Command::Chain { base, alpha, iters } => {
            let f = resolve_int(&base)?;
            let spec = parse_alpha(&alpha)?;
            let o = orbit(&f, &spec, iters)?;
            let membership = classify_membership(&f, &o);
            let mut text = String::new();
            let mut steps = Vec::new();
            for s in &o.states {
                let name = catalog().name_of(&s.minpoly).map(|k| format!(" [{k}]")).unwrap_or_default();
                writeln!(text, "{}  {}{}  disc {}", s.index, s.minpoly, name, s.disc).unwrap();
                steps.push(json!({
                    "i": s.index,
                    "r_i": rat_json(s.r.rep()),
                    "minpoly": poly_json(&s.minpoly),
                    "disc": s.disc.to_string(),
                }));
            }
            match (o.preperiod, o.period) {
                (Some(s), Some(p)) => write!(text, "state cycle: preperiod {s}, period {p}").unwrap(),
                _ => write!(text, "no state cycle within {iters} steps").unwrap(),
            }
            if let Some((s, p)) = o.minpoly_period {
                write!(text, "\nminimal polynomials: preperiod {s}, period {p}").unwrap();
            }
            write!(text, "\nbase present: {}", membership.base_present).unwrap();
            Output::new(
                text,
                json!({
                    "command": "chain",
                    "base": poly_json(&f),
                    "steps": steps,
                    "preperiod": o.preperiod,
                    "period": o.period,
                    "minpoly_period": o.minpoly_period.map(|(s, p)| json!({"start": s, "period": p})),
                    "base_present": membership.base_present,
                }),
            )
        }
        Command::Isolate { poly, digits } => {
            let p = resolve_int(&poly)?;
            let sig = signature(&p)?;
            let iso = isolate(&p)?;
            let decimals = iso.decimals(digits)?;
            let roots: Vec<Value> = iso
                .intervals()
                .iter()
                .zip(&decimals)
                .map(|(iv, d)| json!({"lo": iv.lo.to_string(), "hi": iv.hi.to_string(), "decimal": d}))
                .collect();
            let mut text = format!("signature ({}, {})", sig.real, sig.complex_pairs);
            for (iv, d) in iso.intervals().iter().zip(&decimals) {
                write!(text, "\n{d}  in ({}, {}]", iv.lo, iv.hi).unwrap();
            }
            Output::new(
                text,
                json!({"command": "isolate", "poly": poly_json(&p), "signature": sig, "roots": roots}),
            )
        }
        Command::IterateDiv { map, period, divisor } => {
            let (m, d) = (resolve_int(&map)?, resolve_int(&divisor)?);
            let lhs = &m.iterate_map(period) - &IntPoly::x();
            let (_, r, _) = lhs.pseudo_divrem(&d)?;
            let ok = r.is_zero();
            Output::new(
                if ok { "divisible".into() } else { format!("remainder {r}") },
                json!({
                    "command": "iterate-div",
                    "map": poly_json(&m),
                    "period": period,
                    "divisor": poly_json(&d),
                    "remainder": poly_json(&r),
                    "divisible": ok,
                }),
            )
            .verdict(ok)
        }
        Command::CatalogCheck => {
            let report = catalog().self_check();
            let ok = report.passed();
            Output::new(
                report.to_string(),
                json!({"command": "catalog-check", "report": report_json(&report)}),
            )
            .verdict(ok)
        }
    })
}

fn parse_alpha(s: &str) -> Result<ChainSpec, Failure> {
    let parse = |t: &str| BigRational::from_str(t.trim()).map_err(|e| Failure::Usage(format!("alpha {t:?}: {e}")));
    if s.contains(',') {
        Ok(ChainSpec::sequence(s.split(',').map(parse).collect::<Result<_, _>>()?)?)
    } else {
        Ok(ChainSpec::constant(parse(s)?))
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("{THREADS_VAR} must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Compute(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(cli.command));
    match result {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("values serialise")
            } else {
                out.text
            };
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{body}");
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(Failure::Refuted(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
