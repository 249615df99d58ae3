use std::fmt::Display;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use torusslopes::charslopes::{cable_census, classify_slope, enumerate_affine_maps, CENSUS_TSV_HEADER};
use torusslopes::checks::run_check;
use torusslopes::lens::{d_invariant, d_invariants, d_multiset, lens_d_multiset};
use torusslopes::numtheory::Rational;
use torusslopes::seifert::{surgery_cable, surgery_torus_knot, SurgeryResult};
use torusslopes::surgeryfloer::d_surgery_multiset;
use torusslopes::torusknot::{Knot, TorusKnot};
use torusslopes::{Error, Result};

#[derive(Parser)]
#[command(name = "torusslopes", version, about = "Exact surgery invariants of torus knots and their cables")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// d-invariant of L(p,q) in spin^c structure i, or all of them.
    Dinv {
        p: i64,
        q: i64,
        i: Option<i64>,
        /// Print the sorted multiset instead of the indexed list.
        #[arg(long, conflicts_with = "i")]
        multiset: bool,
    },
    /// p/q surgery on "T(r,s)" or "C(w,c;T(r,s))".
    Surgery {
        knot: String,
        #[arg(allow_hyphen_values = true)]
        p: i64,
        q: i64,
    },
    /// Torus-knot / cable pairs sharing a non-integral surgery.
    Census {
        #[arg(long, default_value_t = 60)]
        smax: i64,
        #[arg(long, default_value_t = 5)]
        qmax: i64,
    },
    /// Run a named check bundle.
    Verify { name: String },
    /// Which slope conditions hold for T(r,s) at p/q.
    Classify {
        r: i64,
        s: i64,
        #[arg(allow_hyphen_values = true)]
        p: i64,
        q: i64,
    },
    /// Affine self-maps of Z/p compatible with the d-invariants of L(p,q).
    Maps { p: i64, q: i64 },
}

struct Output {
    lines: Vec<String>,
    code: ExitCode,
}

impl Output {
    fn ok(lines: Vec<String>) -> Self {
        Output { lines, code: ExitCode::SUCCESS }
    }
}

fn joined<T: Display>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn to_json(v: &impl Serialize) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn dinv(format: Format, p: i64, q: i64, i: Option<i64>, multiset: bool) -> Result<Output> {
    let lines = match (i, multiset) {
        (Some(i), _) => {
            let d = d_invariant(p, q, i)?;
            match format {
                Format::Human => vec![d.to_string()],
                Format::Json => vec![to_json(&json!({ "p": p, "q": q, "i": i, "d": d }))],
                Format::Tsv => vec!["p\tq\ti\td".into(), format!("{p}\t{q}\t{i}\t{d}")],
            }
        }
        (None, true) => {
            let ds = d_multiset(p, q)?;
            match format {
                Format::Human => vec![joined(&ds, " ")],
                Format::Json => vec![to_json(&json!({ "p": p, "q": q, "multiset": strings(&ds) }))],
                Format::Tsv => std::iter::once("d".to_string()).chain(strings(&ds)).collect(),
            }
        }
        (None, false) => {
            let ds = d_invariants(p, q)?;
            match format {
                Format::Human => ds.iter().enumerate().map(|(i, d)| format!("{i}: {d}")).collect(),
                Format::Json => vec![to_json(&json!({ "p": p, "q": q, "d": strings(&ds) }))],
                Format::Tsv => std::iter::once("i\td".to_string())
                    .chain(ds.iter().enumerate().map(|(i, d)| format!("{i}\t{d}")))
                    .collect(),
            }
        }
    };
    Ok(Output::ok(lines))
}

fn surgery_result(knot: &Knot, p: i64, q: i64) -> Result<SurgeryResult> {
    match knot {
        Knot::Torus(t) => surgery_torus_knot(t.r(), t.s(), p, q),
        Knot::Cable(c) => surgery_cable(c, p, q),
    }
}

/// Sorted d-invariants when the (resolved) result is known to be an L-space.
fn lspace_multiset(knot: &Knot, result: &SurgeryResult, p: i64, q: i64) -> Result<Option<Vec<Rational>>> {
    if let SurgeryResult::Lens(l) = result {
        return Ok(Some(lens_d_multiset(l)));
    }
    let bound = 2 * knot.genus() - 1;
    if knot.is_lspace_knot() && p > 0 && p >= bound * q {
        return Ok(Some(d_surgery_multiset(&knot.staircase()?, p, q)?));
    }
    if let Knot::Torus(t) = knot {
        let mirror = Knot::Torus(TorusKnot::new(t.r(), -t.s())?);
        if mirror.is_lspace_knot() && p < 0 && -p >= bound * q {
            let mut ds: Vec<Rational> =
                d_surgery_multiset(&mirror.staircase()?, -p, q)?.into_iter().map(|d| -d).collect();
            ds.sort();
            return Ok(Some(ds));
        }
    }
    Ok(None)
}

fn surgery(format: Format, spec: &str, p: i64, q: i64) -> Result<Output> {
    let knot: Knot = spec.parse()?;
    let result = surgery_result(&knot, p, q)?.resolve();
    let ds = lspace_multiset(&knot, &result, p, q)?;
    let lines = match format {
        Format::Human => {
            let mut out = vec![result.to_string()];
            if let Some(ds) = &ds {
                out.push(format!("d: {}", joined(ds, " ")));
            }
            out
        }
        Format::Json => vec![to_json(&json!({
            "knot": knot.to_string(),
            "p": p,
            "q": q,
            "result": result.to_string(),
            "h1_order": result.h1_order(),
            "d_multiset": ds.as_deref().map(strings),
        }))],
        Format::Tsv => vec![
            "knot\tp\tq\tresult\th1_order\td_multiset".into(),
            format!(
                "{knot}\t{p}\t{q}\t{result}\t{}\t{}",
                result.h1_order().map_or(String::new(), |h| h.to_string()),
                ds.as_deref().map_or(String::new(), |ds| joined(ds, ","))
            ),
        ],
    };
    Ok(Output::ok(lines))
}

fn census(format: Format, smax: i64, qmax: i64) -> Result<Output> {
    if smax < 2 || qmax < 2 {
        return Err(Error::Domain(format!("census bounds must be >= 2, got smax={smax} qmax={qmax}")));
    }
    let records = cable_census(smax, qmax)?;
    let lines = match format {
        Format::Human => {
            let mut out: Vec<String> = records
                .iter()
                .map(|r| {
                    let status = if r.verified { "verified" } else { "UNVERIFIED" };
                    format!("{} {}/{} {} {status}", r.torus(), r.p, r.q, r.cable())
                })
                .collect();
            out.push(format!("{} record(s)", records.len()));
            out
        }
        Format::Json => records.iter().map(to_json).collect(),
        Format::Tsv => std::iter::once(CENSUS_TSV_HEADER.to_string())
            .chain(records.iter().map(|r| r.to_tsv_row()))
            .collect(),
    };
    let code = if records.iter().all(|r| r.verified) { ExitCode::SUCCESS } else { ExitCode::from(1) };
    Ok(Output { lines, code })
}

fn verify(format: Format, name: &str) -> Result<Output> {
    let report = run_check(name)?;
    let lines = match format {
        Format::Json => vec![to_json(&json!({
            "name": report.name,
            "passed": report.passed(),
            "cases": report.cases,
            "failure_count": report.failure_count,
            "failures": report.failures,
        }))],
        _ => report.to_string().lines().map(String::from).collect(),
    };
    let code = if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) };
    Ok(Output { lines, code })
}

fn classify(format: Format, r: i64, s: i64, p: i64, q: i64) -> Result<Output> {
    let c = classify_slope(r, s, p, q)?;
    let lines = match format {
        Format::Json => vec![to_json(&json!({
            "r": r,
            "s": s,
            "p": p,
            "q": q,
            "conditions": c.conditions.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "covered": c.is_covered(),
            "summary": c.to_string(),
        }))],
        _ => vec![c.to_string()],
    };
    Ok(Output::ok(lines))
}

fn maps(format: Format, p: i64, q: i64) -> Result<Output> {
    let found = enumerate_affine_maps(p, q)?;
    let role = |a: i64| match a.rem_euclid(p) {
        a if a == 1 % p => "identity",
        a if a == p - 1 => "conjugation",
        _ => "nontrivial",
    };
    let lines = match format {
        Format::Human => found.iter().map(|m| format!("i -> {}i + {} ({}; {m})", m.a, m.b, role(m.a))).collect(),
        Format::Json => found.iter().map(to_json).collect(),
        Format::Tsv => std::iter::once("p\ta\tb\ts0\ts1\ttype\trole".to_string())
            .chain(found.iter().map(|m| {
                let t = m.map_type.map_or(String::new(), |t| t.to_string());
                format!("{}\t{}\t{}\t{}\t{}\t{t}\t{}", m.p, m.a, m.b, m.s0, m.s1, role(m.a))
            }))
            .collect(),
    };
    Ok(Output::ok(lines))
}

fn run(cli: Cli) -> Result<Output> {
    let f = cli.format;
    match cli.command {
        Command::Dinv { p, q, i, multiset } => dinv(f, p, q, i, multiset),
        Command::Surgery { knot, p, q } => surgery(f, &knot, p, q),
        Command::Census { smax, qmax } => census(f, smax, qmax),
        Command::Verify { name } => verify(f, &name),
        Command::Classify { r, s, p, q } => classify(f, r, s, p, q),
        Command::Maps { p, q } => maps(f, p, q),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            for line in &out.lines {
                if writeln!(stdout, "{line}").is_err() {
                    return ExitCode::from(2);
                }
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
