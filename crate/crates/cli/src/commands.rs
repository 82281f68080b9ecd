use deligne::center::verify_naturality;
use deligne::descriptor::ObjectDescriptor;
use deligne::link::LinkSpec;
use deligne::oracle::{artin_fix_count, finite_invariant, regular_fix_count};
use deligne::ring::{CycPoly, Cyclotomic, PolyJson};
use deligne::tables::{reproduce, TableId};
use deligne::verify::{default_oracle_links, run as run_suite, Suite, SuiteConfig, SuiteReport};
use deligne::{Error, Result};
use serde::Serialize;

use crate::render::{json, records};
use crate::{Cli, Command, Format, Guards, SuiteChoice};

pub struct Outcome {
    pub output: String,
    /// False when a table cell, suite check or oracle comparison disagreed.
    pub verified: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, verified: true }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let (format, guards) = (cli.format, &cli.guards);
    match &cli.command {
        Command::Invariant { objects, links, normalize, at, strict } => {
            invariant(format, guards, objects, links, *normalize, *at, *strict).map(Outcome::ok)
        }
        Command::Table { table } => table_cmd(format, guards, *table),
        Command::Verify { suite, n, links, seed } => verify(format, guards, *suite, *n, links, *seed),
        Command::Oracle { objects, links, at } => oracle(format, guards, objects, links, *at),
        Command::Dims { objects, at } => dims(format, guards, objects, *at).map(Outcome::ok),
    }
}

/// Width of the object on a single strand.
fn object_width(d: &ObjectDescriptor) -> usize {
    match d {
        ObjectDescriptor::Interpolation { .. } => d.degree(),
        _ => 2 * d.degree(),
    }
}

fn check_object(guards: &Guards, d: &ObjectDescriptor) -> Result<()> {
    if d.degree() as u64 > guards.max_degree {
        return Err(Error::Guard(format!("{d} has degree {} above --max-degree {}", d.degree(), guards.max_degree)));
    }
    Ok(())
}

fn check_pair(guards: &Guards, d: &ObjectDescriptor, link: &LinkSpec) -> Result<()> {
    check_object(guards, d)?;
    let width = object_width(d) * link.braid()?.strands();
    if width as u64 > guards.max_width {
        return Err(Error::Guard(format!("{d} on {link} needs ambient width {width} above --max-width {}", guards.max_width)));
    }
    Ok(())
}

/// Cycle type and character columns of a descriptor.
fn mu_rho(d: &ObjectDescriptor) -> (String, String) {
    match d {
        ObjectDescriptor::Interpolation { anchor, rho } => (anchor.sigma().cycle_type().to_string(), rho.to_string()),
        ObjectDescriptor::Regular(mu) => (mu.to_string(), String::new()),
        ObjectDescriptor::RegularSum(n) => (format!("n={n}"), String::new()),
    }
}

/// A polynomial or its value at an integer, with a text form.
#[derive(Serialize)]
struct Value {
    #[serde(skip_serializing_if = "Option::is_none")]
    at: Option<i64>,
    value: PolyJson,
    text: String,
}

impl Value {
    fn new(poly: &CycPoly, at: Option<i64>) -> Self {
        match at {
            Some(v) => {
                let c = poly.eval_int(v);
                Value { at, text: c.to_string(), value: CycPoly::constant(c).to_json() }
            }
            None => Value { at, text: poly.to_string(), value: poly.to_json() },
        }
    }
}

#[derive(Serialize)]
struct InvariantRecord {
    object: String,
    mu: String,
    rho: String,
    link: String,
    normalized: bool,
    #[serde(flatten)]
    value: Value,
    dimension: PolyJson,
}

#[derive(Serialize)]
struct InvariantRow<'a> {
    object: &'a str,
    mu: &'a str,
    rho: &'a str,
    link: &'a str,
    normalized: bool,
    at: Option<i64>,
    value: &'a str,
}

fn invariant(
    format: Format,
    guards: &Guards,
    objects: &[ObjectDescriptor],
    links: &[LinkSpec],
    normalize: bool,
    at: Option<i64>,
    strict: bool,
) -> Result<String> {
    for d in objects {
        for l in links {
            check_pair(guards, d, l)?;
        }
    }
    if strict {
        for d in objects {
            let report = verify_naturality(&d.center_object()?)?;
            if !report.all() {
                return Err(Error::Verification(format!("{d} fails the half-braiding checks: {report:?}")));
            }
        }
    }
    let mut out = Vec::new();
    for d in objects {
        let (mu, rho) = mu_rho(d);
        for l in links {
            let r = d.invariant(l, normalize, guards.max_states).map_err(|e| match e {
                Error::NotDivisible => Error::Verification(format!("{d} on {l} is not a polynomial multiple of the dimension")),
                e => e,
            })?;
            out.push(InvariantRecord {
                object: d.to_string(),
                mu: mu.clone(),
                rho: rho.clone(),
                link: l.to_string(),
                normalized: normalize,
                value: Value::new(&r.value, at),
                dimension: r.dimension.to_json(),
            });
        }
    }
    let single = out.len() == 1;
    records(
        format,
        &out,
        |r| if single { r.value.text.clone() } else { format!("{} {}: {}", r.object, r.link, r.value.text) },
        |r| InvariantRow {
            object: &r.object,
            mu: &r.mu,
            rho: &r.rho,
            link: &r.link,
            normalized: r.normalized,
            at: r.value.at,
            value: &r.value.text,
        },
    )
}

#[derive(Serialize)]
struct TableRecord {
    table: String,
    mu: String,
    rho: String,
    link: String,
    normalized: bool,
    computed: String,
    printed: String,
    status: &'static str,
}

fn table_cmd(format: Format, guards: &Guards, table: TableId) -> Result<Outcome> {
    let outcomes = reproduce(table, guards.max_states)?;
    let rows: Vec<TableRecord> = outcomes
        .iter()
        .map(|o| TableRecord {
            table: table.to_string(),
            mu: o.cell.mu.to_string(),
            rho: o.cell.rho_label.to_string(),
            link: o.cell.link.to_string(),
            normalized: true,
            computed: o.computed.to_string(),
            printed: o.expected.to_string(),
            status: if o.matches() { "MATCH" } else { "MISMATCH" },
        })
        .collect();
    let verified = outcomes.iter().all(|o| o.matches());
    let output = records(
        format,
        &rows,
        |r| {
            if r.status == "MATCH" {
                format!("MATCH     {} {} {}: {}", r.mu, r.rho, r.link, r.computed)
            } else {
                format!("MISMATCH  {} {} {}: computed {}, printed {}", r.mu, r.rho, r.link, r.computed, r.printed)
            }
        },
        |r| r,
    )?;
    Ok(Outcome { output, verified })
}

#[derive(Serialize)]
struct CheckRow<'a> {
    suite: String,
    check: &'a str,
    passed: bool,
    detail: &'a str,
}

fn verify(format: Format, guards: &Guards, choice: SuiteChoice, n: usize, links: &[LinkSpec], seed: u64) -> Result<Outcome> {
    if n as u64 > guards.max_degree {
        return Err(Error::Guard(format!("--n {n} above --max-degree {}", guards.max_degree)));
    }
    let suites: Vec<Suite> = match choice {
        SuiteChoice::One(s) => vec![s],
        SuiteChoice::All => Suite::ALL.to_vec(),
    };
    let config = SuiteConfig {
        n,
        links: if links.is_empty() { default_oracle_links() } else { links.to_vec() },
        max_states: guards.max_states,
        seed,
    };
    let reports = suites.iter().map(|&s| run_suite(s, &config)).collect::<Result<Vec<SuiteReport>>>()?;
    let verified = reports.iter().all(SuiteReport::passed);
    let output = match format {
        Format::Json => json(&reports)?,
        Format::Csv => {
            let rows: Vec<CheckRow> = reports
                .iter()
                .flat_map(|r| {
                    r.checks.iter().map(move |c| CheckRow { suite: r.suite.to_string(), check: &c.name, passed: c.passed, detail: &c.detail })
                })
                .collect();
            records(format, &rows, |_| String::new(), |r| r)?
        }
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let failed = r.failures().count();
                let verdict = if failed == 0 { "PASS" } else { "FAIL" };
                s += &format!("{verdict} {}: {} of {} checks hold\n", r.suite, r.checks.len() - failed, r.checks.len());
                for c in r.failures() {
                    s += &format!("  FAIL {}: {}\n", c.name, c.detail);
                }
            }
            s
        }
    };
    Ok(Outcome { output, verified })
}

#[derive(Serialize)]
struct OracleRecord {
    object: String,
    link: String,
    at: usize,
    /// Polynomial evaluated at t = N.
    polynomial: String,
    /// The explicit finite computation.
    finite: String,
    agree: bool,
    /// |Hom(π_1, S_N)| for comparison; reported for D objects only.
    #[serde(skip_serializing_if = "Option::is_none")]
    hom_count: Option<u64>,
}

fn oracle(format: Format, guards: &Guards, objects: &[ObjectDescriptor], links: &[LinkSpec], at: Option<usize>) -> Result<Outcome> {
    for d in objects {
        for l in links {
            check_pair(guards, d, l)?;
        }
    }
    let mut out = Vec::new();
    for d in objects {
        let big = at.unwrap_or(d.degree()).max(1);
        if big as u64 > guards.max_degree + 1 {
            return Err(Error::Guard(format!("N = {big} above --max-degree + 1")));
        }
        for l in links {
            let word = l.braid()?;
            let poly = d.invariant(l, false, guards.max_states)?.value.eval_int(big as i64);
            let (finite, hom_count) = match d {
                ObjectDescriptor::Interpolation { .. } => (finite_invariant(&d.crossed_module(big)?, &word, guards.max_tuples)?, None),
                ObjectDescriptor::RegularSum(n) => {
                    if big != *n {
                        return Err(Error::Parse(format!("the finite model of {d} exists at N = {n} only")));
                    }
                    let regular = regular_fix_count(*n, &word, guards.max_tuples)?;
                    (Cyclotomic::from_int(regular as i64), Some(artin_fix_count(*n, &word, guards.max_tuples)?))
                }
                ObjectDescriptor::Regular(_) => return Err(Error::Parse(format!("no finite model for {d}; use a W or D object"))),
            };
            out.push(OracleRecord {
                object: d.to_string(),
                link: l.to_string(),
                at: big,
                agree: poly == finite,
                polynomial: poly.to_string(),
                finite: finite.to_string(),
                hom_count,
            });
        }
    }
    let verified = out.iter().all(|r| r.agree);
    let output = records(
        format,
        &out,
        |r| {
            let verdict = if r.agree { "AGREE" } else { "DISAGREE" };
            let hom = r.hom_count.map(|h| format!(" (Hom count {h})")).unwrap_or_default();
            format!("{verdict} {} {} at N = {}: polynomial {}, finite {}{hom}", r.object, r.link, r.at, r.polynomial, r.finite)
        },
        |r| r,
    )?;
    Ok(Outcome { output, verified })
}

#[derive(Serialize)]
struct DimRecord {
    object: String,
    #[serde(flatten)]
    value: Value,
}

#[derive(Serialize)]
struct DimRow<'a> {
    object: &'a str,
    at: Option<i64>,
    dimension: &'a str,
}

fn dims(format: Format, guards: &Guards, objects: &[ObjectDescriptor], at: Option<i64>) -> Result<String> {
    let mut out = Vec::new();
    for d in objects {
        check_object(guards, d)?;
        out.push(DimRecord { object: d.to_string(), value: Value::new(&d.dimension()?, at) });
    }
    let single = out.len() == 1;
    records(
        format,
        &out,
        |r| if single { r.value.text.clone() } else { format!("{}: {}", r.object, r.value.text) },
        |r| DimRow { object: &r.object, at: r.value.at, dimension: &r.value.text },
    )
}
