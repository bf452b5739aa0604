use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rescoef::expr::{self, Value};
use rescoef::identities::{self, Certificate, Range};
use rescoef::numeric::{parse_q, q_to_string, ParamBinding};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "rescoef",
    version,
    about = "Exact residues, series expansion and identity certificates"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
    Md,
}

#[derive(clap::Args)]
struct Common {
    /// Fix a parameter: name=value, value an integer or a/b.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the identity registry.
    List {
        #[command(flatten)]
        common: Common,
    },
    /// Verify an identity over a parameter grid.
    Verify {
        id: String,
        /// Sweep a parameter over an inclusive range: name=a..b.
        #[arg(long = "range", value_name = "NAME=A..B")]
        ranges: Vec<String>,
        /// Coefficient hypercube size for generating-function checks.
        #[arg(long)]
        order: Option<i64>,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Expand an expression into coefficients.
    Expand {
        expr: String,
        #[arg(long, default_value_t = 8)]
        order: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate an expression, optionally taking the residue in one variable.
    Res {
        expr: String,
        #[arg(long)]
        var: Option<String>,
        #[arg(long, default_value_t = 32)]
        order: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate an identity or an expression over one swept parameter.
    Table {
        target: String,
        #[arg(long = "range", value_name = "NAME=A..B")]
        ranges: Vec<String>,
        #[arg(long, default_value_t = 32)]
        order: i64,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
}

type Outcome = Result<(String, bool), Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn parse_binding(items: &[String]) -> Result<ParamBinding, Failure> {
    let mut b = ParamBinding::new();
    for item in items {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("--param expects name=value, got `{item}`")))?;
        b.set(name.trim(), parse_q(value).map_err(usage)?);
    }
    Ok(b)
}

fn parse_ranges(items: &[String]) -> Result<Vec<Range>, Failure> {
    items
        .iter()
        .map(|item| {
            let bad = || usage(format!("--range expects name=a..b, got `{item}`"));
            let (name, span) = item.split_once('=').ok_or_else(bad)?;
            let (a, b) = span.split_once("..").ok_or_else(bad)?;
            let lo = a.trim().parse().map_err(|_| bad())?;
            let hi = b.trim().parse().map_err(|_| bad())?;
            Ok(Range::new(name.trim(), lo, hi))
        })
        .collect()
}

fn binding_text(b: &ParamBinding) -> String {
    b.iter()
        .map(|(k, v)| format!("{k}={}", q_to_string(v)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_table(format: Format, header: &[String], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            let objs: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::Value::Object(
                        header
                            .iter()
                            .cloned()
                            .zip(r.iter().map(|c| json!(c)))
                            .collect(),
                    )
                })
                .collect();
            out = serde_json::to_string(&objs).expect("serializable");
            out.push('\n');
        }
        Format::Md => {
            let _ = writeln!(out, "| {} |", header.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
            for r in rows {
                let _ = writeln!(out, "| {} |", r.join(" | "));
            }
        }
        Format::Csv | Format::Text => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header).expect("in-memory write");
            for r in rows {
                w.write_record(r).expect("in-memory write");
            }
            out = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input");
        }
    }
    out
}

fn cmd_list(c: &Common) -> Outcome {
    let header: Vec<String> = ["id", "params", "expected_failure", "summary"]
        .map(String::from)
        .to_vec();
    let rows: Vec<Vec<String>> = identities::registry_list()
        .iter()
        .map(|i| {
            let params: Vec<&str> = i.params.iter().map(|p| p.name).collect();
            vec![
                i.id.to_string(),
                params.join(" "),
                i.expected_failure.to_string(),
                i.summary.to_string(),
            ]
        })
        .collect();
    Ok((render_table(c.format, &header, &rows), true))
}

fn certificate_text(cert: &Certificate, format: Format) -> String {
    match format {
        Format::Json => cert.to_json() + "\n",
        Format::Text => {
            let status = match (cert.pass(), cert.expected_failure) {
                (true, false) => "PASS",
                (false, false) => "FAIL",
                (false, true) => "EXPECTED FAILURE",
                (true, true) => "UNEXPECTED PASS",
            };
            let swept: Vec<String> = cert
                .params_swept
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            let mut s = format!(
                "{status} {} cases={} [{}] digest={}\n",
                cert.identity,
                cert.cases,
                swept.join(" "),
                cert.digest()
            );
            for f in &cert.failures {
                let _ = writeln!(
                    s,
                    "  at {}: lhs={} rhs={}",
                    binding_text(&f.binding),
                    q_to_string(&f.lhs),
                    q_to_string(&f.rhs)
                );
            }
            s
        }
        Format::Csv | Format::Md => {
            let header: Vec<String> = ["binding", "lhs", "rhs"].map(String::from).to_vec();
            let rows: Vec<Vec<String>> = cert
                .failures
                .iter()
                .map(|f| {
                    vec![
                        binding_text(&f.binding),
                        q_to_string(&f.lhs),
                        q_to_string(&f.rhs),
                    ]
                })
                .collect();
            let mut s = render_table(format, &header, &rows);
            let _ = writeln!(
                s,
                "{}{} cases={} pass={}",
                if format == Format::Md { "\n" } else { "# " },
                cert.identity,
                cert.cases,
                cert.pass()
            );
            s
        }
    }
}

fn cmd_verify(
    id: &str,
    ranges: &[String],
    order: Option<i64>,
    jobs: Option<usize>,
    c: &Common,
) -> Outcome {
    let fixed = parse_binding(&c.params)?;
    let cert = if id.starts_with("gf.") {
        if !identities::GF_IDS.contains(&id) {
            return Err(usage(format!("unknown identity `{id}`")));
        }
        identities::gf_coeff_check(id, order.unwrap_or(4), &fixed)
    } else {
        identities::verify_grid(id, &parse_ranges(ranges)?, &fixed, jobs)
    };
    let cert = cert.map_err(|e| match e {
        identities::IdentityError::Eval { .. } | identities::IdentityError::Pool(_) => {
            Failure::Verification(e.to_string())
        }
        _ => usage(e),
    })?;
    Ok((certificate_text(&cert, c.format), cert.expectation_met()))
}

fn parse_expr(text: &str) -> Result<expr::Expr, Failure> {
    expr::parse(text).map_err(usage)
}

fn cmd_expand(text: &str, order: i64, c: &Common) -> Outcome {
    let e = parse_expr(text)?;
    let b = parse_binding(&c.params)?;
    let (vars, coeffs) = expr::expand(&e, &b, order).map_err(usage)?;
    let mut header = vars.clone();
    header.push("coefficient".into());
    let rows: Vec<Vec<String>> = coeffs
        .iter()
        .map(|(ex, x)| {
            ex.iter()
                .map(i64::to_string)
                .chain([q_to_string(x)])
                .collect()
        })
        .collect();
    Ok((render_table(c.format, &header, &rows), true))
}

fn value_text(v: &Value) -> String {
    match v {
        Value::Rational(x) => q_to_string(x),
        other => other.to_string(),
    }
}

fn cmd_res(text: &str, var: Option<&str>, order: i64, c: &Common) -> Outcome {
    let mut e = parse_expr(text)?;
    if let Some(v) = var {
        e = expr::Expr::Res(v.to_string(), Box::new(e));
    }
    let b = parse_binding(&c.params)?;
    let v = expr::eval(&e, &b, order).map_err(usage)?;
    let out = match c.format {
        Format::Json => json!({"expr": e.to_string(), "value": value_text(&v)}).to_string() + "\n",
        _ => value_text(&v) + "\n",
    };
    Ok((out, true))
}

fn cmd_table(target: &str, ranges: &[String], order: i64, c: &Common) -> Outcome {
    let ranges = parse_ranges(ranges)?;
    let fixed = parse_binding(&c.params)?;
    if let Ok(ident) = identities::find(target) {
        let (points, _) = identities::grid_points(&ident, &ranges, &fixed).map_err(usage)?;
        let names: Vec<String> = ident.params.iter().map(|p| p.name.to_string()).collect();
        let mut header = names.clone();
        header.extend(["lhs", "rhs", "equal"].map(String::from));
        let mut rows = Vec::new();
        let mut ok = true;
        for b in &points {
            let r = identities::verify_one(target, b)
                .map_err(|e| Failure::Verification(e.to_string()))?;
            ok &= r.equal;
            let mut row: Vec<String> = names
                .iter()
                .map(|n| q_to_string(b.get(n).expect("bound")))
                .collect();
            row.extend([
                q_to_string(&r.lhs),
                q_to_string(&r.rhs),
                r.equal.to_string(),
            ]);
            rows.push(row);
        }
        let met = if ident.expected_failure {
            !ok || points.is_empty()
        } else {
            ok
        };
        return Ok((render_table(c.format, &header, &rows), met));
    }
    let e = parse_expr(target)?;
    let [r] = ranges.as_slice() else {
        return Err(usage("an expression table needs exactly one --range"));
    };
    let mut rows = Vec::new();
    for x in r.lo..=r.hi {
        let mut b = fixed.clone();
        b.set(&r.name, rescoef::numeric::q(x));
        let v = expr::eval(&e, &b, order).map_err(usage)?;
        rows.push(vec![x.to_string(), value_text(&v)]);
    }
    Ok((
        render_table(c.format, &[r.name.clone(), "value".into()], &rows),
        true,
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, common) = match &cli.cmd {
        Cmd::List { common } => (cmd_list(common), common),
        Cmd::Verify {
            id,
            ranges,
            order,
            jobs,
            common,
        } => (cmd_verify(id, ranges, *order, *jobs, common), common),
        Cmd::Expand {
            expr,
            order,
            common,
        } => (cmd_expand(expr, *order, common), common),
        Cmd::Res {
            expr,
            var,
            order,
            common,
        } => (cmd_res(expr, var.as_deref(), *order, common), common),
        Cmd::Table {
            target,
            ranges,
            order,
            common,
        } => (cmd_table(target, ranges, *order, common), common),
    };
    match result {
        Ok((text, ok)) => {
            if let Some(path) = &common.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
