//! `unirat`: queries about subfields of rational function fields.

use std::process::ExitCode;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use unirat_core::expr::{format_ratfn, parse_ratfn};
use unirat_core::fieldops::{
    is_member, select_transcendence_basis, transcendence_degree, FieldPresentation, TagSystem,
};
use unirat_core::pipeline::{algebraic_intermediate_fields, decompose_univariate, luroth_closure};
use unirat_core::subfields::DEFAULT_BLOCK_CAP;
use unirat_core::{Error, RatFn};

#[derive(Parser, Debug)]
#[command(name = "unirat", version, about = "Intermediate fields of unirational field extensions over the rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Decide whether --elem lies in the field generated by --gens
    Member(Args),
    /// Transcendence degree of the field
    Trdeg(Args),
    /// A transcendence basis chosen among the generators
    Basis(Args),
    /// Minimal polynomial of --elem over the field
    Minpoly(Args),
    /// Fields strictly between the field and Q(vars)
    Subfields(Args),
    /// Lüroth generator of the algebraic closure of a transcendence-degree-one field
    Closure(Args),
    /// Decompositions f = u(h) of a univariate --elem
    Decompose(Args),
}

#[derive(clap::Args, Debug, Clone)]
struct Args {
    /// Comma-separated variable names
    #[arg(long, value_delimiter = ',', required = true)]
    vars: Vec<String>,
    /// Generators, comma-separated or repeated
    #[arg(long, value_delimiter = ',')]
    gens: Vec<String>,
    #[arg(long)]
    elem: Option<String>,
    #[command(flatten)]
    opts: Opts,
}

#[derive(clap::Args, Debug, Clone, Copy, PartialEq, Eq)]
struct Opts {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cap on factor subsets examined by the block search
    #[arg(long, default_value_t = DEFAULT_BLOCK_CAP)]
    max_block_subsets: usize,
    /// Wall-clock limit in seconds
    #[arg(long)]
    timeout: Option<u64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

struct Query {
    name: &'static str,
    vars: Vec<String>,
    gens_src: Vec<String>,
    elem_src: Option<String>,
    opts: Opts,
}

struct Failure {
    exit: u8,
    code: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { exit: 2, code: "usage", message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (exit, code) = match &e {
            Error::Syntax { .. } => (2, "syntax"),
            Error::UnknownIdentifier { .. } => (2, "unknown_identifier"),
            Error::ZeroDenominator | Error::DivisionByZero => (2, "division_by_zero"),
            Error::EmptyPresentation(_) => (2, "empty_presentation"),
            Error::NotAlgebraic { .. } => (1, "not_algebraic"),
            Error::TrdegNotOne(_) => (1, "trdeg_not_one"),
            Error::Transcendental => (1, "transcendental"),
            Error::ConstantInput => (1, "constant_input"),
            Error::NotUnivariate => (1, "not_univariate"),
            Error::ZeroPolynomial => (1, "zero_polynomial"),
            Error::ExpectedSquarefree => (1, "expected_squarefree"),
            Error::Reducible => (1, "reducible"),
            Error::Invariant(_) => (4, "invariant"),
        };
        Failure { exit, code, message: e.to_string() }
    }
}

/// A result as JSON plus its text rendering.
struct Outcome {
    json: Value,
    text: String,
    warnings: Vec<String>,
}

fn names(vars: &[String]) -> Vec<&str> {
    vars.iter().map(String::as_str).collect()
}

fn parse_all(srcs: &[String], vars: &[String]) -> Result<Vec<RatFn>, Failure> {
    let vs = names(vars);
    srcs.iter().map(|s| parse_ratfn(s, &vs).map_err(Failure::from)).collect()
}

fn field(q: &Query) -> Result<FieldPresentation, Failure> {
    Ok(FieldPresentation::new(q.vars.clone(), parse_all(&q.gens_src, &q.vars)?)?)
}

fn elem(q: &Query) -> Result<RatFn, Failure> {
    let src = q.elem_src.as_ref().ok_or_else(|| Failure::usage(format!("`{}` requires --elem", q.name)))?;
    Ok(parse_ratfn(src, &names(&q.vars))?)
}

fn tag_names(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("y{}", i)).collect()
}

fn plain(value: Value, text: String) -> Outcome {
    Outcome { json: value, text, warnings: Vec::new() }
}

fn run(q: &Query) -> Result<Outcome, Failure> {
    let vs = names(&q.vars);
    match q.name {
        "member" => {
            let f = field(q)?;
            let g = elem(q)?;
            let (ok, w) = is_member(&g, &f);
            let tags = tag_names(f.ngens());
            let witness = w.map(|w| format_ratfn(&w.expression, &names(&tags)));
            let mut text = ok.to_string();
            if let Some(w) = &witness {
                text.push_str(&format!("\nwitness: {}", w));
            }
            Ok(plain(json!({ "member": ok, "witness": witness, "tags": tags }), text))
        }
        "trdeg" => {
            let d = transcendence_degree(&field(q)?);
            Ok(plain(json!(d), d.to_string()))
        }
        "basis" => {
            let f = field(q)?;
            let gens: Vec<String> =
                select_transcendence_basis(&f).iter().map(|&i| format_ratfn(&f.generators()[i], &vs)).collect();
            Ok(plain(json!(gens), gens.join("\n")))
        }
        "minpoly" => {
            let f = field(q)?;
            let p = TagSystem::new(&f).minimal_polynomial(&elem(q)?)?;
            let m = f.ngens();
            let mut tags = tag_names(m);
            tags.push("z".into());
            let z = RatFn::var(m + 1, m);
            let mut poly = RatFn::zero(m + 1);
            let mut zk = RatFn::one(m + 1);
            for c in &p.coeffs {
                poly = &poly + &(&c.extend_vars(m + 1) * &zk);
                zk = &zk * &z;
            }
            let printed = format_ratfn(&poly, &names(&tags));
            Ok(plain(json!({ "degree": p.degree(), "polynomial": printed, "tags": tags[..m] }), printed))
        }
        "subfields" => {
            let f = field(q)?;
            let rep = algebraic_intermediate_fields(&f, q.opts.max_block_subsets)?;
            let fields: Vec<Value> = rep
                .answers
                .iter()
                .map(|a| json!({ "generators": a.display(&vs), "degree_over_bottom": a.extension_degree_over_bottom }))
                .collect();
            let text = if rep.answers.is_empty() {
                "no intermediate fields".to_string()
            } else {
                rep.answers
                    .iter()
                    .map(|a| format!("[{}] {}", a.extension_degree_over_bottom, a.display(&vs).join(", ")))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Ok(Outcome {
                json: json!({ "total_degree": rep.total_degree, "fields": fields }),
                text,
                warnings: rep.warnings,
            })
        }
        "closure" => {
            let h = format_ratfn(&luroth_closure(&field(q)?)?, &vs);
            Ok(plain(json!(h), h))
        }
        "decompose" => {
            let f = match &q.elem_src {
                Some(_) => elem(q)?,
                None => {
                    let gens = parse_all(&q.gens_src, &q.vars)?;
                    let [g] = gens.as_slice() else {
                        return Err(Failure::usage("`decompose` requires --elem or exactly one generator"));
                    };
                    g.clone()
                }
            };
            let ds = decompose_univariate(&f)?;
            let pairs: Vec<(String, String)> =
                ds.iter().map(|d| (format_ratfn(&d.outer, &["z"]), format_ratfn(&d.inner, &vs))).collect();
            let text = if pairs.is_empty() {
                "no decompositions".to_string()
            } else {
                pairs.iter().map(|(u, h)| format!("u = {}, h = {}", u, h)).collect::<Vec<_>>().join("\n")
            };
            let value: Vec<Value> = pairs.iter().map(|(u, h)| json!({ "outer": u, "inner": h })).collect();
            Ok(plain(json!(value), text))
        }
        _ => unreachable!("clap restricts the command names"),
    }
}

fn run_with_timeout(q: Query) -> (Query, Result<Outcome, Failure>) {
    let Some(secs) = q.opts.timeout else {
        let res = run(&q);
        return (q, res);
    };
    let (tx, rx) = mpsc::channel();
    let worker = Query { name: q.name, vars: q.vars.clone(), gens_src: q.gens_src.clone(), elem_src: q.elem_src.clone(), opts: q.opts };
    std::thread::spawn(move || {
        let _ = tx.send(run(&worker));
    });
    let res = rx.recv_timeout(Duration::from_secs(secs)).unwrap_or_else(|_| {
        Err(Failure { exit: 3, code: "timeout", message: format!("no answer within {} s", secs) })
    });
    (q, res)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (name, args) = match cli.command {
        Command::Member(a) => ("member", a),
        Command::Trdeg(a) => ("trdeg", a),
        Command::Basis(a) => ("basis", a),
        Command::Minpoly(a) => ("minpoly", a),
        Command::Subfields(a) => ("subfields", a),
        Command::Closure(a) => ("closure", a),
        Command::Decompose(a) => ("decompose", a),
    };
    let gens_src: Vec<String> = args.gens.iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    let vars: Vec<String> = args.vars.iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    let q = Query { name, vars, gens_src, elem_src: args.elem, opts: args.opts };

    let start = Instant::now();
    let (q, res) = if q.vars.is_empty() {
        (q, Err(Failure::usage("--vars is required")))
    } else {
        run_with_timeout(q)
    };
    let timing_ms = start.elapsed().as_millis() as u64;

    let input = json!({ "vars": q.vars, "gens": q.gens_src, "elem": q.elem_src });
    match (q.opts.format, res) {
        (Format::Json, Ok(out)) => {
            let doc = json!({ "command": q.name, "input": input, "result": out.json, "warnings": out.warnings, "timing_ms": timing_ms });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            ExitCode::SUCCESS
        }
        (Format::Text, Ok(out)) => {
            println!("{}", out.text);
            for w in &out.warnings {
                eprintln!("warning: {}", w);
            }
            ExitCode::SUCCESS
        }
        (Format::Json, Err(f)) => {
            let doc = json!({
                "command": q.name,
                "input": input,
                "result": Value::Null,
                "error": { "code": f.code, "message": f.message },
                "warnings": Vec::<String>::new(),
                "timing_ms": timing_ms,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            ExitCode::from(f.exit)
        }
        (Format::Text, Err(f)) => {
            eprintln!("error[{}]: {}", f.code, f.message);
            ExitCode::from(f.exit)
        }
    }
}
