//! Command-line surface for the exact Riordan group library.
//!
//! Every subcommand renders to text, CSV, or JSON; all three are
//! deterministic (exact rationals, sorted JSON keys), so output can be
//! scripted and golden-file tested. Exit codes separate the three ways an
//! invocation can end: 0 success, 1 bad input (argument or expression
//! parse errors, precondition violations), 2 a structured mathematical
//! negative (a check that is false, an obstruction, an infeasibility
//! certificate).

use std::io::IsTerminal;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use riordan_core::exprparse::{self, evaluate_str};
use riordan_core::involutions::{
    classify_involution, is_involution, is_pseudo_involution, riordan_involution_conjugator,
    two_involution_product_witness, ConjugacyWitness, InvolutionClass,
};
use riordan_core::reversibility::{
    conjugate_to_normal_form, is_series_reversible, normal_form_series, strong_decompose,
    ReversibilityError, ReversibilityVerdict,
};
use riordan_core::riordan::RiordanMatrix;
use riordan_core::subgroups::{self, ConjugatorResult, SubgroupTag};
use riordan_core::{QFps, QPair, Rat};

const DEFAULT_ORDER: usize = 16;

/// Exact Riordan group computation at a fixed truncation order.
///
/// Series arguments are expressions over `t` with rational literals:
/// `+ - * / ^`, parentheses, `sqrt(u)`, and `root(k,u)` for the k-th root
/// of a series with constant term 1, e.g. `-t/root(2,1+t^2)`.
#[derive(Parser)]
#[command(name = "riordan", version, about, verbatim_doc_comment)]
struct Cli {
    /// Truncation order N (default 16; env RIORDAN_ORDER overrides)
    #[arg(long, global = true, value_name = "N")]
    order: Option<usize>,

    /// Matrix rows K to materialize where a matrix is printed
    #[arg(long, global = true, default_value_t = 8, value_name = "K")]
    rows: usize,

    /// Output format (default: text on a terminal, json when piped)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct PairArgs {
    /// Expression for g (unit: g(0) != 0)
    #[arg(long, allow_hyphen_values = true)]
    g: String,
    /// Expression for f (composition series: f(0) = 0, f'(0) != 0)
    #[arg(long, allow_hyphen_values = true)]
    f: String,
}

#[derive(Args)]
struct TwoPairArgs {
    #[arg(long = "a-g", allow_hyphen_values = true)]
    a_g: String,
    #[arg(long = "a-f", allow_hyphen_values = true)]
    a_f: String,
    #[arg(long = "b-g", allow_hyphen_values = true)]
    b_g: String,
    #[arg(long = "b-f", allow_hyphen_values = true)]
    b_f: String,
}

#[derive(Subcommand)]
enum Command {
    /// Materialize the matrix of a pair
    Eval(PairArgs),
    /// Product A*B by the fundamental rule, plus its matrix
    Mul(TwoPairArgs),
    /// Conjugate B^-1*A*B, plus its matrix
    Conj(TwoPairArgs),
    /// Commutator A^-1*B^-1*A*B, plus its matrix
    Comm(TwoPairArgs),
    /// Group inverse of a pair
    Inv(PairArgs),
    /// Predicates and classifications on a pair
    Check {
        #[command(subcommand)]
        kind: CheckKind,
    },
    /// Classify an involution to (+1,-t) or (-1,-t) with a conjugator
    ClassifyInvolution(PairArgs),
    /// Constructive witnesses
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
    /// Conjugate an in-subgroup involution to (±1,-t) inside the subgroup,
    /// or certify that no in-subgroup conjugator exists
    SubgroupConjugator {
        /// Subgroup tag: derivative | hitting-time | lagrange | bell |
        /// reciprocal:r=<int> | stabilizer:f=<expr> | appell | bcn:c=<rat>,n=<int>
        #[arg(long)]
        tag: String,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Expand the reversibility normal form -t*(1+lambda*t^p)^(-1/p)
    NormalForm {
        #[arg(long)]
        p: u32,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Decide reversibility of a series under composition
    Reversible {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Fit a series with f'(0) = -1 to a normal form, with conjugator
    NormalFormFit {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Split a pair into two involution factors via a pseudo-involution
    /// witness (default witness: identity, i.e. direct test)
    Decompose {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long = "u-g", allow_hyphen_values = true)]
        u_g: Option<String>,
        #[arg(long = "u-f", allow_hyphen_values = true)]
        u_f: Option<String>,
    },
}

#[derive(Subcommand)]
enum CheckKind {
    /// P*P == identity
    Involution(PairArgs),
    /// P*(1,-t) is an involution
    PseudoInvolution(PairArgs),
    /// g(0) == 1 and f'(0) == 1
    CommutatorSubgroup(PairArgs),
    /// Main-diagonal sign pattern
    Diagonal(PairArgs),
    /// Membership in a tagged subgroup
    Subgroup {
        #[arg(long)]
        tag: String,
        #[command(flatten)]
        pair: PairArgs,
    },
}

#[derive(Subcommand)]
enum WitnessKind {
    /// Express I1*I2 as sign * [A, B]
    TwoInvolutions(TwoPairArgs),
}

/// One subcommand's output in all three formats at once; the format flag
/// only selects which rendering is printed.
struct Rendered {
    text: String,
    csv: String,
    json: Value,
}

enum Failure {
    /// Bad input: exit 1, message on stderr.
    Validation(String),
    /// The math says no: exit 2, structured output on stdout.
    Negative(Rendered),
}

fn validation<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Validation(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let ok = matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = err.print();
            return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    let format = cli.format.unwrap_or_else(|| {
        if std::io::stdout().is_terminal() {
            Format::Text
        } else {
            Format::Json
        }
    });
    let order = match resolve_order(cli.order) {
        Ok(order) => order,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    if order == 0 || cli.rows == 0 {
        eprintln!("error: order and rows must be at least 1");
        return ExitCode::from(1);
    }
    if materializes_matrix(&cli.command) && order < cli.rows - 1 {
        eprintln!(
            "error: a matrix of {} rows needs order >= {} (got order {order})",
            cli.rows,
            cli.rows - 1
        );
        return ExitCode::from(1);
    }
    match run(cli.command, order, cli.rows) {
        Ok(rendered) => {
            emit(&rendered, format);
            ExitCode::SUCCESS
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Negative(rendered)) => {
            emit(&rendered, format);
            ExitCode::from(2)
        }
    }
}

fn materializes_matrix(command: &Command) -> bool {
    matches!(
        command,
        Command::Eval(_) | Command::Mul(_) | Command::Conj(_) | Command::Comm(_)
    )
}

fn resolve_order(arg: Option<usize>) -> Result<usize, String> {
    if let Some(order) = arg {
        return Ok(order);
    }
    match std::env::var("RIORDAN_ORDER") {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("RIORDAN_ORDER must be a nonnegative integer, got `{raw}`")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_ORDER),
        Err(err) => Err(format!("RIORDAN_ORDER: {err}")),
    }
}

fn emit(rendered: &Rendered, format: Format) {
    use std::io::Write;
    let body = match format {
        Format::Text => rendered.text.clone(),
        Format::Csv => rendered.csv.clone(),
        Format::Json => {
            serde_json::to_string_pretty(&rendered.json).expect("rendered JSON serializes")
        }
    };
    let body = body.trim_end_matches('\n');
    // a closed pipe downstream is not our error; keep the exit code
    let _ = writeln!(std::io::stdout().lock(), "{body}");
}

fn series_arg(expr: &str, order: usize) -> Result<QFps, Failure> {
    evaluate_str::<Rat>(expr, order).map_err(validation)
}

fn pair_args(args: &PairArgs, order: usize) -> Result<QPair, Failure> {
    let g = series_arg(&args.g, order)?;
    let f = series_arg(&args.f, order)?;
    QPair::new(g, f).map_err(validation)
}

fn fps_json(series: &QFps) -> Value {
    Value::Array(series.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

fn fps_csv(series: &QFps) -> String {
    series.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn pair_json(pair: &QPair) -> Value {
    json!({ "g": fps_json(pair.g()), "f": fps_json(pair.f()) })
}

fn pair_text(label: &str, pair: &QPair) -> String {
    format!("{label}g: {}\n{label}f: {}\n", pair.g(), pair.f())
}

fn pair_csv(label: &str, pair: &QPair) -> String {
    format!("{label}g,{}\n{label}f,{}\n", fps_csv(pair.g()), fps_csv(pair.f()))
}

fn matrix_json(matrix: &RiordanMatrix<Rat>) -> Value {
    Value::Array(
        matrix
            .rows_as_strings()
            .into_iter()
            .map(|row| Value::Array(row.into_iter().map(Value::String).collect()))
            .collect(),
    )
}

fn witness_json(witness: &ConjugacyWitness<Rat>, verified: bool) -> Value {
    json!({
        "conjugator": pair_json(&witness.conjugator),
        "target": pair_json(&witness.target),
        "sign": witness.sign.to_string(),
        "verified": verified,
    })
}

/// Witnesses from order-losing subgroup constructions live one order below
/// the input pair; verify against the matching truncation.
fn verify_at_witness_order(witness: &ConjugacyWitness<Rat>, pair: &QPair) -> bool {
    let at = witness.conjugator.order();
    if at < pair.order() {
        witness.verify(&pair.truncated(at))
    } else {
        witness.verify(pair)
    }
}

fn run(command: Command, order: usize, rows: usize) -> Result<Rendered, Failure> {
    match command {
        Command::Eval(args) => {
            let pair = pair_args(&args, order)?;
            let matrix = pair.to_matrix(rows).map_err(validation)?;
            Ok(Rendered {
                text: matrix.render_text(),
                csv: matrix.render_csv(),
                json: json!({
                    "command": "eval",
                    "g": args.g,
                    "f": args.f,
                    "order": order,
                    "rows": rows,
                    "matrix": matrix_json(&matrix),
                }),
            })
        }
        Command::Mul(args) => binary_op("mul", &args, order, rows, |a, b| a.multiply(b)),
        Command::Conj(args) => binary_op("conj", &args, order, rows, |a, b| a.conjugate(b)),
        Command::Comm(args) => binary_op("comm", &args, order, rows, |a, b| a.commutator(b)),
        Command::Inv(args) => {
            let pair = pair_args(&args, order)?;
            let inverse = pair.inverse().map_err(validation)?;
            Ok(Rendered {
                text: pair_text("", &inverse),
                csv: pair_csv("", &inverse),
                json: json!({
                    "command": "inv",
                    "order": order,
                    "g": fps_json(inverse.g()),
                    "f": fps_json(inverse.f()),
                }),
            })
        }
        Command::Check { kind } => check(kind, order, rows),
        Command::ClassifyInvolution(args) => classify(&args, order),
        Command::Witness { kind: WitnessKind::TwoInvolutions(args) } => {
            let i1 = pair_args(&PairArgs { g: args.a_g, f: args.a_f }, order)?;
            let i2 = pair_args(&PairArgs { g: args.b_g, f: args.b_f }, order)?;
            let witness = two_involution_product_witness(&i1, &i2).map_err(validation)?;
            let verified = witness.verify(&i1, &i2);
            Ok(Rendered {
                text: format!(
                    "sign: {}\n{}{}product is involution: {}\nverified: {verified}\n",
                    witness.sign,
                    pair_text("a ", &witness.a),
                    pair_text("b ", &witness.b),
                    witness.product_is_involution,
                ),
                csv: format!(
                    "sign,{}\n{}{}product-is-involution,{}\nverified,{verified}\n",
                    witness.sign,
                    pair_csv("a-", &witness.a),
                    pair_csv("b-", &witness.b),
                    witness.product_is_involution,
                ),
                json: json!({
                    "command": "witness",
                    "kind": "two-involutions",
                    "order": order,
                    "sign": witness.sign.to_string(),
                    "a": pair_json(&witness.a),
                    "b": pair_json(&witness.b),
                    "product_is_involution": witness.product_is_involution,
                    "verified": verified,
                }),
            })
        }
        Command::SubgroupConjugator { tag, pair } => subgroup_conjugator(&tag, &pair, order),
        Command::NormalForm { p, lambda } => {
            let lambda = exprparse::parse_rational(&lambda).map_err(validation)?;
            let descriptor =
                normal_form_series::<Rat>(p, lambda.clone(), order).map_err(validation)?;
            Ok(Rendered {
                text: format!("series: {}\n", descriptor.series),
                csv: format!("series,{}\n", fps_csv(&descriptor.series)),
                json: json!({
                    "command": "normal-form",
                    "order": order,
                    "p": p,
                    "lambda": lambda.to_string(),
                    "series": fps_json(&descriptor.series),
                }),
            })
        }
        Command::Reversible { f } => reversible(&f, order),
        Command::NormalFormFit { f } => normal_form_fit(&f, order),
        Command::Decompose { pair, u_g, u_f } => decompose(&pair, u_g, u_f, order),
    }
}

fn binary_op(
    name: &str,
    args: &TwoPairArgs,
    order: usize,
    rows: usize,
    op: impl Fn(&QPair, &QPair) -> Result<QPair, riordan_core::riordan::RiordanError>,
) -> Result<Rendered, Failure> {
    let a = pair_args(&PairArgs { g: args.a_g.clone(), f: args.a_f.clone() }, order)?;
    let b = pair_args(&PairArgs { g: args.b_g.clone(), f: args.b_f.clone() }, order)?;
    let result = op(&a, &b).map_err(validation)?;
    let matrix = result.to_matrix(rows).map_err(validation)?;
    Ok(Rendered {
        text: format!("{}{}", pair_text("", &result), matrix.render_text()),
        csv: format!("{}{}", pair_csv("", &result), matrix.render_csv()),
        json: json!({
            "command": name,
            "order": order,
            "rows": rows,
            "g": fps_json(result.g()),
            "f": fps_json(result.f()),
            "matrix": matrix_json(&matrix),
        }),
    })
}

fn bool_check(kind: &str, extra: Vec<(&str, Value)>, result: bool, order: usize) -> Result<Rendered, Failure> {
    let mut object = serde_json::Map::new();
    object.insert("command".into(), json!("check"));
    object.insert("kind".into(), json!(kind));
    object.insert("order".into(), json!(order));
    object.insert("result".into(), json!(result));
    let mut csv_extra = String::new();
    for (key, value) in extra {
        csv_extra = format!("{},", value.as_str().unwrap_or_default());
        object.insert(key.into(), value.clone());
    }
    let rendered = Rendered {
        text: format!("{kind}: {result}\n"),
        csv: format!("check,{kind},{csv_extra}{result}\n"),
        json: Value::Object(object),
    };
    if result {
        Ok(rendered)
    } else {
        Err(Failure::Negative(rendered))
    }
}

fn check(kind: CheckKind, order: usize, rows: usize) -> Result<Rendered, Failure> {
    match kind {
        CheckKind::Involution(args) => {
            let pair = pair_args(&args, order)?;
            bool_check("involution", vec![], is_involution(&pair), order)
        }
        CheckKind::PseudoInvolution(args) => {
            let pair = pair_args(&args, order)?;
            bool_check("pseudo-involution", vec![], is_pseudo_involution(&pair), order)
        }
        CheckKind::CommutatorSubgroup(args) => {
            let pair = pair_args(&args, order)?;
            bool_check("commutator-subgroup", vec![], pair.in_commutator_subgroup(), order)
        }
        CheckKind::Diagonal(args) => {
            let pair = pair_args(&args, order)?;
            let pattern = pair.diagonal_pattern();
            let g0 = pair.g().coeff(0);
            let f1 = pair.f().coeff(1);
            let mut entries = Vec::with_capacity(rows);
            let mut value = g0;
            for _ in 0..rows {
                entries.push(value.clone());
                value *= f1.clone();
            }
            let listed = entries.iter().map(|e| e.to_string()).collect::<Vec<_>>();
            Ok(Rendered {
                text: format!("diagonal pattern: {pattern}\ndiagonal: {}\n", listed.join(" ")),
                csv: format!("check,diagonal,{pattern},{}\n", listed.join(",")),
                json: json!({
                    "command": "check",
                    "kind": "diagonal",
                    "order": order,
                    "pattern": pattern.to_string(),
                    "diagonal": listed,
                }),
            })
        }
        CheckKind::Subgroup { tag, pair } => {
            let tag = SubgroupTag::parse(&tag, order).map_err(validation)?;
            let pair = pair_args(&pair, order)?;
            let member = subgroups::is_member(&tag, &pair);
            bool_check("subgroup", vec![("tag", json!(tag.to_string()))], member, order)
        }
    }
}

fn class_name(class: InvolutionClass) -> &'static str {
    match class {
        InvolutionClass::Identity => "identity",
        InvolutionClass::MinusIdentity => "minus-identity",
        InvolutionClass::ConjugateToM => "conjugate-to-m",
        InvolutionClass::ConjugateToMinusM => "conjugate-to-minus-m",
        InvolutionClass::NotInvolution => "not-involution",
    }
}

fn classify(args: &PairArgs, order: usize) -> Result<Rendered, Failure> {
    let pair = pair_args(args, order)?;
    let class = classify_involution(&pair);
    let name = class_name(class);
    match class {
        InvolutionClass::NotInvolution => Err(Failure::Negative(Rendered {
            text: format!("class: {name}\n"),
            csv: format!("classify-involution,{name}\n"),
            json: json!({ "command": "classify-involution", "order": order, "class": name }),
        })),
        InvolutionClass::Identity | InvolutionClass::MinusIdentity => Ok(Rendered {
            text: format!("class: {name}\nscalar pair; it is its own diagonal form\n"),
            csv: format!("classify-involution,{name}\n"),
            json: json!({
                "command": "classify-involution",
                "order": order,
                "class": name,
                "note": "scalar pair; it is its own diagonal form",
            }),
        }),
        InvolutionClass::ConjugateToM | InvolutionClass::ConjugateToMinusM => {
            let witness = riordan_involution_conjugator(&pair).map_err(validation)?;
            let verified = witness.verify(&pair);
            Ok(Rendered {
                text: format!(
                    "class: {name}\nsign: {}\n{}{}verified: {verified}\n",
                    witness.sign,
                    pair_text("conjugator ", &witness.conjugator),
                    pair_text("target ", &witness.target),
                ),
                csv: format!(
                    "classify-involution,{name},{}\n{}{}verified,{verified}\n",
                    witness.sign,
                    pair_csv("conjugator-", &witness.conjugator),
                    pair_csv("target-", &witness.target),
                ),
                json: json!({
                    "command": "classify-involution",
                    "order": order,
                    "class": name,
                    "sign": witness.sign.to_string(),
                    "conjugator": pair_json(&witness.conjugator),
                    "target": pair_json(&witness.target),
                    "verified": verified,
                }),
            })
        }
    }
}

fn subgroup_conjugator(tag: &str, pair: &PairArgs, order: usize) -> Result<Rendered, Failure> {
    let tag = SubgroupTag::parse(tag, order).map_err(validation)?;
    let pair = pair_args(pair, order)?;
    match subgroups::subgroup_conjugator(&tag, &pair).map_err(validation)? {
        ConjugatorResult::Found(witness) => {
            let verified = verify_at_witness_order(&witness, &pair);
            Ok(Rendered {
                text: format!(
                    "status: found\nsign: {}\n{}{}verified: {verified}\n",
                    witness.sign,
                    pair_text("conjugator ", &witness.conjugator),
                    pair_text("target ", &witness.target),
                ),
                csv: format!(
                    "subgroup-conjugator,{tag},found,{}\n{}{}verified,{verified}\n",
                    witness.sign,
                    pair_csv("conjugator-", &witness.conjugator),
                    pair_csv("target-", &witness.target),
                ),
                json: json!({
                    "command": "subgroup-conjugator",
                    "order": order,
                    "tag": tag.to_string(),
                    "status": "found",
                    "sign": witness.sign.to_string(),
                    "conjugator": pair_json(&witness.conjugator),
                    "target": pair_json(&witness.target),
                    "verified": verified,
                }),
            })
        }
        ConjugatorResult::InfeasibleInSubgroup { certificate, outside_witness } => {
            let verified = verify_at_witness_order(&outside_witness, &pair);
            Err(Failure::Negative(Rendered {
                text: format!(
                    "status: infeasible in subgroup\ncontradiction degree: {}\ndetail: {}\n\
                     outside witness sign: {}\n{}{}outside witness verified: {verified}\n",
                    certificate.degree,
                    certificate.detail,
                    outside_witness.sign,
                    pair_text("outside conjugator ", &outside_witness.conjugator),
                    pair_text("outside target ", &outside_witness.target),
                ),
                csv: format!(
                    "subgroup-conjugator,{tag},infeasible-in-subgroup,{}\ndetail,\"{}\"\n{}{}outside-verified,{verified}\n",
                    certificate.degree,
                    certificate.detail,
                    pair_csv("outside-conjugator-", &outside_witness.conjugator),
                    pair_csv("outside-target-", &outside_witness.target),
                ),
                json: json!({
                    "command": "subgroup-conjugator",
                    "order": order,
                    "tag": tag.to_string(),
                    "status": "infeasible-in-subgroup",
                    "certificate": {
                        "degree": certificate.degree,
                        "detail": certificate.detail,
                    },
                    "outside_witness": witness_json(&outside_witness, verified),
                }),
            }))
        }
    }
}

fn reversible(expr: &str, order: usize) -> Result<Rendered, Failure> {
    let f = series_arg(expr, order)?;
    let report = is_series_reversible(&f).map_err(validation)?;
    let log = report.log.clone();
    match report.verdict {
        ReversibilityVerdict::Reversible { witness } => {
            let fbar = f.revert().map_err(validation)?;
            let verified = match (f.compose(&witness), witness.compose(&fbar)) {
                (Ok(lhs), Ok(rhs)) => lhs == rhs,
                _ => false,
            };
            Ok(Rendered {
                text: format!("verdict: reversible\nwitness: {witness}\nverified: {verified}\n"),
                csv: format!("reversible,true\nwitness,{}\nverified,{verified}\n", fps_csv(&witness)),
                json: json!({
                    "command": "reversible",
                    "order": order,
                    "verdict": "reversible",
                    "witness": fps_json(&witness),
                    "log": log,
                    "verified": verified,
                }),
            })
        }
        ReversibilityVerdict::ObstructedAtDegree(degree) => Err(Failure::Negative(Rendered {
            text: format!("verdict: obstructed at degree {degree}\n"),
            csv: format!("reversible,false,obstructed-at-degree,{degree}\n"),
            json: json!({
                "command": "reversible",
                "order": order,
                "verdict": "obstructed-at-degree",
                "degree": degree,
                "log": log,
            }),
        })),
        ReversibilityVerdict::MultiplierObstruction => Err(Failure::Negative(Rendered {
            text: "verdict: multiplier obstruction (f'(0) not a root of unity in Q)\n".into(),
            csv: "reversible,false,multiplier-obstruction\n".into(),
            json: json!({
                "command": "reversible",
                "order": order,
                "verdict": "multiplier-obstruction",
                "log": log,
            }),
        })),
    }
}

fn normal_form_fit(expr: &str, order: usize) -> Result<Rendered, Failure> {
    let f = series_arg(expr, order)?;
    match conjugate_to_normal_form(&f) {
        Ok(descriptor) => {
            let verified = descriptor.verify(&f);
            let conjugator = descriptor.conjugator.as_ref();
            Ok(Rendered {
                text: format!(
                    "p: {}\nlambda: {}\nseries: {}\nconjugator: {}\nverified: {verified}\n",
                    descriptor.p,
                    descriptor.lambda,
                    descriptor.series,
                    conjugator.map_or("t".to_string(), |s| s.to_string()),
                ),
                csv: format!(
                    "normal-form-fit,{},{}\nseries,{}\nconjugator,{}\nverified,{verified}\n",
                    descriptor.p,
                    descriptor.lambda,
                    fps_csv(&descriptor.series),
                    conjugator.map_or_else(String::new, fps_csv),
                ),
                json: json!({
                    "command": "normal-form-fit",
                    "order": order,
                    "p": descriptor.p,
                    "lambda": descriptor.lambda.to_string(),
                    "series": fps_json(&descriptor.series),
                    "conjugator": conjugator.map_or(Value::Null, fps_json),
                    "verified": verified,
                }),
            })
        }
        Err(ReversibilityError::MultiplierNotMinusOne) => Err(Failure::Negative(Rendered {
            text: "obstruction: multiplier is not -1\n".into(),
            csv: "normal-form-fit,obstruction,multiplier-not-minus-one\n".into(),
            json: json!({
                "command": "normal-form-fit",
                "order": order,
                "obstruction": "multiplier-not-minus-one",
            }),
        })),
        Err(ReversibilityError::NormalFormObstruction { degree }) => {
            Err(Failure::Negative(Rendered {
                text: format!("obstruction: no rational conjugacy at degree {degree}\n"),
                csv: format!("normal-form-fit,obstruction,degree,{degree}\n"),
                json: json!({
                    "command": "normal-form-fit",
                    "order": order,
                    "obstruction": "no-rational-conjugacy",
                    "degree": degree,
                }),
            }))
        }
        Err(other) => Err(validation(other)),
    }
}

fn decompose(
    pair: &PairArgs,
    u_g: Option<String>,
    u_f: Option<String>,
    order: usize,
) -> Result<Rendered, Failure> {
    let pair = pair_args(pair, order)?;
    let witness = match (u_g, u_f) {
        (Some(g), Some(f)) => pair_args(&PairArgs { g, f }, order)?,
        (None, None) => QPair::identity(order),
        _ => {
            return Err(Failure::Validation(
                "--u-g and --u-f must be supplied together".into(),
            ))
        }
    };
    match strong_decompose(&pair, &witness) {
        Ok((left, right)) => {
            let verified = is_involution(&left)
                && is_involution(&right)
                && left.multiply(&right).map(|p| p == pair).unwrap_or(false);
            Ok(Rendered {
                text: format!(
                    "{}{}verified: {verified}\n",
                    pair_text("left ", &left),
                    pair_text("right ", &right),
                ),
                csv: format!(
                    "{}{}verified,{verified}\n",
                    pair_csv("left-", &left),
                    pair_csv("right-", &right),
                ),
                json: json!({
                    "command": "decompose",
                    "order": order,
                    "left": pair_json(&left),
                    "right": pair_json(&right),
                    "verified": verified,
                }),
            })
        }
        Err(ReversibilityError::WitnessNotPseudoInvolution) => Err(Failure::Negative(Rendered {
            text: "not decomposable with this witness: the conjugate is not a pseudo-involution\n"
                .into(),
            csv: "decompose,not-pseudo-involution-under-witness\n".into(),
            json: json!({
                "command": "decompose",
                "order": order,
                "error": "not-pseudo-involution-under-witness",
            }),
        })),
        Err(other) => Err(validation(other)),
    }
}
