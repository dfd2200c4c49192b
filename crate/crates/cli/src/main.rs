//! Command-line front end for the sumset/automorphism library.
//!
//! Exit codes: 0 success, 1 parse/usage error, 2 arithmetic overflow,
//! 3 verification or recognition failure.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::process::ExitCode;

use pfin::aut::{classify_phi, identify};
use pfin::oracle::{all_passed, reports_to_json, run_all, OracleConfig, VerificationReport};
use pfin::structure::{decompose, Decomposition, DecompositionKind};
use pfin::{AutElem, FinSet, SetError, Sign, Z2DihElem};

const USAGE: &str = "\
pfin — sumset arithmetic and the automorphism descriptors of the integer power monoid

USAGE:
    pfin <command> [args] [flags]

COMMANDS:
    eval <descriptor> <set>        apply a descriptor to a set literal
    compose <d1> <d2>              compose two descriptors (right applied first)
    inverse <d>                    group inverse of a descriptor
    power <d> <n>                  n-th power of a descriptor
    classify <sign> <a> <b>        classify sign·φ_{a,b}; prints a descriptor
                                   or the unreachable target witness
    conjugate <d1> <d2>            d1 ∘ d2 ∘ d1⁻¹
    identify <file>                recover a descriptor from a table of
                                   `input-set -> output-set` lines
    decompose <d|file>             id/rev factorization of an automorphism
    iso <d>                        coordinates in the sign × dihedral product
    iso --inverse <coords>         descriptor for given coordinates
    verify                         run the brute-force verification suites
    table                          print the 4×4 signed composition table

FLAGS:
    --format text|json             output format (default text)
    --window <lo>..<hi>            verification corpus window
    --max-size <N>                 verification corpus maximum set size
    --alpha-bound <N>              descriptor shift bound for the suites
    --mutate                       also run the mutation-detection suite

SET LITERALS are written {a,b,c}; descriptors are f[n], g[n], -f[n], -g[n].";

#[derive(Debug)]
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }

    fn overflow() -> Self {
        CliError {
            code: 2,
            message: "integer overflow in set arithmetic".into(),
        }
    }

    fn verification(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<pfin::ParseError> for CliError {
    fn from(err: pfin::ParseError) -> Self {
        CliError::usage(err.to_string())
    }
}

impl From<SetError> for CliError {
    fn from(err: SetError) -> Self {
        match err {
            SetError::Overflow => CliError::overflow(),
            other => CliError::usage(other.to_string()),
        }
    }
}

#[derive(Debug, Default)]
struct Flags {
    json: bool,
    window: Option<(i64, i64)>,
    max_size: Option<usize>,
    alpha_bound: Option<i64>,
    mutate: bool,
    inverse: bool,
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            if err.code == 1 {
                eprintln!("\n{USAGE}");
            }
            ExitCode::from(err.code)
        }
    }
}

fn run(args: &[String]) -> Result<(), CliError> {
    let Some((command, rest)) = args.split_first() else {
        return Err(CliError::usage("missing command"));
    };
    let (positionals, flags) = parse_flags(rest)?;
    match command.as_str() {
        "eval" => cmd_eval(&positionals, &flags),
        "compose" => cmd_binary(&positionals, &flags, "compose", |a, b| a.compose(b)),
        "inverse" => cmd_inverse(&positionals, &flags),
        "power" => cmd_power(&positionals, &flags),
        "classify" => cmd_classify(&positionals, &flags),
        "conjugate" => cmd_binary(&positionals, &flags, "conjugate", |a, b| a.conjugate(b)),
        "identify" => cmd_identify(&positionals, &flags),
        "decompose" => cmd_decompose(&positionals, &flags),
        "iso" => cmd_iso(&positionals, &flags),
        "verify" => cmd_verify(&positionals, &flags),
        "table" => cmd_table(&positionals, &flags),
        "help" | "--help" | "-h" => {
            println!("{USAGE}");
            Ok(())
        }
        other => Err(CliError::usage(format!("unknown command `{other}`"))),
    }
}

fn parse_flags(args: &[String]) -> Result<(Vec<String>, Flags), CliError> {
    let mut positionals = Vec::new();
    let mut flags = Flags::default();
    let mut iter = args.iter().peekable();
    while let Some(arg) = iter.next() {
        let (name, inline_value) = match arg.split_once('=') {
            Some((n, v)) if n.starts_with("--") => (n, Some(v.to_string())),
            _ => (arg.as_str(), None),
        };
        let mut take_value = |what: &str| -> Result<String, CliError> {
            if let Some(v) = inline_value.clone() {
                return Ok(v);
            }
            iter.next()
                .cloned()
                .ok_or_else(|| CliError::usage(format!("flag {name} requires a {what}")))
        };
        match name {
            "--format" => {
                let value = take_value("value")?;
                flags.json = match value.as_str() {
                    "json" => true,
                    "text" => false,
                    other => {
                        return Err(CliError::usage(format!(
                            "unknown format `{other}` (expected text or json)"
                        )))
                    }
                };
            }
            "--window" => {
                let value = take_value("range like -3..3")?;
                let Some((lo, hi)) = value.split_once("..") else {
                    return Err(CliError::usage(format!(
                        "window `{value}` must look like lo..hi"
                    )));
                };
                let lo = lo
                    .parse::<i64>()
                    .map_err(|_| CliError::usage(format!("bad window bound `{lo}`")))?;
                let hi = hi
                    .parse::<i64>()
                    .map_err(|_| CliError::usage(format!("bad window bound `{hi}`")))?;
                if lo > hi {
                    return Err(CliError::usage("window lower bound exceeds upper bound"));
                }
                flags.window = Some((lo, hi));
            }
            "--max-size" => {
                let value = take_value("positive integer")?;
                let n = value
                    .parse::<usize>()
                    .ok()
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| CliError::usage(format!("bad max-size `{value}`")))?;
                flags.max_size = Some(n);
            }
            "--alpha-bound" => {
                let value = take_value("non-negative integer")?;
                let n = value
                    .parse::<i64>()
                    .ok()
                    .filter(|&n| n >= 0)
                    .ok_or_else(|| CliError::usage(format!("bad alpha-bound `{value}`")))?;
                flags.alpha_bound = Some(n);
            }
            "--mutate" => flags.mutate = true,
            "--inverse" => flags.inverse = true,
            _ if name.starts_with("--") => {
                return Err(CliError::usage(format!("unknown flag `{name}`")))
            }
            _ => positionals.push(arg.clone()),
        }
    }
    Ok((positionals, flags))
}

fn want<const N: usize>(positionals: &[String], what: [&str; N]) -> Result<[String; N], CliError> {
    if positionals.len() != N {
        return Err(CliError::usage(format!(
            "expected {} argument(s): {}",
            N,
            what.join(" ")
        )));
    }
    Ok(std::array::from_fn(|i| positionals[i].clone()))
}

fn emit(flags: &Flags, text: String, json: serde_json::Value) {
    if flags.json {
        println!("{json}");
    } else {
        println!("{text}");
    }
}

fn cmd_eval(positionals: &[String], flags: &Flags) -> Result<(), CliError> {
    let [descriptor, set] = want(positionals, ["descriptor", "set"])?;
    let e: AutElem = descriptor.parse()?;
    let x: FinSet = set.parse()?;
    let result = e.apply(&x)?;
    emit(
        flags,
        result.to_string(),
        serde_json::json!({
            "command": "eval",
            "descriptor": e.to_string(),
            "input": x.to_string(),
            "result": result.to_string(),
        }),
    );
    Ok(())
}

fn cmd_binary(
    positionals: &[String],
    flags: &Flags,
    name: &str,
    op: impl Fn(&AutElem, &AutElem) -> AutElem,
) -> Result<(), CliError> {
    let [left, right] = want(positionals, ["descriptor", "descriptor"])?;
    let e1: AutElem = left.parse()?;
    let e2: AutElem = right.parse()?;
    let result = op(&e1, &e2);
    emit(
        flags,
        result.to_string(),
        serde_json::json!({
            "command": name,
            "left": e1.to_string(),
            "right": e2.to_string(),
            "result": result.to_string(),
        }),
    );
    Ok(())
}

fn cmd_inverse(positionals: &[String], flags: &Flags) -> Result<(), CliError> {
    let [descriptor] = want(positionals, ["descriptor"])?;
    let e: AutElem = descriptor.parse()?;
    let result = e.inverse();
    emit(
        flags,
        result.to_string(),
        serde_json::json!({
            "command": "inverse",
            "input": e.to_string(),
            "result": result.to_string(),
        }),
    );
    Ok(())
}

fn cmd_power(positionals: &[String], flags: &Flags) -> Result<(), CliError> {
    let [descriptor, exponent] = want(positionals, ["descriptor", "exponent"])?;
    let e: AutElem = descriptor.parse()?;
    let n = exponent
        .parse::<i64>()
        .map_err(|_| CliError::usage(format!("bad exponent `{exponent}`")))?;
    let result = e.power(n);
    emit(
        flags,
        result.to_string(),
        serde_json::json!({
            "command": "power",
            "input": e.to_string(),
            "exponent": n,
            "result": result.to_string(),
        }),
    );
    Ok(())
}

fn parse_sign(text: &str) -> Result<Sign, CliError> {
    match text {
        "+" | "+1" => Ok(Sign::Plus),
        "-" | "-1" => Ok(Sign::Minus),
        other => Err(CliError::usage(format!(
            "bad sign `{other}` (expected + or -)"
        ))),
    }
}

fn cmd_classify(positionals: &[String], flags: &Flags) -> Result<(), CliError> {
    let [sign, a, b] = want(positionals, ["sign", "a", "b"])?;
    let sign = parse_sign(&sign)?;
    let a = a
        .parse::<i64>()
        .map_err(|_| CliError::usage(format!("bad coefficient `{a}`")))?;
    let b = b
        .parse::<i64>()
        .map_err(|_| CliError::usage(format!("bad coefficient `{b}`")))?;
    match classify_phi(sign, a, b) {
        Ok(e) => emit(
            flags,
            e.to_string(),
            serde_json::json!({
                "command": "classify",
                "sign": sign.value(),
                "a": a,
                "b": b,
                "automorphism": true,
                "result": e.to_string(),
            }),
        ),
        Err(rejection) => emit(
            flags,
            rejection.to_string(),
            serde_json::json!({
                "command": "classify",
                "sign": sign.value(),
                "a": a,
                "b": b,
                "automorphism": false,
                "witness": rejection.witness.to_string(),
            }),
        ),
    }
    Ok(())
}

/// Parses a two-column table of `input-set -> output-set` lines.
/// Blank lines and `#` comments are skipped; `→` is accepted for `->`.
fn parse_pair_table(text: &str) -> Result<Vec<(FinSet, FinSet)>, CliError> {
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (lhs, rhs) = line
            .split_once("->")
            .or_else(|| line.split_once('→'))
            .ok_or_else(|| {
                CliError::usage(format!("line {}: expected `set -> set`", lineno + 1))
            })?;
        let input: FinSet = lhs
            .trim()
            .parse()
            .map_err(|e| CliError::usage(format!("line {}: {e}", lineno + 1)))?;
        let output: FinSet = rhs
            .trim()
            .parse()
            .map_err(|e| CliError::usage(format!("line {}: {e}", lineno + 1)))?;
        pairs.push((input, output));
    }
    if pairs.is_empty() {
        return Err(CliError::usage("table file contains no pairs"));
    }
    Ok(pairs)
}

fn read_pair_table(path: &str) -> Result<Vec<(FinSet, FinSet)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {path}: {e}")))?;
    parse_pair_table(&text)
}

fn cmd_identify(positionals: &[String], flags: &Flags) -> Result<(), CliError> {
    let [path] = want(positionals, ["table-file"])?;
    let pairs = read_pair_table(&path)?;
    let table: HashMap<FinSet, FinSet> = pairs.iter().cloned().collect();
    let mut bb = |x: &FinSet| table.get(x).cloned();
    let e = identify(&mut bb).map_err(|err| CliError::verification(err.to_string()))?;
    for (input, output) in &pairs {
        let image = e
            .apply(input)
            .map_err(|_| CliError::verification(format!("descriptor {e} overflows on {input}")))?;
        if image != *output {
            return Err(CliError::verification(format!(
                "not recognized: table maps {input} to {output}, but {e} gives {image}"
            )));
        }
    }
    emit(
        flags,
        e.to_string(),
        serde_json::json!({
            "command": "identify",
            "pairs": pairs.len(),
            "result": e.to_string(),
        }),
    );
    Ok(())
}

fn cmd_decompose(positionals: &[String], flags: &Flags) -> Result<(), CliError> {
    let [source] = want(positionals, ["descriptor-or-table-file"])?;
    let decomposition: Decomposition = if let Ok(e) = source.parse::<AutElem>() {
        let mut bb = |x: &FinSet| e.apply(x).ok();
        decompose(&mut bb).map_err(|err| CliError::verification(err.to_string()))?
    } else {
        let pairs = read_pair_table(&source)?;
        let table: HashMap<FinSet, FinSet> = pairs.into_iter().collect();
        let mut bb = |x: &FinSet| table.get(x).cloned();
        decompose(&mut bb).map_err(|err| CliError::verification(err.to_string()))?
    };
    let kind = match decomposition.kind {
        DecompositionKind::Id => "id",
        DecompositionKind::Rev => "rev",
    };
    emit(
        flags,
        decomposition.to_string(),
        serde_json::json!({
            "command": "decompose",
            "input": source,
            "kind": kind,
            "a": decomposition.a,
            "b": decomposition.b,
            "result": decomposition.to_string(),
        }),
    );
    Ok(())
}

fn cmd_iso(positionals: &[String], flags: &Flags) -> Result<(), CliError> {
    if flags.inverse {
        let [coords] = want(positionals, ["coordinates"])?;
        let z: Z2DihElem = coords.parse()?;
        let e = z.to_aut();
        emit(
            flags,
            e.to_string(),
            serde_json::json!({
                "command": "iso",
                "inverse": true,
                "input": z.to_string(),
                "result": e.to_string(),
            }),
        );
    } else {
        let [descriptor] = want(positionals, ["descriptor"])?;
        let e: AutElem = descriptor.parse()?;
        let z = e.to_z2dih();
        emit(
            flags,
            z.to_string(),
            serde_json::json!({
                "command": "iso",
                "inverse": false,
                "input": e.to_string(),
                "result": z.to_string(),
            }),
        );
    }
    Ok(())
}

fn oracle_config(flags: &Flags) -> OracleConfig {
    let mut config = OracleConfig::default();
    if let Some((lo, hi)) = flags.window {
        config.unary_window = (lo, hi);
        config.pairwise_window = (lo, hi);
    }
    if let Some(n) = flags.max_size {
        config.unary_max_size = n;
        config.pairwise_max_size = n;
    }
    if let Some(n) = flags.alpha_bound {
        config.alpha_bound = n;
    }
    config.mutate = flags.mutate;
    config
}

fn render_report_line(report: &VerificationReport) -> String {
    let mut line = String::new();
    if report.passed() {
        let _ = write!(
            line,
            "PASS {}: {} checks ({} ms)",
            report.suite, report.checks, report.elapsed_ms
        );
    } else {
        let first = &report.failures[0];
        let _ = write!(
            line,
            "FAIL {}: {} of {} checks failed; first: [{}] on {} (expected {}, got {})",
            report.suite,
            report.failures.len(),
            report.checks,
            first.identity,
            first.inputs,
            first.expected,
            first.actual
        );
    }
    for note in &report.notes {
        let _ = write!(line, "\n  note: {note}");
    }
    line
}

fn cmd_verify(positionals: &[String], flags: &Flags) -> Result<(), CliError> {
    if !positionals.is_empty() {
        return Err(CliError::usage("verify takes no positional arguments"));
    }
    let config = oracle_config(flags);
    let reports = run_all(&config);
    if flags.json {
        println!("{}", reports_to_json(&reports));
    } else {
        for report in &reports {
            println!("{}", render_report_line(report));
        }
        let failed = reports.iter().filter(|r| !r.passed()).count();
        if failed == 0 {
            println!("all {} suites passed", reports.len());
        } else {
            println!("{failed} of {} suites failed", reports.len());
        }
    }
    if all_passed(&reports) {
        Ok(())
    } else {
        Err(CliError::verification("verification suites failed"))
    }
}

const TABLE_ENTRIES: [[&str; 4]; 4] = [
    ["f[a+b]", "g[a+b]", "-f[b-a]", "-g[b-a]"],
    ["g[a-b]", "f[a-b]", "-g[-a-b]", "-f[-a-b]"],
    ["-f[a+b]", "-g[a+b]", "f[b-a]", "g[b-a]"],
    ["-g[a-b]", "-f[a-b]", "g[-a-b]", "f[-a-b]"],
];

const TABLE_LABELS: [&str; 4] = ["f[a]", "g[a]", "-f[a]", "-g[a]"];
const TABLE_COLUMNS: [&str; 4] = ["f[b]", "g[b]", "-f[b]", "-g[b]"];

fn cmd_table(positionals: &[String], flags: &Flags) -> Result<(), CliError> {
    if !positionals.is_empty() {
        return Err(CliError::usage("table takes no positional arguments"));
    }
    if flags.json {
        let mut entries = Vec::new();
        for (i, row) in TABLE_ENTRIES.iter().enumerate() {
            for (j, result) in row.iter().enumerate() {
                entries.push(serde_json::json!({
                    "left": TABLE_LABELS[i],
                    "right": TABLE_COLUMNS[j],
                    "result": result,
                }));
            }
        }
        println!(
            "{}",
            serde_json::json!({ "command": "table", "entries": entries })
        );
    } else {
        println!("left ∘ right (right operand applied first)");
        print!("{:>8} |", "∘");
        for col in TABLE_COLUMNS {
            print!(" {col:>9}");
        }
        println!();
        println!("---------+{}", "-".repeat(40));
        for (i, row) in TABLE_ENTRIES.iter().enumerate() {
            print!("{:>8} |", TABLE_LABELS[i]);
            for entry in row {
                print!(" {entry:>9}");
            }
            println!();
        }
    }
    Ok(())
}
