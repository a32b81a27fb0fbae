//! `gdet`: evaluate generalized determinants, print their symbolic form,
//! dump generalized minor matrices, test/extract/sample stabilizer
//! elements, and run the lemma lab. Exit codes: 0 for success or PASS,
//! 1 for computation failures, FAIL reports and stabilizer violations,
//! 2 for usage and input-parsing problems.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gdet_core::json as gjson;
use gdet_core::poly::DEFAULT_EXPANSION_CAP;
use gdet_core::{
    build_gen_det_poly, enumerate_n4_sign_solutions, extract_canonical, gen_det, gen_minor_matrix,
    membership_randomized, membership_symbolic_with_cap, sample_member, verify_derivative_identity,
    verify_rank1_lemma, DenseMatrix, Epsilon, EquationMode, FieldTag, GdetError, GenDetParams,
    LabReport, LinearOperator, N4SignFamily, RankOneSearch, Scalar,
};

#[derive(Parser)]
#[command(
    name = "gdet",
    version,
    about = "Exact generalized determinants and their stabilizers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the generalized determinant of a matrix file
    Eval(EvalArgs),
    /// Print the symbolic generalized determinant of the n x n variable matrix
    Poly(PolyArgs),
    /// Dump the matrix of generalized r-minors
    Minors(MinorsArgs),
    /// Stabilizer operations
    Stab {
        #[command(subcommand)]
        cmd: StabCmd,
    },
    /// Lemma lab: brute-force verification runs
    Lab {
        #[command(subcommand)]
        cmd: LabCmd,
    },
}

#[derive(Args)]
struct EvalArgs {
    /// Path to a matrix JSON file
    #[arg(long)]
    matrix: PathBuf,
    /// Exact alpha (e.g. "2" or "-3/4")
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Exact beta
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Shorthand for alpha = 1, beta = -1
    #[arg(long, conflicts_with_all = ["alpha", "beta", "perm", "even", "odd"])]
    det: bool,
    /// Shorthand for alpha = 1, beta = 1
    #[arg(long, conflicts_with_all = ["alpha", "beta", "even", "odd"])]
    perm: bool,
    /// Shorthand for alpha = 1, beta = 0
    #[arg(long, conflicts_with_all = ["alpha", "beta", "odd"])]
    even: bool,
    /// Shorthand for alpha = 0, beta = 1
    #[arg(long, conflicts_with_all = ["alpha", "beta"])]
    odd: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PolyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
    /// Work over GF(p) instead of Q
    #[arg(long)]
    p: Option<u64>,
    /// Field selector; "Q" is the default and conflicts with --p
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct MinorsArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
    /// Minor order r (1 <= r <= n)
    #[arg(long)]
    r: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum StabCmd {
    /// Test whether an operator stabilizes the generalized determinant
    Check {
        /// Path to an operator JSON file
        #[arg(long)]
        transform: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// "symbolic" (default) or "random"
        #[arg(long, default_value = "symbolic")]
        mode: String,
        #[arg(long, default_value_t = 20)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Extract the canonical form of a stabilizer element
    Extract {
        #[arg(long)]
        transform: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long)]
        json: bool,
    },
    /// Sample a random stabilizer member and write it to disk
    Sample {
        #[arg(long)]
        n: usize,
        /// Sample over GF(p) instead of Q
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path for the operator matrix file
        #[arg(long, default_value = "gdet_operator.json")]
        out_transform: PathBuf,
        /// Output path for the monomial spec file
        #[arg(long, default_value = "gdet_spec.json")]
        out_spec: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum LabCmd {
    /// Support lemma search over GF(p)
    Rank1 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        /// Use seeded sampling with this many draws instead of exhaustion
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive n = 4 sign-solution enumeration
    N4Signs {
        /// "even", "odd" or "full"
        #[arg(long)]
        mode: String,
        #[arg(long)]
        json: bool,
    },
    /// The n = 4 Hadamard operator demonstration
    N4Exotic {
        /// +1 or -1
        #[arg(long, allow_hyphen_values = true)]
        eps_u: String,
        /// +1 or -1
        #[arg(long, allow_hyphen_values = true)]
        eps_v: String,
        /// "even" (default) or "odd"
        #[arg(long, default_value = "even")]
        mode: String,
        #[arg(long)]
        json: bool,
    },
    /// Derivative identity sweep
    Derivative {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

enum CliError {
    /// Bad flags or unreadable/unparseable input: exit 2.
    Usage(String),
    /// The computation itself failed: exit 1.
    Compute(String),
}

impl From<GdetError> for CliError {
    fn from(e: GdetError) -> CliError {
        CliError::Compute(e.to_string())
    }
}

type CmdResult = Result<ExitCode, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Poly(args) => cmd_poly(args),
        Command::Minors(args) => cmd_minors(args),
        Command::Stab { cmd } => match cmd {
            StabCmd::Check {
                transform,
                alpha,
                beta,
                mode,
                trials,
                seed,
                json,
            } => cmd_stab_check(&transform, &alpha, &beta, &mode, trials, seed, json),
            StabCmd::Extract {
                transform,
                alpha,
                beta,
                json,
            } => cmd_stab_extract(&transform, &alpha, &beta, json),
            StabCmd::Sample {
                n,
                p,
                field,
                seed,
                out_transform,
                out_spec,
                json,
            } => cmd_stab_sample(
                n,
                p,
                field.as_deref(),
                seed,
                &out_transform,
                &out_spec,
                json,
            ),
        },
        Command::Lab { cmd } => match cmd {
            LabCmd::Rank1 {
                p,
                n,
                samples,
                seed,
                json,
            } => cmd_lab_rank1(p, n, samples, seed, json),
            LabCmd::N4Signs { mode, json } => cmd_lab_n4_signs(&mode, json),
            LabCmd::N4Exotic {
                eps_u,
                eps_v,
                mode,
                json,
            } => cmd_lab_n4_exotic(&eps_u, &eps_v, &mode, json),
            LabCmd::Derivative {
                n,
                alpha,
                beta,
                p,
                field,
                json,
            } => cmd_lab_derivative(n, &alpha, &beta, p, field.as_deref(), json),
        },
    }
}

// ---- input helpers -------------------------------------------------------

fn parse_field_flags(field: Option<&str>, p: Option<u64>) -> Result<FieldTag, CliError> {
    match (field, p) {
        (None, None) => Ok(FieldTag::Rationals),
        (Some(f), None) if f.eq_ignore_ascii_case("q") => Ok(FieldTag::Rationals),
        (None, Some(p)) => FieldTag::prime(p).map_err(|e| CliError::Usage(e.to_string())),
        (Some(f), Some(p)) if f.eq_ignore_ascii_case("fp") || f.eq_ignore_ascii_case("gf") => {
            FieldTag::prime(p).map_err(|e| CliError::Usage(e.to_string()))
        }
        (Some(f), Some(_)) if f.eq_ignore_ascii_case("q") => {
            Err(CliError::Usage("--field Q conflicts with --p".into()))
        }
        (Some(f), _) => Err(CliError::Usage(format!(
            "unknown field {f:?}; use \"Q\", or \"--p <prime>\" for GF(p)"
        ))),
    }
}

fn parse_scalar(text: &str, field: FieldTag, what: &str) -> Result<Scalar, CliError> {
    Scalar::parse(text, field).map_err(|e| CliError::Usage(format!("bad {what}: {e}")))
}

fn parse_params(alpha: &str, beta: &str, field: FieldTag) -> Result<GenDetParams, CliError> {
    let a = parse_scalar(alpha, field, "--alpha")?;
    let b = parse_scalar(beta, field, "--beta")?;
    GenDetParams::new(a, b).map_err(|e| CliError::Usage(e.to_string()))
}

fn load_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{} is not valid JSON: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<DenseMatrix, CliError> {
    gjson::matrix_from_json(&load_json(path)?)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load_operator(path: &Path) -> Result<LinearOperator, CliError> {
    gjson::operator_from_json(&load_json(path)?)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn term_cap_from_env() -> Result<usize, CliError> {
    match std::env::var("GDET_TERM_CAP") {
        Ok(v) => v
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("GDET_TERM_CAP must be an integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_EXPANSION_CAP),
    }
}

fn emit(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

// ---- subcommands ---------------------------------------------------------

fn cmd_eval(args: EvalArgs) -> CmdResult {
    let a = load_matrix(&args.matrix)?;
    let field = a.field();
    let params = if args.det {
        GenDetParams::from_i64(1, -1, field)
    } else if args.perm {
        GenDetParams::from_i64(1, 1, field)
    } else if args.even {
        GenDetParams::from_i64(1, 0, field)
    } else if args.odd {
        GenDetParams::from_i64(0, 1, field)
    } else {
        match (&args.alpha, &args.beta) {
            (Some(al), Some(be)) => parse_params(al, be, field)?,
            _ => {
                return Err(CliError::Usage(
                    "provide --alpha and --beta, or one of --det/--perm/--even/--odd".into(),
                ))
            }
        }
    };
    let value = gen_det(&params, &a)?;
    if args.json {
        emit(&json!({
            "field": gjson::field_to_json(field),
            "alpha": gjson::scalar_to_json(params.alpha()),
            "beta": gjson::scalar_to_json(params.beta()),
            "value": gjson::scalar_to_json(&value),
        }));
    } else {
        println!("{value}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_poly(args: PolyArgs) -> CmdResult {
    let field = parse_field_flags(args.field.as_deref(), args.p)?;
    let params = parse_params(&args.alpha, &args.beta, field)?;
    let poly = build_gen_det_poly(args.n, &params)?;
    if args.json {
        emit(&json!({
            "n": args.n,
            "field": gjson::field_to_json(field),
            "alpha": gjson::scalar_to_json(params.alpha()),
            "beta": gjson::scalar_to_json(params.beta()),
            "terms": poly.term_count(),
            "text": poly.to_string(),
        }));
    } else {
        println!("{poly}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_minors(args: MinorsArgs) -> CmdResult {
    let a = load_matrix(&args.matrix)?;
    let params = parse_params(&args.alpha, &args.beta, a.field())?;
    let minors = gen_minor_matrix(&params, &a, args.r)?;
    if args.json {
        emit(&gjson::matrix_to_json(&minors));
    } else {
        print!("{minors}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_stab_check(
    transform: &Path,
    alpha: &str,
    beta: &str,
    mode: &str,
    trials: u32,
    seed: u64,
    json_out: bool,
) -> CmdResult {
    let t = load_operator(transform)?;
    let params = parse_params(alpha, beta, t.field())?;
    let verdict = match mode {
        "symbolic" => membership_symbolic_with_cap(&t, &params, term_cap_from_env()?)?,
        "random" => membership_randomized(&t, &params, trials, seed)?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown mode {other:?}; use \"symbolic\" or \"random\""
            )))
        }
    };
    if json_out {
        let mut v = gjson::verdict_to_json(&verdict);
        v["canonical"] = Value::Null;
        emit(&v);
    } else {
        println!(
            "{}",
            if verdict.member {
                "member"
            } else {
                "non-member"
            }
        );
        if let Some(w) = &verdict.witness {
            print!("witness:\n{w}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_stab_extract(transform: &Path, alpha: &str, beta: &str, json_out: bool) -> CmdResult {
    let t = load_operator(transform)?;
    if t.n() < 3 {
        return Err(CliError::Usage(
            "canonical extraction needs an operator on n >= 3".into(),
        ));
    }
    let params = parse_params(alpha, beta, t.field())?;
    match extract_canonical(&t, &params) {
        Ok(element) => {
            if json_out {
                emit(&json!({
                    "member": true,
                    "evidence": "symbolic",
                    "witness": Value::Null,
                    "canonical": gjson::monomial_spec_to_json(element.spec()),
                }));
            } else {
                println!("canonical form:");
                println!(
                    "{}",
                    serde_json::to_string_pretty(&gjson::monomial_spec_to_json(element.spec()))
                        .unwrap()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(
            violation @ (GdetError::NotMonomial { .. }
            | GdetError::ParityViolation
            | GdetError::NotRankOne { .. }
            | GdetError::ProductNotOne { .. }
            | GdetError::DegenerateParams),
        ) => {
            let member = match violation {
                GdetError::DegenerateParams => Value::Null,
                _ => Value::Bool(false),
            };
            if json_out {
                emit(&json!({
                    "member": member,
                    "evidence": "symbolic",
                    "witness": Value::Null,
                    "canonical": gjson::violation_to_json(&violation),
                }));
            } else {
                println!("violation: {violation}");
            }
            Ok(ExitCode::from(1))
        }
        Err(other) => Err(other.into()),
    }
}

fn cmd_stab_sample(
    n: usize,
    p: Option<u64>,
    field: Option<&str>,
    seed: u64,
    out_transform: &Path,
    out_spec: &Path,
    json_out: bool,
) -> CmdResult {
    if n < 2 {
        return Err(CliError::Usage("sampling needs --n of at least 2".into()));
    }
    let field = parse_field_flags(field, p)?;
    let (op, element) = sample_member(n, field, seed);
    let op_json = gjson::operator_to_json(&op);
    let spec_json = gjson::monomial_spec_to_json(element.spec());
    let write = |path: &Path, v: &Value| -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(v).expect("serializable");
        text.push('\n');
        fs::write(path, text)
            .map_err(|e| CliError::Compute(format!("cannot write {}: {e}", path.display())))
    };
    write(out_transform, &op_json)?;
    write(out_spec, &spec_json)?;
    if json_out {
        emit(&json!({
            "operator_path": out_transform.display().to_string(),
            "spec_path": out_spec.display().to_string(),
            "spec": spec_json,
        }));
    } else {
        println!(
            "wrote operator to {} and spec to {}",
            out_transform.display(),
            out_spec.display()
        );
    }
    Ok(ExitCode::SUCCESS)
}

// ---- lab subcommands ------------------------------------------------------

fn report_exit(report: &LabReport, json_out: bool) -> CmdResult {
    if json_out {
        emit(&gjson::lab_report_to_json(report));
    } else {
        println!("lemma: {}", report.lemma);
        println!("space: {}", report.space);
        println!("checked: {}", report.checked);
        println!("hypothesis hits: {}", report.hypothesis_hits);
        if report.violations.is_empty() {
            println!("violations: none");
        } else {
            println!("violations:");
            for v in &report.violations {
                println!("  - {v}");
            }
        }
        println!("status: {} ({} ms)", report.status(), report.ms);
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_lab_rank1(p: u64, n: usize, samples: Option<u64>, seed: u64, json_out: bool) -> CmdResult {
    let search = match samples {
        Some(draws) => RankOneSearch::Sampled { draws, seed },
        None => RankOneSearch::Exhaustive,
    };
    let report = verify_rank1_lemma(p, n, search)?;
    report_exit(&report, json_out)
}

fn parse_mode(mode: &str) -> Result<EquationMode, CliError> {
    match mode {
        "even" => Ok(EquationMode::Even),
        "odd" => Ok(EquationMode::Odd),
        "full" => Ok(EquationMode::Full),
        other => Err(CliError::Usage(format!(
            "unknown mode {other:?}; use \"even\", \"odd\" or \"full\""
        ))),
    }
}

fn cmd_lab_n4_signs(mode: &str, json_out: bool) -> CmdResult {
    let enumeration = enumerate_n4_sign_solutions(parse_mode(mode)?)?;
    report_exit(&enumeration.to_report(), json_out)
}

fn parse_epsilon(text: &str, what: &str) -> Result<Epsilon, CliError> {
    let v: i64 = text
        .parse()
        .map_err(|_| CliError::Usage(format!("{what} must be +1 or -1, got {text:?}")))?;
    Epsilon::from_i64(v).map_err(|e| CliError::Usage(e.to_string()))
}

fn cmd_lab_n4_exotic(eps_u: &str, eps_v: &str, mode: &str, json_out: bool) -> CmdResult {
    let mode = parse_mode(mode)?;
    if mode == EquationMode::Full {
        return Err(CliError::Usage(
            "the exotic demonstration runs in even or odd mode".into(),
        ));
    }
    let fam = N4SignFamily::with_unit_scales(
        parse_epsilon(eps_u, "--eps-u")?,
        parse_epsilon(eps_v, "--eps-v")?,
        mode,
        FieldTag::Rationals,
    )?;
    let report = gdet_core::n4_exotic_stabilizer_demo(&fam)?;
    report_exit(&report, json_out)
}

fn cmd_lab_derivative(
    n: usize,
    alpha: &str,
    beta: &str,
    p: Option<u64>,
    field: Option<&str>,
    json_out: bool,
) -> CmdResult {
    let field = parse_field_flags(field, p)?;
    let params = parse_params(alpha, beta, field)?;
    let report = verify_derivative_identity(n, &params)?;
    report_exit(&report, json_out)
}
