//! Command-line front end for the discrete Riesz-transform toolkit.
//!
//! Every command is a reproducible experiment: a global `--seed` pins all
//! randomness, numeric output carries 17 significant digits, and when
//! `--out` is given the payload is accompanied by a `*.manifest.json`
//! recording the command, parameters, seed, tool version, and outputs.
//!
//! Exit codes: 0 all checks passed; 1 a numerical check ran but missed
//! its tolerance; 2 usage or domain error; 3 infeasible or degenerate
//! quadrature; 4 a proven mathematical bound was violated.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use riesz_core::embedding::{
    batch_bilinear, batch_choi, batch_representation, choi_beta2, choi_c01_approx, choi_log_term,
    ExponentPair,
};
use riesz_core::extremal::{
    ascend, ascend_multiplier, refinement_study, ScalarMode, SearchConfig, SearchResult,
};
use riesz_core::io;
use riesz_core::operators::{apply_second_riesz, second_riesz_symbol, CoefficientVector};
use riesz_core::quadrature::{
    QuadratureLayout, DEFAULT_NODES_PER_PANEL, DEFAULT_PANELS, DEFAULT_TAIL_TOLERANCE,
};
use riesz_core::tolerances;
use riesz_core::{Error as CoreError, GroupSpec, LatticeFunction};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

#[derive(Parser)]
#[command(
    name = "riesz",
    version,
    about = "Second-order discrete Riesz transforms on products of cyclic groups: \
             apply operators, verify identities and embeddings, search for extremal functions."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the coefficient combination of second-order Riesz transforms
    /// to a function read from a file.
    Apply(ApplyArgs),
    /// Check the heat-flow quadrature route against the exact spectral
    /// pairing on seeded random trials; emits per-trial errors as CSV.
    VerifyRepresentation(VerifyRepresentationArgs),
    /// Check bilinear embedding inequalities on seeded random trials;
    /// emits per-trial ratios as CSV.
    VerifyEmbedding(VerifyEmbeddingArgs),
    /// Search for the extremal ratio of a coefficient combination on one
    /// group; emits the result as JSON.
    NormSearch(NormSearchArgs),
    /// Run the extremal search across a list of cyclic orders and emit
    /// the refinement table.
    Refine(RefineArgs),
    /// Print the constants attached to an exponent: the dual exponent,
    /// p* - 1, and the three-term expansion of the Choi constant.
    Constants(ConstantsArgs),
}

#[derive(Args)]
struct ApplyArgs {
    /// Cyclic orders, comma-separated (e.g. 8,8).
    #[arg(long)]
    group: String,
    /// Complex coefficients, comma-separated `re` or `re:im` entries
    /// (e.g. 1,-1 or 0:1,-1). One per axis, each |alpha_i| <= 1.
    #[arg(long)]
    alpha: String,
    /// Input function file (JSON or binary; detected by content).
    #[arg(long)]
    input: PathBuf,
    /// Output path. Required for binary output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format for the transformed function.
    #[arg(long, value_enum, default_value_t = FunctionFormat::Json)]
    format: FunctionFormat,
}

#[derive(Args)]
struct VerifyRepresentationArgs {
    /// Cyclic orders, comma-separated.
    #[arg(long)]
    group: String,
    /// Number of seeded random pairs to test.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Base seed; every derived trial seed is a pure function of it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    quadrature: QuadratureArgs,
    /// Write the CSV here (in addition to stdout), with a manifest.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyEmbeddingArgs {
    /// Cyclic orders, comma-separated.
    #[arg(long)]
    group: String,
    /// Integrability exponent p (> 1); the dual q is implied.
    #[arg(long)]
    p: f64,
    /// Number of seeded random pairs to test.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Which inequality: `abs` for the modulus form on complex pairs,
    /// `choi+`/`choi-` for one signed part on real pairs.
    #[arg(long, default_value = "abs", value_parser = parse_embed_mode)]
    mode: EmbedMode,
    /// Base seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    quadrature: QuadratureArgs,
    /// Write the CSV here (in addition to stdout), with a manifest.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct NormSearchArgs {
    /// Cyclic orders, comma-separated.
    #[arg(long)]
    group: String,
    /// Complex coefficients, comma-separated `re` or `re:im` entries.
    #[arg(long)]
    alpha: String,
    /// Integrability exponent p (> 1).
    #[arg(long)]
    p: f64,
    /// Scalar field for the search: the full complex sphere or its real
    /// section (real coefficients only).
    #[arg(long, value_enum, default_value_t = SearchScalars::Complex)]
    mode: SearchScalars,
    #[command(flatten)]
    search: SearchArgs,
    /// Fault-injection hook: scale the operator symbol by this factor
    /// before searching. Any factor > 1 breaks the proven bound and must
    /// make the run fail with exit code 4.
    #[arg(long, hide = true)]
    corrupt_scale: Option<f64>,
    /// Write the JSON result here (in addition to stdout), with a
    /// manifest.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RefineArgs {
    /// Cyclic orders to sweep, comma-separated (e.g. 4,8,16,32); each
    /// builds the group (Z/mZ)^N with N the number of coefficients.
    #[arg(long)]
    ms: String,
    /// Complex coefficients, comma-separated `re` or `re:im` entries.
    #[arg(long)]
    alpha: String,
    /// Integrability exponent p (> 1).
    #[arg(long)]
    p: f64,
    /// Scalar field for the search.
    #[arg(long, value_enum, default_value_t = SearchScalars::Complex)]
    mode: SearchScalars,
    #[command(flatten)]
    search: SearchArgs,
    /// Table format.
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    /// Write the table here (in addition to stdout), with a manifest.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConstantsArgs {
    /// Integrability exponent p (> 1).
    #[arg(long)]
    p: f64,
    /// Write the JSON here (in addition to stdout), with a manifest.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct QuadratureArgs {
    /// Number of geometric panels in the time quadrature.
    #[arg(long, default_value_t = DEFAULT_PANELS)]
    panels: usize,
    /// Gauss-Legendre nodes per panel.
    #[arg(long, default_value_t = DEFAULT_NODES_PER_PANEL)]
    nodes: usize,
    /// Largest discarded quadrature tail the run will accept; the time
    /// window is sized from the data to meet it.
    #[arg(long = "tmax-tol", default_value_t = DEFAULT_TAIL_TOLERANCE)]
    tmax_tol: f64,
}

impl QuadratureArgs {
    fn layout(&self) -> QuadratureLayout {
        QuadratureLayout {
            panels: self.panels,
            nodes_per_panel: self.nodes,
            tail_tolerance: self.tmax_tol,
            t_max_override: None,
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    /// Number of ascent restarts (restart 0 is a deterministic
    /// low-frequency profile; the rest are seeded random starts).
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    /// Iteration cap per restart.
    #[arg(long, default_value_t = 500)]
    iters: usize,
    /// Base seed for the random restarts.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            restarts: self.restarts,
            max_iters: self.iters,
            seed: self.seed,
            ..SearchConfig::default()
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FunctionFormat {
    Json,
    Bin,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SearchScalars {
    Complex,
    Real,
}

impl SearchScalars {
    fn mode(self) -> ScalarMode {
        match self {
            SearchScalars::Complex => ScalarMode::Complex,
            SearchScalars::Real => ScalarMode::Real,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq)]
enum EmbedMode {
    Abs,
    ChoiPlus,
    ChoiMinus,
}

fn parse_embed_mode(s: &str) -> Result<EmbedMode, String> {
    match s {
        "abs" => Ok(EmbedMode::Abs),
        "choi+" => Ok(EmbedMode::ChoiPlus),
        "choi-" => Ok(EmbedMode::ChoiMinus),
        other => Err(format!(
            "unknown mode {other:?}; expected abs, choi+ or choi-"
        )),
    }
}

impl EmbedMode {
    fn label(self) -> &'static str {
        match self {
            EmbedMode::Abs => "abs",
            EmbedMode::ChoiPlus => "choi+",
            EmbedMode::ChoiMinus => "choi-",
        }
    }
}

/// A run that must stop: a message for stderr and the exit code that
/// classifies it.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match &e {
            CoreError::QuadratureInfeasible { .. } | CoreError::QuadratureDegenerate { .. } => 3,
            CoreError::BoundViolation { .. } => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Apply(args) => cmd_apply(args),
        Command::VerifyRepresentation(args) => cmd_verify_representation(args),
        Command::VerifyEmbedding(args) => cmd_verify_embedding(args),
        Command::NormSearch(args) => cmd_norm_search(args),
        Command::Refine(args) => cmd_refine(args),
        Command::Constants(args) => cmd_constants(args),
    }
}

// ---------------------------------------------------------------------
// Argument parsing helpers
// ---------------------------------------------------------------------

fn parse_group(s: &str) -> Result<GroupSpec, Failure> {
    let orders = s
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| Failure::usage(format!("bad cyclic order {tok:?} in --group {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupSpec::new(&orders)?)
}

fn parse_ms(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| Failure::usage(format!("bad cyclic order {tok:?} in --ms {s:?}")))
        })
        .collect()
}

fn parse_alpha(s: &str) -> Result<CoefficientVector, Failure> {
    let entries = s
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            let mut parts = tok.split(':');
            let re = parts
                .next()
                .unwrap_or("")
                .trim()
                .parse::<f64>()
                .map_err(|_| Failure::usage(format!("bad coefficient {tok:?} in --alpha {s:?}")))?;
            let im = match parts.next() {
                Some(im_tok) => im_tok.trim().parse::<f64>().map_err(|_| {
                    Failure::usage(format!("bad coefficient {tok:?} in --alpha {s:?}"))
                })?,
                None => 0.0,
            };
            if parts.next().is_some() {
                return Err(Failure::usage(format!(
                    "coefficient {tok:?} has more than one ':'"
                )));
            }
            Ok(Complex64::new(re, im))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(CoefficientVector::new(entries)?)
}

// ---------------------------------------------------------------------
// Output plumbing
// ---------------------------------------------------------------------

/// 17 significant digits, locale-independent.
fn full(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Serialize)]
struct RunManifest {
    command: String,
    parameters: serde_json::Value,
    seed: Option<u64>,
    tool_version: String,
    /// Wall-clock stamp; excluded from reproducibility comparisons.
    timestamp_epoch_secs: u64,
    outputs: Vec<String>,
}

fn manifest(
    command: &str,
    parameters: serde_json::Value,
    seed: Option<u64>,
    outputs: &[&PathBuf],
) -> RunManifest {
    RunManifest {
        command: command.to_string(),
        parameters,
        seed,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp_epoch_secs: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
    }
}

/// Prints `payload` to stdout (unless binary) and mirrors it to `out`
/// with a manifest when a path was given.
fn emit(
    payload: &[u8],
    binary: bool,
    out: &Option<PathBuf>,
    command: &str,
    parameters: serde_json::Value,
    seed: Option<u64>,
) -> Result<(), Failure> {
    if binary && out.is_none() {
        return Err(Failure::usage(
            "binary output goes to a file; pass --out PATH",
        ));
    }
    if !binary {
        let text = std::str::from_utf8(payload).expect("text payloads are UTF-8");
        print!("{text}");
        if !text.ends_with('\n') {
            println!();
        }
    }
    if let Some(path) = out {
        fs::write(path, payload)?;
        let doc = manifest(command, parameters, seed, &[path]);
        let manifest_path = PathBuf::from(format!("{}.manifest.json", path.display()));
        fs::write(&manifest_path, serde_json::to_string_pretty(&doc)?)?;
    }
    Ok(())
}

fn verdict(label: &str, worst: f64, tolerance: f64) -> ExitCode {
    if worst <= tolerance {
        eprintln!(
            "{label}: PASS (worst {} <= tolerance {})",
            full(worst),
            full(tolerance)
        );
        ExitCode::SUCCESS
    } else {
        eprintln!(
            "{label}: FAIL (worst {} > tolerance {})",
            full(worst),
            full(tolerance)
        );
        ExitCode::from(1)
    }
}

// ---------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------

fn read_function(path: &PathBuf) -> Result<LatticeFunction, Failure> {
    let bytes = fs::read(path)?;
    if bytes.starts_with(b"RLZ1") {
        Ok(io::read_binary(bytes.as_slice())?)
    } else {
        Ok(io::read_json(bytes.as_slice())?)
    }
}

fn cmd_apply(args: ApplyArgs) -> Result<ExitCode, Failure> {
    let group = parse_group(&args.group)?;
    let alpha = parse_alpha(&args.alpha)?;
    let f = read_function(&args.input)?;
    if f.group() != &group {
        return Err(Failure::usage(format!(
            "input function lives on {:?} but --group names {:?}",
            f.group().orders(),
            group.orders()
        )));
    }
    let result = apply_second_riesz(&f, &alpha)?;
    let mut payload = Vec::new();
    let binary = match args.format {
        FunctionFormat::Json => {
            io::write_json(&result, &mut payload)?;
            false
        }
        FunctionFormat::Bin => {
            io::write_binary(&result, &mut payload)?;
            true
        }
    };
    let parameters = serde_json::json!({
        "group": group.orders(),
        "alpha": args.alpha,
        "input": args.input.display().to_string(),
        "format": if binary { "bin" } else { "json" },
    });
    emit(&payload, binary, &args.out, "apply", parameters, None)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify_representation(args: VerifyRepresentationArgs) -> Result<ExitCode, Failure> {
    let group = parse_group(&args.group)?;
    let layout = args.quadrature.layout();
    let rows = batch_representation(&group, args.trials, args.seed, &layout)?;
    let mut csv = String::from("trial,axis,spectral_re,spectral_im,quad_re,quad_im,abs_err\n");
    let mut worst = 0.0f64;
    for row in &rows {
        let r = &row.report;
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.trial,
            row.axis,
            full(r.spectral.re),
            full(r.spectral.im),
            full(r.quadrature.re),
            full(r.quadrature.im),
            full(r.abs_error),
        ));
        worst = worst.max(r.abs_error);
    }
    let parameters = serde_json::json!({
        "group": group.orders(),
        "trials": args.trials,
        "panels": args.quadrature.panels,
        "nodes": args.quadrature.nodes,
        "tmax_tol": args.quadrature.tmax_tol,
    });
    emit(
        csv.as_bytes(),
        false,
        &args.out,
        "verify-representation",
        parameters,
        Some(args.seed),
    )?;
    Ok(verdict("representation", worst, tolerances::REPRESENTATION))
}

fn cmd_verify_embedding(args: VerifyEmbeddingArgs) -> Result<ExitCode, Failure> {
    let group = parse_group(&args.group)?;
    let pair = ExponentPair::new(args.p)?;
    let layout = args.quadrature.layout();
    let mut worst = 0.0f64;
    let csv = match args.mode {
        EmbedMode::Abs => {
            let rows = batch_bilinear(&group, args.trials, args.seed, &pair, &layout)?;
            let mut csv = String::from("trial,lhs,rhs_constant,rhs_norms,ratio,quadrature_tail\n");
            for (trial, r) in rows.iter().enumerate() {
                csv.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    trial,
                    full(r.lhs),
                    full(r.rhs_constant),
                    full(r.rhs_norms),
                    full(r.ratio),
                    full(r.quadrature_tail),
                ));
                worst = worst.max(r.ratio);
            }
            csv
        }
        EmbedMode::ChoiPlus | EmbedMode::ChoiMinus => {
            let rows = batch_choi(&group, args.trials, args.seed, &pair, &layout)?;
            let mut csv = String::from(
                "trial,lhs,rhs_constant,rhs_norms,ratio,choi_constant,ratio_vs_choi,quadrature_tail\n",
            );
            for (trial, (plus, minus)) in rows.iter().enumerate() {
                let r = match args.mode {
                    EmbedMode::ChoiPlus => plus,
                    _ => minus,
                };
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    trial,
                    full(r.rigorous.lhs),
                    full(r.rigorous.rhs_constant),
                    full(r.rigorous.rhs_norms),
                    full(r.rigorous.ratio),
                    full(r.choi_constant),
                    full(r.ratio_vs_choi),
                    full(r.rigorous.quadrature_tail),
                ));
                worst = worst.max(r.rigorous.ratio);
            }
            csv
        }
    };
    let parameters = serde_json::json!({
        "group": group.orders(),
        "p": args.p,
        "trials": args.trials,
        "mode": args.mode.label(),
        "panels": args.quadrature.panels,
        "nodes": args.quadrature.nodes,
        "tmax_tol": args.quadrature.tmax_tol,
    });
    emit(
        csv.as_bytes(),
        false,
        &args.out,
        "verify-embedding",
        parameters,
        Some(args.seed),
    )?;
    Ok(verdict(
        "embedding",
        worst,
        1.0 + tolerances::EMBEDDING_SLACK,
    ))
}

#[derive(Serialize)]
struct SearchJson {
    group: Vec<usize>,
    alpha: Vec<[f64; 2]>,
    p: f64,
    mode: String,
    best_ratio: f64,
    bound: f64,
    margin: f64,
    iterations_used: usize,
    function: FunctionJson,
}

#[derive(Serialize)]
struct FunctionJson {
    orders: Vec<usize>,
    re: Vec<f64>,
    im: Vec<f64>,
}

fn function_json(f: &LatticeFunction) -> FunctionJson {
    FunctionJson {
        orders: f.group().orders().to_vec(),
        re: f.values().iter().map(|v| v.re).collect(),
        im: f.values().iter().map(|v| v.im).collect(),
    }
}

fn cmd_norm_search(args: NormSearchArgs) -> Result<ExitCode, Failure> {
    let group = parse_group(&args.group)?;
    let alpha = parse_alpha(&args.alpha)?;
    let pair = ExponentPair::new(args.p)?;
    let mode = args.mode.mode();
    let cfg = args.search.config();
    let result: SearchResult = match args.corrupt_scale {
        None => ascend(&group, &alpha, &pair, mode, &cfg)?,
        Some(scale) => {
            let corrupted = second_riesz_symbol(&group, &alpha)?.scaled(scale);
            ascend_multiplier(
                &group,
                &corrupted,
                &pair,
                pair.p_star_minus_one(),
                mode,
                &cfg,
            )?
        }
    };
    let doc = SearchJson {
        group: group.orders().to_vec(),
        alpha: alpha.entries().iter().map(|a| [a.re, a.im]).collect(),
        p: args.p,
        mode: match args.mode {
            SearchScalars::Complex => "complex".into(),
            SearchScalars::Real => "real".into(),
        },
        best_ratio: result.best_ratio,
        bound: result.bound,
        margin: result.margin,
        iterations_used: result.iterations_used,
        function: function_json(&result.best_function),
    };
    let payload = serde_json::to_string_pretty(&doc)?;
    let parameters = serde_json::json!({
        "group": group.orders(),
        "alpha": args.alpha,
        "p": args.p,
        "mode": doc.mode,
        "restarts": args.search.restarts,
        "iters": args.search.iters,
    });
    emit(
        payload.as_bytes(),
        false,
        &args.out,
        "norm-search",
        parameters,
        Some(args.search.seed),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_refine(args: RefineArgs) -> Result<ExitCode, Failure> {
    let ms = parse_ms(&args.ms)?;
    let alpha = parse_alpha(&args.alpha)?;
    let pair = ExponentPair::new(args.p)?;
    let rows = refinement_study(&ms, &alpha, &pair, args.mode.mode(), &args.search.config())?;
    let payload = match args.format {
        TableFormat::Csv => {
            let mut csv = String::from("m,best_ratio,margin,iterations\n");
            for row in &rows {
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    row.m,
                    full(row.best_ratio),
                    full(row.margin),
                    row.iterations,
                ));
            }
            csv
        }
        TableFormat::Json => {
            #[derive(Serialize)]
            struct Row {
                m: usize,
                best_ratio: f64,
                margin: f64,
                iterations: usize,
            }
            let rows: Vec<Row> = rows
                .iter()
                .map(|r| Row {
                    m: r.m,
                    best_ratio: r.best_ratio,
                    margin: r.margin,
                    iterations: r.iterations,
                })
                .collect();
            serde_json::to_string_pretty(&rows)?
        }
    };
    let parameters = serde_json::json!({
        "ms": ms,
        "alpha": args.alpha,
        "p": args.p,
        "mode": match args.mode { SearchScalars::Complex => "complex", SearchScalars::Real => "real" },
        "restarts": args.search.restarts,
        "iters": args.search.iters,
        "format": match args.format { TableFormat::Csv => "csv", TableFormat::Json => "json" },
    });
    emit(
        payload.as_bytes(),
        false,
        &args.out,
        "refine",
        parameters,
        Some(args.search.seed),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_constants(args: ConstantsArgs) -> Result<ExitCode, Failure> {
    let pair = ExponentPair::new(args.p)?;
    #[derive(Serialize)]
    struct ConstantsJson {
        p: f64,
        q: f64,
        p_star: f64,
        p_star_minus_one: f64,
        log_term: f64,
        beta2: f64,
        choi_three_term: f64,
    }
    let doc = ConstantsJson {
        p: pair.p(),
        q: pair.q(),
        p_star: pair.p_star(),
        p_star_minus_one: pair.p_star_minus_one(),
        log_term: choi_log_term(),
        beta2: choi_beta2(),
        choi_three_term: choi_c01_approx(pair.p()),
    };
    let payload = serde_json::to_string_pretty(&doc)?;
    let parameters = serde_json::json!({ "p": args.p });
    emit(
        payload.as_bytes(),
        false,
        &args.out,
        "constants",
        parameters,
        None,
    )?;
    Ok(ExitCode::SUCCESS)
}
