//! `skewpbw` — inspect finite coefficient rings, validate skew PBW
//! extension data, normalize and classify elements, run classifier/oracle
//! verification campaigns, and report spectral (Gelfand / harmonic)
//! verdicts.
//!
//! Exit codes: 0 true/pass, 1 false/counterexample, 2 hypotheses
//! unsatisfied, 3 invalid input, 4 resource bound exceeded.

mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use skewpbw_core::classifiers::{self, ClassifierError, TheoremId, Verdict};
use skewpbw_core::finite_rings::{build_ring_bounded, RingError, RingSpec, DEFAULT_MAX_ORDER};
use skewpbw_core::oracles::{self, OracleError, OracleVerdict, SearchBounds};
use skewpbw_core::pbw::{parse_expr, Extension, ExtensionSpecJson, ParseError, PbwError};
use skewpbw_core::sigma_delta::SystemError;
use skewpbw_core::spectra::SpectraError;

const EXIT_TRUE: u8 = 0;
const EXIT_FALSE: u8 = 1;
const EXIT_HYPOTHESES: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_RESOURCE: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "skewpbw",
    about = "Exact analysis of skew PBW extensions over finite coefficient rings",
    version
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite-ring level reports.
    Ring {
        #[command(subcommand)]
        command: RingCommand,
    },
    /// Extension-level validation.
    Ext {
        #[command(subcommand)]
        command: ExtCommand,
    },
    /// Element-level operations.
    Elem {
        #[command(subcommand)]
        command: ElemCommand,
    },
    /// Classifier-versus-oracle verification campaign for one criterion.
    Verify(VerifyArgs),
    /// Maximal-ideal and separation reports, with the derived extension
    /// verdicts.
    Spectra {
        /// Extension description (JSON file).
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Subcommand)]
enum RingCommand {
    /// Nilpotents, units, idempotents, radicals and class flags.
    Inspect {
        /// Ring description (JSON file).
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Subcommand)]
enum ExtCommand {
    /// Validate the extension data and print diagnostics plus the
    /// hypothesis profile.
    Validate {
        /// Extension description (JSON file).
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Subcommand)]
enum ElemCommand {
    /// Normal form of an element expression.
    Nf {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        expr: String,
    },
    /// Theorem-backed classification with an independent oracle check.
    Classify(ClassifyArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    expr: String,
    /// One of: unit, nilpotent, idempotent, vnr, pi-regular, vnl, clean.
    #[arg(long)]
    property: Property,
    /// Degree bound for oracle witness searches.
    #[arg(long)]
    max_degree: Option<u32>,
    /// Power bound for nilpotency and pi-regularity searches.
    #[arg(long)]
    max_power: Option<usize>,
    /// Seed enabling sampled sweeps past the candidate cap.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Unit,
    Nilpotent,
    Idempotent,
    Vnr,
    #[value(name = "pi-regular")]
    PiRegular,
    Vnl,
    Clean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremArg {
    Units,
    Nilpotents,
    #[value(name = "product-nilpotents")]
    ProductNilpotents,
    Idempotents,
    Vnr,
    #[value(name = "pi-regular")]
    PiRegular,
    Vnl,
    Clean,
    Nj,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    theorem: TheoremArg,
    /// Degree of the enumerated elements (sweep degree).
    #[arg(long, default_value_t = 1)]
    max_degree: u32,
    /// Degree bound for oracle witness searches.
    #[arg(long, default_value_t = 3)]
    search_degree: u32,
    /// Power bound for nilpotency and pi-regularity searches.
    #[arg(long)]
    max_power: Option<usize>,
    /// Cap on exhaustively enumerated candidates.
    #[arg(long, default_value_t = 65_536)]
    max_candidates: usize,
    /// Seed enabling sampled sweeps past the candidate cap; absent means
    /// exhaustive-only mode.
    #[arg(long)]
    seed: Option<u64>,
    /// Invert every classifier verdict before comparison, to demonstrate
    /// counterexample reporting end to end.
    #[arg(long, default_value_t = false)]
    inject_fault: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    };
    ExitCode::from(code)
}

/// An error annotated with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }
}

fn ring_error_code(e: &RingError) -> u8 {
    match e {
        RingError::OrderBoundExceeded { .. } | RingError::ResourceBoundExceeded { .. } => {
            EXIT_RESOURCE
        }
        _ => EXIT_INVALID,
    }
}

fn system_error_code(e: &SystemError) -> u8 {
    match e {
        SystemError::ClosureBoundExceeded { .. } => EXIT_RESOURCE,
        SystemError::Ring(e) => ring_error_code(e),
        _ => EXIT_INVALID,
    }
}

fn pbw_error_code(e: &PbwError) -> u8 {
    match e {
        PbwError::ResourceBoundExceeded { .. } => EXIT_RESOURCE,
        PbwError::System(e) => system_error_code(e),
        PbwError::Ring(e) => ring_error_code(e),
        _ => EXIT_INVALID,
    }
}

fn classifier_error_code(e: &ClassifierError) -> u8 {
    match e {
        ClassifierError::PreconditionUnmet { .. } => EXIT_INVALID,
        ClassifierError::TheoremFalsified { .. } => EXIT_FALSE,
        ClassifierError::Engine(e) => pbw_error_code(e),
    }
}

fn oracle_error_code(e: &OracleError) -> u8 {
    match e {
        OracleError::ResourceBoundExceeded { .. } | OracleError::SeedRequired => EXIT_RESOURCE,
        OracleError::HypothesesUnsatisfied { .. } => EXIT_HYPOTHESES,
        OracleError::Engine(e) => pbw_error_code(e),
        OracleError::Classifier(e) => classifier_error_code(e),
    }
}

fn spectra_error_code(e: &SpectraError) -> u8 {
    match e {
        SpectraError::HypothesesUnsatisfied { .. } => EXIT_HYPOTHESES,
        SpectraError::Ring(e) => ring_error_code(e),
    }
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Failure {
        Failure::new(ring_error_code(&e), e.to_string())
    }
}

impl From<PbwError> for Failure {
    fn from(e: PbwError) -> Failure {
        Failure::new(pbw_error_code(&e), e.to_string())
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Failure {
        Failure::new(EXIT_INVALID, e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Failure {
        Failure::new(oracle_error_code(&e), e.to_string())
    }
}

impl From<ClassifierError> for Failure {
    fn from(e: ClassifierError) -> Failure {
        Failure::new(classifier_error_code(&e), e.to_string())
    }
}

impl From<SpectraError> for Failure {
    fn from(e: SpectraError) -> Failure {
        Failure::new(spectra_error_code(&e), e.to_string())
    }
}

fn max_order_bound() -> Result<usize, Failure> {
    match std::env::var("SKEWPBW_MAX_ORDER") {
        Ok(v) => v.parse().map_err(|_| {
            Failure::new(EXIT_INVALID, "SKEWPBW_MAX_ORDER must be a positive integer")
        }),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| {
        Failure::new(EXIT_INVALID, format!("cannot read {}: {e}", path.display()))
    })?;
    serde_json::from_str(&text).map_err(|e| {
        Failure::new(
            EXIT_INVALID,
            format!(
                "{}: line {}, column {}: {e}",
                path.display(),
                e.line(),
                e.column()
            ),
        )
    })
}

fn load_extension(path: &PathBuf) -> Result<Extension, Failure> {
    let spec: ExtensionSpecJson = read_json(path)?;
    let bound = max_order_bound()?;
    spec.build_bounded(bound).map_err(Failure::from)
}

fn emit(format: Format, text: String, json: serde_json::Value) {
    match format {
        Format::Text => println!("{text}"),
        // serde_json maps are btree-backed, so object keys print sorted.
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&json).expect("report serializes")
        ),
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Ring {
            command: RingCommand::Inspect { spec },
        } => {
            let ring_spec: RingSpec = read_json(spec)?;
            let ring = build_ring_bounded(&ring_spec, max_order_bound()?)?;
            let (text, json) = render::ring_report(&ring)?;
            emit(cli.format, text, json);
            Ok(EXIT_TRUE)
        }
        Command::Ext {
            command: ExtCommand::Validate { spec },
        } => {
            let ext = load_extension(spec)?;
            let (text, json) = render::ext_report(&ext);
            emit(cli.format, text, json);
            Ok(EXIT_TRUE)
        }
        Command::Elem { command } => match command {
            ElemCommand::Nf { spec, expr } => {
                let ext = load_extension(spec)?;
                let poly = parse_expr(&ext, expr)?;
                emit(
                    cli.format,
                    poly.to_expr_string(),
                    serde_json::json!({
                        "expr": poly.to_expr_string(),
                        "element": poly.to_json_value(),
                    }),
                );
                Ok(EXIT_TRUE)
            }
            ElemCommand::Classify(args) => classify(cli.format, args),
        },
        Command::Verify(args) => verify(cli.format, args),
        Command::Spectra { spec } => {
            let ext = load_extension(spec)?;
            let (text, json, code) = render::spectra_report(&ext)?;
            emit(cli.format, text, json);
            Ok(code)
        }
    }
}

fn classify(format: Format, args: &ClassifyArgs) -> Result<u8, Failure> {
    let ext = load_extension(&args.spec)?;
    let f = parse_expr(&ext, &args.expr)?;
    let mut bounds = SearchBounds::default();
    if let Some(d) = args.max_degree {
        bounds.search_degree = d;
    }
    bounds.max_power = args.max_power;
    bounds.seed = args.seed;

    let verdict: Verdict = match args.property {
        Property::Unit => classifiers::classify_unit(&f),
        Property::Nilpotent => classifiers::classify_nilpotent(&f),
        Property::Idempotent => classifiers::classify_idempotent_shape(&f),
        Property::Vnr => classifiers::classify_vnr(&f),
        Property::PiRegular => classifiers::classify_pi_regular(&f),
        Property::Vnl => classifiers::classify_vnl(&f),
        Property::Clean => classifiers::classify_clean(&f),
    };
    let oracle: Option<OracleVerdict> = if verdict.gated() {
        None
    } else {
        Some(match args.property {
            Property::Unit => oracles::oracle_unit(&f, &bounds)?,
            Property::Nilpotent => oracles::oracle_nilpotent(&f, &bounds)?,
            Property::Idempotent => oracles::oracle_idempotent(&f)?,
            Property::Vnr => oracles::oracle_vnr(&f, &bounds)?,
            Property::PiRegular => oracles::oracle_pi_regular(&f, &bounds)?,
            Property::Vnl => oracles::oracle_vnl(&f, &bounds)?,
            Property::Clean => oracles::oracle_clean(&f, &bounds)?,
        })
    };

    let json = oracles::verdict_with_oracle(&verdict, oracle.as_ref());
    let mut text = format!(
        "{} is {}: {:?}",
        f.to_expr_string(),
        verdict.theorem,
        verdict.value
    );
    if let Some(o) = &oracle {
        text.push_str(&format!("\noracle: {}", o.describe()));
        if o.holds() != verdict.is_true() {
            if o.holds() {
                text.push_str("\nWITNESSED DISAGREEMENT: oracle holds where the criterion says no");
            } else {
                text.push_str("\nnote: bounded oracle found no witness (not a falsification)");
            }
        }
    }
    emit(format, text, json);
    if verdict.gated() {
        Ok(EXIT_HYPOTHESES)
    } else if verdict.is_true() {
        Ok(EXIT_TRUE)
    } else {
        Ok(EXIT_FALSE)
    }
}

fn verify(format: Format, args: &VerifyArgs) -> Result<u8, Failure> {
    let ext = load_extension(&args.spec)?;
    let bounds = SearchBounds {
        sweep_degree: args.max_degree,
        search_degree: args.search_degree,
        max_power: args.max_power,
        max_candidates: args.max_candidates,
        seed: args.seed,
    };
    if args.theorem == TheoremArg::Nj {
        let verdict = classifiers::nj_check(&ext, args.max_degree, args.max_candidates)?;
        let ok = verdict.is_true();
        emit(
            format,
            render::nj_text(&verdict),
            verdict.to_json(),
        );
        return Ok(if verdict.gated() {
            EXIT_HYPOTHESES
        } else if ok {
            EXIT_TRUE
        } else {
            EXIT_FALSE
        });
    }
    let theorem = match args.theorem {
        TheoremArg::Units => TheoremId::Units,
        TheoremArg::Nilpotents => TheoremId::Nilpotents,
        TheoremArg::ProductNilpotents => TheoremId::ProductNilpotents,
        TheoremArg::Idempotents => TheoremId::IdempotentShape,
        TheoremArg::Vnr => TheoremId::Vnr,
        TheoremArg::PiRegular => TheoremId::PiRegular,
        TheoremArg::Vnl => TheoremId::Vnl,
        TheoremArg::Clean => TheoremId::Clean,
        TheoremArg::Nj => unreachable!(),
    };
    let report = oracles::theorem_crosscheck_with(&ext, theorem, &bounds, args.inject_fault)?;
    emit(format, render::crosscheck_text(&report), report.to_json());
    if !report.counterexamples.is_empty() {
        Ok(EXIT_FALSE)
    } else if !report.unresolved.is_empty() {
        Ok(EXIT_RESOURCE)
    } else {
        Ok(EXIT_TRUE)
    }
}
