//! Command-line front end for the puzzle-ideals library.
//!
//! Subcommands cover the full pipeline: structure constants (`constant`),
//! tiling listings (`tilings`), side-free sweeps (`sweep`), Groebner basis
//! dumps (`gb`), post-hoc S-polynomial certification (`certify`), tiling
//! images (`render`), and a self-test against the embedded known-good
//! fixtures (`selftest`).
//!
//! Exit codes: 0 on success, 1 on an internal invariant violation or failed
//! check, 2 on usage errors, 3 when the Groebner backend refuses an
//! instance above its size guard (override with `PUZZLE_MAX_GB_N`).

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use puzzle_ideals::constants::{
    constant, equivariant_constant, groebner_basis_of, side_free_sweep, Backend,
};
use puzzle_ideals::grid::{parse_word, partition_to_binary};
use puzzle_ideals::groebner::certify;
use puzzle_ideals::ideal::{build_ideal, BoundarySpec, IdealKind};
use puzzle_ideals::pieces::{builtin_piece_set, PieceSet, PieceSetId};
use puzzle_ideals::render::{render_ascii, render_svg};
use puzzle_ideals::{refdata, Error};

#[derive(Parser)]
#[command(name = "puzzle", version, about = "Grassmannian puzzle solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the structure constant of one puzzle instance.
    Constant(InstanceArgs),
    /// List all tilings of one puzzle instance.
    Tilings(InstanceArgs),
    /// Sweep all bottom words of a puzzle with free bottom side.
    Sweep(SweepArgs),
    /// Dump the reduced lexicographic Groebner basis of a puzzle ideal.
    Gb(IdealArgs),
    /// Certify a Groebner basis by reducing every S-polynomial to zero.
    Certify(IdealArgs),
    /// Render the tilings of one puzzle instance.
    Render(RenderArgs),
    /// Check the embedded known-good fixtures.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Groebner,
    Oracle,
}

impl From<BackendArg> for Backend {
    fn from(arg: BackendArg) -> Backend {
        match arg {
            BackendArg::Groebner => Backend::Groebner,
            BackendArg::Oracle => Backend::Oracle,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Ascii,
    Svg,
}

#[derive(Args)]
struct BoxArgs {
    /// Ambient dimension when boundaries are given as partitions.
    #[arg(long)]
    n: Option<usize>,
    /// Subspace dimension when boundaries are given as partitions.
    #[arg(long)]
    k: Option<usize>,
    /// Piece set: Omega0, OmegaT, OmegaA, OmegaB, OmegaC, or OmegaD.
    #[arg(long, default_value = "Omega0")]
    pieces: String,
}

#[derive(Args)]
struct InstanceArgs {
    /// Left boundary: binary word or comma-separated partition.
    #[arg(long)]
    lambda: String,
    /// Right boundary: binary word or comma-separated partition.
    #[arg(long)]
    mu: String,
    /// Bottom boundary: binary word or comma-separated partition.
    #[arg(long)]
    nu: String,
    #[command(flatten)]
    r#box: BoxArgs,
    /// Solver backend.
    #[arg(long, value_enum, default_value = "oracle")]
    backend: BackendArg,
}

#[derive(Args)]
struct SweepArgs {
    /// Left boundary: binary word or comma-separated partition.
    #[arg(long)]
    lambda: String,
    /// Right boundary: binary word or comma-separated partition.
    #[arg(long)]
    mu: String,
    #[command(flatten)]
    r#box: BoxArgs,
    /// Solver backend.
    #[arg(long, value_enum, default_value = "oracle")]
    backend: BackendArg,
}

#[derive(Args)]
struct IdealArgs {
    /// Left boundary: binary word or comma-separated partition.
    #[arg(long)]
    lambda: String,
    /// Right boundary: binary word or comma-separated partition.
    #[arg(long)]
    mu: String,
    /// Bottom boundary: binary word or comma-separated partition.
    #[arg(long)]
    nu: String,
    #[command(flatten)]
    r#box: BoxArgs,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Output format.
    #[arg(long, value_enum, default_value = "ascii")]
    format: FormatArg,
    /// Output file prefix for SVG (writes `<prefix>-<i>.svg`); stdout when
    /// omitted.
    #[arg(long)]
    out: Option<String>,
}

/// A usage-level failure (exit 2), distinguished from internal errors.
struct UsageError(String);

fn parse_piece_set(name: &str) -> Result<PieceSet, UsageError> {
    let canonical = name
        .replace('\u{3a9}', "Omega")
        .replace('\u{3c9}', "omega")
        .to_ascii_lowercase();
    let id = match canonical.as_str() {
        "omega0" => PieceSetId::Omega0,
        "omegat" => PieceSetId::OmegaT,
        "omegaa" => PieceSetId::OmegaA,
        "omegab" => PieceSetId::OmegaB,
        "omegac" => PieceSetId::OmegaC,
        "omegad" => PieceSetId::OmegaD,
        _ => {
            return Err(UsageError(format!(
                "unknown piece set `{name}` (expected Omega0, OmegaT, OmegaA, OmegaB, OmegaC, or OmegaD)"
            )))
        }
    };
    Ok(builtin_piece_set(id))
}

/// Parses one boundary as either a binary word or a comma-separated
/// partition (the latter requires `--n` and `--k`).
fn parse_boundary(text: &str, n: Option<usize>, k: Option<usize>) -> Result<Vec<u8>, UsageError> {
    let text = text.trim();
    let looks_binary = !text.is_empty() && text.chars().all(|c| c == '0' || c == '1');
    if looks_binary && n.is_none() {
        return parse_word(text).map_err(|e| UsageError(e.to_string()));
    }
    let (n, k) = match (n, k) {
        (Some(n), Some(k)) => (n, k),
        _ => {
            return Err(UsageError(format!(
                "boundary `{text}` is not a binary word; partitions need --n and --k"
            )))
        }
    };
    let parts: Vec<usize> = if text.is_empty() || text == "-" {
        Vec::new()
    } else {
        text.split(',')
            .map(|p| {
                p.trim()
                    .parse()
                    .map_err(|_| UsageError(format!("bad partition part `{p}`")))
            })
            .collect::<Result<_, _>>()?
    };
    partition_to_binary(&parts, n, k).map_err(|e| UsageError(e.to_string()))
}

/// The weight `|lambda|` of the partition encoded by a binary word.
fn word_weight(word: &[u8]) -> usize {
    let mut zeros_seen = 0;
    let mut weight = 0;
    for &letter in word.iter().rev() {
        if letter == 0 {
            zeros_seen += 1;
        } else {
            weight += zeros_seen;
        }
    }
    weight
}

fn word_text(word: &[u8]) -> String {
    word.iter().map(|&d| char::from(b'0' + d)).collect()
}

fn instance_words(args: &InstanceArgs) -> Result<(Vec<u8>, Vec<u8>, Vec<u8>), UsageError> {
    let n = args.r#box.n;
    let k = args.r#box.k;
    let lambda = parse_boundary(&args.lambda, n, k)?;
    let mu = parse_boundary(&args.mu, n, k)?;
    let nu = parse_boundary(&args.nu, n, k)?;
    Ok((lambda, mu, nu))
}

fn run_constant(args: &InstanceArgs) -> Result<(), AppError> {
    let (lambda, mu, nu) = instance_words(args)?;
    let set = parse_piece_set(&args.r#box.pieces)?;
    let result = constant(&lambda, &mu, &nu, &set, args.backend.into())?;
    println!("count={}", result.count);
    if set.id.is_k_theoretic() {
        println!("signed={}", result.signed);
    }
    if set.id == PieceSetId::OmegaT {
        let weight = equivariant_constant(&lambda, &mu, &nu)?;
        println!("weight={weight}");
    }
    Ok(())
}

fn run_tilings(args: &InstanceArgs) -> Result<(), AppError> {
    let (lambda, mu, nu) = instance_words(args)?;
    let set = parse_piece_set(&args.r#box.pieces)?;
    let result = constant(&lambda, &mu, &nu, &set, args.backend.into())?;
    for (index, tiling) in result.tilings.iter().enumerate() {
        let assignment = word_text(
            &tiling
                .assignment
                .iter()
                .map(|v| v.value())
                .collect::<Vec<u8>>(),
        );
        println!("tiling {}: {assignment}", index + 1);
        print!("{}", render_ascii(tiling, false));
    }
    println!("count={}", result.count);
    Ok(())
}

fn run_sweep(args: &SweepArgs) -> Result<(), AppError> {
    let n = args.r#box.n;
    let k = args.r#box.k;
    let lambda = parse_boundary(&args.lambda, n, k)?;
    let mu = parse_boundary(&args.mu, n, k)?;
    let set = parse_piece_set(&args.r#box.pieces)?;
    let table = side_free_sweep(&lambda, &mu, &set, args.backend.into())?;
    let base = word_weight(&lambda) + word_weight(&mu);
    for (nu, count) in table {
        let signed = if set.id.is_k_theoretic() && (word_weight(&nu) + base) % 2 == 1 {
            -(count as i64)
        } else {
            count as i64
        };
        println!("nu={} count={count} signed={signed}", word_text(&nu));
    }
    Ok(())
}

fn ideal_basis(args: &IdealArgs) -> Result<puzzle_ideals::groebner::GroebnerBasis, AppError> {
    let n = args.r#box.n;
    let k = args.r#box.k;
    let lambda = parse_boundary(&args.lambda, n, k)?;
    let mu = parse_boundary(&args.mu, n, k)?;
    let nu = parse_boundary(&args.nu, n, k)?;
    let set = parse_piece_set(&args.r#box.pieces)?;
    let ideal = build_ideal(
        &BoundarySpec::Word(lambda),
        &BoundarySpec::Word(mu),
        &BoundarySpec::Word(nu),
        &set,
        IdealKind::Full,
    )?;
    Ok(groebner_basis_of(&ideal)?)
}

/// Writes potentially long output, treating a closed pipe as success so
/// `puzzle gb ... | head` exits cleanly.
fn emit_lines<T: std::fmt::Display>(lines: impl IntoIterator<Item = T>) -> Result<(), AppError> {
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    for line in lines {
        match writeln!(out, "{line}") {
            Ok(()) => {}
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => return Ok(()),
            Err(e) => return Err(AppError::Internal(format!("write stdout: {e}"))),
        }
    }
    out.flush().ok();
    Ok(())
}

fn run_gb(args: &IdealArgs) -> Result<(), AppError> {
    let basis = ideal_basis(args)?;
    emit_lines(&basis.elements)
}

fn run_certify(args: &IdealArgs) -> Result<(), AppError> {
    let basis = ideal_basis(args)?;
    if certify(&basis)? {
        println!("certified: all S-polynomials reduce to zero");
        Ok(())
    } else {
        Err(AppError::Internal(
            "certification failed: an S-polynomial does not reduce to zero".into(),
        ))
    }
}

fn run_render(args: &RenderArgs) -> Result<(), AppError> {
    let (lambda, mu, nu) = instance_words(&args.instance)?;
    let set = parse_piece_set(&args.instance.r#box.pieces)?;
    let result = constant(&lambda, &mu, &nu, &set, args.instance.backend.into())?;
    for (index, tiling) in result.tilings.iter().enumerate() {
        match args.format {
            FormatArg::Ascii => {
                println!("tiling {}:", index + 1);
                print!("{}", render_ascii(tiling, false));
            }
            FormatArg::Svg => {
                let svg = render_svg(tiling);
                match &args.out {
                    Some(prefix) => {
                        let path = format!("{prefix}-{}.svg", index + 1);
                        std::fs::write(&path, &svg)
                            .map_err(|e| AppError::Internal(format!("write {path}: {e}")))?;
                        println!("wrote {path}");
                    }
                    None => print!("{svg}"),
                }
            }
        }
    }
    Ok(())
}

fn run_selftest() -> Result<(), AppError> {
    let check = |name: &str, ok: bool| -> Result<(), AppError> {
        if ok {
            println!("PASS {name}");
            Ok(())
        } else {
            println!("FAIL {name}");
            Err(AppError::Internal(format!("selftest failed: {name}")))
        }
    };

    // Size-6 reference instance: both backends reproduce the two known-good
    // variety points.
    let set = builtin_piece_set(PieceSetId::Omega0);
    let lambda = parse_word(refdata::SIZE6_LAMBDA).unwrap();
    let mu = parse_word(refdata::SIZE6_MU).unwrap();
    let nu = parse_word(refdata::SIZE6_NU).unwrap();
    let points = refdata::size6_variety_points();
    for backend in [Backend::Oracle, Backend::Groebner] {
        let result = constant(&lambda, &mu, &nu, &set, backend)?;
        let ok = result.count == 2
            && result.tilings[0].assignment == points[0]
            && result.tilings[1].assignment == points[1];
        check(&format!("size-6 variety points ({backend:?})"), ok)?;
    }

    // Size-16 side-free sweep: the eleven-row known-good table.
    let lambda = parse_word(refdata::SWEEP16_LAMBDA).unwrap();
    let mu = parse_word(refdata::SWEEP16_MU).unwrap();
    let table = side_free_sweep(&lambda, &mu, &set, Backend::Oracle)?;
    let ok = table.len() == refdata::SWEEP16_TABLE.len()
        && table
            .iter()
            .zip(refdata::SWEEP16_TABLE)
            .all(|((word, count), (ref_word, ref_count))| {
                word == &parse_word(ref_word).unwrap() && *count == ref_count
            });
    check("size-16 sweep table", ok)?;

    // Equivariant reference weight.
    let weight = equivariant_constant(
        &parse_word(refdata::FIG5_LAMBDA).unwrap(),
        &parse_word(refdata::FIG5_MU).unwrap(),
        &parse_word(refdata::FIG5_NU).unwrap(),
    )?;
    let ok = weight
        .factors
        .contains(&refdata::FIG5_WEIGHT_FACTORS.to_vec());
    check("equivariant reference weight", ok)?;
    Ok(())
}

enum AppError {
    Usage(String),
    Infeasible(String),
    Internal(String),
}

impl From<UsageError> for AppError {
    fn from(e: UsageError) -> AppError {
        AppError::Usage(e.0)
    }
}

impl From<Error> for AppError {
    fn from(e: Error) -> AppError {
        match e {
            Error::BackendInfeasible { .. } => AppError::Infeasible(e.to_string()),
            Error::BadBoundary(_) | Error::DoesNotFit { .. } | Error::Parse(_) => {
                AppError::Usage(e.to_string())
            }
            other => AppError::Internal(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Constant(args) => run_constant(args),
        Command::Tilings(args) => run_tilings(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Gb(args) => run_gb(args),
        Command::Certify(args) => run_certify(args),
        Command::Render(args) => run_render(args),
        Command::Selftest => run_selftest(),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Infeasible(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(AppError::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
