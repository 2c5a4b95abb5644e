use std::fs;
use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use trispec::extremal::search::{phi_table, SearchConfig};
use trispec::format::{format_family, parse_family};
use trispec::incidence::{Coboundaries, LaplacianKind};
use trispec::matrix::IntMatrix;
use trispec::mtx::write_matrix_market;
use trispec::source::{construct, is_construction_name};
use trispec::verify::{self, CheckResult, Suite, VerifyOptions};
use trispec::{spectral_report, Error, TriangleFamily};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(name = "trispec", version, about = "Spectral gap of triangle families")]
struct Cli {
    /// Write the run manifest here instead of stderr.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,

    /// Do not emit a run manifest.
    #[arg(long, global = true)]
    no_manifest: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral report of a family file, `-` for stdin, or a construction name.
    Lambda { source: String },
    /// Print a construction (`kn:n`, `gcb:c,b`, `frob:a,N`, `phi-lb:t`) as a family file.
    Construct { name: String },
    /// Run an invariant suite: hodge, overlap, counting, rigidity, gcb, mingap or all.
    Verify {
        suite: String,
        /// Clique sizes for the gcb grid, e.g. 3..5.
        #[arg(long, value_parser = parse_range, default_value = "3..5")]
        c: RangeInclusive<u32>,
        /// Apex counts for the gcb grid, e.g. 1..3.
        #[arg(long, value_parser = parse_range, default_value = "1..3")]
        b: RangeInclusive<u32>,
        /// Number of seeded random families; requires --seed.
        #[arg(long, requires = "seed")]
        random: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exact phi(t) by exhaustive search.
    Phi {
        t: usize,
        #[arg(long)]
        max_vertices: Option<usize>,
        #[arg(long)]
        budget_seconds: Option<f64>,
        #[arg(long)]
        no_prune: bool,
        /// Resumable list of processed prefixes.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Print phi(1..=t) instead of only phi(t).
        #[arg(long)]
        table: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Write incidence matrices and Laplacians as MatrixMarket files.
    Export {
        source: String,
        /// Comma-separated: d0, d1, L0up, L1down, L1up, L2down, L1total.
        #[arg(long, value_delimiter = ',', required = true)]
        matrices: Vec<String>,
        out: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (lo, hi) = s.split_once("..").unwrap_or((s, s));
    let lo: u32 = lo.trim().parse().map_err(|_| format!("bad range `{s}`"))?;
    let hi: u32 = hi.trim().trim_start_matches('=').parse().map_err(|_| format!("bad range `{s}`"))?;
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok(lo..=hi)
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) => EXIT_IO,
            Error::NoPositiveEigenvalue
            | Error::NotSymmetric(_)
            | Error::NoConvergence { .. }
            | Error::Numerical(_)
            | Error::Internal(_) => EXIT_NUMERICAL,
            Error::EmptyFamily
            | Error::DegenerateTriangle(_)
            | Error::DegenerateEdge(_)
            | Error::Parse { .. }
            | Error::InvalidArgument(_)
            | Error::BelowFrobeniusThreshold { .. }
            | Error::CanonicalBudget(_) => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: EXIT_IO, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

#[derive(Serialize)]
struct Tolerances {
    zero_band: &'static str,
    lambda: f64,
    ceil_guard: f64,
    cluster_radius: f64,
    jacobi_convergence: f64,
}

#[derive(Serialize)]
struct RunManifest {
    command: Vec<String>,
    input_sha256: String,
    version: &'static str,
    tolerances: Tolerances,
    elapsed_seconds: f64,
    outputs: Vec<String>,
    exit_code: u8,
}

struct Run {
    input: Vec<u8>,
    outputs: Vec<String>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn load_family(source: &str, run: &mut Run) -> Result<TriangleFamily, Failure> {
    let family = if source == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        parse_family(&text)?
    } else if is_construction_name(source) {
        construct(source)?
    } else if Path::new(source).exists() {
        let text = fs::read_to_string(source).map_err(|e| Failure { code: EXIT_IO, message: format!("{source}: {e}") })?;
        parse_family(&text)?
    } else if source.contains(':') {
        // Looks like a construction name but is not one.
        return Err(construct(source).err().map_or_else(|| usage(source), Failure::from));
    } else {
        return Err(Failure { code: EXIT_IO, message: format!("{source}: no such file") });
    };
    if family.is_empty() {
        return Err(Error::EmptyFamily.into());
    }
    run.input = format_family(&family).into_bytes();
    Ok(family)
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure { code: EXIT_NUMERICAL, message: e.to_string() })?;
    println!("{text}");
    Ok(())
}

fn cmd_verify(
    suite: &str,
    opts: VerifyOptions,
    format: Format,
) -> Result<bool, Failure> {
    let results: Vec<CheckResult> = if suite.eq_ignore_ascii_case("all") {
        verify::run_all(&opts)?
    } else {
        let s: Suite = suite
            .parse()
            .map_err(|_| usage(format!("unknown suite `{suite}` (hodge, overlap, counting, rigidity, gcb, mingap, all)")))?;
        verify::run(s, &opts)?
    };
    let failed = results.iter().filter(|r| !r.pass).count();
    match format {
        Format::Json => print_json(&results)?,
        Format::Csv => return Err(usage("verify prints text or json")),
        Format::Text => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            for r in &results {
                let residual = r.residual.map(|x| format!(" residual={x:.3e}")).unwrap_or_default();
                writeln!(out, "{} {} {}{residual} | {}", if r.pass { "PASS" } else { "FAIL" }, r.suite, r.name, r.detail)?;
            }
            writeln!(out, "{} checks, {} passed, {failed} failed", results.len(), results.len() - failed)?;
        }
    }
    Ok(failed == 0)
}

fn export(family: &TriangleFamily, kinds: &[String], out: &Path, run: &mut Run) -> Result<(), Failure> {
    enum Which {
        Delta0,
        Delta1,
        Laplacian(LaplacianKind),
    }
    let mut wanted = Vec::new();
    for k in kinds {
        let which = match k.to_ascii_lowercase().as_str() {
            "d0" | "delta0" => Which::Delta0,
            "d1" | "delta1" => Which::Delta1,
            other => Which::Laplacian(other.parse().map_err(|_| usage(format!("unknown matrix `{k}`")))?),
        };
        wanted.push(which);
    }
    let cob = Coboundaries::new(family)?;
    fs::create_dir_all(out).map_err(|e| Failure { code: EXIT_IO, message: format!("{}: {e}", out.display()) })?;
    for which in wanted {
        let (name, matrix, note): (String, IntMatrix, &str) = match which {
            Which::Delta0 => ("d0".into(), cob.delta0.matrix.clone(), "rows: edges, cols: vertices, lexicographic"),
            Which::Delta1 => ("d1".into(), cob.delta1.matrix.clone(), "rows: triangles, cols: edges, lexicographic"),
            Which::Laplacian(kind) => {
                let note = match kind {
                    LaplacianKind::L0Up => "indexed by vertices, lexicographic",
                    LaplacianKind::L2Down => "indexed by triangles, lexicographic",
                    _ => "indexed by edges, lexicographic",
                };
                (kind.name().to_string(), cob.laplacian(kind).matrix, note)
            }
        };
        let path = out.join(format!("{name}.mtx"));
        let mut buf = Vec::new();
        write_matrix_market(&mut buf, &matrix, &[format!("trispec {name}: {note}")])?;
        fs::write(&path, buf).map_err(|e| Failure { code: EXIT_IO, message: format!("{}: {e}", path.display()) })?;
        run.outputs.push(path.display().to_string());
    }
    Ok(())
}

fn execute(cli: &Cli, run: &mut Run) -> Result<u8, Failure> {
    match &cli.command {
        Command::Lambda { source } => {
            let family = load_family(source, run)?;
            let report = spectral_report(&family)?;
            println!("{}", report.to_json());
            run.outputs.push("stdout".into());
        }
        Command::Construct { name } => {
            let family = construct(name)?;
            let text = format_family(&family);
            run.input = name.as_bytes().to_vec();
            print!("{text}");
            run.outputs.push("stdout".into());
        }
        Command::Verify { suite, c, b, random, seed, format } => {
            // A bare run uses the default audit size and seed 0 so it stays reproducible.
            let opts = VerifyOptions { c: c.clone(), b: b.clone(), random: random.unwrap_or(50), seed: seed.unwrap_or(0) };
            run.input = format!("{suite} c={c:?} b={b:?} random={} seed={}", opts.random, opts.seed).into_bytes();
            let ok = cmd_verify(suite, opts, *format)?;
            run.outputs.push("stdout".into());
            if !ok {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Phi { t, max_vertices, budget_seconds, no_prune, checkpoint, table, format } => {
            if *t == 0 {
                return Err(usage("t must be at least 1"));
            }
            let budget = match budget_seconds {
                Some(s) if !s.is_finite() || *s < 0.0 => return Err(usage("--budget-seconds must be non-negative")),
                Some(s) => Some(Duration::from_secs_f64(*s)),
                None => None,
            };
            let config = SearchConfig { max_vertices: *max_vertices, budget, prune: !no_prune, checkpoint: checkpoint.clone() };
            run.input = format!("phi t={t} max_vertices={max_vertices:?} prune={}", !no_prune).into_bytes();
            let mut result = phi_table(*t, &config)?;
            if !table {
                result.entries.retain(|&s, _| s == *t);
            }
            match format {
                Format::Csv => print!("{}", result.to_csv()?),
                Format::Json | Format::Text if *table => println!("{}", result.to_json()),
                Format::Json | Format::Text => print_json(result.get(*t).expect("entry for t"))?,
            }
            run.outputs.push("stdout".into());
            if let Some(path) = checkpoint {
                run.outputs.push(path.display().to_string());
            }
        }
        Command::Export { source, matrices, out } => {
            let family = load_family(source, run)?;
            export(&family, matrices, out, run)?;
        }
    }
    Ok(0)
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(value) = std::env::var("TRISPEC_THREADS") {
        let n: usize = value
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| usage(format!("TRISPEC_THREADS must be a positive integer, got `{value}`")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| usage(e.to_string()))?;
    }
    Ok(())
}

fn emit_manifest(cli: &Cli, run: &Run, started: Instant, code: u8) -> Result<(), Failure> {
    if cli.no_manifest {
        return Ok(());
    }
    let export_dir = match &cli.command {
        Command::Export { out, .. } if code == 0 => Some(out.join("manifest.json")),
        _ => None,
    };
    let mut outputs = run.outputs.clone();
    if let Some(p) = &export_dir {
        outputs.push(p.display().to_string());
    }
    let manifest = RunManifest {
        command: std::env::args().collect(),
        input_sha256: sha256_hex(&run.input),
        version: env!("CARGO_PKG_VERSION"),
        tolerances: Tolerances {
            zero_band: "1e-7 * (1 + lambda_max)",
            lambda: 1e-8,
            ceil_guard: trispec::extremal::checks::CEIL_GUARD,
            cluster_radius: verify::CLUSTER_RADIUS,
            jacobi_convergence: trispec::eigen::CONVERGENCE_TOLERANCE,
        },
        elapsed_seconds: started.elapsed().as_secs_f64(),
        outputs,
        exit_code: code,
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    let target = cli.manifest.clone().or(export_dir);
    match target {
        Some(path) => fs::write(path, text + "\n")?,
        None => eprintln!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let started = Instant::now();
    let cli = Cli::parse();
    let mut run = Run { input: Vec::new(), outputs: Vec::new() };
    let code = match configure_threads().and_then(|_| execute(&cli, &mut run)) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    if let Err(f) = emit_manifest(&cli, &run, started, code) {
        eprintln!("error: manifest: {}", f.message);
        return ExitCode::from(if code == 0 { f.code } else { code });
    }
    ExitCode::from(code)
}
