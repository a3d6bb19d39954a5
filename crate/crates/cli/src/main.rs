//! Unified command-line entry point for the verification suite.

mod cache;
mod report;
mod verify;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use cycleforge::cyclespace::{boundary_system, brute_force_system, BoundarySystem};
use cycleforge::ellreg::{functional_equation_check, regulator_integral};
use cycleforge::fourconfig::{
    build_config, check_conditions, cubical_boundary, search_plus_config, GaussianRational,
};
use cycleforge::hurwitz::{
    enumerate_classes, BranchProfile, EnumerationOptions, HurwitzTuple, MoveDirection,
    OrbitOptions, OrbitReport,
};
use cycleforge::hypcheck::hypothesis_check;
use cycleforge::linalg::{kernel_basis, kernel_json, rational_string};

use cache::Cache;

#[derive(Parser)]
#[command(name = "cycleforge", version, about = "Exact and numerical verification of monodromy orbits, invariant cycle spaces and regulator integrals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Cache directory (overrides CYCLEFORGE_CACHE).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Disable the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Monodromy tuple commands.
    #[command(subcommand)]
    Hurwitz(HurwitzCommand),
    /// Build the invariant-cycle boundary system and its kernel.
    Cyclespace(CyclespaceArgs),
    /// Hyperelliptic specialization check.
    Hypcheck(HypcheckArgs),
    /// Elliptic regulator integral.
    Ellreg(EllregArgs),
    /// Exact genus-0 four-curve configuration.
    Fourconfig(FourconfigArgs),
    /// Run the whole claim suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum HurwitzCommand {
    /// Enumerate tuple classes and decompose them into braid orbits.
    Components(ComponentsArgs),
    /// Apply a braid move word to a tuple.
    Replay(ReplayArgs),
}

#[derive(Args)]
struct ComponentsArgs {
    /// Genus of the degree-4 family (profile n = 2g + 4).
    #[arg(long, conflicts_with = "profile")]
    genus: Option<usize>,
    /// JSON profile file: {"degree": d, "types": [[2,1,1], ...]}.
    #[arg(long)]
    profile: Option<PathBuf>,
    /// Raw-tuple estimate cap.
    #[arg(long, default_value_t = 100_000_000)]
    cap: u128,
    /// Include disconnected covers.
    #[arg(long)]
    all_covers: bool,
    /// Output report path (JSON).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReplayArgs {
    /// Fiber degree.
    #[arg(long)]
    degree: usize,
    /// Semicolon-separated cycle-notation entries, e.g. "(1 2);(1 2)".
    #[arg(long)]
    tuple: String,
    /// Comma-separated signed move indices: +i forward, -i inverse.
    #[arg(long, allow_hyphen_values = true)]
    moves: String,
}

#[derive(Args)]
struct CyclespaceArgs {
    #[arg(long)]
    n: usize,
    /// Lift the default cap of n <= 12.
    #[arg(long)]
    allow_large: bool,
    /// Use the literal brute-force assembly (n <= 5).
    #[arg(long)]
    oracle: bool,
    /// Matrix CSV output path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Kernel JSON output path.
    #[arg(long)]
    kernel: Option<PathBuf>,
}

#[derive(Args)]
struct HypcheckArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EllregArgs {
    /// Parameter as RE or RE,IM.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    /// Also check I(lambda) = log|lambda| + I(1/lambda).
    #[arg(long)]
    check_functional_equation: bool,
}

#[derive(Args)]
struct FourconfigArgs {
    #[arg(long, allow_hyphen_values = true)]
    a1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b2: Option<String>,
    /// Search for a small datum satisfying the symmetry condition.
    #[arg(long)]
    search: bool,
    /// Height bound for the search.
    #[arg(long, default_value_t = 3)]
    height: i64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run every claim.
    #[arg(long)]
    all: bool,
    /// Reduced ranges: n <= 4, genus 2, tol 1e-3.
    #[arg(long)]
    fast: bool,
    /// Comma-separated claim ids to run (default: all).
    #[arg(long, value_delimiter = ',')]
    claims: Option<Vec<String>>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = if cli.no_cache {
        Cache::disabled()
    } else if let Some(dir) = cli.cache_dir {
        Cache::at(dir)
    } else {
        Cache::from_env()
    };
    match run(cli.command, &cache) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn write_or_print(path: &Option<PathBuf>, payload: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, payload).map_err(|e| format!("writing {}: {e}", p.display())),
        None => {
            println!("{payload}");
            Ok(())
        }
    }
}

/// Enumerate and decompose one profile, consulting the cache and keeping a
/// resumable checkpoint while the search runs.
pub fn run_components(genus: usize, cache: &Cache) -> Result<OrbitReport, String> {
    let profile = BranchProfile::degree4_family(genus);
    components_for_profile(&profile, true, 100_000_000_000, cache)
}

fn components_for_profile(
    profile: &BranchProfile,
    connected_only: bool,
    cap: u128,
    cache: &Cache,
) -> Result<OrbitReport, String> {
    let params_key = format!(
        "{}|{:?}|{}",
        profile.degree(),
        profile.labels(),
        connected_only
    );
    if let Some(bytes) = cache.get("hurwitz-orbits", &params_key) {
        if let Ok(report) = serde_json::from_slice::<OrbitReport>(&bytes) {
            return Ok(report);
        }
    }
    let opts = EnumerationOptions {
        connected_only,
        raw_cap: cap,
    };
    let classes = enumerate_classes(profile, &opts).map_err(|e| e.to_string())?;
    let mut store = cache.checkpoint_store("hurwitz-orbits", &params_key);
    let report = cycleforge::hurwitz::orbit_partition_resumable(
        &classes,
        &OrbitOptions::default(),
        &mut store,
    )
    .map_err(|e| e.to_string())?;
    cache.clear_checkpoint("hurwitz-orbits", &params_key);
    cache.put(
        "hurwitz-orbits",
        &params_key,
        &serde_json::to_vec(&report).unwrap(),
    );
    Ok(report)
}

fn parse_profile_file(path: &PathBuf) -> Result<BranchProfile, String> {
    #[derive(serde::Deserialize)]
    struct ProfileFile {
        degree: usize,
        types: Vec<Vec<usize>>,
    }
    let raw = fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    let parsed: ProfileFile =
        serde_json::from_str(&raw).map_err(|e| format!("parsing {}: {e}", path.display()))?;
    let types: Result<Vec<_>, _> = parsed
        .types
        .into_iter()
        .map(cycleforge::perm::CycleType::new)
        .collect();
    BranchProfile::new(parsed.degree, types.map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())
}

fn system_to_csv(sys: &BoundarySystem) -> String {
    let mut out = String::new();
    out.push_str("point_class");
    for x in &sys.embeddings {
        out.push(',');
        out.push('"');
        out.push_str(&x.label());
        out.push('"');
    }
    out.push('\n');
    for (r, p) in sys.points.iter().enumerate() {
        out.push('"');
        out.push_str(&p.label());
        out.push('"');
        for c in 0..sys.matrix.cols() {
            out.push(',');
            out.push_str(&rational_string(sys.matrix.get(r, c)));
        }
        out.push('\n');
    }
    out
}

fn parse_lambda(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let parse = |t: &str| -> Result<f64, String> {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("cannot parse {t:?} as a number"))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(format!("lambda must be RE or RE,IM, got {s:?}")),
    }
}

fn run(command: Command, cache: &Cache) -> Result<ExitCode, String> {
    match command {
        Command::Hurwitz(HurwitzCommand::Components(args)) => {
            let profile = match (args.genus, &args.profile) {
                (Some(g), None) => BranchProfile::degree4_family(g),
                (None, Some(path)) => parse_profile_file(path)?,
                (None, None) => return Err("either --genus or --profile is required".into()),
                (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
            };
            let report =
                components_for_profile(&profile, !args.all_covers, args.cap, cache)?;
            let json = serde_json::to_string_pretty(&report).unwrap();
            write_or_print(&args.out, &json)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Hurwitz(HurwitzCommand::Replay(args)) => {
            let tuple =
                HurwitzTuple::parse(args.degree, &args.tuple).map_err(|e| e.to_string())?;
            let mut moves = Vec::new();
            for part in args.moves.split(',').filter(|p| !p.trim().is_empty()) {
                let part = part.trim();
                let (dir, digits) = match part.strip_prefix('-') {
                    Some(rest) => (MoveDirection::Inverse, rest),
                    None => (MoveDirection::Forward, part.trim_start_matches('+')),
                };
                let ix: usize = digits
                    .parse()
                    .map_err(|_| format!("bad move index {part:?}"))?;
                moves.push((ix, dir));
            }
            let result =
                cycleforge::hurwitz::replay_sequence(&tuple, &moves).map_err(|e| e.to_string())?;
            println!(
                "{}",
                serde_json::json!({
                    "input": tuple.to_strings(),
                    "moves": args.moves,
                    "output": result.to_strings(),
                })
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Cyclespace(args) => {
            if args.n > 12 && !args.allow_large {
                return Err(format!(
                    "n = {} exceeds the default cap of 12; pass --allow-large to proceed",
                    args.n
                ));
            }
            let sys = if args.oracle {
                brute_force_system(args.n).map_err(|e| e.to_string())?
            } else {
                boundary_system(args.n)
            };
            let basis = kernel_basis(&sys.matrix);
            if let Some(out) = &args.out {
                fs::write(out, system_to_csv(&sys))
                    .map_err(|e| format!("writing {}: {e}", out.display()))?;
            }
            let kernel = serde_json::to_string_pretty(&kernel_json(&basis)).unwrap();
            match &args.kernel {
                Some(p) => fs::write(p, kernel)
                    .map_err(|e| format!("writing {}: {e}", p.display()))?,
                None => println!(
                    "{}",
                    serde_json::json!({
                        "n": args.n,
                        "rows": sys.matrix.rows(),
                        "cols": sys.matrix.cols(),
                        "kernel_dim": basis.len(),
                    })
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Hypcheck(args) => {
            let sys = boundary_system(args.n);
            let basis = kernel_basis(&sys.matrix);
            let report = hypothesis_check(args.n, &basis).map_err(|e| e.to_string())?;
            let json = serde_json::to_string_pretty(&report).unwrap();
            write_or_print(&args.out, &json)?;
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Ellreg(args) => {
            let lambda = parse_lambda(&args.lambda)?;
            let integral = regulator_integral(lambda, args.tol).map_err(|e| e.to_string())?;
            let mut payload = serde_json::json!({
                "lambda": [lambda.re, lambda.im],
                "value": integral.value,
                "error_estimate": integral.error_estimate,
                "grid": integral.grid,
            });
            let mut pass = true;
            if args.check_functional_equation {
                let rep =
                    functional_equation_check(lambda, args.tol).map_err(|e| e.to_string())?;
                pass = rep.pass;
                payload["residual"] = serde_json::json!(rep.residual);
                payload["pass"] = serde_json::json!(rep.pass);
            }
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Fourconfig(args) => {
            let points: [GaussianRational; 4] = if args.search {
                search_plus_config(args.height)
                    .ok_or_else(|| format!("no datum found up to height {}", args.height))?
            } else {
                let parse = |name: &str, v: &Option<String>| -> Result<GaussianRational, String> {
                    v.as_ref()
                        .ok_or_else(|| format!("--{name} is required without --search"))?
                        .parse()
                        .map_err(|e: cycleforge::fourconfig::FourConfigError| e.to_string())
                };
                [
                    parse("a1", &args.a1)?,
                    parse("a2", &args.a2)?,
                    parse("b1", &args.b1)?,
                    parse("b2", &args.b2)?,
                ]
            };
            let [a1, a2, b1, b2] = points;
            let config = build_config(a1.clone(), a2.clone(), b1.clone(), b2.clone())
                .map_err(|e| e.to_string())?;
            let conditions = check_conditions(&config).map_err(|e| e.to_string())?;
            let boundary = cubical_boundary(&config, &[1, 2, 3, 4]).map_err(|e| e.to_string())?;
            let payload = serde_json::json!({
                "a1": a1.to_string(),
                "a2": a2.to_string(),
                "b1": b1.to_string(),
                "b2": b2.to_string(),
                "conditions": conditions,
                "boundary_terms": boundary.terms.len(),
                "boundary_zero": boundary.is_zero(),
                "residue": boundary
                    .residue
                    .iter()
                    .map(|(p, m)| serde_json::json!({
                        "coordinate": p.coordinate,
                        "point": p.alpha.to_string(),
                        "multiplicity": m,
                    }))
                    .collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            Ok(if boundary.is_zero() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Verify(args) => {
            let opts = verify::VerifyOptions {
                fast: args.fast,
                claims: args.claims.clone(),
            };
            let report = verify::run_verify(&opts, cache);
            let json = serde_json::to_string_pretty(&report).unwrap();
            match &args.out {
                Some(p) => fs::write(p, &json)
                    .map_err(|e| format!("writing {}: {e}", p.display()))?,
                None => println!("{json}"),
            }
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}
