mod compare;
mod gen;
mod io;
mod plot;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rivalloc::{solve_centroid, Error, Instance, SolverMode};

use crate::compare::Case;
use crate::gen::GenParams;
use crate::io::{to_json, write_output, InstanceFile, ResultRecord};

#[derive(Parser)]
#[command(name = "rivalloc", version, about = "Leader location against a follower at distance at least R")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance file.
    Solve(SolveArgs),
    /// Generate a random integer instance in general position.
    Gen(GenArgs),
    /// Run all three solvers and check that they agree.
    Compare(CompareArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file: `{"r": R, "customers": [{"x", "y", "w"}, ...]}`.
    #[arg(long)]
    input: PathBuf,
    /// parametric, intermediate or brute.
    #[arg(long, default_value = "parametric")]
    mode: SolverMode,
    /// Result file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also draw the instance and the solution as SVG.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct GenShape {
    /// Coordinates are drawn from `[-c, c]`.
    #[arg(long, default_value_t = 50)]
    coord_range: i64,
    /// Weights are drawn from `[1, w]`.
    #[arg(long, default_value_t = 10)]
    weight_range: i64,
    /// Separation distance R.
    #[arg(long, default_value_t = 2.0)]
    r: f64,
}

#[derive(Args)]
struct GenArgs {
    /// Number of customers.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    shape: GenShape,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long, conflicts_with_all = ["gen_n", "seeds"])]
    input: Option<PathBuf>,
    /// Generate instances with this many customers instead of reading one.
    #[arg(long, requires = "seeds")]
    gen_n: Option<usize>,
    /// Inclusive seed range `A..B`.
    #[arg(long, value_parser = parse_seeds, requires = "gen_n")]
    seeds: Option<(u64, u64)>,
    #[command(flatten)]
    shape: GenShape,
    /// Where the first disagreeing instance is written.
    #[arg(long, default_value = "rivalloc-repro.json")]
    reproducer: PathBuf,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn parse_seeds(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let a: u64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a > b {
        return Err(format!("empty seed range {a}..{b}"));
    }
    Ok((a, b))
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::new(1, format!("{e:#}"))
    }
}

type CliResult<T> = Result<T, Failure>;

const EXIT_DISAGREE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_POSITION: u8 = 3;
const EXIT_GEN: u8 = 4;

fn eps_override() -> CliResult<Option<f64>> {
    match std::env::var("RIVALLOC_EPS") {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(e) if e.is_finite() && e >= 0.0 => Ok(Some(e)),
            _ => Err(Failure::new(EXIT_PARSE, format!("RIVALLOC_EPS must be a non-negative number, got {s:?}"))),
        },
    }
}

fn build_instance(file: &InstanceFile, origin: &str) -> CliResult<Instance> {
    if !(file.r.is_finite() && file.r > 0.0) {
        return Err(Failure::new(EXIT_PARSE, format!("{origin}: \"r\" must be positive, got {}", file.r)));
    }
    let mut inst = Instance::new_unvalidated(file.customers(), file.r)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{origin}: {e}")))?;
    if let Some(eps) = eps_override()? {
        inst = inst.with_eps(eps);
    }
    inst.validate_general_position().map_err(|e| {
        let code = match e {
            Error::SharedCoordinate { .. } | Error::Collinear(..) => EXIT_POSITION,
            _ => EXIT_PARSE,
        };
        Failure::new(code, format!("{origin}: general position violated: {e}"))
    })?;
    Ok(inst)
}

fn read_instance(path: &Path) -> CliResult<(InstanceFile, Instance)> {
    let origin = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| Failure::new(EXIT_PARSE, format!("{origin}: {e}")))?;
    let file: InstanceFile =
        serde_json::from_str(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("{origin}: {e}")))?;
    let inst = build_instance(&file, &origin)?;
    Ok((file, inst))
}

fn solve(args: SolveArgs) -> CliResult<()> {
    let (_, inst) = read_instance(&args.input)?;
    let report = solve_centroid(&inst, args.mode).map_err(|e| Failure::new(1, e.to_string()))?;
    write_output(args.out.as_deref(), &to_json(&ResultRecord::from(&report)))?;
    if let Some(p) = &args.plot {
        fs::write(p, plot::render(&inst, &report))
            .map_err(|e| Failure::new(1, format!("writing {}: {e}", p.display())))?;
    }
    Ok(())
}

fn gen_params(n: usize, shape: &GenShape) -> CliResult<GenParams> {
    if n == 0 || shape.coord_range < 0 || shape.weight_range < 1 || !(shape.r.is_finite() && shape.r > 0.0) {
        return Err(Failure::new(
            EXIT_PARSE,
            "need n ≥ 1, coord-range ≥ 0, weight-range ≥ 1 and r > 0",
        ));
    }
    Ok(GenParams {
        n,
        coord_range: shape.coord_range,
        weight_range: shape.weight_range,
        separation: shape.r,
    })
}

fn generate(params: &GenParams, seed: u64) -> CliResult<InstanceFile> {
    gen::generate(params, seed).ok_or_else(|| {
        Failure::new(
            EXIT_GEN,
            format!(
                "no instance in general position with n = {} and coord-range {} after {} attempts",
                params.n,
                params.coord_range,
                gen::RETRY_BUDGET
            ),
        )
    })
}

fn gen(args: GenArgs) -> CliResult<()> {
    let params = gen_params(args.n, &args.shape)?;
    let file = generate(&params, args.seed)?;
    write_output(args.out.as_deref(), &to_json(&file))?;
    Ok(())
}

fn compare(args: CompareArgs) -> CliResult<()> {
    let cases = match (&args.input, args.gen_n, args.seeds) {
        (Some(path), _, _) => {
            let (file, inst) = read_instance(path)?;
            vec![Case {
                label: path.file_name().map_or("input".into(), |s| s.to_string_lossy().into_owned()),
                file,
                inst,
            }]
        }
        (None, Some(n), Some((a, b))) => {
            let params = gen_params(n, &args.shape)?;
            (a..=b)
                .map(|seed| {
                    let file = generate(&params, seed)?;
                    let inst = build_instance(&file, &format!("seed {seed}"))?;
                    Ok(Case {
                        label: format!("seed {seed}"),
                        file,
                        inst,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?
        }
        _ => return Err(Failure::new(EXIT_PARSE, "give either --input or --gen-n with --seeds")),
    };
    let rows = compare::run(&cases, args.inject_fault);
    print!("{}", compare::table(&rows));
    let bad: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].agrees()).collect();
    if bad.is_empty() {
        println!("all {} instance(s) agree", rows.len());
        return Ok(());
    }
    let first = &cases[bad[0]];
    fs::write(&args.reproducer, to_json(&first.file))
        .map_err(|e| Failure::new(EXIT_DISAGREE, format!("writing {}: {e}", args.reproducer.display())))?;
    Err(Failure::new(
        EXIT_DISAGREE,
        format!(
            "{} of {} instance(s) disagree; {} written to {}",
            bad.len(),
            rows.len(),
            first.label,
            args.reproducer.display()
        ),
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Gen(a) => gen(a),
        Command::Compare(a) => compare(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
