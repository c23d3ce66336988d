use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use toruslab::arith::fmt_f64;
use toruslab::lattice_core::{is_nonsingular, is_reflexive, parse_polytope, PointConfiguration};
use toruslab::moment_numeric::{
    amoeba_sample, facet_violation, format_csv, format_svg, medial_excess, FamilyPoint, SampleGrid,
};
use toruslab::monodromy_mirror::gamma_from_f64;
use toruslab::report;
use toruslab::triangulation::{
    build_central_triangulation, find_interior_lambda, parse_lift, parse_triangulation, secondary_cone_contains, CentralTriangulation,
    LiftVector, Strategy,
};
use toruslab::Error;

const EXIT_PREDICATE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(name = "toruslab", version, about = "Torus fibrations of Calabi-Yau hypersurfaces in toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reflexivity and nonsingularity certificates for a polytope file.
    Check(CheckArgs),
    /// W-cells, fiber census, discriminant skeleton and hole radius.
    Fibration(RunArgs),
    /// Sampled image of the curve under the weighted moment map.
    Amoeba(RunArgs),
    /// Fiber translations per cell and, for curves, the Dehn twist matrix.
    Monodromy(RunArgs),
    /// Dual polytope, mirror skeleton, fiber lattices and Kähler class.
    Mirror(RunArgs),
}

#[derive(Args)]
struct CheckArgs {
    polytope: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Txt,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    VertexOnly,
    Placing,
}

#[derive(Clone, Copy, ValueEnum)]
enum PointsArg {
    /// Vertices of Δ and the origin.
    Vertices,
    /// Every lattice point of Δ.
    All,
}

#[derive(Args)]
struct RunArgs {
    polytope: PathBuf,
    /// Maximal simplices as rows of point indices (overrides --strategy).
    #[arg(long)]
    triangulation: Option<PathBuf>,
    /// Lift values as `index value` rows. Default: λ(0) = 1 and 0 elsewhere
    /// when that is strictly convex for T, else a certified interior lift.
    #[arg(long)]
    lift: Option<PathBuf>,
    /// Modulus |t| of the family parameter, in (1, 1e12].
    #[arg(long, default_value_t = 1000.0, value_parser = parse_t)]
    t: f64,
    /// Scale γ of the dual polytope, in (0, 1e6].
    #[arg(long, default_value_t = 1.0, value_parser = parse_gamma)]
    gamma: f64,
    /// Phase and log-radius subdivisions per sampled coordinate.
    #[arg(long, value_parser = clap::value_parser!(u16).range(2..=512))]
    grid: Option<u16>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Txt)]
    format: Format,
    #[arg(long, value_enum, default_value_t = StrategyArg::VertexOnly)]
    strategy: StrategyArg,
    #[arg(long, value_enum, default_value_t = PointsArg::Vertices)]
    points: PointsArg,
}

fn parse_t(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v > 1.0 && v <= 1e12 {
        Ok(v)
    } else {
        Err("|t| must lie in (1, 1e12]".into())
    }
}

fn parse_gamma(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v > 0.0 && v <= 1e6 {
        Ok(v)
    } else {
        Err("γ must lie in (0, 1e6]".into())
    }
}

enum Failure {
    Predicate(String),
    Input(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Io(_) | Error::Resource(_) | Error::Strategy(_) => Failure::Input(e.to_string()),
            Error::Numerical(_) => Failure::Numerical(e.to_string()),
            Error::Domain(_) | Error::Infeasible(_) | Error::Internal(_) => Failure::Predicate(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

struct Setup {
    t: CentralTriangulation,
    lambda: LiftVector,
}

fn setup(args: &RunArgs, need_nonsingular: bool) -> Result<Setup, Failure> {
    let poly = parse_polytope(&read(&args.polytope)?)?;
    if !is_reflexive(&poly).reflexive {
        return Err(Failure::Predicate("Δ is not reflexive; run `toruslab check` for certificates".into()));
    }
    if need_nonsingular && !is_nonsingular(&poly).nonsingular {
        return Err(Failure::Predicate("Δ is singular; the fibration needs a nonsingular Δ".into()));
    }
    let cfg = match args.points {
        PointsArg::Vertices => PointConfiguration::vertices_and_origin(poly)?,
        PointsArg::All => PointConfiguration::all_points(poly)?,
    };
    let t = match &args.triangulation {
        Some(p) => CentralTriangulation::new(cfg.clone(), parse_triangulation(&read(p)?)?)?,
        None => {
            let strategy = match args.strategy {
                StrategyArg::VertexOnly => Strategy::VertexOnly,
                StrategyArg::Placing => Strategy::Placing,
            };
            build_central_triangulation(&cfg, strategy)?
        }
    };
    let lambda = match &args.lift {
        Some(p) => parse_lift(&read(p)?, cfg.len())?,
        None => {
            let spike = LiftVector::origin_spike(&cfg, 1);
            if secondary_cone_contains(&t, &spike).inside {
                spike
            } else {
                find_interior_lambda(&t)?
            }
        }
    };
    let m = secondary_cone_contains(&t, &lambda);
    if !m.inside {
        let lines: Vec<String> = m
            .violations
            .iter()
            .map(|(label, v)| format!("  {label}: slack {}", toruslab::arith::fmt_q(v)))
            .collect();
        return Err(Failure::Predicate(format!(
            "λ is not in the interior of the secondary cone; violated:\n{}",
            lines.join("\n")
        )));
    }
    Ok(Setup { t, lambda })
}

fn txt_only(args: &RunArgs, cmd: &str) -> Result<(), Failure> {
    if args.format != Format::Txt {
        return Err(Failure::Input(format!("`{cmd}` writes txt reports only")));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Check(a) => {
            let poly = parse_polytope(&read(&a.polytope)?)?;
            let r = report::check_report(&poly)?;
            emit(&a.out, &r.text)?;
            Ok(if r.reflexive && r.nonsingular {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_PREDICATE)
            })
        }
        Command::Fibration(a) => {
            txt_only(&a, "fibration")?;
            let s = setup(&a, true)?;
            let grid = a.grid.map_or(report::default_grid(s.t.dim()), usize::from);
            let text = report::fibration_report(&s.t, &s.lambda, &FamilyPoint::real(a.t)?, grid)?;
            emit(&a.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Amoeba(a) => {
            let s = setup(&a, false)?;
            let grid = a.grid.map_or(report::default_grid(2), usize::from);
            let family = FamilyPoint::real(a.t)?;
            let sample = amoeba_sample(s.t.config(), &s.lambda, &family, SampleGrid::square(grid))?;
            let text = match a.format {
                Format::Csv => format_csv(&sample),
                Format::Svg => format_svg(&s.t, &sample, true)?,
                Format::Txt => {
                    let cfg = s.t.config();
                    let radius = sample
                        .points
                        .iter()
                        .map(|(m, _)| m.iter().map(|x| x * x).sum::<f64>().sqrt())
                        .fold(f64::INFINITY, f64::min);
                    let excess = sample.points.iter().map(|(m, _)| medial_excess(&s.t, m)).fold(0.0, f64::max);
                    let outside = sample.points.iter().map(|(m, _)| facet_violation(cfg, m)).fold(0.0, f64::max);
                    format!(
                        "|t|: {}\npoints: {}\nunconverged root solves: {}\nhole radius: {}\nmax medial excess: {}\nmax facet violation: {}\n",
                        fmt_f64(a.t),
                        sample.points.len(),
                        sample.unconverged,
                        fmt_f64(radius),
                        fmt_f64(excess),
                        fmt_f64(outside)
                    )
                }
            };
            emit(&a.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Monodromy(a) => {
            txt_only(&a, "monodromy")?;
            let s = setup(&a, false)?;
            let text = report::monodromy_report(&s.t, &s.lambda, &gamma_from_f64(a.gamma)?)?;
            emit(&a.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Mirror(a) => {
            txt_only(&a, "mirror")?;
            let s = setup(&a, false)?;
            let text = report::mirror_report(&s.t, &s.lambda, &gamma_from_f64(a.gamma)?)?;
            emit(&a.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("TORUSLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("TORUSLAB_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Input(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|_| run(cli)) {
        Ok(code) => code,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Predicate(m) => (EXIT_PREDICATE, m),
                Failure::Input(m) => (EXIT_INPUT, m),
                Failure::Numerical(m) => (EXIT_NUMERICAL, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
