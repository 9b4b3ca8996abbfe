//! Command-line front end: relation checks, polar fibers, E-sets,
//! maximality certificates, MVIP solution sets, the scenario corpus, and
//! region plots.
//!
//! Exit codes: 0 success, 1 claim mismatch in `scenario --verify`,
//! 2 malformed input, 3 dimension guard.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qmpolar::certify::{certify_ae_maximal, certify_maximal, certify_premaximal, Grid};
use qmpolar::error::Error;
use qmpolar::json::{self as qjson, LoadOptions, ModeChoice};
use qmpolar::plot::{render, PlotOptions, Region};
use qmpolar::scalar::{Mode, Scalar, Vector};
use qmpolar::scenario::{generate_scenario, verify_scenario, ScenarioParams, SCENARIO_NAMES};
use qmpolar::{certify_monotone, certify_quasimonotone, OperatorGraph};

#[derive(Parser)]
#[command(
    name = "qmpolar",
    about = "Exact computation with quasimonotone operator graphs",
    version
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Arithmetic mode override for loaded files.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    /// Tolerance for float mode.
    #[arg(long, global = true, default_value_t = Mode::DEFAULT_EPS)]
    eps: f64,
    /// Snap non-rational floats to rationals with denominators up to this
    /// bound when loading into exact mode.
    #[arg(long, global = true)]
    max_denominator: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Args)]
struct InputArgs {
    /// Operator JSON file.
    #[arg(short, long, conflicts_with = "scenario")]
    input: Option<PathBuf>,
    /// Built-in scenario name instead of a file.
    #[arg(long, value_parser = SCENARIO_NAMES.to_vec())]
    scenario: Option<String>,
    /// Scenario parameter: slice half-width.
    #[arg(long, default_value_t = 2)]
    m: i64,
    /// Scenario parameter: identity angular sample count.
    #[arg(long, default_value_t = 64)]
    n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Quasimonotonicity and monotonicity verdicts with witnesses.
    Check {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Polar fiber at a point, as a halfspace cone.
    Polar {
        #[command(flatten)]
        input: InputArgs,
        /// Point, comma-separated (e.g. "0.5" or "1,0").
        #[arg(long)]
        at: String,
    },
    /// E-set polyhedron and its classification.
    ESet {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Maximality certificates on a grid.
    Certify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(value_enum)]
        kind: CertifyKind,
        /// Grid JSON file; defaults to the scenario grid or the graph's
        /// default scaffold.
        #[arg(long)]
        grid: Option<PathBuf>,
    },
    /// Minty solution sets for the graph and its polar.
    Mvip {
        #[command(flatten)]
        input: InputArgs,
        /// Constraint-set JSON file.
        #[arg(long, conflicts_with = "k_grid")]
        constraints: Option<PathBuf>,
        /// 1-D constraint grid "start:end:step" (e.g. "1:2:0.25").
        #[arg(long)]
        k_grid: Option<String>,
    },
    /// Emit or verify a built-in scenario.
    Scenario {
        /// Scenario name.
        #[arg(value_parser = SCENARIO_NAMES.to_vec())]
        name: String,
        /// Run the expected-claims table; nonzero exit on mismatch.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 2)]
        m: i64,
        #[arg(long, default_value_t = 64)]
        n: usize,
    },
    /// SVG raster of polar membership (1-D operators) plus a CSV sample.
    Plot {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = RegionArg::Polar)]
        region: RegionArg,
        /// Output SVG path; the CSV lands next to it.
        #[arg(long)]
        out: PathBuf,
        /// Half-width of the plot window.
        #[arg(long, default_value_t = 2.5)]
        range: f64,
        /// Raster cells per axis.
        #[arg(long, default_value_t = 120)]
        cells: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CertifyKind {
    Maximal,
    Premaximal,
    Ae,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegionArg {
    Polar,
    Graph,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::DimensionGuard { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn load_options(g: &GlobalArgs) -> LoadOptions {
    LoadOptions {
        mode_override: g.mode.map(|m| match m {
            ModeArg::Exact => ModeChoice::Exact,
            ModeArg::Float => ModeChoice::Float,
        }),
        eps: g.eps,
        max_denominator: g.max_denominator,
    }
}

/// Loads the operator (and scenario grid when one is in play).
fn load_input(input: &InputArgs, g: &GlobalArgs) -> Result<(OperatorGraph, Option<Grid>), Error> {
    match (&input.input, &input.scenario) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)?;
            Ok((qjson::load_operator(&text, &load_options(g))?, None))
        }
        (None, Some(name)) => {
            let params = ScenarioParams {
                m: input.m,
                n: input.n,
                eps: g.eps,
                ..ScenarioParams::default()
            };
            let sc = generate_scenario(name, &params)?;
            Ok((sc.graph, Some(sc.grid)))
        }
        _ => Err(Error::InvalidParams(
            "provide exactly one of --input or --scenario".into(),
        )),
    }
}

fn parse_point(text: &str, mode: &Mode) -> Result<Vector, Error> {
    text.split(',')
        .map(|part| {
            let part = part.trim();
            match mode {
                Mode::Exact => Scalar::parse_exact(part),
                Mode::Float { .. } => part
                    .parse::<f64>()
                    .map_err(|_| Error::parse(format!("bad coordinate {part:?}")))
                    .and_then(Scalar::float),
            }
        })
        .collect()
}

fn emit(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("valid json"));
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Check { input } => {
            let (t, _) = load_input(&input, &cli.global)?;
            let qm = certify_quasimonotone(&t);
            let mono = certify_monotone(&t);
            emit(&json!({
                "quasimonotone": qjson::certificate_to_value(&qm),
                "monotone": qjson::certificate_to_value(&mono),
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Polar { input, at } => {
            let (t, _) = load_input(&input, &cli.global)?;
            let point = parse_point(&at, &t.mode())?;
            let fiber = t.polar_fiber(&point)?;
            emit(&qjson::hcone_to_value(&fiber));
            Ok(ExitCode::SUCCESS)
        }
        Command::ESet { input } => {
            let (t, _) = load_input(&input, &cli.global)?;
            let e = t.e_polyhedron();
            let class = e.classify()?;
            emit(&json!({
                "polyhedron": qjson::polyhedron_to_value(&e),
                "classification": qjson::set_class_to_value(&class),
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify { input, kind, grid } => {
            let (t, scenario_grid) = load_input(&input, &cli.global)?;
            let grid = match grid {
                Some(path) => {
                    let text = std::fs::read_to_string(path)?;
                    qjson::load_grid(&text, t.mode(), &load_options(&cli.global))?
                }
                None => scenario_grid.unwrap_or_else(|| Grid::default_for(&t)),
            };
            let cert = match kind {
                CertifyKind::Maximal => certify_maximal(&t, &grid)?,
                CertifyKind::Premaximal => certify_premaximal(&t, &grid)?,
                CertifyKind::Ae => certify_ae_maximal(&t, &grid)?,
            };
            emit(&qjson::certificate_to_value(&cert));
            Ok(ExitCode::SUCCESS)
        }
        Command::Mvip {
            input,
            constraints,
            k_grid,
        } => {
            let (t, _) = load_input(&input, &cli.global)?;
            let k = match (constraints, k_grid) {
                (Some(path), None) => {
                    let text = std::fs::read_to_string(path)?;
                    qjson::load_constraint_set(&text, t.mode(), &load_options(&cli.global))?
                }
                (None, Some(spec)) => parse_k_grid(&spec, &t)?,
                _ => {
                    return Err(Error::InvalidParams(
                        "provide exactly one of --constraints or --k-grid".into(),
                    ))
                }
            };
            let direct = qmpolar::minty_solve(&t, &k)?;
            let polar = qmpolar::minty_solve_polar(&t, &k)?;
            let included = polar.iter().all(|x| direct.contains(x));
            emit(&json!({
                "constraints": qjson::constraint_set_to_value(&k),
                "solutions": qjson::points_to_value(&direct),
                "polar_solutions": qjson::points_to_value(&polar),
                "polar_included_in_direct": included,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Scenario { name, verify, m, n } => {
            let params = ScenarioParams {
                m,
                n,
                eps: cli.global.eps,
                ..ScenarioParams::default()
            };
            let sc = generate_scenario(&name, &params)?;
            if !verify {
                emit(&qjson::operator_to_value(&sc.graph));
                return Ok(ExitCode::SUCCESS);
            }
            let results = verify_scenario(&sc);
            let mut all_pass = true;
            for r in &results {
                let status = if r.pass { "pass" } else { "FAIL" };
                println!("{status}  {}: {}", r.label, r.detail);
                all_pass &= r.pass;
            }
            if all_pass {
                println!("scenario {name}: all {} claims hold", results.len());
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Plot {
            input,
            region,
            out,
            range,
            cells,
        } => {
            let (t, _) = load_input(&input, &cli.global)?;
            let opts = PlotOptions {
                region: match region {
                    RegionArg::Polar => Region::Polar,
                    RegionArg::Graph => Region::Graph,
                },
                range,
                cells,
            };
            let rendered = render(&t, &opts)?;
            std::fs::write(&out, rendered.svg.as_bytes())?;
            let csv_path = out.with_extension("csv");
            std::fs::write(&csv_path, rendered.csv.as_bytes())?;
            eprintln!("wrote {} and {}", out.display(), csv_path.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_k_grid(spec: &str, t: &OperatorGraph) -> Result<qmpolar::ConstraintSet, Error> {
    if t.dim() != 1 {
        return Err(Error::InvalidParams(
            "--k-grid builds 1-D grids; use --constraints for higher dimensions".into(),
        ));
    }
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, end, step] = parts.as_slice() else {
        return Err(Error::parse(format!(
            "bad k-grid {spec:?}; expected start:end:step"
        )));
    };
    let mode = t.mode();
    let parse = |s: &str| -> Result<Scalar, Error> {
        match mode {
            Mode::Exact => Scalar::parse_exact(s),
            Mode::Float { .. } => s
                .parse::<f64>()
                .map_err(|_| Error::parse(format!("bad k-grid value {s:?}")))
                .and_then(Scalar::float),
        }
    };
    let (start, end, step) = (parse(start)?, parse(end)?, parse(step)?);
    if mode.sign(&step) != std::cmp::Ordering::Greater {
        return Err(Error::InvalidParams("k-grid step must be positive".into()));
    }
    let mut points = Vec::new();
    let mut current = start;
    while mode.cmp(&current, &end) != std::cmp::Ordering::Greater {
        points.push(vec![current.clone()]);
        current = current + step.clone();
        if points.len() > 100_000 {
            return Err(Error::InvalidParams("k-grid too fine".into()));
        }
    }
    qmpolar::ConstraintSet::new(1, mode, points)
}
