use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use watchman::exec::Execution;
use watchman::harness::{
    batch_eval, lower_bound_experiment, verify_watchman, write_csv, BatchOptions, CorpusSpec, COVERAGE_TOL_SCALE,
};
use watchman::io::{load_instance, LoadError, RouteFile};
use watchman::offline::{ofp, osp};
use watchman::online::{competitive_bound, onpa_on_polygon, scope_phase_constant, Phase};
use watchman::svg::{write_svg, SvgRoute};
use watchman::{ConvexPolygon, Polyline};

const EXIT_INVALID: u8 = 2;
const EXIT_SOLVER: u8 = 3;
const EXIT_BOUND: u8 = 4;

#[derive(Parser)]
#[command(name = "watchman", version, about = "Watchman routes outside a convex polygonal obstacle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and write `<mode>.route.json`.
    Solve {
        mode: Mode,
        input: PathBuf,
        /// Also render the route(s) to this SVG file.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        /// For `onpa`: also solve OSP and print the competitive ratio.
        #[arg(long)]
        compare: bool,
        /// Coverage tolerance as a multiple of the bounding-box diagonal.
        #[arg(long, value_name = "T", default_value_t = COVERAGE_TOL_SCALE)]
        tol: f64,
        #[arg(long, value_name = "DIR", default_value = ".")]
        out: PathBuf,
    },
    /// Evaluate a corpus (JSON or YAML spec) and write report.csv and summary.json.
    Eval {
        spec: PathBuf,
        #[arg(long, value_name = "DIR", default_value = ".")]
        out: PathBuf,
        /// Override the corpus seed.
        #[arg(long, value_name = "N")]
        seed: Option<u64>,
        /// Run on the calling thread only.
        #[arg(long)]
        sequential: bool,
        #[arg(long, hide = true, default_value_t = 1.0)]
        fault_scale: f64,
    },
    /// Reproduce the analytical results.
    Paper {
        experiment: Experiment,
        #[arg(long, value_name = "N", default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Osp,
    Ofp,
    Onpa,
}

#[derive(Clone, Copy, ValueEnum)]
enum Experiment {
    LowerBound,
    Constant,
    Stages,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve { mode, input, svg, compare, tol, out } => {
            solve(mode, &input, svg.as_deref(), compare, tol, &out)
        }
        Command::Eval { spec, out, seed, sequential, fault_scale } => eval(&spec, &out, seed, sequential, fault_scale),
        Command::Paper { experiment, seed } => paper(experiment, seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn write(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| fail(1, format!("cannot create {}: {e}", dir.display())))?;
    }
    fs::write(path, contents).map_err(|e| fail(1, format!("cannot write {}: {e}", path.display())))
}

/// Coverage at the requested tolerance, retrying looser ones. Passing only
/// beyond 10x the requested tolerance is reported as a warning.
fn check_coverage(path: &Polyline, poly: &ConvexPolygon, tol_scale: f64) -> Result<(), Failure> {
    let base = tol_scale * poly.diagonal();
    for factor in [1.0, 10.0, 100.0] {
        if verify_watchman(path, poly, base * factor).ok {
            if factor > 10.0 {
                eprintln!("warning: coverage needed tolerance {:.3e} ({factor}x the requested one)", base * factor);
            }
            return Ok(());
        }
    }
    let missed = verify_watchman(path, poly, 100.0 * base).missed;
    Err(fail(EXIT_SOLVER, format!("route misses the half-planes of edges {missed:?}")))
}

fn solve(mode: Mode, input: &Path, svg: Option<&Path>, compare: bool, tol: f64, out: &Path) -> Result<(), Failure> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(fail(EXIT_INVALID, "--tol must be positive"));
    }
    let inst = load_instance(input).map_err(|e| match e {
        LoadError::Io { .. } => fail(EXIT_INVALID, e.to_string()),
        e => fail(EXIT_INVALID, format!("{}: {e}", input.display())),
    })?;
    let poly = &inst.polygon;
    let start = match (mode, inst.start) {
        (Mode::Ofp, s) => s,
        (_, Some(s)) => Some(s),
        (_, None) => return Err(fail(EXIT_INVALID, "instance has no start point, which this mode requires")),
    };
    let solver = |e: watchman::Error| fail(EXIT_SOLVER, e.to_string());
    let (name, route, mut figures) = match mode {
        Mode::Osp => {
            let r = osp(start.unwrap(), poly).map_err(solver)?;
            println!("type {}", r.path_type.as_str());
            let fig = SvgRoute::plain("osp", &r.path);
            ("osp", RouteFile::new(&r.path, r.path_type.as_str(), Vec::new()), vec![fig])
        }
        Mode::Ofp => {
            let r = ofp(poly);
            let fig = SvgRoute::plain("ofp", &r.path);
            ("ofp", RouteFile::new(&r.path, r.path_type.as_str(), Vec::new()), vec![fig])
        }
        Mode::Onpa => {
            let t = onpa_on_polygon(start.unwrap(), poly).map_err(solver)?;
            if !t.terminated {
                return Err(fail(EXIT_SOLVER, "online planner stopped without certifying coverage"));
            }
            let phases = [Phase::I, Phase::II, Phase::III].map(|p| t.phase_range(p).into()).to_vec();
            let fig = SvgRoute::phased("onpa", &t);
            ("onpa", RouteFile::new(&t.path, "online", phases), vec![fig])
        }
    };
    let path = route.polyline();
    if !path.avoids(poly) {
        return Err(fail(EXIT_SOLVER, "route passes through the obstacle"));
    }
    check_coverage(&path, poly, tol)?;
    println!("length {:.10}", route.length);
    if compare {
        match (mode, start) {
            (Mode::Onpa, Some(s)) => {
                let best = osp(s, poly).map_err(solver)?;
                println!("osp {:.10}", best.length());
                println!("ratio {:.6} (bound {:.4})", route.length / best.length(), competitive_bound());
                figures.push(SvgRoute::plain("osp", &best.path));
            }
            _ => eprintln!("note: --compare only applies to onpa"),
        }
    }
    let json = serde_json::to_string_pretty(&route).expect("route serializes");
    write(&out.join(format!("{name}.route.json")), json.as_bytes())?;
    if let Some(p) = svg {
        if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| fail(1, e.to_string()))?;
        }
        write_svg(p, poly, start, &figures).map_err(|e| fail(1, format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn load_spec(path: &Path) -> Result<CorpusSpec, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| fail(EXIT_INVALID, format!("cannot read {}: {e}", path.display())))?;
    let yaml = matches!(path.extension().and_then(|e| e.to_str()), Some("yaml" | "yml"));
    let spec: CorpusSpec = if yaml {
        serde_yaml::from_str(&text).map_err(|e| fail(EXIT_INVALID, format!("bad spec: {e}")))?
    } else {
        serde_json::from_str(&text).map_err(|e| fail(EXIT_INVALID, format!("bad spec: {e}")))?
    };
    spec.validate().map_err(|e| fail(EXIT_INVALID, format!("bad spec: {e}")))?;
    Ok(spec)
}

fn eval(spec: &Path, out: &Path, seed: Option<u64>, sequential: bool, fault_scale: f64) -> Result<(), Failure> {
    let mut spec = load_spec(spec)?;
    if let Some(s) = seed {
        spec.seed = s;
    }
    let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
    let result = batch_eval(&spec, &BatchOptions { exec, fault_scale })
        .map_err(|e| fail(EXIT_INVALID, format!("corpus: {e}")))?;
    let mut csv = Vec::new();
    write_csv(&result.reports, &mut csv).map_err(|e| fail(1, e.to_string()))?;
    write(&out.join("report.csv"), &csv)?;
    let summary = serde_json::to_string_pretty(&result.summary).expect("summary serializes");
    write(&out.join("summary.json"), summary.as_bytes())?;
    let s = &result.summary;
    println!("instances            {}", s.instances);
    println!("max ratio            {:.6}", s.max_ratio);
    println!("mean ratio           {:.6}", s.mean_ratio);
    println!("coverage failures    {}", s.coverage_failures);
    println!("sandwich violations  {}", s.sandwich_violations);
    println!("errors               {}", s.errors);
    println!("bound                {:.6}", s.bound);
    if !s.bound_ok {
        return Err(fail(EXIT_BOUND, "corpus violates the competitive bound or coverage"));
    }
    Ok(())
}

fn check(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn paper(experiment: Experiment, seed: u64) -> Result<(), Failure> {
    let ok = match experiment {
        Experiment::Constant => {
            let (c, sub) = (competitive_bound(), scope_phase_constant());
            let ok = (c - 89.83).abs() < 0.01 && (sub - 79.83).abs() < 0.01;
            println!("competitive bound   {c:.6}  (~{c:.2})");
            println!("scope-phase term    {sub:.6}  (~{sub:.2})");
            println!("check               {}", check(ok));
            ok
        }
        Experiment::LowerBound => {
            let rows = lower_bound_experiment(&[0.1, 0.01, 0.001]).map_err(|e| fail(EXIT_SOLVER, e.to_string()))?;
            println!("{:>8} {:>12} {:>12} {:>8} {:>8}", "eps", "opt", "wrong-dir", "ratio", "formula");
            let mut ok = true;
            for r in &rows {
                let formula = 1.5 / (0.5 + r.eps);
                ok &= (r.ratio - formula).abs() <= 0.01 * formula && r.ratio < 3.0;
                println!(
                    "{:>8} {:>12.6} {:>12.6} {:>8.4} {:>8.4}",
                    r.eps, r.opt_len, r.wrong_dir_len, r.ratio, formula
                );
            }
            ok &= rows.windows(2).all(|w| w[0].ratio < w[1].ratio);
            println!("check {}", check(ok));
            ok
        }
        Experiment::Stages => {
            let spec = CorpusSpec { count: 300, thin_triangles: 30, seed, ..CorpusSpec::default() };
            let r = batch_eval(&spec, &BatchOptions::default()).map_err(|e| fail(EXIT_SOLVER, e.to_string()))?;
            let s = r.summary;
            let one = s.max_phase_i_over_ell_tau <= 10.0;
            let rest = s.max_phase_ii_iii_over_ell_tau <= 79.84;
            println!("instances               {}", s.instances);
            println!("max I / ell_tau         {:.6}  (<= 10)     {}", s.max_phase_i_over_ell_tau, check(one));
            println!("max (II+III) / ell_tau  {:.6}  (<= 79.84)  {}", s.max_phase_ii_iii_over_ell_tau, check(rest));
            println!("max ratio               {:.6}  (<= {:.4}) {}", s.max_ratio, s.bound, check(s.bound_ok));
            one && rest && s.bound_ok
        }
    };
    if ok {
        Ok(())
    } else {
        Err(fail(EXIT_BOUND, "a bound check failed"))
    }
}
