//! The `fiedler` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 input error, 3 numerical failure.

pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::closedform::{p4_optimal_lambda2, p4_r0, Family};
use crate::error::Error;
use crate::graph::WeightedGraph;
use crate::optimize::{maximize_connectivity, sweep_curve, OptimizationResult, OptimizerConfig};
use crate::resistance::{kirchhoff_total, ResistanceProfile};
use crate::spectral::{fiedler, pseudo_inverse, spectrum, DEFAULT_DEGENERACY_RELATIVE};
use crate::symmetry::{automorphisms, check_conjecture, DEFAULT_INVARIANCE_TOLERANCE};
pub use report::{format_float, Format, Report, Value};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

const CONJECTURE_DEFAULT_RESTARTS: usize = 4;

#[derive(Debug, Parser)]
#[command(
    name = "fiedler",
    version,
    about = "Algebraic connectivity and effective resistance of weighted graphs"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Laplacian eigenvalues, Fiedler value and vector.
    Spectrum { file: PathBuf },
    /// Pairwise effective resistances and the Kirchhoff identity.
    Resistance { file: PathBuf },
    /// Maximize λ₂ at the unweighted graph's total effective resistance.
    Optimize {
        file: PathBuf,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        /// Exit 0 even if the optimizer did not converge.
        #[arg(long)]
        allow_partial: bool,
    },
    /// Check whether optimal weights are constant on automorphism edge orbits.
    Conjecture {
        file: PathBuf,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        /// Largest relative weight spread within an orbit that still counts as invariant.
        #[arg(long, default_value_t = DEFAULT_INVARIANCE_TOLERANCE)]
        invariance_tol: f64,
        #[arg(long)]
        allow_partial: bool,
    },
    /// Write a closed-form curve and its eigensolver check as CSV.
    Sweep {
        #[arg(value_parser = parse_family)]
        family: Family,
        #[arg(long, default_value_t = 201)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Args)]
pub struct OptimizerArgs {
    #[arg(long, default_value_t = OptimizerConfig::default().tolerance)]
    pub tolerance: f64,
    #[arg(long, default_value_t = OptimizerConfig::default().max_iterations)]
    pub max_iterations: usize,
    /// Random restarts (default 0 for optimize, 4 for conjecture).
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_DEGENERACY_RELATIVE)]
    pub degeneracy_threshold: f64,
}

impl OptimizerArgs {
    fn config(&self, default_restarts: usize) -> OptimizerConfig {
        OptimizerConfig {
            tolerance: self.tolerance,
            max_iterations: self.max_iterations,
            restarts: self.restarts.unwrap_or(default_restarts),
            seed: self.seed,
            degeneracy_threshold: self.degeneracy_threshold,
        }
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A command failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    /// Report to print before failing, if any.
    pub report: Option<Report>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidArgument(_) => EXIT_USAGE,
            e if e.is_numerical() => EXIT_NUMERICAL,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
            report: None,
        }
    }
}

fn read_graph(path: &Path) -> Result<WeightedGraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
        report: None,
    })?;
    WeightedGraph::parse(&text).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
        report: None,
    })
}

/// Parses `args` (program name first), runs the command and writes its report.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_SUCCESS
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_SUCCESS {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            let _ = write!(out, "{}", report.render(cli.format));
            EXIT_SUCCESS
        }
        Err(failure) => {
            if let Some(report) = &failure.report {
                let _ = write!(out, "{}", report.render(cli.format));
            }
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

pub fn execute(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Spectrum { file } => cmd_spectrum(&read_graph(file)?),
        Command::Resistance { file } => cmd_resistance(&read_graph(file)?),
        Command::Optimize {
            file,
            optimizer,
            allow_partial,
        } => cmd_optimize(&read_graph(file)?, &optimizer.config(0), *allow_partial),
        Command::Conjecture {
            file,
            optimizer,
            invariance_tol,
            allow_partial,
        } => cmd_conjecture(
            &read_graph(file)?,
            &optimizer.config(CONJECTURE_DEFAULT_RESTARTS),
            *invariance_tol,
            *allow_partial,
        ),
        Command::Sweep { family, steps, out } => cmd_sweep(*family, *steps, out),
    }
}

pub fn cmd_spectrum(g: &WeightedGraph) -> Result<Report, Failure> {
    let dec = spectrum(g)?;
    let mut r = Report::new("spectrum");
    r.push("vertices", g.vertex_count())
        .push("edges", g.edge_count())
        .push("connected", g.is_connected())
        .push("zero_eigenvalues", dec.zero_count())
        .push("eigenvalues", dec.eigenvalues().to_vec())
        .push("lambda2", dec.eigenvalues()[1]);
    if let Ok(f) = fiedler(&dec) {
        r.push("fiedler_vector", f.vector)
            .push("spectral_gap", f.gap)
            .push("degenerate", f.degenerate);
    }
    Ok(r)
}

pub fn cmd_resistance(g: &WeightedGraph) -> Result<Report, Failure> {
    if !g.is_connected() {
        return Err(Error::Disconnected.into());
    }
    let dec = spectrum(g)?;
    let profile = ResistanceProfile::from_pseudo_inverse(&pseudo_inverse(&dec))?;
    let kirchhoff = kirchhoff_total(&dec)?;
    let mut r = Report::new("resistance");
    r.push("vertices", g.vertex_count())
        .push("total_resistance", profile.total())
        .push("kirchhoff_total", kirchhoff)
        .push("difference", (profile.total() - kirchhoff).abs());
    for i in 0..g.vertex_count() {
        r.push(format!("row_{}", i + 1), profile.pairwise().row(i).to_vec());
    }
    Ok(r)
}

fn push_optimization(r: &mut Report, res: &OptimizationResult) {
    r.push("converged", res.converged)
        .push("iterations", res.iterations)
        .push("lambda2", res.lambda2)
        .push("total_resistance", res.total_resistance)
        .push("product", res.product)
        .push("weights", res.weights.clone())
        .push(
            "edge_resistances",
            res.weights.iter().map(|w| 1.0 / w).collect::<Vec<_>>(),
        )
        .push("degenerate_fiedler", res.degenerate_fiedler)
        .push("used_fallback", res.used_fallback)
        .push("gradient_norm", res.gradient_norm)
        .push("runs", res.runs.len())
        .push(
            "run_products",
            res.runs.iter().map(|run| run.product).collect::<Vec<_>>(),
        )
        .push("restart_product_spread", res.restart_product_spread())
        .push("restart_weight_spread", res.restart_weight_spread());
}

/// Closed-form reference values when the graph is the path on 3 or 4 vertices.
fn push_reference(r: &mut Report, g: &WeightedGraph, res: &OptimizationResult) {
    if !g.is_path() {
        return;
    }
    match g.vertex_count() {
        3 => {
            r.push("reference_lambda2", 1.0)
                .push("lambda2_deviation", res.lambda2 - 1.0)
                .push("reference_r1", 1.0)
                .push("r1_deviation", 1.0 / res.weights[0] - 1.0);
        }
        4 => {
            let (lambda2, r0) = (p4_optimal_lambda2(), p4_r0());
            r.push("reference_lambda2", lambda2)
                .push("lambda2_deviation", res.lambda2 - lambda2)
                .push("reference_r1", r0)
                .push("r1_deviation", 1.0 / res.weights[0] - r0);
        }
        _ => {}
    }
}

fn partial_failure(r: Report) -> Failure {
    Failure {
        code: EXIT_NUMERICAL,
        message: "optimizer did not converge (use --allow-partial to accept)".into(),
        report: Some(r),
    }
}

pub fn cmd_optimize(
    g: &WeightedGraph,
    config: &OptimizerConfig,
    allow_partial: bool,
) -> Result<Report, Failure> {
    let res = maximize_connectivity(g, config)?;
    let mut r = Report::new("optimize");
    push_optimization(&mut r, &res);
    push_reference(&mut r, g, &res);
    if !res.converged && !allow_partial {
        return Err(partial_failure(r));
    }
    Ok(r)
}

pub fn cmd_conjecture(
    g: &WeightedGraph,
    config: &OptimizerConfig,
    invariance_tol: f64,
    allow_partial: bool,
) -> Result<Report, Failure> {
    // guard on size before spending time optimizing
    let group = automorphisms(g, true)?;
    let res = maximize_connectivity(g, config)?;
    let verdict = check_conjecture(g, &res, invariance_tol)?;
    let orbits = group
        .edge_orbits()
        .iter()
        .map(|o| {
            let members: Vec<String> = o.iter().map(|e| (e + 1).to_string()).collect();
            format!("{{{}}}", members.join(" "))
        })
        .collect::<Vec<_>>()
        .join(" ");
    let mut r = Report::new("conjecture");
    r.push("invariant", verdict.invariant)
        .push("max_orbit_spread", verdict.max_orbit_spread)
        .push("invariance_tol", verdict.tolerance)
        .push("group_order", verdict.group_order)
        .push("orbit_count", verdict.orbit_count)
        .push("edge_count", g.edge_count())
        .push("edge_orbits", orbits)
        .push("lambda2_after_averaging", verdict.lambda2_after_averaging);
    push_optimization(&mut r, &res);
    if !res.converged && !allow_partial {
        return Err(partial_failure(r));
    }
    Ok(r)
}

pub fn cmd_sweep(family: Family, steps: usize, out: &Path) -> Result<Report, Failure> {
    let points = sweep_curve(family, steps)?;
    let io_failure = |e: &dyn std::fmt::Display| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", out.display()),
        report: None,
    };
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(out)
        .map_err(|e| io_failure(&e))?;
    writer
        .write_record(["r", "lambda2_closed", "lambda2_numeric", "delta"])
        .map_err(|e| io_failure(&e))?;
    for p in &points {
        writer
            .write_record([
                format_float(p.r()),
                format_float(p.closed.lambda2),
                format_float(p.lambda2_numeric),
                format_float(p.delta()),
            ])
            .map_err(|e| io_failure(&e))?;
    }
    writer.flush().map_err(|e| io_failure(&e))?;

    let peak = points
        .iter()
        .max_by(|a, b| a.closed.lambda2.total_cmp(&b.closed.lambda2))
        .expect("at least two points");
    let max_delta = points.iter().map(|p| p.delta().abs()).fold(0.0, f64::max);
    let mut r = Report::new("sweep");
    r.push("family", family.to_string())
        .push("steps", steps)
        .push("out", out.display().to_string())
        .push("argmax_r", peak.r())
        .push("max_lambda2", peak.closed.lambda2)
        .push("max_abs_delta", max_delta);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("fiedler").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_args(&[]).0, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(
            run_args(&["sweep", "p5", "--out", "/dev/null"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_args(&["sweep", "p3", "--steps", "1", "--out", "/dev/null"]).0,
            EXIT_USAGE
        );
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_SUCCESS);
        assert!(out.contains("spectrum"));
    }

    #[test]
    fn missing_file_exits_two() {
        let (code, _, err) = run_args(&["spectrum", "/nonexistent/graph.txt"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("/nonexistent/graph.txt"));
    }

    #[test]
    fn failure_codes() {
        assert_eq!(Failure::from(Error::Disconnected).code, EXIT_INPUT);
        assert_eq!(
            Failure::from(Error::NoConvergence(100)).code,
            EXIT_NUMERICAL
        );
        assert_eq!(
            Failure::from(Error::InvalidArgument("x".into())).code,
            EXIT_USAGE
        );
    }

    #[test]
    fn spectrum_of_disconnected_graph() {
        let g = WeightedGraph::from_triples(4, &[(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        let r = cmd_spectrum(&g).unwrap();
        assert_eq!(r.get("connected"), Some(&Value::Bool(false)));
        assert!(r.get("fiedler_vector").is_none());
        assert!(cmd_resistance(&g).is_err());
    }

    #[test]
    fn optimize_reports_reference() {
        let g = WeightedGraph::path(4, &[1.0; 3]).unwrap();
        let r = cmd_optimize(&g, &OptimizerConfig::default(), false).unwrap();
        let Some(Value::Float(dev)) = r.get("lambda2_deviation") else {
            panic!("missing deviation");
        };
        assert!(dev.abs() < 1e-9);
    }

    #[test]
    fn non_convergence_exits_three_unless_allowed() {
        let g = WeightedGraph::path(4, &[1.0; 3]).unwrap();
        let config = OptimizerConfig {
            max_iterations: 1,
            ..Default::default()
        };
        let failure = cmd_optimize(&g, &config, false).unwrap_err();
        assert_eq!(failure.code, EXIT_NUMERICAL);
        assert!(failure.report.is_some());
        let r = cmd_optimize(&g, &config, true).unwrap();
        assert_eq!(r.get("converged"), Some(&Value::Bool(false)));
    }
}
