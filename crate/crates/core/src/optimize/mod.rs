//! Maximizing algebraic connectivity at fixed total effective resistance.
//!
//! `λ₂(G; cω)·R(G; cω)` does not depend on `c`, so the constrained problem
//! is solved by maximizing the product over free positive weights and
//! rescaling afterwards so that `R` equals the unweighted graph's value.
//! The search runs on log-weights, where the scale direction is exactly flat;
//! stationarity is measured on the gradient with that direction projected out.

pub mod nelder_mead;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closedform::{CurveSample, Family};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::matrix::{dot, norm};
use crate::resistance::{kirchhoff_total, total_resistance};
use crate::spectral::{
    fiedler, fiedler_with_threshold, pseudo_inverse, spectrum, Fiedler, PseudoInverse,
    DEFAULT_DEGENERACY_RELATIVE,
};
use nelder_mead::NelderMeadOptions;

const ARMIJO: f64 = 1e-4;
const MAX_HALVINGS: usize = 40;
/// Largest drop in `λ₂·R` a line-search step may cause.
const ASCENT_SLACK: f64 = 1e-13;
/// Restart starting points are log-uniform in `[e^-RESTART_SPAN, e^RESTART_SPAN]`.
const RESTART_SPAN: f64 = 2.0;
/// Nelder–Mead simplex edge: a 5% weight perturbation.
const SIMPLEX_STEP: f64 = 0.048_790_164_169_432;
const NELDER_MEAD_EVALUATIONS: usize = 5000;
/// A Nelder–Mead restart must lower `-ln(λ₂·R)` by more than this to trigger another.
const NELDER_MEAD_RESTART_GAIN: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Projected-gradient norm (in log-weight space) declaring convergence.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Extra runs from random log-uniform starting weights.
    pub restarts: usize,
    pub seed: u64,
    /// Relative gap `(λ₃ - λ₂)/max(1, λ_n)` below which `λ₂` counts as repeated.
    pub degeneracy_threshold: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            tolerance: 1e-9,
            max_iterations: 20_000,
            restarts: 0,
            seed: 0,
            degeneracy_threshold: DEFAULT_DEGENERACY_RELATIVE,
        }
    }
}

/// Where a run started.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Start {
    Unweighted,
    Random(usize),
}

/// Outcome of one optimization run, rescaled to the unweighted budget.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub start: Start,
    pub weights: Vec<f64>,
    pub lambda2: f64,
    pub product: f64,
    pub iterations: usize,
    pub converged: bool,
    pub used_fallback: bool,
    /// `λ₂·R` at the start and after every accepted gradient step (Nelder–Mead not included).
    pub product_history: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    /// Optimal weights, scaled so that `total_resistance` equals `R` of the unweighted graph.
    pub weights: Vec<f64>,
    /// `ă(G)`: algebraic connectivity at `weights`.
    pub lambda2: f64,
    pub total_resistance: f64,
    pub product: f64,
    pub iterations: usize,
    pub converged: bool,
    pub degenerate_fiedler: bool,
    /// Nelder–Mead took over after hitting a repeated `λ₂`.
    pub used_fallback: bool,
    /// Projected log-weight gradient norm at the optimum; NaN when `λ₂` is repeated.
    pub gradient_norm: f64,
    /// Every run, the unweighted start first.
    pub runs: Vec<RunSummary>,
}

impl OptimizationResult {
    /// Largest relative deviation of a run's product from the best product.
    pub fn restart_product_spread(&self) -> f64 {
        self.runs
            .iter()
            .map(|r| (self.product - r.product).abs() / self.product)
            .fold(0.0, f64::max)
    }

    /// Largest relative deviation of any run's weights from the reported weights.
    pub fn restart_weight_spread(&self) -> f64 {
        self.runs
            .iter()
            .flat_map(|r| {
                r.weights
                    .iter()
                    .zip(&self.weights)
                    .map(|(a, b)| (a - b).abs() / b)
            })
            .fold(0.0, f64::max)
    }
}

/// `λ₂(G; ω)·R(G; ω)`.
pub fn product_objective(g: &WeightedGraph) -> Result<f64> {
    let lambda2 = fiedler(&spectrum(g)?)?.value;
    Ok(lambda2 * total_resistance(g)?)
}

/// `∂λ₂/∂ω_ij = (u_i - u_j)²/‖u‖²` for each edge, valid only for a simple `λ₂`.
pub fn gradient_lambda2(g: &WeightedGraph, f: &Fiedler) -> Result<Vec<f64>> {
    if f.degenerate {
        return Err(Error::DegenerateFiedler {
            gap: f.gap,
            threshold: f.degeneracy_threshold,
        });
    }
    let u = &f.vector;
    if u.len() != g.vertex_count() {
        return Err(Error::Mismatch(format!(
            "Fiedler vector of length {} for {} vertices",
            u.len(),
            g.vertex_count()
        )));
    }
    let uu = dot(u, u);
    Ok(g.edges()
        .iter()
        .map(|e| (u[e.u] - u[e.v]).powi(2) / uu)
        .collect())
}

/// `∂R/∂ω_ij = -n·‖L⁺(χ_i - χ_j)‖²` for each edge.
pub fn gradient_total_resistance(g: &WeightedGraph, lp: &PseudoInverse) -> Result<Vec<f64>> {
    if lp.dim() != g.vertex_count() {
        return Err(Error::Mismatch(format!(
            "pseudo-inverse of size {} for {} vertices",
            lp.dim(),
            g.vertex_count()
        )));
    }
    if !lp.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.vertex_count() as f64;
    Ok(g.edges()
        .iter()
        .map(|e| {
            let col = lp.apply_difference(e.u, e.v);
            -n * dot(&col, &col)
        })
        .collect())
}

/// Objective state at one point of log-weight space.
struct Evaluation {
    log_product: f64,
    product: f64,
    /// Scale-projected gradient of `ln(λ₂·R)` w.r.t. log-weights; `None` if `λ₂` is repeated.
    gradient: Option<Vec<f64>>,
}

impl Evaluation {
    fn at(g: &WeightedGraph, log_weights: &[f64], degeneracy: f64) -> Result<Self> {
        let weights: Vec<f64> = log_weights.iter().map(|t| t.exp()).collect();
        let g = g.with_weights(&weights)?;
        let dec = spectrum(&g)?;
        let f = fiedler_with_threshold(&dec, degeneracy)?;
        let r = kirchhoff_total(&dec)?;
        let product = f.value * r;
        let gradient = if f.degenerate {
            None
        } else {
            let dl = gradient_lambda2(&g, &f)?;
            let dr = gradient_total_resistance(&g, &pseudo_inverse(&dec))?;
            let mut grad: Vec<f64> = weights
                .iter()
                .zip(dl.iter().zip(&dr))
                .map(|(w, (a, b))| w * (a / f.value + b / r))
                .collect();
            let mean = grad.iter().sum::<f64>() / grad.len() as f64;
            grad.iter_mut().for_each(|x| *x -= mean);
            Some(grad)
        };
        Ok(Evaluation {
            log_product: product.ln(),
            product,
            gradient,
        })
    }
}

struct RunOutcome {
    log_weights: Vec<f64>,
    iterations: usize,
    converged: bool,
    used_fallback: bool,
    history: Vec<f64>,
}

fn ascend(g: &WeightedGraph, start: Vec<f64>, config: &OptimizerConfig) -> Result<RunOutcome> {
    let degeneracy = config.degeneracy_threshold;
    let mut theta = start;
    let mut current = Evaluation::at(g, &theta, degeneracy)?;
    let mut iterations = 0;
    let mut history = vec![current.product];
    loop {
        let Some(grad) = current.gradient.as_ref() else {
            return nelder_mead_fallback(g, theta, iterations, degeneracy, history);
        };
        let gnorm = norm(grad);
        if gnorm <= config.tolerance {
            return Ok(RunOutcome {
                log_weights: theta,
                iterations,
                converged: true,
                used_fallback: false,
                history,
            });
        }
        if iterations >= config.max_iterations {
            break;
        }
        iterations += 1;

        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..=MAX_HALVINGS {
            let candidate: Vec<f64> = theta.iter().zip(grad).map(|(t, d)| t + step * d).collect();
            let eval = Evaluation::at(g, &candidate, degeneracy)?;
            let armijo = eval.log_product >= current.log_product + ARMIJO * step * gnorm * gnorm;
            // below ~1e-8 the objective change sits at rounding level; accept
            // steps that shrink the gradient without a measurable loss
            let flat_progress = eval.product >= current.product - ASCENT_SLACK
                && eval.gradient.as_ref().is_some_and(|d| norm(d) < gnorm);
            if armijo || flat_progress {
                accepted = Some((candidate, eval));
                break;
            }
            step *= 0.5;
        }
        match accepted {
            Some((candidate, eval)) => {
                theta = candidate;
                current = eval;
                history.push(current.product);
            }
            None => break,
        }
    }
    Ok(RunOutcome {
        log_weights: theta,
        iterations,
        converged: false,
        used_fallback: false,
        history,
    })
}

fn nelder_mead_fallback(
    g: &WeightedGraph,
    theta: Vec<f64>,
    iterations: usize,
    degeneracy: f64,
    history: Vec<f64>,
) -> Result<RunOutcome> {
    // search the sum-zero slice of log-weight space: the last coordinate is
    // minus the sum of the others, removing the flat scale direction
    let m = theta.len();
    let mean = theta.iter().sum::<f64>() / m as f64;
    let centered: Vec<f64> = theta.iter().map(|t| t - mean).collect();
    let lift = |x: &[f64]| -> Vec<f64> {
        let mut full = x.to_vec();
        full.push(-x.iter().sum::<f64>());
        full
    };
    let objective = |x: &[f64]| match Evaluation::at(g, &lift(x), degeneracy) {
        Ok(e) => -e.log_product,
        Err(_) => f64::INFINITY,
    };

    // a collapsed simplex on the non-smooth ridge of a repeated λ₂ is
    // restarted from its best vertex until restarts stop paying off
    let mut x = centered[..m - 1].to_vec();
    let mut value = objective(&x);
    let mut evaluations = 1;
    let mut converged = false;
    while evaluations < NELDER_MEAD_EVALUATIONS {
        let opts = NelderMeadOptions {
            max_evaluations: NELDER_MEAD_EVALUATIONS - evaluations,
            ..Default::default()
        };
        let res = nelder_mead::minimize(objective, &x, &vec![SIMPLEX_STEP; m - 1], opts);
        evaluations += res.evaluations;
        let improvement = value - res.value;
        if res.value < value {
            x = res.x;
            value = res.value;
        }
        if !res.converged {
            break;
        }
        if improvement <= NELDER_MEAD_RESTART_GAIN {
            converged = true;
            break;
        }
    }
    Ok(RunOutcome {
        log_weights: lift(&x),
        iterations: iterations + evaluations,
        converged,
        used_fallback: true,
        history,
    })
}

/// Weights scaled so that `R` equals `budget`; returns the rescaled graph.
fn rescale_to_budget(g: &WeightedGraph, budget: f64) -> Result<WeightedGraph> {
    let r = total_resistance(g)?;
    g.scaled(r / budget)
}

/// Maximizes `λ₂` over positive weights with `R(G; ω) = R(G)` of the unweighted graph.
///
/// Runs gradient ascent from unit weights and from `config.restarts` random
/// starts; the best product wins (earlier runs win ties). Deterministic for a
/// fixed config.
pub fn maximize_connectivity(
    g: &WeightedGraph,
    config: &OptimizerConfig,
) -> Result<OptimizationResult> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let m = g.edge_count();
    let budget = total_resistance(&g.unweighted())?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut starts = vec![(Start::Unweighted, vec![0.0; m])];
    for k in 0..config.restarts {
        let theta = (0..m)
            .map(|_| rng.random_range(-RESTART_SPAN..=RESTART_SPAN))
            .collect();
        starts.push((Start::Random(k), theta));
    }

    let mut runs = Vec::with_capacity(starts.len());
    for (start, theta) in starts {
        let outcome = ascend(g, theta, config)?;
        let weights: Vec<f64> = outcome.log_weights.iter().map(|t| t.exp()).collect();
        let scaled = rescale_to_budget(&g.with_weights(&weights)?, budget)?;
        let lambda2 =
            fiedler_with_threshold(&spectrum(&scaled)?, config.degeneracy_threshold)?.value;
        runs.push(RunSummary {
            start,
            weights: scaled.weights(),
            lambda2,
            product: lambda2 * total_resistance(&scaled)?,
            iterations: outcome.iterations,
            converged: outcome.converged,
            used_fallback: outcome.used_fallback,
            product_history: outcome.history,
        });
    }

    let best = runs.iter().enumerate().fold(0, |best, (k, run)| {
        if run.product > runs[best].product + 1e-12 {
            k
        } else {
            best
        }
    });
    let winner = runs[best].clone();
    let optimal = g.with_weights(&winner.weights)?;
    let dec = spectrum(&optimal)?;
    let f = fiedler_with_threshold(&dec, config.degeneracy_threshold)?;
    let total = total_resistance(&optimal)?;
    let gradient_norm = if f.degenerate {
        f64::NAN
    } else {
        let log_w: Vec<f64> = winner.weights.iter().map(|w| w.ln()).collect();
        let eval = Evaluation::at(g, &log_w, config.degeneracy_threshold)?;
        eval.gradient.as_deref().map_or(f64::NAN, norm)
    };
    Ok(OptimizationResult {
        weights: winner.weights,
        lambda2: f.value,
        total_resistance: total,
        product: f.value * total,
        iterations: winner.iterations,
        converged: winner.converged,
        degenerate_fiedler: f.degenerate,
        used_fallback: winner.used_fallback,
        gradient_norm,
        runs,
    })
}

/// One sweep grid point: the closed-form sample next to the eigensolver value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub closed: CurveSample,
    pub lambda2_numeric: f64,
}

impl SweepPoint {
    pub fn r(&self) -> f64 {
        self.closed.r
    }

    /// Closed form minus eigensolver.
    pub fn delta(&self) -> f64 {
        self.closed.lambda2 - self.lambda2_numeric
    }
}

/// Samples a closed-form curve on `steps` uniform interior grid points and
/// recomputes each value with the eigensolver.
pub fn sweep_curve(family: Family, steps: usize) -> Result<Vec<SweepPoint>> {
    if steps < 2 {
        return Err(Error::InvalidArgument(format!(
            "sweep needs at least 2 steps, got {steps}"
        )));
    }
    family
        .grid(steps)
        .into_iter()
        .map(|r| {
            let closed = family.sample(r)?;
            let g = WeightedGraph::path(family.vertex_count(), &family.weights(r)?)?;
            let lambda2_numeric = fiedler(&spectrum(&g)?)?.value;
            Ok(SweepPoint {
                closed,
                lambda2_numeric,
            })
        })
        .collect()
}
