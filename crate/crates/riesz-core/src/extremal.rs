//! Search for functions that push `||R_alpha^2 f||_p / ||f||_p` toward
//! its supremum.
//!
//! The ratio is scale-invariant, so the search lives on the unit
//! `L^p`-sphere: multistart projected gradient ascent with an analytic
//! gradient, a backtracking line search that only ever accepts
//! improvements, and renormalisation after every step. The supremum is
//! bounded by `p* - 1` for any admissible coefficient vector; an iterate
//! beyond that bound (plus slack) is a hard error, because it means the
//! operator or the search is broken, never that the mathematics changed.

use num_complex::Complex64;

use crate::embedding::{lp_norm, ExponentPair};
use crate::lattice::{derive_seed, GroupSpec, LatticeFunction};
use crate::operators::{
    apply_multiplier, operator_two_norm, second_riesz_symbol, CoefficientVector, MultiplierSpec,
};
use crate::par;
use crate::tolerances;
use crate::{Error, Result};

/// Multistart and line-search parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub step_init: f64,
    pub step_shrink: f64,
    pub grad_tol: f64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            restarts: 16,
            max_iters: 500,
            step_init: 0.5,
            step_shrink: 0.5,
            grad_tol: 1e-10,
            seed: 0,
        }
    }
}

/// Whether the search walks the full complex sphere or its real section.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarMode {
    Complex,
    Real,
}

/// Outcome of a search: the best ratio found, where it was attained, and
/// how far it sits below the proven bound.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub best_ratio: f64,
    pub best_function: LatticeFunction,
    /// Iterations consumed by the winning restart.
    pub iterations_used: usize,
    pub bound: f64,
    /// `bound - best_ratio`; nonnegative up to [`tolerances::BOUND_SLACK`].
    pub margin: f64,
}

/// One row of a refinement study over groups `(Z/mZ)^N`.
#[derive(Debug, Clone, Copy)]
pub struct RefinementRow {
    pub m: usize,
    pub best_ratio: f64,
    pub margin: f64,
    pub iterations: usize,
}

/// `||R_alpha^2 f||_p / ||f||_p`. Errors on the zero function.
pub fn ratio(f: &LatticeFunction, alpha: &CoefficientVector, p: f64) -> Result<f64> {
    let multiplier = second_riesz_symbol(f.group(), alpha)?;
    multiplier_ratio(f, &multiplier, p)
}

fn multiplier_ratio(f: &LatticeFunction, multiplier: &MultiplierSpec, p: f64) -> Result<f64> {
    let denominator = lp_norm(f, p)?;
    if denominator == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok(lp_norm(&apply_multiplier(f, multiplier)?, p)? / denominator)
}

/// Searches for the extremal ratio of `R_alpha^2` on `group`, gated by
/// the proven bound `p* - 1`.
pub fn ascend(
    group: &GroupSpec,
    alpha: &CoefficientVector,
    pair: &ExponentPair,
    mode: ScalarMode,
    cfg: &SearchConfig,
) -> Result<SearchResult> {
    if mode == ScalarMode::Real {
        alpha.require_real(1e-12)?;
    }
    let multiplier = second_riesz_symbol(group, alpha)?;
    ascend_multiplier(group, &multiplier, pair, pair.p_star_minus_one(), mode, cfg)
}

/// The search engine over an arbitrary multiplier with an explicit bound.
///
/// Exposed separately so tests and the fault-injection path can run the
/// same engine against a deliberately corrupted operator and watch the
/// bound check fire.
pub fn ascend_multiplier(
    group: &GroupSpec,
    multiplier: &MultiplierSpec,
    pair: &ExponentPair,
    bound: f64,
    mode: ScalarMode,
    cfg: &SearchConfig,
) -> Result<SearchResult> {
    if multiplier.group() != group {
        return Err(Error::GroupMismatch);
    }
    let adjoint = adjoint_of(multiplier);
    let outcomes: Vec<Result<RestartOutcome>> = par::map_indexed(cfg.restarts.max(1), |restart| {
        run_restart(group, multiplier, &adjoint, pair, bound, mode, cfg, restart)
    });
    let mut best: Option<RestartOutcome> = None;
    for outcome in outcomes {
        let outcome = outcome?;
        // Strict comparison keeps the lowest restart index on ties.
        let improves = match &best {
            Some(current) => outcome.ratio > current.ratio,
            None => true,
        };
        if improves {
            best = Some(outcome);
        }
    }
    let best = best.expect("at least one restart ran");
    Ok(SearchResult {
        best_ratio: best.ratio,
        margin: bound - best.ratio,
        best_function: best.function,
        iterations_used: best.iterations,
        bound,
    })
}

/// Runs [`ascend`] on `(Z/mZ)^N` for each `m`, with `N = alpha.len()`.
///
/// Coarse groups embed into their multiples by block constancy without
/// changing the ratio, so the true suprema are nondecreasing along
/// divisibility; the reported rows should reproduce that up to search
/// noise.
pub fn refinement_study(
    ms: &[usize],
    alpha: &CoefficientVector,
    pair: &ExponentPair,
    mode: ScalarMode,
    cfg: &SearchConfig,
) -> Result<Vec<RefinementRow>> {
    let mut rows = Vec::with_capacity(ms.len());
    for &m in ms {
        let group = GroupSpec::new(&vec![m; alpha.len()])?;
        let result = ascend(&group, alpha, pair, mode, cfg)?;
        rows.push(RefinementRow {
            m,
            best_ratio: result.best_ratio,
            margin: result.margin,
            iterations: result.iterations_used,
        });
    }
    Ok(rows)
}

struct RestartOutcome {
    ratio: f64,
    function: LatticeFunction,
    iterations: usize,
}

fn adjoint_of(multiplier: &MultiplierSpec) -> MultiplierSpec {
    MultiplierSpec::from_symbol(
        multiplier.group(),
        multiplier.symbol().iter().map(|s| s.conj()).collect(),
    )
    .expect("same group, same length")
}

/// Discretised low-frequency product wave, the deterministic restart
/// profile: smooth extremisers concentrate at the lowest nonzero
/// frequencies, so one restart always begins there.
fn wave_profile(group: &GroupSpec) -> LatticeFunction {
    let values = (0..group.size())
        .map(|idx| {
            let point = group.point_at(idx);
            let mut v = 1.0;
            for (axis, &c) in point.coords().iter().enumerate() {
                let m = group.orders()[axis] as f64;
                v *= (std::f64::consts::TAU * c as f64 / m).cos();
            }
            Complex64::new(v, 0.0)
        })
        .collect();
    LatticeFunction::from_values(group, values).expect("one value per point")
}

#[allow(clippy::too_many_arguments)]
fn run_restart(
    group: &GroupSpec,
    multiplier: &MultiplierSpec,
    adjoint: &MultiplierSpec,
    pair: &ExponentPair,
    bound: f64,
    mode: ScalarMode,
    cfg: &SearchConfig,
    restart: usize,
) -> Result<RestartOutcome> {
    let p = pair.p();
    let start = if restart == 0 {
        wave_profile(group)
    } else {
        let seed = derive_seed(cfg.seed, &[restart as u64]);
        match mode {
            ScalarMode::Complex => LatticeFunction::random(group, seed, true),
            ScalarMode::Real => LatticeFunction::random_real(group, seed, true),
        }
    };
    let mut f = normalized(&start, p)?;
    let mut value = checked_ratio(&f, multiplier, p, bound)?;
    let mut iterations = 0;
    for _ in 0..cfg.max_iters {
        iterations += 1;
        let direction = ratio_gradient(&f, multiplier, adjoint, p, value, mode)?;
        let scale = direction.l2_norm();
        if scale <= cfg.grad_tol {
            break;
        }
        let mut step = cfg.step_init;
        let mut improved = false;
        while step > 1e-16 {
            let candidate = step_from(&f, &direction, step / scale);
            let candidate = match normalized(&candidate, p) {
                Ok(c) => c,
                Err(_) => break,
            };
            let candidate_value = checked_ratio(&candidate, multiplier, p, bound)?;
            if candidate_value > value {
                f = candidate;
                value = candidate_value;
                improved = true;
                break;
            }
            step *= cfg.step_shrink;
        }
        if !improved {
            break;
        }
    }
    Ok(RestartOutcome {
        ratio: value,
        function: f,
        iterations,
    })
}

fn checked_ratio(
    f: &LatticeFunction,
    multiplier: &MultiplierSpec,
    p: f64,
    bound: f64,
) -> Result<f64> {
    let value = multiplier_ratio(f, multiplier, p)?;
    if value > bound + tolerances::BOUND_SLACK {
        return Err(Error::BoundViolation {
            ratio: value,
            bound,
            slack: tolerances::BOUND_SLACK,
        });
    }
    Ok(value)
}

/// Ascent direction of the ratio at a unit-norm point: the gradient of
/// `||A f||_p` pulled back through the adjoint, minus the radial
/// component `value * grad ||f||_p`.
fn ratio_gradient(
    f: &LatticeFunction,
    multiplier: &MultiplierSpec,
    adjoint: &MultiplierSpec,
    p: f64,
    value: f64,
    mode: ScalarMode,
) -> Result<LatticeFunction> {
    let u = apply_multiplier(f, multiplier)?;
    let u_norm = lp_norm(&u, p)?;
    let mut direction = if u_norm == 0.0 {
        LatticeFunction::zeros(f.group())
    } else {
        apply_multiplier(&norm_gradient(&u, p, u_norm), adjoint)?
    };
    let radial = norm_gradient(f, p, 1.0);
    for (d, r) in direction.values_mut().iter_mut().zip(radial.values()) {
        *d -= value * r;
    }
    if mode == ScalarMode::Real {
        for d in direction.values_mut() {
            *d = Complex64::new(d.re, 0.0);
        }
    }
    Ok(direction)
}

/// Gradient of `||u||_p` with respect to the real inner product:
/// `||u||_p^{1-p} |u_n|^{p-1} phase(u_n)`, with the subgradient 0 where
/// `u_n = 0`.
fn norm_gradient(u: &LatticeFunction, p: f64, u_norm: f64) -> LatticeFunction {
    let scale = u_norm.powf(1.0 - p);
    let values = u
        .values()
        .iter()
        .map(|&v| {
            let r = v.norm();
            if r == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                (v / r) * (r.powf(p - 1.0) * scale)
            }
        })
        .collect();
    LatticeFunction::from_values(u.group(), values).expect("same length")
}

fn step_from(f: &LatticeFunction, direction: &LatticeFunction, step: f64) -> LatticeFunction {
    let values = f
        .values()
        .iter()
        .zip(direction.values())
        .map(|(&a, &d)| a + d * step)
        .collect();
    LatticeFunction::from_values(f.group(), values).expect("same length")
}

fn normalized(f: &LatticeFunction, p: f64) -> Result<LatticeFunction> {
    let norm = lp_norm(f, p)?;
    if norm == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let values = f.values().iter().map(|&v| v / norm).collect();
    LatticeFunction::from_values(f.group(), values)
}

/// Exact `L^2` extremal ratio for cross-checking `p = 2` searches.
pub fn two_norm_reference(group: &GroupSpec, alpha: &CoefficientVector) -> Result<f64> {
    Ok(operator_two_norm(&second_riesz_symbol(group, alpha)?))
}
