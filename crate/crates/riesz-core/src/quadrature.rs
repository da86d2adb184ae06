//! Quadrature for integrals `int_0^inf s(t) dt` of heat-decayed
//! quantities.
//!
//! The finite part `[0, t_max]` is split into geometric panels (each twice
//! the width of the one before, concentrating nodes near `t = 0` where the
//! integrand varies fastest) carrying a Gauss-Legendre rule. The infinite
//! tail is never sampled: callers certify an envelope
//! `|s(t)| <= amplitude * exp(-rate * t)`, which bounds the discarded tail
//! by `amplitude * exp(-rate * t_max) / rate`. A spec whose tail bound
//! misses its own tolerance is rejected up front, reporting the `t_max`
//! that would suffice.

use std::f64::consts::PI;

use crate::par;
use crate::{Error, Result};

/// Panel layout and tail tolerance for the time integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Right endpoint of the sampled window `[0, t_max]`.
    pub t_max: f64,
    /// Number of geometric panels.
    pub panels: usize,
    /// Gauss-Legendre nodes per panel.
    pub nodes_per_panel: usize,
    /// Largest discarded tail the caller will accept.
    pub tail_tolerance: f64,
}

pub const DEFAULT_PANELS: usize = 24;
pub const DEFAULT_NODES_PER_PANEL: usize = 12;
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-12;

impl QuadratureSpec {
    pub fn new(
        t_max: f64,
        panels: usize,
        nodes_per_panel: usize,
        tail_tolerance: f64,
    ) -> Result<Self> {
        // `is_finite` first: the combined test also rejects NaN.
        if !t_max.is_finite() || t_max <= 0.0 {
            return Err(Error::QuadratureDegenerate {
                reason: format!("t_max must be positive and finite, got {t_max}"),
            });
        }
        if panels == 0 || nodes_per_panel == 0 {
            return Err(Error::QuadratureDegenerate {
                reason: "panels and nodes_per_panel must be at least 1".into(),
            });
        }
        if !(tail_tolerance.is_finite() && tail_tolerance > 0.0) {
            return Err(Error::QuadratureDegenerate {
                reason: format!("tail_tolerance must be positive and finite, got {tail_tolerance}"),
            });
        }
        Ok(QuadratureSpec {
            t_max,
            panels,
            nodes_per_panel,
            tail_tolerance,
        })
    }

    /// Default layout sized for `envelope`: `t_max` is the smallest window
    /// whose certified tail meets `tail_tolerance`.
    ///
    /// A tolerance at or above the whole-line bound `amplitude / rate`
    /// asks for a window of nonpositive width; that spec is degenerate and
    /// is rejected rather than silently clamped.
    pub fn for_envelope(
        envelope: &TailEnvelope,
        panels: usize,
        nodes_per_panel: usize,
        tail_tolerance: f64,
    ) -> Result<Self> {
        if envelope.amplitude == 0.0 {
            // The integrand vanishes; any window works.
            return Self::new(1.0, panels, nodes_per_panel, tail_tolerance);
        }
        let required = envelope.required_t_max(tail_tolerance);
        if !(required.is_finite() && required > 0.0) {
            return Err(Error::QuadratureDegenerate {
                reason: format!(
                    "tail_tolerance {tail_tolerance} already exceeds the whole-integral bound {}; \
                     required t_max {required} is not positive",
                    envelope.amplitude / envelope.rate
                ),
            });
        }
        Self::new(required, panels, nodes_per_panel, tail_tolerance)
    }

    /// Panel boundaries `0 = t_0 < t_1 < ... < t_P = t_max` with
    /// geometrically doubling widths.
    fn panel_edges(&self) -> Vec<f64> {
        let denom = (2f64.powi(self.panels as i32)) - 1.0;
        (0..=self.panels)
            .map(|k| self.t_max * ((2f64.powi(k as i32)) - 1.0) / denom)
            .collect()
    }
}

/// Panel counts and tail tolerance chosen up front, before the integrand
/// (and hence the decay envelope) is known. [`QuadratureLayout::resolve`]
/// turns it into a concrete [`QuadratureSpec`] once the envelope is
/// available, sizing `t_max` to the data unless the caller pinned it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureLayout {
    pub panels: usize,
    pub nodes_per_panel: usize,
    pub tail_tolerance: f64,
    /// Overrides the envelope-derived window when set.
    pub t_max_override: Option<f64>,
}

impl Default for QuadratureLayout {
    fn default() -> Self {
        QuadratureLayout {
            panels: DEFAULT_PANELS,
            nodes_per_panel: DEFAULT_NODES_PER_PANEL,
            tail_tolerance: DEFAULT_TAIL_TOLERANCE,
            t_max_override: None,
        }
    }
}

impl QuadratureLayout {
    pub fn resolve(&self, envelope: &TailEnvelope) -> Result<QuadratureSpec> {
        match self.t_max_override {
            Some(t_max) => QuadratureSpec::new(
                t_max,
                self.panels,
                self.nodes_per_panel,
                self.tail_tolerance,
            ),
            None => QuadratureSpec::for_envelope(
                envelope,
                self.panels,
                self.nodes_per_panel,
                self.tail_tolerance,
            ),
        }
    }
}

/// Exponential envelope `|s(t)| <= amplitude * exp(-rate * t)` certifying
/// the discarded tail of the time integral.
#[derive(Debug, Clone, Copy)]
pub struct TailEnvelope {
    pub amplitude: f64,
    pub rate: f64,
}

impl TailEnvelope {
    pub fn new(amplitude: f64, rate: f64) -> Self {
        debug_assert!(amplitude >= 0.0 && rate > 0.0);
        TailEnvelope { amplitude, rate }
    }

    /// Bound on `int_t^inf |s|`.
    pub fn tail_bound(&self, t: f64) -> f64 {
        self.amplitude * (-self.rate * t).exp() / self.rate
    }

    /// Smallest `t_max` with `tail_bound(t_max) <= tolerance`, padded by
    /// a sliver of extra decay (1e-9 relative) so that recomputing the
    /// bound at the returned time stays under `tolerance` in floating
    /// point instead of straddling it by an ulp.
    pub fn required_t_max(&self, tolerance: f64) -> f64 {
        (self.amplitude / (self.rate * tolerance)).ln() / self.rate + 1e-9 / self.rate
    }
}

/// Result of a time integral: the panel sum over `[0, t_max]` and the
/// certified bound on what the tail could have added.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureValue<T> {
    pub value: T,
    pub tail_bound: f64,
}

/// Scalar types a quadrature rule can accumulate.
pub trait Accumulate:
    Copy + Default + std::ops::AddAssign + std::ops::Mul<f64, Output = Self> + Send
{
}
impl<T> Accumulate for T where
    T: Copy + Default + std::ops::AddAssign + std::ops::Mul<f64, Output = T> + Send
{
}

/// Integrates `integrand` over `[0, spec.t_max]`, first checking that the
/// envelope's tail at `t_max` meets `spec.tail_tolerance`.
///
/// Nodes evaluate concurrently; the weighted sum always runs in ascending
/// `t` order, so the result is independent of scheduling.
pub fn time_quadrature<T, F>(
    integrand: F,
    spec: &QuadratureSpec,
    envelope: &TailEnvelope,
) -> Result<QuadratureValue<T>>
where
    T: Accumulate,
    F: Fn(f64) -> T + Send + Sync,
{
    let tail_bound = envelope.tail_bound(spec.t_max);
    if tail_bound > spec.tail_tolerance {
        return Err(Error::QuadratureInfeasible {
            tail_bound,
            tolerance: spec.tail_tolerance,
            required_t_max: envelope.required_t_max(spec.tail_tolerance),
        });
    }
    let (nodes, weights) = gauss_legendre(spec.nodes_per_panel);
    let edges = spec.panel_edges();
    let mut points = Vec::with_capacity(spec.panels * spec.nodes_per_panel);
    for k in 0..spec.panels {
        let (a, b) = (edges[k], edges[k + 1]);
        let half = (b - a) / 2.0;
        let mid = (a + b) / 2.0;
        for (&x, &w) in nodes.iter().zip(&weights) {
            points.push((mid + half * x, half * w));
        }
    }
    let samples = par::map_indexed(points.len(), |i| integrand(points[i].0));
    let mut value = T::default();
    for (sample, &(_, w)) in samples.into_iter().zip(&points) {
        value += sample * w;
    }
    Ok(QuadratureValue { value, tail_bound })
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`,
/// by Newton iteration on the Legendre recurrence. Exact for polynomials
/// of degree `2n - 1`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "a quadrature rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi's approximation to the i-th root, then Newton.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-15 {
                let (_, d_final) = legendre_with_derivative(n, x);
                dp = d_final;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let (_, d) = legendre_with_derivative(n, 0.0);
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p_next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
        p_prev = p;
        p = p_next;
    }
    let d = if (x * x - 1.0).abs() < 1e-300 {
        // Endpoint derivative, from the closed form n(n+1)/2 with sign.
        let n = n as f64;
        x.signum().powi(n as i32 + 1) * n * (n + 1.0) / 2.0
    } else {
        (n as f64) * (x * p - p_prev) / (x * x - 1.0)
    };
    (p, d)
}
