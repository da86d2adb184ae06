//! The representation identity and the bilinear inequalities.
//!
//! For mean-zero data the pairing against a single second-order Riesz
//! transform has a heat-flow representation:
//!
//! ```text
//! (f, R_j^2 g) = -2 int_0^inf sum_n d+_j P_t f(n) conj(d+_j P_t g(n)) dt.
//! ```
//!
//! Taking absolute values inside and summing over axes gives the bilinear
//! form that the inequalities control:
//!
//! ```text
//! 2 sum_j int_0^inf sum_n |d+_j P_t f| |d+_j P_t g| dt
//!     <= (p* - 1) ||f||_p ||g||_q,       p* = max(p, q),
//! ```
//!
//! and, for real-valued data with the product split into its positive or
//! negative part, the same left side is also controlled by the Choi
//! constant, for which this module evaluates the classical three-term
//! expansion `p/2 + (1/2) log((1+e^{-2})/2) + beta_2 / p`. The expansion
//! is a reference value; every gate in this crate compares against the
//! rigorous `p* - 1`.

use num_complex::Complex64;

use crate::heat::{spectral_gap, HeatExtension};
use crate::lattice::{GroupSpec, LatticeFunction, Side};
use crate::operators::{apply_multiplier, partial_spatial, riesz2_symbol};
use crate::par;
use crate::quadrature::{time_quadrature, QuadratureLayout, QuadratureValue, TailEnvelope};
use crate::{Error, Result};

/// A Hoelder-conjugate pair `1/p + 1/q = 1` with `1 < p < inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPair {
    p: f64,
    q: f64,
}

impl ExponentPair {
    pub fn new(p: f64) -> Result<Self> {
        // `is_finite` first: the combined test also rejects NaN.
        if !p.is_finite() || p <= 1.0 {
            return Err(Error::InvalidExponent { p });
        }
        Ok(ExponentPair {
            p,
            q: p / (p - 1.0),
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn p_star(&self) -> f64 {
        self.p.max(self.q)
    }

    /// `max(p - 1, 1/(p - 1))`, the sharp constant of the bilinear
    /// inequality.
    pub fn p_star_minus_one(&self) -> f64 {
        (self.p - 1.0).max(1.0 / (self.p - 1.0))
    }
}

/// `sum_n f(n) conj(g(n))`.
pub fn inner(f: &LatticeFunction, g: &LatticeFunction) -> Result<Complex64> {
    if f.group() != g.group() {
        return Err(Error::GroupMismatch);
    }
    Ok(f.values()
        .iter()
        .zip(g.values())
        .map(|(a, b)| a * b.conj())
        .sum())
}

/// `(sum_n |f(n)|^p)^{1/p}` under counting measure; `p = inf` gives the
/// sup norm. Scaled by the largest entry so large `p` cannot overflow.
pub fn lp_norm(f: &LatticeFunction, p: f64) -> Result<f64> {
    if p < 1.0 || p.is_nan() {
        return Err(Error::InvalidNormExponent { p });
    }
    let peak = f.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return Ok(0.0);
    }
    if p.is_infinite() {
        return Ok(peak);
    }
    let sum: f64 = f.values().iter().map(|v| (v.norm() / peak).powf(p)).sum();
    Ok(peak * sum.powf(1.0 / p))
}

/// `log((1 + e^{-2}) / 2)`, the coefficient behind the constant term of
/// the Choi expansion.
pub fn choi_log_term() -> f64 {
    ((1.0 + (-2.0f64).exp()) / 2.0).ln()
}

/// Second-order coefficient `beta_2` of the Choi expansion.
pub fn choi_beta2() -> f64 {
    let l = choi_log_term();
    let logistic = (-2.0f64).exp() / (1.0 + (-2.0f64).exp());
    l * l + l / 2.0 - 2.0 * logistic * logistic
}

/// Three-term expansion of the Choi constant,
/// `p/2 + (1/2) log((1+e^{-2})/2) + beta_2 / p`.
///
/// The expansion is asymptotic in large `p`; treat values for `p < 2` as
/// out of range.
pub fn choi_c01_approx(p: f64) -> f64 {
    p / 2.0 + choi_log_term() / 2.0 + choi_beta2() / p
}

/// Heat flows of a mean-removed pair, with everything the integrands
/// need: cached spectra, the decay envelope, and the removed means.
struct PairFlow {
    f: HeatExtension,
    g: HeatExtension,
    group: GroupSpec,
    f_l2: f64,
    g_l2: f64,
    gap: f64,
    removed_f_mean: f64,
    removed_g_mean: f64,
}

impl PairFlow {
    fn new(f: &LatticeFunction, g: &LatticeFunction) -> Result<Self> {
        if f.group() != g.group() {
            return Err(Error::GroupMismatch);
        }
        let removed_f_mean = f.mean().norm();
        let removed_g_mean = g.mean().norm();
        if removed_f_mean > 0.0 || removed_g_mean > 0.0 {
            log::debug!(
                "removing means before the heat flow: |mean f| = {removed_f_mean:.3e}, \
                 |mean g| = {removed_g_mean:.3e}"
            );
        }
        let f0 = f.sub_mean();
        let g0 = g.sub_mean();
        Ok(PairFlow {
            f_l2: f0.l2_norm(),
            g_l2: g0.l2_norm(),
            gap: spectral_gap(f.group()),
            group: f.group().clone(),
            f: HeatExtension::new(&f0),
            g: HeatExtension::new(&g0),
            removed_f_mean,
            removed_g_mean,
        })
    }

    /// Envelope for integrands summing over `axes` gradient pairings:
    /// each one-sided gradient of a mean-zero heat flow is bounded by
    /// `2 exp(-gap t)` times the initial L2 norm, so the product with its
    /// prefactor 2 decays like `8 * axes * ||f||_2 ||g||_2 exp(-2 gap t)`.
    fn envelope(&self, axes: usize) -> TailEnvelope {
        TailEnvelope::new(8.0 * axes as f64 * self.f_l2 * self.g_l2, 2.0 * self.gap)
    }

    fn fields_at(&self, t: f64) -> (LatticeFunction, LatticeFunction) {
        let ft = self.f.at(t).expect("quadrature nodes are nonnegative");
        let gt = self.g.at(t).expect("quadrature nodes are nonnegative");
        (ft, gt)
    }
}

/// Both evaluation routes of the representation identity along one axis,
/// with the certified quadrature tail.
#[derive(Debug, Clone, Copy)]
pub struct RepresentationReport {
    /// Heat-flow side: `-2 int sum_n d+ P_t f conj(d+ P_t g) dt`.
    pub quadrature: Complex64,
    /// Frequency side: `(f, R_j^2 g)`.
    pub spectral: Complex64,
    /// Distance between the two routes.
    pub abs_error: f64,
    /// Bound on what the discarded quadrature tail could contribute.
    pub tail_bound: f64,
    /// Magnitude of the mean removed from `f` before the flow. Mean
    /// removal is invisible to both routes; it is recorded, not silent.
    pub removed_f_mean: f64,
    /// Magnitude of the mean removed from `g` before the flow.
    pub removed_g_mean: f64,
}

/// Evaluates `(f, R_axis^2 g)` by heat-flow quadrature and by the exact
/// frequency-side pairing, reporting both.
///
/// Means are removed from both arguments before the flow; this is
/// invisible to either route (gradients and the zero-at-zero symbol kill
/// constants) but keeps the quadrature from dragging a non-decaying
/// component through every node.
pub fn representation_pairing(
    f: &LatticeFunction,
    g: &LatticeFunction,
    axis: usize,
    layout: &QuadratureLayout,
) -> Result<RepresentationReport> {
    f.group().check_axis(axis)?;
    let flow = PairFlow::new(f, g)?;
    let envelope = flow.envelope(1);
    let spec = layout.resolve(&envelope)?;
    let quad = time_quadrature(
        |t| {
            let (ft, gt) = flow.fields_at(t);
            let df = partial_spatial(&ft, axis, Side::Plus).expect("axis checked above");
            let dg = partial_spatial(&gt, axis, Side::Plus).expect("axis checked above");
            let pairing: Complex64 = df
                .values()
                .iter()
                .zip(dg.values())
                .map(|(a, b)| a * b.conj())
                .sum();
            pairing * -2.0
        },
        &spec,
        &envelope,
    )?;
    let spectral = inner(f, &apply_multiplier(g, &riesz2_symbol(f.group(), axis)?)?)?;
    Ok(RepresentationReport {
        quadrature: quad.value,
        spectral,
        abs_error: (quad.value - spectral).norm(),
        tail_bound: quad.tail_bound,
        removed_f_mean: flow.removed_f_mean,
        removed_g_mean: flow.removed_g_mean,
    })
}

/// Left side of the bilinear inequality:
/// `2 sum_j int_0^inf sum_n |d+_j P_t f| |d+_j P_t g| dt`.
pub fn bilinear_lhs(
    f: &LatticeFunction,
    g: &LatticeFunction,
    layout: &QuadratureLayout,
) -> Result<QuadratureValue<f64>> {
    let flow = PairFlow::new(f, g)?;
    let dims = flow.group.dims();
    let envelope = flow.envelope(dims);
    let spec = layout.resolve(&envelope)?;
    time_quadrature(
        |t| {
            let (ft, gt) = flow.fields_at(t);
            let mut total = 0.0;
            for axis in 0..dims {
                let df = partial_spatial(&ft, axis, Side::Plus).expect("axis in range");
                let dg = partial_spatial(&gt, axis, Side::Plus).expect("axis in range");
                total += df
                    .values()
                    .iter()
                    .zip(dg.values())
                    .map(|(a, b)| a.norm() * b.norm())
                    .sum::<f64>();
            }
            2.0 * total
        },
        &spec,
        &envelope,
    )
}

/// Positive and negative parts of the signed bilinear form, accumulated
/// together from the same nodes.
#[derive(Debug, Clone, Copy, Default)]
pub struct SignedLhs {
    pub plus: f64,
    pub minus: f64,
}

impl std::ops::AddAssign for SignedLhs {
    fn add_assign(&mut self, rhs: Self) {
        self.plus += rhs.plus;
        self.minus += rhs.minus;
    }
}

impl std::ops::Mul<f64> for SignedLhs {
    type Output = SignedLhs;
    fn mul(self, rhs: f64) -> SignedLhs {
        // Quadrature weights are positive, so scaling cannot mix parts.
        SignedLhs {
            plus: self.plus * rhs,
            minus: self.minus * rhs,
        }
    }
}

/// Left sides of the signed-part inequality for real data:
/// `2 sum_j int sum_n [d+_j P_t f * d+_j P_t g]_{+-} dt`, both signs at
/// once.
pub fn choi_lhs_parts(
    f: &LatticeFunction,
    g: &LatticeFunction,
    layout: &QuadratureLayout,
) -> Result<QuadratureValue<SignedLhs>> {
    for (index, v) in f.values().iter().enumerate() {
        if v.im.abs() > 1e-12 {
            return Err(Error::NotRealValued {
                index,
                imaginary: v.im,
            });
        }
    }
    for (index, v) in g.values().iter().enumerate() {
        if v.im.abs() > 1e-12 {
            return Err(Error::NotRealValued {
                index,
                imaginary: v.im,
            });
        }
    }
    let flow = PairFlow::new(f, g)?;
    let dims = flow.group.dims();
    let envelope = flow.envelope(dims);
    let spec = layout.resolve(&envelope)?;
    time_quadrature(
        |t| {
            let (ft, gt) = flow.fields_at(t);
            let mut parts = SignedLhs::default();
            for axis in 0..dims {
                let df = partial_spatial(&ft, axis, Side::Plus).expect("axis in range");
                let dg = partial_spatial(&gt, axis, Side::Plus).expect("axis in range");
                for (a, b) in df.values().iter().zip(dg.values()) {
                    let product = a.re * b.re;
                    if product >= 0.0 {
                        parts.plus += product;
                    } else {
                        parts.minus -= product;
                    }
                }
            }
            parts * 2.0
        },
        &spec,
        &envelope,
    )
}

/// One verified instance of a bilinear inequality.
#[derive(Debug, Clone, Copy)]
pub struct EmbeddingReport {
    /// Quadrature value of the left side.
    pub lhs: f64,
    /// Constant on the right side.
    pub rhs_constant: f64,
    /// `||f||_p ||g||_q`.
    pub rhs_norms: f64,
    /// `lhs / (rhs_constant * rhs_norms)`; at most 1 when the inequality
    /// holds, 0 for zero data.
    pub ratio: f64,
    /// Certified bound on the discarded quadrature tail.
    pub quadrature_tail: f64,
}

fn assemble_report(
    lhs: &QuadratureValue<f64>,
    f: &LatticeFunction,
    g: &LatticeFunction,
    pair: &ExponentPair,
    rhs_constant: f64,
) -> Result<EmbeddingReport> {
    let rhs_norms = lp_norm(f, pair.p())? * lp_norm(g, pair.q())?;
    let denominator = rhs_constant * rhs_norms;
    let ratio = if lhs.value == 0.0 {
        0.0
    } else {
        lhs.value / denominator
    };
    Ok(EmbeddingReport {
        lhs: lhs.value,
        rhs_constant,
        rhs_norms,
        ratio,
        quadrature_tail: lhs.tail_bound,
    })
}

/// Checks the bilinear inequality with the sharp constant `p* - 1` for
/// one pair of functions.
pub fn bilinear_embedding_check(
    f: &LatticeFunction,
    g: &LatticeFunction,
    pair: &ExponentPair,
    layout: &QuadratureLayout,
) -> Result<EmbeddingReport> {
    let lhs = bilinear_lhs(f, g, layout)?;
    assemble_report(&lhs, f, g, pair, pair.p_star_minus_one())
}

/// A signed-part check: the gate compares against the rigorous `p* - 1`;
/// the Choi expansion value rides along as a reference.
#[derive(Debug, Clone, Copy)]
pub struct ChoiReport {
    /// Verified against `p* - 1`.
    pub rigorous: EmbeddingReport,
    /// Three-term expansion of the Choi constant (reference only).
    pub choi_constant: f64,
    /// `lhs / (choi_constant * rhs_norms)`, for the record.
    pub ratio_vs_choi: f64,
}

fn choi_report_from_part(
    part: f64,
    tail: f64,
    f: &LatticeFunction,
    g: &LatticeFunction,
    pair: &ExponentPair,
) -> Result<ChoiReport> {
    let value = QuadratureValue {
        value: part,
        tail_bound: tail,
    };
    let rigorous = assemble_report(&value, f, g, pair, pair.p_star_minus_one())?;
    let choi_constant = choi_c01_approx(pair.p());
    let ratio_vs_choi = if rigorous.lhs == 0.0 {
        0.0
    } else {
        rigorous.lhs / (choi_constant * rigorous.rhs_norms)
    };
    Ok(ChoiReport {
        rigorous,
        choi_constant,
        ratio_vs_choi,
    })
}

/// Signed-part inequality for real data, one sign.
pub fn choi_embedding_check(
    f: &LatticeFunction,
    g: &LatticeFunction,
    pair: &ExponentPair,
    sign: Side,
    layout: &QuadratureLayout,
) -> Result<ChoiReport> {
    let parts = choi_lhs_parts(f, g, layout)?;
    let part = match sign {
        Side::Plus => parts.value.plus,
        Side::Minus => parts.value.minus,
    };
    choi_report_from_part(part, parts.tail_bound, f, g, pair)
}

/// Signed-part inequality for real data, both signs from one quadrature
/// pass.
pub fn choi_embedding_both(
    f: &LatticeFunction,
    g: &LatticeFunction,
    pair: &ExponentPair,
    layout: &QuadratureLayout,
) -> Result<(ChoiReport, ChoiReport)> {
    let parts = choi_lhs_parts(f, g, layout)?;
    Ok((
        choi_report_from_part(parts.value.plus, parts.tail_bound, f, g, pair)?,
        choi_report_from_part(parts.value.minus, parts.tail_bound, f, g, pair)?,
    ))
}

/// One row of a representation-identity batch.
#[derive(Debug, Clone, Copy)]
pub struct RepresentationTrial {
    pub trial: usize,
    pub axis: usize,
    pub report: RepresentationReport,
}

/// Runs `trials` seeded mean-zero random pairs through
/// [`representation_pairing`], cycling the axis with the trial index.
/// Trials run in parallel; each derives its own seed, so the output is
/// a deterministic function of (`group`, `trials`, `seed`).
pub fn batch_representation(
    group: &GroupSpec,
    trials: usize,
    seed: u64,
    layout: &QuadratureLayout,
) -> Result<Vec<RepresentationTrial>> {
    let dims = group.dims();
    par::try_map_indexed(trials, |trial| {
        let f = LatticeFunction::random(
            group,
            crate::lattice::derive_seed(seed, &[trial as u64, 0]),
            true,
        );
        let g = LatticeFunction::random(
            group,
            crate::lattice::derive_seed(seed, &[trial as u64, 1]),
            true,
        );
        let axis = trial % dims;
        Ok(RepresentationTrial {
            trial,
            axis,
            report: representation_pairing(&f, &g, axis, layout)?,
        })
    })
}

/// Runs `trials` seeded random complex pairs through
/// [`bilinear_embedding_check`].
pub fn batch_bilinear(
    group: &GroupSpec,
    trials: usize,
    seed: u64,
    pair: &ExponentPair,
    layout: &QuadratureLayout,
) -> Result<Vec<EmbeddingReport>> {
    par::try_map_indexed(trials, |trial| {
        let f = LatticeFunction::random(
            group,
            crate::lattice::derive_seed(seed, &[trial as u64, 0]),
            true,
        );
        let g = LatticeFunction::random(
            group,
            crate::lattice::derive_seed(seed, &[trial as u64, 1]),
            true,
        );
        bilinear_embedding_check(&f, &g, pair, layout)
    })
}

/// Runs `trials` seeded random real pairs through both signed-part
/// checks.
pub fn batch_choi(
    group: &GroupSpec,
    trials: usize,
    seed: u64,
    pair: &ExponentPair,
    layout: &QuadratureLayout,
) -> Result<Vec<(ChoiReport, ChoiReport)>> {
    par::try_map_indexed(trials, |trial| {
        let f = LatticeFunction::random_real(
            group,
            crate::lattice::derive_seed(seed, &[trial as u64, 0]),
            true,
        );
        let g = LatticeFunction::random_real(
            group,
            crate::lattice::derive_seed(seed, &[trial as u64, 1]),
            true,
        );
        choi_embedding_both(&f, &g, pair, layout)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::CoefficientVector;
    use crate::tolerances;

    fn layout() -> QuadratureLayout {
        QuadratureLayout::default()
    }

    #[test]
    fn conjugate_exponents_pair_up() {
        let pair = ExponentPair::new(4.0).unwrap();
        assert!((pair.q() - 4.0 / 3.0).abs() <= 1e-15);
        assert_eq!(pair.p_star(), 4.0);
        for p in [1.1, 1.5, 2.0, 3.0, 17.0, 99.0] {
            let pair = ExponentPair::new(p).unwrap();
            assert!((1.0 / pair.p() + 1.0 / pair.q() - 1.0).abs() <= 1e-14);
        }
        assert!(ExponentPair::new(1.0).is_err());
        assert!(ExponentPair::new(0.5).is_err());
        assert!(ExponentPair::new(f64::INFINITY).is_err());
    }

    #[test]
    fn sharp_constant_is_symmetric_in_the_pair() {
        for p in [1.2, 1.5, 2.0, 3.0, 8.0] {
            let pair = ExponentPair::new(p).unwrap();
            let dual = ExponentPair::new(pair.q()).unwrap();
            assert!((pair.p_star_minus_one() - dual.p_star_minus_one()).abs() <= 1e-12);
        }
        assert_eq!(ExponentPair::new(2.0).unwrap().p_star_minus_one(), 1.0);
        assert_eq!(ExponentPair::new(4.0).unwrap().p_star_minus_one(), 3.0);
    }

    #[test]
    fn norms_interpolate_between_one_and_sup() {
        let g = GroupSpec::new(&[4, 4]).unwrap();
        let f = LatticeFunction::random(&g, 2, false);
        let one = lp_norm(&f, 1.0).unwrap();
        let two = lp_norm(&f, 2.0).unwrap();
        let sup = lp_norm(&f, f64::INFINITY).unwrap();
        assert!(sup <= two && two <= one);
        assert!((two - f.l2_norm()).abs() <= 1e-13);
        assert!(lp_norm(&f, 0.5).is_err());
    }

    #[test]
    fn large_exponent_norms_do_not_overflow() {
        let g = GroupSpec::new(&[4]).unwrap();
        let values = vec![Complex64::new(1e200, 0.0); 4];
        let f = LatticeFunction::from_values(&g, values).unwrap();
        let norm = lp_norm(&f, 64.0).unwrap();
        assert!(norm.is_finite());
        assert!((norm - 1e200 * 4f64.powf(1.0 / 64.0)).abs() <= 1e190);
    }

    #[test]
    fn hoelder_inequality_on_random_pairs() {
        let g = GroupSpec::new(&[6, 3]).unwrap();
        for seed in 0..20 {
            let f = LatticeFunction::random(&g, seed, false);
            let h = LatticeFunction::random(&g, seed + 1000, false);
            for p in [1.5, 2.0, 4.0] {
                let pair = ExponentPair::new(p).unwrap();
                let lhs = inner(&f, &h).unwrap().norm();
                let rhs = lp_norm(&f, pair.p()).unwrap() * lp_norm(&h, pair.q()).unwrap();
                assert!(lhs <= rhs * (1.0 + 1e-9), "p = {p}: {lhs} > {rhs}");
            }
        }
    }

    #[test]
    fn inner_product_matches_parseval() {
        let g = GroupSpec::new(&[4, 3]).unwrap();
        let f = LatticeFunction::random(&g, 3, false);
        let h = LatticeFunction::random(&g, 4, false);
        let space = inner(&f, &h).unwrap();
        let sf = crate::spectral::dft_forward(&f);
        let sh = crate::spectral::dft_forward(&h);
        let freq: Complex64 = sf
            .coeffs()
            .iter()
            .zip(sh.coeffs())
            .map(|(a, b)| a * b.conj())
            .sum::<Complex64>()
            / g.size() as f64;
        assert!((space - freq).norm() <= 1e-12 * space.norm().max(1.0));
    }

    #[test]
    fn choi_constants_match_frozen_values() {
        assert!((choi_beta2() - tolerances::golden::BETA_2).abs() <= 1e-12);
        assert!((choi_c01_approx(4.0) - tolerances::golden::CHOI_AT_4).abs() <= 1e-12);
        assert!((choi_c01_approx(2.0) - tolerances::golden::CHOI_AT_2).abs() <= 1e-12);
    }

    #[test]
    fn choi_expansion_approaches_its_linear_term() {
        let drift = choi_c01_approx(1e3) - 1e3 / 2.0;
        assert!(
            (drift - tolerances::golden::LOG_HALF_ONE_PLUS_EXP_M2 / 2.0).abs() <= 1e-3,
            "constant term off: {drift}"
        );
    }

    #[test]
    fn choi_reference_stays_below_the_rigorous_constant_for_large_p() {
        for p in [4.0, 6.0, 10.0, 50.0] {
            let pair = ExponentPair::new(p).unwrap();
            assert!(choi_c01_approx(p) < pair.p_star_minus_one());
        }
    }

    #[test]
    fn representation_on_centered_delta_hits_closed_form() {
        // f = g = delta_0 - 1/4 on Z/4Z: every Riesz symbol is -1 off
        // zero, so (f, R^2 f) = -||f||_2^2 = -3/4.
        let g = GroupSpec::new(&[4]).unwrap();
        let delta = LatticeFunction::delta(&g, &g.point(&[0]).unwrap()).unwrap();
        let f = delta.sub_mean();
        let report = representation_pairing(&f, &f, 0, &layout()).unwrap();
        assert!(
            (report.spectral - Complex64::new(-0.75, 0.0)).norm() <= 1e-13,
            "spectral side {}",
            report.spectral
        );
        assert!(
            report.abs_error <= tolerances::REPRESENTATION,
            "routes disagree by {}",
            report.abs_error
        );
    }

    #[test]
    fn representation_holds_on_random_pairs() {
        for orders in [vec![4], vec![4, 3], vec![2, 2, 3]] {
            let g = GroupSpec::new(&orders).unwrap();
            for seed in 0..5 {
                let f = LatticeFunction::random(&g, seed, true);
                let h = LatticeFunction::random(&g, seed + 99, true);
                for axis in 0..g.dims() {
                    let report = representation_pairing(&f, &h, axis, &layout()).unwrap();
                    assert!(
                        report.abs_error <= tolerances::REPRESENTATION,
                        "orders {orders:?} axis {axis} seed {seed}: error {}",
                        report.abs_error
                    );
                }
            }
        }
    }

    #[test]
    fn representation_ignores_means() {
        let g = GroupSpec::new(&[4, 3]).unwrap();
        let f = LatticeFunction::random(&g, 1, false);
        let h = LatticeFunction::random(&g, 2, false);
        let raw = representation_pairing(&f, &h, 0, &layout()).unwrap();
        let centered = representation_pairing(&f.sub_mean(), &h.sub_mean(), 0, &layout()).unwrap();
        assert!((raw.quadrature - centered.quadrature).norm() <= 1e-10);
        assert!((raw.spectral - centered.spectral).norm() <= 1e-12);
        assert!(raw.removed_g_mean > 0.0);
    }

    #[test]
    fn zero_pair_reports_zero_ratio() {
        let g = GroupSpec::new(&[4]).unwrap();
        let zero = LatticeFunction::zeros(&g);
        let pair = ExponentPair::new(3.0).unwrap();
        let report = bilinear_embedding_check(&zero, &zero, &pair, &layout()).unwrap();
        assert_eq!(report.lhs, 0.0);
        assert_eq!(report.ratio, 0.0);
    }

    #[test]
    fn bilinear_form_saturates_at_p_equals_two() {
        // With f = g mean-zero the left side telescopes to ||f||_2^2 and
        // the constant is 1, so the ratio is 1 up to the quadrature tail.
        let g = GroupSpec::new(&[8, 8]).unwrap();
        let f = LatticeFunction::random(&g, 55, true);
        let pair = ExponentPair::new(2.0).unwrap();
        let report = bilinear_embedding_check(&f, &f, &pair, &layout()).unwrap();
        assert!(
            (report.ratio - 1.0).abs() <= 1e-9,
            "ratio {} should sit at 1",
            report.ratio
        );
    }

    #[test]
    fn bilinear_inequality_on_random_pairs() {
        let g = GroupSpec::new(&[8, 8]).unwrap();
        for p in [1.5, 2.0, 3.0, 4.0] {
            let pair = ExponentPair::new(p).unwrap();
            for seed in 0..5 {
                let f = LatticeFunction::random(&g, 7000 + seed, true);
                let h = LatticeFunction::random(&g, 8000 + seed, true);
                let report = bilinear_embedding_check(&f, &h, &pair, &layout()).unwrap();
                assert!(
                    report.ratio <= 1.0 + tolerances::EMBEDDING_SLACK,
                    "p = {p} seed {seed}: ratio {}",
                    report.ratio
                );
            }
        }
    }

    #[test]
    fn bilinear_form_dominates_every_coefficient_combination() {
        let g = GroupSpec::new(&[4, 4]).unwrap();
        let f = LatticeFunction::random(&g, 70, true);
        let h = LatticeFunction::random(&g, 71, true);
        let lhs = bilinear_lhs(&f, &h, &layout()).unwrap().value;
        for (a0, a1) in [(1.0, 1.0), (1.0, -1.0), (-0.3, 0.7)] {
            let alpha = CoefficientVector::new_real(vec![a0, a1]).unwrap();
            let mut combined = Complex64::new(0.0, 0.0);
            for axis in 0..2 {
                let report = representation_pairing(&f, &h, axis, &layout()).unwrap();
                combined += alpha.entries()[axis] * report.quadrature;
            }
            assert!(
                combined.norm() <= lhs + 1e-9,
                "alpha ({a0}, {a1}): |combination| {} exceeds lhs {lhs}",
                combined.norm()
            );
        }
    }

    #[test]
    fn signed_parts_add_up_to_the_bilinear_form_for_real_data() {
        let g = GroupSpec::new(&[8, 8]).unwrap();
        let f = LatticeFunction::random_real(&g, 90, true);
        let h = LatticeFunction::random_real(&g, 91, true);
        let parts = choi_lhs_parts(&f, &h, &layout()).unwrap();
        let total = bilinear_lhs(&f, &h, &layout()).unwrap();
        assert!(
            (parts.value.plus + parts.value.minus - total.value).abs() <= 1e-9,
            "{} + {} vs {}",
            parts.value.plus,
            parts.value.minus,
            total.value
        );
    }

    #[test]
    fn negative_part_vanishes_when_the_arguments_coincide() {
        let g = GroupSpec::new(&[8]).unwrap();
        let f = LatticeFunction::random_real(&g, 33, true);
        let parts = choi_lhs_parts(&f, &f, &layout()).unwrap();
        assert_eq!(parts.value.minus, 0.0, "squares have no negative part");
    }

    #[test]
    fn signed_checks_hold_with_the_rigorous_constant() {
        let g = GroupSpec::new(&[8, 8]).unwrap();
        let pair = ExponentPair::new(4.0).unwrap();
        for seed in 0..5 {
            let f = LatticeFunction::random_real(&g, 600 + seed, true);
            let h = LatticeFunction::random_real(&g, 700 + seed, true);
            let (plus, minus) = choi_embedding_both(&f, &h, &pair, &layout()).unwrap();
            for (name, report) in [("plus", &plus), ("minus", &minus)] {
                assert!(
                    report.rigorous.ratio <= 1.0 + tolerances::EMBEDDING_SLACK,
                    "{name} part ratio {}",
                    report.rigorous.ratio
                );
                assert!(report.choi_constant > 0.0);
            }
        }
    }

    #[test]
    fn complex_data_is_rejected_by_the_signed_check() {
        let g = GroupSpec::new(&[4]).unwrap();
        let f = LatticeFunction::random(&g, 5, true);
        let pair = ExponentPair::new(4.0).unwrap();
        assert!(matches!(
            choi_embedding_check(&f, &f, &pair, Side::Plus, &layout()),
            Err(Error::NotRealValued { .. })
        ));
    }

    #[test]
    fn batches_are_deterministic() {
        let g = GroupSpec::new(&[4, 4]).unwrap();
        let pair = ExponentPair::new(3.0).unwrap();
        let a = batch_bilinear(&g, 4, 11, &pair, &layout()).unwrap();
        let b = batch_bilinear(&g, 4, 11, &pair, &layout()).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.lhs.to_bits(), y.lhs.to_bits());
            assert_eq!(x.ratio.to_bits(), y.ratio.to_bits());
        }
        let c = batch_bilinear(&g, 4, 12, &pair, &layout()).unwrap();
        assert!(a.iter().zip(&c).any(|(x, y)| x.lhs != y.lhs));
    }

    #[test]
    fn representation_batch_cycles_axes() {
        let g = GroupSpec::new(&[4, 3]).unwrap();
        let rows = batch_representation(&g, 4, 5, &layout()).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.axis).collect::<Vec<_>>(),
            vec![0, 1, 0, 1]
        );
        for row in &rows {
            assert!(row.report.abs_error <= tolerances::REPRESENTATION);
        }
    }
}
