//! Discrete difference operators and their frequency-side multipliers.
//!
//! The one-sided differences along axis `j` are
//!
//! ```text
//! d+_j f(n) = f(n + e_j) - f(n),      d-_j f(n) = f(n) - f(n - e_j),
//! ```
//!
//! the Laplacian is `Delta = sum_j d-_j d+_j`, and the second-order Riesz
//! transform along axis `j` is the Fourier multiplier
//!
//! ```text
//! R_j^2: symbol_j(xi) = -4 sin^2(pi xi_j / m_j) / (4 sum_i sin^2(pi xi_i / m_i)),
//! ```
//!
//! with the value 0 at `xi = 0`. The symbols lie in `[-1, 0]` and sum to
//! `-1` away from frequency zero, so `sum_j R_j^2 = -(I - mean)`. A
//! coefficient vector `alpha` with `|alpha_j| <= 1` combines them into
//! `R_alpha^2 = sum_j alpha_j R_j^2`.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::lattice::{GroupSpec, LatticeFunction, LatticePoint, Side};
use crate::spectral::{dft_forward, dft_inverse, Spectrum};
use crate::{Error, Result};

/// A pointwise frequency-side multiplier on a fixed group.
#[derive(Debug, Clone)]
pub struct MultiplierSpec {
    group: GroupSpec,
    symbol: Vec<Complex64>,
}

impl MultiplierSpec {
    pub fn from_symbol(group: &GroupSpec, symbol: Vec<Complex64>) -> Result<Self> {
        if symbol.len() != group.size() {
            return Err(Error::GroupMismatch);
        }
        Ok(MultiplierSpec {
            group: group.clone(),
            symbol,
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn symbol(&self) -> &[Complex64] {
        &self.symbol
    }

    /// Scales the whole symbol. Exists so tests and the fault-injection
    /// path of the CLI can corrupt an operator on purpose.
    pub fn scaled(&self, factor: f64) -> Self {
        MultiplierSpec {
            group: self.group.clone(),
            symbol: self.symbol.iter().map(|&s| s * factor).collect(),
        }
    }
}

/// Coefficients `alpha` for `R_alpha^2`, each bounded by 1 in magnitude.
#[derive(Debug, Clone)]
pub struct CoefficientVector {
    entries: Vec<Complex64>,
}

impl CoefficientVector {
    /// Accepts entries with `|alpha_j| <= 1`, with one part in 10^12 of
    /// slack so magnitudes that round to 1 are not rejected.
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        for (axis, a) in entries.iter().enumerate() {
            let magnitude = a.norm();
            if magnitude > 1.0 + 1e-12 {
                return Err(Error::CoefficientBound { axis, magnitude });
            }
        }
        Ok(CoefficientVector { entries })
    }

    /// Real coefficient vectors for the signed-part inequalities.
    pub fn new_real(entries: Vec<f64>) -> Result<Self> {
        Self::new(
            entries
                .into_iter()
                .map(|x| Complex64::new(x, 0.0))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Errors unless every coefficient is real (to within `tol`).
    pub fn require_real(&self, tol: f64) -> Result<()> {
        for (axis, a) in self.entries.iter().enumerate() {
            if a.im.abs() > tol {
                return Err(Error::CoefficientNotReal {
                    axis,
                    imaginary: a.im,
                });
            }
        }
        Ok(())
    }

    fn check_group(&self, group: &GroupSpec) -> Result<()> {
        if self.entries.len() != group.dims() {
            return Err(Error::CoefficientLength {
                got: self.entries.len(),
                expected: group.dims(),
            });
        }
        Ok(())
    }
}

/// `4 sin^2(pi xi / m)` for `xi` in `0..m`. The argument is folded to
/// `min(xi, m - xi)` so the table is exactly symmetric, which keeps
/// conjugate symmetry of real inputs bit-true downstream.
fn frequency_weights(m: usize) -> Vec<f64> {
    (0..m)
        .map(|xi| {
            let reduced = xi.min(m - xi) as f64;
            let s = (PI * reduced / m as f64).sin();
            4.0 * s * s
        })
        .collect()
}

/// `-4 sum_i sin^2(pi xi_i / m_i)` over the frequency grid: the symbol of
/// the Laplacian, which is also its eigenvalue list.
pub fn laplacian_eigenvalues(group: &GroupSpec) -> Vec<f64> {
    let tables: Vec<Vec<f64>> = group
        .orders()
        .iter()
        .map(|&m| frequency_weights(m))
        .collect();
    let mut out = vec![0.0; group.size()];
    for (idx, slot) in out.iter_mut().enumerate() {
        let xi = group.point_at(idx);
        let mut total = 0.0;
        for (axis, &c) in xi.coords().iter().enumerate() {
            total += tables[axis][c];
        }
        *slot = -total;
    }
    out
}

/// One-sided difference along `axis`, computed in space.
pub fn partial_spatial(f: &LatticeFunction, axis: usize, side: Side) -> Result<LatticeFunction> {
    f.group().check_axis(axis)?;
    let g = f.group();
    let values = f.values();
    let out = (0..values.len())
        .map(|idx| match side {
            Side::Plus => values[g.neighbor_index(idx, axis, Side::Plus)] - values[idx],
            Side::Minus => values[idx] - values[g.neighbor_index(idx, axis, Side::Minus)],
        })
        .collect();
    LatticeFunction::from_values(g, out)
}

/// Frequency-side symbol of the one-sided difference:
/// `+-(exp(+-2 pi i xi_j / m_j) - 1)`.
pub fn derivative_symbol(group: &GroupSpec, axis: usize, side: Side) -> Result<MultiplierSpec> {
    group.check_axis(axis)?;
    let m = group.orders()[axis] as f64;
    let sign = side.signum() as f64;
    let table: Vec<Complex64> = (0..group.orders()[axis])
        .map(|xi| {
            let theta = sign * 2.0 * PI * xi as f64 / m;
            sign * (Complex64::from_polar(1.0, theta) - 1.0)
        })
        .collect();
    let stride = group.stride(axis)?;
    let m_usize = group.orders()[axis];
    let symbol = (0..group.size())
        .map(|idx| table[(idx / stride) % m_usize])
        .collect();
    MultiplierSpec::from_symbol(group, symbol)
}

/// Discrete Laplacian, computed in space.
pub fn laplacian_spatial(f: &LatticeFunction) -> LatticeFunction {
    let g = f.group();
    let values = f.values();
    let out = (0..values.len())
        .map(|idx| {
            let mut acc = Complex64::new(0.0, 0.0);
            for axis in 0..g.dims() {
                acc += values[g.neighbor_index(idx, axis, Side::Plus)]
                    + values[g.neighbor_index(idx, axis, Side::Minus)]
                    - 2.0 * values[idx];
            }
            acc
        })
        .collect();
    LatticeFunction::from_values(g, out).expect("same length as input")
}

/// Frequency-side symbol of the Laplacian.
pub fn laplacian_symbol(group: &GroupSpec) -> MultiplierSpec {
    let symbol = laplacian_eigenvalues(group)
        .into_iter()
        .map(|v| Complex64::new(v, 0.0))
        .collect();
    MultiplierSpec::from_symbol(group, symbol).expect("eigenvalue list spans the grid")
}

/// Symbol of the second-order Riesz transform along `axis`, zero at
/// frequency zero.
pub fn riesz2_symbol(group: &GroupSpec, axis: usize) -> Result<MultiplierSpec> {
    group.check_axis(axis)?;
    let tables: Vec<Vec<f64>> = group
        .orders()
        .iter()
        .map(|&m| frequency_weights(m))
        .collect();
    let stride = group.stride(axis)?;
    let m = group.orders()[axis];
    let denominators = laplacian_eigenvalues(group);
    let symbol = (0..group.size())
        .map(|idx| {
            if idx == 0 {
                return Complex64::new(0.0, 0.0);
            }
            let numerator = -tables[axis][(idx / stride) % m];
            Complex64::new(numerator / -denominators[idx], 0.0)
        })
        .collect();
    MultiplierSpec::from_symbol(group, symbol)
}

/// Fused symbol of `R_alpha^2 = sum_j alpha_j R_j^2`, zero at frequency
/// zero.
pub fn second_riesz_symbol(group: &GroupSpec, alpha: &CoefficientVector) -> Result<MultiplierSpec> {
    alpha.check_group(group)?;
    let tables: Vec<Vec<f64>> = group
        .orders()
        .iter()
        .map(|&m| frequency_weights(m))
        .collect();
    let denominators = laplacian_eigenvalues(group);
    let symbol = (0..group.size())
        .map(|idx| {
            if idx == 0 {
                return Complex64::new(0.0, 0.0);
            }
            let xi = group.point_at(idx);
            let mut acc = Complex64::new(0.0, 0.0);
            for (axis, &c) in xi.coords().iter().enumerate() {
                acc += alpha.entries[axis] * (-tables[axis][c]);
            }
            acc / -denominators[idx]
        })
        .collect();
    MultiplierSpec::from_symbol(group, symbol)
}

/// Applies a multiplier: forward transform, pointwise product, inverse.
pub fn apply_multiplier(
    f: &LatticeFunction,
    multiplier: &MultiplierSpec,
) -> Result<LatticeFunction> {
    if f.group() != &multiplier.group {
        return Err(Error::GroupMismatch);
    }
    let mut spec = dft_forward(f);
    for (c, &s) in spec.coeffs_mut().iter_mut().zip(&multiplier.symbol) {
        *c *= s;
    }
    Ok(dft_inverse(&spec))
}

/// Applies the multiplier directly to a spectrum, in place.
pub fn apply_multiplier_to_spectrum(
    spec: &mut Spectrum,
    multiplier: &MultiplierSpec,
) -> Result<()> {
    if spec.group() != &multiplier.group {
        return Err(Error::GroupMismatch);
    }
    for (c, &s) in spec.coeffs_mut().iter_mut().zip(&multiplier.symbol) {
        *c *= s;
    }
    Ok(())
}

/// Applies `R_alpha^2` with one fused symbol and a single transform pair.
pub fn apply_second_riesz(
    f: &LatticeFunction,
    alpha: &CoefficientVector,
) -> Result<LatticeFunction> {
    let multiplier = second_riesz_symbol(f.group(), alpha)?;
    apply_multiplier(f, &multiplier)
}

/// Exact `L^2 -> L^2` operator norm of a multiplier: the largest symbol
/// magnitude over the frequency grid.
pub fn operator_two_norm(multiplier: &MultiplierSpec) -> f64 {
    multiplier
        .symbol
        .iter()
        .map(|s| s.norm())
        .fold(0.0, f64::max)
}

/// Like [`operator_two_norm`], also reporting where the maximum is
/// attained. Ties resolve to the lexicographically smallest frequency,
/// which is the first one in row-major order.
pub fn operator_two_norm_witness(multiplier: &MultiplierSpec) -> (f64, LatticePoint) {
    let mut best = f64::NEG_INFINITY;
    let mut best_idx = 0;
    for (idx, s) in multiplier.symbol.iter().enumerate() {
        let norm = s.norm();
        if norm > best {
            best = norm;
            best_idx = idx;
        }
    }
    (best, multiplier.group.point_at(best_idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerances;

    fn re(values: &[f64]) -> Vec<Complex64> {
        values.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn forward_difference_of_delta_on_z4() {
        let g = GroupSpec::new(&[4]).unwrap();
        let f = LatticeFunction::delta(&g, &g.point(&[0]).unwrap()).unwrap();
        let d = partial_spatial(&f, 0, Side::Plus).unwrap();
        let expected = LatticeFunction::from_values(&g, re(&[-1.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!(d.max_abs_diff(&expected).unwrap(), 0.0);
    }

    #[test]
    fn backward_difference_is_a_translated_forward_difference() {
        let g = GroupSpec::new(&[5, 3]).unwrap();
        let f = LatticeFunction::random(&g, 3, false);
        for axis in 0..2 {
            let minus = partial_spatial(&f, axis, Side::Minus).unwrap();
            let plus_shifted = partial_spatial(&f, axis, Side::Plus)
                .unwrap()
                .translate(axis, Side::Plus)
                .unwrap();
            assert!(minus.max_abs_diff(&plus_shifted).unwrap() <= 1e-15);
        }
    }

    #[test]
    fn laplacian_of_delta_on_z4_and_z2() {
        let g4 = GroupSpec::new(&[4]).unwrap();
        let f4 = LatticeFunction::delta(&g4, &g4.point(&[0]).unwrap()).unwrap();
        let expected4 = LatticeFunction::from_values(&g4, re(&[-2.0, 1.0, 0.0, 1.0])).unwrap();
        assert_eq!(
            laplacian_spatial(&f4).max_abs_diff(&expected4).unwrap(),
            0.0
        );

        // Both neighbours coincide on Z/2Z, so the off-diagonal weight is 2.
        let g2 = GroupSpec::new(&[2]).unwrap();
        let f2 = LatticeFunction::delta(&g2, &g2.point(&[0]).unwrap()).unwrap();
        let expected2 = LatticeFunction::from_values(&g2, re(&[-2.0, 2.0])).unwrap();
        assert_eq!(
            laplacian_spatial(&f2).max_abs_diff(&expected2).unwrap(),
            0.0
        );
    }

    #[test]
    fn laplacian_is_divergence_of_forward_differences() {
        let g = GroupSpec::new(&[4, 3]).unwrap();
        let f = LatticeFunction::random(&g, 8, false);
        let mut acc = LatticeFunction::zeros(&g);
        for axis in 0..g.dims() {
            let dd = partial_spatial(
                &partial_spatial(&f, axis, Side::Plus).unwrap(),
                axis,
                Side::Minus,
            )
            .unwrap();
            for (a, b) in acc.values_mut().iter_mut().zip(dd.values()) {
                *a += b;
            }
        }
        assert!(acc.max_abs_diff(&laplacian_spatial(&f)).unwrap() <= 1e-13);
    }

    #[test]
    fn laplacian_symbol_on_z4_hits_closed_form() {
        let g = GroupSpec::new(&[4]).unwrap();
        let symbol = laplacian_symbol(&g);
        let expected = [0.0, -2.0, -4.0, -2.0];
        for (s, e) in symbol.symbol().iter().zip(expected) {
            assert!((s - Complex64::new(e, 0.0)).norm() <= 1e-12, "{s} vs {e}");
        }
    }

    #[test]
    fn derivative_symbols_match_spatial_differences() {
        let g = GroupSpec::new(&[4, 3, 2]).unwrap();
        let f = LatticeFunction::random(&g, 21, false);
        for axis in 0..g.dims() {
            for side in [Side::Plus, Side::Minus] {
                let spatial = partial_spatial(&f, axis, side).unwrap();
                let spectral =
                    apply_multiplier(&f, &derivative_symbol(&g, axis, side).unwrap()).unwrap();
                let err = spatial.max_abs_diff(&spectral).unwrap();
                assert!(
                    err <= tolerances::OPERATOR_ORACLE,
                    "axis {axis} side {side:?}: {err}"
                );
            }
        }
    }

    #[test]
    fn derivative_symbol_factored_form() {
        // +-(exp(+-i theta) - 1) = 2 i exp(+-i theta / 2) sin(theta / 2).
        let g = GroupSpec::new(&[7]).unwrap();
        for side in [Side::Plus, Side::Minus] {
            let symbol = derivative_symbol(&g, 0, side).unwrap();
            for (xi, &s) in symbol.symbol().iter().enumerate() {
                let theta = 2.0 * PI * xi as f64 / 7.0;
                let half = side.signum() as f64 * theta / 2.0;
                let factored = Complex64::new(0.0, 2.0)
                    * Complex64::from_polar(1.0, half)
                    * (theta / 2.0).sin();
                assert!((s - factored).norm() <= 1e-14);
            }
        }
    }

    #[test]
    fn laplacian_symbol_matches_spatial_laplacian() {
        let g = GroupSpec::new(&[5, 4]).unwrap();
        let f = LatticeFunction::random(&g, 2, false);
        let spatial = laplacian_spatial(&f);
        let spectral = apply_multiplier(&f, &laplacian_symbol(&g)).unwrap();
        assert!(spatial.max_abs_diff(&spectral).unwrap() <= tolerances::OPERATOR_ORACLE);
    }

    #[test]
    fn riesz_symbol_worked_value_on_z4_squared() {
        let g = GroupSpec::new(&[4, 4]).unwrap();
        let symbol = riesz2_symbol(&g, 0).unwrap();
        let xi = g.point(&[1, 2]).unwrap();
        let value = symbol.symbol()[g.index(&xi).unwrap()];
        // -4 sin^2(pi/4) / (4 (sin^2(pi/4) + sin^2(pi/2))) = -(1/2) / (3/2).
        assert!((value - Complex64::new(-1.0 / 3.0, 0.0)).norm() <= 1e-15);
        assert_eq!(symbol.symbol()[0], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn riesz_symbols_lie_in_unit_interval_and_partition() {
        for orders in [vec![4], vec![4, 4], vec![2, 3, 5]] {
            let g = GroupSpec::new(&orders).unwrap();
            let symbols: Vec<MultiplierSpec> = (0..g.dims())
                .map(|axis| riesz2_symbol(&g, axis).unwrap())
                .collect();
            for idx in 0..g.size() {
                let mut total = 0.0;
                for s in &symbols {
                    let v = s.symbol()[idx];
                    assert!(v.im == 0.0);
                    assert!(
                        (-1.0 - 1e-14..=1e-14).contains(&v.re),
                        "symbol {} out of [-1, 0]",
                        v.re
                    );
                    total += v.re;
                }
                let expected = if idx == 0 { 0.0 } else { -1.0 };
                assert!(
                    (total - expected).abs() <= tolerances::PARTITION,
                    "partition sum {total} at index {idx}"
                );
            }
        }
    }

    #[test]
    fn riesz_sum_acts_as_negated_mean_removal() {
        let g = GroupSpec::new(&[4, 3]).unwrap();
        let f = LatticeFunction::random(&g, 31, false);
        let mut acc = LatticeFunction::zeros(&g);
        for axis in 0..g.dims() {
            let part = apply_multiplier(&f, &riesz2_symbol(&g, axis).unwrap()).unwrap();
            for (a, b) in acc.values_mut().iter_mut().zip(part.values()) {
                *a += b;
            }
        }
        let minus_centered =
            LatticeFunction::from_values(&g, f.sub_mean().values().iter().map(|&v| -v).collect())
                .unwrap();
        assert!(acc.max_abs_diff(&minus_centered).unwrap() <= tolerances::PARTITION);
    }

    #[test]
    fn fused_riesz_matches_sum_of_parts() {
        let g = GroupSpec::new(&[4, 3]).unwrap();
        let f = LatticeFunction::random(&g, 13, false);
        let alpha =
            CoefficientVector::new(vec![Complex64::new(0.0, 1.0), Complex64::new(-0.5, 0.25)])
                .unwrap();
        let fused = apply_second_riesz(&f, &alpha).unwrap();
        let mut acc = LatticeFunction::zeros(&g);
        for axis in 0..g.dims() {
            let part = apply_multiplier(&f, &riesz2_symbol(&g, axis).unwrap()).unwrap();
            for (a, b) in acc.values_mut().iter_mut().zip(part.values()) {
                *a += alpha.entries()[axis] * b;
            }
        }
        assert!(fused.max_abs_diff(&acc).unwrap() <= 1e-11);
    }

    #[test]
    fn real_coefficients_preserve_real_functions() {
        let g = GroupSpec::new(&[4, 4]).unwrap();
        let f = LatticeFunction::random_real(&g, 77, true);
        let alpha = CoefficientVector::new_real(vec![1.0, -1.0]).unwrap();
        let out = apply_second_riesz(&f, &alpha).unwrap();
        assert!(
            out.is_real(1e-12),
            "imaginary residue left by a real operator"
        );
    }

    #[test]
    fn second_riesz_commutes_with_shifts() {
        let g = GroupSpec::new(&[4, 3]).unwrap();
        let f = LatticeFunction::random(&g, 41, false);
        let alpha = CoefficientVector::new_real(vec![1.0, -1.0]).unwrap();
        let shifted_then_applied =
            apply_second_riesz(&f.translate(0, Side::Plus).unwrap(), &alpha).unwrap();
        let applied_then_shifted = apply_second_riesz(&f, &alpha)
            .unwrap()
            .translate(0, Side::Plus)
            .unwrap();
        assert!(
            shifted_then_applied
                .max_abs_diff(&applied_then_shifted)
                .unwrap()
                <= 1e-11
        );
    }

    #[test]
    fn second_riesz_annihilates_constants() {
        let g = GroupSpec::new(&[4, 4]).unwrap();
        let ones = vec![Complex64::new(1.0, 0.0); g.size()];
        let f = LatticeFunction::from_values(&g, ones).unwrap();
        let alpha = CoefficientVector::new_real(vec![1.0, 1.0]).unwrap();
        let out = apply_second_riesz(&f, &alpha).unwrap();
        let zero = LatticeFunction::zeros(&g);
        assert!(out.max_abs_diff(&zero).unwrap() <= 1e-12);
    }

    #[test]
    fn two_norm_of_difference_multiplier_is_one() {
        let g = GroupSpec::new(&[4, 4]).unwrap();
        let alpha = CoefficientVector::new_real(vec![1.0, -1.0]).unwrap();
        let multiplier = second_riesz_symbol(&g, &alpha).unwrap();
        let (norm, witness) = operator_two_norm_witness(&multiplier);
        assert!((norm - 1.0).abs() <= 1e-14);
        // (0,1) and (1,0) both attain the norm; the report picks the
        // lexicographically smaller.
        assert_eq!(witness.coords(), &[0, 1]);
        let attained = multiplier.symbol()[g.index(&witness).unwrap()].norm();
        assert!((attained - norm).abs() <= 1e-15);
    }

    #[test]
    fn oversized_coefficients_are_rejected() {
        let err = CoefficientVector::new(vec![Complex64::new(0.8, 0.8)]).unwrap_err();
        assert!(matches!(err, Error::CoefficientBound { axis: 0, .. }));
        assert!(CoefficientVector::new(vec![Complex64::new(0.0, 1.0)]).is_ok());
    }

    #[test]
    fn coefficient_length_must_match_group() {
        let g = GroupSpec::new(&[4, 4]).unwrap();
        let f = LatticeFunction::random(&g, 1, false);
        let alpha = CoefficientVector::new_real(vec![1.0]).unwrap();
        assert!(matches!(
            apply_second_riesz(&f, &alpha),
            Err(Error::CoefficientLength {
                got: 1,
                expected: 2
            })
        ));
    }

    #[test]
    fn require_real_flags_imaginary_entries() {
        let alpha = CoefficientVector::new(vec![Complex64::new(0.0, 1.0)]).unwrap();
        assert!(matches!(
            alpha.require_real(1e-12),
            Err(Error::CoefficientNotReal { axis: 0, .. })
        ));
    }

    #[test]
    fn identity_multiplier_round_trips() {
        let g = GroupSpec::new(&[3, 4]).unwrap();
        let f = LatticeFunction::random(&g, 6, false);
        let ones = vec![Complex64::new(1.0, 0.0); g.size()];
        let identity = MultiplierSpec::from_symbol(&g, ones).unwrap();
        let out = apply_multiplier(&f, &identity).unwrap();
        assert!(out.max_abs_diff(&f).unwrap() <= tolerances::ROUND_TRIP * f.l2_norm().max(1.0));
    }
}
