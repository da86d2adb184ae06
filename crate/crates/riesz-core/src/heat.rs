//! The discrete heat semigroup `P_t = exp(t Delta)` on the group.
//!
//! `P_t` acts in frequency as multiplication by `exp(t lambda(xi))` with
//! `lambda(xi) = -4 sum_i sin^2(pi xi_i / m_i) <= 0`, so it is a
//! contraction that fixes constants and damps everything else at least as
//! fast as the spectral gap. A classical fourth-order ODE integrator for
//! `u' = Delta u`, driven entirely by the spatial stencil, serves as an
//! independent oracle for the spectral path.

use num_complex::Complex64;

use crate::lattice::{GroupSpec, LatticeFunction};
use crate::operators::{laplacian_eigenvalues, laplacian_spatial};
use crate::spectral::{dft_forward, dft_inverse, Spectrum};
use crate::tolerances;
use crate::{Error, Result};

/// A function together with its cached spectrum and the Laplacian
/// eigenvalues, ready to be evaluated at many times `t` cheaply.
#[derive(Debug, Clone)]
pub struct HeatExtension {
    spectrum: Spectrum,
    eigenvalues: Vec<f64>,
}

impl HeatExtension {
    pub fn new(f: &LatticeFunction) -> Self {
        HeatExtension {
            spectrum: dft_forward(f),
            eigenvalues: laplacian_eigenvalues(f.group()),
        }
    }

    pub fn group(&self) -> &GroupSpec {
        self.spectrum.group()
    }

    /// The decayed spectrum at time `t`, without transforming back.
    pub fn spectrum_at(&self, t: f64) -> Result<Spectrum> {
        if t < 0.0 {
            return Err(Error::NegativeTime { t });
        }
        let coeffs = self
            .spectrum
            .coeffs()
            .iter()
            .zip(&self.eigenvalues)
            .map(|(&c, &lambda)| c * (t * lambda).exp())
            .collect();
        Spectrum::from_coeffs(self.group(), coeffs)
    }

    /// `P_t f` in space.
    pub fn at(&self, t: f64) -> Result<LatticeFunction> {
        Ok(dft_inverse(&self.spectrum_at(t)?))
    }
}

/// `P_t f`, for a single time. Repeated evaluation should go through
/// [`HeatExtension`] to reuse the forward transform.
pub fn heat_extend(f: &LatticeFunction, t: f64) -> Result<LatticeFunction> {
    HeatExtension::new(f).at(t)
}

/// Smallest nonzero decay rate `4 min_{xi != 0} sum_i sin^2(pi xi_i / m_i)`.
///
/// Mean-zero functions obey `||P_t f||_inf <= exp(-gap t) ||f||_2`.
pub fn spectral_gap(group: &GroupSpec) -> f64 {
    laplacian_eigenvalues(group)
        .iter()
        .skip(1)
        .map(|&lambda| -lambda)
        .fold(f64::INFINITY, f64::min)
}

/// The heat kernel `P_t delta_0`.
///
/// Mathematically the kernel is nonnegative with unit mass. Entries may
/// round a hair below zero; anything below `-`[`tolerances::KERNEL_FLOOR`]
/// is reported as an invariant violation rather than clamped, while noise
/// above that floor is clamped to zero.
pub fn heat_kernel(group: &GroupSpec, t: f64) -> Result<LatticeFunction> {
    let origin = group.point(&vec![0i64; group.dims()])?;
    let delta = LatticeFunction::delta(group, &origin)?;
    let mut kernel = heat_extend(&delta, t)?;
    for (index, v) in kernel.values_mut().iter_mut().enumerate() {
        if v.re < -tolerances::KERNEL_FLOOR {
            return Err(Error::NegativeKernel {
                index,
                value: v.re,
                tolerance: tolerances::KERNEL_FLOOR,
            });
        }
        *v = Complex64::new(v.re.max(0.0), 0.0);
    }
    Ok(kernel)
}

/// Integrates `u' = Delta u`, `u(0) = f`, to time `t` with the classical
/// fourth-order Runge-Kutta scheme on the spatial stencil. This path
/// never touches the frequency side, so it cross-checks [`heat_extend`].
pub fn heat_ode_oracle(f: &LatticeFunction, t: f64, steps: usize) -> Result<LatticeFunction> {
    if t < 0.0 {
        return Err(Error::NegativeTime { t });
    }
    if steps == 0 {
        return Err(Error::ZeroSteps);
    }
    let h = t / steps as f64;
    let mut u = f.clone();
    let stage = |base: &LatticeFunction, k: &LatticeFunction, factor: f64| {
        let mut v = base.clone();
        for (a, b) in v.values_mut().iter_mut().zip(k.values()) {
            *a += factor * b;
        }
        v
    };
    for _ in 0..steps {
        let k1 = laplacian_spatial(&u);
        let k2 = laplacian_spatial(&stage(&u, &k1, h / 2.0));
        let k3 = laplacian_spatial(&stage(&u, &k2, h / 2.0));
        let k4 = laplacian_spatial(&stage(&u, &k3, h));
        for (i, a) in u.values_mut().iter_mut().enumerate() {
            *a += h / 6.0
                * (k1.values()[i] + 2.0 * k2.values()[i] + 2.0 * k3.values()[i] + k4.values()[i]);
        }
    }
    Ok(u)
}
