//! Discrete Fourier transform on the group, under one fixed convention:
//!
//! * forward: `fhat(xi) = sum_n f(n) exp(-2 pi i sum_j n_j xi_j / m_j)`,
//!   unnormalised,
//! * inverse: `f(n) = (1 / |G|) sum_xi fhat(xi) exp(+2 pi i ...)`.
//!
//! Frequencies use the natural order `0..m_j - 1` per axis, indexed
//! row-major exactly like spatial points. The heavy lifting per axis is
//! delegated to a mature mixed-radix FFT; the convention above (phases,
//! per-axis orders, normalisation) is what this module owns, and the tests
//! pin it against a direct quadratic-time transform.

use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::lattice::{GroupSpec, LatticeFunction};
use crate::par;

/// Fourier coefficients of a function, laid out row-major over the
/// frequency grid of the same group.
#[derive(Debug, Clone)]
pub struct Spectrum {
    group: GroupSpec,
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn from_coeffs(group: &GroupSpec, coeffs: Vec<Complex64>) -> crate::Result<Self> {
        if coeffs.len() != group.size() {
            return Err(crate::Error::GroupMismatch);
        }
        Ok(Spectrum {
            group: group.clone(),
            coeffs,
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }
}

fn planner() -> &'static Mutex<FftPlanner<f64>> {
    static PLANNER: OnceLock<Mutex<FftPlanner<f64>>> = OnceLock::new();
    PLANNER.get_or_init(|| Mutex::new(FftPlanner::new()))
}

fn plan(len: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    planner()
        .lock()
        .expect("FFT planner lock poisoned")
        .plan_fft(len, direction)
}

/// Runs the planned 1-D transform over every line of `values` along `axis`.
///
/// Lines along the last axis are contiguous; for any other axis each
/// plane of `m * stride` entries is transposed into a scratch buffer so
/// the transform still sees contiguous lines. Planes and lines process in
/// parallel; each line is an independent transform, so order cannot
/// affect the result.
fn transform_axis(
    values: &mut [Complex64],
    group: &GroupSpec,
    axis: usize,
    fft: &Arc<dyn Fft<f64>>,
) {
    let m = group.orders()[axis];
    let stride = group.stride(axis).expect("axis checked by caller");
    if stride == 1 {
        par::chunks_mut_for_each(values, m, |line| fft.process(line));
        return;
    }
    let plane_len = m * stride;
    par::chunks_mut_for_each(values, plane_len, |plane| {
        let mut scratch = vec![Complex64::new(0.0, 0.0); plane_len];
        for j in 0..m {
            let row = &plane[j * stride..(j + 1) * stride];
            for (inner, &v) in row.iter().enumerate() {
                scratch[inner * m + j] = v;
            }
        }
        par::chunks_mut_for_each(&mut scratch, m, |line| fft.process(line));
        for j in 0..m {
            let row = &mut plane[j * stride..(j + 1) * stride];
            for (inner, v) in row.iter_mut().enumerate() {
                *v = scratch[inner * m + j];
            }
        }
    });
}

fn transform_all_axes(values: &mut [Complex64], group: &GroupSpec, direction: FftDirection) {
    for axis in 0..group.dims() {
        let fft = plan(group.orders()[axis], direction);
        transform_axis(values, group, axis, &fft);
    }
}

/// Forward transform, unnormalised.
pub fn dft_forward(f: &LatticeFunction) -> Spectrum {
    let mut coeffs = f.values().to_vec();
    transform_all_axes(&mut coeffs, f.group(), FftDirection::Forward);
    Spectrum {
        group: f.group().clone(),
        coeffs,
    }
}

/// Inverse transform, carrying the `1 / |G|` normalisation.
pub fn dft_inverse(spec: &Spectrum) -> LatticeFunction {
    let mut values = spec.coeffs.clone();
    transform_all_axes(&mut values, &spec.group, FftDirection::Inverse);
    let scale = 1.0 / spec.group.size() as f64;
    for v in &mut values {
        *v *= scale;
    }
    LatticeFunction::from_values(&spec.group, values).expect("length preserved by transform")
}
