//! Finite abelian groups `Z/m_1Z x ... x Z/m_NZ` and dense complex-valued
//! functions on them.
//!
//! Functions are stored row-major with the last axis fastest, so axis `i`
//! has stride `m_{i+1} * ... * m_N`. Points carry coordinates that are
//! always reduced modulo the corresponding order.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::{Error, Result};

/// Direction of a one-step shift or one-sided difference along an axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    /// `+1` for `Plus`, `-1` for `Minus`.
    pub fn signum(self) -> i64 {
        match self {
            Side::Plus => 1,
            Side::Minus => -1,
        }
    }
}

/// A product of cyclic groups, described by the list of cyclic orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    orders: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

impl GroupSpec {
    /// Builds the group `Z/m_1Z x ... x Z/m_NZ` from `orders = [m_1, ..., m_N]`.
    ///
    /// Requires at least one axis and every order at least 2; the total
    /// point count must fit in `usize` (with headroom for the complex
    /// storage behind it).
    pub fn new(orders: &[usize]) -> Result<Self> {
        if orders.is_empty() || orders.iter().any(|&m| m < 2) {
            return Err(Error::InvalidGroup);
        }
        let mut size: usize = 1;
        for &m in orders {
            size = size.checked_mul(m).ok_or(Error::GroupTooLarge)?;
        }
        // 16 bytes per Complex64 entry; reject sizes whose storage cannot
        // even be addressed.
        size.checked_mul(std::mem::size_of::<Complex64>())
            .ok_or(Error::GroupTooLarge)?;
        let mut strides = vec![1usize; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1];
        }
        Ok(GroupSpec {
            orders: orders.to_vec(),
            strides,
            size,
        })
    }

    /// Number of axes `N`.
    pub fn dims(&self) -> usize {
        self.orders.len()
    }

    /// Cyclic orders `[m_1, ..., m_N]`.
    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    /// Total number of points `m_1 * ... * m_N`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Row-major stride of `axis` (last axis has stride 1).
    pub fn stride(&self, axis: usize) -> Result<usize> {
        self.check_axis(axis)?;
        Ok(self.strides[axis])
    }

    pub(crate) fn check_axis(&self, axis: usize) -> Result<()> {
        if axis >= self.dims() {
            return Err(Error::AxisOutOfRange {
                axis,
                dims: self.dims(),
            });
        }
        Ok(())
    }

    /// Builds a point from raw coordinates, reducing each modulo its order.
    pub fn point(&self, coords: &[i64]) -> Result<LatticePoint> {
        if coords.len() != self.dims() {
            return Err(Error::PointDimensionMismatch {
                got: coords.len(),
                expected: self.dims(),
            });
        }
        let reduced = coords
            .iter()
            .zip(&self.orders)
            .map(|(&c, &m)| c.rem_euclid(m as i64) as usize)
            .collect();
        Ok(LatticePoint { coords: reduced })
    }

    /// Row-major linear index of a point.
    pub fn index(&self, p: &LatticePoint) -> Result<usize> {
        if p.coords.len() != self.dims() {
            return Err(Error::PointDimensionMismatch {
                got: p.coords.len(),
                expected: self.dims(),
            });
        }
        let mut idx = 0usize;
        for (i, &c) in p.coords.iter().enumerate() {
            debug_assert!(c < self.orders[i]);
            idx += c * self.strides[i];
        }
        Ok(idx)
    }

    /// Point at a row-major linear index.
    pub fn point_at(&self, mut idx: usize) -> LatticePoint {
        debug_assert!(idx < self.size);
        let mut coords = vec![0usize; self.dims()];
        for (c, &stride) in coords.iter_mut().zip(&self.strides) {
            *c = idx / stride;
            idx %= stride;
        }
        LatticePoint { coords }
    }

    /// Moves a point one step along `axis`, wrapping cyclically.
    pub fn shift(&self, p: &LatticePoint, axis: usize, side: Side) -> Result<LatticePoint> {
        self.check_axis(axis)?;
        if p.coords.len() != self.dims() {
            return Err(Error::PointDimensionMismatch {
                got: p.coords.len(),
                expected: self.dims(),
            });
        }
        let m = self.orders[axis];
        let mut coords = p.coords.clone();
        coords[axis] = match side {
            Side::Plus => (coords[axis] + 1) % m,
            Side::Minus => (coords[axis] + m - 1) % m,
        };
        Ok(LatticePoint { coords })
    }

    /// Linear index of the neighbour of the point at `idx` one step along
    /// `axis`. Cheaper than round-tripping through coordinates.
    pub(crate) fn neighbor_index(&self, idx: usize, axis: usize, side: Side) -> usize {
        let m = self.orders[axis];
        let s = self.strides[axis];
        let c = (idx / s) % m;
        let c_new = match side {
            Side::Plus => (c + 1) % m,
            Side::Minus => (c + m - 1) % m,
        };
        idx + c_new * s - c * s
    }
}

/// A point of the group, with coordinates reduced modulo each order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LatticePoint {
    coords: Vec<usize>,
}

impl LatticePoint {
    pub fn coords(&self) -> &[usize] {
        &self.coords
    }
}

/// A dense complex-valued function on a [`GroupSpec`], stored row-major
/// with the last axis fastest.
#[derive(Debug, Clone)]
pub struct LatticeFunction {
    group: GroupSpec,
    values: Vec<Complex64>,
}

impl LatticeFunction {
    /// The zero function.
    pub fn zeros(group: &GroupSpec) -> Self {
        LatticeFunction {
            group: group.clone(),
            values: vec![Complex64::new(0.0, 0.0); group.size()],
        }
    }

    /// Wraps an existing value buffer; its length must match the group size.
    pub fn from_values(group: &GroupSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.size() {
            return Err(Error::GroupMismatch);
        }
        Ok(LatticeFunction {
            group: group.clone(),
            values,
        })
    }

    /// The indicator of a single point: 1 at `p`, 0 elsewhere.
    pub fn delta(group: &GroupSpec, p: &LatticePoint) -> Result<Self> {
        let mut f = Self::zeros(group);
        let idx = group.index(p)?;
        f.values[idx] = Complex64::new(1.0, 0.0);
        Ok(f)
    }

    /// Draws i.i.d. complex standard normal entries (real and imaginary
    /// parts each `N(0,1)`) from a ChaCha stream, so the same seed always
    /// produces the same function. With `zero_mean` the sample mean is
    /// subtracted, leaving an empty zero-frequency component.
    pub fn random(group: &GroupSpec, seed: u64, zero_mean: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let normal = StandardNormal;
        let mut values: Vec<Complex64> = (0..group.size())
            .map(|_| {
                let re: f64 = normal.sample(&mut rng);
                let im: f64 = normal.sample(&mut rng);
                Complex64::new(re, im)
            })
            .collect();
        if zero_mean {
            let mean = values.iter().sum::<Complex64>() / group.size() as f64;
            for v in &mut values {
                *v -= mean;
            }
        }
        LatticeFunction {
            group: group.clone(),
            values,
        }
    }

    /// Like [`LatticeFunction::random`] but with zero imaginary parts.
    pub fn random_real(group: &GroupSpec, seed: u64, zero_mean: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let normal = StandardNormal;
        let mut values: Vec<Complex64> = (0..group.size())
            .map(|_| {
                let re: f64 = normal.sample(&mut rng);
                Complex64::new(re, 0.0)
            })
            .collect();
        if zero_mean {
            let mean = values.iter().sum::<Complex64>() / group.size() as f64;
            for v in &mut values {
                *v -= mean;
            }
        }
        LatticeFunction {
            group: group.clone(),
            values,
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn value_at(&self, p: &LatticePoint) -> Result<Complex64> {
        Ok(self.values[self.group.index(p)?])
    }

    /// Mean value `(1/|G|) sum_n f(n)`.
    pub fn mean(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() / self.group.size() as f64
    }

    /// Subtracts the mean, killing the zero-frequency component.
    pub fn sub_mean(&self) -> Self {
        let mean = self.mean();
        let values = self.values.iter().map(|&v| v - mean).collect();
        LatticeFunction {
            group: self.group.clone(),
            values,
        }
    }

    /// `sqrt(sum_n |f(n)|^2)` under counting measure.
    pub fn l2_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `true` when every imaginary part vanishes to within `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.values.iter().all(|v| v.im.abs() <= tol)
    }

    /// The translate `n -> f(n - step * e_axis)`, so a delta at `p` moves
    /// to `p + step * e_axis`.
    pub fn translate(&self, axis: usize, side: Side) -> Result<Self> {
        self.group.check_axis(axis)?;
        let mut values = vec![Complex64::new(0.0, 0.0); self.values.len()];
        for idx in 0..self.values.len() {
            // Destination reads from its neighbour against the shift.
            let src = self.group.neighbor_index(
                idx,
                axis,
                match side {
                    Side::Plus => Side::Minus,
                    Side::Minus => Side::Plus,
                },
            );
            values[idx] = self.values[src];
        }
        Ok(LatticeFunction {
            group: self.group.clone(),
            values,
        })
    }

    /// Largest pointwise distance to another function on the same group.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// Mixes a base seed with stream labels into a fresh seed, so parallel
/// trials can derive independent deterministic streams regardless of
/// scheduling. SplitMix64 finaliser.
pub(crate) fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    let mut z = base;
    for &p in parts {
        z = z.wrapping_add(0x9e3779b97f4a7c15).wrapping_add(p);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^= z >> 31;
    }
    z
}
