//! Exact operators, norms and energies on the odd-N lattice of roots of unity.
//!
//! Every translation-invariant operator here is circulant and is applied by
//! diagonalizing with a DFT: transform, multiply by the symbol on the folded
//! frequency range `[-n, n]`, transform back. Inner products carry the `1/N`
//! weighting throughout.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::dft::{DftBackend, DftPlan};
use crate::error::{Error, Result};
use crate::vec3::{self, Vec3};

/// Unnormalized sinc, `sin(x)/x` with `sinc(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Maps a DFT bin `0..N` to its frequency in `[-n, n]`.
#[inline]
pub fn fold_index(bin: usize, size: usize) -> i64 {
    let half = size / 2;
    if bin <= half {
        bin as i64
    } else {
        bin as i64 - size as i64
    }
}

/// Maps a frequency `k` (any integer) to its DFT bin `0..N`.
#[inline]
pub fn bin_of(k: i64, size: usize) -> usize {
    k.rem_euclid(size as i64) as usize
}

fn check_size(size: usize) -> Result<()> {
    if size < 3 || size % 2 == 0 {
        Err(Error::InvalidLatticeSize(size))
    } else {
        Ok(())
    }
}

/// Eigenvalue `mu_k = |k| (1 - |k|/N)` of the lattice half-wave operator.
#[inline]
pub fn eigenvalue(k: i64, size: usize) -> f64 {
    let k = k.unsigned_abs() as f64;
    k * (size as f64 - k) / size as f64
}

/// The eigenvalues `mu_0, ..., mu_{N-1}` in DFT index order.
pub fn spectrum(size: usize) -> Result<Vec<f64>> {
    check_size(size)?;
    Ok((0..size).map(|k| eigenvalue(k as i64, size)).collect())
}

/// The eigenvalues as exact reduced fractions `(numerator, denominator)`.
pub fn spectrum_rational(size: usize) -> Result<Vec<(u64, u64)>> {
    check_size(size)?;
    Ok((0..size as u64)
        .map(|k| {
            let num = k * (size as u64 - k);
            let den = size as u64;
            let g = gcd(num, den);
            (num / g, den / g)
        })
        .collect())
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// The `N` equispaced nodes `z_k = exp(2 pi i k / N)` and their transform plan.
#[derive(Clone)]
pub struct LatticeGeometry {
    size: usize,
    plan: DftPlan,
}

impl fmt::Debug for LatticeGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LatticeGeometry")
            .field("size", &self.size)
            .field("backend", &self.plan.backend())
            .finish()
    }
}

impl PartialEq for LatticeGeometry {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
    }
}

impl LatticeGeometry {
    pub fn new(size: usize) -> Result<Self> {
        Self::with_backend(size, DftBackend::default())
    }

    pub fn with_backend(size: usize, backend: DftBackend) -> Result<Self> {
        check_size(size)?;
        Ok(Self {
            size,
            plan: DftPlan::new(size, backend),
        })
    }

    /// Number of nodes `N`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Degree bound `n` with `N = 2n + 1`.
    pub fn half(&self) -> usize {
        self.size / 2
    }

    /// Mesh width `h = 2 pi / N`.
    pub fn mesh(&self) -> f64 {
        2.0 * PI / self.size as f64
    }

    pub fn angle(&self, k: usize) -> f64 {
        2.0 * PI * k as f64 / self.size as f64
    }

    pub fn angles(&self) -> Vec<f64> {
        (0..self.size).map(|k| self.angle(k)).collect()
    }

    pub fn backend(&self) -> DftBackend {
        self.plan.backend()
    }

    /// Largest eigenvalue of the half-wave operator, `n (n + 1) / N`.
    pub fn max_eigenvalue(&self) -> f64 {
        eigenvalue(self.half() as i64, self.size)
    }

    /// Forward transform of one component, scaled by `1/N` so that bin `m`
    /// holds the interpolation coefficient of frequency `fold_index(m)`.
    pub(crate) fn analyze(&self, values: impl Iterator<Item = Complex64>) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = values.collect();
        self.plan.forward(&mut buf);
        let scale = 1.0 / self.size as f64;
        buf.iter_mut().for_each(|c| *c *= scale);
        buf
    }

    /// Inverse of [`Self::analyze`]: coefficient bins to node values.
    pub(crate) fn synthesize(&self, mut bins: Vec<Complex64>) -> Vec<Complex64> {
        self.plan.inverse(&mut bins);
        bins
    }
}

/// An R^3-valued map on the lattice nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeField {
    geometry: LatticeGeometry,
    values: Vec<Vec3>,
}

impl LatticeField {
    pub fn new(geometry: LatticeGeometry, values: Vec<Vec3>) -> Result<Self> {
        if values.len() != geometry.size() {
            return Err(Error::LengthMismatch {
                expected: geometry.size(),
                got: values.len(),
            });
        }
        Ok(Self { geometry, values })
    }

    pub fn constant(geometry: LatticeGeometry, value: Vec3) -> Self {
        let values = vec![value; geometry.size()];
        Self { geometry, values }
    }

    pub fn zeros(geometry: LatticeGeometry) -> Self {
        Self::constant(geometry, vec3::ZERO)
    }

    /// Samples `f(theta_k)` at every node angle.
    pub fn from_fn(geometry: LatticeGeometry, f: impl Fn(f64) -> Vec3) -> Self {
        let values = (0..geometry.size()).map(|k| f(geometry.angle(k))).collect();
        Self { geometry, values }
    }

    pub fn geometry(&self) -> &LatticeGeometry {
        &self.geometry
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Vec3] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Vec3] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Vec3> {
        self.values
    }

    pub fn component(&self, c: usize) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().map(move |v| v[c])
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().flatten().all(|x| x.is_finite())
    }

    fn zip_map(&self, other: &LatticeField, f: impl Fn(&Vec3, &Vec3) -> Vec3) -> LatticeField {
        debug_assert_eq!(self.size(), other.size());
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| f(a, b))
            .collect();
        LatticeField {
            geometry: self.geometry.clone(),
            values,
        }
    }

    /// Nodewise cross product `self x other`.
    pub fn cross(&self, other: &LatticeField) -> LatticeField {
        self.zip_map(other, vec3::cross)
    }

    pub fn add(&self, other: &LatticeField) -> LatticeField {
        self.zip_map(other, |a, b| [a[0] + b[0], a[1] + b[1], a[2] + b[2]])
    }

    pub fn sub(&self, other: &LatticeField) -> LatticeField {
        self.zip_map(other, vec3::sub)
    }

    pub fn scale(&self, s: f64) -> LatticeField {
        let values = self
            .values
            .iter()
            .map(|v| [s * v[0], s * v[1], s * v[2]])
            .collect();
        LatticeField {
            geometry: self.geometry.clone(),
            values,
        }
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: f64, other: &LatticeField) -> LatticeField {
        self.zip_map(other, |a, b| {
            [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]]
        })
    }

    /// Weighted inner product `(1/N) sum_k F_k . G_k`.
    pub fn inner(&self, other: &LatticeField) -> f64 {
        let sum: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| vec3::dot(a, b))
            .sum();
        sum / self.size() as f64
    }

    pub fn norm_l2(&self) -> f64 {
        self.inner(self).sqrt()
    }

    pub fn max_abs_diff(&self, other: &LatticeField) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .flat_map(|(a, b)| (0..3).map(move |c| (a[c] - b[c]).abs()))
            .fold(0.0, f64::max)
    }

    /// `sum_k F_k`, the total spin for spin fields.
    pub fn total(&self) -> Vec3 {
        self.values.iter().fold(vec3::ZERO, |acc, v| {
            [acc[0] + v[0], acc[1] + v[1], acc[2] + v[2]]
        })
    }

    /// `max_k | |F_k| - 1 |`.
    pub fn sphere_deviation(&self) -> f64 {
        self.values
            .iter()
            .map(|v| (vec3::norm(v) - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Rescales every nonzero node value to unit length.
    pub fn normalized(&self) -> LatticeField {
        let values = self
            .values
            .iter()
            .map(|v| {
                let r = vec3::norm(v);
                if r > 0.0 {
                    [v[0] / r, v[1] / r, v[2] / r]
                } else {
                    *v
                }
            })
            .collect();
        LatticeField {
            geometry: self.geometry.clone(),
            values,
        }
    }

    /// Applies a Fourier multiplier given as a function of the folded frequency.
    pub fn apply_symbol(&self, symbol: impl Fn(i64) -> Complex64) -> LatticeField {
        let size = self.size();
        let weights: Vec<Complex64> = (0..size).map(|m| symbol(fold_index(m, size))).collect();
        let mut values = vec![vec3::ZERO; size];
        for c in 0..3 {
            let mut bins = self
                .geometry
                .analyze(self.component(c).map(Complex64::from));
            bins.iter_mut().zip(&weights).for_each(|(b, w)| *b *= w);
            let out = self.geometry.synthesize(bins);
            for (v, x) in values.iter_mut().zip(out) {
                v[c] = x.re;
            }
        }
        LatticeField {
            geometry: self.geometry.clone(),
            values,
        }
    }

    pub fn apply(&self, op: MultiplierOp) -> Result<LatticeField> {
        op.validate()?;
        let size = self.size();
        Ok(self.apply_symbol(|k| op.symbol(k, size)))
    }
}

/// A unit-norm spin field.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinConfiguration(LatticeField);

impl SpinConfiguration {
    pub const UNIT_TOLERANCE: f64 = 1e-12;

    pub fn new(field: LatticeField) -> Result<Self> {
        for (index, v) in field.values().iter().enumerate() {
            let norm = vec3::norm(v);
            if !((norm - 1.0).abs() <= Self::UNIT_TOLERANCE) {
                return Err(Error::NotUnitNorm { index, norm });
            }
        }
        Ok(Self(field))
    }

    pub fn field(&self) -> &LatticeField {
        &self.0
    }

    pub fn into_field(self) -> LatticeField {
        self.0
    }
}

impl AsRef<LatticeField> for SpinConfiguration {
    fn as_ref(&self) -> &LatticeField {
        &self.0
    }
}

/// Translation-invariant lattice operators described by their symbols.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MultiplierOp {
    /// `|grad|_N^s`, symbol `mu_|k|^s`; `s = 0` is the identity.
    HalfwavePower(f64),
    /// `<|grad|_N>^s`, symbol `(1 + mu_|k|^2)^{s/2}`.
    BesselPower(f64),
    /// Second difference `(f_{k+1} + f_{k-1} - 2 f_k) / h^2`.
    Laplacian,
    /// Forward difference `(f_{k+1} - f_k) / h`.
    DiffPlus,
    /// `(f_{k-1} - f_k) / h`, the adjoint of `DiffPlus`.
    DiffMinus,
    /// `(T^j f)_k = f_{k+j}`.
    Translate(i64),
}

impl MultiplierOp {
    pub fn validate(&self) -> Result<()> {
        match *self {
            MultiplierOp::HalfwavePower(s) if s < 0.0 || s.is_nan() => {
                Err(Error::NegativeExponent(s))
            }
            _ => Ok(()),
        }
    }

    /// Symbol at frequency `k` on a lattice of `size` nodes.
    pub fn symbol(&self, k: i64, size: usize) -> Complex64 {
        let h = 2.0 * PI / size as f64;
        let kf = k as f64;
        match *self {
            MultiplierOp::HalfwavePower(s) => {
                if s == 0.0 {
                    Complex64::new(1.0, 0.0)
                } else if k == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    eigenvalue(k, size).powf(s).into()
                }
            }
            MultiplierOp::BesselPower(s) => {
                let mu = eigenvalue(k, size);
                (1.0 + mu * mu).powf(s / 2.0).into()
            }
            MultiplierOp::Laplacian => {
                let s = sinc(h * kf / 2.0);
                (-(s * s) * kf * kf).into()
            }
            MultiplierOp::DiffPlus => {
                Complex64::new(0.0, kf)
                    * Complex64::from_polar(1.0, kf * h / 2.0)
                    * sinc(kf * h / 2.0)
            }
            MultiplierOp::DiffMinus => {
                Complex64::new(0.0, -kf)
                    * Complex64::from_polar(1.0, -kf * h / 2.0)
                    * sinc(kf * h / 2.0)
            }
            MultiplierOp::Translate(j) => Complex64::from_polar(1.0, kf * j as f64 * h),
        }
    }
}

/// `|grad|_N F`, the lattice half-wave operator.
pub fn halfwave(field: &LatticeField) -> LatticeField {
    let size = field.size();
    field.apply_symbol(|k| eigenvalue(k, size).into())
}

/// Difference-form energy `(1/N) sum_{k != l} |S_k - S_l|^2 / |z_k - z_l|^2`,
/// evaluated as `N <S, |grad|_N S>`.
pub fn hamiltonian(field: &LatticeField) -> f64 {
    let n = field.size() as f64;
    (n * field.inner(&halfwave(field))).max(0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum NormKind {
    L2,
    Hhalf,
    H52,
}

/// Discrete Sobolev-type norms:
/// `L2`, `Hhalf = (|F|^2 + <|grad|_N F, F>)^{1/2}` and
/// `H52 = (|F|^2 + |D_+^2 |grad|_N^{1/2} F|^2)^{1/2}`.
pub fn discrete_norm(field: &LatticeField, kind: NormKind) -> f64 {
    let l2sq = field.inner(field);
    match kind {
        NormKind::L2 => l2sq.sqrt(),
        NormKind::Hhalf => (l2sq + field.inner(&halfwave(field)).max(0.0)).sqrt(),
        NormKind::H52 => {
            // single pass: |D_+^2|^2 mu = |M_{D+}|^4 mu per frequency
            let size = field.size();
            let g = field.apply_symbol(|k| {
                let d = MultiplierOp::DiffPlus.symbol(k, size);
                d * d * eigenvalue(k, size).sqrt()
            });
            (l2sq + g.inner(&g)).sqrt()
        }
    }
}
