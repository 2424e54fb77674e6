//! Trigonometric polynomials, interpolation, aliasing and projections.
//!
//! A lattice field on `N = 2n + 1` nodes corresponds one-to-one to a
//! trigonometric polynomial of degree at most `n` (its interpolant).
//! Coefficient sequences of unbounded degree are folded back into that band
//! by the aliasing map, which is the identity on degree-`n` polynomials.

mod calculus;
mod interp_error;
mod io;
mod piecewise;

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{bin_of, fold_index, LatticeField, LatticeGeometry};
use crate::vec3::{self, CVec3};

pub use calculus::{
    dn_apply, dn_operator, dn_power, kpv_commutator, sobolev_norm, sobolev_norm_sq, SobolevKind,
};
pub use interp_error::{interp_error_report, zeta, InterpErrorReport, InterpErrorRow};
pub use io::{read_coeffs_csv, write_coeffs_csv};
pub use piecewise::{
    piecewise_constant_coefficient, piecewise_constant_distance,
    piecewise_constant_distance_sq_coeffs,
};

/// Tolerance used when deciding whether coefficients are conjugate-symmetric.
pub const REAL_TOLERANCE: f64 = 1e-12;

/// Read-only access to a family of Fourier coefficients.
pub trait Coefficients {
    /// Visits every stored `(k, c_k)` pair.
    fn for_each_coeff(&self, f: impl FnMut(i64, &CVec3));
}

/// A 3-vector trigonometric polynomial `sum_{|k| <= n} c_k z^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigPoly {
    degree: usize,
    coeffs: Vec<CVec3>,
    real: bool,
}

impl TrigPoly {
    /// Builds from coefficients listed for `k = -degree ..= degree`.
    pub fn new(degree: usize, coeffs: Vec<CVec3>) -> Result<Self> {
        if coeffs.len() != 2 * degree + 1 {
            return Err(Error::LengthMismatch {
                expected: 2 * degree + 1,
                got: coeffs.len(),
            });
        }
        let real = conj_symmetric(degree, &coeffs);
        Ok(Self {
            degree,
            coeffs,
            real,
        })
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: vec![vec3::CZERO; 2 * degree + 1],
            real: true,
        }
    }

    pub fn constant(degree: usize, value: [f64; 3]) -> Self {
        let mut p = Self::zero(degree);
        p.coeffs[degree] = vec3::to_complex(&value);
        p
    }

    /// `value * z^k`. Panics if `|k| > degree`.
    pub fn monomial(degree: usize, k: i64, value: CVec3) -> Self {
        assert!(k.unsigned_abs() as usize <= degree, "monomial outside band");
        let mut coeffs = vec![vec3::CZERO; 2 * degree + 1];
        coeffs[(k + degree as i64) as usize] = value;
        let real = conj_symmetric(degree, &coeffs);
        Self {
            degree,
            coeffs,
            real,
        }
    }

    /// Degree bound `n`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The lattice size `2n + 1` matching this degree bound.
    pub fn lattice_size(&self) -> usize {
        2 * self.degree + 1
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Coefficients for `k = -n ..= n`.
    pub fn coeffs(&self) -> &[CVec3] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> CVec3 {
        if k.unsigned_abs() as usize > self.degree {
            vec3::CZERO
        } else {
            self.coeffs[(k + self.degree as i64) as usize]
        }
    }

    pub fn frequencies(&self) -> impl Iterator<Item = i64> {
        let n = self.degree as i64;
        -n..=n
    }

    /// Largest `|k|` with a coefficient above `tol` in magnitude.
    pub fn effective_degree(&self, tol: f64) -> usize {
        self.frequencies()
            .filter(|&k| vec3::cnorm_sqr(&self.coeff(k)).sqrt() > tol)
            .map(|k| k.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Direct evaluation of the sum at angle `theta`.
    pub fn eval(&self, theta: f64) -> CVec3 {
        self.frequencies().fold(vec3::CZERO, |acc, k| {
            let w = Complex64::from_polar(1.0, k as f64 * theta);
            vec3::cadd(&acc, &vec3::cscale(&self.coeff(k), w))
        })
    }

    pub fn to_sequence(&self) -> CoeffSequence {
        let mut seq = CoeffSequence::new();
        for k in self.frequencies() {
            seq.insert(k, self.coeff(k));
        }
        seq
    }

    /// Same polynomial with a larger degree bound.
    pub fn with_degree(&self, degree: usize) -> Result<Self> {
        let tol = 0.0;
        if self.effective_degree(tol) > degree {
            return Err(Error::DegreeTooHigh {
                degree: self.effective_degree(tol),
                max: degree,
            });
        }
        let coeffs = (-(degree as i64)..=degree as i64)
            .map(|k| self.coeff(k))
            .collect();
        TrigPoly::new(degree, coeffs)
    }

    /// Maps every coefficient through `f(k, c_k)`.
    pub fn map_coeffs(&self, f: impl Fn(i64, &CVec3) -> CVec3) -> TrigPoly {
        let coeffs = self.frequencies().map(|k| f(k, &self.coeff(k))).collect();
        TrigPoly::new(self.degree, coeffs).expect("length preserved")
    }

    pub fn sub(&self, other: &TrigPoly) -> TrigPoly {
        let degree = self.degree.max(other.degree);
        let coeffs = (-(degree as i64)..=degree as i64)
            .map(|k| {
                let a = self.coeff(k);
                let b = other.coeff(k);
                [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
            })
            .collect();
        TrigPoly::new(degree, coeffs).expect("length preserved")
    }

    /// Largest coefficient difference over the union of both bands.
    pub fn max_coeff_diff(&self, other: &TrigPoly) -> f64 {
        let degree = self.degree.max(other.degree) as i64;
        (-degree..=degree)
            .map(|k| {
                let a = self.coeff(k);
                let b = other.coeff(k);
                (0..3).map(|c| (a[c] - b[c]).norm()).fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }
}

impl Coefficients for TrigPoly {
    fn for_each_coeff(&self, mut f: impl FnMut(i64, &CVec3)) {
        for (i, c) in self.coeffs.iter().enumerate() {
            f(i as i64 - self.degree as i64, c);
        }
    }
}

fn conj_symmetric(degree: usize, coeffs: &[CVec3]) -> bool {
    let scale = coeffs
        .iter()
        .map(|c| vec3::cnorm_sqr(c).sqrt())
        .fold(1.0, f64::max);
    let n = degree as i64;
    (0..=n).all(|k| {
        let a = coeffs[(k + n) as usize];
        let b = coeffs[(n - k) as usize];
        (0..3).all(|c| (a[c] - b[c].conj()).norm() <= REAL_TOLERANCE * scale)
    })
}

/// A finitely supported Fourier coefficient sequence `k -> c_k`, `k` in Z.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CoeffSequence {
    entries: BTreeMap<i64, CVec3>,
}

impl CoeffSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(k: i64, value: CVec3) -> Self {
        let mut s = Self::new();
        s.insert(k, value);
        s
    }

    /// Replaces the coefficient at `k`.
    pub fn insert(&mut self, k: i64, value: CVec3) {
        self.entries.insert(k, value);
    }

    /// Adds `value` to the coefficient at `k`.
    pub fn accumulate(&mut self, k: i64, value: CVec3) {
        let e = self.entries.entry(k).or_insert(vec3::CZERO);
        *e = vec3::cadd(e, &value);
    }

    pub fn get(&self, k: i64) -> CVec3 {
        self.entries.get(&k).copied().unwrap_or(vec3::CZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &CVec3)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest `|k|` carrying a nonzero coefficient.
    pub fn max_frequency(&self) -> usize {
        self.iter()
            .filter(|(_, c)| vec3::cnorm_sqr(c) > 0.0)
            .map(|(k, _)| k.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// `sum_k |c_k|`, finite for every stored sequence.
    pub fn l1_norm(&self) -> f64 {
        self.iter().map(|(_, c)| vec3::cnorm_sqr(c).sqrt()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.iter()
            .map(|(_, c)| vec3::cnorm_sqr(c).sqrt())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> CoeffSequence {
        CoeffSequence {
            entries: self.iter().map(|(k, c)| (k, vec3::cscale(c, s))).collect(),
        }
    }

    pub fn add(&self, other: &CoeffSequence) -> CoeffSequence {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.accumulate(k, *c);
        }
        out
    }

    pub fn sub(&self, other: &CoeffSequence) -> CoeffSequence {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Multiplies every coefficient by `m(k)`.
    pub fn map_multiplier(&self, m: impl Fn(i64) -> f64) -> CoeffSequence {
        CoeffSequence {
            entries: self
                .iter()
                .map(|(k, c)| (k, vec3::cscale(c, m(k).into())))
                .collect(),
        }
    }

    /// Shifts every frequency by `shift` (multiplication by `z^shift`).
    pub fn shifted(&self, shift: i64) -> CoeffSequence {
        CoeffSequence {
            entries: self.iter().map(|(k, c)| (k + shift, *c)).collect(),
        }
    }

    /// Largest `|c_{-k} - conj(c_k)|`.
    pub fn conj_symmetry_defect(&self) -> f64 {
        self.iter()
            .map(|(k, c)| {
                let m = self.get(-k);
                (0..3)
                    .map(|i| (c[i] - m[i].conj()).norm())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    /// Largest coefficient difference over the union of supports.
    pub fn max_diff(&self, other: &CoeffSequence) -> f64 {
        self.sub(other).max_abs()
    }

    /// Converts to a polynomial of the given degree bound, failing if any
    /// nonzero coefficient lies outside the band.
    pub fn to_poly(&self, degree: usize) -> Result<TrigPoly> {
        let max = self.max_frequency();
        if max > degree {
            return Err(Error::DegreeTooHigh {
                degree: max,
                max: degree,
            });
        }
        let coeffs = (-(degree as i64)..=degree as i64)
            .map(|k| self.get(k))
            .collect();
        TrigPoly::new(degree, coeffs)
    }
}

impl FromIterator<(i64, CVec3)> for CoeffSequence {
    fn from_iter<I: IntoIterator<Item = (i64, CVec3)>>(iter: I) -> Self {
        let mut s = CoeffSequence::new();
        for (k, c) in iter {
            s.accumulate(k, c);
        }
        s
    }
}

impl Coefficients for CoeffSequence {
    fn for_each_coeff(&self, mut f: impl FnMut(i64, &CVec3)) {
        for (k, c) in self.entries.iter() {
            f(*k, c);
        }
    }
}

/// Trigonometric interpolant of a real lattice field.
pub fn interpolate(field: &LatticeField) -> TrigPoly {
    let values: Vec<CVec3> = field.values().iter().map(vec3::to_complex).collect();
    interpolate_complex(field.geometry(), &values)
}

/// Interpolant of complex node values: `c_k = (1/N) sum_j F_j conj(z_j)^k`.
pub fn interpolate_complex(geometry: &LatticeGeometry, values: &[CVec3]) -> TrigPoly {
    let size = geometry.size();
    assert_eq!(values.len(), size, "node count mismatch");
    let degree = geometry.half();
    let mut coeffs = vec![vec3::CZERO; size];
    for c in 0..3 {
        let bins = geometry.analyze(values.iter().map(|v| v[c]));
        for (m, b) in bins.into_iter().enumerate() {
            let k = fold_index(m, size);
            coeffs[(k + degree as i64) as usize][c] = b;
        }
    }
    TrigPoly::new(degree, coeffs).expect("2n+1 coefficients")
}

/// Node values of `poly` on the given lattice (complex, for non-real input).
pub fn sample_complex(poly: &TrigPoly, geometry: &LatticeGeometry) -> Result<Vec<CVec3>> {
    let size = geometry.size();
    if size < poly.lattice_size() {
        return Err(Error::WouldAlias {
            degree: poly.degree(),
            nodes: size,
        });
    }
    let mut out = vec![vec3::CZERO; size];
    for c in 0..3 {
        let mut bins = vec![Complex64::new(0.0, 0.0); size];
        for k in poly.frequencies() {
            bins[bin_of(k, size)] = poly.coeff(k)[c];
        }
        for (o, v) in out.iter_mut().zip(geometry.synthesize(bins)) {
            o[c] = v;
        }
    }
    Ok(out)
}

/// Real part of the node values of `poly` on `geometry`.
pub fn sample(poly: &TrigPoly, geometry: &LatticeGeometry) -> Result<LatticeField> {
    let values = sample_complex(poly, geometry)?
        .into_iter()
        .map(|v| [v[0].re, v[1].re, v[2].re])
        .collect();
    LatticeField::new(geometry.clone(), values)
}

/// Evaluates on a dense grid of `points` equispaced angles by zero-padded
/// synthesis. Intended for plotting.
pub fn evaluate_dense(poly: &TrigPoly, points: usize) -> Result<Vec<CVec3>> {
    let points = if points % 2 == 0 { points + 1 } else { points };
    let g = LatticeGeometry::new(points.max(poly.lattice_size()))?;
    sample_complex(poly, &g)
}

/// The aliasing map: `c_k = sum_j u_{k + jN}` for `|k| <= n`.
pub fn alias_fold<C: Coefficients>(seq: &C, size: usize) -> Result<TrigPoly> {
    if size < 3 || size % 2 == 0 {
        return Err(Error::InvalidLatticeSize(size));
    }
    let degree = size / 2;
    let mut coeffs = vec![vec3::CZERO; size];
    seq.for_each_coeff(|k, c| {
        let folded = fold_index(bin_of(k, size), size);
        let slot = &mut coeffs[(folded + degree as i64) as usize];
        *slot = vec3::cadd(slot, c);
    });
    TrigPoly::new(degree, coeffs)
}

/// Frequency regions for [`project`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// `|k| <= m`
    DegreeAtMost(usize),
    /// `|k| > m`
    Complement(usize),
    /// `k >= 0`
    NonnegFreq,
    /// `k < 0`
    NegFreq,
    /// `k > m`
    TailPlus(usize),
    /// `k < -m`
    TailMinus(usize),
}

impl Region {
    pub fn contains(&self, k: i64) -> bool {
        match *self {
            Region::DegreeAtMost(m) => k.unsigned_abs() as usize <= m,
            Region::Complement(m) => k.unsigned_abs() as usize > m,
            Region::NonnegFreq => k >= 0,
            Region::NegFreq => k < 0,
            Region::TailPlus(m) => k > m as i64,
            Region::TailMinus(m) => k < -(m as i64),
        }
    }
}

/// Zeroes every coefficient outside `region`.
pub fn project(seq: &CoeffSequence, region: Region) -> CoeffSequence {
    seq.iter()
        .filter(|(k, _)| region.contains(*k))
        .map(|(k, c)| (k, *c))
        .collect()
}

pub fn project_poly(poly: &TrigPoly, region: Region) -> TrigPoly {
    poly.map_coeffs(|k, c| if region.contains(k) { *c } else { vec3::CZERO })
}

/// Pointwise products available for coefficient convolutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Product {
    /// Componentwise multiplication (three independent scalar products).
    Scalar,
    /// Scalar product, stored in the first component.
    Dot,
    /// Vector product.
    Cross,
}

impl Product {
    #[inline]
    pub fn apply(&self, a: &CVec3, b: &CVec3) -> CVec3 {
        match self {
            Product::Scalar => [a[0] * b[0], a[1] * b[1], a[2] * b[2]],
            Product::Dot => [vec3::cdot(a, b), 0.0.into(), 0.0.into()],
            Product::Cross => vec3::ccross(a, b),
        }
    }
}

/// Exact Fourier coefficients of the product of two finite series.
pub fn convolve<A: Coefficients, B: Coefficients>(a: &A, b: &B, mode: Product) -> CoeffSequence {
    let mut left = Vec::new();
    a.for_each_coeff(|k, c| {
        if vec3::cnorm_sqr(c) > 0.0 {
            left.push((k, *c))
        }
    });
    let mut right = Vec::new();
    b.for_each_coeff(|k, c| {
        if vec3::cnorm_sqr(c) > 0.0 {
            right.push((k, *c))
        }
    });
    let (Some(lmin), Some(lmax), Some(rmin), Some(rmax)) = (
        left.iter().map(|x| x.0).min(),
        left.iter().map(|x| x.0).max(),
        right.iter().map(|x| x.0).min(),
        right.iter().map(|x| x.0).max(),
    ) else {
        return CoeffSequence::new();
    };
    let lo = lmin + rmin;
    let mut dense = vec![vec3::CZERO; (lmax + rmax - lo + 1) as usize];
    for (j, x) in &left {
        for (k, y) in &right {
            let slot = &mut dense[(j + k - lo) as usize];
            *slot = vec3::cadd(slot, &mode.apply(x, y));
        }
    }
    dense
        .into_iter()
        .enumerate()
        .map(|(i, c)| (i as i64 + lo, c))
        .collect()
}

/// Both evaluation routes of the interpolated lattice product.
#[derive(Clone, Debug)]
pub struct TildeProduct {
    /// Interpolant of the nodewise product.
    pub interpolated: TrigPoly,
    /// `[P_n + conj(z)^N P+_n + z^N P-_n]` applied to the product of interpolants.
    pub via_projection: TrigPoly,
}

impl TildeProduct {
    pub fn discrepancy(&self) -> f64 {
        self.interpolated.max_coeff_diff(&self.via_projection)
    }
}

/// The aliasing product formula for a pair of lattice fields.
pub fn tilde_product(f: &LatticeField, g: &LatticeField, mode: Product) -> Result<TildeProduct> {
    let fv: Vec<CVec3> = f.values().iter().map(vec3::to_complex).collect();
    let gv: Vec<CVec3> = g.values().iter().map(vec3::to_complex).collect();
    tilde_product_complex(f.geometry(), &fv, &gv, mode)
}

pub fn tilde_product_complex(
    geometry: &LatticeGeometry,
    f: &[CVec3],
    g: &[CVec3],
    mode: Product,
) -> Result<TildeProduct> {
    let size = geometry.size();
    if f.len() != size || g.len() != size {
        return Err(Error::LengthMismatch {
            expected: size,
            got: f.len().min(g.len()),
        });
    }
    let nodewise: Vec<CVec3> = f.iter().zip(g).map(|(a, b)| mode.apply(a, b)).collect();
    let interpolated = interpolate_complex(geometry, &nodewise);

    let n = geometry.half();
    let full = convolve(
        &interpolate_complex(geometry, f),
        &interpolate_complex(geometry, g),
        mode,
    );
    let folded = project(&full, Region::DegreeAtMost(n))
        .add(&project(&full, Region::TailPlus(n)).shifted(-(size as i64)))
        .add(&project(&full, Region::TailMinus(n)).shifted(size as i64));
    let via_projection = folded.to_poly(n)?;
    Ok(TildeProduct {
        interpolated,
        via_projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn geom(n: usize) -> LatticeGeometry {
        LatticeGeometry::new(n).unwrap()
    }

    fn e1(x: f64) -> CVec3 {
        [x.into(), 0.0.into(), 0.0.into()]
    }

    #[test]
    fn constant_interpolates_to_constant() {
        let f = LatticeField::constant(geom(7), [1.0, -2.0, 0.5]);
        let p = interpolate(&f);
        assert!(p.is_real());
        assert!(p.max_coeff_diff(&TrigPoly::constant(3, [1.0, -2.0, 0.5])) < 1e-15);
    }

    #[test]
    fn three_point_delta() {
        let f = LatticeField::new(geom(3), vec![[1.0, 0.0, 0.0], [0.0; 3], [0.0; 3]]).unwrap();
        let p = interpolate(&f);
        for k in -1..=1 {
            assert!((p.coeff(k)[0] - Complex64::new(1.0 / 3.0, 0.0)).norm() < 1e-15);
        }
        for j in 1..3 {
            assert!(p.eval(2.0 * PI * j as f64 / 3.0)[0].norm() < 1e-15);
        }
        assert!((p.eval(0.0)[0].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn monomials_interpolate_exactly() {
        let g = geom(9);
        for k in -4i64..=4 {
            let vals: Vec<CVec3> = (0..9)
                .map(|j| e1(1.0).map(|c| c * Complex64::from_polar(1.0, k as f64 * g.angle(j))))
                .collect();
            let p = interpolate_complex(&g, &vals);
            assert!(p.max_coeff_diff(&TrigPoly::monomial(4, k, e1(1.0))) < 1e-14);
        }
    }

    #[test]
    fn sample_matches_direct_evaluation() {
        let p = TrigPoly::monomial(2, 1, e1(1.0));
        let vals = sample_complex(&p, &geom(5)).unwrap();
        for (j, v) in vals.iter().enumerate() {
            let t = 2.0 * PI * j as f64 / 5.0;
            assert!((v[0] - Complex64::new(t.cos(), t.sin())).norm() < 1e-15);
        }
        // oversampling is allowed, undersampling is not
        assert!(sample_complex(&p, &geom(11)).is_ok());
        assert_eq!(
            sample(&TrigPoly::zero(3), &geom(5)),
            Err(Error::WouldAlias {
                degree: 3,
                nodes: 5
            })
        );
    }

    #[test]
    fn alias_fold_index_arithmetic() {
        let p = alias_fold(&CoeffSequence::single(3, e1(1.0)), 5).unwrap();
        assert!(p.max_coeff_diff(&TrigPoly::monomial(2, -2, e1(1.0))) == 0.0);

        let mut s = CoeffSequence::new();
        s.insert(-1, e1(2.0));
        s.insert(4, e1(0.5));
        let p = alias_fold(&s, 5).unwrap();
        assert!((p.coeff(-1)[0].re - 2.5).abs() < 1e-15);

        let band = TrigPoly::monomial(2, 2, e1(1.0)).to_sequence();
        assert_eq!(alias_fold(&band, 5).unwrap(), band.to_poly(2).unwrap());
    }

    #[test]
    fn projections_partition() {
        let s: CoeffSequence = (-9..=9).map(|k| (k, e1(k as f64 + 0.5))).collect();
        let n = 4;
        let total = project(&s, Region::DegreeAtMost(n))
            .add(&project(&s, Region::TailPlus(n)))
            .add(&project(&s, Region::TailMinus(n)));
        assert_eq!(total.max_diff(&s), 0.0);
        let z = project(&project(&s, Region::NonnegFreq), Region::NegFreq);
        assert_eq!(z.max_abs(), 0.0);
        let tail = CoeffSequence::single(n as i64 + 2, e1(1.0));
        assert_eq!(project(&tail, Region::TailPlus(n)), tail);
        assert_eq!(project(&tail, Region::DegreeAtMost(n)).max_abs(), 0.0);
        assert_eq!(project(&tail, Region::Complement(n)), tail);
    }

    #[test]
    fn tilde_product_modes() {
        let g = geom(5);
        let z = |k: i64| -> Vec<CVec3> {
            (0..5)
                .map(|j| e1(1.0).map(|c| c * Complex64::from_polar(1.0, k as f64 * g.angle(j))))
                .collect()
        };
        // z * z stays in the band
        let tp = tilde_product_complex(&g, &z(1), &z(1), Product::Scalar).unwrap();
        assert!(tp.discrepancy() < 1e-14);
        assert!(
            tp.interpolated
                .max_coeff_diff(&TrigPoly::monomial(2, 2, e1(1.0)))
                < 1e-14
        );
        // z^2 * z^2 = z^4 folds to z^-1
        let tp = tilde_product_complex(&g, &z(2), &z(2), Product::Scalar).unwrap();
        assert!(tp.discrepancy() < 1e-12);
        assert!(
            tp.via_projection
                .max_coeff_diff(&TrigPoly::monomial(2, -1, e1(1.0)))
                < 1e-14
        );

        let f = LatticeField::from_fn(g.clone(), |t| [t.sin(), 1.0, (2.0 * t).cos()]);
        let c = LatticeField::constant(g, [2.0, 2.0, 2.0]);
        let tp = tilde_product(&f, &c, Product::Scalar).unwrap();
        let scaled = interpolate(&f).map_coeffs(|_, v| vec3::cscale(v, 2.0.into()));
        assert!(tp.interpolated.max_coeff_diff(&scaled) < 1e-14);
        assert!(tp.discrepancy() < 1e-14);
    }

    #[test]
    fn real_flag_detection() {
        let f = LatticeField::from_fn(geom(11), |t| [t.sin(), (3.0 * t).cos(), 0.2]);
        assert!(interpolate(&f).is_real());
        assert!(!TrigPoly::monomial(3, 1, e1(1.0)).is_real());
    }
}
