//! Independent oracles shared by the integration tests. Nothing here calls
//! into the FFT or spectral code paths of the library.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::f64::consts::PI;

use cmspin::spectral::TrigPoly;
use cmspin::vec3::CVec3;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Dense matrix of `(|grad|_N f)_k = 1/(2N) sum_{l != k} (f_k - f_l) / sin^2(pi (k-l)/N)`.
pub fn halfwave_matrix(size: usize) -> DMatrix<f64> {
    let nf = size as f64;
    DMatrix::from_fn(size, size, |k, l| {
        if k == l {
            (0..size)
                .filter(|&m| m != k)
                .map(|m| 1.0 / (2.0 * nf * (PI * (k as f64 - m as f64) / nf).sin().powi(2)))
                .sum()
        } else {
            -1.0 / (2.0 * nf * (PI * (k as f64 - l as f64) / nf).sin().powi(2))
        }
    })
}

/// Double-sum evaluation of `|grad|_N` on a vector field.
pub fn direct_halfwave(values: &[[f64; 3]]) -> Vec<[f64; 3]> {
    let size = values.len();
    let nf = size as f64;
    (0..size)
        .map(|k| {
            let mut acc = [0.0; 3];
            for l in (0..size).filter(|&l| l != k) {
                let w = 1.0 / (2.0 * nf * (PI * (k as f64 - l as f64) / nf).sin().powi(2));
                for c in 0..3 {
                    acc[c] += w * (values[k][c] - values[l][c]);
                }
            }
            acc
        })
        .collect()
}

pub fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// `(1/N) sum_{k != l} |S_k - S_l|^2 / |z_k - z_l|^2`.
pub fn direct_hamiltonian(values: &[[f64; 3]]) -> f64 {
    let size = values.len();
    let nf = size as f64;
    let mut acc = 0.0;
    for k in 0..size {
        for l in (0..size).filter(|&l| l != k) {
            let dz2 = 4.0 * (PI * (k as f64 - l as f64) / nf).sin().powi(2);
            let d2: f64 = (0..3).map(|c| (values[k][c] - values[l][c]).powi(2)).sum();
            acc += d2 / dz2;
        }
    }
    acc / nf
}

/// `c_k = (1/N) sum_j f(z_j) conj(z_j)^k` for `|k| <= n`, by direct summation.
pub fn direct_coeffs(values: &[CVec3]) -> Vec<CVec3> {
    let size = values.len();
    let n = (size / 2) as i64;
    (-n..=n)
        .map(|k| {
            let mut acc = [Complex64::new(0.0, 0.0); 3];
            for (j, v) in values.iter().enumerate() {
                let w = Complex64::from_polar(
                    1.0 / size as f64,
                    -2.0 * PI * (j as f64) * (k as f64) / size as f64,
                );
                for c in 0..3 {
                    acc[c] += v[c] * w;
                }
            }
            acc
        })
        .collect()
}

/// Sparse coefficient map convolution by a plain double loop.
pub fn naive_cross_convolution(a: &TrigPoly, b: &TrigPoly) -> BTreeMap<i64, CVec3> {
    let mut out: BTreeMap<i64, CVec3> = BTreeMap::new();
    for j in a.frequencies() {
        for k in b.frequencies() {
            let x = a.coeff(j);
            let y = b.coeff(k);
            let p = [
                x[1] * y[2] - x[2] * y[1],
                x[2] * y[0] - x[0] * y[2],
                x[0] * y[1] - x[1] * y[0],
            ];
            let e = out.entry(j + k).or_insert([Complex64::new(0.0, 0.0); 3]);
            for c in 0..3 {
                e[c] += p[c];
            }
        }
    }
    out
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=m {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    (nodes, weights)
}

/// Random polynomial of the given degree; conjugate-symmetric when `real`.
pub fn random_poly(rng: &mut ChaCha8Rng, degree: usize, real: bool) -> TrigPoly {
    let n = degree as i64;
    let mut coeffs = vec![[Complex64::new(0.0, 0.0); 3]; 2 * degree + 1];
    for k in -n..=n {
        let idx = (k + n) as usize;
        if real && k < 0 {
            continue;
        }
        for c in 0..3 {
            let re = rng.gen_range(-1.0..1.0);
            let im = if real && k == 0 {
                0.0
            } else {
                rng.gen_range(-1.0..1.0)
            };
            coeffs[idx][c] = Complex64::new(re, im);
        }
        if real && k > 0 {
            let mirror = (n - k) as usize;
            for c in 0..3 {
                coeffs[mirror][c] = coeffs[idx][c].conj();
            }
        }
    }
    TrigPoly::new(degree, coeffs).unwrap()
}

pub fn max_abs_diff(a: &[[f64; 3]], b: &[[f64; 3]]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| (0..3).map(move |c| (x[c] - y[c]).abs()))
        .fold(0.0, f64::max)
}
