//! Comparison between the trigonometric and piecewise-constant interpolants.
//!
//! The step function `Sigma_N` takes the node value `S(z_j)` on the arc
//! `arg z - arg z_j in [-pi/N, pi/N)`. Its Fourier coefficients are
//! `sinc(k pi / N) * S_hat(k mod N)`, which gives the closed-form distance
//! `|S~ - Sigma|^2 = 2 sum_{|k| <= n} |S_hat(k)|^2 (1 - sinc(k pi / N))`.

use std::f64::consts::PI;

use crate::lattice::{bin_of, fold_index, sinc, LatticeField};
use crate::vec3::{self, CVec3};

use super::{interpolate, TrigPoly};

/// Fourier coefficient `k` (any integer) of the step-function interpolant.
pub fn piecewise_constant_coefficient(poly: &TrigPoly, k: i64) -> CVec3 {
    let size = poly.lattice_size();
    let folded = fold_index(bin_of(k, size), size);
    vec3::cscale(
        &poly.coeff(folded),
        sinc(k as f64 * PI / size as f64).into(),
    )
}

/// Squared `L^2` distance between a degree-`n` interpolant and its
/// step-function counterpart on `2n + 1` nodes.
pub fn piecewise_constant_distance_sq_coeffs(poly: &TrigPoly) -> f64 {
    let size = poly.lattice_size() as f64;
    let sum: f64 = poly
        .frequencies()
        .map(|k| vec3::cnorm_sqr(&poly.coeff(k)) * (1.0 - sinc(k as f64 * PI / size)))
        .sum();
    2.0 * sum
}

/// `|S~_N - Sigma_N|_{L^2}` for a lattice field.
pub fn piecewise_constant_distance(field: &LatticeField) -> f64 {
    piecewise_constant_distance_sq_coeffs(&interpolate(field))
        .max(0.0)
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeGeometry;

    #[test]
    fn constant_has_zero_distance() {
        let f = LatticeField::constant(LatticeGeometry::new(9).unwrap(), [0.0, 0.0, 1.0]);
        assert!(piecewise_constant_distance(&f) < 1e-15);
    }

    #[test]
    fn single_mode_closed_form() {
        let one = [1.0.into(), 0.0.into(), 0.0.into()];
        let p = TrigPoly::monomial(2, 2, one);
        let d2 = piecewise_constant_distance_sq_coeffs(&p);
        assert!((d2 - 2.0 * (1.0 - sinc(2.0 * PI / 5.0))).abs() < 1e-15);
        assert!((d2 - 0.48634).abs() < 1e-5);
    }

    #[test]
    fn step_coefficients_alias() {
        let one = [1.0.into(), 0.0.into(), 0.0.into()];
        let p = TrigPoly::monomial(2, 1, one);
        // k = 6 = 1 + 5 picks up the k = 1 coefficient with sinc(6 pi / 5)
        let c = piecewise_constant_coefficient(&p, 6);
        assert!((c[0].re - sinc(6.0 * PI / 5.0)).abs() < 1e-15);
        assert_eq!(piecewise_constant_coefficient(&p, 2)[0].re, 0.0);
    }
}
