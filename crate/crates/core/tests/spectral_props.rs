mod common;

use std::f64::consts::PI;

use cmspin::spectral::{
    alias_fold, convolve, interpolate, interpolate_complex, kpv_commutator,
    piecewise_constant_distance, read_coeffs_csv, sample, sample_complex, sobolev_norm_sq,
    tilde_product, tilde_product_complex, write_coeffs_csv, CoeffSequence, Product, SobolevKind,
    TrigPoly,
};
use cmspin::vec3::CVec3;
use cmspin::{LatticeField, LatticeGeometry};
use common::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn cv(v: [f64; 3]) -> CVec3 {
    v.map(Complex64::from)
}

#[test]
fn interpolation_coefficients_match_direct_sum() {
    let g = LatticeGeometry::new(19).unwrap();
    let s = cmspin::data::random_spins(&g, 1);
    let direct = direct_coeffs(&s.values().iter().map(|v| cv(*v)).collect::<Vec<_>>());
    let p = interpolate(&s);
    for (i, k) in p.frequencies().enumerate() {
        for c in 0..3 {
            assert!((p.coeff(k)[c] - direct[i][c]).norm() < 1e-14);
        }
    }
    assert!(p.is_real());
}

#[test]
fn tilde_product_two_paths_all_modes() {
    let mut r = rng(7);
    for size in [5, 31, 129] {
        let g = LatticeGeometry::new(size).unwrap();
        for _ in 0..10 {
            let a = random_poly(&mut r, size / 2, false);
            let b = random_poly(&mut r, size / 2, false);
            let fa = sample_complex(&a, &g).unwrap();
            let fb = sample_complex(&b, &g).unwrap();
            for mode in [Product::Scalar, Product::Dot, Product::Cross] {
                let t = tilde_product_complex(&g, &fa, &fb, mode).unwrap();
                assert!(
                    t.discrepancy() < 1e-12,
                    "N={size} {mode:?}: {}",
                    t.discrepancy()
                );
            }
        }
    }
}

#[test]
fn alias_fold_matches_direct_interpolation_of_naive_product() {
    // I_N(a x b) via nodewise products and a direct DFT, against folding the
    // exact product computed by a plain double loop
    let mut r = rng(3);
    let size = 11;
    let g = LatticeGeometry::new(size).unwrap();
    let a = random_poly(&mut r, 5, true);
    let b = random_poly(&mut r, 5, true);
    let fa = sample_complex(&a, &g).unwrap();
    let fb = sample_complex(&b, &g).unwrap();
    let nodewise: Vec<CVec3> = fa
        .iter()
        .zip(&fb)
        .map(|(x, y)| cmspin::vec3::ccross(x, y))
        .collect();
    let direct = direct_coeffs(&nodewise);
    let naive: CoeffSequence = naive_cross_convolution(&a, &b).into_iter().collect();
    let folded = alias_fold(&naive, size).unwrap();
    for (i, k) in folded.frequencies().enumerate() {
        for c in 0..3 {
            assert!((folded.coeff(k)[c] - direct[i][c]).norm() < 1e-12);
        }
    }
}

#[test]
fn piecewise_distance_matches_quadrature() {
    let (x, w) = gauss_legendre(24);
    for size in [5usize, 31] {
        let g = LatticeGeometry::new(size).unwrap();
        for seed in 0..20 {
            let s = cmspin::data::random_spins(&g, 100 + seed);
            let p = interpolate(&s);
            let half = PI / size as f64;
            let mut acc = 0.0;
            for (j, v) in s.values().iter().enumerate() {
                let centre = 2.0 * PI * j as f64 / size as f64;
                for (xi, wi) in x.iter().zip(&w) {
                    let t = centre + half * xi;
                    let e = p.eval(t);
                    let d2: f64 = (0..3).map(|c| (e[c].re - v[c]).powi(2)).sum();
                    acc += wi * half * d2;
                }
            }
            let quad = (acc / (2.0 * PI)).sqrt();
            let closed = piecewise_constant_distance(&s);
            assert!((quad - closed).abs() < 1e-8, "N={size}: {quad} vs {closed}");
        }
    }
}

#[test]
fn kpv_matches_definition() {
    // |grad|^{1/2}(s x u) - (|grad|^{1/2}s) x u - s x |grad|^{1/2}u, each term separately
    let mut r = rng(9);
    let s = random_poly(&mut r, 3, true);
    let u = random_poly(&mut r, 4, true);
    let half = |p: &TrigPoly| p.to_sequence().map_multiplier(|k| (k.abs() as f64).sqrt());
    let whole = convolve(&s, &u, Product::Cross).map_multiplier(|k| (k.abs() as f64).sqrt());
    let expect = whole
        .sub(&convolve(&half(&s), &u, Product::Cross))
        .sub(&convolve(&s, &half(&u), Product::Cross));
    assert!(kpv_commutator(&s, &u).max_diff(&expect) < 1e-12);
}

fn poly_strategy(degree: usize) -> impl Strategy<Value = TrigPoly> {
    any::<u64>().prop_map(move |seed| random_poly(&mut rng(seed), degree, true))
}

fn field_strategy(size: usize) -> impl Strategy<Value = LatticeField> {
    prop::collection::vec(prop::array::uniform3(-1.0f64..1.0), size)
        .prop_map(move |v| LatticeField::new(LatticeGeometry::new(size).unwrap(), v).unwrap())
}

proptest! {
    #[test]
    fn sample_interpolate_roundtrip(f in field_strategy(15)) {
        let back = sample(&interpolate(&f), f.geometry()).unwrap();
        prop_assert!(back.max_abs_diff(&f) < 1e-12);
    }

    #[test]
    fn interpolate_sample_roundtrip(p in poly_strategy(7)) {
        let g = LatticeGeometry::new(15).unwrap();
        let back = interpolate(&sample(&p, &g).unwrap());
        prop_assert!(back.max_coeff_diff(&p) < 1e-12);
        prop_assert!(back.is_real());
    }

    #[test]
    fn alias_fold_is_left_inverse_and_linear(p in poly_strategy(4), q in poly_strategy(9), s in -2.0f64..2.0) {
        prop_assert_eq!(alias_fold(&p, 9).unwrap(), p.clone());
        let combo = p.to_sequence().add(&q.to_sequence().scale(s.into()));
        let lhs = alias_fold(&combo, 9).unwrap();
        let rhs = alias_fold(&p, 9).unwrap().to_sequence()
            .add(&alias_fold(&q, 9).unwrap().to_sequence().scale(s.into()));
        prop_assert!(lhs.to_sequence().max_diff(&rhs) < 1e-12);
    }

    #[test]
    fn parseval(f in field_strategy(13)) {
        let l2 = f.norm_l2();
        let p = interpolate(&f);
        let coeff = sobolev_norm_sq(&p, 0.0, SobolevKind::Inhomogeneous).unwrap().sqrt();
        prop_assert!((l2 - coeff).abs() < 1e-12);
    }

    #[test]
    fn real_products_stay_real(f in field_strategy(9), g in field_strategy(9)) {
        for mode in [Product::Scalar, Product::Dot, Product::Cross] {
            let t = tilde_product(&f, &g, mode).unwrap();
            prop_assert!(t.interpolated.is_real() && t.via_projection.is_real());
            prop_assert!(t.discrepancy() < 1e-12);
        }
    }

    #[test]
    fn coefficient_csv_roundtrip(p in poly_strategy(5)) {
        let mut buf = Vec::new();
        write_coeffs_csv(&p, &mut buf).unwrap();
        let back = read_coeffs_csv(buf.as_slice()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn interpolation_commutes_with_complex_path(f in field_strategy(7)) {
        let values: Vec<CVec3> = f.values().iter().map(|v| cv(*v)).collect();
        prop_assert_eq!(interpolate_complex(f.geometry(), &values), interpolate(&f));
    }
}
