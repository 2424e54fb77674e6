mod common;

use cmspin::analysis::{
    convergence_study, default_test_functions, error_norm, error_norm_generic,
    error_norm_sq_weighted, error_norm_sweep, error_term, residual_rn, rn_scaling,
    tail_coefficients, tail_envelope, weak_residual, ConvergenceSpec, Reference, RunSpec,
};
use cmspin::lattice::halfwave;
use cmspin::spectral::{interpolate, sample_complex, CoeffSequence};
use cmspin::vec3::CVec3;
use cmspin::{integrate, Execution, FlowParams, InitialData, LatticeGeometry};
use common::*;
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn error_term_against_lattice_oracle() {
    // I_N(S x D_N S) from nodewise products and a direct DFT, minus the exact
    // product from a plain double loop
    let mut r = rng(21);
    for size in [5usize, 9, 17] {
        let g = LatticeGeometry::new(size).unwrap();
        let s = random_poly(&mut r, size / 2, true);
        let nodes: Vec<[f64; 3]> = sample_complex(&s, &g)
            .unwrap()
            .iter()
            .map(|v| [v[0].re, v[1].re, v[2].re])
            .collect();
        let hw = direct_halfwave(&nodes);
        let prod: Vec<CVec3> = nodes
            .iter()
            .zip(&hw)
            .map(|(a, b)| cross(a, b).map(Complex64::from))
            .collect();
        let folded = direct_coeffs(&prod);
        let ds = s.map_coeffs(|k, c| c.map(|x| x * cmspin::lattice::eigenvalue(k, size)));
        let exact: CoeffSequence = naive_cross_convolution(&s, &ds).into_iter().collect();
        let n = (size / 2) as i64;
        let folded: CoeffSequence = (-n..=n).zip(folded).collect();
        let expect = folded.sub(&exact);
        let e = error_term(&s, size).unwrap();
        assert!(e.definitional.max_diff(&expect) < 1e-11, "N={size}");
        assert!(e.discrepancy() < 1e-12);
    }
}

#[test]
fn single_mode_plus_constant_has_no_error() {
    let mut c = vec![[Complex64::new(0.0, 0.0); 3]; 9];
    c[4] = [0.3.into(), 0.0.into(), 0.5.into()];
    c[7] = [
        Complex64::new(0.2, 0.1),
        Complex64::new(0.0, -0.4),
        0.1.into(),
    ];
    c[1] = c[7].map(|x| x.conj());
    let s = cmspin::TrigPoly::new(4, c).unwrap();
    let e = error_term(&s, 9).unwrap();
    assert!(e.definitional.max_abs() < 1e-15);
    assert!(e.via_tails.max_abs() < 1e-15);
}

#[test]
fn stationary_great_circle_has_no_error_and_zero_gaps() {
    let g = LatticeGeometry::new(33).unwrap();
    let s0 = InitialData::GreatCircle { m: 3 }.sample(&g).unwrap();
    assert!(error_norm(s0.field(), 0.1).unwrap() < 1e-14);
    let p = FlowParams {
        t_end: 0.2,
        dt: 0.01,
        ..FlowParams::default()
    };
    let tr = integrate(&s0, &p).unwrap();
    let w = weak_residual(&tr, &default_test_functions()).unwrap();
    assert!(w.max_gap() < 1e-9);
    let rn = residual_rn(&interpolate(s0.field()), 33).unwrap();
    assert!(rn.norm_hhalf < 1e-13);
}

#[test]
fn constant_data_gives_zero_reports() {
    let d = InitialData::Constant {
        value: [0.0, 0.0, 1.0],
    };
    let run = RunSpec {
        t_end: 0.1,
        snapshots: 2,
        ..RunSpec::default()
    };
    let sw = error_norm_sweep(&d, &[9, 17], &run, 0.1, Execution::Sequential).unwrap();
    assert!(sw.reports.iter().all(|r| r.sup_norm == 0.0));
    let tr = integrate(
        &d.sample(&LatticeGeometry::new(9).unwrap()).unwrap(),
        &FlowParams {
            t_end: 0.05,
            dt: 0.01,
            ..FlowParams::default()
        },
    )
    .unwrap();
    let w = weak_residual(&tr, &default_test_functions()).unwrap();
    assert!(w.max_gap() < 1e-14);
}

#[test]
fn tails_respect_cauchy_schwarz_envelope() {
    let mut r = rng(5);
    for _ in 0..10 {
        let s = random_poly(&mut r, 4, true);
        let t = tail_coefficients(&s, 9).unwrap();
        let env = tail_envelope(&s);
        assert!(t.magnitudes.iter().all(|&m| m <= env * (1.0 + 1e-12)));
        assert!(t.conj_defect() < 1e-12);
    }
}

#[test]
fn equal_weight_pairs_cancel() {
    // n = 4, k = 2: j = 3 pairs with itself (n + k - j = 3)
    let mut c = vec![[Complex64::new(0.0, 0.0); 3]; 9];
    c[7] = [1.0.into(), Complex64::new(0.0, 2.0), 0.5.into()];
    let s = cmspin::TrigPoly::new(4, c).unwrap();
    let t = tail_coefficients(&s, 9).unwrap();
    assert!(t.magnitudes[1] == 0.0);
}

#[test]
fn rn_scales_like_one_over_n() {
    let rows = rn_scaling(&InitialData::smooth(), &[33, 65, 129], Execution::Parallel).unwrap();
    let scaled: Vec<f64> = rows.iter().map(|(n, x)| *n as f64 * x).collect();
    for s in &scaled {
        assert!((s / scaled[0] - 1.0).abs() < 0.25, "{scaled:?}");
    }
}

#[test]
fn rn_reproduces_the_interpolated_flow() {
    let g = LatticeGeometry::new(17).unwrap();
    let s = InitialData::smooth().sample(&g).unwrap();
    let p = interpolate(s.field());
    let rn = residual_rn(&p, 17).unwrap();
    assert!(rn.multiplier_defect < 1e-13);
    assert!(rn.flow_defect < 1e-12);
    // the interpolated lattice right-hand side, against S x DS + R_N
    let lattice = interpolate(&s.field().cross(&halfwave(s.field())));
    let seq = p.to_sequence();
    let d1 = seq.map_multiplier(|k| k.abs() as f64);
    let cont = cmspin::spectral::convolve(&seq, &d1, cmspin::spectral::Product::Cross);
    assert!(lattice.to_sequence().max_diff(&cont.add(&rn.residual)) < 1e-12);
}

#[test]
fn stationary_convergence_is_exact() {
    let spec = ConvergenceSpec {
        sizes: vec![9, 17],
        reference: Reference::HighN(37),
        t_end: Some(0.1),
        snapshots: 2,
        ..ConvergenceSpec::default()
    };
    let t = convergence_study(
        &InitialData::GreatCircle { m: 2 },
        &spec,
        Execution::Sequential,
    )
    .unwrap();
    assert!(t.slope.is_none());
    assert_eq!(t.slope_label(), "exact");
}

#[test]
fn two_row_table_halves_error() {
    let spec = ConvergenceSpec {
        sizes: vec![33, 65],
        reference: Reference::HighN(1025),
        t_end: Some(0.5),
        snapshots: 10,
        ..ConvergenceSpec::default()
    };
    let t = convergence_study(&InitialData::smooth(), &spec, Execution::Parallel).unwrap();
    let ratio = t.rows[0].error / t.rows[1].error;
    assert!(ratio >= 1.6, "ratio {ratio}");
    let mut buf = Vec::new();
    t.write_csv(&mut buf).unwrap();
    assert!(String::from_utf8(buf)
        .unwrap()
        .contains("n,error,log_n,log_error"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn two_paths_and_weighted_norm(seed in any::<u64>(), n in 1usize..40) {
        let size = 2 * n + 1;
        let s = random_poly(&mut rng(seed), n, true);
        let e = error_term(&s, size).unwrap();
        let scale = e.definitional.max_abs().max(1.0);
        prop_assert!(e.discrepancy() < 1e-12 * scale);
        let t = tail_coefficients(&s, size).unwrap();
        let tscale = t.magnitudes.iter().cloned().fold(1.0, f64::max);
        prop_assert!(t.form_discrepancy() < 1e-12 * tscale);
        prop_assert!(t.conj_defect() < 1e-12 * tscale);
        let weighted = error_norm_sq_weighted(&t, 0.1).sqrt();
        let generic = error_norm_generic(&s, size, 0.1).unwrap();
        prop_assert!((weighted - generic).abs() < 1e-12 * generic.max(1.0));
    }
}
