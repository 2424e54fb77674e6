//! Diagnostics of the continuum limit: the aliasing error term, its tail
//! coefficients, the residual of the interpolated flow and rate studies.

mod report;
mod studies;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{eigenvalue, LatticeField};
use crate::spectral::{
    alias_fold, convolve, dn_apply, interpolate, project, sobolev_norm, sobolev_norm_sq,
    CoeffSequence, Product, Region, SobolevKind, TrigPoly,
};
use crate::vec3::{self, CVec3};

pub use report::{
    ConvergenceRow, ConvergenceTable, ErrorReport, ErrorSweep, WeakResidualEntry,
    WeakResidualReport,
};
pub use studies::{
    convergence_study, default_test_functions, error_norm_sweep, measure_horizon, rn_scaling,
    viscosity_sweep, weak_residual, ConvergenceSpec, Reference, RunSpec, ViscosityRow,
    ViscositySweep,
};

/// Default `eps` in the `H^{-1/2 - eps}` error norm.
pub const DEFAULT_ERROR_EPS: f64 = 0.1;

fn check_degree(s: &TrigPoly, size: usize) -> Result<()> {
    if size < 3 || size % 2 == 0 {
        return Err(Error::InvalidLatticeSize(size));
    }
    let degree = s.effective_degree(0.0);
    if degree > size / 2 {
        return Err(Error::DegreeTooHigh {
            degree,
            max: size / 2,
        });
    }
    Ok(())
}

/// `D_N S x S` as an exact degree-`2n` sequence.
fn dn_cross(s: &TrigPoly, size: usize) -> Result<CoeffSequence> {
    let ds = dn_apply(s, size, 1.0, false)?;
    Ok(convolve(&ds, s, Product::Cross))
}

/// `E_N = I_N(S x D_N S) - S x D_N S`, computed along two routes.
#[derive(Clone, Debug)]
pub struct ErrorTerm {
    /// Folding the exact product back into the band.
    pub definitional: CoeffSequence,
    /// `-((conj(z)^N - 1) P+ + (z^N - 1) P-)(D_N S x S)` on the tails.
    pub via_tails: CoeffSequence,
}

impl ErrorTerm {
    pub fn discrepancy(&self) -> f64 {
        self.definitional.max_diff(&self.via_tails)
    }
}

/// The error term for `S` of degree at most `n`, lattice size `N = 2n + 1`.
pub fn error_term(s: &TrigPoly, size: usize) -> Result<ErrorTerm> {
    check_degree(s, size)?;
    let n = size / 2;
    let c = dn_cross(s, size)?;
    // S x D_N S = -c
    let product = c.scale(Complex64::new(-1.0, 0.0));
    let definitional = alias_fold(&product, size)?.to_sequence().sub(&product);

    let shift = size as i64;
    let plus = project(&c, Region::TailPlus(n));
    let minus = project(&c, Region::TailMinus(n));
    let via_tails = plus
        .shifted(-shift)
        .sub(&plus)
        .add(&minus.shifted(shift).sub(&minus))
        .scale(Complex64::new(-1.0, 0.0));
    Ok(ErrorTerm {
        definitional,
        via_tails,
    })
}

/// Tail coefficients `C_{n+k}` of `D_N S x S` for `1 <= k <= n`.
#[derive(Clone, Debug, Serialize)]
pub struct TailCoefficients {
    pub n: usize,
    /// `sum_{j=k}^{n} mu_j S_j x S_{n+k-j}`
    #[serde(skip)]
    pub full: Vec<CVec3>,
    /// `sum_{j >= (n+k)/2} (mu_j - mu_{n+k-j}) S_j x S_{n+k-j}`
    #[serde(skip)]
    pub reduced: Vec<CVec3>,
    /// `C_{-n-k}` from the full sum.
    #[serde(skip)]
    pub negative: Vec<CVec3>,
    pub magnitudes: Vec<f64>,
}

impl TailCoefficients {
    pub fn form_discrepancy(&self) -> f64 {
        max_diff(&self.full, &self.reduced)
    }

    /// `max_k |C_{-n-k} - conj(C_{n+k})|`.
    pub fn conj_defect(&self) -> f64 {
        let conj: Vec<CVec3> = self.full.iter().map(vec3::conj).collect();
        max_diff(&self.negative, &conj)
    }
}

fn max_diff(a: &[CVec3], b: &[CVec3]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| (0..3).map(move |c| (x[c] - y[c]).norm()))
        .fold(0.0, f64::max)
}

pub fn tail_coefficients(s: &TrigPoly, size: usize) -> Result<TailCoefficients> {
    check_degree(s, size)?;
    let n = (size / 2) as i64;
    let mu = |j: i64| eigenvalue(j, size);
    let term =
        |j: i64, l: i64, w: f64| vec3::cscale(&vec3::ccross(&s.coeff(j), &s.coeff(l)), w.into());
    let mut full = Vec::with_capacity(n as usize);
    let mut reduced = Vec::with_capacity(n as usize);
    let mut negative = Vec::with_capacity(n as usize);
    for k in 1..=n {
        let m = n + k;
        let f = (k..=n).fold(vec3::CZERO, |acc, j| {
            vec3::cadd(&acc, &term(j, m - j, mu(j)))
        });
        let neg = (k..=n).fold(vec3::CZERO, |acc, j| {
            vec3::cadd(&acc, &term(-j, j - m, mu(j)))
        });
        let lo = (m + 1) / 2;
        let r = (lo..=n).fold(vec3::CZERO, |acc, j| {
            vec3::cadd(&acc, &term(j, m - j, mu(j) - mu(m - j)))
        });
        full.push(f);
        reduced.push(r);
        negative.push(neg);
    }
    let magnitudes = full.iter().map(|c| vec3::cnorm_sqr(c).sqrt()).collect();
    Ok(TailCoefficients {
        n: n as usize,
        full,
        reduced,
        negative,
        magnitudes,
    })
}

/// Cauchy-Schwarz bound `|S|_{H^1} |S|_{L^2}` on every tail coefficient.
pub fn tail_envelope(s: &TrigPoly) -> f64 {
    let h1 = sobolev_norm(s, 1.0, SobolevKind::Homogeneous).expect("s >= 0");
    let l2 = sobolev_norm(s, 0.0, SobolevKind::Homogeneous).expect("s >= 0");
    h1 * l2
}

/// `|E_N|^2` in `H^{-1/2 - eps}` through the explicit tail weights
/// `(<n+k>^{-1-2eps} + <n+1-k>^{-1-2eps}) (|C_{n+k}|^2 + |C_{-n-k}|^2)`.
pub fn error_norm_sq_weighted(tails: &TailCoefficients, eps: f64) -> f64 {
    let n = tails.n as f64;
    let w = |x: f64| (1.0 + x * x).powf(-0.5 - eps);
    (1..=tails.n)
        .map(|k| {
            let kf = k as f64;
            let mass =
                vec3::cnorm_sqr(&tails.full[k - 1]) + vec3::cnorm_sqr(&tails.negative[k - 1]);
            (w(n + kf) + w(n + 1.0 - kf)) * mass
        })
        .sum()
}

/// `|E_N|_{H^{-1/2 - eps}}` of the interpolant of a lattice state.
pub fn error_norm(state: &LatticeField, eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParams(format!(
            "error-norm eps must be > 0, got {eps}"
        )));
    }
    let tails = tail_coefficients(&interpolate(state), state.size())?;
    Ok(error_norm_sq_weighted(&tails, eps).sqrt())
}

/// Same norm through the generic Sobolev routine applied to `E_N`.
pub fn error_norm_generic(s: &TrigPoly, size: usize, eps: f64) -> Result<f64> {
    let e = error_term(s, size)?;
    sobolev_norm(&e.definitional, -0.5 - eps, SobolevKind::Inhomogeneous)
}

/// `R_N = [I_N(S x DS) - S x DS] - (1/N) I_N(S x D^2 S)` with `D = |k|`.
#[derive(Clone, Debug)]
pub struct ResidualRn {
    pub residual: CoeffSequence,
    /// `|R_N|_{H^{1/2}}`
    pub norm_hhalf: f64,
    /// `|I_N(S x DS) - S x DS|_{H^{1/2}}`
    pub aliasing_part: f64,
    /// `(1/N) |I_N(S x D^2 S)|_{H^{1/2}}`
    pub dispersive_part: f64,
    /// `max_k |mu_k - (|k| - k^2/N)|` over the band.
    pub multiplier_defect: f64,
    /// Coefficient defect of `I_N(S x D_N S) = S x DS + R_N`.
    pub flow_defect: f64,
}

pub fn residual_rn(s: &TrigPoly, size: usize) -> Result<ResidualRn> {
    check_degree(s, size)?;
    let n = size / 2;
    let nf = size as f64;
    let seq = s.to_sequence();
    let d1 = seq.map_multiplier(|k| k.abs() as f64);
    let d2 = seq.map_multiplier(|k| (k * k) as f64);
    let sxd = convolve(&seq, &d1, Product::Cross);
    let sxd2 = convolve(&seq, &d2, Product::Cross);
    let aliasing = alias_fold(&sxd, size)?.to_sequence().sub(&sxd);
    let dispersive = alias_fold(&sxd2, size)?
        .to_sequence()
        .scale(Complex64::new(1.0 / nf, 0.0));
    let residual = aliasing.sub(&dispersive);

    let multiplier_defect = (-(n as i64)..=n as i64)
        .map(|k| {
            let kf = k.abs() as f64;
            (eigenvalue(k, size) - (kf - kf * kf / nf)).abs()
        })
        .fold(0.0, f64::max);

    let dn = dn_apply(&seq, size, 1.0, false)?;
    let flow = alias_fold(&convolve(&seq, &dn, Product::Cross), size)?.to_sequence();
    let flow_defect = flow.max_diff(&sxd.add(&residual));

    let h = |c: &CoeffSequence| sobolev_norm(c, 0.5, SobolevKind::Inhomogeneous);
    Ok(ResidualRn {
        norm_hhalf: h(&residual)?,
        aliasing_part: h(&aliasing)?,
        dispersive_part: h(&dispersive)?,
        residual,
        multiplier_defect,
        flow_defect,
    })
}

/// `|S|^2` in inhomogeneous `H^s`, a convenience for envelopes.
pub fn hs_norm_sq(s: &TrigPoly, order: f64) -> f64 {
    sobolev_norm_sq(s, order, SobolevKind::Inhomogeneous).expect("inhomogeneous accepts any s")
}
