//! Continuum Sobolev calculus on coefficient sequences.

use crate::error::{Error, Result};
use crate::lattice::eigenvalue;
use crate::vec3::{self, CVec3};

use super::{CoeffSequence, Coefficients, TrigPoly};

/// Weight family for Sobolev norms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SobolevKind {
    /// `|k|^{2s}` weights.
    Homogeneous,
    /// `<k>^{2s} = (1 + k^2)^s` weights.
    Inhomogeneous,
}

/// Squared Sobolev norm `sum_k w_s(k) |c_k|^2`.
///
/// For `s = 0` both kinds reduce to the plain `L^2` sum (Parseval).
pub fn sobolev_norm_sq<C: Coefficients>(c: &C, s: f64, kind: SobolevKind) -> Result<f64> {
    if kind == SobolevKind::Homogeneous && s < 0.0 {
        return Err(Error::NegativeExponent(s));
    }
    let mut acc = 0.0;
    c.for_each_coeff(|k, v| {
        let kf = k as f64;
        let w = match kind {
            _ if s == 0.0 => 1.0,
            SobolevKind::Homogeneous => kf.abs().powf(2.0 * s),
            SobolevKind::Inhomogeneous => (1.0 + kf * kf).powf(s),
        };
        acc += w * vec3::cnorm_sqr(v);
    });
    Ok(acc)
}

pub fn sobolev_norm<C: Coefficients>(c: &C, s: f64, kind: SobolevKind) -> Result<f64> {
    sobolev_norm_sq(c, s, kind).map(f64::sqrt)
}

/// Applies `D_N^power` for lattice size `size = 2n + 1`.
///
/// On `|k| <= n` the symbol is `mu_k^power`; with `extended` the frequencies
/// `|k| > n` get `(|k|/2)^power`, otherwise they are rejected.
pub fn dn_apply<C: Coefficients>(
    c: &C,
    size: usize,
    power: f64,
    extended: bool,
) -> Result<CoeffSequence> {
    if power < 0.0 {
        return Err(Error::NegativeExponent(power));
    }
    if size < 3 || size % 2 == 0 {
        return Err(Error::InvalidLatticeSize(size));
    }
    let n = (size / 2) as i64;
    let mut out = CoeffSequence::new();
    let mut too_high = None;
    c.for_each_coeff(|k, v| {
        let base = if k.abs() <= n {
            eigenvalue(k, size)
        } else if extended {
            k.abs() as f64 / 2.0
        } else {
            too_high = Some(k.unsigned_abs() as usize);
            0.0
        };
        let w = if power == 0.0 { 1.0 } else { base.powf(power) };
        out.insert(k, vec3::cscale(v, w.into()));
    });
    match too_high {
        Some(degree) => Err(Error::DegreeTooHigh {
            degree,
            max: n as usize,
        }),
        None => Ok(out),
    }
}

/// `D_N` on a polynomial of degree `n`, lattice size `2n + 1`.
pub fn dn_operator(p: &TrigPoly) -> TrigPoly {
    dn_power(p, 1.0)
}

pub fn dn_power(p: &TrigPoly, power: f64) -> TrigPoly {
    let size = p.lattice_size();
    p.map_coeffs(|k, v| {
        let w = if power == 0.0 {
            1.0
        } else {
            eigenvalue(k, size).powf(power)
        };
        vec3::cscale(v, w.into())
    })
}

/// `|grad|^{1/2}(S x U) - (|grad|^{1/2} S) x U - S x |grad|^{1/2} U`, exactly.
pub fn kpv_commutator<A: Coefficients, B: Coefficients>(s: &A, u: &B) -> CoeffSequence {
    let mut left: Vec<(i64, CVec3)> = Vec::new();
    s.for_each_coeff(|k, c| left.push((k, *c)));
    let mut right: Vec<(i64, CVec3)> = Vec::new();
    u.for_each_coeff(|k, c| right.push((k, *c)));
    let root = |k: i64| (k.abs() as f64).sqrt();
    let mut out = CoeffSequence::new();
    for (j, a) in &left {
        for (k, b) in &right {
            let w = root(j + k) - root(*j) - root(*k);
            if w != 0.0 {
                out.accumulate(j + k, vec3::cscale(&vec3::ccross(a, b), w.into()));
            }
        }
    }
    out
}
