//! Interpolation error study for the aliasing map on a coefficient sequence
//! of known smoothness.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fit::loglog_slope;

use super::{alias_fold, sobolev_norm, CoeffSequence, SobolevKind};

/// Riemann zeta for `p > 1` (direct sum plus Euler-Maclaurin tail).
pub fn zeta(p: f64) -> f64 {
    assert!(p > 1.0, "zeta needs p > 1");
    let m = 1000usize;
    let head: f64 = (1..m).map(|j| (j as f64).powf(-p)).sum();
    let mf = m as f64;
    head + mf.powf(1.0 - p) / (p - 1.0) + 0.5 * mf.powf(-p) + p / 12.0 * mf.powf(-p - 1.0)
}

#[derive(Clone, Debug, Serialize)]
pub struct InterpErrorRow {
    pub n: usize,
    /// `|I_N f|_{H^{1/2 + eps}}`
    pub interp_norm: f64,
    /// `|f - I_N f|_{H^s}`
    pub error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct InterpErrorReport {
    pub s: f64,
    pub eps: f64,
    pub source_norm: f64,
    pub rows: Vec<InterpErrorRow>,
    /// Fitted decay order of the error column (`None` when it is identically zero).
    pub order: Option<f64>,
    /// `sqrt(1 + 2 zeta(1 + 2 eps))`, an explicit bound on `|I_N f| / |f|`.
    pub stability_bound: f64,
    pub bounded: bool,
    pub order_ok: bool,
}

/// Slack allowed between the fitted and the predicted order `1 + eps - s`.
pub const ORDER_SLACK: f64 = 0.2;

pub fn interp_error_report(
    f: &CoeffSequence,
    sizes: &[usize],
    s: f64,
    eps: f64,
) -> Result<InterpErrorReport> {
    let reg = 0.5 + eps;
    if s >= reg || s < 0.0 {
        return Err(Error::SmoothnessOutOfRange { s, limit: reg });
    }
    let source_norm = sobolev_norm(f, reg, SobolevKind::Inhomogeneous)?;
    let rows = sizes
        .iter()
        .map(|&n| {
            let folded = alias_fold(f, n)?;
            let interp_norm = sobolev_norm(&folded, reg, SobolevKind::Inhomogeneous)?;
            let diff = f.sub(&folded.to_sequence());
            let error = sobolev_norm(&diff, s, SobolevKind::Inhomogeneous)?;
            Ok(InterpErrorRow {
                n,
                interp_norm,
                error,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let order = if rows.iter().all(|r| r.error == 0.0) || rows.len() < 2 {
        None
    } else {
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.error)).collect();
        Some(-loglog_slope(&pts))
    };
    let stability_bound = (1.0 + 2.0 * zeta(1.0 + 2.0 * eps)).sqrt();
    let bounded = rows
        .iter()
        .all(|r| r.interp_norm <= stability_bound * source_norm * (1.0 + 1e-12));
    let order_ok = order.map_or(true, |o| o >= (1.0 + eps - s) - ORDER_SLACK);
    Ok(InterpErrorReport {
        s,
        eps,
        source_norm,
        rows,
        order,
        stability_bound,
        bounded,
        order_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vec3::CVec3;

    fn e1(x: f64) -> CVec3 {
        [x.into(), 0.0.into(), 0.0.into()]
    }

    #[test]
    fn zeta_two() {
        assert!((zeta(2.0) - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-10);
    }

    #[test]
    fn band_limited_input_has_no_error() {
        let f: CoeffSequence = (-3..=3)
            .map(|k| (k, e1(1.0 / (1.0 + k as f64 * k as f64))))
            .collect();
        let r = interp_error_report(&f, &[7, 9, 15], 0.0, 0.1).unwrap();
        assert!(r.rows.iter().all(|row| row.error == 0.0));
        assert!(r.order.is_none() && r.bounded);
    }

    #[test]
    fn single_tail_mode() {
        // z^{n+1} on N = 2n+1 folds to z^{-n}: the error holds both modes
        let n = 4usize;
        let f = CoeffSequence::single(n as i64 + 1, e1(1.0));
        let r = interp_error_report(&f, &[2 * n + 1], 0.0, 0.1).unwrap();
        assert!((r.rows[0].error - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn rejects_too_much_smoothness() {
        let f = CoeffSequence::single(1, e1(1.0));
        assert!(matches!(
            interp_error_report(&f, &[5], 0.6, 0.1),
            Err(Error::SmoothnessOutOfRange { .. })
        ));
    }
}
