use std::io::Write;

use serde::Serialize;

/// Version tag of the report CSV layouts.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

fn ln_or_nan(x: f64) -> f64 {
    if x > 0.0 {
        x.ln()
    } else {
        f64::NAN
    }
}

/// Sup-in-time error norm for one lattice size.
#[derive(Clone, Debug, Serialize)]
pub struct ErrorReport {
    pub n: usize,
    pub sup_norm: f64,
    pub eps: f64,
    /// Time at which the sup is attained.
    pub t_at_sup: f64,
    /// `|C_{n+k}|`, `k = 1..=n`, at `t_at_sup`.
    pub tail_magnitudes: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorSweep {
    pub eps: f64,
    pub t_end: f64,
    pub reports: Vec<ErrorReport>,
    /// Every entry finite and below the first one (times a small slack).
    pub bounded: bool,
    pub strictly_decreasing: bool,
    /// `sup_norm(last) / sup_norm(first)`.
    pub last_to_first: f64,
}

impl ErrorSweep {
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "# schema=cmspin-errorsweep v{REPORT_SCHEMA_VERSION}")?;
        writeln!(w, "n,sup_norm,eps,t_at_sup,log_n,log_sup_norm")?;
        for r in &self.reports {
            writeln!(
                w,
                "{},{:.16e},{},{:.16e},{:.16e},{:.16e}",
                r.n,
                r.sup_norm,
                r.eps,
                r.t_at_sup,
                (r.n as f64).ln(),
                ln_or_nan(r.sup_norm)
            )?;
        }
        Ok(())
    }

    pub fn write_tails_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "# schema=cmspin-tails v{REPORT_SCHEMA_VERSION}")?;
        writeln!(w, "n,k,magnitude")?;
        for r in &self.reports {
            for (i, m) in r.tail_magnitudes.iter().enumerate() {
                writeln!(w, "{},{},{:.16e}", r.n, i + 1, m)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    /// `sup_t |S_N(t) - S_ref(t)|_{H^{1/2}}` on the shared band.
    pub error: f64,
    pub log_n: f64,
    pub log_error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// Negated log-log slope; `None` when every error is at round-off level.
    pub slope: Option<f64>,
    pub reference: String,
    pub t_end: f64,
}

impl ConvergenceTable {
    /// `"exact"` when the slope is undefined.
    pub fn slope_label(&self) -> String {
        match self.slope {
            Some(s) => format!("{s:.6}"),
            None => "exact".to_string(),
        }
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "# schema=cmspin-convergence v{REPORT_SCHEMA_VERSION}")?;
        writeln!(
            w,
            "# reference={} t_end={} slope={}",
            self.reference,
            self.t_end,
            self.slope_label()
        )?;
        writeln!(w, "n,error,log_n,log_error")?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{:.16e},{:.16e},{:.16e}",
                r.n, r.error, r.log_n, r.log_error
            )?;
        }
        Ok(())
    }
}

impl ConvergenceRow {
    pub fn new(n: usize, error: f64) -> Self {
        Self {
            n,
            error,
            log_n: (n as f64).ln(),
            log_error: ln_or_nan(error),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeakResidualEntry {
    pub phi: usize,
    pub t: f64,
    /// `|<phi, dS/dt> - <|grad|^{1/2} S, |grad|^{1/2}(phi x S)>|`
    pub gap: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeakResidualReport {
    pub n: usize,
    pub entries: Vec<WeakResidualEntry>,
}

impl WeakResidualReport {
    /// `max_t gap` for each test function, in input order.
    pub fn max_gap_per_phi(&self) -> Vec<f64> {
        let count = self.entries.iter().map(|e| e.phi + 1).max().unwrap_or(0);
        let mut out = vec![0.0; count];
        for e in &self.entries {
            out[e.phi] = f64::max(out[e.phi], e.gap);
        }
        out
    }

    pub fn max_gap(&self) -> f64 {
        self.entries.iter().map(|e| e.gap).fold(0.0, f64::max)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "# schema=cmspin-weak v{REPORT_SCHEMA_VERSION}")?;
        writeln!(w, "n,phi,t,gap")?;
        for e in &self.entries {
            writeln!(w, "{},{},{:.16e},{:.16e}", self.n, e.phi, e.t, e.gap)?;
        }
        Ok(())
    }
}
