use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::data::InitialData;
use crate::dynamics::{integrate, stability_cap, FlowParams, Method, Trajectory};
use crate::error::{Error, Result};
use crate::fit::loglog_slope;
use crate::lattice::{LatticeField, LatticeGeometry};
use crate::par::{self, Execution};
use crate::spectral::{
    convolve, interpolate, sobolev_norm, CoeffSequence, Coefficients, Product, SobolevKind,
    TrigPoly,
};
use crate::vec3::{self, CVec3};

use super::report::{ConvergenceRow, ConvergenceTable, ErrorReport, ErrorSweep};
use super::{
    error_norm_sq_weighted, residual_rn, tail_coefficients, WeakResidualEntry, WeakResidualReport,
};

/// Errors below this level count as round-off when fitting slopes.
const ROUNDOFF: f64 = 1e-12;

/// How a run is discretized in time, uniformly across lattice sizes.
///
/// Every run records `snapshots + 1` states at the shared times
/// `i * t_end / snapshots`; the step is the largest that divides the
/// snapshot interval and stays below `cfl` times the stability cap.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunSpec {
    pub t_end: f64,
    pub snapshots: usize,
    pub cfl: f64,
    pub method: Method,
}

impl Default for RunSpec {
    fn default() -> Self {
        Self {
            t_end: 1.0,
            snapshots: 20,
            cfl: 0.5,
            method: Method::Rk4,
        }
    }
}

impl RunSpec {
    /// Flow parameters for lattice size `size`; `refine` divides the step.
    pub fn params(&self, size: usize, epsilon: f64, refine: usize) -> Result<FlowParams> {
        if self.snapshots == 0 || refine == 0 {
            return Err(Error::InvalidParams(
                "snapshots and refine must be >= 1".into(),
            ));
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::InvalidParams(format!(
                "cfl must lie in (0, 1], got {}",
                self.cfl
            )));
        }
        let target = self.cfl * stability_cap(size, epsilon);
        let (dt, record_every) = if self.t_end > 0.0 {
            let interval = self.t_end / self.snapshots as f64;
            let per = ((interval / target).ceil() as usize).max(1) * refine;
            (interval / per as f64, per)
        } else {
            (target / refine as f64, 1)
        };
        Ok(FlowParams {
            epsilon,
            dt,
            t_end: self.t_end,
            method: self.method,
            record_every,
            allow_large_step: false,
        })
    }

    fn run(
        &self,
        data: &InitialData,
        size: usize,
        epsilon: f64,
        refine: usize,
    ) -> Result<Trajectory> {
        let geometry = LatticeGeometry::new(size)?;
        let s0 = data.sample(&geometry)?;
        integrate(&s0, &self.params(size, epsilon, refine)?)
    }
}

/// Sup over recorded times of `|E_N|_{H^{-1/2-eps}}`, for each lattice size.
pub fn error_norm_sweep(
    data: &InitialData,
    sizes: &[usize],
    run: &RunSpec,
    eps: f64,
    exec: Execution,
) -> Result<ErrorSweep> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParams(format!(
            "error-norm eps must be > 0, got {eps}"
        )));
    }
    let reports = par::try_map(exec, sizes, |&size| -> Result<ErrorReport> {
        let traj = run.run(data, size, 0.0, 1)?;
        let mut best = ErrorReport {
            n: size,
            sup_norm: -1.0,
            eps,
            t_at_sup: 0.0,
            tail_magnitudes: Vec::new(),
        };
        for (t, state) in traj.times.iter().zip(&traj.states) {
            let tails = tail_coefficients(&interpolate(state), size)?;
            let norm = error_norm_sq_weighted(&tails, eps).sqrt();
            if norm > best.sup_norm {
                best.sup_norm = norm;
                best.t_at_sup = *t;
                best.tail_magnitudes = tails.magnitudes;
            }
        }
        Ok(best)
    })?;
    let norms: Vec<f64> = reports.iter().map(|r| r.sup_norm).collect();
    let first = norms.first().copied().unwrap_or(0.0);
    let last = norms.last().copied().unwrap_or(0.0);
    Ok(ErrorSweep {
        eps,
        t_end: run.t_end,
        bounded: norms
            .iter()
            .all(|x| x.is_finite() && *x <= first + ROUNDOFF),
        strictly_decreasing: norms.windows(2).all(|w| w[1] < w[0]),
        last_to_first: if first > 0.0 { last / first } else { 0.0 },
        reports,
    })
}

/// Largest recorded time up to which the `H^{5/2}` norm stays within
/// `growth` times its initial value.
pub fn measure_horizon(data: &InitialData, size: usize, run: &RunSpec, growth: f64) -> Result<f64> {
    let traj = run.run(data, size, 0.0, 1)?;
    let h0 = traj.diagnostics[0].h52;
    let mut horizon = 0.0;
    for d in &traj.diagnostics {
        if d.h52 > growth * h0 {
            break;
        }
        horizon = d.t;
    }
    Ok(horizon)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reference {
    /// A single run at `N_ref` with half the step of the coarse runs.
    HighN(usize),
    /// The same lattice size with half the step (temporal error only).
    StepHalving,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceSpec {
    pub sizes: Vec<usize>,
    pub reference: Reference,
    /// Final time; `None` measures the horizon on the reference lattice.
    pub t_end: Option<f64>,
    /// Upper bound for the measured horizon.
    pub t_max: f64,
    pub snapshots: usize,
    pub cfl: f64,
}

impl Default for ConvergenceSpec {
    fn default() -> Self {
        Self {
            sizes: vec![33, 65, 129, 257],
            reference: Reference::HighN(1025),
            t_end: None,
            t_max: 1.0,
            snapshots: 20,
            cfl: 0.5,
        }
    }
}

/// `sup_i |S_N(t_i) - S_ref(t_i)|_{H^{1/2}}` on the band of the coarse run.
fn sup_distance(coarse: &Trajectory, reference: &Trajectory) -> Result<f64> {
    if coarse.len() != reference.len() {
        return Err(Error::TooFewSnapshots {
            needed: coarse.len(),
            got: reference.len(),
        });
    }
    let mut sup: f64 = 0.0;
    for (a, b) in coarse.states.iter().zip(&reference.states) {
        let pa = interpolate(a);
        let pb = interpolate(b);
        let n = pa.degree() as i64;
        let diff: CoeffSequence = (-n..=n)
            .map(|k| {
                let (x, y) = (pa.coeff(k), pb.coeff(k));
                (k, [x[0] - y[0], x[1] - y[1], x[2] - y[2]])
            })
            .collect();
        sup = sup.max(sobolev_norm(&diff, 0.5, SobolevKind::Inhomogeneous)?);
    }
    Ok(sup)
}

pub fn convergence_study(
    data: &InitialData,
    spec: &ConvergenceSpec,
    exec: Execution,
) -> Result<ConvergenceTable> {
    if spec.sizes.len() < 2 {
        return Err(Error::TooFewRows {
            needed: 2,
            got: spec.sizes.len(),
        });
    }
    let max_n = *spec.sizes.iter().max().expect("nonempty");
    let probe = match spec.reference {
        Reference::HighN(n_ref) => {
            if n_ref <= 2 * max_n {
                return Err(Error::ReferenceTooSmall { n_ref, max_n });
            }
            n_ref
        }
        Reference::StepHalving => max_n,
    };
    let base = RunSpec {
        t_end: spec.t_max,
        snapshots: spec.snapshots,
        cfl: spec.cfl,
        method: Method::Rk4,
    };
    let t_end = match spec.t_end {
        Some(t) => t,
        None => measure_horizon(data, probe, &base, 2.0)?,
    };
    let run = RunSpec { t_end, ..base };

    let errors: Vec<f64> = match spec.reference {
        Reference::HighN(n_ref) => {
            let mut jobs: Vec<(usize, usize)> = vec![(n_ref, 2)];
            jobs.extend(spec.sizes.iter().map(|&n| (n, 1)));
            let trajs = par::try_map(exec, &jobs, |&(n, refine)| run.run(data, n, 0.0, refine))?;
            trajs[1..]
                .iter()
                .map(|t| sup_distance(t, &trajs[0]))
                .collect::<Result<_>>()?
        }
        Reference::StepHalving => par::try_map(exec, &spec.sizes, |&n| {
            let coarse = run.run(data, n, 0.0, 1)?;
            let fine = run.run(data, n, 0.0, 2)?;
            sup_distance(&coarse, &fine)
        })?,
    };
    let rows: Vec<ConvergenceRow> = spec
        .sizes
        .iter()
        .zip(&errors)
        .map(|(&n, &e)| ConvergenceRow::new(n, e))
        .collect();
    let slope = if errors.iter().all(|&e| e <= ROUNDOFF) {
        None
    } else {
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.error)).collect();
        Some(-loglog_slope(&pts))
    };
    let reference = match spec.reference {
        Reference::HighN(n) => format!("high-n:{n}:dt/2"),
        Reference::StepHalving => "step-halving".to_string(),
    };
    Ok(ConvergenceTable {
        rows,
        slope,
        reference,
        t_end,
    })
}

/// `|R_N|_{H^{1/2}}` of the sampled data, per lattice size.
pub fn rn_scaling(
    data: &InitialData,
    sizes: &[usize],
    exec: Execution,
) -> Result<Vec<(usize, f64)>> {
    par::try_map(exec, sizes, |&size| {
        let geometry = LatticeGeometry::new(size)?;
        let s = interpolate(data.sample(&geometry)?.field());
        Ok((size, residual_rn(&s, size)?.norm_hhalf))
    })
}

/// Ten low-degree test functions: `cos t`, `sin t` in every component and
/// `cos 2t`, `sin 2t` in the first two.
pub fn default_test_functions() -> Vec<TrigPoly> {
    let half = Complex64::new(0.5, 0.0);
    let ihalf = Complex64::new(0.0, 0.5);
    let mut out = Vec::new();
    let axis = |c: usize, v: Complex64| {
        let mut a = vec3::CZERO;
        a[c] = v;
        a
    };
    let build = |k: i64, c: usize, sine: bool| {
        // cos = (z^k + z^-k)/2, sin = (z^k - z^-k)/(2i)
        let (p, m) = if sine { (-ihalf, ihalf) } else { (half, half) };
        let seq: CoeffSequence = [(k, axis(c, p)), (-k, axis(c, m))].into_iter().collect();
        seq.to_poly(2).expect("degree 2")
    };
    for c in 0..3 {
        out.push(build(1, c, false));
        out.push(build(1, c, true));
    }
    for c in 0..2 {
        out.push(build(2, c, false));
        out.push(build(2, c, true));
    }
    out
}

/// `sum_k a_k . conj(b_k)`, real part.
fn pairing<A: Coefficients>(a: &A, b: &TrigPoly) -> f64 {
    let mut acc = 0.0;
    a.for_each_coeff(|k, x| {
        let y = b.coeff(k);
        acc += (0..3).map(|c| (x[c] * y[c].conj()).re).sum::<f64>();
    });
    acc
}

/// Weak-form gaps at every interior snapshot, with `dS/dt` from central
/// differences of the interpolants.
pub fn weak_residual(traj: &Trajectory, testfns: &[TrigPoly]) -> Result<WeakResidualReport> {
    if traj.len() < 3 {
        return Err(Error::TooFewSnapshots {
            needed: 3,
            got: traj.len(),
        });
    }
    let polys: Vec<TrigPoly> = traj.states.iter().map(interpolate).collect();
    let mut entries = Vec::new();
    for i in 1..traj.len() - 1 {
        let span = traj.times[i + 1] - traj.times[i - 1];
        let ds = polys[i + 1]
            .sub(&polys[i - 1])
            .map_coeffs(|_, c| vec3::cscale(c, (1.0 / span).into()));
        let s = &polys[i];
        for (j, phi) in testfns.iter().enumerate() {
            let lhs = pairing(phi, &ds);
            let phi_x_s = convolve(phi, s, Product::Cross);
            let mut rhs = 0.0;
            phi_x_s.for_each_coeff(|k, g| {
                let w = k.abs() as f64;
                let sk: CVec3 = s.coeff(k);
                rhs += w * (0..3).map(|c| (sk[c] * g[c].conj()).re).sum::<f64>();
            });
            entries.push(WeakResidualEntry {
                phi: j,
                t: traj.times[i],
                gap: (lhs - rhs).abs(),
            });
        }
    }
    Ok(WeakResidualReport {
        n: traj.states[0].size(),
        entries,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ViscosityRow {
    pub epsilon: f64,
    /// `|S_eps(T) - S_0(T)|_{H^{1/2}}` against the inviscid run.
    pub terminal_distance: f64,
    /// Largest step-to-step increase of the `l^2` norm (<= 0 means monotone).
    pub l2_max_increase: f64,
    pub hhalf_max_increase: f64,
    pub final_l2: f64,
    pub final_hhalf: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ViscositySweep {
    pub n: usize,
    pub t_end: f64,
    pub rows: Vec<ViscosityRow>,
}

impl ViscositySweep {
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(
            w,
            "# schema=cmspin-viscosity v{}",
            super::report::REPORT_SCHEMA_VERSION
        )?;
        writeln!(
            w,
            "n,epsilon,terminal_distance,l2_max_increase,hhalf_max_increase,final_l2,final_hhalf"
        )?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                self.n,
                r.epsilon,
                r.terminal_distance,
                r.l2_max_increase,
                r.hhalf_max_increase,
                r.final_l2,
                r.final_hhalf
            )?;
        }
        Ok(())
    }
}

fn hhalf_distance(a: &LatticeField, b: &LatticeField) -> Result<f64> {
    let d = interpolate(&a.sub(b));
    sobolev_norm(&d, 0.5, SobolevKind::Inhomogeneous)
}

/// Runs the flow for each viscosity and compares terminal states with the
/// inviscid run at the same lattice size.
pub fn viscosity_sweep(
    data: &InitialData,
    size: usize,
    epsilons: &[f64],
    run: &RunSpec,
    exec: Execution,
) -> Result<ViscositySweep> {
    let plain = RunSpec {
        method: Method::Rk4,
        ..run.clone()
    };
    let mut jobs = vec![0.0];
    jobs.extend_from_slice(epsilons);
    let trajs = par::try_map(exec, &jobs, |&eps| plain.run(data, size, eps, 1))?;
    let inviscid = trajs[0].last();
    let rows = epsilons
        .iter()
        .zip(&trajs[1..])
        .map(|(&epsilon, t)| {
            let last = t.diagnostics.last().expect("nonempty");
            Ok(ViscosityRow {
                epsilon,
                terminal_distance: hhalf_distance(t.last(), inviscid)?,
                l2_max_increase: t.max_increase(|d| d.l2),
                hhalf_max_increase: t.max_increase(|d| d.hhalf),
                final_l2: last.l2,
                final_hhalf: last.hhalf,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ViscositySweep {
        n: size,
        t_end: run.t_end,
        rows,
    })
}
