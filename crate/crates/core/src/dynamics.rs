//! Time integration of the spin flow `dS/dt = S x |grad|_N S + eps Delta_N S`.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{
    discrete_norm, halfwave, hamiltonian, LatticeField, MultiplierOp, NormKind, SpinConfiguration,
};
use crate::vec3::Vec3;

/// Version tag written into trajectory exports.
pub const TRAJECTORY_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Classical fourth-order Runge-Kutta.
    #[default]
    Rk4,
    /// RK4 followed by nodewise renormalization after every full step.
    Rk4Projected,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlowParams {
    pub epsilon: f64,
    pub dt: f64,
    pub t_end: f64,
    pub method: Method,
    pub record_every: usize,
    /// Skip the stability cap check.
    pub allow_large_step: bool,
}

impl Default for FlowParams {
    fn default() -> Self {
        Self {
            epsilon: 0.0,
            dt: 1e-3,
            t_end: 1.0,
            method: Method::Rk4,
            record_every: 1,
            allow_large_step: false,
        }
    }
}

/// Largest admissible step, `1 / (4 mu_max max(1, eps N))`.
pub fn stability_cap(size: usize, epsilon: f64) -> f64 {
    let n = (size / 2) as f64;
    let mu_max = n * (n + 1.0) / size as f64;
    1.0 / (4.0 * mu_max * (epsilon * size as f64).max(1.0))
}

impl FlowParams {
    pub fn validate(&self, size: usize) -> Result<()> {
        if !(self.epsilon >= 0.0) || !self.epsilon.is_finite() {
            return Err(Error::InvalidParams(format!(
                "epsilon must be finite and >= 0, got {}",
                self.epsilon
            )));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::InvalidParams(format!(
                "dt must be > 0, got {}",
                self.dt
            )));
        }
        if !(self.t_end >= 0.0) || !self.t_end.is_finite() {
            return Err(Error::InvalidParams(format!(
                "t_end must be >= 0, got {}",
                self.t_end
            )));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidParams("record_every must be >= 1".into()));
        }
        if self.method == Method::Rk4Projected && self.epsilon > 0.0 {
            return Err(Error::ProjectionWithViscosity(self.epsilon));
        }
        let cap = stability_cap(size, self.epsilon);
        if !self.allow_large_step && self.dt > cap {
            return Err(Error::StepTooLarge { dt: self.dt, cap });
        }
        Ok(())
    }

    /// Number of fixed steps and the effective step that lands on `t_end`.
    pub fn schedule(&self) -> (usize, f64) {
        if self.t_end == 0.0 {
            return (0, self.dt);
        }
        let ratio = self.t_end / self.dt;
        let steps = if (ratio - ratio.round()).abs() < 1e-9 * ratio.max(1.0) {
            ratio.round()
        } else {
            ratio.ceil()
        } as usize;
        (steps, self.t_end / steps as f64)
    }
}

/// Conserved and monitored quantities at one snapshot.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub t: f64,
    pub hamiltonian: f64,
    pub l2: f64,
    pub hhalf: f64,
    pub h52: f64,
    pub sphere_deviation: f64,
    pub total_spin: Vec3,
}

impl Diagnostics {
    pub fn of(t: f64, s: &LatticeField) -> Self {
        Self {
            t,
            hamiltonian: hamiltonian(s),
            l2: discrete_norm(s, NormKind::L2),
            hhalf: discrete_norm(s, NormKind::Hhalf),
            h52: discrete_norm(s, NormKind::H52),
            sphere_deviation: s.sphere_deviation(),
            total_spin: s.total(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub params: FlowParams,
    pub times: Vec<f64>,
    pub states: Vec<LatticeField>,
    pub diagnostics: Vec<Diagnostics>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> &LatticeField {
        self.states
            .last()
            .expect("trajectory holds the initial state")
    }

    /// `max_t |H(t) - H(0)| / max(H(0), 1)`.
    pub fn energy_drift(&self) -> f64 {
        let h0 = self.diagnostics[0].hamiltonian;
        self.diagnostics
            .iter()
            .map(|d| (d.hamiltonian - h0).abs())
            .fold(0.0, f64::max)
            / h0.max(1.0)
    }

    /// `max_t |sum_k S_k(t) - sum_k S_k(0)|` (max norm over components).
    pub fn total_spin_drift(&self) -> f64 {
        let m0 = self.diagnostics[0].total_spin;
        self.diagnostics
            .iter()
            .flat_map(|d| (0..3).map(move |c| (d.total_spin[c] - m0[c]).abs()))
            .fold(0.0, f64::max)
    }

    pub fn max_sphere_deviation(&self) -> f64 {
        self.diagnostics
            .iter()
            .map(|d| d.sphere_deviation)
            .fold(0.0, f64::max)
    }

    /// Largest increase of a monitored quantity between consecutive snapshots.
    pub fn max_increase(&self, quantity: impl Fn(&Diagnostics) -> f64) -> f64 {
        self.diagnostics
            .windows(2)
            .map(|w| quantity(&w[1]) - quantity(&w[0]))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Writes `t,k,Sx,Sy,Sz` rows for every recorded state.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "# schema=cmspin-trajectory v{TRAJECTORY_SCHEMA_VERSION}")?;
        writeln!(w, "t,k,Sx,Sy,Sz")?;
        for (t, s) in self.times.iter().zip(&self.states) {
            for (k, v) in s.values().iter().enumerate() {
                writeln!(w, "{t:.16e},{k},{:.16e},{:.16e},{:.16e}", v[0], v[1], v[2])?;
            }
        }
        Ok(())
    }

    /// Diagnostics sidecar document.
    pub fn diagnostics_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": "cmspin-diagnostics",
            "version": TRAJECTORY_SCHEMA_VERSION,
            "n": self.states.first().map(|s| s.size()),
            "params": self.params,
            "snapshots": self.diagnostics,
        })
    }
}

/// Right-hand side `S x |grad|_N S + eps Delta_N S`.
pub fn rhs_spin(s: &LatticeField, epsilon: f64) -> LatticeField {
    let precession = s.cross(&halfwave(s));
    if epsilon == 0.0 {
        precession
    } else {
        let size = s.size();
        let lap = s.apply_symbol(|k| MultiplierOp::Laplacian.symbol(k, size));
        precession.axpy(epsilon, &lap)
    }
}

fn rk4_step(s: &LatticeField, dt: f64, epsilon: f64) -> LatticeField {
    let k1 = rhs_spin(s, epsilon);
    let k2 = rhs_spin(&s.axpy(0.5 * dt, &k1), epsilon);
    let k3 = rhs_spin(&s.axpy(0.5 * dt, &k2), epsilon);
    let k4 = rhs_spin(&s.axpy(dt, &k3), epsilon);
    let mut next = s.clone();
    for (i, v) in next.values_mut().iter_mut().enumerate() {
        for c in 0..3 {
            v[c] += dt / 6.0
                * (k1.values()[i][c]
                    + 2.0 * k2.values()[i][c]
                    + 2.0 * k3.values()[i][c]
                    + k4.values()[i][c]);
        }
    }
    next
}

/// Integrates a unit-spin initial state.
pub fn integrate(s0: &SpinConfiguration, params: &FlowParams) -> Result<Trajectory> {
    integrate_field(s0.field(), params)
}

/// Integrates an arbitrary initial field (no unit-norm requirement).
pub fn integrate_field(s0: &LatticeField, params: &FlowParams) -> Result<Trajectory> {
    integrate_observed(s0, params, |_, _| {})
}

/// Like [`integrate_field`], additionally calling `observe(t, state)` after
/// every step.
pub fn integrate_observed(
    s0: &LatticeField,
    params: &FlowParams,
    mut observe: impl FnMut(f64, &LatticeField),
) -> Result<Trajectory> {
    params.validate(s0.size())?;
    let (steps, dt) = params.schedule();
    let mut traj = Trajectory {
        params: params.clone(),
        times: vec![0.0],
        states: vec![s0.clone()],
        diagnostics: vec![Diagnostics::of(0.0, s0)],
    };
    let mut state = s0.clone();
    for step in 1..=steps {
        state = rk4_step(&state, dt, params.epsilon);
        if params.method == Method::Rk4Projected {
            state = state.normalized();
        }
        let t = step as f64 * dt;
        if !state.is_finite() {
            return Err(Error::NonFiniteState { t });
        }
        observe(t, &state);
        if step % params.record_every == 0 || step == steps {
            traj.diagnostics.push(Diagnostics::of(t, &state));
            traj.times.push(t);
            traj.states.push(state.clone());
        }
    }
    Ok(traj)
}

/// Both sides of the energy identity for the third-order discrete norm.
#[derive(Clone, Debug, Serialize)]
pub struct ViscousIdentityReport {
    /// `1/2 d/dt <D+^2 |grad| S, D+^2 S> + eps <D+^3 |grad| S, D+^3 S>`,
    /// with the time derivative expanded bilinearly.
    pub lhs: f64,
    /// `<D+^2 |grad| S, D+^2 (S x |grad| S)>`.
    pub rhs: f64,
    /// The `k = 0, 1` terms of the discrete Leibniz expansion of `rhs`.
    pub leibniz_sum: f64,
    /// The `k = 2` term, `<D+^2 f, D+^2 f x T^2 S>` with `f = |grad| S`.
    pub top_term: f64,
    /// `lhs - rhs`.
    pub residual: f64,
    /// `rhs - leibniz_sum - (-top_term)`.
    pub leibniz_defect: f64,
    /// Magnitude reference for relative comparisons.
    pub scale: f64,
}

impl ViscousIdentityReport {
    pub fn relative_residual(&self) -> f64 {
        self.residual.abs() / self.scale
    }
}

fn apply_ops(s: &LatticeField, ops: &[MultiplierOp]) -> LatticeField {
    let size = s.size();
    s.apply_symbol(|k| ops.iter().map(|op| op.symbol(k, size)).product())
}

/// Evaluates both sides of the viscous energy identity at state `s`.
pub fn viscous_identity_check(s: &LatticeField, epsilon: f64) -> ViscousIdentityReport {
    use MultiplierOp::{DiffPlus as Dp, HalfwavePower, Translate};
    let hw = HalfwavePower(1.0);
    let sdot = rhs_spin(s, epsilon);

    let a_s = apply_ops(s, &[Dp, Dp, hw]);
    let b_s = apply_ops(s, &[Dp, Dp]);
    let a_sdot = apply_ops(&sdot, &[Dp, Dp, hw]);
    let b_sdot = apply_ops(&sdot, &[Dp, Dp]);
    let visc = apply_ops(s, &[Dp, Dp, Dp, hw]).inner(&apply_ops(s, &[Dp, Dp, Dp]));
    let lhs = 0.5 * (a_sdot.inner(&b_s) + a_s.inner(&b_sdot)) + epsilon * visc;

    let f = halfwave(s);
    let rhs = a_s.inner(&apply_ops(&s.cross(&f), &[Dp, Dp]));

    // D+^2 (f x g) = f x D+^2 g + 2 D+ f x D+ T g + D+^2 f x T^2 g, with g = S
    let d2f = &a_s;
    let t0 = d2f.inner(&f.cross(&b_s));
    let t1 = 2.0 * d2f.inner(&apply_ops(&f, &[Dp]).cross(&apply_ops(s, &[Dp, Translate(1)])));
    let t2 = d2f.inner(&d2f.cross(&apply_ops(s, &[Translate(2)])));
    // S x f = -(f x S)
    let leibniz_sum = -(t0 + t1);
    let top_term = t2;

    let scale = [lhs, rhs, t0, t1, epsilon * visc]
        .iter()
        .map(|x| x.abs())
        .fold(f64::MIN_POSITIVE, f64::max);
    ViscousIdentityReport {
        lhs,
        rhs,
        leibniz_sum,
        top_term,
        residual: lhs - rhs,
        leibniz_defect: rhs - leibniz_sum + top_term,
        scale,
    }
}
