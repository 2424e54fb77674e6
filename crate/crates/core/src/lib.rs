//! Spin lattice flow on the `N`-point roots of unity, its trigonometric
//! interpolation, and diagnostics of the continuum limit.
//!
//! The discrete flow is
//!
//! ```text
//! dS_k/dt = S_k x (|grad|_N S)_k + eps (Delta_N S)_k,    k = 0 .. N-1,
//! ```
//!
//! where `|grad|_N` is the circulant operator with eigenvalues
//! `mu_k = |k| (1 - |k|/N)`. Lattice fields are identified with their
//! degree-`n` trigonometric interpolants (`N = 2n + 1`), which is how the
//! [`analysis`] module compares runs across lattice sizes.
//!
//! ```
//! use cmspin::{spectrum, LatticeGeometry, InitialData, FlowParams, integrate};
//!
//! let mu = spectrum(5).unwrap();
//! assert!((mu[1] - 0.8).abs() < 1e-15);
//!
//! let g = LatticeGeometry::new(31).unwrap();
//! let s0 = InitialData::smooth().sample(&g).unwrap();
//! let traj = integrate(&s0, &FlowParams { t_end: 0.1, ..FlowParams::default() }).unwrap();
//! assert!(traj.energy_drift() < 1e-8);
//! ```

pub mod analysis;
pub mod data;
pub mod dft;
pub mod dynamics;
pub mod error;
pub mod fit;
pub mod lattice;
pub mod par;
pub mod spectral;
pub mod vec3;

/// Library version, stamped into every artifact header.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use data::InitialData;
pub use dft::DftBackend;
pub use dynamics::{integrate, rhs_spin, viscous_identity_check, FlowParams, Method, Trajectory};
pub use error::{Error, Result};
pub use lattice::{
    discrete_norm, hamiltonian, spectrum, LatticeField, LatticeGeometry, MultiplierOp, NormKind,
    SpinConfiguration,
};
pub use par::Execution;
pub use spectral::{CoeffSequence, TrigPoly};
