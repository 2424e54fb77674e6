//! Exact-length discrete Fourier transforms for odd lattice sizes.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Which transform implementation a lattice uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DftBackend {
    /// Planned FFT (mixed radix / Bluestein for awkward lengths).
    #[default]
    Fft,
    /// O(N^2) summation against a precomputed twiddle table.
    Direct,
}

#[derive(Clone)]
enum Plan {
    Fft {
        forward: Arc<dyn Fft<f64>>,
        inverse: Arc<dyn Fft<f64>>,
    },
    Direct {
        twiddles: Arc<[Complex64]>,
    },
}

/// A forward/inverse transform pair of fixed length.
///
/// `forward` computes `X_k = sum_j x_j e^{-2 pi i jk/N}` and `inverse` the
/// unnormalized conjugate sum; callers divide by `N` where needed.
#[derive(Clone)]
pub struct DftPlan {
    len: usize,
    backend: DftBackend,
    plan: Plan,
}

impl fmt::Debug for DftPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DftPlan")
            .field("len", &self.len)
            .field("backend", &self.backend)
            .finish()
    }
}

impl DftPlan {
    pub fn new(len: usize, backend: DftBackend) -> Self {
        let plan = match backend {
            DftBackend::Fft => {
                let mut planner = FftPlanner::<f64>::new();
                Plan::Fft {
                    forward: planner.plan_fft_forward(len),
                    inverse: planner.plan_fft_inverse(len),
                }
            }
            DftBackend::Direct => {
                let twiddles = (0..len)
                    .map(|m| Complex64::from_polar(1.0, -2.0 * PI * m as f64 / len as f64))
                    .collect::<Vec<_>>();
                Plan::Direct {
                    twiddles: twiddles.into(),
                }
            }
        };
        Self { len, backend, plan }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn backend(&self) -> DftBackend {
        self.backend
    }

    pub fn forward(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.len);
        match &self.plan {
            Plan::Fft { forward, .. } => forward.process(buf),
            Plan::Direct { twiddles } => direct(buf, twiddles, false),
        }
    }

    pub fn inverse(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.len);
        match &self.plan {
            Plan::Fft { inverse, .. } => inverse.process(buf),
            Plan::Direct { twiddles } => direct(buf, twiddles, true),
        }
    }
}

fn direct(buf: &mut [Complex64], twiddles: &[Complex64], inverse: bool) {
    let n = buf.len();
    let input = buf.to_vec();
    for (k, out) in buf.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, x) in input.iter().enumerate() {
            let w = twiddles[(j * k) % n];
            acc += x * if inverse { w.conj() } else { w };
        }
        *out = acc;
    }
}
