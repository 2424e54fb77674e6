//! Initial-data families sampled nodewise on the lattice.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticeField, LatticeGeometry, SpinConfiguration};
use crate::vec3::{self, Vec3};

/// Real trigonometric series `c0 + sum_j (a_j cos jt + b_j sin jt)`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TrigSeries {
    #[serde(default)]
    pub constant: f64,
    #[serde(default)]
    pub cos: Vec<f64>,
    #[serde(default)]
    pub sin: Vec<f64>,
}

impl TrigSeries {
    pub fn eval(&self, t: f64) -> f64 {
        let c: f64 = self
            .cos
            .iter()
            .enumerate()
            .map(|(j, a)| a * ((j + 1) as f64 * t).cos())
            .sum();
        let s: f64 = self
            .sin
            .iter()
            .enumerate()
            .map(|(j, b)| b * ((j + 1) as f64 * t).sin())
            .sum();
        self.constant + c + s
    }

    pub fn is_finite(&self) -> bool {
        self.constant.is_finite() && self.cos.iter().chain(&self.sin).all(|x| x.is_finite())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum InitialData {
    Constant {
        value: Vec3,
    },
    /// `(cos m t, sin m t, 0)`.
    GreatCircle {
        m: u32,
    },
    /// `(sin a cos b, sin a sin b, cos a)` with `b = winding * t + beta(t)`.
    ///
    /// A nonzero `rough_amplitude` adds `rough_amplitude * |sin t|^rough_exponent`
    /// to the polar angle, which caps the Sobolev regularity near
    /// `rough_exponent + 1/2`.
    Tilted {
        alpha: TrigSeries,
        beta: TrigSeries,
        #[serde(default)]
        winding: i32,
        #[serde(default)]
        rough_amplitude: f64,
        #[serde(default = "default_rough_exponent")]
        rough_exponent: f64,
    },
    /// `e3` plus a seeded band-limited perturbation, projected to the sphere.
    RandomBandLimited {
        seed: u64,
        degree: u32,
        amplitude: f64,
    },
    /// Independent uniformly distributed unit vectors, one per node.
    RandomSpins {
        seed: u64,
    },
}

fn default_rough_exponent() -> f64 {
    3.0
}

impl InitialData {
    /// Analytic tilted family used as the default smooth data.
    pub fn smooth() -> Self {
        InitialData::Tilted {
            alpha: TrigSeries {
                constant: 1.1,
                cos: vec![0.4],
                sin: vec![0.0, 0.2],
            },
            beta: TrigSeries {
                constant: 0.0,
                cos: vec![],
                sin: vec![0.3],
            },
            winding: 1,
            rough_amplitude: 0.0,
            rough_exponent: default_rough_exponent(),
        }
    }

    /// The smooth family plus a `|sin t|^3` term, in `H^{5/2}` but not analytic.
    pub fn finite_regularity() -> Self {
        match Self::smooth() {
            InitialData::Tilted {
                alpha,
                beta,
                winding,
                ..
            } => InitialData::Tilted {
                alpha,
                beta,
                winding,
                rough_amplitude: 0.3,
                rough_exponent: 3.0,
            },
            _ => unreachable!(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            InitialData::Constant { value } => {
                let r = vec3::norm(value);
                if (r - 1.0).abs() > SpinConfiguration::UNIT_TOLERANCE {
                    return Err(Error::NotUnitNorm { index: 0, norm: r });
                }
            }
            InitialData::GreatCircle { m } => {
                if *m == 0 {
                    return Err(Error::InvalidParams(
                        "great-circle mode m must be >= 1".into(),
                    ));
                }
            }
            InitialData::Tilted {
                alpha,
                beta,
                rough_amplitude,
                rough_exponent,
                ..
            } => {
                if !alpha.is_finite() || !beta.is_finite() || !rough_amplitude.is_finite() {
                    return Err(Error::InvalidParams("tilted data must be finite".into()));
                }
                if !(*rough_exponent > 0.0) {
                    return Err(Error::InvalidParams("rough_exponent must be > 0".into()));
                }
            }
            InitialData::RandomBandLimited { amplitude, .. } => {
                if !(*amplitude >= 0.0 && *amplitude < 1.0 / 3.0) {
                    return Err(Error::InvalidParams(
                        "amplitude must lie in [0, 1/3) so the field stays away from 0".into(),
                    ));
                }
            }
            InitialData::RandomSpins { .. } => {}
        }
        Ok(())
    }

    /// Nodewise sampling `S_k = S_0(theta_k)`.
    pub fn sample(&self, geometry: &LatticeGeometry) -> Result<SpinConfiguration> {
        self.validate()?;
        let field = match self {
            InitialData::GreatCircle { m } => {
                if *m as usize > geometry.half() {
                    return Err(Error::DegreeTooHigh {
                        degree: *m as usize,
                        max: geometry.half(),
                    });
                }
                self.field_from_profile(geometry)
            }
            InitialData::RandomSpins { seed } => random_spins(geometry, *seed),
            _ => self.field_from_profile(geometry),
        };
        SpinConfiguration::new(field)
    }

    fn field_from_profile(&self, geometry: &LatticeGeometry) -> LatticeField {
        let profile = self.profile().expect("continuous family");
        LatticeField::from_fn(geometry.clone(), profile)
    }

    /// The continuous map `t -> S_0(t)`, if the family has one.
    pub fn profile(&self) -> Option<Box<dyn Fn(f64) -> Vec3 + Send + Sync>> {
        match self.clone() {
            InitialData::Constant { value } => Some(Box::new(move |_| value)),
            InitialData::GreatCircle { m } => {
                let m = m as f64;
                Some(Box::new(move |t| [(m * t).cos(), (m * t).sin(), 0.0]))
            }
            InitialData::Tilted {
                alpha,
                beta,
                winding,
                rough_amplitude,
                rough_exponent,
            } => Some(Box::new(move |t| {
                let a = alpha.eval(t) + rough_amplitude * t.sin().abs().powf(rough_exponent);
                let b = winding as f64 * t + beta.eval(t);
                [a.sin() * b.cos(), a.sin() * b.sin(), a.cos()]
            })),
            InitialData::RandomBandLimited {
                seed,
                degree,
                amplitude,
            } => {
                let modes = band_limited_modes(seed, degree, amplitude);
                Some(Box::new(move |t| {
                    let mut v = [0.0, 0.0, 1.0];
                    for (j, (a, b)) in modes.iter().enumerate() {
                        let (s, c) = (j as f64 * t).sin_cos();
                        for i in 0..3 {
                            v[i] += a[i] * c + b[i] * s;
                        }
                    }
                    let r = vec3::norm(&v);
                    [v[0] / r, v[1] / r, v[2] / r]
                }))
            }
            InitialData::RandomSpins { .. } => None,
        }
    }
}

/// Cosine/sine amplitudes per frequency `0..=degree`, with `l^1` mass at most
/// `3 * amplitude` per component.
fn band_limited_modes(seed: u64, degree: u32, amplitude: f64) -> Vec<(Vec3, Vec3)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = 2 * degree as usize + 1;
    let w = amplitude / count as f64;
    (0..=degree)
        .map(|j| {
            let mut draw = || -> Vec3 { std::array::from_fn(|_| w * rng.gen_range(-1.0..1.0)) };
            let a = draw();
            let b = if j == 0 { vec3::ZERO } else { draw() };
            (a, b)
        })
        .collect()
}

/// Uniform random unit vectors, one per node.
pub fn random_spins(geometry: &LatticeGeometry, seed: u64) -> LatticeField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..geometry.size())
        .map(|_| random_unit(&mut rng))
        .collect();
    LatticeField::new(geometry.clone(), values).expect("length matches")
}

/// A uniformly distributed point on the unit sphere.
pub fn random_unit<R: Rng>(rng: &mut R) -> Vec3 {
    let z: f64 = rng.gen_range(-1.0..1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let r = (1.0 - z * z).sqrt();
    [r * phi.cos(), r * phi.sin(), z]
}
