use nalgebra::{DMatrix, DVector};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::randist::{ald_sample, noise_sample, NoiseLaw, RngStream};

/// Predictors in the simulation designs (the intercept comes on top).
pub const SIM_K: usize = 20;

/// Standard deviation of `0.9·N(0,1) + 0.1·N(0,15²)`.
pub fn contaminated_sd() -> f64 {
    (0.9f64 + 0.1 * 225.0).sqrt()
}

/// One of the six regression designs.
#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioSpec {
    pub id: u8,
    pub n: usize,
    pub k: usize,
    pub tau: f64,
    /// AR(1) correlation between neighbouring predictors.
    pub r: f64,
    pub sigma: f64,
    pub noise: NoiseLaw,
    /// Intercept followed by `k` slopes.
    pub beta_true: Vec<f64>,
}

/// `β₀ = 1, β₁ = 3, β₂ = 0.5, β₄ = β₁₁ = 1, β₇ = 1.5`, all others zero.
pub fn true_beta(k: usize) -> Vec<f64> {
    let mut b = vec![0.0; k + 1];
    for (j, v) in [(0, 1.0), (1, 3.0), (2, 0.5), (4, 1.0), (7, 1.5), (11, 1.0)] {
        if j <= k {
            b[j] = v;
        }
    }
    b
}

fn skew_t3() -> NoiseLaw {
    NoiseLaw::SkewT {
        df: 3.0,
        gamma: 3.0,
    }
}

impl ScenarioSpec {
    /// Simulation design `id` in `1..=6`.
    pub fn simulation(id: u8, n: usize, tau: f64) -> Result<Self> {
        let standardised_w = NoiseLaw::Scaled {
            factor: 1.0 / contaminated_sd(),
            law: Box::new(NoiseLaw::ContaminatedNormal {
                weight: 0.1,
                scale: 15.0,
            }),
        };
        let (r, sigma, noise) = match id {
            1 => (0.5, 2.0, NoiseLaw::Gaussian { sd: 1.0 }),
            2 => (0.5, 9.67, standardised_w),
            3 => (0.95, 9.67, standardised_w),
            4 => (
                0.5,
                1.0,
                NoiseLaw::Mixture(vec![
                    (0.9, skew_t3()),
                    (0.1, NoiseLaw::Gaussian { sd: 20.0 }),
                ]),
            ),
            5 => (0.5, 2.0, NoiseLaw::Cauchy),
            6 => (
                0.5,
                1.0,
                NoiseLaw::Mixture(vec![
                    (0.8, skew_t3()),
                    (0.1, NoiseLaw::Gaussian { sd: 10.0 }),
                    (0.1, NoiseLaw::Cauchy),
                ]),
            ),
            _ => {
                return Err(Error::Parameter(format!(
                    "scenario {id} is not one of 1..=6"
                )))
            }
        };
        let spec = ScenarioSpec {
            id,
            n,
            k: SIM_K,
            tau,
            r,
            sigma,
            noise,
            beta_true: true_beta(SIM_K),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r.abs() < 1.0) {
            return Err(Error::Parameter(format!(
                "correlation {} must satisfy |r| < 1",
                self.r
            )));
        }
        if self.n == 0 || self.k == 0 {
            return Err(Error::Parameter("scenario needs n ≥ 1 and k ≥ 1".into()));
        }
        if self.beta_true.len() != self.k + 1 {
            return Err(Error::Dimension(format!(
                "true β has length {}, expected k + 1 = {}",
                self.beta_true.len(),
                self.k + 1
            )));
        }
        if !(self.tau > 0.0 && self.tau < 1.0) || !(self.sigma > 0.0) {
            return Err(Error::Parameter(
                "scenario needs 0 < τ < 1 and σ > 0".into(),
            ));
        }
        self.noise.validate()
    }
}

/// `n` rows of `N_k(0, Σ)` with `Σᵢⱼ = r^|i−j|`, built as an AR(1) recursion
/// `x_j = r·x_{j−1} + √(1−r²)·z_j`.
pub fn ar1_design(n: usize, k: usize, r: f64, rng: &mut RngStream) -> DMatrix<f64> {
    let innov = (1.0 - r * r).sqrt();
    let mut x = DMatrix::zeros(n, k);
    for i in 0..n {
        let mut prev = rng.std_normal();
        x[(i, 0)] = prev;
        for j in 1..k {
            prev = r * prev + innov * rng.std_normal();
            x[(i, j)] = prev;
        }
    }
    x
}

/// Draws a dataset whose first column is the intercept; the response is
/// `β₀ + Xβ + σε`.
pub fn generate_scenario(spec: &ScenarioSpec, rng: &mut RngStream) -> Result<Dataset> {
    spec.validate()?;
    let x = ar1_design(spec.n, spec.k, spec.r, rng);
    let design = x.insert_column(0, 1.0);
    let beta = DVector::from_column_slice(&spec.beta_true);
    let mut y = &design * &beta;
    for yi in y.iter_mut() {
        *yi += spec.sigma * noise_sample(rng, &spec.noise)?;
    }
    Dataset::new(design, y)
}

/// Ten observations `yᵢ = xᵢ + εᵢ`, `xᵢ ~ N(0,1)`, `εᵢ ~ ALD(0, 0.03, ½)`:
/// a single-coefficient fixture whose unconditional-prior posterior is
/// multimodal.
pub fn toy_multimodal_dataset(rng: &mut RngStream) -> Result<Dataset> {
    let xs: Vec<f64> = (0..10).map(|_| rng.std_normal()).collect();
    let mut ys = Vec::with_capacity(xs.len());
    for x in &xs {
        ys.push(x + ald_sample(rng, 0.0, 0.03, 0.5)?);
    }
    Dataset::from_rows(&xs.iter().map(|&x| vec![x]).collect::<Vec<_>>(), ys)
}
