//! Hyperparameter sensitivity on a smooth four-logistic regression curve.

use rayon::prelude::*;

use crate::data::Dataset;
use crate::error::Result;
use crate::randist::{ald_sample, stage, RngStream};
use crate::sampler::{run_chain, ModelSpec, Penalty};

pub const DESIGN_POINTS: usize = 50;

fn logistic(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

/// The four basis functions evaluated at `x`.
pub fn features(x: f64) -> [f64; 4] {
    [
        logistic(4.0 * (x - 0.3)),
        logistic(-3.0 * (x - 0.2)),
        logistic(4.0 * (x - 0.7)),
        logistic(-5.0 * (x - 0.8)),
    ]
}

/// True curve: the sum of the four basis functions.
pub fn true_curve(x: f64) -> f64 {
    features(x).iter().sum()
}

/// 50 equally spaced points on `[−2, 2]`.
pub fn design_grid() -> Vec<f64> {
    (0..DESIGN_POINTS)
        .map(|i| -2.0 + 4.0 * i as f64 / (DESIGN_POINTS - 1) as f64)
        .collect()
}

/// Basis design at the grid with unit coefficients and `ALD(0, 0.03, ½)` noise.
pub fn sensitivity_dataset(rng: &mut RngStream) -> Result<Dataset> {
    let grid = design_grid();
    let rows: Vec<Vec<f64>> = grid.iter().map(|&x| features(x).to_vec()).collect();
    let mut y = Vec::with_capacity(grid.len());
    for &x in &grid {
        y.push(true_curve(x) + ald_sample(rng, 0.0, 0.03, 0.5)?);
    }
    Dataset::from_rows(&rows, y)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HyperSetting {
    pub label: String,
    pub penalty: Penalty,
}

/// Each hyperparameter varied over `values` with the others held at one.
pub fn one_at_a_time_grid(base: Penalty, values: &[f64]) -> Vec<HyperSetting> {
    let mut out = vec![HyperSetting {
        label: "baseline".into(),
        penalty: base,
    }];
    let names: &[&str] = match base {
        Penalty::Lasso { .. } => &["a", "b", "c", "d"],
        Penalty::ElasticNet { .. } => &["a1", "b1", "a2", "b2", "a3", "b3"],
    };
    for (slot, name) in names.iter().enumerate() {
        for &v in values {
            if v == 1.0 {
                continue;
            }
            let penalty = match base {
                Penalty::Lasso { .. } => {
                    let mut h = [1.0; 4];
                    h[slot] = v;
                    Penalty::Lasso {
                        a: h[0],
                        b: h[1],
                        c: h[2],
                        d: h[3],
                    }
                }
                Penalty::ElasticNet { .. } => {
                    let mut h = [1.0; 6];
                    h[slot] = v;
                    Penalty::ElasticNet {
                        a1: h[0],
                        b1: h[1],
                        a2: h[2],
                        b2: h[3],
                        a3: h[4],
                        b3: h[5],
                    }
                }
            };
            out.push(HyperSetting {
                label: format!("{name}={v}"),
                penalty,
            });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint {
    pub label: String,
    pub x: f64,
    pub fitted: f64,
    pub truth: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SensitivityControls {
    pub tau: f64,
    pub n_iter: usize,
    pub burn_in: usize,
    pub thin: usize,
    pub seed: u64,
}

impl Default for SensitivityControls {
    /// 3000 retained draws after 1000 burn-in at the median.
    fn default() -> Self {
        SensitivityControls {
            tau: 0.5,
            n_iter: 4000,
            burn_in: 1000,
            thin: 1,
            seed: 0,
        }
    }
}

/// Fits every setting to one shared dataset and reports `xᵢβ̄` at the
/// design points, with `β̄` the posterior mean.
pub fn sensitivity_curve_study(
    settings: &[HyperSetting],
    controls: &SensitivityControls,
) -> Result<Vec<CurvePoint>> {
    let mut data_rng = RngStream::for_unit(controls.seed, 0, 0, stage::DATA);
    let data = sensitivity_dataset(&mut data_rng)?;
    let grid = design_grid();
    let chain_stream = RngStream::for_unit(controls.seed, 0, 0, stage::CHAIN).stream_id();
    let curves: Vec<Result<Vec<CurvePoint>>> = settings
        .par_iter()
        .map(|setting| {
            let mut spec = ModelSpec::new(controls.tau, setting.penalty);
            spec.n_iter = controls.n_iter;
            spec.burn_in = controls.burn_in;
            spec.thin = controls.thin;
            spec.seed = controls.seed;
            spec.stream = chain_stream;
            let samples = run_chain(&data, &spec)?;
            let beta: Vec<f64> = (0..data.k()).map(|j| samples.column_mean(j)).collect();
            Ok(grid
                .iter()
                .enumerate()
                .map(|(i, &x)| CurvePoint {
                    label: setting.label.clone(),
                    x,
                    fitted: data.x.row(i).iter().zip(&beta).map(|(a, b)| a * b).sum(),
                    truth: true_curve(x),
                })
                .collect())
        })
        .collect();
    let mut out = Vec::with_capacity(settings.len() * grid.len());
    for c in curves {
        out.extend(c?);
    }
    Ok(out)
}
