//! Loss family, the asymmetric Huberised density and joint log-posterior
//! surfaces over `(β, ρ²)`.

use std::f64::consts::{LN_2, PI};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, Tolerance};
use crate::randist::GigParams;
use crate::specfun::log_bessel_k;

pub const HUBER_DELTA: f64 = 1.345;

/// Floor for the `K₀` argument in the log-posterior.
const K0_ARG_FLOOR: f64 = 1e-300;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LossParams {
    pub eta: f64,
    pub rho2: f64,
    pub tau: f64,
    pub delta: f64,
}

impl LossParams {
    pub fn new(eta: f64, rho2: f64, tau: f64) -> Result<Self> {
        let p = LossParams {
            eta,
            rho2,
            tau,
            delta: HUBER_DELTA,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.eta > 0.0
            && self.eta.is_finite()
            && self.rho2 > 0.0
            && self.rho2.is_finite()
            && self.tau > 0.0
            && self.tau < 1.0
            && self.delta > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "loss parameters need η > 0, ρ² > 0, 0 < τ < 1, δ > 0; got η={}, ρ²={}, τ={}, δ={}",
                self.eta, self.rho2, self.tau, self.delta
            )))
        }
    }
}

/// Quantile check loss `x(τ − I(x<0))`.
pub fn check_loss(x: f64, tau: f64) -> f64 {
    if x < 0.0 {
        x * (tau - 1.0)
    } else {
        x * tau
    }
}

pub fn huber_loss(x: f64, delta: f64) -> f64 {
    let a = x.abs();
    if a <= delta {
        0.5 * x * x
    } else {
        delta * (a - 0.5 * delta)
    }
}

/// `√(ζ₁ζ₂)(√(1 + x²/ζ₂) − 1)`.
pub fn soft_huber(x: f64, zeta1: f64, zeta2: f64) -> f64 {
    let u = x * x / zeta2;
    (zeta1 * zeta2).sqrt() * u / ((1.0 + u).sqrt() + 1.0)
}

/// `√(ζ₁ζ₂)(√(1 + |x|/ζ₂) − 1)`.
pub fn nonconvex_huber(x: f64, zeta1: f64, zeta2: f64) -> f64 {
    let u = x.abs() / zeta2;
    (zeta1 * zeta2).sqrt() * u / ((1.0 + u).sqrt() + 1.0)
}

/// `√(η(η + x²/ρ²)) − η`.
pub fn hyperbolic_loss(x: f64, eta: f64, rho2: f64) -> f64 {
    sqrt_gap(eta, x * x / rho2)
}

/// `√(η(η + a)) − η` without cancellation.
fn sqrt_gap(eta: f64, a: f64) -> f64 {
    eta * a / ((eta * (eta + a)).sqrt() + eta)
}

/// `(η, ρ²)` that make the asymmetric loss interpolate between the check
/// loss (`ζ₂ → ∞`) and its square root (`ζ₂ → 0`).
pub fn bridge_params(zeta2: f64) -> (f64, f64) {
    let r = zeta2.sqrt();
    let s = (zeta2 + 1.0).sqrt();
    (r * (r + s), r / (r + s))
}

/// `√(η(η + (x/ρ²)(τ − I(x<0)))) − η`.
pub fn asym_loss(x: f64, p: &LossParams) -> f64 {
    let a = check_loss(x, p.tau) / p.rho2;
    debug_assert!(a >= 0.0, "check loss is nonnegative");
    sqrt_gap(p.eta, a)
}

/// Log of the asymmetric Huberised density with location `mu`.
pub fn ln_asym_density(x: f64, mu: f64, p: &LossParams) -> f64 {
    let (eta, rho2, tau) = (p.eta, p.rho2, p.tau);
    (eta * tau * (1.0 - tau)).ln() - LN_2 - rho2.ln() - eta.ln_1p() - asym_loss(x - mu, p)
}

/// `ητ(1−τ)e^η / (2ρ²(η+1)) · exp(−√(η(η + ρ_τ(x−μ)/ρ²)))`.
pub fn asym_density(x: f64, mu: f64, p: &LossParams) -> f64 {
    ln_asym_density(x, mu, p).exp()
}

/// Marginal of the normal / exponential / GIG mixture with mixing law
/// `GIG(σ; ν, √(η/ρ²), √(ηρ²))`, by nested quadrature (σ outer, log v inner).
pub fn scale_mixture_density_with_index(x: f64, mu: f64, p: &LossParams, nu: f64) -> Result<f64> {
    p.validate()?;
    let eps = x - mu;
    let tau = p.tau;
    let gig = GigParams::new(nu, (p.eta / p.rho2).sqrt(), (p.eta * p.rho2).sqrt())?;
    let inner_tol = Tolerance {
        abs: 1e-14,
        rel: 1e-11,
    };
    let outer_tol = Tolerance {
        abs: 1e-13,
        rel: 1e-10,
    };
    let mut failure = None;
    let outer = integrate(
        |sigma: f64| {
            if !(sigma > 0.0) || !sigma.is_finite() {
                return 0.0;
            }
            let ln_mix = match gig.ln_pdf(sigma) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    return 0.0;
                }
            };
            if ln_mix < -745.0 {
                return 0.0;
            }
            let rate = tau * (1.0 - tau) / (2.0 * sigma);
            let inner = integrate(
                |u: f64| {
                    let v = u.exp();
                    if v == 0.0 || !v.is_finite() {
                        return 0.0;
                    }
                    let var = 4.0 * v * sigma;
                    let z = eps - (1.0 - 2.0 * tau) * v;
                    let ln_normal = -0.5 * (2.0 * PI * var).ln() - z * z / (2.0 * var);
                    let ln_exp = rate.ln() - rate * v;
                    (ln_normal + ln_exp + u + ln_mix).exp()
                },
                f64::NEG_INFINITY,
                f64::INFINITY,
                inner_tol,
            );
            match inner {
                Ok(r) => r.value,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        },
        0.0,
        f64::INFINITY,
        outer_tol,
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(outer.value),
    }
}

/// Mixing index under which the normal / exponential / GIG mixture
/// reproduces [`asym_density`] exactly.
pub const ASYM_MIXING_INDEX: f64 = 1.5;

/// [`asym_density`] recovered as a scale mixture of normals, by quadrature.
pub fn scale_mixture_density(x: f64, mu: f64, p: &LossParams) -> Result<f64> {
    scale_mixture_density_with_index(x, mu, p, ASYM_MIXING_INDEX)
}

/// `√(η² + η·ρ_τ(ε)/ρ²)`, the Bessel argument of the unit-index mixture.
fn k0_argument(eps: f64, eta: f64, rho2: f64, tau: f64) -> f64 {
    (eta * eta + eta * check_loss(eps, tau) / rho2)
        .sqrt()
        .max(K0_ARG_FLOOR)
}

/// Closed-form marginal of the unit-index mixture (the sampler's hierarchy):
/// `τ(1−τ) K₀(√(η² + ηρ_τ(ε)/ρ²)) / (2ρ² K₁(η))`.
pub fn hierarchy_marginal_density(x: f64, mu: f64, p: &LossParams) -> Result<f64> {
    p.validate()?;
    let arg = k0_argument(x - mu, p.eta, p.rho2, p.tau);
    let ln = (p.tau * (1.0 - p.tau)).ln() - LN_2 - p.rho2.ln() + log_bessel_k(0.0, arg)?
        - log_bessel_k(1.0, p.eta)?;
    Ok(ln.exp())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GridPenalty {
    Lasso { lambda1: f64 },
    ElasticNet { lambda3: f64, lambda4: f64 },
}

/// Whether the coefficient prior scales with `√ρ²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PriorStyle {
    Conditional,
    Unconditional,
}

#[derive(Clone, Debug)]
pub struct PosteriorGridSpec {
    pub data: Dataset,
    pub penalty: GridPenalty,
    pub style: PriorStyle,
    pub eta: f64,
    pub tau: f64,
    /// Strictly increasing grid of `ln β` (single-coefficient models).
    pub log_beta: Vec<f64>,
    /// Strictly increasing grid of `ln ρ²`.
    pub log_rho2: Vec<f64>,
}

impl PosteriorGridSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.eta > 0.0) || !(self.tau > 0.0 && self.tau < 1.0) {
            return Err(Error::Parameter(format!(
                "grid needs η > 0 and 0 < τ < 1, got η={}, τ={}",
                self.eta, self.tau
            )));
        }
        let rates_ok = match self.penalty {
            GridPenalty::Lasso { lambda1 } => lambda1 >= 0.0,
            GridPenalty::ElasticNet { lambda3, lambda4 } => lambda3 >= 0.0 && lambda4 >= 0.0,
        };
        if !rates_ok {
            return Err(Error::Parameter("penalty rates must be nonnegative".into()));
        }
        for (name, g) in [("log β", &self.log_beta), ("log ρ²", &self.log_rho2)] {
            if g.is_empty()
                || g.windows(2).any(|w| !(w[1] > w[0]))
                || g.iter().any(|v| !v.is_finite())
            {
                return Err(Error::Parameter(format!(
                    "{name} grid must be finite and strictly increasing"
                )));
            }
        }
        Ok(())
    }
}

/// Unnormalised joint log posterior of `(β, ρ²)` at fixed `η`, with the
/// latent scales integrated out and `π(ρ²) ∝ 1/ρ²`.
pub fn joint_log_posterior(beta: &[f64], rho2: f64, spec: &PosteriorGridSpec) -> Result<f64> {
    let data = &spec.data;
    if beta.len() != data.k() {
        return Err(Error::Dimension(format!(
            "β has length {}, X has {} columns",
            beta.len(),
            data.k()
        )));
    }
    if !(rho2 > 0.0) {
        return Err(Error::Parameter(format!("ρ² = {rho2} must be positive")));
    }
    let n = data.n() as f64;
    let k = data.k() as f64;
    let mut lp = 0.0;
    for i in 0..data.n() {
        let fit: f64 = data.x.row(i).iter().zip(beta).map(|(x, b)| x * b).sum();
        let arg = k0_argument(data.y[i] - fit, spec.eta, rho2, spec.tau);
        lp += log_bessel_k(0.0, arg)?;
    }
    let l1: f64 = beta.iter().map(|b| b.abs()).sum();
    let l2: f64 = beta.iter().map(|b| b * b).sum();
    let scale = rho2.sqrt();
    lp += match (spec.style, spec.penalty) {
        (PriorStyle::Unconditional, GridPenalty::Lasso { lambda1 }) => {
            -(n + 1.0) * rho2.ln() - lambda1 * l1
        }
        (PriorStyle::Unconditional, GridPenalty::ElasticNet { lambda3, lambda4 }) => {
            -(n + 1.0) * rho2.ln() - lambda3 * l1 - lambda4 * l2
        }
        (PriorStyle::Conditional, GridPenalty::Lasso { lambda1 }) => {
            -(n + k / 2.0 + 1.0) * rho2.ln() - lambda1 * l1 / scale
        }
        (PriorStyle::Conditional, GridPenalty::ElasticNet { lambda3, lambda4 }) => {
            -(n + k / 2.0 + 1.0) * rho2.ln() - lambda3 * l1 / scale - lambda4 * l2 / rho2
        }
    };
    Ok(lp)
}

/// Log-posterior surface on a `(ln β, ln ρ²)` grid; `values[i][j]` is at
/// `(log_beta[i], log_rho2[j])`.
#[derive(Clone, Debug, PartialEq)]
pub struct PosteriorGrid {
    pub log_beta: Vec<f64>,
    pub log_rho2: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

pub fn posterior_grid(spec: &PosteriorGridSpec) -> Result<PosteriorGrid> {
    spec.validate()?;
    if spec.data.k() != 1 {
        return Err(Error::Dimension(format!(
            "grid evaluation needs one predictor, got {}",
            spec.data.k()
        )));
    }
    let mut values = Vec::with_capacity(spec.log_beta.len());
    for &lb in &spec.log_beta {
        let beta = [lb.exp()];
        let row = spec
            .log_rho2
            .iter()
            .map(|&lr| joint_log_posterior(&beta, lr.exp(), spec))
            .collect::<Result<Vec<_>>>()?;
        values.push(row);
    }
    Ok(PosteriorGrid {
        log_beta: spec.log_beta.clone(),
        log_rho2: spec.log_rho2.clone(),
        values,
    })
}

/// Cells strictly greater than every existing 8-neighbour.
pub fn strict_local_maxima(values: &[Vec<f64>]) -> Vec<(usize, usize)> {
    let rows = values.len();
    let mut found = Vec::new();
    for i in 0..rows {
        let cols = values[i].len();
        for j in 0..cols {
            let v = values[i][j];
            let mut is_max = true;
            'scan: for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let (ni, nj) = (i as i64 + di, j as i64 + dj);
                    if ni < 0 || nj < 0 || ni as usize >= rows {
                        continue;
                    }
                    if let Some(&w) = values[ni as usize].get(nj as usize) {
                        if !(v > w) {
                            is_max = false;
                            break 'scan;
                        }
                    }
                }
            }
            if is_max {
                found.push((i, j));
            }
        }
    }
    found
}
