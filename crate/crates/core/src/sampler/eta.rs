//! Gamma approximation to the full conditional of the robustness parameter.
//!
//! The target is `π(η | σ, ρ²) ∝ η^{a−1} e^{−bη} K₁(η)^{−n} e^{−ηS}` with
//! `S = ½Σ(σᵢ/ρ² + ρ²/σᵢ)`. A `Gamma(A, B)` density is matched to its first
//! two log-derivatives at `η = A/B`, and the match is iterated to a fixed point.

use crate::error::Result;
use crate::specfun::{log_k1_deriv, log_k1_deriv2};

#[derive(Clone, Debug, PartialEq)]
pub struct EtaRefinement {
    pub shape: f64,
    pub rate: f64,
    /// `|η/(A/B) − 1|` after each inner iteration.
    pub trace: Vec<f64>,
    pub converged: bool,
}

impl EtaRefinement {
    /// Whether `Gamma(shape, rate)` is a usable proposal.
    pub fn is_valid(&self) -> bool {
        self.shape > 0.0 && self.rate > 0.0 && self.shape.is_finite() && self.rate.is_finite()
    }
}

/// `S = ½Σ(σᵢ/ρ² + ρ²/σᵢ)`.
pub fn eta_sufficient_statistic(sigma: &[f64], rho2: f64) -> f64 {
    0.5 * sigma.iter().map(|&s| s / rho2 + rho2 / s).sum::<f64>()
}

fn matched(a: f64, b: f64, n: f64, s: f64, eta: f64) -> Result<(f64, f64)> {
    let shape = a + n * eta * eta * log_k1_deriv2(eta)?;
    let rate = b + (shape - a) / eta + n * log_k1_deriv(eta)? + s;
    Ok((shape, rate))
}

/// Runs at most `max_iter` refinement steps from the large-`η` starting
/// point `A = a + n/2`, `B = S + b − n`. When that `B` is not positive the
/// iteration starts from `current_eta` instead.
pub fn refine_eta_gamma(
    n: usize,
    s: f64,
    a: f64,
    b: f64,
    current_eta: f64,
    max_iter: usize,
    tol: f64,
) -> Result<EtaRefinement> {
    let nf = n as f64;
    let (mut shape, mut rate) = (a + 0.5 * nf, s + b - nf);
    if !(rate > 0.0) {
        (shape, rate) = matched(a, b, nf, s, current_eta)?;
    }
    let mut trace = Vec::with_capacity(max_iter);
    let mut converged = false;
    for _ in 0..max_iter {
        if !(rate > 0.0 && shape > 0.0) {
            break;
        }
        let eta = shape / rate;
        (shape, rate) = matched(a, b, nf, s, eta)?;
        let gap = (eta / (shape / rate) - 1.0).abs();
        trace.push(gap);
        if gap < tol {
            converged = true;
            break;
        }
    }
    Ok(EtaRefinement {
        shape,
        rate,
        trace,
        converged,
    })
}
