//! Gibbs samplers for Huberised quantile regression with lasso and
//! elastic-net shrinkage.
//!
//! The working likelihood is the normal / exponential / GIG hierarchy
//!
//! ```text
//! yᵢ | β, vᵢ, σᵢ   ~ N(xᵢβ + (1−2τ)vᵢ, 4σᵢvᵢ)
//! vᵢ | σᵢ          ~ Exp(rate τ(1−τ)/(2σᵢ))
//! σᵢ | η, ρ²       ~ GIG(1, √(η/ρ²), √(ηρ²))
//! ```
//!
//! with `π(ρ²) ∝ 1/ρ²`, a gamma prior on `η`, and either
//! `βⱼ | sⱼ, ρ² ~ N(0, ρ²sⱼ)`, `sⱼ ~ Exp(λ₁²/2)` (lasso) or
//! `βⱼ | tⱼ, ρ² ~ N(0, ρ²(tⱼ−1)/(2λ₄tⱼ))` with a truncated-gamma `tⱼ > 1`
//! (elastic net). One scan updates `β → σ → v → penalty block → ρ² → η`.

mod eta;
mod samples;

use nalgebra::{DMatrix, DVector};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::randist::{
    gamma_sample, gig_sample, gig_sample_truncated_above_zero_shifted, mvn_least_squares, stage,
    GigParams, RngStream,
};
use crate::specfun::{ln_gamma, ln_upper_incomplete_gamma};

pub use eta::{eta_sufficient_statistic, refine_eta_gamma, EtaRefinement};
pub use samples::{median, quantile_sorted, summarize, ChainHealth, PosteriorSamples, Summary};

/// Lower bound applied to positive latent and scale draws.
pub const POSITIVE_FLOOR: f64 = 1e-300;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Penalty {
    /// `λ₁² ~ Gamma(a, b)`, `η ~ Gamma(c, d)`.
    Lasso { a: f64, b: f64, c: f64, d: f64 },
    /// `λ̃₃ ~ Gamma(a₁, b₁)`, `λ₄ ~ Gamma(a₂, b₂)`, `η ~ Gamma(a₃, b₃)`.
    ElasticNet {
        a1: f64,
        b1: f64,
        a2: f64,
        b2: f64,
        a3: f64,
        b3: f64,
    },
}

impl Penalty {
    pub fn lasso() -> Self {
        Penalty::Lasso {
            a: 1.0,
            b: 1.0,
            c: 1.0,
            d: 1.0,
        }
    }

    pub fn elastic_net() -> Self {
        Penalty::ElasticNet {
            a1: 1.0,
            b1: 1.0,
            a2: 1.0,
            b2: 1.0,
            a3: 1.0,
            b3: 1.0,
        }
    }

    /// Shape and rate of the gamma prior on `η`.
    pub fn eta_prior(&self) -> (f64, f64) {
        match *self {
            Penalty::Lasso { c, d, .. } => (c, d),
            Penalty::ElasticNet { a3, b3, .. } => (a3, b3),
        }
    }

    fn hyperparameters(&self) -> Vec<f64> {
        match *self {
            Penalty::Lasso { a, b, c, d } => vec![a, b, c, d],
            Penalty::ElasticNet {
                a1,
                b1,
                a2,
                b2,
                a3,
                b3,
            } => vec![a1, b1, a2, b2, a3, b3],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    pub tau: f64,
    pub penalty: Penalty,
    pub n_iter: usize,
    pub burn_in: usize,
    pub thin: usize,
    /// Inner refinement steps for the η approximation.
    pub eta_inner_iters: usize,
    pub eta_tol: f64,
    pub seed: u64,
    pub stream: u64,
}

impl ModelSpec {
    pub fn new(tau: f64, penalty: Penalty) -> Self {
        ModelSpec {
            tau,
            penalty,
            n_iter: 2500,
            burn_in: 500,
            thin: 1,
            eta_inner_iters: 10,
            eta_tol: 1e-8,
            seed: 0,
            stream: u64::from(stage::CHAIN),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau > 0.0 && self.tau < 1.0) {
            return Err(Error::Parameter(format!(
                "τ = {} must lie in (0, 1)",
                self.tau
            )));
        }
        if self
            .penalty
            .hyperparameters()
            .iter()
            .any(|&h| !(h > 0.0 && h.is_finite()))
        {
            return Err(Error::Parameter(
                "prior hyperparameters must be positive and finite".into(),
            ));
        }
        if self.n_iter == 0 || self.thin == 0 || self.eta_inner_iters == 0 {
            return Err(Error::Parameter(
                "iterations, thinning and η inner iterations must be positive".into(),
            ));
        }
        if self.burn_in >= self.n_iter {
            return Err(Error::Parameter(format!(
                "burn-in {} must be smaller than the iteration count {}",
                self.burn_in, self.n_iter
            )));
        }
        if !(self.eta_tol > 0.0) {
            return Err(Error::Parameter("η tolerance must be positive".into()));
        }
        Ok(())
    }

    /// Number of rows the chain will retain.
    pub fn retained(&self) -> usize {
        (self.n_iter - self.burn_in) / self.thin
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PenaltyState {
    Lasso {
        s: DVector<f64>,
        lambda1_sq: f64,
    },
    ElasticNet {
        /// Each entry strictly greater than one.
        t: DVector<f64>,
        lambda3_tilde: f64,
        lambda4: f64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainState {
    pub beta: DVector<f64>,
    pub v: DVector<f64>,
    pub sigma: DVector<f64>,
    pub rho2: f64,
    pub eta: f64,
    pub penalty: PenaltyState,
}

impl ChainState {
    /// `β = 0`, unit latents, `ρ²` at the sample variance of `y`, unit rates,
    /// `s = 1` or `t = 2`.
    pub fn initial(data: &Dataset, penalty: &Penalty) -> Self {
        let (n, k) = (data.n(), data.k());
        let rho2 = if n > 1 {
            let mean = data.y.mean();
            let var = data.y.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
            if var > 0.0 && var.is_finite() {
                var
            } else {
                1.0
            }
        } else {
            1.0
        };
        let penalty = match penalty {
            Penalty::Lasso { .. } => PenaltyState::Lasso {
                s: DVector::from_element(k, 1.0),
                lambda1_sq: 1.0,
            },
            Penalty::ElasticNet { .. } => PenaltyState::ElasticNet {
                t: DVector::from_element(k, 2.0),
                lambda3_tilde: 1.0,
                lambda4: 1.0,
            },
        };
        ChainState {
            beta: DVector::zeros(k),
            v: DVector::from_element(n, 1.0),
            sigma: DVector::from_element(n, 1.0),
            rho2,
            eta: 1.0,
            penalty,
        }
    }

    /// Whether every positivity constraint holds.
    pub fn is_valid(&self) -> bool {
        let pos = |x: f64| x > 0.0 && x.is_finite();
        let latents = self.v.iter().chain(self.sigma.iter()).all(|&x| pos(x));
        let pen = match &self.penalty {
            PenaltyState::Lasso { s, lambda1_sq } => s.iter().all(|&x| pos(x)) && pos(*lambda1_sq),
            PenaltyState::ElasticNet {
                t,
                lambda3_tilde,
                lambda4,
            } => {
                t.iter().all(|&x| x > 1.0 && x.is_finite()) && pos(*lambda3_tilde) && pos(*lambda4)
            }
        };
        latents && pen && pos(self.rho2) && pos(self.eta) && self.beta.iter().all(|b| b.is_finite())
    }
}

fn residuals(state: &ChainState, data: &Dataset) -> DVector<f64> {
    &data.y - &data.x * &state.beta
}

fn gig(nu: f64, c: f64, d: f64) -> Result<GigParams> {
    GigParams::new(nu, c, d)
}

/// Prior precision diagonal of `β` given the penalty latents.
pub fn beta_prior_precision(state: &ChainState) -> DVector<f64> {
    match &state.penalty {
        PenaltyState::Lasso { s, .. } => s.map(|sj| 1.0 / (state.rho2 * sj)),
        PenaltyState::ElasticNet { t, lambda4, .. } => {
            t.map(|tj| 2.0 * lambda4 / state.rho2 * tj / (tj - 1.0))
        }
    }
}

/// `β ~ N(P⁻¹h, P⁻¹)` with `P = XᵀV⁻¹X + prior`, `h = XᵀV⁻¹(y − (1−2τ)v)`,
/// `V = diag(4σᵢvᵢ)`, drawn as the weighted least-squares problem
/// `[V^{−½}X; prior^{½}] β ≈ [V^{−½}(y − (1−2τ)v); 0]`. Weights are divided by
/// the largest on the log scale so floored latents do not overflow.
pub fn update_beta(
    state: &ChainState,
    data: &Dataset,
    spec: &ModelSpec,
    rng: &mut RngStream,
) -> Result<DVector<f64>> {
    let (n, k) = (data.n(), data.k());
    let offset = 1.0 - 2.0 * spec.tau;
    let log_w: Vec<f64> = (0..n)
        .map(|i| -(4.0f64.ln() + state.sigma[i].ln() + state.v[i].ln()))
        .collect();
    let log_prior: Vec<f64> = beta_prior_precision(state).iter().map(|p| p.ln()).collect();
    let shift = log_w.iter().chain(&log_prior).copied().fold(0.0, f64::max);
    let mut a = DMatrix::zeros(n + k, k);
    let mut b = DVector::zeros(n + k);
    for i in 0..n {
        let sw = (0.5 * (log_w[i] - shift)).exp();
        for j in 0..k {
            a[(i, j)] = sw * data.x[(i, j)];
        }
        b[i] = sw * (data.y[i] - offset * state.v[i]);
    }
    for j in 0..k {
        a[(n + j, j)] = (0.5 * (log_prior[j] - shift)).exp();
    }
    mvn_least_squares(rng, &a, &b, (-0.5 * shift).exp())
}

/// `σᵢ ~ GIG(−½, √(η/ρ²), √((rᵢ − (1−2τ)vᵢ)²/(4vᵢ) + τ(1−τ)vᵢ + ηρ²))`.
pub fn update_sigma(
    state: &ChainState,
    data: &Dataset,
    spec: &ModelSpec,
    rng: &mut RngStream,
) -> Result<DVector<f64>> {
    let tau = spec.tau;
    let r = residuals(state, data);
    let c = (state.eta / state.rho2).sqrt();
    let base = state.eta * state.rho2;
    let mut out = DVector::zeros(data.n());
    for i in 0..data.n() {
        let v = state.v[i];
        let z = r[i] - (1.0 - 2.0 * tau) * v;
        let d2 = z * z / (4.0 * v) + tau * (1.0 - tau) * v + base;
        out[i] = gig_sample(rng, &gig(-0.5, c, d2.sqrt())?)?;
    }
    Ok(out)
}

/// `vᵢ ~ GIG(½, 1/(2√σᵢ), |rᵢ|/(2√σᵢ))`; the first slot is
/// `√((1−2τ)²/(4σᵢ) + τ(1−τ)/σᵢ)`, which does not depend on `τ`.
pub fn update_v(
    state: &ChainState,
    data: &Dataset,
    _spec: &ModelSpec,
    rng: &mut RngStream,
) -> Result<DVector<f64>> {
    let r = residuals(state, data);
    let mut out = DVector::zeros(data.n());
    for i in 0..data.n() {
        let half_root = 0.5 / state.sigma[i].sqrt();
        out[i] = gig_sample(rng, &gig(0.5, half_root, r[i].abs() * half_root)?)?;
    }
    Ok(out)
}

/// `ρ² ~ GIG(−n−k/2, √(ηΣ1/σᵢ), √(ηΣσᵢ + penalty quadratic form))`.
pub fn update_rho2(
    state: &ChainState,
    data: &Dataset,
    _spec: &ModelSpec,
    rng: &mut RngStream,
) -> Result<f64> {
    let (n, k) = (data.n() as f64, data.k() as f64);
    let c2 = state.eta * state.sigma.iter().map(|s| 1.0 / s).sum::<f64>();
    let quad = match &state.penalty {
        PenaltyState::Lasso { s, .. } => state
            .beta
            .iter()
            .zip(s.iter())
            .map(|(b, s)| b * b / s)
            .sum::<f64>(),
        PenaltyState::ElasticNet { t, lambda4, .. } => state
            .beta
            .iter()
            .zip(t.iter())
            .map(|(b, t)| 2.0 * lambda4 * t * b * b / (t - 1.0))
            .sum::<f64>(),
    };
    let d2 = state.eta * state.sigma.sum() + quad;
    gig_sample(rng, &gig(-n - k / 2.0, c2.sqrt(), d2.sqrt())?)
}

/// `sⱼ ~ GIG(½, λ₁, |βⱼ|/√ρ²)`.
pub fn update_s(state: &ChainState, rng: &mut RngStream) -> Result<DVector<f64>> {
    let lambda1_sq = match &state.penalty {
        PenaltyState::Lasso { lambda1_sq, .. } => *lambda1_sq,
        PenaltyState::ElasticNet { .. } => {
            return Err(Error::Parameter("s update needs the lasso penalty".into()))
        }
    };
    let c = lambda1_sq.sqrt();
    let scale = state.rho2.sqrt();
    let mut out = DVector::zeros(state.beta.len());
    for (j, b) in state.beta.iter().enumerate() {
        out[j] = gig_sample(rng, &gig(0.5, c, b.abs() / scale)?)?;
    }
    Ok(out)
}

/// `λ₁² ~ Gamma(a + k, b + Σsⱼ/2)`.
pub fn update_lambda1_sq(s: &DVector<f64>, spec: &ModelSpec, rng: &mut RngStream) -> Result<f64> {
    let Penalty::Lasso { a, b, .. } = spec.penalty else {
        return Err(Error::Parameter(
            "λ₁² update needs the lasso penalty".into(),
        ));
    };
    gamma_sample(rng, a + s.len() as f64, b + 0.5 * s.sum())
}

/// `tⱼ − 1 ~ GIG(½, √(2λ̃₃), √(2λ₄/ρ²)|βⱼ|)`, returned as `tⱼ`.
pub fn update_t(state: &ChainState, rng: &mut RngStream) -> Result<DVector<f64>> {
    let PenaltyState::ElasticNet {
        lambda3_tilde,
        lambda4,
        ..
    } = &state.penalty
    else {
        return Err(Error::Parameter(
            "t update needs the elastic-net penalty".into(),
        ));
    };
    let c = (2.0 * lambda3_tilde).sqrt();
    let scale = (2.0 * lambda4 / state.rho2).sqrt();
    let mut out = DVector::zeros(state.beta.len());
    for (j, b) in state.beta.iter().enumerate() {
        out[j] = gig_sample_truncated_above_zero_shifted(rng, &gig(0.5, c, scale * b.abs())?)?;
    }
    Ok(out)
}

/// `λ₄ ~ Gamma(k/2 + a₂, Σtⱼβⱼ²/(ρ²(tⱼ−1)) + b₂)`.
pub fn update_lambda4(
    beta: &DVector<f64>,
    t: &DVector<f64>,
    rho2: f64,
    spec: &ModelSpec,
    rng: &mut RngStream,
) -> Result<f64> {
    let Penalty::ElasticNet { a2, b2, .. } = spec.penalty else {
        return Err(Error::Parameter(
            "λ₄ update needs the elastic-net penalty".into(),
        ));
    };
    let quad: f64 = beta
        .iter()
        .zip(t.iter())
        .map(|(b, t)| t * b * b / (t - 1.0))
        .sum();
    gamma_sample(rng, 0.5 * beta.len() as f64 + a2, quad / rho2 + b2)
}

/// Log full conditional of `λ̃₃` up to a constant:
/// `−k ln Γ(½, λ) + (k/2 + a₁ − 1) ln λ − (Σtⱼ + b₁) λ`.
pub fn lambda3_log_target(lambda: f64, k: usize, sum_t: f64, a1: f64, b1: f64) -> Result<f64> {
    let kf = k as f64;
    let tail = if k == 0 {
        0.0
    } else {
        kf * ln_upper_incomplete_gamma(0.5, lambda)?
    };
    Ok(-tail + (0.5 * kf + a1 - 1.0) * lambda.ln() - (sum_t + b1) * lambda)
}

/// Log density of the independence proposal `Gamma(k + a₁, b₁ + Σ(tⱼ−1))`.
pub fn lambda3_log_proposal(lambda: f64, k: usize, sum_t_minus_one: f64, a1: f64, b1: f64) -> f64 {
    let shape = k as f64 + a1;
    let rate = b1 + sum_t_minus_one;
    shape * rate.ln() - ln_gamma(shape) + (shape - 1.0) * lambda.ln() - rate * lambda
}

/// Log acceptance ratio for moving `λ̃₃` from `current` to `proposed`.
pub fn lambda3_log_acceptance(
    current: f64,
    proposed: f64,
    t: &DVector<f64>,
    a1: f64,
    b1: f64,
) -> Result<f64> {
    let k = t.len();
    let sum_t = t.sum();
    let sum_tm1 = sum_t - k as f64;
    Ok(lambda3_log_target(proposed, k, sum_t, a1, b1)?
        - lambda3_log_target(current, k, sum_t, a1, b1)?
        + lambda3_log_proposal(current, k, sum_tm1, a1, b1)
        - lambda3_log_proposal(proposed, k, sum_tm1, a1, b1))
}

/// One independence Metropolis–Hastings step for `λ̃₃`; returns the new
/// value and whether the proposal was accepted.
pub fn mh_update_lambda3_tilde(
    current: f64,
    t: &DVector<f64>,
    spec: &ModelSpec,
    rng: &mut RngStream,
) -> Result<(f64, bool)> {
    let Penalty::ElasticNet { a1, b1, .. } = spec.penalty else {
        return Err(Error::Parameter(
            "λ̃₃ update needs the elastic-net penalty".into(),
        ));
    };
    let k = t.len();
    let sum_tm1: f64 = t.iter().map(|tj| tj - 1.0).sum();
    let proposed = gamma_sample(rng, k as f64 + a1, b1 + sum_tm1)?;
    if !(proposed > 0.0) {
        return Ok((current, false));
    }
    let log_alpha = lambda3_log_acceptance(current, proposed, t, a1, b1)?;
    if rng.open01().ln() < log_alpha {
        Ok((proposed, true))
    } else {
        Ok((current, false))
    }
}

/// Approximate Gibbs step for `η`. Returns `None` when the refined gamma
/// approximation is degenerate and the current value should be kept.
pub fn update_eta_approx(
    state: &ChainState,
    spec: &ModelSpec,
    rng: &mut RngStream,
) -> Result<(Option<f64>, EtaRefinement)> {
    let (a, b) = spec.penalty.eta_prior();
    let s = eta_sufficient_statistic(state.sigma.as_slice(), state.rho2);
    let refined = refine_eta_gamma(
        state.sigma.len(),
        s,
        a,
        b,
        state.eta,
        spec.eta_inner_iters,
        spec.eta_tol,
    )?;
    if !refined.is_valid() {
        return Ok((None, refined));
    }
    let draw = gamma_sample(rng, refined.shape, refined.rate)?;
    Ok((Some(draw), refined))
}

fn floor_positive(x: f64, clamps: &mut usize) -> f64 {
    if x < POSITIVE_FLOOR {
        *clamps += 1;
        POSITIVE_FLOOR
    } else {
        x
    }
}

fn floor_vec(v: &mut DVector<f64>, clamps: &mut usize) {
    for x in v.iter_mut() {
        *x = floor_positive(*x, clamps);
    }
}

fn at(iteration: usize, parameter: &'static str) -> impl FnOnce(Error) -> Error {
    move |e| Error::Chain {
        iteration,
        parameter,
        source: Box::new(e),
    }
}

/// A chain in progress: data, model settings, state and its random stream.
pub struct Gibbs<'a> {
    pub data: &'a Dataset,
    pub spec: &'a ModelSpec,
    pub state: ChainState,
    pub health: ChainHealth,
    pub rng: RngStream,
}

impl<'a> Gibbs<'a> {
    pub fn new(data: &'a Dataset, spec: &'a ModelSpec) -> Result<Self> {
        spec.validate()?;
        let rng = RngStream::new(spec.seed, spec.stream);
        Ok(Self::with_state(
            data,
            spec,
            ChainState::initial(data, &spec.penalty),
            rng,
        ))
    }

    pub fn with_state(
        data: &'a Dataset,
        spec: &'a ModelSpec,
        state: ChainState,
        rng: RngStream,
    ) -> Self {
        Gibbs {
            data,
            spec,
            state,
            health: ChainHealth::default(),
            rng,
        }
    }

    pub fn step_beta(&mut self, it: usize) -> Result<()> {
        self.state.beta = update_beta(&self.state, self.data, self.spec, &mut self.rng)
            .map_err(at(it, "beta"))?;
        Ok(())
    }

    pub fn step_sigma(&mut self, it: usize) -> Result<()> {
        let mut s = update_sigma(&self.state, self.data, self.spec, &mut self.rng)
            .map_err(at(it, "sigma"))?;
        floor_vec(&mut s, &mut self.health.floor_clamps);
        self.state.sigma = s;
        Ok(())
    }

    pub fn step_v(&mut self, it: usize) -> Result<()> {
        let mut v =
            update_v(&self.state, self.data, self.spec, &mut self.rng).map_err(at(it, "v"))?;
        floor_vec(&mut v, &mut self.health.floor_clamps);
        self.state.v = v;
        Ok(())
    }

    pub fn step_penalty(&mut self, it: usize) -> Result<()> {
        match self.state.penalty {
            PenaltyState::Lasso { .. } => {
                let mut s = update_s(&self.state, &mut self.rng).map_err(at(it, "s"))?;
                floor_vec(&mut s, &mut self.health.floor_clamps);
                let l1 = update_lambda1_sq(&s, self.spec, &mut self.rng)
                    .map_err(at(it, "lambda1_sq"))?;
                let l1 = floor_positive(l1, &mut self.health.floor_clamps);
                self.state.penalty = PenaltyState::Lasso { s, lambda1_sq: l1 };
            }
            PenaltyState::ElasticNet { lambda3_tilde, .. } => {
                let t = update_t(&self.state, &mut self.rng).map_err(at(it, "t"))?;
                let l4 = update_lambda4(
                    &self.state.beta,
                    &t,
                    self.state.rho2,
                    self.spec,
                    &mut self.rng,
                )
                .map_err(at(it, "lambda4"))?;
                let l4 = floor_positive(l4, &mut self.health.floor_clamps);
                let (l3, accepted) =
                    mh_update_lambda3_tilde(lambda3_tilde, &t, self.spec, &mut self.rng)
                        .map_err(at(it, "lambda3_tilde"))?;
                self.health.mh_proposals += 1;
                self.health.mh_accepts += usize::from(accepted);
                let l3 = floor_positive(l3, &mut self.health.floor_clamps);
                self.state.penalty = PenaltyState::ElasticNet {
                    t,
                    lambda3_tilde: l3,
                    lambda4: l4,
                };
            }
        }
        Ok(())
    }

    pub fn step_rho2(&mut self, it: usize) -> Result<()> {
        let r = update_rho2(&self.state, self.data, self.spec, &mut self.rng)
            .map_err(at(it, "rho2"))?;
        self.state.rho2 = floor_positive(r, &mut self.health.floor_clamps);
        Ok(())
    }

    pub fn step_eta(&mut self, it: usize) -> Result<()> {
        let (draw, refined) =
            update_eta_approx(&self.state, self.spec, &mut self.rng).map_err(at(it, "eta"))?;
        if !refined.converged {
            self.health.eta_unconverged += 1;
        }
        match draw {
            Some(eta) => self.state.eta = floor_positive(eta, &mut self.health.floor_clamps),
            None => self.health.eta_skips += 1,
        }
        Ok(())
    }

    /// One full systematic scan.
    pub fn scan(&mut self, it: usize) -> Result<()> {
        self.step_beta(it)?;
        self.step_sigma(it)?;
        self.step_v(it)?;
        self.step_penalty(it)?;
        self.step_rho2(it)?;
        self.step_eta(it)?;
        self.health.iterations += 1;
        Ok(())
    }

    pub fn column_names(&self) -> Vec<String> {
        let mut names: Vec<String> = (0..self.data.k()).map(|j| format!("beta_{j}")).collect();
        names.push("rho2".into());
        names.push("eta".into());
        match self.state.penalty {
            PenaltyState::Lasso { .. } => names.push("lambda1_sq".into()),
            PenaltyState::ElasticNet { .. } => {
                names.push("lambda3_tilde".into());
                names.push("lambda4".into());
            }
        }
        names
    }

    pub fn record(&self) -> Vec<f64> {
        let mut row: Vec<f64> = self.state.beta.iter().copied().collect();
        row.push(self.state.rho2);
        row.push(self.state.eta);
        match &self.state.penalty {
            PenaltyState::Lasso { lambda1_sq, .. } => row.push(*lambda1_sq),
            PenaltyState::ElasticNet {
                lambda3_tilde,
                lambda4,
                ..
            } => {
                row.push(*lambda3_tilde);
                row.push(*lambda4);
            }
        }
        row
    }

    /// Runs all iterations, keeping iteration `it` (0-based) when
    /// `it ≥ burn_in` and `(it − burn_in + 1)` is a multiple of `thin`.
    pub fn run(mut self) -> Result<PosteriorSamples> {
        let mut out = PosteriorSamples::new(self.column_names());
        for it in 0..self.spec.n_iter {
            self.scan(it)?;
            if it >= self.spec.burn_in && (it - self.spec.burn_in + 1) % self.spec.thin == 0 {
                out.push(self.record())?;
            }
        }
        out.health = self.health;
        Ok(out)
    }
}

/// Runs one chain from the default initial state on stream
/// `(spec.seed, spec.stream)`.
pub fn run_chain(data: &Dataset, spec: &ModelSpec) -> Result<PosteriorSamples> {
    Gibbs::new(data, spec)?.run()
}
