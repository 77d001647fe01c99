//! Random variate generation.
//!
//! Every sampler takes an [`RngStream`], a ChaCha20 generator addressed by
//! `(seed, stream_id)`. Parallel work derives its stream id with
//! [`RngStream::for_unit`], so results do not depend on scheduling.

mod gig;
mod noise;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Exp1, Gamma, Open01, StandardNormal};

use crate::error::{Error, Result};

pub use gig::{gig_sample, gig_sample_truncated_above_zero_shifted, GigParams, BOUNDARY_CD};
pub use noise::{noise_sample, NoiseLaw};

/// Stage tags for the low byte of a derived stream id.
pub mod stage {
    pub const DATA: u8 = 0;
    pub const CHAIN: u8 = 1;
    pub const FOLDS: u8 = 2;
}

#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha20Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        RngStream {
            seed,
            stream_id,
            rng,
        }
    }

    /// Stream for one unit of parallel work:
    /// `stream_id = replication << 16 | scenario << 8 | stage`.
    pub fn for_unit(seed: u64, replication: u64, scenario: u8, stage: u8) -> Self {
        Self::new(
            seed,
            (replication << 16) | (u64::from(scenario) << 8) | u64::from(stage),
        )
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Uniform on the open interval (0, 1).
    pub fn open01(&mut self) -> f64 {
        Open01.sample(&mut self.rng)
    }

    pub fn std_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    pub fn std_exp(&mut self) -> f64 {
        Exp1.sample(&mut self.rng)
    }

    /// Uniform index in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// Gamma draw with the given shape and *rate*.
pub fn gamma_sample(rng: &mut RngStream, shape: f64, rate: f64) -> Result<f64> {
    if !(shape > 0.0 && shape.is_finite() && rate > 0.0 && rate.is_finite()) {
        return Err(Error::Parameter(format!(
            "gamma needs shape > 0 and rate > 0, got ({shape}, {rate})"
        )));
    }
    let dist =
        Gamma::new(shape, 1.0 / rate).map_err(|e| Error::Parameter(format!("gamma: {e}")))?;
    Ok(dist.sample(rng))
}

/// Inverse-gamma draw: the reciprocal of a Gamma(shape, rate) variate.
pub fn inv_gamma_sample(rng: &mut RngStream, shape: f64, rate: f64) -> Result<f64> {
    Ok(1.0 / gamma_sample(rng, shape, rate)?)
}

/// Asymmetric Laplace draw with location `mu`, scale `sigma`, and
/// `P(X ≤ mu) = tau`, as `mu + sigma·(E₁/τ − E₂/(1−τ))`.
pub fn ald_sample(rng: &mut RngStream, mu: f64, sigma: f64, tau: f64) -> Result<f64> {
    if !(sigma > 0.0 && sigma.is_finite()) || !(tau > 0.0 && tau < 1.0) || !mu.is_finite() {
        return Err(Error::Parameter(format!(
            "asymmetric Laplace needs finite mu, sigma > 0, 0 < tau < 1; got ({mu}, {sigma}, {tau})"
        )));
    }
    let e1 = rng.std_exp();
    let e2 = rng.std_exp();
    Ok(mu + sigma * (e1 / tau - e2 / (1.0 - tau)))
}

/// Draw from `N(P⁻¹h, P⁻¹)` using a Cholesky factor `P = LLᵀ`:
/// `x = L⁻ᵀ(L⁻¹h + z)` with `z` standard normal.
pub fn mvn_from_precision(
    rng: &mut RngStream,
    precision: &DMatrix<f64>,
    linear: &DVector<f64>,
) -> Result<DVector<f64>> {
    let k = precision.nrows();
    if precision.ncols() != k || linear.len() != k {
        return Err(Error::Dimension(format!(
            "precision is {}×{}, linear term has length {}",
            precision.nrows(),
            precision.ncols(),
            linear.len()
        )));
    }
    let l = precision
        .clone()
        .cholesky()
        .ok_or(Error::Factorization { dim: k })?
        .unpack();
    let mut w = l
        .solve_lower_triangular(linear)
        .ok_or(Error::Factorization { dim: k })?;
    for wi in w.iter_mut() {
        *wi += rng.std_normal();
    }
    let x = l
        .tr_solve_lower_triangular(&w)
        .ok_or(Error::Factorization { dim: k })?;
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Factorization { dim: k });
    }
    Ok(x)
}

/// Draw from `N(μ, s²(AᵀA)⁻¹)` where `μ` minimises `‖Aμ − b‖`. Works from
/// the QR factor of `A`, so `AᵀA` is never formed.
pub fn mvn_least_squares(
    rng: &mut RngStream,
    a: &DMatrix<f64>,
    b: &DVector<f64>,
    noise: f64,
) -> Result<DVector<f64>> {
    let k = a.ncols();
    if a.nrows() != b.len() || a.nrows() < k {
        return Err(Error::Dimension(format!(
            "design is {}×{}, response has length {}",
            a.nrows(),
            k,
            b.len()
        )));
    }
    if !(noise > 0.0 && noise.is_finite()) {
        return Err(Error::Parameter(format!(
            "noise scale must be positive, got {noise}"
        )));
    }
    let qr = a.clone().qr();
    let r = qr.r();
    let diag = r.diagonal();
    let floor = f64::EPSILON * a.nrows() as f64 * diag.amax();
    if diag.iter().any(|d| !(d.abs() > floor && d.is_finite())) {
        return Err(Error::Factorization { dim: k });
    }
    let mut w = qr.q().tr_mul(b);
    for wi in w.iter_mut() {
        *wi += noise * rng.std_normal();
    }
    let x = r
        .solve_upper_triangular(&w)
        .ok_or(Error::Factorization { dim: k })?;
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Factorization { dim: k });
    }
    Ok(x)
}
