//! Generalised inverse Gaussian variates.
//!
//! `GIG(ν, c, d)` has density `∝ x^{ν−1} exp(−½(c²x + d²/x))` on `x > 0`.
//! Interior parameters use the Hörmann–Leydold generators on the standardised
//! law `x^{λ−1} exp(−ω(x + 1/x)/2)` with `λ = |ν|`, `ω = cd`:
//! ratio-of-uniforms with mode shift for `λ > 2` or `ω > 3`, ratio-of-uniforms
//! without shift for moderate parameters, and a three-piece dominating density
//! for `λ < 1` with small `ω`. When `cd < BOUNDARY_CD` the law is replaced by
//! its gamma (`d → 0`) or inverse-gamma (`c → 0`) limit.

use std::f64::consts::PI;

use super::{gamma_sample, RngStream};
use crate::error::{Error, Result};
use crate::specfun::{ln_gamma, log_bessel_k};

/// Products `c·d` below this are sampled from the gamma / inverse-gamma limit.
pub const BOUNDARY_CD: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GigParams {
    pub nu: f64,
    pub c: f64,
    pub d: f64,
}

enum Regime {
    /// Gamma(shape ν, rate c²/2).
    Gamma,
    /// Reciprocal of Gamma(shape −ν, rate d²/2).
    InvGamma,
    Interior,
}

impl GigParams {
    pub fn new(nu: f64, c: f64, d: f64) -> Result<Self> {
        let p = GigParams { nu, c, d };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let GigParams { nu, c, d } = *self;
        if !nu.is_finite() || !c.is_finite() || !d.is_finite() || c < 0.0 || d < 0.0 {
            return Err(Error::Parameter(format!(
                "GIG({nu}, {c}, {d}): need finite ν and c, d ≥ 0"
            )));
        }
        if c == 0.0 && d == 0.0 {
            return Err(Error::Parameter("GIG: c and d cannot both be zero".into()));
        }
        if d == 0.0 && nu <= 0.0 {
            return Err(Error::Parameter(format!(
                "GIG({nu}, {c}, 0): d = 0 needs ν > 0"
            )));
        }
        if c == 0.0 && nu >= 0.0 {
            return Err(Error::Parameter(format!(
                "GIG({nu}, 0, {d}): c = 0 needs ν < 0"
            )));
        }
        Ok(())
    }

    fn regime(&self) -> Result<Regime> {
        if self.c * self.d >= BOUNDARY_CD {
            return Ok(Regime::Interior);
        }
        if self.nu > 0.0 && self.c > 0.0 {
            Ok(Regime::Gamma)
        } else if self.nu < 0.0 && self.d > 0.0 {
            Ok(Regime::InvGamma)
        } else if self.c > 0.0 && self.d > 0.0 {
            Ok(Regime::Interior)
        } else {
            Err(Error::Parameter(format!(
                "GIG({}, {}, {}) is improper",
                self.nu, self.c, self.d
            )))
        }
    }

    /// The law of `1/X`.
    pub fn reciprocal(&self) -> GigParams {
        GigParams {
            nu: -self.nu,
            c: self.d,
            d: self.c,
        }
    }

    /// `E[X^r]`, infinite where the moment does not exist in a boundary regime.
    pub fn moment(&self, r: f64) -> Result<f64> {
        self.validate()?;
        Ok(match self.regime()? {
            Regime::Gamma => {
                if self.nu + r <= 0.0 {
                    f64::INFINITY
                } else {
                    (ln_gamma(self.nu + r) - ln_gamma(self.nu) - r * (0.5 * self.c * self.c).ln())
                        .exp()
                }
            }
            Regime::InvGamma => {
                let shape = -self.nu;
                if shape - r <= 0.0 {
                    f64::INFINITY
                } else {
                    (ln_gamma(shape - r) - ln_gamma(shape) + r * (0.5 * self.d * self.d).ln()).exp()
                }
            }
            Regime::Interior => {
                let w = self.c * self.d;
                let ratio = log_bessel_k(self.nu + r, w)? - log_bessel_k(self.nu, w)?;
                (r * (self.d / self.c).ln() + ratio).exp()
            }
        })
    }

    /// Log density at `x > 0`.
    pub fn ln_pdf(&self, x: f64) -> Result<f64> {
        self.validate()?;
        if !(x > 0.0) {
            return Ok(f64::NEG_INFINITY);
        }
        Ok(match self.regime()? {
            Regime::Gamma => {
                let rate = 0.5 * self.c * self.c;
                self.nu * rate.ln() - ln_gamma(self.nu) + (self.nu - 1.0) * x.ln() - rate * x
            }
            Regime::InvGamma => {
                let shape = -self.nu;
                let rate = 0.5 * self.d * self.d;
                shape * rate.ln() - ln_gamma(shape) - (shape + 1.0) * x.ln() - rate / x
            }
            Regime::Interior => {
                let (nu, c, d) = (self.nu, self.c, self.d);
                nu * (c / d).ln() - std::f64::consts::LN_2 - log_bessel_k(nu, c * d)?
                    + (nu - 1.0) * x.ln()
                    - 0.5 * (c * c * x + d * d / x)
            }
        })
    }
}

/// One draw from `GIG(ν, c, d)`.
pub fn gig_sample(rng: &mut RngStream, p: &GigParams) -> Result<f64> {
    p.validate()?;
    match p.regime()? {
        Regime::Gamma => gamma_sample(rng, p.nu, 0.5 * p.c * p.c),
        Regime::InvGamma => Ok(1.0 / gamma_sample(rng, -p.nu, 0.5 * p.d * p.d)?),
        Regime::Interior => {
            let lambda = p.nu.abs();
            let omega = p.c * p.d;
            let alpha = p.d / p.c;
            let x = standard_gig(rng, lambda, omega);
            Ok(if p.nu >= 0.0 { alpha * x } else { alpha / x })
        }
    }
}

/// Draws `X ~ GIG(ν, c, d)` (normally with `ν = ½`) and returns `1 + X`.
/// The result is strictly greater than one even when `X` is below the
/// resolution of `1 + X`.
pub fn gig_sample_truncated_above_zero_shifted(rng: &mut RngStream, p: &GigParams) -> Result<f64> {
    let x = gig_sample(rng, p)?;
    Ok((1.0 + x).max(1.0 + f64::EPSILON))
}

fn standard_gig(rng: &mut RngStream, lambda: f64, omega: f64) -> f64 {
    if lambda > 2.0 || omega > 3.0 {
        rou_shift(rng, lambda, omega)
    } else if lambda >= 1.0 - 2.25 * omega * omega || omega > 0.2 {
        rou_noshift(rng, lambda, omega)
    } else {
        dominating_density(rng, lambda, omega)
    }
}

fn mode(lambda: f64, omega: f64) -> f64 {
    if lambda >= 1.0 {
        ((lambda - 1.0).hypot(omega) + (lambda - 1.0)) / omega
    } else {
        omega / ((1.0 - lambda).hypot(omega) + (1.0 - lambda))
    }
}

fn rou_noshift(rng: &mut RngStream, lambda: f64, omega: f64) -> f64 {
    let t = 0.5 * (lambda - 1.0);
    let s = 0.25 * omega;
    let xm = mode(lambda, omega);
    let nc = t * xm.ln() - s * (xm + 1.0 / xm);
    let ym = ((lambda + 1.0) + (lambda + 1.0).hypot(omega)) / omega;
    let um = (0.5 * (lambda + 1.0) * ym.ln() - s * (ym + 1.0 / ym) - nc).exp();
    loop {
        let u = um * rng.open01();
        let v = rng.open01();
        let x = u / v;
        if v.ln() <= t * x.ln() - s * (x + 1.0 / x) - nc {
            return x;
        }
    }
}

fn rou_shift(rng: &mut RngStream, lambda: f64, omega: f64) -> f64 {
    let t = 0.5 * (lambda - 1.0);
    let s = 0.25 * omega;
    let xm = mode(lambda, omega);
    let nc = t * xm.ln() - s * (xm + 1.0 / xm);

    // Extremes of (x − xm)·√g(x) are roots of a cubic; solve it trigonometrically.
    let a = -(2.0 * (lambda + 1.0) / omega + xm);
    let b = 2.0 * (lambda - 1.0) * xm / omega - 1.0;
    let c = xm;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let fi = (-q / (2.0 * (-(p * p * p) / 27.0).sqrt()))
        .clamp(-1.0, 1.0)
        .acos();
    let fak = 2.0 * (-p / 3.0).sqrt();
    let y1 = fak * (fi / 3.0).cos() - a / 3.0;
    let y2 = fak * (fi / 3.0 + 4.0 / 3.0 * PI).cos() - a / 3.0;
    let uplus = (y1 - xm) * (t * y1.ln() - s * (y1 + 1.0 / y1) - nc).exp();
    let uminus = (y2 - xm) * (t * y2.ln() - s * (y2 + 1.0 / y2) - nc).exp();
    loop {
        let u = uminus + rng.open01() * (uplus - uminus);
        let v = rng.open01();
        let x = u / v + xm;
        if x > 0.0 && v.ln() <= t * x.ln() - s * (x + 1.0 / x) - nc {
            return x;
        }
    }
}

/// Rejection from a dominating density that is constant on `(0, x0)`, a
/// power on `(x0, 2/ω)` and exponential beyond; valid for `0 ≤ λ < 1`.
fn dominating_density(rng: &mut RngStream, lambda: f64, omega: f64) -> f64 {
    let xm = mode(lambda, omega);
    let x0 = omega / (1.0 - lambda);
    let k0 = ((lambda - 1.0) * xm.ln() - 0.5 * omega * (xm + 1.0 / xm)).exp();
    let a0 = k0 * x0;
    let two_over_omega = 2.0 / omega;

    let (k1, a1, k2, a2) = if x0 >= two_over_omega {
        let k2 = x0.powf(lambda - 1.0);
        (0.0, 0.0, k2, k2 * 2.0 * (-omega * x0 / 2.0).exp() / omega)
    } else {
        let k1 = (-omega).exp();
        let a1 = if lambda == 0.0 {
            k1 * (two_over_omega / x0).ln()
        } else {
            k1 / lambda * (two_over_omega.powf(lambda) - x0.powf(lambda))
        };
        let k2 = two_over_omega.powf(lambda - 1.0);
        (k1, a1, k2, k2 * 2.0 * (-1.0f64).exp() / omega)
    };
    let total = a0 + a1 + a2;
    let tail_start = x0.max(two_over_omega);

    loop {
        let mut v = total * rng.open01();
        let (x, hx) = if v <= a0 {
            (x0 * v / a0, k0)
        } else if v <= a0 + a1 {
            v -= a0;
            if lambda == 0.0 {
                let x = x0 * (v / k1).exp();
                (x, k1 / x)
            } else {
                let x = (x0.powf(lambda) + v * lambda / k1).powf(1.0 / lambda);
                (x, k1 * x.powf(lambda - 1.0))
            }
        } else {
            v -= a0 + a1;
            let x =
                -two_over_omega * ((-omega / 2.0 * tail_start).exp() - v * omega / (2.0 * k2)).ln();
            (x, k2 * (-omega / 2.0 * x).exp())
        };
        if !(x > 0.0) || !x.is_finite() {
            continue;
        }
        let u = rng.open01() * hx;
        if u.ln() <= (lambda - 1.0) * x.ln() - omega / 2.0 * (x + 1.0 / x) {
            return x;
        }
    }
}
