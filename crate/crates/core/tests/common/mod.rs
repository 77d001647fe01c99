#![allow(dead_code)]

use hqreg::quadrature::{integrate, Tolerance};

pub const TOL: Tolerance = Tolerance {
    abs: 0.0,
    rel: 1e-12,
};

/// `∫ x^r · x^{ν−1} exp(−½(c²x + d²/x)) dx` over `(lo, hi)`.
pub fn gig_integral(nu: f64, c: f64, d: f64, r: f64, lo: f64, hi: f64) -> f64 {
    integrate(
        |x: f64| {
            if x <= 0.0 {
                0.0
            } else {
                ((nu + r - 1.0) * x.ln() - 0.5 * (c * c * x + d * d / x)).exp()
            }
        },
        lo,
        hi,
        TOL,
    )
    .unwrap()
    .value
}

/// `E[X^r]` under GIG(ν, c, d), by quadrature.
pub fn gig_moment(nu: f64, c: f64, d: f64, r: f64) -> f64 {
    gig_integral(nu, c, d, r, 0.0, f64::INFINITY) / gig_integral(nu, c, d, 0.0, 0.0, f64::INFINITY)
}

pub fn mean_and_se(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    let v = x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (v / n).sqrt())
}

/// Mean and batch-means standard error for an autocorrelated series.
pub fn batch_mean_and_se(x: &[f64], batches: usize) -> (f64, f64) {
    let size = x.len() / batches;
    let means: Vec<f64> = (0..batches)
        .map(|b| x[b * size..(b + 1) * size].iter().sum::<f64>() / size as f64)
        .collect();
    mean_and_se(&means)
}

/// Two-sided Kolmogorov–Smirnov distance between a sample and a CDF.
pub fn ks_distance(sample: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut x = sample.to_vec();
    x.sort_by(f64::total_cmp);
    let n = x.len() as f64;
    x.iter()
        .enumerate()
        .map(|(i, &v)| {
            let f = cdf(v);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// KS distance against an unnormalised density, integrating between sorted
/// sample points on `grid` equally spaced ranks.
pub fn ks_against_density(
    sample: &[f64],
    density: impl Fn(f64) -> f64 + Copy,
    lo: f64,
    grid: usize,
) -> f64 {
    let mut x = sample.to_vec();
    x.sort_by(f64::total_cmp);
    let tol = Tolerance {
        abs: 0.0,
        rel: 1e-11,
    };
    let norm = integrate(density, lo, f64::INFINITY, tol).unwrap().value;
    let n = x.len();
    let (mut worst, mut cdf, mut prev) = (0.0f64, 0.0, lo);
    for g in 1..grid {
        let idx = g * n / grid;
        let point = x[idx];
        cdf += integrate(density, prev, point, tol).unwrap().value / norm;
        prev = point;
        let below = idx as f64 / n as f64;
        let at = (idx + 1) as f64 / n as f64;
        worst = worst.max((cdf - below).abs()).max((cdf - at).abs());
    }
    worst
}
