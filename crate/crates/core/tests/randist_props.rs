use hqreg::quadrature::{integrate, Tolerance};
use hqreg::randist::{gig_sample, gig_sample_truncated_above_zero_shifted, GigParams, RngStream};
use hqreg::specfun::bessel_k;

const TOL: Tolerance = Tolerance {
    abs: 0.0,
    rel: 1e-12,
};

/// `∫ x^r · x^{ν−1} exp(−½(c²x + d²/x)) dx` over `(lo, hi)`.
fn gig_integral(nu: f64, c: f64, d: f64, r: f64, lo: f64, hi: f64) -> f64 {
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

fn draws(p: &GigParams, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = RngStream::new(seed, 0);
    (0..n).map(|_| gig_sample(&mut rng, p).unwrap()).collect()
}

fn mean_and_se(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    let v = x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (v / n).sqrt())
}

#[test]
fn half_index_mean_matches_bessel_ratio() {
    let (c, d) = (1.3, 0.7);
    let x = draws(&GigParams::new(0.5, c, d).unwrap(), 1_000_000, 1);
    let (m, se) = mean_and_se(&x);
    let oracle = d / c * bessel_k(1.5, c * d).unwrap() / bessel_k(0.5, c * d).unwrap();
    assert!((m - oracle).abs() < 3.0 * se, "{m} vs {oracle} (se {se})");
}

#[test]
fn gamma_limit_moments() {
    let x = draws(&GigParams::new(2.0, 2f64.sqrt(), 0.0).unwrap(), 200_000, 2);
    let (m, se) = mean_and_se(&x);
    assert!((m - 2.0).abs() < 3.0 * se);
    let var = x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (x.len() as f64 - 1.0);
    assert!((var - 2.0).abs() < 0.05);
}

#[test]
fn kolmogorov_smirnov_against_quadrature_cdf() {
    let (nu, c, d) = (-0.5, 1.0, 1.0);
    let mut x = draws(&GigParams::new(nu, c, d).unwrap(), 1_000_000, 3);
    x.sort_by(f64::total_cmp);
    let norm = gig_integral(nu, c, d, 0.0, 0.0, f64::INFINITY);
    let n = x.len();
    let mut worst: f64 = 0.0;
    let mut cdf = 0.0;
    let mut prev = 0.0;
    for g in 1..2000 {
        let idx = g * n / 2000;
        let point = x[idx];
        cdf += gig_integral(nu, c, d, 0.0, prev, point) / norm;
        prev = point;
        let emp_below = idx as f64 / n as f64;
        let emp_at = (idx + 1) as f64 / n as f64;
        worst = worst.max((cdf - emp_below).abs()).max((cdf - emp_at).abs());
    }
    assert!(worst < 0.002, "KS statistic {worst}");
}

#[test]
fn reciprocal_closure() {
    let p = GigParams::new(1.0, 2.0, 3.0).unwrap();
    let x = draws(&p, 1_000_000, 4);
    let inv: Vec<f64> = x.iter().map(|v| 1.0 / v).collect();
    let y = draws(&p.reciprocal(), 1_000_000, 5);
    let (mi, sei) = mean_and_se(&inv);
    let (my, sey) = mean_and_se(&y);
    let se = (sei * sei + sey * sey).sqrt();
    assert!((mi - my).abs() < 3.0 * se, "{mi} vs {my}");
    // Quadrature oracle for E[1/X] under GIG(1, 2, 3).
    let oracle = gig_integral(1.0, 2.0, 3.0, -1.0, 0.0, f64::INFINITY)
        / gig_integral(1.0, 2.0, 3.0, 0.0, 0.0, f64::INFINITY);
    assert!((mi - oracle).abs() < 3.0 * sei);
}

#[test]
fn shifted_truncated_moments() {
    let (c, d) = (2f64.sqrt(), 0.8);
    let p = GigParams::new(0.5, c, d).unwrap();
    let mut rng = RngStream::new(6, 0);
    let t: Vec<f64> = (0..400_000)
        .map(|_| gig_sample_truncated_above_zero_shifted(&mut rng, &p).unwrap())
        .collect();
    assert!(t.iter().all(|&v| v > 1.0));
    let shifted: Vec<f64> = t.iter().map(|v| v - 1.0).collect();
    let (m, se) = mean_and_se(&shifted);
    let oracle = gig_integral(0.5, c, d, 1.0, 0.0, f64::INFINITY)
        / gig_integral(0.5, c, d, 0.0, 0.0, f64::INFINITY);
    assert!((m - oracle).abs() < 3.0 * se, "{m} vs {oracle}");

    let zero_beta = GigParams::new(0.5, c, 0.0).unwrap();
    let mut rng = RngStream::new(7, 0);
    for _ in 0..10_000 {
        assert!(gig_sample_truncated_above_zero_shifted(&mut rng, &zero_beta).unwrap() > 1.0);
    }
}

#[test]
fn extreme_products_stay_finite() {
    let mut rng = RngStream::new(8, 0);
    for &(nu, c, d) in &[
        (-21.0, 1e-3, 50.0),
        (-21.0, 40.0, 1e-4),
        (0.5, 1e-8, 1e-8),
        (0.5, 1e4, 1e4),
        (-0.5, 1e-7, 3.0),
        (150.0, 1.0, 1.0),
    ] {
        let p = GigParams::new(nu, c, d).unwrap();
        for _ in 0..2000 {
            let x = gig_sample(&mut rng, &p).unwrap();
            assert!(x > 0.0 && x.is_finite(), "({nu}, {c}, {d}) gave {x}");
        }
    }
}
