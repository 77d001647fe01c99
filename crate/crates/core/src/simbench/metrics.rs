use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::sampler::median;

/// Accuracy of one posterior fit against the true coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReplicationMetrics {
    pub rmse: f64,
    /// Mean absolute deviation; its median over replications is MMAD.
    pub mad: f64,
    /// Average credible-interval length.
    pub al: f64,
    /// Fraction of intervals covering the truth.
    pub cp: f64,
}

pub fn metrics(
    beta_hat: &[f64],
    beta_true: &[f64],
    intervals: &[(f64, f64)],
) -> Result<ReplicationMetrics> {
    let m = beta_true.len();
    if beta_hat.len() != m || intervals.len() != m || m == 0 {
        return Err(Error::Dimension(format!(
            "estimates ({}), truth ({}) and intervals ({}) must have equal nonzero length",
            beta_hat.len(),
            m,
            intervals.len()
        )));
    }
    let mf = m as f64;
    let sq: f64 = beta_hat
        .iter()
        .zip(beta_true)
        .map(|(h, t)| (h - t).powi(2))
        .sum();
    let abs: f64 = beta_hat
        .iter()
        .zip(beta_true)
        .map(|(h, t)| (h - t).abs())
        .sum();
    let al: f64 = intervals.iter().map(|(lo, hi)| hi - lo).sum();
    let covered = intervals
        .iter()
        .zip(beta_true)
        .filter(|((lo, hi), t)| lo <= *t && *t <= hi)
        .count();
    Ok(ReplicationMetrics {
        rmse: (sq / mf).sqrt(),
        mad: abs / mf,
        al: al / mf,
        cp: covered as f64 / mf,
    })
}

/// Mean RMSE, MMAD (median of MADs), mean AL and mean CP.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AggregateMetrics {
    pub rmse: f64,
    pub mmad: f64,
    pub al: f64,
    pub cp: f64,
}

pub fn aggregate(results: &[ReplicationMetrics]) -> Option<AggregateMetrics> {
    if results.is_empty() {
        return None;
    }
    let n = results.len() as f64;
    let mean = |f: fn(&ReplicationMetrics) -> f64| results.iter().map(f).sum::<f64>() / n;
    let mads: Vec<f64> = results.iter().map(|r| r.mad).collect();
    Some(AggregateMetrics {
        rmse: mean(|r| r.rmse),
        mmad: median(&mads),
        al: mean(|r| r.al),
        cp: mean(|r| r.cp),
    })
}

/// One-sided Mann–Whitney test of `H₁: x` tends to be smaller than `y`.
/// Returns `(U_x, p)` where `U_x` counts pairs with `x < y` (ties ½) and `p`
/// uses the tie-corrected normal approximation with continuity correction.
pub fn mann_whitney_less(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    let (n1, n2) = (x.len(), y.len());
    if n1 == 0 || n2 == 0 {
        return Err(Error::InsufficientSamples {
            needed: 1,
            have: n1.min(n2),
        });
    }
    let mut u = 0.0;
    for a in x {
        for b in y {
            if a < b {
                u += 1.0;
            } else if a == b {
                u += 0.5;
            }
        }
    }
    let mut pooled: Vec<f64> = x.iter().chain(y).copied().collect();
    pooled.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < pooled.len() {
        let mut j = i;
        while j < pooled.len() && pooled[j] == pooled[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        tie_term += t * t * t - t;
        i = j;
    }
    let (f1, f2) = (n1 as f64, n2 as f64);
    let nn = f1 + f2;
    let mean = f1 * f2 / 2.0;
    let var = f1 * f2 / 12.0 * ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
    if !(var > 0.0) {
        return Ok((u, if u > mean { 0.0 } else { 1.0 }));
    }
    let z = (u - mean - 0.5) / var.sqrt();
    Ok((u, 0.5 * erfc(z / std::f64::consts::SQRT_2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_recovery() {
        let t = vec![1.0, 2.0, 0.0];
        let m = metrics(&t, &t, &[(0.5, 1.5), (1.0, 3.0), (-1.0, 1.0)]).unwrap();
        assert_eq!((m.rmse, m.mad, m.cp), (0.0, 0.0, 1.0));
    }

    #[test]
    fn unit_error_everywhere() {
        let t = vec![0.0; 21];
        let h = vec![1.0; 21];
        let iv = vec![(-1.0, 1.0); 21];
        let m = metrics(&h, &t, &iv).unwrap();
        assert!((m.rmse - 1.0).abs() < 1e-15 && (m.mad - 1.0).abs() < 1e-15);
        assert_eq!(m.al, 2.0);
    }

    #[test]
    fn dimension_mismatch() {
        assert_eq!(
            metrics(&[1.0], &[1.0, 2.0], &[(0.0, 1.0)])
                .unwrap_err()
                .class(),
            "dimension"
        );
    }

    #[test]
    fn aggregate_single_and_permutation() {
        let a = ReplicationMetrics {
            rmse: 0.3,
            mad: 0.2,
            al: 1.0,
            cp: 0.9,
        };
        let b = ReplicationMetrics {
            rmse: 0.5,
            mad: 0.1,
            al: 2.0,
            cp: 1.0,
        };
        let c = ReplicationMetrics {
            rmse: 0.1,
            mad: 0.4,
            al: 0.5,
            cp: 0.8,
        };
        let one = aggregate(&[a]).unwrap();
        assert_eq!((one.rmse, one.mmad, one.al, one.cp), (0.3, 0.2, 1.0, 0.9));
        assert_eq!(aggregate(&[a, b, c]), aggregate(&[c, a, b]));
        assert_eq!(aggregate(&[a, b, c]).unwrap().mmad, 0.2);
        assert!(aggregate(&[]).is_none());
    }

    #[test]
    fn mann_whitney_separated_samples() {
        let x: Vec<f64> = (0..20).map(f64::from).collect();
        let y: Vec<f64> = (20..40).map(f64::from).collect();
        let (u, p) = mann_whitney_less(&x, &y).unwrap();
        assert_eq!(u, 400.0);
        assert!(p < 1e-6);
        let (_, p_rev) = mann_whitney_less(&y, &x).unwrap();
        assert!(p_rev > 0.999);
    }

    #[test]
    fn mann_whitney_reference_value() {
        // Four x values against three y values: U = 1, mean 6, variance 8.
        let (u, p) = mann_whitney_less(&[3.0, 5.0, 6.0, 7.0], &[1.0, 2.0, 4.0]).unwrap();
        assert_eq!(u, 1.0);
        let z: f64 = (1.0 - 6.0 - 0.5) / 8f64.sqrt();
        assert!((p - 0.5 * erfc(z / std::f64::consts::SQRT_2)).abs() < 1e-15);
    }
}
