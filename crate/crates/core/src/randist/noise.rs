use rand_distr::{Cauchy, Distribution, StudentT};

use super::RngStream;
use crate::error::{Error, Result};

/// Error laws for the simulation designs.
#[derive(Clone, Debug, PartialEq)]
pub enum NoiseLaw {
    /// `N(0, sd²)`.
    Gaussian { sd: f64 },
    /// `(1−w)·N(0,1) + w·N(0, s²)`.
    ContaminatedNormal { weight: f64, scale: f64 },
    /// Fernández–Steel skewed Student-t: the positive half of a `t_df` is
    /// stretched by `γ`, the negative half by `1/γ`.
    SkewT { df: f64, gamma: f64 },
    /// Standard Cauchy.
    Cauchy,
    /// Pick a component with the given probabilities, then draw from it.
    Mixture(Vec<(f64, NoiseLaw)>),
    /// `factor · X` for `X` drawn from the inner law.
    Scaled { factor: f64, law: Box<NoiseLaw> },
}

impl NoiseLaw {
    pub fn validate(&self) -> Result<()> {
        match self {
            NoiseLaw::Gaussian { sd } if *sd > 0.0 && sd.is_finite() => Ok(()),
            NoiseLaw::ContaminatedNormal { weight, scale }
                if (0.0..=1.0).contains(weight) && *scale > 0.0 && scale.is_finite() =>
            {
                Ok(())
            }
            NoiseLaw::SkewT { df, gamma } if *df > 0.0 && *gamma > 0.0 && gamma.is_finite() => {
                Ok(())
            }
            NoiseLaw::Cauchy => Ok(()),
            NoiseLaw::Mixture(parts) => {
                if parts.is_empty() {
                    return Err(Error::Parameter("mixture has no components".into()));
                }
                let mut total = 0.0;
                for (w, law) in parts {
                    if !(*w > 0.0) {
                        return Err(Error::Parameter(format!(
                            "mixture weight {w} is not positive"
                        )));
                    }
                    law.validate()?;
                    total += w;
                }
                if (total - 1.0).abs() > 1e-12 {
                    return Err(Error::Parameter(format!(
                        "mixture weights sum to {total}, not 1"
                    )));
                }
                Ok(())
            }
            NoiseLaw::Scaled { factor, law } if factor.is_finite() => law.validate(),
            other => Err(Error::Parameter(format!("malformed noise law {other:?}"))),
        }
    }

    /// Variance where it is finite and known in closed form.
    pub fn variance(&self) -> Option<f64> {
        match self {
            NoiseLaw::Gaussian { sd } => Some(sd * sd),
            NoiseLaw::ContaminatedNormal { weight, scale } => {
                Some((1.0 - weight) + weight * scale * scale)
            }
            NoiseLaw::Scaled { factor, law } => law.variance().map(|v| v * factor * factor),
            _ => None,
        }
    }
}

pub fn noise_sample(rng: &mut RngStream, law: &NoiseLaw) -> Result<f64> {
    law.validate()?;
    Ok(draw(rng, law))
}

fn draw(rng: &mut RngStream, law: &NoiseLaw) -> f64 {
    match law {
        NoiseLaw::Gaussian { sd } => sd * rng.std_normal(),
        NoiseLaw::ContaminatedNormal { weight, scale } => {
            let s = if rng.open01() < *weight { *scale } else { 1.0 };
            s * rng.std_normal()
        }
        NoiseLaw::SkewT { df, gamma } => {
            let t: f64 = StudentT::new(*df).expect("validated df").sample(rng).abs();
            let g2 = gamma * gamma;
            if rng.open01() < g2 / (1.0 + g2) {
                gamma * t
            } else {
                -t / gamma
            }
        }
        NoiseLaw::Cauchy => Cauchy::new(0.0, 1.0).expect("unit Cauchy").sample(rng),
        NoiseLaw::Mixture(parts) => {
            let u = rng.open01();
            let mut acc = 0.0;
            for (w, inner) in parts {
                acc += w;
                if u < acc {
                    return draw(rng, inner);
                }
            }
            draw(rng, &parts[parts.len() - 1].1)
        }
        NoiseLaw::Scaled { factor, law } => factor * draw(rng, law),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(law: &NoiseLaw, n: usize, seed: u64) -> Vec<f64> {
        let mut rng = RngStream::new(seed, 0);
        (0..n)
            .map(|_| noise_sample(&mut rng, law).unwrap())
            .collect()
    }

    fn mean_var(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let m = xs.iter().sum::<f64>() / n;
        (
            m,
            xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0),
        )
    }

    fn quantile(xs: &mut [f64], p: f64) -> f64 {
        xs.sort_by(f64::total_cmp);
        let h = (xs.len() - 1) as f64 * p;
        let lo = h.floor() as usize;
        xs[lo] + (h - lo as f64) * (xs[(lo + 1).min(xs.len() - 1)] - xs[lo])
    }

    #[test]
    fn gaussian_moments() {
        let (m, v) = mean_var(&sample(&NoiseLaw::Gaussian { sd: 1.0 }, 200_000, 1));
        assert!(m.abs() < 4.0 * (1.0f64 / 2e5).sqrt());
        assert!((v - 1.0).abs() < 0.015);
    }

    #[test]
    fn contaminated_normal_variance() {
        let law = NoiseLaw::ContaminatedNormal {
            weight: 0.1,
            scale: 15.0,
        };
        assert!((law.variance().unwrap() - 23.4).abs() < 1e-12);
        assert!((law.variance().unwrap().sqrt() - 4.83).abs() < 0.01);
        let (_, v) = mean_var(&sample(&law, 1_000_000, 2));
        assert!((v - 23.4).abs() < 0.3, "variance {v}");
    }

    #[test]
    fn cauchy_median_and_iqr() {
        let mut xs = sample(&NoiseLaw::Cauchy, 200_000, 3);
        let med = quantile(&mut xs, 0.5);
        let iqr = quantile(&mut xs, 0.75) - quantile(&mut xs, 0.25);
        assert!(med.abs() < 0.015);
        assert!((iqr - 2.0).abs() < 0.03, "iqr {iqr}");
    }

    #[test]
    fn skew_t_gamma_one_is_symmetric() {
        // df = 7 keeps the third moment finite for a usable skewness estimate.
        let xs = sample(
            &NoiseLaw::SkewT {
                df: 7.0,
                gamma: 1.0,
            },
            400_000,
            4,
        );
        let (m, v) = mean_var(&xs);
        let skew = xs.iter().map(|x| ((x - m) / v.sqrt()).powi(3)).sum::<f64>() / xs.len() as f64;
        assert!(skew.abs() < 0.05, "skewness {skew}");
    }

    #[test]
    fn skew_t_sign_split() {
        let xs = sample(
            &NoiseLaw::SkewT {
                df: 3.0,
                gamma: 3.0,
            },
            200_000,
            5,
        );
        let pos = xs.iter().filter(|&&x| x > 0.0).count() as f64 / xs.len() as f64;
        assert!((pos - 0.9).abs() < 0.005);
    }

    #[test]
    fn mixture_selects_by_weight() {
        let law = NoiseLaw::Mixture(vec![
            (
                0.3,
                NoiseLaw::Scaled {
                    factor: 0.0,
                    law: Box::new(NoiseLaw::Cauchy),
                },
            ),
            (0.7, NoiseLaw::Gaussian { sd: 1.0 }),
        ]);
        let xs = sample(&law, 100_000, 6);
        let zeros = xs.iter().filter(|&&x| x == 0.0).count() as f64 / xs.len() as f64;
        assert!((zeros - 0.3).abs() < 0.006);
    }

    #[test]
    fn malformed_laws_rejected() {
        let mut rng = RngStream::new(0, 0);
        let bad = [
            NoiseLaw::Gaussian { sd: 0.0 },
            NoiseLaw::ContaminatedNormal {
                weight: 1.5,
                scale: 2.0,
            },
            NoiseLaw::SkewT {
                df: 3.0,
                gamma: -1.0,
            },
            NoiseLaw::Mixture(vec![]),
            NoiseLaw::Mixture(vec![(0.5, NoiseLaw::Cauchy)]),
            NoiseLaw::Mixture(vec![(-0.5, NoiseLaw::Cauchy), (1.5, NoiseLaw::Cauchy)]),
        ];
        for law in &bad {
            assert_eq!(
                noise_sample(&mut rng, law).unwrap_err().class(),
                "parameter"
            );
        }
    }
}
