use crate::error::{Error, Result};

/// Counters reported alongside the draws.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainHealth {
    pub iterations: usize,
    /// Latent or scale draws raised to the positivity floor.
    pub floor_clamps: usize,
    /// η updates skipped because the gamma approximation was degenerate.
    pub eta_skips: usize,
    pub eta_unconverged: usize,
    pub mh_proposals: usize,
    pub mh_accepts: usize,
}

/// Retained draws, one row per kept iteration.
#[derive(Clone, Debug, PartialEq)]
pub struct PosteriorSamples {
    names: Vec<String>,
    rows: Vec<Vec<f64>>,
    pub health: ChainHealth,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub name: String,
    pub median: f64,
    pub lower: f64,
    pub upper: f64,
}

impl PosteriorSamples {
    pub fn new(names: Vec<String>) -> Self {
        PosteriorSamples {
            names,
            rows: Vec::new(),
            health: ChainHealth::default(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.names.len() {
            return Err(Error::Dimension(format!(
                "draw has {} values for {} columns",
                row.len(),
                self.names.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn n_draws(&self) -> usize {
        self.rows.len()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn column_by_name(&self, name: &str) -> Option<Vec<f64>> {
        self.column_index(name).map(|j| self.column(j))
    }

    /// Replaces the leading column names (the coefficients) with `names`.
    pub fn rename_leading(&mut self, names: &[String]) -> Result<()> {
        if names.len() > self.names.len() {
            return Err(Error::Dimension(format!(
                "{} names for {} columns",
                names.len(),
                self.names.len()
            )));
        }
        self.names[..names.len()].clone_from_slice(names);
        Ok(())
    }

    pub fn column_mean(&self, j: usize) -> f64 {
        self.rows.iter().map(|r| r[j]).sum::<f64>() / self.rows.len() as f64
    }
}

/// Sample quantile by linear interpolation between order statistics
/// (`h = (n−1)p`). `sorted` must be ascending and nonempty.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    quantile_sorted(&v, 0.5)
}

/// Column-wise median and equal-tailed interval at `level`.
pub fn summarize(samples: &PosteriorSamples, level: f64) -> Result<Vec<Summary>> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Parameter(format!(
            "credible level {level} must lie in (0, 1)"
        )));
    }
    if samples.n_draws() < 2 {
        return Err(Error::InsufficientSamples {
            needed: 2,
            have: samples.n_draws(),
        });
    }
    let tail = (1.0 - level) / 2.0;
    Ok(samples
        .names
        .iter()
        .enumerate()
        .map(|(j, name)| {
            let mut col = samples.column(j);
            col.sort_by(f64::total_cmp);
            Summary {
                name: name.clone(),
                median: quantile_sorted(&col, 0.5),
                lower: quantile_sorted(&col, tail),
                upper: quantile_sorted(&col, 1.0 - tail),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randist::RngStream;
    use proptest::prelude::*;

    fn single(values: &[f64]) -> PosteriorSamples {
        let mut s = PosteriorSamples::new(vec!["x".into()]);
        for &v in values {
            s.push(vec![v]).unwrap();
        }
        s
    }

    #[test]
    fn constant_column() {
        let s = summarize(&single(&[2.5; 10]), 0.95).unwrap();
        assert_eq!((s[0].median, s[0].lower, s[0].upper), (2.5, 2.5, 2.5));
    }

    #[test]
    fn odd_count_median() {
        let v: Vec<f64> = (1..=101).map(f64::from).collect();
        assert_eq!(summarize(&single(&v), 0.5).unwrap()[0].median, 51.0);
    }

    #[test]
    fn normal_interval() {
        let mut rng = RngStream::new(1, 0);
        let v: Vec<f64> = (0..100_000).map(|_| rng.std_normal()).collect();
        let s = &summarize(&single(&v), 0.95).unwrap()[0];
        assert!(
            (s.lower + 1.96).abs() < 0.03 && (s.upper - 1.96).abs() < 0.03,
            "{s:?}"
        );
    }

    #[test]
    fn too_few_draws() {
        let err = summarize(&single(&[1.0]), 0.95).unwrap_err();
        assert_eq!(err.class(), "insufficient-samples");
    }

    proptest! {
        #[test]
        fn interval_brackets_median(v in proptest::collection::vec(-1e6f64..1e6, 2..200), level in 0.01f64..0.99) {
            let s = &summarize(&single(&v), level).unwrap()[0];
            prop_assert!(s.lower <= s.median && s.median <= s.upper);
        }
    }
}
