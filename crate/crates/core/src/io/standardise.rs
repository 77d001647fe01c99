use nalgebra::DVector;

use crate::data::Dataset;
use crate::error::{Error, Result};

/// Centre and scale of one column; `applied` is false for columns left
/// untouched because they are constant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ColumnScale {
    pub mean: f64,
    pub sd: f64,
    pub applied: bool,
}

impl ColumnScale {
    fn fit(values: impl Iterator<Item = f64> + Clone) -> Self {
        let n = values.clone().count();
        let mean = values.clone().sum::<f64>() / n as f64;
        let ss: f64 = values.map(|v| (v - mean).powi(2)).sum();
        let sd = if n > 1 {
            (ss / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        let applied = sd > 0.0 && sd.is_finite();
        ColumnScale { mean, sd, applied }
    }

    pub fn forward(&self, v: f64) -> f64 {
        if self.applied {
            (v - self.mean) / self.sd
        } else {
            v
        }
    }

    pub fn inverse(&self, v: f64) -> f64 {
        if self.applied {
            v * self.sd + self.mean
        } else {
            v
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StandardisationRecord {
    pub predictors: Vec<ColumnScale>,
    pub response: ColumnScale,
}

impl StandardisationRecord {
    /// Indices of the predictor columns that were rescaled.
    pub fn applied_to(&self) -> Vec<usize> {
        (0..self.predictors.len())
            .filter(|&j| self.predictors[j].applied)
            .collect()
    }

    /// Transforms new data with the stored centres and scales.
    pub fn apply(&self, data: &Dataset) -> Result<Dataset> {
        self.map(data, ColumnScale::forward)
    }

    pub fn invert(&self, data: &Dataset) -> Result<Dataset> {
        self.map(data, ColumnScale::inverse)
    }

    fn map(&self, data: &Dataset, f: fn(&ColumnScale, f64) -> f64) -> Result<Dataset> {
        if data.k() != self.predictors.len() {
            return Err(Error::Dimension(format!(
                "record covers {} predictors, data has {}",
                self.predictors.len(),
                data.k()
            )));
        }
        let mut x = data.x.clone();
        for (j, scale) in self.predictors.iter().enumerate() {
            x.column_mut(j).apply(|v| *v = f(scale, *v));
        }
        let y = DVector::from_iterator(data.n(), data.y.iter().map(|&v| f(&self.response, v)));
        Dataset::new(x, y)
    }
}

/// Rescales every non-constant column, response included, to sample mean 0
/// and sample SD 1 (denominator `n − 1`). Constant columns pass through with
/// a warning.
pub fn standardise(data: &Dataset) -> (Dataset, StandardisationRecord) {
    let predictors: Vec<ColumnScale> = (0..data.k())
        .map(|j| ColumnScale::fit(data.x.column(j).iter().copied()))
        .collect();
    for (j, s) in predictors.iter().enumerate() {
        if !s.applied {
            log::warn!("predictor column {} is constant; left unscaled", j + 1);
        }
    }
    let response = ColumnScale::fit(data.y.iter().copied());
    if !response.applied {
        log::warn!("response is constant; left unscaled");
    }
    let record = StandardisationRecord {
        predictors,
        response,
    };
    let out = record.apply(data).expect("record built from this dataset");
    (out, record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn one_two_three() {
        let d = Dataset::from_rows(
            &[vec![1.0, 5.0], vec![2.0, 5.0], vec![3.0, 5.0]],
            vec![0.0, 1.0, 5.0],
        )
        .unwrap();
        let (s, rec) = standardise(&d);
        assert_eq!(s.x.column(0).as_slice(), &[-1.0, 0.0, 1.0]);
        assert_eq!(s.x.column(1).as_slice(), &[5.0, 5.0, 5.0]);
        assert_eq!(rec.applied_to(), [0]);
        assert!(!rec.predictors[1].applied);
    }

    #[test]
    fn idempotent_on_standardised_column() {
        let d =
            Dataset::from_rows(&[vec![-1.0], vec![0.0], vec![1.0]], vec![1.0, 0.0, -1.0]).unwrap();
        let (s, _) = standardise(&d);
        assert!((&s.x - &d.x).abs().max() < 1e-12);
        assert!((&s.y - &d.y).abs().max() < 1e-12);
    }

    proptest! {
        #[test]
        fn moments_and_inverse(cols in prop::collection::vec(prop::collection::vec(-1e3f64..1e3, 2..12), 1..4)) {
            let n = cols.iter().map(Vec::len).min().unwrap();
            let rows: Vec<Vec<f64>> = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
            let y: Vec<f64> = (0..n).map(|i| i as f64 * 0.5 - 1.0).collect();
            let d = Dataset::from_rows(&rows, y).unwrap();
            let (s, rec) = standardise(&d);
            for j in rec.applied_to() {
                let c = s.x.column(j);
                let mean = c.sum() / n as f64;
                let sd = (c.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
                prop_assert!(mean.abs() < 1e-12);
                prop_assert!((sd - 1.0).abs() < 1e-12);
            }
            let back = rec.invert(&s).unwrap();
            let scale = 1.0 + d.x.abs().max();
            prop_assert!((&back.x - &d.x).abs().max() < 1e-10 * scale);
            prop_assert!((&back.y - &d.y).abs().max() < 1e-10 * scale);
        }
    }
}
