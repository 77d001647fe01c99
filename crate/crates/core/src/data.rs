use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Design matrix and response for a linear model `y = Xβ + ε`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    pub x: DMatrix<f64>,
    pub y: DVector<f64>,
}

impl Dataset {
    pub fn new(x: DMatrix<f64>, y: DVector<f64>) -> Result<Self> {
        if x.nrows() != y.len() {
            return Err(Error::Dimension(format!(
                "X has {} rows but y has length {}",
                x.nrows(),
                y.len()
            )));
        }
        if x.ncols() == 0 {
            return Err(Error::Dimension("X has no columns".into()));
        }
        if let Some(pos) = x.iter().position(|v| !v.is_finite()) {
            let (row, col) = (pos % x.nrows(), pos / x.nrows());
            return Err(Error::Parameter(format!("X[{row}, {col}] is not finite")));
        }
        if let Some(row) = y.iter().position(|v| !v.is_finite()) {
            return Err(Error::Parameter(format!("y[{row}] is not finite")));
        }
        Ok(Dataset { x, y })
    }

    /// Builds from row-major predictor rows.
    pub fn from_rows(rows: &[Vec<f64>], y: Vec<f64>) -> Result<Self> {
        let k = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::Dimension(
                "predictor rows have unequal lengths".into(),
            ));
        }
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        Self::new(
            DMatrix::from_row_slice(rows.len(), k, &flat),
            DVector::from_vec(y),
        )
    }

    pub fn n(&self) -> usize {
        self.x.nrows()
    }

    pub fn k(&self) -> usize {
        self.x.ncols()
    }

    /// Rows selected by `idx`, in that order.
    pub fn subset(&self, idx: &[usize]) -> Dataset {
        let x = self.x.select_rows(idx);
        let y = DVector::from_iterator(idx.len(), idx.iter().map(|&i| self.y[i]));
        Dataset { x, y }
    }

    /// Prepends an all-ones column.
    pub fn with_intercept(&self) -> Dataset {
        let x = self.x.clone().insert_column(0, 1.0);
        Dataset {
            x,
            y: self.y.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes_and_values() {
        assert!(Dataset::new(DMatrix::zeros(3, 2), DVector::zeros(2)).is_err());
        assert!(Dataset::new(DMatrix::zeros(3, 0), DVector::zeros(3)).is_err());
        let mut x = DMatrix::zeros(2, 2);
        x[(1, 1)] = f64::NAN;
        let err = Dataset::new(x, DVector::zeros(2)).unwrap_err();
        assert!(err.to_string().contains("X[1, 1]"));
        assert!(Dataset::from_rows(&[vec![1.0], vec![1.0, 2.0]], vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn subset_and_intercept() {
        let d = Dataset::from_rows(
            &[vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]],
            vec![7.0, 8.0, 9.0],
        )
        .unwrap();
        let s = d.subset(&[2, 0]);
        assert_eq!(s.x.row(0)[1], 6.0);
        assert_eq!(s.y[1], 7.0);
        let i = d.with_intercept();
        assert_eq!(i.k(), 3);
        assert!(i.x.column(0).iter().all(|&v| v == 1.0));
        assert_eq!(i.x.column(2), d.x.column(1));
    }
}
