use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::loss::{huber_loss, HUBER_DELTA};
use crate::randist::{stage, RngStream};
use crate::sampler::{median, run_chain, summarize, ModelSpec};

/// Prediction errors from K-fold cross-validation. Each metric is the mean
/// over folds of the fold-mean error, except `medspe`, the median over folds
/// of the fold mean squared error.
#[derive(Clone, Debug, PartialEq)]
pub struct CvResult {
    pub mspe: f64,
    pub mape: f64,
    pub mhpe: f64,
    pub medspe: f64,
    pub fold_mse: Vec<f64>,
}

/// Random partition of `0..n` into `folds` groups whose sizes differ by at
/// most one.
pub fn fold_partition(n: usize, folds: usize, rng: &mut RngStream) -> Result<Vec<Vec<usize>>> {
    if folds < 2 || folds > n {
        return Err(Error::Parameter(format!(
            "need 2 ≤ folds ≤ n, got folds = {folds}, n = {n}"
        )));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let mut out = vec![Vec::with_capacity(n / folds + 1); folds];
    for (pos, i) in idx.into_iter().enumerate() {
        out[pos % folds].push(i);
    }
    for (f, rows) in out.iter().enumerate() {
        if rows.len() < 2 {
            return Err(Error::FoldTooSmall {
                fold: f,
                rows: rows.len(),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct FoldErrors {
    mse: f64,
    mae: f64,
    mhe: f64,
}

/// Fits on the complement of each fold (posterior-median coefficients) and
/// scores the held-out rows. Fold `f` runs its chain on stream
/// `(seed, f, 0, CHAIN)`; the partition uses `(seed, 0, 0, FOLDS)`.
pub fn cross_validate(data: &Dataset, spec: &ModelSpec, folds: usize) -> Result<CvResult> {
    spec.validate()?;
    let mut rng = RngStream::for_unit(spec.seed, 0, 0, stage::FOLDS);
    let parts = fold_partition(data.n(), folds, &mut rng)?;
    let per_fold: Vec<Result<FoldErrors>> = parts
        .par_iter()
        .enumerate()
        .map(|(f, held)| {
            let mut in_fold = vec![false; data.n()];
            for &i in held {
                in_fold[i] = true;
            }
            let train_idx: Vec<usize> = (0..data.n()).filter(|&i| !in_fold[i]).collect();
            let train = data.subset(&train_idx);
            let mut fold_spec = spec.clone();
            fold_spec.stream =
                RngStream::for_unit(spec.seed, f as u64, 0, stage::CHAIN).stream_id();
            let samples = run_chain(&train, &fold_spec)?;
            let summary = summarize(&samples, 0.95)?;
            let beta: Vec<f64> = summary[..data.k()].iter().map(|s| s.median).collect();
            let (mut se, mut ae, mut he) = (0.0, 0.0, 0.0);
            for &i in held {
                let pred: f64 = data.x.row(i).iter().zip(&beta).map(|(x, b)| x * b).sum();
                let r = data.y[i] - pred;
                se += r * r;
                ae += r.abs();
                he += huber_loss(r, HUBER_DELTA);
            }
            let m = held.len() as f64;
            Ok(FoldErrors {
                mse: se / m,
                mae: ae / m,
                mhe: he / m,
            })
        })
        .collect();
    let per_fold = per_fold.into_iter().collect::<Result<Vec<_>>>()?;
    let k = per_fold.len() as f64;
    let fold_mse: Vec<f64> = per_fold.iter().map(|f| f.mse).collect();
    Ok(CvResult {
        mspe: fold_mse.iter().sum::<f64>() / k,
        mape: per_fold.iter().map(|f| f.mae).sum::<f64>() / k,
        mhpe: per_fold.iter().map(|f| f.mhe).sum::<f64>() / k,
        medspe: median(&fold_mse),
        fold_mse,
    })
}
