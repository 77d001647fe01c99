use rayon::prelude::*;

use super::metrics::{aggregate, metrics, AggregateMetrics, ReplicationMetrics};
use super::scenario::{generate_scenario, ScenarioSpec};
use crate::error::{Error, Result};
use crate::randist::{stage, RngStream};
use crate::sampler::{run_chain, summarize, ModelSpec, Penalty};

/// Sampler settings shared by every replication of a study.
#[derive(Clone, Debug, PartialEq)]
pub struct MethodSpec {
    pub name: String,
    pub penalty: Penalty,
    pub n_iter: usize,
    pub burn_in: usize,
    pub thin: usize,
    /// Credible level for the interval metrics.
    pub level: f64,
}

impl MethodSpec {
    /// 2000 retained draws after 500 burn-in.
    pub fn new(name: impl Into<String>, penalty: Penalty) -> Self {
        MethodSpec {
            name: name.into(),
            penalty,
            n_iter: 2500,
            burn_in: 500,
            thin: 1,
            level: 0.95,
        }
    }

    pub fn model_spec(&self, tau: f64, seed: u64, stream: u64) -> ModelSpec {
        let mut spec = ModelSpec::new(tau, self.penalty);
        spec.n_iter = self.n_iter;
        spec.burn_in = self.burn_in;
        spec.thin = self.thin;
        spec.seed = seed;
        spec.stream = stream;
        spec
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReplicationResult {
    pub replication: usize,
    pub metrics: ReplicationMetrics,
    pub eta_median: f64,
    /// Posterior median of the intercept.
    pub intercept_median: f64,
}

/// Fits one replication. Data depend on `(seed, replication, scenario)` but
/// not on `τ`, so the quantile levels of a scenario share datasets.
pub fn run_replication(
    scenario: &ScenarioSpec,
    method: &MethodSpec,
    seed: u64,
    replication: usize,
) -> Result<ReplicationResult> {
    let rep = replication as u64;
    let mut data_rng = RngStream::for_unit(seed, rep, scenario.id, stage::DATA);
    let data = generate_scenario(scenario, &mut data_rng)?;
    let chain_stream = RngStream::for_unit(seed, rep, scenario.id, stage::CHAIN).stream_id();
    let spec = method.model_spec(scenario.tau, seed, chain_stream);
    let samples = run_chain(&data, &spec)?;
    let summary = summarize(&samples, method.level)?;
    let p = scenario.k + 1;
    let medians: Vec<f64> = summary[..p].iter().map(|s| s.median).collect();
    let intervals: Vec<(f64, f64)> = summary[..p].iter().map(|s| (s.lower, s.upper)).collect();
    let eta_median = samples
        .column_index("eta")
        .map(|j| summary[j].median)
        .unwrap_or(f64::NAN);
    Ok(ReplicationResult {
        replication,
        metrics: metrics(&medians, &scenario.beta_true, &intervals)?,
        eta_median,
        intercept_median: medians[0],
    })
}

/// Aggregated results for one `(scenario, τ, n)` cell.
#[derive(Clone, Debug, PartialEq)]
pub struct CellSummary {
    pub method: String,
    pub scenario: u8,
    pub tau: f64,
    pub n: usize,
    pub replications: usize,
    pub failures: usize,
    /// False when more than 5% of replications failed.
    pub complete: bool,
    pub metrics: Option<AggregateMetrics>,
    /// Posterior η medians ordered by replication.
    pub eta_medians: Vec<f64>,
    pub results: Vec<ReplicationResult>,
    pub errors: Vec<(usize, String)>,
}

/// Runs `replications` fits per scenario on a pool of at most `threads`
/// workers (all available cores when `None`). Output order is fixed by
/// scenario order then replication index.
pub fn run_study(
    scenarios: &[ScenarioSpec],
    method: &MethodSpec,
    replications: usize,
    seed: u64,
    threads: Option<usize>,
) -> Result<Vec<CellSummary>> {
    if replications == 0 {
        return Err(Error::Parameter(
            "a study needs at least one replication".into(),
        ));
    }
    let units: Vec<(usize, usize)> = (0..scenarios.len())
        .flat_map(|c| (0..replications).map(move |r| (c, r)))
        .collect();
    let work = || -> Vec<Result<ReplicationResult>> {
        units
            .par_iter()
            .map(|&(c, r)| run_replication(&scenarios[c], method, seed, r))
            .collect()
    };
    let outcomes = with_threads(threads, work)?;

    let mut cells = Vec::with_capacity(scenarios.len());
    for (c, scenario) in scenarios.iter().enumerate() {
        let mut results = Vec::new();
        let mut errors = Vec::new();
        for (&(cc, r), outcome) in units.iter().zip(&outcomes) {
            if cc != c {
                continue;
            }
            match outcome {
                Ok(res) => results.push(*res),
                Err(e) => errors.push((r, e.to_string())),
            }
        }
        let failures = errors.len();
        let ms: Vec<ReplicationMetrics> = results.iter().map(|r| r.metrics).collect();
        cells.push(CellSummary {
            method: method.name.clone(),
            scenario: scenario.id,
            tau: scenario.tau,
            n: scenario.n,
            replications,
            failures,
            complete: (failures as f64) <= 0.05 * replications as f64,
            metrics: aggregate(&ms),
            eta_medians: results.iter().map(|r| r.eta_median).collect(),
            results,
            errors,
        });
    }
    Ok(cells)
}

/// Runs `f` on a dedicated pool when a thread cap is given.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(penalty: Penalty) -> MethodSpec {
        let mut m = MethodSpec::new("quick", penalty);
        m.n_iter = 120;
        m.burn_in = 20;
        m
    }

    #[test]
    fn single_replication_aggregate_equals_itself() {
        let s = ScenarioSpec::simulation(1, 40, 0.5).unwrap();
        let m = quick(Penalty::lasso());
        let cells = run_study(&[s.clone()], &m, 1, 3, Some(1)).unwrap();
        let one = run_replication(&s, &m, 3, 0).unwrap();
        let agg = cells[0].metrics.unwrap();
        assert_eq!(agg.rmse, one.metrics.rmse);
        assert_eq!(agg.mmad, one.metrics.mad);
        assert_eq!(agg.al, one.metrics.al);
        assert_eq!(agg.cp, one.metrics.cp);
        assert!(cells[0].complete);
    }

    #[test]
    fn results_independent_of_thread_count() {
        let s = ScenarioSpec::simulation(5, 30, 0.25).unwrap();
        let m = quick(Penalty::elastic_net());
        let a = run_study(&[s.clone()], &m, 4, 11, Some(1)).unwrap();
        let b = run_study(&[s], &m, 4, 11, Some(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_replications_rejected() {
        let s = ScenarioSpec::simulation(1, 30, 0.5).unwrap();
        assert!(run_study(&[s], &quick(Penalty::lasso()), 0, 1, None).is_err());
    }
}
