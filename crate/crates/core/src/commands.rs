//! Config-driven runs of the five subcommands and the files they write.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::io::{
    fmt_f64, ingest_csv, parse_config, render_config, standardise, write_csv, write_text,
    ColumnScale, ConfigMap,
};
use crate::loss::{
    posterior_grid, strict_local_maxima, GridPenalty, PosteriorGridSpec, PriorStyle,
};
use crate::randist::{stage, RngStream};
use crate::sampler::{run_chain, summarize, ModelSpec, Penalty};
use crate::simbench::{
    cross_validate, one_at_a_time_grid, run_study, sensitivity_curve_study, toy_multimodal_dataset,
    with_threads, AggregateMetrics, MethodSpec, ScenarioSpec, SensitivityControls,
};

pub const MANIFEST: &str = "manifest.txt";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Fit,
    Simulate,
    Sensitivity,
    Contour,
    Cv,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Fit => "fit",
            Command::Simulate => "simulate",
            Command::Sensitivity => "sensitivity",
            Command::Contour => "contour",
            Command::Cv => "cv",
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "fit" => Command::Fit,
            "simulate" => Command::Simulate,
            "sensitivity" => Command::Sensitivity,
            "contour" => Command::Contour,
            "cv" => Command::Cv,
            _ => return Err(Error::Config(format!("unknown command `{s}`"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PenaltyKind {
    Lasso,
    ElasticNet,
}

impl PenaltyKind {
    pub fn name(self) -> &'static str {
        match self {
            PenaltyKind::Lasso => "lasso",
            PenaltyKind::ElasticNet => "en",
        }
    }
}

impl FromStr for PenaltyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lasso" => Ok(PenaltyKind::Lasso),
            "en" => Ok(PenaltyKind::ElasticNet),
            _ => Err(Error::Config(format!(
                "penalty must be `lasso` or `en`, got `{s}`"
            ))),
        }
    }
}

/// Everything a run depends on. Rendering it with [`RunConfig::render`]
/// and parsing the text back gives an identical config.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub out: PathBuf,
    pub seed: u64,
    pub tau: f64,
    pub penalty: PenaltyKind,
    /// `a, b, c, d` of the lasso prior.
    pub lasso_hyper: [f64; 4],
    /// `a1, b1, a2, b2, a3, b3` of the elastic-net prior.
    pub en_hyper: [f64; 6],
    pub iters: usize,
    pub burnin: usize,
    pub thin: usize,
    pub eta_inner_iters: usize,
    pub eta_tol: f64,
    pub level: f64,
    pub standardise: bool,
    pub intercept: bool,
    pub reps: usize,
    pub scenarios: Vec<u8>,
    pub n: usize,
    pub folds: usize,
    pub grid_values: Vec<f64>,
    pub prior: PriorStyle,
    pub eta: f64,
    pub lambda1: f64,
    pub lambda3: f64,
    pub lambda4: f64,
    pub log_beta_min: f64,
    pub log_beta_max: f64,
    pub log_beta_points: usize,
    pub log_rho2_min: f64,
    pub log_rho2_max: f64,
    pub log_rho2_points: usize,
}

const KEYS: &[&str] = &[
    "command",
    "input",
    "out",
    "seed",
    "tau",
    "penalty",
    "a",
    "b",
    "c",
    "d",
    "a1",
    "b1",
    "a2",
    "b2",
    "a3",
    "b3",
    "iters",
    "burnin",
    "thin",
    "eta_inner_iters",
    "eta_tol",
    "level",
    "standardise",
    "intercept",
    "reps",
    "scenarios",
    "n",
    "folds",
    "grid_values",
    "prior",
    "eta",
    "lambda1",
    "lambda3",
    "lambda4",
    "log_beta_min",
    "log_beta_max",
    "log_beta_points",
    "log_rho2_min",
    "log_rho2_max",
    "log_rho2_points",
];

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: Display,
{
    value
        .parse()
        .map_err(|e| Error::Config(format!("`{key} = {value}`: {e}")))
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>>
where
    T::Err: Display,
{
    value
        .split(',')
        .map(|v| parse_value(key, v.trim()))
        .collect()
}

fn join<T: Display>(values: &[T]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl RunConfig {
    /// Defaults for `command`; sensitivity runs keep 3000 draws after 1000
    /// burn-in, everything else 2000 after 500.
    pub fn new(command: Command) -> Self {
        let (iters, burnin) = match command {
            Command::Sensitivity => (4000, 1000),
            _ => (2500, 500),
        };
        RunConfig {
            command,
            input: None,
            out: PathBuf::from("out"),
            seed: 0,
            tau: 0.5,
            penalty: PenaltyKind::Lasso,
            lasso_hyper: [1.0; 4],
            en_hyper: [1.0; 6],
            iters,
            burnin,
            thin: 1,
            eta_inner_iters: 10,
            eta_tol: 1e-8,
            level: 0.95,
            standardise: true,
            intercept: true,
            reps: 20,
            scenarios: vec![1],
            n: 100,
            folds: 10,
            grid_values: vec![1.0, 2.0, 5.0],
            prior: PriorStyle::Unconditional,
            eta: 1.0,
            lambda1: 20.0,
            lambda3: 20.0,
            lambda4: 20.0,
            log_beta_min: -6.0,
            log_beta_max: 2.0,
            log_beta_points: 200,
            log_rho2_min: -12.0,
            log_rho2_max: 4.0,
            log_rho2_points: 200,
        }
    }

    /// Builds a config for `command` from parsed key/value pairs. A
    /// `command` entry, if present, must agree.
    pub fn from_map(command: Command, map: &ConfigMap) -> Result<Self> {
        let mut cfg = RunConfig::new(command);
        if let Some(c) = map.get("command") {
            if c.parse::<Command>()? != command {
                return Err(Error::Config(format!(
                    "config is for `{c}`, not `{}`",
                    command.name()
                )));
            }
        }
        for (k, v) in map {
            if k != "command" {
                cfg.set(k, v)?;
            }
        }
        Ok(cfg)
    }

    pub fn from_file(command: Command, path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_map(command, &parse_config(&text)?)
    }

    /// Sets one key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let lasso_slot = ["a", "b", "c", "d"].iter().position(|&k| k == key);
        let en_slot = ["a1", "b1", "a2", "b2", "a3", "b3"]
            .iter()
            .position(|&k| k == key);
        if let Some(j) = lasso_slot {
            self.lasso_hyper[j] = parse_value(key, value)?;
            return Ok(());
        }
        if let Some(j) = en_slot {
            self.en_hyper[j] = parse_value(key, value)?;
            return Ok(());
        }
        match key {
            "command" => {
                if value.parse::<Command>()? != self.command {
                    return Err(Error::Config(format!("cannot change command to `{value}`")));
                }
            }
            "input" => self.input = Some(PathBuf::from(value)),
            "out" => self.out = PathBuf::from(value),
            "seed" => self.seed = parse_value(key, value)?,
            "tau" => self.tau = parse_value(key, value)?,
            "penalty" => self.penalty = value.parse()?,
            "iters" => self.iters = parse_value(key, value)?,
            "burnin" => self.burnin = parse_value(key, value)?,
            "thin" => self.thin = parse_value(key, value)?,
            "eta_inner_iters" => self.eta_inner_iters = parse_value(key, value)?,
            "eta_tol" => self.eta_tol = parse_value(key, value)?,
            "level" => self.level = parse_value(key, value)?,
            "standardise" => self.standardise = parse_value(key, value)?,
            "intercept" => self.intercept = parse_value(key, value)?,
            "reps" => self.reps = parse_value(key, value)?,
            "scenarios" => self.scenarios = parse_list(key, value)?,
            "n" => self.n = parse_value(key, value)?,
            "folds" => self.folds = parse_value(key, value)?,
            "grid_values" => self.grid_values = parse_list(key, value)?,
            "prior" => {
                self.prior = match value {
                    "conditional" => PriorStyle::Conditional,
                    "unconditional" => PriorStyle::Unconditional,
                    _ => {
                        return Err(Error::Config(format!(
                            "prior must be `conditional` or `unconditional`, got `{value}`"
                        )))
                    }
                }
            }
            "eta" => self.eta = parse_value(key, value)?,
            "lambda1" => self.lambda1 = parse_value(key, value)?,
            "lambda3" => self.lambda3 = parse_value(key, value)?,
            "lambda4" => self.lambda4 = parse_value(key, value)?,
            "log_beta_min" => self.log_beta_min = parse_value(key, value)?,
            "log_beta_max" => self.log_beta_max = parse_value(key, value)?,
            "log_beta_points" => self.log_beta_points = parse_value(key, value)?,
            "log_rho2_min" => self.log_rho2_min = parse_value(key, value)?,
            "log_rho2_max" => self.log_rho2_max = parse_value(key, value)?,
            "log_rho2_points" => self.log_rho2_points = parse_value(key, value)?,
            _ => return Err(Error::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    fn get(&self, key: &str) -> Option<String> {
        let lasso = ["a", "b", "c", "d"].iter().position(|&k| k == key);
        if let Some(j) = lasso {
            return Some(self.lasso_hyper[j].to_string());
        }
        let en = ["a1", "b1", "a2", "b2", "a3", "b3"]
            .iter()
            .position(|&k| k == key);
        if let Some(j) = en {
            return Some(self.en_hyper[j].to_string());
        }
        Some(match key {
            "command" => self.command.name().to_string(),
            "input" => return self.input.as_ref().map(|p| p.display().to_string()),
            "out" => self.out.display().to_string(),
            "seed" => self.seed.to_string(),
            "tau" => self.tau.to_string(),
            "penalty" => self.penalty.name().to_string(),
            "iters" => self.iters.to_string(),
            "burnin" => self.burnin.to_string(),
            "thin" => self.thin.to_string(),
            "eta_inner_iters" => self.eta_inner_iters.to_string(),
            "eta_tol" => self.eta_tol.to_string(),
            "level" => self.level.to_string(),
            "standardise" => self.standardise.to_string(),
            "intercept" => self.intercept.to_string(),
            "reps" => self.reps.to_string(),
            "scenarios" => join(&self.scenarios),
            "n" => self.n.to_string(),
            "folds" => self.folds.to_string(),
            "grid_values" => join(&self.grid_values),
            "prior" => match self.prior {
                PriorStyle::Conditional => "conditional".into(),
                PriorStyle::Unconditional => "unconditional".into(),
            },
            "eta" => self.eta.to_string(),
            "lambda1" => self.lambda1.to_string(),
            "lambda3" => self.lambda3.to_string(),
            "lambda4" => self.lambda4.to_string(),
            "log_beta_min" => self.log_beta_min.to_string(),
            "log_beta_max" => self.log_beta_max.to_string(),
            "log_beta_points" => self.log_beta_points.to_string(),
            "log_rho2_min" => self.log_rho2_min.to_string(),
            "log_rho2_max" => self.log_rho2_max.to_string(),
            "log_rho2_points" => self.log_rho2_points.to_string(),
            _ => return None,
        })
    }

    /// All keys as `key = value` lines in a fixed order.
    pub fn render(&self) -> String {
        render_config(KEYS.iter().filter_map(|&k| self.get(k).map(|v| (k, v))))
    }

    pub fn penalty(&self) -> Penalty {
        match self.penalty {
            PenaltyKind::Lasso => {
                let [a, b, c, d] = self.lasso_hyper;
                Penalty::Lasso { a, b, c, d }
            }
            PenaltyKind::ElasticNet => {
                let [a1, b1, a2, b2, a3, b3] = self.en_hyper;
                Penalty::ElasticNet {
                    a1,
                    b1,
                    a2,
                    b2,
                    a3,
                    b3,
                }
            }
        }
    }

    /// Sampler settings drawing on the chain stream of unit `(seed, 0, 0)`.
    pub fn model_spec(&self) -> ModelSpec {
        let mut spec = ModelSpec::new(self.tau, self.penalty());
        spec.n_iter = self.iters;
        spec.burn_in = self.burnin;
        spec.thin = self.thin;
        spec.eta_inner_iters = self.eta_inner_iters;
        spec.eta_tol = self.eta_tol;
        spec.seed = self.seed;
        spec.stream = RngStream::for_unit(self.seed, 0, 0, stage::CHAIN).stream_id();
        spec
    }

    pub fn validate(&self) -> Result<()> {
        self.model_spec().validate()?;
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(Error::Config(format!(
                "level {} must lie in (0, 1)",
                self.level
            )));
        }
        match self.command {
            Command::Fit | Command::Cv => {
                let Some(input) = &self.input else {
                    return Err(Error::Config(format!(
                        "`{}` needs an input CSV",
                        self.command.name()
                    )));
                };
                if !input.is_file() {
                    return Err(Error::Config(format!(
                        "input {} does not exist",
                        input.display()
                    )));
                }
            }
            Command::Contour => {
                if let Some(input) = &self.input {
                    if !input.is_file() {
                        return Err(Error::Config(format!(
                            "input {} does not exist",
                            input.display()
                        )));
                    }
                }
                if self.log_beta_points < 3 || self.log_rho2_points < 3 {
                    return Err(Error::Config(
                        "contour grids need at least 3 points per axis".into(),
                    ));
                }
            }
            Command::Simulate => {
                if self.reps == 0 || self.scenarios.is_empty() || self.n == 0 {
                    return Err(Error::Config(
                        "simulate needs reps ≥ 1, n ≥ 1 and at least one scenario".into(),
                    ));
                }
            }
            Command::Sensitivity => {
                if self
                    .grid_values
                    .iter()
                    .any(|&v| !(v > 0.0 && v.is_finite()))
                {
                    return Err(Error::Config(
                        "grid values must be positive and finite".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Paths of the files a run wrote, manifest last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub files: Vec<PathBuf>,
}

/// Executes `cfg` on at most `threads` workers and writes its outputs plus
/// a manifest into `cfg.out`.
pub fn run(cfg: &RunConfig, threads: Option<usize>) -> Result<RunOutput> {
    let start = Instant::now();
    cfg.validate()?;
    fs::create_dir_all(&cfg.out).map_err(|e| Error::io(&cfg.out, e))?;
    let mut files = with_threads(threads, || match cfg.command {
        Command::Fit => run_fit(cfg),
        Command::Simulate => run_simulate(cfg),
        Command::Sensitivity => run_sensitivity(cfg),
        Command::Contour => run_contour(cfg),
        Command::Cv => run_cv(cfg),
    })??;
    let manifest = cfg.out.join(MANIFEST);
    let text = format!(
        "# hqreg {}\n# wall_time_s = {:.3}\n{}",
        env!("CARGO_PKG_VERSION"),
        start.elapsed().as_secs_f64(),
        cfg.render()
    );
    write_text(&manifest, &text)?;
    files.push(manifest);
    Ok(RunOutput { files })
}

struct PreparedInput {
    data: Dataset,
    /// Coefficient names, intercept first when present.
    names: Vec<String>,
    /// Per-column scales with the CSV column names, response last.
    scales: Option<Vec<(String, ColumnScale)>>,
}

/// Ingests, optionally standardises and optionally prepends an intercept.
fn prepare_input(cfg: &RunConfig) -> Result<PreparedInput> {
    let input = cfg
        .input
        .as_ref()
        .ok_or_else(|| Error::Config("missing input".into()))?;
    let csv = ingest_csv(input)?;
    let mut names = csv.predictors.clone();
    let (mut data, scales) = if cfg.standardise {
        let (d, r) = standardise(&csv.data);
        let scales = csv
            .predictors
            .iter()
            .cloned()
            .zip(r.predictors)
            .chain(std::iter::once((csv.response.clone(), r.response)))
            .collect();
        (d, Some(scales))
    } else {
        (csv.data, None)
    };
    if cfg.intercept {
        data = data.with_intercept();
        names.insert(0, "intercept".into());
    }
    Ok(PreparedInput {
        data,
        names,
        scales,
    })
}

fn run_fit(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let PreparedInput {
        data,
        names,
        scales,
    } = prepare_input(cfg)?;
    let mut samples = run_chain(&data, &cfg.model_spec())?;
    samples.rename_leading(&names)?;
    let summary = summarize(&samples, cfg.level)?;

    let samples_path = cfg.out.join("samples.csv");
    let header: Vec<&str> = samples.names().iter().map(String::as_str).collect();
    write_csv(
        &samples_path,
        &header,
        samples
            .rows()
            .iter()
            .map(|r| r.iter().map(|&v| fmt_f64(v)).collect::<Vec<_>>()),
    )?;

    let summary_path = cfg.out.join("summary.csv");
    write_csv(
        &summary_path,
        &["coefficient", "median", "lower", "upper"],
        summary[..names.len()].iter().map(|s| {
            vec![
                s.name.clone(),
                fmt_f64(s.median),
                fmt_f64(s.lower),
                fmt_f64(s.upper),
            ]
        }),
    )?;

    let h = &samples.health;
    let health_path = cfg.out.join("chain-health.txt");
    let mut entries = vec![
        ("iterations", h.iterations.to_string()),
        ("retained", samples.n_draws().to_string()),
        ("floor_clamps", h.floor_clamps.to_string()),
        ("eta_skips", h.eta_skips.to_string()),
        ("eta_unconverged", h.eta_unconverged.to_string()),
    ];
    if h.mh_proposals > 0 {
        entries.push(("mh_proposals", h.mh_proposals.to_string()));
        entries.push(("mh_accepts", h.mh_accepts.to_string()));
    }
    write_text(&health_path, &render_config(entries))?;

    let mut files = vec![samples_path, summary_path, health_path];
    if let Some(scales) = scales {
        let path = cfg.out.join("standardisation.csv");
        let rows = scales.iter().map(|(name, s)| {
            vec![
                name.clone(),
                fmt_f64(s.mean),
                fmt_f64(s.sd),
                s.applied.to_string(),
            ]
        });
        write_csv(&path, &["column", "mean", "sd", "applied"], rows)?;
        files.push(path);
    }
    Ok(files)
}

fn run_simulate(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    if cfg.reps >= 100 {
        log::warn!("{} replications per cell; expect a long run", cfg.reps);
    }
    let scenarios = cfg
        .scenarios
        .iter()
        .map(|&id| ScenarioSpec::simulation(id, cfg.n, cfg.tau))
        .collect::<Result<Vec<_>>>()?;
    let mut method = MethodSpec::new(cfg.penalty.name(), cfg.penalty());
    method.n_iter = cfg.iters;
    method.burn_in = cfg.burnin;
    method.thin = cfg.thin;
    method.level = cfg.level;
    let cells = run_study(&scenarios, &method, cfg.reps, cfg.seed, None)?;

    let tables = cfg.out.join("tables.csv");
    let mut rows = Vec::new();
    for c in &cells {
        for (r, e) in &c.errors {
            log::warn!("scenario {} replication {r} failed: {e}", c.scenario);
        }
        let m = c.metrics;
        let metric = |f: fn(&AggregateMetrics) -> f64| {
            m.as_ref().map_or("NA".to_string(), |m| fmt_f64(f(m)))
        };
        rows.push(vec![
            c.method.clone(),
            c.scenario.to_string(),
            fmt_f64(c.tau),
            c.n.to_string(),
            metric(|m| m.rmse),
            metric(|m| m.mmad),
            metric(|m| m.al),
            metric(|m| m.cp),
            c.replications.to_string(),
            c.failures.to_string(),
            c.complete.to_string(),
        ]);
    }
    write_csv(
        &tables,
        &[
            "method",
            "scenario",
            "tau",
            "n",
            "rmse",
            "mmad",
            "al",
            "cp",
            "replications",
            "failures",
            "complete",
        ],
        rows,
    )?;

    let eta = cfg.out.join("eta.csv");
    let eta_rows = cells.iter().flat_map(|c| {
        c.results.iter().map(move |r| {
            vec![
                c.scenario.to_string(),
                r.replication.to_string(),
                fmt_f64(r.eta_median),
            ]
        })
    });
    write_csv(&eta, &["scenario", "replication", "eta_median"], eta_rows)?;
    Ok(vec![tables, eta])
}

fn run_sensitivity(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let settings = one_at_a_time_grid(cfg.penalty(), &cfg.grid_values);
    let controls = SensitivityControls {
        tau: cfg.tau,
        n_iter: cfg.iters,
        burn_in: cfg.burnin,
        thin: cfg.thin,
        seed: cfg.seed,
    };
    let points = sensitivity_curve_study(&settings, &controls)?;
    let path = cfg.out.join("curve.csv");
    write_csv(
        &path,
        &["setting", "x", "fitted", "truth"],
        points.iter().map(|p| {
            vec![
                p.label.clone(),
                fmt_f64(p.x),
                fmt_f64(p.fitted),
                fmt_f64(p.truth),
            ]
        }),
    )?;
    Ok(vec![path])
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// The single-predictor data for a contour run: the input CSV as given, or
/// the seeded toy fixture.
pub fn contour_dataset(cfg: &RunConfig) -> Result<Dataset> {
    match &cfg.input {
        Some(path) => Ok(ingest_csv(path)?.data),
        None => toy_multimodal_dataset(&mut RngStream::for_unit(cfg.seed, 0, 0, stage::DATA)),
    }
}

fn run_contour(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let penalty = match cfg.penalty {
        PenaltyKind::Lasso => GridPenalty::Lasso {
            lambda1: cfg.lambda1,
        },
        PenaltyKind::ElasticNet => GridPenalty::ElasticNet {
            lambda3: cfg.lambda3,
            lambda4: cfg.lambda4,
        },
    };
    let spec = PosteriorGridSpec {
        data: contour_dataset(cfg)?,
        penalty,
        style: cfg.prior,
        eta: cfg.eta,
        tau: cfg.tau,
        log_beta: linspace(cfg.log_beta_min, cfg.log_beta_max, cfg.log_beta_points),
        log_rho2: linspace(cfg.log_rho2_min, cfg.log_rho2_max, cfg.log_rho2_points),
    };
    let grid = posterior_grid(&spec)?;
    let path = cfg.out.join("grid.csv");
    let rows = grid.log_beta.iter().enumerate().flat_map(|(i, &lb)| {
        let grid = &grid;
        grid.log_rho2
            .iter()
            .enumerate()
            .map(move |(j, &lr)| vec![fmt_f64(lb), fmt_f64(lr), fmt_f64(grid.values[i][j])])
    });
    write_csv(&path, &["log_beta", "log_rho2", "log_posterior"], rows)?;

    let maxima_path = cfg.out.join("maxima.csv");
    let maxima = strict_local_maxima(&grid.values);
    write_csv(
        &maxima_path,
        &["log_beta", "log_rho2", "log_posterior"],
        maxima.iter().map(|&(i, j)| {
            vec![
                fmt_f64(grid.log_beta[i]),
                fmt_f64(grid.log_rho2[j]),
                fmt_f64(grid.values[i][j]),
            ]
        }),
    )?;
    Ok(vec![path, maxima_path])
}

fn run_cv(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let data = prepare_input(cfg)?.data;
    let result = cross_validate(&data, &cfg.model_spec(), cfg.folds)?;
    let metrics = cfg.out.join("metrics.csv");
    write_csv(
        &metrics,
        &["mspe", "mape", "mhpe", "medspe"],
        [vec![
            fmt_f64(result.mspe),
            fmt_f64(result.mape),
            fmt_f64(result.mhpe),
            fmt_f64(result.medspe),
        ]],
    )?;
    let folds = cfg.out.join("folds.csv");
    write_csv(
        &folds,
        &["fold", "mse"],
        result
            .fold_mse
            .iter()
            .enumerate()
            .map(|(f, &m)| vec![f.to_string(), fmt_f64(m)]),
    )?;
    Ok(vec![metrics, folds])
}
