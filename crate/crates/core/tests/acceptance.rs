//! Acceptance checks, one PASS/FAIL line each. Exits nonzero on any failure.

mod common;

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{ks_against_density, mean_and_se};
use hqreg::commands::{run, Command, PenaltyKind, RunConfig, MANIFEST};
use hqreg::loss::{
    asym_density, asym_loss, bridge_params, check_loss, posterior_grid, scale_mixture_density,
    strict_local_maxima, GridPenalty, LossParams, PosteriorGridSpec, PriorStyle,
};
use hqreg::quadrature::{integrate, Tolerance};
use hqreg::randist::{gig_sample, stage, GigParams, RngStream};
use hqreg::sampler::{
    eta_sufficient_statistic, mh_update_lambda3_tilde, refine_eta_gamma, update_eta_approx,
    ChainState, ModelSpec, Penalty,
};
use hqreg::simbench::{
    cross_validate, fold_partition, mann_whitney_less, run_replication, run_study,
    toy_multimodal_dataset, MethodSpec, ScenarioSpec,
};
use hqreg::Dataset;
use nalgebra::{DMatrix, DVector};
use statrs::function::erf::erfc;

type Outcome = Result<String, String>;

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn lattice() -> Vec<LossParams> {
    let mut out = Vec::new();
    for &eta in &[0.3, 1.0, 3.0] {
        for &rho2 in &[0.5, 1.0, 2.0] {
            for &tau in &[0.1, 0.5, 0.9] {
                out.push(LossParams::new(eta, rho2, tau).unwrap());
            }
        }
    }
    out
}

fn quantile_property() -> Outcome {
    let tol = Tolerance {
        abs: 1e-14,
        rel: 1e-13,
    };
    let mu = 0.3;
    let mut worst = 0.0f64;
    for p in lattice() {
        let below = integrate(|x| asym_density(x, mu, &p), f64::NEG_INFINITY, mu, tol)
            .map_err(|e| e.to_string())?;
        worst = worst.max((below.value - p.tau).abs());
    }
    ensure(
        worst < 1e-8,
        format!("max |F(μ) − τ| = {worst:.2e} over 27 points"),
    )
}

fn mixture_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    for &tau in &[0.1, 0.5, 0.9] {
        let p = LossParams::new(1.0, 1.0, tau).unwrap();
        for i in 0..21 {
            let x = -5.0 + 0.5 * i as f64;
            let mixture = scale_mixture_density(x, 0.0, &p).map_err(|e| e.to_string())?;
            let direct = asym_density(x, 0.0, &p);
            worst = worst.max(((mixture - direct) / direct).abs());
        }
    }
    ensure(
        worst < 1e-4,
        format!("max relative gap {worst:.2e} over 63 points"),
    )
}

fn bridging_limits() -> Outcome {
    let mut worst = 0.0f64;
    for &tau in &[0.1, 0.5, 0.9] {
        for &x in &[-2.0, -0.5, 0.5, 2.0] {
            let q = check_loss(x, tau);
            let (eta, rho2) = bridge_params(1e8);
            let big = asym_loss(x, &LossParams::new(eta, rho2, tau).unwrap());
            let (eta, rho2) = bridge_params(1e-8);
            let small = asym_loss(x, &LossParams::new(eta, rho2, tau).unwrap());
            worst = worst
                .max(((big - q) / q).abs())
                .max(((small - q.sqrt()) / q.sqrt()).abs());
        }
    }
    ensure(worst < 1e-3, format!("max relative gap {worst:.2e}"))
}

/// `K_ν(x) = ∫₀^∞ exp(−x cosh t) cosh(νt) dt`.
fn bessel_k_by_quadrature(nu: f64, x: f64) -> f64 {
    integrate(
        |t| (-x * t.cosh()).exp() * (nu * t).cosh(),
        0.0,
        f64::INFINITY,
        Tolerance {
            abs: 0.0,
            rel: 1e-13,
        },
    )
    .unwrap()
    .value
}

fn gig_moments() -> Outcome {
    let fixtures = [
        (-0.5, 1.0, 1.0),
        (0.5, 1.3, 0.7),
        (0.5, 3.0, 0.2),
        (1.0, 2.0, 3.0),
        (1.0, 0.5, 4.0),
        (-21.0, 20f64.sqrt(), 25f64.sqrt()),
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for (f, &(nu, c, d)) in fixtures.iter().enumerate() {
        let p = GigParams::new(nu, c, d).unwrap();
        let mut rng = RngStream::new(4, f as u64);
        let x: Vec<f64> = (0..1_000_000)
            .map(|_| gig_sample(&mut rng, &p).unwrap())
            .collect();
        let inv: Vec<f64> = x.iter().map(|v| 1.0 / v).collect();
        let k = bessel_k_by_quadrature(nu, c * d);
        let mean = d / c * bessel_k_by_quadrature(nu + 1.0, c * d) / k;
        let mean_inv = c / d * bessel_k_by_quadrature(nu - 1.0, c * d) / k;
        let (m, se) = mean_and_se(&x);
        let (mi, sei) = mean_and_se(&inv);
        let (z, zi) = ((m - mean) / se, (mi - mean_inv) / sei);
        ok &= z.abs() < 3.0 && zi.abs() < 3.0;
        notes.push(format!("ν={nu}: z={z:+.2}/{zi:+.2}"));
    }
    ensure(ok, notes.join(", "))
}

fn multimodality() -> Outcome {
    let data = toy_multimodal_dataset(&mut RngStream::for_unit(2, 0, 0, stage::DATA))
        .map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    let mut ok = true;
    for penalty in [
        GridPenalty::Lasso { lambda1: 20.0 },
        GridPenalty::ElasticNet {
            lambda3: 20.0,
            lambda4: 20.0,
        },
    ] {
        for style in [PriorStyle::Unconditional, PriorStyle::Conditional] {
            let spec = PosteriorGridSpec {
                data: data.clone(),
                penalty,
                style,
                eta: 1.0,
                tau: 0.5,
                log_beta: (0..200).map(|i| -6.0 + 8.0 * i as f64 / 199.0).collect(),
                log_rho2: (0..200).map(|i| -12.0 + 16.0 * i as f64 / 199.0).collect(),
            };
            let grid = posterior_grid(&spec).map_err(|e| e.to_string())?;
            let count = strict_local_maxima(&grid.values).len();
            ok &= match style {
                PriorStyle::Unconditional => count >= 2,
                PriorStyle::Conditional => count == 1,
            };
            let name = if matches!(penalty, GridPenalty::Lasso { .. }) {
                "lasso"
            } else {
                "en"
            };
            notes.push(format!("{name}/{style:?}: {count}"));
        }
    }
    ensure(ok, notes.join(", "))
}

fn simulation_study() -> Result<(Outcome, Outcome), String> {
    let method = MethodSpec::new("hbqr-bl", Penalty::lasso());
    let s1 = ScenarioSpec::simulation(1, 100, 0.5).map_err(|e| e.to_string())?;
    let s5 = ScenarioSpec::simulation(5, 100, 0.5).map_err(|e| e.to_string())?;
    let cells = run_study(&[s1, s5], &method, 20, 2024, None).map_err(|e| e.to_string())?;
    let m = cells[0].metrics.ok_or("no completed replications")?;
    let reproduction = ensure(
        (0.15..=0.45).contains(&m.rmse) && (0.85..=0.98).contains(&m.cp) && cells[0].failures == 0,
        format!(
            "mean RMSE {:.4}, mean CP {:.4}, failures {}",
            m.rmse, m.cp, cells[0].failures
        ),
    );
    let (u, p) = mann_whitney_less(&cells[1].eta_medians, &cells[0].eta_medians)
        .map_err(|e| e.to_string())?;
    let adaptivity = ensure(p < 0.05, format!("U = {u}, one-sided p = {p:.2e}"));
    Ok((reproduction, adaptivity))
}

fn quantile_ordering() -> Outcome {
    let method = MethodSpec::new("hbqr-bl", Penalty::lasso());
    let mut medians = Vec::new();
    for tau in [0.25, 0.5, 0.75] {
        let s = ScenarioSpec::simulation(1, 100, tau).map_err(|e| e.to_string())?;
        medians.push(
            run_replication(&s, &method, 2024, 0)
                .map_err(|e| e.to_string())?
                .intercept_median,
        );
    }
    ensure(
        medians.windows(2).all(|w| w[0] <= w[1]),
        format!(
            "intercepts {:.4} / {:.4} / {:.4}",
            medians[0], medians[1], medians[2]
        ),
    )
}

fn lambda3_mh() -> Outcome {
    let t = DVector::from_vec(vec![1.25, 1.75]);
    let spec = ModelSpec::new(0.5, Penalty::elastic_net());
    let mut rng = RngStream::new(9, 0);
    let mut current = 1.0;
    let mut accepted = 0;
    let draws: Vec<f64> = (0..100_000)
        .map(|_| {
            let (next, acc) = mh_update_lambda3_tilde(current, &t, &spec, &mut rng).unwrap();
            accepted += usize::from(acc);
            current = next;
            current
        })
        .collect();
    // Γ(½, λ)^{−2} λ e^{−4λ} for k = 2, Σt = 3, a₁ = b₁ = 1.
    let pi = std::f64::consts::PI;
    let density = |l: f64| {
        if l <= 0.0 {
            0.0
        } else {
            (pi.sqrt() * erfc(l.sqrt())).powi(-2) * l * (-4.0 * l).exp()
        }
    };
    let d = ks_against_density(&draws, density, 0.0, 2000);
    ensure(
        d < 0.01,
        format!("KS {d:.4}, acceptance rate {:.3}", accepted as f64 / 1e5),
    )
}

fn eta_step() -> Outcome {
    let empty = Dataset {
        x: DMatrix::zeros(0, 1),
        y: DVector::zeros(0),
    };
    let state = ChainState::initial(&empty, &Penalty::lasso());
    let (a, b) = (2.0, 3.0);
    let spec = ModelSpec::new(
        0.5,
        Penalty::Lasso {
            a: 1.0,
            b: 1.0,
            c: a,
            d: b,
        },
    );
    let mut rng = RngStream::new(10, 0);
    let mut draws = Vec::with_capacity(100_000);
    for _ in 0..100_000 {
        draws.push(
            update_eta_approx(&state, &spec, &mut rng)
                .map_err(|e| e.to_string())?
                .0
                .ok_or("skipped")?,
        );
    }
    let (m, se) = mean_and_se(&draws);
    let second: Vec<f64> = draws.iter().map(|e| e * e).collect();
    let (m2, se2) = mean_and_se(&second);
    let (z1, z2) = ((m - a / b) / se, (m2 - a * (a + 1.0) / (b * b)) / se2);

    let mut rng = RngStream::new(10, 1);
    let p = GigParams::new(1.0, 1.0, 1.0).unwrap();
    let sigma: Vec<f64> = (0..20).map(|_| gig_sample(&mut rng, &p).unwrap()).collect();
    let r = refine_eta_gamma(
        20,
        eta_sufficient_statistic(&sigma, 1.0),
        1.0,
        1.0,
        1.0,
        10,
        1e-8,
    )
    .map_err(|e| e.to_string())?;
    let monotone = r.trace.len() >= 2 && r.trace.windows(2).all(|w| w[1] < w[0]);
    ensure(
        z1.abs() < 3.0 && z2.abs() < 3.0 && monotone,
        format!(
            "moment z = {z1:+.2}/{z2:+.2}; gap trace {:.1e} → {:.1e} over {} steps",
            r.trace[0],
            r.trace[r.trace.len() - 1],
            r.trace.len()
        ),
    )
}

fn cv_harness() -> Outcome {
    let (n, k) = (60, 3);
    let mut rng = RngStream::new(11, 0);
    let x = DMatrix::from_fn(n, k, |_, _| rng.std_normal());
    let y = &x * DVector::from_vec(vec![1.0, -2.0, 0.5]);
    let data = Dataset::new(x, y).map_err(|e| e.to_string())?;
    let mut spec = ModelSpec::new(
        0.5,
        Penalty::Lasso {
            a: 1.0,
            b: 1e8,
            c: 1.0,
            d: 1.0,
        },
    );
    (spec.n_iter, spec.burn_in, spec.seed) = (1500, 500, 11);
    let cv = cross_validate(&data, &spec, 10).map_err(|e| e.to_string())?;
    let worst = [cv.mspe, cv.mape, cv.mhpe, cv.medspe]
        .into_iter()
        .fold(0.0, f64::max);

    let mut cover = true;
    let mut rng = RngStream::new(11, 1);
    for &(n, folds) in &[(60, 10), (101, 10), (37, 5)] {
        let parts = fold_partition(n, folds, &mut rng).map_err(|e| e.to_string())?;
        let mut seen = vec![0u32; n];
        parts.iter().flatten().for_each(|&i| seen[i] += 1);
        cover &= seen.iter().all(|&c| c == 1) && parts.len() == folds;
    }
    ensure(
        worst < 1e-6 && cover,
        format!("largest metric {worst:.2e}, disjoint cover {cover}"),
    )
}

/// Every output file except the manifest, whose header carries the wall time.
fn outputs(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap() != MANIFEST)
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read(&p).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn manifest_rerun() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let input = dir.path().join("data.csv");
    let mut text = String::from("x1,x2,y\n");
    for i in 0..30 {
        let (x1, x2) = ((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos());
        text.push_str(&format!(
            "{x1},{x2},{}\n",
            1.0 + 2.0 * x1 - x2 + 0.1 * ((i * 7) % 5) as f64
        ));
    }
    fs::write(&input, text).map_err(|e| e.to_string())?;
    let mut checked = Vec::new();
    for command in [
        Command::Fit,
        Command::Simulate,
        Command::Sensitivity,
        Command::Contour,
        Command::Cv,
    ] {
        let mut cfg = RunConfig::new(command);
        (cfg.iters, cfg.burnin, cfg.seed) = (120, 20, 12);
        match command {
            Command::Fit => {
                cfg.input = Some(input.clone());
                cfg.penalty = PenaltyKind::ElasticNet;
            }
            Command::Cv => {
                cfg.input = Some(input.clone());
                cfg.folds = 3;
            }
            Command::Simulate => {
                (cfg.reps, cfg.n) = (2, 40);
                cfg.scenarios = vec![1, 5];
            }
            Command::Sensitivity => cfg.grid_values = vec![2.0],
            Command::Contour => (cfg.log_beta_points, cfg.log_rho2_points) = (25, 20),
        }
        let first = dir.path().join(format!("{}-a", command.name()));
        let second = dir.path().join(format!("{}-b", command.name()));
        cfg.out = first.clone();
        run(&cfg, None).map_err(|e| e.to_string())?;
        let mut again =
            RunConfig::from_file(command, &first.join(MANIFEST)).map_err(|e| e.to_string())?;
        again.out = second.clone();
        run(&again, Some(1)).map_err(|e| e.to_string())?;
        let (a, b) = (outputs(&first), outputs(&second));
        if a.is_empty() || a != b {
            return Err(format!("{} outputs differ after rerun", command.name()));
        }
        checked.push(format!("{} ({} files)", command.name(), a.len()));
    }
    Ok(checked.join(", "))
}

fn guarded(f: impl FnOnce() -> Outcome) -> Outcome {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(r) => r,
        Err(p) => Err(format!(
            "panicked: {}",
            p.downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default()
        )),
    }
}

fn report(id: usize, name: &str, outcome: &Outcome, elapsed: Duration) -> bool {
    let (tag, detail, ok) = match outcome {
        Ok(d) => ("PASS", d, true),
        Err(d) => ("FAIL", d, false),
    };
    println!(
        "{tag} {id:>2}. {name}: {detail} [{:.1} s]",
        elapsed.as_secs_f64()
    );
    ok
}

fn main() -> ExitCode {
    let mut all = true;
    let mut timed = |id: usize, name: &str, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let outcome = guarded(f);
        all &= report(id, name, &outcome, start.elapsed());
    };
    timed(1, "quantile property of the density", &quantile_property);
    timed(2, "scale-mixture equivalence", &mixture_equivalence);
    timed(3, "loss bridging limits", &bridging_limits);
    timed(4, "GIG moment tests", &gig_moments);
    timed(5, "multimodality demonstration", &multimodality);

    let start = Instant::now();
    let study =
        catch_unwind(simulation_study).unwrap_or_else(|_| Err("simulation study panicked".into()));
    let elapsed = start.elapsed();
    let (six, seven) = match study {
        Ok(pair) => pair,
        Err(e) => (Err(e.clone()), Err(e)),
    };
    all &= report(6, "Simulation-1 desk-scale reproduction", &six, elapsed);
    all &= report(7, "η adaptivity (Simulation 5 vs 1)", &seven, elapsed);

    let mut timed = |id: usize, name: &str, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let outcome = guarded(f);
        all &= report(id, name, &outcome, start.elapsed());
    };
    timed(
        8,
        "quantile-level ordering of intercepts",
        &quantile_ordering,
    );
    timed(9, "λ̃₃ Metropolis–Hastings marginal", &lambda3_mh);
    timed(10, "approximate η step", &eta_step);
    timed(11, "cross-validation harness", &cv_harness);
    timed(12, "manifest rerun determinism", &manifest_rerun);

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
