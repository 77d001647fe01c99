//! Simulation designs, accuracy metrics, replication studies,
//! hyperparameter sensitivity and cross-validation.

pub mod cv;
pub mod metrics;
pub mod scenario;
pub mod sensitivity;
pub mod study;

pub use cv::{cross_validate, fold_partition, CvResult};
pub use metrics::{aggregate, mann_whitney_less, metrics, AggregateMetrics, ReplicationMetrics};
pub use scenario::{
    ar1_design, contaminated_sd, generate_scenario, toy_multimodal_dataset, true_beta,
    ScenarioSpec, SIM_K,
};
pub use sensitivity::{
    design_grid, one_at_a_time_grid, sensitivity_curve_study, sensitivity_dataset, true_curve,
    CurvePoint, HyperSetting, SensitivityControls,
};
pub use study::{
    run_replication, run_study, with_threads, CellSummary, MethodSpec, ReplicationResult,
};
