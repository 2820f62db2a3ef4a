//! Instance generation, coverage verification, competitive-ratio metrics and
//! batch evaluation.

mod batch;
mod coverage;
mod experiments;
mod generate;

pub use batch::{
    batch_eval, eval_instances, evaluate, summarize, write_csv, BatchOptions, BatchResult, CorpusSpec, RatioReport,
    Summary,
};
pub use coverage::{default_tolerance, sampled_unseen, verify_watchman, Coverage, COVERAGE_TOL_SCALE, SAMPLE_COUNT};
pub use experiments::{lower_bound_experiment, LowerBoundRow};
pub use generate::{gen_random_convex, gen_thin_triangle, random_start, Instance};
