//! Monte Carlo kernels: graph sampling, walk statistics and cumulant estimation.
//!
//! Everything here is single-threaded and deterministic given a seed; the `ermm`
//! crate distributes sample indices over worker threads.

mod adjacency;
mod ks;
mod sampler;
mod schedule;
mod spectral;
mod stats;
mod walks;

pub use adjacency::{AdjacencyMatrix, Backend};
pub use ks::{ks_normal_test, ks_statistic, lilliefors_critical_1pct, normal_cdf, KsOutcome};
pub use sampler::{default_backend, for_each_edge, sample_er, sample_er_indexed, sample_rng, GEOMETRIC_THRESHOLD};
pub use schedule::{
    log_normalization, RegimeSchedule, SchedulePoint, DILUTE_DEFAULT_EXPONENT, VERY_SPARSE_DEFAULT_EXPONENT,
};
pub use spectral::spectral_moments;
pub use stats::{CumulantEstimate, SampleStats, ShapeStatistics, DEFAULT_BATCHES, MAX_ESTIMATED_ORDER};
pub use walks::{
    closed_three_walks, laplacian_stats, permutation_invariance_check, sample_walk_count, walk_count, x_count, y_count,
    BITSET_TRIANGLE_LIMIT,
};
