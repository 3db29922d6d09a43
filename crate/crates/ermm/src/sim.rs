//! Parallel Monte Carlo drivers over sample indices.
//!
//! Sample `i` is always generated from stream `i` of the master seed and its
//! statistic enters the exact power sums of batch `i·B/M`, so results do not
//! depend on the number of worker threads.

use num_bigint::BigInt;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use ermm_core::combinatorics::{limit_cumulant, LimitValue, ModelKind, Regime, RegimeTag};
use ermm_core::graphsim::{
    ks_normal_test, log_normalization, sample_walk_count, KsOutcome, RegimeSchedule, SampleStats, SchedulePoint,
    ShapeStatistics, DEFAULT_BATCHES,
};
use ermm_core::num::{from_f64, to_f64};
use ermm_core::Rational;

use crate::error::{CliError, CliResult};

/// Environment variable overriding the worker thread count.
pub const THREADS_ENV: &str = "ERMM_THREADS";

/// Runs `f` on a pool sized by `ERMM_THREADS` (rayon's default when unset).
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> CliResult<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var(THREADS_ENV) {
        let threads: usize = value
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {value:?}")))?;
        builder = builder.num_threads(threads);
    }
    let pool = builder.build().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(pool.install(f))
}

/// What to sample: `model`, power `q`, at one `(n, p)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplingJob {
    pub model: ModelKind,
    pub q: u32,
    pub point: SchedulePoint,
    pub samples: u64,
    pub seed: u64,
}

/// Exact power sums up to `order` over all samples of `job`.
pub fn accumulate(job: &SamplingJob, order: usize) -> CliResult<SampleStats> {
    let empty = SampleStats::new(order, job.samples, DEFAULT_BATCHES.min(job.samples as usize))?;
    let result = (0..job.samples)
        .into_par_iter()
        .fold(
            || empty.clone(),
            |mut acc, i| {
                let v = sample_walk_count(job.point.n, job.point.p, job.seed, i, job.model, job.q);
                acc.add(i, &BigInt::from(v)).expect("index within range");
                acc
            },
        )
        .reduce(
            || empty.clone(),
            |mut a, b| {
                a.merge(&b).expect("same shape");
                a
            },
        );
    Ok(result)
}

/// Per-sample statistics in index order.
pub fn sample_counts(job: &SamplingJob) -> Vec<BigInt> {
    (0..job.samples)
        .into_par_iter()
        .map(|i| BigInt::from(sample_walk_count(job.point.n, job.point.p, job.seed, i, job.model, job.q)))
        .collect()
}

/// Regime value with its parameter taken from a schedule point.
pub fn regime_at(tag: RegimeTag, point: SchedulePoint) -> CliResult<Regime> {
    let rational = |v: f64| from_f64(v).ok_or_else(|| CliError::Usage(format!("{v} is not a finite number")));
    Ok(match tag {
        RegimeTag::Full => Regime::full(rational(point.p)?)?,
        RegimeTag::Dilute => Regime::Dilute,
        RegimeTag::Sparse => Regime::sparse(rational(point.c())?)?,
        RegimeTag::VerySparse => Regime::VerySparse,
    })
}

/// Limit target for `(model, q, k)` at a schedule point, if one is defined.
pub fn target_value(model: ModelKind, q: u32, k: u32, tag: RegimeTag, point: SchedulePoint) -> CliResult<Option<(f64, String, &'static str)>> {
    let entry = match limit_cumulant(model, q, k, tag) {
        Ok(entry) => entry,
        Err(ermm_core::Error::NotProvided(_)) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let regime = regime_at(tag, point)?;
    let exact = entry.value.evaluate(&regime)?;
    let text = match &entry.value {
        LimitValue::Exact(_) => ermm_core::num::fmt_rational(&exact),
        other => other.render(),
    };
    Ok(Some((to_f64(&exact), text, entry.source)))
}

/// One line of a convergence table.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub point: SchedulePoint,
    pub estimate: f64,
    pub stderr: Option<f64>,
    pub target: Option<(f64, String, &'static str)>,
}

/// Normalised `k`-th cumulant estimates along a schedule.
pub fn normalized_cumulant_run(
    model: ModelKind,
    q: u32,
    k: u32,
    schedule: &RegimeSchedule,
    samples: u64,
    seed: u64,
) -> CliResult<Vec<ConvergenceRow>> {
    if k == 0 || k as usize > ermm_core::graphsim::MAX_ESTIMATED_ORDER {
        return Err(CliError::Usage(format!("cumulant order k = {k} outside 1..=6")));
    }
    let mut rows = Vec::new();
    for &point in schedule.points() {
        let job = SamplingJob { model, q, point, samples, seed };
        let stats = accumulate(&job, k as usize)?;
        let estimate = &stats.estimate_cumulants()?[k as usize - 1];
        let scale = log_normalization(model, q, k, schedule.tag(), point).exp();
        rows.push(ConvergenceRow {
            point,
            estimate: estimate.estimate * scale,
            stderr: estimate.stderr.map(|s| s * scale),
            target: target_value(model, q, k, schedule.tag(), point)?,
        });
    }
    Ok(rows)
}

/// Gaussianity diagnostics for one `(n, p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CltReport {
    pub point: SchedulePoint,
    pub shape: ShapeStatistics,
    pub ks: KsOutcome,
    /// Normalised cumulants `k = 2..=4` (reported for regimes where the CLT is not expected).
    pub normalized: Vec<f64>,
    /// False for the regimes where the limit law is known not to be Gaussian.
    pub gaussian_expected: bool,
}

impl CltReport {
    /// Skewness and excess kurtosis within five standard errors of zero, and KS accepted.
    pub fn looks_gaussian(&self) -> bool {
        let within = |v: f64, se: Option<f64>| se.is_some_and(|se| v.abs() <= 5.0 * se);
        within(self.shape.skewness, self.shape.skewness_stderr)
            && within(self.shape.excess_kurtosis, self.shape.excess_kurtosis_stderr)
            && self.ks.accepts()
    }
}

/// The limit law is Gaussian except for odd-q X in the sparse regime and everything very sparse.
pub fn gaussian_expected(model: ModelKind, q: u32, tag: RegimeTag) -> bool {
    match tag {
        RegimeTag::VerySparse => false,
        RegimeTag::Sparse => !(model == ModelKind::X && q % 2 == 1),
        _ => true,
    }
}

pub fn clt_test(model: ModelKind, q: u32, tag: RegimeTag, point: SchedulePoint, samples: u64, seed: u64) -> CliResult<CltReport> {
    if samples < 500 {
        return Err(CliError::Usage("CLT checks need at least 500 samples".into()));
    }
    let job = SamplingJob { model, q, point, samples, seed };
    let counts = sample_counts(&job);
    let mut stats = SampleStats::new(4, samples, DEFAULT_BATCHES)?;
    for (i, v) in counts.iter().enumerate() {
        stats.add(i as u64, v)?;
    }
    let values: Vec<f64> = counts.into_iter().map(|v| to_f64(&Rational::from_integer(v))).collect();
    let cumulants = stats.estimate_cumulants()?;
    let normalized = (2..=4u32)
        .map(|k| cumulants[k as usize - 1].estimate * log_normalization(model, q, k, tag, point).exp())
        .collect();
    Ok(CltReport {
        point,
        shape: stats.shape_statistics()?,
        ks: ks_normal_test(&values)?,
        normalized,
        gaussian_expected: gaussian_expected(model, q, tag),
    })
}

/// KS test on `samples` standard normal draws; the expected outcome is acceptance.
pub fn gaussian_calibration(samples: usize, seed: u64) -> CliResult<KsOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<f64> = (0..samples).map(|_| rng.sample(StandardNormal)).collect();
    Ok(ks_normal_test(&draws)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accumulation_is_thread_count_independent() {
        let job = SamplingJob { model: ModelKind::Y, q: 3, point: SchedulePoint { n: 60, p: 0.1 }, samples: 40, seed: 3 };
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| accumulate(&job, 4).unwrap());
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| accumulate(&job, 4).unwrap());
        assert_eq!(one, four);
    }

    #[test]
    fn calibration_accepts_gaussian_draws() {
        assert!(gaussian_calibration(2000, 11).unwrap().accepts());
    }

    #[test]
    fn sparse_mean_targets_are_polynomials_in_one_over_c() {
        let point = SchedulePoint { n: 1000, p: 0.002 };
        let (value, _, source) = target_value(ModelKind::Y, 2, 1, RegimeTag::Sparse, point).unwrap().unwrap();
        assert!((value - 1.5).abs() < 1e-12);
        assert_eq!(source, "sparse-walk-census");
        assert!(target_value(ModelKind::X, 4, 2, RegimeTag::Sparse, point).unwrap().is_none());
    }
}
