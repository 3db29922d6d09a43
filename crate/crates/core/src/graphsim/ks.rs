//! Kolmogorov–Smirnov distance to the standard normal after studentising.

use alloc::vec::Vec;

use crate::error::usage;
use crate::Result;

/// Standard normal distribution function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * (1.0 + libm::erf(x / core::f64::consts::SQRT_2))
}

/// Lilliefors 1% critical value for the studentised normal KS statistic (large-sample form).
pub fn lilliefors_critical_1pct(samples: usize) -> f64 {
    1.031 / libm::sqrt(samples as f64)
}

/// Outcome of [`ks_normal_test`].
#[derive(Clone, Debug, PartialEq)]
pub struct KsOutcome {
    pub statistic: f64,
    pub critical: f64,
    pub samples: usize,
}

impl KsOutcome {
    pub fn accepts(&self) -> bool {
        self.statistic < self.critical
    }
}

/// `sup |F_M − cdf|` for an empirical sample.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut sorted: Vec<f64> = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let m = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / m).max((i + 1) as f64 / m - f);
    }
    d
}

/// Studentises the sample with its own mean and standard deviation and compares it to `N(0, 1)`.
pub fn ks_normal_test(samples: &[f64]) -> Result<KsOutcome> {
    if samples.len() < 3 {
        return Err(usage!("KS test needs at least 3 samples"));
    }
    let m = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / m;
    let sd = libm::sqrt(samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (m - 1.0));
    if !(sd > 0.0) {
        return Err(usage!("KS test on a degenerate sample"));
    }
    let z: Vec<f64> = samples.iter().map(|x| (x - mean) / sd).collect();
    Ok(KsOutcome {
        statistic: ks_statistic(&z, normal_cdf),
        critical: lilliefors_critical_1pct(samples.len()),
        samples: samples.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cdf_values() {
        assert!((normal_cdf(0.0) - 0.5).abs() < 1e-15);
        assert!((normal_cdf(1.959_963_984_540_054) - 0.975).abs() < 1e-12);
    }

    #[test]
    fn quantile_grid_is_accepted_and_uniform_grid_rejected() {
        // Midpoint quantiles of N(0,1) by bisection on the cdf.
        let m = 500;
        let normal: Vec<f64> = (0..m)
            .map(|i| {
                let target = (i as f64 + 0.5) / m as f64;
                let (mut lo, mut hi) = (-10.0, 10.0);
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    if normal_cdf(mid) < target {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                lo
            })
            .collect();
        assert!(ks_normal_test(&normal).unwrap().accepts());
        let skewed: Vec<f64> = (0..m).map(|i| libm::exp(4.0 * i as f64 / m as f64)).collect();
        assert!(!ks_normal_test(&skewed).unwrap().accepts());
        assert!(ks_normal_test(&[1.0, 1.0, 1.0]).is_err());
    }
}
