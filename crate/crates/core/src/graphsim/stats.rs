//! Exact power-sum accumulation and unbiased cumulant estimators.
//!
//! Samples are integers, so power sums are kept as exact `BigInt`s. Moments and
//! k-statistics are formed in exact rational arithmetic and only the final
//! estimates are rounded to `f64`; accumulation order therefore never changes a
//! result.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::usage;
use crate::num::{binomial, to_f64};
use crate::{Rational, Result};

/// Number of contiguous batches used for batch-means standard errors.
pub const DEFAULT_BATCHES: usize = 20;

/// Highest cumulant order the estimators support.
pub const MAX_ESTIMATED_ORDER: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
struct PowerSums {
    count: u64,
    /// `sums[j] = Σ v^{j+1}`.
    sums: Vec<BigInt>,
}

impl PowerSums {
    fn new(order: usize) -> Self {
        PowerSums { count: 0, sums: vec![BigInt::zero(); order] }
    }

    fn add(&mut self, value: &BigInt) {
        self.count += 1;
        let mut power = BigInt::one();
        for s in &mut self.sums {
            power *= value;
            *s += &power;
        }
    }

    fn merge(&mut self, other: &PowerSums) {
        self.count += other.count;
        for (a, b) in self.sums.iter_mut().zip(&other.sums) {
            *a += b;
        }
    }

    /// Central moments `m_2..=m_order` (divisor `count`) and the mean.
    fn central_moments(&self) -> (Rational, Vec<Rational>) {
        let m = Rational::from_integer(BigInt::from(self.count));
        let raw: Vec<Rational> = self.sums.iter().map(|s| Rational::from_integer(s.clone()) / &m).collect();
        let mean = raw[0].clone();
        let neg_mean = -mean.clone();
        let mut central = vec![Rational::zero(); self.sums.len() + 1];
        for (r, slot) in central.iter_mut().enumerate().skip(2) {
            let mut total = Rational::zero();
            let mut power = Rational::one();
            // Σ_j C(r, j) raw_j (−mean)^{r−j}, summed from j = r down to 0.
            let mut terms = Vec::with_capacity(r + 1);
            for _ in 0..=r {
                terms.push(power.clone());
                power *= &neg_mean;
            }
            for j in 0..=r {
                let raw_j = if j == 0 { Rational::one() } else { raw[j - 1].clone() };
                let c = Rational::from_integer(BigInt::from(binomial(r as u64, j as u64)));
                total += c * raw_j * &terms[r - j];
            }
            *slot = total;
        }
        (mean, central)
    }

    /// Cumulant estimates of orders `1..=order`: exact k-statistics up to 4, plug-in beyond.
    fn cumulants(&self, order: usize) -> Vec<Rational> {
        let (mean, m) = self.central_moments();
        let n = Rational::from_integer(BigInt::from(self.count));
        let one = Rational::one();
        let mut out = vec![mean];
        if order >= 2 {
            out.push(&n / (&n - &one) * &m[2]);
        }
        if order >= 3 {
            let two = &one + &one;
            out.push(&n * &n / ((&n - &one) * (&n - &two)) * &m[3]);
        }
        if order >= 4 {
            let (two, three) = (Rational::from_integer(2.into()), Rational::from_integer(3.into()));
            let num = &n * &n * ((&n + &one) * &m[4] - &three * (&n - &one) * &m[2] * &m[2]);
            let den = (&n - &one) * (&n - &two) * (&n - &three);
            out.push(num / den);
        }
        if order >= 5 {
            let ten = Rational::from_integer(10.into());
            out.push(&m[5] - &ten * &m[3] * &m[2]);
        }
        if order >= 6 {
            let r = |v: i64| Rational::from_integer(v.into());
            out.push(&m[6] - r(15) * &m[4] * &m[2] - r(10) * &m[3] * &m[3] + r(30) * &m[2] * &m[2] * &m[2]);
        }
        out
    }
}

/// Exact power sums of integer samples, split into contiguous batches by sample index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleStats {
    order: usize,
    total_samples: u64,
    batches: Vec<PowerSums>,
}

/// A cumulant estimate and its batch-means standard error.
#[derive(Clone, Debug, PartialEq)]
pub struct CumulantEstimate {
    pub order: usize,
    pub estimate: f64,
    /// `None` when the batches are too small to form the estimator.
    pub stderr: Option<f64>,
}

/// Standardised skewness `κ3/κ2^{3/2}` and excess kurtosis `κ4/κ2²`, with batch-means errors.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapeStatistics {
    pub skewness: f64,
    pub skewness_stderr: Option<f64>,
    pub excess_kurtosis: f64,
    pub excess_kurtosis_stderr: Option<f64>,
}

impl SampleStats {
    /// Accumulator for power sums up to `order` over `total_samples` samples in `batches` batches.
    pub fn new(order: usize, total_samples: u64, batches: usize) -> Result<Self> {
        if order == 0 || order > MAX_ESTIMATED_ORDER {
            return Err(usage!("cumulant order must be in 1..={MAX_ESTIMATED_ORDER}"));
        }
        if batches == 0 || total_samples < batches as u64 {
            return Err(usage!("need at least one sample per batch ({total_samples} samples, {batches} batches)"));
        }
        Ok(SampleStats { order, total_samples, batches: vec![PowerSums::new(order); batches] })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn total_samples(&self) -> u64 {
        self.total_samples
    }

    pub fn count(&self) -> u64 {
        self.batches.iter().map(|b| b.count).sum()
    }

    fn batch_of(&self, index: u64) -> usize {
        ((index as u128 * self.batches.len() as u128) / self.total_samples as u128) as usize
    }

    /// Records the sample with run index `index`.
    pub fn add(&mut self, index: u64, value: &BigInt) -> Result<()> {
        if index >= self.total_samples {
            return Err(usage!("sample index {index} outside 0..{}", self.total_samples));
        }
        let b = self.batch_of(index);
        self.batches[b].add(value);
        Ok(())
    }

    /// Adds another accumulator built with the same shape.
    pub fn merge(&mut self, other: &SampleStats) -> Result<()> {
        if other.order != self.order || other.total_samples != self.total_samples || other.batches.len() != self.batches.len() {
            return Err(usage!("cannot merge accumulators of different shapes"));
        }
        for (a, b) in self.batches.iter_mut().zip(&other.batches) {
            a.merge(b);
        }
        Ok(())
    }

    fn pooled(&self) -> PowerSums {
        let mut all = PowerSums::new(self.order);
        for b in &self.batches {
            all.merge(b);
        }
        all
    }

    fn batch_spread(values: &[f64]) -> f64 {
        let b = values.len() as f64;
        let mean = values.iter().sum::<f64>() / b;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (b - 1.0);
        libm::sqrt(var / b)
    }

    /// Exact pooled cumulant estimates of orders `1..=order`.
    pub fn exact_cumulants(&self) -> Result<Vec<Rational>> {
        let pooled = self.pooled();
        if pooled.count < (self.order as u64).clamp(2, 4) {
            return Err(usage!("{} samples are too few for order {}", pooled.count, self.order));
        }
        Ok(pooled.cumulants(self.order))
    }

    /// Cumulant estimates with batch-means standard errors.
    pub fn estimate_cumulants(&self) -> Result<Vec<CumulantEstimate>> {
        let pooled = self.exact_cumulants()?;
        let batch_ok = self.batches.len() >= 2 && self.batches.iter().all(|b| b.count > self.order as u64 + 1);
        let per_batch: Vec<Vec<Rational>> =
            if batch_ok { self.batches.iter().map(|b| b.cumulants(self.order)).collect() } else { Vec::new() };
        Ok(pooled
            .iter()
            .enumerate()
            .map(|(j, value)| {
                let stderr = batch_ok.then(|| {
                    let values: Vec<f64> = per_batch.iter().map(|c| to_f64(&c[j])).collect();
                    Self::batch_spread(&values)
                });
                CumulantEstimate { order: j + 1, estimate: to_f64(value), stderr }
            })
            .collect())
    }

    /// Skewness and excess kurtosis of the pooled sample (needs `order ≥ 4`).
    pub fn shape_statistics(&self) -> Result<ShapeStatistics> {
        if self.order < 4 {
            return Err(usage!("shape statistics need power sums up to order 4"));
        }
        let shape = |c: &[Rational]| {
            let k2 = to_f64(&c[1]);
            (to_f64(&c[2]) / libm::pow(k2, 1.5), to_f64(&c[3]) / (k2 * k2))
        };
        let (skewness, excess_kurtosis) = shape(&self.exact_cumulants()?);
        let batch_ok = self.batches.len() >= 2 && self.batches.iter().all(|b| b.count > 5);
        let (skewness_stderr, excess_kurtosis_stderr) = if batch_ok {
            let values: Vec<(f64, f64)> = self.batches.iter().map(|b| shape(&b.cumulants(4))).collect();
            let s: Vec<f64> = values.iter().map(|v| v.0).collect();
            let k: Vec<f64> = values.iter().map(|v| v.1).collect();
            (Some(Self::batch_spread(&s)), Some(Self::batch_spread(&k)))
        } else {
            (None, None)
        };
        Ok(ShapeStatistics { skewness, skewness_stderr, excess_kurtosis, excess_kurtosis_stderr })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn stats_of(values: &[i64], order: usize, batches: usize) -> SampleStats {
        let mut s = SampleStats::new(order, values.len() as u64, batches).unwrap();
        for (i, &v) in values.iter().enumerate() {
            s.add(i as u64, &BigInt::from(v)).unwrap();
        }
        s
    }

    #[test]
    fn k_statistics_match_textbook_values() {
        // Data 1, 2, 4, 8: m2 = 115/16 and m3 = 405/32.
        let s = stats_of(&[1, 2, 4, 8], 4, 1);
        let k = s.exact_cumulants().unwrap();
        assert_eq!(k[0], rat(15, 4));
        assert_eq!(k[1], rat(115, 12));
        assert_eq!(k[2], rat(135, 4));
    }

    #[test]
    fn constant_samples_have_zero_higher_cumulants() {
        let s = stats_of(&[5; 40], 6, 4);
        let est = s.estimate_cumulants().unwrap();
        assert_eq!(est[0].estimate, 5.0);
        assert!(est[1..].iter().all(|e| e.estimate == 0.0 && e.stderr == Some(0.0)));
    }

    #[test]
    fn merge_is_order_independent() {
        let values: Vec<i64> = (0..60).map(|i| (i * i * 7 + 3) % 23).collect();
        let whole = stats_of(&values, 6, 5);
        let mut left = SampleStats::new(6, 60, 5).unwrap();
        let mut right = SampleStats::new(6, 60, 5).unwrap();
        for (i, &v) in values.iter().enumerate().rev() {
            let target = if i % 3 == 0 { &mut left } else { &mut right };
            target.add(i as u64, &BigInt::from(v)).unwrap();
        }
        left.merge(&right).unwrap();
        assert_eq!(left, whole);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(SampleStats::new(7, 100, 10).is_err());
        assert!(SampleStats::new(2, 5, 10).is_err());
        let mut s = SampleStats::new(2, 10, 2).unwrap();
        assert!(s.add(10, &BigInt::from(1)).is_err());
    }
}
