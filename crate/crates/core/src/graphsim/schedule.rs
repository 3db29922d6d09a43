//! Sequences of `(n, p_n)` realising a regime, and the normalisation of sampled cumulants.

use alloc::vec::Vec;

use crate::combinatorics::{ModelKind, RegimeTag};
use crate::error::usage;
use crate::Result;

/// One point `(n, p_n)` of a schedule; `c = p_n · n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchedulePoint {
    pub n: usize,
    pub p: f64,
}

impl SchedulePoint {
    pub fn c(&self) -> f64 {
        self.p * self.n as f64
    }
}

/// A regime tag together with the `(n, p_n)` pairs that realise it.
#[derive(Clone, Debug, PartialEq)]
pub struct RegimeSchedule {
    tag: RegimeTag,
    points: Vec<SchedulePoint>,
}

/// Default dilute growth: `c_n = n^{1/2}`.
pub const DILUTE_DEFAULT_EXPONENT: f64 = 0.5;
/// Default very sparse decay: `c_n = n^{-1/4}`.
pub const VERY_SPARSE_DEFAULT_EXPONENT: f64 = -0.25;

impl RegimeSchedule {
    /// Explicit points; every `p_n` must lie in `(0, 1)`.
    pub fn from_points(tag: RegimeTag, points: Vec<SchedulePoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(usage!("a schedule needs at least one point"));
        }
        for pt in &points {
            if !(pt.p > 0.0 && pt.p < 1.0) {
                return Err(usage!("p = {} at n = {} is outside (0, 1)", pt.p, pt.n));
            }
            if pt.n < 2 {
                return Err(usage!("schedule sizes must be at least 2"));
            }
        }
        Ok(RegimeSchedule { tag, points })
    }

    pub fn full(p: f64, sizes: &[usize]) -> Result<Self> {
        Self::from_points(RegimeTag::Full, sizes.iter().map(|&n| SchedulePoint { n, p }).collect())
    }

    /// `c_n = n^{exponent}`, `0 < exponent < 1`.
    pub fn dilute(sizes: &[usize], exponent: f64) -> Result<Self> {
        if !(exponent > 0.0 && exponent < 1.0) {
            return Err(usage!("dilute exponent must lie in (0, 1)"));
        }
        Self::with_c(RegimeTag::Dilute, sizes, |n| libm::pow(n, exponent))
    }

    pub fn sparse(c: f64, sizes: &[usize]) -> Result<Self> {
        Self::with_c(RegimeTag::Sparse, sizes, |_| c)
    }

    /// `c_n = prefactor · n^{exponent}` with `exponent < 0`.
    pub fn very_sparse(sizes: &[usize], prefactor: f64, exponent: f64) -> Result<Self> {
        if !(exponent < 0.0 && prefactor > 0.0) {
            return Err(usage!("very sparse schedules need c_n = a·n^b with a > 0, b < 0"));
        }
        Self::with_c(RegimeTag::VerySparse, sizes, |n| prefactor * libm::pow(n, exponent))
    }

    fn with_c(tag: RegimeTag, sizes: &[usize], c: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_points(tag, sizes.iter().map(|&n| SchedulePoint { n, p: c(n as f64) / n as f64 }).collect())
    }

    pub fn tag(&self) -> RegimeTag {
        self.tag
    }

    pub fn points(&self) -> &[SchedulePoint] {
        &self.points
    }
}

/// Natural logarithm of the factor turning `Cum_k(V)` into the normalised cumulant with a finite limit.
///
/// For `Y`, and for `X` in the full regime, this is `Cum_k(g V)/(p n²)` with
/// `g = (pn)^{-(q-1)}` (`Y`) or `g = n^{-(q-2)} p^{-(q-1)}` (`X`). Dilute and sparse `X`
/// use `(cn)^{-1} c^{-(q/2-1)k}` for even `q` and `c^{-q}` for odd `q`. The very
/// sparse regime divides by `cn` alone (odd `X`: `c^{-q}`).
pub fn log_normalization(model: ModelKind, q: u32, k: u32, tag: RegimeTag, point: SchedulePoint) -> f64 {
    let (n, p, c) = (point.n as f64, point.p, point.c());
    let (ln_n, ln_p, ln_c) = (libm::log(n), libm::log(p), libm::log(c));
    let (qf, kf) = (q as f64, k as f64);
    match (model, tag) {
        (ModelKind::Y, RegimeTag::VerySparse) => -ln_c - ln_n,
        (ModelKind::Y, _) => -(qf - 1.0) * kf * ln_c - ln_p - 2.0 * ln_n,
        (ModelKind::X, RegimeTag::Full) => -kf * ((qf - 2.0) * ln_n + (qf - 1.0) * ln_p) - ln_p - 2.0 * ln_n,
        (ModelKind::X, _) if q % 2 == 1 => -qf * ln_c,
        (ModelKind::X, RegimeTag::VerySparse) => -ln_c - ln_n,
        (ModelKind::X, _) => -(qf / 2.0 - 1.0) * kf * ln_c - ln_c - ln_n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * b.abs().max(1.0)
    }

    #[test]
    fn schedules_validate_probabilities() {
        assert!(RegimeSchedule::full(1.0, &[10]).is_err());
        assert!(RegimeSchedule::sparse(20.0, &[10]).is_err());
        assert!(RegimeSchedule::full(0.3, &[]).is_err());
        let d = RegimeSchedule::dilute(&[100, 10_000], DILUTE_DEFAULT_EXPONENT).unwrap();
        assert!(close(d.points()[1].c(), 100.0));
        let v = RegimeSchedule::very_sparse(&[10_000], 1.0, VERY_SPARSE_DEFAULT_EXPONENT).unwrap();
        assert!(close(v.points()[0].c(), 0.1));
    }

    #[test]
    fn normalizations_reduce_to_known_forms() {
        let pt = SchedulePoint { n: 1000, p: 0.05 };
        let c = pt.c();
        // Y, q = 2: Cum_k(Y)/(n c · c^k)
        let y = log_normalization(ModelKind::Y, 2, 3, RegimeTag::Dilute, pt);
        assert!(close(libm::exp(y), 1.0 / (1000.0 * c * c * c * c)));
        // X odd: c^{-q}
        let x = log_normalization(ModelKind::X, 3, 2, RegimeTag::Dilute, pt);
        assert!(close(libm::exp(x), 1.0 / (c * c * c)));
        // X even q = 4: (cn)^{-1} c^{-k}
        let x = log_normalization(ModelKind::X, 4, 2, RegimeTag::Sparse, pt);
        assert!(close(libm::exp(x), 1.0 / (c * 1000.0 * c * c)));
        let v = log_normalization(ModelKind::Y, 2, 2, RegimeTag::VerySparse, pt);
        assert!(close(libm::exp(v), 1.0 / (c * 1000.0)));
        // Full-regime X and Y share the p n² denominator.
        let f = log_normalization(ModelKind::X, 3, 1, RegimeTag::Full, pt);
        assert!(close(libm::exp(f), 1.0 / (1000.0 * 0.05 * 0.05 * 0.05 * 1000.0 * 1000.0)));
    }
}
