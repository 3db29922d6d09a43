//! Limit cumulants of the normalized walk statistics, dispatched by model, power, order and regime.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::sequences::{catalan, d_seq};
use super::walks::{walk_census_recurrence, WalkRecursion};
use crate::diagrams::{self, EnumerationLimits};
use crate::error::usage;
use crate::num::{big, factorial, fmt_rational, int, pow, to_f64, Poly, Rational};
use crate::{Error, Result};

/// Which walk statistic: closed walks `X = Tr A^q` or all walks `Y = 1ᵀ A^q 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelKind {
    X,
    Y,
}

impl ModelKind {
    /// Vertex slots per element: a closed `q`-cycle has `q`, an open path `q + 1`.
    pub fn slots_per_element(self, q: u32) -> usize {
        match self {
            ModelKind::X => q as usize,
            ModelKind::Y => q as usize + 1,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::X => "X",
            ModelKind::Y => "Y",
        })
    }
}

impl FromStr for ModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(ModelKind::X),
            "Y" | "y" => Ok(ModelKind::Y),
            other => Err(usage!("unknown model {other:?} (expected X or Y)")),
        }
    }
}

/// Asymptotic edge-density regime; `Full` and `Sparse` carry their parameter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    Full(Rational),
    Dilute,
    Sparse(Rational),
    VerySparse,
}

/// Parameter-free regime label used as a table key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RegimeTag {
    Full,
    Dilute,
    Sparse,
    VerySparse,
}

impl Regime {
    pub fn full(p: Rational) -> Result<Self> {
        if !p.is_positive() || p >= Rational::one() {
            return Err(usage!("full regime needs 0 < p < 1, got {}", fmt_rational(&p)));
        }
        Ok(Regime::Full(p))
    }

    pub fn sparse(c: Rational) -> Result<Self> {
        if !c.is_positive() {
            return Err(usage!("sparse regime needs c > 0, got {}", fmt_rational(&c)));
        }
        Ok(Regime::Sparse(c))
    }

    pub fn tag(&self) -> RegimeTag {
        match self {
            Regime::Full(_) => RegimeTag::Full,
            Regime::Dilute => RegimeTag::Dilute,
            Regime::Sparse(_) => RegimeTag::Sparse,
            Regime::VerySparse => RegimeTag::VerySparse,
        }
    }
}

impl fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegimeTag::Full => "full",
            RegimeTag::Dilute => "dilute",
            RegimeTag::Sparse => "sparse",
            RegimeTag::VerySparse => "verysparse",
        })
    }
}

impl FromStr for RegimeTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "full" | "1" => Ok(RegimeTag::Full),
            "dilute" | "2" => Ok(RegimeTag::Dilute),
            "sparse" | "3" => Ok(RegimeTag::Sparse),
            "verysparse" => Ok(RegimeTag::VerySparse),
            _ => Err(usage!("unknown regime {s:?} (expected full, dilute, sparse or verysparse)")),
        }
    }
}

/// Exact limit value; polynomial variants are in `p` or in `1/c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitValue {
    Exact(Rational),
    PolyInP(Poly),
    PolyInInvC(Poly),
}

impl LimitValue {
    /// Substitutes the regime parameter (`p` or `c`) where the value depends on one.
    pub fn evaluate(&self, regime: &Regime) -> Result<Rational> {
        match (self, regime) {
            (LimitValue::Exact(v), _) => Ok(v.clone()),
            (LimitValue::PolyInP(poly), Regime::Full(p)) => Ok(poly.eval(p)),
            (LimitValue::PolyInInvC(poly), Regime::Sparse(c)) => Ok(poly.eval(&c.recip())),
            (value, regime) => Err(usage!("{value:?} cannot be evaluated in regime {regime:?}")),
        }
    }

    /// Human-readable form, exact values as `num/den`.
    pub fn render(&self) -> String {
        match self {
            LimitValue::Exact(v) => fmt_rational(v),
            LimitValue::PolyInP(poly) => poly.display("p"),
            LimitValue::PolyInInvC(poly) => poly.display("c^-1"),
        }
    }
}

/// A limit value together with the slug of the formula that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitEntry {
    pub value: LimitValue,
    pub source: &'static str,
}

/// Limit of the normalized `k`-th cumulant under the default enumeration limits.
pub fn limit_cumulant(model: ModelKind, q: u32, k: u32, regime: RegimeTag) -> Result<LimitEntry> {
    limit_cumulant_with(model, q, k, regime, &EnumerationLimits::default())
}

pub fn limit_cumulant_with(
    model: ModelKind,
    q: u32,
    k: u32,
    regime: RegimeTag,
    limits: &EnumerationLimits,
) -> Result<LimitEntry> {
    if q == 0 || k == 0 {
        return Err(usage!("limit cumulants need q >= 1 and k >= 1"));
    }
    let two_pow = int(1i64 << (k - 1));
    let exact = |value: Rational, source| Ok(LimitEntry { value: LimitValue::Exact(value), source });
    match (regime, model) {
        (RegimeTag::Full, ModelKind::X) if q <= 2 => Err(Error::NotProvided(format!(
            "full-regime limit of X with q = {q} is degenerate (Tr A^{q} is a function of the edge count)"
        ))),
        (RegimeTag::Full, _) => {
            let value = match k {
                1 => (Poly::one(), "full-first-cumulant"),
                2 => {
                    let two_q2 = int(2 * (q as i64) * (q as i64));
                    (Poly::from_coeffs(alloc::vec![two_q2.clone(), -two_q2]), "full-variance")
                }
                _ => (diagrams::limit_cumulant_full(model, q, k, limits)?, "full-diagram-sum"),
            };
            Ok(LimitEntry { value: LimitValue::PolyInP(value.0), source: value.1 })
        }
        (RegimeTag::Dilute, ModelKind::Y) => {
            let d = d_seq(q, k as usize)?;
            exact(two_pow * big(&d[k as usize]), "dilute-tree-count")
        }
        (RegimeTag::Dilute, ModelKind::X) => {
            if q == 1 {
                return Err(Error::NotProvided("Tr A vanishes identically".into()));
            }
            let half = q / 2;
            if q % 2 == 0 {
                let d = d_seq(half, k as usize)?;
                let cat = pow(&big(&catalan(half as u64)), k);
                exact(cat * two_pow * big(&d[k as usize]), "dilute-even-closed-walks")
            } else {
                exact(pow(&int(4 * half as i64 + 2), k - 1), "dilute-odd-cycle-gluing")
            }
        }
        (RegimeTag::Sparse, ModelKind::Y) => {
            if k == 1 && q >= 2 {
                let census = walk_census_recurrence(q, WalkRecursion::FirstPassage)?;
                return Ok(LimitEntry {
                    value: LimitValue::PolyInInvC(census.first_sparse_cumulant(q)),
                    source: "sparse-walk-census",
                });
            }
            let table = diagrams::sparse_tree_table(model, q, k as usize, limits)?;
            Ok(LimitEntry { value: LimitValue::PolyInInvC(table.cumulant(k as usize)), source: "sparse-tree-census" })
        }
        (RegimeTag::Sparse, ModelKind::X) => {
            if q % 2 == 1 && k == 1 && q >= 3 {
                let census = diagrams::cycle_census(q, 1, limits)?;
                return Ok(LimitEntry {
                    value: LimitValue::PolyInInvC(census.sparse_first_cumulant()),
                    source: "sparse-cycle-census",
                });
            }
            Err(Error::NotProvided(format!(
                "sparse-regime limit of X with q = {q}, k = {k} is not derived (only q odd, k = 1 is)"
            )))
        }
        (RegimeTag::VerySparse, ModelKind::X) if q % 2 == 1 => Err(Error::NotProvided(format!(
            "very sparse limit of X with odd q = {q} is not derived"
        ))),
        (RegimeTag::VerySparse, _) => exact(two_pow, "very-sparse-single-edge"),
    }
}

/// Limit values for one model, power and regime, keyed by order `k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CumulantTable {
    pub entries: BTreeMap<(ModelKind, u32, u32, RegimeTag), LimitEntry>,
}

impl CumulantTable {
    /// Collects every available `k <= kmax`; unavailable orders are simply absent.
    pub fn build(model: ModelKind, q: u32, kmax: u32, regime: RegimeTag, limits: &EnumerationLimits) -> Self {
        let mut table = CumulantTable::default();
        for k in 1..=kmax {
            if let Ok(entry) = limit_cumulant_with(model, q, k, regime, limits) {
                table.entries.insert((model, q, k, regime), entry);
            }
        }
        table
    }

    pub fn get(&self, model: ModelKind, q: u32, k: u32, regime: RegimeTag) -> Option<&LimitEntry> {
        self.entries.get(&(model, q, k, regime))
    }
}

/// Truncated small-`t` expansion of the limiting free energy of the `Y` model.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeEnergyTruncation {
    /// `F_k / k!` at the regime parameter, for `k = 1..=K` (element `i` is order `i + 1`).
    pub coefficients: Vec<Rational>,
    /// Rate `a` of the extra term `(e^{a t} - 1) / 2` (sparse regime only).
    pub exp_rate: Option<Rational>,
}

impl FreeEnergyTruncation {
    /// Exact polynomial part at `t`.
    pub fn polynomial_part(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut power = Rational::one();
        for coeff in &self.coefficients {
            power = &power * t;
            acc += coeff * &power;
        }
        acc
    }

    pub fn eval(&self, t: f64) -> f64 {
        let poly: f64 = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| to_f64(c) * libm::pow(t, i as f64 + 1.0))
            .sum();
        let expo = self
            .exp_rate
            .as_ref()
            .map_or(0.0, |a| 0.5 * libm::expm1(to_f64(a) * t));
        poly + expo
    }

    /// Derivative at `t = 0`: `F_1` plus half the exponential rate.
    pub fn small_t_slope(&self) -> Rational {
        let first = self.coefficients.first().cloned().unwrap_or_else(Rational::zero);
        let expo = self.exp_rate.clone().unwrap_or_else(Rational::zero) / int(2);
        first + expo
    }
}

/// `δ_{sparse} (e^{2t/c^{q-1}} - 1)/2 + Σ_{k<=K} t^k F_k / k!` with the regime parameter substituted.
pub fn free_energy_truncation(regime: &Regime, q: u32, order: u32, limits: &EnumerationLimits) -> Result<FreeEnergyTruncation> {
    let mut coefficients = Vec::with_capacity(order as usize);
    for k in 1..=order {
        let entry = limit_cumulant_with(ModelKind::Y, q, k, regime.tag(), limits).map_err(|err| {
            Error::NotProvided(format!("free-energy truncation needs F_{k}, which is unavailable: {err}"))
        })?;
        let value = entry.value.evaluate(regime)?;
        coefficients.push(value / big(&factorial(k)));
    }
    let exp_rate = match regime {
        Regime::Sparse(c) => Some(int(2) / pow(c, q.saturating_sub(1))),
        _ => None,
    };
    Ok(FreeEnergyTruncation { coefficients, exp_rate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn exact_value(model: ModelKind, q: u32, k: u32, regime: RegimeTag) -> Rational {
        match limit_cumulant(model, q, k, regime).unwrap().value {
            LimitValue::Exact(v) => v,
            other => panic!("expected exact value, got {other:?}"),
        }
    }

    #[test]
    fn dilute_examples() {
        assert_eq!(exact_value(ModelKind::Y, 2, 2, RegimeTag::Dilute), int(8));
        assert_eq!(exact_value(ModelKind::X, 5, 2, RegimeTag::Dilute), int(10));
        assert_eq!(exact_value(ModelKind::X, 3, 2, RegimeTag::Dilute), int(6));
        for q in 1..=5 {
            assert_eq!(exact_value(ModelKind::Y, q, 1, RegimeTag::Dilute), int(1));
        }
        for k in 1..=5 {
            assert_eq!(exact_value(ModelKind::X, 2, k, RegimeTag::Dilute), int(1 << (k - 1)));
        }
        // Catalan(2)² · 2 · d_2 = 4 · 2 · 4, also the p → 0 value of the full-regime 2q²(1 − p).
        assert_eq!(exact_value(ModelKind::X, 4, 2, RegimeTag::Dilute), int(32));
    }

    #[test]
    fn full_variance_closed_form() {
        let entry = limit_cumulant(ModelKind::Y, 3, 2, RegimeTag::Full).unwrap();
        assert_eq!(entry.value, LimitValue::PolyInP(Poly::from_ints(&[18, -18])));
        let p = Regime::full(rat(3, 10)).unwrap();
        assert_eq!(entry.value.evaluate(&p).unwrap(), rat(126, 10));
        assert!(matches!(limit_cumulant(ModelKind::X, 2, 2, RegimeTag::Full), Err(Error::NotProvided(_))));
    }

    #[test]
    fn sparse_first_cumulant() {
        let entry = limit_cumulant(ModelKind::Y, 2, 1, RegimeTag::Sparse).unwrap();
        assert_eq!(entry.value, LimitValue::PolyInInvC(Poly::from_ints(&[1, 1])));
        let c = Regime::sparse(int(2)).unwrap();
        assert_eq!(entry.value.evaluate(&c).unwrap(), rat(3, 2));
    }

    #[test]
    fn withheld_combinations_raise() {
        assert!(matches!(limit_cumulant(ModelKind::X, 3, 2, RegimeTag::Sparse), Err(Error::NotProvided(_))));
        assert!(matches!(limit_cumulant(ModelKind::X, 4, 1, RegimeTag::Sparse), Err(Error::NotProvided(_))));
        assert!(matches!(limit_cumulant(ModelKind::X, 3, 1, RegimeTag::VerySparse), Err(Error::NotProvided(_))));
        assert_eq!(exact_value(ModelKind::Y, 3, 3, RegimeTag::VerySparse), int(4));
    }

    #[test]
    fn regime_validation() {
        assert!(Regime::full(int(1)).is_err());
        assert!(Regime::full(int(0)).is_err());
        assert!(Regime::sparse(int(0)).is_err());
        assert_eq!("very-sparse".parse::<RegimeTag>().unwrap(), RegimeTag::VerySparse);
        assert!("medium".parse::<RegimeTag>().is_err());
    }

    #[test]
    fn free_energy_examples() {
        let limits = EnumerationLimits::default();
        let dilute = free_energy_truncation(&Regime::Dilute, 2, 2, &limits).unwrap();
        assert_eq!(dilute.coefficients, alloc::vec![int(1), int(4)]);
        assert_eq!(dilute.polynomial_part(&Rational::zero()), Rational::zero());
        assert_eq!(dilute.eval(0.0), 0.0);

        let sparse = free_energy_truncation(&Regime::sparse(int(4)).unwrap(), 2, 1, &limits).unwrap();
        assert_eq!(sparse.small_t_slope(), rat(3, 2));
        assert_eq!(sparse.eval(0.0), 0.0);

        let err = free_energy_truncation(&Regime::sparse(int(2)).unwrap(), 2, 5, &limits).unwrap_err();
        assert!(matches!(err, Error::NotProvided(ref msg) if msg.contains("F_5")));
    }
}
