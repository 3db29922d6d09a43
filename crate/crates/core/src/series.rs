//! Truncated formal power series with exact coefficients, and solvers for the
//! tree-counting functional equations (`H = exp(q z H^{q-1})`, `ψ = z φ(ψ)`,
//! and the rooted sparse-tree equations for `Ŵ`).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::usage;
use crate::num::{int, Poly, Rational};
use crate::{Error, Result};

/// Exact coefficient ring used by [`TruncatedSeries`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn scale(&self, factor: &Rational) -> Self;
    fn from_rational(value: Rational) -> Self;
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, factor: &Rational) -> Self {
        self * factor
    }
    fn from_rational(value: Rational) -> Self {
        value
    }
}

impl Coefficient for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, factor: &Rational) -> Self {
        Poly::scale(self, factor)
    }
    fn from_rational(value: Rational) -> Self {
        Poly::constant(value)
    }
}

/// Power series `c_0 + c_1 z + ... + c_K z^K` modulo `z^{K+1}`.
///
/// Always stores exactly `K + 1` coefficients. Binary operations require equal orders.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<C = Rational> {
    coeffs: Vec<C>,
}

pub type Series = TruncatedSeries<Rational>;
/// Series whose coefficients are polynomials in the sparse-regime parameter `c`.
pub type CSeries = TruncatedSeries<Poly>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    Pow(u32),
}

impl<C: Coefficient> TruncatedSeries<C> {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![C::zero(); order + 1] }
    }

    pub fn constant(value: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    /// The series `z` (which is zero when `order == 0`).
    pub fn z(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = C::one();
        }
        s
    }

    /// Builds a series from leading coefficients, padding with zeros or dropping
    /// everything beyond `order`.
    pub fn from_coeffs(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    fn check_order(&self, rhs: &Self) -> Result<()> {
        if self.order() != rhs.order() {
            return Err(usage!(
                "mismatched truncation orders {} and {}",
                self.order(),
                rhs.order()
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(self.zip_with(rhs, C::add))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(self.zip_with(rhs, C::sub))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    fn mul_unchecked(&self, rhs: &Self) -> Self {
        let k = self.order();
        let mut out = vec![C::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=k - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// `self^m` by repeated squaring; `m = 0` yields the constant series 1.
    pub fn pow(&self, m: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    pub fn apply(&self, op: SeriesOp, rhs: &Self) -> Result<Self> {
        match op {
            SeriesOp::Add => self.try_add(rhs),
            SeriesOp::Mul => self.try_mul(rhs),
            SeriesOp::Pow(m) => Ok(self.pow(m)),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| c.scale(factor)).collect() }
    }

    pub fn scale_by(&self, factor: &C) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| c.mul(factor)).collect() }
    }

    /// Multiplication by `z` (the top coefficient falls off).
    pub fn shift(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(C::zero());
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        TruncatedSeries { coeffs }
    }

    /// `exp(self)` via `(exp a)' = a' exp a`; needs a zero constant term so the result stays exact.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(usage!(
                "exp of a series with nonzero constant term {:?} is not rational",
                self.coeffs[0]
            ));
        }
        let k = self.order();
        let mut out = vec![C::zero(); k + 1];
        out[0] = C::one();
        for n in 1..=k {
            let mut acc = C::zero();
            for j in 1..=n {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[j].mul(&out[n - j]).scale(&int(j as i64)));
            }
            out[n] = acc.scale(&Rational::new(1.into(), (n as i64).into()));
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `self(inner)` for an inner series with zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(usage!("composition needs an inner series without constant term"));
        }
        let k = self.order();
        let mut out = Self::zero(k);
        for c in self.coeffs.iter().rev() {
            out = out.mul_unchecked(inner);
            out.coeffs[0] = out.coeffs[0].add(c);
        }
        Ok(out)
    }
}

impl<C: Coefficient> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

/// Result of a fixed-point solve together with the number of map applications used.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPoint<C: Coefficient> {
    pub series: TruncatedSeries<C>,
    pub iterations: usize,
}

/// Solves `S = F(S)` modulo `z^{K+1}` by iteration from the constant series 1.
///
/// `F` must fix at least one more coefficient per application; the solve fails
/// if the iterate has not stabilised exactly after `K + 1` applications.
pub fn solve_fixed_point<C, F>(order: usize, mut map: F) -> Result<FixedPoint<C>>
where
    C: Coefficient,
    F: FnMut(&TruncatedSeries<C>) -> Result<TruncatedSeries<C>>,
{
    let mut current = TruncatedSeries::one(order);
    for iteration in 1..=order + 1 {
        let next = map(&current)?;
        if next.order() != order {
            return Err(usage!("fixed-point map changed the truncation order"));
        }
        if next == current {
            return Ok(FixedPoint { series: current, iterations: iteration });
        }
        current = next;
    }
    Err(Error::Solver(format!(
        "coefficients did not stabilise within {} iterations (map is not valuation-raising)",
        order + 1
    )))
}

/// Lagrange inversion for `ψ = z φ(ψ)`: `ψ_k = (1/k) [w^{k-1}] φ(w)^k`.
pub fn solve_lagrange<C: Coefficient>(phi: &TruncatedSeries<C>) -> Result<TruncatedSeries<C>> {
    if *phi.coeff(0) != C::one() {
        return Err(usage!("Lagrange inversion needs φ(0) = 1, got {:?}", phi.coeff(0)));
    }
    let order = phi.order();
    let mut psi = TruncatedSeries::zero(order);
    let mut power = phi.clone();
    for k in 1..=order {
        psi.coeffs[k] = power.coeff(k - 1).scale(&Rational::new(1.into(), (k as i64).into()));
        power = power.mul_unchecked(phi);
    }
    Ok(psi)
}

/// Generating function `H_q` of the dilute tree counts: the solution of `H = exp(q z H^{q-1})`.
pub fn solve_h_series(q: u32, order: usize) -> Result<Series> {
    let z = Series::z(order);
    let q_rat = int(q as i64);
    let fp = solve_fixed_point(order, |h: &Series| {
        z.try_mul(&h.pow(q.saturating_sub(1)))?.scale(&q_rat).exp()
    })?;
    Ok(fp.series)
}

/// `ψ = z H_q^{q-1}`, the Pólya-equation solution recovered from `H_q`.
pub fn psi_from_h(h: &Series, q: u32) -> Result<Series> {
    Series::z(h.order()).try_mul(&h.pow(q.saturating_sub(1)))
}

/// Which printed form of the rooted sparse-tree equation to solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WHatVariant {
    /// `Ŵ = 1 - c e^{2z} + c exp{2z [e^{2z} Ŵ - 1]}`.
    Subtracted,
    /// `Ŵ - 1 = c e^{2z} [exp{2z e^{2z} Ŵ} - 1]`.
    Factored,
}

/// Degree cap for `c`-polynomial coefficients: `K + 2` unless overridden.
pub fn default_degree_bound(order: usize) -> usize {
    order + 2
}

/// Solves the chosen `Ŵ` equation with `c` kept symbolic.
pub fn solve_w_hat(order: usize, variant: WHatVariant) -> Result<CSeries> {
    let series = solve_w_hat_with(Poly::x(), order, variant)?;
    let bound = default_degree_bound(order);
    for (k, coeff) in series.coeffs().iter().enumerate() {
        if coeff.degree().unwrap_or(0) > bound {
            return Err(Error::Solver(format!(
                "coefficient {k} has c-degree above the bound {bound}"
            )));
        }
    }
    Ok(series)
}

/// Solves the chosen `Ŵ` equation for a given coefficient-ring value of `c`.
pub fn solve_w_hat_with<C: Coefficient>(
    c: C,
    order: usize,
    variant: WHatVariant,
) -> Result<TruncatedSeries<C>> {
    let two_z = TruncatedSeries::<C>::z(order).scale(&int(2));
    let e2z = two_z.exp()?;
    let one = TruncatedSeries::<C>::one(order);
    let fp = solve_fixed_point(order, |w: &TruncatedSeries<C>| match variant {
        WHatVariant::Subtracted => {
            let inner = e2z.try_mul(w)?.try_sub(&one)?;
            let expo = two_z.try_mul(&inner)?.exp()?;
            one.try_sub(&e2z.scale_by(&c))?.try_add(&expo.scale_by(&c))
        }
        WHatVariant::Factored => {
            let expo = two_z.try_mul(&e2z)?.try_mul(w)?.exp()?;
            let bracket = expo.try_sub(&one)?;
            one.try_add(&e2z.try_mul(&bracket)?.scale_by(&c))
        }
    })?;
    Ok(fp.series)
}
