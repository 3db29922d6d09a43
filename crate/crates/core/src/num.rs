//! Exact scalars and univariate polynomials over them.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn big(value: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(value.clone()))
}

/// Renders an exact value as `"num/den"` (or just `"num"` for integers).
pub fn fmt_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        alloc::format!("{}", value.numer())
    } else {
        alloc::format!("{}/{}", value.numer(), value.denom())
    }
}

/// Lossy conversion used only at the reporting boundary.
pub fn to_f64(value: &Rational) -> f64 {
    if let Some(v) = value.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Scale down very large numerators/denominators before dividing.
    let n = value.numer();
    let d = value.denom();
    let shift = (n.bits().max(d.bits())).saturating_sub(1000) as usize;
    let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Best rational approximation of an `f64` within machine precision (exact binary expansion).
pub fn from_f64(value: f64) -> Option<Rational> {
    Rational::from_float(value)
}

pub fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow::pow(base.clone(), exp as usize)
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// `n (n-1) ... (n-k+1)`; zero when `k > n`.
pub fn falling_factorial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i))
}

/// Dense univariate polynomial with exact rational coefficients.
///
/// The variable is anonymous; callers decide whether it stands for `p`, `c` or `1/c`.
/// Trailing zero coefficients are always trimmed, so the zero polynomial has no
/// coefficients and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(value: Rational) -> Self {
        Poly::from_coeffs(vec![value])
    }

    /// The monomial `coeff * x^degree`.
    pub fn monomial(coeff: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = coeff;
        Poly::from_coeffs(coeffs)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Substitutes `x -> 1 - x` style affine maps: returns `self(a + b x)`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        let lin = Poly::from_coeffs(vec![a.clone(), b.clone()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * &lin) + &Poly::constant(c.clone()))
    }

    /// Renders as e.g. `8 - 8*p` using the given variable name.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag_str = fmt_rational(&mag);
            match i {
                0 => out.push_str(&mag_str),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&mag_str);
                        out.push('*');
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push('^');
                        out.push_str(&alloc::format!("{i}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.display("x"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("x"))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl From<Rational> for Poly {
    fn from(value: Rational) -> Self {
        Poly::constant(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_arithmetic() {
        let a = Poly::from_ints(&[1, 1]);
        let b = Poly::from_ints(&[1, -1]);
        assert_eq!(&a * &b, Poly::from_ints(&[1, 0, -1]));
        assert_eq!(&a - &a, Poly::zero());
        assert_eq!((&a + &b).degree(), Some(0));
    }

    #[test]
    fn poly_display_and_eval() {
        let p = Poly::from_ints(&[8, -8]);
        assert_eq!(p.display("p"), "8 - 8*p");
        assert_eq!(p.eval(&rat(3, 10)), rat(28, 5));
        assert_eq!(Poly::from_ints(&[0, 0, 3]).display("c"), "3*c^2");
    }

    #[test]
    fn compose_affine_substitution() {
        // (1 + x)^2 at x -> 1 - x gives (2 - x)^2
        let p = Poly::from_ints(&[1, 2, 1]);
        assert_eq!(p.compose_affine(&int(1), &int(-1)), Poly::from_ints(&[4, -4, 1]));
    }

    #[test]
    fn integer_helpers() {
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(falling_factorial(5, 3), BigUint::from(60u32));
        assert_eq!(falling_factorial(3, 4), BigUint::zero());
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(fmt_rational(&rat(-6, 4)), "-3/2");
    }
}
