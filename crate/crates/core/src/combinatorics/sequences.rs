//! Tree-count sequences: `h_k^{(q)}`, `d_k^{(q)}`, rooted colour-tree counts and Catalan numbers.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::usage;
use crate::num::{big, binomial, factorial, int, pow, Rational};
use crate::{Error, Result};

/// `h_0..h_kmax` from `h_k = ((q-1)k+1)/k * [z^{k-1}] H^q`, `h_0 = 1`.
///
/// `q = 1` is accepted and gives `h_k = 1/k!`.
pub fn h_seq(q: u32, kmax: usize) -> Result<Vec<Rational>> {
    if q == 0 {
        return Err(usage!("h sequence needs q >= 1"));
    }
    let mut h = vec![Rational::one()];
    for k in 1..=kmax {
        let conv = convolution_power(&h, q as usize, k - 1);
        let factor = Rational::new(
            BigInt::from((q as u64 - 1) * k as u64 + 1),
            BigInt::from(k as u64),
        );
        h.push(conv * factor);
    }
    Ok(h)
}

/// Coefficient of `z^target` in `(Σ a_i z^i)^power`, reading only `a_0..a_target`.
fn convolution_power(a: &[Rational], power: usize, target: usize) -> Rational {
    let mut acc = vec![Rational::zero(); target + 1];
    acc[0] = Rational::one();
    for _ in 0..power {
        let mut next = vec![Rational::zero(); target + 1];
        for (i, x) in acc.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in a.iter().enumerate().take(target + 1 - i) {
                next[i + j] += x * y;
            }
        }
        acc = next;
    }
    acc.swap_remove(target)
}

/// `d_k = k! h_k / ((q-1)k + 1)`, indexed by `k` (so `d_0 = 1` by the same formula).
pub fn d_seq_via_h(q: u32, kmax: usize) -> Result<Vec<BigUint>> {
    let h = h_seq(q, kmax)?;
    h.iter()
        .enumerate()
        .map(|(k, hk)| {
            let value = big(&factorial(k as u32)) * hk
                / int((q as i64 - 1) * k as i64 + 1);
            if !value.is_integer() {
                return Err(Error::Invariant(format!(
                    "d_{k} for q = {q} is not an integer: {value}"
                )));
            }
            value
                .to_integer()
                .to_biguint()
                .ok_or_else(|| Error::Invariant(format!("d_{k} for q = {q} is negative")))
        })
        .collect()
}

/// `d_k` from the direct recurrence over the arcs ending at the last element, in integers.
pub fn d_seq_direct(q: u32, kmax: usize) -> Result<Vec<BigUint>> {
    if q == 0 {
        return Err(usage!("d sequence needs q >= 1"));
    }
    let q64 = q as u64;
    let mut d = vec![BigUint::one()];
    if kmax == 0 {
        return Ok(d);
    }
    d.push(BigUint::one());
    // b_j = ((q-1) j + 1) d_j: the number of ways to attach a left foot to a j-element tree.
    let b = |d: &[BigUint], j: usize| BigUint::from((q64 - 1) * j as u64 + 1) * &d[j];
    for k in 2..=kmax {
        let n = k - 1;
        // g[l][t] = Σ over compositions of t into l positive parts of multinomial · Π b_{j_i}.
        let lmax = (q as usize).min(n);
        let mut g = vec![vec![BigUint::zero(); n + 1]; lmax + 1];
        for t in 1..=n {
            g[1][t] = b(&d, t);
        }
        for l in 2..=lmax {
            for t in l..=n {
                let mut acc = BigUint::zero();
                for j in 1..=t - (l - 1) {
                    if g[l - 1][t - j].is_zero() {
                        continue;
                    }
                    acc += binomial(t as u64, j as u64) * b(&d, j) * &g[l - 1][t - j];
                }
                g[l][t] = acc;
            }
        }
        let mut dk = BigUint::zero();
        for (l, row) in g.iter().enumerate().skip(1) {
            dk += binomial(q64, l as u64) * &row[n];
        }
        d.push(dk);
    }
    Ok(d)
}

/// `d_0..d_kmax`, computed along both routes and required to agree.
pub fn d_seq(q: u32, kmax: usize) -> Result<Vec<BigUint>> {
    let via_h = d_seq_via_h(q, kmax)?;
    let direct = d_seq_direct(q, kmax)?;
    if let Some(k) = (0..=kmax).find(|&k| via_h[k] != direct[k]) {
        return Err(Error::Invariant(format!(
            "d_{k} for q = {q}: generating-function route gives {}, direct recurrence gives {}",
            via_h[k], direct[k]
        )));
    }
    Ok(direct)
}

/// `Σ_{j_1+...+j_{q-1}=k} h_{j_1}...h_{j_{q-1}}` against `q^k (q-1)^k (k+1)^{k-1} / k!` for all `k <= kmax`.
pub fn convolution_identity_check(q: u32, kmax: usize) -> Result<bool> {
    let h = h_seq(q, kmax)?;
    for k in 0..=kmax {
        let lhs = convolution_power(&h, q as usize - 1, k);
        let qq = (q as i64) * (q as i64 - 1);
        let rhs = closed_form_power_ratio(qq, k);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `a^k (k+1)^{k-1} / k!`, the coefficient of `H^{q-1}` with `a = q(q-1)`.
fn closed_form_power_ratio(a: i64, k: usize) -> Rational {
    let k32 = k as u32;
    let top = pow(&int(a), k32) * pow(&int(k as i64 + 1), k32) / int(k as i64 + 1);
    top / big(&factorial(k32))
}

/// `ψ_k = (q(q-1))^{k-1} k^{k-2} / (k-1)!`, with `ψ_0 = 0`.
pub fn psi_closed_form(q: u32, kmax: usize) -> Vec<Rational> {
    let a = int(q as i64 * (q as i64 - 1));
    (0..=kmax)
        .map(|k| {
            if k == 0 {
                return Rational::zero();
            }
            let k32 = k as u32;
            let kk = int(k as i64);
            pow(&a, k32 - 1) * pow(&kk, k32) / (&kk * &kk) / big(&factorial(k32 - 1))
        })
        .collect()
}

/// Rooted and unrooted colour-tree counts for the `q = 2` path model.
#[derive(Clone, Debug, PartialEq)]
pub struct RootedTreeCounts {
    /// `T̂_m` from the root-attachment recurrence.
    pub rooted: Vec<BigUint>,
    /// `t_m = T̂_m / m!` from the quadratic recurrence.
    pub scaled: Vec<Rational>,
    /// `T_k` (index 0 unused and set to 1).
    pub unrooted: Vec<BigUint>,
}

/// Computes `T̂_m`, `t_m` and `T_k` by their recurrences and checks each against the
/// closed forms `2^m (m+1)^{m-1}` and `2^k (k+1)^{k-2}` and against `d_k^{(2)}`.
pub fn rooted_tree_counts(mmax: usize) -> Result<RootedTreeCounts> {
    let mut rooted = vec![BigUint::one()];
    for m in 1..=mmax {
        // g[t] for r attached subtrees: Σ over compositions of t into r non-negative parts.
        let mut g = vec![BigUint::zero(); m];
        g[0] = BigUint::one();
        let mut total = BigUint::zero();
        for r in 1..=m {
            let mut next = vec![BigUint::zero(); m];
            for t in 0..=m - r {
                let mut acc = BigUint::zero();
                for j in 0..=t {
                    if !g[t - j].is_zero() {
                        acc += binomial(t as u64, j as u64) * &rooted[j] * &g[t - j];
                    }
                }
                next[t] = acc;
            }
            g = next;
            total += (BigUint::one() << r) * binomial(m as u64, r as u64) * &g[m - r];
        }
        rooted.push(total);
    }

    let mut scaled = vec![Rational::one()];
    for m in 1..=mmax {
        let conv: Rational = (0..m).map(|j| &scaled[j] * &scaled[m - 1 - j]).sum();
        scaled.push(conv * Rational::new(BigInt::from(m as u64 + 1), BigInt::from(m as u64)));
    }

    let mut unrooted = vec![BigUint::one()];
    for k in 1..=mmax {
        let mut acc = BigUint::zero();
        for m1 in 0..k {
            acc += binomial(k as u64 - 1, m1 as u64) * &rooted[m1] * &rooted[k - 1 - m1];
        }
        unrooted.push(acc);
    }

    let d2 = d_seq(2, mmax)?;
    for m in 0..=mmax {
        let m64 = m as u64;
        let closed = (BigUint::one() << m) * BigUint::from(m64 + 1).pow(m as u32) / (m64 + 1);
        if rooted[m] != closed {
            return Err(Error::Invariant(format!("rooted tree count T̂_{m} = {} differs from the closed form {closed}", rooted[m])));
        }
        if scaled[m] != big(&rooted[m]) / big(&factorial(m as u32)) {
            return Err(Error::Invariant(format!("t_{m} disagrees with T̂_{m}/{m}!")));
        }
        if m >= 1 {
            let closed = (BigUint::one() << m) * BigUint::from(m64 + 1).pow(m as u32 - 1) / (m64 + 1);
            if unrooted[m] != closed || unrooted[m] != d2[m] {
                return Err(Error::Invariant(format!(
                    "unrooted tree count T_{m} = {} (closed form {closed}, d_{m} = {})",
                    unrooted[m], d2[m]
                )));
            }
        }
    }
    Ok(RootedTreeCounts { rooted, scaled, unrooted })
}

pub fn catalan(m: u64) -> BigUint {
    binomial(2 * m, m) / BigUint::from(m + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;
    use crate::series::{solve_h_series, Series};

    fn ints(values: &[u64]) -> Vec<BigUint> {
        values.iter().map(|&v| BigUint::from(v)).collect()
    }

    #[test]
    fn h_examples() {
        assert_eq!(h_seq(2, 3).unwrap(), vec![int(1), int(2), int(6), rat(64, 3)]);
        assert_eq!(h_seq(3, 1).unwrap()[1], int(3));
        assert_eq!(h_seq(3, 2).unwrap()[2], rat(45, 2));
        assert_eq!(h_seq(1, 3).unwrap(), vec![int(1), int(1), rat(1, 2), rat(1, 6)]);
        assert!(h_seq(0, 3).is_err());
    }

    #[test]
    fn d_examples() {
        assert_eq!(d_seq(2, 4).unwrap()[1..], ints(&[1, 4, 32, 400])[..]);
        assert_eq!(d_seq(3, 2).unwrap()[2], BigUint::from(9u32));
        for q in 1..=5 {
            assert_eq!(d_seq(q, 1).unwrap()[1], BigUint::one());
        }
        assert!(d_seq(1, 6).unwrap().iter().all(|d| d.is_one()));
    }

    #[test]
    fn d_routes_agree_and_match_closed_form() {
        for q in 1..=4 {
            assert_eq!(d_seq_via_h(q, 12).unwrap(), d_seq_direct(q, 12).unwrap());
        }
        let d2 = d_seq(2, 12).unwrap();
        for k in 1..=12u64 {
            let closed = (BigUint::one() << k) * BigUint::from(k + 1).pow(k as u32 - 1) / (k + 1);
            assert_eq!(d2[k as usize], closed);
        }
    }

    #[test]
    fn convolution_identity_holds() {
        for q in 2..=4 {
            assert!(convolution_identity_check(q, 10).unwrap());
        }
        assert!(convolution_identity_check(1, 5).unwrap());
    }

    #[test]
    fn h_matches_series_solution() {
        for q in 2..=4 {
            let series = solve_h_series(q, 12).unwrap();
            assert_eq!(series, Series::from_coeffs(h_seq(q, 12).unwrap(), 12));
        }
    }

    #[test]
    fn psi_closed_form_examples() {
        assert_eq!(psi_closed_form(2, 3), vec![int(0), int(1), int(2), int(6)]);
        assert_eq!(psi_closed_form(3, 3)[3], int(54));
    }

    #[test]
    fn rooted_tree_examples() {
        let counts = rooted_tree_counts(12).unwrap();
        assert_eq!(counts.rooted[1], BigUint::from(2u32));
        assert_eq!(counts.rooted[2], BigUint::from(12u32));
        assert_eq!(counts.scaled[2], int(6));
        assert_eq!(counts.unrooted[2], BigUint::from(4u32));
    }

    #[test]
    fn catalan_examples() {
        let values: Vec<BigUint> = (0..6).map(catalan).collect();
        assert_eq!(values, ints(&[1, 1, 2, 5, 14, 42]));
    }
}
