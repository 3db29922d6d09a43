//! Sparse-regime recursions: the `w_k` chain built on `Ŵ`, and the census of tree walks
//! split by the number of steps touching the root.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::usage;
use crate::num::{binomial, big, factorial, int, Poly, Rational};
use crate::series::{solve_w_hat, WHatVariant};
use crate::{Error, Result};

/// `w_1..w_kmax` (element `i` holds `w_{i+1}`) from
/// `w_k = Σ_{s=1}^{k} 1/(s-1)! Σ_{j=0}^{k-s} ŵ_j ŵ_{k-s-j}`.
pub fn w_seq(kmax: usize, variant: WHatVariant) -> Result<Vec<Poly>> {
    if kmax == 0 {
        return Ok(Vec::new());
    }
    let w_hat = solve_w_hat(kmax - 1, variant)?;
    let w_hat = w_hat.coeffs();
    let mut out = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let mut wk = Poly::zero();
        for s in 1..=k {
            let inv = Rational::new(1.into(), num_bigint::BigInt::from(factorial(s as u32 - 1)));
            let mut conv = Poly::zero();
            for j in 0..=k - s {
                conv = &conv + &(&w_hat[j] * &w_hat[k - s - j]);
            }
            wk = &wk + &conv.scale(&inv);
        }
        out.push(wk);
    }
    Ok(out)
}

/// `2^{k-1} (k-1)! w_k / c^k` as a polynomial in `1/c`, for `k = 1..=kmax`.
///
/// This is the printed `w`-chain value of the sparse cumulants; the diagram census disagrees
/// with it and is what the limit tables use.
pub fn sparse_cumulants_from_w_seq(kmax: usize, variant: WHatVariant) -> Result<Vec<Poly>> {
    let w = w_seq(kmax, variant)?;
    w.iter()
        .enumerate()
        .map(|(i, wk)| {
            let k = i + 1;
            let degree = wk.degree().unwrap_or(0);
            if degree > k {
                return Err(Error::Invariant(format!(
                    "w_{k} has c-degree {degree} > {k}, so it is not a polynomial in 1/c"
                )));
            }
            let factor = int(1 << (k - 1)) * big(&factorial(k as u32 - 1));
            let coeffs = (0..=k).map(|e| wk.coeff(k - e) * &factor).collect();
            Ok(Poly::from_coeffs(coeffs))
        })
        .collect()
}

/// Which form of the root-step recursion to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum WalkRecursion {
    /// The recursion exactly as printed, with `F_m(1) = c F_{m-1}`; it disagrees with the
    /// brute-force census from `q = 3` on.
    AsPrinted,
    /// First-passage decomposition with the parity restrictions and sub-walk weights made
    /// explicit; agrees with the brute-force census.
    #[default]
    FirstPassage,
}

/// `F_q(r)` for `2 <= r <= q <= qmax` and the totals `F_0..F_qmax`, as polynomials in `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkCensus {
    pub by_root_steps: BTreeMap<(u32, u32), Poly>,
    pub totals: Vec<Poly>,
}

impl WalkCensus {
    /// `F_q(r)`, zero outside the computed range.
    pub fn root_steps(&self, q: u32, r: u32) -> Poly {
        self.by_root_steps.get(&(q, r)).cloned().unwrap_or_else(Poly::zero)
    }

    /// `F_1^{(q)}(3) = F_q c^{1-q}` rewritten as a polynomial in `1/c`.
    pub fn first_sparse_cumulant(&self, q: u32) -> Poly {
        let total = &self.totals[q as usize];
        let top = q as usize - 1;
        Poly::from_coeffs((0..=top).map(|e| total.coeff(top - e)).collect())
    }
}

/// Evaluates the root-step recursion up to `qmax` with `F_0 = F_1 = 1` and `F_q = c F_{q-1} + Σ_{r>=2} F_q(r)`.
pub fn walk_census_recurrence(qmax: u32, variant: WalkRecursion) -> Result<WalkCensus> {
    if qmax < 2 {
        return Err(usage!("walk census needs qmax >= 2"));
    }
    let c = Poly::x();
    let mut table: BTreeMap<(u32, u32), Poly> = BTreeMap::new();
    let mut totals = vec![Poly::one(), Poly::one()];

    for q in 2..=qmax {
        for r in 2..=q {
            let value = if variant == WalkRecursion::AsPrinted && (q, r) == (2, 2) {
                Poly::one()
            } else {
                root_step_term(q, r, variant, &table, &totals)
            };
            table.insert((q, r), value);
        }
        let mut total = &c * &totals[q as usize - 1];
        for r in 2..=q {
            total = &total + &table[&(q, r)];
        }
        totals.push(total);
    }
    Ok(WalkCensus { by_root_steps: table, totals })
}

fn root_step_term(
    q: u32,
    r: u32,
    variant: WalkRecursion,
    table: &BTreeMap<(u32, u32), Poly>,
    totals: &[Poly],
) -> Poly {
    let c = Poly::x();
    let mut acc = Poly::zero();
    for v in 2..=r {
        for u in 0..=q - v {
            for s in 0..=q - v - u {
                if variant == WalkRecursion::FirstPassage
                    && ((v % 2 == 0 && s % 2 == 1) || (v % 2 == 1 && (r - v) % 2 == 1))
                {
                    continue;
                }
                let a = (v - 1) / 2;
                let b = s / 2;
                let coef = binomial((a + b) as u64, a as u64) * binomial((r / 2 - 1) as u64, (v / 2 - 1) as u64);
                if coef == num_bigint::BigUint::from(0u32) {
                    continue;
                }
                let left = sub_walk(q - u - v, s, variant, table, totals);
                let right = sub_walk(u, r - v, variant, table, totals);
                let term = &left * &right;
                acc = &acc + &term.scale(&big(&coef));
            }
        }
    }
    match variant {
        WalkRecursion::AsPrinted => &c * &acc,
        WalkRecursion::FirstPassage => acc,
    }
}

/// Weight of a sub-walk of `m` steps with `s` steps at its base vertex.
fn sub_walk(
    m: u32,
    s: u32,
    variant: WalkRecursion,
    table: &BTreeMap<(u32, u32), Poly>,
    totals: &[Poly],
) -> Poly {
    let c = Poly::x();
    if s == 0 {
        return if m == 0 { Poly::one() } else { Poly::zero() };
    }
    if s > m {
        return Poly::zero();
    }
    match variant {
        WalkRecursion::AsPrinted => {
            if s == 1 {
                &c * &totals[m as usize - 1]
            } else {
                table[&(m, s)].clone()
            }
        }
        WalkRecursion::FirstPassage => {
            if s == 1 {
                if m == 1 {
                    c
                } else {
                    &(&c * &c) * &totals[m as usize - 1]
                }
            } else {
                &c * &table[&(m, s)]
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    #[test]
    fn first_passage_small_values() {
        let census = walk_census_recurrence(5, WalkRecursion::FirstPassage).unwrap();
        assert_eq!(census.root_steps(2, 2), Poly::one());
        assert_eq!(census.totals[2], Poly::from_ints(&[1, 1]));
        assert_eq!(census.root_steps(3, 2), Poly::zero());
        assert_eq!(census.root_steps(5, 4), Poly::zero());
        assert_eq!(census.totals[4], Poly::from_ints(&[1, 4, 3, 1]));
        assert_eq!(census.first_sparse_cumulant(2), Poly::from_ints(&[1, 1]));
    }

    #[test]
    fn as_printed_keeps_initial_conditions() {
        let census = walk_census_recurrence(4, WalkRecursion::AsPrinted).unwrap();
        assert_eq!(census.root_steps(2, 2), Poly::one());
        assert_eq!(census.totals[2], Poly::from_ints(&[1, 1]));
        let good = walk_census_recurrence(4, WalkRecursion::FirstPassage).unwrap();
        assert_ne!(census.totals, good.totals);
    }

    #[test]
    fn w_chain_values() {
        let w = w_seq(3, WHatVariant::Factored).unwrap();
        assert_eq!(w[0], Poly::one());
        let printed = sparse_cumulants_from_w_seq(2, WHatVariant::Factored).unwrap();
        assert_eq!(printed[0], Poly::from_ints(&[0, 1]));
        assert_eq!(printed[1], Poly::from_coeffs(vec![int(0), int(8), int(2)]));
        let printed = sparse_cumulants_from_w_seq(1, WHatVariant::Subtracted).unwrap();
        assert_eq!(printed[0].eval(&rat(1, 2)), rat(1, 2));
        assert!(w_seq(0, WHatVariant::Factored).unwrap().is_empty());
    }
}
