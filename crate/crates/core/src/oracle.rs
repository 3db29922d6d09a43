//! Exhaustive sums over every simple graph on `n <= 7` labeled vertices.
//!
//! Graphs are bitmasks over the upper-triangle pair list `(0,1), (0,2), ..., (n-2,n-1)`;
//! mask `b` has edge `i` exactly when bit `i` is set. All sums are histogram based and
//! exact, and every range-restricted partial sum can be merged by addition.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::ModelKind;
use crate::diagrams::set_partitions;
use crate::error::{resource, usage};
use crate::num::{falling_factorial, int, pow, Rational};
use crate::Result;

/// Largest `n` for graph enumeration (`2^21` graphs).
pub const MAX_GRAPH_VERTICES: u32 = 7;
/// Largest number of index slots for the index-tuple route.
pub const MAX_TUPLE_SLOTS: usize = 12;

/// Upper-triangle vertex pairs in enumeration order.
pub fn edge_pairs(n: u32) -> Vec<(u8, u8)> {
    let mut out = Vec::new();
    for i in 0..n as u8 {
        for j in i + 1..n as u8 {
            out.push((i, j));
        }
    }
    out
}

/// Number of graphs on `n` vertices, after checking the enumeration guard.
pub fn graph_count(n: u32) -> Result<u64> {
    if n > MAX_GRAPH_VERTICES {
        return Err(resource!("exhaustive enumeration limited to n <= {MAX_GRAPH_VERTICES}, got {n}"));
    }
    Ok(1u64 << (n * n.saturating_sub(1) / 2))
}

/// Walks through every graph on `n` vertices as an adjacency bitset per vertex.
#[derive(Clone, Debug)]
pub struct GraphIterator {
    n: u32,
    pairs: Vec<(u8, u8)>,
    range: Range<u64>,
}

/// A small graph: the edge mask plus per-vertex neighbour bitsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallGraph {
    pub mask: u64,
    pub neighbours: Vec<u8>,
}

impl GraphIterator {
    pub fn new(n: u32) -> Result<Self> {
        let total = graph_count(n)?;
        Ok(Self::over(n, 0..total))
    }

    /// Restricts to masks in `range` (clamped to the valid masks).
    pub fn over(n: u32, range: Range<u64>) -> Self {
        let total = 1u64 << (n * n.saturating_sub(1) / 2);
        let range = range.start.min(total)..range.end.min(total);
        GraphIterator { n, pairs: edge_pairs(n), range }
    }
}

impl Iterator for GraphIterator {
    type Item = SmallGraph;
    fn next(&mut self) -> Option<SmallGraph> {
        let mask = self.range.next()?;
        let mut neighbours = vec![0u8; self.n as usize];
        for (bit, &(i, j)) in self.pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                neighbours[i as usize] |= 1 << j;
                neighbours[j as usize] |= 1 << i;
            }
        }
        Some(SmallGraph { mask, neighbours })
    }
}

impl SmallGraph {
    pub fn n(&self) -> usize {
        self.neighbours.len()
    }

    pub fn edge_count(&self) -> u32 {
        self.mask.count_ones()
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        self.neighbours[i] >> j & 1 == 1
    }

    /// `Tr Δ` and `Tr Δ²` read off the explicit Laplacian matrix.
    pub fn laplacian_traces(&self) -> (u64, u64) {
        let n = self.n();
        let mut trace = 0u64;
        let mut trace_sq = 0u64;
        for i in 0..n {
            let deg = self.neighbours[i].count_ones() as i64;
            for j in 0..n {
                let entry = if i == j { deg } else if self.adjacent(i, j) { -1 } else { 0 };
                if i == j {
                    trace += entry as u64;
                }
                trace_sq += (entry * entry) as u64;
            }
        }
        (trace, trace_sq)
    }

    /// `Y^{(2)} = Σ_{i,j,l} a_{il} a_{lj}` by the explicit triple sum.
    pub fn two_step_walks(&self) -> u64 {
        let n = self.n();
        let mut total = 0u64;
        for i in 0..n {
            for l in 0..n {
                if !self.adjacent(i, l) {
                    continue;
                }
                for j in 0..n {
                    if self.adjacent(l, j) {
                        total += 1;
                    }
                }
            }
        }
        total
    }

    /// `X = Tr A^q` or `Y = 1ᵀ A^q 1` by dense powers.
    pub fn walk_count(&self, model: ModelKind, q: u32) -> u128 {
        let n = self.n();
        match model {
            ModelKind::Y => {
                let mut v = vec![1u128; n];
                for _ in 0..q {
                    v = (0..n)
                        .map(|i| (0..n).filter(|&j| self.adjacent(i, j)).map(|j| v[j]).sum())
                        .collect();
                }
                v.iter().sum()
            }
            ModelKind::X => (0..n)
                .map(|start| {
                    let mut v = vec![0u128; n];
                    v[start] = 1;
                    for _ in 0..q {
                        v = (0..n)
                            .map(|i| (0..n).filter(|&j| self.adjacent(i, j)).map(|j| v[j]).sum())
                            .collect();
                    }
                    v[start]
                })
                .sum(),
        }
    }
}

/// Per-graph fixture record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphRecord {
    pub mask: u64,
    pub edges: u32,
    pub tr_laplacian: u64,
    pub tr_laplacian_sq: u64,
    pub x: u128,
    pub y: u128,
}

/// Records `(|E|, Tr Δ, Tr Δ², X, Y)` for every graph on `n` vertices at walk length `q`.
pub fn graph_records(n: u32, q: u32) -> Result<Vec<GraphRecord>> {
    Ok(GraphIterator::new(n)?
        .map(|g| {
            let (tr, tr2) = g.laplacian_traces();
            GraphRecord {
                mask: g.mask,
                edges: g.edge_count(),
                tr_laplacian: tr,
                tr_laplacian_sq: tr2,
                x: g.walk_count(ModelKind::X, q),
                y: g.walk_count(ModelKind::Y, q),
            }
        })
        .collect())
}

/// Rational Gibbs weights `x = e^{-2β}` and `s = e^{g}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactWeights {
    pub x: Rational,
    pub s: Rational,
}

impl ExactWeights {
    pub fn new(x: Rational, s: Rational) -> Result<Self> {
        if !x.is_positive() || !s.is_positive() {
            return Err(usage!("weights x and s must be positive"));
        }
        Ok(ExactWeights { x, s })
    }

    /// Edge probability `x s² / (1 + x s²)` of the shifted ensemble.
    pub fn shifted_probability(&self) -> Rational {
        let xs2 = &self.x * &self.s * &self.s;
        &xs2 / (Rational::one() + &xs2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Potential {
    None,
    LaplacianSquare,
}

/// Count of graphs by `(|E|, statistic)`.
pub type Histogram = BTreeMap<(u32, u128), u64>;

pub fn merge_histograms(mut a: Histogram, b: Histogram) -> Histogram {
    for (key, count) in b {
        *a.entry(key).or_insert(0) += count;
    }
    a
}

/// Histogram of `(|E|, Tr Δ²)` over the masks in `range`.
pub fn laplacian_histogram_range(n: u32, range: Range<u64>) -> Histogram {
    let mut hist = Histogram::new();
    for g in GraphIterator::over(n, range) {
        let (_, tr2) = g.laplacian_traces();
        *hist.entry((g.edge_count(), tr2 as u128)).or_insert(0) += 1;
    }
    hist
}

/// Histogram of `(|E|, V)` with `V = X^{(q)}` or `Y^{(q)}` over the masks in `range`.
pub fn walk_histogram_range(n: u32, model: ModelKind, q: u32, range: Range<u64>) -> Histogram {
    let mut hist = Histogram::new();
    for g in GraphIterator::over(n, range) {
        *hist.entry((g.edge_count(), g.walk_count(model, q))).or_insert(0) += 1;
    }
    hist
}

/// Histogram of `(|E|, Σ_{ijl} a_{il} a_{lj})` using the explicit triple sum.
pub fn two_step_histogram_range(n: u32, range: Range<u64>) -> Histogram {
    let mut hist = Histogram::new();
    for g in GraphIterator::over(n, range) {
        *hist.entry((g.edge_count(), g.two_step_walks() as u128)).or_insert(0) += 1;
    }
    hist
}

/// `Σ_γ x^{|E|} s^{stat}` from a histogram (`s` ignored for `Potential::None`).
pub fn partition_from_histogram(hist: &Histogram, weights: &ExactWeights, potential: Potential) -> Rational {
    hist.iter()
        .map(|(&(edges, stat), &count)| {
            let mut term = pow(&weights.x, edges) * int(count as i64);
            if potential == Potential::LaplacianSquare {
                term *= pow(&weights.s, stat as u32);
            }
            term
        })
        .sum()
}

/// `Z_n = Σ_γ x^{|E(γ)|} s^{Tr Δ(γ)²}` (or without the `s` factor).
pub fn partition_function(n: u32, weights: &ExactWeights, potential: Potential) -> Result<Rational> {
    let total = graph_count(n)?;
    Ok(partition_from_histogram(&laplacian_histogram_range(n, 0..total), weights, potential))
}

/// `(1 + x)^{n(n-1)/2}`.
pub fn free_partition_closed_form(n: u32, x: &Rational) -> Rational {
    pow(&(Rational::one() + x), n * n.saturating_sub(1) / 2)
}

/// `E_p[s^V]` from a `(|E|, V)` histogram.
pub fn expectation_of_power(hist: &Histogram, n: u32, p: &Rational, s: &Rational) -> Rational {
    let pairs = n * n.saturating_sub(1) / 2;
    let q = Rational::one() - p;
    hist.iter()
        .map(|(&(edges, v), &count)| {
            pow(p, edges) * pow(&q, pairs - edges) * pow(s, v as u32) * int(count as i64)
        })
        .sum()
}

/// Both sides of the normalized quartic partition-function identity
/// `Z(x,s)/Z(x,1) = ((1 + x s²)/(1 + x))^{n(n-1)/2} E_{p'}[s^{Y}]`.
pub fn normalized_partition_identity(n: u32, weights: &ExactWeights) -> Result<(Rational, Rational)> {
    let total = graph_count(n)?;
    let lhs = partition_function(n, weights, Potential::LaplacianSquare)?
        / free_partition_closed_form(n, &weights.x);
    let xs2 = &weights.x * &weights.s * &weights.s;
    let prefactor = pow(
        &((Rational::one() + &xs2) / (Rational::one() + &weights.x)),
        n * n.saturating_sub(1) / 2,
    );
    let hist = two_step_histogram_range(n, 0..total);
    let rhs = prefactor * expectation_of_power(&hist, n, &weights.shifted_probability(), &weights.s);
    Ok((lhs, rhs))
}

/// `E[V^m]` for `m = 1..=mmax` from a `(|E|, V)` histogram at edge probability `p`.
pub fn moments_from_histogram(hist: &Histogram, n: u32, mmax: usize, p: &Rational) -> Vec<Rational> {
    let pairs = n * n.saturating_sub(1) / 2;
    let q = Rational::one() - p;
    let mut moments = vec![Rational::zero(); mmax];
    for (&(edges, v), &count) in hist {
        let prob = pow(p, edges) * pow(&q, pairs - edges) * int(count as i64);
        let v = Rational::from_integer(BigInt::from(v));
        let mut power = Rational::one();
        for m in moments.iter_mut() {
            power *= &v;
            *m += &prob * &power;
        }
    }
    moments
}

/// Route (a): moments by graph enumeration.
pub fn exact_moments_by_graphs(model: ModelKind, q: u32, mmax: usize, n: u32, p: &Rational) -> Result<Vec<Rational>> {
    let total = graph_count(n)?;
    Ok(moments_from_histogram(&walk_histogram_range(n, model, q, 0..total), n, mmax, p))
}

/// Route (b): `E[V^m] = Σ_{tuples} p^{#distinct edges}`, grouped by coincidence pattern.
pub fn exact_moments_by_tuples(model: ModelKind, q: u32, mmax: usize, n: u64, p: &Rational) -> Result<Vec<Rational>> {
    if q == 0 {
        return Err(usage!("walk length must be positive"));
    }
    let per = match model {
        ModelKind::X => q as usize,
        ModelKind::Y => q as usize + 1,
    };
    (1..=mmax)
        .map(|m| {
            let slots = per * m;
            if slots > MAX_TUPLE_SLOTS {
                return Err(resource!("index-tuple route limited to {MAX_TUPLE_SLOTS} slots, needs {slots}"));
            }
            let mut by_shape: BTreeMap<(usize, usize), u64> = BTreeMap::new();
            let mut labels = vec![0usize; slots];
            tuple_patterns(&mut labels, 0, 0, n, &mut |labels| {
                if let Some(edges) = distinct_edges(labels, per, q as usize, model) {
                    let used = labels.iter().max().map_or(0, |&x| x + 1);
                    *by_shape.entry((used, edges)).or_insert(0) += 1;
                }
            });
            Ok(by_shape
                .into_iter()
                .map(|((used, edges), count)| {
                    Rational::from_integer(BigInt::from(falling_factorial(n, used as u64)))
                        * pow(p, edges as u32)
                        * int(count as i64)
                })
                .sum())
        })
        .collect()
}

fn tuple_patterns(labels: &mut [usize], slot: usize, used: usize, n: u64, visit: &mut dyn FnMut(&[usize])) {
    if slot == labels.len() {
        visit(labels);
        return;
    }
    let ceiling = (used + 1).min(usize::try_from(n).unwrap_or(usize::MAX));
    for label in 0..ceiling {
        labels[slot] = label;
        tuple_patterns(labels, slot + 1, used.max(label + 1), n, visit);
    }
}

/// Distinct unordered index pairs of the walk products, or `None` if a diagonal entry occurs.
fn distinct_edges(labels: &[usize], per: usize, q: usize, model: ModelKind) -> Option<usize> {
    let mut seen: Vec<(usize, usize)> = Vec::new();
    for chunk in labels.chunks(per) {
        for j in 0..q {
            let a = chunk[j];
            let b = match model {
                ModelKind::Y => chunk[j + 1],
                ModelKind::X => chunk[(j + 1) % q],
            };
            if a == b {
                return None;
            }
            let e = (a.min(b), a.max(b));
            if !seen.contains(&e) {
                seen.push(e);
            }
        }
    }
    Some(seen.len())
}

/// Moments `m_1..m_k` to cumulants by `κ_k = Σ_π (-1)^{s-1}(s-1)! Π_B m_{|B|}`.
pub fn moments_to_cumulants(moments: &[Rational]) -> Result<Vec<Rational>> {
    let mut out = Vec::with_capacity(moments.len());
    for k in 1..=moments.len() {
        let mut acc = Rational::zero();
        for partition in set_partitions(k)? {
            let s = partition.len();
            let mut term: Rational = partition
                .blocks()
                .iter()
                .map(|b| moments[b.count_ones() as usize - 1].clone())
                .product();
            let factorial: i64 = (1..s as i64).product();
            term *= int(if s % 2 == 1 { factorial } else { -factorial });
            acc += term;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Exact `Cum_k(V_n)` by graph enumeration.
pub fn exact_cumulant(model: ModelKind, q: u32, k: usize, n: u32, p: &Rational) -> Result<Rational> {
    if k == 0 {
        return Err(usage!("cumulant order must be positive"));
    }
    let moments = exact_moments_by_graphs(model, q, k, n, p)?;
    Ok(moments_to_cumulants(&moments)?.swap_remove(k - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    #[test]
    fn free_partition_examples() {
        let one = ExactWeights::new(int(1), int(1)).unwrap();
        assert_eq!(partition_function(4, &one, Potential::None).unwrap(), int(64));
        let half = ExactWeights::new(rat(1, 2), int(1)).unwrap();
        assert_eq!(partition_function(3, &half, Potential::None).unwrap(), rat(27, 8));
        assert!(partition_function(8, &half, Potential::None).is_err());
        assert!(ExactWeights::new(int(0), int(1)).is_err());
    }

    #[test]
    fn quartic_identity_small() {
        let w = ExactWeights::new(rat(1, 2), int(2)).unwrap();
        let (lhs, rhs) = normalized_partition_identity(4, &w).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn iterator_order() {
        let graphs: Vec<SmallGraph> = GraphIterator::new(3).unwrap().collect();
        assert_eq!(graphs.len(), 8);
        assert_eq!(graphs[1].neighbours, vec![0b010, 0b001, 0]);
        assert_eq!(edge_pairs(3), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn moment_examples() {
        let y = exact_moments_by_graphs(ModelKind::Y, 2, 1, 3, &rat(1, 2)).unwrap();
        assert_eq!(y[0], rat(9, 2));
        let y1 = exact_moments_by_tuples(ModelKind::Y, 1, 1, 6, &rat(1, 3)).unwrap();
        assert_eq!(y1[0], int(30) * rat(1, 3));
        let x2 = exact_moments_by_tuples(ModelKind::X, 2, 1, 4, &rat(1, 3)).unwrap();
        assert_eq!(x2[0], int(4));
    }

    #[test]
    fn routes_agree() {
        for (model, q, mmax) in [(ModelKind::Y, 2, 3), (ModelKind::X, 3, 3), (ModelKind::Y, 3, 2)] {
            for n in 3..=5 {
                let a = exact_moments_by_graphs(model, q, mmax, n, &rat(1, 3)).unwrap();
                let b = exact_moments_by_tuples(model, q, mmax, n as u64, &rat(1, 3)).unwrap();
                assert_eq!(a, b, "{model} q={q} n={n}");
            }
        }
    }

    #[test]
    fn moment_cumulant_examples() {
        let mu = rat(3, 2);
        let sigma2 = rat(1, 5);
        let c = moments_to_cumulants(&[mu.clone(), &mu * &mu + &sigma2]).unwrap();
        assert_eq!(c, vec![mu, sigma2]);
        let point = moments_to_cumulants(&[int(2), int(4), int(8)]).unwrap();
        assert_eq!(point, vec![int(2), int(0), int(0)]);
        let p = rat(1, 4);
        let bern = moments_to_cumulants(&[p.clone(), p.clone(), p.clone()]).unwrap();
        let q = Rational::one() - &p;
        assert_eq!(bern[1], &p * &q);
        assert_eq!(bern[2], &p * &q * (Rational::one() - int(2) * &p));
    }

    #[test]
    fn cumulant_examples() {
        assert_eq!(exact_cumulant(ModelKind::Y, 2, 1, 3, &rat(1, 2)).unwrap(), rat(9, 2));
        assert_eq!(exact_cumulant(ModelKind::X, 2, 3, 4, &Rational::zero()).unwrap(), Rational::zero());
        let p = rat(1, 3);
        let expected = int(4 * 10) * &p * (Rational::one() - &p);
        assert_eq!(exact_cumulant(ModelKind::X, 2, 2, 5, &p).unwrap(), expected);
    }

    #[test]
    fn laplacian_and_walk_examples() {
        let k3 = GraphIterator::new(3).unwrap().last().unwrap();
        assert_eq!(k3.laplacian_traces(), (6, 18));
        assert_eq!(k3.walk_count(ModelKind::X, 3), 6);
        assert_eq!(k3.walk_count(ModelKind::Y, 2), 12);
        assert_eq!(k3.two_step_walks(), 12);
    }
}
