//! Connected diagrams of the cumulant expansion.
//!
//! A [`Diagram`] is the full coincidence signature of `k` index tuples: each tuple is an
//! element (a path of `q` edges for `Y`, a `q`-cycle for `X`), equal labels mean equal
//! indices, and edges carrying the same unordered label pair form a colour group (one
//! Bernoulli variable). Summing [`weight`] times the falling factorial of the label count
//! over connected signatures gives the exact `k`-th cumulant at finite `n`.

mod partition;
mod signature;
mod walk;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::combinatorics::ModelKind;
use crate::error::{resource, usage};
use crate::num::{falling_factorial, Poly, Rational};
use crate::{Error, Result};

pub use partition::{mobius_coefficient, set_partitions, SetPartition, MAX_PARTITION_SIZE};
pub use walk::{brute_force_walk_census, walk_encode, BruteWalkCensus, Walk, MAX_CENSUS_STEPS};

use signature::{for_each_signature, Layout};

/// Guard on exhaustive enumeration size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Maximum number of vertex slots `r * k`.
    pub max_slots: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { max_slots: 12 }
    }
}

impl EnumerationLimits {
    fn check(&self, model: ModelKind, q: u32, k: u32) -> Result<Layout> {
        if q == 0 || k == 0 {
            return Err(usage!("diagrams need q >= 1 and k >= 1"));
        }
        let layout = Layout::new(model, q, k);
        if layout.slots() > self.max_slots {
            return Err(resource!(
                "{model} with q = {q}, k = {k} has {} vertex slots, above the limit of {}",
                layout.slots(),
                self.max_slots
            ));
        }
        if k as usize > 32 || layout.slots() > 255 {
            return Err(resource!("diagram too large for the compact representation"));
        }
        Ok(layout)
    }
}

/// Canonical diagram: restricted-growth vertex labels plus derived colour groups.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagram {
    model: ModelKind,
    q: u32,
    k: u32,
    labels: Vec<u8>,
    edge_groups: Vec<u16>,
    group_pairs: Vec<(u8, u8)>,
    group_elements: Vec<u32>,
    nu: usize,
}

impl Diagram {
    fn from_labels(layout: &Layout, labels: &[u8]) -> Self {
        let mut edge_groups = Vec::with_capacity(layout.edges.len());
        let mut group_pairs: Vec<(u8, u8)> = Vec::new();
        let mut group_elements: Vec<u32> = Vec::new();
        let q = layout.q as usize;
        for (e, &(a, b)) in layout.edges.iter().enumerate() {
            let (x, y) = (labels[a], labels[b]);
            let pair = (x.min(y), x.max(y));
            let g = match group_pairs.iter().position(|&p| p == pair) {
                Some(g) => g,
                None => {
                    group_pairs.push(pair);
                    group_elements.push(0);
                    group_pairs.len() - 1
                }
            };
            group_elements[g] |= 1 << (e / q);
            edge_groups.push(g as u16);
        }
        let nu = labels.iter().copied().max().map_or(0, |m| m as usize + 1);
        Diagram {
            model: layout.model,
            q: layout.q,
            k: layout.k,
            labels: labels.to_vec(),
            edge_groups,
            group_pairs,
            group_elements,
            nu,
        }
    }

    pub fn model(&self) -> ModelKind {
        self.model
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Canonical vertex labels, element by element.
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// Colour group of each element edge, numbered by first appearance.
    pub fn edge_groups(&self) -> &[u16] {
        &self.edge_groups
    }

    /// `m(δ)`: number of colour groups (distinct edge variables).
    pub fn color_groups(&self) -> usize {
        self.group_pairs.len()
    }

    /// `ν(δ)`: number of distinct vertex indices.
    pub fn vertex_classes(&self) -> usize {
        self.nu
    }

    /// Arcs in nearest-neighbour form: each group of size `s` contributes `s - 1`.
    pub fn arc_count(&self) -> usize {
        self.edge_groups.len() - self.group_pairs.len()
    }

    /// Elements linked through shared colour groups form a single component.
    pub fn is_connected(&self) -> bool {
        let full = full_mask(self.k as usize);
        let mut reach = 1u32;
        loop {
            let before = reach;
            for &mask in &self.group_elements {
                if mask & reach != 0 {
                    reach |= mask;
                }
            }
            if reach == before {
                return reach == full;
            }
        }
    }

    /// `e(S)` for every element subset `S`: the number of colour groups touching `S`.
    pub fn group_span_table(&self) -> Vec<u32> {
        let size = 1usize << self.k;
        let mut table = vec![0u32; size];
        for (s, slot) in table.iter_mut().enumerate() {
            *slot = self.group_elements.iter().filter(|&&m| m & s as u32 != 0).count() as u32;
        }
        table
    }

    /// The glued graph `G(δ)`.
    pub fn graph(&self) -> DiagramGraph {
        let mut parent: Vec<usize> = (0..self.nu).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &self.group_pairs {
            let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let components = (0..self.nu).filter(|&v| find(&mut parent, v) == v).count();
        DiagramGraph::new(self.nu, self.group_pairs.clone(), components)
    }

    /// One-line text form: model, q, k, labels, m, ν, arcs, tree flag, cycle count.
    pub fn dump_line(&self) -> String {
        let r = self.model.slots_per_element(self.q);
        let mut labels = String::new();
        for (i, chunk) in self.labels.chunks(r).enumerate() {
            if i > 0 {
                labels.push('|');
            }
            for (j, l) in chunk.iter().enumerate() {
                if j > 0 {
                    labels.push(',');
                }
                let _ = write!(labels, "{l}");
            }
        }
        let graph = self.graph();
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.model,
            self.q,
            self.k,
            labels,
            self.color_groups(),
            self.vertex_classes(),
            self.arc_count(),
            graph.is_tree,
            graph.cycle_count
        )
    }
}

fn full_mask(k: usize) -> u32 {
    if k >= 32 {
        u32::MAX
    } else {
        (1u32 << k) - 1
    }
}

/// The graph obtained by gluing the elements of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramGraph {
    pub vertices: usize,
    pub edges: Vec<(u8, u8)>,
    pub connected: bool,
    pub is_tree: bool,
    /// Cyclomatic number `m - ν + components`.
    pub cycle_count: usize,
}

impl DiagramGraph {
    fn new(vertices: usize, edges: Vec<(u8, u8)>, components: usize) -> Self {
        let connected = components == 1;
        let cycle_count = edges.len() + components - vertices;
        DiagramGraph { vertices, is_tree: connected && edges.len() + 1 == vertices, edges, connected, cycle_count }
    }
}

/// Canonical diagram of an index vector of `r * k` entries (relabeling invariant).
pub fn from_index_vector(model: ModelKind, q: u32, k: u32, alpha: &[u64]) -> Result<Diagram> {
    if q == 0 || k == 0 {
        return Err(usage!("diagrams need q >= 1 and k >= 1"));
    }
    let layout = Layout::new(model, q, k);
    if alpha.len() != layout.slots() {
        return Err(usage!("index vector has {} entries, expected {}", alpha.len(), layout.slots()));
    }
    let mut seen: Vec<u64> = Vec::new();
    let mut labels = Vec::with_capacity(alpha.len());
    for &a in alpha {
        let label = match seen.iter().position(|&s| s == a) {
            Some(pos) => pos,
            None => {
                seen.push(a);
                seen.len() - 1
            }
        };
        if label > u8::MAX as usize {
            return Err(resource!("too many distinct indices"));
        }
        labels.push(label as u8);
    }
    if layout.edges.iter().any(|&(a, b)| labels[a] == labels[b]) {
        return Err(usage!("index vector has a diagonal entry, which vanishes for a graph without loops"));
    }
    Ok(Diagram::from_labels(&layout, &labels))
}

/// Which diagrams [`enumerate`] keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagramFilter {
    All,
    Connected,
    /// Connected, `k - 1` arcs and the maximal vertex count `(r - 2)k + 2`.
    TreeArcs,
}

/// Result of an exhaustive enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    /// Every kept signature, in lexicographic label order.
    pub diagrams: Vec<Diagram>,
    /// Distinct colour-group partitions of the element edges (arc orientation forgotten).
    pub unoriented: usize,
    /// Number of signatures; every arc gluing two edges in either direction counts separately.
    pub oriented: usize,
}

fn tree_arc_vertices(layout: &Layout) -> usize {
    (layout.slots_per_element - 2) * layout.k as usize + 2
}

/// Streams every diagram passing `filter`, honouring a cap of `max_labels` vertex classes.
pub fn visit_diagrams(
    model: ModelKind,
    q: u32,
    k: u32,
    filter: DiagramFilter,
    max_labels: usize,
    limits: &EnumerationLimits,
    visit: &mut dyn FnMut(&Diagram),
) -> Result<()> {
    let layout = limits.check(model, q, k)?;
    let min_labels = match filter {
        DiagramFilter::TreeArcs => tree_arc_vertices(&layout),
        _ => 0,
    };
    let target = min_labels;
    for_each_signature(&layout, max_labels, min_labels, &mut |labels| {
        let diagram = Diagram::from_labels(&layout, labels);
        let keep = match filter {
            DiagramFilter::All => true,
            DiagramFilter::Connected => diagram.is_connected(),
            DiagramFilter::TreeArcs => {
                diagram.vertex_classes() == target
                    && diagram.arc_count() + 1 == k as usize
                    && diagram.is_connected()
            }
        };
        if keep {
            visit(&diagram);
        }
    });
    Ok(())
}

pub fn enumerate(model: ModelKind, q: u32, k: u32, filter: DiagramFilter, limits: &EnumerationLimits) -> Result<Enumeration> {
    let mut diagrams = Vec::new();
    let mut classes: BTreeSet<Vec<u16>> = BTreeSet::new();
    visit_diagrams(model, q, k, filter, usize::MAX, limits, &mut |d| {
        classes.insert(d.edge_groups().to_vec());
        diagrams.push(d.clone());
    })?;
    let oriented = diagrams.len();
    Ok(Enumeration { diagrams, unoriented: classes.len(), oriented })
}

/// `χ(π, δ)`: extra colour groups created by splitting the elements along `π`.
pub fn chi(partition: &SetPartition, diagram: &Diagram) -> Result<u32> {
    let span = diagram.group_span_table();
    chi_with(partition, diagram, &span)
}

fn chi_with(partition: &SetPartition, diagram: &Diagram, span: &[u32]) -> Result<u32> {
    if SetPartition::from_blocks(diagram.k() as usize, partition.blocks().to_vec()).is_none() {
        return Err(usage!("partition does not cover the {} elements", diagram.k()));
    }
    let total: u32 = partition.blocks().iter().map(|&b| span[b as usize]).sum();
    Ok(total - diagram.color_groups() as u32)
}

/// `W(δ) = Σ_π (-1)^{s-1}(s-1)! p^{m + χ(π, δ)}` as a polynomial in `p`.
pub fn weight(diagram: &Diagram) -> Result<Poly> {
    let partitions = set_partitions(diagram.k() as usize)?;
    Ok(weight_with(diagram, &partitions, 0))
}

/// Möbius sum with exponent `Σ_B e(B) - shift`, accumulated in machine integers.
fn weight_coefficients(diagram: &Diagram, partitions: &[SetPartition], shift: usize) -> Vec<i64> {
    let span = diagram.group_span_table();
    let mut coeffs = vec![0i64; diagram.edge_groups.len() * diagram.k() as usize + 1];
    for partition in partitions {
        let exponent: u32 = partition.blocks().iter().map(|&b| span[b as usize]).sum();
        coeffs[exponent as usize - shift] += mobius_coefficient(partition.len());
    }
    coeffs
}

fn weight_with(diagram: &Diagram, partitions: &[SetPartition], shift: usize) -> Poly {
    Poly::from_ints(&weight_coefficients(diagram, partitions, shift))
}

/// `n (n-1) ... (n-ν+1)`: injective index assignments realizing the signature.
pub fn exact_class_count(diagram: &Diagram, n: u64) -> BigUint {
    falling_factorial(n, diagram.vertex_classes() as u64)
}

/// Exact `Cum_k(V_n)` as a polynomial in `p`, summed over connected signatures.
pub fn cumulant_polynomial(model: ModelKind, q: u32, k: u32, n: u64, limits: &EnumerationLimits) -> Result<Poly> {
    let partitions = set_partitions(k as usize)?;
    let mut acc: Vec<BigInt> = Vec::new();
    let cap = usize::try_from(n).unwrap_or(usize::MAX);
    visit_diagrams(model, q, k, DiagramFilter::Connected, cap, limits, &mut |d| {
        let count = BigInt::from(exact_class_count(d, n));
        if count.is_zero() {
            return;
        }
        let coeffs = weight_coefficients(d, &partitions, 0);
        if acc.len() < coeffs.len() {
            acc.resize(coeffs.len(), BigInt::zero());
        }
        for (slot, c) in acc.iter_mut().zip(coeffs) {
            if c != 0 {
                *slot += &count * c;
            }
        }
    })?;
    Ok(Poly::from_coeffs(acc.into_iter().map(Rational::from_integer).collect()))
}

/// Exact finite-`n` cumulant of `X` or `Y` at edge probability `p`.
pub fn cumulant_via_diagrams(model: ModelKind, q: u32, k: u32, n: u64, p: &Rational, limits: &EnumerationLimits) -> Result<Rational> {
    Ok(cumulant_polynomial(model, q, k, n, limits)?.eval(p))
}

/// Full-regime limit: `Σ_δ Σ_π (-1)^{s-1}(s-1)! p^{χ(π,δ)}` over maximal tree-arc diagrams,
/// every signature (hence every arc orientation) counted once.
pub fn limit_cumulant_full(model: ModelKind, q: u32, k: u32, limits: &EnumerationLimits) -> Result<Poly> {
    let partitions = set_partitions(k as usize)?;
    let mut acc: Vec<i64> = Vec::new();
    visit_diagrams(model, q, k, DiagramFilter::TreeArcs, usize::MAX, limits, &mut |d| {
        let coeffs = weight_coefficients(d, &partitions, d.color_groups());
        if acc.len() < coeffs.len() {
            acc.resize(coeffs.len(), 0);
        }
        for (slot, c) in acc.iter_mut().zip(coeffs) {
            *slot += c;
        }
    })?;
    Ok(Poly::from_ints(&acc))
}

/// Counts `N_{k,l}` of connected diagrams whose glued graph is a tree with `l` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseTreeTable {
    pub model: ModelKind,
    pub q: u32,
    /// Element `k - 1` maps `l` to `N_{k,l}`.
    pub counts: Vec<BTreeMap<usize, u64>>,
    cumulants: Vec<Poly>,
}

impl SparseTreeTable {
    /// `Σ_l N_{k,l} c^{l - L}` as a polynomial in `1/c`, where `L` is the largest possible tree size.
    pub fn cumulant(&self, k: usize) -> Poly {
        self.cumulants[k - 1].clone()
    }

    pub fn count(&self, k: usize, l: usize) -> u64 {
        self.counts[k - 1].get(&l).copied().unwrap_or(0)
    }
}

/// Largest tree size reachable by `k` elements: `(q-1)k+1` for paths, `(q/2-1)k+1` for even cycles.
fn max_tree_edges(model: ModelKind, q: u32, k: usize) -> Option<usize> {
    match model {
        ModelKind::Y => Some((q as usize - 1) * k + 1),
        ModelKind::X if q % 2 == 0 => Some((q as usize / 2 - 1) * k + 1),
        ModelKind::X => None,
    }
}

pub fn sparse_tree_table(model: ModelKind, q: u32, kmax: usize, limits: &EnumerationLimits) -> Result<SparseTreeTable> {
    let mut counts = Vec::with_capacity(kmax);
    let mut cumulants = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let mut row: BTreeMap<usize, u64> = BTreeMap::new();
        visit_diagrams(model, q, k as u32, DiagramFilter::Connected, usize::MAX, limits, &mut |d| {
            if d.color_groups() + 1 == d.vertex_classes() {
                *row.entry(d.color_groups()).or_insert(0) += 1;
            }
        })?;
        let cumulant = match max_tree_edges(model, q, k) {
            None => Poly::zero(),
            Some(top) => {
                let mut coeffs = vec![0i64; top + 1];
                for (&l, &n) in &row {
                    if l > top {
                        return Err(Error::Invariant(format!("tree with {l} edges exceeds the maximum {top}")));
                    }
                    coeffs[top - l] += n as i64;
                }
                Poly::from_ints(&coeffs)
            }
        };
        counts.push(row);
        cumulants.push(cumulant);
    }
    Ok(SparseTreeTable { model, q, counts, cumulants })
}

/// Counts of connected `X` diagrams whose glued graph has exactly one cycle, by edge count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCensus {
    pub q: u32,
    /// Element `k - 1` maps `l` to the number of signatures with `l` edges.
    pub counts: Vec<BTreeMap<usize, u64>>,
}

impl CycleCensus {
    pub fn count(&self, k: usize, l: usize) -> u64 {
        self.counts[k - 1].get(&l).copied().unwrap_or(0)
    }

    /// Signatures in which every element runs around one common `q`-cycle.
    pub fn dilute_count(&self, k: usize) -> u64 {
        self.count(k, self.q as usize)
    }

    /// `Σ_l N_{1,l} c^{l-q}` as a polynomial in `1/c`.
    pub fn sparse_first_cumulant(&self) -> Poly {
        let q = self.q as usize;
        let mut coeffs = vec![0i64; q + 1];
        for (&l, &n) in &self.counts[0] {
            coeffs[q - l] += n as i64;
        }
        Poly::from_ints(&coeffs)
    }
}

pub fn cycle_census(q: u32, kmax: usize, limits: &EnumerationLimits) -> Result<CycleCensus> {
    if q % 2 == 0 || q < 3 {
        return Err(usage!("cycle census is defined for odd q >= 3, got {q}"));
    }
    let mut counts = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let mut row: BTreeMap<usize, u64> = BTreeMap::new();
        visit_diagrams(ModelKind::X, q, k as u32, DiagramFilter::Connected, usize::MAX, limits, &mut |d| {
            if d.color_groups() == d.vertex_classes() {
                *row.entry(d.color_groups()).or_insert(0) += 1;
            }
        })?;
        counts.push(row);
    }
    Ok(CycleCensus { q, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{int, rat};

    fn limits() -> EnumerationLimits {
        EnumerationLimits::default()
    }

    #[test]
    fn index_vector_examples() {
        let d = from_index_vector(ModelKind::Y, 2, 1, &[1, 2, 1]).unwrap();
        assert_eq!((d.color_groups(), d.vertex_classes(), d.arc_count()), (1, 2, 1));
        let d = from_index_vector(ModelKind::Y, 2, 1, &[1, 2, 3]).unwrap();
        assert_eq!((d.color_groups(), d.vertex_classes(), d.arc_count()), (2, 3, 0));
        assert_eq!(d, from_index_vector(ModelKind::Y, 2, 1, &[5, 7, 9]).unwrap());
        assert!(from_index_vector(ModelKind::Y, 2, 1, &[1, 1, 2]).is_err());
        assert!(from_index_vector(ModelKind::Y, 2, 1, &[1, 2]).is_err());
    }

    #[test]
    fn tree_arc_counts_for_paths_of_two() {
        let expected = [1usize, 4, 32, 400];
        for (k, &d) in expected.iter().enumerate() {
            let k = k as u32 + 1;
            let e = enumerate(ModelKind::Y, 2, k, DiagramFilter::TreeArcs, &limits()).unwrap();
            assert_eq!(e.unoriented, d, "k = {k}");
            assert_eq!(e.oriented, d << (k - 1), "k = {k}");
        }
        let all = enumerate(ModelKind::Y, 2, 1, DiagramFilter::All, &limits()).unwrap();
        assert_eq!(all.oriented, 2);
    }

    #[test]
    fn resource_guard() {
        let err = enumerate(ModelKind::Y, 2, 5, DiagramFilter::TreeArcs, &limits()).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
        let wide = EnumerationLimits { max_slots: 15 };
        assert!(Layout::new(ModelKind::Y, 2, 5).slots() <= wide.max_slots);
    }

    #[test]
    fn chi_and_weight_examples() {
        let d = from_index_vector(ModelKind::Y, 2, 2, &[1, 2, 3, 2, 1, 4]).unwrap();
        assert_eq!(d.color_groups(), 3);
        let split = SetPartition::from_blocks(2, vec![1, 2]).unwrap();
        assert_eq!(chi(&SetPartition::trivial(2), &d).unwrap(), 0);
        assert_eq!(chi(&split, &d).unwrap(), 1);
        assert_eq!(weight(&d).unwrap(), Poly::from_ints(&[0, 0, 0, 1, -1]));

        let apart = from_index_vector(ModelKind::Y, 2, 2, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(chi(&split, &apart).unwrap(), 0);
        assert!(weight(&apart).unwrap().is_zero());

        let single = from_index_vector(ModelKind::Y, 3, 1, &[1, 2, 3, 1]).unwrap();
        assert_eq!(weight(&single).unwrap(), Poly::monomial(int(1), 3));
    }

    #[test]
    fn disconnected_weights_vanish() {
        for k in 1..=3 {
            visit_diagrams(ModelKind::Y, 2, k, DiagramFilter::All, usize::MAX, &limits(), &mut |d| {
                if !d.is_connected() {
                    assert!(weight(d).unwrap().is_zero(), "{}", d.dump_line());
                }
            })
            .unwrap();
        }
    }

    #[test]
    fn class_count_examples() {
        let d3 = from_index_vector(ModelKind::Y, 2, 1, &[1, 2, 3]).unwrap();
        assert_eq!(exact_class_count(&d3, 5), BigUint::from(60u32));
        let d2 = from_index_vector(ModelKind::Y, 2, 1, &[1, 2, 1]).unwrap();
        assert_eq!(exact_class_count(&d2, 2), BigUint::from(2u32));
        let d4 = from_index_vector(ModelKind::Y, 3, 1, &[1, 2, 3, 4]).unwrap();
        assert_eq!(exact_class_count(&d4, 3), BigUint::zero());
    }

    #[test]
    fn first_cumulant_examples() {
        let value = cumulant_via_diagrams(ModelKind::Y, 2, 1, 3, &rat(1, 2), &limits()).unwrap();
        assert_eq!(value, rat(9, 2));
        let x2 = cumulant_polynomial(ModelKind::X, 2, 1, 6, &limits()).unwrap();
        assert_eq!(x2, Poly::from_ints(&[0, 30]));
        for k in 1..=3 {
            let v = cumulant_via_diagrams(ModelKind::Y, 2, k, 4, &Rational::zero(), &limits()).unwrap();
            assert!(v.is_zero());
        }
    }

    #[test]
    fn full_limit_examples() {
        for q in 1..=4 {
            assert_eq!(limit_cumulant_full(ModelKind::Y, q, 1, &limits()).unwrap(), Poly::one());
        }
        assert_eq!(limit_cumulant_full(ModelKind::Y, 2, 2, &limits()).unwrap(), Poly::from_ints(&[8, -8]));
        assert_eq!(limit_cumulant_full(ModelKind::Y, 3, 2, &limits()).unwrap(), Poly::from_ints(&[18, -18]));
        assert_eq!(limit_cumulant_full(ModelKind::X, 3, 2, &limits()).unwrap(), Poly::from_ints(&[18, -18]));
    }

    #[test]
    fn sparse_tree_examples() {
        let table = sparse_tree_table(ModelKind::Y, 2, 3, &limits()).unwrap();
        assert_eq!(table.count(1, 1), 1);
        assert_eq!(table.count(1, 2), 1);
        assert_eq!(table.cumulant(1), Poly::from_ints(&[1, 1]));
        for k in 1..=3 {
            // c -> infinity recovers the dilute value 2^{k-1} d_k
            let dilute = [1i64, 8, 128][k - 1];
            assert_eq!(table.cumulant(k).coeff(0), int(dilute));
        }
        let x3 = sparse_tree_table(ModelKind::X, 3, 1, &limits()).unwrap();
        assert!(x3.counts[0].is_empty());
    }

    #[test]
    fn cycle_census_examples() {
        let census = cycle_census(3, 2, &limits()).unwrap();
        assert_eq!(census.dilute_count(1), 1);
        assert_eq!(census.dilute_count(2), 6);
        assert_eq!(census.sparse_first_cumulant(), Poly::one());
        assert!(cycle_census(4, 1, &limits()).is_err());
    }

    #[test]
    fn dump_line_format() {
        let d = from_index_vector(ModelKind::Y, 2, 1, &[1, 2, 1]).unwrap();
        assert_eq!(d.dump_line(), "Y\t2\t1\t0,1,0\t1\t2\t1\ttrue\t0");
    }
}
