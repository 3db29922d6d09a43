//! Simple undirected graphs with a dense bitset or a compressed adjacency-list backend.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::usage;
use crate::Result;

/// Storage layout of an [`AdjacencyMatrix`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    /// One bit per matrix entry, rows packed into `u64` words.
    Dense,
    /// Sorted neighbour lists in one contiguous array (CSR).
    Sparse,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Storage {
    Dense { words_per_row: usize, bits: Vec<u64> },
    Sparse { offsets: Vec<usize>, neighbours: Vec<u32> },
}

/// Symmetric 0/1 matrix with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    /// Edges `(i, j)` with `i < j`, sorted.
    edges: Vec<(u32, u32)>,
    storage: Storage,
}

impl AdjacencyMatrix {
    /// Builds a graph from an edge list; duplicates and orientation are normalised, loops rejected.
    pub fn from_edges(n: usize, edges: &[(u32, u32)], backend: Backend) -> Result<Self> {
        let mut list = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(usage!("loop at vertex {a}: graphs have a zero diagonal"));
            }
            if a as usize >= n || b as usize >= n {
                return Err(usage!("edge ({a}, {b}) out of range for n = {n}"));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted_edges(n, list, backend))
    }

    /// Trusted constructor for sorted, deduplicated `i < j` edges.
    pub(crate) fn from_sorted_edges(n: usize, edges: Vec<(u32, u32)>, backend: Backend) -> Self {
        let storage = match backend {
            Backend::Dense => {
                let words_per_row = n.div_ceil(64).max(1);
                let mut bits = vec![0u64; words_per_row * n];
                for &(a, b) in &edges {
                    let (a, b) = (a as usize, b as usize);
                    bits[a * words_per_row + b / 64] |= 1 << (b % 64);
                    bits[b * words_per_row + a / 64] |= 1 << (a % 64);
                }
                Storage::Dense { words_per_row, bits }
            }
            Backend::Sparse => {
                let mut degree = vec![0usize; n];
                for &(a, b) in &edges {
                    degree[a as usize] += 1;
                    degree[b as usize] += 1;
                }
                let mut offsets = vec![0usize; n + 1];
                for i in 0..n {
                    offsets[i + 1] = offsets[i] + degree[i];
                }
                let mut fill = offsets.clone();
                let mut neighbours = vec![0u32; offsets[n]];
                for &(a, b) in &edges {
                    neighbours[fill[a as usize]] = b;
                    fill[a as usize] += 1;
                    neighbours[fill[b as usize]] = a;
                    fill[b as usize] += 1;
                }
                for i in 0..n {
                    neighbours[offsets[i]..offsets[i + 1]].sort_unstable();
                }
                Storage::Sparse { offsets, neighbours }
            }
        };
        AdjacencyMatrix { n, edges, storage }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_edges(n, Vec::new(), Backend::Sparse)
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                edges.push((i, j));
            }
        }
        Self::from_sorted_edges(n, edges, Backend::Dense)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn backend(&self) -> Backend {
        match self.storage {
            Storage::Dense { .. } => Backend::Dense,
            Storage::Sparse { .. } => Backend::Sparse,
        }
    }

    /// Same graph in the requested backend.
    pub fn with_backend(&self, backend: Backend) -> Self {
        if self.backend() == backend {
            return self.clone();
        }
        Self::from_sorted_edges(self.n, self.edges.clone(), backend)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        match &self.storage {
            Storage::Dense { words_per_row, bits } => bits[i * words_per_row + j / 64] >> (j % 64) & 1 == 1,
            Storage::Sparse { offsets, neighbours } => {
                neighbours[offsets[i]..offsets[i + 1]].binary_search(&(j as u32)).is_ok()
            }
        }
    }

    pub fn degree(&self, i: usize) -> usize {
        match &self.storage {
            Storage::Dense { words_per_row, bits } => {
                bits[i * words_per_row..(i + 1) * words_per_row].iter().map(|w| w.count_ones() as usize).sum()
            }
            Storage::Sparse { offsets, .. } => offsets[i + 1] - offsets[i],
        }
    }

    pub fn degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.n];
        for &(a, b) in &self.edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        deg
    }

    /// Calls `f` with every neighbour of `i` in increasing order.
    pub fn for_each_neighbour(&self, i: usize, mut f: impl FnMut(usize)) {
        match &self.storage {
            Storage::Dense { words_per_row, bits } => {
                for (w, &word) in bits[i * words_per_row..(i + 1) * words_per_row].iter().enumerate() {
                    let mut word = word;
                    while word != 0 {
                        let bit = word.trailing_zeros() as usize;
                        f(w * 64 + bit);
                        word &= word - 1;
                    }
                }
            }
            Storage::Sparse { offsets, neighbours } => {
                for &j in &neighbours[offsets[i]..offsets[i + 1]] {
                    f(j as usize);
                }
            }
        }
    }

    /// Packed bitset row of `i` (dense backend only).
    pub fn row_bits(&self, i: usize) -> Option<&[u64]> {
        match &self.storage {
            Storage::Dense { words_per_row, bits } => Some(&bits[i * words_per_row..(i + 1) * words_per_row]),
            Storage::Sparse { .. } => None,
        }
    }

    /// Sorted neighbour slice of `i` (sparse backend only).
    pub fn neighbour_slice(&self, i: usize) -> Option<&[u32]> {
        match &self.storage {
            Storage::Sparse { offsets, neighbours } => Some(&neighbours[offsets[i]..offsets[i + 1]]),
            Storage::Dense { .. } => None,
        }
    }

    /// Relabels vertex `v` as `perm[v]`; `perm` must be a bijection of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(usage!("permutation has length {}, expected {}", perm.len(), self.n));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(usage!("not a bijection of 0..{}", self.n));
            }
            seen[p] = true;
        }
        let edges: Vec<(u32, u32)> = self.edges.iter().map(|&(a, b)| (perm[a as usize] as u32, perm[b as usize] as u32)).collect();
        Self::from_edges(self.n, &edges, self.backend())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn backends_agree() {
        let edges = [(0, 1), (2, 1), (3, 0), (1, 0)];
        let dense = AdjacencyMatrix::from_edges(70, &edges, Backend::Dense).unwrap();
        let sparse = AdjacencyMatrix::from_edges(70, &edges, Backend::Sparse).unwrap();
        assert_eq!(dense.edge_count(), 3);
        for i in 0..70 {
            assert_eq!(dense.degree(i), sparse.degree(i));
            for j in 0..70 {
                assert_eq!(dense.has_edge(i, j), sparse.has_edge(i, j));
                assert_eq!(dense.has_edge(i, j), dense.has_edge(j, i));
            }
            assert!(!dense.has_edge(i, i));
        }
        assert_eq!(dense.with_backend(Backend::Sparse), sparse);
    }

    #[test]
    fn rejects_loops_and_bad_permutations() {
        assert!(AdjacencyMatrix::from_edges(3, &[(1, 1)], Backend::Dense).is_err());
        assert!(AdjacencyMatrix::from_edges(3, &[(1, 3)], Backend::Dense).is_err());
        let g = AdjacencyMatrix::complete(3);
        assert!(g.permuted(&[0, 0, 1]).is_err());
        assert_eq!(g.permuted(&[2, 0, 1]).unwrap(), g);
    }

    #[test]
    fn neighbour_iteration() {
        let g = AdjacencyMatrix::from_edges(130, &[(0, 129), (0, 64), (0, 3)], Backend::Dense).unwrap();
        let mut seen = Vec::new();
        g.for_each_neighbour(0, |j| seen.push(j));
        assert_eq!(seen, vec![3, 64, 129]);
    }
}
