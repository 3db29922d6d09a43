//! Reproducible Erdős–Rényi sampling on ChaCha8 streams.
//!
//! Sample `i` of a run with master seed `s` reads the ChaCha8 stream
//! `seed_from_u64(s)` with stream id `i`, so every sample is a pure function of
//! `(s, i, n, p)` and the order in which workers draw samples is irrelevant.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{Rng, SeedableRng};

use super::adjacency::{AdjacencyMatrix, Backend};

/// Below this edge probability pairs are skipped geometrically instead of tested one by one.
pub const GEOMETRIC_THRESHOLD: f64 = 0.05;

/// Generator for sample `index` of the run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn unit_open(rng: &mut ChaCha8Rng) -> f64 {
    // (0, 1]: never returns zero, so the logarithm below is finite.
    ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Calls `visit(i, j)` (with `i < j`, in increasing pair order) for every edge of a `G(n, p)` draw.
pub fn for_each_edge(n: usize, p: f64, rng: &mut ChaCha8Rng, mut visit: impl FnMut(u32, u32)) {
    if n < 2 || p <= 0.0 {
        return;
    }
    if p >= 1.0 {
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                visit(i, j);
            }
        }
        return;
    }
    if p >= GEOMETRIC_THRESHOLD {
        let threshold = (p * 18_446_744_073_709_551_616.0) as u64;
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                if rng.next_u64() < threshold {
                    visit(i, j);
                }
            }
        }
        return;
    }
    let total = (n as u64) * (n as u64 - 1) / 2;
    let log_q = libm::log1p(-p);
    let mut i = 0u64;
    let mut row_end = n as u64 - 1;
    let mut row_start = 0u64;
    let mut pos = 0u64;
    loop {
        let skip = libm::floor(libm::log(unit_open(rng)) / log_q);
        if !(skip < (total - pos) as f64) {
            return;
        }
        pos += skip as u64;
        if pos >= total {
            return;
        }
        while pos >= row_end {
            i += 1;
            row_start = row_end;
            row_end += n as u64 - 1 - i;
        }
        let j = i + 1 + (pos - row_start);
        visit(i as u32, j as u32);
        pos += 1;
    }
}

/// Backend used for a sampled graph: dense bitsets when `p > GEOMETRIC_THRESHOLD`.
pub fn default_backend(p: f64) -> Backend {
    if p > GEOMETRIC_THRESHOLD {
        Backend::Dense
    } else {
        Backend::Sparse
    }
}

/// Sample `index` of the run seeded with `seed`.
pub fn sample_er_indexed(n: usize, p: f64, seed: u64, index: u64) -> AdjacencyMatrix {
    let mut rng = sample_rng(seed, index);
    let mut edges = Vec::new();
    for_each_edge(n, p, &mut rng, |i, j| edges.push((i, j)));
    AdjacencyMatrix::from_sorted_edges(n, edges, default_backend(p))
}

/// One `G(n, p)` draw, reproducible for a fixed `(seed, n, p)`.
pub fn sample_er(n: usize, p: f64, seed: u64) -> AdjacencyMatrix {
    sample_er_indexed(n, p, seed, 0)
}
