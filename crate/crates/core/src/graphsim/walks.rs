//! Walk counts `X = Tr A^q` and `Y = 1ᵀ A^q 1`, Laplacian traces, and their streaming variants.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;
use rand_chacha::ChaCha8Rng;

use super::adjacency::{AdjacencyMatrix, Backend};
use super::sampler::{default_backend, for_each_edge, sample_rng};
use crate::combinatorics::ModelKind;

/// Vertex count up to which triangle counting converts the graph to bitset rows.
pub const BITSET_TRIANGLE_LIMIT: usize = 2000;

fn multiply_u128(g: &AdjacencyMatrix, v: &[u128]) -> Option<Vec<u128>> {
    let mut out = vec![0u128; v.len()];
    for &(a, b) in g.edges() {
        let (a, b) = (a as usize, b as usize);
        out[a] = out[a].checked_add(v[b])?;
        out[b] = out[b].checked_add(v[a])?;
    }
    Some(out)
}

fn multiply_big(g: &AdjacencyMatrix, v: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); v.len()];
    for &(a, b) in g.edges() {
        let (a, b) = (a as usize, b as usize);
        out[a] += &v[b];
        out[b] += &v[a];
    }
    out
}

/// `1ᵀ A^q 1`, the number of length-`q` walks.
pub fn y_count(g: &AdjacencyMatrix, q: u32) -> BigUint {
    match q {
        0 => return BigUint::from(g.n()),
        1 => return BigUint::from(2 * g.edge_count()),
        2 => return g.degrees().iter().map(|&d| BigUint::from(d * d)).sum(),
        _ => {}
    }
    let (h, rest) = (q / 2, q % 2);
    // 1ᵀA^q1 = |A^h 1|² when q = 2h, and ⟨A^h 1, A^{h+1} 1⟩ otherwise.
    let mut v = vec![1u128; g.n()];
    let mut ok = true;
    for _ in 0..h {
        match multiply_u128(g, &v) {
            Some(next) => v = next,
            None => {
                ok = false;
                break;
            }
        }
    }
    if ok {
        let w = if rest == 1 { multiply_u128(g, &v) } else { Some(v.clone()) };
        if let Some(w) = w {
            let mut total = 0u128;
            let mut fits = true;
            for (a, b) in v.iter().zip(&w) {
                match a.checked_mul(*b).and_then(|t| total.checked_add(t)) {
                    Some(t) => total = t,
                    None => {
                        fits = false;
                        break;
                    }
                }
            }
            if fits {
                return BigUint::from(total);
            }
        }
    }
    let mut v = vec![BigUint::from(1u8); g.n()];
    for _ in 0..h {
        v = multiply_big(g, &v);
    }
    let w = if rest == 1 { multiply_big(g, &v) } else { v.clone() };
    v.iter().zip(&w).map(|(a, b)| a * b).sum()
}

/// Six times the triangle count.
pub fn closed_three_walks(g: &AdjacencyMatrix) -> BigUint {
    let mut common: u64 = 0;
    if g.n() <= BITSET_TRIANGLE_LIMIT {
        let dense;
        let g = if g.backend() == Backend::Dense {
            g
        } else {
            dense = g.with_backend(Backend::Dense);
            &dense
        };
        for &(a, b) in g.edges() {
            let (ra, rb) = (g.row_bits(a as usize).unwrap(), g.row_bits(b as usize).unwrap());
            common += ra.iter().zip(rb).map(|(x, y)| (x & y).count_ones() as u64).sum::<u64>();
        }
    } else {
        let sparse;
        let g = if g.backend() == Backend::Sparse {
            g
        } else {
            sparse = g.with_backend(Backend::Sparse);
            &sparse
        };
        for &(a, b) in g.edges() {
            let (na, nb) = (g.neighbour_slice(a as usize).unwrap(), g.neighbour_slice(b as usize).unwrap());
            let (mut i, mut j) = (0, 0);
            while i < na.len() && j < nb.len() {
                match na[i].cmp(&nb[j]) {
                    core::cmp::Ordering::Less => i += 1,
                    core::cmp::Ordering::Greater => j += 1,
                    core::cmp::Ordering::Equal => {
                        common += 1;
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }
    // Each triangle is seen once from each of its three edges; X = 6 · triangles.
    BigUint::from(2 * common)
}

fn apply_sparse_u128(g: &AdjacencyMatrix, v: &[(usize, u128)], scratch: &mut [u128], touched: &mut Vec<usize>) -> Option<Vec<(usize, u128)>> {
    touched.clear();
    for &(i, x) in v {
        let mut overflow = false;
        g.for_each_neighbour(i, |j| {
            if scratch[j] == 0 {
                touched.push(j);
            }
            match scratch[j].checked_add(x) {
                Some(s) => scratch[j] = s,
                None => overflow = true,
            }
        });
        if overflow {
            for &j in touched.iter() {
                scratch[j] = 0;
            }
            return None;
        }
    }
    touched.sort_unstable();
    let out = touched.iter().map(|&j| (j, core::mem::take(&mut scratch[j]))).collect();
    Some(out)
}

/// `Tr A^q`, the number of closed length-`q` walks.
pub fn x_count(g: &AdjacencyMatrix, q: u32) -> BigUint {
    match q {
        0 => return BigUint::from(g.n()),
        1 => return BigUint::zero(),
        2 => return BigUint::from(2 * g.edge_count()),
        3 => return closed_three_walks(g),
        _ => {}
    }
    // (A^q)_{ii} = ⟨A^a e_i, A^b e_i⟩ with a + b = q.
    let (b, a) = (q / 2, q - q / 2);
    let n = g.n();
    let mut scratch = vec![0u128; n];
    let mut touched = Vec::new();
    let mut total = BigUint::zero();
    let mut fast_total = 0u128;
    for i in 0..n {
        let mut v: Vec<(usize, u128)> = vec![(i, 1)];
        let mut lower = None;
        let mut failed = false;
        for step in 1..=a {
            match apply_sparse_u128(g, &v, &mut scratch, &mut touched) {
                Some(next) => v = next,
                None => {
                    failed = true;
                    break;
                }
            }
            if step == b {
                lower = Some(v.clone());
            }
        }
        if !failed {
            let lower = if b == 0 { vec![(i, 1)] } else { lower.unwrap() };
            let mut dot = 0u128;
            let mut j = 0;
            for &(idx, x) in &v {
                while j < lower.len() && lower[j].0 < idx {
                    j += 1;
                }
                if j < lower.len() && lower[j].0 == idx {
                    match x.checked_mul(lower[j].1).and_then(|t| dot.checked_add(t)) {
                        Some(t) => dot = t,
                        None => {
                            failed = true;
                            break;
                        }
                    }
                }
            }
            if !failed {
                match fast_total.checked_add(dot) {
                    Some(t) => fast_total = t,
                    None => {
                        total += BigUint::from(fast_total);
                        fast_total = dot;
                    }
                }
                continue;
            }
        }
        let mut e = vec![BigUint::zero(); n];
        e[i] = BigUint::from(1u8);
        let mut low = e.clone();
        for step in 1..=a {
            e = multiply_big(g, &e);
            if step == b {
                low = e.clone();
            }
        }
        total += e.iter().zip(&low).map(|(x, y)| x * y).sum::<BigUint>();
    }
    total + BigUint::from(fast_total)
}

/// Walk statistic for the chosen model.
pub fn walk_count(g: &AdjacencyMatrix, model: ModelKind, q: u32) -> BigUint {
    match model {
        ModelKind::X => x_count(g, q),
        ModelKind::Y => y_count(g, q),
    }
}

/// `(Tr Δ, Tr Δ²)` for the graph Laplacian `Δ = D − A`.
pub fn laplacian_stats(g: &AdjacencyMatrix) -> (u64, u128) {
    let degrees = g.degrees();
    let trace: u64 = degrees.iter().sum();
    let square: u128 = degrees.iter().map(|&d| (d as u128) * (d as u128)).sum::<u128>() + 2 * g.edge_count() as u128;
    (trace, square)
}

/// Samples graph `index` of a run and returns its walk statistic.
///
/// Statistics that depend only on degrees are accumulated while edges stream
/// out of the generator, so no adjacency structure is built for them.
pub fn sample_walk_count(n: usize, p: f64, seed: u64, index: u64, model: ModelKind, q: u32) -> BigUint {
    let mut rng: ChaCha8Rng = sample_rng(seed, index);
    let streaming = q <= 2;
    if streaming {
        match (model, q) {
            (_, 0) => return BigUint::from(n),
            (ModelKind::X, 1) => return BigUint::zero(),
            (ModelKind::X, 2) | (ModelKind::Y, 1) => {
                let mut edges = 0u64;
                for_each_edge(n, p, &mut rng, |_, _| edges += 1);
                return BigUint::from(2 * edges);
            }
            _ => {
                let mut deg = vec![0u64; n];
                for_each_edge(n, p, &mut rng, |i, j| {
                    deg[i as usize] += 1;
                    deg[j as usize] += 1;
                });
                return BigUint::from(deg.iter().map(|&d| (d as u128) * (d as u128)).sum::<u128>());
            }
        }
    }
    let mut edges = Vec::new();
    for_each_edge(n, p, &mut rng, |i, j| edges.push((i, j)));
    let g = AdjacencyMatrix::from_sorted_edges(n, edges, default_backend(p));
    walk_count(&g, model, q)
}

/// Checks that `X`, `Y` (for `q ≤ qmax`), the edge count and the Laplacian traces are unchanged by relabeling.
pub fn permutation_invariance_check(g: &AdjacencyMatrix, perm: &[usize], qmax: u32) -> crate::Result<bool> {
    let h = g.permuted(perm)?;
    if g.edge_count() != h.edge_count() || laplacian_stats(g) != laplacian_stats(&h) {
        return Ok(false);
    }
    for q in 0..=qmax {
        if x_count(g, q) != x_count(&h, q) || y_count(g, q) != y_count(&h, q) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphsim::sampler::sample_er_indexed;

    fn dense_power_counts(g: &AdjacencyMatrix, q: u32) -> (u128, u128) {
        let n = g.n();
        let a: Vec<Vec<u128>> = (0..n).map(|i| (0..n).map(|j| g.has_edge(i, j) as u128).collect()).collect();
        let mut m: Vec<Vec<u128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u128).collect()).collect();
        for _ in 0..q {
            m = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| m[i][k] * a[k][j]).sum()).collect()).collect();
        }
        let trace = (0..n).map(|i| m[i][i]).sum();
        let total = m.iter().flatten().sum();
        (trace, total)
    }

    #[test]
    fn matches_dense_matrix_powers() {
        for (idx, p) in [0.2, 0.5, 0.03].into_iter().enumerate() {
            let g = sample_er_indexed(12, p, 3, idx as u64);
            for backend in [Backend::Dense, Backend::Sparse] {
                let g = g.with_backend(backend);
                for q in 0..=7 {
                    let (trace, total) = dense_power_counts(&g, q);
                    assert_eq!(x_count(&g, q), BigUint::from(trace), "X q={q}");
                    assert_eq!(y_count(&g, q), BigUint::from(total), "Y q={q}");
                }
            }
        }
    }

    #[test]
    fn complete_graph_counts() {
        // K_n: Tr A^3 = n(n-1)(n-2), 1ᵀA^q1 = n(n-1)^q
        let g = AdjacencyMatrix::complete(6);
        assert_eq!(x_count(&g, 3), BigUint::from(120u32));
        assert_eq!(y_count(&g, 5), BigUint::from(6u32 * 3125));
    }

    #[test]
    fn big_fallback_agrees() {
        // 1ᵀA^q1 on K_40 with q = 26 overflows u128 (40 · 39^26 ≈ 9e42).
        let g = AdjacencyMatrix::complete(40);
        let expected = BigUint::from(40u32) * BigUint::from(39u32).pow(26);
        assert_eq!(y_count(&g, 26), expected);
        let trace_expected = BigUint::from(39u32).pow(26) + BigUint::from(39u32); // (n-1)^q + (n-1)(-1)^q
        assert_eq!(x_count(&g, 26), trace_expected);
    }

    #[test]
    fn streaming_matches_materialised() {
        for p in [0.01, 0.2] {
            for (model, q) in [(ModelKind::Y, 1), (ModelKind::Y, 2), (ModelKind::X, 2), (ModelKind::X, 3), (ModelKind::Y, 3)] {
                let g = sample_er_indexed(150, p, 9, 2);
                assert_eq!(sample_walk_count(150, p, 9, 2, model, q), walk_count(&g, model, q));
            }
        }
    }

    #[test]
    fn laplacian_and_permutations() {
        let g = sample_er_indexed(30, 0.2, 1, 0);
        let (t, s) = laplacian_stats(&g);
        assert_eq!(t as usize, 2 * g.edge_count());
        assert!(s >= t as u128);
        let perm: Vec<usize> = (0..30).map(|i| (7 * i + 3) % 30).collect();
        assert!(permutation_invariance_check(&g, &perm, 5).unwrap());
    }
}
