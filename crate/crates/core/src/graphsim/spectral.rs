//! Moments of the normalised eigenvalue counting measure, computed from traces.

use alloc::vec::Vec;

use super::adjacency::AdjacencyMatrix;
use super::walks::x_count;
use crate::error::usage;
use crate::num::{big, to_f64};
use crate::Result;

/// `M_q = n^{-1} Tr (A/√c)^q` for `q = 1..=qmax`.
pub fn spectral_moments(g: &AdjacencyMatrix, c: f64, qmax: u32) -> Result<Vec<f64>> {
    if !(c > 0.0) {
        return Err(usage!("spectral moments need c > 0"));
    }
    if g.n() == 0 {
        return Err(usage!("spectral moments of an empty vertex set"));
    }
    Ok((1..=qmax)
        .map(|q| to_f64(&big(&x_count(g, q))) / (g.n() as f64 * libm::pow(c, q as f64 / 2.0)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_complete_graphs() {
        assert_eq!(spectral_moments(&AdjacencyMatrix::empty(5), 2.0, 4).unwrap(), [0.0; 4]);
        // K_4 with c = 3: Tr A² = 12, Tr A³ = 24.
        let m = spectral_moments(&AdjacencyMatrix::complete(4), 3.0, 3).unwrap();
        assert_eq!(m[0], 0.0);
        assert!((m[1] - 1.0).abs() < 1e-12);
        assert!((m[2] - 24.0 / (4.0 * libm::pow(3.0, 1.5))).abs() < 1e-12);
        assert!(spectral_moments(&AdjacencyMatrix::empty(5), 0.0, 2).is_err());
    }
}
