//! Restricted-growth encoding of index walks and the brute-force census of tree walks.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::error::{resource, usage};
use crate::num::{int, Poly};
use crate::Result;

/// Largest walk length accepted by [`brute_force_walk_census`].
pub const MAX_CENSUS_STEPS: u32 = 11;

/// Letters of a walk, introduced in order of first appearance (`0` is the root `ρ`, `1` is `ν`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Walk {
    letters: Vec<u8>,
}

impl Walk {
    /// Wraps a letter sequence, checking it is restricted-growth and starts with `0, 1`.
    pub fn from_letters(letters: Vec<u8>) -> Result<Self> {
        if letters.len() < 2 || letters[0] != 0 || letters[1] != 1 {
            return Err(usage!("a walk starts with the letters 0, 1"));
        }
        let mut next = 0u8;
        for &l in &letters {
            if l > next {
                return Err(usage!("letters must be introduced in order"));
            }
            if l == next {
                next += 1;
            }
        }
        Ok(Walk { letters })
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn steps(&self) -> usize {
        self.letters.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.letters.iter().copied().max().map_or(0, |m| m as usize + 1)
    }

    /// Distinct undirected edges traversed, in order of first traversal.
    pub fn edges(&self) -> Vec<(u8, u8)> {
        let mut out: Vec<(u8, u8)> = Vec::new();
        for w in self.letters.windows(2) {
            let e = (w[0].min(w[1]), w[0].max(w[1]));
            if !out.contains(&e) {
                out.push(e);
            }
        }
        out
    }

    /// True when the traversed graph is a tree (every step is along a genuine edge).
    pub fn is_tree(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1]) && self.edges().len() + 1 == self.vertex_count()
    }

    /// Number of steps that start or end at the root.
    pub fn root_steps(&self) -> u32 {
        self.letters.windows(2).filter(|w| w[0] == 0 || w[1] == 0).count() as u32
    }
}

/// Encodes an index sequence as a walk by first-appearance relabeling.
pub fn walk_encode(indices: &[u64]) -> Result<Walk> {
    let mut seen: Vec<u64> = Vec::new();
    let mut letters = Vec::with_capacity(indices.len());
    for &i in indices {
        let letter = match seen.iter().position(|&s| s == i) {
            Some(pos) => pos,
            None => {
                seen.push(i);
                seen.len() - 1
            }
        };
        letters.push(letter as u8);
    }
    Walk::from_letters(letters)
}

/// Tree walks of `q` steps grouped by root-step count `r`, each weighted by `c^{l-1}`
/// for a tree with `l` edges.
#[derive(Clone, Debug, PartialEq)]
pub struct BruteWalkCensus {
    pub q: u32,
    pub by_root_steps: BTreeMap<u32, Poly>,
    pub total: Poly,
}

impl BruteWalkCensus {
    /// Weighted count for `r` root steps (zero if none).
    pub fn root_steps(&self, r: u32) -> Poly {
        self.by_root_steps.get(&r).cloned().unwrap_or_else(Poly::zero)
    }

    /// Unweighted `f_q(r)`.
    pub fn count(&self, r: u32) -> u64 {
        self.root_steps(r).eval(&int(1)).to_integer().to_u64().unwrap_or(0)
    }
}

/// Enumerates every restricted-growth walk of `q` steps without repeated consecutive letters.
pub fn brute_force_walk_census(q: u32) -> Result<BruteWalkCensus> {
    if q == 0 {
        return Err(usage!("walks need at least one step"));
    }
    if q > MAX_CENSUS_STEPS {
        return Err(resource!("brute-force walk census limited to q <= {MAX_CENSUS_STEPS}"));
    }
    let mut by_root: BTreeMap<u32, Vec<i64>> = BTreeMap::new();
    let mut letters = vec![0u8, 1u8];
    fn rec(letters: &mut Vec<u8>, q: usize, max: u8, by_root: &mut BTreeMap<u32, Vec<i64>>) {
        if letters.len() == q + 1 {
            let walk = Walk { letters: letters.clone() };
            if walk.is_tree() {
                let l = walk.edges().len();
                let row = by_root.entry(walk.root_steps()).or_insert_with(|| vec![0; q]);
                row[l - 1] += 1;
            }
            return;
        }
        let prev = *letters.last().unwrap();
        for x in 0..=max + 1 {
            if x == prev {
                continue;
            }
            letters.push(x);
            rec(letters, q, max.max(x), by_root);
            letters.pop();
        }
    }
    rec(&mut letters, q as usize, 1, &mut by_root);
    let by_root_steps: BTreeMap<u32, Poly> =
        by_root.into_iter().map(|(r, row)| (r, Poly::from_ints(&row))).collect();
    let total = by_root_steps.values().fold(Poly::zero(), |acc, p| &acc + p);
    Ok(BruteWalkCensus { q, by_root_steps, total })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encoding_is_relabeling_invariant() {
        let a = walk_encode(&[5, 9, 5, 7]).unwrap();
        let b = walk_encode(&[1, 2, 1, 3]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.letters(), &[0, 1, 0, 2]);
        assert_eq!(a.root_steps(), 3);
        assert!(walk_encode(&[3, 3]).is_err());
    }

    #[test]
    fn two_and_three_step_census() {
        let two = brute_force_walk_census(2).unwrap();
        assert_eq!(two.count(2), 1);
        assert_eq!(two.count(1), 1);
        assert_eq!(two.total, Poly::from_ints(&[1, 1]));
        let three = brute_force_walk_census(3).unwrap();
        assert_eq!(three.count(2), 0);
    }

    #[test]
    fn odd_walks_never_touch_root_an_even_number_of_times() {
        for l in 1..=3u32 {
            let census = brute_force_walk_census(2 * l + 1).unwrap();
            for s in 1..=l + 1 {
                assert_eq!(census.count(2 * s), 0, "f_{}({})", 2 * l + 1, 2 * s);
            }
        }
    }
}
