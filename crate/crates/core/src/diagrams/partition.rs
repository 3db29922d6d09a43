//! Set partitions of `{0..k}` stored as block bitmasks.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::resource;
use crate::Result;

/// Largest `k` whose partitions are enumerated (Bell(8) = 4140).
pub const MAX_PARTITION_SIZE: usize = 8;

/// A partition of `{0..k}` into disjoint, covering blocks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition {
    blocks: Vec<u32>,
}

impl SetPartition {
    /// Builds a partition from block masks; `None` unless the blocks are nonempty, disjoint and cover `{0..k}`.
    pub fn from_blocks(k: usize, blocks: Vec<u32>) -> Option<Self> {
        let full = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
        let mut seen = 0u32;
        for &b in &blocks {
            if b == 0 || b & seen != 0 || b & !full != 0 {
                return None;
            }
            seen |= b;
        }
        (seen == full).then_some(SetPartition { blocks })
    }

    /// The one-block partition.
    pub fn trivial(k: usize) -> Self {
        SetPartition { blocks: vec![(1u32 << k) - 1] }
    }

    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// All partitions of `{0..k}` in restricted-growth order.
pub fn set_partitions(k: usize) -> Result<Vec<SetPartition>> {
    if k > MAX_PARTITION_SIZE {
        return Err(resource!("set partitions of {k} elements exceed the cap of {MAX_PARTITION_SIZE}"));
    }
    let mut out = Vec::new();
    let mut blocks: Vec<u32> = Vec::new();
    fn rec(i: usize, k: usize, blocks: &mut Vec<u32>, out: &mut Vec<SetPartition>) {
        if i == k {
            out.push(SetPartition { blocks: blocks.clone() });
            return;
        }
        for b in 0..blocks.len() {
            blocks[b] |= 1 << i;
            rec(i + 1, k, blocks, out);
            blocks[b] &= !(1 << i);
        }
        blocks.push(1 << i);
        rec(i + 1, k, blocks, out);
        blocks.pop();
    }
    rec(0, k, &mut blocks, &mut out);
    Ok(out)
}

/// `(-1)^{s-1} (s-1)!`, the Möbius coefficient of a partition with `s` blocks.
pub fn mobius_coefficient(blocks: usize) -> i64 {
    let magnitude: i64 = (1..blocks as i64).product();
    if blocks % 2 == 1 {
        magnitude
    } else {
        -magnitude
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..=8).map(|k| set_partitions(k).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203, 877, 4140]);
        assert!(set_partitions(9).is_err());
    }

    #[test]
    fn partitions_are_valid() {
        for p in set_partitions(5).unwrap() {
            assert!(SetPartition::from_blocks(5, p.blocks().to_vec()).is_some());
        }
        assert!(SetPartition::from_blocks(2, vec![1, 1]).is_none());
        assert!(SetPartition::from_blocks(2, vec![1]).is_none());
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius_coefficient(1), 1);
        assert_eq!(mobius_coefficient(2), -1);
        assert_eq!(mobius_coefficient(3), 2);
        assert_eq!(mobius_coefficient(4), -6);
    }
}
