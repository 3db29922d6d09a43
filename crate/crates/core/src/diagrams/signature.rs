//! Depth-first enumeration of canonical coincidence signatures.
//!
//! A signature assigns a restricted-growth label to every vertex slot of the `k`
//! elements; two slots share a label exactly when their indices coincide. Labelings
//! that put equal labels on the two ends of an element edge are skipped because the
//! adjacency matrix has a zero diagonal.

use alloc::vec;
use alloc::vec::Vec;

use crate::combinatorics::ModelKind;

/// Slot geometry of `k` elements with `q` edges each.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub model: ModelKind,
    pub q: u32,
    pub k: u32,
    pub slots_per_element: usize,
    /// Endpoints (slot indices) of edge `l * q + j`.
    pub edges: Vec<(usize, usize)>,
    /// Edges whose later endpoint is the given slot.
    closing: Vec<Vec<usize>>,
}

impl Layout {
    pub fn new(model: ModelKind, q: u32, k: u32) -> Self {
        let r = model.slots_per_element(q);
        let q_us = q as usize;
        let mut edges = Vec::with_capacity(q_us * k as usize);
        for l in 0..k as usize {
            let base = l * r;
            for j in 0..q_us {
                let a = base + j;
                let b = match model {
                    ModelKind::Y => base + j + 1,
                    ModelKind::X => base + (j + 1) % q_us,
                };
                edges.push((a, b));
            }
        }
        let mut closing = vec![Vec::new(); r * k as usize];
        for (e, &(a, b)) in edges.iter().enumerate() {
            closing[a.max(b)].push(e);
        }
        Layout { model, q, k, slots_per_element: r, edges, closing }
    }

    pub fn slots(&self) -> usize {
        self.slots_per_element * self.k as usize
    }
}

/// Visits every loop-free restricted-growth labeling that uses at most `max_labels`
/// labels and can still reach at least `min_labels` labels.
pub(crate) fn for_each_signature(
    layout: &Layout,
    max_labels: usize,
    min_labels: usize,
    visit: &mut dyn FnMut(&[u8]),
) {
    let total = layout.slots();
    let mut labels = vec![0u8; total];
    if total == 0 {
        visit(&labels);
        return;
    }
    recurse(layout, &mut labels, 0, 0, max_labels, min_labels, visit);
}

fn recurse(
    layout: &Layout,
    labels: &mut [u8],
    slot: usize,
    used: usize,
    max_labels: usize,
    min_labels: usize,
    visit: &mut dyn FnMut(&[u8]),
) {
    let total = labels.len();
    if slot == total {
        visit(labels);
        return;
    }
    let ceiling = (used + 1).min(max_labels);
    for label in 0..ceiling {
        let new_used = used.max(label + 1);
        if new_used + (total - slot - 1) < min_labels {
            continue;
        }
        labels[slot] = label as u8;
        let loop_free = layout.closing[slot]
            .iter()
            .all(|&e| {
                let (a, b) = layout.edges[e];
                labels[a] != labels[b]
            });
        if loop_free {
            recurse(layout, labels, slot + 1, new_used, max_labels, min_labels, visit);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(model: ModelKind, q: u32, k: u32) -> usize {
        let layout = Layout::new(model, q, k);
        let mut n = 0;
        for_each_signature(&layout, usize::MAX, 0, &mut |_| n += 1);
        n
    }

    #[test]
    fn single_path_signatures() {
        // (0,1,0) and (0,1,2)
        assert_eq!(count(ModelKind::Y, 2, 1), 2);
        // loop-free colourings of a 3-cycle up to relabeling: only all-distinct
        assert_eq!(count(ModelKind::X, 3, 1), 1);
        assert_eq!(count(ModelKind::X, 1, 1), 0);
    }

    #[test]
    fn label_cap_and_floor() {
        let layout = Layout::new(ModelKind::Y, 2, 1);
        let mut seen = Vec::new();
        for_each_signature(&layout, 2, 0, &mut |s| seen.push(s.to_vec()));
        assert_eq!(seen, vec![vec![0, 1, 0]]);
        seen.clear();
        for_each_signature(&layout, usize::MAX, 3, &mut |s| seen.push(s.to_vec()));
        assert_eq!(seen, vec![vec![0, 1, 2]]);
    }
}
