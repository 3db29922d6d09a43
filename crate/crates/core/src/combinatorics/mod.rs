//! Exact tree-count sequences, walk recursions and limit-cumulant tables.

mod limits;
mod sequences;
mod walks;

pub use limits::{
    free_energy_truncation, limit_cumulant, limit_cumulant_with, CumulantTable, FreeEnergyTruncation,
    LimitEntry, LimitValue, ModelKind, Regime, RegimeTag,
};
pub use sequences::{
    catalan, convolution_identity_check, d_seq, d_seq_direct, d_seq_via_h, h_seq, psi_closed_form,
    rooted_tree_counts, RootedTreeCounts,
};
pub use walks::{sparse_cumulants_from_w_seq, w_seq, walk_census_recurrence, WalkCensus, WalkRecursion};
