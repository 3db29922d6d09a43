//! Agreement between independent routes to the same exact quantity.

use ermm_core::combinatorics::{
    convolution_identity_check, d_seq_direct, d_seq_via_h, rooted_tree_counts, walk_census_recurrence, ModelKind,
    WalkRecursion,
};
use ermm_core::diagrams::{
    brute_force_walk_census, cumulant_via_diagrams, enumerate, sparse_tree_table, DiagramFilter, EnumerationLimits,
};
use ermm_core::num::{int, rat};
use ermm_core::oracle::{
    exact_cumulant, exact_moments_by_graphs, exact_moments_by_tuples, free_partition_closed_form, normalized_partition_identity,
    partition_function, ExactWeights, Potential,
};
use num_bigint::BigUint;
use proptest::prelude::*;

#[test]
fn tree_count_routes_agree() {
    for q in 1..=4 {
        assert_eq!(d_seq_via_h(q, 12).unwrap(), d_seq_direct(q, 12).unwrap(), "q = {q}");
    }
    for q in 2..=4 {
        assert!(convolution_identity_check(q, 10).unwrap());
    }
    let counts = rooted_tree_counts(12).unwrap();
    for m in 1..=12u32 {
        assert_eq!(counts.rooted[m as usize], BigUint::from(2u32).pow(m) * BigUint::from(m + 1).pow(m - 1));
    }
}

#[test]
fn walk_census_recursion_matches_brute_force() {
    let census = walk_census_recurrence(7, WalkRecursion::FirstPassage).unwrap();
    for q in 2..=7 {
        let brute = brute_force_walk_census(q).unwrap();
        assert_eq!(census.totals[q as usize], brute.total, "F_{q}");
        for r in 2..=q {
            assert_eq!(census.root_steps(q, r), brute.root_steps(r), "F_{q}({r})");
        }
        // Walks leaving the root once are the c·F_{q-1} term of the totals.
        let single = &census.totals[q as usize - 1] * &ermm_core::Poly::x();
        assert_eq!(brute.root_steps(1), single, "F_{q}(1)");
    }
}

#[test]
fn printed_recursion_departs_from_brute_force() {
    let printed = walk_census_recurrence(6, WalkRecursion::AsPrinted).unwrap();
    let mismatch = (2..=6).any(|q| printed.totals[q as usize] != brute_force_walk_census(q).unwrap().total);
    assert!(mismatch);
}

#[test]
fn diagram_cumulants_equal_brute_force_cumulants() {
    let limits = EnumerationLimits::default();
    let p = rat(1, 3);
    for n in [4u32, 5] {
        for k in 1..=2u32 {
            let diagrams = cumulant_via_diagrams(ModelKind::Y, 2, k, n as u64, &p, &limits).unwrap();
            let oracle = exact_cumulant(ModelKind::Y, 2, k as usize, n, &p).unwrap();
            assert_eq!(diagrams, oracle, "n = {n}, k = {k}");
        }
    }
}

#[test]
fn moment_routes_agree_on_x_model() {
    let p = rat(2, 5);
    for (q, mmax) in [(3u32, 2usize), (4, 2), (2, 3)] {
        let by_graphs = exact_moments_by_graphs(ModelKind::X, q, mmax, 4, &p).unwrap();
        let by_tuples = exact_moments_by_tuples(ModelKind::X, q, mmax, 4, &p).unwrap();
        assert_eq!(by_graphs, by_tuples, "q = {q}");
    }
}

#[test]
fn partition_function_identities() {
    let x = rat(1, 2);
    let w = ExactWeights::new(x.clone(), int(2)).unwrap();
    for n in 1..=6 {
        assert_eq!(partition_function(n, &w, Potential::None).unwrap(), free_partition_closed_form(n, &x));
    }
    for n in 3..=5 {
        let (lhs, rhs) = normalized_partition_identity(n, &w).unwrap();
        assert_eq!(lhs, rhs, "n = {n}");
    }
}

#[test]
fn unoriented_and_oriented_tree_diagram_counts() {
    let limits = EnumerationLimits::default();
    for (k, expected) in [(1u32, 1u64), (2, 4), (3, 32), (4, 400)] {
        let e = enumerate(ModelKind::Y, 2, k, DiagramFilter::TreeArcs, &limits).unwrap();
        assert_eq!(e.unoriented as u64, expected, "k = {k}");
        assert_eq!(e.oriented as u64, expected << (k - 1), "k = {k}");
    }
    let table = sparse_tree_table(ModelKind::Y, 2, 1, &limits).unwrap();
    assert_eq!((table.count(1, 1), table.count(1, 2)), (1, 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn diagram_cumulants_track_the_oracle_for_any_p(num in 1i64..10, n in 3u32..=4) {
        let p = rat(num, 10);
        let limits = EnumerationLimits::default();
        for k in 1..=2u32 {
            let diagrams = cumulant_via_diagrams(ModelKind::Y, 2, k, n as u64, &p, &limits).unwrap();
            prop_assert_eq!(diagrams, exact_cumulant(ModelKind::Y, 2, k as usize, n, &p).unwrap());
        }
        let diagrams = cumulant_via_diagrams(ModelKind::X, 3, 2, n as u64, &p, &limits).unwrap();
        prop_assert_eq!(diagrams, exact_cumulant(ModelKind::X, 3, 2, n, &p).unwrap());
    }
}
