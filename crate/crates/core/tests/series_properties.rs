use ermm_core::num::{int, rat};
use ermm_core::series::{solve_fixed_point, solve_h_series, solve_lagrange, psi_from_h, Series};
use ermm_core::combinatorics::{h_seq, psi_closed_form};
use ermm_core::Rational;
use proptest::prelude::*;

const ORDER: usize = 7;

fn series_without_constant() -> impl Strategy<Value = Series> {
    proptest::collection::vec((-6i64..=6, 1i64..=4), ORDER).prop_map(|pairs| {
        let mut coeffs = vec![int(0)];
        coeffs.extend(pairs.into_iter().map(|(n, d)| rat(n, d)));
        Series::from_coeffs(coeffs, ORDER)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exp_turns_sums_into_products(a in series_without_constant(), b in series_without_constant()) {
        let lhs = a.try_add(&b).unwrap().exp().unwrap();
        let rhs = a.exp().unwrap().try_mul(&b.exp().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fixed_point_of_exp_map_is_idempotent(a in series_without_constant()) {
        // S = exp(z·a·S) raises the valuation at every step.
        let z = Series::z(ORDER);
        let za = z.try_mul(&a).unwrap();
        let map = |s: &Series| za.try_mul(s).and_then(|t| t.exp());
        let fp = solve_fixed_point(ORDER, map).unwrap();
        prop_assert_eq!(map(&fp.series).unwrap(), fp.series.clone());
        prop_assert!(fp.iterations <= ORDER + 1);
    }

    #[test]
    fn lagrange_inverse_satisfies_its_equation(tail in series_without_constant()) {
        let phi = Series::one(ORDER).try_add(&tail).unwrap();
        let psi = solve_lagrange(&phi).unwrap();
        let rhs = Series::z(ORDER).try_mul(&phi.compose(&psi).unwrap()).unwrap();
        prop_assert_eq!(psi, rhs);
    }
}

#[test]
fn h_series_agrees_with_tabulated_sequence() {
    for q in 1..=4u32 {
        let h = solve_h_series(q, 10).unwrap();
        let table = h_seq(q, 10).unwrap();
        for (k, value) in table.iter().enumerate() {
            assert_eq!(h.coeff(k), value, "q = {q}, k = {k}");
        }
        let psi = psi_from_h(&h, q).unwrap();
        let closed: Vec<Rational> = psi_closed_form(q, 10);
        for (k, value) in closed.iter().enumerate() {
            assert_eq!(psi.coeff(k), value, "psi q = {q}, k = {k}");
        }
    }
}

#[test]
fn non_contracting_map_is_reported() {
    let err = solve_fixed_point(4, |s: &Series| Ok(s.scale(&int(2)))).unwrap_err();
    assert!(matches!(err, ermm_core::Error::Solver(_)));
}
