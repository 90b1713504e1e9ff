mod common;

use common::*;
use proptest::prelude::*;
use trotter_core::{c64, commutator, heisenberg_1d, multiply_strings, to_dense, Error, PauliString, PauliSum};

const AXES: [char; 4] = ['I', 'X', 'Y', 'Z'];

fn string_of(n: usize, code: u32) -> String {
    (0..n).map(|q| AXES[((code >> (2 * q)) & 3) as usize]).collect()
}

fn arb_string(n: usize) -> impl Strategy<Value = String> {
    (0u32..(1 << (2 * n))).prop_map(move |c| string_of(n, c))
}

fn arb_terms(n: usize) -> impl Strategy<Value = Vec<(c64, String)>> {
    prop::collection::vec(((-2.0f64..2.0), (-2.0f64..2.0), arb_string(n)), 1..6)
        .prop_map(|v| v.into_iter().map(|(re, im, s)| (c64::new(re, im), s)).collect())
}

fn sum_of(n: usize, terms: &[(c64, String)]) -> PauliSum {
    let parsed: Vec<(c64, PauliString)> = terms.iter().map(|(c, s)| (*c, s.parse().unwrap())).collect();
    PauliSum::from_terms(n, parsed).unwrap()
}

fn arb_pair() -> impl Strategy<Value = (usize, Vec<(c64, String)>, Vec<(c64, String)>)> {
    (1usize..=3).prop_flat_map(|n| (Just(n), arb_terms(n), arb_terms(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn densified_commutator_matches_matrix_commutator((n, a, b) in arb_pair()) {
        let (ma, mb) = (pauli_sum_matrix(n, &a), pauli_sum_matrix(n, &b));
        let want = add(&matmul(&ma, &mb), &matmul(&mb, &ma), c64::new(-1.0, 0.0));
        let sym = commutator(&sum_of(n, &a), &sum_of(n, &b)).unwrap();
        let got = from_library(&to_dense(&sym).unwrap());
        prop_assert!(max_diff(&got, &want) <= 1e-12);
    }

    #[test]
    fn densification_is_kronecker_expansion((n, a, _b) in arb_pair()) {
        let got = from_library(&to_dense(&sum_of(n, &a)).unwrap());
        prop_assert!(max_diff(&got, &pauli_sum_matrix(n, &a)) <= 1e-14);
    }

    #[test]
    fn string_products_associate_through_densification(
        (n, p, q, s) in (1usize..=4).prop_flat_map(|n| (Just(n), arb_string(n), arb_string(n), arb_string(n)))
    ) {
        let (pp, qq, ss): (PauliString, PauliString, PauliString) =
            (p.parse().unwrap(), q.parse().unwrap(), s.parse().unwrap());
        let (c1, pq) = multiply_strings(&pp, &qq).unwrap();
        let (c2, left) = multiply_strings(&pq, &ss).unwrap();
        let (c3, qs) = multiply_strings(&qq, &ss).unwrap();
        let (c4, right) = multiply_strings(&pp, &qs).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!((c1 * c2 - c3 * c4).norm() < 1e-15);

        let dense = matmul(&matmul(&pauli_string_matrix(&p), &pauli_string_matrix(&q)), &pauli_string_matrix(&s));
        let symbolic = scale(&pauli_string_matrix(&left.to_string()), c1 * c2);
        prop_assert!(max_diff(&dense, &symbolic) <= 1e-15);
        let _ = n;
    }

    #[test]
    fn real_sums_densify_to_hermitian_matrices((n, a, _b) in arb_pair()) {
        let real: Vec<(c64, String)> = a.into_iter().map(|(c, s)| (c64::new(c.re, 0.0), s)).collect();
        let d = to_dense(&sum_of(n, &real)).unwrap();
        prop_assert!(d.hermiticity_defect() <= 1e-14);
    }
}

#[test]
fn xx_times_zi() {
    let (phase, r) = multiply_strings(&"XX".parse().unwrap(), &"ZI".parse().unwrap()).unwrap();
    assert_eq!(r.to_string(), "YX");
    assert_eq!(phase, c64::new(0.0, -1.0));
    let dense = matmul(&pauli_string_matrix("XX"), &pauli_string_matrix("ZI"));
    assert!(max_diff(&dense, &scale(&pauli_string_matrix("YX"), phase)) == 0.0);
}

#[test]
fn heisenberg_even_part_for_two_sites() {
    let m = heisenberg_1d(2, &[0.0, 0.0]).unwrap();
    assert!(m.h2.is_empty());
    let got = from_library(&to_dense(&m.h1).unwrap());
    let want = ["XX", "YY", "ZZ"]
        .iter()
        .fold(zeros(4), |acc, s| add(&acc, &pauli_string_matrix(s), c64::new(1.0, 0.0)));
    assert!(max_diff(&got, &want) <= 1e-15);
    let diag: Vec<f64> = (0..4).map(|i| got[i][i].re).collect();
    assert_eq!(diag, vec![1.0, -1.0, -1.0, 1.0]);
    assert_eq!(got[1][2], c64::new(2.0, 0.0));
}

#[test]
fn dense_cap_is_a_resource_error() {
    let big = PauliSum::parse(15, &["ZIIIIIIIIIIIIII"]).unwrap();
    assert!(matches!(to_dense(&big), Err(Error::Resource(_))));
}

#[test]
fn mismatched_lengths_are_input_errors() {
    let a: PauliString = "XI".parse().unwrap();
    let b: PauliString = "Z".parse().unwrap();
    assert!(matches!(multiply_strings(&a, &b), Err(Error::Input(_))));
    let sa = PauliSum::parse(2, &["XI"]).unwrap();
    let sb = PauliSum::parse(1, &["Z"]).unwrap();
    assert!(commutator(&sa, &sb).is_err());
}
