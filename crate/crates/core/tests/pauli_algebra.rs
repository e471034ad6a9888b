mod common;

use common::*;
use csvqe::pauli::{greedy_qwc_cover, PauliString, PauliSum, PRUNE_TOLERANCE};
use proptest::prelude::*;
use rand::Rng;

fn p(s: &str) -> PauliString {
    s.parse().unwrap()
}

#[test]
fn single_qubit_product_phase() {
    let prod = p("XI").multiply(&p("ZI")).unwrap();
    assert_eq!(prod.label(), "YI");
    assert_eq!(prod.phase().power(), 3);
    for w in all_words(2) {
        let sq = w.multiply(&w).unwrap();
        assert!(sq.is_identity() && sq.phase().power() == 0);
    }
}

#[test]
fn products_match_dense_exhaustive_three_qubits() {
    for n in 1..=3 {
        let words = all_words(n);
        for a in &words {
            for b in &words {
                let prod = a.multiply(b).unwrap();
                let dense = pauli_matrix(a) * pauli_matrix(b);
                assert!(max_abs_diff(&pauli_matrix(&prod), &dense) < 1e-12, "{a} * {b}");
                let comm = &dense - pauli_matrix(b) * pauli_matrix(a);
                let norm: f64 = comm.iter().map(|z| z.norm()).sum();
                assert_eq!(a.commutes(b).unwrap(), norm < 1e-12, "{a} vs {b}");
            }
        }
    }
}

#[test]
fn products_and_commutation_random_five_qubits() {
    let mut r = rng(11);
    for _ in 0..200 {
        let a = random_word(&mut r, 5);
        let b = random_word(&mut r, 5);
        let dense = pauli_matrix(&a) * pauli_matrix(&b);
        assert!(max_abs_diff(&pauli_matrix(&a.multiply(&b).unwrap()), &dense) < 1e-12);
        let comm = &dense - pauli_matrix(&b) * pauli_matrix(&a);
        assert_eq!(a.commutes(&b).unwrap(), comm.norm() < 1e-12);
    }
    let z = p("ZZZYY");
    assert!(max_abs_diff(&pauli_matrix(&z.multiply(&z).unwrap()), &CMat::identity(32, 32)) < 1e-12);
}

#[test]
fn commutation_examples() {
    assert!(p("XX").commutes(&p("ZZ")).unwrap());
    assert!(!p("XI").commutes(&p("ZI")).unwrap());
    assert!(p("XI").qubitwise_commutes(&p("IZ")).unwrap());
    assert!(!p("XX").qubitwise_commutes(&p("ZZ")).unwrap());
    assert!(p("XX").commutes(&p("XXX")).is_err());
}

fn random_sum<R: Rng>(r: &mut R, n: usize, terms: usize) -> PauliSum<f64> {
    let mut h = PauliSum::new(n);
    for _ in 0..terms {
        h.add_term(random_word(r, n), r.random_range(-1.0..1.0)).unwrap();
    }
    h
}

#[test]
fn commutator_matches_dense() {
    let mut r = rng(5);
    for n in 1..=3 {
        for pw in all_words(n) {
            let h = random_sum(&mut r, n, 6);
            let hm = sum_matrix(&h);
            let pm = pauli_matrix(&pw);
            let expect = (&hm * &pm - &pm * &hm) * c(0.0, 1.0);
            assert!(max_abs_diff(&sum_matrix(&h.commutator(&pw).unwrap()), &expect) < 1e-10);
        }
    }
    for _ in 0..200 {
        let h = random_sum(&mut r, 5, 10);
        let pw = random_nonidentity(&mut r, 5);
        let hm = sum_matrix(&h);
        let pm = pauli_matrix(&pw);
        let expect = (&hm * &pm - &pm * &hm) * c(0.0, 1.0);
        assert!(max_abs_diff(&sum_matrix(&h.commutator(&pw).unwrap()), &expect) < 1e-10);
    }
}

#[test]
fn greedy_cover_reconstructs_and_groups() {
    let mut r = rng(8);
    for _ in 0..50 {
        let h = random_sum(&mut r, 4, 15);
        let cover = greedy_qwc_cover(&h);
        cover.validate().unwrap();
        assert_eq!(cover.to_pauli_sum(4).unwrap(), h);
    }
}

fn word(n: usize) -> impl Strategy<Value = PauliString> {
    proptest::collection::vec(0usize..4, n)
        .prop_map(|v| v.into_iter().map(|k| ['I', 'X', 'Y', 'Z'][k]).collect::<String>().parse().unwrap())
}

proptest! {
    #[test]
    fn label_round_trip(a in word(5)) {
        prop_assert_eq!(a.label().parse::<PauliString>().unwrap(), a);
        prop_assert_eq!(a.n_qubits(), 5);
    }

    #[test]
    fn product_is_associative_and_commutes_predicate_is_symmetric(a in word(5), b in word(5), c in word(5)) {
        let l = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let r = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        prop_assert_eq!(a.commutes(&b).unwrap(), b.commutes(&a).unwrap());
        if a.qubitwise_commutes(&b).unwrap() {
            prop_assert!(a.commutes(&b).unwrap());
        }
    }

    #[test]
    fn sums_prune_and_merge(coeffs in proptest::collection::vec(-1.0f64..1.0, 1..8), a in word(3)) {
        let mut h = PauliSum::new(3);
        let total: f64 = coeffs.iter().sum();
        for &x in &coeffs {
            h.add_term(a, x).unwrap();
        }
        prop_assert!(h.len() <= 1);
        if total.abs() > 1e-9 {
            prop_assert!((h.coefficient(&a) - total).abs() < 1e-12);
        }
        h.add_term(a, -h.coefficient(&a)).unwrap();
        prop_assert!(h.is_empty());
        prop_assert!(h.iter().all(|(_, c)| c.abs() > PRUNE_TOLERANCE));
    }
}
