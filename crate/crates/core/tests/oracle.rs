mod common;

use common::brute_force_dimension;
use dimlab::corpus::{all_posets, RandomPosets};
use dimlab::order::{subposet, Poset};
use dimlab::solver::{dimension, dimension_via_components, SearchBudget};

fn solver_dim(p: &Poset) -> usize {
    let r = dimension(p, SearchBudget::default()).unwrap();
    assert!(r.certificate.is_realizer_of(p));
    assert_eq!(r.certificate.len(), r.value.max(1));
    r.value
}

#[test]
fn oracle_knows_the_standard_values() {
    use dimlab::order::*;
    assert_eq!(brute_force_dimension(&standard_example(3).unwrap()), 3);
    assert_eq!(brute_force_dimension(&boolean_lattice(2).unwrap()), 2);
    assert_eq!(brute_force_dimension(&antichain(4).unwrap()), 2);
    assert_eq!(brute_force_dimension(&chain(4).unwrap()), 1);
    assert_eq!(brute_force_dimension(&chain(1).unwrap()), 0);
}

#[test]
fn solver_matches_oracle_on_every_small_poset() {
    for n in 1..=6 {
        for p in all_posets(n).unwrap() {
            let want = brute_force_dimension(&p);
            assert_eq!(solver_dim(&p), want, "{}", p.hasse_listing());
            assert_eq!(dimension_via_components(&p, SearchBudget::default()).unwrap().value, want);
        }
    }
}

#[test]
fn solver_matches_oracle_on_random_seven_element_posets() {
    let mut gen = RandomPosets::new(11);
    for _ in 0..40 {
        let p = gen.sized(7..=7);
        assert_eq!(solver_dim(&p), brute_force_dimension(&p), "{}", p.hasse_listing());
    }
}

#[test]
fn dimension_is_monotone_on_subposets() {
    for n in 2..=5 {
        for p in all_posets(n).unwrap() {
            let d = solver_dim(&p);
            for drop in 0..n {
                let keep: Vec<usize> = (0..n).filter(|&i| i != drop).collect();
                assert!(solver_dim(&subposet(&p, &keep).unwrap()) <= d);
            }
        }
    }
}
