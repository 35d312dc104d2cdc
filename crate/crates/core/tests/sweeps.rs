//! Exhaustive oracle comparisons, inversions and identities on small boxes.

use tableau_core::checks::*;
use tableau_core::enumerate::{reverse_pairs_in_box, shifted_reverse_pairs};
use tableau_core::localalg::{hop, rev_crystal, rev_hop};
use tableau_core::shifted::{inv_shifted_hop, shifted_hop};

fn assert_clean(r: &Report) {
    assert!(r.ok(), "{}: {}\n{}", r.name, r.summary(), r.failures.join("\n"));
}

#[test]
fn type_a_box_counts() {
    // frozen from the brute-force enumeration
    assert_eq!(type_a_sweep(3, 4, 12).len(), 38449);
    assert_eq!(type_b_sweep(4, 8).len(), 1424);
}

#[test]
fn type_a_local_algorithms_match_oracles() {
    assert_clean(&equivalences_a(&type_a_sweep(3, 4, 12)));
}

#[test]
fn type_b_local_algorithms_match_oracles() {
    assert_clean(&equivalences_b(&type_b_sweep(4, 8)));
}

#[test]
fn reverse_algorithms_invert() {
    let pairs = type_a_sweep(3, 4, 9);
    assert_clean(&inversions_a(&pairs));
    assert_clean(&inversions_b(&type_b_sweep(4, 8)));
}

#[test]
fn forward_inverts_reverse() {
    // every reverse input comes from some forward run
    for p in reverse_pairs_in_box(3, 3, 7) {
        let q = rev_hop(&p.inner, &p.outer).unwrap();
        assert_eq!(hop(&q.inner, &q.outer).unwrap().pair, p);
        assert_eq!(rev_crystal(&p.inner, &p.outer).unwrap(), q);
    }
    for p in shifted_reverse_pairs(3, 6) {
        let q = inv_shifted_hop(&p.inner, &p.outer).unwrap();
        assert_eq!(shifted_hop(&q.inner, &q.outer).unwrap().pair, p);
    }
}

#[test]
fn involutions_and_order_four() {
    let (r, witnesses) = involutions(&type_a_sweep(3, 4, 10));
    assert_clean(&r);
    assert!(witnesses > 0);
}

#[test]
fn invariants_hold_on_box() {
    assert_clean(&invariants(&type_a_sweep(3, 4, 10)));
}

#[test]
fn shifted_transition_words_are_dominant() {
    use tableau_core::shifted::{shifted_highest_weight, shifted_rectify, word_is_shifted_lr};
    use tableau_core::Word;
    // rev(w) followed by the highest-weight reading word is an LR word, the
    // type-A dominance condition read backwards
    let mut bad = Vec::new();
    let pairs = type_b_sweep(4, 8);
    for p in &pairs {
        let o = shifted_hop(&p.inner, &p.outer).unwrap();
        let lambda = shifted_rectify(&p.outer).unwrap().0.outer();
        let mut letters = Word::from_values(&o.transition.entries).reversed().0;
        letters.extend(shifted_highest_weight(&lambda).reading_word().0);
        if !word_is_shifted_lr(&Word(letters)) {
            bad.push(p.combined().to_grid());
        }
    }
    assert!(bad.is_empty(), "{} of {} not dominant, e.g.\n{}", bad.len(), pairs.len(), bad[0]);
}
