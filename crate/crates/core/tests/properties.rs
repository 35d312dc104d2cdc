use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use tableau_core::checks::COPLACTIC;
use tableau_core::enumerate::semistandard_fillings;
use tableau_core::instances::{content, random_pair, rect_shape, slide_cells, slide_pair, step_bound};
use tableau_core::jdt::{self, CornerPolicy};
use tableau_core::localalg::*;
use tableau_core::shifted::{shifted_coswitch, shifted_hop, shifted_pesh};
use tableau_core::switching::{coswitch, evacuate_pair, pesh, switch};
use tableau_core::{Entry, Partition, SkewShape, Tableau, TableauPair, Word};

fn pair(seed: u64) -> TableauPair {
    random_pair(&mut StdRng::seed_from_u64(seed), 3, 4, 9)
}

fn letters() -> impl Strategy<Value = Vec<(i32, bool)>> {
    prop::collection::vec((1..4i32, any::<bool>()), 0..10)
}

fn tableau_in(shape: &str, seed: u64) -> Option<Tableau> {
    let o: Partition = shape.parse().unwrap();
    let all = semistandard_fillings(&SkewShape::new(o, Partition::empty(), false).unwrap(), 3);
    (!all.is_empty()).then(|| all[seed as usize % all.len()].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn standardization_is_a_permutation(v in prop::collection::vec(1..5i32, 0..12)) {
        let w = Word::from_values(&v);
        let s = w.standardize().unwrap().values().unwrap();
        let mut sorted = s.clone();
        sorted.sort();
        prop_assert_eq!(sorted, (1..=v.len() as i32).collect::<Vec<_>>());
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                prop_assert_eq!(v[i] <= v[j], s[i] < s[j]);
            }
        }
    }

    #[test]
    fn canonical_form_is_idempotent(l in letters()) {
        let w = Word(l.iter().map(|&(v, p)| Entry::num(v).with_primed(p)).collect());
        let c = w.canonical_form();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.canonical_form(), c);
    }

    #[test]
    fn word_evacuation_is_an_involution(v in prop::collection::vec(1..5i32, 0..9)) {
        let w = Word::from_values(&v);
        let e = jdt::evacuate_word(&w, Some(4)).unwrap();
        prop_assert_eq!(jdt::evacuate_word(&e, Some(4)).unwrap(), w);
    }

    #[test]
    fn rsk_round_trips(v in prop::collection::vec(1..5i32, 0..10)) {
        let w = Word::from_values(&v);
        let (p, q) = jdt::rsk(&w).unwrap();
        prop_assert!(p.is_semistandard() && q.is_standard());
        prop_assert_eq!(jdt::inverse_rsk(&p, &q).unwrap(), w);
    }

    #[test]
    fn rectification_ignores_corner_order(seed in any::<u64>()) {
        let p = pair(seed);
        let u = Tableau::union(&tableau_core::switching::unmark(&p.inner), &p.outer).unwrap();
        let (a, _) = jdt::rectify_with(&u, CornerPolicy::BottomRight);
        let (b, _) = jdt::rectify_with(&u, CornerPolicy::TopLeft);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn evacuation_is_an_involution(shape in prop::sample::select(vec!["(3,2)", "(2,2,1)", "(4,1)", "(3,1,1)"]), seed in any::<u64>()) {
        if let Some(t) = tableau_in(shape, seed) {
            let e = jdt::evacuate_rectified_with(&t, 3).unwrap();
            prop_assert!(e.is_semistandard());
            prop_assert_eq!(jdt::evacuate_rectified_with(&e, 3).unwrap(), t);
        }
    }

    #[test]
    fn hop_is_pesh_and_stays_under_the_bound(seed in any::<u64>()) {
        let p = pair(seed);
        let o = hop(&p.inner, &p.outer).unwrap();
        prop_assert_eq!(&o.pair, &pesh(&p).unwrap());
        prop_assert!(o.trace.total_steps() <= step_bound(&rect_shape(&p.inner), &content(&p.outer)));
        prop_assert!(is_lambda_dominant(&transition_word(&o.transition), &content(&p.outer)));
    }

    #[test]
    fn identities(seed in any::<u64>()) {
        let p = pair(seed);
        prop_assert_eq!(switch(&switch(&p).unwrap()).unwrap(), p.clone());
        prop_assert_eq!(coswitch(&coswitch(&p).unwrap()).unwrap(), p.clone());
        prop_assert_eq!(evacuate_pair(&evacuate_pair(&p).unwrap()).unwrap(), p.clone());
        let mut q = p.clone();
        for _ in 0..4 {
            q = pesh(&q).unwrap();
        }
        prop_assert_eq!(q, p);
    }

    #[test]
    fn bijections_commute_with_slides(seed in any::<u64>(), pick in any::<usize>()) {
        let p = pair(seed);
        let cells = slide_cells(&p);
        let cell = cells[pick % cells.len()];
        for (name, f) in COPLACTIC {
            let left = f(&slide_pair(&p, cell).unwrap()).unwrap();
            let right = slide_pair(&f(&p).unwrap(), cell).unwrap();
            prop_assert_eq!(left, right, "{} at {:?}", name, cell);
        }
    }

    #[test]
    fn staggered_phase_one_agrees(seed in any::<u64>(), choices in prop::collection::vec(any::<usize>(), 64)) {
        let p = pair(seed);
        let plain = hop_phase1_tableau(&p.inner, &p.outer).unwrap();
        let mut k = 0;
        let staggered = hop_phase1_staggered(&p.inner, &p.outer, |_| {
            k += 1;
            choices[k % choices.len()]
        })
        .unwrap();
        prop_assert_eq!(staggered, plain);
    }

    #[test]
    fn transition_word_rebuilds_a_pair(seed in any::<u64>()) {
        let p = pair(seed);
        let o = hop(&p.inner, &p.outer).unwrap();
        let (s, td) = hop_phase1_tableau(&p.inner, &p.outer).unwrap();
        prop_assert_eq!(&td, &o.transition);
        let q = pair_from_transition(&s, &content(&p.outer), &transition_word(&td)).unwrap();
        prop_assert_eq!(hop(&q.inner, &q.outer).unwrap().transition, td);
        prop_assert_eq!(content(&q.outer), content(&p.outer));
        prop_assert!(jdt::dual_equivalent(&tableau_core::switching::unmark(&q.combined()), &tableau_core::switching::unmark(&p.combined())).unwrap());
    }

    #[test]
    fn numeric_inner_tableaux_follow_standardization(seed in any::<u64>()) {
        // a numeric X runs through its standardization
        let p = pair(seed);
        let x = tableau_core::switching::unmark(&p.inner);
        let a = hop(&x, &p.outer).unwrap();
        let b = hop(&p.inner, &p.outer).unwrap();
        prop_assert_eq!(a.transition, b.transition);
        prop_assert_eq!(a.pair.inner, b.pair.inner);
    }
}

#[test]
fn shifted_sweep_small_agrees_with_oracles() {
    for p in tableau_core::enumerate::shifted_pairs(3, 6) {
        let h = shifted_hop(&p.inner, &p.outer).unwrap().pair;
        assert_eq!(h, shifted_pesh(&p).unwrap());
        assert!(shifted_coswitch(&shifted_coswitch(&p).unwrap()).unwrap() == p);
    }
}
