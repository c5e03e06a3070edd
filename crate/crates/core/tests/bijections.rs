//! Maps between trees, diagrams, forests and signed sequences.

use std::collections::BTreeSet;

use excseq::bijections::{self, beta, beta_inverse, chi, chi_inverse, full_chain, full_chain_inverse, theta, theta_inverse};
use excseq::chord::{self, ChordSequence};
use excseq::forest::{self, AugmentedTree, RootedForest, RootedTree};
use excseq::hereditary::{cn_cat, Module};
use excseq::signed::Signed;
use excseq::tube::{self, TubeObject};
use excseq::verify::signed_tube_sequences;

fn signed_tube(m: usize, items: &[(usize, usize, bool)]) -> Vec<Signed<TubeObject>> {
    items.iter().map(|&(i, j, s)| Signed { obj: TubeObject::brick(m, i, j), shifted: s }).collect()
}

fn modules(items: &[(usize, usize, bool)]) -> Vec<Signed<Module>> {
    items.iter().map(|&(i, j, s)| Signed { obj: Module::new(i, j), shifted: s }).collect()
}

fn bricks(m: usize, pairs: &[(usize, usize)]) -> Vec<TubeObject> {
    pairs.iter().map(|&(i, j)| TubeObject::brick(m, i, j)).collect()
}

#[test]
fn hasse_tree_of_the_four_point_diagram() {
    let d = ChordSequence::from_pairs(4, &[(3, 0), (3, 3), (1, 2), (1, 3)]).unwrap();
    let t = bijections::hasse_tree(&d).unwrap();
    assert_eq!(t.tree.forest().parents(), &[2, 0, 4, 2]);
    assert_eq!(t.epsilon, 3);
    assert_eq!(bijections::diagram_from_tree(&t).unwrap(), d);
}

#[test]
fn single_vertex_tree_is_a_loop() {
    let t = AugmentedTree::new(RootedTree::from_parents(vec![0]).unwrap(), 0);
    let d = ChordSequence::from_pairs(1, &[(0, 0)]).unwrap();
    assert_eq!(bijections::hasse_tree(&d).unwrap(), t);
    assert_eq!(bijections::diagram_from_tree(&t).unwrap(), d);
}

#[test]
fn forest_of_the_four_point_tube_sequence() {
    let seq = bricks(4, &[(3, 0), (1, 2), (1, 3)]);
    let f = bijections::forest_of_complete_tube_sequence(&seq).unwrap();
    assert_eq!(f.forest, RootedForest::new(vec![0, 3, 0]).unwrap());
    assert_eq!(f.epsilon_map(), vec![0, 3, 3, 1]);
    assert_eq!(bijections::tube_sequence_of_forest(&f).unwrap(), seq);
    assert_eq!(bijections::rel_projective_combinatorial(&seq).unwrap(), vec![false, true, false]);
    let two = bijections::forest_of_complete_tube_sequence(&bricks(2, &[(0, 1)])).unwrap();
    assert_eq!(two.forest.len(), 1);
}

#[test]
fn tree_to_diagram_is_a_bijection() {
    for n in 1..=5 {
        let images: BTreeSet<ChordSequence> = forest::enumerate_augmented_trees(n)
            .map(|t| {
                let d = bijections::diagram_from_tree(&t).unwrap();
                assert!(d.is_pointed() && chord::is_valid_sequence(&d));
                assert_eq!(bijections::hasse_tree(&d).unwrap(), t);
                d
            })
            .collect();
        assert_eq!(images.len(), chord::enumerate_pointed(n).count());
    }
}

#[test]
fn tube_sequences_to_forests_is_a_bijection() {
    for n in 2..=5 {
        let forests: BTreeSet<_> = tube::enumerate_tube_sequences(n, n - 1, false)
            .unwrap()
            .map(|s| {
                let f = bijections::forest_of_complete_tube_sequence(&s).unwrap();
                assert_eq!(bijections::tube_sequence_of_forest(&f).unwrap(), s);
                f
            })
            .collect();
        assert_eq!(forests.len(), forest::enumerate_augmented_forests(n).count());
    }
}

#[test]
fn combinatorial_criterion_matches_the_oracle() {
    for n in 2..=4 {
        let l = tube::default_length_bound(n);
        for s in tube::enumerate_tube_sequences(n, n - 1, false).unwrap() {
            let proj: Vec<bool> = (1..n).map(|j| tube::is_rel_projective_oracle(&s, j, l).unwrap()).collect();
            let inj: Vec<bool> = (1..n).map(|j| tube::is_rel_injective_oracle(&s, j, l).unwrap()).collect();
            assert_eq!(bijections::rel_projective_combinatorial(&s).unwrap(), proj);
            assert_eq!(bijections::rel_injective_combinatorial(&s).unwrap(), inj);
            assert!(proj.iter().zip(&inj).all(|(p, i)| !(p & i)));
        }
    }
}

#[test]
fn first_signed_chain_example() {
    let s = signed_tube(4, &[(1, 2, true), (1, 3, false), (0, 1, false)]);
    let r = theta(&s).unwrap();
    assert_eq!(r, bricks(4, &[(2, 3), (0, 3), (0, 1)]));
    let b = beta(3, &r).unwrap();
    assert_eq!(b, modules(&[(2, 0, false), (0, 0, false), (0, 1, false)]));
    let cat = cn_cat(3).unwrap();
    let x = chi(&cat, &b).unwrap();
    assert_eq!(x, modules(&[(1, 2, true), (1, 1, false), (0, 1, false)]));
    assert_eq!(full_chain(&s).unwrap(), x);
    assert_eq!(full_chain_inverse(3, &x).unwrap(), s);
}

#[test]
fn second_signed_chain_example() {
    let s = signed_tube(4, &[(3, 0, false), (1, 2, true), (1, 3, false)]);
    let r = theta(&s).unwrap();
    assert_eq!(r, bricks(4, &[(1, 0), (2, 3), (1, 3)]));
    let x = full_chain(&s).unwrap();
    assert_eq!(x, modules(&[(0, 0, true), (1, 2, true), (1, 0, false)]));
    assert_eq!(full_chain_inverse(3, &x).unwrap(), s);
}

/// The chain does not preserve the number of shifted terms: one shift on the
/// tube side becomes two.
#[test]
fn full_chain_can_change_the_number_of_shifts() {
    let s = signed_tube(4, &[(3, 0, false), (1, 2, true), (1, 3, false)]);
    let x = full_chain(&s).unwrap();
    assert_eq!(s.iter().filter(|t| t.shifted).count(), 1);
    assert_eq!(x.iter().filter(|t| t.shifted).count(), 2);
    let y = full_chain(&signed_tube(2, &[(1, 0, false)])).unwrap();
    assert_eq!(y, modules(&[(0, 0, true)]));
}

#[test]
fn full_chain_is_a_bijection_onto_signed_cn_sequences() {
    for n in 1..=3 {
        let cat = cn_cat(n).unwrap();
        for k in 1..=n {
            let sources = signed_tube_sequences(n + 1, k).unwrap();
            let mut images = BTreeSet::new();
            for s in &sources {
                let x = full_chain(s).unwrap();
                let r = theta(s).unwrap();
                assert_eq!(theta_inverse(&r).unwrap(), *s);
                let b = beta(n, &r).unwrap();
                assert_eq!(beta_inverse(n, &b).unwrap(), r);
                assert_eq!(chi_inverse(&cat, &x).unwrap(), b);
                assert_eq!(full_chain_inverse(n, &x).unwrap(), *s);
                images.insert(x);
            }
            assert_eq!(images.len(), sources.len());
            let targets: BTreeSet<Vec<Signed<Module>>> = cat
                .signed_sequences(k)
                .unwrap()
                .map(|s| s.into_iter().map(|t| Signed { obj: cat.module(t.obj), shifted: t.shifted }).collect())
                .collect();
            assert_eq!(images, targets, "n={n} k={k}");
        }
    }
}

#[test]
fn invalid_signed_tube_sequences_are_rejected() {
    let bad = signed_tube(4, &[(3, 0, true), (1, 2, false), (1, 3, false)]);
    assert!(bijections::check_signed_tube(&bad).is_err());
    let not_exc = signed_tube(4, &[(1, 3, false), (1, 2, false)]);
    assert!(bijections::check_signed_tube(&not_exc).is_err());
}
