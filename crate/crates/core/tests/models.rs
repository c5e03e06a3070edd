//! Chord diagrams, the tube and the categories of type `C` and `A`.

use excseq::chord::{self, central_region, complete_diagram, noncrossing_pair, Chord, ChordSequence, Mode};
use excseq::hereditary::{cn_cat, CatData, Module};
use excseq::signed::Signed;
use excseq::tube::{self, TubeObject};
use num_rational::Ratio;
use proptest::prelude::*;

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn g(i: usize, j: usize) -> Chord {
    Chord::new(i, j)
}

fn bricks(n: usize, pairs: &[(usize, usize)]) -> Vec<TubeObject> {
    pairs.iter().map(|&(i, j)| TubeObject::brick(n, i, j)).collect()
}

fn idx(cat: &CatData, pairs: &[(usize, usize)]) -> Vec<usize> {
    pairs.iter().map(|&(i, j)| cat.index_of(Module::new(i, j)).unwrap()).collect()
}

#[test]
fn chord_supports() {
    assert_eq!(g(3, 0).support(4).to_vec(), vec![3]);
    assert_eq!(g(1, 3).support(4).to_vec(), vec![1, 2]);
    assert_eq!(g(3, 3).support(4).to_vec(), vec![0, 1, 2, 3]);
}

#[test]
fn noncrossing_pair_cases() {
    assert!(noncrossing_pair(g(1, 2), g(1, 3), 4));
    assert!(!noncrossing_pair(g(1, 3), g(1, 2), 4));
    assert!(noncrossing_pair(g(3, 0), g(3, 3), 4));
    assert!(!noncrossing_pair(g(3, 3), g(3, 0), 4));
    for k in 0..4 {
        for l in 0..4 {
            assert!(!noncrossing_pair(g(k, k), g(l, l), 4));
        }
    }
}

#[test]
fn noncrossing_pair_is_rotation_invariant() {
    for n in 1..=8 {
        for a in 0..n * n {
            for b in 0..n * n {
                let (x, y) = (Chord::from_index(n, a), Chord::from_index(n, b));
                let p = noncrossing_pair(x, y, n);
                for t in 0..n as i64 {
                    assert_eq!(p, noncrossing_pair(x.rotate(n, t), y.rotate(n, t), n));
                }
            }
        }
    }
}

#[test]
fn noncrossing_pairs_agree_with_module_and_tube_oracles() {
    for n in 1..=5 {
        let cat = cn_cat(n).unwrap();
        for x in 0..n * n {
            for y in 0..n * n {
                let (mx, my) = (cat.module(x), cat.module(y));
                let chords = noncrossing_pair(g(mx.i, mx.j), g(my.i, my.j), n);
                assert_eq!(cat.exceptional_pair(x, y), chords, "{mx} {my}");
                let (vx, vy) = (TubeObject::brick(n, mx.i, mx.j), TubeObject::brick(n, my.i, my.j));
                assert_eq!(tube::soft_exceptional_pair(&vx, &vy).unwrap(), chords, "{vx} {vy}");
            }
        }
    }
}

#[test]
fn four_point_sequences() {
    let soft = ChordSequence::from_pairs(4, &[(3, 0), (3, 3), (1, 2), (1, 3)]).unwrap();
    assert!(chord::is_valid_sequence(&soft));
    let plain = ChordSequence::from_pairs(4, &[(3, 0), (1, 2), (1, 3)]).unwrap();
    assert!(chord::is_valid_sequence(&plain));
    assert_eq!(central_region(&plain).unwrap().to_vec(), vec![0]);
    assert!(!chord::is_valid_sequence(&ChordSequence::from_pairs(4, &[(1, 2), (2, 1)]).unwrap()));
    let ext = complete_diagram(&plain, Mode::WithLoops).unwrap();
    assert_eq!(ext.len(), 4);
    assert!(ext.is_pointed() && chord::is_valid_sequence(&ext));
    assert_eq!(ext.items[..3], plain.items[..]);
}

#[test]
fn central_region_of_small_sequences() {
    let empty = ChordSequence::from_pairs(5, &[]).unwrap();
    assert_eq!(central_region(&empty).unwrap().to_vec(), vec![0, 1, 2, 3, 4]);
    let one = ChordSequence::from_pairs(5, &[(1, 3)]).unwrap();
    assert_eq!(central_region(&one).unwrap().to_vec(), vec![0, 3, 4]);
}

#[test]
fn chord_counts_match_closed_forms() {
    for n in 1..=6u64 {
        for k in 0..n {
            let oriented = chord::enumerate_sequences(n as usize, k as usize, Mode::ChordsOnly).unwrap().count() as u64;
            assert_eq!(oriented, binom(n - 1, k) * n.pow(k as u32), "oriented n={n} k={k}");
            if k >= 1 {
                let unoriented = chord::count_unoriented_diagrams(n as usize, k as usize).unwrap() as u64;
                assert_eq!(unoriented, binom(n, k + 1) * n.pow(k as u32 - 1), "unoriented n={n} k={k}");
            }
        }
        assert_eq!(chord::enumerate_pointed(n as usize).count() as u64, n.pow(n as u32));
    }
    assert_eq!(chord::enumerate_sequences(2, 1, Mode::ChordsOnly).unwrap().count(), 2);
    assert!(chord::enumerate_sequences(3, 3, Mode::ChordsOnly).is_err());
}

/// Marked points on the boundary of the region: ends of its arcs and ends of
/// the outermost chords, which bound it.
fn corners(s: &ChordSequence, region: &[usize]) -> Vec<usize> {
    let n = s.n;
    let mut out: Vec<usize> = region.iter().flat_map(|&a| [a, (a + 1) % n]).collect();
    for g in &s.items {
        let sup = g.support(n);
        if !s.items.iter().any(|h| h != g && sup.is_subset(&h.support(n))) {
            out.extend([g.i, g.j]);
        }
    }
    out
}

#[test]
fn every_sequence_extends_and_loops_sit_in_the_central_region() {
    for n in 1..=5 {
        for k in 0..=n {
            for s in chord::enumerate_sequences(n, k, Mode::WithLoops).unwrap() {
                let full = complete_diagram(&s, Mode::WithLoops).unwrap();
                assert_eq!(full.len(), n);
                assert_eq!(full.items[..k], s.items[..]);
                if let Some(p) = s.loop_position() {
                    let point = s.items[p - 1].i;
                    let rest = ChordSequence::new(n, s.items.iter().filter(|c| !c.is_loop()).copied().collect()).unwrap();
                    let region = central_region(&rest).unwrap();
                    assert!(corners(&rest, &region.to_vec()).contains(&point), "{s}");
                }
            }
        }
    }
}

#[test]
fn tube_sequence_counts() {
    for n in 1..=5u64 {
        for k in 0..n {
            let exc = tube::enumerate_tube_sequences(n as usize, k as usize, false).unwrap().count() as u64;
            assert_eq!(exc, binom(n - 1, k) * n.pow(k as u32));
        }
        for k in 0..=n {
            let soft = tube::enumerate_tube_sequences(n as usize, k as usize, true).unwrap().count() as u64;
            assert_eq!(soft, binom(n, k) * n.pow(k as u32));
        }
    }
    assert_eq!(tube::enumerate_tube_sequences(4, 3, false).unwrap().count(), 64);
}

#[test]
fn complete_soft_sequences_have_one_nonrigid_term() {
    for n in 1..=5 {
        for s in tube::enumerate_tube_sequences(n, n, true).unwrap() {
            assert_eq!(s.iter().filter(|v| !v.is_rigid()).count(), 1);
        }
    }
}

#[test]
fn four_point_tube_sequences() {
    assert!(tube::is_soft_sequence(&bricks(4, &[(3, 0), (3, 3), (1, 2), (1, 3)])).unwrap());
    let seq = bricks(4, &[(3, 0), (1, 2), (1, 3)]);
    assert!(tube::is_exceptional_sequence(&seq).unwrap());
    let l = tube::default_length_bound(4);
    let proj: Vec<bool> = (1..=3).map(|j| tube::is_rel_projective_oracle(&seq, j, l).unwrap()).collect();
    assert_eq!(proj, vec![false, true, false]);
    let v = TubeObject::brick(4, 0, 0);
    assert!(tube::ext_nonzero(&v, &v) && !v.is_rigid());
    for k in 0..4 {
        for l in 0..4 {
            assert!(!tube::soft_exceptional_pair(&TubeObject::brick(4, k, k), &TubeObject::brick(4, l, l)).unwrap());
        }
    }
}

#[test]
fn last_term_of_a_complete_tube_sequence_is_not_relatively_projective() {
    for n in 2..=5 {
        let l = tube::default_length_bound(n);
        for s in tube::enumerate_tube_sequences(n, n - 1, false).unwrap() {
            assert!(!tube::is_rel_projective_oracle(&s, n - 1, l).unwrap());
        }
    }
}

#[test]
fn empty_perp_is_everything() {
    assert_eq!(tube::perp_indecomposables(&[], 3, 3).len(), 9);
}

#[test]
fn cn_has_n_squared_indecomposables() {
    for n in 1..=6 {
        assert_eq!(cn_cat(n).unwrap().len(), n * n);
    }
}

#[test]
fn cn_dimension_vectors() {
    let cat = cn_cat(4).unwrap();
    let d = |i, j| cat.dim(cat.index_of(Module::new(i, j)).unwrap()).to_vec();
    assert_eq!(d(0, 0), vec![2, 2, 2, 1]);
    assert_eq!(d(1, 3), vec![0, 1, 1, 0]);
    assert_eq!(d(1, 1), vec![0, 2, 2, 1]);
}

#[test]
fn cn_translate_rotates_indices() {
    for n in 1..=5 {
        let cat = cn_cat(n).unwrap();
        for x in 0..cat.len() {
            let m = cat.module(x);
            match cat.tau(x) {
                None => assert_eq!(m.i, 0, "{m} should be projective"),
                Some(y) => assert_eq!(cat.module(y), Module::new(m.i - 1, (m.j + n - 1) % n)),
            }
        }
    }
}

fn mat_mul(a: &[Vec<Ratio<i64>>], b: &[Vec<Ratio<i64>>]) -> Vec<Vec<Ratio<i64>>> {
    let n = a.len();
    (0..n).map(|r| (0..n).map(|c| (0..n).map(|t| a[r][t] * b[t][c]).sum()).collect()).collect()
}

#[test]
fn coxeter_transformation_has_order_twice_the_rank() {
    for n in 2..=6 {
        let cat = cn_cat(n).unwrap();
        let phi = cat.coxeter_matrix();
        let id: Vec<Vec<Ratio<i64>>> = (0..n).map(|r| (0..n).map(|c| Ratio::from((r == c) as i64)).collect()).collect();
        let mut p = id.clone();
        for e in 1..=2 * n {
            p = mat_mul(&p, &phi);
            assert_eq!(p == id, e == 2 * n, "n={n} power {e}");
        }
    }
}

#[test]
fn exceptional_pair_examples() {
    let cat = cn_cat(2).unwrap();
    let i = |a, b| cat.index_of(Module::new(a, b)).unwrap();
    assert!(cat.exceptional_pair(i(0, 1), i(0, 0)));
    for x in 0..cat.len() {
        assert!(!cat.exceptional_pair(x, x));
    }
    assert_eq!(cat.perp(&[i(0, 0)]), vec![i(0, 1)]);
}

#[test]
fn cn_sequence_counts() {
    for n in 1..=4u64 {
        let cat = cn_cat(n as usize).unwrap();
        for k in 0..=n {
            assert_eq!(cat.enumerate_sequences(k as usize).unwrap().count() as u64, binom(n, k) * n.pow(k as u32));
        }
    }
    assert_eq!(cn_cat(3).unwrap().enumerate_sequences(3).unwrap().count(), 27);
    assert_eq!(cn_cat(4).unwrap().enumerate_sequences(2).unwrap().count(), 96);
}

#[test]
fn an_sequence_counts() {
    for m in 1..=5u64 {
        let cat = CatData::type_a(m as usize).unwrap();
        for k in 0..=m {
            let expected = if k == 0 { 1 } else { binom(m + 1, k + 1) * (m + 1).pow(k as u32 - 1) };
            assert_eq!(cat.enumerate_sequences(k as usize).unwrap().count() as u64, expected, "m={m} k={k}");
        }
    }
}

#[test]
fn signed_cn_counts() {
    let fact = |x: u64| (1..=x).product::<u64>();
    for n in 1..=4u64 {
        let cat = cn_cat(n as usize).unwrap();
        for k in 0..=n {
            let count = cat.signed_sequences(k as usize).unwrap().count() as u64;
            assert_eq!(count, fact(n + k) / (fact(k) * fact(n - k)), "n={n} k={k}");
        }
        assert_eq!(cat.signed_sequences(1).unwrap().count() as u64, n * (n + 1));
    }
    assert_eq!(cn_cat(3).unwrap().signed_sequences(3).unwrap().count(), 120);
}

#[test]
fn relative_projectivity_examples() {
    let cat = cn_cat(3).unwrap();
    for s in cat.enumerate_sequences(3).unwrap() {
        assert!(cat.is_rel_projective(&s, 1).unwrap());
    }
    assert!(cat.is_rel_projective(&idx(&cat, &[(0, 0)]), 1).unwrap());
    assert!(!cat.is_rel_projective(&idx(&cat, &[(1, 1)]), 1).unwrap());
}

#[test]
fn perpendicular_types() {
    let c2 = cn_cat(2).unwrap();
    let t = c2.classify_perp_type(&idx(&c2, &[(0, 0)])).unwrap();
    assert_eq!((t.mu, t.lambda), (0, vec![1]));
    for n in 2..=5 {
        let cat = cn_cat(n).unwrap();
        let s = idx(&cat, &[(0, 0)]);
        let t = cat.classify_perp_type(&s).unwrap();
        assert_eq!((t.mu, t.lambda), (0, vec![n - 1]));
        assert_eq!(cat.perp(&s).len(), (n - 1) * n / 2);
    }
    let c3 = cn_cat(3).unwrap();
    for s in c3.enumerate_sequences(3).unwrap() {
        let t = c3.classify_perp_type(&s).unwrap();
        assert_eq!((t.mu, t.lambda), (0, vec![0, 0, 0]));
    }
}

#[test]
fn cluster_ext_orthogonality() {
    let cat = cn_cat(3).unwrap();
    let i = |a, b| cat.index_of(Module::new(a, b)).unwrap();
    assert!(cat.cluster_ext_orthogonal(Signed::shifted(i(0, 1)), Signed::shifted(i(0, 2))).unwrap());
    for x in 0..cat.len() {
        assert!(cat.cluster_ext_orthogonal(Signed::plain(x), Signed::plain(x)).unwrap());
    }
    let cluster = [i(1, 1), i(2, 0), i(1, 0)];
    for &a in &cluster {
        for &b in &cluster {
            assert!(cat.cluster_ext_orthogonal(Signed::plain(a), Signed::plain(b)).unwrap());
        }
    }
}

fn valid_sequence() -> impl Strategy<Value = ChordSequence> {
    (1usize..=6, any::<u64>()).prop_map(|(n, pick)| {
        let k = (pick % (n as u64 + 1)) as usize;
        let all: Vec<ChordSequence> = chord::enumerate_sequences(n, k, Mode::WithLoops).unwrap().collect();
        all[(pick / 7) as usize % all.len()].clone()
    })
}

proptest! {
    #[test]
    fn rotation_preserves_validity(s in valid_sequence(), t in -12i64..12) {
        let r = chord::rotate(&s, t);
        prop_assert!(chord::is_valid_sequence(&r));
        prop_assert_eq!(chord::rotate(&r, -t), s.clone());
        prop_assert_eq!(chord::rotate(&s, s.n as i64), s);
    }

    #[test]
    fn chord_index_round_trip(n in 1usize..10, x in 0usize..100) {
        let x = x % (n * n);
        prop_assert_eq!(Chord::from_index(n, x).index(n), x);
    }
}
