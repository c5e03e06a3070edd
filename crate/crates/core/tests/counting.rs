//! Closed formulas against enumeration, distributions and subgraph counts.

use excseq::counting::{
    self, count_formula, enumerate_exceptional_sets, enumerate_subgraphs, evaluate, generating_polynomial, generating_polynomial_closed,
    relproj_distribution, subgraph_count, Family, FormulaKind, Property, Signature,
};
use num_bigint::BigUint;

fn fact(n: u128) -> u128 {
    (1..=n).product()
}

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        0
    } else {
        fact(n) / (fact(k) * fact(n - k))
    }
}

/// Independent evaluation of each formula in 128-bit integers.
fn reference(kind: FormulaKind, n: u128, k: u128) -> Option<u128> {
    Some(match kind {
        FormulaKind::ExcCn => binom(n, k) * n.pow(k as u32),
        FormulaKind::SoftWn => binom(n, k) * n.pow(k as u32),
        FormulaKind::SignedCn => fact(n + k) / (fact(k) * fact(n.checked_sub(k)?)),
        FormulaKind::ClustersCn => binom(n, k) * binom(n + k, k),
        FormulaKind::ExcAn => {
            if k == 0 {
                1
            } else {
                binom(n + 1, k + 1) * (n + 1).pow(k as u32 - 1)
            }
        }
        FormulaKind::ExcWn | FormulaKind::ChordOriented => binom(n - 1, k) * n.pow(k as u32),
        FormulaKind::ChordUnoriented => binom(n, k + 1) * n.pow(k.checked_sub(1)? as u32),
        FormulaKind::Pointed => n.pow(n as u32),
        FormulaKind::ExcsetsAn => fact(3 * n) / (fact(n) * fact(2 * n + 1)),
        FormulaKind::ExcsetsWn => n * fact(3 * n - 3) / (fact(n - 1) * fact(2 * n - 1)),
        FormulaKind::ExcsetsCn => binom(3 * n - 2, n - 1),
    })
}

#[test]
fn formulas_match_reference_values() {
    for kind in FormulaKind::ALL {
        for n in 1..=8u128 {
            for k in 0..=n {
                let ours = count_formula(kind, n as usize, kind.needs_k().then_some(k as usize));
                match (ours, reference(kind, n, k)) {
                    (Ok(v), Some(r)) if v != BigUint::from(r) => panic!("{} n={n} k={k}: {v} != {r}", kind.name()),
                    _ => {}
                }
            }
        }
    }
}

#[test]
fn headline_values() {
    let c = |kind, n, k| count_formula(kind, n, k).unwrap();
    assert_eq!(c(FormulaKind::ExcCn, 3, Some(3)), BigUint::from(27u32));
    assert_eq!(c(FormulaKind::SignedCn, 3, Some(3)), BigUint::from(120u32));
    assert_eq!(c(FormulaKind::ExcWn, 4, Some(3)), BigUint::from(64u32));
    assert_eq!(c(FormulaKind::ExcsetsWn, 3, None), BigUint::from(9u32));
    assert_eq!(c(FormulaKind::ExcsetsCn, 3, None), BigUint::from(21u32));
    assert_eq!(c(FormulaKind::ExcsetsAn, 2, None), BigUint::from(3u32));
    assert!(count_formula(FormulaKind::ExcCn, 3, None).is_err());
    assert!(count_formula(FormulaKind::ExcCn, 3, Some(4)).is_err());
}

#[test]
fn kind_names_round_trip() {
    for kind in FormulaKind::ALL {
        assert_eq!(FormulaKind::parse(kind.name()).unwrap(), kind);
    }
    assert!(FormulaKind::parse("nope").is_err());
}

#[test]
fn exceptional_set_counts() {
    assert_eq!(enumerate_exceptional_sets(Family::W, 3).unwrap(), 9);
    assert_eq!(enumerate_exceptional_sets(Family::C, 2).unwrap(), 4);
    assert_eq!(enumerate_exceptional_sets(Family::A, 1).unwrap(), 1);
    for n in 1..=5 {
        let a = reference(FormulaKind::ExcsetsAn, n as u128, 0).unwrap();
        assert_eq!(enumerate_exceptional_sets(Family::A, n).unwrap() as u128, a);
        if n >= 2 {
            let w = reference(FormulaKind::ExcsetsWn, n as u128, 0).unwrap();
            assert_eq!(enumerate_exceptional_sets(Family::W, n).unwrap() as u128, w);
        }
        if n <= 4 {
            let c = reference(FormulaKind::ExcsetsCn, n as u128, 0).unwrap();
            assert_eq!(enumerate_exceptional_sets(Family::C, n).unwrap() as u128, c);
        }
    }
}

#[test]
fn subgraph_counts_match_enumeration() {
    let s = Signature::new(4, 1, vec![1, 0]).unwrap();
    assert_eq!(subgraph_count(&s), BigUint::from(2u32));
    assert_eq!(enumerate_subgraphs(&s).len(), 2);
    assert_eq!(subgraph_count(&Signature::new(6, 0, vec![1, 1, 1]).unwrap()), BigUint::from(1u32));
    assert!(Signature::new(5, 0, vec![0, 1]).is_err());
    for n in 1..=7 {
        for s in counting::all_signatures(n) {
            assert_eq!(subgraph_count(&s), BigUint::from(enumerate_subgraphs(&s).len()), "{s:?}");
        }
    }
}

#[test]
fn subgraph_recursions_hold() {
    for n in 1..=6 {
        for check in counting::verify_subgraph_recursions(n) {
            assert!(check.holds(), "{check:?}");
        }
    }
}

#[test]
fn perpendicular_fibers_match_formulas() {
    for n in 1..=4 {
        for f in counting::verify_n_counts(n).unwrap() {
            assert!(f.holds(), "{f:?}");
        }
    }
}

#[test]
fn cn_relative_projectivity_is_independent_with_linear_marginals() {
    for n in 1..=4u64 {
        for k in 1..=n as usize {
            let d = relproj_distribution(Family::C, n as usize, k, Property::Projective).unwrap();
            for j in 1..=k {
                assert_eq!(d.marginal(j) * n, d.total * (k as u64 + 1 - j as u64), "n={n} k={k} j={j}");
            }
            assert_eq!(d.first_dependence(), None, "n={n} k={k}");
        }
    }
}

#[test]
fn tube_marginals() {
    for n in 2..=5u64 {
        let k = n as usize - 1;
        let p = relproj_distribution(Family::W, n as usize, k, Property::Projective).unwrap();
        let i = relproj_distribution(Family::W, n as usize, k, Property::Injective).unwrap();
        assert_eq!(p.total, n.pow(k as u32));
        for j in 1..=k as u64 {
            assert_eq!(p.marginal(j as usize) * n, p.total * (n - j - 1));
            assert_eq!(i.marginal(j as usize) * n, i.total * (j - 1));
        }
        assert_eq!(p.first_dependence(), None);
        assert_eq!(i.first_dependence(), None);
    }
}

#[test]
fn dependence_is_detected() {
    let d = counting::Distribution::from_vectors(2, [vec![true, true], vec![false, false]]);
    assert_eq!(d.first_dependence(), Some(0b11));
}

#[test]
fn distribution_summary_fractions() {
    let s = relproj_distribution(Family::C, 3, 3, Property::Projective).unwrap().summary();
    let probs: Vec<&str> = s.marginals.iter().map(|m| m.probability.as_str()).collect();
    assert_eq!(probs, ["1/1", "2/3", "1/3"]);
    assert!(s.independent);
    assert_eq!(s.joint.iter().map(|r| r.count).sum::<u64>(), 27);
}

#[test]
fn generating_polynomial_matches_product_form() {
    for n in 1..=4 {
        for k in 0..=n {
            let poly = generating_polynomial(n, k).unwrap();
            assert_eq!(poly, generating_polynomial_closed(n, k), "n={n} k={k}");
            let (n1, k1) = (n as u128, k as u128);
            assert_eq!(evaluate(&poly, 1), BigUint::from(binom(n1, k1) * n1.pow(k as u32)));
            assert_eq!(evaluate(&poly, 2), BigUint::from(fact(n1 + k1) / (fact(k1) * fact(n1 - k1))));
        }
    }
}
