//! Braid group actions on forests, trees and augmented trees.
//!
//! A word `g1 g2 … gk` acts as the operator product, so `gk` is applied first.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forest::{AugmentedTree, RootedForest, RootedTree};

/// A finite set on which `σ_1, …, σ_{n-1}` act by bijections.
pub trait BraidCarrier: Clone + Eq + Hash {
    fn strands(&self) -> usize;

    fn sigma(&self, i: usize) -> Result<Self>;

    /// Preimage under `σ_i`, found by walking the `σ_i`-cycle through `self`.
    fn sigma_inv(&self, i: usize) -> Result<Self> {
        let mut prev = self.clone();
        let mut cur = self.sigma(i)?;
        while &cur != self {
            prev = cur;
            cur = prev.sigma(i)?;
        }
        Ok(prev)
    }
}

fn check_generator(i: usize, n: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::GeneratorOutOfRange { index: i, n });
    }
    Ok(())
}

pub fn sigma_forest(f: &RootedForest, i: usize) -> Result<RootedForest> {
    check_generator(i, f.len())?;
    let (a, b) = (i, i + 1);
    let old = f.parents();
    let (pa, pb) = (old[a - 1], old[b - 1]);
    let swap_children = |parent: &mut Vec<usize>| {
        for (c, p) in parent.iter_mut().enumerate() {
            if c + 1 == a || c + 1 == b {
                continue;
            }
            if *p == a {
                *p = b;
            } else if *p == b {
                *p = a;
            }
        }
    };
    let mut parent = old.to_vec();
    if pb == a {
        parent[b - 1] = pa;
        parent[a - 1] = b;
    } else if pa == b {
        parent[a - 1] = pb;
        parent[b - 1] = pb;
        swap_children(&mut parent);
    } else if pa == pb {
        swap_children(&mut parent);
        parent[b - 1] = a;
    } else {
        return Ok(f.swap_labels(i));
    }
    RootedForest::new(parent)
}

pub fn sigma_tree(t: &RootedTree, i: usize) -> Result<RootedTree> {
    check_generator(i, t.len())?;
    if t.root() == i + 1 {
        return RootedTree::new(t.forest().swap_labels(i));
    }
    RootedTree::new(sigma_forest(t.forest(), i)?)
}

pub fn sigma_augmented(t: &AugmentedTree, i: usize) -> Result<AugmentedTree> {
    let tree = sigma_tree(&t.tree, i)?;
    let r = t.tree.root();
    let bump = if i + 1 == r { t.tree.reduced_weight(i)? } else { 0 };
    Ok(AugmentedTree::new(tree, (t.epsilon + bump) as i64))
}

impl BraidCarrier for RootedForest {
    fn strands(&self) -> usize {
        self.len()
    }

    fn sigma(&self, i: usize) -> Result<Self> {
        sigma_forest(self, i)
    }
}

impl BraidCarrier for RootedTree {
    fn strands(&self) -> usize {
        self.len()
    }

    fn sigma(&self, i: usize) -> Result<Self> {
        sigma_tree(self, i)
    }
}

impl BraidCarrier for AugmentedTree {
    fn strands(&self) -> usize {
        self.len()
    }

    fn sigma(&self, i: usize) -> Result<Self> {
        sigma_augmented(self, i)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generator {
    pub index: usize,
    pub inverse: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BraidWord(pub Vec<Generator>);

impl BraidWord {
    pub fn sigma(i: usize) -> Self {
        Self(vec![Generator { index: i, inverse: false }])
    }

    /// `δ_n = σ_1 σ_2 ⋯ σ_{n-1}`.
    pub fn delta(n: usize) -> Self {
        Self((1..n).map(|index| Generator { index, inverse: false }).collect())
    }

    /// `Δ = δ_n δ_{n-1} ⋯ δ_2`.
    pub fn garside(n: usize) -> Self {
        Self((2..=n).rev().flat_map(|m| Self::delta(m).0).collect())
    }

    pub fn then(mut self, other: &BraidWord) -> Self {
        self.0.extend_from_slice(&other.0);
        self
    }

    pub fn pow(&self, e: usize) -> Self {
        Self((0..e).flat_map(|_| self.0.iter().copied()).collect())
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|g| Generator { index: g.index, inverse: !g.inverse }).collect())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|tok| {
                let (body, inverse) = match tok.strip_suffix('\'') {
                    Some(b) => (b, true),
                    None => (tok, false),
                };
                let index = body
                    .strip_prefix('s')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&i| i > 0)
                    .ok_or_else(|| Error::Parse(format!("bad braid generator `{tok}`")))?;
                Ok(Generator { index, inverse })
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .0
            .iter()
            .map(|g| format!("s{}{}", g.index, if g.inverse { "'" } else { "" }))
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

pub fn act_word<C: BraidCarrier>(w: &BraidWord, x: &C) -> Result<C> {
    let mut cur = x.clone();
    for g in w.0.iter().rev() {
        check_generator(g.index, x.strands())?;
        cur = if g.inverse { cur.sigma_inv(g.index)? } else { cur.sigma(g.index)? };
    }
    Ok(cur)
}

type Perm = Vec<usize>;

/// The action of each generator tabulated as a permutation of `elems`.
#[derive(Debug, Clone)]
pub struct PermTable {
    pub n: usize,
    gens: Vec<Perm>,
    inv: Vec<Perm>,
}

impl PermTable {
    pub fn build<C: BraidCarrier + Send + Sync>(n: usize, elems: &[C]) -> Result<Self> {
        let index: HashMap<&C, usize> = elems.iter().enumerate().map(|(k, x)| (x, k)).collect();
        let mut gens = Vec::new();
        let mut inv = Vec::new();
        for i in 1..n {
            let perm: Perm = elems
                .par_iter()
                .map(|x| {
                    let y = x.sigma(i)?;
                    index
                        .get(&y)
                        .copied()
                        .ok_or_else(|| Error::Invalid(format!("σ_{i} leaves the carrier")))
                })
                .collect::<Result<_>>()?;
            let mut back = vec![usize::MAX; perm.len()];
            for (x, &y) in perm.iter().enumerate() {
                if back[y] != usize::MAX {
                    return Err(Error::Invalid(format!("σ_{i} is not injective")));
                }
                back[y] = x;
            }
            gens.push(perm);
            inv.push(back);
        }
        Ok(Self { n, gens, inv })
    }

    pub fn size(&self) -> usize {
        self.gens.first().map_or(1, Vec::len)
    }

    pub fn identity(&self) -> Perm {
        (0..self.size()).collect()
    }

    pub fn word(&self, w: &BraidWord) -> Perm {
        let mut out = self.identity();
        for g in w.0.iter().rev() {
            let p = if g.inverse { &self.inv[g.index - 1] } else { &self.gens[g.index - 1] };
            out = out.iter().map(|&x| p[x]).collect();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub relation: String,
    pub carrier: String,
    pub n: usize,
    pub status: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

fn first_difference(p: &[usize], q: &[usize]) -> Option<usize> {
    p.iter().zip(q).position(|(a, b)| a != b)
}

/// Checks the defining relations of `B_n` and the `δ_n` conjugation rule as
/// equalities of tabulated permutations.
pub fn verify_relations<C>(carrier: &str, n: usize, elems: &[C]) -> Result<Vec<RelationReport>>
where
    C: BraidCarrier + Send + Sync + fmt::Debug,
{
    let table = PermTable::build(n, elems)?;
    let mut out = Vec::new();
    let mut check = |relation: String, lhs: &BraidWord, rhs: &BraidWord| {
        let diff = first_difference(&table.word(lhs), &table.word(rhs));
        out.push(RelationReport {
            relation,
            carrier: carrier.to_string(),
            n,
            status: diff.is_none(),
            counterexample: diff.map(|x| format!("{:?}", elems[x])),
        });
    };
    let s = BraidWord::sigma;
    for i in 1..n {
        for j in i + 2..n {
            check(format!("s{i} s{j} = s{j} s{i}"), &s(i).then(&s(j)), &s(j).then(&s(i)));
        }
        if i + 1 < n {
            let l = s(i).then(&s(i + 1)).then(&s(i));
            let r = s(i + 1).then(&s(i)).then(&s(i + 1));
            check(format!("s{i} s{} s{i} = s{} s{i} s{}", i + 1, i + 1, i + 1), &l, &r);
            let d = BraidWord::delta(n);
            check(format!("delta s{i} = s{} delta", i + 1), &d.clone().then(&s(i)), &s(i + 1).then(&d));
        }
    }
    let d2 = BraidWord::garside(n).pow(2);
    check("Delta^2 = delta^n".into(), &d2, &BraidWord::delta(n).pow(n));
    Ok(out)
}

/// Checks that the tabulated word acts on `elems` as `expected`.
pub fn verify_word_action<C, F>(relation: &str, carrier: &str, n: usize, elems: &[C], w: &BraidWord, expected: F) -> Result<RelationReport>
where
    C: BraidCarrier + Send + Sync + fmt::Debug,
    F: Fn(&C) -> C + Sync,
{
    let table = PermTable::build(n, elems)?;
    let perm = table.word(w);
    let bad = (0..elems.len()).into_par_iter().find_first(|&x| elems[perm[x]] != expected(&elems[x]));
    Ok(RelationReport {
        relation: relation.to_string(),
        carrier: carrier.to_string(),
        n,
        status: bad.is_none(),
        counterexample: bad.map(|x| format!("{:?}", elems[x])),
    })
}
