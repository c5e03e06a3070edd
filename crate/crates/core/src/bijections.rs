//! Correspondences between modules `M_ij`, tube bricks `V_ij`, chords
//! `γ_ij`, augmented trees and forests, and the signed sequence chain
//! `χ ∘ β ∘ θ`.

use std::sync::Arc;

use crate::braid::BraidCarrier;
use crate::chord::{self, Chord, ChordSequence};
use crate::error::{Error, Result};
use crate::forest::{insert_root, truncate_root, AugmentedForest, AugmentedTree, RootedForest, RootedTree, VertexClass};
use crate::hereditary::{cn_cat, CatData, Module};
use crate::lattice::Lattice;
use crate::signed::Signed;
use crate::tube::{self, TubeObject};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Chord,
    Tube,
    Cn,
}

fn valid_in(model: Model, n: usize, pairs: &[(usize, usize)]) -> Result<bool> {
    if let Some(&(i, j)) = pairs.iter().find(|&&(i, j)| i >= n || j >= n) {
        return Err(Error::Invalid(format!("index pair ({i},{j}) out of range for n={n}")));
    }
    Ok(match model {
        Model::Chord => chord::is_valid_sequence(&ChordSequence::from_pairs(n, pairs)?),
        Model::Tube => {
            let objs: Vec<TubeObject> = pairs.iter().map(|&(i, j)| TubeObject::brick(n, i, j)).collect();
            tube::is_soft_sequence(&objs)?
        }
        Model::Cn => {
            let cat = cn_cat(n)?;
            let idx: Vec<usize> = pairs.iter().map(|&(i, j)| i * n + j).collect();
            cat.is_exceptional_sequence(&idx)
        }
    })
}

/// Index-preserving transport `M_ij ↔ V_ij ↔ γ_ij`.
pub fn sequence_transport(n: usize, pairs: &[(usize, usize)], from: Model, to: Model) -> Result<Vec<(usize, usize)>> {
    if !valid_in(from, n, pairs)? {
        return Err(Error::InvalidSequence(format!("{pairs:?} in {from:?}")));
    }
    assert!(valid_in(to, n, pairs)?, "{pairs:?} valid in {from:?} but not in {to:?}");
    Ok(pairs.to_vec())
}

pub fn chords_of_tube(seq: &[TubeObject]) -> Result<ChordSequence> {
    let n = seq.first().map_or(1, |v| v.n);
    let items = seq
        .iter()
        .map(|v| v.brick_indices().map(|(i, j)| Chord::new(i, j)).ok_or_else(|| Error::Invalid(format!("{v} is not a brick"))))
        .collect::<Result<_>>()?;
    ChordSequence::new(n, items)
}

pub fn tube_of_chords(s: &ChordSequence) -> Vec<TubeObject> {
    s.items.iter().map(|g| TubeObject::brick(s.n, g.i, g.j)).collect()
}

/// Hasse diagram of the supports of a pointed diagram.
pub fn hasse_tree(d: &ChordSequence) -> Result<AugmentedTree> {
    if !d.is_pointed() {
        return Err(Error::InvalidSequence(format!("{d} is not a pointed diagram")));
    }
    let n = d.n;
    let sup: Vec<_> = d.items.iter().map(|g| g.support(n)).collect();
    let above = |q: usize, p: usize| p != q && sup[q].is_subset(&sup[p]) && sup[q] != sup[p];
    let mut parent = vec![0; n];
    for (q, g) in d.items.iter().enumerate() {
        if g.is_loop() {
            continue;
        }
        let covers: Vec<usize> = (0..n).filter(|&p| above(q, p) && !(0..n).any(|r| above(q, r) && above(r, p))).collect();
        if covers.len() != 1 {
            return Err(Error::NotUnique { what: "cover in the support order", found: covers.len() });
        }
        parent[q] = covers[0] + 1;
    }
    let tree = RootedTree::from_parents(parent)?;
    let eps = d.items[tree.root() - 1].i;
    Ok(AugmentedTree::new(tree, eps as i64))
}

/// The pointed diagram whose Hasse tree is `t`, found by exhaustive search.
pub fn diagram_from_tree(t: &AugmentedTree) -> Result<ChordSequence> {
    let n = t.len();
    let r = t.tree.root();
    let parents = t.tree.forest().parents().to_vec();
    let weights = t.tree.forest().weights();
    let candidates: Vec<Vec<Chord>> = (1..=n)
        .map(|p| {
            if p == r {
                vec![Chord::new(t.epsilon, t.epsilon)]
            } else {
                (0..n).map(|i| Chord::new(i, (i + weights[p - 1]) % n)).collect()
            }
        })
        .collect();
    let mut found = Vec::new();
    let mut chosen: Vec<Chord> = Vec::with_capacity(n);
    search_diagram(n, &candidates, &parents, &mut chosen, &mut found);
    let hits: Vec<ChordSequence> = found.into_iter().filter(|d| hasse_tree(d).as_ref() == Ok(t)).collect();
    match hits.len() {
        1 => Ok(hits.into_iter().next().expect("one hit")),
        k => Err(Error::NotUnique { what: "pointed diagram for the tree", found: k }),
    }
}

fn search_diagram(n: usize, cands: &[Vec<Chord>], parents: &[usize], chosen: &mut Vec<Chord>, found: &mut Vec<ChordSequence>) {
    let p = chosen.len();
    if p == n {
        found.push(ChordSequence { n, items: chosen.clone() });
        return;
    }
    for &g in &cands[p] {
        let sup = g.support(n);
        let fits = chosen.iter().enumerate().all(|(q, &h)| {
            if !chord::noncrossing_pair(h, g, n) {
                return false;
            }
            let hs = h.support(n);
            if parents[p] == q + 1 {
                return sup.is_subset(&hs) && sup != hs;
            }
            if parents[q] == p + 1 {
                return hs.is_subset(&sup) && sup != hs;
            }
            true
        });
        if fits {
            chosen.push(g);
            search_diagram(n, cands, parents, chosen, found);
            chosen.pop();
        }
    }
}

/// All pointed diagrams obtained by inserting a loop into a loop-free sequence.
pub fn loop_insertions(s: &ChordSequence) -> Vec<ChordSequence> {
    let n = s.n;
    let mut out = Vec::new();
    for pos in 0..=s.len() {
        for l in 0..n {
            let mut items = s.items.clone();
            items.insert(pos, Chord::new(l, l));
            let d = ChordSequence { n, items };
            if chord::is_valid_sequence(&d) {
                out.push(d);
            }
        }
    }
    out
}

pub fn forest_of_complete_tube_sequence(seq: &[TubeObject]) -> Result<AugmentedForest> {
    let n = seq.first().map_or(1, |v| v.n);
    if seq.len() + 1 != n || !tube::is_exceptional_sequence(seq)? {
        return Err(Error::InvalidSequence("expected a complete exceptional tube sequence".into()));
    }
    let diagrams = loop_insertions(&chords_of_tube(seq)?);
    if diagrams.len() != n {
        return Err(Error::NotUnique { what: "loop insertion per slot", found: diagrams.len() });
    }
    let mut forests = diagrams.iter().map(|d| hasse_tree(d).map(|t| truncate_root(&t)));
    let first = forests.next().expect("n >= 1 insertions")?;
    for f in forests {
        if f? != first {
            return Err(Error::Invalid("loop insertions disagree on the forest".into()));
        }
    }
    Ok(first)
}

pub fn tube_sequence_of_forest(f: &AugmentedForest) -> Result<Vec<TubeObject>> {
    let t = insert_root(f, 1)?;
    let mut d = diagram_from_tree(&t)?;
    d.items.remove(0);
    Ok(tube_of_chords(&d))
}

fn classes(seq: &[TubeObject]) -> Result<(RootedForest, Vec<VertexClass>)> {
    let f = forest_of_complete_tube_sequence(seq)?.forest;
    let cls = (1..=f.len()).map(|v| f.vertex_class(v)).collect::<Result<_>>()?;
    Ok((f, cls))
}

/// Relative projectivity read off the forest: descending vertices.
pub fn rel_projective_combinatorial(seq: &[TubeObject]) -> Result<Vec<bool>> {
    Ok(classes(seq)?.1.into_iter().map(|c| c == VertexClass::Descending).collect())
}

/// Relative injectivity read off the forest: ascending vertices.
pub fn rel_injective_combinatorial(seq: &[TubeObject]) -> Result<Vec<bool>> {
    Ok(classes(seq)?.1.into_iter().map(|c| c == VertexClass::Ascending).collect())
}

fn unique<T>(mut hits: Vec<T>, what: &'static str) -> Result<T> {
    match hits.len() {
        1 => Ok(hits.pop().expect("one hit")),
        found => Err(Error::NotUnique { what, found }),
    }
}

fn signed_dim(d: &[i64], sign: i64) -> Vec<i64> {
    d.iter().map(|v| sign * v).collect()
}

fn rigid_bricks(m: usize) -> Vec<TubeObject> {
    (0..m).flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| TubeObject::brick(m, i, j))).collect()
}

fn ext_orthogonal(x: &TubeObject, y: &TubeObject) -> bool {
    !tube::ext_nonzero(x, y) && !tube::ext_nonzero(y, x)
}

/// Checks a signed tube sequence: exceptional, shifts only where relatively projective.
pub fn check_signed_tube(seq: &[Signed<TubeObject>]) -> Result<usize> {
    let m = seq.first().map_or(0, |s| s.obj.n);
    let objs: Vec<TubeObject> = seq.iter().map(|s| s.obj).collect();
    if !tube::is_exceptional_sequence(&objs)? {
        return Err(Error::InvalidSequence("not an exceptional tube sequence".into()));
    }
    for (p, s) in seq.iter().enumerate() {
        if s.shifted && !tube::is_rel_projective_oracle(&objs, p + 1, tube::default_length_bound(m))? {
            return Err(Error::ShiftedNonProjective(s.obj.to_string()));
        }
    }
    Ok(m)
}

/// Signed exceptional tube sequence to an ordered tuple of ext-orthogonal rigid objects.
pub fn theta(seq: &[Signed<TubeObject>]) -> Result<Vec<TubeObject>> {
    let m = check_signed_tube(seq)?;
    let k = seq.len();
    let mut out = vec![TubeObject::brick(m.max(1), 0, 0); k];
    let pool = rigid_bricks(m);
    for p in (0..k).rev() {
        let later: Vec<Vec<i64>> = seq[p + 1..].iter().map(|s| s.obj.dim()).collect();
        let lat = Lattice::span(m, later.iter().map(Vec::as_slice));
        let target = signed_dim(&seq[p].obj.dim(), seq[p].sign());
        let hits: Vec<TubeObject> = pool
            .iter()
            .filter(|r| out[p + 1..].iter().all(|x| ext_orthogonal(r, x)) && lat.congruent(&r.dim(), &target))
            .copied()
            .collect();
        out[p] = unique(hits, "rigid object for theta")?;
    }
    Ok(out)
}

pub fn theta_inverse(rs: &[TubeObject]) -> Result<Vec<Signed<TubeObject>>> {
    let m = rs.first().map_or(0, |r| r.n);
    let k = rs.len();
    for (a, x) in rs.iter().enumerate() {
        if !x.is_rigid() || rs[a + 1..].iter().any(|y| !ext_orthogonal(x, y)) {
            return Err(Error::InvalidSequence("not an ext-orthogonal tuple of rigid objects".into()));
        }
    }
    let mut out: Vec<Signed<TubeObject>> = Vec::with_capacity(k);
    let pool = rigid_bricks(m);
    for p in (0..k).rev() {
        let later: Vec<TubeObject> = out.iter().rev().map(|s| s.obj).collect();
        let lat = Lattice::span(m, later.iter().map(|v| v.dim()).collect::<Vec<_>>().iter().map(Vec::as_slice));
        let mut hits = Vec::new();
        for v in &pool {
            let mut cand = vec![*v];
            cand.extend_from_slice(&later);
            if !tube::is_exceptional_sequence(&cand)? {
                continue;
            }
            for sign in [1, -1] {
                if !lat.congruent(&signed_dim(&v.dim(), sign), &rs[p].dim()) {
                    continue;
                }
                if sign < 0 && !tube::is_rel_projective_oracle(&cand, 1, tube::default_length_bound(m))? {
                    continue;
                }
                hits.push(Signed { obj: *v, shifted: sign < 0 });
            }
        }
        out.push(unique(hits, "signed object for theta inverse")?);
    }
    out.reverse();
    Ok(out)
}

/// Rigid brick of the rank `n + 1` tube to a cluster object of type `C_n`.
pub fn beta_object(n: usize, v: &TubeObject) -> Result<Signed<Module>> {
    let (i, j) = v
        .brick_indices()
        .filter(|_| v.is_rigid() && v.n == n + 1)
        .ok_or_else(|| Error::NotRigid(v.to_string()))?;
    Ok(if i < j {
        Signed::plain(Module::new(i, j % n))
    } else if i == n {
        Signed::shifted(Module::new(0, (j + 1) % n))
    } else {
        Signed::plain(Module::new(i, (j + 1) % n))
    })
}

pub fn beta_object_inverse(n: usize, s: Signed<Module>) -> Result<TubeObject> {
    let Module { i: a, j: b } = s.obj;
    if a >= n || b >= n || (s.shifted && a != 0) {
        return Err(Error::Invalid(format!("{}{} is not a cluster object", s.obj, if s.shifted { "!" } else { "" })));
    }
    let (i, j) = if s.shifted {
        (n, (b + n - 1) % n)
    } else if b > a || b == 0 {
        (a, if b == 0 { n } else { b })
    } else {
        (a, b - 1)
    };
    Ok(TubeObject::brick(n + 1, i, j))
}

pub fn beta(n: usize, rs: &[TubeObject]) -> Result<Vec<Signed<Module>>> {
    rs.iter().map(|v| beta_object(n, v)).collect()
}

pub fn beta_inverse(n: usize, ts: &[Signed<Module>]) -> Result<Vec<TubeObject>> {
    ts.iter().map(|&s| beta_object_inverse(n, s)).collect()
}

fn to_index(cat: &CatData, s: Signed<Module>) -> Result<Signed<usize>> {
    let obj = cat.index_of(s.obj).ok_or_else(|| Error::Invalid(format!("{} is not an object", s.obj)))?;
    Ok(Signed { obj, shifted: s.shifted })
}

/// Ordered partial cluster to a signed exceptional sequence.
pub fn chi(cat: &CatData, ts: &[Signed<Module>]) -> Result<Vec<Signed<Module>>> {
    let t: Vec<Signed<usize>> = ts.iter().map(|&s| to_index(cat, s)).collect::<Result<_>>()?;
    for (a, &x) in t.iter().enumerate() {
        for &y in &t[a + 1..] {
            if !cat.cluster_ext_orthogonal(x, y)? {
                return Err(Error::InvalidSequence("cluster objects are not ext-orthogonal".into()));
            }
        }
    }
    let n = cat.rank();
    let mut out: Vec<Signed<usize>> = Vec::with_capacity(t.len());
    for p in (0..t.len()).rev() {
        let later: Vec<usize> = out.iter().rev().map(|s| s.obj).collect();
        let lat = Lattice::span(n, later.iter().map(|&x| cat.dim(x)));
        let target = signed_dim(cat.dim(t[p].obj), t[p].sign());
        let mut hits = Vec::new();
        for x in 0..cat.len() {
            let mut cand = vec![x];
            cand.extend_from_slice(&later);
            if !cat.is_exceptional_sequence(&cand) {
                continue;
            }
            for sign in [1, -1] {
                if lat.congruent(&signed_dim(cat.dim(x), sign), &target) {
                    hits.push((Signed { obj: x, shifted: sign < 0 }, cand.clone()));
                }
            }
        }
        let (x, cand) = unique(hits, "signed object for chi")?;
        if x.shifted && !cat.is_rel_projective(&cand, 1)? {
            return Err(Error::ShiftedNonProjective(cat.display(x)));
        }
        out.push(x);
    }
    out.reverse();
    Ok(out.into_iter().map(|s| Signed { obj: cat.module(s.obj), shifted: s.shifted }).collect())
}

pub fn chi_inverse(cat: &CatData, xs: &[Signed<Module>]) -> Result<Vec<Signed<Module>>> {
    let x: Vec<Signed<usize>> = xs.iter().map(|&s| to_index(cat, s)).collect::<Result<_>>()?;
    let objs: Vec<usize> = x.iter().map(|s| s.obj).collect();
    if !cat.is_exceptional_sequence(&objs) {
        return Err(Error::InvalidSequence("not an exceptional sequence".into()));
    }
    for (p, s) in x.iter().enumerate() {
        if s.shifted && !cat.is_rel_projective(&objs, p + 1)? {
            return Err(Error::ShiftedNonProjective(cat.display(*s)));
        }
    }
    let n = cat.rank();
    let mut out: Vec<Signed<usize>> = Vec::with_capacity(x.len());
    for p in (0..x.len()).rev() {
        let lat = Lattice::span(n, objs[p + 1..].iter().map(|&y| cat.dim(y)));
        let target = signed_dim(cat.dim(x[p].obj), x[p].sign());
        let mut hits = Vec::new();
        for c in 0..cat.len() {
            for shifted in [false, true] {
                if shifted && !cat.is_projective(c) {
                    continue;
                }
                let cand = Signed { obj: c, shifted };
                if !lat.congruent(&signed_dim(cat.dim(c), cand.sign()), &target) {
                    continue;
                }
                let mut ok = true;
                for &y in &out {
                    ok &= cat.cluster_ext_orthogonal(cand, y)?;
                }
                if ok {
                    hits.push(cand);
                }
            }
        }
        out.push(unique(hits, "cluster object for chi inverse")?);
    }
    out.reverse();
    Ok(out.into_iter().map(|s| Signed { obj: cat.module(s.obj), shifted: s.shifted }).collect())
}

/// Signed sequence in the rank `n + 1` tube to a signed sequence of type `C_n`.
pub fn full_chain(seq: &[Signed<TubeObject>]) -> Result<Vec<Signed<Module>>> {
    let m = check_signed_tube(seq)?;
    let n = m.checked_sub(1).filter(|&n| n > 0).ok_or_else(|| Error::Invalid("tube rank must be at least 2".into()))?;
    let cat = cn_cat(n)?;
    chi(&cat, &beta(n, &theta(seq)?)?)
}

pub fn full_chain_inverse(n: usize, xs: &[Signed<Module>]) -> Result<Vec<Signed<TubeObject>>> {
    let cat = cn_cat(n)?;
    theta_inverse(&beta_inverse(n, &chi_inverse(&cat, xs)?)?)
}

/// `σ_i` on a complete sequence: `E_{i+1}` is removed and the unique
/// admissible object is inserted before `E_i`.
pub fn braid_on_sequence(seq: &[usize], i: usize, alphabet: usize, valid: impl Fn(&[usize]) -> bool) -> Result<Vec<usize>> {
    let k = seq.len();
    if i == 0 || i >= k {
        return Err(Error::GeneratorOutOfRange { index: i, n: k });
    }
    let hits: Vec<Vec<usize>> = (0..alphabet)
        .map(|x| {
            let mut out = seq.to_vec();
            out.remove(i);
            out.insert(i - 1, x);
            out
        })
        .filter(|cand| valid(cand))
        .collect();
    unique(hits, "object for the braid move")
}

impl BraidCarrier for ChordSequence {
    fn strands(&self) -> usize {
        self.len()
    }

    fn sigma(&self, i: usize) -> Result<Self> {
        let n = self.n;
        let idx = braid_on_sequence(&self.indices(), i, n * n, |c| {
            chord::is_valid_sequence(&ChordSequence { n, items: c.iter().map(|&x| Chord::from_index(n, x)).collect() })
        })?;
        Ok(ChordSequence { n, items: idx.into_iter().map(|x| Chord::from_index(n, x)).collect() })
    }
}

/// A complete exceptional sequence of type `C_n`, by object index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CnSequence {
    pub n: usize,
    pub items: Vec<usize>,
}

impl CnSequence {
    pub fn cat(&self) -> Result<Arc<CatData>> {
        cn_cat(self.n)
    }
}

impl BraidCarrier for CnSequence {
    fn strands(&self) -> usize {
        self.items.len()
    }

    fn sigma(&self, i: usize) -> Result<Self> {
        let cat = self.cat()?;
        let before = cat.perp(&self.items);
        let items = braid_on_sequence(&self.items, i, cat.len(), |c| {
            cat.is_exceptional_sequence(c) && cat.perp(c) == before
        })?;
        Ok(Self { n: self.n, items })
    }
}
