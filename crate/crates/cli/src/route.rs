//! Conversions between object kinds, routed through a small graph.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use excseq::bijections::{self, full_chain, full_chain_inverse};
use excseq::chord::{self, ChordSequence};
use excseq::forest::{insert_root, truncate_root, AugmentedForest, AugmentedTree};
use excseq::hereditary::{cn_cat, Module};
use excseq::io;
use excseq::signed::Signed;
use excseq::tube::{self, TubeObject};
use excseq::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, clap::ValueEnum)]
pub enum Kind {
    Tree,
    Forest,
    Diagram,
    TubeSeq,
    CnSeq,
    SignedTube,
    SignedCn,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::Tree => "tree",
            Kind::Forest => "forest",
            Kind::Diagram => "diagram",
            Kind::TubeSeq => "tube-seq",
            Kind::CnSeq => "cn-seq",
            Kind::SignedTube => "signed-tube",
            Kind::SignedCn => "signed-cn",
        };
        f.write_str(s)
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <Kind as clap::ValueEnum>::from_str(s, false).map_err(|_| Error::Parse(format!("unknown kind `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obj {
    Tree(AugmentedTree),
    Forest(AugmentedForest),
    Diagram(ChordSequence),
    Tube(usize, Vec<Signed<TubeObject>>),
    Cn(usize, Vec<Signed<Module>>),
}

pub fn parse(kind: Kind, text: &str) -> Result<Obj> {
    Ok(match kind {
        Kind::Tree => Obj::Tree(io::augmented_tree_from_json(&io::parse(text)?)?),
        Kind::Forest => Obj::Forest(io::augmented_forest_from_json(&io::parse(text)?)?),
        Kind::Diagram => {
            let d = io::diagram_from_json(&io::parse(text)?)?;
            if !chord::is_valid_sequence(&d) {
                return Err(Error::InvalidSequence(d.to_string()));
            }
            Obj::Diagram(d)
        }
        Kind::TubeSeq | Kind::SignedTube => {
            let j: io::TubeJson = io::parse(text)?;
            if kind == Kind::TubeSeq && j.shifted.as_ref().is_some_and(|s| s.iter().any(|&b| b)) {
                return Err(Error::Invalid("tube-seq carries no shifts; use signed-tube".into()));
            }
            let seq = io::tube_from_json(&j)?;
            let objs: Vec<TubeObject> = seq.iter().map(|s| s.obj).collect();
            if !tube::is_soft_sequence(&objs)? {
                return Err(Error::InvalidSequence("not a soft exceptional tube sequence".into()));
            }
            if kind == Kind::SignedTube {
                bijections::check_signed_tube(&seq)?;
            }
            Obj::Tube(j.n, seq)
        }
        Kind::CnSeq | Kind::SignedCn => {
            let j: io::ModulesJson = io::parse(text)?;
            if kind == Kind::CnSeq && j.shifted.as_ref().is_some_and(|s| s.iter().any(|&b| b)) {
                return Err(Error::Invalid("cn-seq carries no shifts; use signed-cn".into()));
            }
            let seq = io::modules_from_json(&j)?;
            let cat = cn_cat(j.n)?;
            let idx: Vec<usize> = seq.iter().map(|s| cat.index_of(s.obj).expect("indices in range")).collect();
            if !cat.is_exceptional_sequence(&idx) {
                return Err(Error::InvalidSequence("not an exceptional sequence of type C".into()));
            }
            for (p, s) in seq.iter().enumerate() {
                if s.shifted && !cat.is_rel_projective(&idx, p + 1)? {
                    return Err(Error::ShiftedNonProjective(s.obj.to_string()));
                }
            }
            Obj::Cn(j.n, seq)
        }
    })
}

pub fn render(kind: Kind, obj: &Obj) -> String {
    match obj {
        Obj::Tree(t) => io::to_line(&io::augmented_tree_to_json(t)),
        Obj::Forest(f) => io::to_line(&io::augmented_forest_to_json(f)),
        Obj::Diagram(d) => io::to_line(&io::diagram_to_json(d)),
        Obj::Tube(n, s) => io::to_line(&io::tube_to_json(s, *n, kind == Kind::SignedTube)),
        Obj::Cn(n, s) => io::to_line(&io::modules_to_json(s, *n, kind == Kind::SignedCn)),
    }
}

fn edges(k: Kind) -> &'static [Kind] {
    match k {
        Kind::Tree => &[Kind::Diagram, Kind::Forest],
        Kind::Forest => &[Kind::TubeSeq, Kind::Tree],
        Kind::Diagram => &[Kind::Tree, Kind::TubeSeq, Kind::CnSeq],
        Kind::TubeSeq => &[Kind::Forest, Kind::Diagram, Kind::CnSeq],
        Kind::CnSeq => &[Kind::Diagram, Kind::TubeSeq],
        Kind::SignedTube => &[Kind::SignedCn],
        Kind::SignedCn => &[Kind::SignedTube],
    }
}

/// Shortest chain of kinds from `from` to `to`, inclusive.
pub fn route(from: Kind, to: Kind) -> Result<Vec<Kind>> {
    let mut prev: BTreeMap<Kind, Kind> = BTreeMap::new();
    let mut queue = VecDeque::from([from]);
    while let Some(k) = queue.pop_front() {
        if k == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[&cur];
                path.push(cur);
            }
            path.reverse();
            return Ok(path);
        }
        for &next in edges(k) {
            if next != from && !prev.contains_key(&next) {
                prev.insert(next, k);
                queue.push_back(next);
            }
        }
    }
    Err(Error::Invalid(format!("no conversion from {from} to {to}")))
}

fn plain<T: Copy>(s: &[Signed<T>]) -> Result<Vec<T>> {
    if s.iter().any(|x| x.shifted) {
        return Err(Error::Invalid("unexpected shift flag".into()));
    }
    Ok(s.iter().map(|x| x.obj).collect())
}

fn pairs_of_tube(s: &[Signed<TubeObject>]) -> Result<Vec<(usize, usize)>> {
    Ok(plain(s)?.iter().map(|v| v.brick_indices().expect("bricks")).collect())
}

fn step(from: Kind, to: Kind, obj: Obj, root: usize) -> Result<Obj> {
    use bijections::Model;
    Ok(match (from, obj) {
        (Kind::Tree, Obj::Tree(t)) if to == Kind::Diagram => Obj::Diagram(bijections::diagram_from_tree(&t)?),
        (Kind::Tree, Obj::Tree(t)) => Obj::Forest(truncate_root(&t)),
        (Kind::Forest, Obj::Forest(f)) if to == Kind::Tree => Obj::Tree(insert_root(&f, root)?),
        (Kind::Forest, Obj::Forest(f)) => {
            let n = f.modulus();
            Obj::Tube(n, bijections::tube_sequence_of_forest(&f)?.into_iter().map(Signed::plain).collect())
        }
        (Kind::Diagram, Obj::Diagram(d)) if to == Kind::Tree => Obj::Tree(bijections::hasse_tree(&d)?),
        (Kind::Diagram, Obj::Diagram(d)) => {
            let pairs: Vec<(usize, usize)> = d.items.iter().map(|g| (g.i, g.j)).collect();
            let model = if to == Kind::TubeSeq { Model::Tube } else { Model::Cn };
            let out = bijections::sequence_transport(d.n, &pairs, Model::Chord, model)?;
            pairs_to(to, d.n, &out)
        }
        (Kind::TubeSeq, Obj::Tube(_, s)) if to == Kind::Forest => {
            Obj::Forest(bijections::forest_of_complete_tube_sequence(&plain(&s)?)?)
        }
        (Kind::TubeSeq, Obj::Tube(n, s)) => {
            let model = if to == Kind::Diagram { Model::Chord } else { Model::Cn };
            let out = bijections::sequence_transport(n, &pairs_of_tube(&s)?, Model::Tube, model)?;
            pairs_to(to, n, &out)
        }
        (Kind::CnSeq, Obj::Cn(n, s)) => {
            let pairs: Vec<(usize, usize)> = plain(&s)?.iter().map(|m| (m.i, m.j)).collect();
            let model = if to == Kind::Diagram { Model::Chord } else { Model::Tube };
            let out = bijections::sequence_transport(n, &pairs, Model::Cn, model)?;
            pairs_to(to, n, &out)
        }
        (Kind::SignedTube, Obj::Tube(m, s)) => {
            let n = m.checked_sub(1).ok_or_else(|| Error::Invalid("tube rank must be at least 2".into()))?;
            Obj::Cn(n, full_chain(&s)?)
        }
        (Kind::SignedCn, Obj::Cn(n, s)) => Obj::Tube(n + 1, full_chain_inverse(n, &s)?),
        (k, _) => return Err(Error::Invalid(format!("object does not match kind {k}"))),
    })
}

fn pairs_to(kind: Kind, n: usize, pairs: &[(usize, usize)]) -> Obj {
    match kind {
        Kind::Diagram => Obj::Diagram(ChordSequence::from_pairs(n, pairs).expect("indices checked")),
        Kind::TubeSeq => Obj::Tube(n, pairs.iter().map(|&(i, j)| Signed::plain(TubeObject::brick(n, i, j))).collect()),
        _ => Obj::Cn(n, pairs.iter().map(|&(i, j)| Signed::plain(Module::new(i, j))).collect()),
    }
}

/// Applies the conversions along `path`.
pub fn apply(path: &[Kind], obj: Obj, root: usize) -> Result<Obj> {
    path.windows(2).try_fold(obj, |o, w| step(w[0], w[1], o, root))
}
