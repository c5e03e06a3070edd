//! JSON records for every object the library handles.
//!
//! Trees: `{"n":4,"parent":[2,0,4,2],"epsilon":3}`.
//! Forests: `{"n":4,"parent":[0,3,0],"epsilon_map":[0,3,3,1]}`; with a map,
//! `n` is the modulus and the forest has `n - 1` vertices.
//! Diagrams: `{"n":4,"chords":[[3,0],[3,3]]}`.
//! Tube sequences: `{"n":4,"objects":[[3,0],[1,2]],"shifted":[false,true]}`.
//! Module sequences: `{"n":3,"modules":[[0,0],[1,2]],"shifted":[true,true]}`.

use serde::{Deserialize, Serialize};

use crate::chord::{Chord, ChordSequence};
use crate::error::{Error, Result};
use crate::forest::{AugmentedForest, AugmentedTree, RootedForest, RootedTree};
use crate::hereditary::Module;
use crate::signed::Signed;
use crate::tube::TubeObject;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeJson {
    pub n: usize,
    pub parent: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForestJson {
    pub n: usize,
    pub parent: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_map: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    pub n: usize,
    pub chords: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TubeJson {
    pub n: usize,
    pub objects: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shifted: Option<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModulesJson {
    pub n: usize,
    pub modules: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shifted: Option<Vec<bool>>,
}

pub fn parse<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("records serialize")
}

fn check_n(n: usize, len: usize, what: &str) -> Result<()> {
    if n != len {
        return Err(Error::Invalid(format!("n = {n} but the {what} has length {len}")));
    }
    Ok(())
}

pub fn tree_to_json(t: &RootedTree) -> TreeJson {
    TreeJson { n: t.len(), parent: t.forest().parents().to_vec(), epsilon: None }
}

pub fn augmented_tree_to_json(t: &AugmentedTree) -> TreeJson {
    TreeJson { epsilon: Some(t.epsilon as i64), ..tree_to_json(&t.tree) }
}

pub fn tree_from_json(j: &TreeJson) -> Result<RootedTree> {
    check_n(j.n, j.parent.len(), "parent array")?;
    RootedTree::from_parents(j.parent.clone())
}

pub fn augmented_tree_from_json(j: &TreeJson) -> Result<AugmentedTree> {
    let eps = j.epsilon.ok_or_else(|| Error::Invalid("augmented tree needs `epsilon`".into()))?;
    Ok(AugmentedTree::new(tree_from_json(j)?, eps))
}

pub fn forest_to_json(f: &RootedForest) -> ForestJson {
    ForestJson { n: f.len(), parent: f.parents().to_vec(), epsilon_map: None }
}

pub fn augmented_forest_to_json(f: &AugmentedForest) -> ForestJson {
    ForestJson { n: f.modulus(), parent: f.forest.parents().to_vec(), epsilon_map: Some(f.epsilon_map()) }
}

pub fn forest_from_json(j: &ForestJson) -> Result<RootedForest> {
    check_n(j.n, j.parent.len(), "parent array")?;
    RootedForest::new(j.parent.clone())
}

pub fn augmented_forest_from_json(j: &ForestJson) -> Result<AugmentedForest> {
    let map = j.epsilon_map.as_ref().ok_or_else(|| Error::Invalid("augmented forest needs `epsilon_map`".into()))?;
    check_n(j.n, j.parent.len() + 1, "parent array plus one")?;
    check_n(j.n, map.len(), "epsilon map")?;
    if let Some(&e) = map.iter().find(|&&e| e >= j.n) {
        return Err(Error::Invalid(format!("epsilon value {e} is not a residue mod {}", j.n)));
    }
    AugmentedForest::from_map(RootedForest::new(j.parent.clone())?, map)
}

pub fn diagram_to_json(s: &ChordSequence) -> DiagramJson {
    DiagramJson { n: s.n, chords: s.items.iter().map(|g| [g.i, g.j]).collect() }
}

/// Parses a diagram; validity of the ordering is checked by the caller.
pub fn diagram_from_json(j: &DiagramJson) -> Result<ChordSequence> {
    ChordSequence::new(j.n, j.chords.iter().map(|&[i, j]| Chord::new(i, j)).collect())
}

fn shifts(len: usize, shifted: &Option<Vec<bool>>) -> Result<Vec<bool>> {
    match shifted {
        None => Ok(vec![false; len]),
        Some(s) if s.len() == len => Ok(s.clone()),
        Some(s) => Err(Error::Invalid(format!("{} shift flags for {len} objects", s.len()))),
    }
}

fn pair_in_range(n: usize, [i, j]: [usize; 2]) -> Result<()> {
    if i >= n || j >= n {
        return Err(Error::Invalid(format!("index pair ({i},{j}) out of range for n = {n}")));
    }
    Ok(())
}

pub fn tube_to_json(seq: &[Signed<TubeObject>], n: usize, with_shifts: bool) -> TubeJson {
    TubeJson {
        n,
        objects: seq
            .iter()
            .map(|s| {
                let (i, j) = s.obj.brick_indices().expect("sequences hold bricks");
                [i, j]
            })
            .collect(),
        shifted: with_shifts.then(|| seq.iter().map(|s| s.shifted).collect()),
    }
}

pub fn tube_from_json(j: &TubeJson) -> Result<Vec<Signed<TubeObject>>> {
    let flags = shifts(j.objects.len(), &j.shifted)?;
    j.objects
        .iter()
        .zip(flags)
        .map(|(&p, shifted)| {
            pair_in_range(j.n, p)?;
            Ok(Signed { obj: TubeObject::brick(j.n, p[0], p[1]), shifted })
        })
        .collect()
}

pub fn modules_to_json(seq: &[Signed<Module>], n: usize, with_shifts: bool) -> ModulesJson {
    ModulesJson {
        n,
        modules: seq.iter().map(|s| [s.obj.i, s.obj.j]).collect(),
        shifted: with_shifts.then(|| seq.iter().map(|s| s.shifted).collect()),
    }
}

/// Parses `C_n` modules, indices in `0..n`.
pub fn modules_from_json(j: &ModulesJson) -> Result<Vec<Signed<Module>>> {
    let flags = shifts(j.modules.len(), &j.shifted)?;
    j.modules
        .iter()
        .zip(flags)
        .map(|(&p, shifted)| {
            pair_in_range(j.n, p)?;
            Ok(Signed { obj: Module::new(p[0], p[1]), shifted })
        })
        .collect()
}
