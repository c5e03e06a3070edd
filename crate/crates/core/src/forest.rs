//! Rooted labeled forests and trees with augmentations.
//!
//! Vertices carry labels `1..=n`. A parent entry of `0` marks a root.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexClass {
    Root,
    Ascending,
    Descending,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedForest {
    parent: Vec<usize>,
}

impl RootedForest {
    pub fn new(parent: Vec<usize>) -> Result<Self> {
        let n = parent.len();
        for &p in &parent {
            if p > n {
                return Err(Error::LabelOutOfRange { label: p, n });
            }
        }
        for start in 1..=n {
            let mut x = start;
            let mut steps = 0;
            while x != 0 {
                x = parent[x - 1];
                steps += 1;
                if steps > n {
                    return Err(Error::Cyclic(start));
                }
            }
        }
        Ok(Self { parent })
    }

    pub fn empty() -> Self {
        Self { parent: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Parent array indexed by `label - 1`, with `0` for roots.
    pub fn parents(&self) -> &[usize] {
        &self.parent
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.len() {
            return Err(Error::LabelOutOfRange { label: i, n: self.len() });
        }
        Ok(())
    }

    pub fn parent(&self, i: usize) -> Result<Option<usize>> {
        self.check(i)?;
        Ok(match self.parent[i - 1] {
            0 => None,
            p => Some(p),
        })
    }

    /// Children of `i` in increasing label order; `i = 0` lists the roots.
    pub fn children(&self, i: usize) -> Vec<usize> {
        (1..=self.len()).filter(|&c| self.parent[c - 1] == i).collect()
    }

    pub fn roots(&self) -> Vec<usize> {
        self.children(0)
    }

    pub fn is_tree(&self) -> bool {
        self.roots().len() == 1
    }

    /// Subtree sizes of all vertices, indexed by `label - 1`.
    pub fn weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.len()];
        for v in 1..=self.len() {
            let mut x = v;
            while x != 0 {
                w[x - 1] += 1;
                x = self.parent[x - 1];
            }
        }
        w
    }

    pub fn weight(&self, i: usize) -> Result<usize> {
        self.check(i)?;
        Ok(self.weights()[i - 1])
    }

    pub fn reduced_weights(&self) -> Vec<usize> {
        self.weights()
            .into_iter()
            .zip(&self.parent)
            .map(|(w, &p)| if p == 0 { w } else { 0 })
            .collect()
    }

    pub fn reduced_weight(&self, i: usize) -> Result<usize> {
        self.check(i)?;
        Ok(self.reduced_weights()[i - 1])
    }

    pub fn vertex_class(&self, i: usize) -> Result<VertexClass> {
        Ok(match self.parent(i)? {
            None => VertexClass::Root,
            Some(p) if p > i => VertexClass::Descending,
            Some(_) => VertexClass::Ascending,
        })
    }

    /// Applies the label bijection `map` (indexed by `label - 1`) to every vertex.
    pub fn relabel(&self, map: &[usize]) -> Self {
        let mut parent = vec![0; self.len()];
        for v in 1..=self.len() {
            let p = self.parent[v - 1];
            parent[map[v - 1] - 1] = if p == 0 { 0 } else { map[p - 1] };
        }
        Self { parent }
    }

    /// Same shape with labels `i` and `i + 1` exchanged.
    pub fn swap_labels(&self, i: usize) -> Self {
        let map: Vec<usize> = (1..=self.len())
            .map(|v| match v {
                v if v == i => i + 1,
                v if v == i + 1 => i,
                v => v,
            })
            .collect();
        self.relabel(&map)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedTree(RootedForest);

impl RootedTree {
    pub fn new(forest: RootedForest) -> Result<Self> {
        let roots = forest.roots().len();
        if roots != 1 {
            return Err(Error::NotATree(roots));
        }
        Ok(Self(forest))
    }

    pub fn from_parents(parent: Vec<usize>) -> Result<Self> {
        Self::new(RootedForest::new(parent)?)
    }

    pub fn forest(&self) -> &RootedForest {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn root(&self) -> usize {
        self.0.roots()[0]
    }

    /// Tree variant: `1` at the root, the subtree size at children of the
    /// root, `0` elsewhere.
    pub fn reduced_weights(&self) -> Vec<usize> {
        let r = self.root();
        let w = self.0.weights();
        (1..=self.len())
            .map(|v| match self.0.parent[v - 1] {
                0 => 1,
                p if p == r => w[v - 1],
                _ => 0,
            })
            .collect()
    }

    pub fn reduced_weight(&self, i: usize) -> Result<usize> {
        self.0.check(i)?;
        Ok(self.reduced_weights()[i - 1])
    }

    /// Labels increased by one modulo `n`.
    pub fn shift_labels(&self) -> Self {
        let n = self.len();
        let map: Vec<usize> = (1..=n).map(|v| v % n + 1).collect();
        Self(self.0.relabel(&map))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AugmentedTree {
    pub tree: RootedTree,
    pub epsilon: usize,
}

impl AugmentedTree {
    pub fn new(tree: RootedTree, epsilon: i64) -> Self {
        let n = tree.len() as i64;
        Self { tree, epsilon: epsilon.rem_euclid(n) as usize }
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }
}

/// A forest on `n - 1` vertices with an augmentation modulo `n`, stored by
/// its value at `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AugmentedForest {
    pub forest: RootedForest,
    epsilon0: usize,
}

impl AugmentedForest {
    pub fn new(forest: RootedForest, epsilon0: i64) -> Self {
        let n = forest.len() as i64 + 1;
        Self { forest, epsilon0: epsilon0.rem_euclid(n) as usize }
    }

    /// Builds from a full map, checking the recurrence.
    pub fn from_map(forest: RootedForest, map: &[usize]) -> Result<Self> {
        let out = Self::new(forest, *map.first().ok_or_else(|| Error::Invalid("empty epsilon map".into()))? as i64);
        if out.epsilon_map() != map {
            return Err(Error::Invalid(format!("epsilon map {map:?} violates the recurrence")));
        }
        Ok(out)
    }

    pub fn modulus(&self) -> usize {
        self.forest.len() + 1
    }

    pub fn epsilon0(&self) -> usize {
        self.epsilon0
    }

    /// `ε(0), …, ε(n-1)`.
    pub fn epsilon_map(&self) -> Vec<usize> {
        let n = self.modulus() as i64;
        let mut out = Vec::with_capacity(self.modulus());
        let mut e = self.epsilon0 as i64;
        out.push(e as usize);
        for w in self.forest.reduced_weights() {
            e = (e - w as i64).rem_euclid(n);
            out.push(e as usize);
        }
        out
    }
}

pub fn truncate_root(t: &AugmentedTree) -> AugmentedForest {
    let r = t.tree.root();
    let n = t.len();
    let old = t.tree.forest().parents();
    let down = |x: usize| if x > r { x - 1 } else { x };
    let parent: Vec<usize> = (1..=n)
        .filter(|&v| v != r)
        .map(|v| match old[v - 1] {
            p if p == r => 0,
            p => down(p),
        })
        .collect();
    let forest = RootedForest { parent };
    let offset: usize = forest.reduced_weights()[..r - 1].iter().sum();
    AugmentedForest::new(forest, (t.epsilon + offset) as i64)
}

pub fn insert_root(f: &AugmentedForest, r: usize) -> Result<AugmentedTree> {
    let n = f.modulus();
    if r == 0 || r > n {
        return Err(Error::LabelOutOfRange { label: r, n });
    }
    let up = |x: usize| if x >= r { x + 1 } else { x };
    let mut parent = vec![0; n];
    for (idx, &p) in f.forest.parents().iter().enumerate() {
        parent[up(idx + 1) - 1] = if p == 0 { r } else { up(p) };
    }
    let tree = RootedTree(RootedForest { parent });
    Ok(AugmentedTree::new(tree, f.epsilon_map()[r - 1] as i64))
}

/// Lexicographic backtracking over acyclic parent arrays.
#[derive(Debug, Clone)]
pub struct ParentArrays {
    m: usize,
    tree_only: bool,
    parent: Vec<usize>,
    cand: Vec<usize>,
    level: usize,
    done: bool,
}

impl ParentArrays {
    fn new(m: usize, tree_only: bool) -> Self {
        Self {
            m,
            tree_only,
            parent: vec![0; m],
            cand: vec![0; m.max(1)],
            level: 0,
            done: tree_only && m == 0,
        }
    }

    fn closes_cycle(&self, v: usize, p: usize) -> bool {
        let mut x = p;
        loop {
            if x == v {
                return true;
            }
            if x == 0 || x > self.level {
                return false;
            }
            x = self.parent[x - 1];
        }
    }

    fn has_root(&self) -> bool {
        self.parent[..self.level].contains(&0)
    }
}

impl Iterator for ParentArrays {
    type Item = RootedForest;

    fn next(&mut self) -> Option<RootedForest> {
        loop {
            if self.done {
                return None;
            }
            if self.level == self.m {
                let out = RootedForest { parent: self.parent.clone() };
                if self.m == 0 {
                    self.done = true;
                } else {
                    self.level -= 1;
                }
                return Some(out);
            }
            let v = self.level + 1;
            let mut advanced = false;
            while self.cand[self.level] <= self.m {
                let p = self.cand[self.level];
                self.cand[self.level] += 1;
                if p == v || (p == 0 && self.tree_only && self.has_root()) || self.closes_cycle(v, p) {
                    continue;
                }
                self.parent[self.level] = p;
                self.level += 1;
                if self.level < self.m {
                    self.cand[self.level] = 0;
                }
                advanced = true;
                break;
            }
            if !advanced {
                if self.level == 0 {
                    self.done = true;
                } else {
                    self.level -= 1;
                }
            }
        }
    }
}

/// All forests on `m` vertices; `(m+1)^(m-1)` of them.
pub fn enumerate_forests(m: usize) -> ParentArrays {
    ParentArrays::new(m, false)
}

/// All rooted trees on `n` vertices; `n^(n-1)` of them.
pub fn enumerate_trees(n: usize) -> impl Iterator<Item = RootedTree> {
    ParentArrays::new(n, true).map(RootedTree)
}

pub fn enumerate_augmented_trees(n: usize) -> impl Iterator<Item = AugmentedTree> {
    enumerate_trees(n).flat_map(move |t| (0..n).map(move |e| AugmentedTree { tree: t.clone(), epsilon: e }))
}

/// Augmented forests on `n - 1` vertices; `n^(n-1)` of them.
pub fn enumerate_augmented_forests(n: usize) -> impl Iterator<Item = AugmentedForest> {
    enumerate_forests(n.saturating_sub(1))
        .flat_map(move |f| (0..n).map(move |e| AugmentedForest { forest: f.clone(), epsilon0: e }))
}
