//! Oriented chords and loops on a circle with `n` marked points `0..n`,
//! numbered clockwise.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::seq::{PairTable, Sequences};

/// `γ_ij`; a loop when `i == j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    pub i: usize,
    pub j: usize,
}

impl Chord {
    pub fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }

    pub fn is_loop(&self) -> bool {
        self.i == self.j
    }

    pub fn rotate(&self, n: usize, t: i64) -> Self {
        let m = n as i64;
        Self {
            i: (self.i as i64 - t).rem_euclid(m) as usize,
            j: (self.j as i64 - t).rem_euclid(m) as usize,
        }
    }

    pub fn index(&self, n: usize) -> usize {
        self.i * n + self.j
    }

    pub fn from_index(n: usize, x: usize) -> Self {
        Self { i: x / n, j: x % n }
    }

    /// Arcs on the left of the chord; arc `a` runs from point `a` to `a + 1`.
    pub fn support(&self, n: usize) -> ArcSet {
        if self.is_loop() {
            return ArcSet::full(n);
        }
        let mut s = ArcSet::default();
        let mut a = self.i;
        while a != self.j {
            s.insert(a);
            a = (a + 1) % n;
        }
        s
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}{}", self.i, self.j)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcSet(u64);

impl ArcSet {
    pub fn full(n: usize) -> Self {
        assert!(n <= 64, "circle too large");
        Self(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn insert(&mut self, a: usize) {
        self.0 |= 1 << a;
    }

    pub fn contains(&self, a: usize) -> bool {
        self.0 >> a & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(&self, other: &ArcSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(&self, other: &ArcSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn minus(&self, other: &ArcSet) -> ArcSet {
        ArcSet(self.0 & !other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..64).filter(|&a| self.contains(a))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Whether `(g1, g2)` may appear in this order.
pub fn noncrossing_pair(g1: Chord, g2: Chord, n: usize) -> bool {
    let k = match (g2.j + n - g2.i) % n {
        0 => n,
        k => k,
    };
    let r = g1.rotate(n, g2.i as i64);
    let (lo, hi) = if r.i < r.j { (r.i, r.j) } else { (r.j, n) };
    !(lo < k && k <= hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    ChordsOnly,
    WithLoops,
}

impl Mode {
    pub fn max_len(self, n: usize) -> usize {
        match self {
            Mode::ChordsOnly => n.saturating_sub(1),
            Mode::WithLoops => n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordSequence {
    pub n: usize,
    pub items: Vec<Chord>,
}

impl ChordSequence {
    pub fn new(n: usize, items: Vec<Chord>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("circle needs at least one point".into()));
        }
        if let Some(g) = items.iter().find(|g| g.i >= n || g.j >= n) {
            return Err(Error::Invalid(format!("{g} has a point outside 0..{n}")));
        }
        Ok(Self { n, items })
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, pairs.iter().map(|&(i, j)| Chord::new(i, j)).collect())
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn loop_position(&self) -> Option<usize> {
        self.items.iter().position(Chord::is_loop).map(|p| p + 1)
    }

    pub fn is_pointed(&self) -> bool {
        self.len() == self.n && self.items.iter().filter(|g| g.is_loop()).count() == 1 && is_valid_sequence(self)
    }

    pub fn indices(&self) -> Vec<usize> {
        self.items.iter().map(|g| g.index(self.n)).collect()
    }
}

impl fmt::Display for ChordSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.items.iter().map(Chord::to_string).collect();
        write!(f, "({})", toks.join(","))
    }
}

/// Whether the unoriented chords contain a cycle, by union-find on the points.
fn has_cycle(n: usize, items: &[Chord]) -> bool {
    let mut up: Vec<usize> = (0..n).collect();
    fn find(up: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while up[x] != x {
            up[x] = up[up[x]];
            x = up[x];
        }
        x
    }
    for g in items {
        let (a, b) = (find(&mut up, g.i), find(&mut up, g.j));
        if a == b {
            return true;
        }
        up[a] = b;
    }
    false
}

pub fn is_valid_sequence(s: &ChordSequence) -> bool {
    let n = s.n;
    let ok = s
        .items
        .iter()
        .enumerate()
        .all(|(p, &a)| s.items[p + 1..].iter().all(|&b| noncrossing_pair(a, b, n)));
    if ok && !s.items.iter().any(Chord::is_loop) {
        assert!(!has_cycle(n, &s.items), "pairwise noncrossing chords {s} contain a cycle");
    }
    ok
}

/// Arcs lying on the right of every chord of a loop-free sequence.
pub fn central_region(s: &ChordSequence) -> Result<ArcSet> {
    if s.items.iter().any(Chord::is_loop) || !is_valid_sequence(s) {
        return Err(Error::InvalidSequence(s.to_string()));
    }
    let supports: Vec<ArcSet> = s.items.iter().map(|g| g.support(s.n)).collect();
    let region = supports.iter().fold(ArcSet::full(s.n), |acc, sup| acc.minus(sup));
    assert!(!region.is_empty(), "no central region for {s}");
    for sup in &supports {
        let inside = region.iter().filter(|&a| sup.contains(a)).count();
        assert!(inside == 0 || inside == region.len(), "central region of {s} is split");
    }
    Ok(region)
}

pub fn rotate(s: &ChordSequence, t: i64) -> ChordSequence {
    ChordSequence { n: s.n, items: s.items.iter().map(|g| g.rotate(s.n, t)).collect() }
}

pub fn pair_table(n: usize) -> PairTable {
    PairTable::build(n * n, |a, b| noncrossing_pair(Chord::from_index(n, a), Chord::from_index(n, b), n))
}

fn alphabet(n: usize, mode: Mode) -> Vec<bool> {
    (0..n * n).map(|x| mode == Mode::WithLoops || x / n != x % n).collect()
}

pub fn enumerate_sequences(n: usize, k: usize, mode: Mode) -> Result<impl Iterator<Item = ChordSequence>> {
    if k > mode.max_len(n) {
        return Err(Error::LengthOutOfRange { k, n });
    }
    let seqs = Sequences::new(Arc::new(pair_table(n)), Arc::new(alphabet(n, mode)), k);
    Ok(seqs.map(move |idx| ChordSequence { n, items: idx.into_iter().map(|x| Chord::from_index(n, x)).collect() }))
}

/// All `n^n` pointed diagrams in lexicographic order.
pub fn enumerate_pointed(n: usize) -> impl Iterator<Item = ChordSequence> {
    enumerate_sequences(n, n, Mode::WithLoops).expect("length n is in range").filter(|s| s.is_pointed())
}

pub type Lifts = BTreeMap<Vec<(usize, usize)>, Vec<ChordSequence>>;

/// Unoriented ordered chord diagrams, each with its oriented lifts.
pub fn enumerate_unoriented(n: usize, k: usize) -> Result<Lifts> {
    if k == 0 || k >= n {
        return Err(Error::LengthOutOfRange { k, n });
    }
    let mut out: BTreeMap<Vec<(usize, usize)>, Vec<ChordSequence>> = BTreeMap::new();
    for s in enumerate_sequences(n, k, Mode::ChordsOnly)? {
        let key = s.items.iter().map(|g| (g.i.min(g.j), g.i.max(g.j))).collect();
        out.entry(key).or_default().push(s);
    }
    Ok(out)
}

pub fn count_unoriented_diagrams(n: usize, k: usize) -> Result<usize> {
    Ok(enumerate_unoriented(n, k)?.len())
}

/// First maximal extension of `s` in lexicographic backtracking order.
pub fn complete_diagram(s: &ChordSequence, mode: Mode) -> Result<ChordSequence> {
    let n = s.n;
    let max = mode.max_len(n);
    if !is_valid_sequence(s) || s.len() > max {
        return Err(Error::InvalidSequence(s.to_string()));
    }
    if mode == Mode::ChordsOnly && s.items.iter().any(Chord::is_loop) {
        return Err(Error::InvalidSequence(s.to_string()));
    }
    let mut seqs = Sequences::with_prefix(Arc::new(pair_table(n)), Arc::new(alphabet(n, mode)), max, s.indices());
    let idx = seqs.next().ok_or_else(|| Error::InvalidSequence(format!("{s} has no completion")))?;
    Ok(ChordSequence { n, items: idx.into_iter().map(|x| Chord::from_index(n, x)).collect() })
}
