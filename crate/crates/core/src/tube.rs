//! The abelian tube of rank `n`: uniserial objects `W_ab`, bricks `V_ij`,
//! and vanishing of Hom and Ext.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::seq::{PairTable, Sequences};

/// Length bound for perpendicular tests, as a multiple of the rank.
pub const PERP_LENGTH_FACTOR: usize = 2;

/// `W_ab` with `a < b`, stored with `0 <= a < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TubeObject {
    pub n: usize,
    pub a: i64,
    pub b: i64,
}

impl TubeObject {
    pub fn new(n: usize, a: i64, b: i64) -> Result<Self> {
        if n == 0 || a >= b {
            return Err(Error::Invalid(format!("W[{a},{b}] is not an object of a rank {n} tube")));
        }
        let shift = a.div_euclid(n as i64) * n as i64;
        Ok(Self { n, a: a - shift, b: b - shift })
    }

    /// `V_ij`: `W_ij` if `i < j`, else `W_{i,j+n}`.
    pub fn brick(n: usize, i: usize, j: usize) -> Self {
        let (a, b) = (i as i64, j as i64);
        let b = if a < b { b } else { b + n as i64 };
        Self { n, a, b }
    }

    pub fn length(&self) -> usize {
        (self.b - self.a) as usize
    }

    pub fn is_brick(&self) -> bool {
        self.length() <= self.n
    }

    pub fn is_rigid(&self) -> bool {
        self.length() < self.n
    }

    /// `(i, j)` with `self = V_ij`.
    pub fn brick_indices(&self) -> Option<(usize, usize)> {
        self.is_brick().then(|| (self.a as usize, self.b.rem_euclid(self.n as i64) as usize))
    }

    pub fn brick_index(&self) -> Option<usize> {
        self.brick_indices().map(|(i, j)| i * self.n + j)
    }

    pub fn tau(&self) -> Self {
        Self::new(self.n, self.a - 1, self.b - 1).expect("shift keeps a < b")
    }

    /// Multiplicities of the quasi-simples `S_0 … S_{n-1}`; `S_s` sits at
    /// position `s` modulo `n` along the object.
    pub fn dim(&self) -> Vec<i64> {
        let mut d = vec![0; self.n];
        for t in self.a + 1..=self.b {
            d[t.rem_euclid(self.n as i64) as usize] += 1;
        }
        d
    }
}

impl fmt::Display for TubeObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.brick_indices() {
            Some((i, j)) => write!(f, "V{i}{j}"),
            None => write!(f, "W[{},{}]", self.a, self.b),
        }
    }
}

pub fn tau(w: &TubeObject) -> TubeObject {
    w.tau()
}

/// Whether `Hom(W_ab, W_ij)` is nonzero.
pub fn hom_nonzero(x: &TubeObject, y: &TubeObject) -> bool {
    let n = x.n as i64;
    let (a, b, i, j) = (x.a, x.b, y.a, y.b);
    let lo = (a - i).div_euclid(n) + i64::from((a - i).rem_euclid(n) != 0);
    let hi = (b - 1 - i).div_euclid(n);
    (lo..=hi).any(|p| b <= j + p * n)
}

pub fn ext_nonzero(x: &TubeObject, y: &TubeObject) -> bool {
    hom_nonzero(y, &x.tau())
}

/// `(x, y)` soft: nothing from `y` back to `x`.
pub fn soft_exceptional_pair(x: &TubeObject, y: &TubeObject) -> Result<bool> {
    for o in [x, y] {
        if !o.is_brick() {
            return Err(Error::Invalid(format!("{o} is not a brick")));
        }
    }
    Ok(!hom_nonzero(y, x) && !ext_nonzero(y, x))
}

pub fn is_soft_sequence(seq: &[TubeObject]) -> Result<bool> {
    for (p, x) in seq.iter().enumerate() {
        for y in &seq[p + 1..] {
            if !soft_exceptional_pair(x, y)? {
                return Ok(false);
            }
        }
    }
    Ok(seq.iter().all(TubeObject::is_brick))
}

pub fn is_exceptional_sequence(seq: &[TubeObject]) -> Result<bool> {
    Ok(seq.iter().all(TubeObject::is_rigid) && is_soft_sequence(seq)?)
}

pub fn pair_table(n: usize) -> PairTable {
    PairTable::build(n * n, |x, y| {
        let (v, w) = (TubeObject::brick(n, x / n, x % n), TubeObject::brick(n, y / n, y % n));
        !hom_nonzero(&w, &v) && !ext_nonzero(&w, &v)
    })
}

pub fn enumerate_tube_sequences(n: usize, k: usize, soft: bool) -> Result<impl Iterator<Item = Vec<TubeObject>>> {
    let max = if soft { n } else { n.saturating_sub(1) };
    if k > max {
        return Err(Error::LengthOutOfRange { k, n });
    }
    let allowed: Vec<bool> = (0..n * n).map(|x| soft || x / n != x % n).collect();
    let seqs = Sequences::new(Arc::new(pair_table(n)), Arc::new(allowed), k);
    Ok(seqs.map(move |idx| idx.into_iter().map(|x| TubeObject::brick(n, x / n, x % n)).collect()))
}

/// All objects of length at most `max_len`, canonical form, sorted.
pub fn objects_up_to(n: usize, max_len: usize) -> Vec<TubeObject> {
    let mut out = Vec::new();
    for a in 0..n as i64 {
        for len in 1..=max_len as i64 {
            out.push(TubeObject { n, a, b: a + len });
        }
    }
    out
}

/// Right perpendicular: `Hom(V, W) = 0 = Ext(V, W)` for all `V` in `s`.
pub fn perp_indecomposables(s: &[TubeObject], n: usize, max_len: usize) -> Vec<TubeObject> {
    objects_up_to(n, max_len)
        .into_iter()
        .filter(|w| s.iter().all(|v| !hom_nonzero(v, w) && !ext_nonzero(v, w)))
        .collect()
}

/// Left perpendicular: `Hom(W, V) = 0 = Ext(W, V)` for all `V` in `s`.
pub fn left_perp_indecomposables(s: &[TubeObject], n: usize, max_len: usize) -> Vec<TubeObject> {
    objects_up_to(n, max_len)
        .into_iter()
        .filter(|w| s.iter().all(|v| !hom_nonzero(w, v) && !ext_nonzero(w, v)))
        .collect()
}

fn check_position(seq: &[TubeObject], j: usize) -> Result<usize> {
    if j == 0 || j > seq.len() {
        return Err(Error::LabelOutOfRange { label: j, n: seq.len() });
    }
    Ok(seq[0].n)
}

/// Whether `seq[j-1]` is projective in the right perpendicular of the later
/// terms, testing objects up to length `max_len`.
pub fn is_rel_projective_oracle(seq: &[TubeObject], j: usize, max_len: usize) -> Result<bool> {
    let n = check_position(seq, j)?;
    let v = &seq[j - 1];
    Ok(perp_indecomposables(&seq[j..], n, max_len).iter().all(|y| !ext_nonzero(v, y)))
}

/// Dual of [`is_rel_projective_oracle`] using the left perpendicular of the
/// earlier terms.
pub fn is_rel_injective_oracle(seq: &[TubeObject], j: usize, max_len: usize) -> Result<bool> {
    let n = check_position(seq, j)?;
    let v = &seq[j - 1];
    Ok(left_perp_indecomposables(&seq[..j - 1], n, max_len).iter().all(|y| !ext_nonzero(y, v)))
}

pub fn default_length_bound(n: usize) -> usize {
    PERP_LENGTH_FACTOR * n
}
