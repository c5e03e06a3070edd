//! Finite type hereditary categories given by dimension vectors, an Euler
//! form and the Auslander-Reiten translate: type `C_n` and linear `A_m`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::seq::{PairTable, Sequences};
use crate::signed::Signed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// `K ← K ← ⋯ ← K ← F` with `[F:K] = 2`.
    C,
    /// `1 ← 2 ← ⋯ ← m`.
    A,
}

/// `M_ij`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Module {
    pub i: usize,
    pub j: usize,
}

impl Module {
    pub fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{}{}", self.i, self.j)
    }
}

/// `(μ, λ)`: a `B_μ` block and `A_{λ_p}` blocks, `λ` ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PerpType {
    pub mu: usize,
    pub lambda: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct CatData {
    kind: Kind,
    rank: usize,
    objects: Vec<Module>,
    index: HashMap<Module, usize>,
    dims: Vec<Vec<i64>>,
    tau: Vec<Option<usize>>,
    tau_inv: Vec<Option<usize>>,
    euler: Vec<Vec<i64>>,
    hom: Vec<i64>,
    ext: Vec<i64>,
    pairs: Arc<PairTable>,
}

fn unit(n: usize, s: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[s - 1] = 1;
    v
}

fn add(acc: &mut [i64], v: &[i64], sign: i64) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += sign * b;
    }
}

impl CatData {
    pub fn type_c(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("rank must be positive".into()));
        }
        let alpha = |s: usize| if s < n { unit(n, s) } else { vec![1; n] };
        let mut objects = Vec::new();
        let mut dims = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut d = vec![0; n];
                if i < j {
                    (i + 1..=j).for_each(|s| add(&mut d, &alpha(s), 1));
                } else {
                    (i + 1..=n).for_each(|s| add(&mut d, &alpha(s), 1));
                    (1..=j).for_each(|s| add(&mut d, &alpha(s), -1));
                }
                objects.push(Module::new(i, j));
                dims.push(d);
            }
        }
        let mut euler = vec![vec![0; n]; n];
        for s in 0..n {
            euler[s][s] = 1;
            if s > 0 {
                euler[s][s - 1] = -1;
            }
        }
        euler[n - 1][n - 1] = 2;
        if n > 1 {
            euler[n - 1][n - 2] = -2;
        }
        let tau_of = |m: Module| (m.i > 0).then(|| Module::new(m.i - 1, (m.j + n - 1) % n));
        Self::finish(Kind::C, n, objects, dims, euler, tau_of)
    }

    pub fn type_a(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("rank must be positive".into()));
        }
        let mut objects = Vec::new();
        let mut dims = Vec::new();
        for i in 0..m {
            for j in i + 1..=m {
                let mut d = vec![0; m];
                (i + 1..=j).for_each(|s| d[s - 1] = 1);
                objects.push(Module::new(i, j));
                dims.push(d);
            }
        }
        let mut euler = vec![vec![0; m]; m];
        for s in 0..m {
            euler[s][s] = 1;
            if s > 0 {
                euler[s][s - 1] = -1;
            }
        }
        let tau_of = |x: Module| (x.i > 0).then(|| Module::new(x.i - 1, x.j - 1));
        Self::finish(Kind::A, m, objects, dims, euler, tau_of)
    }

    fn finish(
        kind: Kind,
        rank: usize,
        objects: Vec<Module>,
        dims: Vec<Vec<i64>>,
        euler: Vec<Vec<i64>>,
        tau_of: impl Fn(Module) -> Option<Module>,
    ) -> Result<Self> {
        let index: HashMap<Module, usize> = objects.iter().enumerate().map(|(k, &m)| (m, k)).collect();
        let tau: Vec<Option<usize>> = objects.iter().map(|&m| tau_of(m).map(|t| index[&t])).collect();
        let mut tau_inv = vec![None; objects.len()];
        for (x, t) in tau.iter().enumerate() {
            if let Some(t) = *t {
                tau_inv[t] = Some(x);
            }
        }
        let size = objects.len();
        let mut data = Self {
            kind,
            rank,
            objects,
            index,
            dims,
            tau,
            tau_inv,
            euler,
            hom: Vec::new(),
            ext: Vec::new(),
            pairs: Arc::new(PairTable::build(0, |_, _| false)),
        };
        let mut memo = vec![None; size * size];
        for x in 0..size {
            for y in 0..size {
                data.hom_rec(x, y, &mut memo, 0)?;
            }
        }
        data.hom = memo.into_iter().map(|v| v.expect("filled")).collect();
        data.ext = (0..size * size)
            .map(|p| match data.tau[p / size] {
                None => 0,
                Some(t) => data.hom[p % size * size + t],
            })
            .collect();
        if let Some(p) = (0..size * size).find(|&p| data.hom[p] < 0 || data.ext[p] < 0) {
            return Err(Error::Invalid(format!(
                "negative morphism space between {} and {}",
                data.objects[p / size],
                data.objects[p % size]
            )));
        }
        data.pairs = Arc::new(PairTable::build(size, |x, y| data.exceptional_pair(x, y)));
        Ok(data)
    }

    fn hom_rec(&self, x: usize, y: usize, memo: &mut [Option<i64>], depth: usize) -> Result<i64> {
        let size = self.objects.len();
        if let Some(v) = memo[x * size + y] {
            return Ok(v);
        }
        if depth > size * size {
            return Err(Error::Invalid("hom recursion does not terminate".into()));
        }
        let e = self.euler_form(&self.dims[x], &self.dims[y]);
        let v = match self.tau[x] {
            None => e,
            Some(t) => e + self.hom_rec(y, t, memo, depth + 1)?,
        };
        memo[x * size + y] = Some(v);
        Ok(v)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[Module] {
        &self.objects
    }

    pub fn module(&self, x: usize) -> Module {
        self.objects[x]
    }

    pub fn index_of(&self, m: Module) -> Option<usize> {
        self.index.get(&m).copied()
    }

    pub fn dim(&self, x: usize) -> &[i64] {
        &self.dims[x]
    }

    pub fn tau(&self, x: usize) -> Option<usize> {
        self.tau[x]
    }

    pub fn tau_inverse(&self, x: usize) -> Option<usize> {
        self.tau_inv[x]
    }

    pub fn is_projective(&self, x: usize) -> bool {
        self.tau[x].is_none()
    }

    pub fn is_injective(&self, x: usize) -> bool {
        self.tau_inv[x].is_none()
    }

    pub fn euler_matrix(&self) -> &[Vec<i64>] {
        &self.euler
    }

    pub fn euler_form(&self, d: &[i64], e: &[i64]) -> i64 {
        let mut s = 0;
        for (r, row) in self.euler.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                s += d[r] * v * e[c];
            }
        }
        s
    }

    /// `-E^{-1} E^T`, acting on column vectors.
    pub fn coxeter_matrix(&self) -> Vec<Vec<Ratio<i64>>> {
        let n = self.rank;
        let mut a: Vec<Vec<Ratio<i64>>> = self.euler.iter().map(|r| r.iter().map(|&v| Ratio::from(v)).collect()).collect();
        let mut b: Vec<Vec<Ratio<i64>>> = (0..n).map(|r| (0..n).map(|c| Ratio::from(self.euler[c][r])).collect()).collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r][col] != Ratio::from(0)).expect("Euler matrix is invertible");
            a.swap(col, piv);
            b.swap(col, piv);
            let inv = Ratio::from(1) / a[col][col];
            for c in 0..n {
                a[col][c] *= inv;
                b[col][c] *= inv;
            }
            for r in 0..n {
                if r != col && a[r][col] != Ratio::from(0) {
                    let f = a[r][col];
                    for c in 0..n {
                        let (ac, bc) = (a[col][c], b[col][c]);
                        a[r][c] -= f * ac;
                        b[r][c] -= f * bc;
                    }
                }
            }
        }
        b.into_iter().map(|r| r.into_iter().map(|v| -v).collect()).collect()
    }

    pub fn hom(&self, x: usize, y: usize) -> i64 {
        self.hom[x * self.len() + y]
    }

    pub fn ext(&self, x: usize, y: usize) -> i64 {
        self.ext[x * self.len() + y]
    }

    /// `(x, y)` exceptional: `Hom(y, x) = 0 = Ext(y, x)`.
    pub fn exceptional_pair(&self, x: usize, y: usize) -> bool {
        self.hom(y, x) == 0 && self.ext(y, x) == 0
    }

    pub fn pair_table(&self) -> Arc<PairTable> {
        Arc::clone(&self.pairs)
    }

    pub fn is_exceptional_sequence(&self, seq: &[usize]) -> bool {
        self.pairs.accepts(seq)
    }

    pub fn enumerate_sequences(&self, k: usize) -> Result<Sequences> {
        if k > self.rank {
            return Err(Error::LengthOutOfRange { k, n: self.rank });
        }
        Ok(Sequences::new(self.pair_table(), Arc::new(vec![true; self.len()]), k))
    }

    /// Objects `Y` with `Hom(E, Y) = 0 = Ext(E, Y)` for all `E` in `s`.
    pub fn perp(&self, s: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|&y| s.iter().all(|&e| self.hom(e, y) == 0 && self.ext(e, y) == 0)).collect()
    }

    /// Objects `Y` with `Hom(Y, E) = 0 = Ext(Y, E)` for all `E` in `s`.
    pub fn left_perp(&self, s: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|&y| s.iter().all(|&e| self.hom(y, e) == 0 && self.ext(y, e) == 0)).collect()
    }

    fn check_position(seq: &[usize], j: usize) -> Result<()> {
        if j == 0 || j > seq.len() {
            return Err(Error::LabelOutOfRange { label: j, n: seq.len() });
        }
        Ok(())
    }

    /// Whether `seq[j-1]` is projective in the right perpendicular of the later terms.
    pub fn is_rel_projective(&self, seq: &[usize], j: usize) -> Result<bool> {
        Self::check_position(seq, j)?;
        let e = seq[j - 1];
        Ok(self.perp(&seq[j..]).into_iter().all(|y| self.ext(e, y) == 0))
    }

    pub fn is_rel_injective(&self, seq: &[usize], j: usize) -> Result<bool> {
        Self::check_position(seq, j)?;
        let e = seq[j - 1];
        Ok(self.left_perp(&seq[..j - 1]).into_iter().all(|y| self.ext(y, e) == 0))
    }

    pub fn rel_projective_vector(&self, seq: &[usize]) -> Vec<bool> {
        (1..=seq.len()).map(|j| self.is_rel_projective(seq, j).expect("position in range")).collect()
    }

    /// Whether `{x, y}` can sit together in a cluster tilting set.
    pub fn cluster_ext_orthogonal(&self, x: Signed<usize>, y: Signed<usize>) -> Result<bool> {
        for s in [x, y] {
            if s.shifted && !self.is_projective(s.obj) {
                return Err(Error::ShiftedNonProjective(self.objects[s.obj].to_string()));
            }
        }
        Ok(match (x.shifted, y.shifted) {
            (false, false) => self.ext(x.obj, y.obj) == 0 && self.ext(y.obj, x.obj) == 0,
            (true, true) => true,
            (true, false) => self.hom(x.obj, y.obj) == 0,
            (false, true) => self.hom(y.obj, x.obj) == 0,
        })
    }

    /// Type of the right perpendicular of an exceptional sequence.
    pub fn classify_perp_type(&self, seq: &[usize]) -> Result<PerpType> {
        let perp = self.perp(seq);
        let mut up: Vec<usize> = (0..perp.len()).collect();
        fn find(up: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while up[x] != x {
                up[x] = up[up[x]];
                x = up[x];
            }
            x
        }
        for a in 0..perp.len() {
            for b in a + 1..perp.len() {
                let (x, y) = (perp[a], perp[b]);
                if self.hom(x, y) + self.hom(y, x) + self.ext(x, y) + self.ext(y, x) > 0 {
                    let (ra, rb) = (find(&mut up, a), find(&mut up, b));
                    up[ra] = rb;
                }
            }
        }
        let mut comps: BTreeMap<usize, (usize, bool)> = BTreeMap::new();
        for (a, &x) in perp.iter().enumerate() {
            let r = find(&mut up, a);
            let m = self.objects[x];
            let e = comps.entry(r).or_default();
            e.0 += 1;
            e.1 |= self.kind == Kind::C && m.i == m.j;
        }
        let mut mu = None;
        let mut lambda = Vec::new();
        for (count, long) in comps.into_values() {
            if long {
                let r = (1..=count).find(|r| r * r == count).ok_or_else(|| bad_block(count))?;
                if mu.replace(r).is_some() {
                    return Err(Error::Invalid("two blocks of type B".into()));
                }
            } else {
                lambda.push((1..=count).find(|r| r * (r + 1) / 2 == count).ok_or_else(|| bad_block(count))?);
            }
        }
        let l = seq.len();
        if lambda.len() > l {
            return Err(Error::Invalid(format!("{} type A blocks for length {l}", lambda.len())));
        }
        lambda.resize(l, 0);
        lambda.sort_unstable();
        let mu = mu.unwrap_or(0);
        if mu + lambda.iter().sum::<usize>() + l != self.rank {
            return Err(Error::Invalid("perpendicular rank does not add up".into()));
        }
        Ok(PerpType { mu, lambda })
    }

    /// Signed exceptional sequences of length `k`, shifts only at
    /// relatively projective positions.
    pub fn signed_sequences(&self, k: usize) -> Result<impl Iterator<Item = Vec<Signed<usize>>> + '_> {
        Ok(self.enumerate_sequences(k)?.flat_map(move |seq| {
            let proj = self.rel_projective_vector(&seq);
            crate::signed::sign_choices(&seq, &proj)
        }))
    }

    pub fn display(&self, s: Signed<usize>) -> String {
        format!("{}{}", self.objects[s.obj], if s.shifted { "!" } else { "" })
    }
}

fn bad_block(count: usize) -> Error {
    Error::Invalid(format!("block with {count} objects has no Dynkin type"))
}

/// Shared `C_n` data, built once per rank.
pub fn cn_cat(n: usize) -> Result<Arc<CatData>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CatData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&n) {
        return Ok(Arc::clone(c));
    }
    let built = Arc::new(CatData::type_c(n)?);
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    Ok(Arc::clone(guard.entry(n).or_insert(built)))
}
