//! Closed-form counts, the subgraph model for perpendicular types, and
//! exact relative-projectivity statistics.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hereditary::{cn_cat, CatData, PerpType};
use crate::tube;

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn pow(n: usize, e: usize) -> BigUint {
    BigUint::from(n).pow(e as u32)
}

fn exact_div(a: BigUint, b: BigUint) -> BigUint {
    let (q, r) = a.div_rem(&b);
    assert!(r.is_zero(), "inexact division in a closed form");
    q
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormulaKind {
    ExcCn,
    SignedCn,
    ClustersCn,
    ExcAn,
    ExcWn,
    SoftWn,
    ChordUnoriented,
    ChordOriented,
    Pointed,
    ExcsetsAn,
    ExcsetsWn,
    ExcsetsCn,
}

impl FormulaKind {
    pub const ALL: [FormulaKind; 12] = [
        Self::ExcCn,
        Self::SignedCn,
        Self::ClustersCn,
        Self::ExcAn,
        Self::ExcWn,
        Self::SoftWn,
        Self::ChordUnoriented,
        Self::ChordOriented,
        Self::Pointed,
        Self::ExcsetsAn,
        Self::ExcsetsWn,
        Self::ExcsetsCn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::ExcCn => "exc-cn",
            Self::SignedCn => "signed-cn",
            Self::ClustersCn => "clusters-cn",
            Self::ExcAn => "exc-an",
            Self::ExcWn => "exc-wn",
            Self::SoftWn => "soft-wn",
            Self::ChordUnoriented => "chord-unoriented",
            Self::ChordOriented => "chord-oriented",
            Self::Pointed => "pointed",
            Self::ExcsetsAn => "excsets-an",
            Self::ExcsetsWn => "excsets-wn",
            Self::ExcsetsCn => "excsets-cn",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::Parse(format!("unknown formula `{s}`")))
    }

    pub fn needs_k(self) -> bool {
        !matches!(self, Self::Pointed | Self::ExcsetsAn | Self::ExcsetsWn | Self::ExcsetsCn)
    }
}

pub fn count_formula(kind: FormulaKind, n: usize, k: Option<usize>) -> Result<BigUint> {
    let k = match (kind.needs_k(), k) {
        (true, None) => return Err(Error::Invalid(format!("{} needs a length", kind.name()))),
        (_, k) => k.unwrap_or(0),
    };
    let out_of_range = || Err(Error::LengthOutOfRange { k, n });
    if n == 0 {
        return Err(Error::Invalid("rank must be positive".into()));
    }
    Ok(match kind {
        FormulaKind::ExcCn | FormulaKind::SoftWn => {
            if k > n {
                return out_of_range();
            }
            pow(n, k) * binomial(n, k)
        }
        FormulaKind::SignedCn => {
            if k > n {
                return out_of_range();
            }
            exact_div(factorial(n + k), factorial(k) * factorial(n - k))
        }
        FormulaKind::ClustersCn => {
            if k > n {
                return out_of_range();
            }
            exact_div(factorial(n + k), factorial(k) * factorial(k) * factorial(n - k))
        }
        FormulaKind::ExcAn => {
            if k > n {
                return out_of_range();
            }
            if k == 0 {
                BigUint::one()
            } else {
                binomial(n + 1, k + 1) * pow(n + 1, k - 1)
            }
        }
        FormulaKind::ExcWn | FormulaKind::ChordOriented => {
            if k >= n && k > 0 {
                return out_of_range();
            }
            binomial(n - 1, k) * pow(n, k)
        }
        FormulaKind::ChordUnoriented => {
            if k >= n {
                return out_of_range();
            }
            if k == 0 {
                BigUint::one()
            } else {
                binomial(n, k + 1) * pow(n, k - 1)
            }
        }
        FormulaKind::Pointed => pow(n, n),
        FormulaKind::ExcsetsAn => exact_div(factorial(3 * n), factorial(n) * factorial(2 * n + 1)),
        FormulaKind::ExcsetsWn => exact_div(BigUint::from(n) * factorial(3 * n - 3), factorial(n - 1) * factorial(2 * n - 1)),
        FormulaKind::ExcsetsCn => binomial(3 * n - 2, n - 1),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    C,
    W,
}

/// Number of distinct underlying sets of complete exceptional sequences.
pub fn enumerate_exceptional_sets(family: Family, n: usize) -> Result<usize> {
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut add = |mut s: Vec<usize>| {
        s.sort_unstable();
        sets.insert(s);
    };
    match family {
        Family::A => {
            let cat = CatData::type_a(n)?;
            cat.enumerate_sequences(n)?.for_each(&mut add);
        }
        Family::C => cn_cat(n)?.enumerate_sequences(n)?.for_each(&mut add),
        Family::W => {
            for seq in tube::enumerate_tube_sequences(n, n.saturating_sub(1), false)? {
                add(seq.iter().map(|v| v.brick_index().expect("bricks")).collect());
            }
        }
    }
    Ok(sets.len())
}

/// A perpendicular type `(μ; λ)` at rank `n`, `λ` ascending with `k + 1` parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Signature {
    pub n: usize,
    pub mu: usize,
    pub lambda: Vec<usize>,
}

impl Signature {
    pub fn new(n: usize, mu: usize, mut lambda: Vec<usize>) -> Result<Self> {
        lambda.sort_unstable();
        let s = Self { n, mu, lambda };
        if s.mu + s.lambda.iter().sum::<usize>() + s.lambda.len() != n {
            return Err(Error::Invalid(format!("({mu}; {:?}) does not fit rank {n}", s.lambda)));
        }
        Ok(s)
    }

    pub fn from_perp(n: usize, t: &PerpType) -> Result<Self> {
        Self::new(n, t.mu, t.lambda.clone())
    }

    /// Number of parts minus one; `-1` for the whole graph.
    pub fn k(&self) -> isize {
        self.lambda.len() as isize - 1
    }

    fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.lambda {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }
}

/// All signatures at rank `n` with at least one part.
pub fn all_signatures(n: usize) -> Vec<Signature> {
    let mut out = Vec::new();
    for mu in 0..n {
        for parts in 1..=n - mu {
            let total = n - mu - parts;
            for lambda in partitions(total, parts, 0) {
                out.push(Signature { n, mu, lambda });
            }
        }
    }
    out
}

/// Nondecreasing sequences of `parts` integers `>= min` summing to `total`.
fn partitions(total: usize, parts: usize, min: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut first = min;
    while first * parts <= total {
        for mut rest in partitions(total - first, parts - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
        first += 1;
    }
    out
}

/// `(k+1)! / ∏ n_p!`, and `1` for the whole graph.
pub fn subgraph_count(s: &Signature) -> BigUint {
    let denom = s.multiplicities().values().fold(BigUint::one(), |acc, &m| acc * factorial(m));
    factorial(s.lambda.len()) / denom
}

/// Deleted edge positions of every subgraph of the path `L_n` with
/// signature `s`; edge `t` joins vertices `t - 1` and `t`.
pub fn enumerate_subgraphs(s: &Signature) -> Vec<Vec<usize>> {
    let n = s.n;
    if s.lambda.is_empty() {
        return if s.mu == n { vec![Vec::new()] } else { Vec::new() };
    }
    let k = s.lambda.len() - 1;
    let first = s.mu + 1;
    let mut out = Vec::new();
    let pool: Vec<usize> = (first + 1..=n).collect();
    for_each_subset(&pool, k, &mut |chosen| {
        let mut cuts = vec![first];
        cuts.extend_from_slice(chosen);
        cuts.push(n + 1);
        let mut sizes: Vec<usize> = cuts.windows(2).map(|w| w[1] - 1 - w[0]).collect();
        sizes.sort_unstable();
        if sizes == s.lambda {
            out.push(cuts[..cuts.len() - 1].to_vec());
        }
    });
    out
}

fn for_each_subset(pool: &[usize], k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for p in start..pool.len() {
            cur.push(pool[p]);
            go(pool, k, p + 1, cur, f);
            cur.pop();
        }
    }
    go(pool, k, 0, &mut Vec::new(), f);
}

fn count_of(n: usize, mu: usize, lambda: Vec<usize>) -> BigUint {
    if lambda.is_empty() {
        return if mu == n { BigUint::one() } else { BigUint::zero() };
    }
    Signature::new(n, mu, lambda).map_or(BigUint::zero(), |s| subgraph_count(&s))
}

fn without(lambda: &[usize], vals: &[usize]) -> Vec<usize> {
    let mut out = lambda.to_vec();
    for v in vals {
        let p = out.iter().position(|x| x == v).expect("value present");
        out.remove(p);
    }
    out
}

/// Both sides of the two subgraph recursions, each scaled by two.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecursionCheck {
    pub signature: Signature,
    pub first: (String, String),
    pub second: (String, String),
}

impl RecursionCheck {
    pub fn holds(&self) -> bool {
        self.first.0 == self.first.1 && self.second.0 == self.second.1
    }
}

pub fn subgraph_recursions(s: &Signature) -> RecursionCheck {
    let (n, mu) = (s.n, s.mu);
    let k1 = s.lambda.len();
    let here = subgraph_count(s);
    let distinct: BTreeSet<usize> = s.lambda.iter().copied().collect();
    let (mut r1, mut r2) = (BigUint::zero(), BigUint::zero());
    for &a in &distinct {
        let c = count_of(n, mu + a + 1, without(&s.lambda, &[a]));
        r1 += BigUint::from(2u8) * &c;
        r2 += BigUint::from(2 * (mu + a + 1)) * &c;
    }
    let mult = s.multiplicities();
    for &a in &distinct {
        for &b in distinct.range(a..) {
            if a == b && mult[&a] < 2 {
                continue;
            }
            let c = a + b + 1;
            let mut merged = without(&s.lambda, &[a, b]);
            merged.push(c);
            merged.sort_unstable();
            let n_c = merged.iter().filter(|&&x| x == c).count();
            let twice_x = if a == b { 1u32 } else { 2 };
            let cnt = count_of(n, mu, merged);
            r1 += BigUint::from(n_c as u32 * 2 * twice_x) * &cnt;
            r2 += BigUint::from(n_c * (c + 1) * twice_x as usize) * &cnt;
        }
    }
    RecursionCheck {
        signature: s.clone(),
        first: ((BigUint::from(2 * k1) * &here).to_string(), r1.to_string()),
        second: ((BigUint::from(2 * n) * &here).to_string(), r2.to_string()),
    }
}

pub fn verify_subgraph_recursions(n: usize) -> Vec<RecursionCheck> {
    all_signatures(n).iter().map(subgraph_recursions).collect()
}

/// Fiber of exceptional sequences of one perpendicular type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberCount {
    pub signature: Signature,
    pub sequences: u64,
    pub first_projective: u64,
    pub expected_sequences: String,
    pub expected_first_projective: String,
}

impl FiberCount {
    pub fn holds(&self) -> bool {
        self.sequences.to_string() == self.expected_sequences && self.first_projective.to_string() == self.expected_first_projective
    }
}

/// Classifies every `C_n` exceptional sequence by the type of its
/// perpendicular category and compares each fiber with the subgraph count.
pub fn verify_n_counts(n: usize) -> Result<Vec<FiberCount>> {
    let cat = cn_cat(n)?;
    let mut fibers: BTreeMap<Signature, (u64, u64)> = BTreeMap::new();
    for len in 1..=n {
        for seq in cat.enumerate_sequences(len)? {
            let sig = Signature::from_perp(n, &cat.classify_perp_type(&seq)?)?;
            let e = fibers.entry(sig).or_default();
            e.0 += 1;
            e.1 += u64::from(cat.is_rel_projective(&seq, 1)?);
        }
    }
    let mut out = Vec::new();
    for sig in all_signatures(n) {
        let (seqs, proj) = fibers.remove(&sig).unwrap_or_default();
        let k1 = sig.lambda.len();
        let expected = pow(n, k1) * subgraph_count(&sig);
        let expected_p = exact_div(BigUint::from(k1) * &expected, BigUint::from(n));
        out.push(FiberCount {
            signature: sig,
            sequences: seqs,
            first_projective: proj,
            expected_sequences: expected.to_string(),
            expected_first_projective: expected_p.to_string(),
        });
    }
    if let Some(sig) = fibers.keys().next() {
        return Err(Error::Invalid(format!("unexpected perpendicular type {sig:?}")));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Property {
    Projective,
    Injective,
}

/// Exact joint distribution of the per-position indicator vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Distribution {
    pub k: usize,
    pub total: u64,
    pub joint: BTreeMap<Vec<bool>, u64>,
}

impl Distribution {
    pub fn from_vectors(k: usize, vecs: impl IntoIterator<Item = Vec<bool>>) -> Self {
        let mut joint = BTreeMap::new();
        let mut total = 0;
        for v in vecs {
            *joint.entry(v).or_insert(0) += 1;
            total += 1;
        }
        Self { k, total, joint }
    }

    /// Number of sequences with every position in `mask` set.
    pub fn count_all(&self, mask: u64) -> u64 {
        self.joint
            .iter()
            .filter(|(v, _)| (0..self.k).all(|p| mask >> p & 1 == 0 || v[p]))
            .map(|(_, c)| c)
            .sum()
    }

    /// Number of sequences with position `j` (1-based) set.
    pub fn marginal(&self, j: usize) -> u64 {
        self.count_all(1 << (j - 1))
    }

    /// `count(all of S) · total^(|S|-1) = ∏_{j∈S} count(j)` for every nonempty `S`.
    pub fn first_dependence(&self) -> Option<u64> {
        let total = BigUint::from(self.total);
        (1u64..1 << self.k).find(|&mask| {
            let size = mask.count_ones();
            let lhs = BigUint::from(self.count_all(mask)) * total.pow(size - 1);
            let rhs = (0..self.k)
                .filter(|p| mask >> p & 1 == 1)
                .fold(BigUint::one(), |acc, p| acc * self.marginal(p + 1));
            lhs != rhs
        })
    }
}

pub fn relproj_distribution(family: Family, n: usize, k: usize, property: Property) -> Result<Distribution> {
    match family {
        Family::C => {
            let cat = cn_cat(n)?;
            let vecs: Vec<Vec<bool>> = cat
                .enumerate_sequences(k)?
                .map(|seq| {
                    (1..=k)
                        .map(|j| match property {
                            Property::Projective => cat.is_rel_projective(&seq, j),
                            Property::Injective => cat.is_rel_injective(&seq, j),
                        })
                        .collect::<Result<Vec<bool>>>()
                })
                .collect::<Result<_>>()?;
            Ok(Distribution::from_vectors(k, vecs))
        }
        Family::W => {
            let bound = tube::default_length_bound(n);
            let vecs: Vec<Vec<bool>> = tube::enumerate_tube_sequences(n, k, false)?
                .map(|seq| {
                    (1..=k)
                        .map(|j| match property {
                            Property::Projective => tube::is_rel_projective_oracle(&seq, j, bound),
                            Property::Injective => tube::is_rel_injective_oracle(&seq, j, bound),
                        })
                        .collect::<Result<Vec<bool>>>()
                })
                .collect::<Result<_>>()?;
            Ok(Distribution::from_vectors(k, vecs))
        }
        Family::A => Err(Error::Invalid("distributions are tabulated for C and W only".into())),
    }
}

/// Polynomial in `z_1 … z_k` with `z_j` marking position `j`; keys are
/// bitmasks of the variables present.
pub type Polynomial = BTreeMap<u64, BigUint>;

/// `Σ_seq ∏_{j relatively projective} z_j` over `C_n` sequences of length `k`.
pub fn generating_polynomial(n: usize, k: usize) -> Result<Polynomial> {
    let dist = relproj_distribution(Family::C, n, k, Property::Projective)?;
    let mut poly = Polynomial::new();
    for (v, &c) in &dist.joint {
        let mask = v.iter().enumerate().fold(0u64, |m, (p, &b)| m | (u64::from(b) << p));
        *poly.entry(mask).or_insert_with(BigUint::zero) += c;
    }
    Ok(poly)
}

/// `C(n,k) ∏_j (n - m_j + m_j z_j)` with `m_j = k + 1 - j`.
pub fn generating_polynomial_closed(n: usize, k: usize) -> Polynomial {
    let mut poly = Polynomial::new();
    poly.insert(0, binomial(n, k));
    for j in 1..=k {
        let m = k + 1 - j;
        let mut next = Polynomial::new();
        for (mask, c) in poly {
            if n > m {
                *next.entry(mask).or_insert_with(BigUint::zero) += &c * (n - m);
            }
            *next.entry(mask | 1 << (j - 1)).or_insert_with(BigUint::zero) += &c * m;
        }
        poly = next;
    }
    poly.retain(|_, c| !c.is_zero());
    poly
}

/// Value of the polynomial with every variable set to `z`.
pub fn evaluate(poly: &Polynomial, z: u64) -> BigUint {
    poly.iter().map(|(mask, c)| c * BigUint::from(z).pow(mask.count_ones())).sum()
}

/// Serializable view of a [`Distribution`] with reduced fractions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistributionSummary {
    pub k: usize,
    pub total: u64,
    pub marginals: Vec<Marginal>,
    pub independent: bool,
    pub joint: Vec<JointRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Marginal {
    pub position: usize,
    pub count: u64,
    pub probability: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JointRow {
    pub vector: String,
    pub count: u64,
}

fn fraction(num: u64, den: u64) -> String {
    if den == 0 {
        return "undefined".into();
    }
    let r = num_rational::Ratio::new(num, den);
    format!("{}/{}", r.numer(), r.denom())
}

impl Distribution {
    pub fn summary(&self) -> DistributionSummary {
        DistributionSummary {
            k: self.k,
            total: self.total,
            marginals: (1..=self.k)
                .map(|j| {
                    let count = self.marginal(j);
                    Marginal { position: j, count, probability: fraction(count, self.total) }
                })
                .collect(),
            independent: self.first_dependence().is_none(),
            joint: self
                .joint
                .iter()
                .map(|(v, &count)| JointRow { vector: v.iter().map(|&b| if b { '1' } else { '0' }).collect(), count })
                .collect(),
        }
    }
}
