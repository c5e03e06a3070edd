//! Exhaustive verification suites with machine-readable reports.
//!
//! Every check compares an exact expected value with an enumerated one.
//! Work inside a suite runs on the current rayon pool; results are collected
//! in task order, so a report does not depend on the number of threads.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::bijections::{self, CnSequence};
use crate::braid::{self, act_word, BraidCarrier, BraidWord};
use crate::chord::{self, ChordSequence, Mode};
use crate::counting::{self, count_formula, Family, FormulaKind, Property};
use crate::error::{Error, Result};
use crate::forest::{self, insert_root, truncate_root, AugmentedTree, RootedForest, RootedTree};
use crate::hereditary::{cn_cat, CatData, Module};
use crate::signed::{sign_choices, Signed};
use crate::tube::{self, TubeObject};

/// Largest rank checked per family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Chord diagrams, trees, forests and type `A`.
    pub chord: usize,
    pub tube: usize,
    /// Type `C`, where perpendicular categories are computed.
    pub cn: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Self { chord: 6, tube: 5, cn: 4 }
    }
}

impl Bounds {
    pub fn uniform(n: usize) -> Self {
        Self { chord: n, tube: n, cn: n }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Counts,
    Equivalence,
    Signed,
    Probabilities,
    #[serde(rename = "theorem-f")]
    TubeCriterion,
    Braid,
    Bijections,
    Recursions,
    Genfun,
    Sets,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Counts,
        Suite::Equivalence,
        Suite::Signed,
        Suite::Probabilities,
        Suite::TubeCriterion,
        Suite::Braid,
        Suite::Bijections,
        Suite::Recursions,
        Suite::Genfun,
        Suite::Sets,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Counts => "counts",
            Suite::Equivalence => "equivalence",
            Suite::Signed => "signed",
            Suite::Probabilities => "probabilities",
            Suite::TubeCriterion => "theorem-f",
            Suite::Braid => "braid",
            Suite::Bijections => "bijections",
            Suite::Recursions => "recursions",
            Suite::Genfun => "genfun",
            Suite::Sets => "sets",
        }
    }

    /// Suites named by `s`; `all` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        s.split(',').map(str::parse).collect()
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub claim: String,
    pub anchor: &'static str,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub expected: String,
    pub actual: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Check {
    pub fn new(claim: impl Into<String>, anchor: &'static str, n: usize, k: Option<usize>, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let status = if expected == actual { "pass" } else { "fail" };
        Self { claim: claim.into(), anchor, n, k, expected, actual, status, counterexample: None }
    }

    /// Passes iff no counterexample was found.
    pub fn holds(claim: impl Into<String>, anchor: &'static str, n: usize, k: Option<usize>, counterexample: Option<String>) -> Self {
        let actual = if counterexample.is_some() { "false" } else { "true" };
        Self { counterexample, ..Self::new(claim, anchor, n, k, "true", actual) }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub status: &'static str,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub bounds: Bounds,
    pub status: &'static str,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.suites.iter().flat_map(|s| s.checks.iter())
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks().find(|c| !c.passed())
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

type Task<'a> = Box<dyn Fn() -> Result<Vec<Check>> + Send + Sync + 'a>;

fn run_tasks(tasks: Vec<Task<'_>>) -> Result<Vec<Check>> {
    let parts: Vec<Vec<Check>> = tasks.par_iter().map(|t| t()).collect::<Result<_>>()?;
    Ok(parts.into_iter().flatten().collect())
}

pub fn run_suite(suite: Suite, b: Bounds) -> Result<SuiteReport> {
    let tasks = match suite {
        Suite::Counts => counts(b),
        Suite::Equivalence => equivalence(b),
        Suite::Signed => signed(b),
        Suite::Probabilities => probabilities(b),
        Suite::TubeCriterion => tube_criterion(b),
        Suite::Braid => braid_suite(b),
        Suite::Bijections => bijection_suite(b),
        Suite::Recursions => recursions(b),
        Suite::Genfun => genfun(b),
        Suite::Sets => sets(b),
    };
    let checks = run_tasks(tasks)?;
    Ok(SuiteReport { suite, status: status(checks.iter().all(Check::passed)), checks })
}

pub fn run(suites: &[Suite], bounds: Bounds) -> Result<Report> {
    let suites = suites.iter().map(|&s| run_suite(s, bounds)).collect::<Result<Vec<_>>>()?;
    let ok = suites.iter().all(|s| s.status == "pass");
    Ok(Report { bounds, status: status(ok), suites })
}

fn formula(kind: FormulaKind, n: usize, k: Option<usize>) -> Result<BigUint> {
    count_formula(kind, n, k)
}

fn counts(b: Bounds) -> Vec<Task<'static>> {
    let mut t: Vec<Task> = Vec::new();
    for n in 1..=b.cn {
        t.push(Box::new(move || {
            let cat = cn_cat(n)?;
            (0..=n)
                .map(|k| {
                    Ok(Check::new(
                        "exceptional sequences of type C",
                        "exc-cn-enumeration",
                        n,
                        Some(k),
                        formula(FormulaKind::ExcCn, n, Some(k))?,
                        cat.enumerate_sequences(k)?.count(),
                    ))
                })
                .collect()
        }));
    }
    for n in 1..=b.chord {
        t.push(Box::new(move || {
            let mut out = Vec::new();
            for k in 0..=n {
                out.push(Check::new(
                    "noncrossing sequences of chords and loops",
                    "exc-cn-chord-realization",
                    n,
                    Some(k),
                    formula(FormulaKind::ExcCn, n, Some(k))?,
                    chord::enumerate_sequences(n, k, Mode::WithLoops)?.count(),
                ));
            }
            for k in 0..n {
                out.push(Check::new(
                    "oriented chord sequences",
                    "chord-oriented",
                    n,
                    Some(k),
                    formula(FormulaKind::ChordOriented, n, Some(k))?,
                    chord::enumerate_sequences(n, k, Mode::ChordsOnly)?.count(),
                ));
            }
            for k in 1..n {
                out.push(Check::new(
                    "unoriented ordered chord diagrams",
                    "chord-unoriented",
                    n,
                    Some(k),
                    formula(FormulaKind::ChordUnoriented, n, Some(k))?,
                    chord::count_unoriented_diagrams(n, k)?,
                ));
            }
            out.push(Check::new("pointed chord diagrams", "pointed", n, None, formula(FormulaKind::Pointed, n, None)?, chord::enumerate_pointed(n).count()));
            Ok(out)
        }));
        t.push(Box::new(move || {
            let cat = CatData::type_a(n)?;
            (0..=n)
                .map(|k| {
                    Ok(Check::new(
                        "exceptional sequences of type A",
                        "exc-an-enumeration",
                        n,
                        Some(k),
                        formula(FormulaKind::ExcAn, n, Some(k))?,
                        cat.enumerate_sequences(k)?.count(),
                    ))
                })
                .collect()
        }));
        t.push(Box::new(move || {
            let nn = BigUint::from(n);
            Ok(vec![
                Check::new("rooted labeled trees", "tree-cardinality", n, None, nn.pow(n as u32 - 1), forest::enumerate_trees(n).count()),
                Check::new("augmented trees", "augmented-tree-cardinality", n, None, nn.pow(n as u32), forest::enumerate_augmented_trees(n).count()),
                Check::new("forests on n-1 vertices", "forest-cardinality", n, None, nn.pow((n as u32).saturating_sub(2)), forest::enumerate_forests(n - 1).count()),
                Check::new(
                    "augmented forests on n-1 vertices",
                    "augmented-forest-cardinality",
                    n,
                    None,
                    nn.pow(n as u32 - 1),
                    forest::enumerate_augmented_forests(n).count(),
                ),
            ])
        }));
    }
    for n in 1..=b.tube {
        t.push(Box::new(move || {
            let mut out = Vec::new();
            for k in 0..n {
                out.push(Check::new(
                    "exceptional sequences in the tube",
                    "exc-wn-enumeration",
                    n,
                    Some(k),
                    formula(FormulaKind::ExcWn, n, Some(k))?,
                    tube::enumerate_tube_sequences(n, k, false)?.count(),
                ));
            }
            for k in 0..=n {
                out.push(Check::new(
                    "soft exceptional sequences in the tube",
                    "soft-wn-enumeration",
                    n,
                    Some(k),
                    formula(FormulaKind::SoftWn, n, Some(k))?,
                    tube::enumerate_tube_sequences(n, k, true)?.count(),
                ));
            }
            Ok(out)
        }));
    }
    t.push(Box::new(move || {
        let mut out = Vec::new();
        if b.cn >= 3 {
            out.push(Check::new("complete sequences of type C_3", "exc-cn-golden", 3, Some(3), 27, cn_cat(3)?.enumerate_sequences(3)?.count()));
        }
        if b.tube >= 4 {
            out.push(Check::new("complete sequences in the rank 4 tube", "exc-wn-golden", 4, Some(3), 64, tube::enumerate_tube_sequences(4, 3, false)?.count()));
        }
        Ok(out)
    }));
    t
}

fn equivalence(b: Bounds) -> Vec<Task<'static>> {
    (1..=b.chord)
        .map(|n| -> Task<'static> {
            Box::new(move || {
                let cat = cn_cat(n)?;
                let mut bad = None;
                let mut agree = 0usize;
                'outer: for x in 0..n * n {
                    for y in 0..n * n {
                        let (mx, my) = (cat.module(x), cat.module(y));
                        let e = cat.exceptional_pair(x, y);
                        let c = chord::noncrossing_pair(chord::Chord::new(mx.i, mx.j), chord::Chord::new(my.i, my.j), n);
                        let s = tube::soft_exceptional_pair(&TubeObject::brick(n, mx.i, mx.j), &TubeObject::brick(n, my.i, my.j))?;
                        if e == c && c == s {
                            agree += 1;
                        } else {
                            bad = Some(format!("({mx},{my}): module {e}, chord {c}, tube {s}"));
                            break 'outer;
                        }
                    }
                }
                Ok(vec![
                    Check::new("ordered pairs where the three models agree", "pair-equivalence", n, None, n.pow(4), agree),
                    Check::holds("module, chord and tube pair predicates coincide", "pair-equivalence-counterexample", n, None, bad),
                ])
            })
        })
        .collect()
}

/// Signed tube sequences of rank `m` and length `k`, shifts where the oracle
/// finds relative projectivity.
pub fn signed_tube_sequences(m: usize, k: usize) -> Result<Vec<Vec<Signed<TubeObject>>>> {
    let bound = tube::default_length_bound(m);
    let mut out = Vec::new();
    for seq in tube::enumerate_tube_sequences(m, k, false)? {
        let proj = (1..=k).map(|j| tube::is_rel_projective_oracle(&seq, j, bound)).collect::<Result<Vec<bool>>>()?;
        out.extend(sign_choices(&seq, &proj));
    }
    Ok(out)
}

fn show_signed<T: fmt::Display>(seq: &[Signed<T>]) -> String {
    let toks: Vec<String> = seq.iter().map(|s| format!("{}{}", s.obj, if s.shifted { "[1]" } else { "" })).collect();
    format!("({})", toks.join(","))
}

fn signed(b: Bounds) -> Vec<Task<'static>> {
    let mut t: Vec<Task> = Vec::new();
    for n in 1..=b.cn {
        t.push(Box::new(move || {
            let cat = cn_cat(n)?;
            let mut out = Vec::new();
            for k in 0..=n {
                out.push(Check::new(
                    "signed exceptional sequences of type C",
                    "signed-cn",
                    n,
                    Some(k),
                    formula(FormulaKind::SignedCn, n, Some(k))?,
                    cat.signed_sequences(k)?.count(),
                ));
                out.push(Check::new(
                    "partial clusters of type C",
                    "clusters-cn",
                    n,
                    Some(k),
                    formula(FormulaKind::ClustersCn, n, Some(k))?,
                    count_partial_clusters(&cat, k)?,
                ));
            }
            Ok(out)
        }));
    }
    for n in 1..b.tube {
        for k in 0..=n {
            t.push(Box::new(move || {
                let m = n + 1;
                let tube_side = signed_tube_sequences(m, k)?;
                let mut out = vec![Check::new(
                    "signed sequences in the rank n+1 tube",
                    "signed-tube",
                    n,
                    Some(k),
                    formula(FormulaKind::SignedCn, n, Some(k))?,
                    tube_side.len(),
                )];
                if n > b.cn || k == 0 {
                    return Ok(out);
                }
                let cat = cn_cat(n)?;
                let targets: HashSet<Vec<Signed<usize>>> = cat.signed_sequences(k)?.collect();
                let mut images = HashSet::new();
                let mut bad_target = None;
                let mut bad_inverse = None;
                for s in &tube_side {
                    let img = bijections::full_chain(s)?;
                    let idx: Vec<Signed<usize>> = img
                        .iter()
                        .map(|x| Signed { obj: cat.index_of(x.obj).expect("module of C_n"), shifted: x.shifted })
                        .collect();
                    if bad_target.is_none() && !targets.contains(&idx) {
                        bad_target = Some(show_signed(s));
                    }
                    if bad_inverse.is_none() && bijections::full_chain_inverse(n, &img)? != *s {
                        bad_inverse = Some(show_signed(s));
                    }
                    images.insert(idx);
                }
                out.push(Check::new("distinct images of the signed chain", "full-chain-injective", n, Some(k), tube_side.len(), images.len()));
                out.push(Check::new("signed sequences of type C hit", "full-chain-surjective", n, Some(k), targets.len(), images.len()));
                out.push(Check::holds("chain lands in signed sequences of type C", "full-chain-target", n, Some(k), bad_target));
                out.push(Check::holds("inverse chain recovers the tube sequence", "full-chain-inverse", n, Some(k), bad_inverse));
                Ok(out)
            }));
        }
    }
    t
}

/// Unordered `k`-sets of pairwise compatible cluster objects: modules and
/// shifted projectives.
pub fn count_partial_clusters(cat: &CatData, k: usize) -> Result<usize> {
    let mut objs: Vec<Signed<usize>> = (0..cat.len()).map(Signed::plain).collect();
    objs.extend((0..cat.len()).filter(|&x| cat.is_projective(x)).map(Signed::shifted));
    let m = objs.len();
    let mut ok = vec![false; m * m];
    for a in 0..m {
        for c in 0..m {
            ok[a * m + c] = a != c && cat.cluster_ext_orthogonal(objs[a], objs[c])?;
        }
    }
    fn go(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, ok: &[bool]) -> usize {
        if cur.len() == k {
            return 1;
        }
        let mut total = 0;
        for x in start..m {
            if cur.iter().all(|&y| ok[y * m + x]) {
                cur.push(x);
                total += go(m, k, x + 1, cur, ok);
                cur.pop();
            }
        }
        total
    }
    Ok(go(m, k, 0, &mut Vec::new(), &ok))
}

fn marginal_checks(out: &mut Vec<Check>, claim: &str, anchor: &'static str, dist: &counting::Distribution, n: usize, expected: impl Fn(usize) -> u64) {
    for j in 1..=dist.k {
        out.push(Check::new(format!("{claim}, position {j}"), anchor, n, Some(dist.k), expected(j), dist.marginal(j)));
    }
}

fn independence_check(claim: &str, anchor: &'static str, dist: &counting::Distribution, n: usize) -> Check {
    let bad = dist.first_dependence().map(|mask| {
        let pos: Vec<usize> = (0..dist.k).filter(|p| mask >> p & 1 == 1).map(|p| p + 1).collect();
        format!("positions {pos:?}")
    });
    Check::holds(claim, anchor, n, Some(dist.k), bad)
}

fn probabilities(b: Bounds) -> Vec<Task<'static>> {
    let mut t: Vec<Task> = Vec::new();
    for n in 1..=b.cn {
        for k in 1..=n {
            t.push(Box::new(move || {
                let d = counting::relproj_distribution(Family::C, n, k, Property::Projective)?;
                let total = d.total;
                let mut out = Vec::new();
                marginal_checks(&mut out, "relatively projective count", "rel-proj-marginal-cn", &d, n, |j| {
                    total * (k + 1 - j) as u64 / n as u64
                });
                out.push(Check::new(
                    "relatively projective count times n, position 1",
                    "rel-proj-marginal-exact-cn",
                    n,
                    Some(k),
                    total * k as u64,
                    d.marginal(1) * n as u64,
                ));
                out.push(independence_check("relative projectivity independent across positions", "rel-proj-independence-cn", &d, n));
                Ok(out)
            }));
        }
    }
    t
}

fn tube_criterion(b: Bounds) -> Vec<Task<'static>> {
    (2..=b.tube)
        .map(|n| -> Task<'static> {
            Box::new(move || {
                let k = n - 1;
                let bound = tube::default_length_bound(n);
                let seqs: Vec<Vec<TubeObject>> = tube::enumerate_tube_sequences(n, k, false)?.collect();
                let rows = seqs
                    .par_iter()
                    .map(|s| {
                        let proj = bijections::rel_projective_combinatorial(s)?;
                        let inj = bijections::rel_injective_combinatorial(s)?;
                        let oproj = (1..=k).map(|j| tube::is_rel_projective_oracle(s, j, bound)).collect::<Result<Vec<_>>>()?;
                        let oinj = (1..=k).map(|j| tube::is_rel_injective_oracle(s, j, bound)).collect::<Result<Vec<_>>>()?;
                        Ok((proj, inj, oproj, oinj))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let show = |s: &[TubeObject]| format!("({})", s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
                let first = |f: &dyn Fn(usize) -> bool| (0..seqs.len()).find(|&x| f(x)).map(|x| show(&seqs[x]));
                let mut out = vec![
                    Check::holds("descending vertices are exactly the relatively projective terms", "descending-criterion", n, Some(k), first(&|x| rows[x].0 != rows[x].2)),
                    Check::holds("ascending vertices are exactly the relatively injective terms", "ascending-criterion", n, Some(k), first(&|x| rows[x].1 != rows[x].3)),
                    Check::holds(
                        "no term is both relatively projective and relatively injective",
                        "proj-inj-exclusive",
                        n,
                        Some(k),
                        first(&|x| rows[x].2.iter().zip(&rows[x].3).any(|(p, i)| *p && *i)),
                    ),
                ];
                let total = seqs.len() as u64;
                let proj = counting::Distribution::from_vectors(k, rows.iter().map(|r| r.2.clone()));
                let inj = counting::Distribution::from_vectors(k, rows.iter().map(|r| r.3.clone()));
                marginal_checks(&mut out, "relatively projective count", "rel-proj-marginal-wn", &proj, n, |j| total * (n - j - 1) as u64 / n as u64);
                marginal_checks(&mut out, "relatively injective count", "rel-inj-marginal-wn", &inj, n, |j| total * (j - 1) as u64 / n as u64);
                out.push(independence_check("relative projectivity independent across positions", "rel-proj-independence-wn", &proj, n));
                out.push(independence_check("relative injectivity independent across positions", "rel-inj-independence-wn", &inj, n));
                Ok(out)
            })
        })
        .collect()
}

fn relation_checks(reports: Vec<braid::RelationReport>, anchor: &'static str) -> Vec<Check> {
    reports
        .into_iter()
        .map(|r| Check::holds(format!("{} on {}", r.relation, r.carrier), anchor, r.n, None, r.counterexample))
        .collect()
}

/// Orbit of a three vertex tree: the tree and its images under `σ_2`, then `σ_1 σ_2`.
pub const DELTA_ORBIT: [[usize; 3]; 3] = [[3, 0, 2], [3, 3, 0], [3, 1, 0]];

fn braid_suite(b: Bounds) -> Vec<Task<'static>> {
    let mut t: Vec<Task> = Vec::new();
    t.push(Box::new(|| {
        let tree = RootedTree::from_parents(DELTA_ORBIT[0].to_vec())?;
        let s2 = tree.sigma(2)?;
        let s12 = s2.sigma(1)?;
        let actual = [tree.forest().parents().to_vec(), s2.forest().parents().to_vec(), s12.forest().parents().to_vec()];
        Ok(vec![
            Check::new("delta_3 orbit of a three vertex tree", "delta-orbit-golden", 3, None, format!("{DELTA_ORBIT:?}"), format!("{actual:?}")),
            Check::new(
                "delta_3 shifts labels of the golden tree",
                "delta-label-shift-golden",
                3,
                None,
                format!("{:?}", tree.shift_labels().forest().parents()),
                format!("{:?}", s12.forest().parents()),
            ),
        ])
    }));
    for n in 2..=b.tube {
        t.push(Box::new(move || {
            let forests: Vec<RootedForest> = forest::enumerate_forests(n).collect();
            let mut out = relation_checks(braid::verify_relations("forests", n, &forests)?, "braid-relations-forest");
            let bad = forests.iter().find_map(|f| {
                (1..n).find_map(|i| {
                    let related = {
                        let p = f.parents();
                        p[i - 1] == i + 1 || p[i] == i || p[i - 1] == p[i]
                    };
                    let order = if related { 3 } else { 2 };
                    let w = BraidWord::sigma(i).pow(order);
                    (act_word(&w, f).ok().as_ref() != Some(f)).then(|| format!("{:?} under s{i}", f.parents()))
                })
            });
            out.push(Check::holds("generator order 3 on related pairs, 2 otherwise", "generator-order-forest", n, None, bad));
            Ok(out)
        }));
        t.push(Box::new(move || {
            let trees: Vec<RootedTree> = forest::enumerate_trees(n).collect();
            let mut out = relation_checks(braid::verify_relations("trees", n, &trees)?, "braid-relations-tree");
            let r = braid::verify_word_action("delta is the label shift", "trees", n, &trees, &BraidWord::delta(n), RootedTree::shift_labels)?;
            out.extend(relation_checks(vec![r], "delta-label-shift"));
            let d2 = BraidWord::garside(n).pow(2);
            let r = braid::verify_word_action("Delta^2 = id", "trees", n, &trees, &d2, Clone::clone)?;
            out.extend(relation_checks(vec![r], "garside-square-tree"));
            Ok(out)
        }));
        t.push(Box::new(move || {
            let aug: Vec<AugmentedTree> = forest::enumerate_augmented_trees(n).collect();
            let mut out = relation_checks(braid::verify_relations("augmented trees", n, &aug)?, "braid-relations-augmented");
            let r = braid::verify_word_action("delta^n lowers epsilon by one", "augmented trees", n, &aug, &BraidWord::delta(n).pow(n), |x| {
                AugmentedTree::new(x.tree.clone(), x.epsilon as i64 - 1)
            })?;
            out.extend(relation_checks(vec![r], "delta-power-augmented"));
            let w = BraidWord::garside(n).pow(2 * n);
            let r = braid::verify_word_action("Delta^(2n) = id", "augmented trees", n, &aug, &w, Clone::clone)?;
            out.extend(relation_checks(vec![r], "garside-power-augmented"));
            let bad = aug.iter().find_map(|x| {
                let r = x.tree.root();
                (1..n).find_map(|i| {
                    let y = x.sigma(i).ok()?;
                    let same_forest = truncate_root(x) == truncate_root(&y);
                    (i + 1 == r && !same_forest).then(|| format!("{x:?} under s{i}"))
                })
            });
            out.push(Check::holds("generator below the root fixes the augmented forest", "root-generator-forest", n, None, bad));
            Ok(out)
        }));
        t.push(Box::new(move || {
            let pointed: Vec<ChordSequence> = chord::enumerate_pointed(n).collect();
            let mut out = relation_checks(braid::verify_relations("pointed diagrams", n, &pointed)?, "braid-relations-pointed");
            let bad = pointed.par_iter().find_map_first(|d| {
                (1..n).find_map(|i| {
                    let lhs = d.sigma(i).and_then(|e| bijections::hasse_tree(&e));
                    let rhs = bijections::hasse_tree(d).and_then(|x| x.sigma(i));
                    (lhs.ok() != rhs.ok()).then(|| format!("{d} under s{i}"))
                })
            });
            out.push(Check::holds("braid move on diagrams matches the augmented tree action", "equivariance-pointed", n, None, bad));
            Ok(out)
        }));
    }
    for n in 2..=b.cn {
        t.push(Box::new(move || {
            let cat = cn_cat(n)?;
            let seqs: Vec<CnSequence> = cat.enumerate_sequences(n)?.map(|items| CnSequence { n, items }).collect();
            let tree_of = |s: &CnSequence| {
                bijections::hasse_tree(&ChordSequence { n, items: s.items.iter().map(|&x| chord::Chord::from_index(n, x)).collect() })
            };
            let bad = seqs.par_iter().find_map_first(|s| {
                (1..n).find_map(|i| {
                    let lhs = s.sigma(i).and_then(|e| tree_of(&e));
                    let rhs = tree_of(s).and_then(|x| x.sigma(i));
                    (lhs.ok() != rhs.ok()).then(|| format!("{:?} under s{i}", s.items))
                })
            });
            Ok(vec![Check::holds("braid move on sequences of type C matches the augmented tree action", "equivariance-cn", n, None, bad)])
        }));
    }
    t
}

fn show_tube(s: &[TubeObject]) -> String {
    format!("({})", s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
}

fn bijection_suite(b: Bounds) -> Vec<Task<'static>> {
    let mut t: Vec<Task> = Vec::new();
    t.push(Box::new(move || goldens(b)));
    for n in 1..=b.tube {
        t.push(Box::new(move || {
            let trees: Vec<AugmentedTree> = forest::enumerate_augmented_trees(n).collect();
            let images: Vec<Result<ChordSequence>> = trees.par_iter().map(bijections::diagram_from_tree).collect();
            let bad = trees.iter().zip(&images).find_map(|(x, d)| match d {
                Ok(d) if bijections::hasse_tree(d).as_ref() == Ok(x) => None,
                Ok(d) => Some(format!("{x:?} -> {d}")),
                Err(e) => Some(format!("{x:?}: {e}")),
            });
            let distinct: BTreeSet<&ChordSequence> = images.iter().filter_map(|d| d.as_ref().ok()).collect();
            let mut out = vec![
                Check::holds("Hasse tree inverts the diagram search", "tree-diagram-round-trip", n, None, bad),
                Check::new("distinct pointed diagrams reached from augmented trees", "tree-diagram-bijective", n, None, chord::enumerate_pointed(n).count(), distinct.len()),
            ];
            let bad = forest::enumerate_augmented_forests(n).find_map(|f| {
                let trees: Vec<AugmentedTree> = (1..=n).filter_map(|r| insert_root(&f, r).ok()).collect();
                let distinct: BTreeSet<&AugmentedTree> = trees.iter().collect();
                (distinct.len() != n || trees.iter().any(|x| truncate_root(x) != f)).then(|| format!("{f:?}"))
            });
            out.push(Check::holds("root insertions are distinct and truncate back", "insert-truncate", n, None, bad));
            Ok(out)
        }));
    }
    for n in 2..=b.tube {
        t.push(Box::new(move || {
            let seqs: Vec<Vec<TubeObject>> = tube::enumerate_tube_sequences(n, n - 1, false)?.collect();
            let mut forests = BTreeSet::new();
            let mut bad = None;
            for s in &seqs {
                let f = bijections::forest_of_complete_tube_sequence(s)?;
                if bad.is_none() && bijections::tube_sequence_of_forest(&f)? != *s {
                    bad = Some(show_tube(s));
                }
                forests.insert(f);
            }
            let nn = BigUint::from(n).pow(n as u32 - 1);
            Ok(vec![
                Check::holds("forest of a complete tube sequence maps back", "tube-forest-round-trip", n, Some(n - 1), bad),
                Check::new("distinct augmented forests reached", "tube-forest-bijective", n, Some(n - 1), nn, forests.len()),
            ])
        }));
    }
    for m in 2..=b.tube {
        t.push(Box::new(move || {
            let n = m - 1;
            let mut out = Vec::new();
            for k in 0..m {
                let mut bad_theta = None;
                let mut bad_beta = None;
                let mut bad_chi = None;
                let cat = cn_cat(n)?;
                for s in signed_tube_sequences(m, k)? {
                    let r = bijections::theta(&s)?;
                    if bad_theta.is_none() && bijections::theta_inverse(&r)? != s {
                        bad_theta = Some(show_signed(&s));
                    }
                    let c = bijections::beta(n, &r)?;
                    if bad_beta.is_none() && bijections::beta_inverse(n, &c)? != r {
                        bad_beta = Some(show_tube(&r));
                    }
                    let x = bijections::chi(&cat, &c)?;
                    if bad_chi.is_none() && bijections::chi_inverse(&cat, &x)? != c {
                        bad_chi = Some(show_signed(&c));
                    }
                }
                out.push(Check::holds("theta inverse recovers the signed sequence", "theta-round-trip", m, Some(k), bad_theta));
                out.push(Check::holds("beta inverse recovers the rigid tuple", "beta-round-trip", m, Some(k), bad_beta));
                out.push(Check::holds("chi inverse recovers the ordered cluster", "chi-round-trip", m, Some(k), bad_chi));
            }
            Ok(out)
        }));
    }
    t
}

fn signed_tube(n: usize, items: &[(usize, usize, bool)]) -> Vec<Signed<TubeObject>> {
    items.iter().map(|&(i, j, s)| Signed { obj: TubeObject::brick(n, i, j), shifted: s }).collect()
}

fn show_modules(xs: &[Signed<Module>]) -> String {
    show_signed(xs)
}

/// Claim, anchor, input, then the expected θ, β and χ images.
type ChainGolden = (&'static str, &'static str, Vec<Signed<TubeObject>>, &'static str, &'static str, &'static str);

fn goldens(b: Bounds) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    if b.tube >= 4 {
        let d = ChordSequence::from_pairs(4, &[(3, 0), (3, 3), (1, 2), (1, 3)])?;
        let tree = bijections::hasse_tree(&d)?;
        out.push(Check::new(
            "Hasse tree of the four point example diagram",
            "hasse-tree-golden",
            4,
            None,
            "[2, 0, 4, 2] epsilon 3",
            format!("{:?} epsilon {}", tree.tree.forest().parents(), tree.epsilon),
        ));
        out.push(Check::new("diagram of the four vertex example tree", "diagram-from-tree-golden", 4, None, d.to_string(), bijections::diagram_from_tree(&tree)?.to_string()));
        let seq: Vec<TubeObject> = [(3, 0), (1, 2), (1, 3)].iter().map(|&(i, j)| TubeObject::brick(4, i, j)).collect();
        let f = bijections::forest_of_complete_tube_sequence(&seq)?;
        out.push(Check::new(
            "augmented forest of (V30,V12,V13)",
            "tube-forest-golden",
            4,
            Some(3),
            "[0, 3, 0] epsilon [0, 3, 3, 1]",
            format!("{:?} epsilon {:?}", f.forest.parents(), f.epsilon_map()),
        ));
        out.push(Check::new(
            "relatively projective terms of (V30,V12,V13)",
            "descending-golden",
            4,
            Some(3),
            "[false, true, false]",
            format!("{:?}", bijections::rel_projective_combinatorial(&seq)?),
        ));
        let cat = cn_cat(3)?;
        let cases: [ChainGolden; 2] = [
            (
                "chain of (V12[1],V13,V01)",
                "signed-chain-golden-first",
                signed_tube(4, &[(1, 2, true), (1, 3, false), (0, 1, false)]),
                "(V23,V03,V01)",
                "(M20,M00,M01)",
                "(M12[1],M11,M01)",
            ),
            (
                "chain of (V30,V12[1],V13)",
                "signed-chain-golden-second",
                signed_tube(4, &[(3, 0, false), (1, 2, true), (1, 3, false)]),
                "(V10,V23,V13)",
                "(M11,M20,M10)",
                "(M00[1],M12[1],M10)",
            ),
        ];
        for (claim, anchor, s, th, be, ch) in cases {
            let r = bijections::theta(&s)?;
            let c = bijections::beta(3, &r)?;
            let x = bijections::chi(&cat, &c)?;
            let actual = format!("{} {} {}", show_tube(&r), show_modules(&c), show_modules(&x));
            out.push(Check::new(claim, anchor, 3, Some(3), format!("{th} {be} {ch}"), actual));
            out.push(Check::new(
                format!("{claim}, composed"),
                anchor,
                3,
                Some(3),
                ch,
                show_modules(&bijections::full_chain(&s)?),
            ));
        }
    }
    Ok(out)
}

fn recursions(b: Bounds) -> Vec<Task<'static>> {
    let mut t: Vec<Task> = Vec::new();
    for n in 1..=b.chord {
        t.push(Box::new(move || {
            let mut out = Vec::new();
            for sig in counting::all_signatures(n) {
                let k = sig.lambda.len() - 1;
                let claim = format!("subgraphs of type ({}; {:?})", sig.mu, sig.lambda);
                out.push(Check::new(claim.clone(), "subgraph-formula", n, Some(k), counting::subgraph_count(&sig), counting::enumerate_subgraphs(&sig).len()));
                let r = counting::subgraph_recursions(&sig);
                out.push(Check::new(format!("{claim}, first recursion (doubled)"), "subgraph-recursion-first", n, Some(k), &r.first.0, &r.first.1));
                out.push(Check::new(format!("{claim}, second recursion (doubled)"), "subgraph-recursion-second", n, Some(k), &r.second.0, &r.second.1));
            }
            Ok(out)
        }));
    }
    for n in 1..=b.cn {
        t.push(Box::new(move || {
            let mut out = Vec::new();
            for f in counting::verify_n_counts(n)? {
                let k = f.signature.lambda.len() - 1;
                let claim = format!("sequences with perpendicular type ({}; {:?})", f.signature.mu, f.signature.lambda);
                out.push(Check::new(claim.clone(), "perp-fiber", n, Some(k), &f.expected_sequences, f.sequences));
                out.push(Check::new(format!("{claim}, first term relatively projective"), "perp-fiber-projective", n, Some(k), &f.expected_first_projective, f.first_projective));
                if k == 0 {
                    out.push(Check::new(format!("{claim}, single term"), "perp-fiber-base", n, Some(0), format!("{n} 1"), format!("{} {}", f.sequences, f.first_projective)));
                }
            }
            Ok(out)
        }));
    }
    t
}

fn poly_string(p: &counting::Polynomial) -> String {
    let terms: Vec<String> = p.iter().map(|(mask, c)| format!("{c}*{mask:b}")).collect();
    terms.join(" + ")
}

fn genfun(b: Bounds) -> Vec<Task<'static>> {
    let mut t: Vec<Task> = Vec::new();
    for n in 1..=b.cn {
        for k in 0..=n {
            t.push(Box::new(move || {
                let p = counting::generating_polynomial(n, k)?;
                let signed = cn_cat(n)?.signed_sequences(k)?.count();
                Ok(vec![
                    Check::new(
                        "relative projectivity polynomial",
                        "genfun-polynomial",
                        n,
                        Some(k),
                        poly_string(&counting::generating_polynomial_closed(n, k)),
                        poly_string(&p),
                    ),
                    Check::new("polynomial at z = 1", "genfun-at-one", n, Some(k), formula(FormulaKind::ExcCn, n, Some(k))?, counting::evaluate(&p, 1)),
                    Check::new("polynomial at z = 2", "genfun-at-two", n, Some(k), formula(FormulaKind::SignedCn, n, Some(k))?, counting::evaluate(&p, 2)),
                    Check::new("polynomial at z = 2 against enumeration", "genfun-signed-enumeration", n, Some(k), signed, counting::evaluate(&p, 2)),
                ])
            }));
        }
    }
    t
}

fn sets(b: Bounds) -> Vec<Task<'static>> {
    let mut t: Vec<Task> = Vec::new();
    let plan = [(Family::A, FormulaKind::ExcsetsAn, b.tube, "excsets-an"), (Family::W, FormulaKind::ExcsetsWn, b.tube, "excsets-wn"), (Family::C, FormulaKind::ExcsetsCn, b.cn, "excsets-cn")];
    for (family, kind, cap, anchor) in plan {
        for n in 1..=cap {
            t.push(Box::new(move || {
                Ok(vec![Check::new(
                    format!("exceptional sets of type {family:?}"),
                    anchor,
                    n,
                    None,
                    formula(kind, n, None)?,
                    counting::enumerate_exceptional_sets(family, n)?,
                )])
            }));
        }
    }
    t
}

/// Per-check tallies of a report, keyed by anchor.
pub fn tally(report: &Report) -> BTreeMap<&'static str, (usize, usize)> {
    let mut m = BTreeMap::new();
    for c in report.checks() {
        let e = m.entry(c.anchor).or_insert((0, 0));
        e.0 += usize::from(c.passed());
        e.1 += 1;
    }
    m
}
