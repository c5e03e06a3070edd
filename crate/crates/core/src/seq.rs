//! Lexicographic backtracking over sequences whose ordered pairs satisfy a
//! tabulated compatibility relation.

use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct PairTable {
    size: usize,
    ok: Vec<bool>,
}

impl PairTable {
    /// `f(a, b)` says that `a` may appear before `b`.
    pub fn build(size: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut ok = vec![false; size * size];
        for a in 0..size {
            for b in 0..size {
                ok[a * size + b] = f(a, b);
            }
        }
        Self { size, ok }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, a: usize, b: usize) -> bool {
        self.ok[a * self.size + b]
    }

    /// Whether every ordered pair of `seq` is compatible.
    pub fn accepts(&self, seq: &[usize]) -> bool {
        seq.iter()
            .enumerate()
            .all(|(p, &a)| seq[p + 1..].iter().all(|&b| self.get(a, b)))
    }

    pub fn extends(&self, prefix: &[usize], c: usize) -> bool {
        prefix.iter().all(|&a| self.get(a, c))
    }
}

#[derive(Debug, Clone)]
pub struct Sequences {
    table: Arc<PairTable>,
    allowed: Arc<Vec<bool>>,
    k: usize,
    floor: usize,
    stack: Vec<usize>,
    next: usize,
    done: bool,
}

impl Sequences {
    pub fn new(table: Arc<PairTable>, allowed: Arc<Vec<bool>>, k: usize) -> Self {
        Self::with_prefix(table, allowed, k, Vec::new())
    }

    /// Enumerates the extensions of `prefix` to length `k`.
    pub fn with_prefix(table: Arc<PairTable>, allowed: Arc<Vec<bool>>, k: usize, prefix: Vec<usize>) -> Self {
        let done = prefix.len() > k || !table.accepts(&prefix);
        Self { table, allowed, k, floor: prefix.len(), stack: prefix, next: 0, done }
    }

    fn pop(&mut self) {
        if self.stack.len() == self.floor {
            self.done = true;
            return;
        }
        self.next = self.stack.pop().map_or(0, |c| c + 1);
    }
}

impl Iterator for Sequences {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        while !self.done {
            if self.stack.len() == self.k {
                let out = self.stack.clone();
                self.pop();
                return Some(out);
            }
            let size = self.table.size();
            let found = (self.next..size).find(|&c| self.allowed[c] && self.table.extends(&self.stack, c));
            match found {
                Some(c) => {
                    self.stack.push(c);
                    self.next = 0;
                }
                None => self.pop(),
            }
        }
        None
    }
}
