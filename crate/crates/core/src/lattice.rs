//! Integer lattices in row Hermite normal form, for exact span membership.

/// Row-style Hermite normal form of the lattice spanned by some integer rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn span<'a>(dim: usize, gens: impl IntoIterator<Item = &'a [i64]>) -> Self {
        let mut rows: Vec<Vec<i64>> = gens.into_iter().map(<[i64]>::to_vec).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..dim {
            while let Some(best) = (r..rows.len()).filter(|&k| rows[k][c] != 0).min_by_key(|&k| rows[k][c].abs()) {
                rows.swap(r, best);
                let mut clean = true;
                for k in r + 1..rows.len() {
                    let q = rows[k][c] / rows[r][c];
                    if q != 0 {
                        let (head, tail) = rows.split_at_mut(k);
                        sub_mul(&mut tail[0], &head[r], q);
                    }
                    clean &= rows[k][c] == 0;
                }
                if clean {
                    if rows[r][c] < 0 {
                        rows[r].iter_mut().for_each(|v| *v = -*v);
                    }
                    for k in 0..r {
                        let q = rows[k][c].div_euclid(rows[r][c]);
                        let (head, tail) = rows.split_at_mut(r);
                        sub_mul(&mut head[k], &tail[0], q);
                    }
                    pivots.push(c);
                    r += 1;
                    break;
                }
            }
        }
        rows.truncate(r);
        Self { dim, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if v[c] % row[c] != 0 {
                return false;
            }
            let q = v[c] / row[c];
            sub_mul(&mut v, row, q);
        }
        v.iter().all(|&x| x == 0)
    }

    /// Whether `a - b` lies in the lattice.
    pub fn congruent(&self, a: &[i64], b: &[i64]) -> bool {
        let d: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.contains(&d)
    }
}

fn sub_mul(target: &mut [i64], row: &[i64], q: i64) {
    for (t, r) in target.iter_mut().zip(row) {
        *t -= q * r;
    }
}
