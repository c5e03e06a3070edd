//! Objects carrying an optional shift `[1]`.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signed<T> {
    pub obj: T,
    pub shifted: bool,
}

impl<T> Signed<T> {
    pub fn plain(obj: T) -> Self {
        Self { obj, shifted: false }
    }

    pub fn shifted(obj: T) -> Self {
        Self { obj, shifted: true }
    }

    pub fn sign(&self) -> i64 {
        if self.shifted {
            -1
        } else {
            1
        }
    }
}

/// Every way of shifting a subset of the positions marked in `allowed`,
/// ordered by the binary number the shifted subset spells.
pub fn sign_choices<T: Copy>(seq: &[T], allowed: &[bool]) -> Vec<Vec<Signed<T>>> {
    let free: Vec<usize> = (0..seq.len()).filter(|&p| allowed[p]).collect();
    (0u64..1 << free.len())
        .map(|mask| {
            let mut out: Vec<Signed<T>> = seq.iter().map(|&x| Signed::plain(x)).collect();
            for (bit, &p) in free.iter().enumerate() {
                out[p].shifted = mask >> bit & 1 == 1;
            }
            out
        })
        .collect()
}

pub fn strip<T: Copy>(seq: &[Signed<T>]) -> Vec<T> {
    seq.iter().map(|s| s.obj).collect()
}
