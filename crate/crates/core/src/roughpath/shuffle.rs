use std::collections::BTreeMap;

use super::signature::{TensorSeries, Word};

/// A formal sum of words with nonnegative integer multiplicities.
pub type Shuffle = BTreeMap<Word, u64>;

/// All order-preserving interleavings of `w1` and `w2`, with multiplicity.
///
/// Uses `(au) ⧢ (bv) = a(u ⧢ bv) + b(au ⧢ v)`.
pub fn shuffle_product(w1: &Word, w2: &Word) -> Shuffle {
    fn go(a: &[u8], b: &[u8]) -> Shuffle {
        let mut out = Shuffle::new();
        if a.is_empty() || b.is_empty() {
            let rest = if a.is_empty() { b } else { a };
            out.insert(Word::new(rest.to_vec()).expect("letters already validated"), 1);
            return out;
        }
        for (head, tail) in [(a[0], go(&a[1..], b)), (b[0], go(a, &b[1..]))] {
            for (w, m) in tail {
                *out.entry(w.prepend(head)).or_insert(0) += m;
            }
        }
        out
    }
    go(w1.letters(), w2.letters())
}

impl TensorSeries {
    /// Evaluates a formal sum of words against this series.
    pub fn pair(&self, sum: &Shuffle) -> f64 {
        sum.iter().map(|(w, &m)| m as f64 * self.get(w)).sum()
    }
}
