//! Small test corpora: every poset up to isomorphism for tiny sizes, and
//! seeded random posets.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{OrderError, Result};
use crate::order::poset::Poset;

/// Largest size [`all_posets`] enumerates.
pub const MAX_EXHAUSTIVE: usize = 7;

fn code_under(lt: &[(usize, usize)], perm: &[usize], n: usize) -> u64 {
    lt.iter().fold(0u64, |acc, &(i, j)| acc | 1 << (perm[i] * n + perm[j]))
}

/// Smallest relation code over all relabelings; equal iff isomorphic.
pub fn canonical_code(poset: &Poset) -> u64 {
    let n = poset.len();
    assert!(n <= 8, "canonical codes are defined for at most 8 elements");
    let lt = poset.lt_pairs();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = code_under(&lt, &perm, n);
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(code_under(&lt, &perm, n));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// One representative of every isomorphism class of `n`-element posets,
/// each naturally labeled (`i < j` implies `i` precedes `j` numerically).
pub fn all_posets(n: usize) -> Result<Vec<Poset>> {
    if n == 0 || n > MAX_EXHAUSTIVE {
        return Err(OrderError::InvalidParameter(format!("exhaustive corpus needs 1 <= n <= {MAX_EXHAUSTIVE}")));
    }
    let mut layer = vec![Poset::from_relations(labels(1), &[])?];
    for m in 1..n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for p in &layer {
            // the new element m sits above a down-closed set
            for mask in 0u32..1 << m {
                let below: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
                if !below.iter().all(|&i| p.below(i).all(|j| mask >> j & 1 == 1)) {
                    continue;
                }
                let mut lt = p.lt_pairs();
                lt.extend(below.iter().map(|&i| (i, m)));
                let q = Poset::from_relations(labels(m + 1), &lt)?;
                if seen.insert(canonical_code(&q)) {
                    next.push(q);
                }
            }
        }
        layer = next;
    }
    Ok(layer)
}

/// Every isomorphism class with `1..=max_n` elements.
pub fn all_posets_up_to(max_n: usize) -> Result<Vec<Poset>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(all_posets(n)?);
    }
    Ok(out)
}

/// Seeded random posets: each pair `i < j` is a generating relation with
/// probability `density`.
pub struct RandomPosets {
    rng: ChaCha8Rng,
}

impl RandomPosets {
    pub fn new(seed: u64) -> Self {
        RandomPosets { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn poset(&mut self, n: usize, density: f64) -> Poset {
        let lt: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|_| self.rng.gen_bool(density)).collect();
        Poset::from_relations(labels(n), &lt).expect("forward relations are acyclic")
    }

    /// A random poset on `n` elements with a size and density drawn from the ranges.
    pub fn sized(&mut self, sizes: std::ops::RangeInclusive<usize>) -> Poset {
        let n = self.rng.gen_range(sizes);
        let density = self.rng.gen_range(0.1..0.7);
        self.poset(n, density)
    }

    /// A random poset with a least and a greatest element, `n >= 1` elements in total.
    pub fn bounded(&mut self, n: usize, density: f64) -> Poset {
        if n <= 2 {
            let lt: Vec<(usize, usize)> = if n == 2 { vec![(0, 1)] } else { vec![] };
            return Poset::from_relations(labels(n), &lt).expect("chain");
        }
        let inner = self.poset(n - 2, density);
        let mut lt: Vec<(usize, usize)> = inner.lt_pairs().into_iter().map(|(i, j)| (i + 1, j + 1)).collect();
        for i in 1..n - 1 {
            lt.push((0, i));
            lt.push((i, n - 1));
        }
        lt.push((0, n - 1));
        Poset::from_relations(labels(n), &lt).expect("bounded extension is acyclic")
    }

    pub fn gen_range(&mut self, range: std::ops::RangeInclusive<usize>) -> usize {
        self.rng.gen_range(range)
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphism_class_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| all_posets(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 63, 318]);
    }

    #[test]
    fn canonical_code_ignores_labels() {
        let p = Poset::from_relations(["a", "b", "c"], &[(0, 2)]).unwrap();
        let q = Poset::from_relations(["a", "b", "c"], &[(1, 0)]).unwrap();
        let r = Poset::from_relations(["a", "b", "c"], &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(canonical_code(&p), canonical_code(&q));
        assert_ne!(canonical_code(&p), canonical_code(&r));
    }

    #[test]
    fn random_posets_are_seeded_and_bounded() {
        let a = RandomPosets::new(7).poset(6, 0.4);
        let b = RandomPosets::new(7).poset(6, 0.4);
        assert_eq!(a.lt_pairs(), b.lt_pairs());
        let mut g = RandomPosets::new(3);
        for n in 1..=6 {
            let p = g.bounded(n, 0.3);
            assert_eq!(p.len(), n);
            assert!(p.is_bounded());
        }
    }
}
