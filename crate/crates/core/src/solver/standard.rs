//! Largest standard example contained in a poset.
//!
//! An induced copy of `S_n` is a family of incomparable pairs `(a_i, b_i)`
//! with `a_i < b_j` whenever `i != j`; incomparability among the `a`s (and
//! among the `b`s) then follows, since `a_i < a_j` would give
//! `a_i < a_j < b_i`. So the search is a maximum clique over incomparable
//! pairs under that compatibility relation.

use crate::order::poset::Poset;

/// Default largest `n` the search tries to reach.
pub const DEFAULT_SE_CAP: usize = 16;

const NODE_LIMIT: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardExampleWitness {
    /// `(a_i, b_i)` pairs of an induced `S_n`.
    pub pairs: Vec<(usize, usize)>,
    /// False if the node limit cut the search short (the witness is still valid).
    pub exact: bool,
}

impl StandardExampleWitness {
    pub fn size(&self) -> usize {
        self.pairs.len()
    }
}

struct Clique<'a> {
    compat: &'a [Vec<bool>],
    best: Vec<usize>,
    cap: usize,
    nodes: u64,
}

impl Clique<'_> {
    fn grow(&mut self, current: &mut Vec<usize>, candidates: &[usize]) {
        self.nodes += 1;
        if current.len() > self.best.len() {
            self.best = current.clone();
        }
        if self.best.len() >= self.cap || self.nodes > NODE_LIMIT {
            return;
        }
        for (k, &v) in candidates.iter().enumerate() {
            if current.len() + candidates.len() - k <= self.best.len() {
                return;
            }
            let next: Vec<usize> = candidates[k + 1..].iter().copied().filter(|&w| self.compat[v][w]).collect();
            current.push(v);
            self.grow(current, &next);
            current.pop();
            if self.best.len() >= self.cap || self.nodes > NODE_LIMIT {
                return;
            }
        }
    }
}

/// Largest induced standard example, up to `cap`. Returns an empty witness
/// when the poset contains no `S_2`.
pub fn largest_standard_example(poset: &Poset, cap: usize) -> StandardExampleWitness {
    let pairs: Vec<(usize, usize)> = poset.incomparable_pairs();
    let m = pairs.len();
    let compat: Vec<Vec<bool>> = (0..m)
        .map(|i| {
            let (a, b) = pairs[i];
            (0..m)
                .map(|j| {
                    let (c, d) = pairs[j];
                    i != j && poset.lt(a, d) && poset.lt(c, b)
                })
                .collect()
        })
        .collect();
    let mut search = Clique { compat: &compat, best: Vec::new(), cap, nodes: 0 };
    let all: Vec<usize> = (0..m).collect();
    search.grow(&mut Vec::new(), &all);
    let exact = search.nodes <= NODE_LIMIT;
    let mut chosen: Vec<(usize, usize)> = search.best.iter().map(|&i| pairs[i]).collect();
    if chosen.len() < 2 {
        chosen.clear();
    }
    StandardExampleWitness { pairs: chosen, exact }
}

/// Largest `n` with `S_n` an induced subposet (0 if none), searched up to [`DEFAULT_SE_CAP`].
pub fn se_lower_bound(poset: &Poset) -> usize {
    largest_standard_example(poset, DEFAULT_SE_CAP).size()
}

/// Independent check that `pairs` spans an induced standard example.
pub fn is_standard_example_witness(poset: &Poset, pairs: &[(usize, usize)]) -> bool {
    let n = pairs.len();
    if n < 2 {
        return n == 0;
    }
    let mut elems: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    elems.sort_unstable();
    elems.dedup();
    if elems.len() != 2 * n {
        return false;
    }
    for (i, &(a, _)) in pairs.iter().enumerate() {
        for (j, &(c, d)) in pairs.iter().enumerate() {
            let want_lt = i != j;
            if poset.lt(a, d) != want_lt || poset.lt(d, a) {
                return false;
            }
            if i != j && (poset.comparable(a, c) || poset.comparable(pairs[i].1, d)) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::families::*;

    #[test]
    fn known_values() {
        assert_eq!(se_lower_bound(&standard_example(4).unwrap()), 4);
        assert_eq!(se_lower_bound(&chain(5).unwrap()), 0);
        assert_eq!(se_lower_bound(&antichain(5).unwrap()), 0);
        let b3 = boolean_lattice(3).unwrap();
        let w = largest_standard_example(&b3, DEFAULT_SE_CAP);
        assert_eq!(w.size(), 3);
        assert!(w.exact);
        assert!(is_standard_example_witness(&b3, &w.pairs));
    }

    #[test]
    fn two_disjoint_chains_hold_s2() {
        let u = disjoint_union(&[chain(2).unwrap(), chain(2).unwrap()]).unwrap();
        assert_eq!(se_lower_bound(&u), 2);
    }
}
