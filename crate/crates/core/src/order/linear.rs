//! Linear extensions and realizers.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{OrderError, Result};
use crate::order::poset::Poset;

/// A total order on the elements of a poset that extends its order.
///
/// `order[k]` is the element at position `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearExtension {
    order: Vec<usize>,
}

fn positions_of(order: &[usize]) -> Option<Vec<usize>> {
    let n = order.len();
    let mut pos = vec![usize::MAX; n];
    for (k, &x) in order.iter().enumerate() {
        if x >= n || pos[x] != usize::MAX {
            return None;
        }
        pos[x] = k;
    }
    Some(pos)
}

impl LinearExtension {
    /// Validates that `order` is a permutation respecting every relation of `poset`.
    pub fn new(poset: &Poset, order: Vec<usize>) -> Result<Self> {
        let n = poset.len();
        if order.len() != n {
            return Err(OrderError::NotAPermutation { n });
        }
        let pos = positions_of(&order).ok_or(OrderError::NotAPermutation { n })?;
        for (lower, upper) in poset.lt_pairs() {
            if pos[lower] > pos[upper] {
                return Err(OrderError::NotAnExtension { lower, upper });
            }
        }
        Ok(LinearExtension { order })
    }

    pub(crate) fn from_order_unchecked(order: Vec<usize>) -> Self {
        LinearExtension { order }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `positions()[x]` is the rank of `x`.
    pub fn positions(&self) -> Vec<usize> {
        positions_of(&self.order).expect("linear extension holds a permutation")
    }

    pub fn into_order(self) -> Vec<usize> {
        self.order
    }
}

/// A family of linear extensions whose intersection is the order of the poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realizer {
    extensions: Vec<LinearExtension>,
}

/// Why a candidate family of orders fails to realize a poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealizerDefect {
    Empty,
    BadExtension(usize, OrderError),
    /// `x <= y` fails in the poset yet every extension places `x` before `y`.
    UnreversedPair {
        x: usize,
        y: usize,
    },
}

impl std::fmt::Display for RealizerDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RealizerDefect::Empty => write!(f, "no extensions"),
            RealizerDefect::BadExtension(k, e) => write!(f, "extension {k}: {e}"),
            RealizerDefect::UnreversedPair { x, y } => {
                write!(f, "{x} is not below {y}, but every extension puts {x} first")
            }
        }
    }
}

impl Realizer {
    /// Checks the realizer property against `poset` and wraps the orders.
    pub fn new(poset: &Poset, orders: Vec<Vec<usize>>) -> std::result::Result<Self, RealizerDefect> {
        let mut extensions = Vec::with_capacity(orders.len());
        for (k, order) in orders.into_iter().enumerate() {
            extensions.push(LinearExtension::new(poset, order).map_err(|e| RealizerDefect::BadExtension(k, e))?);
        }
        let r = Realizer { extensions };
        r.check(poset)?;
        Ok(r)
    }

    pub(crate) fn from_extensions_unchecked(extensions: Vec<LinearExtension>) -> Self {
        Realizer { extensions }
    }

    pub fn extensions(&self) -> &[LinearExtension] {
        &self.extensions
    }

    pub fn len(&self) -> usize {
        self.extensions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extensions.is_empty()
    }

    /// Independent re-check: every member extends the order and every
    /// non-relation `x ≰ y` is witnessed by some member placing `y` before `x`.
    pub fn check(&self, poset: &Poset) -> std::result::Result<(), RealizerDefect> {
        if self.extensions.is_empty() {
            return Err(RealizerDefect::Empty);
        }
        for (k, e) in self.extensions.iter().enumerate() {
            LinearExtension::new(poset, e.order.clone()).map_err(|err| RealizerDefect::BadExtension(k, err))?;
        }
        let positions: Vec<Vec<usize>> = self.extensions.iter().map(|e| e.positions()).collect();
        let n = poset.len();
        for x in 0..n {
            for y in 0..n {
                if poset.leq(x, y) {
                    continue;
                }
                if positions.iter().all(|pos| pos[x] < pos[y]) {
                    return Err(RealizerDefect::UnreversedPair { x, y });
                }
            }
        }
        Ok(())
    }

    pub fn is_realizer_of(&self, poset: &Poset) -> bool {
        self.check(poset).is_ok()
    }

    /// Lexicographically smallest arrangement of the same extensions.
    pub fn canonicalized(&self) -> Realizer {
        let mut extensions = self.extensions.clone();
        extensions.sort();
        Realizer { extensions }
    }
}

/// Kahn's algorithm over `poset` plus `extra` strict constraints, choosing
/// among available elements the one earliest in `priority`. Returns `None`
/// if the extra constraints create a cycle.
pub(crate) fn topological_order(poset: &Poset, extra: &[(usize, usize)], priority: &[usize]) -> Option<Vec<usize>> {
    let n = poset.len();
    let mut rank = vec![usize::MAX; n];
    for (r, &x) in priority.iter().enumerate() {
        if x < n && rank[x] == usize::MAX {
            rank[x] = r;
        }
    }
    let mut next_rank = priority.len();
    for r in rank.iter_mut() {
        if *r == usize::MAX {
            *r = next_rank;
            next_rank += 1;
        }
    }
    let mut succ: Vec<Vec<usize>> = (0..n).map(|i| poset.above(i).collect()).collect();
    for &(a, b) in extra {
        succ[a].push(b);
    }
    let mut indeg = vec![0usize; n];
    for s in &succ {
        for &b in s {
            indeg[b] += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        (0..n).filter(|&i| indeg[i] == 0).map(|i| Reverse((rank[i], i))).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse((_, x))) = heap.pop() {
        order.push(x);
        for &b in &succ[x] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                heap.push(Reverse((rank[b], b)));
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Deterministic linear extension: repeatedly place the minimal unplaced
/// element that appears earliest in `priority` (elements missing from
/// `priority` rank after it, by index).
pub fn linearize(poset: &Poset, priority: &[usize]) -> LinearExtension {
    let order = topological_order(poset, &[], priority).expect("a poset is acyclic");
    LinearExtension::from_order_unchecked(order)
}

/// [`linearize`] with index order as the priority.
pub fn linearize_default(poset: &Poset) -> LinearExtension {
    linearize(poset, &[])
}

/// A linear extension placing `y` before `x`; requires `x ≰ y`.
pub fn linearize_reversing(poset: &Poset, x: usize, y: usize) -> Result<LinearExtension> {
    let n = poset.len();
    for index in [x, y] {
        if index >= n {
            return Err(OrderError::IndexOutOfRange { index, n });
        }
    }
    if poset.leq(x, y) {
        return Err(OrderError::RelationForced { x, y });
    }
    let order = topological_order(poset, &[(y, x)], &[]).expect("x ≰ y keeps the order acyclic");
    Ok(LinearExtension::from_order_unchecked(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::families::{antichain, chain, standard_example};

    #[test]
    fn chain_has_one_extension() {
        let c = chain(5).unwrap();
        assert_eq!(linearize(&c, &[4, 3, 2, 1, 0]).order(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn antichain_follows_priority() {
        let a = antichain(3).unwrap();
        assert_eq!(linearize(&a, &[2, 0, 1]).order(), &[2, 0, 1]);
    }

    #[test]
    fn standard_example_default_priority() {
        // S_3 by index priority: a0 a1 a2 are minimal and come first, then b0 b1 b2
        let s3 = standard_example(3).unwrap();
        assert_eq!(linearize_default(&s3).order(), &[0, 1, 2, 3, 4, 5]);
        // preferring b0 places it as soon as it is minimal-unplaced: after a1, a2
        let e = linearize(&s3, &[3, 0, 1, 2]);
        assert_eq!(e.order(), &[0, 1, 2, 3, 4, 5]);
        let e = linearize(&s3, &[1, 2, 3, 0]);
        assert_eq!(e.order(), &[1, 2, 3, 0, 4, 5]);
    }

    #[test]
    fn reversing() {
        let a = antichain(2).unwrap();
        assert_eq!(linearize_reversing(&a, 0, 1).unwrap().order(), &[1, 0]);
        let s3 = standard_example(3).unwrap();
        let e = linearize_reversing(&s3, 0, 3).unwrap();
        let pos = e.positions();
        assert!(pos[3] < pos[0]);
        assert!(LinearExtension::new(&s3, e.order().to_vec()).is_ok());
        let c = chain(2).unwrap();
        assert_eq!(linearize_reversing(&c, 0, 1).unwrap_err(), OrderError::RelationForced { x: 0, y: 1 });
    }

    #[test]
    fn realizer_checks() {
        let a = antichain(3).unwrap();
        assert!(Realizer::new(&a, vec![vec![0, 1, 2], vec![2, 1, 0]]).is_ok());
        assert!(matches!(Realizer::new(&a, vec![vec![0, 1, 2]]), Err(RealizerDefect::UnreversedPair { .. })));
        let c = chain(2).unwrap();
        assert!(matches!(
            Realizer::new(&c, vec![vec![1, 0]]),
            Err(RealizerDefect::BadExtension(0, OrderError::NotAnExtension { lower: 0, upper: 1 }))
        ));
        assert!(matches!(Realizer::new(&c, vec![]), Err(RealizerDefect::Empty)));
    }
}
