//! Boolean representations: total orders of the ground set (not necessarily
//! extensions) plus a predicate on the pattern of agreements deciding `<`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{OrderError, Result};
use crate::order::linear::Realizer;
use crate::order::poset::Poset;

/// `x < y` iff the vector with bit `i` set when `x` precedes `y` in
/// ordering `i` is in `accepted`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BooleanRepresentation {
    pub orderings: Vec<Vec<usize>>,
    pub accepted: BTreeSet<Vec<u8>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BooleanDefect {
    NotAPermutation {
        ordering: usize,
    },
    WrongAcceptedLength {
        expected: usize,
    },
    /// `tau` disagrees with the order on `(x, y)`.
    Mismatch {
        x: usize,
        y: usize,
        vector: Vec<u8>,
        related: bool,
    },
}

impl fmt::Display for BooleanDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BooleanDefect::NotAPermutation { ordering } => write!(f, "ordering {ordering} is not a permutation"),
            BooleanDefect::WrongAcceptedLength { expected } => {
                write!(f, "accepted vectors must have length {expected}")
            }
            BooleanDefect::Mismatch { x, y, vector, related } => {
                let bits: String = vector.iter().map(|b| char::from(b'0' + b)).collect();
                let rel = if *related { "holds" } else { "fails" };
                write!(f, "pair ({x}, {y}) has vector {bits} but {x} < {y} {rel}")
            }
        }
    }
}

impl BooleanRepresentation {
    pub fn new(orderings: Vec<Vec<usize>>, accepted: impl IntoIterator<Item = Vec<u8>>) -> Self {
        BooleanRepresentation { orderings, accepted: accepted.into_iter().collect() }
    }

    pub fn d(&self) -> usize {
        self.orderings.len()
    }

    /// A realizer read as a representation accepting only the all-ones vector.
    pub fn from_realizer(realizer: &Realizer) -> Self {
        let orderings: Vec<Vec<usize>> = realizer.extensions().iter().map(|e| e.order().to_vec()).collect();
        let ones = vec![1; orderings.len()];
        Self::new(orderings, [ones])
    }

    fn positions(&self, n: usize) -> std::result::Result<Vec<Vec<usize>>, BooleanDefect> {
        self.orderings
            .iter()
            .enumerate()
            .map(|(k, ord)| {
                let mut pos = vec![usize::MAX; n];
                if ord.len() != n {
                    return Err(BooleanDefect::NotAPermutation { ordering: k });
                }
                for (r, &x) in ord.iter().enumerate() {
                    if x >= n || pos[x] != usize::MAX {
                        return Err(BooleanDefect::NotAPermutation { ordering: k });
                    }
                    pos[x] = r;
                }
                Ok(pos)
            })
            .collect()
    }
}

/// Checks every ordered pair `x != y`, in index order, and reports the first mismatch.
pub fn verify_boolean_representation(
    poset: &Poset,
    rep: &BooleanRepresentation,
) -> std::result::Result<(), BooleanDefect> {
    let n = poset.len();
    let pos = rep.positions(n)?;
    if rep.accepted.iter().any(|v| v.len() != rep.d()) {
        return Err(BooleanDefect::WrongAcceptedLength { expected: rep.d() });
    }
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            let vector: Vec<u8> = pos.iter().map(|p| u8::from(p[x] < p[y])).collect();
            let related = poset.lt(x, y);
            if rep.accepted.contains(&vector) != related {
                return Err(BooleanDefect::Mismatch { x, y, vector, related });
            }
        }
    }
    Ok(())
}

/// The four-ordering representation of `S_n` (labels `a_i` at index `i`,
/// `b_i` at `n + i`): `x < y` iff the vector is `1000` or `1011`.
pub fn sn_boolean_representation(n: usize) -> Result<BooleanRepresentation> {
    if n < 3 {
        return Err(OrderError::InvalidParameter("the four-ordering representation needs n >= 3".into()));
    }
    let a = |i: usize| i;
    let b = |i: usize| n + i;
    let o0: Vec<usize> = (0..n).map(a).chain((0..n).map(b)).collect();
    let o1: Vec<usize> = (0..n).map(b).chain((0..n).map(a)).collect();
    let o2: Vec<usize> = (0..n).flat_map(|i| [a(i), b(i)]).collect();
    let o3: Vec<usize> = (0..n).flat_map(|i| [b(i), a(i)]).collect();
    Ok(BooleanRepresentation::new(vec![o0, o1, o2, o3], [vec![1, 0, 0, 0], vec![1, 0, 1, 1]]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::families::*;
    use crate::solver::{dimension, SearchBudget};

    #[test]
    fn standard_examples_verify() {
        for n in 3..=7 {
            let s = standard_example(n).unwrap();
            assert_eq!(verify_boolean_representation(&s, &sn_boolean_representation(n).unwrap()), Ok(()));
        }
        assert!(sn_boolean_representation(2).is_err());
    }

    #[test]
    fn antichain_needs_no_orderings() {
        let rep = BooleanRepresentation::new(vec![], []);
        assert_eq!(verify_boolean_representation(&antichain(4).unwrap(), &rep), Ok(()));
        let bad = BooleanRepresentation::new(vec![], [vec![]]);
        assert!(verify_boolean_representation(&antichain(2).unwrap(), &bad).is_err());
    }

    #[test]
    fn flipped_tau_reports_first_pair() {
        let s3 = standard_example(3).unwrap();
        let mut rep = sn_boolean_representation(3).unwrap();
        rep.accepted.remove(&vec![1, 0, 0, 0]);
        let err = verify_boolean_representation(&s3, &rep).unwrap_err();
        let (a1, b0) = (s3.index_of("a1").unwrap(), s3.index_of("b0").unwrap());
        assert_eq!(err, BooleanDefect::Mismatch { x: a1, y: b0, vector: vec![1, 0, 0, 0], related: true });
    }

    #[test]
    fn realizers_are_representations() {
        for p in [standard_example(3).unwrap(), boolean_lattice(3).unwrap(), antichain(3).unwrap()] {
            let r = dimension(&p, SearchBudget::default()).unwrap();
            let rep = BooleanRepresentation::from_realizer(&r.certificate);
            assert_eq!(verify_boolean_representation(&p, &rep), Ok(()));
        }
    }

    #[test]
    fn malformed_orderings() {
        let rep = BooleanRepresentation::new(vec![vec![0, 0]], [vec![1]]);
        assert_eq!(
            verify_boolean_representation(&chain(2).unwrap(), &rep),
            Err(BooleanDefect::NotAPermutation { ordering: 0 })
        );
    }
}
