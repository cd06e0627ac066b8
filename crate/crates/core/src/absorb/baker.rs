//! Splitting a realizer of `P × Q` (both bounded) into chain embeddings of
//! `P` and of `Q`.

use crate::absorb::AbsorbError;
use crate::order::embedding::{check_embedding, Embedding};
use crate::order::families::product;
use crate::order::linear::Realizer;
use crate::order::poset::Poset;

#[derive(Clone, Debug)]
pub struct BakerSplit {
    /// Extensions of the realizer placing `(0_P, 1_Q)` before `(1_P, 0_Q)`, in original order.
    pub first_group: Vec<usize>,
    pub second_group: Vec<usize>,
    /// `p ↦ positions of (p, 0_Q)` in the first group.
    pub left: Embedding,
    /// `q ↦ positions of (0_P, q)` in the second group.
    pub right: Embedding,
}

impl BakerSplit {
    pub fn sizes(&self) -> (usize, usize) {
        (self.first_group.len(), self.second_group.len())
    }
}

/// Splits `realizer` (of `product(p, q)`, index `a * |Q| + b`) into embeddings
/// of `p` and `q`, so `|realizer| >= dim(P) + dim(Q)`.
pub fn baker_split(p: &Poset, q: &Poset, realizer: &Realizer) -> Result<BakerSplit, AbsorbError> {
    let bounds = |poset: &Poset, factor| {
        poset.least_element().zip(poset.greatest_element()).ok_or(AbsorbError::NotBounded { factor })
    };
    let (p0, p1) = bounds(p, 0)?;
    let (q0, q1) = bounds(q, 1)?;
    let pq = product(p, q)?;
    realizer.check(&pq).map_err(AbsorbError::NotARealizer)?;
    let nq = q.len();
    let at = |a: usize, b: usize| a * nq + b;
    let positions: Vec<Vec<usize>> = realizer.extensions().iter().map(|e| e.positions()).collect();
    let (first_group, second_group): (Vec<usize>, Vec<usize>) =
        (0..positions.len()).partition(|&k| positions[k][at(p0, q1)] < positions[k][at(p1, q0)]);
    let left = Embedding {
        target_chains: vec![pq.len(); first_group.len()],
        image: (0..p.len()).map(|a| first_group.iter().map(|&k| positions[k][at(a, q0)]).collect()).collect(),
    };
    let right = Embedding {
        target_chains: vec![pq.len(); second_group.len()],
        image: (0..nq).map(|b| second_group.iter().map(|&k| positions[k][at(p0, b)]).collect()).collect(),
    };
    check_embedding(p, &left).map_err(AbsorbError::InternalVerificationFailed)?;
    check_embedding(q, &right).map_err(AbsorbError::InternalVerificationFailed)?;
    Ok(BakerSplit { first_group, second_group, left, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::families::*;
    use crate::solver::{dimension, SearchBudget};

    fn split_of(p: &Poset, q: &Poset) -> (usize, usize) {
        let r = dimension(&product(p, q).unwrap(), SearchBudget::default()).unwrap();
        baker_split(p, q, &r.certificate).unwrap().sizes()
    }

    #[test]
    fn known_splits() {
        let c2 = chain(2).unwrap();
        let b2 = boolean_lattice(2).unwrap();
        assert_eq!(split_of(&c2, &c2), (1, 1));
        assert_eq!(split_of(&b2, &b2), (2, 2));
        assert_eq!(split_of(&b2, &chain(3).unwrap()), (2, 1));
    }

    #[test]
    fn rejects_unbounded_and_non_realizers() {
        let a = antichain(2).unwrap();
        let c = chain(2).unwrap();
        let r = dimension(&product(&a, &c).unwrap(), SearchBudget::default()).unwrap();
        assert!(matches!(baker_split(&a, &c, &r.certificate), Err(AbsorbError::NotBounded { factor: 0 })));
        let one = Realizer::from_extensions_unchecked(vec![crate::order::linearize_default(&product(&c, &c).unwrap())]);
        assert!(matches!(baker_split(&c, &c, &one), Err(AbsorbError::NotARealizer(_))));
    }
}
