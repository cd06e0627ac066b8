use serde::{Deserialize, Serialize};

use crate::error::{OrderError, Result};
use crate::order::poset::Poset;

/// A map from the elements of a poset into a product of chains.
///
/// `image[p][i]` is the coordinate of `p` in chain `i`, in `0..target_chains[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub target_chains: Vec<usize>,
    pub image: Vec<Vec<usize>>,
}

/// Which half of the embedding predicate a pair violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EmbeddingFailure {
    /// `p <= q` but the image of `p` is not below the image of `q`.
    NotIsotone,
    /// `p ≰ q` but the image of `p` is below the image of `q`.
    NotReflecting,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingViolation {
    pub p: usize,
    pub q: usize,
    pub failure: EmbeddingFailure,
}

impl Embedding {
    /// Checks shape and coordinate ranges against `source`.
    pub fn new(source: &Poset, target_chains: Vec<usize>, image: Vec<Vec<usize>>) -> Result<Self> {
        let e = Embedding { target_chains, image };
        e.check_shape(source)?;
        Ok(e)
    }

    pub fn check_shape(&self, source: &Poset) -> Result<()> {
        if self.image.len() != source.len() {
            return Err(OrderError::Malformed(format!(
                "embedding has {} images for {} elements",
                self.image.len(),
                source.len()
            )));
        }
        if let Some(&0) = self.target_chains.iter().find(|&&l| l == 0) {
            return Err(OrderError::Malformed("target chains must be nonempty".into()));
        }
        for (p, tuple) in self.image.iter().enumerate() {
            if tuple.len() != self.target_chains.len() {
                return Err(OrderError::Malformed(format!(
                    "image of {p} has {} coordinates, expected {}",
                    tuple.len(),
                    self.target_chains.len()
                )));
            }
            for (i, (&c, &len)) in tuple.iter().zip(&self.target_chains).enumerate() {
                if c >= len {
                    return Err(OrderError::Malformed(format!(
                        "coordinate {i} of element {p} is {c}, chain length {len}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.target_chains.len()
    }

    /// Coordinatewise `image(p) <= image(q)`.
    pub fn image_leq(&self, p: usize, q: usize) -> bool {
        self.image[p].iter().zip(&self.image[q]).all(|(a, b)| a <= b)
    }
}

/// Checks both halves of the embedding predicate over all ordered pairs and
/// reports the first violation in `(p, q)` index order.
pub fn check_embedding(source: &Poset, e: &Embedding) -> std::result::Result<(), EmbeddingViolation> {
    let n = source.len();
    for p in 0..n {
        for q in 0..n {
            let below = e.image_leq(p, q);
            if source.leq(p, q) && !below {
                return Err(EmbeddingViolation { p, q, failure: EmbeddingFailure::NotIsotone });
            }
            if !source.leq(p, q) && below {
                return Err(EmbeddingViolation { p, q, failure: EmbeddingFailure::NotReflecting });
            }
        }
    }
    Ok(())
}

pub fn is_embedding(source: &Poset, e: &Embedding) -> bool {
    e.check_shape(source).is_ok() && check_embedding(source, e).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::families::{
        antichain, boolean_lattice, chain, cube_tuples, standard_example, standard_example_tuples,
    };

    fn cube_embedding(src: &Poset, tuples: &[Vec<u8>]) -> Embedding {
        let d = tuples[0].len();
        let image = tuples.iter().map(|t| t.iter().map(|&b| b as usize).collect()).collect();
        Embedding::new(src, vec![2; d], image).unwrap()
    }

    #[test]
    fn standard_example_into_cube() {
        let s3 = standard_example(3).unwrap();
        let e = cube_embedding(&s3, &standard_example_tuples(3).unwrap());
        assert!(is_embedding(&s3, &e));
    }

    #[test]
    fn antichain_onto_cube_is_isotone_only() {
        let a = antichain(8).unwrap();
        let e = cube_embedding(&a, &cube_tuples(3));
        let v = check_embedding(&a, &e).unwrap_err();
        assert_eq!(v.failure, EmbeddingFailure::NotReflecting);
        assert_eq!((v.p, v.q), (0, 1));
    }

    #[test]
    fn singleton_into_any_chain() {
        let s = chain(1).unwrap();
        let e = Embedding::new(&s, vec![5, 3], vec![vec![4, 0]]).unwrap();
        assert!(is_embedding(&s, &e));
    }

    #[test]
    fn isotone_failure_reported() {
        let c = chain(2).unwrap();
        let e = Embedding::new(&c, vec![2], vec![vec![1], vec![0]]).unwrap();
        let v = check_embedding(&c, &e).unwrap_err();
        assert_eq!(v.failure, EmbeddingFailure::NotIsotone);
        assert!(Embedding::new(&c, vec![2], vec![vec![2], vec![0]]).is_err());
        let b = boolean_lattice(2).unwrap();
        assert!(Embedding::new(&b, vec![2], vec![vec![0]]).is_err());
    }
}
