use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::absorb::AbsorbError;
use crate::order::embedding::{check_embedding, Embedding};
use crate::order::families::cube_subposet;
use crate::order::linear::Realizer;
use crate::order::poset::Poset;

/// A poset together with an explicit embedding into a product of chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainProductPresentation {
    base: Poset,
    chain_lengths: Vec<usize>,
    coords: Vec<Vec<usize>>,
}

impl ChainProductPresentation {
    /// Validates that `coords` embeds `base` into the chains.
    pub fn new(base: Poset, chain_lengths: Vec<usize>, coords: Vec<Vec<usize>>) -> Result<Self, AbsorbError> {
        let e = Embedding::new(&base, chain_lengths, coords).map_err(AbsorbError::Order)?;
        check_embedding(&base, &e).map_err(AbsorbError::NotAnEmbedding)?;
        Ok(ChainProductPresentation { base, chain_lengths: e.target_chains, coords: e.image })
    }

    /// The subposet of `2^d` on `tuples`, presented by its own coordinates.
    pub fn cube(tuples: &[Vec<u8>]) -> Result<Self, AbsorbError> {
        let base = cube_subposet(tuples).map_err(AbsorbError::Order)?;
        let d = tuples.first().map_or(0, Vec::len);
        let coords = tuples.iter().map(|t| t.iter().map(|&b| b as usize).collect()).collect();
        Self::new(base, vec![2; d], coords)
    }

    /// Coordinates are the ranks in each extension of `realizer`.
    pub fn from_realizer(base: &Poset, realizer: &Realizer) -> Result<Self, AbsorbError> {
        let n = base.len();
        let pos: Vec<Vec<usize>> = realizer.extensions().iter().map(|e| e.positions()).collect();
        let coords = (0..n).map(|p| pos.iter().map(|ps| ps[p]).collect()).collect();
        Self::new(base.clone(), vec![n; realizer.len()], coords)
    }

    pub fn base(&self) -> &Poset {
        &self.base
    }

    pub fn chain_lengths(&self) -> &[usize] {
        &self.chain_lengths
    }

    pub fn coords(&self) -> &[Vec<usize>] {
        &self.coords
    }

    pub fn chain_count(&self) -> usize {
        self.chain_lengths.len()
    }

    pub fn as_embedding(&self) -> Embedding {
        Embedding { target_chains: self.chain_lengths.clone(), image: self.coords.clone() }
    }

    /// Every `(chain, value)` pair some element uses.
    pub fn used_values(&self) -> BTreeSet<(usize, usize)> {
        self.coords.iter().flat_map(|t| t.iter().enumerate().map(|(i, &v)| (i, v))).collect()
    }

    /// Greedily merges adjacent values of each chain while the map stays an
    /// embedding, then renumbers values densely. Coarser presentations let
    /// more comparable pairs share a coordinate value.
    pub fn coarsened(&self, reverse_sweep: bool) -> ChainProductPresentation {
        let d = self.chain_count();
        let mut steps: Vec<(usize, usize)> = Vec::new();
        for i in 0..d {
            let len = self.chain_lengths[i];
            let mut idx: Vec<usize> = (1..len).collect();
            if reverse_sweep {
                idx.reverse();
            }
            steps.extend(idx.into_iter().map(|v| (i, v)));
        }
        self.merged_in_order(&steps)
    }

    /// Like [`coarsened`](Self::coarsened), trying the merges in an order drawn from `rng`.
    pub fn coarsened_randomly(&self, rng: &mut impl rand::Rng) -> ChainProductPresentation {
        use rand::seq::SliceRandom;
        let mut steps: Vec<(usize, usize)> =
            (0..self.chain_count()).flat_map(|i| (1..self.chain_lengths[i]).map(move |v| (i, v))).collect();
        steps.shuffle(rng);
        self.merged_in_order(&steps)
    }

    /// Each step `(i, v)` tries to merge value `v` of chain `i` into the
    /// value just below it (both as currently renumbered); repeats until stable.
    fn merged_in_order(&self, steps: &[(usize, usize)]) -> ChainProductPresentation {
        let n = self.base.len();
        let d = self.chain_count();
        let mut coords = self.coords.clone();
        // pairs p ≰ q, each needing a chain with coord(p) > coord(q)
        let needs: Vec<(usize, usize)> =
            (0..n).flat_map(|p| (0..n).map(move |q| (p, q))).filter(|&(p, q)| !self.base.leq(p, q)).collect();
        // merge state per chain: value -> representative (the lowest merged value)
        let mut rep: Vec<Vec<usize>> = self.chain_lengths.iter().map(|&l| (0..l).collect()).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for &(i, v) in steps {
                let hi = rep[i][v];
                if hi == 0 {
                    continue;
                }
                let lo = rep[i][hi - 1];
                if lo == hi {
                    continue;
                }
                let merged = |t: &Vec<usize>| if rep[i][t[i]] == hi { lo } else { rep[i][t[i]] };
                let ok = needs.iter().all(|&(p, q)| {
                    (0..d).any(|j| {
                        if j == i {
                            merged(&coords[p]) > merged(&coords[q])
                        } else {
                            rep[j][coords[p][j]] > rep[j][coords[q][j]]
                        }
                    })
                });
                if ok {
                    for r in rep[i].iter_mut() {
                        if *r == hi {
                            *r = lo;
                        }
                    }
                    changed = true;
                }
            }
        }
        for t in coords.iter_mut() {
            for (i, v) in t.iter_mut().enumerate() {
                *v = rep[i][*v];
            }
        }
        let mut lengths = Vec::with_capacity(d);
        for i in 0..d {
            let values: Vec<usize> = coords.iter().map(|t| t[i]).collect::<BTreeSet<_>>().into_iter().collect();
            for t in coords.iter_mut() {
                t[i] = values.binary_search(&t[i]).expect("value present");
            }
            lengths.push(values.len().max(1));
        }
        ChainProductPresentation::new(self.base.clone(), lengths, coords).expect("merges preserve the embedding")
    }
}

/// Pairwise disjoint sets of `(chain, value)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinatePartition {
    parts: Vec<BTreeSet<(usize, usize)>>,
}

impl CoordinatePartition {
    pub fn new(parts: Vec<BTreeSet<(usize, usize)>>) -> Result<Self, AbsorbError> {
        let mut seen = BTreeSet::new();
        for part in &parts {
            for &v in part {
                if !seen.insert(v) {
                    return Err(AbsorbError::OverlappingParts { chain: v.0, value: v.1 });
                }
            }
        }
        Ok(CoordinatePartition { parts })
    }

    pub fn from_lists(parts: Vec<Vec<(usize, usize)>>) -> Result<Self, AbsorbError> {
        Self::new(parts.into_iter().map(|p| p.into_iter().collect()).collect())
    }

    pub fn empty() -> Self {
        CoordinatePartition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[BTreeSet<(usize, usize)>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Index of the part holding `(chain, value)`.
    pub fn part_of(&self, chain: usize, value: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(&(chain, value)))
    }

    /// Adds every pair of `values` not yet in a part to part 0.
    pub fn enlarged(&self, values: &BTreeSet<(usize, usize)>) -> CoordinatePartition {
        let mut parts = self.parts.clone();
        if let Some(first) = parts.first_mut() {
            for &v in values {
                if self.part_of(v.0, v.1).is_none() {
                    first.insert(v);
                }
            }
        }
        CoordinatePartition { parts }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::families::*;
    use crate::solver::{dimension, SearchBudget};

    #[test]
    fn overlapping_parts_rejected() {
        assert!(matches!(
            CoordinatePartition::from_lists(vec![vec![(0, 0)], vec![(0, 0), (1, 1)]]),
            Err(AbsorbError::OverlappingParts { chain: 0, value: 0 })
        ));
    }

    #[test]
    fn realizer_presentation_coarsens_to_cube() {
        let s3 = standard_example(3).unwrap();
        let r = dimension(&s3, SearchBudget::default()).unwrap();
        let pres = ChainProductPresentation::from_realizer(&s3, &r.certificate).unwrap();
        assert_eq!(pres.chain_lengths(), &[6, 6, 6]);
        for rev in [false, true] {
            let c = pres.coarsened(rev);
            assert!(c.chain_lengths().iter().all(|&l| l <= 6));
            assert!(crate::order::is_embedding(&s3, &c.as_embedding()));
        }
    }

    #[test]
    fn non_embedding_rejected() {
        let a = antichain(2).unwrap();
        assert!(matches!(
            ChainProductPresentation::new(a, vec![2], vec![vec![0], vec![1]]),
            Err(AbsorbError::NotAnEmbedding(_))
        ));
    }
}
