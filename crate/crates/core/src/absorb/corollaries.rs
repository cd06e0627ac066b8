//! Ready-made partitions for common presentations, and the band bound.

use crate::absorb::presentation::{ChainProductPresentation, CoordinatePartition};
use crate::absorb::theorem::{absorb_embed, check_partition_hypothesis, AbsorptionCertificate};
use crate::absorb::AbsorbError;
use crate::order::embedding::{check_embedding, Embedding};
use crate::order::families::{cube_subposet, cube_tuples, middle_band_pruned_tuples};
use crate::order::poset::Poset;

fn verified(
    pres: &ChainProductPresentation,
    partition: CoordinatePartition,
) -> Result<CoordinatePartition, AbsorbError> {
    check_partition_hypothesis(pres, &partition).map_err(AbsorbError::HypothesisViolated)?;
    Ok(partition)
}

/// Part 0 holds every chain's least value, part 1 every greatest value.
/// Requires each element to use some least and some greatest value.
pub fn corollary_bounds_partition(pres: &ChainProductPresentation) -> Result<CoordinatePartition, AbsorbError> {
    let tops: Vec<usize> = pres.chain_lengths().iter().map(|&l| l - 1).collect();
    for (p, t) in pres.coords().iter().enumerate() {
        let has_bottom = t.contains(&0);
        let has_top = t.iter().zip(&tops).any(|(v, top)| v == top);
        if !has_bottom || !has_top {
            return Err(AbsorbError::HypothesisNotMet { element: p });
        }
    }
    let d = pres.chain_count();
    let partition = CoordinatePartition::from_lists(vec![
        (0..d).map(|i| (i, 0)).collect(),
        (0..d).map(|i| (i, tops[i])).collect(),
    ])?;
    verified(pres, partition)
}

/// One part of least values (greatest values when `dual`).
pub fn corollary_floor_partition(
    pres: &ChainProductPresentation,
    dual: bool,
) -> Result<CoordinatePartition, AbsorbError> {
    let target: Vec<usize> = pres.chain_lengths().iter().map(|&l| if dual { l - 1 } else { 0 }).collect();
    for (p, t) in pres.coords().iter().enumerate() {
        if !t.iter().zip(&target).any(|(v, w)| v == w) {
            return Err(AbsorbError::HypothesisNotMet { element: p });
        }
    }
    let partition = CoordinatePartition::from_lists(vec![target.iter().copied().enumerate().collect()])?;
    verified(pres, partition)
}

/// Part `j` holds both values of chains `2j` and `2j + 1` of `2^d`.
pub fn interleaved_partition(d: usize, n: usize) -> Result<CoordinatePartition, AbsorbError> {
    if 2 * n > d {
        return Err(AbsorbError::TooManyParts { parts: n, needed: 2 * n, d });
    }
    CoordinatePartition::from_lists(
        (0..n).map(|j| vec![(2 * j, 0), (2 * j, 1), (2 * j + 1, 0), (2 * j + 1, 1)]).collect(),
    )
}

/// The pruned middle band of `2^d` with an embedding into `d - 2` chains.
#[derive(Clone, Debug)]
pub struct BandBound {
    pub poset: Poset,
    pub tuples: Vec<Vec<u8>>,
    pub bound: usize,
    pub embedding: Embedding,
    /// Absorption of two 2-chains into the slice of weights `1..=d-3` of `2^(d-2)`.
    pub absorption: AbsorptionCertificate,
}

/// Embeds the band into `d - 2` chains: the first `d - 2` coordinates of every
/// band element have weight in `1..=d-3`, and the last two coordinates are
/// absorbed as chains of length 2.
pub fn band_dimension_bound(d: usize) -> Result<BandBound, AbsorbError> {
    if d < 5 {
        return Err(AbsorbError::Order(crate::OrderError::InvalidParameter("band bound needs d >= 5".into())));
    }
    let tuples = middle_band_pruned_tuples(d)?;
    let poset = cube_subposet(&tuples)?;
    let head: Vec<Vec<u8>> = cube_tuples(d - 2)
        .into_iter()
        .filter(|t| (1..=d - 3).contains(&t.iter().filter(|&&b| b == 1).count()))
        .collect();
    let pres = ChainProductPresentation::cube(&head)?;
    let partition = corollary_bounds_partition(&pres)?;
    let absorption = absorb_embed(&pres, &partition, &[2, 2])?;
    let image = tuples
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let q =
                head.iter().position(|h| h[..] == t[..d - 2]).ok_or(AbsorbError::HypothesisNotMet { element: k })?;
            let idx = q * 4 + 2 * t[d - 2] as usize + t[d - 1] as usize;
            Ok(absorption.embedding.image[idx].clone())
        })
        .collect::<Result<Vec<_>, AbsorbError>>()?;
    let embedding = Embedding { target_chains: absorption.embedding.target_chains.clone(), image };
    check_embedding(&poset, &embedding).map_err(AbsorbError::InternalVerificationFailed)?;
    Ok(BandBound { poset, tuples, bound: d - 2, embedding, absorption })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absorb::theorem::absorb_embed;
    use crate::order::families::*;
    use crate::order::is_embedding;

    fn pres_of(tuples: &[Vec<u8>]) -> ChainProductPresentation {
        ChainProductPresentation::cube(tuples).unwrap()
    }

    #[test]
    fn bounds_partition_examples() {
        for d in 3..=5 {
            let pres = pres_of(&standard_example_tuples(d).unwrap());
            assert_eq!(corollary_bounds_partition(&pres).unwrap().len(), 2);
            let inner: Vec<Vec<u8>> = cube_tuples(d).into_iter().filter(|t| t.contains(&0) && t.contains(&1)).collect();
            assert!(corollary_bounds_partition(&pres_of(&inner)).is_ok());
        }
        let square = pres_of(&cube_tuples(2));
        assert_eq!(corollary_bounds_partition(&square), Err(AbsorbError::HypothesisNotMet { element: 0 }));
    }

    #[test]
    fn floor_partition_examples() {
        let mut with_bottom = standard_example_tuples(3).unwrap();
        with_bottom.push(vec![0, 0, 0]);
        assert!(corollary_floor_partition(&pres_of(&with_bottom), false).is_ok());
        let full = pres_of(&cube_tuples(3));
        let top = full.base().index_of("111").unwrap();
        assert_eq!(corollary_floor_partition(&full, false), Err(AbsorbError::HypothesisNotMet { element: top }));
        for d in 2..=4 {
            let no_bottom: Vec<Vec<u8>> = cube_tuples(d).into_iter().filter(|t| t.contains(&1)).collect();
            assert!(corollary_floor_partition(&pres_of(&no_bottom), true).is_ok());
            let no_top: Vec<Vec<u8>> = cube_tuples(d).into_iter().filter(|t| t.contains(&0)).collect();
            assert!(corollary_floor_partition(&pres_of(&no_top), false).is_ok());
            assert!(corollary_floor_partition(&pres_of(&no_top), true).is_err());
        }
        let pres = pres_of(&with_bottom);
        let part = corollary_floor_partition(&pres, false).unwrap();
        assert!(absorb_embed(&pres, &part, &[5]).unwrap().verify());
    }

    #[test]
    fn interleaved_examples() {
        let p = interleaved_partition(4, 2).unwrap();
        assert_eq!(p.parts().iter().map(|s| s.len()).sum::<usize>(), 8);
        let p = interleaved_partition(5, 2).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.part_of(4, 0).is_none() && p.part_of(4, 1).is_none());
        assert!(matches!(interleaved_partition(3, 2), Err(AbsorbError::TooManyParts { .. })));
        let pres = pres_of(&graded_slice_tuples(5, 2, 3).unwrap());
        assert!(absorb_embed(&pres, &p, &[2, 3]).unwrap().verify());
    }

    #[test]
    fn band_bounds() {
        let b5 = band_dimension_bound(5).unwrap();
        assert_eq!(b5.poset.len(), 18);
        assert_eq!(b5.embedding.dimension(), 3);
        assert!(is_embedding(&b5.poset, &b5.embedding));
        let b6 = band_dimension_bound(6).unwrap();
        let brute =
            (0u32..64).filter(|m| (2..=4).contains(&m.count_ones()) && *m != 0b000011 && *m != 0b111100).count();
        assert_eq!(b6.poset.len(), brute);
        assert_eq!(brute, 48);
        assert_eq!(b6.embedding.dimension(), 4);
        assert!(band_dimension_bound(4).is_err());
    }
}
