//! Absorbing a product of chains into a chain-product presentation.
//!
//! Given `P ⊆ ∏ T_i` and disjoint value sets `M_0..M_{n-1}` such that every
//! comparable pair `p <= p'` agrees, for each `j`, in some coordinate whose
//! common value lies in `M_j`, the map
//!
//! ```text
//! f(p, c)_i = (p_i, c_{m(p_i)})   in   T_i ⋉ C  (lexicographic)
//! ```
//!
//! embeds `P × C_0 × … × C_{n-1}` into the same number of chains as `P`.

use crate::absorb::presentation::{ChainProductPresentation, CoordinatePartition};
use crate::absorb::AbsorbError;
use crate::order::embedding::{check_embedding, Embedding};
use crate::order::families::{chain, product_many};
use crate::order::poset::Poset;

/// A comparable pair `p <= q` with no agreeing coordinate valued in part `part`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HypothesisWitness {
    pub p: usize,
    pub q: usize,
    pub part: usize,
}

/// Checks the shared-coordinate hypothesis. Strict pairs are scanned before
/// the reflexive ones, each in index order.
pub fn check_partition_hypothesis(
    pres: &ChainProductPresentation,
    partition: &CoordinatePartition,
) -> Result<(), HypothesisWitness> {
    let base = pres.base();
    let coords = pres.coords();
    let strict = base.lt_pairs();
    let reflexive = (0..base.len()).map(|p| (p, p));
    for (p, q) in strict.into_iter().chain(reflexive) {
        for (part_index, part) in partition.parts().iter().enumerate() {
            let shared =
                coords[p].iter().zip(&coords[q]).enumerate().any(|(i, (&a, &b))| a == b && part.contains(&(i, a)));
            if !shared {
                return Err(HypothesisWitness { p, q, part: part_index });
            }
        }
    }
    Ok(())
}

/// Output of [`absorb_embed`]: an embedding of `base × ∏ C_j` into
/// `chain_count` chains.
#[derive(Clone, Debug)]
pub struct AbsorptionCertificate {
    pub presentation: ChainProductPresentation,
    /// The partition as given.
    pub partition: CoordinatePartition,
    /// After assigning uncovered values to part 0.
    pub enlarged: CoordinatePartition,
    pub chains: Vec<usize>,
    /// Length of the common chain the `C_j` are placed in.
    pub common_chain: usize,
    /// `base × C_0 × … × C_{n-1}`, base index most significant.
    pub product: Poset,
    pub embedding: Embedding,
}

impl AbsorptionCertificate {
    /// Number of chains the product is embedded into: an upper bound on its dimension.
    pub fn dimension_bound(&self) -> usize {
        self.embedding.dimension()
    }

    pub fn verify(&self) -> bool {
        self.embedding.check_shape(&self.product).is_ok() && check_embedding(&self.product, &self.embedding).is_ok()
    }
}

/// Builds the lexicographic absorption map without checking the hypothesis.
/// `part_of(i, t)` selects which absorbed coordinate rides along with value
/// `t` of chain `i`.
pub fn absorption_map(
    pres: &ChainProductPresentation,
    chains: &[usize],
    part_of: impl Fn(usize, usize) -> usize,
) -> Result<(Poset, Embedding, usize), AbsorbError> {
    if chains.contains(&0) {
        return Err(AbsorbError::Order(crate::OrderError::InvalidParameter("absorbed chains must be nonempty".into())));
    }
    let common = chains.iter().copied().max().unwrap_or(1);
    let mut factors = vec![pres.base().clone()];
    for &len in chains {
        factors.push(chain(len).map_err(AbsorbError::Order)?);
    }
    let product = product_many(&factors).map_err(AbsorbError::Order)?;
    let stride: usize = chains.iter().product();
    let target_chains: Vec<usize> = pres.chain_lengths().iter().map(|&l| l * common).collect();
    let image = (0..product.len())
        .map(|k| {
            let p = k / stride;
            let mut rest = k % stride;
            let mut c = vec![0; chains.len()];
            for j in (0..chains.len()).rev() {
                c[j] = rest % chains[j];
                rest /= chains[j];
            }
            pres.coords()[p]
                .iter()
                .enumerate()
                .map(|(i, &t)| t * common + if chains.is_empty() { 0 } else { c[part_of(i, t)] })
                .collect()
        })
        .collect();
    Ok((product, Embedding { target_chains, image }, common))
}

/// Embeds `base × C_0 × … × C_{n-1}` into `pres.chain_count()` chains,
/// where `n = partition.len()` and `chains[j] = |C_j|`.
pub fn absorb_embed(
    pres: &ChainProductPresentation,
    partition: &CoordinatePartition,
    chains: &[usize],
) -> Result<AbsorptionCertificate, AbsorbError> {
    if chains.len() != partition.len() {
        return Err(AbsorbError::ChainCountMismatch { parts: partition.len(), chains: chains.len() });
    }
    check_partition_hypothesis(pres, partition).map_err(AbsorbError::HypothesisViolated)?;
    let enlarged = partition.enlarged(&pres.used_values());
    let (product, embedding, common) = absorption_map(pres, chains, |i, t| {
        enlarged.part_of(i, t).expect("enlarged partition covers every used value")
    })?;
    let cert = AbsorptionCertificate {
        presentation: pres.clone(),
        partition: partition.clone(),
        enlarged,
        chains: chains.to_vec(),
        common_chain: common,
        product,
        embedding,
    };
    if let Err(v) = check_embedding(&cert.product, &cert.embedding) {
        return Err(AbsorbError::InternalVerificationFailed(v));
    }
    Ok(cert)
}

/// Searches for a partition into `parts` disjoint value sets satisfying the
/// hypothesis. Values are assigned to a part or left out, by backtracking.
pub fn find_partition(pres: &ChainProductPresentation, parts: usize, node_limit: u64) -> Option<CoordinatePartition> {
    if parts == 0 {
        return Some(CoordinatePartition::empty());
    }
    let base = pres.base();
    let coords = pres.coords();
    let values: Vec<(usize, usize)> = pres.used_values().into_iter().collect();
    let index_of = |v: (usize, usize)| values.binary_search(&v).expect("used value");
    // for each comparable pair (incl. p = p), the values they share
    let mut shared: Vec<Vec<usize>> = Vec::new();
    for (p, q) in base.lt_pairs().into_iter().chain((0..base.len()).map(|p| (p, p))) {
        let s: Vec<usize> = coords[p]
            .iter()
            .zip(&coords[q])
            .enumerate()
            .filter(|(_, (a, b))| a == b)
            .map(|(i, (&a, _))| index_of((i, a)))
            .collect();
        if s.len() < parts {
            return None;
        }
        shared.push(s);
    }
    shared.sort_by_key(Vec::len);
    shared.dedup();
    let mut assign: Vec<Option<usize>> = vec![None; values.len()];
    let mut nodes = 0u64;

    // each constraint needs every part represented among its shared values
    // (values before `next` are decided, including the ones left out)
    fn satisfiable(shared: &[Vec<usize>], assign: &[Option<usize>], parts: usize, next: usize) -> bool {
        shared.iter().all(|s| {
            let free = s.iter().filter(|&&v| v >= next).count();
            let mut have = vec![false; parts];
            for &v in s.iter().filter(|&&v| v < next) {
                if let Some(j) = assign[v] {
                    have[j] = true;
                }
            }
            let missing = have.iter().filter(|h| !**h).count();
            missing <= free
        })
    }

    fn go(
        v: usize,
        shared: &[Vec<usize>],
        assign: &mut Vec<Option<usize>>,
        parts: usize,
        nodes: &mut u64,
        limit: u64,
    ) -> bool {
        *nodes += 1;
        if *nodes > limit || !satisfiable(shared, assign, parts, v) {
            return false;
        }
        if v == assign.len() {
            return true;
        }
        // symmetry: a value may open at most the next unused part
        let opened = assign.iter().flatten().copied().max().map_or(0, |m| m + 1);
        for j in 0..parts.min(opened + 1) {
            assign[v] = Some(j);
            if go(v + 1, shared, assign, parts, nodes, limit) {
                return true;
            }
        }
        assign[v] = None;
        go(v + 1, shared, assign, parts, nodes, limit)
    }

    if !go(0, &shared, &mut assign, parts, &mut nodes, node_limit) {
        return None;
    }
    let mut lists = vec![Vec::new(); parts];
    for (k, a) in assign.iter().enumerate() {
        if let Some(j) = a {
            lists[*j].push(values[k]);
        }
    }
    let partition = CoordinatePartition::from_lists(lists).ok()?;
    check_partition_hypothesis(pres, &partition).ok().map(|_| partition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absorb::corollaries::{corollary_bounds_partition, interleaved_partition};
    use crate::order::families::*;
    use crate::order::is_embedding;

    fn s3_pres() -> ChainProductPresentation {
        ChainProductPresentation::cube(&standard_example_tuples(3).unwrap()).unwrap()
    }

    fn zeros_ones(d: usize) -> CoordinatePartition {
        CoordinatePartition::from_lists(vec![(0..d).map(|i| (i, 0)).collect(), (0..d).map(|i| (i, 1)).collect()])
            .unwrap()
    }

    #[test]
    fn standard_example_hypothesis_holds() {
        assert!(check_partition_hypothesis(&s3_pres(), &zeros_ones(3)).is_ok());
    }

    #[test]
    fn square_hypothesis_fails_on_ones() {
        let pres = ChainProductPresentation::cube(&cube_tuples(2)).unwrap();
        let w = check_partition_hypothesis(&pres, &zeros_ones(2)).unwrap_err();
        assert_eq!(w.part, 1);
        assert!(pres.base().leq(w.p, w.q));
        // 00 <= 11 is another violation of part 1
        let bottom_top = CoordinatePartition::from_lists(vec![vec![(0, 1), (1, 1)]]).unwrap();
        let cube = pres.base();
        let (b, t) = (cube.index_of("00").unwrap(), cube.index_of("11").unwrap());
        assert!(pres.coords()[b].iter().zip(&pres.coords()[t]).all(|(x, y)| x != y));
        assert!(check_partition_hypothesis(&pres, &bottom_top).is_err());
    }

    #[test]
    fn graded_slice_with_interleaved_parts() {
        let pres = ChainProductPresentation::cube(&graded_slice_tuples(4, 1, 2).unwrap()).unwrap();
        let parts = interleaved_partition(4, 2).unwrap();
        assert!(check_partition_hypothesis(&pres, &parts).is_ok());
        let cert = absorb_embed(&pres, &parts, &[3, 3]).unwrap();
        assert_eq!(cert.embedding.target_chains, vec![6; 4]);
        assert_eq!(cert.product.len(), 10 * 9);
        assert!(cert.verify());
    }

    #[test]
    fn s3_times_square() {
        let cert = absorb_embed(&s3_pres(), &zeros_ones(3), &[2, 2]).unwrap();
        assert_eq!(cert.embedding.target_chains, vec![4, 4, 4]);
        assert_eq!(cert.product.len(), 24);
        assert!(is_embedding(&cert.product, &cert.embedding));
        assert_eq!(cert.dimension_bound(), 3);
    }

    #[test]
    fn empty_partition_is_identity() {
        let pres = s3_pres();
        let cert = absorb_embed(&pres, &CoordinatePartition::empty(), &[]).unwrap();
        assert_eq!(cert.product.lt_pairs(), pres.base().lt_pairs());
        assert_eq!(cert.embedding.image, pres.coords());
    }

    #[test]
    fn refuses_when_hypothesis_fails() {
        let pres = ChainProductPresentation::cube(&cube_tuples(2)).unwrap();
        assert!(matches!(absorb_embed(&pres, &zeros_ones(2), &[2, 2]), Err(AbsorbError::HypothesisViolated(_))));
        assert!(matches!(absorb_embed(&pres, &zeros_ones(2), &[2]), Err(AbsorbError::ChainCountMismatch { .. })));
    }

    #[test]
    fn naive_map_fails_without_shared_coordinates() {
        // 0 < 1 in a single chain: the pair differs in every coordinate
        let c2 = chain(2).unwrap();
        let pres = ChainProductPresentation::new(c2, vec![2], vec![vec![0], vec![1]]).unwrap();
        let (product, e, _) = absorption_map(&pres, &[2], |_, _| 0).unwrap();
        let v = check_embedding(&product, &e).unwrap_err();
        assert_eq!(v.failure, crate::order::EmbeddingFailure::NotReflecting);
        // (0, 1) and (1, 0) are incomparable but their images are ordered
        assert!(product.incomparable(v.p, v.q));
    }

    #[test]
    fn partition_search_recovers_known_partitions() {
        let found = find_partition(&s3_pres(), 2, 100_000).unwrap();
        assert!(check_partition_hypothesis(&s3_pres(), &found).is_ok());
        assert!(find_partition(&s3_pres(), 3, 100_000).is_none());
        let cube = ChainProductPresentation::cube(&cube_tuples(2)).unwrap();
        assert!(find_partition(&cube, 1, 100_000).is_none());
        let bounds = corollary_bounds_partition(&s3_pres()).unwrap();
        assert_eq!(bounds.len(), 2);
    }
}
