//! Absorbing chain factors into a chain-product presentation, the standard
//! partition recipes built on it, and the split of a realizer of a product
//! of bounded posets.

pub mod baker;
pub mod corollaries;
pub mod presentation;
pub mod theorem;

use thiserror::Error;

use crate::error::OrderError;
use crate::order::embedding::EmbeddingViolation;
use crate::order::linear::RealizerDefect;

pub use baker::{baker_split, BakerSplit};
pub use corollaries::{
    band_dimension_bound, corollary_bounds_partition, corollary_floor_partition, interleaved_partition, BandBound,
};
pub use presentation::{ChainProductPresentation, CoordinatePartition};
pub use theorem::{
    absorb_embed, absorption_map, check_partition_hypothesis, find_partition, AbsorptionCertificate, HypothesisWitness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbsorbError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("coordinate map is not an embedding: {0:?}")]
    NotAnEmbedding(EmbeddingViolation),
    #[error("value {value} of chain {chain} lies in two parts")]
    OverlappingParts { chain: usize, value: usize },
    #[error("{} <= {} share no coordinate valued in part {}", .0.p, .0.q, .0.part)]
    HypothesisViolated(HypothesisWitness),
    #[error("element {element} does not meet the partition recipe's requirement")]
    HypothesisNotMet { element: usize },
    #[error("{parts} parts need at least {needed} coordinates, have {d}")]
    TooManyParts { parts: usize, needed: usize, d: usize },
    #[error("constructed map failed verification: {0:?}")]
    InternalVerificationFailed(EmbeddingViolation),
    #[error("factor {factor} lacks a least or greatest element")]
    NotBounded { factor: usize },
    #[error("not a realizer of the product: {0}")]
    NotARealizer(RealizerDefect),
    #[error("{parts} parts but {chains} chain lengths")]
    ChainCountMismatch { parts: usize, chains: usize },
}
