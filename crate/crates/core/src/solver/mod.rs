//! Exact Dushnik–Miller dimension.
//!
//! [`dimension`] runs iterative deepening on the realizer size `k`,
//! starting from the best cheap lower bound, and returns a realizer
//! certificate together with the reason no smaller realizer exists.

pub mod search;
pub mod standard;

use std::time::Duration;

use thiserror::Error;

use crate::order::embedding::{check_embedding, Embedding, EmbeddingViolation};
use crate::order::families::{connected_components, subposet};
use crate::order::linear::{linearize, LinearExtension, Realizer};
use crate::order::poset::Poset;

pub use search::{greedy_realizer, has_realizer_of_size, reversal_class_feasible, RealizerSearch, SearchBudget};
pub use standard::{is_standard_example_witness, largest_standard_example, se_lower_bound, StandardExampleWitness};

use search::{search_with_meter, Meter};

/// Why the dimension cannot be smaller than the reported value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LowerBound {
    /// Singleton (dimension 0) or chain (dimension 1 is forced for two or more elements).
    Trivial,
    /// An incomparable pair rules out a single extension.
    IncomparablePair(usize, usize),
    /// An induced standard example `S_n` given by its `(a_i, b_i)` pairs.
    StandardExample(Vec<(usize, usize)>),
    /// The search for a realizer of this size was exhausted.
    ExhaustedSearch(usize),
    /// Maximum over the connected components, each with its own witness.
    Components,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct DimensionResult {
    pub value: usize,
    pub certificate: Realizer,
    pub lower_bound: LowerBound,
    pub stats: SearchStats,
}

#[derive(Clone, Debug, Error)]
pub enum SolverError {
    /// The true dimension lies in `[lower, upper]`; `certificate` realizes `upper`.
    #[error("search budget exhausted; dimension in [{lower}, {upper}]")]
    BudgetExhausted { lower: usize, upper: usize, certificate: Realizer, stats: SearchStats },
    #[error("map is not an embedding: {0:?}")]
    NotAnEmbedding(EmbeddingViolation),
    #[error("malformed embedding: {0}")]
    Malformed(String),
}

impl SolverError {
    pub fn interval(&self) -> Option<(usize, usize)> {
        match self {
            SolverError::BudgetExhausted { lower, upper, .. } => Some((*lower, *upper)),
            _ => None,
        }
    }
}

fn trivial_certificate(poset: &Poset) -> Realizer {
    Realizer::from_extensions_unchecked(vec![linearize(poset, &[])])
}

/// Exact dimension with a realizer certificate. For every `k` below the
/// returned value either a cheap bound or an exhausted search rules `k` out.
pub fn dimension(poset: &Poset, budget: SearchBudget) -> Result<DimensionResult, SolverError> {
    let meter = Meter::new(budget);
    let stats = |m: &Meter| SearchStats { nodes: m.nodes(), elapsed: m.elapsed() };
    if poset.len() == 1 {
        return Ok(DimensionResult {
            value: 0,
            certificate: trivial_certificate(poset),
            lower_bound: LowerBound::Trivial,
            stats: stats(&meter),
        });
    }
    let pairs = poset.incomparable_pairs();
    let Some(&(x, y)) = pairs.first() else {
        return Ok(DimensionResult {
            value: 1,
            certificate: trivial_certificate(poset),
            lower_bound: LowerBound::Trivial,
            stats: stats(&meter),
        });
    };
    let se = largest_standard_example(poset, standard::DEFAULT_SE_CAP);
    let (start, start_witness) = if se.size() > 2 {
        (se.size(), LowerBound::StandardExample(se.pairs.clone()))
    } else {
        (2, LowerBound::IncomparablePair(x, y))
    };
    let greedy = greedy_realizer(poset);
    let upper = greedy.len().max(start);

    for k in start..=upper {
        let witness = if k == start { start_witness.clone() } else { LowerBound::ExhaustedSearch(k - 1) };
        if k == greedy.len() {
            return Ok(DimensionResult { value: k, certificate: greedy, lower_bound: witness, stats: stats(&meter) });
        }
        match search_with_meter(poset, k, &meter) {
            RealizerSearch::Found(certificate) => {
                return Ok(DimensionResult { value: k, certificate, lower_bound: witness, stats: stats(&meter) });
            }
            RealizerSearch::ProvenImpossible { .. } => continue,
            RealizerSearch::BudgetExhausted { .. } => {
                return Err(SolverError::BudgetExhausted {
                    lower: k,
                    upper: greedy.len(),
                    certificate: greedy,
                    stats: stats(&meter),
                });
            }
        }
    }
    unreachable!("the greedy realizer bounds the search")
}

/// Dimension assembled from connected components: `max(2, dims…)` when
/// there are at least two components, otherwise [`dimension`].
pub fn dimension_via_components(poset: &Poset, budget: SearchBudget) -> Result<DimensionResult, SolverError> {
    let comps = connected_components(poset);
    if comps.len() < 2 {
        return dimension(poset, budget);
    }
    let mut results = Vec::with_capacity(comps.len());
    let mut total = SearchStats::default();
    for c in &comps {
        let sub = subposet(poset, c).expect("components are nonempty");
        let r = dimension(&sub, budget).map_err(|e| match e {
            SolverError::BudgetExhausted { .. } => {
                // lift to the whole poset: still [max(2, lowers), greedy]
                let greedy = greedy_realizer(poset);
                SolverError::BudgetExhausted { lower: 2, upper: greedy.len(), certificate: greedy, stats: total }
            }
            other => other,
        })?;
        total.nodes += r.stats.nodes;
        total.elapsed += r.stats.elapsed;
        results.push(r);
    }
    let value = results.iter().map(|r| r.value).max().unwrap_or(0).max(2);
    let certificate = interleave_component_realizers(&comps, &results, value);
    debug_assert!(certificate.is_realizer_of(poset));
    Ok(DimensionResult { value, certificate, lower_bound: LowerBound::Components, stats: total })
}

/// Extension `j` concatenates the components' `j`-th extensions; the
/// component blocks run forwards in extension 0 and backwards in extension 1.
fn interleave_component_realizers(comps: &[Vec<usize>], results: &[DimensionResult], value: usize) -> Realizer {
    let mut exts = Vec::with_capacity(value);
    for j in 0..value {
        let mut blocks: Vec<Vec<usize>> = comps
            .iter()
            .zip(results)
            .map(|(members, r)| {
                let local = &r.certificate.extensions()[j % r.certificate.len()];
                local.order().iter().map(|&i| members[i]).collect()
            })
            .collect();
        if j == 1 {
            blocks.reverse();
        }
        exts.push(LinearExtension::from_order_unchecked(blocks.concat()));
    }
    Realizer::from_extensions_unchecked(exts)
}

/// One linear extension per target chain: order by that coordinate, and
/// break ties inside each fiber by a linearization of the poset.
pub fn realizer_from_embedding(
    poset: &Poset,
    e: &Embedding,
    fiber_tie_break: &[usize],
) -> Result<Realizer, SolverError> {
    e.check_shape(poset).map_err(|err| SolverError::Malformed(err.to_string()))?;
    check_embedding(poset, e).map_err(SolverError::NotAnEmbedding)?;
    let base = linearize(poset, fiber_tie_break).positions();
    let mut exts: Vec<LinearExtension> = (0..e.dimension())
        .map(|i| {
            let mut order: Vec<usize> = (0..poset.len()).collect();
            order.sort_by_key(|&p| (e.image[p][i], base[p]));
            LinearExtension::from_order_unchecked(order)
        })
        .collect();
    if exts.is_empty() {
        exts.push(linearize(poset, fiber_tie_break));
    }
    let r = Realizer::from_extensions_unchecked(exts);
    debug_assert!(r.is_realizer_of(poset));
    Ok(r)
}
