//! Bounded dimension, absorbency and related invariants.
//!
//! Absorbency quantifies over all chains, so it is reported as a sandwich:
//! a lower bound certified by an absorption embedding (valid for chains of
//! every length) and an upper bound from bounded dimension and products
//! with short chains.

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::absorb::{absorb_embed, find_partition, AbsorbError, AbsorptionCertificate, ChainProductPresentation};
use crate::error::OrderError;
use crate::order::families::{
    boolean_lattice, chain, interval_elements, is_connected, product, product_many, subposet,
};
use crate::order::poset::Poset;
use crate::solver::{dimension_via_components, SearchBudget, SolverError};

const PARTITION_NODE_LIMIT: u64 = 2_000_000;
const RANDOM_COARSENINGS: usize = 32;

#[derive(Debug, Clone, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Absorb(#[from] AbsorbError),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

fn dim(poset: &Poset, budget: SearchBudget) -> Result<usize, InvariantError> {
    Ok(dimension_via_components(poset, budget)?.value)
}

/// `P × 2^n`.
pub fn times_cube(poset: &Poset, n: usize) -> Result<Poset, OrderError> {
    if n == 0 {
        return Ok(poset.clone());
    }
    product(poset, &boolean_lattice(n)?)
}

/// `P × C_len^n`.
pub fn times_chains(poset: &Poset, len: usize, n: usize) -> Result<Poset, OrderError> {
    let mut factors = vec![poset.clone()];
    for _ in 0..n {
        factors.push(chain(len)?);
    }
    product_many(&factors)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundedDimension {
    pub value: usize,
    /// Endpoints `(p, p')` of an interval of that dimension.
    pub witness: (usize, usize),
}

/// Maximum dimension over the intervals `[p, p']` of `poset`. Every interval
/// lies inside one between a minimal and a maximal element, so only those
/// are evaluated; identical induced orders are solved once.
pub fn bounded_dimension(poset: &Poset, budget: SearchBudget) -> Result<BoundedDimension, InvariantError> {
    let mut best = BoundedDimension { value: 0, witness: (0, 0) };
    let mut seen: HashSet<(usize, Vec<(usize, usize)>)> = HashSet::new();
    for &lo in &poset.minimal_elements() {
        for &hi in &poset.maximal_elements() {
            if !poset.leq(lo, hi) {
                continue;
            }
            let elems = interval_elements(poset, lo, hi)?;
            let value = match elems.len() {
                1 => 0,
                2 => 1,
                _ => {
                    let sub = subposet(poset, &elems)?;
                    if !seen.insert((sub.len(), sub.lt_pairs())) {
                        continue;
                    }
                    dim(&sub, budget)?
                }
            };
            if value > best.value {
                best = BoundedDimension { value, witness: (lo, hi) };
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, Serialize)]
pub struct AbsorbencyReport {
    pub dim: usize,
    pub bd_dim: usize,
    /// `dim - bd_dim`.
    pub upper_bound: usize,
    /// Largest `n <= upper_bound` with `dim(P × 2^n) = dim`, lowered further
    /// by probes with chains of `tested_chain_length`.
    pub abs2: usize,
    /// Largest `n` backed by an absorption certificate.
    pub certified_lower: usize,
    pub tested_chain_length: usize,
    pub exact: bool,
    #[serde(skip)]
    pub certificate: Option<AbsorptionCertificate>,
}

impl AbsorbencyReport {
    /// `(lower, upper)` bounds on the true absorbency.
    pub fn interval(&self) -> (usize, usize) {
        (self.certified_lower, self.abs2.min(self.upper_bound))
    }

    /// The absorbency when the sandwich closes.
    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.certified_lower)
    }
}

/// Largest `n <= max_parts` such that some presentation of `poset` in
/// `realizer.len()` chains admits an `n`-part partition meeting the
/// absorption hypothesis; the certificate absorbs `n` chains of length `len`.
pub fn certified_absorbency(
    poset: &Poset,
    realizer: &crate::order::linear::Realizer,
    max_parts: usize,
    len: usize,
) -> Result<(usize, Option<AbsorptionCertificate>), InvariantError> {
    if max_parts == 0 {
        return Ok((0, None));
    }
    let raw = ChainProductPresentation::from_realizer(poset, realizer)?;
    let mut candidates = vec![raw.coarsened(false), raw.coarsened(true)];
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..RANDOM_COARSENINGS {
        let c = raw.coarsened_randomly(&mut rng);
        if !candidates.contains(&c) {
            candidates.push(c);
        }
    }
    for n in (1..=max_parts).rev() {
        for pres in &candidates {
            if let Some(partition) = find_partition(pres, n, PARTITION_NODE_LIMIT) {
                let cert = absorb_embed(pres, &partition, &vec![len.max(1); n])?;
                return Ok((n, Some(cert)));
            }
        }
    }
    Ok((0, None))
}

/// Absorbency sandwich of `poset`; `probe_len` is the chain length used for
/// probing beyond chains of length 2.
pub fn absorbency(poset: &Poset, budget: SearchBudget, probe_len: usize) -> Result<AbsorbencyReport, InvariantError> {
    let base = dimension_via_components(poset, budget)?;
    let d = base.value;
    let bd = bounded_dimension(poset, budget)?.value;
    let upper_bound = d - bd;
    let mut abs2 = 0;
    for n in 1..=upper_bound {
        if dim(&times_cube(poset, n)?, budget)? != d {
            break;
        }
        abs2 = n;
    }
    if probe_len > 2 {
        for n in 1..=abs2 {
            if dim(&times_chains(poset, probe_len, n)?, budget)? != d {
                abs2 = n - 1;
                break;
            }
        }
    }
    let (certified_lower, certificate) =
        certified_absorbency(poset, &base.certificate, abs2.min(upper_bound), probe_len.max(2))?;
    Ok(AbsorbencyReport {
        dim: d,
        bd_dim: bd,
        upper_bound,
        abs2,
        certified_lower,
        tested_chain_length: probe_len.max(2),
        exact: certified_lower == abs2.min(upper_bound),
        certificate,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EventualAbsorbency {
    /// `dim(P × 2^n)` for `n = 0, 1, …`.
    pub dims: Vec<usize>,
    /// `dim(P) + n - dim(P × 2^n)`.
    pub values: Vec<usize>,
    /// True if the budget ran out before `n_max`.
    pub truncated: bool,
}

pub fn eventual_absorbency_sequence(
    poset: &Poset,
    n_max: usize,
    budget: SearchBudget,
) -> Result<EventualAbsorbency, InvariantError> {
    let mut dims = Vec::new();
    let mut truncated = false;
    for n in 0..=n_max {
        match dim(&times_cube(poset, n)?, budget) {
            Ok(v) => dims.push(v),
            Err(InvariantError::Solver(SolverError::BudgetExhausted { .. })) if n > 0 => {
                truncated = true;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let values = dims.iter().enumerate().map(|(n, &dn)| dims[0] + n - dn).collect();
    Ok(EventualAbsorbency { dims, values, truncated })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelativeAbsorbency {
    pub bound: usize,
    pub lower: usize,
    pub upper: usize,
}

impl RelativeAbsorbency {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

/// Largest `n` such that `P` times any `n` chains has dimension at most `bound`.
pub fn relative_absorbency(
    poset: &Poset,
    bound: usize,
    budget: SearchBudget,
    probe_len: usize,
) -> Result<RelativeAbsorbency, InvariantError> {
    let base = dimension_via_components(poset, budget)?;
    let d = base.value;
    if d > bound {
        return Err(InvariantError::Order(OrderError::InvalidParameter(format!(
            "dimension {d} already exceeds the bound {bound}"
        ))));
    }
    let bd = bounded_dimension(poset, budget)?.value;
    // every chain beyond the absorbed ones adds at most one
    let mut upper = 0;
    for n in 1..=bound - bd {
        if dim(&times_cube(poset, n)?, budget)? > bound {
            break;
        }
        upper = n;
    }
    if probe_len > 2 {
        for n in 1..=upper {
            if dim(&times_chains(poset, probe_len, n)?, budget)? > bound {
                upper = n - 1;
                break;
            }
        }
    }
    let (certified, _) = certified_absorbency(poset, &base.certificate, d - bd, probe_len.max(2))?;
    let lower = (certified + (bound - d)).min(upper);
    Ok(RelativeAbsorbency { bound, lower, upper })
}

/// Both implications of the product lemma, evaluated on one pair.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaAbsReport {
    pub dim_p: usize,
    pub dim_q: usize,
    pub abs_p: usize,
    pub abs_q: usize,
    pub dim_pq: usize,
    /// `abs(P) >= dim(Q)` or the same with the roles swapped.
    pub absorbing_hypothesis: bool,
    /// `dim(P × Q)` equals the larger factor dimension (checked when the hypothesis holds).
    pub absorbing_dimension_holds: Option<bool>,
    pub abs_pq: Option<usize>,
    /// `abs(P) - dim(Q) + abs(Q)` for the absorbing side.
    pub abs_pq_lower: Option<usize>,
    pub abs_pq_bound_holds: Option<bool>,
    pub abs_pq_bound_tight: Option<bool>,
    /// `min(dims) >= max(abs)`.
    pub sandwich_hypothesis: bool,
    /// `max(dims) <= dim(P × Q) <= dim(P) + dim(Q) - max(abs)`.
    pub sandwich_holds: bool,
    pub sandwich_left_equal: bool,
    pub sandwich_right_equal: bool,
    pub both_connected: bool,
}

fn exact_abs(poset: &Poset, budget: SearchBudget, what: &str) -> Result<usize, InvariantError> {
    let r = absorbency(poset, budget, 2)?;
    r.value().ok_or_else(|| InvariantError::Inconclusive(format!("absorbency of {what} lies in {:?}", r.interval())))
}

pub fn lemma_abs_suite(p: &Poset, q: &Poset, budget: SearchBudget) -> Result<LemmaAbsReport, InvariantError> {
    let dim_p = dim(p, budget)?;
    let dim_q = dim(q, budget)?;
    let abs_p = exact_abs(p, budget, "P")?;
    let abs_q = exact_abs(q, budget, "Q")?;
    let pq = product(p, q)?;
    let dim_pq = dim(&pq, budget)?;

    // orient so the first factor absorbs the second
    let absorbing = if abs_p >= dim_q {
        Some((dim_p, abs_p, dim_q, abs_q))
    } else if abs_q >= dim_p {
        Some((dim_q, abs_q, dim_p, abs_p))
    } else {
        None
    };
    let (mut absorbing_dimension_holds, mut abs_pq, mut abs_pq_lower, mut holds, mut tight) =
        (None, None, None, None, None);
    if let Some((da, aa, db, ab)) = absorbing {
        absorbing_dimension_holds = Some(dim_pq == da);
        let value = exact_abs(&pq, budget, "P × Q")?;
        let lower = aa - db + ab;
        abs_pq = Some(value);
        abs_pq_lower = Some(lower);
        holds = Some(value >= lower);
        tight = Some(value == lower);
    }
    let max_abs = abs_p.max(abs_q);
    let left = dim_p.max(dim_q);
    let right = (dim_p + dim_q).saturating_sub(max_abs);
    Ok(LemmaAbsReport {
        dim_p,
        dim_q,
        abs_p,
        abs_q,
        dim_pq,
        absorbing_hypothesis: absorbing.is_some(),
        absorbing_dimension_holds,
        abs_pq,
        abs_pq_lower,
        abs_pq_bound_holds: holds,
        abs_pq_bound_tight: tight,
        sandwich_hypothesis: dim_p.min(dim_q) >= max_abs,
        sandwich_holds: left <= dim_pq && dim_pq <= right,
        sandwich_left_equal: left == dim_pq,
        sandwich_right_equal: dim_pq == right,
        both_connected: is_connected(p) && is_connected(q),
    })
}
