//! Named sets of reproducible facts, each recomputed and re-verified.

use std::fmt;

use serde::Serialize;

use crate::absorb::{
    absorb_embed, absorption_map, baker_split, band_dimension_bound, corollary_bounds_partition,
    corollary_floor_partition, interleaved_partition, ChainProductPresentation,
};
use crate::boolean::{sn_boolean_representation, verify_boolean_representation, BooleanRepresentation};
use crate::corpus::RandomPosets;
use crate::error::{OrderError, Result};
use crate::invariants::{absorbency, bounded_dimension, eventual_absorbency_sequence, lemma_abs_suite};
use crate::io::write_realizer;
use crate::order::embedding::is_embedding;
use crate::order::families::*;
use crate::order::poset::Poset;
use crate::solver::{
    dimension, dimension_via_components, has_realizer_of_size, is_standard_example_witness, LowerBound, RealizerSearch,
    SearchBudget, SolverError,
};

pub const FACT_SETS: [&str; 6] = ["core", "corollaries", "absorbency", "baker", "boolean", "all"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FactStatus {
    Pass,
    Fail,
    Budget,
}

impl fmt::Display for FactStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactStatus::Pass => "pass",
            FactStatus::Fail => "fail",
            FactStatus::Budget => "budget",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FactRecord {
    pub id: String,
    pub description: String,
    pub expected: String,
    pub computed: String,
    pub status: FactStatus,
    /// Realizer text backing the computed value, when there is one.
    #[serde(skip)]
    pub certificate: Option<String>,
}

impl FactRecord {
    fn new(id: &str, description: &str, expected: impl ToString, computed: impl ToString, ok: bool) -> Self {
        FactRecord {
            id: id.into(),
            description: description.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            status: if ok { FactStatus::Pass } else { FactStatus::Fail },
            certificate: None,
        }
    }

    fn budget(id: &str, description: &str, expected: impl ToString, computed: impl ToString) -> Self {
        FactRecord { status: FactStatus::Budget, ..Self::new(id, description, expected, computed, false) }
    }

    fn with_certificate(mut self, text: String) -> Self {
        self.certificate = Some(text);
        self
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FactOptions {
    pub budget: SearchBudget,
    pub baker_trials: usize,
    pub seed: u64,
}

impl Default for FactOptions {
    fn default() -> Self {
        FactOptions { budget: SearchBudget::default(), baker_trials: 20, seed: 2024 }
    }
}

/// Outcome of an exact dimension computation whose every claim was re-checked.
#[derive(Clone, Debug)]
pub enum CheckedDimension {
    Exact {
        value: usize,
        certificate: String,
    },
    /// The certificate or the lower-bound evidence failed an independent check.
    Rejected(String),
    Budget {
        lower: usize,
        upper: usize,
    },
}

/// Computes the dimension, re-validates the realizer, and requires the
/// search for one fewer extension to be exhausted (or the value to be trivial).
pub fn checked_dimension(poset: &Poset, budget: SearchBudget) -> CheckedDimension {
    let r = match dimension(poset, budget) {
        Ok(r) => r,
        Err(SolverError::BudgetExhausted { lower, upper, .. }) => return CheckedDimension::Budget { lower, upper },
        Err(e) => return CheckedDimension::Rejected(e.to_string()),
    };
    if !r.certificate.is_realizer_of(poset) || r.certificate.len() != r.value.max(1) {
        return CheckedDimension::Rejected("certificate is not a realizer of the stated size".into());
    }
    if let LowerBound::StandardExample(pairs) = &r.lower_bound {
        if !is_standard_example_witness(poset, pairs) {
            return CheckedDimension::Rejected("standard example witness is invalid".into());
        }
    }
    if r.value >= 2 {
        match has_realizer_of_size(poset, r.value - 1, budget) {
            RealizerSearch::ProvenImpossible { .. } => {}
            RealizerSearch::Found(_) => {
                return CheckedDimension::Rejected(format!("a {}-realizer exists", r.value - 1));
            }
            RealizerSearch::BudgetExhausted { .. } => {
                return CheckedDimension::Budget { lower: r.value - 1, upper: r.value };
            }
        }
    }
    let orders: Vec<Vec<usize>> = r.certificate.extensions().iter().map(|e| e.order().to_vec()).collect();
    CheckedDimension::Exact { value: r.value, certificate: write_realizer(&orders) }
}

fn dim_fact(id: &str, description: &str, poset: &Poset, expected: usize, budget: SearchBudget) -> FactRecord {
    match checked_dimension(poset, budget) {
        CheckedDimension::Exact { value, certificate } => {
            FactRecord::new(id, description, expected, value, value == expected).with_certificate(certificate)
        }
        CheckedDimension::Rejected(why) => FactRecord::new(id, description, expected, why, false),
        CheckedDimension::Budget { lower, upper } => {
            FactRecord::budget(id, description, expected, format!("[{lower}, {upper}]"))
        }
    }
}

fn core_facts(opts: &FactOptions) -> Vec<FactRecord> {
    let mut out = Vec::new();
    for n in 1..=4 {
        let p = boolean_lattice(n).expect("small cube");
        out.push(dim_fact(&format!("dim-cube-{n}"), &format!("dim(2^{n}) = {n}"), &p, n, opts.budget));
    }
    for n in 2..=5 {
        let p = standard_example(n).expect("standard example");
        out.push(dim_fact(&format!("dim-standard-{n}"), &format!("dim(S_{n}) = {n}"), &p, n, opts.budget));
    }
    for k in [2, 5, 8] {
        let p = antichain(k).expect("antichain");
        out.push(dim_fact(&format!("dim-antichain-{k}"), &format!("dim(antichain({k})) = 2"), &p, 2, opts.budget));
    }
    out.push(dim_fact("dim-chain-4", "dim(chain(4)) = 1", &chain(4).expect("chain"), 1, opts.budget));
    out
}

fn absorb_fact(
    id: &str,
    description: &str,
    pres: &ChainProductPresentation,
    parts: std::result::Result<crate::absorb::CoordinatePartition, crate::absorb::AbsorbError>,
    chains: &[usize],
) -> FactRecord {
    let d = pres.chain_count();
    let computed = parts.and_then(|p| absorb_embed(pres, &p, chains));
    match computed {
        Ok(cert) => {
            let ok = cert.verify() && cert.dimension_bound() == d;
            FactRecord::new(id, description, format!("<= {d}"), format!("<= {}", cert.dimension_bound()), ok)
        }
        Err(e) => FactRecord::new(id, description, format!("<= {d}"), e, false),
    }
}

fn corollary_facts(opts: &FactOptions) -> Vec<FactRecord> {
    let mut out = Vec::new();
    let s3 = ChainProductPresentation::cube(&standard_example_tuples(3).expect("S_3")).expect("cube presentation");
    out.push(absorb_fact(
        "absorb-s3-2x2",
        "S_3 x 2 x 2 embeds in 3 chains",
        &s3,
        corollary_bounds_partition(&s3),
        &[2, 2],
    ));
    let p = product(&standard_example(3).expect("S_3"), &boolean_lattice(2).expect("2^2")).expect("product");
    out.push(dim_fact("dim-s3-2x2", "dim(S_3 x 2 x 2) = 3", &p, 3, opts.budget));

    let mut with_bottom = standard_example_tuples(3).expect("S_3");
    with_bottom.push(vec![0, 0, 0]);
    let sb = ChainProductPresentation::cube(&with_bottom).expect("cube presentation");
    out.push(absorb_fact(
        "absorb-s3-bottom-chain",
        "(S_3 + bottom) x C_5 embeds in 3 chains",
        &sb,
        corollary_floor_partition(&sb, false),
        &[5],
    ));

    let slice =
        ChainProductPresentation::cube(&graded_slice_tuples(4, 1, 2).expect("slice")).expect("cube presentation");
    out.push(absorb_fact(
        "absorb-slice-4-1-2",
        "P_4^{1,2} x 3 x 3 embeds in 4 chains",
        &slice,
        interleaved_partition(4, 2),
        &[3, 3],
    ));

    for d in [5, 6] {
        let id = format!("band-bound-{d}");
        let desc = format!("pruned middle band of 2^{d} embeds in {} chains", d - 2);
        out.push(match band_dimension_bound(d) {
            Ok(b) => {
                let ok = is_embedding(&b.poset, &b.embedding) && b.embedding.dimension() == d - 2;
                FactRecord::new(&id, &desc, format!("<= {}", d - 2), format!("<= {}", b.embedding.dimension()), ok)
            }
            Err(e) => FactRecord::new(&id, &desc, format!("<= {}", d - 2), e, false),
        });
    }
    let band = middle_band_pruned(5).expect("band");
    out.push(match checked_dimension(&band, opts.budget) {
        CheckedDimension::Exact { value, certificate } => {
            FactRecord::new("dim-band-5", "dim of the 18-element band is at most 3", "<= 3", value, value <= 3)
                .with_certificate(certificate)
        }
        CheckedDimension::Rejected(why) => FactRecord::new("dim-band-5", "band dimension", "<= 3", why, false),
        CheckedDimension::Budget { lower, upper } => {
            FactRecord::budget("dim-band-5", "band dimension", "<= 3", format!("[{lower}, {upper}]"))
        }
    });

    // a single part whose comparable pair shares no coordinate
    let c2 = ChainProductPresentation::new(chain(2).expect("chain"), vec![2], vec![vec![0], vec![1]])
        .expect("chain presentation");
    let naive_fails = absorption_map(&c2, &[2], |_, _| 0).map(|(prod, e, _)| !is_embedding(&prod, &e)).unwrap_or(false);
    out.push(FactRecord::new(
        "naive-absorption-fails",
        "absorbing without a shared coordinate is not an embedding",
        "not an embedding",
        if naive_fails { "not an embedding" } else { "embedding" },
        naive_fails,
    ));
    out
}

fn budget_or_fail(id: &str, description: &str, expected: &str, e: crate::invariants::InvariantError) -> FactRecord {
    match e {
        crate::invariants::InvariantError::Solver(SolverError::BudgetExhausted { .. }) => {
            FactRecord::budget(id, description, expected, e)
        }
        other => FactRecord::new(id, description, expected, other, false),
    }
}

fn absorbency_facts(opts: &FactOptions) -> Vec<FactRecord> {
    let mut out = Vec::new();
    let d = antichain(2).expect("antichain");
    let d2 = product(&d, &chain(2).expect("chain")).expect("product");
    let d2sq = product(&product(&d, &d).expect("product"), &boolean_lattice(2).expect("2^2")).expect("product");
    let cases: [(&str, &str, Poset, (usize, usize)); 4] = [
        ("abs-s3", "S_3: (dim, abs) = (3, 2)", standard_example(3).expect("S_3"), (3, 2)),
        ("abs-d", "D: (dim, abs) = (2, 2)", d.clone(), (2, 2)),
        ("abs-d-2", "D x 2: (dim, abs) = (2, 1)", d2.clone(), (2, 1)),
        ("abs-d2-22", "D^2 x 2^2: (dim, abs) = (2, 0)", d2sq, (2, 0)),
    ];
    for (id, desc, p, (dim, abs)) in cases {
        let expected = format!("({dim}, {abs})");
        out.push(match absorbency(&p, opts.budget, 2) {
            Ok(r) => {
                let computed = match r.value() {
                    Some(a) => format!("({}, {a})", r.dim),
                    None => format!("({}, {:?})", r.dim, r.interval()),
                };
                let cert_ok = r.certificate.as_ref().is_none_or(|c| c.verify());
                FactRecord::new(id, desc, &expected, computed, r.dim == dim && r.value() == Some(abs) && cert_ok)
            }
            Err(e) => budget_or_fail(id, desc, &expected, e),
        });
    }
    let d22 = product(&d, &boolean_lattice(2).expect("2^2")).expect("product");
    let patterns: [(&str, &str, Poset, (bool, bool)); 3] = [
        ("lemma-d", "D, D: both equalities", d.clone(), (true, true)),
        ("lemma-d-2", "D x 2 twice: second strict", d2, (true, false)),
        ("lemma-d-22", "D x 2^2 twice: first strict", d22, (false, true)),
    ];
    for (id, desc, p, (left, right)) in patterns {
        let expected = format!("left {left}, right {right}");
        out.push(match lemma_abs_suite(&p, &p, opts.budget) {
            Ok(r) => {
                let ok = r.sandwich_holds
                    && r.abs_pq_bound_holds != Some(false)
                    && r.absorbing_dimension_holds != Some(false)
                    && (r.sandwich_left_equal, r.sandwich_right_equal) == (left, right);
                let computed = format!(
                    "{} <= {} <= {}: left {}, right {}",
                    r.dim_p.max(r.dim_q),
                    r.dim_pq,
                    r.dim_p + r.dim_q - r.abs_p.max(r.abs_q),
                    r.sandwich_left_equal,
                    r.sandwich_right_equal
                );
                FactRecord::new(id, desc, expected, computed, ok)
            }
            Err(e) => budget_or_fail(id, desc, &expected, e),
        });
    }
    let desc = "dim(D) + n - dim(D x 2^n) for n = 0..3";
    out.push(match eventual_absorbency_sequence(&d, 3, opts.budget) {
        Ok(e) => {
            FactRecord::new("eventual-d", desc, "[0, 1, 2, 2]", format!("{:?}", e.values), e.values == [0, 1, 2, 2])
        }
        Err(e) => budget_or_fail("eventual-d", desc, "[0, 1, 2, 2]", e),
    });
    out
}

/// One Baker trial: additivity for a bounded pair and the split of a minimum realizer.
pub fn baker_trial(p: &Poset, q: &Poset, budget: SearchBudget) -> std::result::Result<bool, SolverError> {
    let dp = dimension_via_components(p, budget)?.value;
    let dq = dimension_via_components(q, budget)?.value;
    let pq = product(p, q).expect("small product");
    let r = dimension(&pq, budget)?;
    if r.value != dp + dq {
        return Ok(false);
    }
    Ok(match baker_split(p, q, &r.certificate) {
        // a factor of dimension 0 still occupies no extension
        Ok(split) => split.sizes().0 >= dp && split.sizes().1 >= dq,
        Err(_) => false,
    })
}

fn baker_facts(opts: &FactOptions) -> Vec<FactRecord> {
    let mut gen = RandomPosets::new(opts.seed);
    let (mut passed, mut budget) = (0, 0);
    for _ in 0..opts.baker_trials {
        let (np, nq) = (gen.gen_range(1..=6), gen.gen_range(1..=6));
        let p = gen.bounded(np, 0.35);
        let q = gen.bounded(nq, 0.35);
        match baker_trial(&p, &q, opts.budget) {
            Ok(true) => passed += 1,
            Ok(false) => {}
            Err(_) => budget += 1,
        }
    }
    let n = opts.baker_trials;
    let desc = format!("dim(P x Q) = dim(P) + dim(Q) on {n} random bounded pairs, with realizer splits");
    let record = FactRecord::new("baker-random", &desc, format!("{n}/{n}"), format!("{passed}/{n}"), passed == n);
    let mut out = vec![if budget > 0 && passed + budget == n {
        FactRecord::budget("baker-random", &desc, format!("{n}/{n}"), format!("{passed}/{n}, {budget} over budget"))
    } else {
        record
    }];
    let b2 = boolean_lattice(2).expect("2^2");
    let splits: [(&str, Poset, Poset, (usize, usize)); 3] = [
        ("baker-split-2-2", chain(2).expect("chain"), chain(2).expect("chain"), (1, 1)),
        ("baker-split-b2-b2", b2.clone(), b2.clone(), (2, 2)),
        ("baker-split-b2-3", b2, chain(3).expect("chain"), (2, 1)),
    ];
    for (id, p, q, want) in splits {
        let desc = "split of a minimum realizer of the product";
        let computed = dimension(&product(&p, &q).expect("product"), opts.budget)
            .map_err(|e| e.to_string())
            .and_then(|r| baker_split(&p, &q, &r.certificate).map_err(|e| e.to_string()));
        out.push(match computed {
            Ok(s) => FactRecord::new(id, desc, format!("{want:?}"), format!("{:?}", s.sizes()), s.sizes() == want),
            Err(e) => FactRecord::new(id, desc, format!("{want:?}"), e, false),
        });
    }
    out
}

fn boolean_facts(opts: &FactOptions) -> Vec<FactRecord> {
    let mut out = Vec::new();
    for n in 3..=6 {
        let s = standard_example(n).expect("S_n");
        let ok =
            sn_boolean_representation(n).map(|rep| verify_boolean_representation(&s, &rep).is_ok()).unwrap_or(false);
        out.push(FactRecord::new(
            &format!("boolean-standard-{n}"),
            &format!("four orderings with tau = {{1000, 1011}} represent S_{n}"),
            "verified",
            if ok { "verified" } else { "rejected" },
            ok,
        ));
    }
    let s3 = standard_example(3).expect("S_3");
    out.push(match dimension(&s3, opts.budget) {
        Ok(r) => {
            let ok = verify_boolean_representation(&s3, &BooleanRepresentation::from_realizer(&r.certificate)).is_ok();
            FactRecord::new(
                "boolean-realizer-s3",
                "a realizer of S_3 with tau = {111} is a representation",
                "verified",
                if ok { "verified" } else { "rejected" },
                ok,
            )
        }
        Err(e) => FactRecord::budget("boolean-realizer-s3", "realizer as representation", "verified", e),
    });
    let ok = verify_boolean_representation(&antichain(4).expect("antichain"), &BooleanRepresentation::new(vec![], []))
        .is_ok();
    out.push(FactRecord::new(
        "boolean-antichain-0",
        "an antichain needs no orderings",
        "verified",
        if ok { "verified" } else { "rejected" },
        ok,
    ));
    out
}

fn bd_fact(opts: &FactOptions) -> FactRecord {
    let s4 = standard_example(4).expect("S_4");
    let desc = "bd-dim(S_4 x 2^2) = bd-dim(S_4) + bd-dim(2^2) = 3";
    match bounded_dimension(&product(&s4, &boolean_lattice(2).expect("2^2")).expect("product"), opts.budget) {
        Ok(b) => FactRecord::new("bd-dim-s4-22", desc, 3, b.value, b.value == 3),
        Err(e) => budget_or_fail("bd-dim-s4-22", desc, "3", e),
    }
}

/// Recomputes the facts of one named set.
pub fn reproduce(set: &str, opts: &FactOptions) -> Result<Vec<FactRecord>> {
    Ok(match set {
        "core" => core_facts(opts),
        "corollaries" => corollary_facts(opts),
        "absorbency" => {
            let mut v = absorbency_facts(opts);
            v.push(bd_fact(opts));
            v
        }
        "baker" => baker_facts(opts),
        "boolean" => boolean_facts(opts),
        "all" => {
            let mut v = Vec::new();
            for s in &FACT_SETS[..5] {
                v.extend(reproduce(s, opts)?);
            }
            v
        }
        other => {
            return Err(OrderError::InvalidParameter(format!(
                "unknown fact set {other:?}; expected one of {}",
                FACT_SETS.join(", ")
            )))
        }
    })
}
