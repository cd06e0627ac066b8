//! Evidence collection for open questions about products. Probes only log
//! what they see; a violation is reported, never asserted away.

use serde::Serialize;

use crate::corpus::{all_posets_up_to, RandomPosets};
use crate::error::{OrderError, Result};
use crate::invariants::{lemma_abs_suite, times_chains, InvariantError};
use crate::order::families::{is_connected, product};
use crate::order::poset::Poset;
use crate::solver::{dimension_via_components, SearchBudget, SolverError};

pub const QUESTIONS: [&str; 5] = ["Q.bound_2", "Q.2_vs_C", "Q.Px2x2", "Q.abs", "Q.cnnctd"];

#[derive(Clone, Debug)]
pub struct ProbeOptions {
    /// Exhaustive corpus size bound.
    pub max_n: usize,
    /// Extra random pairs (for pair questions) of at most `random_n` elements.
    pub random_pairs: usize,
    pub random_n: usize,
    pub chain_lengths: Vec<usize>,
    pub seed: u64,
    pub budget: SearchBudget,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions {
            max_n: 4,
            random_pairs: 20,
            random_n: 6,
            chain_lengths: vec![3, 4],
            seed: 7,
            budget: SearchBudget::with_time(10.0),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ProbeSummary {
    pub question: String,
    pub instances: usize,
    /// Instances skipped because a solver budget ran out or a report stayed inexact.
    pub skipped: usize,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

fn dim(p: &Poset, budget: SearchBudget) -> std::result::Result<usize, SolverError> {
    Ok(dimension_via_components(p, budget)?.value)
}

fn describe(p: &Poset) -> String {
    let rel: Vec<String> = p.cover_pairs().iter().map(|(i, j)| format!("{i}<{j}")).collect();
    format!("n={} [{}]", p.len(), rel.join(" "))
}

fn pairs(opts: &ProbeOptions, connected_only: bool) -> Result<Vec<(Poset, Poset)>> {
    let corpus: Vec<Poset> =
        all_posets_up_to(opts.max_n)?.into_iter().filter(|p| !connected_only || is_connected(p)).collect();
    let mut out = Vec::new();
    for (i, p) in corpus.iter().enumerate() {
        for q in &corpus[i..] {
            out.push((p.clone(), q.clone()));
        }
    }
    let mut gen = RandomPosets::new(opts.seed);
    let mut added = 0;
    let mut attempts = 0;
    while added < opts.random_pairs && attempts < 100 * (opts.random_pairs + 1) {
        attempts += 1;
        let p = gen.sized(1..=opts.random_n);
        let q = gen.sized(1..=opts.random_n);
        if connected_only && !(is_connected(&p) && is_connected(&q)) {
            continue;
        }
        out.push((p, q));
        added += 1;
    }
    Ok(out)
}

fn bound_2(opts: &ProbeOptions, s: &mut ProbeSummary) -> Result<()> {
    let mut max_slack = 0usize;
    for (p, q) in pairs(opts, false)? {
        let pq = product(&p, &q)?;
        match (dim(&p, opts.budget), dim(&q, opts.budget), dim(&pq, opts.budget)) {
            (Ok(dp), Ok(dq), Ok(dpq)) => {
                s.instances += 1;
                let slack = (dp + dq).saturating_sub(dpq);
                max_slack = max_slack.max(slack);
                if slack > 2 {
                    s.violations.push(format!("dim {dp} + {dq} vs {dpq}: P {} Q {}", describe(&p), describe(&q)));
                }
            }
            _ => s.skipped += 1,
        }
    }
    s.notes.push(format!("largest dim(P)+dim(Q)-dim(PxQ) observed: {max_slack}"));
    Ok(())
}

fn two_vs_chain(opts: &ProbeOptions, s: &mut ProbeSummary) -> Result<()> {
    for p in all_posets_up_to(opts.max_n)? {
        let Ok(d2) = dim(&times_chains(&p, 2, 1)?, opts.budget) else {
            s.skipped += 1;
            continue;
        };
        for &k in &opts.chain_lengths {
            match dim(&times_chains(&p, k, 1)?, opts.budget) {
                Ok(dk) => {
                    s.instances += 1;
                    if dk != d2 {
                        s.violations.push(format!("dim(P x 2) = {d2}, dim(P x C_{k}) = {dk}: {}", describe(&p)));
                    }
                }
                Err(_) => s.skipped += 1,
            }
        }
    }
    Ok(())
}

fn p_two_two(opts: &ProbeOptions, s: &mut ProbeSummary) -> Result<()> {
    let mut hypothesis = 0;
    for p in all_posets_up_to(opts.max_n)? {
        let dims = (|| -> std::result::Result<_, SolverError> {
            Ok((
                dim(&p, opts.budget)?,
                dim(&times_chains(&p, 2, 1).expect("small"), opts.budget)?,
                dim(&times_chains(&p, 2, 2).expect("small"), opts.budget)?,
            ))
        })();
        match dims {
            Ok((d0, d1, d2)) => {
                s.instances += 1;
                if d1 == d0 + 1 {
                    hypothesis += 1;
                    if d2 != d0 + 2 {
                        s.violations.push(format!("dims {d0}, {d1}, {d2}: {}", describe(&p)));
                    }
                }
            }
            Err(_) => s.skipped += 1,
        }
    }
    s.notes.push(format!("{hypothesis} posets with dim(P x 2) = dim(P) + 1"));
    Ok(())
}

fn lemma_questions(opts: &ProbeOptions, s: &mut ProbeSummary, connected: bool) -> Result<()> {
    let (mut tight, mut considered) = (0, 0);
    for (p, q) in pairs(opts, connected)? {
        match lemma_abs_suite(&p, &q, opts.budget) {
            Ok(r) => {
                s.instances += 1;
                if !connected {
                    if let Some(t) = r.abs_pq_bound_tight {
                        considered += 1;
                        tight += usize::from(t);
                        if r.abs_pq_bound_holds == Some(false) {
                            s.violations.push(format!("bound fails: P {} Q {}", describe(&p), describe(&q)));
                        } else if !t {
                            s.notes.push(format!(
                                "strict: abs(PxQ) = {:?} > {:?} for P {} Q {}",
                                r.abs_pq,
                                r.abs_pq_lower,
                                describe(&p),
                                describe(&q)
                            ));
                        }
                    }
                } else if r.sandwich_hypothesis {
                    considered += 1;
                    tight += usize::from(r.sandwich_right_equal);
                    if !r.sandwich_right_equal {
                        s.violations.push(format!(
                            "dim(PxQ) = {} below {}: P {} Q {}",
                            r.dim_pq,
                            r.dim_p + r.dim_q - r.abs_p.max(r.abs_q),
                            describe(&p),
                            describe(&q)
                        ));
                    }
                }
            }
            Err(InvariantError::Inconclusive(_)) | Err(InvariantError::Solver(_)) => s.skipped += 1,
            Err(InvariantError::Order(e)) => return Err(e),
            Err(InvariantError::Absorb(e)) => return Err(OrderError::Malformed(e.to_string())),
        }
    }
    s.notes.push(format!("equality in {tight} of {considered} pairs meeting the hypothesis"));
    Ok(())
}

/// Runs the probe for `question`, one of [`QUESTIONS`].
pub fn probe(question: &str, opts: &ProbeOptions) -> Result<ProbeSummary> {
    let mut s = ProbeSummary { question: question.into(), ..ProbeSummary::default() };
    match question {
        "Q.bound_2" => bound_2(opts, &mut s)?,
        "Q.2_vs_C" => two_vs_chain(opts, &mut s)?,
        "Q.Px2x2" => p_two_two(opts, &mut s)?,
        "Q.abs" => lemma_questions(opts, &mut s, false)?,
        "Q.cnnctd" => lemma_questions(opts, &mut s, true)?,
        other => {
            return Err(OrderError::InvalidParameter(format!(
                "unknown question {other:?}; expected one of {}",
                QUESTIONS.join(", ")
            )))
        }
    }
    Ok(s)
}
