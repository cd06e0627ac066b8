//! Backtracking search for a `k`-realizer.
//!
//! Every ordered incomparable pair `(x, y)` must be reversed (`y` placed
//! before `x`) by at least one of `k` linear extensions. Each extension is
//! tracked as a "class": the base order plus the reversals assigned to it,
//! kept transitively closed. A reversal `y < x` fits a class iff the class
//! does not already force `x < y`. A pair is covered once any class forces
//! `y < x`, so closures cover many pairs for free.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bits::BitMatrix;
use crate::order::linear::{LinearExtension, Realizer};
use crate::order::poset::Poset;

/// Limits for one solver call.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub time_limit: Duration,
    pub parallel: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { node_limit: u64::MAX, time_limit: Duration::from_secs(60), parallel: false }
    }
}

impl SearchBudget {
    pub fn with_time(secs: f64) -> Self {
        SearchBudget { time_limit: Duration::from_secs_f64(secs), ..Self::default() }
    }

    pub fn unlimited() -> Self {
        SearchBudget { node_limit: u64::MAX, time_limit: Duration::from_secs(60 * 60 * 24 * 365), parallel: false }
    }

    pub fn nodes(mut self, limit: u64) -> Self {
        self.node_limit = limit;
        self
    }

    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }
}

/// Outcome of a decision-form search.
#[derive(Clone, Debug)]
pub enum RealizerSearch {
    Found(Realizer),
    ProvenImpossible { nodes: u64 },
    BudgetExhausted { nodes: u64 },
}

impl RealizerSearch {
    pub fn nodes(&self) -> u64 {
        match self {
            RealizerSearch::Found(_) => 0,
            RealizerSearch::ProvenImpossible { nodes } | RealizerSearch::BudgetExhausted { nodes } => *nodes,
        }
    }
}

/// Shared accounting across a family of searches (iterative deepening, parallel workers).
pub(crate) struct Meter {
    start: Instant,
    budget: SearchBudget,
    nodes: AtomicU64,
    stop: AtomicBool,
}

impl Meter {
    pub(crate) fn new(budget: SearchBudget) -> Self {
        Meter { start: Instant::now(), budget, nodes: AtomicU64::new(0), stop: AtomicBool::new(false) }
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub(crate) fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    pub(crate) fn budget(&self) -> SearchBudget {
        self.budget
    }

    /// Adds `batch` nodes; false once a limit is hit.
    fn charge(&self, batch: u64) -> bool {
        let total = self.nodes.fetch_add(batch, Ordering::Relaxed) + batch;
        total <= self.budget.node_limit && self.start.elapsed() <= self.budget.time_limit
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    Found,
    Impossible,
    Exhausted,
    Cancelled,
}

#[derive(Clone)]
struct State<'a> {
    poset: &'a Poset,
    /// `(x, y)`: some class must place `y` before `x`.
    pairs: &'a [(usize, usize)],
    k: usize,
    used: usize,
    classes: Vec<BitMatrix>,
    trail: Vec<(usize, usize)>,
    saved: Vec<u64>,
    pending_nodes: u64,
}

const CHARGE_BATCH: u64 = 256;

impl<'a> State<'a> {
    fn new(poset: &'a Poset, pairs: &'a [(usize, usize)], k: usize) -> Self {
        State {
            poset,
            pairs,
            k,
            used: 0,
            classes: Vec::with_capacity(k.min(64)),
            trail: Vec::new(),
            saved: Vec::new(),
            pending_nodes: 0,
        }
    }

    fn open_class(&mut self) -> usize {
        if self.classes.len() == self.used {
            self.classes.push(self.poset.strict_matrix().clone());
        } else {
            self.classes[self.used] = self.poset.strict_matrix().clone();
        }
        self.used += 1;
        self.used - 1
    }

    #[inline]
    fn covered(&self, (x, y): (usize, usize)) -> bool {
        self.classes[..self.used].iter().any(|c| c.get(y, x))
    }

    #[inline]
    fn fits(&self, class: usize, (x, y): (usize, usize)) -> bool {
        !self.classes[class].get(x, y)
    }

    /// Adds `y < x` to `class`, recording overwritten rows. Returns the trail mark.
    fn reverse_in(&mut self, class: usize, (x, y): (usize, usize)) -> usize {
        let mark = self.trail.len();
        let n = self.poset.len();
        let stride = self.classes[class].stride();
        let mut addition = self.classes[class].row(x).to_vec();
        addition[x / 64] |= 1 << (x % 64);
        for u in 0..n {
            if u != y && !self.classes[class].get(u, y) {
                continue;
            }
            let row = self.classes[class].row_mut(u);
            if row.iter().zip(&addition).all(|(r, a)| r | a == *r) {
                continue;
            }
            self.trail.push((class, u));
            self.saved.extend_from_slice(row);
            for (r, a) in row.iter_mut().zip(&addition) {
                *r |= a;
            }
        }
        debug_assert_eq!(self.saved.len(), self.trail.len() * stride);
        mark
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (class, u) = self.trail.pop().unwrap();
            let stride = self.classes[class].stride();
            let at = self.saved.len() - stride;
            self.classes[class].row_mut(u).copy_from_slice(&self.saved[at..]);
            self.saved.truncate(at);
        }
    }

    /// Most constrained uncovered pair: `None` when all pairs are covered,
    /// `Some((pair, 0))` signals a dead end.
    fn select(&self) -> Option<((usize, usize), usize)> {
        let fresh = usize::from(self.used < self.k);
        let mut best: Option<((usize, usize), usize)> = None;
        for &pair in self.pairs {
            if self.covered(pair) {
                continue;
            }
            let options = (0..self.used).filter(|&c| self.fits(c, pair)).count() + fresh;
            if options == 0 {
                return Some((pair, 0));
            }
            if best.is_none_or(|(_, b)| options < b) {
                best = Some((pair, options));
                if options == 1 {
                    break;
                }
            }
        }
        best
    }

    fn tick(&mut self, meter: &Meter) -> bool {
        self.pending_nodes += 1;
        let batch = if meter.budget.node_limit < 1 << 20 { 1 } else { CHARGE_BATCH };
        if self.pending_nodes >= batch {
            let ok = meter.charge(self.pending_nodes);
            self.pending_nodes = 0;
            return ok;
        }
        true
    }

    fn flush(&mut self, meter: &Meter) {
        if self.pending_nodes > 0 {
            meter.charge(self.pending_nodes);
            self.pending_nodes = 0;
        }
    }

    /// Choices for the given pair: existing fitting classes, then one fresh class.
    fn choices(&self, pair: (usize, usize)) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.used).filter(|&c| self.fits(c, pair)).collect();
        if self.used < self.k {
            v.push(self.used);
        }
        v
    }

    fn apply(&mut self, class: usize, pair: (usize, usize)) -> (usize, bool) {
        let opened = class == self.used;
        if opened {
            self.open_class();
        }
        (self.reverse_in(class, pair), opened)
    }

    fn retract(&mut self, mark: usize, opened: bool) {
        self.undo_to(mark);
        if opened {
            self.used -= 1;
        }
    }

    fn dfs(&mut self, meter: &Meter) -> Outcome {
        if meter.stop.load(Ordering::Relaxed) {
            return Outcome::Cancelled;
        }
        if !self.tick(meter) {
            return Outcome::Exhausted;
        }
        let Some((pair, options)) = self.select() else {
            return Outcome::Found;
        };
        if options == 0 {
            return Outcome::Impossible;
        }
        for class in self.choices(pair) {
            let (mark, opened) = self.apply(class, pair);
            match self.dfs(meter) {
                Outcome::Impossible => self.retract(mark, opened),
                other => return other,
            }
        }
        Outcome::Impossible
    }

    /// Splits the search into independent subproblems (states with fresh trails).
    fn frontier(&self, target: usize) -> Vec<State<'a>> {
        let mut layer = vec![self.clone()];
        loop {
            if layer.len() >= target {
                return layer;
            }
            let mut next = Vec::new();
            let mut grew = false;
            for st in layer {
                match st.select() {
                    Some((pair, options)) if options > 0 => {
                        for class in st.choices(pair) {
                            let mut child = st.clone();
                            child.apply(class, pair);
                            child.trail.clear();
                            child.saved.clear();
                            next.push(child);
                        }
                        grew = true;
                    }
                    // leaves and dead ends are resolved by the workers
                    _ => next.push(st),
                }
            }
            layer = next;
            if !grew {
                return layer;
            }
        }
    }

    fn extensions(&self) -> Vec<LinearExtension> {
        let mut out: Vec<LinearExtension> = self.classes[..self.used]
            .iter()
            .map(|c| LinearExtension::from_order_unchecked(order_of_closed(c)))
            .collect();
        if out.is_empty() {
            out.push(LinearExtension::from_order_unchecked(order_of_closed(self.poset.strict_matrix())));
        }
        while out.len() < self.k {
            out.push(out[0].clone());
        }
        out
    }
}

/// A linear extension of a closed strict order: sort by number of predecessors.
pub(crate) fn order_of_closed(m: &BitMatrix) -> Vec<usize> {
    let t = m.transpose();
    let mut order: Vec<usize> = (0..m.len()).collect();
    order.sort_by_key(|&i| (t.row_count(i), i));
    order
}

pub(crate) fn search_with_meter(poset: &Poset, k: usize, meter: &Meter) -> RealizerSearch {
    assert!(k >= 1, "realizers have at least one extension");
    let pairs = poset.incomparable_pairs();
    let before = meter.nodes();
    if pairs.is_empty() {
        let ext = LinearExtension::from_order_unchecked(order_of_closed(poset.strict_matrix()));
        return RealizerSearch::Found(Realizer::from_extensions_unchecked(vec![ext; k]));
    }
    let mut root = State::new(poset, &pairs, k);
    // symmetry: the first pair goes to the first class
    let first = pairs[0];
    root.apply(0, first);
    root.trail.clear();
    root.saved.clear();

    let (outcome, solution) = if meter.budget().parallel {
        let threads = rayon::current_num_threads().max(1);
        let parts = root.frontier(threads * 8);
        let results: Vec<(Outcome, Option<Vec<LinearExtension>>)> = parts
            .into_par_iter()
            .map(|mut st| {
                let out = st.dfs(meter);
                st.flush(meter);
                if out == Outcome::Found {
                    meter.stop.store(true, Ordering::Relaxed);
                    (out, Some(st.extensions()))
                } else {
                    (out, None)
                }
            })
            .collect();
        meter.stop.store(false, Ordering::Relaxed);
        if let Some((_, sol)) = results.iter().find(|(o, _)| *o == Outcome::Found) {
            (Outcome::Found, sol.clone())
        } else if results.iter().any(|(o, _)| matches!(o, Outcome::Exhausted | Outcome::Cancelled)) {
            (Outcome::Exhausted, None)
        } else {
            (Outcome::Impossible, None)
        }
    } else {
        let out = root.dfs(meter);
        root.flush(meter);
        let sol = (out == Outcome::Found).then(|| root.extensions());
        (out, sol)
    };
    let nodes = meter.nodes() - before;
    match outcome {
        Outcome::Found => {
            let r = Realizer::from_extensions_unchecked(solution.expect("found carries extensions"));
            debug_assert!(r.is_realizer_of(poset));
            RealizerSearch::Found(r)
        }
        Outcome::Impossible => RealizerSearch::ProvenImpossible { nodes },
        Outcome::Exhausted | Outcome::Cancelled => RealizerSearch::BudgetExhausted { nodes },
    }
}

/// Decides whether `poset` has a realizer with `k` extensions.
pub fn has_realizer_of_size(poset: &Poset, k: usize, budget: SearchBudget) -> RealizerSearch {
    let meter = Meter::new(budget);
    search_with_meter(poset, k, &meter)
}

/// Greedy first-fit realizer: each new extension absorbs every still
/// unreversed pair it can. Always succeeds; gives an upper bound.
pub fn greedy_realizer(poset: &Poset) -> Realizer {
    let pairs = poset.incomparable_pairs();
    let mut st = State::new(poset, &pairs, usize::MAX);
    loop {
        let pending: Vec<(usize, usize)> = pairs.iter().copied().filter(|&p| !st.covered(p)).collect();
        if pending.is_empty() {
            break;
        }
        let c = st.open_class();
        for p in pending {
            if !st.covered(p) && st.fits(c, p) {
                st.reverse_in(c, p);
            }
        }
        st.trail.clear();
        st.saved.clear();
    }
    st.k = st.used.max(1);
    let r = Realizer::from_extensions_unchecked(st.extensions());
    debug_assert!(r.is_realizer_of(poset));
    r
}

/// Whether a single linear extension can reverse every pair in `reversals`
/// (each `(x, y)` meaning `y` before `x`): true iff the base order plus the
/// reversals is acyclic.
pub fn reversal_class_feasible(poset: &Poset, reversals: &[(usize, usize)]) -> bool {
    let extra: Vec<(usize, usize)> = reversals.iter().map(|&(x, y)| (y, x)).collect();
    crate::order::linear::topological_order(poset, &extra, &[]).is_some()
}
