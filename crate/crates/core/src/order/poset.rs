use std::fmt;

use crate::bits::BitMatrix;
use crate::error::{OrderError, Result};

/// Largest element count accepted by the default constructors.
pub const DEFAULT_MAX_ELEMENTS: usize = 512;

/// A finite, nonempty partially ordered set over the indices `0..n`.
///
/// The strict order is stored transitively closed in both directions, so
/// every comparability query is a single bit test.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    labels: Vec<String>,
    up: BitMatrix,
    down: BitMatrix,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset").field("n", &self.len()).field("covers", &self.cover_pairs()).finish()
    }
}

impl Poset {
    /// Builds the poset generated by `pairs` (each `(i, j)` meaning `i < j`).
    pub fn from_relations<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        pairs: &[(usize, usize)],
    ) -> Result<Poset> {
        Self::from_relations_with_limit(labels, pairs, DEFAULT_MAX_ELEMENTS)
    }

    pub fn from_relations_with_limit<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        pairs: &[(usize, usize)],
        max_elements: usize,
    ) -> Result<Poset> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        if n == 0 {
            return Err(OrderError::EmptyPoset);
        }
        if n > max_elements {
            return Err(OrderError::TooLarge { n, max: max_elements });
        }
        let mut up = BitMatrix::new(n);
        for &(i, j) in pairs {
            for index in [i, j] {
                if index >= n {
                    return Err(OrderError::IndexOutOfRange { index, n });
                }
            }
            if i == j {
                return Err(OrderError::CycleDetected { element: i });
            }
            up.set(i, j);
        }
        up.close_transitively();
        if let Some(element) = (0..n).find(|&i| up.get(i, i)) {
            return Err(OrderError::CycleDetected { element });
        }
        Ok(Self::from_closed(labels, up))
    }

    /// `up` must already be a transitively closed strict order.
    pub(crate) fn from_closed(labels: Vec<String>, up: BitMatrix) -> Poset {
        debug_assert_eq!(labels.len(), up.len());
        let down = up.transpose();
        Poset { labels, up, down }
    }

    /// Builds a poset from an arbitrary `leq` predicate that is known to be a partial order.
    pub(crate) fn from_leq_fn(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Poset {
        let n = labels.len();
        let mut up = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                if i != j && leq(i, j) {
                    up.set(i, j);
                }
            }
        }
        Self::from_closed(labels, up)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; posets are nonempty.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.up.get(i, j)
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.up.get(i, j)
    }

    #[inline]
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    #[inline]
    pub fn incomparable(&self, i: usize, j: usize) -> bool {
        !self.comparable(i, j)
    }

    pub(crate) fn strict_matrix(&self) -> &BitMatrix {
        &self.up
    }

    pub fn above(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.up.iter_row(i)
    }

    pub fn below(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.down.iter_row(i)
    }

    /// Number of strict relations `i < j`.
    pub fn relation_count(&self) -> usize {
        self.up.count()
    }

    /// All strict relations in index order.
    pub fn lt_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|i| self.up.iter_row(i).map(move |j| (i, j))).collect()
    }

    /// The transitive reduction (Hasse diagram edges).
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.lt_pairs()
            .into_iter()
            .filter(|&(i, j)| self.up.row(i).iter().zip(self.down.row(j)).all(|(a, b)| a & b == 0))
            .collect()
    }

    pub fn is_chain(&self) -> bool {
        let n = self.len();
        self.relation_count() == n * (n - 1) / 2
    }

    pub fn is_antichain(&self) -> bool {
        self.relation_count() == 0
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down.row_count(i) == 0).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up.row_count(i) == 0).collect()
    }

    pub fn least_element(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.up.row_count(i) == self.len() - 1)
    }

    pub fn greatest_element(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.down.row_count(i) == self.len() - 1)
    }

    /// Has both a least and a greatest element.
    pub fn is_bounded(&self) -> bool {
        self.least_element().is_some() && self.greatest_element().is_some()
    }

    /// Ordered pairs `(i, j)` with `i` and `j` incomparable, both orientations.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.incomparable(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Exhaustive check of irreflexivity, antisymmetry and transitivity.
    pub fn check_axioms(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            if self.lt(i, i) {
                return false;
            }
            for j in 0..n {
                if self.lt(i, j) && self.lt(j, i) {
                    return false;
                }
                if !self.lt(i, j) {
                    continue;
                }
                for k in 0..n {
                    if self.lt(j, k) && !self.lt(i, k) {
                        return false;
                    }
                }
            }
        }
        self.down == self.up.transpose()
    }

    /// Same order with new display labels.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Poset> {
        if labels.len() != self.len() {
            return Err(OrderError::Malformed(format!("expected {} labels, got {}", self.len(), labels.len())));
        }
        Ok(Poset { labels, up: self.up.clone(), down: self.down.clone() })
    }

    /// The dual poset (order reversed).
    pub fn dual(&self) -> Poset {
        Poset { labels: self.labels.clone(), up: self.down.clone(), down: self.up.clone() }
    }

    /// Image of the order under an index permutation: element `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Poset {
        let n = self.len();
        let mut labels = vec![String::new(); n];
        let mut up = BitMatrix::new(n);
        for i in 0..n {
            labels[perm[i]] = self.labels[i].clone();
            for j in self.up.iter_row(i) {
                up.set(perm[i], perm[j]);
            }
        }
        Self::from_closed(labels, up)
    }

    /// Human-readable Hasse listing: one `lower < upper` line per cover.
    pub fn hasse_listing(&self) -> String {
        let mut s = format!("# {} elements\n", self.len());
        for (i, l) in self.labels.iter().enumerate() {
            s.push_str(&format!("{i}: {l}\n"));
        }
        for (i, j) in self.cover_pairs() {
            s.push_str(&format!("{} < {}\n", self.labels[i], self.labels[j]));
        }
        s
    }
}
