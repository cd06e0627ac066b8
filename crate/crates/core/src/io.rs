//! File formats.
//!
//! Posets are JSON documents `{"labels": [...], "lt": [[i, j], ...]}`; `lt`
//! is read as a generating relation and written as the cover relation.
//! A realizer certificate is plain text, one permutation of indices per line.

use serde::{Deserialize, Serialize};

use crate::error::{OrderError, Result};
use crate::order::poset::Poset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDoc {
    pub labels: Vec<String>,
    pub lt: Vec<(usize, usize)>,
}

impl PosetDoc {
    pub fn from_poset(poset: &Poset) -> Self {
        PosetDoc { labels: poset.labels().to_vec(), lt: poset.cover_pairs() }
    }

    pub fn to_poset(&self) -> Result<Poset> {
        Poset::from_relations(self.labels.iter().cloned(), &self.lt)
    }
}

/// A presentation without its base poset, which lives in its own file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub chain_lengths: Vec<usize>,
    pub coords: Vec<Vec<usize>>,
}

fn malformed(e: impl std::fmt::Display) -> OrderError {
    OrderError::Malformed(e.to_string())
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(malformed)
}

pub fn write_poset(poset: &Poset) -> String {
    to_json(&PosetDoc::from_poset(poset))
}

pub fn read_poset(text: &str) -> Result<Poset> {
    from_json::<PosetDoc>(text)?.to_poset()
}

pub fn write_realizer(orders: &[Vec<usize>]) -> String {
    orders.iter().map(|o| o.iter().map(usize::to_string).collect::<Vec<_>>().join(" ") + "\n").collect()
}

/// Parses one permutation per non-empty line; `#` starts a comment.
pub fn read_realizer(text: &str) -> Result<Vec<Vec<usize>>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| l.split_whitespace().map(|t| t.parse::<usize>().map_err(malformed)).collect())
        .collect()
}
