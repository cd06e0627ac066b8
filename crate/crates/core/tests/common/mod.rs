//! Test-only oracles, independent of the solver.
#![allow(dead_code)]

use dimlab::absorb::ChainProductPresentation;
use dimlab::order::Poset;
use rand::Rng;

/// All linear extensions, by repeatedly picking a minimal remaining element.
pub fn linear_extensions(p: &Poset) -> Vec<Vec<usize>> {
    fn go(p: &Poset, placed: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if placed.len() == p.len() {
            out.push(placed.clone());
            return;
        }
        for x in 0..p.len() {
            if !used[x] && (0..p.len()).all(|y| used[y] || !p.lt(y, x)) {
                used[x] = true;
                placed.push(x);
                go(p, placed, used, out);
                placed.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(p, &mut Vec::new(), &mut vec![false; p.len()], &mut out);
    out
}

/// Minimum realizer size by trying every family of `k` linear extensions.
pub fn brute_force_dimension(p: &Poset) -> usize {
    let n = p.len();
    if n == 1 {
        return 0;
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| x != y && !p.leq(x, y)).collect();
    if pairs.is_empty() {
        return 1;
    }
    assert!(pairs.len() <= 128);
    let full: u128 = if pairs.len() == 128 { u128::MAX } else { (1u128 << pairs.len()) - 1 };
    // bit k: the extension puts pairs[k].1 before pairs[k].0
    let mut masks: Vec<u128> = linear_extensions(p)
        .iter()
        .map(|ext| {
            let mut pos = vec![0; n];
            for (r, &x) in ext.iter().enumerate() {
                pos[x] = r;
            }
            pairs.iter().enumerate().fold(0u128, |m, (k, &(x, y))| if pos[y] < pos[x] { m | 1 << k } else { m })
        })
        .collect();
    masks.sort_unstable();
    masks.dedup();
    let maximal: Vec<u128> = masks.iter().copied().filter(|&m| !masks.iter().any(|&o| o != m && o & m == m)).collect();
    fn cover(masks: &[u128], start: usize, k: usize, acc: u128, full: u128) -> bool {
        if acc == full {
            return true;
        }
        if k == 0 {
            return false;
        }
        (start..masks.len()).any(|i| cover(masks, i + 1, k - 1, acc | masks[i], full))
    }
    (1..).find(|&k| cover(&maximal, 0, k, 0, full)).unwrap()
}

/// Induced product order on distinct tuples.
pub fn tuple_poset(tuples: &[Vec<usize>]) -> Poset {
    let n = tuples.len();
    let leq = |a: &Vec<usize>, b: &Vec<usize>| a.iter().zip(b).all(|(x, y)| x <= y);
    let lt: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && leq(&tuples[i], &tuples[j]))
        .collect();
    let labels: Vec<String> =
        tuples.iter().map(|t| t.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("")).collect();
    Poset::from_relations(labels, &lt).unwrap()
}

/// A random subposet of a product of `d` chains, presented by its coordinates.
pub fn random_presentation(rng: &mut impl Rng, d: usize, max_len: usize, max_elems: usize) -> ChainProductPresentation {
    let lengths: Vec<usize> = (0..d).map(|_| rng.gen_range(1..=max_len)).collect();
    let count = rng.gen_range(1..=max_elems);
    let mut tuples: Vec<Vec<usize>> =
        (0..count).map(|_| lengths.iter().map(|&l| rng.gen_range(0..l)).collect()).collect();
    tuples.sort();
    tuples.dedup();
    let base = tuple_poset(&tuples);
    ChainProductPresentation::new(base, lengths, tuples).unwrap()
}

/// Each used value lands in one of `n` parts or in none.
pub fn random_partition(
    rng: &mut impl Rng,
    pres: &ChainProductPresentation,
    n: usize,
) -> dimlab::absorb::CoordinatePartition {
    let mut lists = vec![Vec::new(); n];
    for v in pres.used_values() {
        let j = rng.gen_range(0..=n);
        if j < n {
            lists[j].push(v);
        }
    }
    dimlab::absorb::CoordinatePartition::from_lists(lists).unwrap()
}
