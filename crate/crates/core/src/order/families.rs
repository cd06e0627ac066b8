//! Constructors for the standard poset families and the order combinators
//! (products, lexicographic sums, subposets, intervals).

use crate::bits::BitMatrix;
use crate::error::{OrderError, Result};
use crate::order::poset::{Poset, DEFAULT_MAX_ELEMENTS};

fn check_size(n: usize) -> Result<()> {
    if n > DEFAULT_MAX_ELEMENTS {
        Err(OrderError::TooLarge { n, max: DEFAULT_MAX_ELEMENTS })
    } else {
        Ok(())
    }
}

/// Total order `0 < 1 < … < k-1`.
pub fn chain(k: usize) -> Result<Poset> {
    if k == 0 {
        return Err(OrderError::InvalidParameter("chain length must be at least 1".into()));
    }
    check_size(k)?;
    Ok(Poset::from_leq_fn((0..k).map(|i| i.to_string()).collect(), |i, j| i <= j))
}

/// `k` pairwise incomparable elements.
pub fn antichain(k: usize) -> Result<Poset> {
    if k == 0 {
        return Err(OrderError::InvalidParameter("antichain size must be at least 1".into()));
    }
    check_size(k)?;
    Ok(Poset::from_leq_fn((0..k).map(|i| format!("x{i}")).collect(), |i, j| i == j))
}

/// Renders a 0/1 tuple as a bit string, e.g. `[0, 1, 1]` → `"011"`.
pub fn bit_label(bits: &[u8]) -> String {
    if bits.is_empty() {
        return "()".into();
    }
    bits.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
}

/// All 0/1 tuples of length `d`, coordinate 0 most significant.
pub fn cube_tuples(d: usize) -> Vec<Vec<u8>> {
    (0..1usize << d).map(|m| (0..d).map(|i| ((m >> (d - 1 - i)) & 1) as u8).collect()).collect()
}

/// The subposet of `2^d` on the given 0/1 tuples, ordered coordinatewise.
pub fn cube_subposet(tuples: &[Vec<u8>]) -> Result<Poset> {
    if tuples.is_empty() {
        return Err(OrderError::EmptySelection);
    }
    check_size(tuples.len())?;
    let labels = tuples.iter().map(|t| bit_label(t)).collect();
    Ok(Poset::from_leq_fn(labels, |i, j| tuples[i].iter().zip(&tuples[j]).all(|(a, b)| a <= b)))
}

/// The cube `2^d`, elements labeled by bit strings.
pub fn boolean_lattice(d: usize) -> Result<Poset> {
    if d > 9 {
        return Err(OrderError::TooLarge { n: 1 << d.min(20), max: DEFAULT_MAX_ELEMENTS });
    }
    cube_subposet(&cube_tuples(d))
}

/// `S_n`: elements `a_0..a_{n-1}, b_0..b_{n-1}` with `a_i < b_j` iff `i != j`.
pub fn standard_example(n: usize) -> Result<Poset> {
    if n < 2 {
        return Err(OrderError::InvalidParameter("standard example needs n >= 2".into()));
    }
    check_size(2 * n)?;
    let labels: Vec<String> = (0..n).map(|i| format!("a{i}")).chain((0..n).map(|i| format!("b{i}"))).collect();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, n + j))).collect();
    Poset::from_relations::<String>(labels, &pairs)
}

/// Cube tuples for `S_n` inside `2^n` (`n >= 3`): `a_i` is the `i`-th unit
/// vector and `b_i` its complement, in the element order of [`standard_example`].
pub fn standard_example_tuples(n: usize) -> Result<Vec<Vec<u8>>> {
    if n < 3 {
        return Err(OrderError::InvalidParameter("S_n sits inside 2^n only for n >= 3".into()));
    }
    let unit = |i: usize| (0..n).map(|k| u8::from(k == i)).collect::<Vec<_>>();
    let co = |i: usize| (0..n).map(|k| u8::from(k != i)).collect::<Vec<_>>();
    Ok((0..n).map(unit).chain((0..n).map(co)).collect())
}

fn weight(t: &[u8]) -> usize {
    t.iter().filter(|&&b| b == 1).count()
}

/// Tuples of `2^d` whose number of ones is `a` or `b`.
pub fn graded_slice_tuples(d: usize, a: usize, b: usize) -> Result<Vec<Vec<u8>>> {
    if !(a < b && b <= d) {
        return Err(OrderError::InvalidParameter(format!("graded slice needs 0 <= a < b <= d, got d={d} a={a} b={b}")));
    }
    if d > 9 {
        return Err(OrderError::InvalidParameter("graded slice dimension too large".into()));
    }
    Ok(cube_tuples(d)
        .into_iter()
        .filter(|t| {
            let w = weight(t);
            w == a || w == b
        })
        .collect())
}

/// `P_d^{a,b}`: the elements of `2^d` of weight `a` or `b`.
pub fn graded_slice(d: usize, a: usize, b: usize) -> Result<Poset> {
    cube_subposet(&graded_slice_tuples(d, a, b)?)
}

/// Weight band `[2, d-2]` of `2^d` minus `(0,…,0,1,1)` and `(1,…,1,0,0)`.
pub fn middle_band_pruned_tuples(d: usize) -> Result<Vec<Vec<u8>>> {
    if d < 4 {
        return Err(OrderError::InvalidParameter("middle band needs d >= 4".into()));
    }
    if d > 9 {
        return Err(OrderError::InvalidParameter("middle band dimension too large".into()));
    }
    let low: Vec<u8> = (0..d).map(|i| u8::from(i >= d - 2)).collect();
    let high: Vec<u8> = (0..d).map(|i| u8::from(i < d - 2)).collect();
    Ok(cube_tuples(d)
        .into_iter()
        .filter(|t| {
            let w = weight(t);
            (2..=d - 2).contains(&w) && *t != low && *t != high
        })
        .collect())
}

pub fn middle_band_pruned(d: usize) -> Result<Poset> {
    cube_subposet(&middle_band_pruned_tuples(d)?)
}

/// Direct product; element `(p, q)` has index `p * |Q| + q`.
pub fn product(p: &Poset, q: &Poset) -> Result<Poset> {
    let (np, nq) = (p.len(), q.len());
    check_size(np * nq)?;
    let labels = (0..np * nq).map(|k| format!("({},{})", p.label(k / nq), q.label(k % nq))).collect();
    Ok(Poset::from_leq_fn(labels, |a, b| p.leq(a / nq, b / nq) && q.leq(a % nq, b % nq)))
}

/// Product of several factors with flat tuple labels; the first factor is
/// the most significant digit of the element index.
pub fn product_many(factors: &[Poset]) -> Result<Poset> {
    let Some(first) = factors.first() else {
        return Err(OrderError::EmptySelection);
    };
    if factors.len() == 1 {
        return Ok(first.clone());
    }
    let sizes: Vec<usize> = factors.iter().map(Poset::len).collect();
    let total = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s));
    let total = total.ok_or(OrderError::TooLarge { n: usize::MAX, max: DEFAULT_MAX_ELEMENTS })?;
    check_size(total)?;
    let digits = |mut k: usize| {
        let mut d = vec![0; sizes.len()];
        for f in (0..sizes.len()).rev() {
            d[f] = k % sizes[f];
            k /= sizes[f];
        }
        d
    };
    let all: Vec<Vec<usize>> = (0..total).map(digits).collect();
    let labels = all
        .iter()
        .map(|d| {
            let parts: Vec<&str> = d.iter().zip(factors).map(|(&x, f)| f.label(x)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    Ok(Poset::from_leq_fn(labels, |a, b| all[a].iter().zip(&all[b]).zip(factors).all(|((&x, &y), f)| f.leq(x, y))))
}

/// Lexicographic sum over `index`: `(p, q) <= (p', q')` iff `p < p'`, or
/// `p = p'` and `q <= q'` in the part at `p`. Elements are enumerated
/// part by part.
pub fn lex_sum(index: &Poset, parts: &[Poset]) -> Result<Poset> {
    if parts.len() != index.len() {
        return Err(OrderError::InvalidParameter(format!(
            "lexicographic sum needs {} parts, got {}",
            index.len(),
            parts.len()
        )));
    }
    let mut owner = Vec::new();
    let mut labels = Vec::new();
    for (p, part) in parts.iter().enumerate() {
        for q in 0..part.len() {
            owner.push((p, q));
            labels.push(format!("{}.{}", index.label(p), part.label(q)));
        }
    }
    check_size(owner.len())?;
    Ok(Poset::from_leq_fn(labels, |a, b| {
        let ((p, q), (p2, q2)) = (owner[a], owner[b]);
        index.lt(p, p2) || (p == p2 && parts[p].leq(q, q2))
    }))
}

/// Disjoint union, i.e. the lexicographic sum over an antichain.
pub fn disjoint_union(parts: &[Poset]) -> Result<Poset> {
    lex_sum(&antichain(parts.len())?, parts)
}

/// Induced order on `subset`, whose `k`-th entry becomes element `k`.
pub fn subposet(p: &Poset, subset: &[usize]) -> Result<Poset> {
    if subset.is_empty() {
        return Err(OrderError::EmptySelection);
    }
    let mut seen = vec![false; p.len()];
    for &x in subset {
        if x >= p.len() {
            return Err(OrderError::IndexOutOfRange { index: x, n: p.len() });
        }
        if std::mem::replace(&mut seen[x], true) {
            return Err(OrderError::DuplicateElement(x));
        }
    }
    let k = subset.len();
    let mut up = BitMatrix::new(k);
    for a in 0..k {
        for b in 0..k {
            if p.lt(subset[a], subset[b]) {
                up.set(a, b);
            }
        }
    }
    let labels = subset.iter().map(|&x| p.label(x).to_string()).collect();
    Ok(Poset::from_closed(labels, up))
}

/// Elements of the closed interval `[lower, upper]`, in index order.
pub fn interval_elements(p: &Poset, lower: usize, upper: usize) -> Result<Vec<usize>> {
    for index in [lower, upper] {
        if index >= p.len() {
            return Err(OrderError::IndexOutOfRange { index, n: p.len() });
        }
    }
    if !p.leq(lower, upper) {
        return Err(OrderError::IncomparableEndpoints { lower, upper });
    }
    Ok((0..p.len()).filter(|&x| p.leq(lower, x) && p.leq(x, upper)).collect())
}

/// The interval `{x | lower <= x <= upper}` as a subposet.
pub fn interval(p: &Poset, lower: usize, upper: usize) -> Result<Poset> {
    subposet(p, &interval_elements(p, lower, upper)?)
}

/// Classes of the equivalence generated by comparability, each sorted,
/// ordered by smallest member.
pub fn connected_components(p: &Poset) -> Vec<Vec<usize>> {
    let n = p.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for y in p.above(x).chain(p.below(x)) {
                if comp[y] == usize::MAX {
                    comp[y] = id;
                    members.push(y);
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

pub fn is_connected(p: &Poset) -> bool {
    connected_components(p).len() == 1
}
