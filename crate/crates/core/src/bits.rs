//! Dense square bit matrices used for order relations.

/// An `n × n` boolean matrix stored row-major as packed `u64` words.
///
/// Row `i` is a bitset over columns; most callers treat `get(i, j)` as
/// "`i` is below `j`".
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    stride: usize,
    data: Vec<u64>,
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let stride = words_for(n);
        BitMatrix { n, stride, data: vec![0; n * stride] }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.stride + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.stride + j / 64] |= 1 << (j % 64);
    }

    #[inline]
    pub fn clear(&mut self, i: usize, j: usize) {
        self.data[i * self.stride + j / 64] &= !(1 << (j % 64));
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    /// `row(dst) |= row(src)`; returns true if `dst` changed.
    pub fn or_row_into(&mut self, src: usize, dst: usize) -> bool {
        if src == dst {
            return false;
        }
        let s = self.stride;
        let (a, b) = (src * s, dst * s);
        let mut changed = false;
        for w in 0..s {
            let v = self.data[a + w];
            let old = self.data[b + w];
            if old | v != old {
                self.data[b + w] = old | v;
                changed = true;
            }
        }
        changed
    }

    pub fn row_count(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Iterates the set columns of row `i` in increasing order.
    pub fn iter_row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(i))
    }

    /// Warshall closure in place.
    pub fn close_transitively(&mut self) {
        for k in 0..self.n {
            for i in 0..self.n {
                if self.get(i, k) {
                    self.or_row_into(k, i);
                }
            }
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.n);
        for i in 0..self.n {
            for j in self.iter_row(i) {
                t.set(j, i);
            }
        }
        t
    }
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            }
        })
    })
}
