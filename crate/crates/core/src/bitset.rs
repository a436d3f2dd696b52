//! Word-level helpers for the adjacency rows used by [`GameGraph`](crate::graph::GameGraph).

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

#[inline]
pub(crate) fn test(row: &[u64], i: usize) -> bool {
    row[i / 64] >> (i % 64) & 1 == 1
}

#[inline]
pub(crate) fn set(row: &mut [u64], i: usize) {
    row[i / 64] |= 1 << (i % 64);
}

#[inline]
pub(crate) fn intersection_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

/// Iterates the set bit positions of `row` in increasing order.
pub(crate) fn ones(row: &[u64]) -> Ones<'_> {
    Ones {
        row,
        word: 0,
        current: row.first().copied().unwrap_or(0),
    }
}

pub(crate) struct Ones<'a> {
    row: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
            if self.word >= self.row.len() {
                return None;
            }
            self.current = self.row[self.word];
        }
    }
}
