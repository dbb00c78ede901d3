//! Range-minimum queries with leftmost tie-breaking.
//!
//! `query(lo, hi)` (1-based, inclusive) returns the greatest `k` in `lo..=hi`
//! such that every element of `S[lo..k-1]` is strictly greater than `S[k]`,
//! which is the leftmost position of the range minimum.
//!
//! [`BlockRmq`] is the default: blocks of about `log2(n) / 4` elements, one
//! in-block answer table per distinct Cartesian-tree shape, and a sparse table
//! over block minima. That is `O(n)` words and `O(1)` per query.
//! [`SparseTable`] is the plain `O(n log n)`-word structure.
//! Range maxima are range minima over [`Reverse`]d values.

use std::cmp::Reverse;
use std::collections::HashMap;

use crate::error::{McsError, Result};

/// Which structure backs an [`Rmq`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RmqBacking {
    #[default]
    Block,
    Sparse,
}

#[derive(Debug, Clone)]
pub enum Rmq<T> {
    Block(BlockRmq<T>),
    Sparse(SparseTable<T>),
}

impl<T: Ord + Copy> Rmq<T> {
    pub fn build(values: &[T], backing: RmqBacking) -> Result<Self> {
        Ok(match backing {
            RmqBacking::Block => Rmq::Block(BlockRmq::build(values)?),
            RmqBacking::Sparse => Rmq::Sparse(SparseTable::build(values)?),
        })
    }

    pub fn len(&self) -> usize {
        match self {
            Rmq::Block(r) => r.values.len(),
            Rmq::Sparse(r) => r.values.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn get(&self, k: usize) -> T {
        match self {
            Rmq::Block(r) => r.values[k - 1],
            Rmq::Sparse(r) => r.values[k - 1],
        }
    }

    /// Leftmost minimum position in `lo..=hi`. Panics in debug builds on a bad range.
    #[inline]
    pub fn query(&self, lo: usize, hi: usize) -> usize {
        debug_assert!(1 <= lo && lo <= hi && hi <= self.len());
        match self {
            Rmq::Block(r) => r.argmin(lo - 1, hi - 1) + 1,
            Rmq::Sparse(r) => r.argmin(lo - 1, hi - 1) + 1,
        }
    }

    pub fn checked_query(&self, lo: usize, hi: usize) -> Result<usize> {
        if lo == 0 || lo > hi || hi > self.len() {
            return Err(McsError::InvalidRange {
                lo,
                hi,
                len: self.len(),
            });
        }
        Ok(self.query(lo, hi))
    }

    pub fn words(&self) -> usize {
        match self {
            Rmq::Block(r) => r.words(),
            Rmq::Sparse(r) => r.words(),
        }
    }
}

/// Range-maximum structure: leftmost position of the maximum.
#[derive(Debug, Clone)]
pub struct RangeMax<T>(Rmq<Reverse<T>>);

impl<T: Ord + Copy> RangeMax<T> {
    pub fn build(values: &[T], backing: RmqBacking) -> Result<Self> {
        let neg: Vec<Reverse<T>> = values.iter().copied().map(Reverse).collect();
        Ok(RangeMax(Rmq::build(&neg, backing)?))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, k: usize) -> T {
        self.0.get(k).0
    }

    #[inline]
    pub fn query_max(&self, lo: usize, hi: usize) -> usize {
        self.0.query(lo, hi)
    }

    pub fn checked_query_max(&self, lo: usize, hi: usize) -> Result<usize> {
        self.0.checked_query(lo, hi)
    }

    /// The maximum value over `lo..=hi`.
    #[inline]
    pub fn max_value(&self, lo: usize, hi: usize) -> T {
        self.get(self.query_max(lo, hi))
    }

    pub fn words(&self) -> usize {
        self.0.words()
    }
}

fn words_of<T>(n: usize) -> usize {
    (n * std::mem::size_of::<T>()).div_ceil(8)
}

/// Sparse table of argmin positions, leftmost on ties.
#[derive(Debug, Clone)]
pub struct SparseTable<T> {
    values: Vec<T>,
    // levels[k][a] = argmin over a..a + 2^k
    levels: Vec<Vec<u32>>,
}

impl<T: Ord + Copy> SparseTable<T> {
    pub fn build(values: &[T]) -> Result<Self> {
        if values.is_empty() {
            return Err(McsError::EmptySequence);
        }
        let values = values.to_vec();
        let levels = sparse_levels(values.len(), |a, b| values[b] < values[a]);
        Ok(SparseTable { values, levels })
    }

    #[inline]
    fn argmin(&self, l: usize, r: usize) -> usize {
        sparse_query(&self.levels, l, r, |a, b| self.values[b] < self.values[a])
    }

    pub fn words(&self) -> usize {
        words_of::<T>(self.values.len()) + self.levels.iter().map(|l| words_of::<u32>(l.len())).sum::<usize>()
    }
}

// `right_wins(a, b)` with a < b says position b holds a strictly smaller value.
fn sparse_levels(n: usize, right_wins: impl Fn(usize, usize) -> bool) -> Vec<Vec<u32>> {
    let mut levels = vec![(0..n as u32).collect::<Vec<u32>>()];
    let mut span = 1;
    while span * 2 <= n {
        let prev = levels.last().unwrap();
        let cur: Vec<u32> = (0..=n - span * 2)
            .map(|a| {
                let (l, r) = (prev[a], prev[a + span]);
                if right_wins(l as usize, r as usize) {
                    r
                } else {
                    l
                }
            })
            .collect();
        levels.push(cur);
        span *= 2;
    }
    levels
}

#[inline]
fn sparse_query(levels: &[Vec<u32>], l: usize, r: usize, right_wins: impl Fn(usize, usize) -> bool) -> usize {
    let k = (r - l + 1).ilog2() as usize;
    let a = levels[k][l] as usize;
    let b = levels[k][r + 1 - (1 << k)] as usize;
    if right_wins(a, b) {
        b
    } else {
        a
    }
}

/// Linear-space RMQ: per-block shape tables plus a sparse table over blocks.
#[derive(Debug, Clone)]
pub struct BlockRmq<T> {
    values: Vec<T>,
    block: usize,
    // table id per block
    shape: Vec<u32>,
    // answers[id * block * block + l * block + r] = in-block argmin offset
    answers: Vec<u8>,
    // argmin position of each block
    block_min: Vec<u32>,
    over_blocks: Vec<Vec<u32>>,
}

impl<T: Ord + Copy> BlockRmq<T> {
    pub fn build(values: &[T]) -> Result<Self> {
        if values.is_empty() {
            return Err(McsError::EmptySequence);
        }
        let n = values.len();
        let block = ((n.ilog2() as usize).div_ceil(4)).clamp(1, 8);
        let nblocks = n.div_ceil(block);
        let mut shape = Vec::with_capacity(nblocks);
        let mut answers = Vec::new();
        let mut ids: HashMap<u64, u32> = HashMap::new();
        let mut block_min = Vec::with_capacity(nblocks);
        let mut stack: Vec<T> = Vec::with_capacity(block);

        for b in 0..nblocks {
            let lo = b * block;
            let chunk = &values[lo..(lo + block).min(n)];
            let sig = cartesian_signature(chunk, &mut stack);
            let next_id = ids.len() as u32;
            let id = *ids.entry(sig).or_insert_with(|| {
                answers.resize(answers.len() + block * block, 0);
                let base = next_id as usize * block * block;
                for l in 0..chunk.len() {
                    let mut best = l;
                    answers[base + l * block + l] = l as u8;
                    for r in l + 1..chunk.len() {
                        if chunk[r] < chunk[best] {
                            best = r;
                        }
                        answers[base + l * block + r] = best as u8;
                    }
                }
                next_id
            });
            shape.push(id);
            let off = answers[id as usize * block * block + chunk.len() - 1] as usize;
            block_min.push((lo + off) as u32);
        }

        let over_blocks = sparse_levels(nblocks, |a, b| {
            values[block_min[b] as usize] < values[block_min[a] as usize]
        });

        Ok(BlockRmq {
            values: values.to_vec(),
            block,
            shape,
            answers,
            block_min,
            over_blocks,
        })
    }

    #[inline]
    fn in_block(&self, b: usize, l: usize, r: usize) -> usize {
        let base = self.shape[b] as usize * self.block * self.block;
        b * self.block + self.answers[base + l * self.block + r] as usize
    }

    fn argmin(&self, l: usize, r: usize) -> usize {
        let (bl, br) = (l / self.block, r / self.block);
        if bl == br {
            return self.in_block(bl, l % self.block, r % self.block);
        }
        let mut best = self.in_block(bl, l % self.block, self.block - 1);
        if bl + 1 < br {
            let mb = sparse_query(&self.over_blocks, bl + 1, br - 1, |a, b| {
                self.values[self.block_min[b] as usize] < self.values[self.block_min[a] as usize]
            });
            let m = self.block_min[mb] as usize;
            if self.values[m] < self.values[best] {
                best = m;
            }
        }
        let right = self.in_block(br, 0, r % self.block);
        if self.values[right] < self.values[best] {
            best = right;
        }
        best
    }

    pub fn words(&self) -> usize {
        words_of::<T>(self.values.len())
            + words_of::<u32>(self.shape.len())
            + words_of::<u8>(self.answers.len())
            + words_of::<u32>(self.block_min.len())
            + self
                .over_blocks
                .iter()
                .map(|l| words_of::<u32>(l.len()))
                .sum::<usize>()
    }
}

// Push/pop trace of the min-Cartesian-tree stack; equal elements stay, so the
// leftmost of equal minima is the ancestor. A leading 1 separates lengths.
fn cartesian_signature<T: Ord + Copy>(chunk: &[T], stack: &mut Vec<T>) -> u64 {
    stack.clear();
    let mut sig: u64 = 1;
    for &v in chunk {
        while let Some(&top) = stack.last() {
            if top > v {
                stack.pop();
                sig <<= 1;
            } else {
                break;
            }
        }
        stack.push(v);
        sig = (sig << 1) | 1;
    }
    sig
}
