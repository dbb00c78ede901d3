//! next/prev queries over the wrapped strings.
//!
//! `next_W(c, h)` is the least `h' > h` with `W[h'] = c`, else `|W| + 1`;
//! `prev_W(c, h)` is the greatest `h' < h` with `W[h'] = c`, else `0`.
//! Queries accept `0 <= h <= |W| + 1`; the two outer positions are the
//! start/end states used by prefix and suffix folds.
//!
//! Two backings answer identically: a full lookup table (`O(σ n)` words,
//! `O(1)` queries) and per-rank position lists (`O(n)` words, binary search).

use crate::error::{McsError, Result};
use crate::pair::{CanonicalPair, Match, Rank};

/// Which of the two strings a query addresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

pub trait NextPrev {
    fn len_of(&self, side: Side) -> usize;
    fn next_in(&self, side: Side, c: Rank, h: usize) -> usize;
    fn prev_in(&self, side: Side, c: Rank, h: usize) -> usize;

    #[inline]
    fn next_x(&self, c: Rank, h: usize) -> usize {
        self.next_in(Side::X, c, h)
    }
    #[inline]
    fn prev_x(&self, c: Rank, h: usize) -> usize {
        self.prev_in(Side::X, c, h)
    }
    #[inline]
    fn next_y(&self, c: Rank, h: usize) -> usize {
        self.next_in(Side::Y, c, h)
    }
    #[inline]
    fn prev_y(&self, c: Rank, h: usize) -> usize {
        self.prev_in(Side::Y, c, h)
    }

    /// `next(c, w) = (next_X(c, i_w), next_Y(c, j_w))`; may be virtual.
    #[inline]
    fn next(&self, c: Rank, w: Match) -> Match {
        Match::new(self.next_x(c, w.i), self.next_y(c, w.j))
    }

    /// `prev(c, w) = (prev_X(c, i_w), prev_Y(c, j_w))`; may be virtual.
    #[inline]
    fn prev(&self, c: Rank, w: Match) -> Match {
        Match::new(self.prev_x(c, w.i), self.prev_y(c, w.j))
    }

    /// Bounds-checked `next_W(c, h)`.
    fn checked_next(&self, side: Side, c: Rank, h: usize) -> Result<usize> {
        self.check(side, h)?;
        Ok(self.next_in(side, c, h))
    }

    /// Bounds-checked `prev_W(c, h)`.
    fn checked_prev(&self, side: Side, c: Rank, h: usize) -> Result<usize> {
        self.check(side, h)?;
        Ok(self.prev_in(side, c, h))
    }

    #[doc(hidden)]
    fn check(&self, side: Side, h: usize) -> Result<()> {
        let hi = self.len_of(side) + 1;
        if h > hi {
            Err(McsError::IndexOutOfRange { index: h, lo: 0, hi })
        } else {
            Ok(())
        }
    }
}

/// Lookup-table backing: every answer precomputed.
#[derive(Debug, Clone)]
pub struct NextPrevTable {
    x: SideTable,
    y: SideTable,
}

#[derive(Debug, Clone)]
struct SideTable {
    len: usize,
    sigma: usize,
    // next[c * (len + 2) + h], prev likewise; rank 0 rows are unused
    next: Vec<u32>,
    prev: Vec<u32>,
}

impl SideTable {
    fn build(w: &[Rank], sigma: Rank) -> Self {
        let len = w.len();
        let sigma = sigma as usize;
        let stride = len + 2;
        let mut next = vec![0u32; (sigma + 1) * stride];
        let mut prev = vec![0u32; (sigma + 1) * stride];
        for c in 1..=sigma {
            let row = c * stride;
            let mut nxt = (len + 1) as u32;
            next[row + len + 1] = nxt;
            for h in (0..=len).rev() {
                next[row + h] = nxt;
                if h >= 1 && w[h - 1] as usize == c {
                    nxt = h as u32;
                }
            }
            let mut prv = 0u32;
            prev[row] = 0;
            for h in 1..=len + 1 {
                prev[row + h] = prv;
                if h <= len && w[h - 1] as usize == c {
                    prv = h as u32;
                }
            }
        }
        SideTable {
            len,
            sigma,
            next,
            prev,
        }
    }

    #[inline]
    fn slot(&self, c: Rank, h: usize) -> Option<usize> {
        let c = c as usize;
        debug_assert!(h <= self.len + 1, "query position {h} beyond {}", self.len + 1);
        if c == 0 || c > self.sigma {
            None
        } else {
            Some(c * (self.len + 2) + h)
        }
    }
}

impl NextPrevTable {
    pub fn build(p: &CanonicalPair) -> Self {
        NextPrevTable {
            x: SideTable::build(p.x_ranks(), p.sigma()),
            y: SideTable::build(p.y_ranks(), p.sigma()),
        }
    }

    fn side(&self, side: Side) -> &SideTable {
        match side {
            Side::X => &self.x,
            Side::Y => &self.y,
        }
    }

    /// Words held by the table.
    pub fn words(&self) -> usize {
        (self.x.next.len() + self.x.prev.len() + self.y.next.len() + self.y.prev.len()) / 2
    }
}

impl NextPrev for NextPrevTable {
    #[inline]
    fn len_of(&self, side: Side) -> usize {
        self.side(side).len
    }

    #[inline]
    fn next_in(&self, side: Side, c: Rank, h: usize) -> usize {
        let t = self.side(side);
        match t.slot(c, h) {
            Some(s) => t.next[s] as usize,
            None => t.len + 1,
        }
    }

    #[inline]
    fn prev_in(&self, side: Side, c: Rank, h: usize) -> usize {
        let t = self.side(side);
        match t.slot(c, h) {
            Some(s) => t.prev[s] as usize,
            None => 0,
        }
    }
}

/// Position-list backing: ascending occurrence lists per rank.
#[derive(Debug, Clone)]
pub struct NextPrevIndex {
    x: SideIndex,
    y: SideIndex,
}

#[derive(Debug, Clone)]
struct SideIndex {
    len: usize,
    // positions of rank c are occ[start[c]..start[c + 1]]
    start: Vec<u32>,
    occ: Vec<u32>,
}

impl SideIndex {
    fn build(w: &[Rank], sigma: Rank) -> Self {
        let sigma = sigma as usize;
        let mut start = vec![0u32; sigma + 2];
        for &c in w {
            start[c as usize + 1] += 1;
        }
        for c in 1..start.len() {
            start[c] += start[c - 1];
        }
        let mut fill = start.clone();
        let mut occ = vec![0u32; w.len()];
        for (h, &c) in w.iter().enumerate() {
            occ[fill[c as usize] as usize] = h as u32 + 1;
            fill[c as usize] += 1;
        }
        SideIndex {
            len: w.len(),
            start,
            occ,
        }
    }

    #[inline]
    fn positions(&self, c: Rank) -> &[u32] {
        let c = c as usize;
        if c + 1 >= self.start.len() {
            return &[];
        }
        &self.occ[self.start[c] as usize..self.start[c + 1] as usize]
    }
}

impl NextPrevIndex {
    pub fn build(p: &CanonicalPair) -> Self {
        NextPrevIndex {
            x: SideIndex::build(p.x_ranks(), p.sigma()),
            y: SideIndex::build(p.y_ranks(), p.sigma()),
        }
    }

    fn side(&self, side: Side) -> &SideIndex {
        match side {
            Side::X => &self.x,
            Side::Y => &self.y,
        }
    }

    /// Ascending positions `h` with `W[h] = c`.
    pub fn positions(&self, side: Side, c: Rank) -> &[u32] {
        self.side(side).positions(c)
    }

    pub fn words(&self) -> usize {
        (self.x.start.len() + self.x.occ.len() + self.y.start.len() + self.y.occ.len()) / 2
    }
}

impl NextPrev for NextPrevIndex {
    #[inline]
    fn len_of(&self, side: Side) -> usize {
        self.side(side).len
    }

    #[inline]
    fn next_in(&self, side: Side, c: Rank, h: usize) -> usize {
        let s = self.side(side);
        debug_assert!(h <= s.len + 1);
        let pos = s.positions(c);
        let k = pos.partition_point(|&p| (p as usize) <= h);
        pos.get(k).map_or(s.len + 1, |&p| p as usize)
    }

    #[inline]
    fn prev_in(&self, side: Side, c: Rank, h: usize) -> usize {
        let s = self.side(side);
        debug_assert!(h <= s.len + 1);
        let pos = s.positions(c);
        let k = pos.partition_point(|&p| (p as usize) < h);
        if k == 0 {
            0
        } else {
            pos[k - 1] as usize
        }
    }
}
