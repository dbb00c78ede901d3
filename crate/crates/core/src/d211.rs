//! Linear-space ext-query structure.
//!
//! Matches of one character `c` are grouped by their character-wise diagonal
//! `d̂ = ĵ - î`, where `î` and `ĵ` count occurrences of `c` up to the match.
//! Along such a group the suff-matches form a prefix in `î`, so one threshold
//! per `(c, d̂)` decides membership. Witness candidates are located by binary
//! search with range-max over the thresholds.

use crate::error::Result;
use crate::nextprev::{NextPrev, NextPrevIndex, Side};
use crate::pair::{CanonicalPair, Match, Rank, VirtualMatch};
use crate::prefixext::{ExtProvider, Witness};
use crate::rmq::{RangeMax, RmqBacking};
use crate::suffmatch::{stream_suff_matches, RowStep};

/// Occurrence counts of each position's own character.
#[derive(Debug, Clone)]
pub struct CharwiseCoords {
    // ihat[i] for 1 <= i <= |X|; index 0 unused
    ihat: Vec<u32>,
    jhat: Vec<u32>,
}

impl CharwiseCoords {
    pub fn build(p: &CanonicalPair) -> Self {
        let sigma = p.sigma() as usize;
        let count = |w: &[Rank]| {
            let mut seen = vec![0u32; sigma + 1];
            let mut hat = Vec::with_capacity(w.len() + 1);
            hat.push(0);
            for &c in w {
                seen[c as usize] += 1;
                hat.push(seen[c as usize]);
            }
            hat
        };
        CharwiseCoords {
            ihat: count(p.x_ranks()),
            jhat: count(p.y_ranks()),
        }
    }

    #[inline]
    pub fn ihat(&self, i: usize) -> usize {
        self.ihat[i] as usize
    }

    #[inline]
    pub fn jhat(&self, j: usize) -> usize {
        self.jhat[j] as usize
    }

    pub fn words(&self) -> usize {
        (self.ihat.len() + self.jhat.len()) / 2
    }
}

#[derive(Debug, Clone)]
pub struct D211 {
    pair: CanonicalPair,
    index: NextPrevIndex,
    coords: CharwiseCoords,
    // thresholds of rank c live at offset[c]..offset[c + 1]
    offset: Vec<u32>,
    ith: RangeMax<u32>,
    jth: RangeMax<u32>,
}

impl D211 {
    pub fn build(p: &CanonicalPair) -> Result<Self> {
        Self::build_with(p, RmqBacking::Block)
    }

    pub fn build_with(p: &CanonicalPair, backing: RmqBacking) -> Result<Self> {
        let index = NextPrevIndex::build(p);
        let coords = CharwiseCoords::build(p);
        let sigma = p.sigma();

        let mut offset = Vec::with_capacity(sigma as usize + 2);
        offset.push(0u32);
        offset.push(0u32);
        for c in 1..=sigma {
            let len = seg_len(&index, c);
            offset.push(offset[c as usize] + len as u32);
        }
        let total = *offset.last().unwrap() as usize;

        // virtual thresholds (max(0, -d̂), max(0, d̂))
        let mut ith = vec![0u32; total];
        let mut jth = vec![0u32; total];
        for c in 1..=sigma {
            let nx = index.positions(Side::X, c).len() as i64;
            let base = offset[c as usize] as usize;
            for k in 0..seg_len(&index, c) {
                let d = k as i64 + 1 - nx;
                ith[base + k] = (-d).max(0) as u32;
                jth[base + k] = d.max(0) as u32;
            }
        }

        stream_suff_matches(p, RowStep::Tableless, |v| {
            let c = p.x(v.i);
            let (ih, jh) = (coords.ihat(v.i), coords.jhat(v.j));
            let nx = index.positions(Side::X, c).len();
            let k = offset[c as usize] as usize + jh + nx - ih - 1;
            ith[k] = ith[k].max(ih as u32);
            jth[k] = jth[k].max(jh as u32);
        })?;

        Ok(D211 {
            pair: p.clone(),
            index,
            coords,
            offset,
            ith: RangeMax::build(&ith, backing)?,
            jth: RangeMax::build(&jth, backing)?,
        })
    }

    pub fn pair(&self) -> &CanonicalPair {
        &self.pair
    }

    /// The position-list index the structure queries; also what the driver
    /// should use for `pref` and `safe` updates.
    pub fn index(&self) -> &NextPrevIndex {
        &self.index
    }

    pub fn coords(&self) -> &CharwiseCoords {
        &self.coords
    }

    fn nx(&self, c: Rank) -> usize {
        self.index.positions(Side::X, c).len()
    }

    // 1-based flat position of (c, d̂)
    #[inline]
    fn slot(&self, c: Rank, d: i64) -> usize {
        (self.offset[c as usize] as i64 + d + self.nx(c) as i64) as usize
    }

    /// `(Î^th_c, Ĵ^th_c)` indexed by `d̂ + #_{X,c}` (element 0 holds `d̂ = 1 - #_{X,c}`).
    pub fn thresholds(&self, c: Rank) -> (Vec<u32>, Vec<u32>) {
        let lo = self.offset[c as usize] as usize + 1;
        let hi = self.offset[c as usize + 1] as usize;
        ((lo..=hi).map(|k| self.ith.get(k)).collect(), (lo..=hi).map(|k| self.jth.get(k)).collect())
    }

    /// Whether the match `w` is a suff-match.
    pub fn is_suff_match(&self, w: Match) -> bool {
        let c = self.pair.x(w.i);
        debug_assert_eq!(c, self.pair.y(w.j));
        let (ih, jh) = (self.coords.ihat(w.i), self.coords.jhat(w.j));
        ih as u32 <= self.ith.get(self.slot(c, jh as i64 - ih as i64))
    }

    /// `pref(Z'∘c)` for every extensible-character candidate, ascending in `j`.
    ///
    /// Returns the number of next-queries spent.
    pub fn candidate_sequence(&self, pref: Match, out: &mut Vec<Match>) -> usize {
        let p = &self.pair;
        let (n, m) = (p.x_len(), p.y_len());
        let nv = &self.index;
        let start = out.len();
        let mut back: Vec<Match> = Vec::new();
        let mut front = Match::new(n + 1, pref.j);
        let mut rear = Match::new(pref.i, m + 1);
        let mut queries = 0;
        loop {
            let found = if front.anti() >= rear.anti() {
                let hit = (front.j + 1..rear.j).find_map(|j| {
                    queries += 1;
                    let i = nv.next_x(p.y(j), pref.i);
                    (i < front.i).then_some(Match::new(i, j))
                });
                hit.map(|w| {
                    out.push(w);
                    front = w;
                })
            } else {
                let hit = (rear.i + 1..front.i).find_map(|i| {
                    queries += 1;
                    let j = nv.next_y(p.x(i), pref.j);
                    (j < rear.j).then_some(Match::new(i, j))
                });
                hit.map(|w| {
                    back.push(w);
                    rear = w;
                })
            };
            if found.is_none() {
                break;
            }
        }
        out.extend(back.into_iter().rev());
        debug_assert!(out[start..].windows(2).all(|w| w[0].j < w[1].j && w[0].i > w[1].i));
        queries
    }

    /// The prominent witness candidates for rank `c` (at most two, deduplicated).
    pub fn witness_candidates(&self, c: Rank, pref_c: Match, safe: VirtualMatch, out: &mut Vec<Match>) {
        let (n, m) = (self.pair.x_len(), self.pair.y_len());
        let left = if pref_c.i <= safe.i.min(n) {
            self.search_row(c, pref_c, safe.j.min(m))
        } else {
            None
        };
        let up = if pref_c.j <= safe.j.min(m) {
            self.search_column(c, pref_c, safe.i.min(n))
        } else {
            None
        };
        out.extend(left);
        if up != left {
            out.extend(up);
        }
    }

    // Least j in [pref_c.j, j_hi] with (pref_c.i, j) a suff-match.
    fn search_row(&self, c: Rank, pref_c: Match, j_hi: usize) -> Option<Match> {
        let ys = self.index.positions(Side::Y, c);
        let i0 = self.coords.ihat(pref_c.i) as i64;
        let mut lo = self.coords.jhat(pref_c.j);
        let mut hi = ys.partition_point(|&j| j as usize <= j_hi);
        let slot = |jh: usize| self.slot(c, jh as i64 - i0);
        let hit = |a: usize, b: usize| self.ith.max_value(slot(a), slot(b)) as i64 >= i0;
        if lo > hi || !hit(lo, hi) {
            return None;
        }
        while lo < hi {
            let mid = (lo + hi) / 2;
            if hit(lo, mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Some(Match::new(pref_c.i, ys[lo - 1] as usize))
    }

    // Least i in [pref_c.i, i_hi] with (i, pref_c.j) a suff-match.
    fn search_column(&self, c: Rank, pref_c: Match, i_hi: usize) -> Option<Match> {
        let xs = self.index.positions(Side::X, c);
        let j0 = self.coords.jhat(pref_c.j) as i64;
        let mut lo = self.coords.ihat(pref_c.i);
        let mut hi = xs.partition_point(|&i| i as usize <= i_hi);
        let slot = |ih: usize| self.slot(c, j0 - ih as i64);
        // larger î means smaller d̂, so the slot range runs backwards
        let hit = |a: usize, b: usize| self.jth.max_value(slot(b), slot(a)) as i64 >= j0;
        if lo > hi || !hit(lo, hi) {
            return None;
        }
        while lo < hi {
            let mid = (lo + hi) / 2;
            if hit(lo, mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Some(Match::new(xs[lo - 1] as usize, pref_c.j))
    }

    /// Prominent witnesses for the frame; returns elementary steps spent.
    pub fn ext_query(&self, pref: Match, safe: VirtualMatch, out: &mut Vec<Witness>) -> usize {
        let mut seq = Vec::new();
        let mut steps = self.candidate_sequence(pref, &mut seq);
        let mut cand = Vec::with_capacity(2);
        for (r, &w) in seq.iter().enumerate() {
            let c = self.pair.x(w.i);
            cand.clear();
            self.witness_candidates(c, w, safe, &mut cand);
            steps += 1;
            for &v in &cand {
                let before = r > 0 && seq[r - 1].below(&v);
                let after = r + 1 < seq.len() && seq[r + 1].below(&v);
                if !before && !after {
                    out.push(Witness { rank: c, at: v });
                }
            }
        }
        steps
    }

    pub fn words(&self) -> usize {
        self.index.words() + self.coords.words() + self.offset.len() + self.ith.words() + self.jth.words()
    }
}

fn seg_len(index: &NextPrevIndex, c: Rank) -> usize {
    let nx = index.positions(Side::X, c).len();
    let ny = index.positions(Side::Y, c).len();
    if nx == 0 || ny == 0 {
        0
    } else {
        nx + ny - 1
    }
}

impl ExtProvider for D211 {
    fn ext(&self, pref: Match, safe: VirtualMatch, out: &mut Vec<Witness>) -> Result<usize> {
        Ok(self.ext_query(pref, safe, out))
    }
}
