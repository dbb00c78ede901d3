//! Quadratic-space ext-query structure: every suff row plus an RMQ per row.
//!
//! For a frame with `pref` and `safe`, the prominent witnesses sit on row
//! `i = i_pref + 1`: repeatedly take the leftmost minimum of `Suff_i` over a
//! shrinking column range and stop as soon as it leaves the `safe` box. Each
//! reported witness costs one RMQ call.

use crate::error::{McsError, Result};
use crate::nextprev::NextPrevTable;
use crate::pair::{CanonicalPair, Match, VirtualMatch};
use crate::prefixext::{ExtProvider, Witness};
use crate::rmq::{Rmq, RmqBacking};
use crate::suffmatch::{for_each_row, RowStep};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct D221Config {
    /// Per-row RMQ backing; the sparse table costs an extra log factor.
    pub row_backing: RmqBacking,
    /// Upper bound on stored row entries (`|X| * |Y|`).
    pub max_cells: usize,
}

impl Default for D221Config {
    fn default() -> Self {
        D221Config {
            row_backing: RmqBacking::Block,
            max_cells: 1 << 30,
        }
    }
}

#[derive(Debug, Clone)]
pub struct D221 {
    pair: CanonicalPair,
    // rows[i - 1] is the RMQ over Suff_i (which also owns the row values)
    rows: Vec<Rmq<u32>>,
}

impl D221 {
    pub fn build(p: &CanonicalPair, table: &NextPrevTable) -> Result<Self> {
        Self::build_with(p, table, D221Config::default())
    }

    pub fn build_with(p: &CanonicalPair, table: &NextPrevTable, config: D221Config) -> Result<Self> {
        let cells = p.x_len() * p.y_len();
        if cells > config.max_cells {
            return Err(McsError::ResourceLimit {
                what: "D221 row cells",
                needed: cells,
                limit: config.max_cells,
            });
        }
        let mut rows: Vec<Option<Rmq<u32>>> = (0..p.x_len()).map(|_| None).collect();
        let mut err = None;
        for_each_row(p, RowStep::Table(table), |row| {
            match Rmq::build(row.values(), config.row_backing) {
                Ok(r) => rows[row.row_index() - 1] = Some(r),
                Err(e) => err = Some(e),
            }
        })?;
        if let Some(e) = err {
            return Err(e);
        }
        Ok(D221 {
            pair: p.clone(),
            rows: rows.into_iter().map(|r| r.expect("every row visited")).collect(),
        })
    }

    /// `Suff_i[j]`.
    pub fn suff(&self, i: usize, j: usize) -> usize {
        self.rows[i - 1].get(j) as usize
    }

    /// Row `Suff_i` as a vector.
    pub fn row(&self, i: usize) -> Vec<u32> {
        let r = &self.rows[i - 1];
        (1..=r.len()).map(|j| r.get(j)).collect()
    }

    /// Prominent witnesses for the frame, in descending `j` (ascending `i`).
    ///
    /// Appends to `out` and returns the number of RMQ calls made.
    pub fn ext_query(&self, pref: Match, safe: VirtualMatch, out: &mut Vec<Witness>) -> usize {
        let (n, m) = (self.pair.x_len(), self.pair.y_len());
        let i = pref.i + 1;
        if i > n {
            return 0;
        }
        let lo = pref.j + 1;
        let mut hi = safe.j.min(m);
        let bound = safe.i.min(n);
        let row = &self.rows[i - 1];
        let mut calls = 0;
        let mut last = 0usize;
        while lo <= hi {
            let j = row.query(lo, hi);
            calls += 1;
            let v = row.get(j) as usize;
            if v > bound {
                break;
            }
            debug_assert!(v > last, "witness rows must increase along the staircase");
            last = v;
            out.push(Witness {
                rank: self.pair.x(v),
                at: Match::new(v, j),
            });
            hi = j - 1;
        }
        calls
    }

    pub fn words(&self) -> usize {
        self.rows.iter().map(|r| r.words()).sum()
    }
}

impl ExtProvider for D221 {
    fn ext(&self, pref: Match, safe: VirtualMatch, out: &mut Vec<Witness>) -> Result<usize> {
        Ok(self.ext_query(pref, safe, out))
    }
}
