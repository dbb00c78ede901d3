//! Suff-match rows.
//!
//! `Suff_i[j]` is the least `i' >= i` such that `(i', j)` is a suff-match,
//! else `|X| + 1`. Rows are produced from `|X|` down to `1`; each step keeps
//! the previous row and overwrites the entries whose column gains a suff-match
//! on row `i`.

use crate::error::{McsError, Result};
use crate::nextprev::{NextPrev, NextPrevTable};
use crate::pair::{CanonicalPair, Match};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffRow {
    i: usize,
    values: Vec<u32>,
}

impl SuffRow {
    pub fn row_index(&self) -> usize {
        self.i
    }

    /// `Suff_i[j]` for `1 <= j <= |Y|`.
    #[inline]
    pub fn get(&self, j: usize) -> usize {
        self.values[j - 1] as usize
    }

    /// Row contents, element 0 holding column 1.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    /// Columns `j` where `(i, j)` itself is a suff-match.
    pub fn matches_on_row(&self) -> impl Iterator<Item = Match> + '_ {
        let i = self.i;
        self.values
            .iter()
            .enumerate()
            .filter(move |(_, &v)| v as usize == i)
            .map(move |(k, _)| Match::new(i, k + 1))
    }
}

/// `Suff_{|X|}`: all `|X| + 1` except the last column, which is `|X|`.
pub fn initial_row(p: &CanonicalPair) -> SuffRow {
    let (n, m) = (p.x_len(), p.y_len());
    let mut values = vec![(n + 1) as u32; m];
    values[m - 1] = n as u32;
    SuffRow { i: n, values }
}

fn check_step(p: &CanonicalPair, i: usize, prev: &SuffRow) -> Result<()> {
    if i == 0 || i >= p.x_len() {
        return Err(McsError::IndexOutOfRange {
            index: i,
            lo: 1,
            hi: p.x_len() - 1,
        });
    }
    if prev.i != i + 1 || prev.values.len() != p.y_len() {
        return Err(McsError::Inconsistent(format!(
            "expected row {} of length {}, got row {} of length {}",
            i + 1,
            p.y_len(),
            prev.i,
            prev.values.len()
        )));
    }
    Ok(())
}

/// `Suff_i` from `Suff_{i+1}` with next/prev queries.
///
/// `(i, j')` is a suff-match iff some column `j > j'` has a suff-match
/// `(i'', j)` on a later row with `prev_Y(X[i], j) = j'` and
/// `prev_X(X[i], i'') = i`.
pub fn update_suff<N: NextPrev + ?Sized>(p: &CanonicalPair, i: usize, prev: &SuffRow, nv: &N) -> Result<SuffRow> {
    check_step(p, i, prev)?;
    let none = (p.x_len() + 1) as u32;
    let c = p.x(i);
    let mut values = prev.values.clone();
    for j in 1..=p.y_len() {
        let below = prev.values[j - 1];
        if below == none {
            continue;
        }
        let jp = nv.prev_y(c, j);
        if jp >= 1 && nv.prev_x(c, below as usize) == i {
            values[jp - 1] = i as u32;
        }
    }
    Ok(SuffRow { i, values })
}

/// `Suff_i` from `Suff_{i+1}` without any lookup structure.
///
/// `next_X(X[i], i)` is found by one scan of `X[i+1..]`, and `prev_Y(X[i], j)`
/// is carried along the column loop.
pub fn update_suff2(p: &CanonicalPair, i: usize, prev: &SuffRow) -> Result<SuffRow> {
    let mut values = prev.values.clone();
    update_suff2_into(p, i, prev, &mut values)?;
    Ok(SuffRow { i, values })
}

// Writes Suff_i into `out`, which must start as a copy of `prev`.
fn update_suff2_into(p: &CanonicalPair, i: usize, prev: &SuffRow, out: &mut [u32]) -> Result<()> {
    check_step(p, i, prev)?;
    let n = p.x_len();
    let none = (n + 1) as u32;
    let c = p.x(i);
    let i_next = ((i + 1)..=n).find(|&h| p.x(h) == c).unwrap_or(n + 1) as u32;
    let mut j_prev = 0usize;
    for j in 1..=p.y_len() {
        let below = prev.values[j - 1];
        if below != none && j_prev >= 1 && below <= i_next {
            out[j_prev - 1] = i as u32;
        }
        if p.y(j) == c {
            j_prev = j;
        }
    }
    Ok(())
}

/// How rows are stepped.
#[derive(Debug, Clone, Copy)]
pub enum RowStep<'a> {
    /// [`update_suff`] over a prebuilt table.
    Table(&'a NextPrevTable),
    /// [`update_suff2`]; only two rows are resident.
    Tableless,
}

/// Fold over all rows from `|X|` down to `1`, handing each finished row to `f`.
pub fn for_each_row(p: &CanonicalPair, step: RowStep<'_>, mut f: impl FnMut(&SuffRow)) -> Result<()> {
    let mut cur = initial_row(p);
    f(&cur);
    let mut scratch = cur.values.clone();
    for i in (1..p.x_len()).rev() {
        match step {
            RowStep::Table(t) => cur = update_suff(p, i, &cur, t)?,
            RowStep::Tableless => {
                scratch.copy_from_slice(&cur.values);
                update_suff2_into(p, i, &cur, &mut scratch)?;
                std::mem::swap(&mut cur.values, &mut scratch);
                cur.i = i;
            }
        }
        f(&cur);
    }
    Ok(())
}

/// Visit every suff-match once, rows in descending `i`, columns ascending.
pub fn stream_suff_matches(p: &CanonicalPair, step: RowStep<'_>, mut visit: impl FnMut(Match)) -> Result<()> {
    for_each_row(p, step, |row| row.matches_on_row().for_each(&mut visit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use std::collections::BTreeSet;

    fn f3() -> CanonicalPair {
        CanonicalPair::from_chars("dacabdacbcbdea", "acbabcdecaadab")
    }

    const F3_ROW8: [u32; 16] = [17, 8, 9, 10, 8, 10, 9, 13, 14, 11, 17, 8, 13, 8, 12, 16];

    #[test]
    fn initial_rows() {
        let row = initial_row(&f3());
        let mut want = vec![17u32; 15];
        want.push(16);
        assert_eq!(row.values(), &want[..]);
        let f2 = CanonicalPair::from_chars("acabba", "cbabcc");
        assert_eq!(initial_row(&f2).values(), &[9, 9, 9, 9, 9, 9, 9, 8]);
        let e = CanonicalPair::from_chars("", "");
        assert_eq!(initial_row(&e).values(), &[3, 2]);
    }

    #[test]
    fn f3_row_eight_both_procedures() {
        let p = f3();
        let t = NextPrevTable::build(&p);
        let mut a = initial_row(&p);
        let mut b = initial_row(&p);
        for i in (8..p.x_len()).rev() {
            a = update_suff(&p, i, &a, &t).unwrap();
            b = update_suff2(&p, i, &b).unwrap();
            assert_eq!(a, b, "row {i}");
        }
        assert_eq!(a.values(), &F3_ROW8);
    }

    #[test]
    fn absent_character_row_is_unchanged() {
        // 'z' occurs in X only
        let p = CanonicalPair::from_chars("abzab", "abab");
        let t = NextPrevTable::build(&p);
        let mut row = initial_row(&p);
        for i in (5..p.x_len()).rev() {
            row = update_suff(&p, i, &row, &t).unwrap();
        }
        assert_eq!(p.x(4), p.rank_of('z' as u32).unwrap());
        let next = update_suff(&p, 4, &row, &t).unwrap();
        assert_eq!(next.values(), row.values());
        assert_eq!(update_suff2(&p, 4, &row).unwrap().values(), row.values());
    }

    #[test]
    fn step_rejects_bad_rows() {
        let p = f3();
        let t = NextPrevTable::build(&p);
        let row = initial_row(&p);
        assert!(update_suff(&p, p.x_len(), &row, &t).is_err());
        assert!(update_suff(&p, 0, &row, &t).is_err());
        assert!(matches!(update_suff2(&p, 3, &row), Err(McsError::Inconsistent(_))));
    }

    #[test]
    fn f3_stream_contains_witnesses() {
        let p = f3();
        let mut seen = BTreeSet::new();
        stream_suff_matches(&p, RowStep::Tableless, |w| {
            assert!(seen.insert(w), "{w} visited twice");
        })
        .unwrap();
        for w in [(8, 12), (8, 14), (11, 10), (15, 14), (16, 16)] {
            assert!(seen.contains(&Match::new(w.0, w.1)), "{w:?}");
        }
        assert_eq!(seen, oracle::suff_matches_bruteforce(&p).unwrap());
    }

    #[test]
    fn unary_alphabet_rows_match_oracle() {
        let p = CanonicalPair::from_chars("aaaaa", "aaaaa");
        let t = NextPrevTable::build(&p);
        let mut by_table = BTreeSet::new();
        let mut tableless = BTreeSet::new();
        stream_suff_matches(&p, RowStep::Table(&t), |w| {
            by_table.insert(w);
        })
        .unwrap();
        stream_suff_matches(&p, RowStep::Tableless, |w| {
            tableless.insert(w);
        })
        .unwrap();
        assert_eq!(by_table, tableless);
        assert_eq!(by_table, oracle::suff_matches_bruteforce(&p).unwrap());
        assert!(by_table.contains(&Match::new(6, 6)));
    }
}
