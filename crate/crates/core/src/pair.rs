//! Canonical form of an input pair and match arithmetic.
//!
//! Both strings are rewritten over integer ranks `1..=sigma` and wrapped with
//! two sentinels: rank `1` in front, rank `sigma` at the end. Interior ranks
//! `2..sigma` enumerate the distinct symbols of `x ∘ y` in ascending order, so
//! rank comparison agrees with symbol comparison. All positions are 1-based.
//!
//! A string `z` is a maximal common subsequence of the original pair exactly
//! when `1 ∘ z' ∘ sigma` is one of the wrapped pair, where `z'` is `z` in ranks.

use crate::error::{McsError, Result};
use crate::nextprev::NextPrev;

/// Character rank in the canonical alphabet.
pub type Rank = u32;

/// Original symbol: a byte or a Unicode scalar value, widened to `u32`.
pub type Symbol = u32;

/// A grid point `(i, j)`.
///
/// Real matches satisfy `X[i] = Y[j]`. The same type doubles as a virtual
/// match whose coordinates may sit one past either string (or at `0`), which
/// is how `safe(Z')` and "not shared" answers are represented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Match {
    pub i: usize,
    pub j: usize,
}

/// A possibly virtual match. Same representation as [`Match`].
pub type VirtualMatch = Match;

impl Match {
    #[inline]
    pub const fn new(i: usize, j: usize) -> Self {
        Match { i, j }
    }

    /// Diagonal coordinate `j - i`.
    #[inline]
    pub fn diag(&self) -> isize {
        self.j as isize - self.i as isize
    }

    /// Anti-diagonal coordinate `i + j`.
    #[inline]
    pub fn anti(&self) -> usize {
        self.i + self.j
    }

    /// `self < other`: strictly smaller in both coordinates.
    #[inline]
    pub fn below(&self, other: &Match) -> bool {
        self.i < other.i && self.j < other.j
    }

    /// `self ≤ other` in both coordinates.
    #[inline]
    pub fn below_eq(&self, other: &Match) -> bool {
        self.i <= other.i && self.j <= other.j
    }

    /// `self ≤ other` and the two differ.
    #[inline]
    pub fn below_neq(&self, other: &Match) -> bool {
        self.below_eq(other) && self != other
    }
}

impl std::fmt::Display for Match {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// The wrapped, rank-encoded input pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalPair {
    // index 0 is padding so that xw[i] is the 1-based X[i]
    xw: Vec<Rank>,
    yw: Vec<Rank>,
    sigma: Rank,
    // char_of[r - 2] is the symbol with rank r, for 2 <= r < sigma
    alphabet: Vec<Symbol>,
}

/// Build the canonical pair of `x` and `y`.
///
/// Every input is legal: the sentinels are ranks, never in-band symbols.
pub fn canonicalize(x: &[Symbol], y: &[Symbol]) -> CanonicalPair {
    let mut alphabet: Vec<Symbol> = x.iter().chain(y.iter()).copied().collect();
    alphabet.sort_unstable();
    alphabet.dedup();
    let sigma = alphabet.len() as Rank + 2;

    let wrap = |s: &[Symbol]| {
        let mut w = Vec::with_capacity(s.len() + 3);
        w.push(0);
        w.push(1);
        for sym in s {
            let pos = alphabet.binary_search(sym).expect("symbol is in alphabet");
            w.push(pos as Rank + 2);
        }
        w.push(sigma);
        w
    };
    let xw = wrap(x);
    let yw = wrap(y);
    CanonicalPair {
        xw,
        yw,
        sigma,
        alphabet,
    }
}

impl CanonicalPair {
    pub fn from_bytes(x: &[u8], y: &[u8]) -> Self {
        let x: Vec<Symbol> = x.iter().map(|&b| b as Symbol).collect();
        let y: Vec<Symbol> = y.iter().map(|&b| b as Symbol).collect();
        canonicalize(&x, &y)
    }

    pub fn from_chars(x: &str, y: &str) -> Self {
        let x: Vec<Symbol> = x.chars().map(|c| c as Symbol).collect();
        let y: Vec<Symbol> = y.chars().map(|c| c as Symbol).collect();
        canonicalize(&x, &y)
    }

    /// `|X|` of the wrapped string (original length + 2).
    #[inline]
    pub fn x_len(&self) -> usize {
        self.xw.len() - 1
    }

    #[inline]
    pub fn y_len(&self) -> usize {
        self.yw.len() - 1
    }

    /// Number of ranks, sentinels included.
    #[inline]
    pub fn sigma(&self) -> Rank {
        self.sigma
    }

    /// `X[i]` for `1 <= i <= |X|`.
    #[inline]
    pub fn x(&self, i: usize) -> Rank {
        self.xw[i]
    }

    #[inline]
    pub fn y(&self, j: usize) -> Rank {
        self.yw[j]
    }

    /// The wrapped X as a plain slice (element 0 is `X[1]`).
    pub fn x_ranks(&self) -> &[Rank] {
        &self.xw[1..]
    }

    pub fn y_ranks(&self) -> &[Rank] {
        &self.yw[1..]
    }

    /// The sink match `(|X|, |Y|)`.
    #[inline]
    pub fn sink(&self) -> Match {
        Match::new(self.x_len(), self.y_len())
    }

    /// `(|X| + 1, |Y| + 1)`, the initial `safe` value and the empty-suffix start.
    #[inline]
    pub fn beyond(&self) -> Match {
        Match::new(self.x_len() + 1, self.y_len() + 1)
    }

    #[inline]
    pub fn is_match(&self, i: usize, j: usize) -> bool {
        (1..=self.x_len()).contains(&i) && (1..=self.y_len()).contains(&j) && self.xw[i] == self.yw[j]
    }

    /// Rank of an original symbol, if it occurs in either string.
    pub fn rank_of(&self, sym: Symbol) -> Option<Rank> {
        self.alphabet
            .binary_search(&sym)
            .ok()
            .map(|p| p as Rank + 2)
    }

    /// Original symbol of an interior rank.
    pub fn char_of(&self, rank: Rank) -> Option<Symbol> {
        if rank >= 2 && rank < self.sigma {
            Some(self.alphabet[(rank - 2) as usize])
        } else {
            None
        }
    }

    /// Rank-encode a string of original symbols; `None` if some symbol occurs
    /// in neither input (such a string cannot be common).
    pub fn encode(&self, z: &[Symbol]) -> Option<Vec<Rank>> {
        z.iter().map(|&s| self.rank_of(s)).collect()
    }

    /// Wrap an interior rank string with both sentinels.
    pub fn wrap(&self, interior: &[Rank]) -> Vec<Rank> {
        let mut w = Vec::with_capacity(interior.len() + 2);
        w.push(1);
        w.extend_from_slice(interior);
        w.push(self.sigma);
        w
    }

    /// Map a rank string back to original symbols, dropping sentinels.
    pub fn decanonicalize(&self, ranks: &[Rank]) -> Vec<Symbol> {
        ranks.iter().filter_map(|&r| self.char_of(r)).collect()
    }

    /// Render a rank string as text, treating symbols as code points
    /// (bytes map to Latin-1); sentinels are dropped.
    pub fn render(&self, ranks: &[Rank]) -> String {
        self.decanonicalize(ranks)
            .into_iter()
            .map(|s| char::from_u32(s).unwrap_or(char::REPLACEMENT_CHARACTER))
            .collect()
    }

    fn check_rank(&self, rank: Rank) -> Result<()> {
        if rank == 0 || rank > self.sigma {
            Err(McsError::InvalidRank {
                rank,
                sigma: self.sigma,
            })
        } else {
            Ok(())
        }
    }

    /// `pref(z)`, folded as `pref(z ∘ c) = next(c, pref(z))` from `(0, 0)`.
    ///
    /// When the pair does not share `z` the result has `i > |X|` or `j > |Y|`.
    pub fn pref_of<N: NextPrev + ?Sized>(&self, z: &[Rank], nv: &N) -> Result<VirtualMatch> {
        let mut w = Match::new(0, 0);
        for &c in z {
            self.check_rank(c)?;
            w = Match::new(
                if w.i > self.x_len() { w.i } else { nv.next_x(c, w.i) },
                if w.j > self.y_len() { w.j } else { nv.next_y(c, w.j) },
            );
        }
        Ok(w)
    }

    /// `suff(z)`, folded as `suff(c ∘ z) = prev(c, suff(z))` from `(|X|+1, |Y|+1)`.
    ///
    /// When the pair does not share `z` the result has a zero coordinate.
    pub fn suff_of<N: NextPrev + ?Sized>(&self, z: &[Rank], nv: &N) -> Result<VirtualMatch> {
        let mut w = self.beyond();
        for &c in z.iter().rev() {
            self.check_rank(c)?;
            w = Match::new(
                if w.i == 0 { 0 } else { nv.prev_x(c, w.i) },
                if w.j == 0 { 0 } else { nv.prev_y(c, w.j) },
            );
        }
        Ok(w)
    }

    /// Whether the pair shares `z` (`z` in ranks, sentinels optional).
    pub fn shares<N: NextPrev + ?Sized>(&self, z: &[Rank], nv: &N) -> Result<bool> {
        let p = self.pref_of(z, nv)?;
        Ok(p.i <= self.x_len() && p.j <= self.y_len())
    }

    /// `u ≺ v`: `u < v` and no match lies strictly inside the rectangle.
    ///
    /// Scans the shorter side of the rectangle with next-queries.
    pub fn immediately_precedes<N: NextPrev + ?Sized>(&self, u: Match, v: Match, nv: &N) -> bool {
        if !u.below(&v) {
            return false;
        }
        self.rectangle_is_empty(u, v, nv)
    }

    // No match w with u < w < v. Requires u.i < v.i and u.j < v.j.
    fn rectangle_is_empty<N: NextPrev + ?Sized>(&self, u: Match, v: Match, nv: &N) -> bool {
        if v.j - u.j <= v.i - u.i {
            ((u.j + 1)..v.j).all(|j| nv.next_x(self.y(j), u.i) >= v.i)
        } else {
            ((u.i + 1)..v.i).all(|i| nv.next_y(self.x(i), u.j) >= v.j)
        }
    }

    /// Maximality test: `interior` (no sentinels) is an MCS iff every cut `k`
    /// of the wrapped string has `pref(Z⟨k]) ≺ suff(Z[k+1⟩)`.
    ///
    /// Errors with [`McsError::NotCommon`] if the pair does not share it.
    pub fn is_maximal<N: NextPrev + ?Sized>(&self, interior: &[Rank], nv: &N) -> Result<bool> {
        let z = self.wrap(interior);
        if !self.shares(&z, nv)? {
            return Err(McsError::NotCommon);
        }
        let m = z.len();
        // prefs[k] = pref(Z⟨k]) for k = 1..m, suffs[k] = suff(Z[k⟩) for k = 1..m
        let mut prefs = Vec::with_capacity(m + 1);
        let mut w = Match::new(0, 0);
        prefs.push(w);
        for &c in &z {
            w = nv.next(c, w);
            prefs.push(w);
        }
        let mut suffs = vec![Match::default(); m + 2];
        let mut w = self.beyond();
        suffs[m + 1] = w;
        for k in (1..=m).rev() {
            w = nv.prev(z[k - 1], w);
            suffs[k] = w;
        }
        // Cuts 0 and m hold trivially: (0,0) ≺ (1,1) and (|X|,|Y|) ≺ beyond.
        for k in 1..m {
            let (u, v) = (prefs[k], suffs[k + 1]);
            if !u.below(&v) || !self.rectangle_is_empty(u, v, nv) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nextprev::NextPrevIndex;

    fn ranks(p: &CanonicalPair, s: &str) -> Vec<Rank> {
        s.chars()
            .map(|c| match c {
                '#' => 1,
                '$' => p.sigma(),
                c => p.rank_of(c as Symbol).unwrap(),
            })
            .collect()
    }

    #[test]
    fn f1_alphabet() {
        let p = CanonicalPair::from_chars("acbcded", "edeabcb");
        assert_eq!(p.sigma(), 7);
        assert_eq!(p.x_len(), 9);
        for (k, c) in "abcde".chars().enumerate() {
            assert_eq!(p.rank_of(c as Symbol), Some(k as Rank + 2));
        }
    }

    #[test]
    fn empty_inputs_are_only_sentinels() {
        let p = CanonicalPair::from_chars("", "");
        assert_eq!(p.sigma(), 2);
        assert_eq!(p.x_ranks(), &[1, 2]);
        assert_eq!(p.y_ranks(), &[1, 2]);
    }

    #[test]
    fn f3_rank_string() {
        let p = CanonicalPair::from_chars("dacabdacbcbdea", "acbabcdecaadab");
        assert_eq!(p.sigma(), 7);
        assert_eq!(
            p.x_ranks(),
            &[1, 5, 2, 4, 2, 3, 5, 2, 4, 3, 4, 3, 5, 6, 2, 7]
        );
    }

    #[test]
    fn sigma_bound() {
        let p = CanonicalPair::from_chars("abc", "xyz");
        assert!(p.sigma() as usize <= p.x_len() + p.y_len() - 2);
    }

    #[test]
    fn pref_and_suff_fixtures() {
        let p = CanonicalPair::from_chars("dacabdacbcbdea", "acbabcdecaadab");
        let nv = NextPrevIndex::build(&p);
        assert_eq!(p.pref_of(&ranks(&p, "#acabd"), &nv).unwrap(), Match::new(7, 8));
        assert_eq!(p.pref_of(&[], &nv).unwrap(), Match::new(0, 0));
        assert_eq!(p.suff_of(&ranks(&p, "a"), &nv).unwrap(), Match::new(15, 14));
        assert_eq!(p.suff_of(&[], &nv).unwrap(), p.beyond());

        let p2 = CanonicalPair::from_chars("acabba", "cbabcc");
        let nv2 = NextPrevIndex::build(&p2);
        let w = p2.pref_of(&ranks(&p2, "#acabba$"), &nv2).unwrap();
        assert_eq!(w.i, 8);
        assert!(w.j > 8);
        // b$ : last b in X is 6; the b before the final $ in Y is at 5
        assert_eq!(p2.suff_of(&ranks(&p2, "b$"), &nv2).unwrap(), Match::new(6, 5));
    }

    #[test]
    fn invalid_rank_is_rejected() {
        let p = CanonicalPair::from_chars("ab", "ba");
        let nv = NextPrevIndex::build(&p);
        assert!(matches!(
            p.pref_of(&[9], &nv),
            Err(McsError::InvalidRank { rank: 9, .. })
        ));
        assert!(p.suff_of(&[0], &nv).is_err());
    }

    #[test]
    fn precedes_fixtures() {
        let p = CanonicalPair::from_chars("acabba", "cbabcc");
        let nv = NextPrevIndex::build(&p);
        assert!(p.immediately_precedes(Match::new(1, 1), Match::new(2, 4), &nv));
        assert!(!p.immediately_precedes(Match::new(1, 1), Match::new(4, 4), &nv));
        assert!(p.is_match(3, 2));
        assert!(p.immediately_precedes(Match::new(3, 2), Match::new(5, 3), &nv));
        // adjacent diagonal cells have an empty interior
        assert!(p.immediately_precedes(Match::new(4, 4), Match::new(5, 5), &nv));
    }

    #[test]
    fn maximality_f1() {
        let p = CanonicalPair::from_chars("acbcded", "edeabcb");
        let nv = NextPrevIndex::build(&p);
        let check = |s: &str| p.is_maximal(&ranks(&p, s), &nv);
        assert_eq!(check("abc"), Ok(true));
        assert_eq!(check("acb"), Ok(true));
        assert_eq!(check("ab"), Ok(false));
        assert_eq!(check("de"), Ok(true));
        assert_eq!(check("ed"), Ok(true));
        assert_eq!(check("d"), Ok(false));
        assert_eq!(check("aa"), Err(McsError::NotCommon));
    }

    #[test]
    fn whole_string_is_maximal_against_itself() {
        let p = CanonicalPair::from_chars("abcab", "abcab");
        let nv = NextPrevIndex::build(&p);
        let z: Vec<Rank> = p.x_ranks()[1..p.x_len() - 1].to_vec();
        assert_eq!(p.is_maximal(&z, &nv), Ok(true));
    }

    #[test]
    fn decanonicalize_round_trip() {
        let p = CanonicalPair::from_chars("hello", "world");
        let z = p.x_ranks();
        let back: String = p
            .decanonicalize(z)
            .into_iter()
            .map(|s| char::from_u32(s).unwrap())
            .collect();
        assert_eq!(back, "hello");
    }
}
