//! Brute-force ground truth for small inputs.
//!
//! Everything here is computed from definitions with naive scans over the
//! wrapped strings. Nothing calls into the production query structures, so the
//! differential tests comparing the two are meaningful.

use std::collections::{BTreeSet, HashSet};

use crate::error::{McsError, Result};
use crate::pair::{CanonicalPair, Match, Rank};

/// Default bound on `|X| + |Y|` (wrapped lengths).
pub const DEFAULT_CAP: usize = 28;

fn check_cap(p: &CanonicalPair, cap: usize) -> Result<()> {
    let needed = p.x_len() + p.y_len();
    if needed > cap {
        Err(McsError::ResourceLimit {
            what: "oracle input length",
            needed,
            limit: cap,
        })
    } else {
        Ok(())
    }
}

fn is_subsequence(hay: &[Rank], z: &[Rank]) -> bool {
    let mut it = hay.iter();
    z.iter().all(|c| it.any(|h| h == c))
}

/// Shortest prefix of `w` containing `z` as a subsequence; `w.len() + 1` if none.
fn shortest_prefix(w: &[Rank], z: &[Rank]) -> usize {
    let mut k = 0;
    for (h, &c) in w.iter().enumerate() {
        if k == z.len() {
            break;
        }
        if c == z[k] {
            k += 1;
            if k == z.len() {
                return h + 1;
            }
        }
    }
    if z.is_empty() {
        0
    } else {
        w.len() + 1
    }
}

/// Start of the shortest suffix of `w` containing `z`; `0` if none.
fn shortest_suffix(w: &[Rank], z: &[Rank]) -> usize {
    if z.is_empty() {
        return w.len() + 1;
    }
    let mut k = z.len();
    for h in (0..w.len()).rev() {
        if w[h] == z[k - 1] {
            k -= 1;
            if k == 0 {
                return h + 1;
            }
        }
    }
    0
}

/// `pref(z)` by scanning prefixes.
pub fn pref_naive(p: &CanonicalPair, z: &[Rank]) -> Match {
    Match::new(shortest_prefix(p.x_ranks(), z), shortest_prefix(p.y_ranks(), z))
}

/// `suff(z)` by scanning suffixes.
pub fn suff_naive(p: &CanonicalPair, z: &[Rank]) -> Match {
    Match::new(shortest_suffix(p.x_ranks(), z), shortest_suffix(p.y_ranks(), z))
}

pub fn shares_naive(p: &CanonicalPair, z: &[Rank]) -> bool {
    is_subsequence(p.x_ranks(), z) && is_subsequence(p.y_ranks(), z)
}

/// Every match of the pair.
pub fn all_matches(p: &CanonicalPair) -> Vec<Match> {
    let mut out = Vec::new();
    for i in 1..=p.x_len() {
        for j in 1..=p.y_len() {
            if p.x(i) == p.y(j) {
                out.push(Match::new(i, j));
            }
        }
    }
    out
}

/// `u ≺ v` by testing every grid point strictly inside.
pub fn precedes_naive(p: &CanonicalPair, u: Match, v: Match) -> bool {
    if !u.below(&v) {
        return false;
    }
    for i in u.i + 1..v.i {
        for j in u.j + 1..v.j {
            if p.x(i) == p.y(j) {
                return false;
            }
        }
    }
    true
}

/// All distinct common subsequences of the interiors (no sentinels), the
/// empty string included.
pub fn common_subsequences(p: &CanonicalPair) -> Result<HashSet<Vec<Rank>>> {
    common_subsequences_capped(p, DEFAULT_CAP)
}

pub fn common_subsequences_capped(p: &CanonicalPair, cap: usize) -> Result<HashSet<Vec<Rank>>> {
    check_cap(p, cap)?;
    let xs = &p.x_ranks()[1..p.x_len() - 1];
    let ys = &p.y_ranks()[1..p.y_len() - 1];
    let (short, long) = if xs.len() <= ys.len() { (xs, ys) } else { (ys, xs) };
    let mut out = HashSet::new();
    for mask in 0u64..(1u64 << short.len()) {
        let z: Vec<Rank> = (0..short.len())
            .filter(|&k| mask >> k & 1 == 1)
            .map(|k| short[k])
            .collect();
        if is_subsequence(long, &z) {
            out.insert(z);
        }
    }
    Ok(out)
}

/// Interior alphabet ranks `2..sigma`.
fn interior_ranks(p: &CanonicalPair) -> std::ops::Range<Rank> {
    2..p.sigma()
}

/// All maximal common subsequences as interior rank strings.
///
/// A common subsequence is kept iff no single-character insertion at any
/// position is still common.
pub fn all_mcs_bruteforce(p: &CanonicalPair) -> Result<BTreeSet<Vec<Rank>>> {
    all_mcs_bruteforce_capped(p, DEFAULT_CAP)
}

pub fn all_mcs_bruteforce_capped(p: &CanonicalPair, cap: usize) -> Result<BTreeSet<Vec<Rank>>> {
    let common = common_subsequences_capped(p, cap)?;
    let mut out = BTreeSet::new();
    let mut buf = Vec::new();
    for z in &common {
        let extendable = (0..=z.len()).any(|k| {
            interior_ranks(p).any(|c| {
                buf.clear();
                buf.extend_from_slice(&z[..k]);
                buf.push(c);
                buf.extend_from_slice(&z[k..]);
                common.contains(&buf)
            })
        });
        if !extendable {
            out.insert(z.clone());
        }
    }
    Ok(out)
}

/// Suff-matches as the closure of `(|X|, |Y|)` under `prev(c, ·)`.
pub fn suff_matches_bruteforce(p: &CanonicalPair) -> Result<BTreeSet<Match>> {
    check_cap(p, 4 * DEFAULT_CAP)?;
    let prev = |w: &[Rank], c: Rank, h: usize| (1..h).rev().find(|&k| w[k - 1] == c).unwrap_or(0);
    let mut seen = BTreeSet::new();
    let mut todo = vec![p.sink()];
    seen.insert(p.sink());
    while let Some(w) = todo.pop() {
        for c in 1..=p.sigma() {
            let v = Match::new(prev(p.x_ranks(), c, w.i), prev(p.y_ranks(), c, w.j));
            if v.i >= 1 && v.j >= 1 && seen.insert(v) {
                todo.push(v);
            }
        }
    }
    Ok(seen)
}

/// Pref-matches: closure of `(1, 1)` under `next(c, ·)`.
pub fn pref_matches_bruteforce(p: &CanonicalPair) -> Result<BTreeSet<Match>> {
    check_cap(p, 4 * DEFAULT_CAP)?;
    let next = |w: &[Rank], c: Rank, h: usize| (h + 1..=w.len()).find(|&k| w[k - 1] == c);
    let mut seen = BTreeSet::new();
    let start = Match::new(1, 1);
    let mut todo = vec![start];
    seen.insert(start);
    while let Some(w) = todo.pop() {
        for c in 1..=p.sigma() {
            if let (Some(i), Some(j)) = (next(p.x_ranks(), c, w.i), next(p.y_ranks(), c, w.j)) {
                let v = Match::new(i, j);
                if seen.insert(v) {
                    todo.push(v);
                }
            }
        }
    }
    Ok(seen)
}

/// Wrapped MCS strings (with both sentinels).
pub fn wrapped_mcs_set(p: &CanonicalPair) -> Result<BTreeSet<Vec<Rank>>> {
    Ok(all_mcs_bruteforce(p)?.iter().map(|z| p.wrap(z)).collect())
}

/// Whether `prefix` (wrapped, starting with rank 1) is a prefix of some MCS.
pub fn is_mcs_prefix(wrapped_mcs: &BTreeSet<Vec<Rank>>, prefix: &[Rank]) -> bool {
    wrapped_mcs.iter().any(|z| z.starts_with(prefix))
}

/// Ranks `c` such that `prefix ∘ c` is still an MCS-prefix.
pub fn extensible_ranks(wrapped_mcs: &BTreeSet<Vec<Rank>>, prefix: &[Rank]) -> BTreeSet<Rank> {
    wrapped_mcs
        .iter()
        .filter(|z| z.len() > prefix.len() && z.starts_with(prefix))
        .map(|z| z[prefix.len()])
        .collect()
}

/// All single-character insertion derivatives of `z` shared by the pair.
pub fn insertion_derivatives(p: &CanonicalPair, z: &[Rank]) -> Vec<Vec<Rank>> {
    let mut out = Vec::new();
    for k in 0..=z.len() {
        for c in 1..=p.sigma() {
            let mut d = Vec::with_capacity(z.len() + 1);
            d.extend_from_slice(&z[..k]);
            d.push(c);
            d.extend_from_slice(&z[k..]);
            if shares_naive(p, &d) {
                out.push(d);
            }
        }
    }
    out
}

/// `safe(z')` by exhaustive minimization over insertion derivatives.
///
/// `prefix` is wrapped (begins with rank 1) and must be an MCS-prefix.
pub fn safe_bruteforce(p: &CanonicalPair, prefix: &[Rank]) -> Result<Match> {
    let mcs = wrapped_mcs_set(p)?;
    if prefix.is_empty() || !is_mcs_prefix(&mcs, prefix) {
        return Err(McsError::NotMcsPrefix);
    }
    Ok(safe_of_prefix(p, prefix))
}

/// `safe` without the MCS-prefix check.
pub fn safe_of_prefix(p: &CanonicalPair, prefix: &[Rank]) -> Match {
    let pref = pref_naive(p, prefix);
    let mut safe = p.beyond();
    for d in insertion_derivatives(p, prefix) {
        let w = pref_naive(p, &d);
        if w.j == pref.j {
            safe.i = safe.i.min(w.i);
        }
        if w.i == pref.i {
            safe.j = safe.j.min(w.j);
        }
    }
    safe
}

/// Witnesses of extensibility: suff-matches `v` with `pref ≺ v ≤ safe`.
pub fn witnesses(p: &CanonicalPair, suff: &BTreeSet<Match>, pref: Match, safe: Match) -> Vec<Match> {
    suff.iter()
        .copied()
        .filter(|&v| v.below_eq(&safe) && precedes_naive(p, pref, v))
        .collect()
}

/// Witnesses with no other witness `v' ⪇ v`.
pub fn prominent_witnesses(p: &CanonicalPair, suff: &BTreeSet<Match>, pref: Match, safe: Match) -> BTreeSet<Match> {
    let all = witnesses(p, suff, pref, safe);
    all.iter()
        .copied()
        .filter(|v| !all.iter().any(|w| w.below_neq(v)))
        .collect()
}

/// Number of cuts `k` (1-based, over the wrapped string) with
/// `pref(Z⟨k]) = suff(Z[k⟩)`.
pub fn stability(p: &CanonicalPair, wrapped: &[Rank]) -> usize {
    (1..=wrapped.len())
        .filter(|&k| pref_naive(p, &wrapped[..k]) == suff_naive(p, &wrapped[k - 1..]))
        .count()
}

/// Longest MCSs strictly shorter than the LCS length.
pub fn quasi_lcs_bruteforce(p: &CanonicalPair) -> Result<BTreeSet<Vec<Rank>>> {
    let all = all_mcs_bruteforce(p)?;
    let lcs = all.iter().map(Vec::len).max().unwrap_or(0);
    let second = all.iter().map(Vec::len).filter(|&l| l < lcs).max();
    Ok(match second {
        Some(l) => all.into_iter().filter(|z| z.len() == l).collect(),
        None => BTreeSet::new(),
    })
}

/// MCSs with the greatest stability, and that score.
pub fn most_stable_bruteforce(p: &CanonicalPair) -> Result<(usize, BTreeSet<Vec<Rank>>)> {
    let all = all_mcs_bruteforce(p)?;
    let scored: Vec<(usize, Vec<Rank>)> = all.into_iter().map(|z| (stability(p, &p.wrap(&z)), z)).collect();
    let best = scored.iter().map(|(s, _)| *s).max().unwrap_or(0);
    Ok((
        best,
        scored.into_iter().filter(|(s, _)| *s == best).map(|(_, z)| z).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(p: &CanonicalPair, words: &[&str]) -> BTreeSet<Vec<Rank>> {
        words
            .iter()
            .map(|w| w.chars().map(|c| p.rank_of(c as u32).unwrap()).collect())
            .collect()
    }

    fn ranks(p: &CanonicalPair, s: &str) -> Vec<Rank> {
        s.chars()
            .map(|c| match c {
                '#' => 1,
                '$' => p.sigma(),
                c => p.rank_of(c as u32).unwrap(),
            })
            .collect()
    }

    #[test]
    fn f1_mcs_set() {
        let p = CanonicalPair::from_chars("acbcded", "edeabcb");
        assert_eq!(
            all_mcs_bruteforce(&p).unwrap(),
            set(&p, &["abc", "acb", "de", "ed"])
        );
    }

    #[test]
    fn identical_strings() {
        let p = CanonicalPair::from_chars("abcab", "abcab");
        assert_eq!(all_mcs_bruteforce(&p).unwrap(), set(&p, &["abcab"]));
    }

    #[test]
    fn no_shared_characters() {
        let p = CanonicalPair::from_chars("ab", "cd");
        let all = all_mcs_bruteforce(&p).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all.contains(&Vec::new()));
    }

    #[test]
    fn cap_is_enforced() {
        let p = CanonicalPair::from_chars("abcdefghijklmn", "abcdefghijklmn");
        assert!(matches!(
            all_mcs_bruteforce(&p),
            Err(McsError::ResourceLimit { .. })
        ));
    }

    #[test]
    fn f2_special_mcs() {
        let p = CanonicalPair::from_chars("acabba", "cbabcc");
        assert_eq!(quasi_lcs_bruteforce(&p).unwrap(), set(&p, &["ac"]));
        assert_eq!(most_stable_bruteforce(&p).unwrap().1, set(&p, &["cbb"]));
    }

    #[test]
    fn f3_safe_and_suff_matches() {
        let p = CanonicalPair::from_chars("dacabdacbcbdea", "acbabcdecaadab");
        let suff = suff_matches_bruteforce(&p).unwrap();
        for (i, j) in [(8, 12), (8, 14), (11, 10), (15, 14), (16, 16)] {
            assert!(suff.contains(&Match::new(i, j)));
        }
        // this pair exceeds the default cap, so skip the MCS-prefix check
        assert_eq!(safe_of_prefix(&p, &ranks(&p, "#acabd")), Match::new(13, 17));
        let w = witnesses(&p, &suff, Match::new(7, 8), Match::new(13, 17));
        assert_eq!(
            w.iter().copied().collect::<BTreeSet<_>>(),
            [Match::new(8, 12), Match::new(8, 14), Match::new(11, 10)].into()
        );
        assert_eq!(
            prominent_witnesses(&p, &suff, Match::new(7, 8), Match::new(13, 17)),
            [Match::new(8, 12), Match::new(11, 10)].into()
        );
    }

    #[test]
    fn safe_of_sentinel_prefix() {
        let p = CanonicalPair::from_chars("acab", "cbab");
        assert_eq!(safe_bruteforce(&p, &[1]).unwrap(), p.beyond());
        assert_eq!(safe_bruteforce(&p, &[2]), Err(McsError::NotMcsPrefix));
    }

    #[test]
    fn self_consistency() {
        let p = CanonicalPair::from_chars("abcab", "bacba");
        let common = common_subsequences(&p).unwrap();
        let mcs = all_mcs_bruteforce(&p).unwrap();
        for z in &common {
            let derivs = insertion_derivatives(&p, &p.wrap(z));
            assert_eq!(mcs.contains(z), derivs.is_empty(), "{z:?}");
        }
    }
}
