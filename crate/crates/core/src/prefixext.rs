//! Prefix-extension driver.
//!
//! Walks the trie of MCS-prefixes in preorder, appending the least extensible
//! character while the prefix does not end with the end sentinel, and
//! otherwise emitting the prefix and backtracking to the nearest frame that
//! still has a greater extensible alternative. Each frame keeps `pref`,
//! `safe`, and the untried alternatives, so a step costs time proportional to
//! the anti-diagonal advance of `pref`.
//!
//! The extensible characters come from an [`ExtProvider`], which must return
//! the prominent witnesses of the frame (at most two per character).

use std::collections::BTreeSet;

use crate::error::{McsError, Result};
use crate::nextprev::NextPrev;
use crate::pair::{CanonicalPair, Match, Rank, VirtualMatch};
use crate::suffmatch::{stream_suff_matches, RowStep};

/// A prominent witness `at` for extending by `rank` (`rank == X[at.i]`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Witness {
    pub rank: Rank,
    pub at: Match,
}

/// Source of `ext(Z')` for a frame described by `pref(Z')` and `safe(Z')`.
pub trait ExtProvider {
    /// Append the prominent witnesses to `out` (any order) and return the
    /// number of elementary steps spent.
    fn ext(&self, pref: Match, safe: VirtualMatch, out: &mut Vec<Witness>) -> Result<usize>;
}

impl<T: ExtProvider + ?Sized> ExtProvider for &T {
    fn ext(&self, pref: Match, safe: VirtualMatch, out: &mut Vec<Witness>) -> Result<usize> {
        (**self).ext(pref, safe, out)
    }
}

/// One depth of the live prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixFrame {
    pub c: Rank,
    pub pref: Match,
    pub safe: VirtualMatch,
    // untried alternatives, stored descending so the least is popped first
    alt: Vec<Rank>,
}

impl PrefixFrame {
    /// Untried alternatives in ascending order.
    pub fn alternatives(&self) -> impl Iterator<Item = Rank> + '_ {
        self.alt.iter().rev().copied()
    }
}

/// What an [`Observer`] sees when a frame's extensions are computed.
#[derive(Debug)]
pub struct FrameView<'a> {
    /// Live wrapped prefix `Z'`.
    pub prefix: &'a [Rank],
    pub pref: Match,
    pub safe: VirtualMatch,
    /// Witnesses sorted by rank.
    pub ext: &'a [Witness],
    /// Distinct extensible ranks, ascending.
    pub ranks: &'a [Rank],
}

pub trait Observer {
    fn on_ext(&mut self, _frame: &FrameView<'_>) {}
    fn on_emit(&mut self, _wrapped: &[Rank]) {}
}

impl Observer for () {}

impl<T: Observer + ?Sized> Observer for &mut T {
    fn on_ext(&mut self, frame: &FrameView<'_>) {
        (**self).on_ext(frame)
    }
    fn on_emit(&mut self, wrapped: &[Rank]) {
        (**self).on_emit(wrapped)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DriverConfig {
    /// Assert the per-frame bound: fewer extensible characters than the
    /// anti-diagonal advance of any extension, and the live-stack total of
    /// alternatives within `|X| + |Y|`.
    pub check_bounds: bool,
    /// Re-test every returned witness against the definitions.
    pub validate_witnesses: bool,
}

impl DriverConfig {
    /// Honors `MCS_ENUM_DEBUG_VALIDATE=1`.
    pub fn from_env() -> Self {
        let on = std::env::var("MCS_ENUM_DEBUG_VALIDATE").is_ok_and(|v| v == "1");
        DriverConfig {
            check_bounds: on,
            validate_witnesses: on,
        }
    }
}

/// `safe(Z' ∘ c)` from the frame of `Z'`.
///
/// Returns the new value and the number of next-queries spent, which is
/// `O(a_{pref_c} - a_pref)`.
pub fn update_safe<N: NextPrev + ?Sized>(
    p: &CanonicalPair,
    nv: &N,
    c: Rank,
    pref: Match,
    pref_c: Match,
    safe: VirtualMatch,
) -> (VirtualMatch, usize) {
    let (n, m) = (p.x_len(), p.y_len());
    let mut steps = 0;

    let mut si = n + 1;
    for j in pref.j + 1..pref_c.j {
        let t = nv.next_x(p.y(j), pref.i);
        steps += 1;
        if t <= n {
            si = si.min(nv.next_x(c, t));
        }
    }
    if safe.i <= n {
        si = si.min(nv.next_x(c, safe.i));
    }

    let mut sj = m + 1;
    for i in pref.i + 1..pref_c.i {
        let t = nv.next_y(p.x(i), pref.j);
        steps += 1;
        if t <= m {
            sj = sj.min(nv.next_y(c, t));
        }
    }
    if safe.j <= m {
        sj = sj.min(nv.next_y(c, safe.j));
    }

    (Match::new(si, sj), steps + 2)
}

struct WitnessValidator {
    suff: Vec<bool>,
    width: usize,
}

impl WitnessValidator {
    fn new(p: &CanonicalPair) -> Result<Self> {
        let width = p.y_len() + 1;
        let mut suff = vec![false; (p.x_len() + 1) * width];
        stream_suff_matches(p, RowStep::Tableless, |w| suff[w.i * width + w.j] = true)?;
        Ok(WitnessValidator { suff, width })
    }

    fn check<N: NextPrev + ?Sized>(
        &self,
        p: &CanonicalPair,
        nv: &N,
        pref: Match,
        safe: Match,
        ext: &[Witness],
    ) -> Result<()> {
        let fail = |msg: String| Err(McsError::Inconsistent(msg));
        for w in ext {
            let v = w.at;
            if !p.is_match(v.i, v.j) || p.x(v.i) != w.rank {
                return fail(format!("{v} is not a match of rank {}", w.rank));
            }
            if !self.suff[v.i * self.width + v.j] {
                return fail(format!("{v} is not a suff-match"));
            }
            if !v.below_eq(&safe) || !p.immediately_precedes(pref, v, nv) {
                return fail(format!("{v} is outside pref {pref} ≺ v ≤ safe {safe}"));
            }
            if ext.iter().any(|u| u.at.below_neq(&v)) {
                return fail(format!("{v} is dominated by another returned witness"));
            }
            if ext.iter().filter(|u| u.rank == w.rank && u.at != v).count() > 1 {
                return fail(format!("more than two witnesses for rank {}", w.rank));
            }
        }
        Ok(())
    }
}

/// Enumerates every MCS once, in lexicographic order of ranks.
pub struct Enumerator<'a, N: ?Sized, P, O = ()> {
    pair: &'a CanonicalPair,
    nv: &'a N,
    provider: P,
    observer: O,
    config: DriverConfig,
    validator: Option<WitnessValidator>,
    frames: Vec<PrefixFrame>,
    prefix: Vec<Rank>,
    ext: Vec<Witness>,
    ranks: Vec<Rank>,
    alt_total: usize,
    started: bool,
    done: bool,
    ops: u64,
    emitted: u64,
}

impl<'a, N: NextPrev + ?Sized, P: ExtProvider> Enumerator<'a, N, P, ()> {
    pub fn new(pair: &'a CanonicalPair, nv: &'a N, provider: P) -> Self {
        Enumerator {
            pair,
            nv,
            provider,
            observer: (),
            config: DriverConfig::default(),
            validator: None,
            frames: Vec::new(),
            prefix: Vec::new(),
            ext: Vec::new(),
            ranks: Vec::new(),
            alt_total: 0,
            started: false,
            done: false,
            ops: 0,
            emitted: 0,
        }
    }
}

impl<'a, N: NextPrev + ?Sized, P: ExtProvider, O: Observer> Enumerator<'a, N, P, O> {
    pub fn with_observer<O2: Observer>(self, observer: O2) -> Enumerator<'a, N, P, O2> {
        Enumerator {
            pair: self.pair,
            nv: self.nv,
            provider: self.provider,
            observer,
            config: self.config,
            validator: self.validator,
            frames: self.frames,
            prefix: self.prefix,
            ext: self.ext,
            ranks: self.ranks,
            alt_total: self.alt_total,
            started: self.started,
            done: self.done,
            ops: self.ops,
            emitted: self.emitted,
        }
    }

    pub fn with_config(mut self, config: DriverConfig) -> Result<Self> {
        self.config = config;
        self.validator = if config.validate_witnesses {
            Some(WitnessValidator::new(self.pair)?)
        } else {
            None
        };
        Ok(self)
    }

    pub fn observer(&self) -> &O {
        &self.observer
    }

    pub fn into_observer(self) -> O {
        self.observer
    }

    /// Elementary steps so far (queries, frame pushes and pops).
    pub fn ops(&self) -> u64 {
        self.ops
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    /// The live frames, root first.
    pub fn frames(&self) -> &[PrefixFrame] {
        &self.frames
    }

    /// The live wrapped prefix.
    pub fn prefix(&self) -> &[Rank] {
        &self.prefix
    }

    /// Advance to the next MCS and return it wrapped (with both sentinels).
    pub fn next_wrapped(&mut self) -> Result<Option<&[Rank]>> {
        if self.done {
            return Ok(None);
        }
        if !self.started {
            self.started = true;
            self.frames.push(PrefixFrame {
                c: 1,
                pref: Match::new(1, 1),
                safe: self.pair.beyond(),
                alt: Vec::new(),
            });
            self.prefix.push(1);
            self.ops += 1;
        } else if !self.backtrack() {
            self.done = true;
            return Ok(None);
        }
        let sigma = self.pair.sigma();
        while self.frames.last().expect("live frame").c != sigma {
            if let Err(e) = self.extend() {
                self.done = true;
                return Err(e);
            }
        }
        self.emitted += 1;
        self.observer.on_emit(&self.prefix);
        Ok(Some(&self.prefix))
    }

    /// Next MCS as interior ranks (sentinels stripped).
    pub fn next_mcs(&mut self) -> Result<Option<Vec<Rank>>> {
        Ok(self.next_wrapped()?.map(|z| z[1..z.len() - 1].to_vec()))
    }

    fn push_child(&mut self, c: Rank, alt: Vec<Rank>) {
        let parent = self.frames.last().expect("parent frame");
        let pref_c = self.nv.next(c, parent.pref);
        let (safe_c, steps) = update_safe(self.pair, self.nv, c, parent.pref, pref_c, parent.safe);
        self.ops += steps as u64 + 1;
        self.alt_total += alt.len();
        self.frames.push(PrefixFrame {
            c,
            pref: pref_c,
            safe: safe_c,
            alt,
        });
        self.prefix.push(c);
    }

    fn extend(&mut self) -> Result<()> {
        let top = self.frames.last().expect("live frame");
        let (pref, safe) = (top.pref, top.safe);
        self.ext.clear();
        let work = self.provider.ext(pref, safe, &mut self.ext)?;
        self.ops += work as u64 + 1;
        if self.ext.is_empty() {
            return Err(McsError::Inconsistent(format!(
                "no extensible character at pref {pref}, safe {safe}"
            )));
        }
        if let Some(v) = &self.validator {
            v.check(self.pair, self.nv, pref, safe, &self.ext)?;
        }
        self.ext.sort_unstable();
        self.ext.dedup();
        self.ranks.clear();
        self.ranks.extend(self.ext.iter().map(|w| w.rank));
        self.ranks.dedup();
        self.ops += self.ext.len() as u64;

        if self.config.check_bounds {
            self.check_bounds(pref)?;
        }
        self.observer.on_ext(&FrameView {
            prefix: &self.prefix,
            pref,
            safe,
            ext: &self.ext,
            ranks: &self.ranks,
        });

        let c = self.ranks[0];
        let alt: Vec<Rank> = self.ranks[1..].iter().rev().copied().collect();
        self.push_child(c, alt);
        Ok(())
    }

    fn check_bounds(&self, pref: Match) -> Result<()> {
        let count = self.ranks.len();
        for &c in &self.ranks {
            let advance = self.nv.next(c, pref).anti() - pref.anti();
            if count >= advance {
                return Err(McsError::Inconsistent(format!(
                    "{count} extensible characters but advance {advance} for rank {c} at {pref}"
                )));
            }
        }
        let budget = self.pair.x_len() + self.pair.y_len();
        let live = self.alt_total + count - 1;
        if live > budget {
            return Err(McsError::Inconsistent(format!(
                "live alternatives {live} exceed {budget}"
            )));
        }
        Ok(())
    }

    // Pop exhausted frames, then swap the top for its next alternative.
    fn backtrack(&mut self) -> bool {
        loop {
            let Some(top) = self.frames.last() else {
                return false;
            };
            if !top.alt.is_empty() {
                break;
            }
            self.frames.pop();
            self.prefix.pop();
            self.ops += 1;
        }
        let mut f = self.frames.pop().expect("frame with alternatives");
        self.prefix.pop();
        self.alt_total -= f.alt.len();
        let c = f.alt.pop().expect("nonempty alternatives");
        self.ops += 1;
        self.push_child(c, f.alt);
        true
    }
}

impl<N: NextPrev + ?Sized, P: ExtProvider, O: Observer> Iterator for Enumerator<'_, N, P, O> {
    type Item = Result<Vec<Rank>>;

    fn next(&mut self) -> Option<Self::Item> {
        self.next_mcs().transpose()
    }
}

/// Prominent witnesses computed by definition from a suff-match set; a slow
/// provider for cross-checking.
pub struct DefinitionalProvider<'a, N: ?Sized> {
    pair: &'a CanonicalPair,
    nv: &'a N,
    suff: BTreeSet<Match>,
}

impl<'a, N: NextPrev + ?Sized> DefinitionalProvider<'a, N> {
    pub fn new(pair: &'a CanonicalPair, nv: &'a N) -> Result<Self> {
        let mut suff = BTreeSet::new();
        stream_suff_matches(pair, RowStep::Tableless, |w| {
            suff.insert(w);
        })?;
        Ok(DefinitionalProvider { pair, nv, suff })
    }
}

impl<N: NextPrev + ?Sized> ExtProvider for DefinitionalProvider<'_, N> {
    fn ext(&self, pref: Match, safe: VirtualMatch, out: &mut Vec<Witness>) -> Result<usize> {
        let witnesses: Vec<Match> = self
            .suff
            .iter()
            .copied()
            .filter(|v| v.below_eq(&safe) && self.pair.immediately_precedes(pref, *v, self.nv))
            .collect();
        let before = out.len();
        for v in &witnesses {
            if !witnesses.iter().any(|w| w.below_neq(v)) {
                out.push(Witness {
                    rank: self.pair.x(v.i),
                    at: *v,
                });
            }
        }
        Ok(self.suff.len() + out.len() - before)
    }
}
