//! Enumeration of the maximal common subsequences (MCSs) of two strings.
//!
//! Strings are canonicalized into a [`CanonicalPair`]: both are wrapped in a
//! start sentinel (rank 1) and an end sentinel (rank σ), and interior symbols
//! are ranked in sorted order. Three enumerators are provided:
//!
//! * [`Algorithm::Enum331`] builds the all-MCS graph ([`allmcs`]) and walks its
//!   source-to-sink paths;
//! * [`Algorithm::Enum221`] extends prefixes ([`prefixext`]) with the
//!   quadratic-space row structure ([`d221`]);
//! * [`Algorithm::Enum211`] does the same with the linear-space threshold
//!   structure ([`d211`]).
//!
//! The two prefix-extension enumerators emit MCSs in lexicographic order of
//! ranks, which for byte or code-point input is lexicographic order of text.
//!
//! ```
//! use mcs_enum::{enumerate, Algorithm, CanonicalPair, Options};
//!
//! let p = CanonicalPair::from_bytes(b"acbcded", b"edeabcb");
//! let mut out = Vec::new();
//! enumerate(&p, Algorithm::Enum221, &Options::default(), |z| {
//!     out.push(p.render(z));
//!     true
//! })
//! .unwrap();
//! assert_eq!(out, ["abc", "acb", "de", "ed"]);
//! ```

pub mod allmcs;
pub mod d211;
pub mod d221;
pub mod error;
pub mod meter;
pub mod nextprev;
pub mod oracle;
pub mod pair;
pub mod prefixext;
pub mod rmq;
pub mod suffmatch;

pub use allmcs::{AllMcsGraph, GraphConfig};
pub use d211::D211;
pub use d221::{D221Config, D221};
pub use error::{McsError, Result};
pub use nextprev::{NextPrev, NextPrevIndex, NextPrevTable};
pub use pair::{canonicalize, CanonicalPair, Match, Rank, Symbol, VirtualMatch};
pub use prefixext::{DriverConfig, Enumerator, ExtProvider, Witness};

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Enum331,
    Enum221,
    Enum211,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Enum331, Algorithm::Enum221, Algorithm::Enum211];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Enum331 => "enum331",
            Algorithm::Enum221 => "enum221",
            Algorithm::Enum211 => "enum211",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub driver: DriverConfig,
    pub graph: GraphConfig,
    pub d221: D221Config,
}

/// Run `algo` over `p`, handing each MCS (interior ranks) to `f` until it
/// returns `false`. Returns the number of MCSs handed out.
pub fn enumerate(
    p: &CanonicalPair,
    algo: Algorithm,
    opts: &Options,
    mut f: impl FnMut(&[Rank]) -> bool,
) -> Result<u64> {
    let mut count = 0u64;
    let mut emit = |z: &[Rank]| {
        count += 1;
        f(&z[1..z.len() - 1])
    };
    match algo {
        Algorithm::Enum331 => {
            let t = NextPrevTable::build(p);
            let g = AllMcsGraph::build_with(p, &t, opts.graph)?;
            drop(t);
            let mut paths = g.paths();
            while let Some(z) = paths.next_wrapped() {
                if !emit(z) {
                    break;
                }
            }
        }
        Algorithm::Enum221 => {
            let t = NextPrevTable::build(p);
            let d = D221::build_with(p, &t, opts.d221)?;
            let mut e = Enumerator::new(p, &t, &d).with_config(opts.driver)?;
            while let Some(z) = e.next_wrapped()? {
                if !emit(z) {
                    break;
                }
            }
        }
        Algorithm::Enum211 => {
            let d = D211::build(p)?;
            let mut e = Enumerator::new(p, d.index(), &d).with_config(opts.driver)?;
            while let Some(z) = e.next_wrapped()? {
                if !emit(z) {
                    break;
                }
            }
        }
    }
    Ok(count)
}

/// All MCSs as interior rank strings, in the algorithm's output order.
pub fn all_mcs(p: &CanonicalPair, algo: Algorithm) -> Result<Vec<Vec<Rank>>> {
    let mut out = Vec::new();
    enumerate(p, algo, &Options::default(), |z| {
        out.push(z.to_vec());
        true
    })?;
    Ok(out)
}
