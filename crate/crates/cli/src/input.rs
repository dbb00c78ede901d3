use std::io::{self, Read, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use mcs_enum::{CanonicalPair, Rank, Symbol};

/// Bad invocation or unreadable input; maps to exit status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Files holding X and Y (one trailing newline is ignored)
    #[arg(value_name = "FILE", num_args = 0..=2)]
    pub files: Vec<PathBuf>,
    /// X as a literal
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Y as a literal
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    /// Treat input as UTF-8 and compare code points instead of bytes
    #[arg(long)]
    pub utf8: bool,
}

/// How symbols map to and from text.
#[derive(Debug, Clone, Copy)]
pub struct Unit {
    pub utf8: bool,
}

impl Unit {
    pub fn symbols(self, raw: &[u8]) -> Result<Vec<Symbol>> {
        if self.utf8 {
            let s = std::str::from_utf8(raw).map_err(|e| UsageError(format!("input is not UTF-8: {e}")))?;
            Ok(s.chars().map(|c| c as Symbol).collect())
        } else {
            Ok(raw.iter().map(|&b| b as Symbol).collect())
        }
    }

    pub fn bytes(self, p: &CanonicalPair, z: &[Rank]) -> Vec<u8> {
        let syms = p.decanonicalize(z);
        if self.utf8 {
            syms.iter().filter_map(|&s| char::from_u32(s)).collect::<String>().into_bytes()
        } else {
            syms.iter().map(|&s| s as u8).collect()
        }
    }

    pub fn text(self, p: &CanonicalPair, z: &[Rank]) -> String {
        String::from_utf8_lossy(&self.bytes(p, z)).into_owned()
    }

    pub fn write_line(self, out: &mut impl Write, p: &CanonicalPair, z: &[Rank]) -> io::Result<()> {
        out.write_all(&self.bytes(p, z))?;
        out.write_all(b"\n")
    }
}

fn strip_newline(mut raw: Vec<u8>) -> Vec<u8> {
    if raw.last() == Some(&b'\n') {
        raw.pop();
        if raw.last() == Some(&b'\r') {
            raw.pop();
        }
    }
    raw
}

impl InputArgs {
    pub fn unit(&self) -> Unit {
        Unit { utf8: self.utf8 }
    }

    pub fn given(&self) -> bool {
        self.x.is_some() || self.y.is_some() || !self.files.is_empty()
    }

    /// Raw X and Y from literals, two files, or two stdin lines.
    pub fn read_raw(&self) -> Result<(Vec<u8>, Vec<u8>)> {
        match (&self.x, &self.y, self.files.len()) {
            (Some(x), Some(y), 0) => Ok((x.clone().into_bytes(), y.clone().into_bytes())),
            (None, None, 2) => {
                let read = |p: &PathBuf| -> Result<Vec<u8>> {
                    let raw = std::fs::read(p)
                        .map_err(|e| UsageError(format!("cannot read {}: {e}", p.display())))?;
                    Ok(strip_newline(raw))
                };
                Ok((read(&self.files[0])?, read(&self.files[1])?))
            }
            (None, None, 0) => {
                let mut all = Vec::new();
                io::stdin().read_to_end(&mut all).context("reading stdin")?;
                let mut lines = all.split(|&b| b == b'\n');
                let mut line = || strip_newline(lines.next().unwrap_or_default().to_vec());
                let (x, y) = (line(), line());
                Ok((x, y))
            }
            _ => Err(UsageError("give both --x and --y, or two files, or two lines on stdin".into()).into()),
        }
    }

    pub fn read_pair(&self) -> Result<CanonicalPair> {
        let (x, y) = self.read_raw()?;
        let unit = self.unit();
        Ok(mcs_enum::canonicalize(&unit.symbols(&x)?, &unit.symbols(&y)?))
    }
}
