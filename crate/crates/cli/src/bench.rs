//! Benchmark profile: preprocessing time, peak heap, and per-output delays.

use std::time::Instant;

use anyhow::Result;
use clap::{Args, ValueEnum};
use mcs_enum::meter;
use mcs_enum::{Algorithm, AllMcsGraph, CanonicalPair, Enumerator, GraphConfig, NextPrevTable, Options, D211, D221};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::input::{InputArgs, UsageError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Gen {
    Random,
    Periodic,
    File,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "random")]
    pub gen: Gen,
    /// Length of each generated string
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    /// Alphabet size of generated strings (1..=26)
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=26))]
    pub sigma: u8,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Algorithms to profile, comma separated
    #[arg(long, value_delimiter = ',', default_value = "enum221")]
    pub algo: Vec<Algorithm>,
    #[arg(long, default_value_t = 1)]
    pub reps: u32,
    /// Stop each run after this many outputs
    #[arg(long, default_value_t = 1000)]
    pub limit: u64,
    #[arg(long, default_value_t = 50_000_000)]
    pub max_graph_vertices: usize,
    #[command(flatten)]
    pub input: InputArgs,
}

pub const HEADER: &str = "algo,n,sigma,preprocess_ns,peak_words,delay_p50,delay_p95,delay_max,outputs_count";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub algo: Algorithm,
    pub n: usize,
    pub sigma: usize,
    pub preprocess_ns: u128,
    pub peak_words: usize,
    pub delays_ns: Vec<u64>,
    pub outputs: u64,
}

fn percentile(sorted: &[u64], q: f64) -> u64 {
    if sorted.is_empty() {
        return 0;
    }
    let rank = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    sorted[rank - 1]
}

impl Row {
    pub fn csv(&self) -> String {
        let mut d = self.delays_ns.clone();
        d.sort_unstable();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.algo,
            self.n,
            self.sigma,
            self.preprocess_ns,
            self.peak_words,
            percentile(&d, 0.5),
            percentile(&d, 0.95),
            d.last().copied().unwrap_or(0),
            self.outputs
        )
    }
}

/// Generated `(x, y)` for one repetition.
pub fn generate(gen: Gen, n: usize, sigma: u8, seed: u64) -> (Vec<u8>, Vec<u8>) {
    match gen {
        Gen::Random | Gen::File => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut s = || (0..n).map(|_| b'a' + rng.gen_range(0..sigma)).collect::<Vec<u8>>();
            (s(), s())
        }
        Gen::Periodic => {
            let x = (0..n).map(|k| b'a' + (k % sigma as usize) as u8).collect();
            let y = (0..n).map(|k| b'a' + ((n - k) % sigma as usize) as u8).collect();
            (x, y)
        }
    }
}

// Time each output until `next` reports exhaustion or `limit` is reached.
fn time_outputs(limit: u64, mut next: impl FnMut() -> Result<bool>) -> Result<Vec<u64>> {
    let mut delays = Vec::new();
    let mut last = Instant::now();
    while (delays.len() as u64) < limit && next()? {
        let now = Instant::now();
        delays.push((now - last).as_nanos() as u64);
        last = now;
    }
    Ok(delays)
}

pub fn profile(p: &CanonicalPair, algo: Algorithm, limit: u64, opts: &Options) -> Result<Row> {
    meter::reset_peak();
    let base = meter::current_bytes();
    let start = Instant::now();
    let (pre, delays) = match algo {
        Algorithm::Enum331 => {
            let t = NextPrevTable::build(p);
            let g = AllMcsGraph::build_with(p, &t, opts.graph)?;
            drop(t);
            let pre = start.elapsed();
            let mut paths = g.paths();
            (pre, time_outputs(limit, || Ok(paths.next_wrapped().is_some()))?)
        }
        Algorithm::Enum221 => {
            let t = NextPrevTable::build(p);
            let d = D221::build_with(p, &t, opts.d221)?;
            let pre = start.elapsed();
            let mut e = Enumerator::new(p, &t, &d).with_config(opts.driver)?;
            (pre, time_outputs(limit, || Ok(e.next_wrapped()?.is_some()))?)
        }
        Algorithm::Enum211 => {
            let d = D211::build(p)?;
            let pre = start.elapsed();
            let mut e = Enumerator::new(p, d.index(), &d).with_config(opts.driver)?;
            (pre, time_outputs(limit, || Ok(e.next_wrapped()?.is_some()))?)
        }
    };
    let peak = meter::peak_bytes().saturating_sub(base);
    Ok(Row {
        algo,
        n: p.x_len().max(p.y_len()) - 2,
        sigma: p.sigma() as usize - 2,
        preprocess_ns: pre.as_nanos(),
        peak_words: meter::words(peak),
        outputs: delays.len() as u64,
        delays_ns: delays,
    })
}

pub fn run(args: &BenchArgs, opts: &Options) -> Result<Vec<Row>> {
    if args.gen == Gen::File && !args.input.given() {
        return Err(UsageError("--gen file needs --x/--y or two files".into()).into());
    }
    let opts = Options {
        graph: GraphConfig {
            max_vertices: args.max_graph_vertices,
            ..opts.graph
        },
        ..*opts
    };
    let mut rows = Vec::new();
    for rep in 0..args.reps {
        let p = match args.gen {
            Gen::File => args.input.read_pair()?,
            gen => {
                let (x, y) = generate(gen, args.n, args.sigma, args.seed.wrapping_add(rep as u64));
                CanonicalPair::from_bytes(&x, &y)
            }
        };
        for &algo in &args.algo {
            rows.push(profile(&p, algo, args.limit, &opts)?);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percentiles_use_nearest_rank() {
        let d: Vec<u64> = (1..=20).collect();
        assert_eq!(percentile(&d, 0.5), 10);
        assert_eq!(percentile(&d, 0.95), 19);
        assert_eq!(percentile(&[], 0.5), 0);
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(generate(Gen::Random, 50, 4, 9), generate(Gen::Random, 50, 4, 9));
        assert_ne!(generate(Gen::Random, 50, 4, 9), generate(Gen::Random, 50, 4, 10));
        let (x, y) = generate(Gen::Periodic, 6, 3, 0);
        assert_eq!(x, b"abcabc");
        assert_eq!(y, b"acbacb");
    }
}
