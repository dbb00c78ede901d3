use std::collections::BTreeSet;

use mcs_enum::d211::D211;
use mcs_enum::d221::D221;
use mcs_enum::nextprev::{NextPrev, NextPrevIndex, NextPrevTable, Side};
use mcs_enum::oracle;
use mcs_enum::prefixext::{DriverConfig, Enumerator, FrameView, Observer, Witness};
use mcs_enum::rmq::{Rmq, RmqBacking};
use mcs_enum::suffmatch::{for_each_row, RowStep};
use mcs_enum::{all_mcs, Algorithm, AllMcsGraph, CanonicalPair, Match, Rank};
use rand::{Rng, SeedableRng};
use rand::rngs::StdRng;

fn random_pair(rng: &mut StdRng, max_len: usize, alpha: u8) -> CanonicalPair {
    let mut s = || -> Vec<u8> {
        let n = rng.gen_range(0..=max_len);
        (0..n).map(|_| b'a' + rng.gen_range(0..alpha)).collect()
    };
    let (x, y) = (s(), s());
    CanonicalPair::from_bytes(&x, &y)
}

#[test]
fn enumerators_agree_with_oracle() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..600 {
        let p = random_pair(&mut rng, 10, 4);
        let t = NextPrevTable::build(&p);
        let want = oracle::all_mcs_bruteforce(&p).unwrap();
        for algo in Algorithm::ALL {
            let got = all_mcs(&p, algo).unwrap();
            let set: BTreeSet<Vec<Rank>> = got.iter().cloned().collect();
            assert_eq!(set.len(), got.len(), "{algo} duplicated on {p:?}");
            assert_eq!(set, want, "{algo} on {p:?}");
            if algo != Algorithm::Enum331 {
                assert!(got.windows(2).all(|w| w[0] < w[1]), "{algo} order");
            }
            for z in &got {
                assert!(p.is_maximal(z, &t).unwrap());
            }
        }
    }
}

#[derive(Default)]
struct FrameLog {
    frames: Vec<(Vec<Rank>, Match, Match, Vec<Witness>)>,
}

impl Observer for FrameLog {
    fn on_ext(&mut self, f: &FrameView<'_>) {
        self.frames.push((f.prefix.to_vec(), f.pref, f.safe, f.ext.to_vec()));
    }
}

#[test]
fn frames_agree_with_definitions() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..300 {
        let p = random_pair(&mut rng, 9, 3);
        let t = NextPrevTable::build(&p);
        let d221 = D221::build(&p, &t).unwrap();
        let d211 = D211::build(&p).unwrap();
        let suff = oracle::suff_matches_bruteforce(&p).unwrap();
        let wrapped = oracle::wrapped_mcs_set(&p).unwrap();
        let cfg = DriverConfig { check_bounds: true, validate_witnesses: true };
        let mut e = Enumerator::new(&p, &t, &d221)
            .with_config(cfg)
            .unwrap()
            .with_observer(FrameLog::default());
        while e.next_mcs().unwrap().is_some() {}
        for (prefix, pref, safe, ext) in &e.observer().frames {
            assert!(oracle::is_mcs_prefix(&wrapped, prefix));
            assert_eq!(*pref, oracle::pref_naive(&p, prefix));
            assert_eq!(*safe, oracle::safe_bruteforce(&p, prefix).unwrap(), "{prefix:?}");
            let want = oracle::prominent_witnesses(&p, &suff, *pref, *safe);
            let got: BTreeSet<Match> = ext.iter().map(|w| w.at).collect();
            assert_eq!(got, want, "ext221 {prefix:?}");
            let mut o = Vec::new();
            d211.ext_query(*pref, *safe, &mut o);
            let got211: BTreeSet<Match> = o.iter().map(|w| w.at).collect();
            assert_eq!(got211, want, "ext211 {prefix:?}");
            let ranks: BTreeSet<Rank> = ext.iter().map(|w| w.rank).collect();
            assert_eq!(ranks, oracle::extensible_ranks(&wrapped, prefix));
        }
    }
}

#[test]
fn d211_membership_and_thresholds() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..300 {
        let p = random_pair(&mut rng, 12, 4);
        let d = D211::build(&p).unwrap();
        let suff = oracle::suff_matches_bruteforce(&p).unwrap();
        for w in oracle::all_matches(&p) {
            assert_eq!(d.is_suff_match(w), suff.contains(&w));
        }
    }
}

#[test]
fn row_procedures_agree() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..300 {
        let p = random_pair(&mut rng, 12, 4);
        let t = NextPrevTable::build(&p);
        let mut a = Vec::new();
        let mut b = Vec::new();
        for_each_row(&p, RowStep::Table(&t), |r| a.push(r.clone())).unwrap();
        for_each_row(&p, RowStep::Tableless, |r| b.push(r.clone())).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn table_and_index_agree() {
    let mut rng = StdRng::seed_from_u64(9);
    let p = random_pair(&mut rng, 40, 6);
    let t = NextPrevTable::build(&p);
    let ix = NextPrevIndex::build(&p);
    for _ in 0..10_000 {
        let side = if rng.gen() { Side::X } else { Side::Y };
        let c = rng.gen_range(1..=p.sigma());
        let h = rng.gen_range(0..=t.len_of(side) + 1);
        assert_eq!(t.next_in(side, c, h), ix.next_in(side, c, h));
        assert_eq!(t.prev_in(side, c, h), ix.prev_in(side, c, h));
    }
}

#[test]
fn rmq_matches_scan() {
    let mut rng = StdRng::seed_from_u64(13);
    let v: Vec<u32> = (0..500).map(|_| rng.gen_range(0..50)).collect();
    for backing in [RmqBacking::Block, RmqBacking::Sparse] {
        let r = Rmq::build(&v, backing).unwrap();
        for _ in 0..100_000 {
            let lo = rng.gen_range(1..=v.len());
            let hi = rng.gen_range(lo..=v.len());
            let want = (lo..=hi).min_by_key(|&k| (v[k - 1], k)).unwrap();
            assert_eq!(r.query(lo, hi), want);
        }
    }
}

#[test]
fn graph_special_mcs_match_oracle() {
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..300 {
        let p = random_pair(&mut rng, 9, 3);
        let t = NextPrevTable::build(&p);
        let g = AllMcsGraph::build(&p, &t).unwrap();
        let mcs = oracle::all_mcs_bruteforce(&p).unwrap();
        assert_eq!(g.count_paths(), mcs.len() as u128);
        let quasi: BTreeSet<Vec<Rank>> = g.quasi_lcs().1.into_iter().map(|z| z[1..z.len() - 1].to_vec()).collect();
        assert_eq!(quasi, oracle::quasi_lcs_bruteforce(&p).unwrap());
        let (score, stable) = g.most_stable();
        let (want_score, want) = oracle::most_stable_bruteforce(&p).unwrap();
        assert_eq!(score, want_score);
        let stable: BTreeSet<Vec<Rank>> = stable.into_iter().map(|z| z[1..z.len() - 1].to_vec()).collect();
        assert_eq!(stable, want);
    }
}
