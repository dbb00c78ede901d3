//! The all-MCS graph.
//!
//! A vertex is a pair `(v, u)` of matches. For every `u ≺ v` there is an edge
//! `(prev(c_u, v), u) → (v, next(c_v, u))`; keeping only edges that lie on a
//! path from `((1,1),(1,1))` to the sink pair leaves a DAG whose source-to-sink
//! paths spell exactly the MCSs, one path each.
//!
//! The left element of a vertex is determined by the right one plus its
//! diagonal, so vertices are keyed by `(i_u, j_u, d_v)` during construction.

use std::collections::HashMap;
use std::io::{self, Write};

use crate::error::{McsError, Result};
use crate::nextprev::NextPrev;
use crate::pair::{CanonicalPair, Match, Rank};

/// `(v, u)`: `v` is the left element, `u` the right one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub v: Match,
    pub u: Match,
}

impl std::fmt::Display for Vertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.v, self.u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyStore {
    /// Hash map from key to vertex id.
    Hashed,
    /// Dense array over every possible key; worst-case constant lookups.
    Dense,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphConfig {
    /// Cap on vertices and on edges of the unpruned graph.
    pub max_vertices: usize,
    pub store: KeyStore,
}

impl Default for GraphConfig {
    fn default() -> Self {
        GraphConfig {
            max_vertices: 50_000_000,
            store: KeyStore::Hashed,
        }
    }
}

/// All `v` with `u ≺ v`, scanning columns right of `u` with a falling row bound.
pub fn find_edges<N: NextPrev + ?Sized>(p: &CanonicalPair, nv: &N, u: Match, out: &mut Vec<Match>) {
    let (n, m) = (p.x_len(), p.y_len());
    let (mut i, mut j) = (n, u.j + 1);
    while j <= m {
        if p.x(i) == p.y(j) {
            out.push(Match::new(i, j));
        }
        let up = nv.prev_x(p.y(j), i);
        if up > u.i {
            i = up;
        } else {
            j += 1;
        }
    }
}

enum Ids {
    Hashed(HashMap<u64, u32>),
    Dense(Vec<u32>),
}

struct Interner {
    ids: Ids,
    vertices: Vec<Vertex>,
    n: usize,
    m: usize,
    cap: usize,
}

impl Interner {
    fn new(p: &CanonicalPair, config: &GraphConfig) -> Result<Self> {
        let (n, m) = (p.x_len(), p.y_len());
        let ids = match config.store {
            KeyStore::Hashed => Ids::Hashed(HashMap::new()),
            KeyStore::Dense => {
                let keys = (n + 1) * (m + 1) * (n + m + 1);
                if keys > config.max_vertices {
                    return Err(McsError::ResourceLimit {
                        what: "dense vertex keys",
                        needed: keys,
                        limit: config.max_vertices,
                    });
                }
                Ids::Dense(vec![u32::MAX; keys])
            }
        };
        Ok(Interner {
            ids,
            vertices: Vec::new(),
            n,
            m,
            cap: config.max_vertices,
        })
    }

    fn key(&self, w: Vertex) -> u64 {
        let d = (w.v.j + self.n - w.v.i) as u64;
        ((w.u.i * (self.m + 1) + w.u.j) as u64) * (self.n + self.m + 1) as u64 + d
    }

    fn id(&mut self, w: Vertex) -> Result<u32> {
        let key = self.key(w);
        let next = self.vertices.len() as u32;
        let id = match &mut self.ids {
            Ids::Hashed(map) => *map.entry(key).or_insert(next),
            Ids::Dense(arr) => {
                let slot = &mut arr[key as usize];
                if *slot == u32::MAX {
                    *slot = next;
                }
                *slot
            }
        };
        if id == next {
            if self.vertices.len() >= self.cap {
                return Err(McsError::ResourceLimit {
                    what: "graph vertices",
                    needed: self.vertices.len() + 1,
                    limit: self.cap,
                });
            }
            self.vertices.push(w);
        }
        Ok(id)
    }
}

// Compressed adjacency: targets of vertex k are adj[start[k]..start[k + 1]].
fn csr(nv: usize, edges: &[(u32, u32)], reverse: bool) -> (Vec<u32>, Vec<u32>) {
    let mut start = vec![0u32; nv + 1];
    for &(a, b) in edges {
        let s = if reverse { b } else { a };
        start[s as usize + 1] += 1;
    }
    for k in 1..=nv {
        start[k] += start[k - 1];
    }
    let mut fill = start.clone();
    let mut adj = vec![0u32; edges.len()];
    for &(a, b) in edges {
        let (s, t) = if reverse { (b, a) } else { (a, b) };
        adj[fill[s as usize] as usize] = t;
        fill[s as usize] += 1;
    }
    (start, adj)
}

fn reach(start: &[u32], adj: &[u32], from: u32, allowed: Option<&[bool]>) -> Vec<bool> {
    let mut seen = vec![false; start.len() - 1];
    let mut queue = std::collections::VecDeque::from([from]);
    seen[from as usize] = true;
    while let Some(a) = queue.pop_front() {
        for &b in &adj[start[a as usize] as usize..start[a as usize + 1] as usize] {
            if !seen[b as usize] && allowed.is_none_or(|ok| ok[b as usize]) {
                seen[b as usize] = true;
                queue.push_back(b);
            }
        }
    }
    seen
}

/// The pruned graph. Vertex ids are sorted by `(u, v)`, which is also a
/// topological order since `u` grows strictly in both coordinates along edges.
#[derive(Debug, Clone)]
pub struct AllMcsGraph {
    pair: CanonicalPair,
    vertices: Vec<Vertex>,
    out_start: Vec<u32>,
    out: Vec<u32>,
    in_start: Vec<u32>,
    inc: Vec<u32>,
}

impl AllMcsGraph {
    pub fn build<N: NextPrev + ?Sized>(p: &CanonicalPair, nv: &N) -> Result<Self> {
        Self::build_with(p, nv, GraphConfig::default())
    }

    pub fn build_with<N: NextPrev + ?Sized>(p: &CanonicalPair, nv: &N, config: GraphConfig) -> Result<Self> {
        let (n, m) = (p.x_len(), p.y_len());
        let mut ids = Interner::new(p, &config)?;
        let root = Match::new(1, 1);
        let source = ids.id(Vertex { v: root, u: root })?;
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut succ = Vec::new();
        for ui in 1..=n {
            for uj in 1..=m {
                if !p.is_match(ui, uj) {
                    continue;
                }
                let u = Match::new(ui, uj);
                let cu = p.x(ui);
                succ.clear();
                find_edges(p, nv, u, &mut succ);
                for &v in &succ {
                    let from = ids.id(Vertex { v: nv.prev(cu, v), u })?;
                    let to = ids.id(Vertex {
                        v,
                        u: nv.next(p.x(v.i), u),
                    })?;
                    if edges.len() >= config.max_vertices {
                        return Err(McsError::ResourceLimit {
                            what: "graph edges",
                            needed: edges.len() + 1,
                            limit: config.max_vertices,
                        });
                    }
                    edges.push((from, to));
                }
            }
        }
        let sink_m = p.sink();
        let sink = ids.id(Vertex { v: sink_m, u: sink_m })?;
        let all = std::mem::take(&mut ids.vertices);
        drop(ids);

        // forward pass on G, then backward pass on the reachable part
        let fwd = {
            let (s, a) = csr(all.len(), &edges, false);
            reach(&s, &a, source, None)
        };
        edges.retain(|&(a, _)| fwd[a as usize]);
        let bwd = {
            let (s, a) = csr(all.len(), &edges, true);
            reach(&s, &a, sink, Some(&fwd))
        };
        edges.retain(|&(a, b)| bwd[a as usize] && bwd[b as usize]);

        let mut keep: Vec<u32> = (0..all.len() as u32).filter(|&k| bwd[k as usize] && fwd[k as usize]).collect();
        keep.sort_unstable_by_key(|&k| (all[k as usize].u, all[k as usize].v));
        let mut remap = vec![u32::MAX; all.len()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old as usize] = new as u32;
        }
        let vertices: Vec<Vertex> = keep.iter().map(|&k| all[k as usize]).collect();
        drop(all);
        for e in edges.iter_mut() {
            *e = (remap[e.0 as usize], remap[e.1 as usize]);
        }
        // adjacency order: j of v, then i of u'
        edges.sort_unstable_by_key(|&(a, b)| {
            let w = vertices[b as usize];
            (a, w.v.j, w.u.i, b)
        });
        edges.dedup();
        let (out_start, out) = csr(vertices.len(), &edges, false);
        let (in_start, inc) = csr(vertices.len(), &edges, true);
        Ok(AllMcsGraph {
            pair: p.clone(),
            vertices,
            out_start,
            out,
            in_start,
            inc,
        })
    }

    pub fn pair(&self) -> &CanonicalPair {
        &self.pair
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.len()
    }

    pub fn vertex(&self, id: u32) -> Vertex {
        self.vertices[id as usize]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn source(&self) -> u32 {
        0
    }

    pub fn sink(&self) -> u32 {
        self.vertices.len() as u32 - 1
    }

    pub fn successors(&self, id: u32) -> &[u32] {
        &self.out[self.out_start[id as usize] as usize..self.out_start[id as usize + 1] as usize]
    }

    pub fn predecessors(&self, id: u32) -> &[u32] {
        &self.inc[self.in_start[id as usize] as usize..self.in_start[id as usize + 1] as usize]
    }

    fn rank_of(&self, id: u32) -> Rank {
        self.pair.x(self.vertices[id as usize].u.i)
    }

    /// Cursor over source-to-sink paths in lexicographic order of branch indices.
    pub fn paths(&self) -> PathCursor<'_> {
        PathCursor {
            g: self,
            stack: Vec::new(),
            word: Vec::new(),
            started: false,
        }
    }

    /// Number of source-to-sink paths (saturating).
    pub fn count_paths(&self) -> u128 {
        let mut ways = vec![0u128; self.vertices.len()];
        ways[0] = 1;
        for a in 0..self.vertices.len() as u32 {
            let w = ways[a as usize];
            for &b in self.successors(a) {
                ways[b as usize] = ways[b as usize].saturating_add(w);
            }
        }
        ways[self.sink() as usize]
    }

    // Backward traceback from the sink. `want(x, t)` says whether a prefix
    // ending at x with tag t can continue; `step` gives the predecessor's tag.
    fn traceback(
        &self,
        tag: usize,
        step: impl Fn(u32, usize) -> Option<usize>,
        want: impl Fn(u32, usize) -> bool,
    ) -> Vec<Vec<Rank>> {
        let mut found = Vec::new();
        let mut word = vec![self.rank_of(self.sink())];
        let mut stack: Vec<(u32, usize, usize)> = vec![(self.sink(), tag, 0)];
        while let Some(&mut (x, t, ref mut k)) = stack.last_mut() {
            if x == self.source() {
                found.push(word.iter().rev().copied().collect());
                stack.pop();
                word.pop();
                continue;
            }
            let preds = self.predecessors(x);
            let Some(tp) = step(x, t) else {
                stack.pop();
                word.pop();
                continue;
            };
            match preds[*k..].iter().position(|&q| want(q, tp)) {
                Some(off) => {
                    let q = preds[*k + off];
                    *k += off + 1;
                    stack.push((q, tp, 0));
                    word.push(self.rank_of(q));
                }
                None => {
                    stack.pop();
                    word.pop();
                }
            }
        }
        found.sort();
        found.dedup();
        found
    }

    /// Longest MCSs that are not LCSs, wrapped, with their wrapped length.
    pub fn quasi_lcs(&self) -> (usize, Vec<Vec<Rank>>) {
        // two largest distinct vertex counts of source paths
        let mut top = vec![[0usize; 2]; self.vertices.len()];
        top[0] = [1, 0];
        for a in 0..self.vertices.len() as u32 {
            let [p, q] = top[a as usize];
            for &b in self.successors(a) {
                for cand in [p + 1, q + 1] {
                    if cand > 1 {
                        insert_top2(&mut top[b as usize], cand);
                    }
                }
            }
        }
        let second = top[self.sink() as usize][1];
        if second == 0 {
            return (0, Vec::new());
        }
        let found = self.traceback(second, |_, t| Some(t - 1), |q, t| top[q as usize].contains(&t));
        (second, found)
    }

    /// MCSs maximizing the number of vertices `(w, w)`, wrapped, with that score.
    pub fn most_stable(&self) -> (usize, Vec<Vec<Rank>>) {
        let fixed = |a: u32| {
            let w = self.vertices[a as usize];
            usize::from(w.v == w.u)
        };
        let mut best = vec![0usize; self.vertices.len()];
        best[0] = fixed(0);
        for a in 0..self.vertices.len() as u32 {
            for &b in self.successors(a) {
                best[b as usize] = best[b as usize].max(best[a as usize] + fixed(b));
            }
        }
        let score = best[self.sink() as usize];
        let found = self.traceback(score, |x, t| t.checked_sub(fixed(x)), |q, t| best[q as usize] == t);
        (score, found)
    }

    /// DOT rendering; vertex and edge order follow the adjacency order.
    pub fn export_dot(&self, mut w: impl Write) -> io::Result<()> {
        writeln!(w, "digraph allmcs {{")?;
        for (k, x) in self.vertices.iter().enumerate() {
            writeln!(w, "  n{k} [label=\"{x}\"];")?;
        }
        for a in 0..self.vertices.len() as u32 {
            for &b in self.successors(a) {
                writeln!(w, "  n{a} -> n{b};")?;
            }
        }
        writeln!(w, "}}")
    }
}

fn insert_top2(top: &mut [usize; 2], x: usize) {
    if x > top[0] {
        top[1] = top[0];
        top[0] = x;
    } else if x < top[0] && x > top[1] {
        top[1] = x;
    }
}

/// Depth-first walk over source-to-sink paths; each step yields one wrapped MCS.
pub struct PathCursor<'g> {
    g: &'g AllMcsGraph,
    // (vertex, next branch index)
    stack: Vec<(u32, usize)>,
    word: Vec<Rank>,
    started: bool,
}

impl PathCursor<'_> {
    /// The next path's string, wrapped, or `None` after the last one.
    pub fn next_wrapped(&mut self) -> Option<&[Rank]> {
        let g = self.g;
        if !self.started {
            self.started = true;
            self.stack.push((g.source(), 0));
            self.word.push(g.rank_of(g.source()));
        } else {
            // leave the sink
            self.stack.pop();
            self.word.pop();
        }
        while let Some(&mut (a, ref mut k)) = self.stack.last_mut() {
            if a == g.sink() {
                return Some(&self.word);
            }
            let succ = g.successors(a);
            if *k < succ.len() {
                let b = succ[*k];
                *k += 1;
                self.stack.push((b, 0));
                self.word.push(g.rank_of(b));
            } else {
                self.stack.pop();
                self.word.pop();
            }
        }
        None
    }

    /// Branch indices of the current path (1-based, as in `id(P)`).
    pub fn id(&self) -> Vec<usize> {
        self.stack[..self.stack.len().saturating_sub(1)].iter().map(|&(_, k)| k).collect()
    }
}

impl Iterator for PathCursor<'_> {
    type Item = Vec<Rank>;

    fn next(&mut self) -> Option<Vec<Rank>> {
        self.next_wrapped().map(|z| z[1..z.len() - 1].to_vec())
    }
}
