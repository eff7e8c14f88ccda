//! Isomorph-free generation of small connected graphs with bounded degree
//! and girth.
//!
//! Graphs are grown in breadth-first order: vertices are closed one at a time
//! in label order, and closing vertex `c` fixes its whole neighborhood, either
//! by joining it to already-created open vertices or by creating fresh
//! vertices (which receive the next labels). Every connected graph arises
//! this way from every choice of root, so the root is restricted to a vertex
//! that maximizes a cheap invariant. Surviving labelings are deduplicated by
//! canonical form.

use std::collections::BTreeMap;
use std::thread;

use super::canon::{canonical_graph, CanonicalForm};
use super::SearchError;
use crate::graph::Graph;

/// Largest vertex count the bitset representation supports.
const HARD_LIMIT: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Constraints {
    pub n: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub min_girth: usize,
}

impl Constraints {
    pub fn new(n: usize, min_degree: usize, max_degree: usize, min_girth: usize) -> Self {
        Constraints { n, min_degree, max_degree, min_girth }
    }

    /// Whether `g` satisfies every constraint (used for re-checking output).
    pub fn admits(&self, g: &Graph) -> bool {
        g.n() == self.n
            && g.is_connected()
            && (0..g.n()).all(|v| (self.min_degree..=self.max_degree).contains(&g.degree(v)))
            && g.girth().at_least(self.min_girth)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Refuse `n` above this.
    pub limit: usize,
    pub workers: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { limit: 16, workers: 1 }
    }
}

/// One representative per isomorphism class, in canonical-form order. Each
/// representative is the canonically relabeled graph.
pub fn enumerate_graphs(
    c: &Constraints,
    opts: &EnumerationOptions,
) -> Result<Vec<(CanonicalForm, Graph)>, SearchError> {
    if c.n > opts.limit.min(HARD_LIMIT) {
        return Err(SearchError::LimitExceeded { n: c.n, limit: opts.limit.min(HARD_LIMIT) });
    }
    if !(2 <= c.min_degree && c.min_degree <= c.max_degree && c.max_degree <= 3) {
        return Err(SearchError::InvalidConstraints(format!(
            "need 2 <= min_degree <= max_degree <= 3, got [{}, {}]",
            c.min_degree, c.max_degree
        )));
    }
    if c.min_girth < 5 {
        return Err(SearchError::InvalidConstraints(format!(
            "min_girth must be at least 5, got {}",
            c.min_girth
        )));
    }
    if c.n == 0 {
        return Ok(Vec::new());
    }

    // Split the search tree after the first two vertices are closed.
    let mut prefixes = Vec::new();
    Builder::new(c).expand(&mut Sink::Prefixes { depth: 2.min(c.n), out: &mut prefixes });

    let workers = opts.workers.max(1);
    let merged: BTreeMap<CanonicalForm, Graph> = if workers == 1 {
        run_prefixes(c, prefixes.iter())
    } else {
        let prefixes = &prefixes;
        thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    s.spawn(move || {
                        run_prefixes(c, prefixes.iter().skip(w).step_by(workers))
                    })
                })
                .collect();
            let mut all = BTreeMap::new();
            for h in handles {
                all.extend(h.join().expect("enumeration worker panicked"));
            }
            all
        })
    };
    Ok(merged.into_iter().collect())
}

fn run_prefixes<'a>(
    c: &Constraints,
    prefixes: impl Iterator<Item = &'a Builder>,
) -> BTreeMap<CanonicalForm, Graph> {
    let mut found = BTreeMap::new();
    for p in prefixes {
        let mut b = p.clone();
        b.constraints = *c;
        b.expand(&mut Sink::Graphs(&mut found));
    }
    found
}

enum Sink<'a> {
    Prefixes { depth: usize, out: &'a mut Vec<Builder> },
    Graphs(&'a mut BTreeMap<CanonicalForm, Graph>),
}

#[derive(Clone)]
struct Builder {
    constraints: Constraints,
    adj: Vec<u32>,
    /// Vertices created so far (labels `0..used`).
    used: usize,
    /// Vertices `0..cur` are closed: their neighborhoods are final.
    cur: usize,
    /// Degree cap: the root's final degree.
    cap: usize,
}

impl Builder {
    fn new(c: &Constraints) -> Self {
        Builder {
            constraints: *c,
            adj: vec![0; c.n],
            used: 1,
            cur: 0,
            cap: c.max_degree,
        }
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// True when `a` and `b` are at distance at least `girth - 1`, so the
    /// edge `ab` closes no cycle shorter than `girth`.
    fn far_enough(&self, a: usize, b: usize) -> bool {
        let mut reach = 1u32 << a;
        for _ in 0..self.constraints.min_girth - 2 {
            let mut next = reach;
            let mut bits = reach;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next |= self.adj[v];
            }
            if next & (1 << b) != 0 {
                return false;
            }
            if next == reach {
                break;
            }
            reach = next;
        }
        true
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a] &= !(1 << b);
        self.adj[b] &= !(1 << a);
    }

    fn expand(&mut self, sink: &mut Sink<'_>) {
        let n = self.constraints.n;
        if let Sink::Prefixes { depth, out } = sink {
            if self.cur == *depth || self.cur == self.used {
                out.push(self.clone());
                return;
            }
        }
        if self.cur == self.used {
            if self.used == n {
                if let Sink::Graphs(found) = sink {
                    self.emit(found);
                }
            }
            return;
        }
        let c = self.cur;
        let candidates: Vec<usize> = (c + 1..self.used)
            .filter(|&w| self.adj[c] & (1 << w) == 0 && self.degree(w) < self.cap)
            .collect();
        self.choose(&candidates, 0, sink);
    }

    /// Picks the subset of `candidates[from..]` to join to the current vertex,
    /// then the number of fresh vertices.
    fn choose(&mut self, candidates: &[usize], from: usize, sink: &mut Sink<'_>) {
        let c = self.cur;
        let n = self.constraints.n;
        let deg = self.degree(c);
        let lo = self.constraints.min_degree;
        let hi = if c == 0 { self.constraints.max_degree } else { self.cap };

        if deg < hi {
            for (k, &w) in candidates.iter().enumerate().skip(from) {
                if self.degree(w) < self.cap && self.far_enough(c, w) {
                    self.add_edge(c, w);
                    self.choose(candidates, k + 1, sink);
                    self.remove_edge(c, w);
                }
            }
        }

        // Finish with `fresh` new neighbors.
        for fresh in 0..=hi.saturating_sub(deg) {
            let total = deg + fresh;
            if total < lo || self.used + fresh > n {
                continue;
            }
            let (saved_used, saved_cap) = (self.used, self.cap);
            for i in 0..fresh {
                self.add_edge(c, self.used + i);
            }
            self.used += fresh;
            if c == 0 {
                self.cap = total;
            }
            self.cur += 1;
            self.expand(sink);
            self.cur -= 1;
            self.used = saved_used;
            self.cap = saved_cap;
            for i in 0..fresh {
                self.remove_edge(c, saved_used + i);
            }
        }
    }

    fn graph(&self) -> Graph {
        let n = self.constraints.n;
        let mut edges = Vec::new();
        for u in 0..n {
            let higher = u32::MAX.checked_shl(u as u32 + 1).unwrap_or(0);
            let mut bits = self.adj[u] & higher;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).expect("builder keeps graphs simple")
    }

    /// Vertex invariant: degree, then the sizes of the distance spheres.
    fn invariant(&self, v: usize) -> (usize, [u8; 8]) {
        let mut spheres = [0u8; 8];
        let mut seen = 1u32 << v;
        let mut frontier = seen;
        for slot in spheres.iter_mut() {
            let mut next = 0u32;
            let mut bits = frontier;
            while bits != 0 {
                let u = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next |= self.adj[u];
            }
            next &= !seen;
            if next == 0 {
                break;
            }
            *slot = next.count_ones() as u8;
            seen |= next;
            frontier = next;
        }
        (self.degree(v), spheres)
    }

    fn emit(&self, found: &mut BTreeMap<CanonicalForm, Graph>) {
        let root = self.invariant(0);
        if (1..self.constraints.n).any(|v| self.invariant(v) > root) {
            return;
        }
        let (form, g) = canonical_graph(&self.graph());
        found.entry(form).or_insert(g);
    }
}
