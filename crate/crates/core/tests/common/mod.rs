//! Independent reference implementations used by the integration tests.
//! Nothing here calls into the algorithms it is checking.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use num::{BigInt, Integer, ToPrimitive};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use ricci_flat::transport::Measure;
use ricci_flat::{Graph, Rational, Vertex};

/// All-pairs hop distances by Floyd-Warshall; `u32::MAX` when unreachable.
pub fn all_pairs(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n();
    let inf = u32::MAX;
    let mut d = vec![vec![inf; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = 0;
        for &v in g.neighbors(u) {
            row[v] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] != inf && d[k][j] != inf && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Shortest cycle length by enumerating every simple cycle with DFS.
/// Each cycle is rooted at its smallest vertex.
pub fn dfs_girth(g: &Graph) -> Option<usize> {
    fn walk(g: &Graph, s: Vertex, v: Vertex, len: usize, on_path: &mut [bool], best: &mut Option<usize>) {
        for &w in g.neighbors(v) {
            if w == s && len >= 3 {
                *best = Some(best.map_or(len, |b| b.min(len)));
            } else if w > s && !on_path[w] && best.is_none_or(|b| len + 1 < b) {
                on_path[w] = true;
                walk(g, s, w, len + 1, on_path, best);
                on_path[w] = false;
            }
        }
    }
    let mut best = None;
    let mut on_path = vec![false; g.n()];
    for s in 0..g.n() {
        on_path[s] = true;
        walk(g, s, s, 1, &mut on_path, &mut best);
        on_path[s] = false;
    }
    best
}

/// Every simple 5-cycle, identified by its edge set.
pub fn dfs_five_cycles(g: &Graph) -> BTreeSet<BTreeSet<(Vertex, Vertex)>> {
    fn key(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
        (a.min(b), a.max(b))
    }
    fn walk(
        g: &Graph,
        path: &mut Vec<Vertex>,
        out: &mut BTreeSet<BTreeSet<(Vertex, Vertex)>>,
    ) {
        let s = path[0];
        let v = *path.last().unwrap();
        if path.len() == 5 {
            if g.neighbors(v).contains(&s) {
                let mut edges: BTreeSet<_> = path.windows(2).map(|w| key(w[0], w[1])).collect();
                edges.insert(key(v, s));
                out.insert(edges);
            }
            return;
        }
        for &w in g.neighbors(v) {
            if w > s && !path.contains(&w) {
                path.push(w);
                walk(g, path, out);
                path.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    for s in 0..g.n() {
        walk(g, &mut vec![s], &mut out);
    }
    out
}

/// Number of 5-cycles through the edge `xy`, from [`dfs_five_cycles`].
pub fn dfs_count_through(cycles: &BTreeSet<BTreeSet<(Vertex, Vertex)>>, x: Vertex, y: Vertex) -> usize {
    let e = (x.min(y), x.max(y));
    cycles.iter().filter(|c| c.contains(&e)).count()
}

/// W1 by exhaustive search over every integer flow after scaling both
/// measures to a common denominator. Sub-searches are memoized on
/// (source index, remaining demand), which prunes no feasible flow.
pub fn exhaustive_w1(g: &Graph, mu: &Measure, nu: &Measure) -> Rational {
    let d = all_pairs(g);
    let mut scale = BigInt::from(1);
    for (_, w) in mu.iter().chain(nu.iter()) {
        scale = scale.lcm(w.denom());
    }
    let to_units = |w: &Rational| (w.numer() * &scale / w.denom()).to_u32().expect("small scale");
    let src: Vec<(Vertex, u32)> = mu.iter().map(|(v, w)| (v, to_units(w))).collect();
    let dst: Vec<(Vertex, u32)> = nu.iter().map(|(v, w)| (v, to_units(w))).collect();
    let cost: Vec<Vec<u64>> = src
        .iter()
        .map(|&(u, _)| {
            dst.iter()
                .map(|&(v, _)| {
                    assert!(d[u][v] != u32::MAX, "supports must be connected");
                    u64::from(d[u][v])
                })
                .collect()
        })
        .collect();

    struct Search<'a> {
        src: &'a [(Vertex, u32)],
        cost: &'a [Vec<u64>],
        memo: HashMap<(usize, Vec<u32>), u64>,
    }
    impl Search<'_> {
        fn best(&mut self, i: usize, rem: Vec<u32>) -> u64 {
            if i == self.src.len() {
                return if rem.iter().all(|&r| r == 0) { 0 } else { u64::MAX };
            }
            if let Some(&c) = self.memo.get(&(i, rem.clone())) {
                return c;
            }
            let mut best = u64::MAX;
            let mut split = rem.clone();
            self.spread(i, 0, self.src[i].1, 0, &rem, &mut split, &mut best);
            self.memo.insert((i, rem), best);
            best
        }

        /// Tries every way to send `left` units from source `i` into sinks `j..`.
        #[allow(clippy::too_many_arguments)]
        fn spread(
            &mut self,
            i: usize,
            j: usize,
            left: u32,
            acc: u64,
            rem: &[u32],
            split: &mut Vec<u32>,
            best: &mut u64,
        ) {
            if j == rem.len() {
                if left == 0 {
                    let tail = self.best(i + 1, split.clone());
                    if tail != u64::MAX {
                        *best = (*best).min(acc + tail);
                    }
                }
                return;
            }
            for f in 0..=left.min(rem[j]) {
                split[j] = rem[j] - f;
                self.spread(i, j + 1, left - f, acc + u64::from(f) * self.cost[i][j], rem, split, best);
            }
            split[j] = rem[j];
        }
    }

    let mut search = Search { src: &src, cost: &cost, memo: HashMap::new() };
    let units = search.best(0, dst.iter().map(|&(_, w)| w).collect());
    Rational::from_big(BigInt::from(units), scale)
}

/// Random connected graph on `n` vertices with girth at least 5 and maximum
/// degree at most `max_degree`: a random tree plus random far-apart chords.
pub fn random_girth5(n: usize, max_degree: usize, rng: &mut StdRng) -> Graph {
    let mut edges = Vec::new();
    let mut deg = vec![0usize; n];
    for v in 1..n {
        let open: Vec<Vertex> = (0..v).filter(|&u| deg[u] < max_degree).collect();
        let u = *open.choose(rng).expect("a tree with max degree >= 2 always has room");
        edges.push((u, v));
        deg[u] += 1;
        deg[v] += 1;
    }
    for _ in 0..2 * n {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || deg[u] >= max_degree || deg[v] >= max_degree {
            continue;
        }
        let g = Graph::new(n, &edges).unwrap();
        if all_pairs(&g)[u][v] >= 4 {
            edges.push((u, v));
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    Graph::new(n, &edges).unwrap()
}

pub fn random_permutation(n: usize, rng: &mut StdRng) -> Vec<Vertex> {
    let mut p: Vec<Vertex> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Random measure with at most `max_support` atoms and weights `p/q`, `q <= 6`.
pub fn random_measure(g: &Graph, max_support: usize, rng: &mut StdRng) -> Measure {
    let k = rng.gen_range(1..=max_support.min(g.n()));
    let mut support: Vec<Vertex> = (0..g.n()).collect();
    support.shuffle(rng);
    support.truncate(k);
    let q = rng.gen_range(k..=6.max(k));
    let mut cuts: Vec<usize> = (1..q).collect();
    cuts.shuffle(rng);
    cuts.truncate(k - 1);
    cuts.push(0);
    cuts.push(q);
    cuts.sort_unstable();
    let weights = support
        .into_iter()
        .zip(cuts.windows(2))
        .map(|(v, w)| (v, Rational::new((w[1] - w[0]) as i64, q as i64)));
    Measure::new(weights).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn cycle(k: usize) -> Graph {
    let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    Graph::new(k, &edges).unwrap()
}
