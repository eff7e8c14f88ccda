//! Integer min-cost flow for small dense transportation problems.
//!
//! Successive shortest augmenting paths with Johnson potentials, then an
//! independent Bellman-Ford pass over the final residual network to recover
//! optimal dual prices.

use num::bigint::BigInt;
use num::{Signed, Zero};

pub(crate) struct Plan {
    /// `flow[i][j]` shipped from source `i` to sink `j`.
    pub flow: Vec<Vec<BigInt>>,
    pub cost: BigInt,
    /// Dual prices with `src[i] - dst[j] <= cost[i][j]`, tight wherever flow
    /// is positive.
    #[allow(dead_code)]
    pub src_price: Vec<i64>,
    pub dst_price: Vec<i64>,
}

/// Solves the balanced transportation problem with uncapacitated arcs.
///
/// `supply` and `demand` must be nonnegative with equal totals; `cost` is
/// `supply.len() x demand.len()` and nonnegative.
pub(crate) fn solve(supply: &[BigInt], demand: &[BigInt], cost: &[Vec<i64>]) -> Plan {
    let ns = supply.len();
    let nt = demand.len();
    debug_assert_eq!(
        supply.iter().sum::<BigInt>(),
        demand.iter().sum::<BigInt>(),
        "unbalanced transportation problem"
    );
    // Node layout: sources 0..ns, sinks ns..ns+nt, super source S, super sink T.
    let s_node = ns + nt;
    let t_node = s_node + 1;
    let nodes = t_node + 1;

    let mut flow = vec![vec![BigInt::zero(); nt]; ns];
    let mut left_supply = supply.to_vec();
    let mut left_demand = demand.to_vec();
    let mut potential = vec![0i64; nodes];

    loop {
        // Residual arcs are enumerated on the fly; the network is tiny.
        let arcs_from = |u: usize, flow: &Vec<Vec<BigInt>>| -> Vec<(usize, i64)> {
            let mut out = Vec::new();
            if u == s_node {
                for (i, s) in left_supply.iter().enumerate() {
                    if s.is_positive() {
                        out.push((i, 0));
                    }
                }
            } else if u < ns {
                for j in 0..nt {
                    out.push((ns + j, cost[u][j]));
                }
            } else if u < s_node {
                let j = u - ns;
                for i in 0..ns {
                    if flow[i][j].is_positive() {
                        out.push((i, -cost[i][j]));
                    }
                }
                if left_demand[j].is_positive() {
                    out.push((t_node, 0));
                }
            }
            out
        };

        let mut dist = vec![i64::MAX; nodes];
        let mut prev = vec![usize::MAX; nodes];
        let mut done = vec![false; nodes];
        dist[s_node] = 0;
        loop {
            let Some(u) = (0..nodes)
                .filter(|&v| !done[v] && dist[v] != i64::MAX)
                .min_by_key(|&v| (dist[v], v))
            else {
                break;
            };
            done[u] = true;
            for (v, c) in arcs_from(u, &flow) {
                let reduced = c + potential[u] - potential[v];
                debug_assert!(reduced >= 0, "negative reduced cost {reduced}");
                let cand = dist[u] + reduced;
                if cand < dist[v] {
                    dist[v] = cand;
                    prev[v] = u;
                }
            }
        }
        if dist[t_node] == i64::MAX {
            break;
        }
        for v in 0..nodes {
            if dist[v] != i64::MAX {
                potential[v] += dist[v];
            }
        }

        // Walk back from T to find the bottleneck.
        let mut path = vec![t_node];
        while *path.last().unwrap() != s_node {
            path.push(prev[*path.last().unwrap()]);
        }
        path.reverse();
        let first_source = path[1];
        let last_sink = path[path.len() - 2] - ns;
        let mut amount = left_supply[first_source].clone().min(left_demand[last_sink].clone());
        for w in path[1..path.len() - 1].windows(2) {
            let (u, v) = (w[0], w[1]);
            if u >= ns {
                // backward arc sink u -> source v
                amount = amount.min(flow[v][u - ns].clone());
            }
        }
        for w in path[1..path.len() - 1].windows(2) {
            let (u, v) = (w[0], w[1]);
            if u < ns {
                flow[u][v - ns] += &amount;
            } else {
                flow[v][u - ns] -= &amount;
            }
        }
        left_supply[first_source] -= &amount;
        left_demand[last_sink] -= &amount;
    }
    debug_assert!(left_supply.iter().all(Zero::is_zero));
    debug_assert!(left_demand.iter().all(Zero::is_zero));

    let mut total = BigInt::zero();
    for i in 0..ns {
        for j in 0..nt {
            total += &flow[i][j] * cost[i][j];
        }
    }

    // Shortest distances from a virtual root over the residual network; the
    // residual of an optimal flow has no negative cycle.
    let mut pi = vec![0i64; ns + nt];
    for _ in 0..ns + nt {
        let mut changed = false;
        for i in 0..ns {
            for j in 0..nt {
                if pi[i] + cost[i][j] < pi[ns + j] {
                    pi[ns + j] = pi[i] + cost[i][j];
                    changed = true;
                }
                if flow[i][j].is_positive() && pi[ns + j] - cost[i][j] < pi[i] {
                    pi[i] = pi[ns + j] - cost[i][j];
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    Plan {
        flow,
        cost: total,
        src_price: pi[..ns].iter().map(|p| -p).collect(),
        dst_price: pi[ns..].iter().map(|p| -p).collect(),
    }
}
