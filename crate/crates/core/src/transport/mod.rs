//! Exact optimal transport on graphs and Lin-Lu-Yau curvature.
//!
//! All quantities are exact rationals. The Wasserstein-1 distance is solved as
//! an integer transportation problem after scaling both measures by a common
//! denominator, and every solution comes with a Kantorovich certificate: a
//! feasible flow plus a 1-Lipschitz integer potential whose dual value equals
//! the primal cost.

mod curvature;
mod flow;

use std::collections::{BTreeMap, BTreeSet};

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};
use crate::rational::Rational;

pub use curvature::{
    is_ricci_flat, is_ricci_flat_on, kappa_alpha, lazy_measure, lly_curvature, Curvature,
    FlatVerdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransportError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("vertex {0} is isolated; lazy measure needs alpha = 1")]
    IsolatedVertex(Vertex),
    #[error("alpha {0} outside [0, 1]")]
    AlphaOutOfRange(Rational),
    #[error("supports are in different components ({0} cannot reach {1})")]
    DisconnectedSupports(Vertex, Vertex),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error(
        "idleness not linear on edge {x}-{y}: kappa_1/2/(1/2) = {at_half}, kappa_2/3/(1/3) = {at_two_thirds}"
    )]
    LinearityViolation {
        x: Vertex,
        y: Vertex,
        at_half: Rational,
        at_two_thirds: Rational,
    },
    #[error("graph has no edges")]
    EmptyGraph,
}

/// Finitely supported probability measure with strictly positive weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure {
    weights: BTreeMap<Vertex, Rational>,
}

impl Measure {
    /// Builds a measure, merging repeated vertices and dropping zero weights.
    pub fn new(
        weights: impl IntoIterator<Item = (Vertex, Rational)>,
    ) -> Result<Self, TransportError> {
        let mut map: BTreeMap<Vertex, Rational> = BTreeMap::new();
        for (v, w) in weights {
            let slot = map.entry(v).or_insert_with(Rational::zero);
            *slot = &*slot + &w;
        }
        if let Some((v, w)) = map.iter().find(|(_, w)| w.is_negative()) {
            return Err(TransportError::InvalidMeasure(format!("weight {w} at vertex {v}")));
        }
        map.retain(|_, w| !w.is_zero());
        let total: Rational = map.values().sum();
        if total != Rational::one() {
            return Err(TransportError::InvalidMeasure(format!("total mass {total}")));
        }
        Ok(Measure { weights: map })
    }

    pub fn point(v: Vertex) -> Self {
        Measure {
            weights: BTreeMap::from([(v, Rational::one())]),
        }
    }

    pub fn weight(&self, v: Vertex) -> Rational {
        self.weights.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.weights.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, &Rational)> {
        self.weights.iter().map(|(&v, w)| (v, w))
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Proof object for an exact W1 value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportCertificate {
    /// Positive entries of an optimal coupling, keyed by (from, to).
    pub flow: BTreeMap<(Vertex, Vertex), Rational>,
    /// 1-Lipschitz potential on the union of both supports.
    pub potentials: BTreeMap<Vertex, i64>,
    pub cost: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("negative flow {0} on {1:?}")]
    NegativeFlow(Rational, (Vertex, Vertex)),
    #[error("outflow at {0} is {1}, expected {2}")]
    SourceMarginal(Vertex, Rational, Rational),
    #[error("inflow at {0} is {1}, expected {2}")]
    TargetMarginal(Vertex, Rational, Rational),
    #[error("potential not 1-Lipschitz between {0} and {1}")]
    NotLipschitz(Vertex, Vertex),
    #[error("potential missing at vertex {0}")]
    MissingPotential(Vertex),
    #[error("vertices {0} and {1} are disconnected")]
    Disconnected(Vertex, Vertex),
    #[error("primal cost {primal} differs from claimed cost {claimed}")]
    PrimalMismatch { primal: Rational, claimed: Rational },
    #[error("dual value {dual} differs from claimed cost {claimed}")]
    DualGap { dual: Rational, claimed: Rational },
}

impl TransportCertificate {
    /// Re-checks the certificate from scratch against `g`, `mu` and `nu`.
    pub fn validate(&self, g: &Graph, mu: &Measure, nu: &Measure) -> Result<(), CertificateError> {
        let mut out: BTreeMap<Vertex, Rational> = BTreeMap::new();
        let mut inn: BTreeMap<Vertex, Rational> = BTreeMap::new();
        let mut primal = Rational::zero();
        for (&(a, b), f) in &self.flow {
            if f.is_negative() {
                return Err(CertificateError::NegativeFlow(f.clone(), (a, b)));
            }
            let d = g
                .bfs_distances(a)
                .ok()
                .and_then(|row| row.get(b).copied().flatten())
                .ok_or(CertificateError::Disconnected(a, b))?;
            primal = primal + f * &Rational::from(d as i64);
            let o = out.entry(a).or_insert_with(Rational::zero);
            *o = &*o + f;
            let i = inn.entry(b).or_insert_with(Rational::zero);
            *i = &*i + f;
        }
        let sources: BTreeSet<_> = mu.support().chain(out.keys().copied()).collect();
        for v in sources {
            let got = out.get(&v).cloned().unwrap_or_else(Rational::zero);
            if got != mu.weight(v) {
                return Err(CertificateError::SourceMarginal(v, got, mu.weight(v)));
            }
        }
        let targets: BTreeSet<_> = nu.support().chain(inn.keys().copied()).collect();
        for v in targets {
            let got = inn.get(&v).cloned().unwrap_or_else(Rational::zero);
            if got != nu.weight(v) {
                return Err(CertificateError::TargetMarginal(v, got, nu.weight(v)));
            }
        }
        if primal != self.cost {
            return Err(CertificateError::PrimalMismatch { primal, claimed: self.cost.clone() });
        }

        let union: BTreeSet<_> = mu.support().chain(nu.support()).collect();
        for &v in &union {
            if !self.potentials.contains_key(&v) {
                return Err(CertificateError::MissingPotential(v));
            }
        }
        for &a in &union {
            let row = g.bfs_distances(a).map_err(|_| CertificateError::Disconnected(a, a))?;
            for &b in &union {
                let d = row[b].ok_or(CertificateError::Disconnected(a, b))? as i64;
                if self.potentials[&a] - self.potentials[&b] > d {
                    return Err(CertificateError::NotLipschitz(a, b));
                }
            }
        }
        let dual: Rational = union
            .iter()
            .map(|&v| (mu.weight(v) - nu.weight(v)) * Rational::from(self.potentials[&v]))
            .sum();
        if dual != self.cost {
            return Err(CertificateError::DualGap { dual, claimed: self.cost.clone() });
        }
        Ok(())
    }
}

fn lcm_of_denominators<'a>(ws: impl Iterator<Item = &'a Rational>) -> BigInt {
    ws.fold(BigInt::one(), |acc, w| acc.lcm(w.denom()))
}

fn scaled(w: &Rational, scale: &BigInt) -> BigInt {
    let v = w.numer() * scale;
    debug_assert!((&v % w.denom()).is_zero());
    v / w.denom()
}

/// Exact Wasserstein-1 distance between `mu` and `nu` under the hop metric
/// of `g`, with an optimality certificate.
pub fn wasserstein(
    g: &Graph,
    mu: &Measure,
    nu: &Measure,
) -> Result<(Rational, TransportCertificate), TransportError> {
    let sources: Vec<Vertex> = mu.support().collect();
    let sinks: Vec<Vertex> = nu.support().collect();
    let union: Vec<Vertex> = mu
        .support()
        .chain(nu.support())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let mut dist_rows: BTreeMap<Vertex, Vec<Option<usize>>> = BTreeMap::new();
    for &v in &union {
        dist_rows.insert(v, g.bfs_distances(v)?);
    }
    let dist = |a: Vertex, b: Vertex| -> Result<i64, TransportError> {
        dist_rows[&a][b]
            .map(|d| d as i64)
            .ok_or(TransportError::DisconnectedSupports(a, b))
    };

    let mut cost = vec![vec![0i64; sinks.len()]; sources.len()];
    for (i, &a) in sources.iter().enumerate() {
        for (j, &b) in sinks.iter().enumerate() {
            cost[i][j] = dist(a, b)?;
        }
    }
    for &a in &union {
        for &b in &union {
            dist(a, b)?;
        }
    }

    let scale = lcm_of_denominators(mu.iter().map(|(_, w)| w).chain(nu.iter().map(|(_, w)| w)));
    let supply: Vec<BigInt> = mu.iter().map(|(_, w)| scaled(w, &scale)).collect();
    let demand: Vec<BigInt> = nu.iter().map(|(_, w)| scaled(w, &scale)).collect();
    let plan = flow::solve(&supply, &demand, &cost);

    let value = Rational::from_big(plan.cost.clone(), scale.clone());
    let mut flow_map = BTreeMap::new();
    for (i, &a) in sources.iter().enumerate() {
        for (j, &b) in sinks.iter().enumerate() {
            if plan.flow[i][j].is_positive() {
                flow_map.insert((a, b), Rational::from_big(plan.flow[i][j].clone(), scale.clone()));
            }
        }
    }
    // c-transform of the sink prices gives one 1-Lipschitz potential that
    // dominates the source prices and is dominated by the sink prices.
    let mut potentials = BTreeMap::new();
    for &z in &union {
        let f = sinks
            .iter()
            .enumerate()
            .map(|(j, &b)| plan.dst_price[j] + dist(z, b).expect("checked above"))
            .min()
            .expect("measures are nonempty");
        potentials.insert(z, f);
    }
    let cert = TransportCertificate {
        flow: flow_map,
        potentials,
        cost: value.clone(),
    };
    Ok((value, cert))
}
