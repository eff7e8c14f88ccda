use super::{wasserstein, Measure, TransportError};
use crate::graph::{Graph, Vertex};
use crate::rational::Rational;

/// Lazy random-walk measure: mass `alpha` stays at `x`, the rest is spread
/// evenly over the neighbors of `x`.
pub fn lazy_measure(g: &Graph, x: Vertex, alpha: &Rational) -> Result<Measure, TransportError> {
    g.check_vertex(x)?;
    if alpha.is_negative() || *alpha > Rational::one() {
        return Err(TransportError::AlphaOutOfRange(alpha.clone()));
    }
    let deg = g.degree(x);
    if deg == 0 {
        if *alpha == Rational::one() {
            return Ok(Measure::point(x));
        }
        return Err(TransportError::IsolatedVertex(x));
    }
    let share = (Rational::one() - alpha) / Rational::from(deg as i64);
    let weights = std::iter::once((x, alpha.clone()))
        .chain(g.neighbors(x).iter().map(|&v| (v, share.clone())));
    Measure::new(weights)
}

fn require_edge(g: &Graph, x: Vertex, y: Vertex) -> Result<(), TransportError> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if g.has_edge(x, y) {
        Ok(())
    } else {
        Err(TransportError::NotAnEdge(x, y))
    }
}

/// `1 - W1(mu_x, mu_y)` for the lazy measures with idleness `alpha`.
pub fn kappa_alpha(
    g: &Graph,
    x: Vertex,
    y: Vertex,
    alpha: &Rational,
) -> Result<Rational, TransportError> {
    require_edge(g, x, y)?;
    let mu = lazy_measure(g, x, alpha)?;
    let nu = lazy_measure(g, y, alpha)?;
    let (w, _) = wasserstein(g, &mu, &nu)?;
    Ok(Rational::one() - w)
}

/// Lin-Lu-Yau curvature of the edge `xy`.
///
/// On edges the idleness function is linear for `alpha` in
/// `[1/(max(d_x, d_y) + 1), 1]` and vanishes at 1, so `kappa_alpha / (1 - alpha)`
/// is constant there. It is evaluated at 1/2 and at 2/3 and the two quotients
/// must agree exactly; a mismatch is reported rather than returned.
pub fn lly_curvature(g: &Graph, x: Vertex, y: Vertex) -> Result<Rational, TransportError> {
    let half = Rational::new(1, 2);
    let two_thirds = Rational::new(2, 3);
    let at_half = kappa_alpha(g, x, y, &half)? / (Rational::one() - &half);
    let at_two_thirds = kappa_alpha(g, x, y, &two_thirds)? / (Rational::one() - &two_thirds);
    if at_half != at_two_thirds {
        return Err(TransportError::LinearityViolation {
            x,
            y,
            at_half,
            at_two_thirds,
        });
    }
    Ok(at_half)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curvature {
    pub edge: (Vertex, Vertex),
    pub kappa: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlatVerdict {
    Flat,
    /// First edge (in the order checked) whose curvature is not zero.
    Witness(Curvature),
}

impl FlatVerdict {
    pub fn is_flat(&self) -> bool {
        matches!(self, FlatVerdict::Flat)
    }
}

/// Checks `kappa = 0` on every edge, in lexicographic edge order.
pub fn is_ricci_flat(g: &Graph) -> Result<FlatVerdict, TransportError> {
    if g.m() == 0 {
        return Err(TransportError::EmptyGraph);
    }
    let edges: Vec<_> = g.edges().collect();
    is_ricci_flat_on(g, &edges)
}

/// Like [`is_ricci_flat`] but restricted to `edges`, checked in the given order.
pub fn is_ricci_flat_on(
    g: &Graph,
    edges: &[(Vertex, Vertex)],
) -> Result<FlatVerdict, TransportError> {
    if edges.is_empty() {
        return Err(TransportError::EmptyGraph);
    }
    for &(x, y) in edges {
        let kappa = lly_curvature(g, x, y)?;
        if !kappa.is_zero() {
            return Ok(FlatVerdict::Witness(Curvature { edge: (x, y), kappa }));
        }
    }
    Ok(FlatVerdict::Flat)
}
