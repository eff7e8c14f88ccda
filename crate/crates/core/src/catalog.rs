//! Constructors for the graph families in the Ricci-flat girth-5 classification.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid family spec: {0}")]
pub struct InvalidSpec(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Petersen,
    Dodecahedral,
    HalfDodecahedral,
    Triplex,
    /// Generalized Petersen graph GP(k, t).
    GeneralizedPetersen(usize, usize),
}

impl Family {
    pub fn validate(self) -> Result<Self, InvalidSpec> {
        let ok = match self {
            Family::Path(k) => k >= 2,
            Family::Cycle(k) => k >= 3,
            Family::GeneralizedPetersen(k, t) => k >= 3 && t >= 1 && 2 * t < k,
            _ => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(InvalidSpec(self.to_string()))
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(k) => write!(f, "path:{k}"),
            Family::Cycle(k) => write!(f, "cycle:{k}"),
            Family::Petersen => f.write_str("petersen"),
            Family::Dodecahedral => f.write_str("dodecahedral"),
            Family::HalfDodecahedral => f.write_str("half-dodecahedral"),
            Family::Triplex => f.write_str("triplex"),
            Family::GeneralizedPetersen(k, t) => write!(f, "gp:{k},{t}"),
        }
    }
}

impl FromStr for Family {
    type Err = InvalidSpec;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || InvalidSpec(s.to_string());
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let family = match s.split_once(':') {
            None => match s {
                "petersen" => Family::Petersen,
                "dodecahedral" => Family::Dodecahedral,
                "half-dodecahedral" => Family::HalfDodecahedral,
                "triplex" => Family::Triplex,
                _ => return Err(bad()),
            },
            Some(("path", k)) => Family::Path(num(k)?),
            Some(("cycle", k)) => Family::Cycle(num(k)?),
            Some(("gp", kt)) => {
                let (k, t) = kt.split_once(',').ok_or_else(bad)?;
                Family::GeneralizedPetersen(num(k)?, num(t)?)
            }
            _ => return Err(bad()),
        };
        family.validate()
    }
}

/// Triplex chords, 1-based around the 12-cycle.
const TRIPLEX_CHORDS: [(Vertex, Vertex); 6] = [(1, 7), (2, 10), (3, 8), (4, 12), (5, 9), (6, 11)];

pub fn make_family(family: Family) -> Result<Graph, InvalidSpec> {
    let family = family.validate()?;
    let (n, edges): (usize, Vec<(Vertex, Vertex)>) = match family {
        Family::Path(k) => (k, (0..k - 1).map(|i| (i, i + 1)).collect()),
        Family::Cycle(k) => (k, (0..k).map(|i| (i, (i + 1) % k)).collect()),
        Family::GeneralizedPetersen(k, t) => {
            let mut e = Vec::with_capacity(3 * k);
            for i in 0..k {
                e.push((i, (i + 1) % k));
                e.push((k + i, k + (i + t) % k));
                e.push((i, k + i));
            }
            // GP(k, t) with 2t = k would double the inner edges; excluded by validate.
            (2 * k, e)
        }
        Family::Petersen => return make_family(Family::GeneralizedPetersen(5, 2)),
        Family::Dodecahedral => return make_family(Family::GeneralizedPetersen(10, 2)),
        Family::HalfDodecahedral => {
            // a_i = i, b_i = 5 + i, c_i = 10 + i
            let mut e = Vec::with_capacity(20);
            for i in 0..5 {
                e.push((i, (i + 1) % 5));
                e.push((i, 5 + i));
                e.push((5 + i, 10 + i));
                e.push((10 + i, 5 + (i + 1) % 5));
            }
            (15, e)
        }
        Family::Triplex => {
            let mut e: Vec<_> = (0..12).map(|i| (i, (i + 1) % 12)).collect();
            e.extend(TRIPLEX_CHORDS.iter().map(|&(a, b)| (a - 1, b - 1)));
            (12, e)
        }
    };
    Ok(Graph::new(n, &edges).expect("family constructions are simple graphs"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub graph: Graph,
    /// Edges on which curvature must vanish.
    pub checked_edges: Vec<(Vertex, Vertex)>,
}

/// Cycles `C6..=C_max_cycle`, a finite path standing in for the infinite one
/// (interior edges only), and the four sporadic graphs.
pub fn catalog_all(max_cycle: usize, path_len: usize) -> Result<Vec<CatalogEntry>, InvalidSpec> {
    if max_cycle < 6 {
        return Err(InvalidSpec(format!("max_cycle {max_cycle} < 6")));
    }
    if path_len < 4 {
        return Err(InvalidSpec(format!("path_len {path_len} < 4")));
    }
    let mut out = Vec::new();
    let mut push_all = |family: Family| -> Result<(), InvalidSpec> {
        let graph = make_family(family)?;
        let checked_edges = graph.edges().collect();
        out.push(CatalogEntry { name: family.to_string(), graph, checked_edges });
        Ok(())
    };
    for k in 6..=max_cycle {
        push_all(Family::Cycle(k))?;
    }
    for f in [Family::Petersen, Family::Dodecahedral, Family::HalfDodecahedral, Family::Triplex] {
        push_all(f)?;
    }
    let path = make_family(Family::Path(path_len))?;
    let interior = path
        .edges()
        .filter(|&(u, v)| path.degree(u) == 2 && path.degree(v) == 2)
        .collect();
    out.push(CatalogEntry {
        name: Family::Path(path_len).to_string(),
        graph: path,
        checked_edges: interior,
    });
    Ok(out)
}
