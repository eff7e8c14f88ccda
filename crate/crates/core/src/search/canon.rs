//! Canonical labeling by partition refinement and exhaustive individualization.
//!
//! The initial partition groups vertices by degree. Refinement splits every
//! cell by the number of neighbors each vertex has in every other cell until
//! the partition is equitable. When cells remain non-singleton, each vertex of
//! the first smallest such cell is individualized in turn and the process
//! recurses. Every discrete leaf induces a labeling; the lexicographically
//! smallest adjacency code over all leaves is the canonical form.
//!
//! Cell order and the target-cell rule depend only on isomorphism-invariant
//! data, so the set of leaf codes is the same for every relabeling of the input.

use crate::graph::{Graph, Vertex};

/// Total-order key identifying an isomorphism class.
///
/// Layout: `n` and `m` as big-endian `u32`, then the upper triangle of the
/// relabeled adjacency matrix, row-major, packed MSB-first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).0
}

/// Canonical form together with a labeling `perm` such that
/// `g.relabel(&perm)` has adjacency code equal to the form.
pub fn canonical_labeling(g: &Graph) -> (CanonicalForm, Vec<Vertex>) {
    let n = g.n();
    let mut degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut cells: Vec<Vec<Vertex>> = degrees
        .iter()
        .map(|&d| (0..n).filter(|&v| g.degree(v) == d).collect())
        .collect();
    refine(g, &mut cells);

    let mut search = Search { g, best: None };
    search.descend(cells);
    let (code, perm) = search.best.unwrap_or_else(|| (encode(g, &[]), Vec::new()));
    (CanonicalForm(code), perm)
}

/// Relabels `g` into its canonical representative.
pub fn canonical_graph(g: &Graph) -> (CanonicalForm, Graph) {
    let (form, perm) = canonical_labeling(g);
    let relabeled = if g.n() == 0 { g.clone() } else { g.relabel(&perm) };
    (form, relabeled)
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u8>, Vec<Vertex>)>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<Vec<Vertex>>) {
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(t) = target else {
            let mut perm = vec![0; self.g.n()];
            for (label, cell) in cells.iter().enumerate() {
                perm[cell[0]] = label;
            }
            let code = encode(self.g, &perm);
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, perm));
            }
            return;
        };
        for &v in &cells[t] {
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..t]);
            next.push(vec![v]);
            next.push(cells[t].iter().copied().filter(|&u| u != v).collect());
            next.extend_from_slice(&cells[t + 1..]);
            refine(self.g, &mut next);
            self.descend(next);
        }
    }
}

/// Splits cells until every vertex in a cell has the same number of
/// neighbors in each cell. Sub-cells keep the position of their parent and
/// are ordered by their neighbor-count signature.
fn refine(g: &Graph, cells: &mut Vec<Vec<Vertex>>) {
    let n = g.n();
    let mut cell_of = vec![0usize; n];
    loop {
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let k = cells.len();
        let mut next: Vec<Vec<Vertex>> = Vec::with_capacity(k);
        for c in cells.iter() {
            if c.len() == 1 {
                next.push(c.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, Vertex)> = c
                .iter()
                .map(|&v| {
                    let mut sig = vec![0u32; k];
                    for &w in g.neighbors(v) {
                        sig[cell_of[w]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        let done = next.len() == k;
        *cells = next;
        if done {
            return;
        }
    }
}

fn encode(g: &Graph, perm: &[Vertex]) -> Vec<u8> {
    let n = g.n();
    let mut out = Vec::with_capacity(8 + n * n / 16 + 1);
    out.extend_from_slice(&(n as u32).to_be_bytes());
    out.extend_from_slice(&(g.m() as u32).to_be_bytes());
    let mut inv = vec![0; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    let mut byte = 0u8;
    let mut bits = 0;
    for i in 0..n {
        for j in i + 1..n {
            byte = (byte << 1) | u8::from(g.has_edge(inv[i], inv[j]));
            bits += 1;
            if bits == 8 {
                out.push(byte);
                byte = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(byte << (8 - bits));
    }
    out
}
