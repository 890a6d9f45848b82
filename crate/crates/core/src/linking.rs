//! Linking numbers of genuine and virtual components.
//!
//! For vertices `v != w` with tree path `v = u0, u1, ..., uk = w`, the linking
//! number of the components at `v` and `w` is the product, over every `uj`, of
//! the `uj`-end weights of edges at `uj` that are not on the path, times the
//! arrowhead weights of `v` and/or `w`. A plain vertex stands for its virtual
//! component (a weight-1 arrow attached there).

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::diagram::{SpliceDiagram, VertexId};
use crate::laurent::ExponentVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkingError {
    #[error("linking number of a vertex with itself is undefined")]
    SameVertex,
    #[error("vertex {0} does not belong to the diagram")]
    UnknownVertex(usize),
    #[error("no path between the vertices")]
    Disconnected,
}

/// The unique tree path from `v` to `w`, both included.
pub fn path(d: &SpliceDiagram, v: VertexId, w: VertexId) -> Result<Vec<VertexId>, LinkingError> {
    for x in [v, w] {
        if x.index() >= d.vertex_count() {
            return Err(LinkingError::UnknownVertex(x.index()));
        }
    }
    if v == w {
        return Err(LinkingError::SameVertex);
    }
    let mut parent: Vec<Option<VertexId>> = vec![None; d.vertex_count()];
    let mut seen = vec![false; d.vertex_count()];
    seen[v.index()] = true;
    let mut queue = std::collections::VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        if u == w {
            break;
        }
        for x in d.neighbors(u) {
            if !seen[x.index()] {
                seen[x.index()] = true;
                parent[x.index()] = Some(u);
                queue.push_back(x);
            }
        }
    }
    if !seen[w.index()] {
        return Err(LinkingError::Disconnected);
    }
    let mut out = vec![w];
    let mut cur = w;
    while let Some(p) = parent[cur.index()] {
        out.push(p);
        cur = p;
    }
    out.reverse();
    Ok(out)
}

fn arrow_weight(d: &SpliceDiagram, v: VertexId) -> BigInt {
    d.vertex(v)
        .arrow_sign()
        .map_or_else(BigInt::one, |s| s.to_bigint())
}

/// Linking number of the (genuine or virtual) components at `v` and `w`,
/// computed directly from the tree path.
pub fn linking_number(d: &SpliceDiagram, v: VertexId, w: VertexId) -> Result<BigInt, LinkingError> {
    let p = path(d, v, w)?;
    let mut acc = arrow_weight(d, v) * arrow_weight(d, w);
    for (j, &u) in p.iter().enumerate() {
        let prev = j.checked_sub(1).map(|i| p[i]);
        let next = p.get(j + 1).copied();
        for (_, e) in d.incident(u) {
            let other = e.other(u);
            if Some(other) != prev && Some(other) != next {
                acc *= e.weight_at(u);
            }
        }
    }
    Ok(acc)
}

/// All linking numbers a diagram's invariants need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingData {
    /// `pairs[i][j]`, symmetric, zero on the diagonal.
    pairs: Vec<Vec<BigInt>>,
    /// Non-arrowhead vertices, in id order; columns of `table`.
    vertices: Vec<VertexId>,
    /// `table[i][k]` is the linking number of component `i` with the virtual
    /// component at `vertices[k]`.
    table: Vec<Vec<BigInt>>,
    totals: Vec<BigInt>,
}

impl LinkingData {
    pub fn component_count(&self) -> usize {
        self.pairs.len()
    }

    /// Linking number of components `i != j` (0-based).
    pub fn pair(&self, i: usize, j: usize) -> &BigInt {
        &self.pairs[i][j]
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    fn column(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn component_vertex(&self, i: usize, v: VertexId) -> Option<&BigInt> {
        self.column(v).map(|k| &self.table[i][k])
    }

    /// `l_v`: linking number of the whole link with the virtual component
    /// at `v`.
    pub fn total(&self, v: VertexId) -> Option<&BigInt> {
        self.column(v).map(|k| &self.totals[k])
    }

    /// `(l_{1v}, ..., l_{nv})`.
    pub fn exponents(&self, v: VertexId) -> Option<ExponentVector> {
        self.column(v)
            .map(|k| ExponentVector::new(self.table.iter().map(|row| row[k].clone()).collect()))
    }

    /// Row of component `i` against the other components, in order, skipping
    /// `i` itself: the exponent of the Torres factor for deleting `i`.
    pub fn row_without_self(&self, i: usize) -> ExponentVector {
        ExponentVector::new(
            (0..self.pairs.len())
                .filter(|&j| j != i)
                .map(|j| self.pairs[i][j].clone())
                .collect(),
        )
    }
}

/// Linking numbers of every component against every other vertex, computed
/// by one traversal per component.
pub fn linking_table(d: &SpliceDiagram) -> LinkingData {
    let n = d.component_count();
    let vertices: Vec<VertexId> = d.non_arrowheads().collect();
    let mut pairs = vec![vec![BigInt::zero(); n]; n];
    let mut table = vec![vec![BigInt::zero(); vertices.len()]; n];
    let comp_index: std::collections::HashMap<VertexId, usize> = d
        .components()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();

    for (i, &root) in d.components().iter().enumerate() {
        let values = linking_from(d, root);
        for (k, &v) in vertices.iter().enumerate() {
            table[i][k] = values[v.index()].clone().unwrap_or_default();
        }
        for (&v, &j) in &comp_index {
            if j != i {
                pairs[i][j] = values[v.index()].clone().unwrap_or_default();
            }
        }
    }
    let totals = (0..vertices.len())
        .map(|k| table.iter().map(|row| &row[k]).sum())
        .collect();
    LinkingData {
        pairs,
        vertices,
        table,
        totals,
    }
}

/// Linking numbers of the component at `root` with every other vertex.
fn linking_from(d: &SpliceDiagram, root: VertexId) -> Vec<Option<BigInt>> {
    let mut out: Vec<Option<BigInt>> = vec![None; d.vertex_count()];
    let root_weight = arrow_weight(d, root);
    // (vertex, edge index it was entered by, product of off-path weights at
    // earlier path vertices)
    let mut stack: Vec<(VertexId, Option<usize>, BigInt)> = vec![(root, None, root_weight)];
    while let Some((u, entered, acc)) = stack.pop() {
        if u != root {
            let mut value = &acc * arrow_weight(d, u);
            for (idx, e) in d.incident(u) {
                if Some(idx) != entered {
                    value *= e.weight_at(u);
                }
            }
            out[u.index()] = Some(value);
        }
        for (out_idx, out_edge) in d.incident(u) {
            if Some(out_idx) == entered {
                continue;
            }
            let mut next = acc.clone();
            for (idx, e) in d.incident(u) {
                if Some(idx) != entered && idx != out_idx {
                    next *= e.weight_at(u);
                }
            }
            stack.push((out_edge.other(u), Some(out_idx), next));
        }
    }
    out
}

/// Connected components of a graph on `0..n`; each component sorted, listed
/// by smallest member.
pub fn connected_components(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &x in &adj[u] {
                if !seen[x] {
                    seen[x] = true;
                    comp.push(x);
                    stack.push(x);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// The linking graph: components joined when their linking number is nonzero.
pub fn linking_graph(data: &LinkingData) -> Vec<(usize, usize)> {
    let n = data.component_count();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !data.pair(i, j).is_zero() {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// `Some(witness)` when the link is algebraically split: the linking graph
/// is disconnected and `witness` (0-based component indices) is the
/// connected piece containing component 0. Knots are never split.
pub fn is_algebraically_split(d: &SpliceDiagram) -> Option<Vec<usize>> {
    split_witness(&linking_table(d))
}

pub fn split_witness(data: &LinkingData) -> Option<Vec<usize>> {
    let comps = connected_components(data.component_count(), &linking_graph(data));
    if comps.len() > 1 {
        comps.into_iter().next()
    } else {
        None
    }
}
