use num_integer::Integer;
use thiserror::Error;

use super::{SpliceDiagram, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("diagram has no arrowheads")]
    NoComponents,
    #[error("arrowhead `{vertex}` has valency {valency}, expected 1")]
    ArrowheadValency { vertex: String, valency: usize },
    #[error(
        "weights {first} and {second} around node `{node}` are not coprime \
         (edges to `{first_to}` and `{second_to}`)"
    )]
    CoprimalityViolation {
        node: String,
        first: i64,
        second: i64,
        first_to: String,
        second_to: String,
    },
    #[error("component order does not list every arrowhead exactly once")]
    ComponentOrder,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Checks that `d` is a splice diagram: a finite tree with at least one
/// arrowhead, arrowheads of valency one, and pairwise coprime edge weights
/// around every node (so 0 is only allowed next to ±1).
pub fn validate(d: &SpliceDiagram) -> Result<(), ValidationError> {
    let n = d.vertex_count();
    if n == 0 {
        return Err(ValidationError::NotATree("no vertices".into()));
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for e in d.edges() {
        let (a, b) = (
            find(&mut parent, e.ends[0].0),
            find(&mut parent, e.ends[1].0),
        );
        if a == b {
            return Err(ValidationError::NotATree(format!(
                "edge {}-{} closes a cycle",
                d.name(e.ends[0]),
                d.name(e.ends[1])
            )));
        }
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    if let Some(v) = (1..n).find(|&v| find(&mut parent, v) != root) {
        return Err(ValidationError::NotATree(format!(
            "vertex `{}` is not connected to `{}`",
            d.name(VertexId(v)),
            d.name(VertexId(0))
        )));
    }

    if !d.vertex_ids().any(|v| d.vertex(v).is_arrowhead()) {
        return Err(ValidationError::NoComponents);
    }
    for v in d.vertex_ids().filter(|&v| d.vertex(v).is_arrowhead()) {
        if d.valency(v) != 1 {
            return Err(ValidationError::ArrowheadValency {
                vertex: d.name(v).to_string(),
                valency: d.valency(v),
            });
        }
    }

    for v in d.vertex_ids().filter(|&v| d.is_node(v)) {
        let ends: Vec<(i64, VertexId)> = d
            .incident(v)
            .map(|(_, e)| (e.weight_at(v), e.other(v)))
            .collect();
        for (i, &(wi, ti)) in ends.iter().enumerate() {
            for &(wj, tj) in &ends[i + 1..] {
                if wi.gcd(&wj) != 1 {
                    return Err(ValidationError::CoprimalityViolation {
                        node: d.name(v).to_string(),
                        first: wi,
                        second: wj,
                        first_to: d.name(ti).to_string(),
                        second_to: d.name(tj).to_string(),
                    });
                }
            }
        }
    }

    let mut listed: Vec<VertexId> = d.components().to_vec();
    listed.sort();
    let arrows: Vec<VertexId> = d
        .vertex_ids()
        .filter(|&v| d.vertex(v).is_arrowhead())
        .collect();
    if listed != arrows {
        return Err(ValidationError::ComponentOrder);
    }
    Ok(())
}
