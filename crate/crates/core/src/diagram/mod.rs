//! Splice diagrams: decorated trees whose arrowheads are the link components.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::laurent::Sign;

mod dsl;
mod validate;

pub use dsl::{parse, serialize, ParseError};
pub use validate::{validate, ValidationError};

/// Stable handle of a vertex inside one diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Arrowhead(Sign),
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub name: String,
    pub kind: VertexKind,
}

impl Vertex {
    pub fn is_arrowhead(&self) -> bool {
        matches!(self.kind, VertexKind::Arrowhead(_))
    }

    pub fn arrow_sign(&self) -> Option<Sign> {
        match self.kind {
            VertexKind::Arrowhead(s) => Some(s),
            VertexKind::Plain => None,
        }
    }
}

/// An edge with a weight at each end. Weights at valency-one ends take no
/// part in any formula and default to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub ends: [VertexId; 2],
    pub weights: [i64; 2],
}

impl Edge {
    /// Weight at the end meeting `v`.
    pub fn weight_at(&self, v: VertexId) -> i64 {
        if self.ends[0] == v {
            self.weights[0]
        } else {
            debug_assert_eq!(self.ends[1], v);
            self.weights[1]
        }
    }

    pub fn other(&self, v: VertexId) -> VertexId {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpliceDiagram {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    components: Vec<VertexId>,
    // edge indices incident to each vertex, derived from `edges`
    incidence: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("`{0}` in the component order is not an arrowhead")]
    NotAnArrowhead(String),
    #[error("component order must list every arrowhead exactly once")]
    BadOrder,
    #[error("component index {index} out of range for {count} components")]
    ComponentOutOfRange { index: usize, count: usize },
    #[error("cannot delete the last component")]
    LastComponent,
    #[error("example needs 1 <= arrows <= k, got arrows = {arrows}, k = {k}")]
    ExampleArity { arrows: usize, k: usize },
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}

/// Incremental construction by vertex name.
#[derive(Clone, Debug, Default)]
pub struct DiagramBuilder {
    vertices: Vec<Vertex>,
    names: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    order: Option<Vec<VertexId>>,
}

impl DiagramBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str, kind: VertexKind) -> Result<VertexId, DiagramError> {
        if self.names.contains_key(name) {
            return Err(DiagramError::DuplicateVertex(name.to_string()));
        }
        let id = VertexId(self.vertices.len());
        self.vertices.push(Vertex {
            name: name.to_string(),
            kind,
        });
        self.names.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn plain(&mut self, name: &str) -> Result<VertexId, DiagramError> {
        self.add_vertex(name, VertexKind::Plain)
    }

    pub fn arrow(&mut self, name: &str, sign: Sign) -> Result<VertexId, DiagramError> {
        self.add_vertex(name, VertexKind::Arrowhead(sign))
    }

    pub fn lookup(&self, name: &str) -> Result<VertexId, DiagramError> {
        self.names
            .get(name)
            .copied()
            .ok_or_else(|| DiagramError::UnknownVertex(name.to_string()))
    }

    /// Adds an edge; `weights[k]` sits at the end meeting `ends[k]`.
    pub fn edge(&mut self, a: &str, b: &str, weights: [i64; 2]) -> Result<(), DiagramError> {
        let (a, b) = (self.lookup(a)?, self.lookup(b)?);
        self.edge_by_id(a, b, weights)
    }

    pub fn edge_by_id(
        &mut self,
        a: VertexId,
        b: VertexId,
        weights: [i64; 2],
    ) -> Result<(), DiagramError> {
        if a == b {
            return Err(DiagramError::SelfLoop(self.vertices[a.0].name.clone()));
        }
        self.edges.push(Edge {
            ends: [a, b],
            weights,
        });
        Ok(())
    }

    pub fn order(&mut self, names: &[&str]) -> Result<(), DiagramError> {
        let ids = names
            .iter()
            .map(|n| self.lookup(n))
            .collect::<Result<Vec<_>, _>>()?;
        self.order = Some(ids);
        Ok(())
    }

    /// Finishes the structure. The component order defaults to arrowhead
    /// declaration order. No validation beyond the component order is done.
    pub fn build(self) -> Result<SpliceDiagram, DiagramError> {
        let arrows: Vec<VertexId> = (0..self.vertices.len())
            .map(VertexId)
            .filter(|v| self.vertices[v.0].is_arrowhead())
            .collect();
        let components = match self.order {
            None => arrows,
            Some(order) => {
                if let Some(v) = order.iter().find(|v| !self.vertices[v.0].is_arrowhead()) {
                    return Err(DiagramError::NotAnArrowhead(
                        self.vertices[v.0].name.clone(),
                    ));
                }
                let mut sorted = order.clone();
                sorted.sort();
                if sorted != arrows {
                    return Err(DiagramError::BadOrder);
                }
                order
            }
        };
        Ok(SpliceDiagram::from_parts(
            self.vertices,
            self.edges,
            components,
        ))
    }
}

impl SpliceDiagram {
    fn from_parts(vertices: Vec<Vertex>, edges: Vec<Edge>, components: Vec<VertexId>) -> Self {
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            incidence[e.ends[0].0].push(i);
            incidence[e.ends[1].0].push(i);
        }
        SpliceDiagram {
            vertices,
            edges,
            components,
            incidence,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v.0]
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.vertices[v.0].name
    }

    pub fn find(&self, name: &str) -> Option<VertexId> {
        self.vertices
            .iter()
            .position(|v| v.name == name)
            .map(VertexId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn incident(&self, v: VertexId) -> impl Iterator<Item = (usize, &Edge)> {
        self.incidence[v.0].iter().map(|&i| (i, &self.edges[i]))
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident(v).map(move |(_, e)| e.other(v))
    }

    pub fn valency(&self, v: VertexId) -> usize {
        self.incidence[v.0].len()
    }

    /// A node is a vertex of valency greater than one.
    pub fn is_node(&self, v: VertexId) -> bool {
        self.valency(v) > 1
    }

    /// Arrowheads in component order; component `i` carries variable `t_{i+1}`.
    pub fn components(&self) -> &[VertexId] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// All vertices that are not arrowheads, in id order.
    pub fn non_arrowheads(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertex_ids()
            .filter(|&v| !self.vertex(v).is_arrowhead())
    }

    pub fn arrow_sign(&self, component: usize) -> Sign {
        self.vertex(self.components[component])
            .arrow_sign()
            .expect("components are arrowheads")
    }

    fn check_component(&self, index: usize) -> Result<(), DiagramError> {
        if index >= self.components.len() {
            return Err(DiagramError::ComponentOutOfRange {
                index,
                count: self.components.len(),
            });
        }
        Ok(())
    }

    /// Turns component `index` (0-based) into a plain leaf, keeping its edge
    /// and weights. The arrowhead sign is dropped: the virtual component at
    /// the new leaf carries weight +1.
    pub fn delete_component(&self, index: usize) -> Result<SpliceDiagram, DiagramError> {
        self.check_component(index)?;
        if self.components.len() == 1 {
            return Err(DiagramError::LastComponent);
        }
        let mut vertices = self.vertices.clone();
        let removed = self.components[index];
        vertices[removed.0].kind = VertexKind::Plain;
        let mut components = self.components.clone();
        components.remove(index);
        Ok(SpliceDiagram::from_parts(
            vertices,
            self.edges.clone(),
            components,
        ))
    }

    /// Attaches a `+1` arrowhead by a weight-1 edge at each of `sites`,
    /// turning those virtual components into genuine ones. The new components
    /// follow the existing ones, in the order given.
    pub fn with_virtual_arrows(&self, sites: &[VertexId]) -> SpliceDiagram {
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        let mut components = self.components.clone();
        for &site in sites {
            let mut name = format!("{}'", self.vertices[site.0].name);
            while vertices.iter().any(|v| v.name == name) {
                name.push('\'');
            }
            let id = VertexId(vertices.len());
            vertices.push(Vertex {
                name,
                kind: VertexKind::Arrowhead(Sign::Plus),
            });
            edges.push(Edge {
                ends: [site, id],
                weights: [1, 1],
            });
            components.push(id);
        }
        SpliceDiagram::from_parts(vertices, edges, components)
    }

    /// Negates the arrowhead weight of component `index` (0-based).
    pub fn reverse_component(&self, index: usize) -> Result<SpliceDiagram, DiagramError> {
        self.check_component(index)?;
        let mut out = self.clone();
        let v = self.components[index];
        if let VertexKind::Arrowhead(s) = out.vertices[v.0].kind {
            out.vertices[v.0].kind = VertexKind::Arrowhead(-s);
        }
        Ok(out)
    }
}

/// The star-shaped diagram with one central node `c`: edge `i` has weight
/// `alphas[i]` at `c`; the first `arrows` edges end in `+1` arrowheads
/// `a1..`, the rest in plain leaves `l{arrows+1}..`.
pub fn seifert_example(alphas: &[i64], arrows: usize) -> Result<SpliceDiagram, DiagramError> {
    let k = alphas.len();
    if arrows == 0 || arrows > k {
        return Err(DiagramError::ExampleArity { arrows, k });
    }
    let mut b = DiagramBuilder::new();
    let c = b.plain("c")?;
    for (i, &alpha) in alphas.iter().enumerate() {
        let leaf = if i < arrows {
            b.arrow(&format!("a{}", i + 1), Sign::Plus)?
        } else {
            b.plain(&format!("l{}", i + 1))?
        };
        b.edge_by_id(c, leaf, [alpha, 1])?;
    }
    let d = b.build()?;
    validate(&d)?;
    Ok(d)
}

impl fmt::Display for SpliceDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serialize(self))
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn example_builder() {
        let t = trefoil();
        assert_eq!(t.vertex_count(), 4);
        assert_eq!(t.component_count(), 1);
        assert_eq!(t.valency(t.find("c").unwrap()), 3);

        let h = hopf();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.component_count(), 2);

        assert!(matches!(
            seifert_example(&[2, 4, 5], 1),
            Err(DiagramError::Invalid(
                ValidationError::CoprimalityViolation { .. }
            ))
        ));
        assert!(seifert_example(&[1, 2], 3).is_err());
        assert!(seifert_example(&[1, 2], 0).is_err());
    }

    #[test]
    fn delete_component_keeps_shape() {
        let h = hopf().delete_component(0).unwrap();
        assert_eq!(h.component_count(), 1);
        assert_eq!(h.vertex(h.find("a1").unwrap()).kind, VertexKind::Plain);
        assert_eq!(h.edges(), hopf().edges());
        validate(&h).unwrap();

        assert_eq!(
            trefoil().delete_component(0),
            Err(DiagramError::LastComponent)
        );
        let three = seifert_example(&[1, 1, 1, 5], 3).unwrap();
        let two = three.delete_component(1).unwrap();
        assert_eq!(two.component_count(), 2);
        assert_eq!(two.edges(), three.edges());
        assert!(matches!(
            three.delete_component(3),
            Err(DiagramError::ComponentOutOfRange { .. })
        ));
    }

    #[test]
    fn reverse_is_an_involution() {
        let h = hopf();
        let neg = h.reverse_component(1).unwrap();
        assert_eq!(neg.arrow_sign(1), Sign::Minus);
        assert_eq!(neg.arrow_sign(0), Sign::Plus);
        assert_eq!(neg.reverse_component(1).unwrap(), h);
        assert_eq!(
            trefoil().reverse_component(0).unwrap().arrow_sign(0),
            Sign::Minus
        );
        assert!(h.reverse_component(2).is_err());
    }

    #[test]
    fn builder_rejects_bad_input() {
        let mut b = DiagramBuilder::new();
        b.plain("x").unwrap();
        assert_eq!(b.plain("x"), Err(DiagramError::DuplicateVertex("x".into())));
        assert!(matches!(
            b.edge("x", "x", [1, 1]),
            Err(DiagramError::SelfLoop(_))
        ));
        assert!(matches!(
            b.edge("x", "y", [1, 1]),
            Err(DiagramError::UnknownVertex(_))
        ));
        b.arrow("a", Sign::Plus).unwrap();
        b.order(&["x"]).unwrap();
        assert!(matches!(b.build(), Err(DiagramError::NotAnArrowhead(_))));
    }
}
