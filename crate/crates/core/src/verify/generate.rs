use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::diagram::{validate, DiagramBuilder, SpliceDiagram, VertexKind};
use crate::laurent::Sign;

/// Rejection rounds per node before giving up on a coprime weight set.
pub const MAX_WEIGHT_ATTEMPTS: usize = 10_000;

/// Bounds for random splice diagrams.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    /// Vertex budget; the vertex count is drawn from `2..=max_vertices`.
    pub max_vertices: usize,
    pub max_components: usize,
    /// Nonzero node-end weights are drawn from `[-max_weight, max_weight]`.
    pub max_weight: i64,
    /// Probability that a node-end weight is drawn as 0.
    pub zero_prob: f64,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            max_vertices: 12,
            max_components: 5,
            max_weight: 7,
            zero_prob: 0.1,
            seed: 0,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<(), VerifyError> {
        let bad = |msg: &str| Err(VerifyError::InvalidConfig(msg.to_string()));
        if self.max_vertices < 2 {
            return bad("max_vertices must be at least 2");
        }
        if self.max_components < 1 {
            return bad("max_components must be at least 1");
        }
        if self.max_weight < 1 {
            return bad("max_weight must be at least 1");
        }
        if !(0.0..=1.0).contains(&self.zero_prob) {
            return bad("zero_prob must lie in [0, 1]");
        }
        Ok(())
    }

    /// Generator for diagram number `index` of a run: ChaCha8 seeded with
    /// `seed`, on stream `index`.
    pub fn rng_for(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

/// Random valid diagram; equal to diagram 0 of a suite run with the same
/// configuration.
pub fn random_diagram(cfg: &GeneratorConfig) -> Result<SpliceDiagram, VerifyError> {
    random_diagram_at(cfg, 0)
}

pub fn random_diagram_at(cfg: &GeneratorConfig, index: u64) -> Result<SpliceDiagram, VerifyError> {
    cfg.validate()?;
    generate(&mut cfg.rng_for(index), cfg)
}

/// Decodes a Prüfer sequence over `0..n` into the edges of a labeled tree.
fn pruefer_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n)
            .find(|&v| degree[v] == 1)
            .expect("a leaf always exists");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn draw_weight<R: Rng>(rng: &mut R, cfg: &GeneratorConfig) -> i64 {
    if rng.gen_bool(cfg.zero_prob) {
        return 0;
    }
    let w = rng.gen_range(1..=cfg.max_weight);
    if rng.gen_bool(0.5) {
        -w
    } else {
        w
    }
}

fn pairwise_coprime(ws: &[i64]) -> bool {
    ws.iter()
        .enumerate()
        .all(|(i, a)| ws[i + 1..].iter().all(|b| a.gcd(b) == 1))
}

fn generate<R: Rng>(rng: &mut R, cfg: &GeneratorConfig) -> Result<SpliceDiagram, VerifyError> {
    let n = rng.gen_range(2..=cfg.max_vertices);
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let edges = pruefer_edges(&seq, n);

    let mut degree = vec![0usize; n];
    for &(a, b) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    let leaves: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let k = rng.gen_range(1..=cfg.max_components.min(leaves.len()));
    let arrows: Vec<usize> = leaves.choose_multiple(rng, k).copied().collect();

    // weights[e] = [weight at edges[e].0, weight at edges[e].1]
    let mut weights = vec![[1i64, 1i64]; edges.len()];
    for node in (0..n).filter(|&v| degree[v] > 1) {
        let ends: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .filter_map(|(i, &(a, b))| match (a == node, b == node) {
                (true, _) => Some((i, 0)),
                (_, true) => Some((i, 1)),
                _ => None,
            })
            .collect();
        let mut drawn = None;
        for _ in 0..MAX_WEIGHT_ATTEMPTS {
            let ws: Vec<i64> = ends.iter().map(|_| draw_weight(rng, cfg)).collect();
            if pairwise_coprime(&ws) {
                drawn = Some(ws);
                break;
            }
        }
        let ws = drawn.ok_or(VerifyError::GenerationExhausted { node })?;
        for (&(e, side), w) in ends.iter().zip(ws) {
            weights[e][side] = w;
        }
    }

    let names: Vec<String> = (0..n)
        .map(|v| {
            if arrows.contains(&v) {
                format!("a{v}")
            } else {
                format!("v{v}")
            }
        })
        .collect();
    let mut b = DiagramBuilder::new();
    for (v, name) in names.iter().enumerate() {
        let kind = if arrows.contains(&v) {
            VertexKind::Arrowhead(if rng.gen_bool(0.5) {
                Sign::Plus
            } else {
                Sign::Minus
            })
        } else {
            VertexKind::Plain
        };
        b.add_vertex(name, kind).expect("distinct names");
    }
    for (&(a, c), w) in edges.iter().zip(&weights) {
        b.edge(&names[a], &names[c], *w).expect("known vertices");
    }
    let order: Vec<&str> = arrows.iter().map(|&v| names[v].as_str()).collect();
    b.order(&order).expect("known vertices");
    let d = b.build().expect("order lists the arrowheads");
    validate(&d).expect("generator produces valid diagrams");
    Ok(d)
}
