use std::fmt;

use crate::graph::{ChainGraph, PlumbingGraph};

/// One contraction of a rational `(-1)`-curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub curve: usize,
    /// Neighbours at the time of contraction; they become adjacent.
    pub neighbors: Vec<usize>,
}

impl fmt::Display for Contraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "contract {}", self.curve)?;
        if !self.neighbors.is_empty() {
            let ns: Vec<String> = self.neighbors.iter().map(usize::to_string).collect();
            write!(f, " (neighbours {})", ns.join(", "))?;
        }
        Ok(())
    }
}

fn contractible(p: &PlumbingGraph) -> Vec<usize> {
    p.nodes()
        .filter(|n| n.genus == 0 && n.weight == -1 && p.degree(n.id) <= 2)
        .map(|n| n.id)
        .collect()
}

fn contract(p: &mut PlumbingGraph, id: usize) -> Contraction {
    let neighbors = p.neighbors(id);
    for &w in &neighbors {
        let weight = p.node(w).expect("neighbour exists").weight;
        p.set_weight(w, weight + 1);
    }
    p.remove_node(id);
    if let [a, b] = neighbors[..] {
        p.add_edge(a, b);
    }
    Contraction { curve: id, neighbors }
}

/// Contracts, in an order chosen by `pick` among the current candidates,
/// until no rational `(-1)`-curve of degree at most 2 remains.
pub(crate) fn blow_down_by(
    p: &PlumbingGraph,
    mut pick: impl FnMut(&[usize]) -> usize,
) -> (PlumbingGraph, Vec<Contraction>) {
    let mut work = p.clone();
    let mut log = Vec::new();
    loop {
        let candidates = contractible(&work);
        if candidates.is_empty() {
            return (work, log);
        }
        let id = candidates[pick(&candidates)];
        log.push(contract(&mut work, id));
    }
}

/// Minimal model: repeatedly contracts the rational `(-1)`-curve of degree
/// at most 2 with the smallest id. On negative definite graphs the result
/// does not depend on the order.
pub fn blow_down(p: &PlumbingGraph) -> PlumbingGraph {
    blow_down_logged(p).0
}

pub fn blow_down_logged(p: &PlumbingGraph) -> (PlumbingGraph, Vec<Contraction>) {
    blow_down_by(p, |_| 0)
}

/// [`blow_down`] for a negative definite chain; the empty chain is a smooth
/// point.
pub fn blow_down_chain(c: &ChainGraph) -> ChainGraph {
    let reduced = blow_down(&PlumbingGraph::from(c));
    reduced
        .as_chain()
        .expect("contracting a chain of negative curves leaves a chain")
}
