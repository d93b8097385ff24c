//! Weighted resolution graphs.
//!
//! Weights on [`StarGraph`], [`BranchChain`] and [`ChainGraph`] are positive
//! integers `b` standing for a curve of self-intersection `-b`. The general
//! [`PlumbingGraph`] stores the signed self-intersection directly, since
//! intermediate quotient states may contain curves of any weight.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::seifert;
use crate::text::{keyword_line, parse_number, single_value, tokenize};

/// A chain of rational curves attached to the central curve, listed
/// center-outward.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BranchChain {
    weights: Vec<u64>,
}

impl BranchChain {
    pub fn new(weights: Vec<u64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyBranch { branch: 0 });
        }
        if let Some(&w) = weights.iter().find(|&&w| w < 2) {
            return Err(Error::BranchWeight {
                branch: 0,
                weight: w,
            });
        }
        Ok(BranchChain { weights })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Star-shaped minimal good resolution graph: a central curve of genus `g`
/// and weight `b`, with `r` branches of rational curves.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StarGraph {
    genus: u32,
    central_weight: u64,
    branches: Vec<BranchChain>,
}

impl StarGraph {
    /// Builds a star graph, checking every structural invariant and negative
    /// definiteness of the intersection form.
    pub fn new(genus: u32, central_weight: u64, branches: Vec<Vec<u64>>) -> Result<Self> {
        if central_weight == 0 {
            return Err(Error::CentralWeight);
        }
        let mut chains = Vec::with_capacity(branches.len());
        for (i, weights) in branches.into_iter().enumerate() {
            let chain = BranchChain::new(weights).map_err(|e| match e {
                Error::EmptyBranch { .. } => Error::EmptyBranch { branch: i },
                Error::BranchWeight { weight, .. } => Error::BranchWeight { branch: i, weight },
                other => other,
            })?;
            chains.push(chain);
        }
        if genus == 0 && chains.len() < 3 {
            return Err(Error::TooFewBranches {
                found: chains.len(),
            });
        }
        let degree = seifert::degree_of(central_weight, &chains);
        if degree <= num_rational::BigRational::from_integer(0.into()) {
            return Err(Error::NotDefinite { degree });
        }
        Ok(StarGraph {
            genus,
            central_weight,
            branches: chains,
        })
    }

    /// Triangle graph `D_{p,q,r}`: central `-1` curve with three single-curve
    /// branches.
    pub fn triangle(p: u64, q: u64, r: u64) -> Result<Self> {
        StarGraph::new(0, 1, vec![vec![p], vec![q], vec![r]])
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn central_weight(&self) -> u64 {
        self.central_weight
    }

    pub fn branches(&self) -> &[BranchChain] {
        &self.branches
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    /// Number of curves in the exceptional divisor.
    pub fn curve_count(&self) -> usize {
        1 + self.branches.iter().map(BranchChain::len).sum::<usize>()
    }

    /// Curve ids in the order used by [`star_to_plumbing`] and the
    /// intersection matrix: the center is 0, then each branch center-outward.
    pub fn curve_ids(&self) -> Vec<(usize, CurveLocation, u64)> {
        let mut out = vec![(0, CurveLocation::Center, self.central_weight)];
        let mut id = 1;
        for (i, branch) in self.branches.iter().enumerate() {
            for (j, &w) in branch.weights().iter().enumerate() {
                out.push((
                    id,
                    CurveLocation::Branch {
                        branch: i,
                        position: j,
                    },
                    w,
                ));
                id += 1;
            }
        }
        out
    }

    /// Id of the `position`-th curve (0 = adjacent to the center) on `branch`.
    pub fn curve_id(&self, branch: usize, position: usize) -> Option<usize> {
        let chain = self.branches.get(branch)?;
        if position >= chain.len() {
            return None;
        }
        let before: usize = self.branches[..branch].iter().map(BranchChain::len).sum();
        Some(1 + before + position)
    }
}

impl fmt::Display for StarGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_star(self))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveLocation {
    Center,
    Branch { branch: usize, position: usize },
}

/// A linear chain of rational curves; the cyclic quotient singularity
/// `X_{n,q}` with `n/q` the Hirzebruch-Jung fraction of the weights.
/// The empty chain is a smooth point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainGraph {
    weights: Vec<u64>,
}

impl ChainGraph {
    pub fn new(weights: Vec<u64>) -> Result<Self> {
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::domain("chain weights must be positive"));
        }
        Ok(ChainGraph { weights })
    }

    pub fn smooth() -> Self {
        ChainGraph { weights: vec![] }
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn is_smooth(&self) -> bool {
        self.weights.is_empty()
    }

    /// All weights at least 2.
    pub fn is_minimal(&self) -> bool {
        self.weights.iter().all(|&w| w >= 2)
    }

    pub fn reversed(&self) -> Self {
        let mut weights = self.weights.clone();
        weights.reverse();
        ChainGraph { weights }
    }
}

impl fmt::Display for ChainGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("chain")?;
        for w in &self.weights {
            write!(f, " {w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlumbingNode {
    pub id: usize,
    pub genus: u32,
    /// Signed self-intersection number.
    pub weight: i64,
}

/// A tree of curves, used for intersection matrices and as the work graph
/// of quotient rewriting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingGraph {
    nodes: BTreeMap<usize, PlumbingNode>,
    edges: BTreeSet<(usize, usize)>,
}

impl PlumbingGraph {
    pub fn new(
        nodes: impl IntoIterator<Item = PlumbingNode>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for node in nodes {
            if map.insert(node.id, node).is_some() {
                return Err(Error::domain(format!("duplicate node id {}", node.id)));
            }
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::domain(format!("self loop at node {a}")));
            }
            if !map.contains_key(&a) || !map.contains_key(&b) {
                return Err(Error::domain(format!("edge {a}-{b} names an unknown node")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        let graph = PlumbingGraph {
            nodes: map,
            edges: set,
        };
        if !graph.is_tree() {
            return Err(Error::domain("plumbing graph must be a tree"));
        }
        Ok(graph)
    }

    pub fn empty() -> Self {
        PlumbingGraph {
            nodes: BTreeMap::new(),
            edges: BTreeSet::new(),
        }
    }

    fn is_tree(&self) -> bool {
        let n = self.nodes.len();
        if n == 0 {
            return self.edges.is_empty();
        }
        if self.edges.len() != n - 1 {
            return false;
        }
        let start = *self.nodes.keys().next().unwrap();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == n
    }

    pub fn nodes(&self) -> impl Iterator<Item = &PlumbingNode> {
        self.nodes.values()
    }

    pub fn node(&self, id: usize) -> Option<&PlumbingNode> {
        self.nodes.get(&id)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn neighbors(&self, id: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == id {
                    Some(b)
                } else if b == id {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, id: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == id || b == id).count()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub(crate) fn set_weight(&mut self, id: usize, weight: i64) {
        if let Some(node) = self.nodes.get_mut(&id) {
            node.weight = weight;
        }
    }

    /// Removes a node together with its edges. May disconnect the tree; the
    /// caller restores connectivity.
    pub(crate) fn remove_node(&mut self, id: usize) {
        self.nodes.remove(&id);
        self.edges.retain(|&(a, b)| a != id && b != id);
    }

    pub(crate) fn add_edge(&mut self, a: usize, b: usize) {
        self.edges.insert((a.min(b), a.max(b)));
    }

    /// Reads the graph as a chain if it is a path of rational curves with
    /// negative weights. The traversal starts at the endpoint with the
    /// smaller id.
    pub fn as_chain(&self) -> Option<ChainGraph> {
        if self.nodes.is_empty() {
            return Some(ChainGraph::smooth());
        }
        if self.nodes.values().any(|n| n.genus > 0 || n.weight >= 0) {
            return None;
        }
        if self.nodes.keys().any(|&id| self.degree(id) > 2) {
            return None;
        }
        let start = *self.nodes.keys().find(|&&id| self.degree(id) <= 1)?;
        let mut order = vec![start];
        let mut prev = None;
        let mut cur = start;
        loop {
            let next = self
                .neighbors(cur)
                .into_iter()
                .find(|&w| Some(w) != prev);
            match next {
                Some(w) => {
                    order.push(w);
                    prev = Some(cur);
                    cur = w;
                }
                None => break,
            }
        }
        let weights = order.iter().map(|id| (-self.nodes[id].weight) as u64).collect();
        Some(ChainGraph { weights })
    }

    /// Reads the graph as a star graph if it has exactly one node of degree
    /// at least 3 (or a single node carrying genus), all other nodes rational
    /// with degree at most 2. Returns an error if the shape matches but the
    /// star invariants fail.
    pub fn as_star(&self) -> Option<Result<StarGraph>> {
        let hubs: Vec<usize> = self
            .nodes
            .keys()
            .copied()
            .filter(|&id| self.degree(id) >= 3 || self.nodes[&id].genus > 0)
            .collect();
        if hubs.len() != 1 {
            return None;
        }
        let center = hubs[0];
        let central = self.nodes[&center];
        let mut branches = Vec::new();
        for first in self.neighbors(center) {
            let mut chain = Vec::new();
            let mut prev = center;
            let mut cur = first;
            loop {
                let node = self.nodes[&cur];
                if node.weight >= 0 {
                    return Some(Err(Error::domain(format!(
                        "curve {cur} has non-negative self-intersection {}",
                        node.weight
                    ))));
                }
                chain.push((-node.weight) as u64);
                let next: Vec<usize> = self
                    .neighbors(cur)
                    .into_iter()
                    .filter(|&w| w != prev)
                    .collect();
                match next.as_slice() {
                    [] => break,
                    [w] => {
                        prev = cur;
                        cur = *w;
                    }
                    _ => return None,
                }
            }
            branches.push(chain);
        }
        if central.weight >= 0 {
            return Some(Err(Error::NotDefinite {
                degree: num_rational::BigRational::from_integer((-central.weight).into()),
            }));
        }
        Some(StarGraph::new(
            central.genus,
            (-central.weight) as u64,
            branches,
        ))
    }
}

impl From<&ChainGraph> for PlumbingGraph {
    fn from(chain: &ChainGraph) -> Self {
        let nodes = chain
            .weights
            .iter()
            .enumerate()
            .map(|(id, &w)| {
                let node = PlumbingNode {
                    id,
                    genus: 0,
                    weight: -(w as i64),
                };
                (id, node)
            })
            .collect();
        let edges = (1..chain.weights.len()).map(|i| (i - 1, i)).collect();
        PlumbingGraph { nodes, edges }
    }
}

/// One node per curve; the center has id 0 and carries the genus.
pub fn star_to_plumbing(g: &StarGraph) -> PlumbingGraph {
    let mut nodes = BTreeMap::new();
    let mut edges = BTreeSet::new();
    nodes.insert(
        0,
        PlumbingNode {
            id: 0,
            genus: g.genus,
            weight: -(g.central_weight as i64),
        },
    );
    let mut id = 1;
    for branch in &g.branches {
        let mut prev = 0;
        for &w in branch.weights() {
            nodes.insert(
                id,
                PlumbingNode {
                    id,
                    genus: 0,
                    weight: -(w as i64),
                },
            );
            edges.insert((prev, id));
            prev = id;
            id += 1;
        }
    }
    PlumbingGraph { nodes, edges }
}

/// Branches sorted lexicographically by weight sequence.
pub fn canonical_form(g: &StarGraph) -> StarGraph {
    let mut out = g.clone();
    out.branches.sort();
    out
}

pub trait Isomorphic {
    fn isomorphic(&self, other: &Self) -> bool;
}

impl Isomorphic for StarGraph {
    fn isomorphic(&self, other: &Self) -> bool {
        canonical_form(self) == canonical_form(other)
    }
}

impl Isomorphic for ChainGraph {
    /// Equality up to reversing the whole chain.
    fn isomorphic(&self, other: &Self) -> bool {
        self.weights == other.weights || self.weights.iter().eq(other.weights.iter().rev())
    }
}

pub fn graphs_isomorphic<T: Isomorphic>(a: &T, b: &T) -> bool {
    a.isomorphic(b)
}

pub fn serialize_star(g: &StarGraph) -> String {
    let g = canonical_form(g);
    let mut out = format!("genus {}\ncentral {}\n", g.genus, g.central_weight);
    for branch in &g.branches {
        out.push_str("branch");
        for w in branch.weights() {
            out.push(' ');
            out.push_str(&w.to_string());
        }
        out.push('\n');
    }
    out
}

pub fn serialize_chain(c: &ChainGraph) -> String {
    format!("{c}\n")
}

/// A graph file holds either a star graph or a chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFile {
    Star(StarGraph),
    Chain(ChainGraph),
}

/// The raw content of a star-graph file before any invariant is checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarParts {
    pub genus: u32,
    pub central: u64,
    pub branches: Vec<Vec<u64>>,
}

impl StarParts {
    pub fn build(self) -> Result<StarGraph> {
        StarGraph::new(self.genus, self.central, self.branches)
    }
}

/// Reads the star-graph file format without checking graph invariants.
pub fn parse_star_parts(text: &str) -> Result<StarParts> {
    let lines = tokenize(text);
    let mut it = lines.iter();
    let (line, tokens) = it
        .next()
        .ok_or_else(|| Error::syntax(1, 1, "empty input, expected `genus`"))?;
    let genus = single_value(*line, tokens, "genus")?;
    let (line, tokens) = it
        .next()
        .ok_or_else(|| Error::syntax(line + 1, 1, "missing `central` line"))?;
    let central = single_value(*line, tokens, "central")?;
    let mut branches = Vec::new();
    for (line, tokens) in it {
        let rest = keyword_line(*line, tokens, "branch")?;
        if rest.is_empty() {
            return Err(Error::syntax(
                *line,
                tokens[0].column + "branch".len(),
                "`branch` needs at least one weight",
            ));
        }
        let weights = rest
            .iter()
            .map(|t| parse_number(*line, t))
            .collect::<Result<Vec<u64>>>()?;
        branches.push(weights);
    }
    Ok(StarParts {
        genus,
        central,
        branches,
    })
}

pub fn parse_star(text: &str) -> Result<StarGraph> {
    parse_star_parts(text)?.build()
}

pub fn parse_chain(text: &str) -> Result<ChainGraph> {
    let lines = tokenize(text);
    let mut it = lines.iter();
    let (line, tokens) = it
        .next()
        .ok_or_else(|| Error::syntax(1, 1, "empty input, expected `chain`"))?;
    let rest = keyword_line(*line, tokens, "chain")?;
    let weights = rest
        .iter()
        .map(|t| {
            let w: u64 = parse_number(*line, t)?;
            if w == 0 {
                return Err(Error::syntax(*line, t.column, "chain weights must be positive"));
            }
            Ok(w)
        })
        .collect::<Result<Vec<u64>>>()?;
    if let Some((line, tokens)) = it.next() {
        return Err(Error::syntax(*line, tokens[0].column, "chain file has a single line"));
    }
    ChainGraph::new(weights)
}

/// Parses either file format, dispatching on the first keyword.
pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let first = tokenize(text)
        .first()
        .map(|(_, tokens)| tokens[0].text.to_string());
    match first.as_deref() {
        Some("chain") => parse_chain(text).map(GraphFile::Chain),
        _ => parse_star(text).map(GraphFile::Star),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d237() -> StarGraph {
        StarGraph::triangle(2, 3, 7).unwrap()
    }

    #[test]
    fn parses_triangle() {
        let g = parse_star("genus 0\ncentral 1\nbranch 2\nbranch 3\nbranch 7\n").unwrap();
        assert_eq!(g, d237());
        assert_eq!(g.branch_count(), 3);
    }

    #[test]
    fn parses_simple_elliptic() {
        let g = parse_star("# elliptic\ngenus 1\n\ncentral 3   # b\n").unwrap();
        assert_eq!(g.genus(), 1);
        assert_eq!(g.central_weight(), 3);
        assert_eq!(g.branch_count(), 0);
    }

    #[test]
    fn rejects_rational_center_with_two_branches() {
        let err = parse_star("genus 0\ncentral 1\nbranch 2\nbranch 3\n").unwrap_err();
        assert_eq!(err, Error::TooFewBranches { found: 2 });
    }

    #[test]
    fn distinct_invariant_errors() {
        let err = parse_star("genus 0\ncentral 2\nbranch 2\nbranch 1\nbranch 2\n").unwrap_err();
        assert_eq!(err, Error::BranchWeight { branch: 1, weight: 1 });
        let err = parse_star("genus 0\ncentral 1\nbranch 2\nbranch 2\nbranch 2\n").unwrap_err();
        assert!(matches!(err, Error::NotDefinite { .. }));
        let err = parse_star("genus 1\ncentral 0\n").unwrap_err();
        assert_eq!(err, Error::CentralWeight);
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_star("genus 0\ncentral x\n").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                line: 2,
                column: 9,
                message: "expected a non-negative integer, found `x`".into()
            }
        );
        let err = parse_star("genus 0\n  twig 2\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, column: 3, .. }));
        let err = parse_star("central 1\n").unwrap_err();
        assert!(err.is_syntax());
    }

    #[test]
    fn serialize_sorts_branches() {
        let g = StarGraph::new(0, 1, vec![vec![7], vec![2], vec![3]]).unwrap();
        assert_eq!(
            serialize_star(&g),
            "genus 0\ncentral 1\nbranch 2\nbranch 3\nbranch 7\n"
        );
        let e = StarGraph::new(1, 2, vec![]).unwrap();
        assert_eq!(serialize_star(&e), "genus 1\ncentral 2\n");
        let d333 = StarGraph::new(0, 2, vec![vec![3]; 3]).unwrap();
        assert_eq!(
            serialize_star(&d333),
            "genus 0\ncentral 2\nbranch 3\nbranch 3\nbranch 3\n"
        );
    }

    #[test]
    fn canonical_form_examples() {
        let g = StarGraph::new(0, 1, vec![vec![3], vec![2], vec![7]]).unwrap();
        assert_eq!(canonical_form(&g), d237());
        assert_eq!(canonical_form(&d237()), d237());
        let g = StarGraph::new(0, 2, vec![vec![2, 3], vec![2, 2], vec![2]]).unwrap();
        let c = canonical_form(&g);
        let firsts: Vec<&[u64]> = c.branches().iter().map(|b| b.weights()).collect();
        assert_eq!(firsts, vec![&[2][..], &[2, 2][..], &[2, 3][..]]);
    }

    #[test]
    fn isomorphism_examples() {
        let a = ChainGraph::new(vec![2, 3]).unwrap();
        assert!(graphs_isomorphic(&a, &ChainGraph::new(vec![3, 2]).unwrap()));
        assert!(!graphs_isomorphic(&a, &ChainGraph::new(vec![2, 2]).unwrap()));
        let d327 = StarGraph::triangle(3, 2, 7).unwrap();
        assert!(graphs_isomorphic(&d237(), &d327));
    }

    #[test]
    fn plumbing_of_star() {
        let p = star_to_plumbing(&d237());
        assert_eq!(p.node_count(), 4);
        assert_eq!(p.edge_count(), 3);
        assert_eq!(p.node(0).unwrap().weight, -1);

        let e = star_to_plumbing(&StarGraph::new(1, 5, vec![]).unwrap());
        assert_eq!(e.node_count(), 1);
        assert_eq!(*e.node(0).unwrap(), PlumbingNode { id: 0, genus: 1, weight: -5 });

        let g = StarGraph::new(0, 2, vec![vec![2, 3], vec![2], vec![2]]).unwrap();
        let p = star_to_plumbing(&g);
        assert!(p.has_edge(0, 1) && p.has_edge(1, 2));
        assert_eq!(p.node(2).unwrap().weight, -3);
    }

    #[test]
    fn plumbing_rejects_cycles_and_forests() {
        let nodes = (0..3).map(|id| PlumbingNode { id, genus: 0, weight: -2 });
        assert!(PlumbingGraph::new(nodes.clone(), [(0, 1), (1, 2), (0, 2)]).is_err());
        assert!(PlumbingGraph::new(nodes.clone(), [(0, 1)]).is_err());
        assert!(PlumbingGraph::new(nodes, [(0, 1), (1, 2)]).is_ok());
    }

    #[test]
    fn chain_and_star_readback() {
        let c = ChainGraph::new(vec![4, 1, 2]).unwrap();
        assert_eq!(PlumbingGraph::from(&c).as_chain(), Some(c));
        let p = star_to_plumbing(&d237());
        assert!(p.as_chain().is_none());
        assert_eq!(p.as_star().unwrap().unwrap(), d237());
    }

    #[test]
    fn chain_file() {
        assert_eq!(parse_chain("chain 2 3\n").unwrap().weights(), &[2, 3]);
        assert!(parse_chain("chain\n").unwrap().is_smooth());
        assert!(parse_chain("chain 2 0\n").unwrap_err().is_syntax());
        assert!(matches!(parse_graph("chain 5\n").unwrap(), GraphFile::Chain(_)));
    }

    #[test]
    fn curve_ids_follow_branch_order() {
        let g = StarGraph::new(0, 2, vec![vec![2, 3], vec![2], vec![2]]).unwrap();
        assert_eq!(g.curve_id(0, 1), Some(2));
        assert_eq!(g.curve_id(2, 0), Some(4));
        assert_eq!(g.curve_id(1, 1), None);
        assert_eq!(g.curve_ids().len(), g.curve_count());
    }
}
