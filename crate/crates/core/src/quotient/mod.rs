//! Resolution graphs of quotients by cyclic groups of order 2 and 3.
//!
//! The action on the exceptional curves is supplied as an annotation: for
//! each curve, whether it is fixed pointwise, invariant (with the rotation
//! types of its isolated fixed points), or moved to another curve. The
//! engine checks the annotation for consistency, rewrites weights, inserts
//! the resolution chains of the isolated fixed points and blows down.

mod blowdown;
mod chain;
mod families;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{star_to_plumbing, ChainGraph, PlumbingGraph, PlumbingNode, StarGraph};
use crate::lattice::{intersection_matrix, is_negative_definite};
use crate::text::{parse_number, tokenize, Token};

pub use blowdown::{blow_down, blow_down_chain, blow_down_logged, Contraction};
pub use chain::{
    chain_quotient, chain_quotient_involution, chain_quotient_order3, curve_image_weight, tail,
    InvolutionCase, LocalAction,
};
pub use families::{
    family_tetrahedral, family_triangle, family_triangle_quotients, tetrahedral_sigma3_action,
    triangle_sigma2_action, triangle_sigma3_action, triangle_z3_action, TriangleQuotient,
};

use chain::{check_order, check_rotation};

/// An isolated fixed point of rotation type `(n, q)` on an invariant
/// curve, optionally pinned to the intersection with a neighbouring curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsolatedPoint {
    pub q: u32,
    pub at: Option<usize>,
}

impl IsolatedPoint {
    pub fn free(q: u32) -> Self {
        IsolatedPoint { q, at: None }
    }

    pub fn at(q: u32, neighbor: usize) -> Self {
        IsolatedPoint {
            q,
            at: Some(neighbor),
        }
    }
}

/// What the group generator does to one exceptional curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixedPointSpec {
    PointwiseFixed,
    Invariant(Vec<IsolatedPoint>),
    /// The generator maps this curve onto the given one.
    SwappedWith(usize),
}

/// A cyclic group action of order `n` on the resolution, curve by curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionSpec {
    pub order: u32,
    pub curves: BTreeMap<usize, FixedPointSpec>,
}

impl ActionSpec {
    pub fn new(order: u32) -> Self {
        ActionSpec {
            order,
            curves: BTreeMap::new(),
        }
    }

    pub fn with(mut self, curve: usize, spec: FixedPointSpec) -> Self {
        self.curves.insert(curve, spec);
        self
    }

    /// Adds `a -> b -> ... -> a` for a cycle of swapped curves.
    pub fn with_cycle(mut self, cycle: &[usize]) -> Self {
        for (i, &c) in cycle.iter().enumerate() {
            let next = cycle[(i + 1) % cycle.len()];
            self.curves.insert(c, FixedPointSpec::SwappedWith(next));
        }
        self
    }
}

impl fmt::Display for ActionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order {}", self.order)?;
        for (id, spec) in &self.curves {
            write!(f, "curve {id} ")?;
            match spec {
                FixedPointSpec::PointwiseFixed => f.write_str("pointwise")?,
                FixedPointSpec::SwappedWith(t) => write!(f, "swap {t}")?,
                FixedPointSpec::Invariant(isos) => {
                    f.write_str("invariant")?;
                    for p in isos {
                        write!(f, " iso {}/{}", self.order, p.q)?;
                        if let Some(at) = p.at {
                            write!(f, "@{at}")?;
                        }
                    }
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn parse_iso(line: usize, tok: &Token<'_>) -> Result<(u32, IsolatedPoint)> {
    let bad = || Error::syntax(line, tok.column, format!("expected n/q or n/q@id, found `{}`", tok.text));
    let (frac, at) = match tok.text.split_once('@') {
        Some((f, a)) => (f, Some(a.parse::<usize>().map_err(|_| bad())?)),
        None => (tok.text, None),
    };
    let (n, q) = frac.split_once('/').ok_or_else(bad)?;
    let n: u32 = n.parse().map_err(|_| bad())?;
    let q: u32 = q.parse().map_err(|_| bad())?;
    Ok((n, IsolatedPoint { q, at }))
}

/// Reads an annotation file: a header `order 2|3`, then one line per curve,
/// `curve <id> pointwise`, `curve <id> invariant [iso n/q[@id]]...` or
/// `curve <id> swap <id2>`.
pub fn parse_action(text: &str) -> Result<ActionSpec> {
    let lines = tokenize(text);
    let mut it = lines.iter();
    let (line, tokens) = it
        .next()
        .ok_or_else(|| Error::syntax(1, 1, "empty input, expected `order`"))?;
    if tokens[0].text != "order" || tokens.len() != 2 {
        return Err(Error::syntax(*line, tokens[0].column, "expected `order 2` or `order 3`"));
    }
    let order: u32 = parse_number(*line, &tokens[1])?;
    if order != 2 && order != 3 {
        return Err(Error::syntax(*line, tokens[1].column, "order must be 2 or 3"));
    }
    let mut spec = ActionSpec::new(order);
    for (line, tokens) in it {
        let line = *line;
        if tokens[0].text != "curve" {
            return Err(Error::syntax(
                line,
                tokens[0].column,
                format!("expected `curve`, found `{}`", tokens[0].text),
            ));
        }
        let id_tok = tokens
            .get(1)
            .ok_or_else(|| Error::syntax(line, tokens[0].column + 5, "`curve` needs an id"))?;
        let id: usize = parse_number(line, id_tok)?;
        let kind = tokens.get(2).ok_or_else(|| {
            Error::syntax(line, id_tok.column + id_tok.text.len(), "missing pointwise, invariant or swap")
        })?;
        let rest = &tokens[3..];
        let curve = match kind.text {
            "pointwise" => {
                if let Some(t) = rest.first() {
                    return Err(Error::syntax(line, t.column, "unexpected token"));
                }
                FixedPointSpec::PointwiseFixed
            }
            "swap" => match rest {
                [t] => FixedPointSpec::SwappedWith(parse_number(line, t)?),
                [] => return Err(Error::syntax(line, kind.column + 4, "`swap` needs a curve id")),
                [_, extra, ..] => return Err(Error::syntax(line, extra.column, "unexpected token")),
            },
            "invariant" => {
                let mut isos = Vec::new();
                let mut toks = rest.iter();
                while let Some(t) = toks.next() {
                    if t.text != "iso" {
                        return Err(Error::syntax(line, t.column, format!("expected `iso`, found `{}`", t.text)));
                    }
                    let v = toks
                        .next()
                        .ok_or_else(|| Error::syntax(line, t.column + 3, "`iso` needs n/q"))?;
                    let (n, p) = parse_iso(line, v)?;
                    if n != order {
                        return Err(Error::domain(format!(
                            "curve {id}: isolated point of type {n}/{} under a group of order {order}",
                            p.q
                        )));
                    }
                    isos.push(p);
                }
                FixedPointSpec::Invariant(isos)
            }
            other => {
                return Err(Error::syntax(
                    line,
                    kind.column,
                    format!("expected pointwise, invariant or swap, found `{other}`"),
                ))
            }
        };
        if spec.curves.insert(id, curve).is_some() {
            return Err(Error::syntax(line, id_tok.column, format!("curve {id} annotated twice")));
        }
    }
    Ok(spec)
}

/// The minimal resolution graph of a quotient, classified by shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientGraph {
    /// A cyclic quotient singularity; the empty chain is a smooth point.
    Chain(ChainGraph),
    Star(StarGraph),
    Plumbing(PlumbingGraph),
}

impl QuotientGraph {
    pub fn is_cyclic(&self) -> bool {
        matches!(self, QuotientGraph::Chain(_))
    }

    pub fn as_star(&self) -> Option<&StarGraph> {
        match self {
            QuotientGraph::Star(g) => Some(g),
            _ => None,
        }
    }

    pub fn as_chain(&self) -> Option<&ChainGraph> {
        match self {
            QuotientGraph::Chain(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for QuotientGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientGraph::Chain(c) => write!(f, "{c}"),
            QuotientGraph::Star(g) => write!(f, "{g}"),
            QuotientGraph::Plumbing(p) => {
                for n in p.nodes() {
                    writeln!(f, "node {} genus {} weight {}", n.id, n.genus, n.weight)?;
                }
                for (a, b) in p.edges() {
                    writeln!(f, "edge {a} {b}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientResult {
    pub graph: QuotientGraph,
    /// The minimal graph before classification, with surviving curve ids.
    pub plumbing: PlumbingGraph,
    pub blowdown_log: Vec<Contraction>,
}

/// Classifies a minimal graph as chain, star or general tree.
pub fn classify(p: &PlumbingGraph) -> QuotientGraph {
    if let Some(c) = p.as_chain() {
        return QuotientGraph::Chain(c);
    }
    match p.as_star() {
        Some(Ok(g)) => QuotientGraph::Star(g),
        _ => QuotientGraph::Plumbing(p.clone()),
    }
}

/// Where the two fixed points of an invariant, not pointwise fixed curve
/// lie, and which of them are isolated.
#[derive(Debug, Default)]
struct FixedPoints {
    /// Neighbour id and rotation number of each isolated point at an
    /// intersection with a neighbour.
    at_edges: BTreeMap<usize, u32>,
    /// Rotation numbers of isolated points away from other curves.
    free: Vec<u32>,
}

struct Checked<'a> {
    n: u32,
    weights: BTreeMap<usize, u64>,
    specs: &'a BTreeMap<usize, FixedPointSpec>,
    /// Curve to the representative (smallest id) of its orbit.
    rep: BTreeMap<usize, usize>,
    fixed: BTreeMap<usize, FixedPoints>,
}

fn check_swaps(p: &PlumbingGraph, spec: &ActionSpec) -> Result<BTreeMap<usize, usize>> {
    let n = spec.order as usize;
    let image = |c: usize| match spec.curves[&c] {
        FixedPointSpec::SwappedWith(t) => t,
        _ => c,
    };
    let mut rep = BTreeMap::new();
    for (&c, s) in &spec.curves {
        let FixedPointSpec::SwappedWith(_) = s else {
            rep.insert(c, c);
            continue;
        };
        let mut orbit = vec![c];
        let mut cur = image(c);
        while cur != c {
            if !spec.curves.contains_key(&cur) {
                return Err(Error::domain(format!("curve {cur} is not in the graph")));
            }
            if orbit.contains(&cur) || orbit.len() > n {
                return Err(Error::SwapMismatch {
                    a: c,
                    b: image(c),
                    reason: "the swaps do not form a permutation".into(),
                });
            }
            if !matches!(spec.curves[&cur], FixedPointSpec::SwappedWith(_)) {
                return Err(Error::SwapMismatch {
                    a: c,
                    b: cur,
                    reason: format!("curve {cur} is not annotated as swapped"),
                });
            }
            orbit.push(cur);
            cur = image(cur);
        }
        if orbit.len() != n {
            return Err(Error::SwapMismatch {
                a: c,
                b: image(c),
                reason: format!("their orbit has length {} under a group of order {n}", orbit.len()),
            });
        }
        let w = p.node(c).unwrap().weight;
        for &d in &orbit {
            if p.node(d).unwrap().weight != w {
                return Err(Error::SwapMismatch {
                    a: c,
                    b: d,
                    reason: "their weights differ".into(),
                });
            }
            if d != c && p.has_edge(c, d) {
                return Err(Error::SwapMismatch {
                    a: c,
                    b: d,
                    reason: "they intersect".into(),
                });
            }
        }
        rep.insert(c, *orbit.iter().min().unwrap());
    }
    for (a, b) in p.edges() {
        if !p.has_edge(image(a), image(b)) {
            return Err(Error::SwapMismatch {
                a,
                b,
                reason: format!("edge {a}-{b} is not mapped to an edge"),
            });
        }
    }
    Ok(rep)
}

/// Places the fixed points of every invariant curve and checks them
/// against its neighbours.
fn place_fixed_points(p: &PlumbingGraph, spec: &ActionSpec) -> Result<BTreeMap<usize, FixedPoints>> {
    use FixedPointSpec::*;
    let mut out = BTreeMap::new();
    for (&c, s) in &spec.curves {
        let neighbors = p.neighbors(c);
        match s {
            SwappedWith(_) => {}
            PointwiseFixed => {
                for &d in &neighbors {
                    match spec.curves[&d] {
                        PointwiseFixed => {
                            return Err(Error::domain(format!(
                                "curves {c} and {d} are both fixed pointwise but intersect"
                            )))
                        }
                        SwappedWith(_) => {
                            return Err(Error::SwapMismatch {
                                a: d,
                                b: c,
                                reason: format!("curve {d} meets the pointwise fixed curve {c}"),
                            })
                        }
                        Invariant(_) => {}
                    }
                }
            }
            Invariant(isos) => {
                let fixed_edges: Vec<usize> = neighbors
                    .iter()
                    .copied()
                    .filter(|d| !matches!(spec.curves[d], SwappedWith(_)))
                    .collect();
                if fixed_edges.len() > 2 {
                    return Err(Error::domain(format!(
                        "curve {c} would have {} fixed points, but an invariant curve has two",
                        fixed_edges.len()
                    )));
                }
                let needs_iso: Vec<usize> = fixed_edges
                    .iter()
                    .copied()
                    .filter(|d| matches!(spec.curves[d], Invariant(_)))
                    .collect();
                let free_slots = 2 - fixed_edges.len();
                let mut fp = FixedPoints::default();
                let mut unpinned = Vec::new();
                for iso in isos {
                    check_rotation(spec.order, iso.q)?;
                    match iso.at {
                        Some(d) if needs_iso.contains(&d) => {
                            if fp.at_edges.insert(d, iso.q).is_some() {
                                return Err(Error::domain(format!(
                                    "curve {c}: two isolated points pinned at curve {d}"
                                )));
                            }
                        }
                        Some(d) if fixed_edges.contains(&d) => {
                            return Err(Error::domain(format!(
                                "curve {c}: the point on the pointwise fixed curve {d} is not isolated"
                            )))
                        }
                        Some(d) => {
                            return Err(Error::domain(format!(
                                "curve {c}: curve {d} does not meet it in a fixed point"
                            )))
                        }
                        None => unpinned.push(iso.q),
                    }
                }
                let mut unpinned = unpinned.into_iter();
                for &d in &needs_iso {
                    if fp.at_edges.contains_key(&d) {
                        continue;
                    }
                    match unpinned.next() {
                        Some(q) => {
                            fp.at_edges.insert(d, q);
                        }
                        None => return Err(Error::FixedLocus { a: c, b: d }),
                    }
                }
                fp.free = unpinned.collect();
                if fp.free.len() > free_slots {
                    return Err(Error::domain(format!(
                        "curve {c}: {} isolated points given, but only {} fixed points remain",
                        isos.len(),
                        needs_iso.len() + free_slots
                    )));
                }
                out.insert(c, fp);
            }
        }
    }
    for (&c, fp) in &out {
        for (&d, &q) in &fp.at_edges {
            if out[&d].at_edges.get(&c) != Some(&q) {
                return Err(Error::domain(format!(
                    "curves {c} and {d} disagree on the rotation type of their intersection"
                )));
            }
        }
    }
    Ok(out)
}

fn check_action<'a>(g: &StarGraph, spec: &'a ActionSpec) -> Result<(PlumbingGraph, Checked<'a>)> {
    check_order(spec.order)?;
    if g.genus() > 0 {
        return Err(Error::domain(
            "quotients are computed only for a rational central curve",
        ));
    }
    let p = star_to_plumbing(g);
    for n in p.nodes() {
        if !spec.curves.contains_key(&n.id) {
            return Err(Error::domain(format!("curve {} has no annotation", n.id)));
        }
    }
    if let Some(&extra) = spec.curves.keys().find(|&&id| p.node(id).is_none()) {
        return Err(Error::domain(format!("curve {extra} is not in the graph")));
    }
    let rep = check_swaps(&p, spec)?;
    let fixed = place_fixed_points(&p, spec)?;
    let weights = p.nodes().map(|n| (n.id, (-n.weight) as u64)).collect();
    Ok((
        p,
        Checked {
            n: spec.order,
            weights,
            specs: &spec.curves,
            rep,
            fixed,
        },
    ))
}

impl Checked<'_> {
    fn image_weight(&self, c: usize) -> Result<u64> {
        let w = self.weights[&c];
        match &self.specs[&c] {
            FixedPointSpec::PointwiseFixed => curve_image_weight(w, self.n, &LocalAction::Pointwise),
            FixedPointSpec::SwappedWith(_) => Ok(w),
            FixedPointSpec::Invariant(_) => {
                let fp = &self.fixed[&c];
                let rotation: u64 = fp
                    .at_edges
                    .values()
                    .chain(&fp.free)
                    .map(|&q| u64::from(q))
                    .sum();
                if (w + rotation) % u64::from(self.n) != 0 {
                    return Err(Error::Divisibility {
                        curve: c,
                        weight: w,
                        rotation,
                        order: self.n,
                    });
                }
                Ok((w + rotation) / u64::from(self.n))
            }
        }
    }
}

/// Builds the quotient graph before blowing down.
fn rewrite(p: &PlumbingGraph, chk: &Checked<'_>) -> Result<PlumbingGraph> {
    let mut next_id = p.nodes().map(|n| n.id).max().map_or(0, |m| m + 1);
    let mut nodes = Vec::new();
    let mut edges = BTreeSet::new();
    let mut add_chain = |weights: &[u64], from: usize, to: Option<usize>, nodes: &mut Vec<PlumbingNode>, edges: &mut BTreeSet<(usize, usize)>| {
        let mut prev = from;
        for &w in weights {
            let id = next_id;
            next_id += 1;
            nodes.push(PlumbingNode {
                id,
                genus: 0,
                weight: -(w as i64),
            });
            edges.insert((prev.min(id), prev.max(id)));
            prev = id;
        }
        if let Some(t) = to {
            edges.insert((prev.min(t), prev.max(t)));
        }
    };

    for n in p.nodes() {
        if chk.rep[&n.id] != n.id {
            continue;
        }
        nodes.push(PlumbingNode {
            id: n.id,
            genus: n.genus,
            weight: -(chk.image_weight(n.id)? as i64),
        });
    }
    for (a, b) in p.edges() {
        let (ra, rb) = (chk.rep[&a], chk.rep[&b]);
        if let Some(&q) = chk.fixed.get(&a).and_then(|fp| fp.at_edges.get(&b)) {
            add_chain(&tail(chk.n, q), ra, Some(rb), &mut nodes, &mut edges);
        } else {
            edges.insert((ra.min(rb), ra.max(rb)));
        }
    }
    for (&c, fp) in &chk.fixed {
        for &q in &fp.free {
            add_chain(&tail(chk.n, q), c, None, &mut nodes, &mut edges);
        }
    }
    PlumbingGraph::new(nodes, edges)
}

/// Quotient of a star graph by the cyclic action described by `spec`.
pub fn star_quotient(g: &StarGraph, spec: &ActionSpec) -> Result<QuotientResult> {
    let (p, chk) = check_action(g, spec)?;
    let raw = rewrite(&p, &chk)?;
    let (minimal, log) = blow_down_logged(&raw);
    if !minimal.is_empty() && !is_negative_definite(&intersection_matrix(&minimal)) {
        return Err(Error::domain("quotient graph is not negative definite"));
    }
    Ok(QuotientResult {
        graph: classify(&minimal),
        plumbing: minimal,
        blowdown_log: log,
    })
}
