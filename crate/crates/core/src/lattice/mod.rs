//! Intersection lattices of resolution graphs.
//!
//! The adjoint `j` of the intersection form is represented by the
//! intersection matrix itself (it is symmetric), acting on coordinates in
//! the curve basis `E_k` and producing coordinates in the dual basis.
//! The discriminant group `coker j` is the torsion part of the first
//! homology of the link; graph automorphisms act on it by permuting the
//! dual basis.

mod matrix;
mod snf;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{star_to_plumbing, PlumbingGraph, StarGraph};

pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithForm};

/// Symmetric intersection matrix of a plumbing graph, rows ordered by
/// increasing curve id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionMatrix {
    matrix: IntMatrix,
    ids: Vec<usize>,
}

impl IntersectionMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Curve id of each row.
    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn size(&self) -> usize {
        self.ids.len()
    }

    pub fn index_of(&self, id: usize) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub fn determinant(&self) -> BigInt {
        self.matrix.determinant()
    }
}

pub fn intersection_matrix(p: &PlumbingGraph) -> IntersectionMatrix {
    let ids: Vec<usize> = p.nodes().map(|n| n.id).collect();
    let s = ids.len();
    let mut m = IntMatrix::zeros(s, s);
    for (i, node) in p.nodes().enumerate() {
        m[(i, i)] = BigInt::from(node.weight);
    }
    for (a, b) in p.edges() {
        let i = ids.binary_search(&a).unwrap();
        let j = ids.binary_search(&b).unwrap();
        m[(i, j)] = BigInt::one();
        m[(j, i)] = BigInt::one();
    }
    IntersectionMatrix { matrix: m, ids }
}

/// `(-1)^k` times every leading principal minor of order `k` is positive.
pub fn is_negative_definite(m: &IntersectionMatrix) -> bool {
    m.matrix
        .leading_minors()
        .iter()
        .enumerate()
        .all(|(k, minor)| if k % 2 == 0 { minor.is_negative() } else { minor.is_positive() })
}

/// `coker j` as `Z/d_1 + ... + Z/d_m` with `d_1 | ... | d_m`, all `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantGroup {
    invariant_factors: Vec<BigInt>,
    /// Maps dual-lattice coordinates to coordinates in the cyclic factors;
    /// one row per invariant factor.
    transform: IntMatrix,
}

impl DiscriminantGroup {
    fn from_smith(s: &SmithForm) -> Self {
        let factors = s.factors();
        let keep: Vec<usize> = (0..factors.len()).filter(|&i| factors[i] > BigInt::one()).collect();
        let mut transform = IntMatrix::zeros(keep.len(), s.left.cols());
        for (r, &i) in keep.iter().enumerate() {
            for j in 0..s.left.cols() {
                transform[(r, j)] = s.left[(i, j)].clone();
            }
        }
        DiscriminantGroup {
            invariant_factors: keep.iter().map(|&i| factors[i].clone()).collect(),
            transform,
        }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn transform(&self) -> &IntMatrix {
        &self.transform
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Class of a dual-lattice vector, reduced into `[0, d_i)`.
    pub fn coordinates(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.transform
            .mul_vec(v)
            .into_iter()
            .zip(&self.invariant_factors)
            .map(|(x, d)| x.mod_floor(d))
            .collect()
    }

    /// True iff `v` lies in `im j`.
    pub fn is_zero_class(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).iter().all(Zero::is_zero)
    }
}

impl fmt::Display for DiscriminantGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

pub fn discriminant_group(p: &PlumbingGraph) -> Result<DiscriminantGroup> {
    let m = intersection_matrix(p);
    if !is_negative_definite(&m) {
        return Err(Error::domain(
            "discriminant group needs a negative definite intersection matrix",
        ));
    }
    Ok(DiscriminantGroup::from_smith(&smith_normal_form(&m.matrix)))
}

/// First homology of the link: `Z^free_rank + torsion`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkHomology {
    pub free_rank: u32,
    pub torsion: DiscriminantGroup,
}

impl fmt::Display for LinkHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.free_rank, self.torsion.is_trivial()) {
            (0, _) => write!(f, "{}", self.torsion),
            (k, true) => write!(f, "Z^{k}"),
            (k, false) => write!(f, "Z^{k} + {}", self.torsion),
        }
    }
}

/// `H_1(L) = Z^{2g} + coker j`; the sequence splits since `H_1(E_0)` is free.
pub fn link_homology(g: &StarGraph) -> LinkHomology {
    let torsion = discriminant_group(&star_to_plumbing(g))
        .expect("star graphs are negative definite by construction");
    LinkHomology {
        free_rank: 2 * g.genus(),
        torsion,
    }
}

/// A permutation of curve ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphAutomorphism {
    map: BTreeMap<usize, usize>,
}

impl GraphAutomorphism {
    pub fn identity(p: &PlumbingGraph) -> Self {
        GraphAutomorphism {
            map: p.nodes().map(|n| (n.id, n.id)).collect(),
        }
    }

    pub fn from_map(map: BTreeMap<usize, usize>) -> Self {
        GraphAutomorphism { map }
    }

    /// Extends a permutation of branches (`branch i -> perm[i]`) curve by
    /// curve, fixing the center. Fails unless permuted branches carry
    /// identical weight sequences.
    pub fn from_branch_permutation(g: &StarGraph, perm: &[usize]) -> Result<Self> {
        let r = g.branch_count();
        let mut seen = vec![false; r];
        if perm.len() != r || perm.iter().any(|&j| j >= r || std::mem::replace(&mut seen[j], true)) {
            return Err(Error::domain("not a permutation of the branches"));
        }
        let mut map = BTreeMap::from([(0, 0)]);
        for (i, &j) in perm.iter().enumerate() {
            if g.branches()[i] != g.branches()[j] {
                return Err(Error::domain(format!(
                    "branches {i} and {j} have different weights"
                )));
            }
            for pos in 0..g.branches()[i].len() {
                map.insert(g.curve_id(i, pos).unwrap(), g.curve_id(j, pos).unwrap());
            }
        }
        Ok(GraphAutomorphism { map })
    }

    pub fn image(&self, id: usize) -> Option<usize> {
        self.map.get(&id).copied()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(a, b)| a == b)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        GraphAutomorphism {
            map: other
                .map
                .iter()
                .map(|(&k, v)| (k, self.map.get(v).copied().unwrap_or(*v)))
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        GraphAutomorphism {
            map: self.map.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }
}

/// All weight-preserving branch permutations of a star graph (the group
/// `Aut Gamma`), as automorphisms of its plumbing graph.
pub fn star_automorphisms(g: &StarGraph) -> Vec<GraphAutomorphism> {
    fn extend(
        g: &StarGraph,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<GraphAutomorphism>,
    ) {
        let i = perm.len();
        if i == g.branch_count() {
            out.push(GraphAutomorphism::from_branch_permutation(g, perm).unwrap());
            return;
        }
        for j in 0..g.branch_count() {
            if !used[j] && g.branches()[i] == g.branches()[j] {
                used[j] = true;
                perm.push(j);
                extend(g, perm, used, out);
                perm.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(g, &mut Vec::new(), &mut vec![false; g.branch_count()], &mut out);
    out
}

/// Permutation matrix `P` with `P e_k = e_{a(k)}`; checks `P M P^T = M`.
pub fn automorphism_matrix(p: &PlumbingGraph, a: &GraphAutomorphism) -> Result<IntMatrix> {
    let m = intersection_matrix(p);
    let s = m.size();
    if a.map.len() != s {
        return Err(Error::domain("automorphism does not cover every curve"));
    }
    let mut perm = IntMatrix::zeros(s, s);
    let mut hit = vec![false; s];
    for (k, &id) in m.ids().iter().enumerate() {
        let target = a
            .image(id)
            .and_then(|t| m.index_of(t))
            .ok_or_else(|| Error::domain(format!("curve {id} has no image in the graph")))?;
        if std::mem::replace(&mut hit[target], true) {
            return Err(Error::domain("automorphism is not a bijection"));
        }
        perm[(target, k)] = BigInt::one();
    }
    let conj = &(&perm * m.matrix()) * &perm.transpose();
    if &conj != m.matrix() {
        return Err(Error::domain(
            "permutation does not preserve weights and adjacency",
        ));
    }
    let genus_ok = p
        .nodes()
        .all(|n| p.node(a.image(n.id).unwrap()).map(|t| t.genus) == Some(n.genus));
    if !genus_ok {
        return Err(Error::domain("permutation does not preserve genus"));
    }
    Ok(perm)
}

/// Whether `a` acts as the identity on `coker j`: for every dual basis
/// vector `l`, `a(l) - l` lies in `im j`.
pub fn acts_trivially_on_discriminant(p: &PlumbingGraph, a: &GraphAutomorphism) -> Result<bool> {
    let perm = automorphism_matrix(p, a)?;
    let group = discriminant_group(p)?;
    let s = perm.rows();
    for k in 0..s {
        let mut v = vec![BigInt::zero(); s];
        for (i, x) in v.iter_mut().enumerate() {
            *x = perm[(i, k)].clone();
        }
        v[k] -= 1;
        if !group.is_zero_class(&v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `Aut Gamma -> Aut(coker j)` is injective. Only the combinatorial
/// action of branch permutations on the torsion is examined.
pub fn torsion_action_faithful(g: &StarGraph) -> bool {
    let p = star_to_plumbing(g);
    star_automorphisms(g)
        .iter()
        .filter(|a| !a.is_identity())
        .all(|a| !acts_trivially_on_discriminant(&p, a).expect("valid automorphism"))
}
