//! Closed-form quotients of two named families: the triangle graphs
//! `D_{p,q,r}` and the tetrahedral graphs `T_m`, together with the
//! annotations that make the general engine reproduce them.

use crate::error::{Error, Result};
use crate::graph::StarGraph;

use super::{ActionSpec, FixedPointSpec, IsolatedPoint};

/// One row of a quotient table: the name of the acting group and the
/// quotient graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleQuotient {
    pub group: &'static str,
    pub graph: StarGraph,
}

/// The triangle graph `D_{p,q,r}`: a `(-1)`-curve with three single-curve
/// branches.
pub fn family_triangle(p: u64, q: u64, r: u64) -> Result<StarGraph> {
    StarGraph::triangle(p, q, r)
}

/// Index of the branch whose weight differs from the two equal ones, or 0
/// when all three agree; `None` when all three differ.
fn odd_branch(w: [u64; 3]) -> Option<usize> {
    match w {
        [a, b, c] if a == b && b == c => Some(0),
        [_, b, c] if b == c => Some(0),
        [a, _, c] if a == c => Some(1),
        [a, b, _] if a == b => Some(2),
        _ => None,
    }
}

/// Quotients of `D_{p,q,r}` by its graph symmetries. With two equal
/// weights `q` and the third `p` the involution gives `D_{2p,2,q}`; when
/// all three equal `p` the cyclic group of order three gives `D_{3,3,p}`
/// and the full symmetric group `D_{2,3,2p}`. Distinct weights give no
/// rows.
pub fn family_triangle_quotients(p: u64, q: u64, r: u64) -> Result<Vec<TriangleQuotient>> {
    let w = [p, q, r];
    family_triangle(p, q, r)?;
    let Some(i) = odd_branch(w) else {
        return Ok(Vec::new());
    };
    let (odd, pair) = (w[i], w[(i + 1) % 3]);
    let mut rows = vec![TriangleQuotient {
        group: "sigma3",
        graph: StarGraph::triangle(2 * odd, 2, pair)?,
    }];
    if p == q && q == r {
        rows.push(TriangleQuotient {
            group: "Z3",
            graph: StarGraph::triangle(3, 3, p)?,
        });
        rows.push(TriangleQuotient {
            group: "S3",
            graph: StarGraph::triangle(2, 3, 2 * p)?,
        });
    }
    Ok(rows)
}

fn triangle_weights(g: &StarGraph) -> Result<[u64; 3]> {
    let not_triangle = || Error::domain("not a triangle graph");
    if g.genus() != 0 || g.central_weight() != 1 || g.branch_count() != 3 {
        return Err(not_triangle());
    }
    let mut w = [0; 3];
    for (slot, br) in w.iter_mut().zip(g.branches()) {
        match br.weights() {
            [x] => *slot = *x,
            _ => return Err(not_triangle()),
        }
    }
    Ok(w)
}

fn symmetric_pair(g: &StarGraph) -> Result<(usize, [usize; 2])> {
    let w = triangle_weights(g)?;
    let i = odd_branch(w).ok_or_else(|| Error::domain("triangle graph has no symmetry"))?;
    Ok((i + 1, [(i + 1) % 3 + 1, (i + 2) % 3 + 1]))
}

/// The reflection of a triangle graph that fixes the central curve and the
/// odd branch pointwise and exchanges the two equal branches.
pub fn triangle_sigma3_action(g: &StarGraph) -> Result<ActionSpec> {
    let (fixed, pair) = symmetric_pair(g)?;
    Ok(ActionSpec::new(2)
        .with(0, FixedPointSpec::Invariant(vec![IsolatedPoint::free(1)]))
        .with(fixed, FixedPointSpec::PointwiseFixed)
        .with_cycle(&pair))
}

/// The involution of a triangle graph that keeps the odd branch invariant
/// without fixing it pointwise; its quotient is a cyclic quotient
/// singularity.
pub fn triangle_sigma2_action(g: &StarGraph) -> Result<ActionSpec> {
    let (odd, pair) = symmetric_pair(g)?;
    let weight = g.branches()[odd - 1].weights()[0];
    let mut isos = vec![IsolatedPoint::free(1)];
    if weight % 2 == 0 {
        isos.push(IsolatedPoint::free(1));
    }
    Ok(ActionSpec::new(2)
        .with(0, FixedPointSpec::Invariant(vec![IsolatedPoint::free(1)]))
        .with(odd, FixedPointSpec::Invariant(isos))
        .with_cycle(&pair))
}

/// Rotation of order three permuting the branches of `D_{p,p,p}`.
pub fn triangle_z3_action(g: &StarGraph) -> Result<ActionSpec> {
    let [a, b, c] = triangle_weights(g)?;
    if a != b || b != c {
        return Err(Error::domain("order three needs three equal branches"));
    }
    Ok(ActionSpec::new(3)
        .with(
            0,
            FixedPointSpec::Invariant(vec![IsolatedPoint::free(1), IsolatedPoint::free(1)]),
        )
        .with_cycle(&[1, 2, 3]))
}

enum TetrahedralType {
    /// `m = 6(b - 2) + 1`: branches `[2,2]`, `[2,2]`, `[2]`.
    One,
    /// `m = 6(b - 2) + 5`: branches `[2]`, `[3]`, `[3]`.
    Two,
}

fn tetrahedral_type(m: u64) -> Result<(TetrahedralType, u64)> {
    if m < 7 {
        return Err(Error::domain(format!("tetrahedral family needs m >= 7, got {m}")));
    }
    match m % 6 {
        1 => Ok((TetrahedralType::One, (m - 1) / 6 + 2)),
        5 => Ok((TetrahedralType::Two, (m - 5) / 6 + 2)),
        _ => Err(Error::domain(format!("tetrahedral family needs m = 1 or 5 mod 6, got {m}"))),
    }
}

/// The tetrahedral graph `T_m` and its quotient by the involution
/// exchanging two of its branches, which is an octahedral graph.
pub fn family_tetrahedral(m: u64) -> Result<(StarGraph, StarGraph)> {
    let (kind, b) = tetrahedral_type(m)?;
    let odd = b % 2 == 1;
    let (t, o) = match kind {
        TetrahedralType::One => (
            StarGraph::new(0, b, vec![vec![2, 2], vec![2, 2], vec![2]])?,
            if odd {
                StarGraph::new(0, (b + 1) / 2, vec![vec![4], vec![2], vec![2, 2]])?
            } else {
                StarGraph::new(0, (b + 2) / 2, vec![vec![2, 2, 2], vec![2, 2], vec![2]])?
            },
        ),
        TetrahedralType::Two => (
            StarGraph::new(0, b, vec![vec![2], vec![3], vec![3]])?,
            if odd {
                StarGraph::new(0, (b + 1) / 2, vec![vec![3], vec![4], vec![2]])?
            } else {
                StarGraph::new(0, (b + 2) / 2, vec![vec![3], vec![2], vec![2, 2, 2]])?
            },
        ),
    };
    Ok((t, o))
}

/// Annotation of the involution on `T_m` whose quotient
/// [`family_tetrahedral`] returns. Curve ids follow
/// [`star_to_plumbing`](crate::graph::star_to_plumbing).
pub fn tetrahedral_sigma3_action(m: u64) -> Result<ActionSpec> {
    let (kind, b) = tetrahedral_type(m)?;
    let two = || FixedPointSpec::Invariant(vec![IsolatedPoint::free(1), IsolatedPoint::free(1)]);
    let (spec, fixed) = match kind {
        TetrahedralType::One => (ActionSpec::new(2).with_cycle(&[1, 3]).with_cycle(&[2, 4]), 5),
        TetrahedralType::Two => (ActionSpec::new(2).with_cycle(&[2, 3]), 1),
    };
    Ok(if b % 2 == 1 {
        spec.with(0, FixedPointSpec::Invariant(vec![IsolatedPoint::free(1)]))
            .with(fixed, FixedPointSpec::PointwiseFixed)
    } else {
        spec.with(0, two()).with(fixed, two())
    })
}
