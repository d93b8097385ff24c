//! Exact arithmetic on the rational projective line.
//!
//! Points are reduced integer pairs `x:y`, maps are content-reduced integer
//! matrices. The finite group of label-preserving projective automorphisms
//! of a point configuration is found by brute force over images of the
//! first three points.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::text::{tokenize, Token};

/// A point `x:y` of the rational projective line, reduced so that `y > 0`,
/// or `y = 0` and `x = 1` for the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    x: BigInt,
    y: BigInt,
}

impl ProjPoint {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Result<Self> {
        let (x, y) = (x.into(), y.into());
        if x.is_zero() && y.is_zero() {
            return Err(Error::domain("0:0 is not a projective point"));
        }
        Ok(Self::reduce(x, y))
    }

    fn reduce(x: BigInt, y: BigInt) -> Self {
        let g = x.gcd(&y);
        let (mut x, mut y) = (x / &g, y / &g);
        if y.is_negative() || (y.is_zero() && x.is_negative()) {
            x = -x;
            y = -y;
        }
        ProjPoint { x, y }
    }

    pub fn infinity() -> Self {
        ProjPoint {
            x: BigInt::one(),
            y: BigInt::zero(),
        }
    }

    pub fn finite(r: &BigRational) -> Self {
        ProjPoint {
            x: r.numer().clone(),
            y: r.denom().clone(),
        }
    }

    pub fn integer(n: i64) -> Self {
        ProjPoint {
            x: n.into(),
            y: BigInt::one(),
        }
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// Affine coordinate `x/y`, `None` at infinity.
    pub fn as_rational(&self) -> Option<BigRational> {
        (!self.is_infinity()).then(|| BigRational::new(self.x.clone(), self.y.clone()))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.x, self.y)
    }
}

/// `det [p, q]`; zero exactly when the points coincide.
fn bracket(p: &ProjPoint, q: &ProjPoint) -> BigInt {
    &p.x * &q.y - &q.x * &p.y
}

/// A projective transformation `z -> (a z + b) / (c z + d)` with integer
/// entries, content-reduced and with the first nonzero entry of `(c, d)`
/// positive, so equal maps have equal matrices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MoebiusMap {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl MoebiusMap {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        if (&a * &d - &b * &c).is_zero() {
            return Err(Error::domain("Moebius matrix must have nonzero determinant"));
        }
        Ok(Self::normalized(a, b, c, d))
    }

    fn normalized(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        let g = a.gcd(&b).gcd(&c).gcd(&d);
        let (mut a, mut b, mut c, mut d) = (a / &g, b / &g, c / &g, d / &g);
        let lead = if c.is_zero() { &d } else { &c };
        if lead.is_negative() {
            a = -a;
            b = -b;
            c = -c;
            d = -d;
        }
        MoebiusMap { a, b, c, d }
    }

    pub fn identity() -> Self {
        MoebiusMap {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    /// `[a, b, c, d]`.
    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn determinant(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::reduce(
            &self.a * &p.x + &self.b * &p.y,
            &self.c * &p.x + &self.d * &p.y,
        )
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self::normalized(
            &self.a * &other.a + &self.b * &other.c,
            &self.a * &other.b + &self.b * &other.d,
            &self.c * &other.a + &self.d * &other.c,
            &self.c * &other.b + &self.d * &other.d,
        )
    }

    pub fn inverse(&self) -> Self {
        Self::normalized(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    /// The order of the map if it is at most `bound`.
    pub fn order_up_to(&self, bound: u32) -> Option<u32> {
        let mut power = self.clone();
        for k in 1..=bound {
            if power.is_identity() {
                return Some(k);
            }
            power = power.compose(self);
        }
        None
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.a, self.b, self.c, self.d)
    }
}

pub fn apply(m: &MoebiusMap, p: &ProjPoint) -> ProjPoint {
    m.apply(p)
}

fn check_distinct(points: &[&ProjPoint]) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        if points[i + 1..].contains(p) {
            return Err(Error::domain(format!("point {p} is repeated")));
        }
    }
    Ok(())
}

/// `((p1 - p3)(p2 - p4)) / ((p1 - p4)(p2 - p3))`, evaluated projectively.
/// Distinct points never give `0`, `1` or infinity.
pub fn cross_ratio(
    p1: &ProjPoint,
    p2: &ProjPoint,
    p3: &ProjPoint,
    p4: &ProjPoint,
) -> Result<BigRational> {
    check_distinct(&[p1, p2, p3, p4])?;
    Ok(BigRational::new(
        bracket(p1, p3) * bracket(p2, p4),
        bracket(p1, p4) * bracket(p2, p3),
    ))
}

/// `j(l) = 4 (l^2 - l + 1)^3 / (27 l^2 (l - 1)^2)`.
pub fn j_invariant(lambda: &BigRational) -> Result<BigRational> {
    let one = BigRational::one();
    if lambda.is_zero() || *lambda == one {
        return Err(Error::domain(format!("j is undefined at lambda = {lambda}")));
    }
    let l = lambda;
    let num = l * l - l + &one;
    let lm1 = l - &one;
    let numerator = BigRational::from_integer(4.into()) * &num * &num * &num;
    let denominator = BigRational::from_integer(27.into()) * l * l * &lm1 * &lm1;
    Ok(numerator / denominator)
}

/// Sends the triple to `0, infinity, 1`.
fn to_standard(p: [&ProjPoint; 3]) -> MoebiusMap {
    let c = bracket(p[2], p[1]);
    let d = bracket(p[2], p[0]);
    MoebiusMap::normalized(
        &c * &p[0].y,
        -(&c * &p[0].x),
        &d * &p[1].y,
        -(&d * &p[1].x),
    )
}

/// The unique map sending `src[i]` to `dst[i]`.
pub fn moebius_through(src: [&ProjPoint; 3], dst: [&ProjPoint; 3]) -> Result<MoebiusMap> {
    check_distinct(&src)?;
    check_distinct(&dst)?;
    Ok(to_standard(dst).inverse().compose(&to_standard(src)))
}

/// Distinct points of the projective line with opaque labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig {
    points: Vec<(ProjPoint, String)>,
}

impl PointConfig {
    pub fn new(points: Vec<(ProjPoint, String)>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::domain(format!(
                "a point configuration needs at least 3 points, found {}",
                points.len()
            )));
        }
        let refs: Vec<&ProjPoint> = points.iter().map(|(p, _)| p).collect();
        check_distinct(&refs)?;
        Ok(PointConfig { points })
    }

    pub fn points(&self) -> &[(ProjPoint, String)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn label_of(&self, p: &ProjPoint) -> Option<&str> {
        self.points
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, l)| l.as_str())
    }

    /// Same points, new labels in the same order.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.points.len() {
            return Err(Error::domain(format!(
                "{} labels for {} points",
                labels.len(),
                self.points.len()
            )));
        }
        Ok(PointConfig {
            points: self
                .points
                .iter()
                .zip(labels)
                .map(|((p, _), l)| (p.clone(), l))
                .collect(),
        })
    }

    fn preserved_by(&self, m: &MoebiusMap) -> bool {
        self.points
            .iter()
            .all(|(p, l)| self.label_of(&m.apply(p)) == Some(l.as_str()))
    }
}

fn parse_coordinate(line: usize, column: usize, text: &str) -> Result<BigInt> {
    text.parse()
        .map_err(|_| Error::syntax(line, column, format!("expected an integer, found `{text}`")))
}

fn parse_point_line(line: usize, tokens: &[Token<'_>]) -> Result<(ProjPoint, String)> {
    if tokens[0].text != "point" {
        return Err(Error::syntax(
            line,
            tokens[0].column,
            format!("expected `point`, found `{}`", tokens[0].text),
        ));
    }
    let coord = tokens
        .get(1)
        .ok_or_else(|| Error::syntax(line, tokens[0].column + 5, "`point` needs X:Y"))?;
    let (xs, ys) = coord
        .text
        .split_once(':')
        .ok_or_else(|| Error::syntax(line, coord.column, "expected X:Y"))?;
    let x = parse_coordinate(line, coord.column, xs)?;
    let y = parse_coordinate(line, coord.column + xs.len() + 1, ys)?;
    let point = ProjPoint::new(x, y)
        .map_err(|_| Error::syntax(line, coord.column, "0:0 is not a point"))?;
    let label = match tokens.get(2) {
        None => String::new(),
        Some(tok) => match tok.text.strip_prefix("label=") {
            Some(l) if !l.is_empty() => l.to_string(),
            _ => return Err(Error::syntax(line, tok.column, "expected label=<token>")),
        },
    };
    if let Some(extra) = tokens.get(3) {
        return Err(Error::syntax(line, extra.column, "unexpected token"));
    }
    Ok((point, label))
}

/// Reads lines `point X:Y label=<token>`; a missing label is the empty
/// label.
pub fn parse_points(text: &str) -> Result<PointConfig> {
    let points = tokenize(text)
        .iter()
        .map(|(line, tokens)| parse_point_line(*line, tokens))
        .collect::<Result<Vec<_>>>()?;
    PointConfig::new(points)
}

/// All projective maps permuting the points of `cfg` and preserving labels.
/// Elements are sorted by matrix, so the identity is not necessarily first.
pub fn label_preserving_group(cfg: &PointConfig) -> Vec<MoebiusMap> {
    let pts = &cfg.points;
    let src = [&pts[0].0, &pts[1].0, &pts[2].0];
    let candidates = |k: usize| -> Vec<usize> {
        (0..pts.len()).filter(|&i| pts[i].1 == pts[k].1).collect()
    };
    let mut group = Vec::new();
    for &i in &candidates(0) {
        for &j in &candidates(1) {
            for &k in &candidates(2) {
                if i == j || j == k || i == k {
                    continue;
                }
                let m = moebius_through(src, [&pts[i].0, &pts[j].0, &pts[k].0])
                    .expect("distinct triples");
                if cfg.preserved_by(&m) {
                    group.push(m);
                }
            }
        }
    }
    group.sort();
    group
}

/// A finite group named by isomorphism type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupDescription {
    pub name: String,
    pub order: u64,
}

impl GroupDescription {
    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: u64) -> Self {
        let name = if n == 1 { "trivial".to_string() } else { format!("Z{n}") };
        GroupDescription { name, order: n }
    }

    /// Dihedral group of order `2n`; small cases use their usual names.
    pub fn dihedral(n: u64) -> Self {
        match n {
            1 => Self::cyclic(2),
            2 => Self::klein(),
            3 => Self::symmetric3(),
            _ => GroupDescription {
                name: format!("dihedral({})", 2 * n),
                order: 2 * n,
            },
        }
    }

    pub fn klein() -> Self {
        GroupDescription {
            name: "Klein".into(),
            order: 4,
        }
    }

    pub fn symmetric3() -> Self {
        GroupDescription {
            name: "S3".into(),
            order: 6,
        }
    }

    pub fn alternating4() -> Self {
        GroupDescription {
            name: "A4".into(),
            order: 12,
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.order == 1 || self.name == format!("Z{}", self.order)
    }

    /// Dihedral of order `2q` with `q` odd (including `Z2` and `S3`).
    pub fn is_dihedral_odd(&self) -> bool {
        self.order == 2
            || self.name == "S3"
            || (self.name.starts_with("dihedral(") && (self.order / 2) % 2 == 1)
    }
}

impl fmt::Display for GroupDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Names a finite subgroup of `PSL(2, C)` from its element orders. Only
/// cyclic, dihedral and tetrahedral groups are recognized.
pub fn identify_group(element_orders: &[u32]) -> GroupDescription {
    let n = element_orders.len() as u64;
    let mut counts = BTreeMap::new();
    for &o in element_orders {
        *counts.entry(o as u64).or_insert(0u64) += 1;
    }
    let count = |o: u64| counts.get(&o).copied().unwrap_or(0);
    if count(n) > 0 {
        return GroupDescription::cyclic(n);
    }
    if n % 2 == 0 && count(2) > n / 2 - 1 && (n == 4 || count(n / 2) > 0) {
        return GroupDescription::dihedral(n / 2);
    }
    if n == 12 && count(3) == 8 && count(2) == 3 {
        return GroupDescription::alternating4();
    }
    GroupDescription {
        name: format!("order {n}"),
        order: n,
    }
}

/// Names the group generated by a list of maps that is closed under
/// composition.
pub fn describe_group(elements: &[MoebiusMap]) -> GroupDescription {
    let orders: Vec<u32> = elements
        .iter()
        .map(|m| m.order_up_to(elements.len() as u32).expect("finite group"))
        .collect();
    identify_group(&orders)
}

/// Analytic modulus of four points: a cross ratio, a `j` value, or the
/// equianharmonic class `j = 0` (whose cross ratios are irrational).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Modulus {
    Lambda(BigRational),
    J(BigRational),
    Equianharmonic,
}

impl Modulus {
    pub fn j(&self) -> Result<BigRational> {
        match self {
            Modulus::Lambda(l) => j_invariant(l),
            Modulus::J(j) => Ok(j.clone()),
            Modulus::Equianharmonic => Ok(BigRational::zero()),
        }
    }
}

/// Cross ratio after reordering the points: `order[i]` is the old index of
/// the new `i`-th point.
fn reorder_lambda(lambda: &BigRational, order: [usize; 4]) -> BigRational {
    let pts = [
        ProjPoint::integer(0),
        ProjPoint::infinity(),
        ProjPoint::integer(1),
        ProjPoint::finite(&lambda.recip()),
    ];
    cross_ratio(&pts[order[0]], &pts[order[1]], &pts[order[2]], &pts[order[3]])
        .expect("distinct points")
}

/// The group of projective automorphisms permuting four points with the
/// given labels (in point order). A cross ratio refers to that order.
///
/// With exactly one or two equal pairs and `j = 1` the group depends on
/// which cross ratio in the orbit `{-1, 2, 1/2}` belongs to the pair, so a
/// `j` value alone is rejected there.
pub fn quadrilateral_symmetry<T: Eq>(labels: &[T; 4], modulus: &Modulus) -> Result<GroupDescription> {
    let j = modulus.j()?;
    let one = BigRational::one();
    let j0 = j.is_zero();
    let j1 = j == one;
    let classes: Vec<Vec<usize>> = {
        let mut cls: Vec<Vec<usize>> = Vec::new();
        for i in 0..4 {
            match cls.iter_mut().find(|c| labels[c[0]] == labels[i]) {
                Some(c) => c.push(i),
                None => cls.push(vec![i]),
            }
        }
        cls
    };
    let mut sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    let group = match sizes.as_slice() {
        [4] if j0 => GroupDescription::alternating4(),
        [4] if j1 => GroupDescription::dihedral(4),
        [4] => GroupDescription::klein(),
        [1, 3] if j0 => GroupDescription::cyclic(3),
        [1, 3] if j1 => GroupDescription::cyclic(2),
        [1, 3] => GroupDescription::trivial(),
        [1, 1, 1, 1] => GroupDescription::trivial(),
        [1, 1, 2] | [2, 2] => {
            let harmonic = match modulus {
                Modulus::Lambda(l) => {
                    let pair = classes.iter().find(|c| c.len() == 2).unwrap();
                    let rest: Vec<usize> = (0..4).filter(|i| !pair.contains(i)).collect();
                    reorder_lambda(l, [pair[0], pair[1], rest[0], rest[1]]) == -one
                }
                _ if j1 => {
                    return Err(Error::domain(
                        "j = 1 does not decide the group for this weight pattern; give the cross ratio",
                    ))
                }
                _ => false,
            };
            match (sizes.as_slice(), harmonic) {
                ([2, 2], true) => GroupDescription::klein(),
                ([2, 2], false) => GroupDescription::cyclic(2),
                (_, true) => GroupDescription::cyclic(2),
                (_, false) => GroupDescription::trivial(),
            }
        }
        _ => unreachable!("partitions of four"),
    };
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pt(x: i64, y: i64) -> ProjPoint {
        ProjPoint::new(x, y).unwrap()
    }

    fn inf() -> ProjPoint {
        ProjPoint::infinity()
    }

    fn cfg(points: &[(ProjPoint, &str)]) -> PointConfig {
        PointConfig::new(points.iter().map(|(p, l)| (p.clone(), l.to_string())).collect()).unwrap()
    }

    #[test]
    fn points_reduce() {
        assert_eq!(pt(2, 4), pt(1, 2));
        assert_eq!(pt(-2, -4), pt(1, 2));
        assert_eq!(pt(3, -6), pt(-1, 2));
        assert_eq!(pt(-5, 0), inf());
        assert!(ProjPoint::new(0, 0).is_err());
        assert_eq!(pt(0, 7).to_string(), "0:1");
    }

    #[test]
    fn apply_examples() {
        for p in [pt(0, 1), pt(3, 2), inf()] {
            assert_eq!(MoebiusMap::identity().apply(&p), p);
        }
        let inv = MoebiusMap::new(0, 1, 1, 0).unwrap();
        assert_eq!(inv.apply(&pt(0, 1)), inf());
        let shift = MoebiusMap::new(1, 1, 0, 1).unwrap();
        assert_eq!(shift.apply(&pt(1, 1)), pt(2, 1));
        assert!(MoebiusMap::new(1, 2, 2, 4).is_err());
    }

    #[test]
    fn maps_normalize() {
        assert_eq!(MoebiusMap::new(-2, 0, 0, -2).unwrap(), MoebiusMap::identity());
        assert_eq!(
            MoebiusMap::new(1, -1, 0, -1).unwrap(),
            MoebiusMap::new(-1, 1, 0, 1).unwrap()
        );
    }

    #[test]
    fn cross_ratio_examples() {
        let l = cross_ratio(&pt(0, 1), &inf(), &pt(1, 1), &pt(-1, 1)).unwrap();
        assert_eq!(l, r(-1, 1));
        let l = cross_ratio(&pt(0, 1), &inf(), &pt(1, 1), &pt(2, 1)).unwrap();
        assert_eq!(l, r(1, 2));
        assert_eq!(j_invariant(&l).unwrap(), r(1, 1));
        assert!(cross_ratio(&pt(0, 1), &pt(0, 1), &pt(1, 1), &pt(2, 1)).is_err());
    }

    #[test]
    fn cross_ratio_against_affine_formula() {
        let xs = [r(0, 1), r(3, 2), r(-7, 5), r(11, 1)];
        let expected = ((&xs[0] - &xs[2]) * (&xs[1] - &xs[3])) / ((&xs[0] - &xs[3]) * (&xs[1] - &xs[2]));
        let ps: Vec<ProjPoint> = xs.iter().map(ProjPoint::finite).collect();
        assert_eq!(cross_ratio(&ps[0], &ps[1], &ps[2], &ps[3]).unwrap(), expected);
    }

    #[test]
    fn klein_swaps_keep_cross_ratio() {
        let ps = [pt(0, 1), pt(5, 3), pt(-2, 1), pt(7, 1)];
        let l = cross_ratio(&ps[0], &ps[1], &ps[2], &ps[3]).unwrap();
        for [a, b, c, d] in [[1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]] {
            assert_eq!(cross_ratio(&ps[a], &ps[b], &ps[c], &ps[d]).unwrap(), l);
        }
    }

    #[test]
    fn j_examples() {
        assert_eq!(j_invariant(&r(-1, 1)).unwrap(), r(1, 1));
        assert_eq!(j_invariant(&r(2, 1)).unwrap(), r(1, 1));
        assert_eq!(j_invariant(&r(1, 2)).unwrap(), r(1, 1));
        assert_eq!(j_invariant(&r(3, 1)).unwrap(), r(343, 243));
        assert!(j_invariant(&r(0, 1)).is_err());
        assert!(j_invariant(&r(1, 1)).is_err());
    }

    #[test]
    fn through_examples() {
        let (z, o, i) = (pt(0, 1), pt(1, 1), inf());
        assert_eq!(moebius_through([&z, &o, &i], [&z, &o, &i]).unwrap(), MoebiusMap::identity());
        assert_eq!(
            moebius_through([&z, &o, &i], [&i, &o, &z]).unwrap(),
            MoebiusMap::new(0, 1, 1, 0).unwrap()
        );
        assert_eq!(
            moebius_through([&z, &o, &i], [&o, &z, &i]).unwrap(),
            MoebiusMap::new(-1, 1, 0, 1).unwrap()
        );
        assert!(moebius_through([&z, &z, &i], [&o, &z, &i]).is_err());
    }

    #[test]
    fn group_examples() {
        let three = cfg(&[(pt(0, 1), "a"), (pt(1, 1), "a"), (inf(), "a")]);
        let g = label_preserving_group(&three);
        assert_eq!(g.len(), 6);
        assert_eq!(describe_group(&g).name, "S3");

        let four = cfg(&[(pt(0, 1), "a"), (pt(1, 1), "a"), (inf(), "a"), (pt(-1, 1), "a")]);
        let g = label_preserving_group(&four);
        assert_eq!(describe_group(&g), GroupDescription::dihedral(4));

        let pairs = cfg(&[(pt(0, 1), "a"), (inf(), "a"), (pt(1, 1), "c"), (pt(-1, 1), "c")]);
        let g = label_preserving_group(&pairs);
        assert_eq!(describe_group(&g), GroupDescription::klein());
    }

    #[test]
    fn group_identification() {
        assert_eq!(identify_group(&[1]).name, "trivial");
        assert_eq!(identify_group(&[1, 2, 4, 4]).name, "Z4");
        assert_eq!(identify_group(&[1, 2, 2, 2]).name, "Klein");
        assert_eq!(identify_group(&[1, 2, 2, 2, 3, 3]).name, "S3");
        assert_eq!(identify_group(&[1, 2, 2, 2, 2, 2, 4, 4]).name, "dihedral(8)");
        let a4: Vec<u32> = [1].into_iter().chain([2; 3]).chain([3; 8]).collect();
        assert_eq!(identify_group(&a4).name, "A4");
        let d12: Vec<u32> = [1, 2].into_iter().chain([2; 6]).chain([3, 3, 6, 6]).collect();
        assert_eq!(identify_group(&d12).name, "dihedral(12)");
    }

    #[test]
    fn quadrilateral_table() {
        let lam = |n, d| Modulus::Lambda(r(n, d));
        let j = |n, d| Modulus::J(r(n, d));
        let eq = Modulus::Equianharmonic;
        let q = |ls: [u8; 4], m: &Modulus| quadrilateral_symmetry(&ls, m).unwrap();

        assert_eq!(q([1; 4], &eq), GroupDescription::alternating4());
        assert_eq!(q([1; 4], &j(1, 1)), GroupDescription::dihedral(4));
        assert_eq!(q([1; 4], &lam(3, 1)), GroupDescription::klein());

        assert_eq!(q([1, 1, 1, 2], &eq), GroupDescription::cyclic(3));
        assert_eq!(q([1, 1, 1, 2], &lam(2, 1)), GroupDescription::cyclic(2));
        assert_eq!(q([1, 2, 1, 1], &j(5, 1)), GroupDescription::trivial());

        assert_eq!(q([1, 1, 2, 3], &lam(-1, 1)), GroupDescription::cyclic(2));
        assert_eq!(q([1, 1, 2, 3], &lam(2, 1)), GroupDescription::trivial());
        assert_eq!(q([1, 1, 2, 3], &eq), GroupDescription::trivial());
        assert!(quadrilateral_symmetry(&[1, 1, 2, 3], &j(1, 1)).is_err());

        assert_eq!(q([1, 1, 2, 2], &lam(-1, 1)), GroupDescription::klein());
        assert_eq!(q([1, 1, 2, 2], &lam(5, 1)), GroupDescription::cyclic(2));
        assert_eq!(q([1, 1, 2, 2], &eq), GroupDescription::cyclic(2));

        assert_eq!(q([1, 2, 3, 4], &lam(-1, 1)), GroupDescription::trivial());
    }

    #[test]
    fn quadrilateral_pair_in_other_positions() {
        // Points 0, 1, inf, -1 have cross ratio 2 in this order; the pair
        // {0, inf} is harmonic with respect to {1, -1}.
        let ps = [pt(0, 1), pt(1, 1), inf(), pt(-1, 1)];
        let l = cross_ratio(&ps[0], &ps[1], &ps[2], &ps[3]).unwrap();
        assert_eq!(l, r(2, 1));
        let labels = ["a", "b", "a", "c"];
        assert_eq!(
            quadrilateral_symmetry(&labels, &Modulus::Lambda(l.clone())).unwrap(),
            GroupDescription::cyclic(2)
        );
        let labels = ["a", "a", "b", "c"];
        assert_eq!(
            quadrilateral_symmetry(&labels, &Modulus::Lambda(l)).unwrap(),
            GroupDescription::trivial()
        );
    }

    #[test]
    fn parse_points_file() {
        let c = parse_points("# four points\npoint 0:1 label=a\npoint 1:0 label=a\npoint 1:1 label=b\npoint -2:-2 label=c\n");
        assert!(matches!(c, Err(Error::Domain(_))));
        let c = parse_points("point 0:1 label=a\npoint 1:0 label=a\npoint 1:1 label=b\npoint -1:1 label=b\n").unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.points()[3].0, pt(-1, 1));
        assert_eq!(c.points()[2].1, "b");

        let err = parse_points("point 0:1 label=a\npoint x:1 label=a\n").unwrap_err();
        assert_eq!(err, Error::syntax(2, 7, "expected an integer, found `x`"));
        assert!(parse_points("point 0:1 lbl=a\n").unwrap_err().is_syntax());
        assert!(parse_points("pt 0:1\n").unwrap_err().is_syntax());
        assert!(parse_points("point 0:0\n").unwrap_err().is_syntax());
        assert!(parse_points("point 0:1\npoint 1:1\n").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn point() -> impl Strategy<Value = ProjPoint> {
            (-20i64..20, 0i64..20)
                .prop_filter("not 0:0", |(x, y)| *x != 0 || *y != 0)
                .prop_map(|(x, y)| pt(x, y))
        }

        fn map() -> impl Strategy<Value = MoebiusMap> {
            (-9i64..10, -9i64..10, -9i64..10, -9i64..10)
                .prop_filter("invertible", |(a, b, c, d)| a * d != b * c)
                .prop_map(|(a, b, c, d)| MoebiusMap::new(a, b, c, d).unwrap())
        }

        fn lambda() -> impl Strategy<Value = BigRational> {
            (-50i64..50, 1i64..50)
                .prop_map(|(n, d)| r(n, d))
                .prop_filter("not 0 or 1", |l| !l.is_zero() && !l.is_one())
        }

        proptest! {
            #[test]
            fn apply_respects_composition(m1 in map(), m2 in map(), p in point()) {
                prop_assert_eq!(m1.compose(&m2).apply(&p), m1.apply(&m2.apply(&p)));
                prop_assert!(m1.compose(&m1.inverse()).is_identity());
            }

            #[test]
            fn j_constant_on_orbit(l in lambda()) {
                let one = BigRational::one();
                let j = j_invariant(&l).unwrap();
                let orbit = [
                    l.recip(),
                    &one - &l,
                    (&one - &l).recip(),
                    &l / (&l - &one),
                    (&l - &one) / &l,
                ];
                for x in orbit {
                    prop_assert_eq!(j_invariant(&x).unwrap(), j.clone());
                }
            }

            #[test]
            fn through_hits_targets(ps in proptest::collection::btree_set(point(), 6)) {
                let ps: Vec<ProjPoint> = ps.into_iter().collect();
                let m = moebius_through([&ps[0], &ps[1], &ps[2]], [&ps[3], &ps[4], &ps[5]]).unwrap();
                prop_assert_eq!(m.apply(&ps[0]), ps[3].clone());
                prop_assert_eq!(m.apply(&ps[1]), ps[4].clone());
                prop_assert_eq!(m.apply(&ps[2]), ps[5].clone());
            }

            #[test]
            fn cross_ratio_is_projectively_invariant(ps in proptest::collection::btree_set(point(), 4), m in map()) {
                let ps: Vec<ProjPoint> = ps.into_iter().collect();
                let qs: Vec<ProjPoint> = ps.iter().map(|p| m.apply(p)).collect();
                prop_assert_eq!(
                    cross_ratio(&ps[0], &ps[1], &ps[2], &ps[3]).unwrap(),
                    cross_ratio(&qs[0], &qs[1], &qs[2], &qs[3]).unwrap()
                );
            }

            #[test]
            fn group_axioms(ps in proptest::collection::btree_set(point(), 3..6), labels in proptest::collection::vec(0u8..2, 6)) {
                let points: Vec<(ProjPoint, String)> = ps.into_iter().zip(&labels).map(|(p, l)| (p, l.to_string())).collect();
                let all_equal = points.iter().all(|(_, l)| *l == points[0].1);
                let four = points.len() == 4;
                let cfg = PointConfig::new(points).unwrap();
                let g = label_preserving_group(&cfg);
                prop_assert!(g.iter().any(MoebiusMap::is_identity));
                for a in &g {
                    prop_assert!(g.contains(&a.inverse()));
                    for b in &g {
                        prop_assert!(g.contains(&a.compose(b)));
                    }
                }
                if four && all_equal {
                    prop_assert_eq!(24 % g.len(), 0);
                    let p = cfg.points();
                    let l = cross_ratio(&p[0].0, &p[1].0, &p[2].0, &p[3].0).unwrap();
                    let table = quadrilateral_symmetry(&[0; 4], &Modulus::Lambda(l)).unwrap();
                    prop_assert_eq!(table, describe_group(&g));
                }
            }

            #[test]
            fn table_agrees_with_brute_force(ps in proptest::collection::btree_set(point(), 4), labels in proptest::collection::vec(0u8..3, 4)) {
                let ps: Vec<ProjPoint> = ps.into_iter().collect();
                let cfg = PointConfig::new(ps.iter().cloned().zip(labels.iter().map(u8::to_string)).collect()).unwrap();
                let l = cross_ratio(&ps[0], &ps[1], &ps[2], &ps[3]).unwrap();
                let ls = [labels[0], labels[1], labels[2], labels[3]];
                let table = quadrilateral_symmetry(&ls, &Modulus::Lambda(l)).unwrap();
                prop_assert_eq!(table, describe_group(&label_preserving_group(&cfg)));
            }
        }
    }
}
