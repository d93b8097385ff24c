//! The finite symmetry group `G/G_1` of a weighted homogeneous singularity,
//! as far as the resolution graph and optional moduli determine it.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{BranchChain, StarGraph};
use crate::moebius::{
    describe_group, label_preserving_group, quadrilateral_symmetry, GroupDescription, Modulus,
    PointConfig,
};
use crate::seifert::{ganter_bound, hj_expand, seifert_pairs, SeifertPair};

/// Weight-preserving branch permutations, stored as the classes of equal
/// branches with their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutGamma {
    classes: Vec<(BranchChain, usize)>,
}

impl AutGamma {
    pub fn classes(&self) -> &[(BranchChain, usize)] {
        &self.classes
    }

    pub fn order(&self) -> BigInt {
        self.classes
            .iter()
            .map(|&(_, m)| (1..=m).map(BigInt::from).product::<BigInt>())
            .product()
    }

    /// Product of symmetric groups, one per repeated branch class.
    pub fn group(&self) -> GroupDescription {
        let mut ms: Vec<usize> = self
            .classes
            .iter()
            .map(|&(_, m)| m)
            .filter(|&m| m >= 2)
            .collect();
        ms.sort_unstable();
        let order = u64::try_from(self.order()).unwrap_or(u64::MAX);
        match ms.as_slice() {
            [] => GroupDescription::trivial(),
            [2] => GroupDescription::cyclic(2),
            [3] => GroupDescription::symmetric3(),
            [2, 2] => GroupDescription::klein(),
            _ => GroupDescription {
                name: ms
                    .iter()
                    .map(|&m| if m == 2 { "Z2".to_string() } else { format!("S{m}") })
                    .collect::<Vec<_>>()
                    .join(" x "),
                order,
            },
        }
    }
}

pub fn aut_gamma(g: &StarGraph) -> AutGamma {
    let mut classes: Vec<(BranchChain, usize)> = Vec::new();
    for b in g.branches() {
        match classes.iter_mut().find(|(c, _)| c == b) {
            Some((_, m)) => *m += 1,
            None => classes.push((b.clone(), 1)),
        }
    }
    classes.sort();
    AutGamma { classes }
}

/// The `j`-invariant class of an elliptic curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JClass {
    Zero,
    One,
    Generic,
}

/// Order of the automorphism group of an elliptic curve fixing the origin.
pub fn elliptic_aut0_order(j: JClass) -> u32 {
    match j {
        JClass::Zero => 6,
        JClass::One => 4,
        JClass::Generic => 2,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Splitting {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Determination {
    /// The group is pinned down.
    Exact,
    /// Only a group containing `G/G_1` is known.
    UpperBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    pub group_name: String,
    /// `None` when not even a bound is known.
    pub order: Option<BigInt>,
    /// Whether `1 -> G_1 -> G -> G/G_1 -> 1` splits.
    pub splits: Splitting,
    pub embeds_in_aut_gamma: bool,
    pub determination: Determination,
    pub ganter_bound: Option<BigRational>,
    pub notes: Vec<String>,
}

impl fmt::Display for SymmetryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        writeln!(f, "group: {}", self.group_name)?;
        match &self.order {
            Some(n) => writeln!(f, "order: {n}")?,
            None => writeln!(f, "order: unknown")?,
        }
        let det = match self.determination {
            Determination::Exact => "exact",
            Determination::UpperBound => "upper_bound",
        };
        writeln!(f, "determination: {det}")?;
        let splits = match self.splits {
            Splitting::Yes => "yes",
            Splitting::No => "no",
            Splitting::Unknown => "unknown",
        };
        writeln!(f, "splits: {splits}")?;
        writeln!(f, "embeds_in_aut_gamma: {}", yes_no(self.embeds_in_aut_gamma))?;
        if let Some(bound) = &self.ganter_bound {
            writeln!(f, "ganter_bound: {bound}")?;
        }
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        Ok(())
    }
}

/// Optional analytic data supplementing the graph.
#[derive(Debug, Clone, Default)]
pub struct SymmetryOptions {
    /// Positions of the branch points on a rational central curve, in
    /// branch order. Labels are replaced by the branches' Seifert pairs.
    pub points: Option<PointConfig>,
    /// Cross ratio or `j` of the four branch points of a quadrilateral graph.
    pub modulus: Option<Modulus>,
    /// `j` class of an elliptic central curve.
    pub j_class: Option<JClass>,
    pub epsilon: Option<i64>,
}

/// Criterion for `G = C* x A` with `A` acting on a rational central curve.
fn rational_splitting(b: u64, a: &GroupDescription) -> Splitting {
    if b % 2 == 0 || a.is_cyclic() || a.is_dihedral_odd() {
        Splitting::Yes
    } else {
        Splitting::Unknown
    }
}

/// Canonical label of a Seifert pair in point configurations.
pub fn seifert_label(p: &SeifertPair) -> String {
    format!("{}/{}", p.alpha, p.beta)
}

/// Reads `a/b` or `(a,b)`.
pub fn parse_seifert_label(label: &str) -> Result<SeifertPair> {
    let inner = label
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .map(|s| s.split_once(','))
        .unwrap_or_else(|| label.split_once('/'));
    let (a, b) = inner.ok_or_else(|| {
        Error::domain(format!("label `{label}` is not a Seifert pair a/b"))
    })?;
    let parse = |s: &str| {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::domain(format!("label `{label}` is not a Seifert pair a/b")))
    };
    SeifertPair::new(parse(a)?, parse(b)?)
}

pub fn symmetry_report(g: &StarGraph, opts: &SymmetryOptions) -> Result<SymmetryReport> {
    let genus = g.genus();
    let r = g.branch_count();
    let b = g.central_weight();
    if genus > 0 && (opts.points.is_some() || opts.modulus.is_some()) {
        return Err(Error::domain(
            "points and cross ratios describe a rational central curve, but the genus is positive",
        ));
    }
    if opts.j_class.is_some() && !(genus == 1 && r == 0) {
        return Err(Error::domain(
            "a j class applies only to an elliptic central curve without branches",
        ));
    }
    if opts.points.is_some() && opts.modulus.is_some() {
        return Err(Error::domain("give either points or a modulus, not both"));
    }
    if opts.modulus.is_some() && r != 4 {
        return Err(Error::domain(format!(
            "a cross ratio or j value needs exactly 4 branches, found {r}"
        )));
    }
    if let Some(pts) = &opts.points {
        if pts.len() != r {
            return Err(Error::domain(format!(
                "{} points given for {r} branches",
                pts.len()
            )));
        }
    }

    let aut = aut_gamma(g);
    let aut_group = aut.group();
    let embeds = r > 2 * genus as usize + 2;
    let mut notes = Vec::new();

    let mut report = if genus == 0 {
        let labels: Vec<String> = seifert_pairs(g).iter().map(seifert_label).collect();
        let exact = if r == 3 {
            Some(aut_group.clone())
        } else if let Some(m) = &opts.modulus {
            let ls = [&labels[0], &labels[1], &labels[2], &labels[3]];
            Some(quadrilateral_symmetry(&ls, m)?)
        } else if let Some(pts) = &opts.points {
            let cfg = pts.relabeled(labels)?;
            Some(describe_group(&label_preserving_group(&cfg)))
        } else {
            None
        };
        match exact {
            Some(a) => SymmetryReport {
                splits: rational_splitting(b, &a),
                group_name: a.name,
                order: Some(a.order.into()),
                embeds_in_aut_gamma: embeds,
                determination: Determination::Exact,
                ganter_bound: None,
                notes: Vec::new(),
            },
            None => {
                notes.push("branch point positions not given; group is a subgroup of Aut Gamma".into());
                SymmetryReport {
                    splits: rational_splitting(b, &aut_group),
                    group_name: aut_group.name.clone(),
                    order: Some(aut.order()),
                    embeds_in_aut_gamma: embeds,
                    determination: Determination::UpperBound,
                    ganter_bound: None,
                    notes: Vec::new(),
                }
            }
        }
    } else if genus == 1 && r == 0 {
        let b2 = BigInt::from(b) * BigInt::from(b);
        match opts.j_class {
            Some(j) => {
                let k = elliptic_aut0_order(j);
                SymmetryReport {
                    group_name: if b == 1 {
                        format!("Z{k}")
                    } else {
                        format!("(Z{b})^2 ⋊ Z{k}")
                    },
                    order: Some(b2 * k),
                    splits: if b == 1 { Splitting::Yes } else { Splitting::No },
                    embeds_in_aut_gamma: false,
                    determination: Determination::Exact,
                    ganter_bound: None,
                    notes: Vec::new(),
                }
            }
            None => {
                notes.push("j class not given; the order divides 6 b^2".into());
                SymmetryReport {
                    group_name: if b == 1 {
                        "Z6".into()
                    } else {
                        format!("(Z{b})^2 ⋊ Z6")
                    },
                    order: Some(b2 * 6),
                    splits: if b == 1 { Splitting::Yes } else { Splitting::No },
                    embeds_in_aut_gamma: false,
                    determination: Determination::UpperBound,
                    ganter_bound: None,
                    notes: Vec::new(),
                }
            }
        }
    } else {
        notes.push("G/G1 is finite".into());
        if embeds {
            SymmetryReport {
                group_name: aut_group.name.clone(),
                order: Some(aut.order()),
                splits: Splitting::Unknown,
                embeds_in_aut_gamma: true,
                determination: Determination::UpperBound,
                ganter_bound: None,
                notes: Vec::new(),
            }
        } else {
            SymmetryReport {
                group_name: "finite".into(),
                order: None,
                splits: Splitting::Unknown,
                embeds_in_aut_gamma: false,
                determination: Determination::UpperBound,
                ganter_bound: None,
                notes: Vec::new(),
            }
        }
    };

    if let Some(eps) = opts.epsilon {
        report.ganter_bound = Some(ganter_bound(g, eps)?);
        notes.push("Ganter bound assumes a Gorenstein singularity that is not log canonical".into());
        // With epsilon = 1 the kernel of the character of the Gorenstein
        // form is a complement of C*.
        if eps == 1 && report.splits == Splitting::Unknown {
            report.splits = Splitting::Yes;
            notes.push("epsilon = 1 makes G a direct product of C* and a finite group".into());
        }
    }
    report.notes = notes;
    Ok(report)
}

/// The graph with rational central curve of self-intersection `-b` and one
/// branch per labeled point; labels must be Seifert pairs.
pub fn realize_finite_group(cfg: &PointConfig, b: u64) -> Result<StarGraph> {
    let pairs = cfg
        .points()
        .iter()
        .map(|(_, l)| parse_seifert_label(l))
        .collect::<Result<Vec<_>>>()?;
    let threshold = pairs
        .iter()
        .fold(BigRational::zero(), |acc, p| acc + p.ratio());
    if BigRational::from_integer(b.into()) <= threshold {
        return Err(Error::domain(format!(
            "central weight {b} must exceed sum beta/alpha = {threshold}"
        )));
    }
    let branches = pairs
        .iter()
        .map(|p| hj_expand(p.alpha.clone(), p.beta.clone()))
        .collect::<Result<Vec<_>>>()?;
    StarGraph::new(0, b, branches)
}

/// `G/G_1` for the Fermat singularity `x^d + y^d + z^d = 0`: order `6 d^2`,
/// split exactly when `3` does not divide `d`.
pub fn fermat_symmetry(d: u64) -> Result<SymmetryReport> {
    if d < 3 {
        return Err(Error::domain(format!(
            "Fermat family needs d >= 3, got {d}"
        )));
    }
    let d2 = BigInt::from(d) * BigInt::from(d);
    Ok(SymmetryReport {
        group_name: format!("(Z{d})^2 ⋊ S3"),
        order: Some(d2 * 6),
        splits: if d % 3 == 0 { Splitting::No } else { Splitting::Yes },
        embeds_in_aut_gamma: false,
        determination: Determination::Exact,
        ganter_bound: None,
        notes: Vec::new(),
    })
}

impl SymmetryReport {
    pub fn order_is(&self, n: u64) -> bool {
        self.order.as_ref() == Some(&BigInt::from(n))
    }

    pub fn is_trivial(&self) -> bool {
        self.order.as_ref().is_some_and(One::is_one)
    }
}
