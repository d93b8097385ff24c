//! Hirzebruch-Jung continued fractions, Seifert pairs and the rational
//! invariants derived from them.
//!
//! Everything here is exact: fractions are [`BigRational`] and continued
//! fraction numerators are [`BigInt`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{BranchChain, StarGraph};

/// Exact rational value of an invariant; always reduced with positive
/// denominator.
pub type RationalInvariant = BigRational;

/// Orbit invariants `(alpha, beta)` of a branch, `0 < beta < alpha` coprime.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeifertPair {
    pub alpha: BigInt,
    pub beta: BigInt,
}

impl SeifertPair {
    pub fn new(alpha: impl Into<BigInt>, beta: impl Into<BigInt>) -> Result<Self> {
        let (alpha, beta) = (alpha.into(), beta.into());
        if !(beta.is_positive() && beta < alpha) || !alpha.gcd(&beta).is_one() {
            return Err(Error::domain(format!(
                "({alpha},{beta}) is not a Seifert pair: need coprime 0 < beta < alpha"
            )));
        }
        Ok(SeifertPair { alpha, beta })
    }

    /// `beta / alpha`.
    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.beta.clone(), self.alpha.clone())
    }
}

impl fmt::Display for SeifertPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.alpha, self.beta)
    }
}

/// Expands `n/q = c1 - 1/(c2 - 1/(... - 1/ck))` with every `ci >= 2`.
///
/// Uses the ceiling recursion `c = ceil(n/q)`, `(n, q) <- (q, c*q - n)`.
/// `n = 1` is a smooth point and is rejected; callers use the empty chain.
pub fn hj_expand(n: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Vec<u64>> {
    let (mut n, mut q) = (n.into(), q.into());
    if !q.is_positive() || q >= n {
        return Err(Error::domain(format!("hj_expand needs 0 < q < n, got {n}/{q}")));
    }
    if !n.gcd(&q).is_one() {
        return Err(Error::domain(format!("hj_expand needs gcd(n, q) = 1, got {n}/{q}")));
    }
    let mut out = Vec::new();
    while q.is_positive() {
        let c = n.div_ceil(&q);
        let next = &c * &q - &n;
        out.push(
            c.to_u64()
                .ok_or_else(|| Error::domain("continued fraction entry exceeds u64"))?,
        );
        n = q;
        q = next;
    }
    Ok(out)
}

/// Inverse of [`hj_expand`]: the reduced pair `(n, q)` with `0 < q < n`.
pub fn hj_evaluate(weights: &[u64]) -> Result<(BigInt, BigInt)> {
    if weights.is_empty() {
        return Err(Error::domain("hj_evaluate needs a non-empty chain"));
    }
    if let Some(w) = weights.iter().find(|&&w| w < 2) {
        return Err(Error::domain(format!(
            "hj_evaluate needs entries >= 2, found {w}"
        )));
    }
    let mut n = BigInt::one();
    let mut q = BigInt::zero();
    for &c in weights.iter().rev() {
        let next = BigInt::from(c) * &n - &q;
        q = n;
        n = next;
    }
    Ok((n, q))
}

pub fn seifert_pair_of(branch: &BranchChain) -> SeifertPair {
    let (alpha, beta) = hj_evaluate(branch.weights()).expect("branch weights are >= 2");
    SeifertPair { alpha, beta }
}

/// Seifert pairs of the branches, in branch order.
pub fn seifert_pairs(g: &StarGraph) -> Vec<SeifertPair> {
    g.branches().iter().map(seifert_pair_of).collect()
}

pub(crate) fn degree_of(central: u64, branches: &[BranchChain]) -> BigRational {
    branches
        .iter()
        .map(|b| seifert_pair_of(b).ratio())
        .fold(BigRational::from_integer(central.into()), |acc, x| acc - x)
}

/// `b - sum beta_i/alpha_i`; positive exactly for negative definite graphs.
pub fn seifert_degree(g: &StarGraph) -> RationalInvariant {
    degree_of(g.central_weight(), g.branches())
}

/// `-P.P = (2g - 2 + r - sum 1/alpha_i)^2 / (b - sum beta_i/alpha_i)`.
pub fn canonical_pp(g: &StarGraph) -> RationalInvariant {
    let pairs = seifert_pairs(g);
    let base = BigInt::from(2 * i64::from(g.genus()) - 2 + pairs.len() as i64);
    let euler = pairs.iter().fold(BigRational::from_integer(base), |acc, p| {
        acc - BigRational::new(BigInt::one(), p.alpha.clone())
    });
    &euler * &euler / seifert_degree(g)
}

/// Ganter's bound `42 * (-P.P) / epsilon` on the order of `G/G_1`.
///
/// The bound assumes a Gorenstein singularity that is not log-canonical;
/// that hypothesis is not checked here and `epsilon` comes from the caller.
pub fn ganter_bound(g: &StarGraph, epsilon: i64) -> Result<RationalInvariant> {
    if epsilon <= 0 {
        return Err(Error::domain(format!(
            "Ganter bound needs epsilon >= 1, got {epsilon}"
        )));
    }
    Ok(canonical_pp(g) * BigRational::from_integer(42.into()) / BigRational::from_integer(epsilon.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pair(n: i64, q: i64) -> (BigInt, BigInt) {
        (n.into(), q.into())
    }

    /// Evaluates a minus-sign continued fraction directly as a rational,
    /// innermost term first.
    fn eval_oracle(ws: &[u64]) -> BigRational {
        let mut acc: Option<BigRational> = None;
        for &w in ws.iter().rev() {
            let w = BigRational::from_integer(w.into());
            acc = Some(match acc {
                None => w,
                Some(x) => w - x.recip(),
            });
        }
        acc.unwrap()
    }

    #[test]
    fn expand_examples() {
        assert_eq!(hj_expand(5, 2).unwrap(), vec![3, 2]);
        assert_eq!(eval_oracle(&[3, 2]), q(5, 2));
        assert_eq!(hj_expand(9, 1).unwrap(), vec![9]);
        assert_eq!(hj_expand(8, 5).unwrap(), vec![2, 3, 2]);
        assert_eq!(eval_oracle(&[2, 3, 2]), q(8, 5));
    }

    #[test]
    fn expand_domain_errors() {
        assert!(hj_expand(5, 5).is_err());
        assert!(hj_expand(5, 0).is_err());
        assert!(hj_expand(6, 4).is_err());
        assert!(hj_expand(1, 0).is_err());
        assert!(hj_expand(5, -2).is_err());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(hj_evaluate(&[3, 2]).unwrap(), pair(5, 2));
        for k in 1..20 {
            assert_eq!(hj_evaluate(&vec![2; k]).unwrap(), pair(k as i64 + 1, k as i64));
        }
        assert_eq!(hj_evaluate(&[3, 2, 3]).unwrap(), pair(12, 5));
        assert_eq!(eval_oracle(&[3, 2, 3]), q(12, 5));
        assert!(hj_evaluate(&[3, 1]).is_err());
        assert!(hj_evaluate(&[]).is_err());
    }

    #[test]
    fn pairs_and_degree() {
        let d237 = StarGraph::triangle(2, 3, 7).unwrap();
        let pairs: Vec<String> = seifert_pairs(&d237).iter().map(|p| p.to_string()).collect();
        assert_eq!(pairs, ["(2,1)", "(3,1)", "(7,1)"]);
        assert_eq!(seifert_degree(&d237), q(1, 42));

        let g = StarGraph::new(0, 2, vec![vec![2, 3], vec![2], vec![2]]).unwrap();
        assert_eq!(seifert_pairs(&g)[0], SeifertPair::new(5, 3).unwrap());

        let e = StarGraph::new(1, 4, vec![]).unwrap();
        assert!(seifert_pairs(&e).is_empty());
        assert_eq!(seifert_degree(&e), q(4, 1));

        let d4 = StarGraph::new(0, 2, vec![vec![2]; 3]).unwrap();
        assert_eq!(seifert_degree(&d4), q(1, 2));
    }

    #[test]
    fn pp_and_ganter() {
        let d237 = StarGraph::triangle(2, 3, 7).unwrap();
        assert_eq!(canonical_pp(&d237), q(1, 42));
        assert_eq!(ganter_bound(&d237, 1).unwrap(), q(1, 1));
        assert_eq!(ganter_bound(&d237, 2).unwrap(), q(1, 2));
        assert!(ganter_bound(&d237, 0).is_err());
        assert!(ganter_bound(&d237, -1).is_err());

        let d333 = StarGraph::new(0, 2, vec![vec![3]; 3]).unwrap();
        assert_eq!(canonical_pp(&d333), q(0, 1));
        assert_eq!(ganter_bound(&d333, 1).unwrap(), q(0, 1));

        for b in 1..6 {
            let e = StarGraph::new(1, b, vec![]).unwrap();
            assert!(canonical_pp(&e).is_zero());
        }
    }

    #[test]
    fn rationals_print_reduced() {
        assert_eq!(q(2, 84).to_string(), "1/42");
        assert_eq!(q(4, 2).to_string(), "2");
        assert_eq!(q(-3, 6).to_string(), "-1/2");
    }

    #[test]
    fn seifert_pair_validation() {
        assert!(SeifertPair::new(4, 2).is_err());
        assert!(SeifertPair::new(3, 3).is_err());
        assert!(SeifertPair::new(3, 0).is_err());
        assert!(SeifertPair::new(7, 3).is_ok());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn coprime_pair() -> impl Strategy<Value = (u64, u64)> {
            (2u64..400)
                .prop_flat_map(|n| (Just(n), 1..n))
                .prop_filter("coprime", |(n, q)| n.gcd(q) == 1)
        }

        proptest! {
            #[test]
            fn expansion_entries_and_length((n, q) in coprime_pair()) {
                let ws = hj_expand(n, q).unwrap();
                prop_assert!(ws.iter().all(|&w| w >= 2));
                prop_assert!(ws.len() as u64 <= n - 1);
                prop_assert_eq!(eval_oracle(&ws), BigRational::new(n.into(), q.into()));
            }

            #[test]
            fn reversal_gives_inverse_residue((n, q) in coprime_pair()) {
                let mut ws = hj_expand(n, q).unwrap();
                ws.reverse();
                let (n2, q2) = hj_evaluate(&ws).unwrap();
                prop_assert_eq!(n2.clone(), BigInt::from(n));
                prop_assert_eq!((q2 * BigInt::from(q)) % n2, BigInt::one() % BigInt::from(n));
            }

            #[test]
            fn pp_nonnegative(b in 1u64..6, ws in proptest::collection::vec(proptest::collection::vec(2u64..7, 1..4), 3..6)) {
                if let Ok(g) = StarGraph::new(0, b, ws) {
                    prop_assert!(seifert_degree(&g).is_positive());
                    prop_assert!(!canonical_pp(&g).is_negative());
                }
            }
        }
    }
}
