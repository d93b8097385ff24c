use crate::error::{Error, Result};
use crate::graph::ChainGraph;
use crate::seifert::hj_expand;

use super::blowdown::blow_down_chain;

/// How a cyclic group of order `n` acts on a single invariant curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalAction {
    /// The curve is fixed pointwise.
    Pointwise,
    /// The curve is invariant; one rotation number `q` per isolated fixed
    /// point on it (at most two).
    Invariant(Vec<u32>),
}

pub(crate) fn check_order(n: u32) -> Result<()> {
    if n == 2 || n == 3 {
        Ok(())
    } else {
        Err(Error::domain(format!("group order must be 2 or 3, got {n}")))
    }
}

pub(crate) fn check_rotation(n: u32, q: u32) -> Result<()> {
    if q == 0 || q >= n {
        return Err(Error::domain(format!(
            "rotation type {n}/{q} needs 1 <= q < {n}"
        )));
    }
    Ok(())
}

/// Weight of the image of an invariant curve of weight `b`: `n b` if it is
/// fixed pointwise, else `(b + sum q) / n`.
pub fn curve_image_weight(b: u64, n: u32, action: &LocalAction) -> Result<u64> {
    check_order(n)?;
    match action {
        LocalAction::Pointwise => Ok(b * u64::from(n)),
        LocalAction::Invariant(qs) => {
            if qs.len() > 2 {
                return Err(Error::domain(format!(
                    "an invariant curve has two fixed points, {} isolated points given",
                    qs.len()
                )));
            }
            for &q in qs {
                check_rotation(n, q)?;
            }
            let total = b + qs.iter().map(|&q| u64::from(q)).sum::<u64>();
            if total % u64::from(n) != 0 {
                return Err(Error::domain(format!(
                    "weight {b} plus rotations {} is not divisible by {n}",
                    total - b
                )));
            }
            Ok(total / u64::from(n))
        }
    }
}

/// Resolution chain of the cyclic quotient singularity at an isolated fixed
/// point of rotation type `(n, q)`.
pub fn tail(n: u32, q: u32) -> Vec<u64> {
    hj_expand(n, q).expect("rotation types are coprime and in range")
}

/// Quotient of `X_{b,1}` (a single `(-b)`-curve) by a cyclic action of
/// order `n`. A single isolated point sits at the right end of the image
/// curve; with two, the first sits at the left end. The result is blown
/// down.
pub fn chain_quotient(b: u64, n: u32, action: &LocalAction) -> Result<ChainGraph> {
    let w = curve_image_weight(b, n, action)?;
    let mut weights = Vec::new();
    if let LocalAction::Invariant(qs) = action {
        let (left, right) = match qs.as_slice() {
            [q] => (None, Some(*q)),
            [l, r] => (Some(*l), Some(*r)),
            _ => (None, None),
        };
        if let Some(q) = left {
            weights.extend(tail(n, q).into_iter().rev());
        }
        weights.push(w);
        if let Some(q) = right {
            weights.extend(tail(n, q));
        }
    } else {
        weights.push(w);
    }
    Ok(blow_down_chain(&ChainGraph::new(weights)?))
}

/// The four ways an involution can act on `X_{b,1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvolutionCase {
    Pointwise,
    /// Both fixed points isolated; needs `b` even.
    IsoIso,
    /// One isolated fixed point; needs `b` odd.
    IsoTransverse,
    /// No isolated fixed point; needs `b` even.
    TransverseTransverse,
}

impl InvolutionCase {
    pub fn action(self) -> LocalAction {
        match self {
            InvolutionCase::Pointwise => LocalAction::Pointwise,
            InvolutionCase::IsoIso => LocalAction::Invariant(vec![1, 1]),
            InvolutionCase::IsoTransverse => LocalAction::Invariant(vec![1]),
            InvolutionCase::TransverseTransverse => LocalAction::Invariant(vec![]),
        }
    }
}

pub fn chain_quotient_involution(b: u64, case: InvolutionCase) -> Result<ChainGraph> {
    let odd_needed = match case {
        InvolutionCase::Pointwise => None,
        InvolutionCase::IsoTransverse => Some(true),
        InvolutionCase::IsoIso | InvolutionCase::TransverseTransverse => Some(false),
    };
    if let Some(odd) = odd_needed {
        if (b % 2 == 1) != odd {
            let parity = if odd { "odd" } else { "even" };
            return Err(Error::domain(format!("{case:?} needs b {parity}, got {b}")));
        }
    }
    chain_quotient(b, 2, &case.action())
}

/// Quotient of `X_{b,1}` by an automorphism of order three.
pub fn chain_quotient_order3(b: u64, action: &LocalAction) -> Result<ChainGraph> {
    chain_quotient(b, 3, action)
}
