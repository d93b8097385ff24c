//! Exact computations on star-shaped resolution graphs of weighted
//! homogeneous surface singularities: Seifert invariants, intersection
//! lattices and link homology, finite symmetry groups, and resolution graphs
//! of cyclic quotients.
//!
//! ```
//! use singstar::graph::StarGraph;
//! use singstar::lattice::link_homology;
//!
//! let g = StarGraph::new(0, 2, vec![vec![2], vec![2], vec![2]])?;
//! assert_eq!(link_homology(&g).to_string(), "Z/2 + Z/2");
//! # Ok::<(), singstar::Error>(())
//! ```

pub mod error;
pub mod graph;
pub mod lattice;
pub mod moebius;
pub mod quotient;
pub mod seifert;
pub mod symmetry;
mod text;

pub use error::{Error, Result};

// The guide's code blocks run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/symmetry.md")]
    mod symmetry {}
    #[doc = include_str!("../../../book/src/moebius.md")]
    mod moebius {}
    #[doc = include_str!("../../../book/src/quotients.md")]
    mod quotients {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
