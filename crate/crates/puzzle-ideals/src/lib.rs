//! Exact computer algebra for Grassmannian puzzles over the field F3.
//!
//! The library encodes tilings of a size-`n` triangle by puzzle pieces as the
//! variety of a polynomial ideal over F3, solves those ideals with a
//! lexicographic Groebner-basis engine, and recovers tilings and structure
//! constants (Littlewood-Richardson, equivariant, and K-theoretic) from the
//! solutions.  An independent combinatorial backtracking oracle and a tableau
//! counter certify the algebraic pipeline.
//!
//! Module map, bottom up:
//!
//! * [`gf3`] - arithmetic in F3 and dense linear algebra (RREF solving).
//! * [`poly`] - sparse multivariate polynomials over F3, monomial orders,
//!   parsing and printing.
//! * [`grid`] - geometry and interval indexing of the size-`n` triangle,
//!   plus the partition/binary-word dictionary.
//! * [`pieces`] - piece sets, atomic refinement, stitching, and derivation of
//!   implicit and forbidden pieces.
//! * [`synthesis`] - template polynomials (distinguishing, forbidding,
//!   implying) synthesized from a piece set.
//! * [`ideal`] - assembly of the generator families F1..F6 into puzzle
//!   ideals, including the side-free variants.
//! * [`groebner`] - Buchberger's algorithm, elimination, variety enumeration,
//!   and point decomposition.
//! * [`oracle`] - brute-force tiling search and Littlewood-Richardson /
//!   Schur-expansion oracles.
//! * [`constants`] - the high-level structure-constant API joining both
//!   backends, equivariant weights, and side-free sweeps.
//! * [`render`] - deterministic ASCII and SVG tiling renderers.
//! * [`refdata`] - frozen known-good data used by the self-test suites.

pub mod constants;
pub mod error;
pub mod gf3;
pub mod grid;
pub mod groebner;
pub mod ideal;
pub mod oracle;
pub mod par;
pub mod pieces;
pub mod poly;
pub mod refdata;
pub mod render;
pub mod synthesis;

pub use error::{Error, Result};
pub use gf3::F3;
pub use poly::{Monomial, MonomialOrder, PolyF3};
