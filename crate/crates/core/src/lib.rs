//! Reconfiguration of binary matroid homomorphisms.
//!
//! GF(2) linear algebra, binary matroids and their homomorphisms, the
//! recolouring graph `Col(M, N)`, the decision graph `D(N, A)` with its
//! Kempe correspondence, and the clique gadget reduction.

pub mod decision;
pub mod error;
pub mod formats;
pub mod gf2;
pub mod graphs;
pub mod hom;
pub mod matroid;
pub mod recolor;
pub mod reduction;
pub mod suite;

pub use error::{Caps, Error, Result};
pub use gf2::{BitMatrix, BitVec, XorBasis};
pub use graphs::{GraphColouring, SimpleGraph};
pub use hom::MatroidHom;
pub use matroid::{BinaryMatroid, PointSet};
