//! Triangular configurations representing binary linear codes.
//!
//! The crate builds, for any binary linear code, a 2-dimensional simplicial
//! complex (a "triangular configuration") whose GF(2) cycle space carries the
//! code's weight enumerator: folding the cycle-space enumerator modulo a
//! construction constant `e` recovers the code enumerator exactly. A second
//! construction turns any triangular configuration into a weighted
//! perfect-matching instance whose matching enumerator equals the cycle-space
//! enumerator. Everything is exact integer/GF(2) arithmetic, verified at desk
//! scale by exhaustive enumeration.

pub mod code;
pub mod complex;
pub mod enumerator;
pub mod gadgets;
pub mod gf2;
pub mod io;
pub mod matchreduce;
pub mod represent;

pub use code::BinaryCode;
pub use complex::{Edge, Triangle, TriangularConfiguration};
pub use enumerator::WeightEnumerator;
pub use gf2::{BitMatrix, BitVec};
