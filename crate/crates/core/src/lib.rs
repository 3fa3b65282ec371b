//! Exact construction, verification, classification and exhaustive search of
//! dual 3-nets realizing finite groups in the projective plane `PG(2, p)`.
//!
//! A dual 3-net of order `n` is a triple of pairwise disjoint `n`-point sets
//! (components) such that every line meeting two components meets each of the
//! three in exactly one point. A labeling of the components by a group `G`
//! realizes `G` when `α(a)`, `β(b)`, `γ(a·b)` are always collinear.
//!
//! Everything is computed over a prime field `F_p` with `p ≥ 5`, in exact
//! arithmetic. The crate is organized as:
//!
//! - [`geometry`]: the field, points, lines, projectivities and frames.
//! - [`poly`] and [`cubics`]: homogeneous polynomials, plane cubics, their
//!   classification and the chord-tangent group law.
//! - [`groups`]: Cayley tables, latin squares, isomorphism and cosets.
//! - [`nets`]: the net data structure, axiom checks, quasigroup extraction and
//!   subnet decomposition.
//! - [`families`]: constructors for the triangular, conic-line, proper
//!   algebraic and tetrahedron families, and the family classifier.
//! - [`symmetries`]: involutory homologies preserving a net.
//! - [`search`]: symmetry-reduced backtracking search for all realizations
//!   of a group over a fixed field.

pub mod cubics;
mod error;
pub mod families;
pub mod geometry;
pub mod groups;
mod linalg;
pub mod nets;
pub mod poly;
pub mod search;
pub mod symmetries;

pub use error::{Error, Result};

pub use cubics::{Cubic, CubicClass, CubicGroup, CubicTag};
pub use families::FamilyTag;
pub use geometry::{PrimeField, ProjLine, ProjPoint, Projectivity};
pub use groups::{FiniteGroup, GroupSpec, LatinSquare};
pub use nets::{DualThreeNet, Labeling, NetReport};
pub use search::{SearchConfig, SearchResult};
pub use symmetries::Homology;
