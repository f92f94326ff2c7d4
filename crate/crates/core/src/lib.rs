//! Exact computations on complex projective line arrangements: intersection
//! lattices, Jacobian syzygies, freeness and near freeness, Ziegler
//! restrictions, integer systems over line-type tables, and certificates for
//! the combinatorial decision procedures built on them.

pub mod arrangement;
pub mod certify;
pub mod corpus;
pub mod diophantine;
pub mod error;
pub mod invariants;
pub mod modp;
pub mod par;
pub mod poly;
pub mod restriction;
pub mod scalar;
pub mod syzygy;

pub use arrangement::{Arrangement, IncidenceStructure, LineProfile, MultiplicityVector, ProjLine};
pub use error::{Error, Result};
pub use scalar::Scalar;
