//! Exact computation of lagrangian deformation spaces for weighted-homogeneous
//! involutive ideals in symplectic affine space.

pub mod complex;
pub mod error;
pub mod families;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod manifest;
pub mod pipeline;
pub mod poisson;
pub mod poly;
pub mod report;
pub mod variety;

pub use error::{LagError, Result};
pub use field::{FieldKind, Scalar};
pub use poly::{Monomial, Polynomial, WeightedDegree, WeightedRing};
