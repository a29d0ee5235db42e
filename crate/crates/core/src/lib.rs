//! Finite-dimensional Euclidean Jordan algebras and the geometry of their symmetric cones.
//!
//! An [`Algebra`] describes the instance and an [`Element`] carries its
//! coordinates. The spectral calculus and the cone order sit on top of the
//! Jordan product; [`geometry`] adds the Thompson/Finsler structure of the
//! open cone. [`verify`] checks the identities numerically on seeded inputs.

pub mod algebra;
pub mod cone;
pub mod element;
pub mod error;
pub mod geometry;
pub mod jordan;
pub mod oracle;
pub mod sampling;
pub mod spectral;
pub mod tol;
pub mod verify;

pub use algebra::{Algebra, SumNorm};
pub use element::{commutator, Element, LinearOperator};
pub use error::{Error, Result};
pub use spectral::SpectralDecomposition;
pub use verify::{run_all, run_suite, SuiteId, SuiteReport, SuiteSpec};
