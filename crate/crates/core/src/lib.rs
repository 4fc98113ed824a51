//! Exact verification engine for invariant Hermitian geometry on
//! low-dimensional Lie algebras.

pub mod algebra;
pub mod catalog;
pub mod cohomology;
pub mod error;
pub mod expr;
pub mod form;
pub mod hermitian;
pub mod identify;
pub mod linalg;
pub mod membership;
pub mod notation;
pub mod poly;
pub mod search;

pub use algebra::{Concrete, LieAlgebra, Subspace};
pub use error::{Error, Result};
pub use form::{Form, Metric, Orientation};
pub use poly::{Point, Rational, ScalarPoly};
