//! Exact computation of the fan of cones that the seeds of a principal
//! coefficient cluster pattern induce on the weight lattice, together with
//! theta functions on it and the representation-theoretic description of its
//! walls for acyclic quivers.
//!
//! ```
//! use xfan::{assemble_fan, enumerate, EnumerateOptions, ExchangeMatrix};
//!
//! let b = ExchangeMatrix::from_rows(&[[0, 1], [-1, 0]]).unwrap();
//! let fan = assemble_fan(&enumerate(&b, &EnumerateOptions::default()).unwrap());
//! assert!(fan.complete);
//! ```

pub mod cli;
pub mod cone;
pub mod error;
pub mod io;
pub mod numeric;
pub mod pattern;
pub mod rep;
pub mod seed;
pub mod xfan;

pub use error::{Error, Result};
pub use numeric::{IntMatrix, LaurentPolynomial, RationalMatrix};
pub use seed::{ExchangeMatrix, Quiver};
pub use pattern::{enumerate, EnumerateOptions, PatternCatalog, PatternNode};
pub use cone::{ConeDescription, InequalitySystem};
pub use xfan::{assemble_fan, locate, theta, ThetaFunction, XCone, XFanReport};
pub use rep::{ARQuiverSlice, DerivedObject, PathAlgebraData};
