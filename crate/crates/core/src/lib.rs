//! Exact kernel for differential operators on the punctured affine line:
//! Newton polygons, local germs and their invariants, the Mellin transform
//! to difference operators, truncated microdifference arithmetic, and a
//! verification pass tying the global and local pictures together.

pub mod error;
pub mod germ;
pub mod mellin;
pub mod micro;
pub mod phase;
pub mod poly;
pub mod polygon;
pub mod rational;
pub mod series;
pub mod skew;

pub use error::{Error, Result};
pub use germ::{GermReport, Point};
pub use micro::{Derivation, Division, MicroOp, Window};
pub use phase::{verify, CheckId, CheckStatus, Profile, StationaryPhaseReport, WindowPolicy};
pub use polygon::{NewtonPolygon, PolygonKind, Side};
pub use poly::LaurentPolynomial;
pub use rational::Rational;
pub use series::TruncatedSeries;
pub use skew::{DiffOp, DiffnceOp, LocalDiffOp, Presentation};
