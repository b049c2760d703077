//! Exterior calculus on Minkowski spacetime, frame splittings of forms, and
//! reconstruction of the covariant Maxwell equations from the constraint
//! equations observed in a family of boosted inertial frames.

pub mod affine;
pub mod error;
pub mod form;
pub mod frames;
pub mod jet;
pub mod linalg;
pub mod maxwell;
pub mod poly;
pub mod quadrature;
pub mod rational;
pub mod reconstruction;
pub mod sampling;
pub mod scalar;

pub use affine::AffineMap;
pub use error::{Error, Result};
pub use form::{DifferentialForm, MetricSignature, MultiIndex, Point, VectorField};
pub use frames::{make_boost_frame, make_fiducial_frame, FrameFamily, ReferenceFrame};
pub use jet::Jet;
pub use poly::Polynomial;
pub use rational::Rational;
pub use scalar::ScalarField;
