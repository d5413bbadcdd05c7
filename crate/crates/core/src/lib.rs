//! Exact and numeric tools for solving equations through the centers of
//! homogeneous forms.

pub mod center;
pub mod diagonalize;
pub mod error;
pub mod forms;
pub mod linalg;
pub mod numeric;
pub mod radical;
pub mod scalar;
pub mod solver;
pub mod unipoly;
pub mod verify;

pub use center::{compute_center, CenterBasis, CenterGenerator};
pub use diagonalize::{diagonalize_form, diagonalize_form_numeric, profile, AlgebraProfile, DiagonalDecomposition, SpectrumKind};
pub use error::{Error, Result};
pub use forms::{BinaryForm, LinearForm, NAryForm, PowerSumDecomposition, UnivariateEquation};
pub use numeric::{ComplexApprox, DEFAULT_PRECISION};
pub use radical::{classify, EquationClass, RadicalExpr, RootSet};
pub use scalar::{Quadratic, Rational};
pub use solver::{RootSolver, SolverRegistry};
