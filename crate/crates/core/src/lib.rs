//! Exact computation of polynomial assignment algebras of torus actions.
//!
//! The crate works over the rationals throughout. Modules, bottom up:
//! [`exactpoly`] (polynomials and linear algebra), [`toruslin`] (subalgebras of
//! the torus Lie algebra), [`gkm`] (GKM presentations), [`strata`] (stratified
//! models), [`extend`] (extension of polynomials off unions of subspaces) and
//! [`kirwan`] (kernels and quotients at a regular level of a circle moment map).

pub mod corpus;
pub mod document;
pub mod error;
pub mod exactpoly;
pub mod extend;
pub mod gkm;
pub mod graded;
pub mod kirwan;
pub mod random;
pub mod report;
pub mod strata;
pub mod toruslin;

pub use error::{Error, Result};
pub use exactpoly::{LinearForm, Polynomial, Rational, RationalMatrix};
pub use gkm::{FixedComponent, Freeness, GkmPresentation, GradedModuleReport, Piece};
pub use graded::AssignmentTuple;
pub use toruslin::Subalgebra;
pub use strata::{StrataAssignment, StratifiedSpace, Stratum};
pub use extend::{extend_independent, extend_solve, ExtensionOutcome, ExtensionProblem};
pub use kirwan::{MomentData, QuotientReport};
pub use document::ModelDocument;
