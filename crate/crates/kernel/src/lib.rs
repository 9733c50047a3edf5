//! The trusted base of frex: terms and presentations, concrete algebras,
//! deeply-embedded derivations with their checker, linear derivations, and
//! certificates.
//!
//! Nothing in this crate normalizes terms. A certificate produced by any
//! simplifier is checked here using only the presentation it carries and,
//! when it folds constants, one of the [bundled algebras](algebras).

pub mod algebra;
pub mod algebras;
pub mod certificate;
pub mod derivation;
pub mod display;
pub mod linear;
pub mod presentation;
pub mod term;
pub mod value;

pub use algebra::{bind, validate, validates, Algebra, AlgebraError};
pub use certificate::{check_certificate, Certificate, CertificateError};
pub use derivation::{check, endpoints, CheckContext, CheckError, Derivation};
pub use display::{Format, TermPrinter};
pub use linear::{replay, Context, Direction, Frame, LinStep, LinearDerivation, ReplayError, Rule};
pub use presentation::{instantiate_scheme, AxiomScheme, Presentation};
pub use term::{substitute, validate_term, Equation, Goal, Signature, Term, TermError};
pub use value::Value;
