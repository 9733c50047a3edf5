//! Proof-producing simplifiers for monoids, commutative monoids and
//! involutive monoids.
//!
//! Each frexlet normalizes terms to a canonical form and proves, step by
//! step, that the input equals its reified normal form. Solving a goal
//! compares the two sides' normal forms and, when they agree, chains the
//! two proofs. Proofs are checked by [`frex_kernel`], which shares no code
//! with the normalizers here.
//!
//! ```
//! use std::sync::Arc;
//! use frex::{solve_frex, CommutativeFrex};
//! use frex_kernel::algebras::NatAdd;
//! use frex_kernel::presentation::commutative_monoid;
//! use frex_kernel::{check, CheckContext, Equation, Term};
//!
//! let add = Arc::new(NatAdd::default());
//! let plus = |a, b| Term::app("·", vec![a, b]);
//! // (2 + x) + (y + 3) = x + (y + 5)
//! let goal = Equation::new(
//!     2,
//!     plus(plus(Term::sta(2u64), Term::var(0)), plus(Term::var(1), Term::sta(3u64))),
//!     plus(Term::var(0), plus(Term::var(1), Term::sta(5u64))),
//! );
//! let proof = solve_frex(&CommutativeFrex::new(add.clone()), &goal).unwrap().unwrap();
//! let ctx = CheckContext::new(commutative_monoid(), 2, Some(add)).unwrap();
//! check(&ctx, &goal.lhs, &goal.rhs, &proof).unwrap();
//! ```

pub mod api;
pub mod combinators;
pub mod commutative;
pub mod involutive;
pub mod lemma;
pub mod lists;
pub mod monoid;
pub mod pipeline;

pub use api::{solve_fral, solve_frex, Fral, FralSolver, Frex, FrexSolver, SolveError, Solver};
pub use combinators::{by_frex, frex_by_coproduct, initial_algebra, power, ByFrex, CoproductFrex, PowerAlgebra};
pub use commutative::{coproduct_cm, CmCoproduct, CoeffVec, CommutativeFral, CommutativeFrex, LinPoly};
pub use involutive::{InvAltList, InvWord, InvolutiveFral, InvolutiveFrex};
pub use lemma::{emit_certificate, mk_lemma, Lemma};
pub use lists::{Letter, TaggedVar};
pub use monoid::{AltList, MonoidFral, MonoidFrex};
pub use pipeline::{linearize, print_steps, remove_loops, to_linear};
