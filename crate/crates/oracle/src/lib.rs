//! Independent reference procedures for testing the simplifiers.
//!
//! [`oracle_proof`] searches for proofs by brute force over single rewrite
//! steps, so its answers depend only on the presentation. [`direct_oracle`]
//! decides each family's word problem with a short standalone normalizer.

pub mod direct;
pub mod generate;
pub mod rewrite;
pub mod search;

pub use direct::{direct_oracle, Family};
pub use generate::{random_goal, random_term, random_walk, TermSpec};
pub use rewrite::Rewriter;
pub use search::{oracle_equal, oracle_proof, BoundExceeded, OracleConfig};
