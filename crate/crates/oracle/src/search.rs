//! Bounded bidirectional breadth-first search for equational proofs.

use std::collections::HashMap;
use std::sync::Arc;

use frex_kernel::{Algebra, LinStep, LinearDerivation, Presentation, Term, Value};
use thiserror::Error;

use crate::rewrite::Rewriter;

#[derive(Debug, Clone)]
pub struct OracleConfig {
    pub presentation: Presentation,
    /// Constants algebra for evaluation steps; `None` for free algebras.
    pub algebra: Option<Arc<dyn Algebra>>,
    /// Total breadth-first levels expanded, over both directions.
    pub depth: usize,
    /// Terms larger than this are never visited.
    pub size_bound: usize,
    /// Constants tried when splitting a constant back into an operation.
    pub pool: Vec<Value>,
    /// Visited terms allowed per direction.
    pub budget: usize,
}

impl OracleConfig {
    /// Bounds wide enough for a normalization path from either side of
    /// `lhs = rhs`. Without `inv` no such path grows a term. Pushing `inv`
    /// inward, cancelling double inverses as they meet, leaves at most one
    /// pending `inv` per leaf; the detour proving `inv(1) = 1` needs four
    /// more nodes.
    pub fn for_goal(presentation: Presentation, algebra: Option<Arc<dyn Algebra>>, pool: Vec<Value>, lhs: &Term, rhs: &Term) -> Self {
        let size = lhs.size().max(rhs.size());
        let size_bound = if presentation.signature().arity("inv").is_some() {
            size + lhs.leaves().max(rhs.leaves()) + 4
        } else {
            size
        };
        OracleConfig {
            presentation,
            algebra,
            depth: 64,
            size_bound,
            pool,
            budget: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundExceeded {
    #[error("search depth {0} reached")]
    Depth(usize),
    #[error("state budget {0} exhausted")]
    States(usize),
}

type Parents = HashMap<Term, Option<(Term, LinStep)>>;

struct Side {
    seen: Parents,
    frontier: Vec<Term>,
}

impl Side {
    fn new(root: &Term) -> Self {
        let mut seen = HashMap::new();
        seen.insert(root.clone(), None);
        Side {
            seen,
            frontier: vec![root.clone()],
        }
    }

    /// Steps from the root to `t`.
    fn path(&self, t: &Term) -> Vec<LinStep> {
        let mut steps = Vec::new();
        let mut cur = t.clone();
        while let Some(Some((prev, step))) = self.seen.get(&cur) {
            steps.push(step.clone());
            cur = prev.clone();
        }
        steps.reverse();
        steps
    }
}

/// Searches for a proof of `lhs = rhs`.
///
/// `Ok(None)` means both sides' closures within the size bound were
/// enumerated without meeting. That is conclusive whenever each side can
/// reach a shared normal form inside the bound, because undoing an
/// evaluation step needs a constant split the pool may not offer, so
/// exhausting only one side proves nothing.
pub fn oracle_proof(cfg: &OracleConfig, lhs: &Term, rhs: &Term) -> Result<Option<LinearDerivation>, BoundExceeded> {
    if lhs == rhs {
        return Ok(Some(LinearDerivation::empty(lhs.clone())));
    }
    let rewriter = Rewriter::new(&cfg.presentation, cfg.algebra.clone(), cfg.pool.clone());
    let mut sides = [Side::new(lhs), Side::new(rhs)];
    for _ in 0..cfg.depth {
        let k = match (sides[0].frontier.is_empty(), sides[1].frontier.is_empty()) {
            (true, true) => return Ok(None),
            (true, false) => 1,
            (false, true) => 0,
            (false, false) => usize::from(sides[0].frontier.len() > sides[1].frontier.len()),
        };
        let frontier = std::mem::take(&mut sides[k].frontier);
        let mut next = Vec::new();
        for t in frontier {
            for (u, step) in rewriter.neighbours(&t) {
                if u.size() > cfg.size_bound || sides[k].seen.contains_key(&u) {
                    continue;
                }
                sides[k].seen.insert(u.clone(), Some((t.clone(), step)));
                if sides[1 - k].seen.contains_key(&u) {
                    return Ok(Some(join(&sides, lhs, &u)));
                }
                next.push(u);
                if sides[k].seen.len() > cfg.budget {
                    return Err(BoundExceeded::States(cfg.budget));
                }
            }
        }
        sides[k].frontier = next;
    }
    if sides.iter().all(|s| s.frontier.is_empty()) {
        return Ok(None);
    }
    Err(BoundExceeded::Depth(cfg.depth))
}

fn join(sides: &[Side; 2], lhs: &Term, meet: &Term) -> LinearDerivation {
    let mut steps = sides[0].path(meet);
    steps.extend(sides[1].path(meet).into_iter().rev().map(|mut s| {
        s.dir = s.dir.flip();
        s
    }));
    LinearDerivation {
        start: lhs.clone(),
        steps,
    }
}

/// Whether `lhs = rhs` is provable, as far as the bounds allow.
pub fn oracle_equal(cfg: &OracleConfig, lhs: &Term, rhs: &Term) -> Result<bool, BoundExceeded> {
    oracle_proof(cfg, lhs, rhs).map(|p| p.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use frex_kernel::presentation::monoid;
    use frex_kernel::{check, replay, CheckContext};

    fn mul(a: Term, b: Term) -> Term {
        Term::app("·", vec![a, b])
    }

    fn one() -> Term {
        Term::constant("1")
    }

    fn cfg(size_bound: usize) -> OracleConfig {
        OracleConfig {
            presentation: monoid(),
            algebra: None,
            depth: 6,
            size_bound,
            pool: Vec::new(),
            budget: 100_000,
        }
    }

    #[test]
    fn finds_the_neutrality_chain() {
        let x = Term::var(0);
        let lhs = mul(mul(one(), mul(x.clone(), one())), one());
        let proof = oracle_proof(&cfg(lhs.size()), &lhs, &x).unwrap().unwrap();
        let ctx = CheckContext::new(monoid(), 1, None).unwrap();
        check(&ctx, &lhs, &x, &replay(&ctx, &proof).unwrap()).unwrap();
    }

    #[test]
    fn commutation_is_unreachable() {
        let (x, y) = (Term::var(0), Term::var(1));
        let lhs = mul(x.clone(), y.clone());
        assert_eq!(oracle_equal(&cfg(3), &lhs, &mul(y, x)), Ok(false));
    }

    #[test]
    fn identical_sides_need_no_search() {
        let x = Term::var(0);
        let mut c = cfg(1);
        c.depth = 0;
        assert_eq!(oracle_equal(&c, &x, &x), Ok(true));
    }
}
