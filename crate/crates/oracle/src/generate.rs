//! Random terms and goals for property and acceptance testing.

use rand::seq::SliceRandom;
use rand::Rng;

use frex_kernel::{Equation, Term, Value};

use crate::rewrite::Rewriter;

/// Shape of the random terms to draw.
#[derive(Debug, Clone)]
pub struct TermSpec {
    /// Variables are drawn from `0..support`.
    pub support: usize,
    /// Leaves (variables, units and constants) per term, at least one.
    pub leaves: usize,
    /// Whether `inv` may appear.
    pub involutive: bool,
    /// Constants that may appear as leaves; empty for plain terms.
    pub pool: Vec<Value>,
}

fn leaf<R: Rng>(rng: &mut R, spec: &TermSpec) -> Term {
    let roll = rng.gen_range(0..10);
    if roll == 0 || spec.support == 0 && spec.pool.is_empty() {
        Term::constant("1")
    } else if roll < 4 && !spec.pool.is_empty() || spec.support == 0 {
        Term::Sta(spec.pool.choose(rng).expect("non-empty").clone())
    } else {
        Term::var(rng.gen_range(0..spec.support))
    }
}

fn build<R: Rng>(rng: &mut R, spec: &TermSpec, leaves: usize) -> Term {
    let t = if leaves <= 1 {
        leaf(rng, spec)
    } else {
        let split = rng.gen_range(1..leaves);
        Term::app("·", vec![build(rng, spec, split), build(rng, spec, leaves - split)])
    };
    if spec.involutive && rng.gen_ratio(1, 4) {
        Term::app("inv", vec![t])
    } else {
        t
    }
}

/// A random term with exactly `spec.leaves` leaves.
pub fn random_term<R: Rng>(rng: &mut R, spec: &TermSpec) -> Term {
    build(rng, spec, spec.leaves.max(1))
}

/// Follows up to `steps` random rewrites from `t`, never exceeding
/// `size_bound`. Every term on the walk is provably equal to `t`.
pub fn random_walk<R: Rng>(rng: &mut R, rewriter: &Rewriter, t: &Term, steps: usize, size_bound: usize) -> Term {
    let mut cur = t.clone();
    for _ in 0..steps {
        let options: Vec<Term> = rewriter
            .neighbours(&cur)
            .into_iter()
            .map(|(u, _)| u)
            .filter(|u| u.size() <= size_bound)
            .collect();
        match options.choose(rng) {
            Some(u) => cur = u.clone(),
            None => break,
        }
    }
    cur
}

/// A goal that is provable by construction with probability about one
/// half. The other half pairs the term with a random walk from a single
/// perturbed leaf, which is usually, though not always, unprovable.
pub fn random_goal<R: Rng>(rng: &mut R, rewriter: &Rewriter, spec: &TermSpec, walk: usize, size_bound: usize) -> Equation {
    let lhs = random_term(rng, spec);
    let bound = size_bound.max(lhs.size());
    let start = if rng.gen_bool(0.5) { lhs.clone() } else { perturb(rng, spec, &lhs) };
    let rhs = random_walk(rng, rewriter, &start, walk, bound);
    Equation::new(spec.support, lhs, rhs)
}

fn perturb<R: Rng>(rng: &mut R, spec: &TermSpec, t: &Term) -> Term {
    let n = t.leaves().max(1);
    let target = rng.gen_range(0..n);
    let mut seen = 0;
    replace_leaf(t, target, &mut seen, &mut || leaf(rng, spec))
}

fn replace_leaf(t: &Term, target: usize, seen: &mut usize, fresh: &mut dyn FnMut() -> Term) -> Term {
    match t {
        Term::App(op, args) if !args.is_empty() => {
            Term::App(op.clone(), args.iter().map(|a| replace_leaf(a, target, seen, fresh)).collect())
        }
        _ => {
            let hit = *seen == target;
            *seen += 1;
            if hit {
                fresh()
            } else {
                t.clone()
            }
        }
    }
}
