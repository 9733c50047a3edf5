//! Family-specific decision procedures, written directly from each
//! family's normal-form criterion.

use std::collections::BTreeMap;

use frex_kernel::{Algebra, Term, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Monoid,
    Commutative,
    Involutive,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Monoid, Family::Commutative, Family::Involutive];
}

#[derive(Debug, Clone)]
enum Item {
    Var(usize, bool),
    Const(Value),
}

fn collect(t: &Term, flipped: bool, alg: Option<&dyn Algebra>, out: &mut Vec<Item>) {
    match t {
        Term::Var(i) => out.push(Item::Var(*i, flipped)),
        Term::Sta(c) => {
            let alg = alg.expect("constants need an algebra");
            let c = if flipped {
                alg.apply("inv", std::slice::from_ref(c)).expect("involution")
            } else {
                c.clone()
            };
            out.push(Item::Const(c));
        }
        Term::App(op, args) => match (op.as_str(), args.as_slice()) {
            ("1", []) => {}
            ("inv", [s]) => collect(s, !flipped, alg, out),
            (_, [a, b]) if flipped => {
                collect(b, flipped, alg, out);
                collect(a, flipped, alg, out);
            }
            (_, [a, b]) => {
                collect(a, flipped, alg, out);
                collect(b, flipped, alg, out);
            }
            _ => panic!("unexpected operation `{op}`"),
        },
    }
}

/// Leaves in order with each maximal run of constants multiplied out and
/// unit results dropped.
fn folded(t: &Term, alg: Option<&dyn Algebra>) -> Vec<Item> {
    let mut raw = Vec::new();
    collect(t, false, alg, &mut raw);
    let mut out = Vec::new();
    let mut run: Option<Value> = None;
    let flush = |run: &mut Option<Value>, out: &mut Vec<Item>| {
        if let Some(c) = run.take() {
            let alg = alg.expect("constants need an algebra");
            let one = alg.apply("1", &[]).expect("unit");
            if !alg.equal(&c, &one) {
                out.push(Item::Const(c));
            }
        }
    };
    for item in raw {
        match item {
            Item::Const(c) => {
                run = Some(match run.take() {
                    None => c,
                    Some(acc) => alg.expect("algebra").apply("·", &[acc, c]).expect("product"),
                });
            }
            var => {
                flush(&mut run, &mut out);
                out.push(var);
            }
        }
    }
    flush(&mut run, &mut out);
    out
}

fn same_items(a: &[Item], b: &[Item], alg: Option<&dyn Algebra>) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| match (x, y) {
            (Item::Var(i, p), Item::Var(j, q)) => i == j && p == q,
            (Item::Const(c), Item::Const(d)) => match alg {
                Some(alg) => alg.equal(c, d),
                None => c == d,
            },
            _ => false,
        })
}

/// Variable occurrence counts and the product of all constants.
fn multiset(t: &Term, alg: Option<&dyn Algebra>) -> (BTreeMap<usize, usize>, Option<Value>) {
    let mut raw = Vec::new();
    collect(t, false, alg, &mut raw);
    let mut counts = BTreeMap::new();
    let mut constant = alg.map(|a| a.apply("1", &[]).expect("unit"));
    for item in raw {
        match item {
            Item::Var(i, _) => *counts.entry(i).or_insert(0) += 1,
            Item::Const(c) => {
                let alg = alg.expect("constants need an algebra");
                constant = Some(alg.apply("·", &[constant.take().expect("set"), c]).expect("product"));
            }
        }
    }
    (counts, constant)
}

/// Whether `lhs = rhs` holds in the family's free algebra (no `alg`) or
/// free extension of `alg`.
pub fn direct_oracle(family: Family, alg: Option<&dyn Algebra>, lhs: &Term, rhs: &Term) -> bool {
    match family {
        Family::Monoid | Family::Involutive => same_items(&folded(lhs, alg), &folded(rhs, alg), alg),
        Family::Commutative => {
            let (m, c) = multiset(lhs, alg);
            let (n, d) = multiset(rhs, alg);
            m == n
                && match (alg, c, d) {
                    (Some(alg), Some(c), Some(d)) => alg.equal(&c, &d),
                    _ => true,
                }
        }
    }
}
