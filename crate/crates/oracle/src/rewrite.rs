//! Single-step rewriting with a presentation's axioms, in both directions,
//! and with evaluation equations over a finite constant pool.

use std::sync::Arc;

use frex_kernel::{Algebra, Context, Direction, Frame, LinStep, Presentation, Rule, Term, Value};

/// All one-step rewrites of terms: every axiom instance at every position,
/// read either way, plus constant evaluation and its reverse.
#[derive(Debug, Clone)]
pub struct Rewriter {
    axioms: Vec<(String, usize, Term, Term)>,
    ops: Vec<(String, usize)>,
    algebra: Option<Arc<dyn Algebra>>,
    pool: Vec<Value>,
}

impl Rewriter {
    pub fn new(presentation: &Presentation, algebra: Option<Arc<dyn Algebra>>, pool: Vec<Value>) -> Self {
        Rewriter {
            axioms: presentation
                .axioms()
                .map(|(name, eq)| (name.to_owned(), eq.support, eq.lhs.clone(), eq.rhs.clone()))
                .collect(),
            ops: presentation
                .signature()
                .ops()
                .map(|(op, arity)| (op.to_owned(), arity))
                .collect(),
            algebra,
            pool,
        }
    }

    /// Every term one step away from `t`, with the step that reaches it.
    pub fn neighbours(&self, t: &Term) -> Vec<(Term, LinStep)> {
        let mut out = Vec::new();
        self.visit(t, &mut Vec::new(), &mut out);
        out
    }

    fn visit(&self, t: &Term, frames: &mut Vec<Frame>, out: &mut Vec<(Term, LinStep)>) {
        let mut local = Vec::new();
        self.at_root(t, &mut local);
        for (replacement, by, dir) in local {
            let context = Context::new(frames.clone());
            let result = match &context {
                Some(c) => c.plug(replacement),
                None => replacement,
            };
            out.push((result, LinStep { context, dir, by }));
        }
        if let Term::App(op, args) = t {
            for i in 0..args.len() {
                frames.push(Frame {
                    op: op.clone(),
                    before: args[..i].to_vec(),
                    after: args[i + 1..].to_vec(),
                });
                self.visit(&args[i], frames, out);
                frames.pop();
            }
        }
    }

    fn at_root(&self, t: &Term, out: &mut Vec<(Term, Rule, Direction)>) {
        for (name, support, lhs, rhs) in &self.axioms {
            for (from, to, dir) in [(lhs, rhs, Direction::Forward), (rhs, lhs, Direction::Backward)] {
                let mut sub = vec![None; *support];
                if !matches(from, t, &mut sub) {
                    continue;
                }
                let Some(sub) = sub.into_iter().collect::<Option<Vec<Term>>>() else {
                    continue;
                };
                let Ok(result) = to.substitute(&sub) else {
                    continue;
                };
                out.push((
                    result,
                    Rule::Axiom {
                        name: name.clone(),
                        subst: sub,
                    },
                    dir,
                ));
            }
        }
        let Some(alg) = &self.algebra else {
            return;
        };
        match t {
            Term::App(op, args) => {
                let consts: Option<Vec<Value>> = args
                    .iter()
                    .map(|a| match a {
                        Term::Sta(c) => Some(c.clone()),
                        _ => None,
                    })
                    .collect();
                if let Some(consts) = consts {
                    if let Ok(v) = alg.apply(op, &consts) {
                        out.push((
                            Term::Sta(v),
                            Rule::Eval {
                                op: op.clone(),
                                args: consts,
                            },
                            Direction::Forward,
                        ));
                    }
                }
            }
            Term::Sta(v) => {
                for (op, arity) in &self.ops {
                    for args in tuples(&self.pool, *arity) {
                        let hit = alg.apply(op, &args).is_ok_and(|w| alg.equal(&w, v));
                        if hit {
                            out.push((
                                Term::App(op.clone(), args.iter().cloned().map(Term::Sta).collect()),
                                Rule::Eval {
                                    op: op.clone(),
                                    args,
                                },
                                Direction::Backward,
                            ));
                        }
                    }
                }
            }
            Term::Var(_) => {}
        }
    }
}

fn tuples(pool: &[Value], arity: usize) -> Vec<Vec<Value>> {
    (0..arity).fold(vec![Vec::new()], |acc, _| {
        acc.iter()
            .flat_map(|prefix| {
                pool.iter().map(move |c| {
                    let mut next = prefix.clone();
                    next.push(c.clone());
                    next
                })
            })
            .collect()
    })
}

/// First-order matching of `pattern` against `t`, extending `sub`.
fn matches(pattern: &Term, t: &Term, sub: &mut [Option<Term>]) -> bool {
    match (pattern, t) {
        (Term::Var(i), _) => match &sub[*i] {
            Some(bound) => bound == t,
            None => {
                sub[*i] = Some(t.clone());
                true
            }
        },
        (Term::Sta(a), Term::Sta(b)) => a == b,
        (Term::App(f, ps), Term::App(g, ts)) => {
            f == g && ps.len() == ts.len() && ps.iter().zip(ts).all(|(p, s)| matches(p, s, sub))
        }
        _ => false,
    }
}
