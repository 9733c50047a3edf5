//! Linear derivations: type-aligned sequences of directed, context-focused
//! atomic steps, and their replay into checkable derivation trees.

use serde::de::{self, Deserialize, Deserializer};
use serde::ser::{Serialize, SerializeMap, SerializeSeq, Serializer};
use thiserror::Error;

use crate::derivation::{CheckContext, CheckError, Derivation};
use crate::display::{TermPrinter, HOLE_INDEX};
use crate::term::{Node, Term};
use crate::value::Value;

/// One layer of a one-hole context: `op(before…, □, after…)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    pub op: String,
    pub before: Vec<Term>,
    pub after: Vec<Term>,
}

/// A non-empty one-hole context, outermost frame first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Context {
    frames: Vec<Frame>,
}

impl Context {
    pub fn new(frames: Vec<Frame>) -> Option<Self> {
        (!frames.is_empty()).then_some(Context { frames })
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    /// Wraps `self` in one more outer frame.
    pub fn within(mut self, outer: Frame) -> Self {
        self.frames.insert(0, outer);
        self
    }

    pub fn plug(&self, t: Term) -> Term {
        self.frames.iter().rev().fold(t, |inner, frame| {
            let mut args = Vec::with_capacity(frame.before.len() + 1 + frame.after.len());
            args.extend(frame.before.iter().cloned());
            args.push(inner);
            args.extend(frame.after.iter().cloned());
            Term::App(frame.op.clone(), args)
        })
    }

    /// Renders the context with `□` for the hole.
    pub fn render(&self, printer: &TermPrinter) -> String {
        printer.term(&self.plug(Term::Var(HOLE_INDEX)))
    }

    fn from_node(node: Node) -> Result<Self, String> {
        let mut frames = Vec::new();
        let mut cur = node;
        loop {
            match cur {
                Node::Hole if frames.is_empty() => {
                    return Err("an empty context is written as null, not a bare hole".to_owned())
                }
                Node::Hole => return Ok(Context { frames }),
                Node::Term(_) => return Err("context has no hole".to_owned()),
                Node::App(op, args) => {
                    let holes = args.iter().filter(|a| !matches!(a, Node::Term(_))).count();
                    if holes != 1 {
                        return Err(format!("context has {holes} holes under `{op}`"));
                    }
                    let mut before = Vec::new();
                    let mut after = Vec::new();
                    let mut next = None;
                    for a in args {
                        match a {
                            Node::Term(t) if next.is_none() => before.push(t),
                            Node::Term(t) => after.push(t),
                            other => next = Some(other),
                        }
                    }
                    frames.push(Frame { op, before, after });
                    cur = next.expect("exactly one hole");
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Direction {
    #[serde(rename = "fwd")]
    Forward,
    #[serde(rename = "bwd")]
    Backward,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// The atomic equation a step appeals to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rule {
    Axiom { name: String, subst: Vec<Term> },
    Eval { op: String, args: Vec<Value> },
}

impl Rule {
    pub fn derivation(&self) -> Derivation {
        match self {
            Rule::Axiom { name, subst } => Derivation::ByAxiom(name.clone(), subst.clone()),
            Rule::Eval { op, args } => Derivation::EvalStep(op.clone(), args.clone()),
        }
    }

    pub fn instance(&self, ctx: &CheckContext) -> Result<(Term, Term), CheckError> {
        match self {
            Rule::Axiom { name, subst } => ctx.axiom_instance(name, subst),
            Rule::Eval { op, args } => ctx.eval_instance(op, args),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct LinStep {
    pub context: Option<Context>,
    pub dir: Direction,
    pub by: Rule,
}

impl LinStep {
    pub fn new(by: Rule, dir: Direction) -> Self {
        LinStep {
            context: None,
            dir,
            by,
        }
    }

    pub fn within(mut self, outer: Frame) -> Self {
        self.context = Some(match self.context.take() {
            None => Context { frames: vec![outer] },
            Some(c) => c.within(outer),
        });
        self
    }

    /// `(source, target)` of the step.
    pub fn endpoints(&self, ctx: &CheckContext) -> Result<(Term, Term), CheckError> {
        let (l, r) = self.by.instance(ctx)?;
        let (l, r) = match &self.context {
            None => (l, r),
            Some(c) => (c.plug(l), c.plug(r)),
        };
        Ok(match self.dir {
            Direction::Forward => (l, r),
            Direction::Backward => (r, l),
        })
    }

    /// The step as a derivation tree: the rule, symmetrised if backward,
    /// under one congruence per context frame.
    pub fn derivation(&self) -> Derivation {
        let atom = match self.dir {
            Direction::Forward => self.by.derivation(),
            Direction::Backward => Derivation::Sym(Box::new(self.by.derivation())),
        };
        match &self.context {
            None => atom,
            Some(c) => c.frames.iter().rev().fold(atom, |inner, frame| {
                let mut children = Vec::with_capacity(frame.before.len() + 1 + frame.after.len());
                children.extend(frame.before.iter().cloned().map(Derivation::Refl));
                children.push(inner);
                children.extend(frame.after.iter().cloned().map(Derivation::Refl));
                Derivation::Cong(frame.op.clone(), children)
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearDerivation {
    pub start: Term,
    pub steps: Vec<LinStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("step {step}: {source}")]
    Step { step: usize, source: CheckError },
}

impl ReplayError {
    pub fn step(&self) -> usize {
        match self {
            ReplayError::Step { step, .. } => *step,
        }
    }
}

impl LinearDerivation {
    pub fn empty(start: Term) -> Self {
        LinearDerivation {
            start,
            steps: Vec::new(),
        }
    }

    /// The visited terms: the start, then each step's target. Fails at the
    /// first step whose source is not the previous target.
    pub fn trace(&self, ctx: &CheckContext) -> Result<Vec<Term>, ReplayError> {
        ctx.validate(&self.start)
            .map_err(|source| ReplayError::Step { step: 0, source })?;
        let mut terms = Vec::with_capacity(self.steps.len() + 1);
        terms.push(self.start.clone());
        for (i, step) in self.steps.iter().enumerate() {
            let (src, tgt) = step
                .endpoints(ctx)
                .map_err(|source| ReplayError::Step { step: i, source })?;
            let cur = terms.last().expect("non-empty");
            if !ctx.same_term(cur, &src) {
                return Err(ReplayError::Step {
                    step: i,
                    source: CheckError::EndpointMismatch {
                        expected: cur.clone(),
                        got: src,
                    },
                });
            }
            terms.push(tgt);
        }
        Ok(terms)
    }

    pub fn end(&self, ctx: &CheckContext) -> Result<Term, ReplayError> {
        Ok(self.trace(ctx)?.pop().expect("non-empty"))
    }
}

/// Converts a linear derivation back into a tree, after checking that the
/// steps are aligned. Transitivity is balanced so depth stays logarithmic.
pub fn replay(ctx: &CheckContext, l: &LinearDerivation) -> Result<Derivation, ReplayError> {
    l.trace(ctx)?;
    let mut layer: Vec<Derivation> = l.steps.iter().map(LinStep::derivation).collect();
    if layer.is_empty() {
        return Ok(Derivation::Refl(l.start.clone()));
    }
    while layer.len() > 1 {
        let mut next = Vec::with_capacity(layer.len().div_ceil(2));
        let mut it = layer.into_iter();
        while let Some(a) = it.next() {
            next.push(match it.next() {
                Some(b) => Derivation::Trans(Box::new(a), Box::new(b)),
                None => a,
            });
        }
        layer = next;
    }
    Ok(layer.pop().expect("one derivation left"))
}

struct ContextNode<'a>(&'a [Frame]);

impl Serialize for ContextNode<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.split_first() {
            None => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("hole", &())?;
                map.end()
            }
            Some((frame, rest)) => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("app", &frame.op)?;
                map.serialize_entry("args", &FrameArgs { frame, rest })?;
                map.end()
            }
        }
    }
}

struct FrameArgs<'a> {
    frame: &'a Frame,
    rest: &'a [Frame],
}

impl Serialize for FrameArgs<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let len = self.frame.before.len() + 1 + self.frame.after.len();
        let mut seq = serializer.serialize_seq(Some(len))?;
        for t in &self.frame.before {
            seq.serialize_element(t)?;
        }
        seq.serialize_element(&ContextNode(self.rest))?;
        for t in &self.frame.after {
            seq.serialize_element(t)?;
        }
        seq.end()
    }
}

impl Serialize for Context {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ContextNode(&self.frames).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Context {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Context::from_node(Node::deserialize(deserializer)?).map_err(de::Error::custom)
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct EvalRepr {
    op: String,
    args: Vec<Value>,
}

#[derive(serde::Serialize, serde::Deserialize)]
#[serde(untagged)]
enum RuleRepr {
    Axiom { axiom: String, subst: Vec<Term> },
    Eval { eval: EvalRepr },
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Rule::Axiom { name, subst } => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("axiom", name)?;
                map.serialize_entry("subst", subst)?;
                map.end()
            }
            Rule::Eval { op, args } => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry(
                    "eval",
                    &EvalRepr {
                        op: op.clone(),
                        args: args.clone(),
                    },
                )?;
                map.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for Rule {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(match RuleRepr::deserialize(deserializer)? {
            RuleRepr::Axiom { axiom, subst } => Rule::Axiom {
                name: axiom,
                subst,
            },
            RuleRepr::Eval { eval } => Rule::Eval {
                op: eval.op,
                args: eval.args,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::{check, endpoints};
    use crate::presentation::{monoid, ASSOCIATIVITY, LEFT_NEUTRALITY, MUL, UNIT};

    fn mul(a: Term, b: Term) -> Term {
        Term::app(MUL, vec![a, b])
    }

    fn ctx() -> CheckContext {
        CheckContext::new(monoid(), 2, None).unwrap()
    }

    fn unit_left_under_y() -> LinStep {
        LinStep::new(
            Rule::Axiom {
                name: LEFT_NEUTRALITY.into(),
                subst: vec![Term::var(0)],
            },
            Direction::Forward,
        )
        .within(Frame {
            op: MUL.into(),
            before: vec![Term::var(1)],
            after: vec![],
        })
    }

    #[test]
    fn step_endpoints_and_replay() {
        let (x, y) = (Term::var(0), Term::var(1));
        let start = mul(y.clone(), mul(Term::constant(UNIT), x.clone()));
        let l = LinearDerivation {
            start: start.clone(),
            steps: vec![unit_left_under_y()],
        };
        let end = mul(y.clone(), x.clone());
        assert_eq!(l.trace(&ctx()).unwrap(), vec![start.clone(), end.clone()]);
        let d = replay(&ctx(), &l).unwrap();
        assert_eq!(check(&ctx(), &start, &end, &d), Ok(()));
    }

    #[test]
    fn empty_replays_to_refl() {
        let l = LinearDerivation::empty(Term::var(0));
        assert_eq!(replay(&ctx(), &l).unwrap(), Derivation::Refl(Term::var(0)));
    }

    #[test]
    fn misaligned_step_reported_with_index() {
        let (x, y) = (Term::var(0), Term::var(1));
        let assoc = LinStep::new(
            Rule::Axiom {
                name: ASSOCIATIVITY.into(),
                subst: vec![x.clone(), y.clone(), x.clone()],
            },
            Direction::Forward,
        );
        let l = LinearDerivation {
            start: mul(mul(x.clone(), y.clone()), x.clone()),
            steps: vec![assoc.clone(), assoc],
        };
        let err = replay(&ctx(), &l).unwrap_err();
        assert_eq!(err.step(), 1);
    }

    #[test]
    fn backward_step_is_symmetric() {
        let mut step = unit_left_under_y();
        step.dir = Direction::Backward;
        let (l, r) = step.endpoints(&ctx()).unwrap();
        assert_eq!(endpoints(&ctx(), &step.derivation()).unwrap(), (l, r));
    }

    #[test]
    fn step_json_layout() {
        let step = unit_left_under_y();
        let text = serde_json::to_string(&step).unwrap();
        assert_eq!(
            text,
            r#"{"context":{"app":"·","args":[{"var":1},{"hole":null}]},"dir":"fwd","by":{"axiom":"lftNeutrality","subst":[{"var":0}]}}"#
        );
        assert_eq!(serde_json::from_str::<LinStep>(&text).unwrap(), step);

        let eval = LinStep::new(
            Rule::Eval {
                op: MUL.into(),
                args: vec![Value::Nat(3), Value::Nat(2)],
            },
            Direction::Backward,
        );
        let text = serde_json::to_string(&eval).unwrap();
        assert_eq!(
            text,
            r#"{"context":null,"dir":"bwd","by":{"eval":{"op":"·","args":[3,2]}}}"#
        );
        assert_eq!(serde_json::from_str::<LinStep>(&text).unwrap(), eval);
    }

    #[test]
    fn context_needs_exactly_one_hole() {
        let two = r#"{"app":"·","args":[{"hole":null},{"hole":null}]}"#;
        assert!(serde_json::from_str::<Context>(two).is_err());
        let none = r#"{"app":"·","args":[{"var":0},{"var":1}]}"#;
        assert!(serde_json::from_str::<Context>(none).is_err());
        assert!(serde_json::from_str::<Context>(r#"{"hole":null}"#).is_err());
    }
}
