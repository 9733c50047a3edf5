//! Signatures, terms over de Bruijn-indexed variables, and equations.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Deserialize, Deserializer, MapAccess, Visitor};
use serde::ser::{Serialize, SerializeMap, Serializer};
use thiserror::Error;

use crate::value::Value;

/// Operation symbols and their arities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    ops: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `name` with `arity`; re-declaring a name with a different arity
    /// is an error.
    pub fn with_op(mut self, name: &str, arity: usize) -> Result<Self, TermError> {
        self.add_op(name, arity)?;
        Ok(self)
    }

    pub fn add_op(&mut self, name: &str, arity: usize) -> Result<(), TermError> {
        match self.ops.get(name) {
            Some(&existing) if existing != arity => Err(TermError::DuplicateOp(name.to_owned())),
            _ => {
                self.ops.insert(name.to_owned(), arity);
                Ok(())
            }
        }
    }

    pub fn arity(&self, op: &str) -> Option<usize> {
        self.ops.get(op).copied()
    }

    pub fn ops(&self) -> impl Iterator<Item = (&str, usize)> {
        self.ops.iter().map(|(name, &arity)| (name.as_str(), arity))
    }

    /// True when every op of `self` is declared with the same arity in `other`.
    pub fn is_subsignature_of(&self, other: &Signature) -> bool {
        self.ops().all(|(name, arity)| other.arity(name) == Some(arity))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("unknown operation `{0}`")]
    UnknownOp(String),
    #[error("operation `{op}` expects {expected} argument(s), got {got}")]
    ArityMismatch {
        op: String,
        expected: usize,
        got: usize,
    },
    #[error("variable index {0} is out of scope")]
    VarOutOfScope(usize),
    #[error("operation `{0}` declared twice with different arities")]
    DuplicateOp(String),
    #[error("constant {0} appears but no constants algebra is in scope")]
    UnexpectedConstant(Value),
    #[error("constant {value} is not an element of algebra `{algebra}`")]
    NotInCarrier { algebra: String, value: Value },
}

/// A term over a signature. `Var` is a de Bruijn-style index into the
/// context of the enclosing equation; `Sta` embeds a carrier element of a
/// designated constants algebra (terms without `Sta` are plain terms).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    Sta(Value),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Self {
        Term::Var(i)
    }

    pub fn sta(v: impl Into<Value>) -> Self {
        Term::Sta(v.into())
    }

    pub fn app(op: &str, args: Vec<Term>) -> Self {
        Term::App(op.to_owned(), args)
    }

    pub fn constant(op: &str) -> Self {
        Term::App(op.to_owned(), Vec::new())
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Sta(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Number of variable and constant leaves, nullary applications included.
    pub fn leaves(&self) -> usize {
        match self {
            Term::Var(_) | Term::Sta(_) => 1,
            Term::App(_, args) if args.is_empty() => 1,
            Term::App(_, args) => args.iter().map(Term::leaves).sum(),
        }
    }

    pub fn is_static_free(&self) -> bool {
        match self {
            Term::Var(_) => true,
            Term::Sta(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_static_free),
        }
    }

    /// One past the largest variable index, or 0 for a closed term.
    pub fn var_bound(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::Sta(_) => 0,
            Term::App(_, args) => args.iter().map(Term::var_bound).max().unwrap_or(0),
        }
    }

    /// Simultaneous substitution of `sub[i]` for `Var(i)`.
    pub fn substitute(&self, sub: &[Term]) -> Result<Term, TermError> {
        match self {
            Term::Var(i) => sub.get(*i).cloned().ok_or(TermError::VarOutOfScope(*i)),
            Term::Sta(v) => Ok(Term::Sta(v.clone())),
            Term::App(op, args) => Ok(Term::App(
                op.clone(),
                args.iter()
                    .map(|a| a.substitute(sub))
                    .collect::<Result<_, _>>()?,
            )),
        }
    }
}

/// Checks arities and variable scope; `Sta` leaves are rejected because no
/// constants algebra is in scope. See [`crate::algebra::validate`] for terms
/// that may carry constants.
pub fn validate_term(sig: &Signature, support: usize, t: &Term) -> Result<(), TermError> {
    crate::algebra::validate(sig, support, None, t)
}

/// Free function form of [`Term::substitute`].
pub fn substitute(t: &Term, sub: &[Term]) -> Result<Term, TermError> {
    t.substitute(sub)
}

/// `support ⊢ lhs = rhs`. Goals handed to the solvers use the same shape.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Equation {
    pub support: usize,
    pub lhs: Term,
    pub rhs: Term,
}

/// An equation to be discharged; may contain `Sta` constants in frex mode.
pub type Goal = Equation;

impl Equation {
    pub fn new(support: usize, lhs: Term, rhs: Term) -> Self {
        Equation { support, lhs, rhs }
    }

    pub fn flipped(&self) -> Self {
        Equation::new(self.support, self.rhs.clone(), self.lhs.clone())
    }

    pub fn is_static_free(&self) -> bool {
        self.lhs.is_static_free() && self.rhs.is_static_free()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::display::TermPrinter::default().term(self))
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

// Serialized as {"var": i} | {"sta": literal} | {"app": name, "args": [...]},
// keys in exactly that order.
impl Serialize for Term {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Term::Var(i) => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("var", i)?;
                map.end()
            }
            Term::Sta(v) => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("sta", v)?;
                map.end()
            }
            Term::App(op, args) => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("app", op)?;
                map.serialize_entry("args", args)?;
                map.end()
            }
        }
    }
}

/// Term or context node as read from JSON; contexts additionally allow a
/// single `{"hole": null}` leaf.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Node {
    Term(Term),
    Hole,
    App(String, Vec<Node>),
}

impl Node {
    fn into_term(self) -> Option<Term> {
        match self {
            Node::Term(t) => Some(t),
            Node::Hole => None,
            Node::App(op, args) => Some(Term::App(
                op,
                args.into_iter()
                    .map(Node::into_term)
                    .collect::<Option<_>>()?,
            )),
        }
    }
}

impl<'de> Deserialize<'de> for Node {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct NodeVisitor;

        impl<'de> Visitor<'de> for NodeVisitor {
            type Value = Node;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(r#"a term object: {"var"}, {"sta"}, {"app","args"} or {"hole"}"#)
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Node, A::Error> {
                let mut var = None;
                let mut sta = None;
                let mut app: Option<String> = None;
                let mut args: Option<Vec<Node>> = None;
                let mut hole = false;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "var" => var = Some(map.next_value::<usize>()?),
                        "sta" => sta = Some(map.next_value::<Value>()?),
                        "app" => app = Some(map.next_value()?),
                        "args" => args = Some(map.next_value()?),
                        "hole" => {
                            map.next_value::<de::IgnoredAny>()?;
                            hole = true;
                        }
                        other => {
                            return Err(de::Error::unknown_field(
                                other,
                                &["var", "sta", "app", "args", "hole"],
                            ))
                        }
                    }
                }
                match (var, sta, app, args, hole) {
                    (Some(i), None, None, None, false) => Ok(Node::Term(Term::Var(i))),
                    (None, Some(v), None, None, false) => Ok(Node::Term(Term::Sta(v))),
                    (None, None, Some(op), Some(args), false) => {
                        if args.iter().all(|a| matches!(a, Node::Term(_))) {
                            let args = args.into_iter().filter_map(Node::into_term).collect();
                            Ok(Node::Term(Term::App(op, args)))
                        } else {
                            Ok(Node::App(op, args))
                        }
                    }
                    (None, None, None, None, true) => Ok(Node::Hole),
                    _ => Err(de::Error::custom("malformed term object")),
                }
            }
        }

        deserializer.deserialize_map(NodeVisitor)
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Node::deserialize(deserializer)?
            .into_term()
            .ok_or_else(|| de::Error::custom("hole is only allowed inside a step context"))
    }
}
