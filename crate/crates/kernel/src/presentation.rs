//! Presentations (signature plus named axioms), the axiom schemes used by
//! the monoid family, and the three bundled presentations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::term::{validate_term, Equation, Signature, Term, TermError};

/// Binary multiplication of the monoid family.
pub const MUL: &str = "·";
/// Monoid unit (nullary).
pub const UNIT: &str = "1";
/// Involution (unary).
pub const INV: &str = "inv";

pub const LEFT_NEUTRALITY: &str = "lftNeutrality";
pub const RIGHT_NEUTRALITY: &str = "rgtNeutrality";
pub const ASSOCIATIVITY: &str = "assoc";
pub const COMMUTATIVITY: &str = "comm";
pub const INVOLUTIVITY: &str = "involutive";
pub const ANTIDISTRIBUTIVITY: &str = "antidistributivity";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("axiom `{0}` declared twice")]
    DuplicateAxiom(String),
    #[error("axiom `{name}` is ill-formed: {source}")]
    IllFormedAxiom { name: String, source: TermError },
    #[error(transparent)]
    Signature(#[from] TermError),
}

/// A signature together with named equational axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    signature: Signature,
    axioms: BTreeMap<String, Equation>,
}

impl Presentation {
    pub fn new(
        signature: Signature,
        axioms: impl IntoIterator<Item = (String, Equation)>,
    ) -> Result<Self, PresentationError> {
        let mut map = BTreeMap::new();
        for (name, eq) in axioms {
            for side in [&eq.lhs, &eq.rhs] {
                validate_term(&signature, eq.support, side).map_err(|source| {
                    PresentationError::IllFormedAxiom {
                        name: name.clone(),
                        source,
                    }
                })?;
            }
            if map.insert(name.clone(), eq).is_some() {
                return Err(PresentationError::DuplicateAxiom(name));
            }
        }
        Ok(Presentation {
            signature,
            axioms: map,
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn axiom(&self, name: &str) -> Option<&Equation> {
        self.axioms.get(name)
    }

    pub fn axioms(&self) -> impl Iterator<Item = (&str, &Equation)> {
        self.axioms.iter().map(|(name, eq)| (name.as_str(), eq))
    }

    pub fn axiom_names(&self) -> impl Iterator<Item = &str> {
        self.axioms.keys().map(String::as_str)
    }
}

/// The axiom shapes the monoid family is built from. Fields name the
/// operation symbols bound to each role.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomScheme {
    LeftNeutrality { op: String, unit: String },
    RightNeutrality { op: String, unit: String },
    Associativity { op: String },
    Commutativity { op: String },
    Involutivity { inv: String },
    Antidistributivity { op: String, inv: String },
}

impl AxiomScheme {
    /// Conventional axiom name for the scheme.
    pub fn default_name(&self) -> &'static str {
        match self {
            AxiomScheme::LeftNeutrality { .. } => LEFT_NEUTRALITY,
            AxiomScheme::RightNeutrality { .. } => RIGHT_NEUTRALITY,
            AxiomScheme::Associativity { .. } => ASSOCIATIVITY,
            AxiomScheme::Commutativity { .. } => COMMUTATIVITY,
            AxiomScheme::Involutivity { .. } => INVOLUTIVITY,
            AxiomScheme::Antidistributivity { .. } => ANTIDISTRIBUTIVITY,
        }
    }

    fn roles(&self) -> Vec<(&str, usize)> {
        match self {
            AxiomScheme::LeftNeutrality { op, unit } | AxiomScheme::RightNeutrality { op, unit } => {
                vec![(op, 2), (unit, 0)]
            }
            AxiomScheme::Associativity { op } | AxiomScheme::Commutativity { op } => vec![(op, 2)],
            AxiomScheme::Involutivity { inv } => vec![(inv, 1)],
            AxiomScheme::Antidistributivity { op, inv } => vec![(op, 2), (inv, 1)],
        }
    }
}

/// Instantiates a scheme against `sig`, checking that the bound symbols
/// exist with the arity their role requires.
pub fn instantiate_scheme(sig: &Signature, scheme: &AxiomScheme) -> Result<Equation, TermError> {
    for (op, expected) in scheme.roles() {
        match sig.arity(op) {
            None => return Err(TermError::UnknownOp(op.to_owned())),
            Some(got) if got != expected => {
                return Err(TermError::ArityMismatch {
                    op: op.to_owned(),
                    expected,
                    got,
                })
            }
            Some(_) => {}
        }
    }
    let (x, y, z) = (Term::var(0), Term::var(1), Term::var(2));
    let bin = |op: &str, a: Term, b: Term| Term::app(op, vec![a, b]);
    let un = |op: &str, a: Term| Term::app(op, vec![a]);
    Ok(match scheme {
        AxiomScheme::LeftNeutrality { op, unit } => {
            Equation::new(1, bin(op, Term::constant(unit), x.clone()), x)
        }
        AxiomScheme::RightNeutrality { op, unit } => {
            Equation::new(1, bin(op, x.clone(), Term::constant(unit)), x)
        }
        AxiomScheme::Associativity { op } => Equation::new(
            3,
            bin(op, bin(op, x.clone(), y.clone()), z.clone()),
            bin(op, x, bin(op, y, z)),
        ),
        AxiomScheme::Commutativity { op } => {
            Equation::new(2, bin(op, x.clone(), y.clone()), bin(op, y, x))
        }
        AxiomScheme::Involutivity { inv } => Equation::new(1, un(inv, un(inv, x.clone())), x),
        AxiomScheme::Antidistributivity { op, inv } => Equation::new(
            2,
            un(inv, bin(op, x.clone(), y.clone())),
            bin(op, un(inv, y), un(inv, x)),
        ),
    })
}

fn from_schemes(sig: Signature, schemes: &[AxiomScheme]) -> Presentation {
    let axioms: Vec<_> = schemes
        .iter()
        .map(|s| {
            let eq = instantiate_scheme(&sig, s).expect("bundled scheme matches its signature");
            (s.default_name().to_owned(), eq)
        })
        .collect();
    Presentation::new(sig, axioms).expect("bundled presentation is well-formed")
}

pub fn monoid_signature() -> Signature {
    Signature::new()
        .with_op(MUL, 2)
        .and_then(|s| s.with_op(UNIT, 0))
        .expect("distinct ops")
}

pub fn involutive_signature() -> Signature {
    monoid_signature().with_op(INV, 1).expect("distinct ops")
}

fn monoid_schemes() -> Vec<AxiomScheme> {
    let (op, unit) = (MUL.to_owned(), UNIT.to_owned());
    vec![
        AxiomScheme::LeftNeutrality {
            op: op.clone(),
            unit: unit.clone(),
        },
        AxiomScheme::RightNeutrality {
            op: op.clone(),
            unit,
        },
        AxiomScheme::Associativity { op },
    ]
}

/// Monoids: neutrality on both sides and associativity.
pub fn monoid() -> Presentation {
    from_schemes(monoid_signature(), &monoid_schemes())
}

/// Commutative monoids: the monoid axioms plus commutativity.
pub fn commutative_monoid() -> Presentation {
    let mut schemes = monoid_schemes();
    schemes.push(AxiomScheme::Commutativity { op: MUL.into() });
    from_schemes(monoid_signature(), &schemes)
}

/// Involutive monoids: the monoid axioms plus involutivity and
/// antidistributivity of the involution over multiplication.
pub fn involutive_monoid() -> Presentation {
    let mut schemes = monoid_schemes();
    schemes.push(AxiomScheme::Involutivity { inv: INV.into() });
    schemes.push(AxiomScheme::Antidistributivity {
        op: MUL.into(),
        inv: INV.into(),
    });
    from_schemes(involutive_signature(), &schemes)
}

/// Looks up a bundled presentation by its CLI name.
pub fn by_name(name: &str) -> Option<Presentation> {
    match name {
        "monoid" => Some(monoid()),
        "cmonoid" => Some(commutative_monoid()),
        "invmonoid" => Some(involutive_monoid()),
        _ => None,
    }
}

#[derive(Serialize, Deserialize)]
struct OpRepr {
    name: String,
    arity: usize,
}

#[derive(Serialize, Deserialize)]
struct AxiomRepr {
    name: String,
    support: usize,
    lhs: Term,
    rhs: Term,
}

#[derive(Serialize, Deserialize)]
struct PresentationRepr {
    ops: Vec<OpRepr>,
    axioms: Vec<AxiomRepr>,
}

impl Serialize for Presentation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PresentationRepr {
            ops: self
                .signature
                .ops()
                .map(|(name, arity)| OpRepr {
                    name: name.to_owned(),
                    arity,
                })
                .collect(),
            axioms: self
                .axioms
                .iter()
                .map(|(name, eq)| AxiomRepr {
                    name: name.clone(),
                    support: eq.support,
                    lhs: eq.lhs.clone(),
                    rhs: eq.rhs.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = PresentationRepr::deserialize(deserializer)?;
        let mut sig = Signature::new();
        for op in &repr.ops {
            sig.add_op(&op.name, op.arity).map_err(D::Error::custom)?;
        }
        Presentation::new(
            sig,
            repr.axioms
                .into_iter()
                .map(|a| (a.name, Equation::new(a.support, a.lhs, a.rhs))),
        )
        .map_err(D::Error::custom)
    }
}
