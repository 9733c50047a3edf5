//! The bundled algebras and the name registry certificates refer to.
//!
//! Arithmetic on naturals wraps at 2^64, so every bundled numeric algebra is
//! an exact model of its presentation.

use std::sync::Arc;

use rand::{Rng, RngCore};

use crate::algebra::{Algebra, AlgebraError};
use crate::presentation::{
    commutative_monoid, involutive_monoid, involutive_signature, monoid, monoid_signature,
    Presentation, INV, MUL, UNIT,
};
use crate::term::{Signature, TermError};
use crate::value::Value;

fn unknown(op: &str) -> AlgebraError {
    TermError::UnknownOp(op.to_owned()).into()
}

/// ℕ under addition.
#[derive(Debug, Clone)]
pub struct NatAdd {
    sig: Signature,
}

/// ℕ under multiplication.
#[derive(Debug, Clone)]
pub struct NatMul {
    sig: Signature,
}

/// Lists of naturals under concatenation, with reversal as involution.
#[derive(Debug, Clone)]
pub struct ListConcat {
    sig: Signature,
}

/// Strings under concatenation, with reversal as involution.
#[derive(Debug, Clone)]
pub struct StringRev {
    sig: Signature,
}

/// 2×2 matrices over ℕ under multiplication.
#[derive(Debug, Clone)]
pub struct Mat2Mul {
    sig: Signature,
}

/// The one-point algebra: initial for every variety of monoids.
#[derive(Debug, Clone)]
pub struct Trivial {
    sig: Signature,
}

impl Default for NatAdd {
    fn default() -> Self {
        NatAdd {
            sig: monoid_signature(),
        }
    }
}

impl Default for NatMul {
    fn default() -> Self {
        NatMul {
            sig: monoid_signature(),
        }
    }
}

impl Default for ListConcat {
    fn default() -> Self {
        ListConcat {
            sig: involutive_signature(),
        }
    }
}

impl Default for StringRev {
    fn default() -> Self {
        StringRev {
            sig: involutive_signature(),
        }
    }
}

impl Default for Mat2Mul {
    fn default() -> Self {
        Mat2Mul {
            sig: monoid_signature(),
        }
    }
}

impl Default for Trivial {
    fn default() -> Self {
        Trivial {
            sig: involutive_signature(),
        }
    }
}

fn nat(v: &Value) -> u64 {
    v.as_nat().expect("checked carrier element")
}

impl Algebra for NatAdd {
    fn name(&self) -> &str {
        "nat-add"
    }
    fn signature(&self) -> &Signature {
        &self.sig
    }
    fn presentation(&self) -> Presentation {
        commutative_monoid()
    }
    fn contains(&self, v: &Value) -> bool {
        matches!(v, Value::Nat(_))
    }
    fn apply(&self, op: &str, args: &[Value]) -> Result<Value, AlgebraError> {
        match op {
            MUL => Ok(Value::Nat(nat(&args[0]).wrapping_add(nat(&args[1])))),
            UNIT => Ok(Value::Nat(0)),
            _ => Err(unknown(op)),
        }
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Value {
        if rng.gen_bool(0.05) {
            Value::Nat(rng.gen())
        } else {
            Value::Nat(rng.gen_range(0..1000))
        }
    }
    fn mul_symbol(&self) -> &str {
        "+"
    }
}

impl Algebra for NatMul {
    fn name(&self) -> &str {
        "nat-mul"
    }
    fn signature(&self) -> &Signature {
        &self.sig
    }
    fn presentation(&self) -> Presentation {
        commutative_monoid()
    }
    fn contains(&self, v: &Value) -> bool {
        matches!(v, Value::Nat(_))
    }
    fn apply(&self, op: &str, args: &[Value]) -> Result<Value, AlgebraError> {
        match op {
            MUL => Ok(Value::Nat(nat(&args[0]).wrapping_mul(nat(&args[1])))),
            UNIT => Ok(Value::Nat(1)),
            _ => Err(unknown(op)),
        }
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Value {
        if rng.gen_bool(0.05) {
            Value::Nat(rng.gen())
        } else {
            Value::Nat(rng.gen_range(0..50))
        }
    }
    fn mul_symbol(&self) -> &str {
        "*"
    }
}

impl Algebra for ListConcat {
    fn name(&self) -> &str {
        "list"
    }
    fn signature(&self) -> &Signature {
        &self.sig
    }
    fn presentation(&self) -> Presentation {
        involutive_monoid()
    }
    fn contains(&self, v: &Value) -> bool {
        v.as_seq()
            .is_some_and(|items| items.iter().all(|i| matches!(i, Value::Nat(_))))
    }
    fn apply(&self, op: &str, args: &[Value]) -> Result<Value, AlgebraError> {
        let seq = |v: &Value| v.as_seq().expect("checked carrier element").to_vec();
        match op {
            MUL => {
                let mut out = seq(&args[0]);
                out.extend(seq(&args[1]));
                Ok(Value::Seq(out))
            }
            UNIT => Ok(Value::Seq(Vec::new())),
            INV => {
                let mut out = seq(&args[0]);
                out.reverse();
                Ok(Value::Seq(out))
            }
            _ => Err(unknown(op)),
        }
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Value {
        let len = rng.gen_range(0..5);
        Value::Seq((0..len).map(|_| Value::Nat(rng.gen_range(0..6))).collect())
    }
}

impl Algebra for StringRev {
    fn name(&self) -> &str {
        "string"
    }
    fn signature(&self) -> &Signature {
        &self.sig
    }
    fn presentation(&self) -> Presentation {
        involutive_monoid()
    }
    fn contains(&self, v: &Value) -> bool {
        matches!(v, Value::Str(_))
    }
    fn apply(&self, op: &str, args: &[Value]) -> Result<Value, AlgebraError> {
        let s = |v: &Value| v.as_str().expect("checked carrier element").to_owned();
        match op {
            MUL => Ok(Value::Str(s(&args[0]) + &s(&args[1]))),
            UNIT => Ok(Value::Str(String::new())),
            INV => Ok(Value::Str(s(&args[0]).chars().rev().collect())),
            _ => Err(unknown(op)),
        }
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Value {
        let len = rng.gen_range(0..5);
        Value::Str(
            (0..len)
                .map(|_| ['a', 'b', 'c'][rng.gen_range(0..3)])
                .collect(),
        )
    }
}

fn matrix(v: &Value) -> Option<[[u64; 2]; 2]> {
    let rows = v.as_seq()?;
    if rows.len() != 2 {
        return None;
    }
    let mut m = [[0; 2]; 2];
    for (i, row) in rows.iter().enumerate() {
        let cells = row.as_seq()?;
        if cells.len() != 2 {
            return None;
        }
        for (j, c) in cells.iter().enumerate() {
            m[i][j] = c.as_nat()?;
        }
    }
    Some(m)
}

fn matrix_value(m: [[u64; 2]; 2]) -> Value {
    Value::Seq(
        m.iter()
            .map(|row| Value::Seq(row.iter().map(|&c| Value::Nat(c)).collect()))
            .collect(),
    )
}

impl Algebra for Mat2Mul {
    fn name(&self) -> &str {
        "mat2"
    }
    fn signature(&self) -> &Signature {
        &self.sig
    }
    fn presentation(&self) -> Presentation {
        monoid()
    }
    fn contains(&self, v: &Value) -> bool {
        matrix(v).is_some()
    }
    fn apply(&self, op: &str, args: &[Value]) -> Result<Value, AlgebraError> {
        match op {
            MUL => {
                let a = matrix(&args[0]).expect("checked carrier element");
                let b = matrix(&args[1]).expect("checked carrier element");
                let mut c = [[0u64; 2]; 2];
                for i in 0..2 {
                    for j in 0..2 {
                        c[i][j] = a[i][0]
                            .wrapping_mul(b[0][j])
                            .wrapping_add(a[i][1].wrapping_mul(b[1][j]));
                    }
                }
                Ok(matrix_value(c))
            }
            UNIT => Ok(matrix_value([[1, 0], [0, 1]])),
            _ => Err(unknown(op)),
        }
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Value {
        let mut m = [[0; 2]; 2];
        for row in &mut m {
            for c in row.iter_mut() {
                *c = rng.gen_range(0..4);
            }
        }
        matrix_value(m)
    }
}

impl Algebra for Trivial {
    fn name(&self) -> &str {
        "trivial"
    }
    fn signature(&self) -> &Signature {
        &self.sig
    }
    fn presentation(&self) -> Presentation {
        involutive_monoid()
    }
    fn contains(&self, v: &Value) -> bool {
        matches!(v, Value::Unit)
    }
    fn apply(&self, op: &str, _args: &[Value]) -> Result<Value, AlgebraError> {
        match op {
            MUL | UNIT | INV => Ok(Value::Unit),
            _ => Err(unknown(op)),
        }
    }
    fn sample(&self, _rng: &mut dyn RngCore) -> Value {
        Value::Unit
    }
}

/// Every bundled algebra, in registry order.
pub fn bundled() -> Vec<Arc<dyn Algebra>> {
    vec![
        Arc::new(NatAdd::default()),
        Arc::new(NatMul::default()),
        Arc::new(ListConcat::default()),
        Arc::new(StringRev::default()),
        Arc::new(Mat2Mul::default()),
        Arc::new(Trivial::default()),
    ]
}

/// Registry lookup by name, as used by certificates and the CLI.
pub fn by_name(name: &str) -> Option<Arc<dyn Algebra>> {
    bundled().into_iter().find(|a| a.name() == name)
}
