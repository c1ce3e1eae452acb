//! Closure operations on programs sharing a variable order: union by direct
//! sum, intersection by tensor product, and accepting-set complement for
//! programs whose acceptance is exact.

use std::fmt;

use num_integer::Integer;

use crate::bits::VariableOrder;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::function::check_cap;
use crate::program::{Level, LeveledProgram, Semantics};
use crate::scalar::Scalar;
use crate::semantics::{Backend, Evaluator};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operation {
    Union,
    Intersection,
    Negation,
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operation::Union => "union",
            Operation::Intersection => "intersection",
            Operation::Negation => "negation",
        })
    }
}

/// Width accounting for one composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionRecord {
    pub operation: Operation,
    pub widths: Vec<usize>,
    pub result_width: usize,
    pub order: VariableOrder,
}

impl fmt::Display for CompositionRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let widths: Vec<String> = self.widths.iter().map(ToString::to_string).collect();
        write!(f, "{}: widths {} -> {}", self.operation, widths.join(", "), self.result_width)
    }
}

/// Retags a program under a semantics that contains it: reversible programs
/// are unitary, and deterministic (including reversible) programs are
/// nondeterministic.
pub fn lift(p: &LeveledProgram, target: Semantics) -> Result<LeveledProgram> {
    use Semantics::*;
    let ok = p.semantics() == target
        || matches!(
            (p.semantics(), target),
            (Reversible, Unitary) | (Reversible, Deterministic) | (Reversible, Nondeterministic) | (Deterministic, Nondeterministic)
        );
    if ok {
        Ok(p.retagged(target))
    } else {
        Err(Error::SemanticsMismatch(format!("cannot lift {} to {target}", p.semantics())))
    }
}

fn check_orders(p: &LeveledProgram, q: &LeveledProgram) -> Result<()> {
    if p.order() != q.order() {
        return Err(Error::OrderMismatch);
    }
    Ok(())
}

fn unitary_family(s: Semantics) -> bool {
    matches!(s, Semantics::Unitary | Semantics::Reversible)
}

fn deterministic_family(s: Semantics) -> bool {
    matches!(s, Semantics::Deterministic | Semantics::Reversible)
}

fn nondeterministic_family(s: Semantics) -> bool {
    deterministic_family(s) || s == Semantics::Nondeterministic
}

fn mismatch(p: &LeveledProgram, q: &LeveledProgram) -> Error {
    Error::SemanticsMismatch(format!(
        "operands are {} and {}; both must be unitary or both nondeterministic",
        p.semantics(),
        q.semantics()
    ))
}

fn combine(
    p: &LeveledProgram,
    q: &LeveledProgram,
    semantics: Semantics,
    matrix: impl Fn(&crate::matrix::Matrix, &crate::matrix::Matrix) -> crate::matrix::Matrix,
    initial: Vec<Scalar>,
    accepting: Vec<usize>,
) -> Result<LeveledProgram> {
    let levels = p
        .levels()
        .iter()
        .zip(q.levels())
        .map(|(a, b)| Level { var: a.var, on0: matrix(&a.on0, &b.on0), on1: matrix(&a.on1, &b.on1) })
        .collect();
    LeveledProgram::new(semantics, p.order().clone(), levels, initial, accepting)
}

/// Direct-sum union with its width record.
pub fn union_recorded(p: &LeveledProgram, q: &LeveledProgram) -> Result<(LeveledProgram, CompositionRecord)> {
    check_orders(p, q)?;
    let (c, d) = (p.width(), q.width());
    let (semantics, initial) = if unitary_family(p.semantics()) && unitary_family(q.semantics()) {
        let w = Scalar::inv_sqrt2();
        (Semantics::Unitary, p.initial().iter().chain(q.initial()).map(|x| x * &w).collect())
    } else if nondeterministic_family(p.semantics()) && nondeterministic_family(q.semantics()) {
        (Semantics::Nondeterministic, p.initial().iter().chain(q.initial()).cloned().collect())
    } else {
        return Err(mismatch(p, q));
    };
    let accepting = p.accepting().iter().copied().chain(q.accepting().iter().map(|&j| j + c)).collect();
    let program = combine(p, q, semantics, |a, b| a.direct_sum(b), initial, accepting)?;
    let record = CompositionRecord {
        operation: Operation::Union,
        widths: vec![c, d],
        result_width: program.width(),
        order: p.order().clone(),
    };
    Ok((program, record))
}

/// Program accepting (with nonzero probability) exactly when either operand does.
pub fn union(p: &LeveledProgram, q: &LeveledProgram) -> Result<LeveledProgram> {
    union_recorded(p, q).map(|(program, _)| program)
}

/// Tensor-product intersection with its width record. State `(i, j)` has
/// index `i * width(q) + j`.
pub fn intersection_recorded(p: &LeveledProgram, q: &LeveledProgram) -> Result<(LeveledProgram, CompositionRecord)> {
    check_orders(p, q)?;
    let (ps, qs) = (p.semantics(), q.semantics());
    let semantics = if ps == Semantics::Reversible && qs == Semantics::Reversible {
        Semantics::Reversible
    } else if unitary_family(ps) && unitary_family(qs) {
        Semantics::Unitary
    } else if deterministic_family(ps) && deterministic_family(qs) {
        Semantics::Deterministic
    } else if nondeterministic_family(ps) && nondeterministic_family(qs) {
        Semantics::Nondeterministic
    } else {
        return Err(mismatch(p, q));
    };
    let (c, d) = (p.width(), q.width());
    let initial = p.initial().iter().flat_map(|x| q.initial().iter().map(move |y| x * y)).collect();
    let accepting = p.accepting().iter().flat_map(|&i| q.accepting().iter().map(move |&j| i * d + j)).collect();
    let program = combine(p, q, semantics, |a, b| a.kron(b), initial, accepting)?;
    let record = CompositionRecord {
        operation: Operation::Intersection,
        widths: vec![c, d],
        result_width: program.width(),
        order: p.order().clone(),
    };
    Ok((program, record))
}

/// Program whose acceptance probability is the product of the operands'.
pub fn intersection(p: &LeveledProgram, q: &LeveledProgram) -> Result<LeveledProgram> {
    intersection_recorded(p, q).map(|(program, _)| program)
}

/// Same machine with the accepting set complemented.
///
/// Only a negation of the computed function when acceptance is exact:
/// deterministic and reversible programs always qualify; unitary and
/// probabilistic programs qualify after every input is checked to have
/// probability 0 or 1. Nondeterministic programs are refused.
pub fn complement_accepting(p: &LeveledProgram) -> Result<LeveledProgram> {
    match p.semantics() {
        Semantics::Deterministic | Semantics::Reversible => {}
        Semantics::Nondeterministic => {
            return Err(Error::Refused(
                "complementing the accepting set of a nondeterministic program does not negate its function".into(),
            ))
        }
        Semantics::Unitary | Semantics::Probabilistic => {
            check_cap(p.n())?;
            let ev = Evaluator::new(p, Backend::Exact)?;
            let witness = exec::find_first(Exec::Parallel, 0..1u64 << p.n(), |i| {
                let prob = ev.probability_index(i);
                (!prob.is_zero() && !prob.is_one()).then_some((i, prob))
            });
            if let Some((i, prob)) = witness {
                return Err(Error::Refused(format!(
                    "program is not exact: input {} has acceptance probability {prob}",
                    crate::bits::BitString::from_index(i, p.n())
                )));
            }
        }
    }
    Ok(p.with_complemented_accepting())
}

/// Modulus of `MOD^c_n AND MOD^d_n`, which is `MOD^l_n` with `l = lcm(c, d)`.
pub fn mod_intersection_modulus(c: usize, d: usize) -> usize {
    c.lcm(&d)
}
