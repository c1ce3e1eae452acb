use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::VariableOrder;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Deterministic,
    /// Deterministic with permutation transitions.
    Reversible,
    /// Reachable-set semantics; accepts iff some path ends in an accepting state.
    Nondeterministic,
    Probabilistic,
    Unitary,
}

impl Semantics {
    /// Unitary and reversible programs share the norm-preserving evaluation.
    pub fn is_unitary_family(self) -> bool {
        matches!(self, Semantics::Unitary | Semantics::Reversible)
    }

    pub fn is_nondeterministic_family(self) -> bool {
        matches!(self, Semantics::Nondeterministic | Semantics::Deterministic)
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Semantics::Deterministic => "deterministic",
            Semantics::Reversible => "reversible",
            Semantics::Nondeterministic => "nondeterministic",
            Semantics::Probabilistic => "probabilistic",
            Semantics::Unitary => "unitary",
        };
        f.write_str(s)
    }
}

/// One instruction: test variable `var` (1-based) and apply `on0` or `on1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Level {
    pub var: usize,
    pub on0: Matrix,
    pub on1: Matrix,
}

impl Level {
    pub fn matrix(&self, bit: bool) -> &Matrix {
        if bit {
            &self.on1
        } else {
            &self.on0
        }
    }
}

/// A width-`d` leveled program over `n` variables read in a fixed order.
///
/// Construction only checks the shape (level count, dimensions, order,
/// accepting indices); semantic constraints are reported by
/// [`crate::semantics::validate`].
#[derive(Clone, Debug, PartialEq)]
pub struct LeveledProgram {
    semantics: Semantics,
    order: VariableOrder,
    levels: Vec<Level>,
    initial: Vec<Scalar>,
    accepting: Vec<usize>,
}

impl LeveledProgram {
    pub fn new(
        semantics: Semantics,
        order: VariableOrder,
        levels: Vec<Level>,
        initial: Vec<Scalar>,
        mut accepting: Vec<usize>,
    ) -> Result<Self> {
        let d = initial.len();
        if d == 0 {
            return Err(Error::InvalidProgram("width must be at least 1".into()));
        }
        if levels.len() != order.len() {
            return Err(Error::InvalidProgram(format!(
                "{} levels for {} variables",
                levels.len(),
                order.len()
            )));
        }
        for (j, level) in levels.iter().enumerate() {
            if level.var != order.var_at(j + 1) {
                return Err(Error::InvalidProgram(format!(
                    "level {} tests x{} but the order lists x{}",
                    j + 1,
                    level.var,
                    order.var_at(j + 1)
                )));
            }
            for m in [&level.on0, &level.on1] {
                if m.dim() != d {
                    return Err(Error::InvalidProgram(format!(
                        "level {} has a {}x{} matrix, width is {d}",
                        j + 1,
                        m.dim(),
                        m.dim()
                    )));
                }
                if let Matrix::Map(t) = m {
                    if t.iter().any(|&r| r >= d) {
                        return Err(Error::InvalidProgram(format!("level {} maps outside the state set", j + 1)));
                    }
                }
            }
        }
        accepting.sort_unstable();
        accepting.dedup();
        if accepting.iter().any(|&q| q >= d) {
            return Err(Error::InvalidProgram("accepting state out of range".into()));
        }
        Ok(Self { semantics, order, levels, initial, accepting })
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    pub fn width(&self) -> usize {
        self.initial.len()
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &VariableOrder {
        &self.order
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn initial(&self) -> &[Scalar] {
        &self.initial
    }

    pub fn accepting(&self) -> &[usize] {
        &self.accepting
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting.binary_search(&q).is_ok()
    }

    /// Same machine under another semantics tag (no re-validation).
    pub fn retagged(&self, semantics: Semantics) -> LeveledProgram {
        LeveledProgram { semantics, ..self.clone() }
    }

    /// Same machine with the accepting set replaced by its complement.
    pub(crate) fn with_complemented_accepting(&self) -> LeveledProgram {
        let accepting = (0..self.width()).filter(|q| !self.is_accepting(*q)).collect();
        LeveledProgram { accepting, ..self.clone() }
    }
}
