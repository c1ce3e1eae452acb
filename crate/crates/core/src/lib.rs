//! Ordered binary decision diagrams under deterministic, nondeterministic,
//! probabilistic and unitary semantics, with exact arithmetic for
//! threshold-0 acceptance and executable width lower bounds.

pub mod angle;
pub mod bits;
pub mod bounds;
pub mod compose;
pub mod constructions;
mod cyclotomic;
pub mod error;
pub mod exec;
pub mod function;
pub mod matrix;
pub mod program;
pub mod scalar;
pub mod semantics;

pub use angle::Angle;
pub use bits::{BitString, VariableOrder};
pub use error::{Error, Result};
pub use exec::Exec;
pub use function::{BooleanFunction, Family, SubfunctionRestriction, TruthTable};
pub use matrix::Matrix;
pub use program::{Level, LeveledProgram, Semantics};
pub use scalar::Scalar;
pub use semantics::{
    accepts_nondeterministically, acceptance_probability, computes_function, run, validate, Backend, Evaluator,
    Mode, Probability, Verdict, Violation,
};
