//! Running programs: state evolution, acceptance probability, threshold-0
//! acceptance and exhaustive comparison against a Boolean function.
//!
//! Evaluation picks the cheapest exact kernel that fits the program:
//! basis-state tracking for 0-1 maps, angle tracking for width-2 rotation
//! machines, reachable sets for nondeterministic programs, and general
//! exact vectors otherwise. A float backend is available for exploration;
//! its answers are flagged as uncertified.

use std::fmt;

use num_rational::Ratio;

use crate::angle::Angle;
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::function::{check_cap, BooleanFunction};
use crate::matrix::Matrix;
use crate::program::{LeveledProgram, Semantics};
use crate::scalar::Scalar;

/// Threshold for the float backend: accepted iff probability exceeds it.
pub const FLOAT_EPSILON: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Backend {
    #[default]
    Exact,
    Float,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NonUnitaryLevel { level: usize, bit: bool },
    NonPermutationLevel { level: usize, bit: bool },
    NonStochasticLevel { level: usize, bit: bool },
    NonFunctionalLevel { level: usize, bit: bool },
    NonBooleanLevel { level: usize, bit: bool },
    InitialNotUnitNorm,
    InitialNotDistribution,
    InitialNotBasisVector,
    InitialNotReachableSet,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = |f: &mut fmt::Formatter<'_>, what: &str, level: usize, bit: bool| {
            write!(f, "{what} level {level} (on {})", u8::from(bit))
        };
        match *self {
            Violation::NonUnitaryLevel { level: l, bit } => level(f, "non-unitary", l, bit),
            Violation::NonPermutationLevel { level: l, bit } => level(f, "non-permutation", l, bit),
            Violation::NonStochasticLevel { level: l, bit } => level(f, "non-stochastic", l, bit),
            Violation::NonFunctionalLevel { level: l, bit } => level(f, "non-deterministic", l, bit),
            Violation::NonBooleanLevel { level: l, bit } => level(f, "non-0-1", l, bit),
            Violation::InitialNotUnitNorm => f.write_str("initial state does not have norm 1"),
            Violation::InitialNotDistribution => f.write_str("initial state is not a probability distribution"),
            Violation::InitialNotBasisVector => f.write_str("initial state is not a standard basis vector"),
            Violation::InitialNotReachableSet => f.write_str("initial state is not a nonempty 0-1 vector"),
        }
    }
}

fn is_bit(s: &Scalar) -> Option<bool> {
    if s.is_zero() {
        Some(false)
    } else if s.is_one() {
        Some(true)
    } else {
        None
    }
}

fn is_stochastic(m: &Matrix) -> bool {
    if m.as_map().is_some() {
        return true;
    }
    let rows = m.rows();
    let d = rows.len();
    (0..d).all(|c| {
        rows.iter().all(|r| r[c].sign() != std::cmp::Ordering::Less)
            && rows.iter().map(|r| r[c].clone()).sum::<Scalar>().is_one()
    })
}

/// Semantics-specific checks on every level matrix and the initial state,
/// all decided exactly. An empty list means the program is valid.
pub fn validate(p: &LeveledProgram) -> Vec<Violation> {
    let mut out = Vec::new();
    let s = p.semantics();
    for (j, level) in p.levels().iter().enumerate() {
        for bit in [false, true] {
            let m = level.matrix(bit);
            let l = j + 1;
            let violation = match s {
                Semantics::Unitary => {
                    let ok = matches!(m, Matrix::Rotation(_)) || m.is_orthogonal();
                    (!ok).then_some(Violation::NonUnitaryLevel { level: l, bit })
                }
                Semantics::Reversible => {
                    (!m.is_permutation()).then_some(Violation::NonPermutationLevel { level: l, bit })
                }
                Semantics::Deterministic => {
                    m.as_map().is_none().then_some(Violation::NonFunctionalLevel { level: l, bit })
                }
                Semantics::Nondeterministic => {
                    m.zero_one().is_none().then_some(Violation::NonBooleanLevel { level: l, bit })
                }
                Semantics::Probabilistic => {
                    (!is_stochastic(m)).then_some(Violation::NonStochasticLevel { level: l, bit })
                }
            };
            out.extend(violation);
        }
    }
    let init = p.initial();
    let initial_ok = match s {
        Semantics::Unitary => init.iter().map(Scalar::square).sum::<Scalar>().is_one(),
        Semantics::Probabilistic => {
            init.iter().all(|x| x.sign() != std::cmp::Ordering::Less) && init.iter().cloned().sum::<Scalar>().is_one()
        }
        Semantics::Deterministic | Semantics::Reversible => basis_index(init).is_some(),
        Semantics::Nondeterministic => {
            let bits: Option<Vec<bool>> = init.iter().map(is_bit).collect();
            bits.is_some_and(|b| b.contains(&true))
        }
    };
    if !initial_ok {
        out.push(match s {
            Semantics::Unitary => Violation::InitialNotUnitNorm,
            Semantics::Probabilistic => Violation::InitialNotDistribution,
            Semantics::Deterministic | Semantics::Reversible => Violation::InitialNotBasisVector,
            Semantics::Nondeterministic => Violation::InitialNotReachableSet,
        });
    }
    out
}

fn basis_index(v: &[Scalar]) -> Option<usize> {
    let mut hit = None;
    for (i, x) in v.iter().enumerate() {
        match is_bit(x)? {
            true if hit.is_some() => return None,
            true => hit = Some(i),
            false => {}
        }
    }
    hit
}

/// Exact or float acceptance probability.
///
/// Nondeterministic programs report the indicator 0 or 1.
#[derive(Clone, Debug, PartialEq)]
pub enum Probability {
    Exact(Scalar),
    /// `sin^2` of an angle in `(0, pi/2]` whose value is irrational.
    SinSquared(Angle),
    Float(f64),
}

impl Probability {
    fn indicator(b: bool) -> Probability {
        Probability::Exact(Scalar::from_integer(i64::from(b)))
    }

    /// `sin^2(theta)`, kept symbolic unless the value is rational.
    pub fn sin_squared(theta: Angle) -> Probability {
        let value = (Scalar::one() - Scalar::cos(theta.scale(2))).scale(&num_rational::BigRational::new(1.into(), 2.into()));
        if value.is_rational() {
            return Probability::Exact(value);
        }
        let q = theta.mod_pi();
        let q = if q > Ratio::new(1, 2) { Ratio::from_integer(1) - q } else { q };
        Probability::SinSquared(Angle::from_ratio(q))
    }

    pub fn is_certified(&self) -> bool {
        !matches!(self, Probability::Float(_))
    }

    /// Exactly zero (float: at most [`FLOAT_EPSILON`]).
    pub fn is_zero(&self) -> bool {
        match self {
            Probability::Exact(s) => s.is_zero(),
            Probability::SinSquared(_) => false,
            Probability::Float(x) => *x <= FLOAT_EPSILON,
        }
    }

    /// Exactly one (float: within [`FLOAT_EPSILON`]).
    pub fn is_one(&self) -> bool {
        match self {
            Probability::Exact(s) => s.is_one(),
            Probability::SinSquared(_) => false,
            Probability::Float(x) => (x - 1.0).abs() <= FLOAT_EPSILON,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Probability::Exact(s) => s.to_f64(),
            Probability::SinSquared(a) => a.to_radians().sin().powi(2),
            Probability::Float(x) => *x,
        }
    }

    /// The exact value as a scalar, if exact.
    pub fn to_scalar(&self) -> Option<Scalar> {
        match self {
            Probability::Exact(s) => Some(s.clone()),
            Probability::SinSquared(a) => {
                let half = num_rational::BigRational::new(1.into(), 2.into());
                Some((Scalar::one() - Scalar::cos(a.scale(2))).scale(&half))
            }
            Probability::Float(_) => None,
        }
    }

    /// Exact value comparison; `false` if either side is a float.
    pub fn exact_eq(&self, other: &Probability) -> bool {
        match (self.to_scalar(), other.to_scalar()) {
            (Some(a), Some(b)) => a.exact_eq(&b),
            _ => false,
        }
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Probability::Exact(s) => write!(f, "{s}"),
            Probability::SinSquared(a) => write!(f, "sin^2({a})"),
            Probability::Float(x) => write!(f, "{x:.12}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StateVector {
    Exact(Vec<Scalar>),
    Float(Vec<f64>),
}

impl StateVector {
    pub fn len(&self) -> usize {
        match self {
            StateVector::Exact(v) => v.len(),
            StateVector::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// States `psi^0 .. psi^n` of one run and the final acceptance probability.
#[derive(Clone, Debug, PartialEq)]
pub struct RunTrace {
    pub semantics: Semantics,
    pub states: Vec<StateVector>,
    pub probability: Probability,
}

/// Threshold-0 verdict; `certified` is false for float answers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub accepted: bool,
    pub certified: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Probability nonzero exactly on `f^{-1}(1)`.
    Nondeterministic,
    /// Probability is 0 or 1 and equals `f`.
    Exact,
    /// As `Exact`, for a deterministic or reversible program.
    Deterministic,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Nondeterministic => "nondeterministic",
            Mode::Exact => "exact",
            Mode::Deterministic => "deterministic",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub input: BitString,
    pub expected: bool,
    pub probability: Probability,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "input {}: f = {} but acceptance probability is {}",
            self.input,
            u8::from(self.expected),
            self.probability
        )
    }
}

/// Outcome of an exhaustive [`computes_function`] check.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionReport {
    pub mode: Mode,
    pub function: String,
    pub inputs_checked: u64,
    pub counterexample: Option<Counterexample>,
    pub certified: bool,
}

impl FunctionReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    pub backend: Backend,
    pub exec: Exec,
}

enum Kernel {
    /// Single basis state moved by 0-1 maps.
    Basis { start: usize, maps: Vec<[Vec<usize>; 2]>, accepting: Vec<bool> },
    /// Width-2 unit vector at angle `start`, rotated per level.
    Polar { start: Angle, steps: Vec<[Angle; 2]>, accept: PolarAccept },
    /// Reachable set under OR-AND matrix action.
    Reach { start: Vec<bool>, succ: Vec<[Vec<Vec<usize>>; 2]>, accepting: Vec<bool> },
    Dense,
    Float { init: Vec<f64>, mats: Vec<[Vec<Vec<f64>>; 2]> },
}

#[derive(Clone, Copy)]
enum PolarAccept {
    None,
    All,
    /// `sin^2(theta + offset)`.
    Shifted(Angle),
}

/// Recognises `(cos t, sin t)` among the angles that occur in the entries.
pub(crate) fn polar_angle(v: &[Scalar]) -> Option<Angle> {
    if v.len() != 2 {
        return None;
    }
    let mut candidates: Vec<Ratio<i64>> = vec![Ratio::from_integer(0), Ratio::new(1, 2), Ratio::from_integer(1), Ratio::new(3, 2)];
    for (q, _) in v.iter().flat_map(Scalar::terms) {
        for base in [*q, -*q] {
            for shift in [Ratio::from_integer(0), Ratio::new(1, 2), Ratio::from_integer(1), Ratio::new(3, 2)] {
                candidates.push(base + shift);
            }
        }
    }
    candidates.into_iter().map(Angle::from_ratio).find(|&t| Scalar::cos(t) == v[0] && Scalar::sin(t) == v[1])
}

fn rotation_angle(m: &Matrix) -> Option<Angle> {
    match m {
        Matrix::Rotation(a) => Some(*a),
        Matrix::Map(t) if t == &[0, 1] => Some(Angle::ZERO),
        _ => None,
    }
}

/// A program compiled for repeated evaluation.
pub struct Evaluator {
    program: LeveledProgram,
    backend: Backend,
    kernel: Kernel,
}

impl Evaluator {
    /// Fails if the program does not pass [`validate`].
    pub fn new(program: &LeveledProgram, backend: Backend) -> Result<Evaluator> {
        if let Some(v) = validate(program).first() {
            return Err(Error::InvalidProgram(v.to_string()));
        }
        let kernel = Self::select_kernel(program, backend);
        Ok(Evaluator { program: program.clone(), backend, kernel })
    }

    fn select_kernel(p: &LeveledProgram, backend: Backend) -> Kernel {
        let d = p.width();
        let accepting: Vec<bool> = (0..d).map(|q| p.is_accepting(q)).collect();
        if backend == Backend::Float {
            let init = p.initial().iter().map(Scalar::to_f64).collect();
            let mats = p.levels().iter().map(|l| [l.on0.to_f64(), l.on1.to_f64()]).collect();
            return Kernel::Float { init, mats };
        }
        if p.semantics() == Semantics::Nondeterministic {
            let start = p.initial().iter().map(|x| !x.is_zero()).collect();
            let succ = p
                .levels()
                .iter()
                .map(|l| {
                    [&l.on0, &l.on1].map(|m| {
                        let pattern = m.zero_one().expect("validated 0-1 matrix");
                        (0..d).map(|c| (0..d).filter(|&r| pattern[r][c]).collect()).collect()
                    })
                })
                .collect();
            return Kernel::Reach { start, succ, accepting };
        }
        if let Some(start) = basis_index(p.initial()) {
            let maps: Option<Vec<[Vec<usize>; 2]>> =
                p.levels().iter().map(|l| Some([l.on0.as_map()?, l.on1.as_map()?])).collect();
            if let Some(maps) = maps {
                return Kernel::Basis { start, maps, accepting };
            }
        }
        if p.semantics() == Semantics::Unitary && d == 2 {
            let steps: Option<Vec<[Angle; 2]>> = p
                .levels()
                .iter()
                .map(|l| Some([rotation_angle(&l.on0)?, rotation_angle(&l.on1)?]))
                .collect();
            if let (Some(steps), Some(start)) = (steps, polar_angle(p.initial())) {
                let accept = match (accepting[0], accepting[1]) {
                    (false, false) => PolarAccept::None,
                    (true, true) => PolarAccept::All,
                    (false, true) => PolarAccept::Shifted(Angle::ZERO),
                    (true, false) => PolarAccept::Shifted(Angle::pi_frac(1, 2)),
                };
                return Kernel::Polar { start, steps, accept };
            }
        }
        Kernel::Dense
    }

    pub fn program(&self) -> &LeveledProgram {
        &self.program
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    fn bit(&self, index: u64, level: usize) -> usize {
        let n = self.program.n();
        let var = self.program.order().var_at(level + 1);
        ((index >> (n - var)) & 1) as usize
    }

    /// Final rotation angle, for width-2 rotation machines.
    pub fn final_angle(&self, index: u64) -> Option<Angle> {
        match &self.kernel {
            Kernel::Polar { start, steps, .. } => {
                Some(steps.iter().enumerate().fold(*start, |a, (j, s)| a + s[self.bit(index, j)]))
            }
            _ => None,
        }
    }

    fn exact_states(&self, index: u64) -> Vec<Vec<Scalar>> {
        let p = &self.program;
        let mut v = p.initial().to_vec();
        let mut states = vec![v.clone()];
        for (j, level) in p.levels().iter().enumerate() {
            let m = level.matrix(self.bit(index, j) == 1);
            v = if p.semantics() == Semantics::Nondeterministic {
                let pattern = m.zero_one().expect("validated 0-1 matrix");
                let on: Vec<bool> = v.iter().map(|x| !x.is_zero()).collect();
                (0..v.len())
                    .map(|r| Scalar::from_integer(i64::from((0..v.len()).any(|c| on[c] && pattern[r][c]))))
                    .collect()
            } else {
                m.apply(&v)
            };
            states.push(v.clone());
        }
        states
    }

    fn float_states(&self, index: u64) -> Vec<Vec<f64>> {
        let Kernel::Float { init, mats } = &self.kernel else {
            unreachable!("float states on exact kernel")
        };
        let nondet = self.program.semantics() == Semantics::Nondeterministic;
        let mut v = init.clone();
        let mut states = vec![v.clone()];
        for (j, pair) in mats.iter().enumerate() {
            let m = &pair[self.bit(index, j)];
            v = m
                .iter()
                .map(|row| {
                    let x: f64 = row.iter().zip(&v).map(|(a, b)| a * b).sum();
                    if nondet {
                        f64::from(u8::from(x > FLOAT_EPSILON))
                    } else {
                        x
                    }
                })
                .collect();
            states.push(v.clone());
        }
        states
    }

    fn final_probability(&self, last: &[Scalar]) -> Scalar {
        let p = &self.program;
        let acc = last.iter().enumerate().filter(|(q, _)| p.is_accepting(*q)).map(|(_, x)| x);
        if p.semantics().is_unitary_family() {
            acc.map(Scalar::square).sum()
        } else {
            acc.cloned().sum()
        }
    }

    fn float_probability(&self, last: &[f64]) -> f64 {
        let p = &self.program;
        let acc = last.iter().enumerate().filter(|(q, _)| p.is_accepting(*q)).map(|(_, x)| *x);
        match p.semantics() {
            Semantics::Unitary | Semantics::Reversible => acc.map(|x| x * x).sum(),
            Semantics::Nondeterministic => f64::from(u8::from(acc.sum::<f64>() > 0.0)),
            _ => acc.sum(),
        }
    }

    /// Acceptance probability on the input with MSB-first index `index`.
    pub fn probability_index(&self, index: u64) -> Probability {
        match &self.kernel {
            Kernel::Basis { start, maps, accepting } => {
                let q = maps.iter().enumerate().fold(*start, |q, (j, m)| m[self.bit(index, j)][q]);
                Probability::indicator(accepting[q])
            }
            Kernel::Polar { accept, .. } => match accept {
                PolarAccept::None => Probability::indicator(false),
                PolarAccept::All => Probability::indicator(true),
                PolarAccept::Shifted(offset) => {
                    let theta = self.final_angle(index).expect("polar kernel") + *offset;
                    if theta.is_multiple_of_pi() {
                        Probability::indicator(false)
                    } else {
                        Probability::sin_squared(theta)
                    }
                }
            },
            Kernel::Reach { start, succ, accepting } => {
                let d = start.len();
                let mut on = start.clone();
                for (j, pair) in succ.iter().enumerate() {
                    let lists = &pair[self.bit(index, j)];
                    let mut next = vec![false; d];
                    for (c, rows) in lists.iter().enumerate() {
                        if on[c] {
                            for &r in rows {
                                next[r] = true;
                            }
                        }
                    }
                    on = next;
                }
                Probability::indicator(on.iter().zip(accepting).any(|(a, b)| *a && *b))
            }
            Kernel::Dense => {
                let states = self.exact_states(index);
                Probability::Exact(self.final_probability(states.last().expect("initial state")))
            }
            Kernel::Float { .. } => {
                let states = self.float_states(index);
                Probability::Float(self.float_probability(states.last().expect("initial state")))
            }
        }
    }

    fn check_input(&self, input: &BitString) -> Result<u64> {
        if input.len() != self.program.n() {
            return Err(Error::LengthMismatch { expected: self.program.n(), actual: input.len() });
        }
        Ok(input.index())
    }

    pub fn probability(&self, input: &BitString) -> Result<Probability> {
        Ok(self.probability_index(self.check_input(input)?))
    }

    pub fn accepts_index(&self, index: u64) -> Verdict {
        Verdict {
            accepted: !self.probability_index(index).is_zero(),
            certified: self.backend == Backend::Exact,
        }
    }

    pub fn run(&self, input: &BitString) -> Result<RunTrace> {
        let index = self.check_input(input)?;
        let states = match self.backend {
            Backend::Exact => self.exact_states(index).into_iter().map(StateVector::Exact).collect(),
            Backend::Float => self.float_states(index).into_iter().map(StateVector::Float).collect(),
        };
        Ok(RunTrace {
            semantics: self.program.semantics(),
            states,
            probability: self.probability_index(index),
        })
    }

    /// Exhaustive comparison against `f` on all `2^n` inputs.
    pub fn computes(&self, f: &BooleanFunction, mode: Mode, exec: Exec) -> Result<FunctionReport> {
        let n = self.program.n();
        if f.arity() != n {
            return Err(Error::LengthMismatch { expected: n, actual: f.arity() });
        }
        if mode == Mode::Deterministic
            && !matches!(self.program.semantics(), Semantics::Deterministic | Semantics::Reversible)
        {
            return Err(Error::SemanticsMismatch(format!(
                "deterministic mode needs a deterministic or reversible program, got {}",
                self.program.semantics()
            )));
        }
        check_cap(n)?;
        let total = 1u64 << n;
        let counterexample = exec::find_first(exec, 0..total, |index| {
            let expected = f.eval_index(index);
            let prob = self.probability_index(index);
            let ok = match mode {
                Mode::Nondeterministic => !prob.is_zero() == expected,
                Mode::Exact | Mode::Deterministic => {
                    if expected {
                        prob.is_one()
                    } else {
                        prob.is_zero()
                    }
                }
            };
            (!ok).then(|| Counterexample { input: BitString::from_index(index, n), expected, probability: prob })
        });
        Ok(FunctionReport {
            mode,
            function: f.name(),
            inputs_checked: counterexample.as_ref().map_or(total, |c| c.input.index() + 1),
            counterexample,
            certified: self.backend == Backend::Exact,
        })
    }
}

/// Full trace of one run over exact scalars.
pub fn run(p: &LeveledProgram, input: &BitString) -> Result<RunTrace> {
    Evaluator::new(p, Backend::Exact)?.run(input)
}

pub fn run_with(p: &LeveledProgram, input: &BitString, backend: Backend) -> Result<RunTrace> {
    Evaluator::new(p, backend)?.run(input)
}

pub fn acceptance_probability(p: &LeveledProgram, input: &BitString) -> Result<Probability> {
    Evaluator::new(p, Backend::Exact)?.probability(input)
}

/// Accepted iff the acceptance probability is nonzero (float: above
/// [`FLOAT_EPSILON`], uncertified).
pub fn accepts_nondeterministically(p: &LeveledProgram, input: &BitString, backend: Backend) -> Result<Verdict> {
    let ev = Evaluator::new(p, backend)?;
    let index = ev.check_input(input)?;
    Ok(ev.accepts_index(index))
}

pub fn computes_function(p: &LeveledProgram, f: &BooleanFunction, mode: Mode) -> Result<FunctionReport> {
    computes_function_with(p, f, mode, CheckOptions::default())
}

pub fn computes_function_with(
    p: &LeveledProgram,
    f: &BooleanFunction,
    mode: Mode,
    options: CheckOptions,
) -> Result<FunctionReport> {
    Evaluator::new(p, options.backend)?.computes(f, mode, options.exec)
}
