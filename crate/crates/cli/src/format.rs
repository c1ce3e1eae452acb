//! JSON program files.
//!
//! Scalars are records tagged by `kind`: `int` and `rat` carry a decimal
//! string (`"-3"`, `"1/2"`); `trig` is `coef * cos(pi*num/den)` (or `sin`);
//! `sum` lists `coef * cos(pi*num/den)` terms. Matrices are `map` (target
//! state per column), `rot2` (rotation by `pi*num/den`) or `dense` (rows of
//! scalars). State indices are 0-based, variables 1-based.

use std::str::FromStr;

use anyhow::{anyhow, ensure, Context, Result};
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use nuobdd::{Angle, Level, LeveledProgram, Matrix, Scalar, Semantics, VariableOrder};

pub const FORMAT: &str = "nuobdd-program/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coef: String,
    pub num: i64,
    pub den: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ScalarRecord {
    Int { value: String },
    Rat { value: String },
    Trig {
        #[serde(rename = "fn")]
        func: Trig,
        num: i64,
        den: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        coef: Option<String>,
    },
    Sum { terms: Vec<Term> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trig {
    Cos,
    Sin,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MatrixRecord {
    Map { targets: Vec<usize> },
    Rot2 { num: i64, den: i64 },
    Dense { rows: Vec<Vec<ScalarRecord>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub var: usize,
    pub on0: MatrixRecord,
    pub on1: MatrixRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProgramFile {
    pub format: String,
    pub semantics: Semantics,
    pub n: usize,
    pub width: usize,
    pub order: Vec<usize>,
    pub initial: Vec<ScalarRecord>,
    pub levels: Vec<LevelRecord>,
    pub accepting: Vec<usize>,
}

fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let num = BigInt::from_str(num).with_context(|| format!("bad numerator in {s:?}"))?;
    let den = BigInt::from_str(den).with_context(|| format!("bad denominator in {s:?}"))?;
    ensure!(den > BigInt::zero(), "denominator must be positive in {s:?}");
    Ok(BigRational::new(num, den))
}

fn angle(num: i64, den: i64) -> Result<Ratio<i64>> {
    ensure!(den > 0, "angle denominator must be positive, got {den}");
    Ok(Ratio::new(num, den))
}

pub fn scalar_record(s: &Scalar) -> ScalarRecord {
    if let Some(r) = s.as_rational() {
        let value = rational_string(&r);
        return if r.denom().is_one() { ScalarRecord::Int { value } } else { ScalarRecord::Rat { value } };
    }
    match s.terms() {
        [(q, c)] => ScalarRecord::Trig {
            func: Trig::Cos,
            num: *q.numer(),
            den: *q.denom(),
            coef: (!c.is_one()).then(|| rational_string(c)),
        },
        terms => ScalarRecord::Sum {
            terms: terms
                .iter()
                .map(|(q, c)| Term { coef: rational_string(c), num: *q.numer(), den: *q.denom() })
                .collect(),
        },
    }
}

pub fn parse_scalar(r: &ScalarRecord) -> Result<Scalar> {
    Ok(match r {
        ScalarRecord::Int { value } => {
            let v = parse_rational(value)?;
            ensure!(v.denom().is_one(), "int record holds a fraction: {value}");
            Scalar::from_rational(v)
        }
        ScalarRecord::Rat { value } => Scalar::from_rational(parse_rational(value)?),
        ScalarRecord::Trig { func, num, den, coef } => {
            let a = Angle::from_ratio(angle(*num, *den)?);
            let base = match func {
                Trig::Cos => Scalar::cos(a),
                Trig::Sin => Scalar::sin(a),
            };
            match coef {
                Some(c) => base.scale(&parse_rational(c)?),
                None => base,
            }
        }
        ScalarRecord::Sum { terms } => Scalar::from_terms(
            terms
                .iter()
                .map(|t| Ok((angle(t.num, t.den)?, parse_rational(&t.coef)?)))
                .collect::<Result<Vec<_>>>()?,
        ),
    })
}

pub fn matrix_record(m: &Matrix) -> MatrixRecord {
    match m {
        Matrix::Map(t) => MatrixRecord::Map { targets: t.clone() },
        Matrix::Rotation(a) => MatrixRecord::Rot2 { num: a.numer(), den: a.denom() },
        Matrix::Dense { .. } => MatrixRecord::Dense {
            rows: m.rows().iter().map(|r| r.iter().map(scalar_record).collect()).collect(),
        },
    }
}

pub fn parse_matrix(r: &MatrixRecord) -> Result<Matrix> {
    Ok(match r {
        MatrixRecord::Map { targets } => Matrix::Map(targets.clone()),
        MatrixRecord::Rot2 { num, den } => Matrix::Rotation(Angle::from_ratio(angle(*num, *den)?)),
        MatrixRecord::Dense { rows } => {
            let d = rows.len();
            ensure!(rows.iter().all(|r| r.len() == d), "dense matrix must be square");
            Matrix::dense(rows.iter().map(|r| r.iter().map(parse_scalar).collect()).collect::<Result<_>>()?)
        }
    })
}

impl ProgramFile {
    pub fn from_program(p: &LeveledProgram) -> ProgramFile {
        ProgramFile {
            format: FORMAT.into(),
            semantics: p.semantics(),
            n: p.n(),
            width: p.width(),
            order: p.order().as_slice().to_vec(),
            initial: p.initial().iter().map(scalar_record).collect(),
            levels: p
                .levels()
                .iter()
                .map(|l| LevelRecord { var: l.var, on0: matrix_record(&l.on0), on1: matrix_record(&l.on1) })
                .collect(),
            accepting: p.accepting().to_vec(),
        }
    }

    pub fn to_program(&self) -> Result<LeveledProgram> {
        ensure!(self.format == FORMAT, "unsupported format {:?}, expected {FORMAT:?}", self.format);
        ensure!(self.order.len() == self.n, "order lists {} variables, n = {}", self.order.len(), self.n);
        ensure!(self.initial.len() == self.width, "initial state has {} entries, width = {}", self.initial.len(), self.width);
        let order = VariableOrder::new(self.order.clone())?;
        let levels = self
            .levels
            .iter()
            .map(|l| Ok(Level { var: l.var, on0: parse_matrix(&l.on0)?, on1: parse_matrix(&l.on1)? }))
            .collect::<Result<Vec<_>>>()?;
        let initial = self.initial.iter().map(parse_scalar).collect::<Result<Vec<_>>>()?;
        Ok(LeveledProgram::new(self.semantics, order, levels, initial, self.accepting.clone())?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("program files serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<ProgramFile> {
        serde_json::from_str(s).map_err(|e| anyhow!("malformed program file: {e}"))
    }
}

pub fn read_program(path: &std::path::Path) -> Result<LeveledProgram> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    ProgramFile::from_json(&text)?.to_program().with_context(|| format!("invalid program in {}", path.display()))
}

pub fn write_program(p: &LeveledProgram, path: Option<&std::path::Path>) -> Result<()> {
    let text = ProgramFile::from_program(p).to_json();
    match path {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
