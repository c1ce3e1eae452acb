//! Rank of reachable state vectors at one level of a unitary program.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::program::LeveledProgram;
use crate::scalar::Scalar;
use crate::semantics::polar_angle;

/// Prefixes of length `level`, the rank of their state vectors, and the
/// suffixes (if any) used to argue that the vectors must stay independent
/// in every program computing the same function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanWitness {
    pub level: usize,
    pub prefixes: Vec<BitString>,
    pub suffixes: Vec<BitString>,
    pub rank: usize,
    pub certified: bool,
}

const FLOAT_RANK_TOLERANCE: f64 = 1e-9;

fn states(p: &LeveledProgram, level: usize, prefixes: &[BitString]) -> Result<Vec<Vec<Scalar>>> {
    if !p.semantics().is_unitary_family() {
        return Err(Error::SemanticsMismatch(format!(
            "span dimension needs a unitary or reversible program, got {}",
            p.semantics()
        )));
    }
    if level > p.n() {
        return Err(Error::InvalidParameter(format!("level {level} exceeds n = {}", p.n())));
    }
    prefixes
        .iter()
        .map(|sigma| {
            if sigma.len() != level {
                return Err(Error::LengthMismatch { expected: level, actual: sigma.len() });
            }
            let mut v = p.initial().to_vec();
            for (j, bit) in sigma.iter().enumerate() {
                v = p.levels()[j].matrix(bit).apply(&v);
            }
            Ok(v)
        })
        .collect()
}

/// Exact rank of `{psi(sigma) : sigma in prefixes}` at `level`.
pub fn span_dimension(p: &LeveledProgram, level: usize, prefixes: &[BitString]) -> Result<SpanWitness> {
    let vs = states(p, level, prefixes)?;
    Ok(SpanWitness {
        level,
        prefixes: prefixes.to_vec(),
        suffixes: Vec::new(),
        rank: exact_rank(&vs),
        certified: true,
    })
}

/// Float rank with tolerance `1e-9`, flagged uncertified.
pub fn span_dimension_float(p: &LeveledProgram, level: usize, prefixes: &[BitString]) -> Result<SpanWitness> {
    let vs = states(p, level, prefixes)?;
    let fs: Vec<Vec<f64>> = vs.iter().map(|v| v.iter().map(Scalar::to_f64).collect()).collect();
    Ok(SpanWitness {
        level,
        prefixes: prefixes.to_vec(),
        suffixes: Vec::new(),
        rank: float_rank(fs),
        certified: false,
    })
}

/// Rank of exact vectors: integer elimination for rational entries, angle
/// comparison modulo `pi` for unit vectors in the plane, and division-free
/// elimination over [`Scalar`] otherwise.
pub fn exact_rank(vs: &[Vec<Scalar>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    if vs.iter().flatten().all(Scalar::is_rational) {
        let rows = vs.iter().map(|v| integer_row(v)).collect();
        return bareiss_rank(rows);
    }
    if let Some(angles) = vs.iter().map(|v| polar_angle(v)).collect::<Option<Vec<_>>>() {
        return if angles.iter().all(|a| a.congruent_mod_pi(&angles[0])) { 1 } else { 2 };
    }
    scalar_rank(vs.to_vec())
}

fn integer_row(v: &[Scalar]) -> Vec<BigInt> {
    let rs: Vec<_> = v.iter().map(|x| x.as_rational().expect("rational entry")).collect();
    let l = rs.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    rs.iter().map(|r| (r * num_rational::BigRational::from_integer(l.clone())).to_integer()).collect()
}

/// Fraction-free Gaussian elimination; rows are divided by the gcd of
/// their entries after each update to keep numbers small.
pub(crate) fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            if m[r][c].is_zero() {
                continue;
            }
            let (a, b) = (m[rank][c].clone(), m[r][c].clone());
            for k in c..cols {
                m[r][k] = &a * &m[r][k] - &b * &m[rank][k];
            }
            let g = m[r].iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in &mut m[r] {
                    *x /= &g;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn scalar_rank(mut m: Vec<Vec<Scalar>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            if m[r][c].is_zero() {
                continue;
            }
            let (a, b) = (m[rank][c].clone(), m[r][c].clone());
            for k in c..cols {
                m[r][k] = &a * &m[r][k] - &b * &m[rank][k];
            }
        }
        rank += 1;
    }
    rank
}

fn float_rank(mut m: Vec<Vec<f64>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let p = (rank..rows)
            .max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs()))
            .expect("nonempty range");
        if m[p][c].abs() <= FLOAT_RANK_TOLERANCE {
            continue;
        }
        m.swap(rank, p);
        for r in rank + 1..rows {
            let factor = m[r][c] / m[rank][c];
            for k in c..cols {
                m[r][k] -= factor * m[rank][k];
            }
        }
        rank += 1;
    }
    rank
}

/// The prefix family from the counting argument for `EXACT^k_n`: at level
/// `d = max(k, n-k)` the prefixes `1^i 0^(d-i)` for `i = 0..=d` (0s and 1s
/// swapped when `2k < n`).
pub fn exact_prefix_family(n: usize, k: usize) -> (usize, Vec<BitString>) {
    let d = k.max(n - k);
    let prefixes = (0..=d)
        .map(|i| {
            if 2 * k >= n {
                BitString::ones_then_zeros(i, d - i)
            } else {
                BitString::zeros_then_ones(i, d - i)
            }
        })
        .collect();
    (d, prefixes)
}
