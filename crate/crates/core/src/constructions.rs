//! Explicit programs for the named families. Each builder returns a program
//! of the stated width that passes [`crate::semantics::validate`].

use crate::angle::Angle;
use crate::bits::VariableOrder;
use crate::error::{invalid, Result};
use crate::matrix::Matrix;
use crate::program::{Level, LeveledProgram, Semantics};
use crate::scalar::Scalar;

/// Base-`(m+1)` encoding of the row and column sums of an `m x m` 0-1 matrix.
///
/// Row `i` contributes digit `i - 1`, column `j` digit `m + j - 1`, so a
/// matrix encodes to `T_perm = 11...1` (in base `m+1`) iff it is a
/// permutation matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PermEncoding {
    pub m: usize,
    pub base: i64,
    pub t_max: i64,
    pub t_perm: i64,
    /// Rotation unit: `pi / t_max`, or `pi / (t_max + 1)` when `m = 1`
    /// (there `t_perm = t_max` and the all-zero matrix would also land on a
    /// multiple of `pi`).
    pub alpha: Angle,
}

impl PermEncoding {
    pub fn new(m: usize) -> Result<PermEncoding> {
        if m == 0 {
            return Err(invalid("m >= 1 required"));
        }
        let base = m as i64 + 1;
        let digits = u32::try_from(2 * m).map_err(|_| invalid("m too large"))?;
        let t_max = base
            .checked_pow(digits)
            .and_then(|v| v.checked_sub(1))
            .ok_or_else(|| invalid(format!("T_max overflows for m = {m}")))?;
        let t_perm = (0..digits).map(|i| base.pow(i)).sum();
        let alpha = if m == 1 { Angle::pi_frac(1, t_max + 1) } else { Angle::pi_frac(1, t_max) };
        Ok(PermEncoding { m, base, t_max, t_perm, alpha })
    }

    /// Weight of entry `(i, j)` (1-based): `(m+1)^(i-1) + (m+1)^(m+j-1)`.
    pub fn weight(&self, i: usize, j: usize) -> i64 {
        self.base.pow((i - 1) as u32) + self.base.pow((self.m + j - 1) as u32)
    }

    /// Weight used by the unshifted exponents `i` and `m + j`.
    pub fn literal_weight(&self, i: usize, j: usize) -> i64 {
        self.base.pow(i as u32) + self.base.pow((self.m + j) as u32)
    }

    /// `T(A)` for a row-major bit vector of length `m^2`.
    pub fn encode_bits(&self, bits: &[bool]) -> Result<i64> {
        if bits.len() != self.m * self.m {
            return Err(invalid(format!("expected {} entries, got {}", self.m * self.m, bits.len())));
        }
        Ok(bits
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(|(pos, _)| self.weight(pos / self.m + 1, pos % self.m + 1))
            .sum())
    }
}

/// `T(A)` for a square matrix with entries in `{0, 1}`.
pub fn encode_t(a: &[Vec<u8>]) -> Result<i64> {
    let m = a.len();
    if a.iter().any(|row| row.len() != m) {
        return Err(invalid("matrix must be square"));
    }
    if a.iter().flatten().any(|&x| x > 1) {
        return Err(invalid("matrix entries must be 0 or 1"));
    }
    let enc = PermEncoding::new(m)?;
    let bits: Vec<bool> = a.iter().flatten().map(|&x| x == 1).collect();
    enc.encode_bits(&bits)
}

/// Width-2 unitary machine over the natural order: start at angle `start`
/// in the plane spanned by states 0 and 1, rotate by `steps[j].0` or
/// `steps[j].1` at level `j`, accept state 1.
pub fn rotation_machine(order: VariableOrder, start: Angle, steps: &[(Angle, Angle)]) -> Result<LeveledProgram> {
    if steps.len() != order.len() {
        return Err(invalid("one rotation pair per level required"));
    }
    let rot = |a: Angle| if a == Angle::ZERO { Matrix::identity(2) } else { Matrix::Rotation(a) };
    let levels = steps
        .iter()
        .enumerate()
        .map(|(j, &(a0, a1))| Level { var: order.var_at(j + 1), on0: rot(a0), on1: rot(a1) })
        .collect();
    LeveledProgram::new(Semantics::Unitary, order, levels, vec![Scalar::cos(start), Scalar::sin(start)], vec![1])
}

fn not_perm_with(m: usize, weight: impl Fn(&PermEncoding, usize, usize) -> i64) -> Result<LeveledProgram> {
    let enc = PermEncoding::new(m)?;
    let n = m * m;
    let steps: Vec<(Angle, Angle)> = (0..n)
        .map(|pos| (Angle::ZERO, enc.alpha.scale(weight(&enc, pos / m + 1, pos % m + 1))))
        .collect();
    rotation_machine(VariableOrder::natural(n), enc.alpha.scale(-enc.t_perm), &steps)
}

/// Width-2 NUOBDD for `notPERM_{m^2}`: the accumulated rotation is
/// `(T(A) - T_perm) * alpha`, a multiple of `pi` only for permutation
/// matrices.
pub fn build_not_perm(m: usize) -> Result<LeveledProgram> {
    not_perm_with(m, PermEncoding::weight)
}

/// [`build_not_perm`] with the unshifted digit exponents `i` and `m + j`.
/// Kept to document that this variant is not a correct construction.
pub fn build_not_perm_literal(m: usize) -> Result<LeveledProgram> {
    not_perm_with(m, PermEncoding::literal_weight)
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("n >= 1 required"));
    }
    if k > n {
        return Err(invalid("k <= n required"));
    }
    Ok(())
}

fn cycle(d: usize) -> Matrix {
    Matrix::Map((0..d).map(|i| (i + 1) % d).collect())
}

fn counting_levels(n: usize, count_ones: bool, step: Matrix) -> Vec<Level> {
    let id = Matrix::identity(step.dim());
    (1..=n)
        .map(|var| {
            let (on0, on1) = if count_ones { (id.clone(), step.clone()) } else { (step.clone(), id.clone()) };
            Level { var, on0, on1 }
        })
        .collect()
}

fn basis(d: usize, q: usize) -> Vec<Scalar> {
    (0..d).map(|i| Scalar::from_integer(i64::from(i == q))).collect()
}

/// Reversible cyclic counter for `EXACT^k_n`, width `max(k+1, n-k+1)`.
/// Counts 1s modulo `k+1` when `2k >= n`, otherwise 0s modulo `n-k+1`.
pub fn build_exact_unitary(n: usize, k: usize) -> Result<LeveledProgram> {
    check_k(n, k)?;
    let count_ones = 2 * k >= n;
    let target = if count_ones { k } else { n - k };
    let d = target + 1;
    LeveledProgram::new(
        Semantics::Reversible,
        VariableOrder::natural(n),
        counting_levels(n, count_ones, cycle(d)),
        basis(d, 0),
        vec![target],
    )
}

/// Deterministic counter for `EXACT^k_n` with a trap state, width
/// `min(k+1, n-k+1) + 1`. Counts 1s when `2k <= n`, otherwise 0s.
pub fn build_exact_deterministic(n: usize, k: usize) -> Result<LeveledProgram> {
    check_k(n, k)?;
    let count_ones = 2 * k <= n;
    let target = if count_ones { k } else { n - k };
    let trap = target + 1;
    let d = target + 2;
    let step = Matrix::Map((0..d).map(|i| if i >= target { trap } else { i + 1 }).collect());
    LeveledProgram::new(
        Semantics::Deterministic,
        VariableOrder::natural(n),
        counting_levels(n, count_ones, step),
        basis(d, 0),
        vec![target],
    )
}

fn not_exact_with(n: usize, k: usize, beta: Angle) -> Result<LeveledProgram> {
    check_k(n, k)?;
    let steps = vec![(Angle::ZERO, beta); n];
    rotation_machine(VariableOrder::natural(n), beta.scale(-(k as i64)), &steps)
}

/// Width-2 NUOBDD for `notEXACT^k_n` with step `pi/(n+1)`: the final angle
/// is `(#1 - k) * pi/(n+1)`, a multiple of `pi` iff `#1 = k`.
pub fn build_not_exact(n: usize, k: usize) -> Result<LeveledProgram> {
    not_exact_with(n, k, Angle::pi_frac(1, n as i64 + 1))
}

/// [`build_not_exact`] with step `pi/n`, which wrongly rejects the inputs
/// with `|#1 - k| = n` when `k` is 0 or `n`.
pub fn build_not_exact_literal(n: usize, k: usize) -> Result<LeveledProgram> {
    not_exact_with(n, k, Angle::pi_frac(1, n as i64))
}

/// Reversible counter modulo `p` for `MOD^p_n`, width `p`, accepting the
/// start state.
pub fn build_mod(n: usize, p: usize) -> Result<LeveledProgram> {
    if p == 0 || p > n {
        return Err(invalid("1 <= p <= n required"));
    }
    LeveledProgram::new(
        Semantics::Reversible,
        VariableOrder::natural(n),
        counting_levels(n, true, cycle(p)),
        basis(p, 0),
        vec![0],
    )
}

/// Width-2 NOBDD for `AND_n`: state 0 survives 1s and falls to state 1 on a 0.
pub fn build_and_nobdd(n: usize) -> Result<LeveledProgram> {
    if n == 0 {
        return Err(invalid("n >= 1 required"));
    }
    let levels = (1..=n)
        .map(|var| Level { var, on0: Matrix::Map(vec![1, 1]), on1: Matrix::identity(2) })
        .collect();
    LeveledProgram::new(Semantics::Nondeterministic, VariableOrder::natural(n), levels, basis(2, 0), vec![0])
}

/// Width-1 program accepting every input.
pub fn always_accept(n: usize) -> LeveledProgram {
    let levels = (1..=n)
        .map(|var| Level { var, on0: Matrix::identity(1), on1: Matrix::identity(1) })
        .collect();
    LeveledProgram::new(Semantics::Reversible, VariableOrder::natural(n), levels, basis(1, 0), vec![0])
        .expect("width-1 identity program is well formed")
}
