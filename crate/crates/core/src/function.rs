//! Boolean functions: the named families used throughout the crate plus
//! explicit truth tables, with subfunction restriction.

use std::fmt;
use std::sync::Arc;

use crate::bits::{BitString, VariableOrder};
use crate::error::{invalid, Error, Result};

pub const DEFAULT_ENUMERATION_CAP: usize = 22;
pub const ENUMERATION_CAP_ENV: &str = "NUOBDD_ENUM_CAP";

/// Largest arity for which exhaustive enumeration is allowed; read from
/// `NUOBDD_ENUM_CAP`, default 22.
pub fn enumeration_cap() -> usize {
    std::env::var(ENUMERATION_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_CAP)
}

pub(crate) fn check_cap(arity: usize) -> Result<()> {
    let cap = enumeration_cap().min(40);
    if arity > cap {
        Err(Error::EnumerationCap { arity, cap })
    } else {
        Ok(())
    }
}

/// `2^n` bits; bit `i` is the value on the input whose MSB-first binary
/// expansion is `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    arity: usize,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn new(arity: usize) -> Self {
        let len = 1usize << arity;
        Self { arity, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_fn(arity: usize, mut f: impl FnMut(u64) -> bool) -> Self {
        let mut t = TruthTable::new(arity);
        for i in 0..1u64 << arity {
            if f(i) {
                t.set(i, true);
            }
        }
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        1 << self.arity
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: u64) -> bool {
        self.words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: u64, v: bool) {
        let w = &mut self.words[(i / 64) as usize];
        if v {
            *w |= 1 << (i % 64);
        } else {
            *w &= !(1 << (i % 64));
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() as u64 {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable({self})")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// 1 unless the `m x m` matrix read row-major from the input is a permutation matrix.
    NotPerm { m: usize },
    /// 1 iff exactly `k` ones.
    Exact { k: usize },
    /// 1 unless exactly `k` ones.
    NotExact { k: usize },
    /// 1 iff the number of ones is divisible by `p`.
    Mod { p: usize },
    And,
    Table(Arc<TruthTable>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanFunction {
    arity: usize,
    family: Family,
}

/// Fixes the first `cut` variables of `order` to `prefix`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfunctionRestriction {
    pub order: VariableOrder,
    pub cut: usize,
    pub prefix: BitString,
}

impl SubfunctionRestriction {
    pub fn new(order: VariableOrder, cut: usize, prefix: BitString) -> Result<Self> {
        let n = order.len();
        if cut == 0 || cut >= n {
            return Err(Error::CutOutOfRange { cut, arity: n });
        }
        if prefix.len() != cut {
            return Err(Error::LengthMismatch { expected: cut, actual: prefix.len() });
        }
        Ok(Self { order, cut, prefix })
    }
}

/// True iff `matrix_bits`, read row-major as an `m x m` matrix, has exactly
/// one 1 in every row and every column.
pub(crate) fn is_permutation_matrix(bits: &[bool], m: usize) -> bool {
    (0..m).all(|i| (0..m).filter(|&j| bits[i * m + j]).count() == 1)
        && (0..m).all(|j| (0..m).filter(|&i| bits[i * m + j]).count() == 1)
}

impl BooleanFunction {
    pub fn not_perm(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(invalid("notPERM requires m >= 1"));
        }
        Ok(Self { arity: m * m, family: Family::NotPerm { m } })
    }

    pub fn exact(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(invalid("k <= n required"));
        }
        Ok(Self { arity: n, family: Family::Exact { k } })
    }

    pub fn not_exact(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(invalid("k <= n required"));
        }
        Ok(Self { arity: n, family: Family::NotExact { k } })
    }

    pub fn modulo(n: usize, p: usize) -> Result<Self> {
        if p == 0 || p > n {
            return Err(invalid("1 <= p <= n required"));
        }
        Ok(Self { arity: n, family: Family::Mod { p } })
    }

    pub fn and(n: usize) -> Self {
        Self { arity: n, family: Family::And }
    }

    pub fn from_table(table: TruthTable) -> Self {
        Self { arity: table.arity(), family: Family::Table(Arc::new(table)) }
    }

    pub fn constant(n: usize, value: bool) -> Self {
        Self::from_table(TruthTable::from_fn(n, |_| value))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn evaluate(&self, input: &BitString) -> Result<bool> {
        if input.len() != self.arity {
            return Err(Error::LengthMismatch { expected: self.arity, actual: input.len() });
        }
        Ok(self.eval_index(input.index()))
    }

    /// Value on the input with MSB-first index `index`; no arity check.
    pub fn eval_index(&self, index: u64) -> bool {
        let ones = index.count_ones() as usize;
        match &self.family {
            Family::Exact { k } => ones == *k,
            Family::NotExact { k } => ones != *k,
            Family::Mod { p } => ones.is_multiple_of(*p),
            Family::And => ones == self.arity,
            Family::Table(t) => t.get(index),
            Family::NotPerm { m } => {
                let bits = BitString::from_index(index, self.arity);
                !is_permutation_matrix(bits.as_slice(), *m)
            }
        }
    }

    /// Truth table over all `2^n` inputs, refused above the enumeration cap.
    pub fn truth_table(&self) -> Result<TruthTable> {
        if let Family::Table(t) = &self.family {
            return Ok(t.as_ref().clone());
        }
        check_cap(self.arity)?;
        Ok(TruthTable::from_fn(self.arity, |i| self.eval_index(i)))
    }

    /// The `(n - k)`-ary subfunction `gamma -> f(assignment)`, where the
    /// assignment puts the prefix on the first `k` variables of the order
    /// and `gamma` on the rest, in order.
    pub fn restrict(&self, rho: &SubfunctionRestriction) -> Result<BooleanFunction> {
        if rho.order.len() != self.arity {
            return Err(Error::LengthMismatch { expected: self.arity, actual: rho.order.len() });
        }
        let rest = self.arity - rho.cut;
        check_cap(rest)?;
        let table = TruthTable::from_fn(rest, |g| {
            let arranged = rho.prefix.concat(&BitString::from_index(g, rest));
            self.eval_index(rho.order.assignment(&arranged).index())
        });
        Ok(BooleanFunction::from_table(table))
    }

    /// Value of `f` on prefix `sigma` (first `|sigma|` order positions)
    /// completed by suffix `gamma`.
    pub fn eval_split(&self, order: &VariableOrder, sigma: &BitString, gamma: &BitString) -> Result<bool> {
        if order.len() != self.arity || sigma.len() + gamma.len() != self.arity {
            return Err(Error::LengthMismatch {
                expected: self.arity,
                actual: sigma.len() + gamma.len(),
            });
        }
        Ok(self.eval_index(order.assignment(&sigma.concat(gamma)).index()))
    }

    /// `gamma` distinguishes `sigma` from `sigma_prime` when it completes
    /// `sigma` to a 1 and `sigma_prime` to a 0. Not symmetric.
    pub fn distinguishes(
        &self,
        order: &VariableOrder,
        cut: usize,
        gamma: &BitString,
        sigma: &BitString,
        sigma_prime: &BitString,
    ) -> Result<bool> {
        for (len, want) in [(sigma.len(), cut), (sigma_prime.len(), cut), (gamma.len(), self.arity.saturating_sub(cut))] {
            if len != want {
                return Err(Error::LengthMismatch { expected: want, actual: len });
            }
        }
        Ok(self.eval_split(order, sigma, gamma)? && !self.eval_split(order, sigma_prime, gamma)?)
    }

    /// Short identifier such as `MOD^3_6`.
    pub fn name(&self) -> String {
        let n = self.arity;
        match &self.family {
            Family::NotPerm { .. } => format!("notPERM_{n}"),
            Family::Exact { k } => format!("EXACT^{k}_{n}"),
            Family::NotExact { k } => format!("notEXACT^{k}_{n}"),
            Family::Mod { p } => format!("MOD^{p}_{n}"),
            Family::And => format!("AND_{n}"),
            Family::Table(t) => format!("table_{n}[{}]", t.count_ones()),
        }
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn family_examples() {
        assert!(BooleanFunction::modulo(6, 3).unwrap().evaluate(&bs("111000")).unwrap());
        assert!(BooleanFunction::exact(4, 2).unwrap().evaluate(&bs("0101")).unwrap());
        assert!(!BooleanFunction::not_perm(2).unwrap().evaluate(&bs("1001")).unwrap());
        assert!(BooleanFunction::not_perm(2).unwrap().evaluate(&bs("1101")).unwrap());
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        let f = BooleanFunction::and(3);
        assert_eq!(
            f.evaluate(&bs("11")),
            Err(Error::LengthMismatch { expected: 3, actual: 2 })
        );
    }

    #[test]
    fn parameter_constraints() {
        assert!(BooleanFunction::exact(4, 5).is_err());
        assert!(BooleanFunction::modulo(4, 0).is_err());
        assert!(BooleanFunction::modulo(4, 5).is_err());
        assert!(BooleanFunction::not_perm(0).is_err());
    }

    #[test]
    fn truth_table_examples() {
        assert_eq!(BooleanFunction::and(2).truth_table().unwrap().to_string(), "0001");
        assert_eq!(BooleanFunction::modulo(2, 2).unwrap().truth_table().unwrap().to_string(), "1001");
        assert_eq!(BooleanFunction::exact(1, 0).unwrap().truth_table().unwrap().to_string(), "10");
    }

    #[test]
    fn truth_table_refused_above_cap() {
        let f = BooleanFunction::and(DEFAULT_ENUMERATION_CAP + 1);
        if std::env::var(ENUMERATION_CAP_ENV).is_err() {
            assert!(matches!(f.truth_table(), Err(Error::EnumerationCap { .. })));
        }
    }

    #[test]
    fn restrict_examples() {
        let order = VariableOrder::natural(4);
        let rho = |s: &str| SubfunctionRestriction::new(order.clone(), 2, bs(s)).unwrap();

        let e = BooleanFunction::exact(4, 2).unwrap().restrict(&rho("11")).unwrap();
        assert_eq!(e.truth_table().unwrap().to_string(), "1000");

        let a = BooleanFunction::and(4).restrict(&rho("01")).unwrap();
        assert_eq!(a.truth_table().unwrap().to_string(), "0000");

        let m = BooleanFunction::modulo(4, 2).unwrap().restrict(&rho("10")).unwrap();
        assert_eq!(m.truth_table().unwrap().to_string(), "0110");
    }

    #[test]
    fn restriction_cut_bounds() {
        let order = VariableOrder::natural(3);
        assert!(SubfunctionRestriction::new(order.clone(), 0, BitString::zeros(0)).is_err());
        assert!(SubfunctionRestriction::new(order.clone(), 3, BitString::zeros(3)).is_err());
        assert!(SubfunctionRestriction::new(order, 2, BitString::zeros(1)).is_err());
    }

    #[test]
    fn distinguishes_examples() {
        let order = VariableOrder::natural(4);
        let exact = BooleanFunction::exact(4, 2).unwrap();
        assert!(exact.distinguishes(&order, 2, &bs("10"), &bs("10"), &bs("11")).unwrap());
        assert!(!exact.distinguishes(&order, 2, &bs("10"), &bs("10"), &bs("10")).unwrap());
        let parity = BooleanFunction::modulo(4, 2).unwrap();
        assert!(parity.distinguishes(&order, 2, &bs("00"), &bs("11"), &bs("10")).unwrap());
        assert!(parity.distinguishes(&order, 2, &bs("0"), &bs("11"), &bs("10")).is_err());
    }
}
