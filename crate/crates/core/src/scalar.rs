//! Exact real scalars: rational combinations of `cos(pi*q)` for rational `q`.
//!
//! Integers and rationals are the combinations with a single `q = 0` term;
//! `cos` and `sin` of rational multiples of `pi` are single terms. The set is
//! closed under `+`, `-` and `*` (product-to-sum), which covers rotation
//! matrices, their direct sums and tensor products, and the `1/sqrt(2)`
//! weight (`cos(pi/4)`).
//!
//! Terms are kept in a canonical form with every angle folded into
//! `[0, 1/2)`. Canonical forms that are syntactically equal have equal
//! values, but the converse fails (`cos(pi/5) - cos(2pi/5) = 1/2`), so value
//! comparisons go through [`Scalar::is_zero`], which is exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::angle::{fmt_pi_multiple, Angle};
use crate::cyclotomic;

const FILTER_RELATIVE: f64 = 1e-9;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    /// Sorted by angle; coefficients nonzero; angle 0 is the rational part.
    terms: Vec<(Ratio<i64>, BigRational)>,
}

enum Folded {
    Zero,
    Rational(BigRational),
    Cos(Ratio<i64>, bool),
}

/// Canonical representative of `cos(pi*q)`: a rational, or `+-cos(pi*q')`
/// with `q'` in `(0, 1/2)`.
fn fold(q: Ratio<i64>) -> Folded {
    let mut q = Angle::from_ratio(q).turns_of_pi();
    let one = Ratio::one();
    let half = Ratio::new(1, 2);
    if q > one {
        q = Ratio::from_integer(2) - q;
    }
    let mut negate = false;
    if q > half {
        q = one - q;
        negate = true;
    }
    let sign = |v: BigRational| if negate { -v } else { v };
    if q == half {
        Folded::Zero
    } else if q.is_zero() {
        Folded::Rational(sign(BigRational::one()))
    } else if q == Ratio::new(1, 3) {
        Folded::Rational(sign(BigRational::new(1.into(), 2.into())))
    } else {
        Folded::Cos(q, negate)
    }
}

fn accumulate(map: &mut BTreeMap<Ratio<i64>, BigRational>, q: Ratio<i64>, c: BigRational) {
    let (key, value) = match fold(q) {
        Folded::Zero => return,
        Folded::Rational(r) => (Ratio::zero(), c * r),
        Folded::Cos(q, neg) => (q, if neg { -c } else { c }),
    };
    let slot = map.entry(key).or_insert_with(BigRational::zero);
    *slot += value;
    if slot.is_zero() {
        map.remove(&key);
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar { terms: Vec::new() }
    }

    pub fn one() -> Scalar {
        Scalar::from_integer(1)
    }

    pub fn from_integer(v: i64) -> Scalar {
        Scalar::from_rational(BigRational::from_integer(v.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Scalar {
        Scalar::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(v: BigRational) -> Scalar {
        if v.is_zero() {
            Scalar::zero()
        } else {
            Scalar { terms: vec![(Ratio::zero(), v)] }
        }
    }

    /// `cos` of the angle.
    pub fn cos(angle: Angle) -> Scalar {
        Scalar::from_terms([(angle.turns_of_pi(), BigRational::one())])
    }

    /// `sin` of the angle, i.e. `cos(angle - pi/2)`.
    pub fn sin(angle: Angle) -> Scalar {
        Scalar::cos(angle - Angle::pi_frac(1, 2))
    }

    /// `1/sqrt(2)`.
    pub fn inv_sqrt2() -> Scalar {
        Scalar::cos(Angle::pi_frac(1, 4))
    }

    /// `sum c * cos(pi*q)` over the given `(q, c)` pairs.
    pub fn from_terms(terms: impl IntoIterator<Item = (Ratio<i64>, BigRational)>) -> Scalar {
        let mut map = BTreeMap::new();
        for (q, c) in terms {
            accumulate(&mut map, q, c);
        }
        Scalar { terms: map.into_iter().collect() }
    }

    /// Canonical `(q, c)` terms, angle-sorted; `q = 0` is the rational part.
    pub fn terms(&self) -> &[(Ratio<i64>, BigRational)] {
        &self.terms
    }

    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|(q, _)| q.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(q, c)] if q.is_zero() => Some(c.clone()),
            _ => None,
        }
    }

    /// Syntactic zero: no terms at all. Implies [`Scalar::is_zero`].
    pub fn is_trivially_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact zero test.
    ///
    /// A floating-point evaluation with a rigorous margin settles every
    /// clearly nonzero value; anything inside the margin goes to the
    /// cyclotomic reduction.
    pub fn is_zero(&self) -> bool {
        match self.terms.as_slice() {
            [] => true,
            [_] => false,
            terms => {
                let bound = cyclotomic::abs_sum_f64(terms);
                if bound.is_finite() && self.to_f64().abs() > FILTER_RELATIVE * bound {
                    return false;
                }
                cyclotomic::vanishes(terms)
            }
        }
    }

    pub fn is_one(&self) -> bool {
        (self - &Scalar::one()).is_zero()
    }

    /// Exact value equality.
    pub fn exact_eq(&self, other: &Scalar) -> bool {
        (self - other).is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(q, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                if q.is_zero() {
                    c
                } else {
                    c * (std::f64::consts::PI * (*q.numer() as f64) / (*q.denom() as f64)).cos()
                }
            })
            .sum()
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    /// Multiplies by a rational without re-folding angles.
    pub fn scale(&self, k: &BigRational) -> Scalar {
        if k.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(q, c)| (*q, c * k)).collect(),
        }
    }

    /// Sign of a rational scalar; `None` for irrational values.
    pub fn rational_sign(&self) -> Option<std::cmp::Ordering> {
        self.as_rational().map(|r| r.cmp(&BigRational::zero()))
    }

    /// Sign of the value. Exact for zero and for rationals; otherwise read
    /// off the floating-point evaluation of a value known to be nonzero.
    pub fn sign(&self) -> std::cmp::Ordering {
        if let Some(o) = self.rational_sign() {
            return o;
        }
        if self.is_zero() {
            return std::cmp::Ordering::Equal;
        }
        self.to_f64().partial_cmp(&0.0).unwrap_or(std::cmp::Ordering::Equal)
    }

    /// Largest angle denominator among the terms.
    pub fn angle_denominator(&self) -> i64 {
        self.terms.iter().map(|(q, _)| *q.denom()).max().unwrap_or(1)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_integer(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::from_rational(v)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut map: BTreeMap<_, _> = self.terms.iter().cloned().collect();
        for (q, c) in &rhs.terms {
            let slot = map.entry(*q).or_insert_with(BigRational::zero);
            *slot += c;
            if slot.is_zero() {
                map.remove(q);
            }
        }
        Scalar { terms: map.into_iter().collect() }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(q, c)| (*q, -c)).collect(),
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return Scalar::zero();
        }
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut map = BTreeMap::new();
        for (qa, ca) in &self.terms {
            for (qb, cb) in &rhs.terms {
                let c = ca * cb;
                if qa.is_zero() {
                    accumulate(&mut map, *qb, c);
                } else if qb.is_zero() {
                    accumulate(&mut map, *qa, c);
                } else {
                    // cos a cos b = (cos(a+b) + cos(a-b)) / 2
                    let c = c * &half;
                    accumulate(&mut map, qa + qb, c.clone());
                    accumulate(&mut map, qa - qb, c);
                }
            }
        }
        Scalar { terms: map.into_iter().collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (q, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if q.is_zero() {
                fmt_rational(&mag, f)?;
            } else {
                if !mag.is_one() {
                    fmt_rational(&mag, f)?;
                    f.write_str("*")?;
                }
                f.write_str("cos(")?;
                fmt_pi_multiple(*q, f)?;
                f.write_str(")")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pythagorean_identity_is_syntactic() {
        for (a, b) in [(1, 7), (3, 11), (2, 5), (5, 3), (-4, 9)] {
            let t = Angle::pi_frac(a, b);
            let s = Scalar::sin(t).square() + Scalar::cos(t).square();
            assert_eq!(s, Scalar::one(), "angle {t}");
        }
    }

    #[test]
    fn angle_addition_formula() {
        let a = Angle::pi_frac(2, 7);
        let b = Angle::pi_frac(5, 13);
        let lhs = Scalar::cos(a) * Scalar::cos(b) - Scalar::sin(a) * Scalar::sin(b);
        assert_eq!(lhs, Scalar::cos(a + b));
    }

    #[test]
    fn inv_sqrt2_squares_to_half() {
        assert_eq!(Scalar::inv_sqrt2().square(), Scalar::ratio(1, 2));
    }

    #[test]
    fn niven_values_fold_to_rationals() {
        assert_eq!(Scalar::cos(Angle::pi_frac(1, 3)), Scalar::ratio(1, 2));
        assert_eq!(Scalar::cos(Angle::pi_frac(2, 3)), Scalar::ratio(-1, 2));
        assert_eq!(Scalar::sin(Angle::pi_frac(1, 6)), Scalar::ratio(1, 2));
        assert!(Scalar::cos(Angle::pi_frac(1, 2)).is_trivially_zero());
        assert_eq!(Scalar::cos(Angle::pi_frac(1, 1)), Scalar::from_integer(-1));
    }

    #[test]
    fn sin_vanishes_iff_denominator_divides_numerator() {
        for b in 1..=64i64 {
            for a in -2 * b..=2 * b {
                let s = Scalar::sin(Angle::pi_frac(a, b));
                assert_eq!(s.is_zero(), a % b == 0, "sin({a}pi/{b})");
            }
        }
    }

    #[test]
    fn hidden_zero_is_detected() {
        let z = Scalar::cos(Angle::pi_frac(1, 5)) - Scalar::cos(Angle::pi_frac(2, 5)) - Scalar::ratio(1, 2);
        assert!(!z.is_trivially_zero());
        assert!(z.is_zero());
        assert!(Scalar::cos(Angle::pi_frac(1, 5)).exact_eq(&(Scalar::cos(Angle::pi_frac(2, 5)) + Scalar::ratio(1, 2))));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::ratio(-3, 6).to_string(), "-1/2");
        let s = Scalar::ratio(1, 2) - Scalar::cos(Angle::pi_frac(2, 5)).scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(s.to_string(), "1/2 - 1/2*cos(2*pi/5)");
    }

    #[test]
    fn float_value_matches() {
        let t = Angle::pi_frac(3, 7);
        let s = Scalar::sin(t) * Scalar::cos(Angle::pi_frac(1, 9)) + Scalar::ratio(1, 3);
        let expect = (3.0 * std::f64::consts::PI / 7.0).sin() * (std::f64::consts::PI / 9.0).cos() + 1.0 / 3.0;
        assert!((s.to_f64() - expect).abs() < 1e-12);
    }
}
