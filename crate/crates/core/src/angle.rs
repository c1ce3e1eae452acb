use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// An angle `pi * q` with rational `q`, kept reduced modulo `2*pi` so that
/// `q` lies in `[0, 2)`. Two angles are equal iff they are congruent mod `2*pi`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(Ratio<i64>);

impl Angle {
    pub const ZERO: Angle = Angle(Ratio::new_raw(0, 1));

    /// `pi * num / den`.
    pub fn pi_frac(num: i64, den: i64) -> Angle {
        assert!(den != 0, "angle denominator must be nonzero");
        Angle::from_ratio(Ratio::new(num, den))
    }

    pub fn from_ratio(q: Ratio<i64>) -> Angle {
        let two = Ratio::from_integer(2);
        let mut r = q % two;
        if r.is_negative() {
            r += two;
        }
        Angle(r)
    }

    /// The coefficient `q` of `pi`, in `[0, 2)`.
    pub fn turns_of_pi(&self) -> Ratio<i64> {
        self.0
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn scale(&self, k: i64) -> Angle {
        Angle::from_ratio(self.0 * Ratio::from_integer(k))
    }

    /// True iff the angle is a multiple of `pi`, i.e. `sin` vanishes.
    pub fn is_multiple_of_pi(&self) -> bool {
        self.0.is_integer()
    }

    /// True iff `cos` vanishes.
    pub fn is_odd_multiple_of_half_pi(&self) -> bool {
        (self.0 - Ratio::new(1, 2)).is_integer()
    }

    /// Congruence modulo `pi` (rather than `2*pi`).
    pub fn congruent_mod_pi(&self, other: &Angle) -> bool {
        (self.0 - other.0).is_integer()
    }

    /// Representative of the angle modulo `pi`, in `[0, 1)`.
    pub fn mod_pi(&self) -> Ratio<i64> {
        let r = self.0;
        if r >= Ratio::one() {
            r - Ratio::one()
        } else {
            r
        }
    }

    pub fn to_radians(&self) -> f64 {
        std::f64::consts::PI * (*self.0.numer() as f64) / (*self.0.denom() as f64)
    }

    pub fn lcm_denom(angles: impl IntoIterator<Item = Angle>) -> i64 {
        angles.into_iter().fold(1i64, |acc, a| acc.lcm(&a.denom()))
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        Angle::from_ratio(self.0 + rhs.0)
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        Angle::from_ratio(self.0 - rhs.0)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle::from_ratio(-self.0)
    }
}

impl Default for Angle {
    fn default() -> Self {
        Angle::ZERO
    }
}

/// Renders `pi * q` as `0`, `pi`, `2*pi/5`, `pi/3`, ...
pub(crate) fn fmt_pi_multiple(q: Ratio<i64>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_zero() {
        return f.write_str("0");
    }
    let (n, d) = (*q.numer(), *q.denom());
    let sign = if n < 0 { "-" } else { "" };
    let n = n.abs();
    match (n, d) {
        (1, 1) => write!(f, "{sign}pi"),
        (1, d) => write!(f, "{sign}pi/{d}"),
        (n, 1) => write!(f, "{sign}{n}*pi"),
        (n, d) => write!(f, "{sign}{n}*pi/{d}"),
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_pi_multiple(self.0, f)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Angle({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalises_into_zero_two() {
        assert_eq!(Angle::pi_frac(-1, 2), Angle::pi_frac(3, 2));
        assert_eq!(Angle::pi_frac(5, 2), Angle::pi_frac(1, 2));
        assert_eq!(Angle::pi_frac(4, 2), Angle::ZERO);
    }

    #[test]
    fn multiples_of_pi() {
        assert!(Angle::pi_frac(7, 7).is_multiple_of_pi());
        assert!(!Angle::pi_frac(2, 5).is_multiple_of_pi());
        assert!(Angle::pi_frac(1, 3).congruent_mod_pi(&Angle::pi_frac(4, 3)));
    }

    #[test]
    fn display() {
        assert_eq!(Angle::pi_frac(2, 5).to_string(), "2*pi/5");
        assert_eq!(Angle::pi_frac(1, 1).to_string(), "pi");
        assert_eq!(Angle::pi_frac(-1, 4).to_string(), "7*pi/4");
    }
}
