//! Exact vanishing test for rational combinations of `cos(pi*q)`.
//!
//! A combination with all angles over a common denominator `L` is a
//! polynomial in the primitive `2L`-th root of unity; it vanishes iff the
//! cyclotomic polynomial of order `2L` divides that polynomial.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, Zero};

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn mul_x_pow_minus_one(poly: &[i128], e: usize) -> Vec<i128> {
    let mut out = vec![0i128; poly.len() + e];
    for (i, &c) in poly.iter().enumerate() {
        out[i + e] = out[i + e].checked_add(c).expect("cyclotomic overflow");
        out[i] = out[i].checked_sub(c).expect("cyclotomic overflow");
    }
    out
}

/// Exact division by `x^e - 1`.
fn div_x_pow_minus_one(poly: &[i128], e: usize) -> Vec<i128> {
    let deg_q = poly.len() - 1 - e;
    let mut q = vec![0i128; deg_q + 1];
    // p[i] = q[i-e] - q[i]
    for i in 0..=deg_q {
        let prev = if i >= e { q[i - e] } else { 0 };
        q[i] = prev.checked_sub(poly[i]).expect("cyclotomic overflow");
    }
    q
}

/// Coefficients (ascending) of the `m`-th cyclotomic polynomial.
pub(crate) fn cyclotomic(m: u64) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&m) {
        return hit.clone();
    }

    let primes = prime_factors(m);
    let rad: u64 = primes.iter().product();
    // Phi_m(x) = Phi_rad(x^(m/rad)); Phi_rad = prod_{d | rad} (x^(rad/d) - 1)^mu(d)
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for mask in 0u32..(1 << primes.len()) {
        let d: u64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p)
            .product();
        let e = (rad / d) as usize;
        if mask.count_ones() % 2 == 0 {
            plus.push(e);
        } else {
            minus.push(e);
        }
    }
    let mut poly = vec![1i128];
    for e in plus {
        poly = mul_x_pow_minus_one(&poly, e);
    }
    for e in minus {
        poly = div_x_pow_minus_one(&poly, e);
    }
    // Signs: the product of an equal number of (x^e - 1) factors on each side
    // leaves the leading coefficient at +-1; normalise to monic.
    if *poly.last().unwrap() < 0 {
        poly.iter_mut().for_each(|c| *c = -*c);
    }

    let stretch = (m / rad) as usize;
    let mut out = vec![0i64; (poly.len() - 1) * stretch + 1];
    for (i, c) in poly.into_iter().enumerate() {
        out[i * stretch] = i64::try_from(c).expect("cyclotomic coefficient overflow");
    }
    cache.lock().unwrap().insert(m, out.clone());
    out
}

/// `true` iff `sum_j c_j cos(pi q_j)` is exactly zero.
pub(crate) fn vanishes(terms: &[(Ratio<i64>, BigRational)]) -> bool {
    if terms.is_empty() {
        return true;
    }
    let l: i64 = terms.iter().fold(1, |acc, (q, _)| acc.lcm(q.denom()));
    let m = 2 * l as usize;
    // even multiple of every denominator, so each cos term splits in halves
    let scale: BigInt = terms
        .iter()
        .fold(BigInt::from(1), |acc, (_, c)| acc.lcm(c.denom()))
        * 2;

    let mut poly = vec![BigInt::zero(); m];
    for (q, c) in terms {
        let a = (*q.numer() * (l / *q.denom())).rem_euclid(m as i64) as usize;
        let v = (c * BigRational::from_integer(scale.clone())).to_integer();
        if a == 0 {
            poly[0] += v;
        } else {
            let half: BigInt = v / 2;
            poly[a] += half.clone();
            poly[(m - a) % m] += half;
        }
    }

    let phi = cyclotomic(m as u64);
    let deg = phi.len() - 1;
    let nonzero: Vec<(usize, BigInt)> = phi
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, BigInt::from(c)))
        .collect();
    for i in (deg..poly.len()).rev() {
        if poly[i].is_zero() {
            continue;
        }
        let lead = std::mem::take(&mut poly[i]);
        for (t, c) in &nonzero {
            if *t == deg {
                continue;
            }
            poly[i - deg + t] -= &lead * c;
        }
    }
    poly.iter().take(deg).all(|c| c.is_zero())
}

pub(crate) fn abs_sum_f64(terms: &[(Ratio<i64>, BigRational)]) -> f64 {
    use num_traits::ToPrimitive;
    terms
        .iter()
        .map(|(_, c)| c.abs().to_f64().unwrap_or(f64::INFINITY))
        .sum()
}
