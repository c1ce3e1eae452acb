//! Bit strings and variable orders.
//!
//! Both use 1-based positions at their public surface: `bit(1)` is the first
//! symbol of the string, and an order lists variable indices `1..=n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn zeros(len: usize) -> Self {
        Self { bits: vec![false; len] }
    }

    pub fn ones(len: usize) -> Self {
        Self { bits: vec![true; len] }
    }

    /// Binary expansion of `index` over `len` symbols, most significant first.
    pub fn from_index(index: u64, len: usize) -> Self {
        let bits = (0..len)
            .map(|i| (index >> (len - 1 - i)) & 1 == 1)
            .collect();
        Self { bits }
    }

    /// Inverse of [`BitString::from_index`].
    pub fn index(&self) -> u64 {
        self.bits
            .iter()
            .fold(0u64, |acc, &b| (acc << 1) | u64::from(b))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// The `i`-th symbol, 1-based.
    pub fn bit(&self, i: usize) -> bool {
        self.bits[i - 1]
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn count_zeros(&self) -> usize {
        self.len() - self.count_ones()
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        BitString { bits }
    }

    /// `zeros` zeros followed by `ones` ones.
    pub fn zeros_then_ones(zeros: usize, ones: usize) -> Self {
        let mut bits = vec![false; zeros];
        bits.extend(std::iter::repeat_n(true, ones));
        Self { bits }
    }

    /// `ones` ones followed by `zeros` zeros.
    pub fn ones_then_zeros(ones: usize, zeros: usize) -> Self {
        let mut bits = vec![true; ones];
        bits.extend(std::iter::repeat_n(false, zeros));
        Self { bits }
    }

    /// Every string of length `len` in increasing index order.
    pub fn all(len: usize) -> impl Iterator<Item = BitString> {
        (0..1u64 << len).map(move |i| BitString::from_index(i, len))
    }
}

impl From<Vec<bool>> for BitString {
    fn from(bits: Vec<bool>) -> Self {
        Self { bits }
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Malformed(format!("'{other}' is not a bit"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitString::new)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl Serialize for BitString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A permutation `(i_1, ..., i_n)` of the variable indices `1..=n`; level `j`
/// of a program tests variable `i_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct VariableOrder {
    order: Vec<usize>,
}

impl VariableOrder {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidOrder(n));
            }
            seen[v - 1] = true;
        }
        Ok(Self { order })
    }

    pub fn natural(n: usize) -> Self {
        Self { order: (1..=n).collect() }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Variable tested at level `level` (1-based).
    pub fn var_at(&self, level: usize) -> usize {
        self.order[level - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    /// Reads `input` in this order: the result's `j`-th symbol is `input_{i_j}`.
    pub fn arrange(&self, input: &BitString) -> BitString {
        BitString::new(self.order.iter().map(|&v| input.bit(v)).collect())
    }

    /// Inverse of [`VariableOrder::arrange`]: places the `j`-th symbol of
    /// `arranged` at variable `i_j`.
    pub fn assignment(&self, arranged: &BitString) -> BitString {
        let mut bits = vec![false; self.len()];
        for (j, &v) in self.order.iter().enumerate() {
            bits[v - 1] = arranged.as_slice()[j];
        }
        BitString::new(bits)
    }

    /// All `n!` orders in lexicographic order.
    pub fn all(n: usize) -> Vec<VariableOrder> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=n).collect();
        loop {
            out.push(VariableOrder { order: current.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

impl<'de> Deserialize<'de> for VariableOrder {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let order = Vec::<usize>::deserialize(d)?;
        VariableOrder::new(order).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for VariableOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.order.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip_msb_first() {
        let s: BitString = "0110".parse().unwrap();
        assert_eq!(s.index(), 6);
        assert_eq!(BitString::from_index(6, 4), s);
        assert!(s.bit(2) && !s.bit(1));
    }

    #[test]
    fn order_rejects_non_permutations() {
        assert!(VariableOrder::new(vec![1, 1]).is_err());
        assert!(VariableOrder::new(vec![0, 1]).is_err());
        assert!(VariableOrder::new(vec![2, 3, 1]).is_ok());
    }

    #[test]
    fn arrange_and_assignment_are_inverse() {
        let order = VariableOrder::new(vec![3, 1, 2]).unwrap();
        let input: BitString = "100".parse().unwrap();
        let arranged = order.arrange(&input);
        assert_eq!(arranged.to_string(), "010");
        assert_eq!(order.assignment(&arranged), input);
    }

    #[test]
    fn all_orders_enumerates_factorial() {
        let orders = VariableOrder::all(4);
        assert_eq!(orders.len(), 24);
        assert_eq!(orders[0].as_slice(), &[1, 2, 3, 4]);
        assert_eq!(orders[23].as_slice(), &[4, 3, 2, 1]);
        assert_eq!(VariableOrder::all(0).len(), 1);
    }

    #[test]
    fn rejects_non_binary_text() {
        assert!("01a".parse::<BitString>().is_err());
    }
}
