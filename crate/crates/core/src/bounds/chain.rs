//! Distinguishing chains: a machine-independent lower bound for NUOBDDs
//! that read variables in a given order.
//!
//! A chain fixes, for every level `l`, a list `Phi_l` of prefixes of length
//! `l`. `Phi_0` holds the empty prefix. `Phi_l` starts with every member of
//! `Phi_{l-1}` extended by one common bit `b_l`; applying the same unitary
//! to independent vectors keeps them independent. It then appends new
//! prefixes `tau`, each with a suffix `gamma` such that `f(tau gamma) = 1`
//! while `f(sigma gamma) = 0` for every prefix already in the list; the
//! state of `tau` is then outside the span of the earlier states. So in
//! any NUOBDD computing `f` with this order the states of `Phi_l` are
//! linearly independent, and the width is at least `max_l |Phi_l|`.

use crate::bits::{BitString, VariableOrder};
use crate::error::{Error, Result};
use crate::function::{check_cap, BooleanFunction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub bit: bool,
    /// `(tau, gamma)` in the order they are appended.
    pub added: Vec<(BitString, BitString)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishingChain {
    pub order: VariableOrder,
    /// `steps[l - 1]` builds `Phi_l` from `Phi_{l-1}`.
    pub steps: Vec<ChainStep>,
}

impl DistinguishingChain {
    /// `Phi_level`.
    pub fn members(&self, level: usize) -> Vec<BitString> {
        let mut phi = vec![BitString::zeros(0)];
        for step in &self.steps[..level] {
            let b = BitString::new(vec![step.bit]);
            phi = phi.iter().map(|s| s.concat(&b)).collect();
            phi.extend(step.added.iter().map(|(tau, _)| tau.clone()));
        }
        phi
    }

    /// `(level, |Phi_level|)` with the largest size; ties go to the lowest level.
    pub fn best(&self) -> (usize, usize) {
        let mut size = 1;
        let mut best = (0, 1);
        for (l, step) in self.steps.iter().enumerate() {
            size += step.added.len();
            if size > best.1 {
                best = (l + 1, size);
            }
        }
        best
    }

    pub fn size(&self) -> usize {
        self.best().1
    }
}

/// Replays the chain against `f`.
pub fn verify_chain(f: &BooleanFunction, chain: &DistinguishingChain) -> Result<bool> {
    let n = f.arity();
    if chain.order.len() != n || chain.steps.len() > n {
        return Err(Error::Malformed("chain does not match the function arity".into()));
    }
    let mut phi = vec![BitString::zeros(0)];
    for (l, step) in chain.steps.iter().enumerate() {
        let level = l + 1;
        let b = BitString::new(vec![step.bit]);
        phi = phi.iter().map(|s| s.concat(&b)).collect();
        for (tau, gamma) in &step.added {
            if tau.len() != level || gamma.len() != n - level {
                return Err(Error::Malformed(format!("pair ({tau}, {gamma}) does not split at level {level}")));
            }
            if !f.eval_split(&chain.order, tau, gamma)? {
                return Ok(false);
            }
            for sigma in &phi {
                if f.eval_split(&chain.order, sigma, gamma)? {
                    return Ok(false);
                }
            }
            phi.push(tau.clone());
        }
    }
    Ok(true)
}

fn extend_greedily(f: &BooleanFunction, order: &VariableOrder, phi: &[BitString], level: usize) -> Vec<(BitString, BitString)> {
    let n = f.arity();
    let mut current = phi.to_vec();
    let mut added = Vec::new();
    for t in 0..1u64 << level {
        let tau = BitString::from_index(t, level);
        if current.contains(&tau) {
            continue;
        }
        let gamma = (0..1u64 << (n - level)).map(|g| BitString::from_index(g, n - level)).find(|gamma| {
            f.eval_split(order, &tau, gamma).unwrap_or(false)
                && current.iter().all(|s| !f.eval_split(order, s, gamma).unwrap_or(true))
        });
        if let Some(gamma) = gamma {
            current.push(tau.clone());
            added.push((tau, gamma));
        }
    }
    added
}

/// Chain built level by level: try both extension bits, append every
/// prefix (in lexicographic order) that some suffix separates from the
/// current list, and keep the bit giving the longer list (0 on ties).
pub fn greedy_chain(f: &BooleanFunction, order: &VariableOrder) -> Result<DistinguishingChain> {
    let n = f.arity();
    if order.len() != n {
        return Err(Error::LengthMismatch { expected: n, actual: order.len() });
    }
    check_cap(n)?;
    let mut phi = vec![BitString::zeros(0)];
    let mut steps = Vec::with_capacity(n);
    for level in 1..=n {
        let mut best: Option<(ChainStep, Vec<BitString>)> = None;
        for bit in [false, true] {
            let b = BitString::new(vec![bit]);
            let base: Vec<BitString> = phi.iter().map(|s| s.concat(&b)).collect();
            let added = extend_greedily(f, order, &base, level);
            let mut next = base;
            next.extend(added.iter().map(|(t, _)| t.clone()));
            if best.as_ref().is_none_or(|(_, p)| next.len() > p.len()) {
                best = Some((ChainStep { bit, added }, next));
            }
        }
        let (step, next) = best.expect("two candidates");
        steps.push(step);
        phi = next;
    }
    Ok(DistinguishingChain { order: order.clone(), steps })
}

fn counting_chain(n: usize, top: usize, one: bool, gamma_for: impl Fn(usize) -> BitString) -> DistinguishingChain {
    let steps = (1..=top)
        .map(|l| {
            let tau = if one { BitString::ones(l) } else { BitString::zeros(l) };
            ChainStep { bit: !one, added: vec![(tau, gamma_for(l))] }
        })
        .collect();
    DistinguishingChain { order: VariableOrder::natural(n), steps }
}

/// The counting chain for `EXACT^k_n`: extend by 0 and add `1^l` with
/// suffix `1^(k-l) 0^(n-k)` up to level `k` when `2k >= n`; 0s and 1s
/// swapped otherwise. Size `max(k, n-k) + 1`.
pub fn exact_chain(n: usize, k: usize) -> Result<DistinguishingChain> {
    if k > n {
        return Err(Error::InvalidParameter("k <= n required".into()));
    }
    Ok(if 2 * k >= n {
        counting_chain(n, k, true, |l| BitString::ones_then_zeros(k - l, n - k))
    } else {
        counting_chain(n, n - k, false, |l| BitString::zeros_then_ones(n - k - l, k))
    })
}

/// The counting chain for `MOD^p_n`: extend by 0 and add `1^l` with suffix
/// `1^(p-l) 0^(n-p)` up to level `p - 1`. Size `p`.
pub fn mod_chain(n: usize, p: usize) -> Result<DistinguishingChain> {
    if p == 0 || p > n {
        return Err(Error::InvalidParameter("1 <= p <= n required".into()));
    }
    Ok(counting_chain(n, p - 1, true, |l| BitString::ones_then_zeros(p - l, n - p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_chains_verify_with_expected_size() {
        for n in 1..=8 {
            for k in 0..=n {
                let f = BooleanFunction::exact(n, k).unwrap();
                let c = exact_chain(n, k).unwrap();
                assert!(verify_chain(&f, &c).unwrap(), "n={n} k={k}");
                assert_eq!(c.size(), k.max(n - k) + 1);
            }
        }
    }

    #[test]
    fn mod_chains_verify_with_expected_size() {
        for n in 1..=8 {
            for p in 1..=n {
                let f = BooleanFunction::modulo(n, p).unwrap();
                let c = mod_chain(n, p).unwrap();
                assert!(verify_chain(&f, &c).unwrap(), "n={n} p={p}");
                assert_eq!(c.size(), p);
            }
        }
    }

    #[test]
    fn greedy_matches_counting_chains() {
        for n in 2..=7 {
            for k in 0..=n {
                let f = BooleanFunction::exact(n, k).unwrap();
                let g = greedy_chain(&f, &VariableOrder::natural(n)).unwrap();
                assert!(verify_chain(&f, &g).unwrap());
                assert_eq!(g.size(), k.max(n - k) + 1, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn tampered_chain_fails() {
        let f = BooleanFunction::exact(4, 2).unwrap();
        let mut c = exact_chain(4, 2).unwrap();
        c.steps[1].added[0].1 = BitString::ones(2);
        assert!(!verify_chain(&f, &c).unwrap());
    }

    #[test]
    fn members_follow_the_steps() {
        let c = exact_chain(4, 3).unwrap();
        let m: Vec<String> = c.members(2).iter().map(ToString::to_string).collect();
        assert_eq!(m, ["00", "10", "11"]);
        assert_eq!(c.best(), (3, 4));
    }

    #[test]
    fn not_exact_chain_is_small() {
        // the cheap function: no chain can exceed the width-2 construction
        let f = BooleanFunction::not_exact(6, 3).unwrap();
        let g = greedy_chain(&f, &VariableOrder::natural(6)).unwrap();
        assert!(verify_chain(&f, &g).unwrap());
        assert!(g.size() <= 2);
    }
}
