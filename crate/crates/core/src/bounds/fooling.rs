//! Strong 1-fooling sets: verification, and search as a maximum clique over
//! the 1-cells of the cut matrix.

use std::collections::HashMap;

use crate::bits::{BitString, VariableOrder};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::function::BooleanFunction;

use super::arranged_table;
use super::clique::{max_clique, Graph};

pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Pairs `(sigma, gamma)` split at `cut` along `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoolingSet {
    pub order: VariableOrder,
    pub cut: usize,
    pub pairs: Vec<(BitString, BitString)>,
}

impl FoolingSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `sigma^i = 0^(n-p+1-i) 1^i`, `gamma^i = 0^(i-1) 1^(p-i)` for
    /// `i = 1..=p` at cut `n - p + 1`: a fooling set for `MOD^p_n` under
    /// any order when `2 <= p` and `2p <= n + 1`. For `p = 1` the cut would
    /// fall at `n`.
    pub fn for_mod(n: usize, p: usize, order: VariableOrder) -> Result<FoolingSet> {
        if p < 2 || 2 * p > n + 1 || order.len() != n {
            return Err(Error::InvalidParameter("need 2 <= p, 2p <= n + 1 and an order of length n".into()));
        }
        let cut = n - p + 1;
        let pairs = (1..=p)
            .map(|i| (BitString::zeros_then_ones(cut - i, i), BitString::zeros_then_ones(i - 1, p - i)))
            .collect();
        Ok(FoolingSet { order, cut, pairs })
    }
}

/// True iff every pair completes to 1 and every cross completion of two
/// distinct pairs completes to 0.
pub fn verify_fooling_set(f: &BooleanFunction, s: &FoolingSet) -> Result<bool> {
    let n = f.arity();
    if s.order.len() != n {
        return Err(Error::Malformed(format!("order has length {}, function arity {n}", s.order.len())));
    }
    if s.cut == 0 || s.cut >= n {
        return Err(Error::CutOutOfRange { cut: s.cut, arity: n });
    }
    for (sigma, gamma) in &s.pairs {
        if sigma.len() != s.cut || gamma.len() != n - s.cut {
            return Err(Error::Malformed(format!(
                "pair ({sigma}, {gamma}) does not split {n} variables at cut {}",
                s.cut
            )));
        }
    }
    let eval = |a: &BitString, b: &BitString| f.eval_split(&s.order, a, b);
    for (i, (si, gi)) in s.pairs.iter().enumerate() {
        if !eval(si, gi)? {
            return Ok(false);
        }
        for (sj, gj) in &s.pairs[i + 1..] {
            if eval(si, gj)? || eval(sj, gi)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Result of a fooling-set search; `optimal` is false when the node budget
/// ran out before the search completed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoolingSearch {
    pub set: FoolingSet,
    pub optimal: bool,
    pub verified: bool,
    pub nodes: u64,
}

/// Distinct patterns in first-occurrence order: `(representative, pattern)`.
fn distinct<T: Clone + Eq + std::hash::Hash>(items: impl Iterator<Item = (usize, T)>) -> Vec<(usize, T)> {
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for (i, pattern) in items {
        if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(pattern.clone()) {
            e.insert(i);
            out.push((i, pattern));
        }
    }
    out
}

/// Largest strong 1-fooling set at one cut (within `budget` search nodes).
///
/// Prefixes with identical rows of the cut matrix (and suffixes with
/// identical columns) are interchangeable and can contribute at most one
/// pair, so only the first of each class is kept.
pub fn search_max_fooling_set(f: &BooleanFunction, order: &VariableOrder, cut: usize, budget: u64) -> Result<FoolingSearch> {
    let n = f.arity();
    if cut == 0 || cut >= n {
        return Err(Error::CutOutOfRange { cut, arity: n });
    }
    let table = arranged_table(f, order)?;
    let cols = 1usize << (n - cut);
    let rows = distinct((0..1usize << cut).map(|r| (r, &table[r * cols..(r + 1) * cols])));
    let columns = distinct((0..cols).map(|c| (c, rows.iter().map(|(_, row)| row[c]).collect::<Vec<bool>>())));
    let m = |r: usize, c: usize| rows[r].1[columns[c].0];

    let mut cells = Vec::new();
    for r in 0..rows.len() {
        for c in 0..columns.len() {
            if m(r, c) {
                cells.push((r, c));
            }
        }
    }
    let mut g = Graph::new(cells.len());
    for (a, &(r1, c1)) in cells.iter().enumerate() {
        for (b, &(r2, c2)) in cells.iter().enumerate().skip(a + 1) {
            if r1 != r2 && c1 != c2 && !m(r1, c2) && !m(r2, c1) {
                g.add_edge(a, b);
            }
        }
    }
    let found = max_clique(&g, budget);
    let pairs = found
        .clique
        .iter()
        .map(|&v| {
            let (r, c) = cells[v];
            (BitString::from_index(rows[r].0 as u64, cut), BitString::from_index(columns[c].0 as u64, n - cut))
        })
        .collect();
    let set = FoolingSet { order: order.clone(), cut, pairs };
    let verified = verify_fooling_set(f, &set)?;
    Ok(FoolingSearch { set, optimal: found.optimal, verified, nodes: found.nodes })
}

/// Best fooling set over all cuts `1..n`; ties go to the smallest cut.
pub fn search_best_cut(f: &BooleanFunction, order: &VariableOrder, budget: u64, exec: Exec) -> Result<FoolingSearch> {
    let n = f.arity();
    if n < 2 {
        return Err(Error::CutOutOfRange { cut: 1, arity: n });
    }
    let results: Vec<Result<FoolingSearch>> =
        exec::map_indexed(exec, n - 1, |i| search_max_fooling_set(f, order, i + 1, budget));
    let mut best: Option<FoolingSearch> = None;
    let mut optimal = true;
    for r in results {
        let r = r?;
        optimal &= r.optimal;
        if best.as_ref().is_none_or(|b| r.set.len() > b.set.len()) {
            best = Some(r);
        }
    }
    let mut best = best.expect("at least one cut");
    best.optimal = optimal;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn brute_force_max(f: &BooleanFunction, order: &VariableOrder, cut: usize) -> usize {
        let n = f.arity();
        let mut cells = Vec::new();
        for s in 0..1u64 << cut {
            for g in 0..1u64 << (n - cut) {
                let (s, g) = (BitString::from_index(s, cut), BitString::from_index(g, n - cut));
                if f.eval_split(order, &s, &g).unwrap() {
                    cells.push((s, g));
                }
            }
        }
        let mut best = 0;
        for mask in 0u64..1 << cells.len() {
            let pairs: Vec<_> = (0..cells.len()).filter(|i| mask >> i & 1 == 1).map(|i| cells[i].clone()).collect();
            if pairs.len() > best && verify_fooling_set(f, &FoolingSet { order: order.clone(), cut, pairs }).unwrap() {
                best = mask.count_ones() as usize;
            }
        }
        best
    }

    #[test]
    fn mod_family_verifies() {
        let s = FoolingSet::for_mod(6, 3, VariableOrder::natural(6)).unwrap();
        assert_eq!(s.cut, 4);
        assert_eq!(s.len(), 3);
        assert!(verify_fooling_set(&BooleanFunction::modulo(6, 3).unwrap(), &s).unwrap());
    }

    #[test]
    fn singleton_on_a_one_verifies() {
        let f = BooleanFunction::exact(4, 2).unwrap();
        let s = FoolingSet { order: VariableOrder::natural(4), cut: 2, pairs: vec![(bs("10"), bs("10"))] };
        assert!(verify_fooling_set(&f, &s).unwrap());
    }

    #[test]
    fn exact_two_of_four_pairs() {
        // cross completions 11.01 and 10.00 both have a count other than 2
        let f = BooleanFunction::exact(4, 2).unwrap();
        let s = FoolingSet { order: VariableOrder::natural(4), cut: 2, pairs: vec![(bs("11"), bs("00")), (bs("10"), bs("01"))] };
        assert!(verify_fooling_set(&f, &s).unwrap());
        let t = FoolingSet { order: VariableOrder::natural(4), cut: 2, pairs: vec![(bs("11"), bs("00")), (bs("01"), bs("10"))] };
        assert!(verify_fooling_set(&f, &t).unwrap());
        let u = FoolingSet { order: VariableOrder::natural(4), cut: 2, pairs: vec![(bs("10"), bs("01")), (bs("01"), bs("10"))] };
        assert!(!verify_fooling_set(&f, &u).unwrap());
    }

    #[test]
    fn malformed_pairs_are_errors() {
        let f = BooleanFunction::exact(4, 2).unwrap();
        let s = FoolingSet { order: VariableOrder::natural(4), cut: 2, pairs: vec![(bs("1"), bs("100"))] };
        assert!(matches!(verify_fooling_set(&f, &s), Err(Error::Malformed(_))));
        let t = FoolingSet { order: VariableOrder::natural(4), cut: 4, pairs: vec![] };
        assert!(matches!(verify_fooling_set(&f, &t), Err(Error::CutOutOfRange { .. })));
    }

    #[test]
    fn search_examples() {
        let nat = VariableOrder::natural(4);
        let and = BooleanFunction::and(4);
        for cut in 1..4 {
            assert_eq!(search_max_fooling_set(&and, &nat, cut, DEFAULT_BUDGET).unwrap().set.len(), 1);
        }
        let m24 = BooleanFunction::modulo(4, 2).unwrap();
        let r = search_max_fooling_set(&m24, &nat, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.set.len(), 2);
        assert!(r.optimal && r.verified);
        let m36 = BooleanFunction::modulo(6, 3).unwrap();
        let best = search_best_cut(&m36, &VariableOrder::natural(6), DEFAULT_BUDGET, Exec::Sequential).unwrap();
        assert_eq!(best.set.len(), 3);
        assert!(best.verified);
    }

    #[test]
    fn search_matches_brute_force_on_small_functions() {
        let fns = [
            BooleanFunction::exact(4, 2).unwrap(),
            BooleanFunction::modulo(4, 2).unwrap(),
            BooleanFunction::not_exact(4, 1).unwrap(),
            BooleanFunction::from_table(crate::function::TruthTable::from_fn(4, |i| (i * 7 + 3) % 5 < 2)),
        ];
        for f in &fns {
            let order = VariableOrder::new(vec![2, 4, 1, 3]).unwrap();
            for cut in 1..4 {
                let r = search_max_fooling_set(f, &order, cut, DEFAULT_BUDGET).unwrap();
                assert_eq!(r.set.len(), brute_force_max(f, &order, cut), "{f} cut {cut}");
            }
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let f = BooleanFunction::from_table(crate::function::TruthTable::from_fn(8, |i| (i * 2654435761) % 7 < 3));
        let order = VariableOrder::natural(8);
        let a = search_best_cut(&f, &order, DEFAULT_BUDGET, Exec::Sequential).unwrap();
        let b = search_best_cut(&f, &order, DEFAULT_BUDGET, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
