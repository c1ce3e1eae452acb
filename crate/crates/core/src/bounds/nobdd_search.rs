//! Exhaustive search for small-width NOBDDs over tiny arities.
//!
//! A partial program is summarized by its configuration at level `l`: the
//! reachable state set `R(sigma)` for every prefix `sigma` of length `l`.
//! Configurations are explored depth first, deduplicated up to relabeling
//! of states, and pruned by conditions every completion must satisfy:
//! an empty set forces the subfunction to be 0, and `R(s) subset R(t)`
//! forces `f|s <= f|t`. The last level is solved in closed form: a state
//! may lead to acceptance on bit `b` only if no prefix `s` with
//! `f(s b) = 0` reaches it.
//!
//! Two models are searched. In the partial model (the program format's
//! own) a state may have no successor on a bit, which silently ends that
//! path. In the total model every state keeps at least one successor, as
//! for 0-1 stochastic transitions read with threshold 0.

use std::collections::HashSet;

use crate::bits::VariableOrder;
use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::matrix::Matrix;
use crate::program::{Level, LeveledProgram, Semantics};
use crate::scalar::Scalar;
use crate::semantics::{computes_function, Mode};

use super::arranged_table;

pub const MAX_ARITY: usize = 6;
pub const MAX_WIDTH: usize = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NobddModel {
    #[default]
    Partial,
    Total,
}

impl std::fmt::Display for NobddModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NobddModel::Partial => "partial",
            NobddModel::Total => "total",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NobddSearch {
    pub function: String,
    pub order: VariableOrder,
    pub model: NobddModel,
    /// Smallest width with a witness, if any up to the searched bound.
    pub min_width: Option<usize>,
    pub witness: Option<LeveledProgram>,
    /// Widths for which the search completed without a witness.
    pub ruled_out: Vec<usize>,
    pub configurations: u64,
}

/// State successor sets per level and bit: `succ[l][b][q]` is a bitmask.
type Transitions = Vec<[Vec<u8>; 2]>;

struct Search<'a> {
    table: &'a [bool],
    n: usize,
    w: usize,
    total: bool,
    perms: Vec<Vec<usize>>,
    visited: Vec<HashSet<Vec<u8>>>,
    configurations: u64,
}

fn subset(a: u8, b: u8) -> bool {
    a & !b == 0
}

impl Search<'_> {
    fn block(&self, level: usize, s: usize) -> &[bool] {
        let size = 1usize << (self.n - level);
        &self.table[s * size..(s + 1) * size]
    }

    fn pair_ok(&self, level: usize, c: &[u8], s: usize, t: usize) -> bool {
        let (bs, bt) = (self.block(level, s), self.block(level, t));
        let le = |x: &[bool], y: &[bool]| x.iter().zip(y).all(|(a, b)| !a || *b);
        (!subset(c[s], c[t]) || le(bs, bt)) && (!subset(c[t], c[s]) || le(bt, bs))
    }

    fn single_ok(&self, level: usize, c: &[u8], s: usize) -> bool {
        c[s] != 0 || self.block(level, s).iter().all(|&x| !x)
    }

    fn canonical(&self, c: &[u8]) -> Vec<u8> {
        self.perms
            .iter()
            .map(|p| {
                c.iter()
                    .map(|&m| (0..self.w).filter(|&q| m >> q & 1 == 1).fold(0u8, |acc, q| acc | 1 << p[q]))
                    .collect::<Vec<u8>>()
            })
            .min()
            .expect("at least the identity")
    }

    /// Acceptance sets `a_b` for the last level, if the configuration at
    /// level `n - 1` can be completed.
    fn finish(&self, c: &[u8]) -> Option<[u8; 2]> {
        let mut out = [0u8; 2];
        for b in 0..2 {
            let value = |s: usize| self.table[2 * s + b];
            let zero = (0..c.len()).filter(|&s| !value(s)).fold(0u8, |acc, s| acc | c[s]);
            let full = (1u8 << self.w) - 1;
            if (0..c.len()).any(|s| value(s) && c[s] & !zero == 0) {
                return None;
            }
            // a total width-1 program cannot steer anything away from its accepting state
            if self.total && self.w == 1 && zero != 0 {
                return None;
            }
            out[b] = full & !zero;
        }
        Some(out)
    }

    fn dfs(&mut self, level: usize, c: Vec<u8>, path: &mut Transitions) -> Option<[u8; 2]> {
        self.configurations += 1;
        if level == self.n - 1 {
            return self.finish(&c);
        }
        let used: Vec<usize> = (0..self.w).filter(|&q| c.iter().any(|m| m >> q & 1 == 1)).collect();
        let choices = 1usize << (self.w * used.len());
        let next = level + 1;
        let mut halves: [Vec<(Vec<u8>, Vec<u8>)>; 2] = [Vec::new(), Vec::new()];
        for (b, out) in halves.iter_mut().enumerate() {
            let mut seen = HashSet::new();
            'codes: for code in 0..choices {
                let mut succ = vec![0u8; self.w];
                for (i, &q) in used.iter().enumerate() {
                    succ[q] = (code >> (self.w * i) & ((1 << self.w) - 1)) as u8;
                    if self.total && succ[q] == 0 {
                        continue 'codes;
                    }
                }
                let half: Vec<u8> = c
                    .iter()
                    .map(|&m| used.iter().filter(|&&q| m >> q & 1 == 1).fold(0u8, |acc, &q| acc | succ[q]))
                    .collect();
                if !seen.insert(half.clone()) {
                    continue;
                }
                let mut full = vec![0u8; 2 * c.len()];
                for (s, &m) in half.iter().enumerate() {
                    full[2 * s + b] = m;
                }
                let idx = |s: usize| 2 * s + b;
                let ok = (0..c.len()).all(|s| self.single_ok(next, &full, idx(s)))
                    && (0..c.len()).all(|s| (s + 1..c.len()).all(|t| self.pair_ok(next, &full, idx(s), idx(t))));
                if ok {
                    out.push((half, succ));
                }
            }
        }
        let [h0, h1] = halves;
        for (half0, succ0) in &h0 {
            for (half1, succ1) in &h1 {
                let mut full = vec![0u8; 2 * c.len()];
                for s in 0..c.len() {
                    full[2 * s] = half0[s];
                    full[2 * s + 1] = half1[s];
                }
                let cross = (0..c.len()).all(|s| (0..c.len()).all(|t| self.pair_ok(next, &full, 2 * s, 2 * t + 1)));
                if !cross {
                    continue;
                }
                let key = self.canonical(&full);
                if !self.visited[next].insert(key) {
                    continue;
                }
                path.push([succ0.clone(), succ1.clone()]);
                if let Some(a) = self.dfs(next, full, path) {
                    return Some(a);
                }
                path.pop();
            }
        }
        None
    }
}

fn permutations(w: usize) -> Vec<Vec<usize>> {
    if w == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(w - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, w - 1);
            out.push(q);
        }
    }
    out
}

fn zero_one(w: usize, succ: &[u8]) -> Matrix {
    if succ.iter().all(|m| m.count_ones() == 1) {
        return Matrix::Map(succ.iter().map(|m| m.trailing_zeros() as usize).collect());
    }
    Matrix::dense(
        (0..w)
            .map(|r| (0..w).map(|c| Scalar::from_integer(i64::from(succ[c] >> r & 1))).collect())
            .collect(),
    )
}

fn witness(order: &VariableOrder, w: usize, total: bool, start: u8, path: &Transitions, accept: [u8; 2]) -> Result<LeveledProgram> {
    // in the total model rejected paths end in state 1 (or stay put at width 1)
    let reject = if total { if w > 1 { 2u8 } else { 1 } } else { 0 };
    let last = accept.map(|a| (0..w).map(|q| if a >> q & 1 == 1 { 1u8 } else { reject }).collect::<Vec<u8>>());
    // states no prefix reaches get the identity in the total model
    let fill = |s: &[u8]| -> Vec<u8> {
        s.iter().enumerate().map(|(q, &m)| if total && m == 0 { 1 << q } else { m }).collect()
    };
    let middle: Vec<[Vec<u8>; 2]> = path.iter().map(|[s0, s1]| [fill(s0), fill(s1)]).collect();
    let levels = middle
        .iter()
        .map(|[s0, s1]| (s0.as_slice(), s1.as_slice()))
        .chain(std::iter::once((last[0].as_slice(), last[1].as_slice())))
        .enumerate()
        .map(|(j, (s0, s1))| Level { var: order.var_at(j + 1), on0: zero_one(w, s0), on1: zero_one(w, s1) })
        .collect();
    let initial = (0..w).map(|q| Scalar::from_integer(i64::from(start >> q & 1))).collect();
    LeveledProgram::new(Semantics::Nondeterministic, order.clone(), levels, initial, vec![0])
}

/// Searches widths `1..=max_width` for an NOBDD computing `f` along
/// `order`. Found witnesses are checked by full enumeration.
pub fn nobdd_min_width(f: &BooleanFunction, order: &VariableOrder, max_width: usize, model: NobddModel) -> Result<NobddSearch> {
    let n = f.arity();
    if n == 0 || n > MAX_ARITY || max_width == 0 || max_width > MAX_WIDTH {
        return Err(Error::InvalidParameter(format!(
            "NOBDD search needs 1 <= n <= {MAX_ARITY} and 1 <= width <= {MAX_WIDTH}"
        )));
    }
    let table = arranged_table(f, order)?;
    if table.iter().all(|&x| !x) {
        let levels = (1..=n)
            .map(|j| Level { var: order.var_at(j), on0: Matrix::identity(1), on1: Matrix::identity(1) })
            .collect();
        let p = LeveledProgram::new(Semantics::Nondeterministic, order.clone(), levels, vec![Scalar::one()], vec![])?;
        return Ok(NobddSearch {
            function: f.name(),
            order: order.clone(),
            model,
            min_width: Some(1),
            witness: Some(p),
            ruled_out: Vec::new(),
            configurations: 0,
        });
    }
    let mut result = NobddSearch {
        function: f.name(),
        order: order.clone(),
        model,
        min_width: None,
        witness: None,
        ruled_out: Vec::new(),
        configurations: 0,
    };
    for w in 1..=max_width {
        let mut search = Search {
            table: &table,
            n,
            w,
            total: model == NobddModel::Total,
            perms: permutations(w),
            visited: vec![HashSet::new(); n],
            configurations: 0,
        };
        let mut found = None;
        for size in 1..=w {
            let start = ((1u16 << size) - 1) as u8;
            let root = vec![start];
            if !search.single_ok(0, &root, 0) {
                continue;
            }
            let mut path = Vec::new();
            if let Some(accept) = search.dfs(0, root, &mut path) {
                found = Some(witness(order, w, model == NobddModel::Total, start, &path, accept)?);
                break;
            }
        }
        result.configurations += search.configurations;
        match found {
            Some(p) => {
                if !computes_function(&p, f, Mode::Nondeterministic)?.passed() {
                    return Err(Error::InvalidProgram("search produced a program that fails verification".into()));
                }
                result.min_width = Some(w);
                result.witness = Some(p);
                break;
            }
            None => result.ruled_out.push(w),
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::TruthTable;

    fn search(f: &BooleanFunction, w: usize, model: NobddModel) -> NobddSearch {
        nobdd_min_width(f, &VariableOrder::natural(f.arity()), w, model).unwrap()
    }

    #[test]
    fn and_needs_a_sink_only_in_the_total_model() {
        let and = BooleanFunction::and(4);
        assert_eq!(search(&and, 3, NobddModel::Partial).min_width, Some(1));
        let t = search(&and, 3, NobddModel::Total);
        assert_eq!((t.min_width, t.ruled_out), (Some(2), vec![1]));
    }

    #[test]
    fn exact_widths_in_the_total_model() {
        for (n, k, w) in [(3, 1, Some(3)), (4, 1, Some(3)), (4, 2, Some(3)), (5, 2, None), (4, 0, Some(2))] {
            let r = search(&BooleanFunction::exact(n, k).unwrap(), 3, NobddModel::Total);
            assert_eq!(r.min_width, w, "n={n} k={k}");
            if let Some(p) = r.witness {
                assert_eq!(p.width(), w.unwrap());
            }
        }
    }

    #[test]
    fn exact_widths_in_the_partial_model() {
        for (n, k, w) in [(3, 1, 2), (4, 1, 2), (4, 2, 3), (5, 2, 3), (4, 4, 1)] {
            let r = search(&BooleanFunction::exact(n, k).unwrap(), 3, NobddModel::Partial);
            assert_eq!(r.min_width, Some(w), "n={n} k={k}");
        }
    }

    #[test]
    fn mod_widths() {
        for model in [NobddModel::Partial, NobddModel::Total] {
            assert_eq!(search(&BooleanFunction::modulo(4, 2).unwrap(), 3, model).min_width, Some(2));
            assert_eq!(search(&BooleanFunction::modulo(5, 3).unwrap(), 3, model).min_width, Some(3));
        }
    }

    #[test]
    fn constants() {
        for model in [NobddModel::Partial, NobddModel::Total] {
            assert_eq!(search(&BooleanFunction::constant(3, false), 1, model).min_width, Some(1));
            assert_eq!(search(&BooleanFunction::constant(3, true), 1, model).min_width, Some(1));
        }
    }

    /// Functions of two variables computed by some width-`w` NOBDD with
    /// arbitrary initial and accepting sets.
    fn brute_force(w: usize, total: bool) -> Vec<bool> {
        let sets = 1usize << w;
        let maps: Vec<Vec<usize>> = (0..sets.pow(w as u32))
            .map(|c| (0..w).map(|q| c / sets.pow(q as u32) % sets).collect())
            .filter(|m: &Vec<usize>| !total || m.iter().all(|&x| x != 0))
            .collect();
        let step = |r: usize, m: &[usize]| (0..w).filter(|q| r >> q & 1 == 1).fold(0, |acc, q| acc | m[q]);
        let mut seen = vec![false; 16];
        for start in 1..sets {
            for acc in 0..sets {
                for a in &maps {
                    for b in &maps {
                        for c in &maps {
                            for d in &maps {
                                let t = (0..4).fold(0, |t, i| {
                                    let r1 = step(start, if i >> 1 == 1 { b } else { a });
                                    let r2 = step(r1, if i & 1 == 1 { d } else { c });
                                    t | usize::from(r2 & acc != 0) << i
                                });
                                seen[t] = true;
                            }
                        }
                    }
                }
            }
        }
        seen
    }

    #[test]
    fn matches_brute_force_on_two_variables() {
        for model in [NobddModel::Partial, NobddModel::Total] {
            let total = model == NobddModel::Total;
            let (one, two) = (brute_force(1, total), brute_force(2, total));
            for t in 0u64..16 {
                let f = BooleanFunction::from_table(TruthTable::from_fn(2, |i| t >> i & 1 == 1));
                let r = search(&f, 2, model);
                let expected = if one[t as usize] { Some(1) } else if two[t as usize] { Some(2) } else { None };
                assert_eq!(r.min_width, expected, "{model} table {t:04b}");
            }
        }
    }

    #[test]
    fn rejects_out_of_range() {
        let m = NobddModel::Partial;
        assert!(nobdd_min_width(&BooleanFunction::and(7), &VariableOrder::natural(7), 2, m).is_err());
        assert!(nobdd_min_width(&BooleanFunction::and(3), &VariableOrder::natural(3), 4, m).is_err());
    }
}
