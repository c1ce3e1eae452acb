//! Minimum width of deterministic OBDDs, computed from distinct
//! subfunctions, and the minimal leveled program realizing it.

use std::collections::HashMap;

use crate::bits::VariableOrder;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::function::BooleanFunction;
use crate::matrix::Matrix;
use crate::program::{Level, LeveledProgram, Semantics};
use crate::scalar::Scalar;

use super::arranged_table;

/// Largest arity for the search over all orders.
pub const ALL_ORDERS_MAX_ARITY: usize = 8;

/// Subfunction ids per level: `ids[l][s]` for the prefix with index `s`,
/// numbered by first occurrence.
fn subfunction_ids(table: &[bool], n: usize) -> Vec<Vec<usize>> {
    (0..=n)
        .map(|l| {
            let size = 1usize << (n - l);
            let mut seen: HashMap<&[bool], usize> = HashMap::new();
            (0..1usize << l)
                .map(|s| {
                    let next = seen.len();
                    *seen.entry(&table[s * size..(s + 1) * size]).or_insert(next)
                })
                .collect()
        })
        .collect()
}

/// Number of distinct subfunctions after each prefix length `0..=n`.
pub fn det_level_widths(f: &BooleanFunction, order: &VariableOrder) -> Result<Vec<usize>> {
    let table = arranged_table(f, order)?;
    Ok(subfunction_ids(&table, f.arity())
        .iter()
        .map(|ids| ids.iter().max().map_or(0, |m| m + 1))
        .collect())
}

/// Minimum width of a deterministic OBDD for `f` reading `order`.
pub fn det_min_width_fixed_order(f: &BooleanFunction, order: &VariableOrder) -> Result<usize> {
    Ok(det_level_widths(f, order)?.into_iter().max().unwrap_or(1))
}

/// Minimum over all orders; ties go to the lexicographically first order.
pub fn det_min_width_all_orders(f: &BooleanFunction, exec: Exec) -> Result<(usize, VariableOrder)> {
    let n = f.arity();
    if n > ALL_ORDERS_MAX_ARITY {
        return Err(Error::InvalidParameter(format!(
            "all-orders search supports n <= {ALL_ORDERS_MAX_ARITY}, got {n}"
        )));
    }
    let orders = VariableOrder::all(n);
    let widths = exec::map_slice(exec, &orders, |o| det_min_width_fixed_order(f, o));
    let mut best: Option<(usize, VariableOrder)> = None;
    for (w, o) in widths.into_iter().zip(orders) {
        let w = w?;
        if best.as_ref().is_none_or(|(b, _)| w < *b) {
            best = Some((w, o));
        }
    }
    Ok(best.expect("at least one order"))
}

/// The minimal deterministic program for `f` along `order`: state `i` at
/// level `l` is the `i`-th distinct subfunction; unused states are padding
/// that maps to state 0.
pub fn minimal_obdd(f: &BooleanFunction, order: &VariableOrder) -> Result<LeveledProgram> {
    let n = f.arity();
    let table = arranged_table(f, order)?;
    let ids = subfunction_ids(&table, n);
    let d = ids.iter().flatten().max().map_or(1, |m| m + 1);
    let levels = (0..n)
        .map(|l| {
            let mut on = [vec![0; d], vec![0; d]];
            for (s, &id) in ids[l].iter().enumerate() {
                on[0][id] = ids[l + 1][2 * s];
                on[1][id] = ids[l + 1][2 * s + 1];
            }
            let [on0, on1] = on;
            Level { var: order.var_at(l + 1), on0: Matrix::Map(on0), on1: Matrix::Map(on1) }
        })
        .collect();
    let mut initial = vec![Scalar::zero(); d];
    initial[0] = Scalar::one();
    let accepting = (0..1usize << n).filter(|&s| table[s]).map(|s| ids[n][s]).collect();
    LeveledProgram::new(Semantics::Deterministic, order.clone(), levels, initial, accepting)
}
