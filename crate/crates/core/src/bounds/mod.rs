//! Width lower bounds and the certificates that carry them.

mod clique;
pub mod chain;
pub mod certificate;
pub mod detwidth;
pub mod fooling;
pub mod hierarchy;
pub mod nobdd_search;
pub mod span;

use crate::bits::VariableOrder;
use crate::error::{Error, Result};
use crate::function::{check_cap, BooleanFunction};

/// Truth table indexed by the input arranged along `order`: entry `i` is
/// `f` on the assignment whose order-position `j` holds bit `j` of `i`
/// (MSB first). Prefixes of the order are therefore contiguous blocks.
pub(crate) fn arranged_table(f: &BooleanFunction, order: &VariableOrder) -> Result<Vec<bool>> {
    let n = f.arity();
    if order.len() != n {
        return Err(Error::LengthMismatch { expected: n, actual: order.len() });
    }
    check_cap(n)?;
    let shifts: Vec<usize> = (1..=n).map(|j| n - order.var_at(j)).collect();
    Ok((0..1u64 << n)
        .map(|i| {
            let orig = shifts
                .iter()
                .enumerate()
                .fold(0u64, |acc, (j, &s)| acc | ((i >> (n - 1 - j)) & 1) << s);
            f.eval_index(orig)
        })
        .collect())
}
