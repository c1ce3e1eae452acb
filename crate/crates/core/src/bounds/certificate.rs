//! Width certificates: a bound on one model together with the evidence
//! that supports it.

use std::fmt;

use crate::bits::VariableOrder;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::function::BooleanFunction;
use crate::program::LeveledProgram;
use crate::semantics::{computes_function_with, CheckOptions, Mode};

use super::chain::{verify_chain, DistinguishingChain};
use super::detwidth::{det_min_width_all_orders, det_min_width_fixed_order, ALL_ORDERS_MAX_ARITY};
use super::fooling::{search_best_cut, FoolingSet};
use super::span::SpanWitness;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Obdd,
    Nobdd,
    Nuobdd,
    ExactUobdd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verified {
    Yes,
    No,
    /// Taken from the literature; not machine-checked.
    Cited,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Evidence {
    FoolingSet { set: FoolingSet, optimal: bool },
    Span(SpanWitness),
    Chain(DistinguishingChain),
    Construction { construction: String, mode: Mode, program_width: usize },
    Exhaustive { method: String },
    Cited { claim: String },
}

impl Evidence {
    pub fn kind(&self) -> &'static str {
        match self {
            Evidence::FoolingSet { .. } => "fooling",
            Evidence::Span(_) => "span",
            Evidence::Chain(_) => "chain",
            Evidence::Construction { .. } => "construction",
            Evidence::Exhaustive { .. } => "exhaustive",
            Evidence::Cited { .. } => "cited",
        }
    }

    pub fn summary(&self) -> String {
        match self {
            Evidence::FoolingSet { set, optimal } => {
                let pairs: Vec<String> = set.pairs.iter().map(|(s, g)| format!("({s},{g})")).collect();
                let tag = if *optimal { "" } else { ", search budget exhausted" };
                format!("order {} cut {}: {}{tag}", set.order, set.cut, pairs.join(" "))
            }
            Evidence::Span(w) => {
                let prefixes: Vec<String> = w.prefixes.iter().map(ToString::to_string).collect();
                let tag = if w.certified { "" } else { " (float)" };
                format!("level {} prefixes {} rank {}{tag}", w.level, prefixes.join(" "), w.rank)
            }
            Evidence::Chain(c) => {
                let (level, size) = c.best();
                let members: Vec<String> = c.members(level).iter().map(ToString::to_string).collect();
                format!("order {} level {level}: {size} prefixes {}", c.order, members.join(" "))
            }
            Evidence::Construction { construction, mode, program_width } => {
                format!("{construction} (width {program_width}) checked in {mode} mode")
            }
            Evidence::Exhaustive { method } => method.clone(),
            Evidence::Cited { claim } => claim.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WidthCertificate {
    pub function: String,
    pub kind: BoundKind,
    pub model: Model,
    pub value: usize,
    pub evidence: Evidence,
    pub verified: Verified,
    pub note: String,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Lower => "lower",
            BoundKind::Upper => "upper",
        })
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Obdd => "OBDD",
            Model::Nobdd => "NOBDD",
            Model::Nuobdd => "NUOBDD",
            Model::ExactUobdd => "exact-UOBDD",
        })
    }
}

impl fmt::Display for Verified {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verified::Yes => "yes",
            Verified::No => "no",
            Verified::Cited => "cited",
        })
    }
}

impl fmt::Display for WidthCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} {} {} ({}, verified: {})",
            self.function,
            self.model,
            self.kind,
            self.value,
            self.evidence.kind(),
            self.verified
        )?;
        if !self.note.is_empty() {
            write!(f, " [{}]", self.note)?;
        }
        Ok(())
    }
}

/// Orders a lower bound must hold for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderPolicy {
    Natural,
    /// Every order; needs `n <= 8`.
    All,
    Given(Vec<VariableOrder>),
}

impl OrderPolicy {
    fn orders(&self, n: usize) -> Result<Vec<VariableOrder>> {
        match self {
            OrderPolicy::Natural => Ok(vec![VariableOrder::natural(n)]),
            OrderPolicy::All if n > ALL_ORDERS_MAX_ARITY => Err(Error::InvalidParameter(format!(
                "all orders supported for n <= {ALL_ORDERS_MAX_ARITY}, got {n}"
            ))),
            OrderPolicy::All => Ok(VariableOrder::all(n)),
            OrderPolicy::Given(v) if v.is_empty() => Err(Error::InvalidParameter("no orders given".into())),
            OrderPolicy::Given(v) => Ok(v.clone()),
        }
    }
}

/// Fooling-set lower bound for NUOBDDs reading any of the requested
/// orders: the smallest over orders of the best set over cuts. The
/// attached set is the one for the weakest order.
pub fn nuobdd_lower_bound(f: &BooleanFunction, policy: &OrderPolicy, budget: u64, exec: Exec) -> Result<WidthCertificate> {
    let n = f.arity();
    let orders = policy.orders(n)?;
    if n < 2 {
        return Ok(WidthCertificate {
            function: f.name(),
            kind: BoundKind::Lower,
            model: Model::Nuobdd,
            value: 1,
            evidence: Evidence::Exhaustive { method: "every program has at least one state".into() },
            verified: Verified::Yes,
            note: String::new(),
        });
    }
    let mut weakest = None;
    let mut optimal = true;
    for order in &orders {
        let found = search_best_cut(f, order, budget, exec)?;
        optimal &= found.optimal;
        if !found.verified {
            return Err(Error::InvalidProgram("fooling search returned an unverified set".into()));
        }
        if weakest.as_ref().is_none_or(|w: &super::fooling::FoolingSearch| found.set.len() < w.set.len()) {
            weakest = Some(found);
        }
    }
    let weakest = weakest.expect("at least one order");
    let size = weakest.set.len();
    let mut note = if orders.len() > 1 { format!("minimum over {} orders", orders.len()) } else { String::new() };
    if size == 0 {
        note = "no 1-cells; width is at least 1".into();
    }
    Ok(WidthCertificate {
        function: f.name(),
        kind: BoundKind::Lower,
        model: Model::Nuobdd,
        value: size.max(1),
        evidence: Evidence::FoolingSet { set: weakest.set, optimal },
        verified: Verified::Yes,
        note,
    })
}

/// Upper bound from a constructed program, checked by enumeration.
pub fn construction_certificate(
    f: &BooleanFunction,
    construction: &str,
    p: &LeveledProgram,
    model: Model,
    mode: Mode,
    exec: Exec,
) -> Result<WidthCertificate> {
    let (verified, note) = match computes_function_with(p, f, mode, CheckOptions { exec, ..Default::default() }) {
        Ok(r) if r.passed() && r.certified => (Verified::Yes, String::new()),
        Ok(r) => match r.counterexample {
            Some(c) => (Verified::No, c.to_string()),
            None => (Verified::No, "check not certified".into()),
        },
        Err(e @ Error::EnumerationCap { .. }) => (Verified::No, e.to_string()),
        Err(e) => return Err(e),
    };
    Ok(WidthCertificate {
        function: f.name(),
        kind: BoundKind::Upper,
        model,
        value: p.width(),
        evidence: Evidence::Construction { construction: construction.into(), mode, program_width: p.width() },
        verified,
        note,
    })
}

/// NUOBDD lower bound from a distinguishing chain, replayed against `f`.
pub fn chain_certificate(f: &BooleanFunction, chain: DistinguishingChain) -> Result<WidthCertificate> {
    let ok = verify_chain(f, &chain)?;
    Ok(WidthCertificate {
        function: f.name(),
        kind: BoundKind::Lower,
        model: Model::Nuobdd,
        value: chain.size(),
        verified: if ok { Verified::Yes } else { Verified::No },
        note: if chain.order.as_slice().windows(2).all(|w| w[0] < w[1]) {
            "holds for every NUOBDD with this order".into()
        } else {
            String::new()
        },
        evidence: Evidence::Chain(chain),
    })
}

/// Lower bound on one program's width from the rank of its states.
pub fn span_certificate(f: &BooleanFunction, witness: SpanWitness) -> WidthCertificate {
    WidthCertificate {
        function: f.name(),
        kind: BoundKind::Lower,
        model: Model::ExactUobdd,
        value: witness.rank,
        verified: if witness.certified { Verified::Yes } else { Verified::No },
        note: "rank of reachable states of the constructed program".into(),
        evidence: Evidence::Span(witness),
    }
}

pub fn cited_certificate(f: &BooleanFunction, kind: BoundKind, model: Model, value: usize, claim: &str) -> WidthCertificate {
    WidthCertificate {
        function: f.name(),
        kind,
        model,
        value,
        evidence: Evidence::Cited { claim: claim.into() },
        verified: Verified::Cited,
        note: String::new(),
    }
}

/// The exact minimum deterministic width, as a lower bound for OBDDs
/// reading `order` (or any order, when `all_orders`).
pub fn det_width_certificate(f: &BooleanFunction, order: &VariableOrder, all_orders: bool, exec: Exec) -> Result<WidthCertificate> {
    let (value, method) = if all_orders {
        let (w, best) = det_min_width_all_orders(f, exec)?;
        (w, format!("distinct subfunctions over all orders, best order {best}"))
    } else {
        (det_min_width_fixed_order(f, order)?, format!("distinct subfunctions along order {order}"))
    };
    Ok(WidthCertificate {
        function: f.name(),
        kind: BoundKind::Lower,
        model: Model::Obdd,
        value,
        evidence: Evidence::Exhaustive { method },
        verified: Verified::Yes,
        note: "exact minimum".into(),
    })
}
