//! Certificate reports: per-function bound sheets and the width hierarchy.

use crate::bits::VariableOrder;
use crate::constructions::{
    build_and_nobdd, build_exact_deterministic, build_exact_unitary, build_mod, build_not_exact, build_not_perm,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::function::{enumeration_cap, BooleanFunction, Family};
use crate::semantics::Mode;

use super::certificate::*;
use super::chain::{exact_chain, greedy_chain, mod_chain};
use super::detwidth::minimal_obdd;
use super::fooling::DEFAULT_BUDGET;
use super::nobdd_search::{nobdd_min_width, NobddModel};
use super::span::{exact_prefix_family, span_dimension};

/// Largest `n` for which notPERM gets a fooling-set search in bound sheets.
const NOT_PERM_FOOLING_MAX: usize = 12;
/// Largest `n` for which bound sheets run the exhaustive NOBDD search.
const NOBDD_SEARCH_MAX: usize = 4;

/// `max(1, ceil(sqrt(n) - (5/4) log2 n - 1))`.
pub fn not_perm_nobdd_bound(n: usize) -> (usize, String) {
    let x = n as f64;
    let value = x.sqrt() - 1.25 * x.log2() - 1.0;
    (value.ceil().max(1.0) as usize, format!("sqrt({n}) - (5/4) log2({n}) - 1 = {value:.3}"))
}

fn exact_span(f: &BooleanFunction, n: usize, k: usize) -> Result<WidthCertificate> {
    let p = build_exact_unitary(n, k)?;
    let (level, prefixes) = exact_prefix_family(n, k);
    let mut w = span_dimension(&p, level, &prefixes)?;
    w.suffixes = exact_chain(n, k)?.steps.iter().flat_map(|s| s.added.iter().map(|(_, g)| g.clone())).collect();
    Ok(span_certificate(f, w))
}

fn fooling(f: &BooleanFunction, exec: Exec) -> Result<WidthCertificate> {
    nuobdd_lower_bound(f, &OrderPolicy::Natural, DEFAULT_BUDGET, exec)
}

/// Certificates for one function: constructions as upper bounds, fooling
/// sets, chains and span witnesses as lower bounds, and the literature's
/// nondeterministic bounds as cited claims.
pub fn bound_report(f: &BooleanFunction, policy: &OrderPolicy, exec: Exec) -> Result<Vec<WidthCertificate>> {
    let n = f.arity();
    let nat = VariableOrder::natural(n);
    let mut out = Vec::new();
    match *f.family() {
        Family::Mod { p } => {
            out.push(construction_certificate(f, "mod", &build_mod(n, p)?, Model::ExactUobdd, Mode::Exact, exec)?);
            if 2 * p <= n + 1 && n >= 2 {
                out.push(nuobdd_lower_bound(f, policy, DEFAULT_BUDGET, exec)?);
            }
            out.push(chain_certificate(f, mod_chain(n, p)?)?);
            if 2 * p <= n {
                out.push(cited_certificate(
                    f,
                    BoundKind::Lower,
                    Model::Nobdd,
                    p,
                    "a nondeterministic OBDD for MOD^p_n with p <= n/2 has width at least p",
                ));
            }
        }
        Family::Exact { k } => {
            out.push(construction_certificate(f, "exact-u", &build_exact_unitary(n, k)?, Model::ExactUobdd, Mode::Exact, exec)?);
            out.push(exact_span(f, n, k)?);
            out.push(chain_certificate(f, exact_chain(n, k)?)?);
            out.push(construction_certificate(f, "exact-d", &build_exact_deterministic(n, k)?, Model::Obdd, Mode::Deterministic, exec)?);
            out.push(det_width_certificate(f, &nat, false, exec)?);
            let claimed = (k + 1).min(n - k + 1) + 1;
            let mut cited = cited_certificate(
                f,
                BoundKind::Lower,
                Model::Nobdd,
                claimed,
                "a nondeterministic OBDD for EXACT^k_n has width at least min(k+1, n-k+1) + 1",
            );
            let minimal = minimal_obdd(f, &nat)?;
            if minimal.width() < claimed {
                cited.verified = Verified::No;
                cited.note = format!("refuted: a deterministic OBDD of width {} exists", minimal.width());
                out.push(construction_certificate(f, "minimal-obdd", &minimal, Model::Nobdd, Mode::Deterministic, exec)?);
            }
            out.push(cited);
            if n <= NOBDD_SEARCH_MAX {
                for model in [NobddModel::Partial, NobddModel::Total] {
                    out.push(nobdd_search_certificate(f, &nat, model)?);
                }
            }
        }
        Family::NotExact { k } => {
            out.push(construction_certificate(f, "notexact", &build_not_exact(n, k)?, Model::Nuobdd, Mode::Nondeterministic, exec)?);
            if n >= 2 {
                out.push(nuobdd_lower_bound(f, policy, DEFAULT_BUDGET, exec)?);
            }
        }
        Family::And => {
            out.push(construction_certificate(f, "and-nobdd", &build_and_nobdd(n)?, Model::Nobdd, Mode::Nondeterministic, exec)?);
            out.push(chain_certificate(f, exact_chain(n, n)?)?);
            out.push(construction_certificate(f, "exact-u", &build_exact_unitary(n, n)?, Model::ExactUobdd, Mode::Exact, exec)?);
        }
        Family::NotPerm { m } => {
            out.push(construction_certificate(f, "notperm", &build_not_perm(m)?, Model::Nuobdd, Mode::Nondeterministic, exec)?);
            let (value, expr) = not_perm_nobdd_bound(n);
            let mut c = cited_certificate(
                f,
                BoundKind::Lower,
                Model::Nobdd,
                value,
                "a nondeterministic OBDD for notPERM_n has width at least sqrt(n) - (5/4) log n - 1",
            );
            c.note = expr;
            out.push(c);
            if n <= NOT_PERM_FOOLING_MAX {
                out.push(nuobdd_lower_bound(f, policy, DEFAULT_BUDGET, exec)?);
            }
        }
        Family::Table(_) => {
            if n >= 2 {
                out.push(nuobdd_lower_bound(f, policy, DEFAULT_BUDGET, exec)?);
                out.push(chain_certificate(f, greedy_chain(f, &nat)?)?);
            }
            out.push(det_width_certificate(f, &nat, false, exec)?);
        }
    }
    Ok(out)
}

/// Exhaustive NOBDD search up to width 3 as a lower (and upper) bound.
pub fn nobdd_search_certificate(f: &BooleanFunction, order: &VariableOrder, model: NobddModel) -> Result<WidthCertificate> {
    let r = nobdd_min_width(f, order, super::nobdd_search::MAX_WIDTH, model)?;
    let ruled: Vec<String> = r.ruled_out.iter().map(ToString::to_string).collect();
    let (value, note) = match r.min_width {
        Some(w) => (w, format!("witness of width {w} found and verified")),
        None => (super::nobdd_search::MAX_WIDTH + 1, "no witness up to width 3".into()),
    };
    Ok(WidthCertificate {
        function: f.name(),
        kind: BoundKind::Lower,
        model: Model::Nobdd,
        value: value.max(1),
        evidence: Evidence::Exhaustive {
            method: format!(
                "reachable-set search ({model} transitions) along order {order}: widths [{}] impossible, {} configurations",
                ruled.join(", "),
                r.configurations
            ),
        },
        verified: Verified::Yes,
        note,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct HierarchyRow {
    pub d: usize,
    pub function: String,
    pub upper: WidthCertificate,
    pub lowers: Vec<WidthCertificate>,
}

impl HierarchyRow {
    /// Best verified lower bound.
    pub fn lower(&self) -> Option<usize> {
        self.lowers.iter().filter(|c| c.verified == Verified::Yes).map(|c| c.value).max()
    }

    pub fn separates(&self) -> bool {
        self.upper.verified == Verified::Yes && self.upper.value == self.d && self.lower() == Some(self.d)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HierarchyReport {
    pub n: usize,
    pub rows: Vec<HierarchyRow>,
    /// Functions cheap in one model and expensive in the other.
    pub incomparability: Vec<WidthCertificate>,
}

/// For each `d`, a function with NUOBDD width exactly `d`: `MOD^d_n` while
/// `2d <= n + 1`, otherwise `EXACT^(d-1)_n`.
pub fn hierarchy_row(n: usize, d: usize, exec: Exec) -> Result<HierarchyRow> {
    if d == 0 || d > n + 1 {
        return Err(Error::InvalidParameter(format!("need 1 <= d <= n + 1, got d = {d}")));
    }
    if 2 * d <= n + 1 {
        let f = BooleanFunction::modulo(n, d)?;
        let upper = construction_certificate(&f, "mod", &build_mod(n, d)?, Model::ExactUobdd, Mode::Exact, exec)?;
        let mut lowers = Vec::new();
        if n >= 2 {
            lowers.push(fooling(&f, exec)?);
        }
        lowers.push(chain_certificate(&f, mod_chain(n, d)?)?);
        Ok(HierarchyRow { d, function: f.name(), upper, lowers })
    } else {
        let k = d - 1;
        let f = BooleanFunction::exact(n, k)?;
        let upper = construction_certificate(&f, "exact-u", &build_exact_unitary(n, k)?, Model::ExactUobdd, Mode::Exact, exec)?;
        let lowers = vec![exact_span(&f, n, k)?, chain_certificate(&f, exact_chain(n, k)?)?];
        Ok(HierarchyRow { d, function: f.name(), upper, lowers })
    }
}

pub fn hierarchy_report(n: usize, ds: impl IntoIterator<Item = usize>, exec: Exec) -> Result<HierarchyReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("n >= 1 required".into()));
    }
    let rows = ds.into_iter().map(|d| hierarchy_row(n, d, exec)).collect::<Result<Vec<_>>>()?;
    let mut incomparability = Vec::new();
    let and = BooleanFunction::and(n);
    incomparability.push(construction_certificate(&and, "and-nobdd", &build_and_nobdd(n)?, Model::Nobdd, Mode::Nondeterministic, exec)?);
    incomparability.push(chain_certificate(&and, exact_chain(n, n)?)?);
    let m = (1..=n).take_while(|m| m * m <= n).last().unwrap_or(1);
    if m >= 2 && m * m <= enumeration_cap() {
        let np = BooleanFunction::not_perm(m)?;
        incomparability.push(construction_certificate(&np, "notperm", &build_not_perm(m)?, Model::Nuobdd, Mode::Nondeterministic, exec)?);
        let (value, expr) = not_perm_nobdd_bound(m * m);
        let mut c = cited_certificate(
            &np,
            BoundKind::Lower,
            Model::Nobdd,
            value,
            "a nondeterministic OBDD for notPERM_n has width at least sqrt(n) - (5/4) log n - 1",
        );
        c.note = expr;
        incomparability.push(c);
    }
    Ok(HierarchyReport { n, rows, incomparability })
}
