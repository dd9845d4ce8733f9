//! Primes that cannot divide a putative normal subgroup below a candidate.

use crate::arith;
use crate::catalog::{Catalog, FactStatement, ModuleFact, SimpleGroupRecord};
use crate::spectrum::MuSet;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Standing hypothesis of the Frobenius-action lemma; not checkable from spectra.
pub const FROBENIUS_ASSUMPTION: &str = "F not inside N·C_G(N)/N";
pub const CHIEF_FACTOR_ASSUMPTION: &str =
    "N may be taken elementary abelian and irreducible (axiom elementary-chief-factor)";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExclusionSource {
    /// `p·|C|` is missing from the target although `gcd(|F|, p) = 1`.
    Frobenius {
        kernel_order: u64,
        complement_order: u64,
        missing_order: u64,
    },
    /// Module facts in characteristic `p` rule out every possible chief factor.
    ModuleFacts { group: String, detail: String },
    /// A cited theorem fixes the shape of N.
    Axiom { id: String },
}

impl fmt::Display for ExclusionSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExclusionSource::Frobenius {
                kernel_order,
                complement_order,
                missing_order,
            } => write!(
                f,
                "witness ({kernel_order},{complement_order}): {missing_order}"
            ),
            ExclusionSource::ModuleFacts { group, detail } => write!(f, "module {group}: {detail}"),
            ExclusionSource::Axiom { id } => write!(f, "axiom {id}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exclusion {
    pub prime: u64,
    pub source: ExclusionSource,
    pub assumptions: Vec<String>,
    pub citation: String,
}

pub type ExclusionMap = BTreeMap<u64, Exclusion>;

/// Primes `p` of the target such that some witness `(F, C)` of `r` has
/// `gcd(|F|, p) = 1` and `p·|C|` outside the target. The first witness in
/// record order supplies the justification.
pub fn frobenius_exclusions(r: &SimpleGroupRecord, target: &MuSet) -> ExclusionMap {
    let mut out = ExclusionMap::new();
    for p in target.primes() {
        for w in &r.frobenius_witnesses {
            let n = p * w.complement_order;
            if w.kernel_order % p != 0 && !target.contains(n) {
                let mut assumptions = vec![FROBENIUS_ASSUMPTION.to_string()];
                assumptions.extend(w.case_split.clone());
                out.insert(
                    p,
                    Exclusion {
                        prime: p,
                        source: ExclusionSource::Frobenius {
                            kernel_order: w.kernel_order,
                            complement_order: w.complement_order,
                            missing_order: n,
                        },
                        assumptions,
                        citation: w.citation.clone(),
                    },
                );
                break;
            }
        }
    }
    out
}

/// Odd primes excluded by the cited two-group quotient theorem.
pub fn axiom_exclusions(c: &Catalog, target: &MuSet) -> ExclusionMap {
    let citation = c
        .axiom("two-group-quotient")
        .map_or_else(String::new, |a| a.citation.clone());
    target
        .primes()
        .into_iter()
        .filter(|&p| p != 2)
        .map(|p| {
            (
                p,
                Exclusion {
                    prime: p,
                    source: ExclusionSource::Axiom {
                        id: "two-group-quotient".into(),
                    },
                    assumptions: vec![],
                    citation: citation.clone(),
                },
            )
        })
        .collect()
}

fn fact_fires(f: &ModuleFact, h_mu: &MuSet, target: &MuSet) -> bool {
    match &f.statement {
        FactStatement::ForcedAdjacency { p, q } => !target.contains(p * q),
        FactStatement::ForcedOrder { order, .. } => !target.contains(*order),
        FactStatement::FixedPointFreeClass { forbids, .. } => {
            target.contains(*forbids) && !h_mu.contains(*forbids)
        }
        FactStatement::ForcedDimensions { .. } => false,
    }
}

fn describe(f: &ModuleFact) -> String {
    let scope = match &f.dims {
        Some(d) => format!(" on dims {}", fmt_dims(d)),
        None => String::new(),
    };
    let body = match &f.statement {
        FactStatement::ForcedAdjacency { p, q } => format!("forced order {}", p * q),
        FactStatement::ForcedDimensions {
            dims,
            otherwise_order,
        } => format!("dims within {} (else {otherwise_order})", fmt_dims(dims)),
        FactStatement::ForcedOrder { order, class } => match class {
            Some(c) => format!("{c} forces {order}"),
            None => format!("forced order {order}"),
        },
        FactStatement::FixedPointFreeClass { class, forbids, .. } => {
            format!("{class} fixed-point-free, no {forbids}")
        }
    };
    let matrix = match &f.matrix {
        Some(m) => format!(" [matrix {} m={}: {}]", m.file, m.m, m.source),
        None => String::new(),
    };
    format!("{body}{scope}{matrix}")
}

fn fmt_dims(d: &[u32]) -> String {
    let s: Vec<String> = d.iter().map(u32::to_string).collect();
    format!("{{{}}}", s.join(","))
}

/// Whether the characteristic-`p` facts owned by one group rule out every
/// chief factor. Returns the facts used.
fn evaluate<'a>(
    facts: &[&'a ModuleFact],
    h_mu: &MuSet,
    target: &MuSet,
) -> Option<Vec<&'a ModuleFact>> {
    let mut allowed: Option<BTreeSet<u32>> = None;
    let mut used = Vec::new();
    for f in facts {
        if let FactStatement::ForcedDimensions {
            dims,
            otherwise_order,
        } = &f.statement
        {
            if !target.contains(*otherwise_order) {
                let d: BTreeSet<u32> = dims.iter().copied().collect();
                allowed = Some(match allowed {
                    Some(a) => a.intersection(&d).copied().collect(),
                    None => d,
                });
                used.push(*f);
            }
        }
    }
    let firing: Vec<&ModuleFact> = facts
        .iter()
        .copied()
        .filter(|f| fact_fires(f, h_mu, target))
        .collect();
    if let Some(f) = firing.iter().find(|f| f.dims.is_none()) {
        return Some(vec![*f]);
    }
    let allowed = allowed?;
    let mut covering = Vec::new();
    for d in &allowed {
        let f = firing
            .iter()
            .find(|f| f.dims.as_ref().is_some_and(|ds| ds.contains(d)))?;
        if !covering.contains(f) {
            covering.push(*f);
        }
    }
    used.extend(covering);
    Some(used)
}

/// Module-fact exclusions for the quotient `h_name` (spectrum `h_mu`) of a
/// candidate. Facts attached to `S` apply to every quotient; facts attached
/// to an extension apply only to that extension. Each owner group is
/// evaluated on its own, since its dimension scopes refer to its own modules.
pub fn module_exclusions(
    r: &SimpleGroupRecord,
    h_name: &str,
    h_mu: &MuSet,
    target: &MuSet,
) -> ExclusionMap {
    let mut owners = vec![r.name.as_str()];
    if h_name != r.name {
        owners.push(h_name);
    }
    let mut out = ExclusionMap::new();
    for p in target.primes() {
        for owner in &owners {
            let facts: Vec<&ModuleFact> = r
                .module_facts
                .iter()
                .filter(|f| f.group == *owner && f.characteristic == p)
                .collect();
            if facts.is_empty() {
                continue;
            }
            if let Some(used) = evaluate(&facts, h_mu, target) {
                let detail = used
                    .iter()
                    .map(|f| describe(f))
                    .collect::<Vec<_>>()
                    .join("; ");
                let citation = used
                    .iter()
                    .map(|f| f.citation.as_str())
                    .collect::<Vec<_>>()
                    .join("; ");
                let mut assumptions = vec![CHIEF_FACTOR_ASSUMPTION.to_string()];
                if used.iter().any(|f| f.citation.contains("higman-2group")) {
                    assumptions.push("N elementary abelian by axiom higman-2group".into());
                }
                out.insert(
                    p,
                    Exclusion {
                        prime: p,
                        source: ExclusionSource::ModuleFacts {
                            group: owner.to_string(),
                            detail: format!("char {p}: {detail}"),
                        },
                        assumptions,
                        citation,
                    },
                );
                break;
            }
        }
    }
    out
}

/// Later maps only fill primes not yet excluded.
pub fn merge(maps: impl IntoIterator<Item = ExclusionMap>) -> ExclusionMap {
    let mut out = ExclusionMap::new();
    for m in maps {
        for (p, e) in m {
            out.entry(p).or_insert(e);
        }
    }
    out
}

/// Minimal orders of the target missing from `h_mu`, each with its primes:
/// one prime of every such set must divide |N|.
pub fn forced_sets(target: &MuSet, h_mu: &MuSet) -> Vec<(u64, Vec<u64>)> {
    crate::spectrum::witnesses_not_in(target, h_mu)
        .into_iter()
        .map(|n| (n, arith::prime_divisors(n)))
        .collect()
}

/// First forced set lying entirely inside the excluded primes.
pub fn first_conflict(forced: &[(u64, Vec<u64>)], excl: &ExclusionMap) -> Option<(u64, Vec<u64>)> {
    forced
        .iter()
        .find(|(_, ps)| ps.iter().all(|p| excl.contains_key(p)))
        .cloned()
}
