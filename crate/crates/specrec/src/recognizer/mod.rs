//! Elimination engine: narrows the almost simple quotients `S <= G/N <= Aut(S)`
//! compatible with a target spectrum, logging a cited reason for every step.

mod exclusions;
mod report;

pub use exclusions::{
    axiom_exclusions, first_conflict, forced_sets, frobenius_exclusions, merge, module_exclusions,
    Exclusion, ExclusionMap, ExclusionSource, CHIEF_FACTOR_ASSUMPTION, FROBENIUS_ASSUMPTION,
};
pub use report::{render_report, Format};

use crate::arith;
use crate::catalog::{Catalog, Reduction, SimpleGroupRecord};
use crate::error::{Error, Result};
use crate::prime_graph::PrimeGraph;
use crate::spectrum::{witnesses_not_in, MuSet};
use rayon::prelude::*;
use serde::Serialize;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest prime for which the catalog lists every simple group.
pub const CATALOG_PRIME_BOUND: u64 = 11;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Options {
    /// Evaluate every rule instead of stopping at the first that fires.
    pub all_rules: bool,
    /// Also report the Frobenius-preimage clause `|C|·∏π(N) ∈ ω` for survivors.
    pub frobenius_preimage: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetSpec {
    Named(String),
    Mu(MuSet),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GkSummary {
    pub components: Vec<Vec<u64>>,
    pub nonadjacent_triples: Vec<[u64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolublePartConstraint {
    pub triple: [u64; 3],
    pub statement: String,
    pub citations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoclePrime {
    pub prime: u64,
    /// `3·p`, absent from the target.
    pub product: u64,
    /// Why `p` divides |G/N|, when that could be shown.
    pub divides_quotient: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SocleDerivation {
    pub primes: Vec<SoclePrime>,
    pub conclusive: bool,
    pub conclusion: String,
    pub citations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RequiredPrime {
    pub prime: u64,
    pub required: bool,
    /// Records lacking the prime, each with the witness excluding it from N
    /// (or `None` when no witness does).
    pub records_without: Vec<(String, Option<String>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientVerdict {
    pub name: String,
    pub feasible: bool,
    pub reason: String,
    pub excluded_primes: Vec<u64>,
    /// All target primes excluded: N = 1 for this quotient.
    pub n_trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Rule {
    SpectrumWitness {
        n: u64,
        all_witnesses: Vec<u64>,
    },
    OutPowerArgument {
        triple: [u64; 3],
        outside_aut: Vec<u64>,
    },
    FrobeniusExclusionConflict {
        order: u64,
        forced: Vec<u64>,
        exclusions: Vec<Exclusion>,
    },
    ModuleFactConflict {
        order: u64,
        forced: Vec<u64>,
        exclusions: Vec<Exclusion>,
    },
    ExtensionConflict {
        quotients: Vec<QuotientVerdict>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Elimination {
    pub candidate: String,
    pub rule: Rule,
    pub assumptions: Vec<String>,
    pub citations: Vec<String>,
    /// Further rules that also fire (only with `all_rules`).
    pub also: Vec<Rule>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalConstraint {
    pub candidate: String,
    pub exclusions: Vec<Exclusion>,
    pub remaining_primes: Vec<u64>,
    pub shape: String,
    pub quotients: Vec<QuotientVerdict>,
    pub conclusion: String,
    pub unresolved: bool,
    pub preimage_clause: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecognitionReport {
    pub engine_version: String,
    pub target: String,
    pub label: String,
    pub target_mu: MuSet,
    pub reduction: Reduction,
    pub gk: GkSummary,
    pub soluble_part: Vec<SolublePartConstraint>,
    pub socle: SocleDerivation,
    pub pool_derivation: Vec<RequiredPrime>,
    pub candidate_pool: Vec<String>,
    pub eliminations: Vec<Elimination>,
    pub normal_prime_constraints: Vec<NormalConstraint>,
    pub survivors: Vec<String>,
    pub seed_independent: bool,
}

fn axiom_citations(c: &Catalog, ids: &[&str]) -> Vec<String> {
    ids.iter()
        .filter_map(|id| c.axiom(id))
        .map(|a| format!("axiom {}: {}", a.id, a.citation))
        .collect()
}

fn target_primes_checked(target: &MuSet) -> Result<Vec<u64>> {
    let primes = target.primes();
    if primes.is_empty() {
        return Err(Error::UnsupportedTarget(
            "target spectrum has no primes".into(),
        ));
    }
    Ok(primes)
}

/// One derivation per nonadjacent triple of GK(target): at most one of its
/// primes divides the soluble radical.
pub fn soluble_part_constraint(target: &MuSet, c: &Catalog) -> Vec<SolublePartConstraint> {
    PrimeGraph::build(target)
        .nonadjacent_triples()
        .into_iter()
        .map(|t| SolublePartConstraint {
            triple: t,
            statement: format!(
                "at most one of {{{},{},{}}} divides the maximal normal soluble subgroup",
                t[0], t[1], t[2]
            ),
            citations: axiom_citations(c, &["soluble-independence", "frattini", "thompson"]),
        })
        .collect()
}

/// Whether the socle of G/N must be simple. For a prime `p ≥ 5` with
/// `3p ∉ ω`, a socle with several factors cannot involve `p` at all, so `p`
/// would have to come from permuting at least `p` isomorphic factors, and a
/// diagonal element of order 3 would then centralise an element of order `p`.
pub fn socle_simplicity_derivation(target: &MuSet, c: &Catalog) -> SocleDerivation {
    let candidates: Vec<u64> = target
        .primes()
        .into_iter()
        .filter(|&p| p >= 5 && !target.contains(3 * p))
        .collect();
    let triples = PrimeGraph::build(target).nonadjacent_triples();
    let pool = c.subcatalog(target.primes().last().copied().unwrap_or(1), None);
    let mut primes = Vec::new();
    for &p in &candidates {
        let via_triple = triples
            .iter()
            .find(|t| t.contains(&p) && t.iter().filter(|q| candidates.contains(q)).count() >= 2);
        let divides_quotient = if let Some(t) = via_triple {
            let cands: Vec<u64> = t
                .iter()
                .copied()
                .filter(|q| candidates.contains(q))
                .collect();
            Some(format!(
                "at most one of {} divides N, so some prime of {} divides |G/N|",
                fmt_set(t),
                fmt_set(&cands)
            ))
        } else {
            required_prime(target, c, p, &pool)
                .filter(|r| r.required)
                .map(|_| format!("every simple group without {p} excludes {p} from N"))
        };
        primes.push(SoclePrime {
            prime: p,
            product: 3 * p,
            divides_quotient,
        });
    }
    let conclusive = primes.iter().any(|sp| sp.divides_quotient.is_some());
    let conclusion = if conclusive {
        "socle is a single simple group".to_string()
    } else {
        "inconclusive".to_string()
    };
    SocleDerivation {
        primes,
        conclusive,
        conclusion,
        citations: axiom_citations(c, &["aut-power", "out-primes"]),
    }
}

/// `p` must divide |S| if every record of the pool lacking `p` has a
/// Frobenius witness excluding `p` from N.
fn required_prime(
    target: &MuSet,
    _c: &Catalog,
    p: u64,
    pool: &[&SimpleGroupRecord],
) -> Option<RequiredPrime> {
    if p < 5 || target.contains(3 * p) {
        return None;
    }
    let records_without: Vec<(String, Option<String>)> = pool
        .iter()
        .filter(|r| !r.divides_order(p))
        .map(|r| {
            let why = frobenius_exclusions(r, target)
                .get(&p)
                .map(|e| e.source.to_string());
            (r.name.clone(), why)
        })
        .collect();
    let required = records_without.iter().all(|(_, w)| w.is_some());
    Some(RequiredPrime {
        prime: p,
        required,
        records_without,
    })
}

struct Resolved {
    key: String,
    label: String,
    mu: MuSet,
    reduction: Reduction,
    group: Option<String>,
}

fn resolve(spec: &TargetSpec, c: &Catalog) -> Result<Resolved> {
    match spec {
        TargetSpec::Named(key) => {
            let t = c
                .target(key)
                .ok_or_else(|| Error::UnsupportedTarget(format!("unknown target {key}")))?;
            Ok(Resolved {
                key: key.clone(),
                label: t.label.clone(),
                mu: t.mu.clone(),
                reduction: t.reduction,
                group: Some(t.group.clone()),
            })
        }
        TargetSpec::Mu(mu) => Ok(Resolved {
            key: "mu".into(),
            label: format!("mu {mu}"),
            mu: mu.clone(),
            reduction: Reduction::SolubleRadical,
            group: None,
        }),
    }
}

/// Candidate pool and the required-prime derivations that shaped it.
pub fn candidate_pool<'a>(
    spec: &TargetSpec,
    c: &'a Catalog,
) -> Result<(Vec<&'a SimpleGroupRecord>, Vec<RequiredPrime>)> {
    let t = resolve(spec, c)?;
    let primes = target_primes_checked(&t.mu)?;
    if t.reduction == Reduction::TwoGroupQuotient {
        let name = t.group.as_deref().unwrap_or_default();
        let r = c
            .record(name)
            .ok_or_else(|| Error::UnsupportedTarget(format!("no record {name}")))?;
        return Ok((vec![r], vec![]));
    }
    let max = *primes.last().unwrap();
    if max > CATALOG_PRIME_BOUND {
        return Err(Error::UnsupportedTarget(format!(
            "prime {max} exceeds the catalog bound {CATALOG_PRIME_BOUND}"
        )));
    }
    let mut pool = c.subcatalog(max, None);
    let derivations: Vec<RequiredPrime> = primes
        .iter()
        .filter_map(|&p| required_prime(&t.mu, c, p, &pool))
        .collect();
    for d in derivations.iter().filter(|d| d.required) {
        pool.retain(|r| r.divides_order(d.prime));
    }
    Ok((pool, derivations))
}

fn primary_witness(ws: &[u64]) -> Option<u64> {
    ws.iter()
        .copied()
        .find(|&n| arith::is_prime_power(n))
        .or_else(|| ws.first().copied())
}

struct Ctx<'a> {
    c: &'a Catalog,
    target: &'a MuSet,
    reduction: Reduction,
    triples: Vec<[u64; 3]>,
}

impl Ctx<'_> {
    fn base_exclusions(&self, r: &SimpleGroupRecord) -> ExclusionMap {
        let frob = frobenius_exclusions(r, self.target);
        match self.reduction {
            Reduction::TwoGroupQuotient => merge([axiom_exclusions(self.c, self.target), frob]),
            Reduction::SolubleRadical => frob,
        }
    }

    fn quotients<'r>(&self, r: &'r SimpleGroupRecord) -> Vec<(&'r str, &'r MuSet)> {
        let mut out = Vec::new();
        if let Some(mu) = &r.mu {
            out.push((r.name.as_str(), mu));
        }
        out.extend(r.extensions.iter().map(|e| (e.name.as_str(), &e.mu)));
        out
    }

    fn quotient_verdict(&self, r: &SimpleGroupRecord, name: &str, h_mu: &MuSet) -> QuotientVerdict {
        let excl = merge([
            self.base_exclusions(r),
            module_exclusions(r, name, h_mu, self.target),
        ]);
        let excluded_primes: Vec<u64> = excl.keys().copied().collect();
        let n_trivial = self.target.primes().iter().all(|p| excl.contains_key(p));
        let extra = witnesses_not_in(h_mu, self.target);
        let (feasible, reason) = if let Some(n) = primary_witness(&extra) {
            (false, format!("{n} in spectrum of {name}"))
        } else if let Some((n, ps)) = first_conflict(&forced_sets(self.target, h_mu), &excl) {
            (
                false,
                format!("{n} forces {} into |N|, all excluded", fmt_set(&ps)),
            )
        } else if n_trivial {
            (true, "N = 1".into())
        } else {
            (true, "no conflict".into())
        };
        QuotientVerdict {
            name: name.to_string(),
            feasible,
            reason,
            excluded_primes,
            n_trivial,
        }
    }

    fn rules(&self, r: &SimpleGroupRecord, all: bool) -> Vec<(Rule, Vec<String>, Vec<String>)> {
        let mut fired = Vec::new();
        macro_rules! done {
            () => {
                if !all && !fired.is_empty() {
                    return fired;
                }
            };
        }
        let aut_mu = r.aut_mu();
        // (i) spectral witness
        if let Some(mu) = &r.mu {
            let ws = witnesses_not_in(mu, self.target);
            if let Some(n) = primary_witness(&ws) {
                let mut cites = r.citations.clone();
                cites.push(format!("target: {}", self.target));
                fired.push((
                    Rule::SpectrumWitness {
                        n,
                        all_witnesses: ws,
                    },
                    vec![],
                    cites,
                ));
            }
        }
        done!();
        // (ii) out-power argument over a nonadjacent triple
        if self.reduction == Reduction::SolubleRadical {
            let aut_primes: Vec<u64> = match aut_mu {
                Some(m) => m.primes(),
                None => {
                    let mut ps = r.primes();
                    ps.extend(arith::prime_divisors(r.out_order));
                    ps
                }
            };
            for t in &self.triples {
                let outside: Vec<u64> = t
                    .iter()
                    .copied()
                    .filter(|p| !aut_primes.contains(p))
                    .collect();
                if outside.len() >= 2 {
                    fired.push((
                        Rule::OutPowerArgument {
                            triple: *t,
                            outside_aut: outside,
                        },
                        vec![],
                        axiom_citations(
                            self.c,
                            &["out-primes", "soluble-independence", "frattini", "thompson"],
                        ),
                    ));
                    break;
                }
            }
        }
        done!();
        let Some(aut_mu) = aut_mu else {
            return fired;
        };
        let forced = forced_sets(self.target, aut_mu);
        // (iii) Frobenius exclusions against the forced primes
        let frob = self.base_exclusions(r);
        if let Some((order, ps)) = first_conflict(&forced, &frob) {
            let exclusions: Vec<Exclusion> = ps.iter().map(|p| frob[p].clone()).collect();
            let (assumptions, mut cites) = gather(&exclusions);
            cites.extend(axiom_citations(self.c, &["frobenius-action"]));
            fired.push((
                Rule::FrobeniusExclusionConflict {
                    order,
                    forced: ps,
                    exclusions,
                },
                assumptions,
                cites,
            ));
        }
        done!();
        // (iv) module facts of S, valid in every quotient
        let with_modules = merge([
            frob.clone(),
            module_exclusions(r, &r.name, aut_mu, self.target),
        ]);
        let fresh: Vec<(u64, Vec<u64>)> = forced
            .iter()
            .filter(|(_, ps)| ps.iter().any(|p| !frob.contains_key(p)))
            .cloned()
            .collect();
        if let Some((order, ps)) = first_conflict(&fresh, &with_modules) {
            {
                let exclusions: Vec<Exclusion> =
                    ps.iter().map(|p| with_modules[p].clone()).collect();
                let (assumptions, cites) = gather(&exclusions);
                fired.push((
                    Rule::ModuleFactConflict {
                        order,
                        forced: ps,
                        exclusions,
                    },
                    assumptions,
                    cites,
                ));
            }
        }
        done!();
        // (v) every quotient S <= H <= Aut(S) fails on its own
        let quotients: Vec<QuotientVerdict> = self
            .quotients(r)
            .into_iter()
            .map(|(name, mu)| self.quotient_verdict(r, name, mu))
            .collect();
        if !quotients.is_empty() && quotients.iter().all(|q| !q.feasible) {
            let mut assumptions = vec![FROBENIUS_ASSUMPTION.to_string()];
            assumptions.push(CHIEF_FACTOR_ASSUMPTION.to_string());
            let mut cites = r.citations.clone();
            cites.extend(axiom_citations(self.c, &["frobenius-action"]));
            fired.push((Rule::ExtensionConflict { quotients }, assumptions, cites));
        }
        fired
    }

    fn eliminate(&self, r: &SimpleGroupRecord, all: bool) -> Option<Elimination> {
        let mut fired = self.rules(r, all).into_iter();
        let (rule, assumptions, citations) = fired.next()?;
        Some(Elimination {
            candidate: r.name.clone(),
            rule,
            assumptions,
            citations,
            also: fired.map(|(rule, _, _)| rule).collect(),
        })
    }

    fn constraint(&self, r: &SimpleGroupRecord, preimage: bool) -> NormalConstraint {
        let excl = match r.aut_mu() {
            Some(aut) => merge([
                self.base_exclusions(r),
                module_exclusions(r, &r.name, aut, self.target),
            ]),
            None => self.base_exclusions(r),
        };
        let remaining: Vec<u64> = self
            .target
            .primes()
            .into_iter()
            .filter(|p| !excl.contains_key(p))
            .collect();
        let shape = match remaining.as_slice() {
            [] => "N = 1".to_string(),
            [2] => "N is a 2-group".to_string(),
            ps => format!("N is a {}-group", fmt_set(ps)),
        };
        let quotients: Vec<QuotientVerdict> = self
            .quotients(r)
            .into_iter()
            .map(|(name, mu)| self.quotient_verdict(r, name, mu))
            .collect();
        let feasible: Vec<&QuotientVerdict> = quotients.iter().filter(|q| q.feasible).collect();
        let unresolved = feasible.iter().any(|q| !q.n_trivial);
        let names: Vec<&str> = feasible.iter().map(|q| q.name.as_str()).collect();
        let conclusion = if feasible.is_empty() {
            "no quotient is feasible".to_string()
        } else if unresolved {
            format!(
                "unresolved survivor (open in paper): G/N ≅ {}, {}",
                names.join(" or "),
                shape
            )
        } else {
            format!("G ≅ {} (N = 1)", names.join(" or "))
        };
        let mut preimage_clause = Vec::new();
        if preimage && !remaining.is_empty() {
            let prod: u64 = remaining.iter().product();
            for w in &r.frobenius_witnesses {
                if remaining.iter().all(|p| w.kernel_order % p != 0) {
                    let n = w.complement_order * prod;
                    let verdict = if self.target.contains(n) {
                        "present"
                    } else {
                        "absent, so the preimage of F is not a Frobenius group"
                    };
                    preimage_clause.push(format!(
                        "witness ({},{}): {} · {} = {n} {verdict}",
                        w.kernel_order,
                        w.complement_order,
                        w.complement_order,
                        fmt_product(&remaining)
                    ));
                }
            }
        }
        NormalConstraint {
            candidate: r.name.clone(),
            exclusions: excl.into_values().collect(),
            remaining_primes: remaining,
            shape,
            quotients,
            conclusion,
            unresolved,
            preimage_clause,
        }
    }
}

fn gather(exclusions: &[Exclusion]) -> (Vec<String>, Vec<String>) {
    let mut assumptions = Vec::new();
    let mut cites = Vec::new();
    for e in exclusions {
        for a in &e.assumptions {
            if !assumptions.contains(a) {
                assumptions.push(a.clone());
            }
        }
        if !cites.contains(&e.citation) {
            cites.push(e.citation.clone());
        }
    }
    (assumptions, cites)
}

pub(crate) fn fmt_set(ps: &[u64]) -> String {
    let s: Vec<String> = ps.iter().map(u64::to_string).collect();
    format!("{{{}}}", s.join(","))
}

fn fmt_product(ps: &[u64]) -> String {
    let s: Vec<String> = ps.iter().map(u64::to_string).collect();
    s.join("·")
}

/// Applies the rules to a single candidate: `None` means it survives.
pub fn eliminate(
    r: &SimpleGroupRecord,
    spec: &TargetSpec,
    c: &Catalog,
    options: Options,
) -> Result<Option<Elimination>> {
    let t = resolve(spec, c)?;
    let ctx = Ctx {
        c,
        target: &t.mu,
        reduction: t.reduction,
        triples: PrimeGraph::build(&t.mu).nonadjacent_triples(),
    };
    Ok(ctx.eliminate(r, options.all_rules))
}

pub fn recognize(spec: &TargetSpec, c: &Catalog, options: Options) -> Result<RecognitionReport> {
    let t = resolve(spec, c)?;
    target_primes_checked(&t.mu)?;
    let graph = PrimeGraph::build(&t.mu);
    let gk = GkSummary {
        components: graph.components(),
        nonadjacent_triples: graph.nonadjacent_triples(),
    };
    let (pool, pool_derivation) = candidate_pool(spec, c)?;
    let mut socle = socle_simplicity_derivation(&t.mu, c);
    if t.reduction == Reduction::TwoGroupQuotient {
        socle.conclusive = true;
        socle.conclusion = "socle is a single simple group by axiom two-group-quotient".into();
        socle.citations = axiom_citations(c, &["two-group-quotient"]);
    }
    let ctx = Ctx {
        c,
        target: &t.mu,
        reduction: t.reduction,
        triples: gk.nonadjacent_triples.clone(),
    };
    // Order-preserving parallel map keeps the report independent of scheduling.
    let verdicts: Vec<Option<Elimination>> = pool
        .par_iter()
        .map(|r| ctx.eliminate(r, options.all_rules))
        .collect();
    let mut eliminations = Vec::new();
    let mut survivors = Vec::new();
    let mut constraints = Vec::new();
    for (r, v) in pool.iter().zip(verdicts) {
        match v {
            Some(e) => eliminations.push(e),
            None => {
                survivors.push(r.name.clone());
                constraints.push(ctx.constraint(r, options.frobenius_preimage));
            }
        }
    }
    Ok(RecognitionReport {
        engine_version: ENGINE_VERSION.to_string(),
        target: t.key,
        label: t.label,
        target_mu: t.mu.clone(),
        reduction: t.reduction,
        soluble_part: soluble_part_constraint(&t.mu, c),
        socle,
        gk,
        pool_derivation,
        candidate_pool: pool.iter().map(|r| r.name.clone()).collect(),
        eliminations,
        normal_prime_constraints: constraints,
        survivors,
        seed_independent: true,
    })
}
