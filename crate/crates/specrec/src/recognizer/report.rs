//! Stable text and JSON renderings of a recognition report.
//!
//! Text grammar: one `KEY value` line per fact, detail lines indented by two
//! spaces. `ELIMINATED <name>: <rule summary>` and a final
//! `SURVIVORS: <names>|none` line are guaranteed.

use super::{fmt_set, Elimination, Exclusion, QuotientVerdict, RecognitionReport, Rule};
use crate::error::{Error, Result};
use std::fmt::Write;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(Error::Usage(format!(
                "unknown format {other:?}, expected text or json"
            ))),
        }
    }
}

pub fn render_report(rep: &RecognitionReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rep).expect("report serialises");
            s.push('\n');
            s
        }
        Format::Text => render_text(rep),
    }
}

fn exclusion_line(e: &Exclusion) -> String {
    format!("{} excluded by {}", e.prime, e.source)
}

fn quotient_line(q: &QuotientVerdict) -> String {
    let state = if q.feasible { "feasible" } else { "infeasible" };
    format!("quotient {}: {state}, {}", q.name, q.reason)
}

pub(crate) fn rule_summary(rule: &Rule) -> String {
    match rule {
        Rule::SpectrumWitness { n, .. } => format!("witness {n}"),
        Rule::OutPowerArgument {
            triple,
            outside_aut,
        } => format!(
            "out-power triple {}, outside |Aut S|: {}",
            fmt_set(triple),
            fmt_set(outside_aut)
        ),
        Rule::FrobeniusExclusionConflict {
            order,
            forced,
            exclusions,
        } => format!(
            "frobenius conflict, {order} forces {}; {}",
            fmt_set(forced),
            exclusions
                .iter()
                .map(exclusion_line)
                .collect::<Vec<_>>()
                .join("; ")
        ),
        Rule::ModuleFactConflict {
            order,
            forced,
            exclusions,
        } => format!(
            "module conflict, {order} forces {}; {}",
            fmt_set(forced),
            exclusions
                .iter()
                .map(exclusion_line)
                .collect::<Vec<_>>()
                .join("; ")
        ),
        Rule::ExtensionConflict { quotients } => format!(
            "extension conflict; {}",
            quotients
                .iter()
                .map(|q| format!("{}: {}", q.name, q.reason))
                .collect::<Vec<_>>()
                .join("; ")
        ),
    }
}

fn render_elimination(out: &mut String, e: &Elimination) {
    let _ = writeln!(out, "ELIMINATED {}: {}", e.candidate, rule_summary(&e.rule));
    for r in &e.also {
        let _ = writeln!(out, "  also: {}", rule_summary(r));
    }
    for a in &e.assumptions {
        let _ = writeln!(out, "  assume: {a}");
    }
    for c in &e.citations {
        let _ = writeln!(out, "  cite: {c}");
    }
}

fn render_text(rep: &RecognitionReport) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "TARGET {} {}", rep.target, rep.label);
    let _ = writeln!(w, "ENGINE {}", rep.engine_version);
    let _ = writeln!(w, "MU {}", rep.target_mu);
    let reduction = serde_json::to_value(rep.reduction).expect("enum serialises");
    let _ = writeln!(w, "REDUCTION {}", reduction.as_str().unwrap_or_default());
    let comps: Vec<String> = rep.gk.components.iter().map(|c| fmt_set(c)).collect();
    let _ = writeln!(w, "GK COMPONENTS {}", comps.join(" "));
    if rep.gk.nonadjacent_triples.is_empty() {
        let _ = writeln!(w, "GK TRIPLES none");
    } else {
        let ts: Vec<String> = rep
            .gk
            .nonadjacent_triples
            .iter()
            .map(|t| fmt_set(t))
            .collect();
        let _ = writeln!(w, "GK TRIPLES {}", ts.join(" "));
    }
    for s in &rep.soluble_part {
        let _ = writeln!(w, "SOLUBLE PART {}", s.statement);
    }
    for p in &rep.socle.primes {
        match &p.divides_quotient {
            Some(why) => {
                let _ = writeln!(w, "SOCLE {} not in spectrum; {why}", p.product);
            }
            None => {
                let _ = writeln!(
                    w,
                    "SOCLE {} not in spectrum; {} not shown to divide |G/N|",
                    p.product, p.prime
                );
            }
        }
    }
    let _ = writeln!(w, "SOCLE CONCLUSION {}", rep.socle.conclusion);
    for d in &rep.pool_derivation {
        let verdict = if d.required {
            "required"
        } else {
            "inconclusive"
        };
        let _ = writeln!(w, "REQUIRED PRIME {}: {verdict}", d.prime);
        for (name, why) in &d.records_without {
            let why = why.as_deref().unwrap_or("no excluding witness");
            let _ = writeln!(w, "  {name}: {why}");
        }
    }
    let _ = writeln!(
        w,
        "POOL {}: {}",
        rep.candidate_pool.len(),
        rep.candidate_pool.join(", ")
    );
    for e in &rep.eliminations {
        render_elimination(w, e);
    }
    for c in &rep.normal_prime_constraints {
        let _ = writeln!(w, "SURVIVOR {}: {}", c.candidate, c.shape);
        for e in &c.exclusions {
            let _ = writeln!(w, "  {}", exclusion_line(e));
        }
        let mut assumptions: Vec<&str> = Vec::new();
        for a in c.exclusions.iter().flat_map(|e| &e.assumptions) {
            if !assumptions.contains(&a.as_str()) {
                assumptions.push(a);
            }
        }
        for a in assumptions {
            let _ = writeln!(w, "  assume: {a}");
        }
        for q in &c.quotients {
            let _ = writeln!(w, "  {}", quotient_line(q));
        }
        for p in &c.preimage_clause {
            let _ = writeln!(w, "  preimage clause: {p}");
        }
        let _ = writeln!(w, "  conclusion: {}", c.conclusion);
    }
    if rep.survivors.is_empty() {
        let _ = writeln!(w, "SURVIVORS: none");
    } else {
        let _ = writeln!(w, "SURVIVORS: {}", rep.survivors.join(", "));
    }
    out
}
