//! Validated store of simple-group records, target spectra and cited axioms.
//!
//! The JSON schema is documented in `data/README.md`. Unknown keys are
//! rejected; every record is re-validated after parsing.

use crate::arith;
use crate::error::{Error, Result};
use crate::spectrum::MuSet;
use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

const BUNDLED_JSON: &str = include_str!("../data/catalog.json");
const BUNDLED_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");

/// Number of records with all prime divisors at most 11.
pub const S11_SIZE: usize = 28;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrobeniusWitness {
    pub kernel_order: u64,
    pub complement_order: u64,
    pub citation: String,
    /// Human case split the witness relies on, recorded verbatim.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case_split: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FactStatement {
    /// Every module in characteristic `p` forces an element of order `p·q`.
    ForcedAdjacency { p: u64, q: u64 },
    /// Modules outside `dims` force an element of order `otherwise_order`.
    ForcedDimensions {
        dims: Vec<u32>,
        otherwise_order: u64,
    },
    /// The module forces an element of order `order` (coset-order criterion).
    ForcedOrder {
        order: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        class: Option<String>,
    },
    /// `class` (of element order `order`) acts fixed-point-freely, which
    /// rules out elements of order `forbids` in the extension.
    FixedPointFreeClass {
        class: String,
        order: u64,
        forbids: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixRef {
    /// Path relative to the catalog directory.
    pub file: String,
    pub m: u64,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFact {
    /// The acting group: a record name or one of its extensions.
    pub group: String,
    pub characteristic: u64,
    pub statement: FactStatement,
    pub citation: String,
    /// Module dimensions the fact covers; `None` means every module.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extension {
    pub name: String,
    pub out_order: u64,
    pub mu: MuSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleGroupRecord {
    pub name: String,
    pub order_factors: Vec<(u64, u32)>,
    pub out_order: u64,
    pub out_structure: String,
    pub in_s11: bool,
    pub mu: Option<MuSet>,
    /// Almost simple groups `S < H <= Aut(S)`, each with its spectrum.
    pub extensions: Vec<Extension>,
    pub frobenius_witnesses: Vec<FrobeniusWitness>,
    pub module_facts: Vec<ModuleFact>,
    pub citations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<String>,
}

impl SimpleGroupRecord {
    pub fn order(&self) -> BigUint {
        self.order_factors
            .iter()
            .fold(BigUint::one(), |acc, &(p, e)| acc * BigUint::from(p).pow(e))
    }

    pub fn primes(&self) -> Vec<u64> {
        self.order_factors.iter().map(|&(p, _)| p).collect()
    }

    pub fn divides_order(&self, p: u64) -> bool {
        self.order_factors.iter().any(|&(q, _)| q == p)
    }

    /// μ of Aut(S): the extension of full outer order, or `mu` itself when
    /// Out(S) is trivial.
    pub fn aut_mu(&self) -> Option<&MuSet> {
        if self.out_order == 1 {
            return self.mu.as_ref();
        }
        self.extensions
            .iter()
            .find(|e| e.out_order == self.out_order)
            .map(|e| &e.mu)
    }

    pub fn aut_name(&self) -> String {
        match self
            .extensions
            .iter()
            .find(|e| e.out_order == self.out_order)
        {
            Some(e) if self.out_order > 1 => e.name.clone(),
            _ => self.name.clone(),
        }
    }

    pub fn max_prime(&self) -> u64 {
        self.order_factors.last().map_or(1, |&(p, _)| p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reduction {
    /// Reduce through the soluble radical; the socle must be identified.
    SolubleRadical,
    /// Cited theorem: G/N lies between S and Aut(S) with N a 2-group.
    TwoGroupQuotient,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Target {
    pub key: String,
    pub group: String,
    pub label: String,
    pub mu: MuSet,
    pub reduction: Reduction,
    pub generators: Option<String>,
    pub citation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axiom {
    pub id: String,
    pub statement: String,
    pub citation: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Catalog {
    pub records: Vec<SimpleGroupRecord>,
    pub targets: BTreeMap<String, Target>,
    pub axioms: Vec<Axiom>,
    #[serde(skip)]
    base_dir: Option<PathBuf>,
}

// On-disk shapes, converted into the validated types above.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    simple_groups: Vec<RawRecord>,
    targets: BTreeMap<String, RawTarget>,
    axioms: Vec<Axiom>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    name: String,
    order_factors: Vec<(u64, u32)>,
    out_order: u64,
    out_structure: String,
    in_s11: bool,
    #[serde(default)]
    mu: Option<Vec<u64>>,
    #[serde(default)]
    extensions: Vec<RawExtension>,
    #[serde(default)]
    frobenius_witnesses: Vec<FrobeniusWitness>,
    #[serde(default)]
    module_facts: Vec<ModuleFact>,
    citations: Vec<String>,
    #[serde(default)]
    generators: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExtension {
    name: String,
    out_order: u64,
    mu: Vec<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTarget {
    group: String,
    label: String,
    mu: Vec<u64>,
    reduction: Reduction,
    #[serde(default)]
    generators: Option<String>,
    citation: String,
}

fn bad(record: &str, field: &str, msg: impl std::fmt::Display) -> Error {
    Error::validation(format!("record {record}: field {field}: {msg}"))
}

fn convert_record(raw: RawRecord) -> Result<SimpleGroupRecord> {
    let name = raw.name.as_str();
    if name.trim().is_empty() {
        return Err(Error::validation("record with empty name"));
    }
    if raw.order_factors.is_empty() {
        return Err(bad(name, "order_factors", "empty"));
    }
    for (i, &(p, e)) in raw.order_factors.iter().enumerate() {
        if !arith::is_prime(p) {
            return Err(bad(name, "order_factors", format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(bad(
                name,
                "order_factors",
                format!("exponent of {p} is zero"),
            ));
        }
        if i > 0 && raw.order_factors[i - 1].0 >= p {
            return Err(bad(name, "order_factors", "primes not strictly increasing"));
        }
    }
    let primes: BTreeSet<u64> = raw.order_factors.iter().map(|&(p, _)| p).collect();
    if raw.out_order == 0 {
        return Err(bad(name, "out_order", "must be positive"));
    }
    if raw.in_s11 {
        if !primes.contains(&2) || !primes.contains(&3) {
            return Err(bad(name, "order_factors", "2 and 3 must divide the order"));
        }
        if primes.iter().any(|&p| p > 11) {
            return Err(bad(
                name,
                "order_factors",
                "prime above 11 in an S11 record",
            ));
        }
        if let Some(p) = arith::prime_divisors(raw.out_order)
            .into_iter()
            .find(|&p| p > 3)
        {
            return Err(bad(name, "out_order", format!("prime {p} outside {{2,3}}")));
        }
    }
    let mu = match raw.mu {
        Some(v) => {
            let mu = MuSet::new(v).map_err(|e| bad(name, "mu", e))?;
            if let Some(p) = mu.primes().into_iter().find(|p| !primes.contains(p)) {
                return Err(bad(
                    name,
                    "mu",
                    format!("prime {p} does not divide the order"),
                ));
            }
            Some(mu)
        }
        None => None,
    };
    let mut ext_primes = primes.clone();
    ext_primes.extend(arith::prime_divisors(raw.out_order));
    let mut extensions = Vec::with_capacity(raw.extensions.len());
    for ext in raw.extensions {
        let field = format!("extensions[{}]", ext.name);
        if ext.out_order < 2 || raw.out_order % ext.out_order != 0 {
            return Err(bad(
                name,
                &field,
                "out_order must be a proper divisor chain step",
            ));
        }
        let emu = MuSet::new(ext.mu).map_err(|e| bad(name, &field, e))?;
        if let Some(p) = emu.primes().into_iter().find(|p| !ext_primes.contains(p)) {
            return Err(bad(name, &field, format!("prime {p} outside |Aut S|")));
        }
        if let Some(m) = &mu {
            if let Some(&n) = m.elements().iter().find(|&&n| !emu.contains(n)) {
                return Err(bad(
                    name,
                    &field,
                    format!("{n} in ω(S) but not in the extension"),
                ));
            }
        }
        extensions.push(Extension {
            name: ext.name,
            out_order: ext.out_order,
            mu: emu,
        });
    }
    let names: BTreeSet<&str> = extensions.iter().map(|e| e.name.as_str()).collect();
    if names.len() != extensions.len() {
        return Err(bad(name, "extensions", "duplicate extension name"));
    }
    if mu.is_some() && raw.out_order > 1 && !extensions.iter().any(|e| e.out_order == raw.out_order)
    {
        return Err(bad(name, "extensions", "no extension of full outer order"));
    }
    for w in &raw.frobenius_witnesses {
        if w.kernel_order < 2 || w.complement_order < 2 {
            return Err(bad(
                name,
                "frobenius_witnesses",
                "orders must be at least 2",
            ));
        }
        if w.citation.trim().is_empty() {
            return Err(bad(name, "frobenius_witnesses", "empty citation"));
        }
        if arith::prime_divisors(w.kernel_order * w.complement_order)
            .iter()
            .any(|p| !primes.contains(p))
        {
            return Err(bad(
                name,
                "frobenius_witnesses",
                "order does not divide |S|",
            ));
        }
    }
    for f in &raw.module_facts {
        if f.citation.trim().is_empty() {
            return Err(bad(name, "module_facts", "empty citation"));
        }
        if !arith::is_prime(f.characteristic) {
            return Err(bad(name, "module_facts", "characteristic must be prime"));
        }
        if f.group != name && !names.contains(f.group.as_str()) {
            return Err(bad(
                name,
                "module_facts",
                format!("unknown group {}", f.group),
            ));
        }
        if let Some(mref) = &f.matrix {
            if mref.m == 0 || mref.source.trim().is_empty() {
                return Err(bad(name, "module_facts", "matrix needs m ≥ 1 and a source"));
            }
        }
    }
    if raw.citations.iter().all(|c| c.trim().is_empty()) {
        return Err(bad(name, "citations", "at least one citation required"));
    }
    Ok(SimpleGroupRecord {
        name: raw.name,
        order_factors: raw.order_factors,
        out_order: raw.out_order,
        out_structure: raw.out_structure,
        in_s11: raw.in_s11,
        mu,
        extensions,
        frobenius_witnesses: raw.frobenius_witnesses,
        module_facts: raw.module_facts,
        citations: raw.citations,
        generators: raw.generators,
    })
}

impl Catalog {
    /// Parses and validates catalog JSON. Relative data paths resolve
    /// against `base_dir` when given.
    pub fn from_json(text: &str, base_dir: Option<PathBuf>) -> Result<Catalog> {
        let raw: RawCatalog = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.line(), e.column(), format!("catalog: {e}")))?;
        let mut records = Vec::with_capacity(raw.simple_groups.len());
        let mut seen = BTreeSet::new();
        for r in raw.simple_groups {
            if !seen.insert(r.name.clone()) {
                return Err(Error::validation(format!(
                    "record {}: field name: duplicate record name",
                    r.name
                )));
            }
            records.push(convert_record(r)?);
        }
        let s11 = records.iter().filter(|r| r.in_s11).count();
        if s11 != S11_SIZE {
            return Err(Error::validation(format!(
                "expected {S11_SIZE} records with in_s11, found {s11}"
            )));
        }
        if let Some(r) = records.iter().find(|r| !r.in_s11 && r.max_prime() <= 11) {
            return Err(bad(&r.name, "in_s11", "all primes are at most 11"));
        }
        let mut targets = BTreeMap::new();
        for (key, t) in raw.targets {
            let ctx = |field: &str, msg: String| {
                Error::validation(format!("target {key}: field {field}: {msg}"))
            };
            if !records.iter().any(|r| r.name == t.group) {
                return Err(ctx("group", format!("unknown record {}", t.group)));
            }
            let mu = MuSet::new(t.mu).map_err(|e| ctx("mu", e.to_string()))?;
            if t.citation.trim().is_empty() {
                return Err(ctx("citation", "empty".into()));
            }
            targets.insert(
                key.clone(),
                Target {
                    key,
                    group: t.group,
                    label: t.label,
                    mu,
                    reduction: t.reduction,
                    generators: t.generators,
                    citation: t.citation,
                },
            );
        }
        let mut ids = BTreeSet::new();
        for a in &raw.axioms {
            if !ids.insert(a.id.as_str()) {
                return Err(Error::validation(format!("axiom {}: duplicate id", a.id)));
            }
            if a.citation.trim().is_empty() || a.statement.trim().is_empty() {
                return Err(Error::validation(format!(
                    "axiom {}: empty statement or citation",
                    a.id
                )));
            }
        }
        Ok(Catalog {
            records,
            targets,
            axioms: raw.axioms,
            base_dir,
        })
    }

    pub fn load(path: &Path) -> Result<Catalog> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let dir = path.parent().map(Path::to_path_buf);
        Catalog::from_json(&text, dir)
    }

    /// The catalog shipped with the crate.
    pub fn bundled() -> Catalog {
        Catalog::from_json(BUNDLED_JSON, Some(PathBuf::from(BUNDLED_DIR)))
            .expect("bundled catalog is valid")
    }

    pub fn record(&self, name: &str) -> Option<&SimpleGroupRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn target(&self, key: &str) -> Option<&Target> {
        self.targets.get(key)
    }

    pub fn axiom(&self, id: &str) -> Option<&Axiom> {
        self.axioms.iter().find(|a| a.id == id)
    }

    pub fn s11(&self) -> Vec<&SimpleGroupRecord> {
        self.records.iter().filter(|r| r.in_s11).collect()
    }

    /// Resolves a data path stored in the catalog.
    pub fn resolve(&self, rel: &str) -> PathBuf {
        match &self.base_dir {
            Some(dir) => dir.join(rel),
            None => PathBuf::from(rel),
        }
    }

    /// Records whose primes are all at most `max_prime`, optionally
    /// restricted to those divisible by `required_prime`. Catalog order.
    pub fn subcatalog(
        &self,
        max_prime: u64,
        required_prime: Option<u64>,
    ) -> Vec<&SimpleGroupRecord> {
        self.records
            .iter()
            .filter(|r| r.max_prime() <= max_prime)
            .filter(|r| required_prime.map_or(true, |p| r.divides_order(p)))
            .collect()
    }
}

/// `|Aut(S^t)| = (|S|·|Out S|)^t · t!`.
pub fn aut_order_power(r: &SimpleGroupRecord, t: u32) -> Result<BigUint> {
    if t == 0 {
        return Err(Error::validation("t must be at least 1"));
    }
    let base = r.order() * BigUint::from(r.out_order);
    let fact = (1..=t as u64).fold(BigUint::one(), |acc, i| acc * BigUint::from(i));
    Ok(base.pow(t) * fact)
}
