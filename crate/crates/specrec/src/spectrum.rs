//! Element-order sets: spectra (divisor-closed) and their maximal antichains.

use crate::arith;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Orders above this bound are rejected as corrupt input.
pub const MAX_ORDER: u64 = i64::MAX as u64;

/// Divisibility-maximal elements of a spectrum, kept ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct MuSet(Vec<u64>);

/// A divisor-closed set of element orders containing 1, kept ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Spectrum(Vec<u64>);

fn check_range(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::validation("element orders must be positive"));
    }
    if n > MAX_ORDER {
        return Err(Error::validation(format!(
            "element order {n} exceeds 2^63-1"
        )));
    }
    Ok(())
}

impl MuSet {
    /// Builds a μ-set, rejecting empty input, zero and non-antichains.
    pub fn new(elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        let set: BTreeSet<u64> = elements.into_iter().collect();
        if set.is_empty() {
            return Err(Error::validation("a mu-set must be nonempty"));
        }
        for &n in &set {
            check_range(n)?;
        }
        let v: Vec<u64> = set.into_iter().collect();
        for (i, &a) in v.iter().enumerate() {
            if let Some(&b) = v[i + 1..].iter().find(|&&b| b % a == 0) {
                return Err(Error::validation(format!(
                    "{a} divides {b}; a mu-set must be an antichain under divisibility"
                )));
            }
        }
        Ok(MuSet(v))
    }

    pub fn elements(&self) -> &[u64] {
        &self.0
    }

    /// True iff `n` divides some element. `n = 0` is never a member.
    pub fn contains(&self, n: u64) -> bool {
        n != 0 && self.0.iter().any(|&m| m % n == 0)
    }

    pub fn closure(&self) -> Spectrum {
        divisor_closure(self)
    }

    pub fn primes(&self) -> Vec<u64> {
        primes_of(self)
    }

    pub fn max(&self) -> u64 {
        *self.0.last().expect("mu-sets are nonempty")
    }
}

impl TryFrom<Vec<u64>> for MuSet {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        MuSet::new(v)
    }
}

impl From<MuSet> for Vec<u64> {
    fn from(m: MuSet) -> Self {
        m.0
    }
}

impl fmt::Display for MuSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

impl Spectrum {
    /// Builds a spectrum, requiring `1` and closure under divisors.
    pub fn new(elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        let set: BTreeSet<u64> = elements.into_iter().collect();
        for &n in &set {
            check_range(n)?;
        }
        if !set.contains(&1) {
            return Err(Error::validation("a spectrum must contain 1"));
        }
        for &n in &set {
            if let Some(d) = arith::divisors(n).into_iter().find(|d| !set.contains(d)) {
                return Err(Error::validation(format!(
                    "spectrum contains {n} but not its divisor {d}"
                )));
            }
        }
        Ok(Spectrum(set.into_iter().collect()))
    }

    /// The divisor closure of an arbitrary set of orders (plus 1).
    pub fn closure_of(orders: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut set = BTreeSet::from([1u64]);
        for n in orders {
            check_range(n)?;
            set.extend(arith::divisors(n));
        }
        Ok(Spectrum(set.into_iter().collect()))
    }

    pub fn elements(&self) -> &[u64] {
        &self.0
    }

    pub fn contains(&self, n: u64) -> bool {
        self.0.binary_search(&n).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mu(&self) -> MuSet {
        maximal_elements(&self.0).expect("spectra are nonempty")
    }

    pub fn is_subset(&self, other: &Spectrum) -> bool {
        self.0.iter().all(|&n| other.contains(n))
    }
}

impl TryFrom<Vec<u64>> for Spectrum {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        Spectrum::new(v)
    }
}

impl From<Spectrum> for Vec<u64> {
    fn from(s: Spectrum) -> Self {
        s.0
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, v: &[u64]) -> fmt::Result {
    f.write_str("{")?;
    for (i, n) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{n}")?;
    }
    f.write_str("}")
}

/// All divisors of all elements of `mu`.
pub fn divisor_closure(mu: &MuSet) -> Spectrum {
    let mut set = BTreeSet::new();
    for &m in mu.elements() {
        set.extend(arith::divisors(m));
    }
    Spectrum(set.into_iter().collect())
}

/// Divisibility-maximal elements of a nonempty set of positive integers.
pub fn maximal_elements(s: &[u64]) -> Result<MuSet> {
    let set: BTreeSet<u64> = s.iter().copied().collect();
    if set.is_empty() {
        return Err(Error::validation(
            "cannot take maximal elements of an empty set",
        ));
    }
    let v: Vec<u64> = set.into_iter().collect();
    let maximal = v
        .iter()
        .copied()
        .filter(|&a| !v.iter().any(|&b| b != a && b % a == 0))
        .collect::<Vec<_>>();
    MuSet::new(maximal)
}

/// Membership in the spectrum generated by `mu`; rejects `n = 0`.
pub fn member(mu: &MuSet, n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::validation("member: n must be positive"));
    }
    Ok(mu.contains(n))
}

/// Divisibility-minimal elements of ω(a) \ ω(b), ascending.
pub fn witnesses_not_in(a: &MuSet, b: &MuSet) -> Vec<u64> {
    let missing: Vec<u64> = divisor_closure(a)
        .0
        .into_iter()
        .filter(|&n| !b.contains(n))
        .collect();
    // Divisors of a missing order are either present in ω(b) or missing
    // themselves, so minimality only needs checking against `missing`.
    missing
        .iter()
        .copied()
        .filter(|&n| !missing.iter().any(|&d| d != n && n % d == 0))
        .collect()
}

/// Primes dividing some element, ascending.
pub fn primes_of(mu: &MuSet) -> Vec<u64> {
    let set: BTreeSet<u64> = mu
        .elements()
        .iter()
        .flat_map(|&m| arith::prime_divisors(m))
        .collect();
    set.into_iter().collect()
}

/// Parses a comma-separated list of positive integers such as `"8,10,11,12"`.
pub fn parse_list(text: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    let mut column = 1;
    for field in text.split(',') {
        let trimmed = field.trim();
        let n: u64 = trimmed
            .parse()
            .map_err(|_| Error::parse(1, column, format!("not a positive integer: {trimmed:?}")))?;
        if n == 0 {
            return Err(Error::parse(1, column, "orders must be positive"));
        }
        out.push(n);
        column += field.len() + 1;
    }
    Ok(out)
}
