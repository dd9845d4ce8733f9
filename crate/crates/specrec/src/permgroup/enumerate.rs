use super::chain::PermGroup;
use super::permutation::{order_with_scratch, Permutation};
use crate::error::{Error, Result};
use crate::spectrum::Spectrum;
use num_bigint::BigUint;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Default cap for exhaustive traversal: 2^21 elements.
pub const DEFAULT_CAP: u64 = 1 << 21;

/// Number of elements of each order, by full traversal of the chain.
///
/// Every element is written uniquely as `u_k * … * u_1 * u_0` with `u_i` from
/// the i-th transversal. Branches under the first transversal run in parallel;
/// the merged counts do not depend on scheduling.
pub fn order_census(g: &PermGroup, cap: u64) -> Result<BTreeMap<u64, u64>> {
    if g.order() > &BigUint::from(cap) {
        return Err(Error::CapExceeded {
            size: g.order().clone(),
            cap,
        });
    }
    if g.levels.is_empty() {
        return Ok(BTreeMap::from([(1, 1)]));
    }
    let census = g.levels[0]
        .reps
        .par_iter()
        .map(|u0| {
            let mut counts = BTreeMap::new();
            let mut bufs = vec![Permutation::identity(g.degree()); g.levels.len() - 1];
            let mut seen = vec![false; g.degree()];
            descend(g, 1, u0, &mut bufs, &mut seen, &mut counts);
            counts
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    Ok(census)
}

fn descend(
    g: &PermGroup,
    l: usize,
    suffix: &Permutation,
    bufs: &mut [Permutation],
    seen: &mut [bool],
    counts: &mut BTreeMap<u64, u64>,
) {
    if l == g.levels.len() {
        *counts
            .entry(order_with_scratch(suffix.images(), seen))
            .or_insert(0) += 1;
        return;
    }
    let (buf, rest) = bufs.split_first_mut().expect("one buffer per level");
    for u in &g.levels[l].reps {
        u.compose_into(suffix, buf);
        descend(g, l + 1, buf, rest, seen, counts);
    }
}

/// Exact spectrum by traversal; fails with `CapExceeded` above `cap` elements.
pub fn spectrum_exhaustive(g: &PermGroup, cap: u64) -> Result<Spectrum> {
    let census = order_census(g, cap)?;
    Spectrum::new(census.into_keys())
}
