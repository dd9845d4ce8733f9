//! Cross-checks of shipped catalog data against the computational engines.

use crate::catalog::{Catalog, FactStatement};
use crate::error::Result;
use crate::modlinalg;
use crate::permgroup::{load_group, spectrum_exhaustive};
use crate::spectrum::{divisor_closure, MuSet};
use num_bigint::BigUint;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumCheck {
    pub name: String,
    pub file: String,
    pub order: BigUint,
    pub expected_order: BigUint,
    /// `None` when the group is over the cap and was not enumerated.
    pub computed_mu: Option<MuSet>,
    pub catalog_mu: MuSet,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixCheck {
    pub group: String,
    pub file: String,
    pub source: String,
    pub characteristic: u64,
    pub dim: usize,
    pub m: u64,
    pub matrix_order: u64,
    pub power_sum_rank: usize,
    pub forced_order: Option<u64>,
    pub ok: bool,
}

/// Generator files of catalog records (simple groups) and of targets
/// (automorphism groups) with their expected orders and spectra.
fn generator_entries(c: &Catalog) -> Vec<(String, String, BigUint, MuSet)> {
    let mut out = Vec::new();
    for r in &c.records {
        if let (Some(file), Some(mu)) = (&r.generators, &r.mu) {
            out.push((r.name.clone(), file.clone(), r.order(), mu.clone()));
        }
    }
    for t in c.targets.values() {
        let Some(file) = &t.generators else { continue };
        let Some(r) = c.record(&t.group) else {
            continue;
        };
        out.push((
            t.label.clone(),
            file.clone(),
            r.order() * BigUint::from(r.out_order),
            t.mu.clone(),
        ));
    }
    out
}

/// Checks every generator file's order, and its spectrum when the order is
/// at most `cap`.
pub fn check_generator_spectra(c: &Catalog, cap: u64) -> Result<Vec<SpectrumCheck>> {
    let mut out = Vec::new();
    for (name, file, expected_order, mu) in generator_entries(c) {
        let g = load_group(&c.resolve(&file))?;
        let computed_mu = if *g.order() <= BigUint::from(cap) {
            Some(spectrum_exhaustive(&g, cap)?.mu())
        } else {
            None
        };
        let ok = *g.order() == expected_order
            && computed_mu
                .as_ref()
                .map_or(true, |m| divisor_closure(m) == divisor_closure(&mu));
        out.push(SpectrumCheck {
            name,
            file,
            order: g.order().clone(),
            expected_order,
            computed_mu,
            catalog_mu: mu,
            ok,
        });
    }
    Ok(out)
}

/// Each shipped module matrix must have order `m`, and its power sum must be
/// nonzero exactly when the fact claims a forced order `p·m`.
pub fn check_module_matrices(c: &Catalog) -> Result<Vec<MatrixCheck>> {
    let mut out = Vec::new();
    for r in &c.records {
        for f in &r.module_facts {
            let Some(mref) = &f.matrix else { continue };
            let t = modlinalg::read_matrix(&c.resolve(&mref.file))?;
            let order = modlinalg::matrix_order(&t)?;
            let rank = if order == mref.m {
                modlinalg::power_sum(&t, mref.m)?.rank()
            } else {
                0
            };
            let forced_order = match &f.statement {
                FactStatement::ForcedOrder { order, .. } => Some(*order),
                _ => None,
            };
            let ok = t.p() as u64 == f.characteristic
                && order == mref.m
                && rank > 0
                && forced_order.map_or(true, |o| o == f.characteristic * mref.m)
                && f.dims
                    .as_ref()
                    .map_or(true, |d| d.contains(&(t.dim() as u32)));
            out.push(MatrixCheck {
                group: f.group.clone(),
                file: mref.file.clone(),
                source: mref.source.clone(),
                characteristic: f.characteristic,
                dim: t.dim(),
                m: mref.m,
                matrix_order: order,
                power_sum_rank: rank,
                forced_order,
                ok,
            });
        }
    }
    Ok(out)
}
