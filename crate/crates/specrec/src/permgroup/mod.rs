//! Permutation groups: parsing, Schreier–Sims chains, membership,
//! exhaustive and sampled spectra.

mod chain;
mod enumerate;
mod io;
mod permutation;
mod sample;

pub use chain::PermGroup;
pub use enumerate::{order_census, spectrum_exhaustive, DEFAULT_CAP};
pub use io::{format_generator_file, parse_generator_file, read_generator_file, GeneratorFile};
pub use permutation::{parse_cycles, Permutation};
pub use sample::{sample_orders, spectrum_sample, ProductReplacement, BURN_IN, SLOTS};

use crate::error::{Error, Result};
use std::path::Path;

/// Least `k >= 1` with `p^k = 1`.
pub fn element_order(p: &Permutation) -> u64 {
    p.order()
}

/// Builds the chain for the given generators.
pub fn build_chain(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup> {
    PermGroup::build(degree, generators)
}

/// Reads a generator file and builds its chain, checking the order against
/// an `# order N` comment when the file has one.
pub fn load_group(path: &Path) -> Result<PermGroup> {
    let file = read_generator_file(path)?;
    let declared = file.declared_order();
    let g = PermGroup::build(file.degree, file.generators)?;
    if let Some(n) = declared {
        if &n != g.order() {
            return Err(Error::Validation(format!(
                "{}: declared order {n}, generated group has order {}",
                path.display(),
                g.order()
            )));
        }
    }
    Ok(g)
}
