use super::chain::PermGroup;
use super::permutation::{order_with_scratch, Permutation};
use crate::error::Result;
use crate::spectrum::Spectrum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SLOTS: usize = 15;
pub const BURN_IN: usize = 50;

/// Product-replacement random element generator, accumulator variant.
///
/// State is owned by the caller, so one group may feed several samplers
/// concurrently. Output is a pure function of the generators and the seed.
#[derive(Clone, Debug)]
pub struct ProductReplacement {
    slots: Vec<Permutation>,
    acc: Permutation,
    rng: ChaCha8Rng,
    scratch: Permutation,
}

impl ProductReplacement {
    pub fn new(degree: usize, generators: &[Permutation], seed: u64) -> Self {
        let identity = Permutation::identity(degree);
        let slots = if generators.is_empty() {
            vec![identity.clone(); SLOTS]
        } else {
            (0..SLOTS)
                .map(|i| generators[i % generators.len()].clone())
                .collect()
        };
        let mut pr = ProductReplacement {
            slots,
            acc: identity.clone(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            scratch: identity,
        };
        for _ in 0..BURN_IN {
            pr.step();
        }
        pr
    }

    fn step(&mut self) {
        let s = self.rng.random_range(0..SLOTS);
        let mut t = self.rng.random_range(0..SLOTS - 1);
        if t >= s {
            t += 1;
        }
        let invert: bool = self.rng.random();
        let left: bool = self.rng.random();
        let other = if invert {
            self.slots[t].inverse()
        } else {
            self.slots[t].clone()
        };
        if left {
            other.compose_into(&self.slots[s], &mut self.scratch);
        } else {
            self.slots[s].compose_into(&other, &mut self.scratch);
        }
        std::mem::swap(&mut self.slots[s], &mut self.scratch);
        self.acc.compose_into(&self.slots[s], &mut self.scratch);
        std::mem::swap(&mut self.acc, &mut self.scratch);
    }

    /// Next pseudo-random element.
    pub fn next_element(&mut self) -> &Permutation {
        self.step();
        &self.acc
    }
}

/// `{1}` together with the orders of `samples` product-replacement elements,
/// closed under divisors. Always a subset of the true spectrum.
pub fn spectrum_sample(g: &PermGroup, samples: u64, seed: u64) -> Result<Spectrum> {
    let mut orders = Vec::new();
    if samples > 0 {
        let mut pr = ProductReplacement::new(g.degree(), g.generators(), seed);
        let mut seen = vec![false; g.degree()];
        for _ in 0..samples {
            let x = pr.next_element();
            orders.push(order_with_scratch(x.images(), &mut seen));
        }
    }
    Spectrum::closure_of(orders)
}

/// Orders of the sampled elements, in draw order.
pub fn sample_orders(g: &PermGroup, samples: u64, seed: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(samples as usize);
    if samples == 0 {
        return out;
    }
    let mut pr = ProductReplacement::new(g.degree(), g.generators(), seed);
    let mut seen = vec![false; g.degree()];
    for _ in 0..samples {
        out.push(order_with_scratch(pr.next_element().images(), &mut seen));
    }
    out
}
