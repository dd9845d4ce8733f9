use super::permutation::Permutation;
use crate::error::{Error, Result};
use num_bigint::BigUint;

const NONE: u32 = u32::MAX;

/// One level of a stabiliser chain: the stabiliser of the earlier base points,
/// its strong generators, and the orbit of this level's base point with
/// explicit transversal elements.
#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub(crate) base: u32,
    pub(crate) gens: Vec<Permutation>,
    pub(crate) orbit: Vec<u32>,
    pos: Vec<u32>,
    /// `reps[k]` maps `base` to `orbit[k]`.
    pub(crate) reps: Vec<Permutation>,
    rep_invs: Vec<Permutation>,
    /// Number of generators already paired with each orbit point when
    /// checking Schreier generators. Transversal elements are never replaced,
    /// so a generator that once sifted to the identity keeps doing so.
    checked: Vec<u32>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut pos = vec![NONE; degree];
        pos[base as usize] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            pos,
            reps: vec![Permutation::identity(degree)],
            rep_invs: vec![Permutation::identity(degree)],
            checked: vec![0],
        }
    }

    fn add_generator(&mut self, g: Permutation) {
        self.gens.push(g);
        let newest = self.gens.len() - 1;
        let old_len = self.orbit.len();
        for k in 0..old_len {
            self.visit(k, newest);
        }
        let mut k = old_len;
        while k < self.orbit.len() {
            for s in 0..self.gens.len() {
                self.visit(k, s);
            }
            k += 1;
        }
    }

    fn visit(&mut self, k: usize, s: usize) {
        let image = self.gens[s].apply(self.orbit[k]);
        if self.pos[image as usize] == NONE {
            let rep = self.reps[k].compose(&self.gens[s]);
            self.pos[image as usize] = self.orbit.len() as u32;
            self.orbit.push(image);
            self.rep_invs.push(rep.inverse());
            self.reps.push(rep);
            self.checked.push(0);
        }
    }

    #[inline]
    pub(crate) fn position(&self, point: u32) -> Option<usize> {
        match self.pos[point as usize] {
            NONE => None,
            k => Some(k as usize),
        }
    }
}

/// A permutation group with a verified base and strong generating set.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    pub(crate) levels: Vec<Level>,
    order: BigUint,
}

impl PermGroup {
    /// Deterministic Schreier–Sims. Every Schreier generator is sifted, and a
    /// full second sweep re-checks all of them before the chain is accepted.
    pub fn build(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::validation(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
        let mut group = PermGroup {
            degree,
            generators,
            levels: Vec::new(),
            order: BigUint::from(1u32),
        };
        let nontrivial: Vec<Permutation> = group
            .generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        for g in nontrivial {
            if group.levels.iter().all(|l| g.apply(l.base) == l.base) {
                let b = g.first_moved().expect("nontrivial");
                group.levels.push(Level::new(b, degree));
            }
            for l in 0..group.levels.len() {
                let moves = g.apply(group.levels[l].base) != group.levels[l].base;
                group.levels[l].add_generator(g.clone());
                if moves {
                    break;
                }
            }
        }
        group.complete();
        // Verification sweep: forget which Schreier generators were checked
        // and redo all of them. It must not add anything; if it ever did, the
        // chain is completed again and re-verified.
        loop {
            for level in &mut group.levels {
                level.checked.iter_mut().for_each(|c| *c = 0);
            }
            if group.complete() == 0 {
                break;
            }
        }
        group.order = group
            .levels
            .iter()
            .map(|l| BigUint::from(l.orbit.len()))
            .product();
        debug_assert!(group.generators.iter().all(|g| group.contains_unchecked(g)));
        Ok(group)
    }

    /// Runs the Schreier–Sims loop to completion; returns the number of
    /// strong generators added.
    fn complete(&mut self) -> usize {
        let mut added = 0;
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let l = i as usize;
            match self.first_failing_schreier_generator(l) {
                Some((h, j)) => {
                    if j == self.levels.len() {
                        let b = h.first_moved().expect("nontrivial residue");
                        self.levels.push(Level::new(b, self.degree));
                    }
                    for m in l + 1..=j {
                        self.levels[m].add_generator(h.clone());
                    }
                    added += 1;
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
        added
    }

    fn first_failing_schreier_generator(&mut self, l: usize) -> Option<(Permutation, usize)> {
        let mut k = 0;
        let mut buf = Permutation::identity(self.degree);
        while k < self.levels[l].orbit.len() {
            while (self.levels[l].checked[k] as usize) < self.levels[l].gens.len() {
                let s = self.levels[l].checked[k] as usize;
                self.levels[l].checked[k] += 1;
                let level = &self.levels[l];
                let image = level.gens[s].apply(level.orbit[k]);
                let target = level.position(image).expect("orbit is closed");
                level.reps[k].compose_into(&level.gens[s], &mut buf);
                let schreier = buf.compose(&level.rep_invs[target]);
                let (residue, j) = self.sift_from(schreier, l + 1);
                if j < self.levels.len() || !residue.is_identity() {
                    return Some((residue, j));
                }
            }
            k += 1;
        }
        None
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level at
    /// which sifting stopped (`levels.len()` if it went all the way through).
    fn sift_from(&self, g: Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g;
        let mut tmp = Permutation::identity(self.degree);
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            match level.position(h.apply(level.base)) {
                None => return (h, l),
                Some(k) => {
                    h.compose_into(&level.rep_invs[k], &mut tmp);
                    std::mem::swap(&mut h, &mut tmp);
                }
            }
        }
        (h, self.levels.len())
    }

    fn contains_unchecked(&self, p: &Permutation) -> bool {
        let (residue, j) = self.sift_from(p.clone(), 0);
        j == self.levels.len() && residue.is_identity()
    }

    /// Membership test by sifting.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::validation(format!(
                "permutation of degree {} tested against a group of degree {}",
                p.degree(),
                self.degree
            )));
        }
        Ok(self.contains_unchecked(p))
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Base points, 0-based.
    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// The strong generating set (distinct elements, first-level order).
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in &self.levels {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }
}
