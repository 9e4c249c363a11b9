//! Deterministic Schreier–Sims.
//!
//! Each level owns the generators that were added to it; level `i + 1` is
//! the stabiliser of `base[i]` in the group generated at level `i`. New base
//! points are the first point moved by the element that needed a new level.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::perm::Perm;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// `slot[c]` indexes `reps`/`reps_inv` for orbit points, `NONE` otherwise.
    slot: Vec<u32>,
    /// `base_point · reps[slot[c]] = c`.
    reps: Vec<Perm>,
    reps_inv: Vec<Perm>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Level {
        let id = Perm::identity(degree).expect("degree checked at chain construction");
        let mut slot = vec![NONE; degree];
        slot[base_point] = 0;
        Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point],
            slot,
            reps: vec![id.clone()],
            reps_inv: vec![id],
        }
    }

    fn rep(&self, point: usize) -> Option<&Perm> {
        match self.slot[point] {
            NONE => None,
            t => Some(&self.reps[t as usize]),
        }
    }

    /// Follows generator `s` from orbit point `b`. New points extend the
    /// orbit; known points yield a Schreier generator to test later.
    fn visit(&mut self, b: usize, s: usize, pending: &mut Vec<(usize, usize)>) {
        let c = self.gens[s].apply(b);
        if self.slot[c] == NONE {
            let rep = self.rep(b).expect("b is in the orbit").then(&self.gens[s]);
            self.slot[c] = self.reps.len() as u32;
            self.reps_inv.push(rep.inverse());
            self.reps.push(rep);
            self.orbit.push(c);
        } else {
            pending.push((b, s));
        }
    }
}

/// Base and strong generating set for a permutation group.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// Builds the chain of `⟨gens⟩`. Output is a pure function of the generator order.
    pub fn new(gens: &[Perm]) -> Result<StabilizerChain> {
        let first = gens.first().ok_or(Error::NoGenerators)?;
        let degree = first.degree();
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let mut chain = StabilizerChain::trivial(degree)?;
        for g in gens {
            chain.extend(0, g.clone());
        }
        Ok(chain)
    }

    pub fn trivial(degree: usize) -> Result<StabilizerChain> {
        if degree == 0 {
            return Err(Error::InvalidDegree(0));
        }
        Ok(StabilizerChain {
            degree,
            levels: Vec::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> impl Iterator<Item = &Perm> {
        self.levels.iter().flat_map(|l| l.gens.iter())
    }

    /// Generators of the level-`i` stabiliser `G_{b_0..b_{i-1}}`.
    pub fn level_generators(&self, i: usize) -> &[Perm] {
        &self.levels[i].gens
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| {
            acc * BigUint::from(l.orbit.len())
        })
    }

    pub fn contains(&self, p: &Perm) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        Ok(self.contains_unchecked(p))
    }

    pub(crate) fn contains_unchecked(&self, p: &Perm) -> bool {
        let (_, residue) = self.sift_from(0, p);
        residue.is_identity()
    }

    /// Sifts `g` starting at level `start`; returns the level at which it
    /// dropped out (or `levels.len()`) and the residue.
    fn sift_from(&self, start: usize, g: &Perm) -> (usize, Perm) {
        let mut h = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(start) {
            let b = h.apply(level.base_point);
            match level.slot[b] {
                NONE => return (j, h),
                // slot 0 is the base point itself, with the identity as representative
                0 => {}
                t => h.then_in_place(&level.reps_inv[t as usize]),
            }
        }
        (self.levels.len(), h)
    }

    fn extend(&mut self, i: usize, g: Perm) {
        if self.sift_from(i, &g).1.is_identity() {
            return;
        }
        if i == self.levels.len() {
            let b = g.first_moved().expect("non-identity residue moves a point");
            self.levels.push(Level::new(b, self.degree));
        }
        let mut pending = Vec::new();
        {
            let level = &mut self.levels[i];
            level.gens.push(g);
            let new_gen = level.gens.len() - 1;
            let old_len = level.orbit.len();
            for idx in 0..old_len {
                let b = level.orbit[idx];
                level.visit(b, new_gen, &mut pending);
            }
            let mut idx = old_len;
            while idx < level.orbit.len() {
                let b = level.orbit[idx];
                for s in 0..level.gens.len() {
                    level.visit(b, s, &mut pending);
                }
                idx += 1;
            }
        }
        for (b, s) in pending {
            let level = &self.levels[i];
            let s_gen = &level.gens[s];
            let c = s_gen.apply(b);
            let u_b = level.rep(b).expect("orbit point");
            let u_c_inv = &level.reps_inv[level.slot[c] as usize];
            let schreier = u_b.then(s_gen).then(u_c_inv);
            if !schreier.is_identity() {
                self.extend(i + 1, schreier);
            }
        }
    }

    /// Every element of the group, as products of transversal elements.
    /// Only sensible for small groups.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![Perm::identity(self.degree).expect("positive degree")];
        // g = t_last · ... · t_0, so extend from the deepest level upward.
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.reps.len());
            for h in &out {
                for u in &level.reps {
                    next.push(h.then(u));
                }
            }
            out = next;
        }
        out
    }
}
