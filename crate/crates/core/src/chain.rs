//! Deterministic Schreier–Sims.
//!
//! Levels are processed deepest first. A Schreier generator that fails to
//! strip through the lower levels becomes a new strong generator and the scan
//! resumes at the level where it dropped out. Base points are always the
//! smallest point moved by the generator that forced the new level.

use std::collections::HashSet;

use crate::perm::Permutation;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub(crate) struct Level {
    pub(crate) base_point: u32,
    /// Indices into `StabChain::strong` of the generators of this level.
    gens: Vec<usize>,
    pub(crate) orbit: Vec<u32>,
    /// `slot[point]` indexes `trans`/`trans_inv`, or `NONE`.
    slot: Vec<u32>,
    /// `trans[k]` maps the base point to `orbit[k]`.
    pub(crate) trans: Vec<Permutation>,
    trans_inv: Vec<Permutation>,
    checked: HashSet<(u32, u32)>,
}

impl Level {
    fn new(base_point: u32, degree: usize) -> Self {
        let mut slot = vec![NONE; degree];
        slot[base_point as usize] = 0;
        Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point],
            slot,
            trans: vec![Permutation::identity(degree)],
            trans_inv: vec![Permutation::identity(degree)],
            checked: HashSet::new(),
        }
    }

    fn extend_orbit(&mut self, strong: &[Permutation]) {
        let mut k = 0;
        while k < self.orbit.len() {
            let pt = self.orbit[k];
            for &gi in &self.gens {
                let g = &strong[gi];
                let img = g.apply0(pt);
                if self.slot[img as usize] == NONE {
                    let u = self.trans[k].then(g);
                    self.slot[img as usize] = self.orbit.len() as u32;
                    self.trans_inv.push(u.inverse());
                    self.trans.push(u);
                    self.orbit.push(img);
                }
            }
            k += 1;
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct StabChain {
    degree: usize,
    pub(crate) strong: Vec<Permutation>,
    pub(crate) levels: Vec<Level>,
}

impl StabChain {
    pub(crate) fn new(degree: usize, generators: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            strong: Vec::new(),
            levels: Vec::new(),
        };
        for g in generators {
            chain.add_generator(g);
        }
        chain
    }

    pub(crate) fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Product of the fundamental orbit lengths, `None` on overflow.
    pub(crate) fn order(&self) -> Option<u64> {
        self.levels
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
    }

    /// Sifts `g` from level `from`; returns the residue and the level where it stopped.
    pub(crate) fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let img = h.apply0(level.base_point);
            let s = level.slot[img as usize];
            if s == NONE {
                return (h, j);
            }
            h = h.then(&level.trans_inv[s as usize]);
        }
        (h, self.levels.len())
    }

    pub(crate) fn contains(&self, g: &Permutation) -> bool {
        let (h, j) = self.strip(g, 0);
        j == self.levels.len() && h.is_identity()
    }

    /// Adds `g` to the group and restores the BSGS property.
    pub(crate) fn add_generator(&mut self, g: &Permutation) {
        if self.contains(g) {
            return;
        }
        let (y, j) = self.strip(g, 0);
        self.insert_strong(y, 0, j);
        self.complete(j);
    }

    /// Inserts `y` as a strong generator for the levels `from..=to`, creating
    /// a new level when `to` is past the end.
    fn insert_strong(&mut self, y: Permutation, from: usize, to: usize) {
        if to == self.levels.len() {
            let b = y.first_moved().expect("nontrivial residue moves a point");
            self.levels.push(Level::new(b, self.degree));
        }
        let idx = self.strong.len();
        self.strong.push(y);
        for l in from..=to {
            self.levels[l].gens.push(idx);
            let strong = &self.strong;
            self.levels[l].extend_orbit(strong);
        }
    }

    fn complete(&mut self, start: usize) {
        let mut i = start.min(self.levels.len().saturating_sub(1)) as isize;
        while i >= 0 {
            let lvl = i as usize;
            let mut restart: Option<usize> = None;
            let mut k = 0;
            'scan: while k < self.levels[lvl].orbit.len() {
                let ngens = self.levels[lvl].gens.len();
                for gpos in 0..ngens {
                    let level = &self.levels[lvl];
                    let key = (k as u32, gpos as u32);
                    if level.checked.contains(&key) {
                        continue;
                    }
                    let x = &self.strong[level.gens[gpos]];
                    let beta = level.orbit[k];
                    let gamma = x.apply0(beta);
                    let gs = level.slot[gamma as usize] as usize;
                    let h = level.trans[k].then(x).then(&level.trans_inv[gs]);
                    self.levels[lvl].checked.insert(key);
                    if h.is_identity() {
                        continue;
                    }
                    let (y, j) = self.strip(&h, lvl + 1);
                    if j < self.levels.len() || !y.is_identity() {
                        self.insert_strong(y, lvl + 1, j);
                        restart = Some(j);
                        break 'scan;
                    }
                }
                k += 1;
            }
            match restart {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    /// Every element exactly once, unsorted.
    pub(crate) fn elements(&self) -> Vec<Permutation> {
        let mut acc = vec![Permutation::identity(self.degree)];
        // g = u_{k-1} ... u_1 u_0
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(acc.len() * level.trans.len());
            for a in &acc {
                for u in &level.trans {
                    next.push(a.then(u));
                }
            }
            acc = next;
        }
        acc
    }
}
