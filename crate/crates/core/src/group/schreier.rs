use num_bigint::BigUint;

use super::GPermutation;

struct Level {
    base_point: usize,
    gens: Vec<GPermutation>,
    // transversal[beta] maps base_point to beta
    transversal: Vec<Option<GPermutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base_point] = Some(GPermutation::identity(degree));
        Level { base_point, gens: Vec::new(), transversal, orbit: vec![base_point] }
    }

    fn extend_orbit(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let beta = self.orbit[i];
            for s in &self.gens {
                let gamma = s.apply(beta);
                if self.transversal[gamma].is_none() {
                    let u = s.compose(self.transversal[beta].as_ref().unwrap());
                    self.transversal[gamma] = Some(u);
                    self.orbit.push(gamma);
                }
            }
            i += 1;
        }
    }
}

/// Base and strong generating set built by deterministic Schreier-Sims.
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[GPermutation]) -> Self {
        let mut chain = StabChain { degree, levels: Vec::new() };
        for g in gens {
            let (h, _) = chain.strip(g, 0);
            if !h.is_identity() {
                chain.add_gen(0, h);
            }
        }
        chain
    }

    /// Sift `g` starting at `level`; returns the residue and the level where it stopped.
    fn strip(&self, g: &GPermutation, level: usize) -> (GPermutation, usize) {
        let mut h = g.clone();
        for (j, lv) in self.levels.iter().enumerate().skip(level) {
            let beta = h.apply(lv.base_point);
            match &lv.transversal[beta] {
                Some(u) => h = u.inverse().compose(&h),
                None => return (h, j),
            }
        }
        (h, self.levels.len())
    }

    fn add_gen(&mut self, i: usize, g: GPermutation) {
        if i == self.levels.len() {
            let moved = (0..self.degree).find(|&x| g.apply(x) != x).expect("non-identity");
            self.levels.push(Level::new(self.degree, moved));
        }
        self.levels[i].gens.push(g);
        self.levels[i].extend_orbit();
        // Schreier generators of the stabilizer of the base point
        let mut k = 0;
        loop {
            let lv = &self.levels[i];
            if k >= lv.orbit.len() * lv.gens.len() {
                break;
            }
            let beta = lv.orbit[k / lv.gens.len()];
            let s = &lv.gens[k % lv.gens.len()];
            let u_beta = lv.transversal[beta].as_ref().unwrap();
            let gamma = s.apply(beta);
            let u_gamma = lv.transversal[gamma].as_ref().unwrap();
            let schreier = u_gamma.inverse().compose(&s.compose(u_beta));
            k += 1;
            if schreier.is_identity() {
                continue;
            }
            let (h, _) = self.strip(&schreier, i + 1);
            if !h.is_identity() {
                self.add_gen(i + 1, h);
            }
        }
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, lv| acc * BigUint::from(lv.orbit.len()))
    }

    pub fn contains(&self, g: &GPermutation) -> bool {
        g.degree() == self.degree && self.strip(g, 0).0.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|lv| lv.base_point).collect()
    }
}
