//! Deterministic Schreier-Sims: order and membership for groups given only
//! by generators, without listing their elements.

use crate::perm::Perm;

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    generators: Vec<Perm>,
    orbit: Vec<usize>,
    /// `transversal[x]` maps the base point to `x`.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Level {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Perm::identity(degree));
        Level { base, generators: Vec::new(), orbit: vec![base], transversal }
    }
}

/// Base and strong generating set.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Perm]) -> StabChain {
        let mut chain = StabChain { degree, levels: Vec::new() };
        for g in generators {
            chain.add(0, g.clone());
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.strip(0, g.clone()).is_identity()
    }

    /// Residue of `g` after sifting through levels `from..`.
    fn strip(&self, from: usize, mut g: Perm) -> Perm {
        for level in &self.levels[from..] {
            let y = g.image(level.base);
            match &level.transversal[y] {
                Some(u) => g = g.then(&u.inverse()),
                None => return g,
            }
        }
        g
    }

    fn add(&mut self, i: usize, g: Perm) {
        let g = self.strip(i, g);
        if g.is_identity() {
            return;
        }
        if i == self.levels.len() {
            let base = (0..self.degree).find(|&x| g.image(x) != x).expect("non-identity moves a point");
            self.levels.push(Level::new(self.degree, base));
        }
        let old_orbit_len = self.levels[i].orbit.len();
        let new_gen = self.levels[i].generators.len();
        self.levels[i].generators.push(g);

        let mut pending = Vec::new();
        let mut k = 0;
        while k < self.levels[i].orbit.len() {
            let x = self.levels[i].orbit[k];
            let first_gen = if k < old_orbit_len { new_gen } else { 0 };
            for s in first_gen..self.levels[i].generators.len() {
                let level = &mut self.levels[i];
                let gen = &level.generators[s];
                let y = gen.image(x);
                let u_x = level.transversal[x].clone().expect("orbit point has a transversal");
                let u_xs = u_x.then(gen);
                match &level.transversal[y] {
                    Some(u_y) => pending.push(u_xs.then(&u_y.inverse())),
                    None => {
                        level.transversal[y] = Some(u_xs);
                        level.orbit.push(y);
                    }
                }
            }
            k += 1;
        }
        for sg in pending {
            if !sg.is_identity() {
                self.add(i + 1, sg);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, cycles: &[&[usize]]) -> Perm {
        Perm::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=8usize {
            let t = perm(n, &[&[0, 1]]);
            let c: Vec<usize> = (0..n).collect();
            let chain = StabChain::new(n, &[t, perm(n, &[&c])]);
            assert_eq!(chain.order(), (1..=n as u128).product::<u128>());
        }
    }

    #[test]
    fn alternating_membership() {
        let a = perm(5, &[&[0, 1, 2]]);
        let b = perm(5, &[&[2, 3, 4]]);
        let chain = StabChain::new(5, &[a, b]);
        assert_eq!(chain.order(), 60);
        assert!(chain.contains(&perm(5, &[&[0, 1], &[2, 3]])));
        assert!(!chain.contains(&perm(5, &[&[0, 1]])));
    }

    #[test]
    fn trivial_group() {
        let chain = StabChain::new(4, &[Perm::identity(4)]);
        assert_eq!(chain.order(), 1);
        assert!(chain.base().is_empty());
    }
}
