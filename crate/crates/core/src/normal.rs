//! Normal subgroup lattice, minimal normal subgroups and the socle.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::deadline::Deadline;
use crate::error::Result;
use crate::group::{PermGroup, Subgroup};

#[derive(Debug, Clone)]
pub struct NormalLattice {
    /// All normal subgroups, sorted by order and then by member set.
    pub normals: Vec<Subgroup>,
    /// Indices into `normals` of the inclusion-minimal nontrivial ones.
    pub minimal: Vec<usize>,
    pub socle: Subgroup,
}

impl NormalLattice {
    /// Every normal subgroup is a product of normal closures of single
    /// elements, so the lattice is the join-closure of those closures.
    pub fn compute(group: &PermGroup, deadline: &Deadline) -> Result<NormalLattice> {
        let mut base: Vec<Subgroup> = Vec::new();
        let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
        let trivial = group.trivial_subgroup();
        seen.insert(trivial.members().clone(), 0);
        let mut normals = vec![trivial];
        for class in group.conjugacy_classes() {
            deadline.check()?;
            let x = class[0];
            let n = group.normal_closure(&group.subgroup(&[x]));
            if !seen.contains_key(n.members()) {
                seen.insert(n.members().clone(), normals.len());
                normals.push(n.clone());
                base.push(n);
            }
        }
        let mut k = 0;
        while k < normals.len() {
            deadline.check()?;
            for b in &base {
                if b.is_subgroup_of(&normals[k]) {
                    continue;
                }
                let j = group.join(&normals[k], b);
                if !seen.contains_key(j.members()) {
                    seen.insert(j.members().clone(), normals.len());
                    normals.push(j);
                }
            }
            k += 1;
        }
        Ok(NormalLattice::from_normals(group, normals))
    }

    fn from_normals(group: &PermGroup, mut normals: Vec<Subgroup>) -> NormalLattice {
        normals.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members().cmp(b.members())));
        let minimal: Vec<usize> = (0..normals.len())
            .filter(|&i| {
                let n = &normals[i];
                !n.is_trivial() && normals.iter().all(|m| m.is_trivial() || m == n || !m.is_subgroup_of(n))
            })
            .collect();
        let socle = minimal.iter().fold(group.trivial_subgroup(), |acc, &i| group.join(&acc, &normals[i]));
        NormalLattice { normals, minimal, socle }
    }

    pub fn minimal_normals(&self) -> impl Iterator<Item = &Subgroup> + '_ {
        self.minimal.iter().map(move |&i| &self.normals[i])
    }

    /// Number of minimal normal subgroups; zero for the trivial group.
    pub fn dim(&self) -> usize {
        self.minimal.len()
    }

    /// Number of minimal normal subgroups contained in `h`.
    pub fn dim_of(&self, h: &Subgroup) -> usize {
        self.minimal_normals().filter(|m| m.is_subgroup_of(h)).count()
    }

    pub fn codim_of(&self, h: &Subgroup) -> usize {
        self.dim() - self.dim_of(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn group(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
        let gens = gens.iter().map(|c| Perm::from_cycles(n, c).unwrap()).collect();
        PermGroup::generate(n, gens, 1000).unwrap()
    }

    #[test]
    fn sym4_has_klein_socle() {
        let g = group(4, &[&[&[0, 1]], &[&[0, 1, 2, 3]]]);
        let lat = NormalLattice::compute(&g, &Deadline::none()).unwrap();
        let orders: Vec<usize> = lat.normals.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        assert_eq!(lat.dim(), 1);
        assert_eq!(lat.socle.order(), 4);
    }

    #[test]
    fn klein_four_has_three_minimal_normals() {
        let g = group(4, &[&[&[0, 1]], &[&[2, 3]]]);
        let lat = NormalLattice::compute(&g, &Deadline::none()).unwrap();
        assert_eq!(lat.normals.len(), 5);
        assert_eq!(lat.dim(), 3);
        assert!(lat.minimal_normals().all(|m| m.order() == 2));
        assert_eq!(lat.socle, g.whole());
        let h = &lat.normals[lat.minimal[0]];
        assert_eq!(lat.dim_of(h), 1);
        assert_eq!(lat.codim_of(h), 2);
    }

    #[test]
    fn trivial_group_has_dimension_zero() {
        let g = PermGroup::trivial(3);
        let lat = NormalLattice::compute(&g, &Deadline::none()).unwrap();
        assert_eq!(lat.dim(), 0);
        assert!(lat.socle.is_trivial());
    }
}
