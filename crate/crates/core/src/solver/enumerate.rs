//! Complete subgroup enumeration by cyclic extension.
//!
//! Every subgroup is reachable from the trivial group by repeatedly joining
//! a cyclic subgroup. Conjugating a join conjugates its result, so it is
//! enough to extend one representative per conjugacy class and then add the
//! whole class at once.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::deadline::Deadline;
use crate::error::{Error, Result};
use crate::group::{Elem, PermGroup, Subgroup};

/// Default bound on the group order for full lattice enumeration.
pub const DEFAULT_LATTICE_CAP: usize = 1_000;

#[derive(Debug, Clone)]
pub struct SubgroupRecord {
    pub subgroup: Subgroup,
    pub index: usize,
    pub fingerprint: u64,
    pub core: Subgroup,
    /// Conjugacy class id in the owning [`SubgroupLattice`].
    pub class: usize,
}

impl SubgroupRecord {
    pub fn order(&self) -> usize {
        self.subgroup.order()
    }

    pub fn is_core_free(&self) -> bool {
        self.core.is_trivial()
    }
}

#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    pub subgroups: Vec<SubgroupRecord>,
    /// Indices into `subgroups`; the first entry of each class is its
    /// fingerprint-minimal representative.
    pub classes: Vec<Vec<usize>>,
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &SubgroupRecord> + '_ {
        self.classes.iter().map(move |c| &self.subgroups[c[0]])
    }

    pub fn find(&self, s: &Subgroup) -> Option<&SubgroupRecord> {
        self.subgroups.iter().find(|r| &r.subgroup == s)
    }
}

pub fn enumerate_subgroups(group: &PermGroup, lattice_cap: usize, deadline: &Deadline) -> Result<SubgroupLattice> {
    if group.order() > lattice_cap {
        return Err(Error::CapExceeded { cap: lattice_cap });
    }
    let cyclic = cyclic_generators(group);

    let mut known: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut all: Vec<Subgroup> = Vec::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let add_class = |s: Subgroup, known: &mut HashMap<FixedBitSet, usize>, all: &mut Vec<Subgroup>| {
        let mut class = Vec::new();
        for c in group.conjugates(&s) {
            known.insert(c.members().clone(), all.len());
            class.push(all.len());
            all.push(c);
        }
        class
    };

    classes.push(add_class(group.trivial_subgroup(), &mut known, &mut all));
    let mut next = 0;
    while next < classes.len() {
        deadline.check()?;
        let rep = all[classes[next][0]].clone();
        for &g in &cyclic {
            if rep.contains(g) {
                continue;
            }
            let s = group.extend(&rep, g);
            if !known.contains_key(s.members()) {
                classes.push(add_class(s, &mut known, &mut all));
            }
        }
        next += 1;
    }

    let mut records: Vec<Option<SubgroupRecord>> = vec![None; all.len()];
    let mut class_lists = Vec::with_capacity(classes.len());
    for (class_id, class) in classes.iter().enumerate() {
        let core = group.core(&all[class[0]]);
        let mut with_fp: Vec<(u64, usize)> = class.iter().map(|&i| (group.fingerprint(&all[i]), i)).collect();
        with_fp.sort_unstable();
        for &(fingerprint, i) in &with_fp {
            records[i] = Some(SubgroupRecord {
                subgroup: all[i].clone(),
                index: group.index(&all[i]),
                fingerprint,
                core: core.clone(),
                class: class_id,
            });
        }
        class_lists.push(with_fp.into_iter().map(|(_, i)| i).collect());
    }
    Ok(SubgroupLattice {
        subgroups: records.into_iter().map(|r| r.expect("every subgroup recorded")).collect(),
        classes: class_lists,
    })
}

/// One generator (the least) per nontrivial cyclic subgroup.
fn cyclic_generators(group: &PermGroup) -> Vec<Elem> {
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    (1..group.order() as Elem).filter(|&x| seen.insert(group.subgroup(&[x]).members().clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construct, GroupSpec};

    fn lattice(spec: GroupSpec) -> SubgroupLattice {
        let g = construct(&spec, 20_000).unwrap().group;
        enumerate_subgroups(&g, DEFAULT_LATTICE_CAP, &Deadline::none()).unwrap()
    }

    #[test]
    fn sym3_has_six_subgroups() {
        let l = lattice(GroupSpec::Symmetric(3));
        assert_eq!(l.len(), 6);
        let mut orders: Vec<usize> = l.subgroups.iter().map(SubgroupRecord::order).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        assert_eq!(l.class_count(), 4);
    }

    #[test]
    fn klein_four_has_five_subgroups() {
        let l = lattice(GroupSpec::Abelian(vec![2, 2]));
        assert_eq!(l.len(), 5);
        assert_eq!(l.class_count(), 5);
    }

    #[test]
    fn representatives_are_fingerprint_minimal() {
        let l = lattice(GroupSpec::Symmetric(4));
        for class in &l.classes {
            let fps: Vec<u64> = class.iter().map(|&i| l.subgroups[i].fingerprint).collect();
            assert_eq!(fps[0], *fps.iter().min().unwrap());
        }
    }

    #[test]
    fn lattice_cap_is_enforced() {
        let g = construct(&GroupSpec::Symmetric(5), 20_000).unwrap().group;
        assert_eq!(enumerate_subgroups(&g, 100, &Deadline::none()).unwrap_err(), Error::CapExceeded { cap: 100 });
    }
}
