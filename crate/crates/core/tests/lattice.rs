use std::collections::BTreeSet;

use mindeg_core::group::DEFAULT_MATERIALIZE_CAP;
use mindeg_core::solver::{enumerate_subgroups, SubgroupLattice, DEFAULT_LATTICE_CAP};
use mindeg_core::{construct, Deadline, GroupSpec, NormalLattice, Perm, PermGroup, Subgroup};
use proptest::prelude::*;

fn group(spec: &GroupSpec) -> PermGroup {
    construct(spec, DEFAULT_MATERIALIZE_CAP).unwrap().group
}

fn lattice(g: &PermGroup) -> SubgroupLattice {
    enumerate_subgroups(g, DEFAULT_LATTICE_CAP, &Deadline::none()).unwrap()
}

fn close(elements: &[Perm], seed: &[&Perm]) -> BTreeSet<Perm> {
    let degree = elements[0].degree();
    let mut set: BTreeSet<Perm> = seed.iter().map(|p| (*p).clone()).collect();
    set.insert(Perm::identity(degree));
    loop {
        let more: Vec<Perm> = set.iter().flat_map(|a| set.iter().map(move |b| a * b)).collect();
        let before = set.len();
        set.extend(more);
        if set.len() == before {
            return set;
        }
    }
}

#[test]
fn sym4_has_30_subgroups_in_11_classes() {
    let g = group(&GroupSpec::Symmetric(4));
    // Every subgroup of Sym(4) is generated by two elements.
    let els = g.elements();
    let mut brute: BTreeSet<BTreeSet<Perm>> = BTreeSet::new();
    for x in els {
        for y in els {
            brute.insert(close(els, &[x, y]));
        }
    }
    let mut classes: BTreeSet<BTreeSet<BTreeSet<Perm>>> = BTreeSet::new();
    for h in &brute {
        let class = els.iter().map(|g| h.iter().map(|x| x.conjugate_by(g)).collect()).collect();
        classes.insert(class);
    }
    assert_eq!((brute.len(), classes.len()), (30, 11));

    let l = lattice(&g);
    assert_eq!((l.len(), l.class_count()), (30, 11));
    let found: BTreeSet<BTreeSet<Perm>> =
        l.subgroups.iter().map(|r| r.subgroup.iter().map(|e| g.element(e).clone()).collect()).collect();
    assert_eq!(found, brute);
}

#[test]
fn sym4_normal_structure() {
    let g = group(&GroupSpec::Symmetric(4));
    let n = NormalLattice::compute(&g, &Deadline::none()).unwrap();
    assert_eq!(n.dim(), 1);
    let v4 = n.minimal_normals().next().unwrap();
    assert_eq!(v4.order(), 4);
    assert!(v4.iter().all(|e| g.element(e).order() <= 2));
}

#[test]
fn gppq_has_a_unique_minimal_normal() {
    let c = construct(&GroupSpec::Gmn { m: 5, p: 5, n: 3 }, DEFAULT_MATERIALIZE_CAP).unwrap();
    let n = NormalLattice::compute(&c.group, &Deadline::none()).unwrap();
    assert_eq!(n.dim(), 1);
    let a = c.group.subgroup_from_perms(&c.named.unwrap().c).unwrap();
    assert_eq!(n.minimal_normals().next().unwrap(), &a);
    assert_eq!(a.order(), 25);
}

#[test]
fn klein_four_dimension() {
    let g = group(&GroupSpec::Abelian(vec![2, 2]));
    let n = NormalLattice::compute(&g, &Deadline::none()).unwrap();
    assert_eq!(n.dim(), 3);
    assert!(n.minimal_normals().all(|m| m.order() == 2));
    let t = NormalLattice::compute(&group(&GroupSpec::Cyclic(1)), &Deadline::none()).unwrap();
    assert_eq!(t.dim(), 0);
}

fn families() -> Vec<GroupSpec> {
    vec![
        GroupSpec::Symmetric(4),
        GroupSpec::Dihedral(6),
        GroupSpec::Abelian(vec![2, 4]),
        GroupSpec::Gmn { m: 3, p: 3, n: 3 },
        GroupSpec::Hpq { p: 7, q: 3 },
        GroupSpec::Wreath { m: 3, n: 2 },
        GroupSpec::Product(vec![GroupSpec::Symmetric(3), GroupSpec::Cyclic(3)]),
    ]
}

#[test]
fn records_satisfy_lagrange_and_core_laws() {
    for spec in families() {
        let g = group(&spec);
        let l = lattice(&g);
        let normals = NormalLattice::compute(&g, &Deadline::none()).unwrap();
        for r in &l.subgroups {
            assert_eq!(r.order() * r.index, g.order(), "{spec}");
            assert!(r.core.is_subgroup_of(&r.subgroup));
            assert!(g.is_normal(&r.core));
            // no normal subgroup strictly between the core and the subgroup
            assert!(!normals
                .normals
                .iter()
                .any(|n| n.is_subgroup_of(&r.subgroup) && r.core.is_subgroup_of(n) && n != &r.core));
        }
        for class in &l.classes {
            let first = &l.subgroups[class[0]];
            for &i in class {
                assert_eq!(l.subgroups[i].core, first.core);
                assert_eq!(l.subgroups[i].index, first.index);
            }
        }
    }
}

#[test]
fn normal_lattice_laws() {
    for spec in families() {
        let g = group(&spec);
        let n = NormalLattice::compute(&g, &Deadline::none()).unwrap();
        let socle = n.minimal_normals().fold(g.trivial_subgroup(), |acc, m| g.join(&acc, m));
        assert_eq!(socle, n.socle);
        for m in n.normals.iter().filter(|m| !m.is_trivial()) {
            assert!(g.is_normal(m));
            assert!(n.minimal_normals().any(|x| x.is_subgroup_of(m)), "{spec}");
        }
        let l = lattice(&g);
        let from_lattice = l.subgroups.iter().filter(|r| g.is_normal(&r.subgroup)).count();
        assert_eq!(from_lattice, n.normals.len(), "{spec}");
        for r in &l.subgroups {
            assert_eq!(n.codim_of(&r.subgroup), n.dim() - n.dim_of(&r.subgroup));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coset_action_kernel_is_the_intersection_of_cores(
        family in 0usize..7,
        picks in proptest::collection::vec(any::<prop::sample::Index>(), 1..4),
    ) {
        let g = group(&families()[family]);
        let l = lattice(&g);
        let chosen: Vec<&Subgroup> = picks.iter().map(|i| &l.subgroups[i.index(l.len())].subgroup).collect();
        let meet = chosen.iter().fold(g.whole(), |acc, h| g.intersection(&acc, &g.core(h)));
        let action = g.coset_action(&chosen);
        prop_assert_eq!(action.kernel, meet);
        prop_assert_eq!(action.degree, chosen.iter().map(|h| g.index(h)).sum::<usize>());
    }

    #[test]
    fn conjugate_subgroups_share_their_core(family in 0usize..7, pick in any::<prop::sample::Index>(), by in any::<prop::sample::Index>()) {
        let g = group(&families()[family]);
        let l = lattice(&g);
        let h = &l.subgroups[pick.index(l.len())].subgroup;
        let x = by.index(g.order()) as u32;
        prop_assert_eq!(g.core(&g.conjugate(h, x)), g.core(h));
    }
}
