//! Enumerations of concrete groups used by the campaigns.

use mindeg_core::GroupSpec;

/// Every chain `k_1 | k_2 | ... | k_t` with `k_1 > 1` and product `n`, one
/// per isomorphism class of abelian groups of order `n`. For `n = 1` the
/// single list is `[1]`.
pub fn invariant_factor_lists(n: usize) -> Vec<Vec<usize>> {
    fn extend(rest: usize, prev: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        for k in (2..=rest).filter(|&k| rest.is_multiple_of(k) && k.is_multiple_of(prev)) {
            // the remaining factors are multiples of k, so k^2 | rest unless k is last
            if k == rest || (rest / k).is_multiple_of(k) {
                acc.push(k);
                extend(rest / k, k, acc, out);
                acc.pop();
            }
        }
    }
    if n == 1 {
        return vec![vec![1]];
    }
    let mut out = Vec::new();
    extend(n, 1, &mut Vec::new(), &mut out);
    out
}

/// Groups of order at most 24 reachable through the constructors, one spec
/// per listed construction.
pub fn small_catalog() -> Vec<GroupSpec> {
    let mut specs: Vec<GroupSpec> = (1..=24).flat_map(invariant_factor_lists).map(GroupSpec::Abelian).collect();
    specs.extend((3..=12).map(GroupSpec::Dihedral));
    specs.extend([
        GroupSpec::Symmetric(3),
        GroupSpec::Symmetric(4),
        GroupSpec::Product(vec![GroupSpec::Cyclic(3), GroupSpec::Symmetric(3)]),
        GroupSpec::Product(vec![GroupSpec::Symmetric(3), GroupSpec::Cyclic(2)]),
        GroupSpec::Product(vec![GroupSpec::Dihedral(4), GroupSpec::Cyclic(3)]),
        GroupSpec::Product(vec![GroupSpec::Dihedral(4), GroupSpec::Cyclic(2)]),
        GroupSpec::Product(vec![GroupSpec::Dihedral(3), GroupSpec::Cyclic(4)]),
        GroupSpec::Wreath { m: 2, n: 2 },
        GroupSpec::Wreath { m: 3, n: 2 },
        GroupSpec::Amn { m: 2, p: 2, n: 3 },
        GroupSpec::Gmn { m: 2, p: 2, n: 3 },
        GroupSpec::Gmn { m: 4, p: 2, n: 2 },
        GroupSpec::Gmn { m: 6, p: 3, n: 2 },
        GroupSpec::Hpq { p: 2, q: 3 },
        GroupSpec::Hpq { p: 3, q: 2 },
    ]);
    specs
}
