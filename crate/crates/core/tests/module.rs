use std::collections::BTreeSet;

use mindeg_core::ff::{
    decompose_module, factor_cyclotomic, is_prime, mult_order, root_of_unity, submodule_to_subgroup, FpPoly,
    DEFAULT_SEED,
};
use mindeg_core::group::DEFAULT_MATERIALIZE_CAP;
use mindeg_core::{construct, Deadline, GroupSpec, NormalLattice, Perm};
use proptest::prelude::*;

fn primes_below(n: u64) -> Vec<u64> {
    (2..n).filter(|&k| is_prime(k)).collect()
}

#[test]
fn roots_of_unity_exist_exactly_when_q_divides_p_minus_1() {
    for &q in &primes_below(50) {
        for &p in &primes_below(50) {
            match root_of_unity(q, p) {
                Ok(z) => {
                    assert_eq!(p % q, 1, "q={q} p={p}");
                    assert_ne!(z, 1);
                    let mut x = 1;
                    for _ in 0..q {
                        x = x * z % p;
                    }
                    assert_eq!(x, 1);
                }
                Err(_) => assert_ne!(p % q, 1, "q={q} p={p}"),
            }
        }
    }
}

#[test]
fn cyclotomic_factorizations_for_small_primes() {
    for &r in &primes_below(50) {
        for &p in primes_below(50).iter().filter(|&&p| p != r) {
            let f = factor_cyclotomic(r, p, DEFAULT_SEED).unwrap();
            let d = mult_order(p, r);
            assert_eq!((f.d, f.l), (d, (r - 1) / d));
            assert_eq!(f.factors.len() as u64, f.l);
            assert_eq!(f.product(), FpPoly::cyclotomic(r as usize, p), "r={r} p={p}");
            let distinct: BTreeSet<Vec<u64>> = f.factors.iter().map(|g| g.coeffs().to_vec()).collect();
            assert_eq!(distinct.len(), f.factors.len());
            for g in &f.factors {
                assert!(g.is_monic() && g.degree() == Some(d as usize));
                assert!(g.is_irreducible(), "{g} over F_{p}");
            }
        }
    }
}

#[test]
fn module_decomposition_is_a_direct_sum_of_invariant_pieces() {
    for (p, q) in [(7, 3), (2, 7), (5, 3), (3, 5), (2, 5), (11, 5), (3, 7), (13, 3)] {
        let m = decompose_module(p, q, DEFAULT_SEED).unwrap();
        let d = mult_order(p, q) as usize;
        assert_eq!(m.submodules.len(), (q as usize - 1) / d);
        assert!(m.is_direct_sum(), "p={p} q={q}");
        for basis in &m.submodules {
            assert_eq!(basis.len(), d);
            assert!(m.is_invariant(basis));
        }
    }
}

#[test]
fn submodules_are_the_minimal_normal_subgroups() {
    for (p, q) in [(7usize, 3usize), (5, 3), (3, 5), (13, 3)] {
        let c = construct(&GroupSpec::Hpq { p, q }, DEFAULT_MATERIALIZE_CAP).unwrap();
        let named = c.named.as_ref().unwrap();
        let m = decompose_module(p as u64, q as u64, DEFAULT_SEED).unwrap();
        let subs = submodule_to_subgroup(&m, &c.group, named).unwrap();
        let normals = NormalLattice::compute(&c.group, &Deadline::none()).unwrap();
        let minimal: BTreeSet<Vec<u32>> = normals.minimal_normals().map(|s| s.iter().collect()).collect();
        let from_module: BTreeSet<Vec<u32>> = subs.iter().map(|s| s.iter().collect()).collect();
        assert_eq!(minimal, from_module, "H({p},{q})");
    }
}

#[test]
fn b_centralizes_nothing_in_the_base() {
    for (p, q) in [(7usize, 3usize), (5, 3), (3, 5), (2, 7)] {
        let c = construct(&GroupSpec::Hpq { p, q }, DEFAULT_MATERIALIZE_CAP).unwrap();
        let named = c.named.as_ref().unwrap();
        let g = &c.group;
        let base = g.subgroup_from_perms(&named.c).unwrap();
        assert_eq!(base.order(), p.pow(q as u32 - 1));
        let b = g.index_of(named.b.as_ref().unwrap()).unwrap();
        assert!(g.centralizer_in(b, &base).is_trivial(), "H({p},{q})");
    }
}

#[test]
fn centers() {
    let h = construct(&GroupSpec::Hpq { p: 3, q: 3 }, DEFAULT_MATERIALIZE_CAP).unwrap();
    let c = &h.named.as_ref().unwrap().c;
    let z = h.group.subgroup_from_perms(&[c[0].then(&c[1].pow(2))]).unwrap();
    assert_eq!(h.group.center(), z);
    assert_eq!(z.order(), 3);

    let w = construct(&GroupSpec::Wreath { m: 3, n: 3 }, DEFAULT_MATERIALIZE_CAP).unwrap();
    let gamma = w.group.subgroup_from_perms(std::slice::from_ref(&w.named.as_ref().unwrap().gamma)).unwrap();
    assert_eq!(w.group.center(), gamma);
}

#[test]
fn b_acts_on_the_basis_by_shift() {
    for (m, n) in [(3, 3), (5, 3), (3, 5), (2, 4), (4, 2)] {
        let c = construct(&GroupSpec::Gmn { m, p: m, n }, DEFAULT_MATERIALIZE_CAP).unwrap();
        assert!(c.named.unwrap().b_action_holds(), "G({m},{m},{n})");
    }
}

#[test]
fn wreath_decomposition_by_primes() {
    use mindeg_core::construct::wreath_decomposition;
    for (p, q) in [(3, 2), (5, 3), (2, 3), (3, 5)] {
        let w = wreath_decomposition(p, q, 200_000).unwrap();
        assert!(w.is_internal_direct_product(), "({p},{q})");
        assert_eq!(w.gmn_index, p);
    }
    for p in [2, 3] {
        let w = wreath_decomposition(p, p, 200_000).unwrap();
        assert!(!w.is_internal_direct_product());
        assert!(w.gamma_order == p && w.intersection_order == p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factorization_is_seed_independent(ri in 0usize..8, pi in 0usize..8, seed in any::<u64>()) {
        let primes = [2u64, 3, 5, 7, 11, 13, 17, 19];
        let (r, p) = (primes[ri], primes[pi]);
        prop_assume!(r != p);
        let a = factor_cyclotomic(r, p, seed).unwrap();
        let b = factor_cyclotomic(r, p, DEFAULT_SEED).unwrap();
        prop_assert_eq!(a.factors, b.factors);
    }

    #[test]
    fn conjugation_by_b_is_a_module_map(p in prop::sample::select(vec![3usize, 5, 7]), exps in proptest::collection::vec(0i64..7, 2)) {
        let c = construct(&GroupSpec::Hpq { p, q: 3 }, DEFAULT_MATERIALIZE_CAP).unwrap();
        let named = c.named.unwrap();
        let b = named.b.clone().unwrap();
        let x: Perm = named.c[0].pow(exps[0]).then(&named.c[1].pow(exps[1]));
        // c1 -> c2 and c2 -> (c1 c2)^-1
        let expected = named.c[1].pow(exps[0]).then(&named.c[0].then(&named.c[1]).inverse().pow(exps[1]));
        prop_assert_eq!(x.conjugate_by(&b), expected);
    }
}
