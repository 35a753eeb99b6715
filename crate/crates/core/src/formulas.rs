//! Closed-form predictions of `mu` for the families the engine constructs.

use crate::construct::GroupSpec;
use crate::error::{Error, Result};
use crate::ff::is_prime;

/// Maximal prime-power divisors of `k`, ascending by prime.
pub fn prime_power_parts(mut k: u64) -> Vec<u64> {
    let mut parts = Vec::new();
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            let mut q = 1;
            while k.is_multiple_of(p) {
                k /= p;
                q *= p;
            }
            parts.push(q);
        }
        p += 1;
    }
    if k > 1 {
        parts.push(k);
    }
    parts
}

pub fn is_prime_power(k: u64) -> bool {
    prime_power_parts(k).len() == 1
}

/// Sum of the maximal prime-power divisors of `k`; `psi(1) = 0`.
pub fn psi(k: u64) -> u64 {
    prime_power_parts(k).into_iter().sum()
}

/// `mu` of a product of cyclic groups of the given prime-power orders.
pub fn mu_abelian(parts: &[u64]) -> Result<u64> {
    match parts.iter().find(|&&a| !is_prime_power(a)) {
        Some(a) => Err(Error::InvalidDecomposition(a.to_string())),
        None => Ok(parts.iter().sum()),
    }
}

/// Primary decomposition of `C_k1 x ... x C_kt`, sorted.
pub fn abelian_primary_parts(invariants: &[u64]) -> Vec<u64> {
    let mut parts: Vec<u64> = invariants.iter().flat_map(|&k| prime_power_parts(k)).collect();
    parts.sort_unstable();
    parts
}

/// `(r, n)` with `order = 2^r n` and `n` odd.
pub fn dihedral_parameters(order: u64) -> (u32, u64) {
    let r = order.trailing_zeros();
    (r, order >> r)
}

/// `mu` of the dihedral group of order `2^r n`, `n` odd, `r >= 1`.
pub fn mu_dihedral(r: u32, n: u64) -> Option<(u64, &'static str)> {
    if r == 0 || n.is_multiple_of(2) {
        return None;
    }
    Some(match (n, r) {
        (1, 1..=2) => (1 << r, "dihedral, n = 1, r <= 2"),
        (1, _) => (1 << (r - 1), "dihedral, n = 1, r > 2"),
        (_, 1) => (psi(n), "dihedral, n > 1, r = 1"),
        _ => ((1 << (r - 1)) + psi(n), "dihedral, n > 1, r > 1"),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuPrediction {
    /// `None` when no closed form covers the input.
    pub value: Option<u64>,
    pub case: &'static str,
}

impl MuPrediction {
    fn some(value: u64, case: &'static str) -> MuPrediction {
        MuPrediction { value: Some(value), case }
    }

    fn inapplicable() -> MuPrediction {
        MuPrediction { value: None, case: "no closed form" }
    }

    pub fn is_applicable(&self) -> bool {
        self.value.is_some()
    }
}

fn odd_prime(p: u64) -> bool {
    p > 2 && is_prime(p)
}

/// Every case of the `G(p,p,q)` formula whose condition holds. Exactly one
/// holds on the domain (`q = 2`, `(p,q) = (2,3)`, or both odd primes).
pub fn gppq_cases(p: u64, q: u64) -> Vec<(u64, &'static str)> {
    let mut cases = Vec::new();
    if !is_prime(p) || !is_prime(q) {
        return cases;
    }
    if q == 2 {
        let (r, n) = dihedral_parameters(2 * p);
        cases.extend(mu_dihedral(r, n));
    }
    if (p, q) == (2, 3) {
        cases.push((4, "G(2,2,3) = Sym(4)"));
    }
    let odd = odd_prime(p) && odd_prime(q);
    if odd && p == q {
        cases.push((p * p, "p = q"));
    }
    if odd && p < q {
        cases.push((p * q, "p < q"));
    }
    if odd && p > q && q >= 5 {
        cases.push((p * q, "p > q >= 5"));
    }
    if odd && p > q && q == 3 && p % 3 == 2 {
        cases.push((3 * p, "p > q = 3, p = 2 mod 3"));
    }
    if odd && p > q && q == 3 && p % 3 == 1 {
        cases.push((2 * p, "p > q = 3, p = 1 mod 3"));
    }
    cases
}

pub fn mu_gppq_predict(p: u64, q: u64) -> MuPrediction {
    match gppq_cases(p, q).as_slice() {
        [(v, case)] => MuPrediction::some(*v, case),
        [] => MuPrediction::inapplicable(),
        more => panic!("overlapping cases for G({p},{p},{q}): {more:?}"),
    }
}

/// `H = A(p,p,q) : <b>`. For `p > q = 3` the value follows from the
/// minimal normal structure: two eigenlines when `p = 1 mod 3` (degree
/// `2p`), otherwise `A` is irreducible and the least core-free index is `3p`.
pub fn mu_hpq_predict(p: u64, q: u64) -> MuPrediction {
    if !odd_prime(p) || !odd_prime(q) {
        return MuPrediction::inapplicable();
    }
    match (p.cmp(&q), q, p % 3) {
        (std::cmp::Ordering::Less, _, _) => MuPrediction::some(p * q, "H, p < q"),
        (std::cmp::Ordering::Equal, _, _) => MuPrediction::some(p * p, "H, p = q"),
        (std::cmp::Ordering::Greater, 3, 1) => MuPrediction::some(2 * p, "H, p > q = 3, p = 1 mod 3 (derived)"),
        (std::cmp::Ordering::Greater, 3, 2) => MuPrediction::some(3 * p, "H, p > q = 3, p = 2 mod 3 (derived)"),
        _ => MuPrediction::inapplicable(),
    }
}

fn abelian(invariants: &[u64]) -> MuPrediction {
    let parts = abelian_primary_parts(invariants);
    MuPrediction::some(mu_abelian(&parts).expect("primary parts are prime powers"), "abelian")
}

/// Whether the family member is nilpotent, judged from the spec alone.
pub fn is_nilpotent(spec: &GroupSpec) -> bool {
    let two_power = |k: usize| k.is_power_of_two();
    match spec {
        GroupSpec::Cyclic(_) | GroupSpec::Abelian(_) | GroupSpec::Amn { .. } => true,
        GroupSpec::Dihedral(n) => two_power(*n),
        GroupSpec::Symmetric(n) => *n <= 2,
        GroupSpec::Wreath { m, n } | GroupSpec::Gmn { m, n, .. } => *n == 1 || (*n == 2 && two_power(*m)),
        GroupSpec::Hpq { p, q } => p == q,
        GroupSpec::Product(parts) => parts.iter().all(is_nilpotent),
    }
}

pub fn predict(spec: &GroupSpec) -> MuPrediction {
    match spec {
        GroupSpec::Cyclic(k) => abelian(&[*k as u64]),
        GroupSpec::Abelian(ks) => abelian(&ks.iter().map(|&k| k as u64).collect::<Vec<_>>()),
        GroupSpec::Dihedral(n) => {
            let (r, odd) = dihedral_parameters(2 * *n as u64);
            match mu_dihedral(r, odd) {
                Some((v, case)) => MuPrediction::some(v, case),
                None => MuPrediction::inapplicable(),
            }
        }
        GroupSpec::Symmetric(n) => match n {
            0 | 1 => MuPrediction::some(0, "trivial group"),
            2 => abelian(&[2]),
            3 => predict(&GroupSpec::Dihedral(3)),
            4 => MuPrediction::some(4, "G(2,2,3) = Sym(4)"),
            _ => MuPrediction::inapplicable(),
        },
        GroupSpec::Wreath { m, n } => {
            let (m, n) = (*m as u64, *n as u64);
            if n == 1 {
                abelian(&[m])
            } else if odd_prime(m) && odd_prime(n) && m != n {
                MuPrediction::some(m * n, "C_p wr Sym(q), distinct odd primes")
            } else {
                MuPrediction::inapplicable()
            }
        }
        GroupSpec::Amn { m, p, n } => {
            let (m, p, n) = (*m as u64, *p as u64, *n as u64);
            let mut invariants = vec![m; n.saturating_sub(1) as usize];
            invariants.push(m / p);
            abelian(&invariants)
        }
        GroupSpec::Gmn { m, p, n } => {
            let (m, p, n) = (*m as u64, *p as u64, *n as u64);
            if n == 1 {
                abelian(&[m / p])
            } else if m == p && n == 2 {
                predict(&GroupSpec::Dihedral(m as usize))
            } else if m == p {
                mu_gppq_predict(p, n)
            } else if p == 1 {
                predict(&GroupSpec::Wreath { m: m as usize, n: n as usize })
            } else {
                MuPrediction::inapplicable()
            }
        }
        GroupSpec::Hpq { p, q } => mu_hpq_predict(*p as u64, *q as u64),
        GroupSpec::Product(parts) => predict_product(parts),
    }
}

fn predict_product(parts: &[GroupSpec]) -> MuPrediction {
    if let [GroupSpec::Cyclic(p), GroupSpec::Gmn { m, p: p2, n: q }] = parts {
        let (p, q) = (*p as u64, *q as u64);
        if *m as u64 == p && *p2 as u64 == p && odd_prime(p) && odd_prime(q) && p != q {
            let g = mu_gppq_predict(p, q);
            return match g.value {
                Some(v) if v == p * q => MuPrediction::some(v, "<gamma> x G(p,p,q) = C_p wr Sym(q)"),
                _ => MuPrediction::inapplicable(),
            };
        }
    }
    if parts.iter().all(is_nilpotent) {
        let predictions: Vec<MuPrediction> = parts.iter().map(predict).collect();
        if predictions.iter().all(MuPrediction::is_applicable) {
            let sum = predictions.iter().map(|p| p.value.unwrap()).sum();
            return MuPrediction::some(sum, "product of nilpotent groups");
        }
    }
    MuPrediction::inapplicable()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equality,
    Strict,
    Violation,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::Equality => "equality",
            Relation::Strict => "strict",
            Relation::Violation => "violation",
        }
    }
}

/// Compares `mu(G x H)` with `mu(G) + mu(H)`; exceeding the sum is
/// impossible, so `Violation` signals a bug.
pub fn direct_product_check(mu_g: u64, mu_h: u64, mu_product: u64) -> Relation {
    match mu_product.cmp(&(mu_g + mu_h)) {
        std::cmp::Ordering::Equal => Relation::Equality,
        std::cmp::Ordering::Less => Relation::Strict,
        std::cmp::Ordering::Greater => Relation::Violation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn psi_examples() {
        assert_eq!(psi(1), 0);
        assert_eq!(psi(12), 7);
        assert_eq!(psi(9), 9);
    }

    #[test]
    fn abelian_examples() {
        assert_eq!(mu_abelian(&[2, 3]), Ok(5));
        assert_eq!(mu_abelian(&[2, 2]), Ok(4));
        assert_eq!(mu_abelian(&[9]), Ok(9));
        assert_eq!(mu_abelian(&[6]), Err(Error::InvalidDecomposition("6".into())));
        assert_eq!(abelian_primary_parts(&[6, 10]), vec![2, 2, 3, 5]);
    }

    #[test]
    fn dihedral_examples() {
        assert_eq!(mu_dihedral(1, 9).unwrap().0, 9);
        assert_eq!(mu_dihedral(3, 1).unwrap().0, 4);
        assert_eq!(mu_dihedral(2, 3).unwrap().0, 5);
        assert_eq!(mu_dihedral(2, 1).unwrap().0, 4);
        assert_eq!(mu_dihedral(1, 1).unwrap().0, 2);
        assert_eq!(mu_dihedral(0, 3), None);
    }

    #[test]
    fn gppq_examples() {
        assert_eq!(mu_gppq_predict(5, 3).value, Some(15));
        assert_eq!(mu_gppq_predict(7, 3).value, Some(14));
        assert_eq!(mu_gppq_predict(3, 5).value, Some(15));
        assert_eq!(mu_gppq_predict(3, 3).value, Some(9));
        assert_eq!(mu_gppq_predict(2, 3).value, Some(4));
        assert_eq!(mu_gppq_predict(13, 3).value, Some(26));
        assert_eq!(mu_gppq_predict(2, 5).value, None);
    }

    #[test]
    fn family_predictions() {
        assert_eq!(predict(&GroupSpec::Gmn { m: 2, p: 2, n: 3 }).value, Some(4));
        assert_eq!(predict(&GroupSpec::Amn { m: 5, p: 5, n: 3 }).value, Some(10));
        assert_eq!(predict(&GroupSpec::Dihedral(4)).value, Some(4));
        assert_eq!(predict(&GroupSpec::Wreath { m: 5, n: 3 }).value, Some(15));
        assert_eq!(predict(&GroupSpec::Wreath { m: 3, n: 3 }).value, None);
        assert_eq!(predict(&GroupSpec::Hpq { p: 7, q: 3 }).value, Some(14));
        let x = GroupSpec::Product(vec![GroupSpec::Dihedral(4), GroupSpec::Cyclic(3)]);
        assert_eq!(predict(&x).value, Some(7));
        let w = GroupSpec::Product(vec![GroupSpec::Cyclic(5), GroupSpec::Gmn { m: 5, p: 5, n: 3 }]);
        assert_eq!(predict(&w).value, Some(15));
        let w7 = GroupSpec::Product(vec![GroupSpec::Cyclic(7), GroupSpec::Gmn { m: 7, p: 7, n: 3 }]);
        assert_eq!(predict(&w7).value, None);
    }

    #[test]
    fn product_relations() {
        assert_eq!(direct_product_check(4, 3, 7), Relation::Equality);
        assert_eq!(direct_product_check(5, 15, 15), Relation::Strict);
        assert_eq!(direct_product_check(2, 3, 6), Relation::Violation);
    }

    fn primes_below(n: u64) -> Vec<u64> {
        (2..n).filter(|&k| (2..k).all(|d| k % d != 0)).collect()
    }

    #[test]
    fn gppq_cases_are_exclusive_for_primes_below_50() {
        let ps = primes_below(50);
        for &p in &ps {
            for &q in &ps {
                let in_domain = q == 2 || (p, q) == (2, 3) || (p > 2 && q > 2);
                assert_eq!(gppq_cases(p, q).len(), usize::from(in_domain), "G({p},{p},{q})");
            }
        }
    }

    proptest! {
        #[test]
        fn psi_is_additive_on_coprime_arguments(a in 2u64..2000, b in 2u64..2000) {
            let g = (1..=a.min(b)).rev().find(|d| a % d == 0 && b % d == 0).unwrap();
            prop_assume!(g == 1);
            prop_assert_eq!(psi(a * b), psi(a) + psi(b));
        }

        #[test]
        fn psi_of_prime_power(e in 1u32..6, i in 0usize..6) {
            let p = [2u64, 3, 5, 7, 11, 13][i];
            prop_assert_eq!(psi(p.pow(e)), p.pow(e));
        }
    }
}
