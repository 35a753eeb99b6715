//! Prime-field arithmetic, factorization of `Q_r(x) = 1 + x + ... + x^(r-1)`
//! and the decomposition of `F_p^(q-1)` under the companion matrix of `Q_q`.

mod module;
mod poly;

pub use module::{companion_matrix, decompose_module, submodule_to_subgroup, Matrix, ModuleDecomposition};
pub use poly::{is_prime, FpPoly};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use poly::powmod;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Least `d >= 1` with `p^d = 1 (mod q)`.
pub fn mult_order(p: u64, q: u64) -> u64 {
    assert!(q > 1 && !p.is_multiple_of(q), "{p} is not a unit mod {q}");
    let mut d = 1;
    let mut x = p % q;
    while x != 1 {
        x = x * (p % q) % q;
        d += 1;
    }
    d
}

/// Least primitive `q`-th root of unity in `F_p`. One exists exactly when
/// `p = 1 (mod q)`.
pub fn root_of_unity(q: u64, p: u64) -> Result<u64> {
    if !is_prime(q) || !is_prime(p) {
        return Err(Error::SpecInvalid(format!("root_of_unity needs primes, got q={q}, p={p}")));
    }
    if p % q != 1 {
        return Err(Error::NoRootOfUnity { q, p });
    }
    // q is prime, so any root other than 1 is primitive.
    Ok((2..p).find(|&x| powmod(x, q, p) == 1).expect("a root exists when q | p-1"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicFactorization {
    pub p: u64,
    pub r: u64,
    /// Multiplicative order of `p` mod `r`.
    pub d: u64,
    /// Number of factors, `(r - 1) / d`.
    pub l: u64,
    /// Monic irreducible factors sorted by coefficient sequence.
    pub factors: Vec<FpPoly>,
    pub seed: u64,
}

impl CyclotomicFactorization {
    pub fn product(&self) -> FpPoly {
        self.factors.iter().fold(FpPoly::one(self.p), |acc, f| acc.mul(f))
    }
}

/// Splits `Q_r` over `F_p`. All factors share degree `d`, so only the
/// equal-degree stage is needed: a root scan when `d = 1`, random splitting
/// otherwise.
pub fn factor_cyclotomic(r: u64, p: u64, seed: u64) -> Result<CyclotomicFactorization> {
    if !is_prime(r) || !is_prime(p) || r == p {
        return Err(Error::SpecInvalid(format!("factor_cyclotomic needs distinct primes, got r={r}, p={p}")));
    }
    let q_r = FpPoly::cyclotomic(r as usize, p);
    let d = mult_order(p, r);
    let mut factors = if d == 1 {
        (1..p).filter(|&x| q_r.eval(x) == 0).map(|x| FpPoly::new(p, vec![p - x, 1])).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        equal_degree_split(&q_r, d as usize, &mut rng, &mut out);
        out
    };
    factors.sort_by(|a: &FpPoly, b: &FpPoly| a.coeffs().cmp(b.coeffs()));
    Ok(CyclotomicFactorization { p, r, d, l: (r - 1) / d, factors, seed })
}

fn equal_degree_split(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = f.degree().expect("nonzero");
    if n == d {
        out.push(f.monic());
        return;
    }
    let p = f.modulus();
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = a.gcd(f);
        let g = if g.degree() != Some(0) { g } else { splitter(&a, f, d).gcd(f) };
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let (h, _) = f.divrem(&g);
            equal_degree_split(&g, d, rng, out);
            equal_degree_split(&h, d, rng, out);
            return;
        }
    }
}

/// For odd `p`: `a^((p^d - 1)/2) - 1`. For `p = 2`: the trace
/// `a + a^2 + ... + a^(2^(d-1))`. Both reduced mod `f`.
fn splitter(a: &FpPoly, f: &FpPoly, d: usize) -> FpPoly {
    let p = f.modulus();
    if p == 2 {
        let mut t = a.rem(f);
        let mut acc = t.clone();
        for _ in 1..d {
            t = t.mul(&t).rem(f);
            acc = acc.add(&t);
        }
        return acc;
    }
    // (p^d - 1)/2 = (1 + p + ... + p^(d-1)) * (p - 1)/2
    let mut t = a.rem(f);
    let mut norm = t.clone();
    for _ in 1..d {
        t = t.powmod(p, f);
        norm = norm.mul(&t).rem(f);
    }
    norm.powmod((p - 1) / 2, f).sub(&FpPoly::one(p))
}
