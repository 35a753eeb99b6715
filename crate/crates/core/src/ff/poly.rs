//! Dense univariate polynomials over a prime field.

use std::fmt;

/// `a * b mod p` for `p < 2^32`.
#[inline]
pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "zero has no inverse");
    powmod(a, p - 2, p)
}

/// Polynomial over `F_p`, coefficients stored low to high with no trailing
/// zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> FpPoly {
        let mut f = FpPoly { p, coeffs: coeffs.into_iter().map(|c| c % p).collect() };
        f.trim();
        f
    }

    pub fn zero(p: u64) -> FpPoly {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> FpPoly {
        FpPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> FpPoly {
        FpPoly::new(p, vec![0, 1])
    }

    /// `1 + x + ... + x^(r-1)`.
    pub fn cyclotomic(r: usize, p: u64) -> FpPoly {
        FpPoly::new(p, vec![1; r])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invmod(self.leading(), self.p))
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        FpPoly::new(self.p, self.coeffs.iter().map(|&a| mulmod(a, c % self.p, self.p)).collect())
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        FpPoly::new(self.p, (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        FpPoly::new(self.p, (0..n).map(|i| self.coeff(i) + self.p - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        FpPoly::new(self.p, out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv_lead = invmod(divisor.leading(), self.p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (FpPoly::zero(self.p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = mulmod(rem[k + dd], inv_lead, self.p);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = (rem[k + j] + self.p - mulmod(c, b, self.p)) % self.p;
            }
        }
        rem.truncate(dd);
        (FpPoly::new(self.p, quot), FpPoly::new(self.p, rem))
    }

    pub fn rem(&self, divisor: &FpPoly) -> FpPoly {
        self.divrem(divisor).1
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^exp mod modulus`.
    pub fn powmod(&self, mut exp: u64, modulus: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p).rem(modulus);
        let mut base = self.rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, self.p) + c) % self.p)
    }

    /// Rabin's test: `f` of degree `n` is irreducible iff `x^(p^n) = x mod f`
    /// and `gcd(x^(p^(n/k)) - x, f) = 1` for each prime `k | n`.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        let f = self.monic();
        let x = FpPoly::x(self.p);
        // frob[j] = x^(p^j) mod f
        let mut frob = vec![x.rem(&f)];
        for j in 1..=n {
            let next = frob[j - 1].powmod(self.p, &f);
            frob.push(next);
        }
        if frob[n] != x.rem(&f) {
            return false;
        }
        prime_factors(n as u64).into_iter().all(|k| frob[n / k as usize].sub(&x).gcd(&f).degree() == Some(0))
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod {}", self, self.p)
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            out.push(k);
            while n.is_multiple_of(k) {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(p: u64) -> impl Strategy<Value = FpPoly> {
        proptest::collection::vec(0..p, 0..8).prop_map(move |c| FpPoly::new(p, c))
    }

    #[test]
    fn display_and_degree() {
        let f = FpPoly::new(7, vec![3, 0, 8]);
        assert_eq!(f.to_string(), "x^2 + 3");
        assert_eq!(f.degree(), Some(2));
        assert_eq!(FpPoly::zero(7).degree(), None);
    }

    #[test]
    fn gcd_of_linear_factors() {
        // (x-2)(x-4) and (x-2)(x-3) over F_7
        let a = FpPoly::new(7, vec![5, 1]).mul(&FpPoly::new(7, vec![3, 1]));
        let b = FpPoly::new(7, vec![5, 1]).mul(&FpPoly::new(7, vec![4, 1]));
        assert_eq!(a.gcd(&b), FpPoly::new(7, vec![5, 1]));
    }

    #[test]
    fn irreducibility_matches_root_scan_for_quadratics() {
        for c0 in 0..5 {
            for c1 in 0..5 {
                let f = FpPoly::new(5, vec![c0, c1, 1]);
                let has_root = (0..5).any(|x| f.eval(x) == 0);
                assert_eq!(f.is_irreducible(), !has_root, "{f:?}");
            }
        }
    }

    proptest! {
        #[test]
        fn division_identity(a in poly(11), b in poly(11)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b);
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }

        #[test]
        fn gcd_divides_both(a in poly(5), b in poly(5)) {
            let g = a.gcd(&b);
            prop_assume!(!g.is_zero());
            prop_assert!(a.rem(&g).is_zero());
            prop_assert!(b.rem(&g).is_zero());
        }
    }
}
