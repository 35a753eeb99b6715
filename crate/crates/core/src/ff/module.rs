//! `F_p^(q-1)` as a module for the `q`-cycle `b`, in the basis `c_1, .., c_(q-1)`.
//!
//! Vectors are rows and `b` acts on the right: `v -> v B`.

use crate::construct::NamedElements;
use crate::error::{Error, Result};
use crate::group::{PermGroup, Subgroup};
use crate::perm::Perm;

use super::poly::{invmod, mulmod};
use super::{factor_cyclotomic, is_prime, FpPoly};

/// Square matrix over `F_p`, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    p: u64,
    rows: Vec<Vec<u64>>,
}

impl Matrix {
    pub fn identity(p: u64, n: usize) -> Matrix {
        let rows = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
        Matrix { p, rows }
    }

    pub fn zero(p: u64, n: usize) -> Matrix {
        Matrix { p, rows: vec![vec![0; n]; n] }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.size();
        let mut out = Matrix::zero(self.p, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.rows[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.rows[i][j] = (out.rows[i][j] + mulmod(a, other.rows[k][j], self.p)) % self.p;
                }
            }
        }
        out
    }

    fn add_scaled_identity(&self, c: u64) -> Matrix {
        let mut out = self.clone();
        for i in 0..self.size() {
            out.rows[i][i] = (out.rows[i][i] + c) % self.p;
        }
        out
    }

    /// `f(self)` by Horner's rule.
    pub fn eval_poly(&self, f: &FpPoly) -> Matrix {
        let n = self.size();
        f.coeffs().iter().rev().fold(Matrix::zero(self.p, n), |acc, &c| acc.mul(self).add_scaled_identity(c))
    }

    /// `v M`.
    pub fn apply_right(&self, v: &[u64]) -> Vec<u64> {
        let n = self.size();
        (0..n).map(|j| (0..n).fold(0, |acc, i| (acc + mulmod(v[i], self.rows[i][j], self.p)) % self.p)).collect()
    }

    /// Basis of `{ v : v M = 0 }` in reduced echelon form.
    pub fn left_kernel(&self) -> Vec<Vec<u64>> {
        let n = self.size();
        let transposed: Vec<Vec<u64>> = (0..n).map(|j| (0..n).map(|i| self.rows[i][j]).collect()).collect();
        null_space(transposed, self.p)
    }
}

/// Basis of `{ x : A x = 0 }` for an `m x n` matrix `A`.
fn null_space(mut a: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(r) = (row..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, r);
        let inv = invmod(a[row][col], p);
        for x in a[row].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        let pivot = a[row].clone();
        for (r, other) in a.iter_mut().enumerate() {
            if r != row && other[col] != 0 {
                let c = other[col];
                for (x, &y) in other.iter_mut().zip(&pivot) {
                    *x = (*x + p - mulmod(c, y, p)) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; n];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[r][free]) % p;
            }
            v
        })
        .collect()
}

/// Rank of a list of row vectors.
pub(crate) fn rank(vectors: &[Vec<u64>], p: u64) -> usize {
    let n = vectors.first().map_or(0, Vec::len);
    let mut a = vectors.to_vec();
    let mut r = 0;
    for col in 0..n {
        let Some(k) = (r..a.len()).find(|&k| a[k][col] != 0) else {
            continue;
        };
        a.swap(r, k);
        let inv = invmod(a[r][col], p);
        let pivot = a[r].clone();
        for other in a.iter_mut().skip(r + 1) {
            let c = mulmod(other[col], inv, p);
            for (x, &y) in other.iter_mut().zip(&pivot) {
                *x = (*x + p - mulmod(c, y, p)) % p;
            }
        }
        r += 1;
    }
    r
}

/// Matrix of `b` on `A(p,p,q)` in the basis `c_i`: `c_i -> c_(i+1)` and
/// `c_(q-1) -> (c_1 ... c_(q-1))^-1`, so the last row is all `-1`.
pub fn companion_matrix(p: u64, q: usize) -> Matrix {
    let n = q - 1;
    let mut rows = vec![vec![0u64; n]; n];
    for (i, row) in rows.iter_mut().enumerate().take(n - 1) {
        row[i + 1] = 1;
    }
    rows[n - 1] = vec![p - 1; n];
    Matrix { p, rows }
}

#[derive(Debug, Clone)]
pub struct ModuleDecomposition {
    pub p: u64,
    pub q: u64,
    pub companion: Matrix,
    /// The irreducible factor each submodule is the kernel of.
    pub factors: Vec<FpPoly>,
    /// Basis rows of each submodule.
    pub submodules: Vec<Vec<Vec<u64>>>,
}

impl ModuleDecomposition {
    pub fn is_invariant(&self, basis: &[Vec<u64>]) -> bool {
        let r = rank(basis, self.p);
        basis.iter().all(|v| {
            let mut ext = basis.to_vec();
            ext.push(self.companion.apply_right(v));
            rank(&ext, self.p) == r
        })
    }

    /// Whether the submodules together span the whole space, which together
    /// with the dimension count makes the sum direct.
    pub fn is_direct_sum(&self) -> bool {
        let all: Vec<Vec<u64>> = self.submodules.iter().flatten().cloned().collect();
        all.len() == (self.q - 1) as usize && rank(&all, self.p) == all.len()
    }
}

/// One submodule per irreducible factor `f` of `Q_q` over `F_p`, namely the
/// kernel of `f(B)`.
pub fn decompose_module(p: u64, q: u64, seed: u64) -> Result<ModuleDecomposition> {
    let fact = factor_cyclotomic(q, p, seed)?;
    let companion = companion_matrix(p, q as usize);
    let submodules = fact.factors.iter().map(|f| companion.eval_poly(f).left_kernel()).collect();
    Ok(ModuleDecomposition { p, q, companion, factors: fact.factors, submodules })
}

/// Maps each submodule to the subgroup of `H(p,q)` generated by
/// `c_1^a_1 ... c_(q-1)^a_(q-1)` over its basis vectors `(a_1, .., a_(q-1))`.
pub fn submodule_to_subgroup(
    decomp: &ModuleDecomposition,
    group: &PermGroup,
    named: &NamedElements,
) -> Result<Vec<Subgroup>> {
    if !is_prime(decomp.p) || named.c.len() != (decomp.q - 1) as usize {
        return Err(Error::SpecInvalid(format!(
            "module for (p={}, q={}) does not match the group's basis",
            decomp.p, decomp.q
        )));
    }
    decomp
        .submodules
        .iter()
        .map(|basis| {
            let gens: Vec<Perm> = basis
                .iter()
                .map(|v| {
                    v.iter()
                        .zip(&named.c)
                        .fold(Perm::identity(group.degree()), |acc, (&a, c)| acc.then(&c.pow(a as i64)))
                })
                .collect();
            group.subgroup_from_perms(&gens)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::DEFAULT_SEED;

    #[test]
    fn companion_has_q_cyclotomic_minimal_polynomial() {
        let b = companion_matrix(7, 5);
        assert_eq!(b.eval_poly(&FpPoly::cyclotomic(5, 7)), Matrix::zero(7, 4));
        // b^q = 1
        let mut acc = Matrix::identity(7, 4);
        for _ in 0..5 {
            acc = acc.mul(&b);
        }
        assert_eq!(acc, Matrix::identity(7, 4));
    }

    #[test]
    fn eigenlines_for_p7_q3() {
        let d = decompose_module(7, 3, DEFAULT_SEED).unwrap();
        assert_eq!(d.submodules.len(), 2);
        for basis in &d.submodules {
            assert_eq!(basis.len(), 1);
            let v = &basis[0];
            let vb = d.companion.apply_right(v);
            // vb is a scalar multiple of v with scalar 2 or 4
            let lambda = (1..7).find(|&l| v.iter().map(|&x| x * l % 7).collect::<Vec<_>>() == vb);
            assert!(matches!(lambda, Some(2) | Some(4)), "{v:?} -> {vb:?}");
        }
        assert!(d.is_direct_sum());
    }

    #[test]
    fn q5_over_f3_is_one_block() {
        let d = decompose_module(3, 5, DEFAULT_SEED).unwrap();
        assert_eq!(d.submodules.len(), 1);
        assert_eq!(d.submodules[0].len(), 4);
    }

    #[test]
    fn q11_over_f3_gives_two_five_dimensional_blocks() {
        let d = decompose_module(3, 11, DEFAULT_SEED).unwrap();
        assert_eq!(d.submodules.iter().map(Vec::len).collect::<Vec<_>>(), vec![5, 5]);
        assert!(d.submodules.iter().all(|b| d.is_invariant(b)));
        assert!(d.is_direct_sum());
    }

    #[test]
    fn null_space_of_rank_one() {
        let k = null_space(vec![vec![1, 2, 3]], 5);
        assert_eq!(k.len(), 2);
        for v in k {
            assert_eq!((v[0] + 2 * v[1] + 3 * v[2]) % 5, 0);
        }
    }
}
