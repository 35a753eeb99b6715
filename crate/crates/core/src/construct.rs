//! Explicit permutation realizations of the group families.
//!
//! Block families (`Wr`, `A`, `G`, `H`) live on `m * n` points arranged
//! block-major: block `i` holds points `i*m .. i*m + m - 1`. The generator
//! `theta_i` rotates block `i`, and `Sym(n)` moves whole blocks rigidly.

use std::fmt;

use crate::error::{Error, Result};
use crate::ff::{is_prime, root_of_unity};
use crate::group::{PermGroup, Subgroup};
use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Direct product of cyclic groups of the given orders.
    Abelian(Vec<usize>),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    Symmetric(usize),
    /// `C_m wr Sym(n)`.
    Wreath {
        m: usize,
        n: usize,
    },
    Amn {
        m: usize,
        p: usize,
        n: usize,
    },
    Gmn {
        m: usize,
        p: usize,
        n: usize,
    },
    /// `<c_1, .., c_(q-1), b>` inside `G(p,p,q)`.
    Hpq {
        p: usize,
        q: usize,
    },
    Product(Vec<GroupSpec>),
}

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::SpecInvalid(msg));
        match self {
            GroupSpec::Cyclic(k) if *k == 0 => bad("C(0)".into()),
            GroupSpec::Abelian(ks) if ks.is_empty() || ks.contains(&0) => bad(format!("{self}")),
            GroupSpec::Dihedral(0) | GroupSpec::Symmetric(0) => bad(format!("{self}")),
            GroupSpec::Wreath { m, n } if *m == 0 || *n == 0 => bad(format!("{self}")),
            GroupSpec::Amn { m, p, n } | GroupSpec::Gmn { m, p, n } => {
                if *m == 0 || *n == 0 || *p == 0 || m % p != 0 {
                    bad(format!("{self}: p must divide m"))
                } else {
                    Ok(())
                }
            }
            GroupSpec::Hpq { p, q } if !is_prime(*p as u64) || !is_prime(*q as u64) => {
                bad(format!("{self}: p and q must be prime"))
            }
            GroupSpec::Product(parts) => {
                if parts.is_empty() {
                    return bad("empty product".into());
                }
                parts.iter().try_for_each(GroupSpec::validate)
            }
            _ => Ok(()),
        }
    }

    /// Order predicted by the family's closed form.
    pub fn expected_order(&self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match self {
            GroupSpec::Cyclic(k) => *k as u128,
            GroupSpec::Abelian(ks) => ks.iter().map(|&k| k as u128).product(),
            GroupSpec::Dihedral(n) => 2 * *n as u128,
            GroupSpec::Symmetric(n) => fact(*n),
            GroupSpec::Wreath { m, n } => (*m as u128).pow(*n as u32) * fact(*n),
            GroupSpec::Amn { m, p, n } => (*m as u128).pow(*n as u32) / *p as u128,
            GroupSpec::Gmn { m, p, n } => (*m as u128).pow(*n as u32) * fact(*n) / *p as u128,
            GroupSpec::Hpq { p, q } => (*p as u128).pow(*q as u32 - 1) * *q as u128,
            GroupSpec::Product(parts) => parts.iter().map(GroupSpec::expected_order).product(),
        }
    }

    /// Degree and generators of the documented point layout.
    pub fn realize(&self) -> Result<(usize, Vec<Perm>, Option<NamedElements>)> {
        self.validate()?;
        Ok(match self {
            GroupSpec::Cyclic(k) => (*k, vec![cycle_on(*k, 0, *k)], None),
            GroupSpec::Abelian(ks) => {
                let degree = ks.iter().sum();
                let mut offset = 0;
                let gens = ks
                    .iter()
                    .map(|&k| {
                        let g = cycle_on(degree, offset, k);
                        offset += k;
                        g
                    })
                    .collect();
                (degree, gens, None)
            }
            GroupSpec::Dihedral(n) => dihedral(*n),
            GroupSpec::Symmetric(n) => {
                let gens = if *n >= 2 { vec![cycle_on(*n, 0, 2), cycle_on(*n, 0, *n)] } else { Vec::new() };
                (*n, gens, None)
            }
            GroupSpec::Wreath { m, n } => block_family(*m, 1, *n, true),
            GroupSpec::Amn { m, p, n } => block_family(*m, *p, *n, false),
            GroupSpec::Gmn { m, p, n } => block_family(*m, *p, *n, true),
            GroupSpec::Hpq { p, q } => {
                let named = NamedElements::new(*p, *q);
                let mut gens = named.c.clone();
                gens.extend(named.b.clone());
                (p * q, gens, Some(named))
            }
            GroupSpec::Product(parts) => {
                let realized = parts.iter().map(GroupSpec::realize).collect::<Result<Vec<_>>>()?;
                let degree = realized.iter().map(|r| r.0).sum();
                let mut offset = 0;
                let mut gens = Vec::new();
                for (d, part_gens, _) in &realized {
                    gens.extend(part_gens.iter().map(|g| shift(g, offset, degree)));
                    offset += d;
                }
                (degree, gens, None)
            }
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(k) => write!(f, "C({k})"),
            GroupSpec::Abelian(ks) => {
                let ks: Vec<String> = ks.iter().map(usize::to_string).collect();
                write!(f, "Ab({})", ks.join(","))
            }
            GroupSpec::Dihedral(n) => write!(f, "D({n})"),
            GroupSpec::Symmetric(n) => write!(f, "S({n})"),
            GroupSpec::Wreath { m, n } => write!(f, "Wr({m},{n})"),
            GroupSpec::Amn { m, p, n } => write!(f, "A({m},{p},{n})"),
            GroupSpec::Gmn { m, p, n } => write!(f, "G({m},{p},{n})"),
            GroupSpec::Hpq { p, q } => write!(f, "H({p},{q})"),
            GroupSpec::Product(parts) => {
                let parts: Vec<String> = parts.iter().map(GroupSpec::to_string).collect();
                write!(f, "X({})", parts.join(","))
            }
        }
    }
}

/// The named elements of a block family on `m * n` points.
#[derive(Debug, Clone)]
pub struct NamedElements {
    pub m: usize,
    pub n: usize,
    /// `theta_i` rotates block `i`.
    pub theta: Vec<Perm>,
    /// `c_i = theta_i theta_(i+1)^-1`, `n - 1` of them.
    pub c: Vec<Perm>,
    /// Swap of blocks 0 and 1.
    pub a: Option<Perm>,
    /// Block `i` to block `i + 1 (mod n)`.
    pub b: Option<Perm>,
    /// `theta_1 theta_2 ... theta_n`.
    pub gamma: Perm,
}

impl NamedElements {
    pub fn new(m: usize, n: usize) -> NamedElements {
        let degree = m * n;
        let theta: Vec<Perm> = (0..n).map(|i| cycle_on(degree, i * m, m)).collect();
        let c = (0..n.saturating_sub(1)).map(|i| theta[i].then(&theta[i + 1].inverse())).collect();
        let block_map = |f: &dyn Fn(usize) -> usize| {
            let images = (0..degree).map(|x| f(x / m) * m + x % m).collect();
            Perm::from_images(images).expect("block permutation")
        };
        let (a, b) = if n >= 2 {
            let swap = |i: usize| match i {
                0 => 1,
                1 => 0,
                i => i,
            };
            (Some(block_map(&swap)), Some(block_map(&|i| (i + 1) % n)))
        } else {
            (None, None)
        };
        let gamma = theta.iter().fold(Perm::identity(degree), |acc, t| acc.then(t));
        NamedElements { m, n, theta, c, a, b, gamma }
    }

    /// Checks `c_i^b = c_(i+1)` for `i < n-1` and
    /// `c_(n-1)^b = (c_1 c_2 ... c_(n-1))^-1`.
    pub fn b_action_holds(&self) -> bool {
        let Some(b) = &self.b else {
            return false;
        };
        let k = self.c.len();
        let shifted = (0..k.saturating_sub(1)).all(|i| self.c[i].conjugate_by(b) == self.c[i + 1]);
        let product = self.c.iter().fold(Perm::identity(self.m * self.n), |acc, c| acc.then(c));
        shifted && k > 0 && self.c[k - 1].conjugate_by(b) == product.inverse()
    }
}

/// A materialized group with its spec and named elements.
#[derive(Debug)]
pub struct Construction {
    pub spec: GroupSpec,
    pub group: PermGroup,
    pub named: Option<NamedElements>,
}

pub fn construct(spec: &GroupSpec, cap: usize) -> Result<Construction> {
    let (degree, gens, named) = spec.realize()?;
    let group = PermGroup::generate(degree, gens, cap)?;
    Ok(Construction { spec: spec.clone(), group, named })
}

fn require_primes(p: usize, q: usize) -> Result<()> {
    if is_prime(p as u64) && is_prime(q as u64) {
        Ok(())
    } else {
        Err(Error::SpecInvalid(format!("({p},{q}) must both be prime")))
    }
}

/// `H = <c_1, .., c_(q-1), b>` as a subgroup of `G(p,p,q)`.
pub fn subgroup_h(p: usize, q: usize, cap: usize) -> Result<(Construction, Subgroup)> {
    require_primes(p, q)?;
    let g = construct(&GroupSpec::Gmn { m: p, p, n: q }, cap)?;
    let named = g.named.as_ref().expect("block family");
    let mut gens = named.c.clone();
    gens.extend(named.b.clone());
    let h = g.group.subgroup_from_perms(&gens)?;
    Ok((g, h))
}

/// `c_1 c_2^(-zeta)` with `zeta` the least primitive cube root of unity mod `p`.
pub fn eigen_element(named: &NamedElements, p: usize) -> Result<Perm> {
    let zeta = root_of_unity(3, p as u64)? as i64;
    Ok(named.c[0].then(&named.c[1].pow((p as i64 - zeta).rem_euclid(p as i64))))
}

/// `L = <c_1 c_2^(-zeta_3), b>` inside `G(p,p,3)`: core-free of order `3p`
/// when `p = 1 (mod 3)`.
pub fn special_l(p: usize, cap: usize) -> Result<(Construction, Subgroup)> {
    require_primes(p, 3)?;
    root_of_unity(3, p as u64)?;
    let g = construct(&GroupSpec::Gmn { m: p, p, n: 3 }, cap)?;
    let named = g.named.as_ref().expect("block family");
    let v = eigen_element(named, p)?;
    let b = named.b.clone().expect("n = 3");
    let l = g.group.subgroup_from_perms(&[v, b])?;
    Ok((g, l))
}

/// How `C_p wr Sym(q)` relates to `<gamma>` and `G(p,p,q)` on the same points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathDecomposition {
    pub wreath_order: usize,
    pub gmn_order: usize,
    pub gamma_order: usize,
    pub intersection_order: usize,
    pub gamma_central: bool,
    pub gmn_normal: bool,
    pub gmn_index: usize,
    /// Order of the centralizer of `G(p,p,q)` in the wreath product.
    pub centralizer_order: usize,
    pub centralizer_inside_gmn: bool,
}

impl WreathDecomposition {
    pub fn is_internal_direct_product(&self) -> bool {
        self.intersection_order == 1
            && self.gamma_central
            && self.gmn_normal
            && self.gamma_order * self.gmn_order == self.wreath_order
    }
}

pub fn wreath_decomposition(p: usize, q: usize, cap: usize) -> Result<WreathDecomposition> {
    require_primes(p, q)?;
    let w = construct(&GroupSpec::Wreath { m: p, n: q }, cap)?;
    let named = w.named.as_ref().expect("block family");
    let (_, g_gens, _) = GroupSpec::Gmn { m: p, p, n: q }.realize()?;
    let gmn = w.group.subgroup_from_perms(&g_gens)?;
    let gamma = w.group.subgroup_from_perms(std::slice::from_ref(&named.gamma))?;
    let gamma_id = w.group.index_of(&named.gamma).ok_or(Error::NotInGroup)?;
    let gamma_central = w.group.generator_ids().iter().all(|&g| w.group.commute(g, gamma_id));
    let centralizer_members =
        (0..w.group.order() as u32).filter(|&x| gmn.generators().iter().all(|&g| w.group.commute(x, g)));
    let centralizer_order = centralizer_members.clone().count();
    let centralizer_inside_gmn = centralizer_members.clone().all(|x| gmn.contains(x));
    Ok(WreathDecomposition {
        wreath_order: w.group.order(),
        gmn_order: gmn.order(),
        gamma_order: gamma.order(),
        intersection_order: w.group.intersection(&gamma, &gmn).order(),
        gamma_central,
        gmn_normal: w.group.is_normal(&gmn),
        gmn_index: w.group.index(&gmn),
        centralizer_order,
        centralizer_inside_gmn,
    })
}

fn cycle_on(degree: usize, start: usize, len: usize) -> Perm {
    let mut images: Vec<usize> = (0..degree).collect();
    for k in 0..len {
        images[start + k] = start + (k + 1) % len;
    }
    Perm::from_images(images).expect("cycle")
}

fn shift(g: &Perm, offset: usize, degree: usize) -> Perm {
    let mut images: Vec<usize> = (0..degree).collect();
    for i in 0..g.degree() {
        images[offset + i] = offset + g.image(i);
    }
    Perm::from_images(images).expect("shifted permutation")
}

fn dihedral(n: usize) -> (usize, Vec<Perm>, Option<NamedElements>) {
    match n {
        // Order 2 and 4 are not faithful on n points; use C2 and C2 x C2.
        1 => (2, vec![cycle_on(2, 0, 2)], None),
        2 => (4, vec![cycle_on(4, 0, 2), cycle_on(4, 2, 2)], None),
        _ => {
            let rotation = cycle_on(n, 0, n);
            let reflection = Perm::from_images((0..n).map(|i| (n - i) % n).collect()).expect("reflection");
            (n, vec![rotation, reflection], None)
        }
    }
}

fn block_family(m: usize, p: usize, n: usize, with_sym: bool) -> (usize, Vec<Perm>, Option<NamedElements>) {
    let named = NamedElements::new(m, n);
    let mut gens = named.c.clone();
    if p < m {
        gens.push(named.theta[0].pow(p as i64));
    }
    if with_sym {
        gens.extend(named.a.clone());
        if n >= 3 {
            gens.extend(named.b.clone());
        }
    }
    (m * n, gens, Some(named))
}
