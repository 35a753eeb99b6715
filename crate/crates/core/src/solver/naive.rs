//! Exhaustive search for `mu` on very small groups.
//!
//! Works directly on sets of permutations and shares nothing with the
//! lattice, normal-subgroup or cover code, so it can serve as an oracle for
//! them.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Largest group order `naive_mu` accepts.
pub const NAIVE_CAP: usize = 24;

type Set = BTreeSet<Perm>;

fn close(degree: usize, seed: &Set) -> Set {
    let mut out: Set = seed.clone();
    out.insert(Perm::identity(degree));
    loop {
        let products: Vec<Perm> = out.iter().flat_map(|a| out.iter().map(move |b| a.then(b))).collect();
        let before = out.len();
        out.extend(products);
        if out.len() == before {
            return out;
        }
    }
}

fn core(elements: &Set, h: &Set) -> Set {
    elements.iter().fold(h.clone(), |acc, g| {
        let conj: Set = h.iter().map(|x| x.conjugate_by(g)).collect();
        acc.intersection(&conj).cloned().collect()
    })
}

/// `mu` of the group generated by `generators`, by trying every collection
/// of at most `dim(G)` subgroups whose total index is below the best found.
pub fn naive_mu(degree: usize, generators: &[Perm]) -> Result<usize> {
    naive_search(degree, generators).map(|r| r.mu)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaiveResult {
    pub mu: usize,
    /// Element lists of an optimal collection; empty for the trivial group.
    pub witness: Vec<Vec<Perm>>,
}

pub fn naive_search(degree: usize, generators: &[Perm]) -> Result<NaiveResult> {
    let elements = {
        let mut acc: Set = [Perm::identity(degree)].into();
        loop {
            let next: Set = acc.iter().flat_map(|a| generators.iter().map(move |g| a.then(g))).collect();
            let before = acc.len();
            acc.extend(next);
            if acc.len() > NAIVE_CAP {
                return Err(Error::CapExceeded { cap: NAIVE_CAP });
            }
            if acc.len() == before {
                break acc;
            }
        }
    };
    let order = elements.len();
    if order == 1 {
        return Ok(NaiveResult { mu: 0, witness: Vec::new() });
    }

    let mut subgroups: BTreeSet<Set> = elements.iter().map(|x| close(degree, &[x.clone()].into())).collect();
    loop {
        let list: Vec<Set> = subgroups.iter().cloned().collect();
        let before = subgroups.len();
        for a in &list {
            for b in &list {
                subgroups.insert(close(degree, &a.union(b).cloned().collect()));
            }
        }
        if subgroups.len() == before {
            break;
        }
    }

    let subgroups: Vec<Set> = subgroups.into_iter().collect();
    let cores: Vec<(usize, Set)> = subgroups.iter().map(|h| (order / h.len(), core(&elements, h))).collect();
    let normals: Vec<&Set> = subgroups.iter().filter(|h| core(&elements, h) == **h).collect();
    let dim = normals
        .iter()
        .filter(|n| n.len() > 1 && normals.iter().all(|m| m.len() == 1 || m == *n || !m.is_subset(n)))
        .count();

    let trivial = subgroups.iter().position(|h| h.len() == 1).expect("trivial subgroup is present");
    let mut best = (order, vec![trivial]);
    let mut path = Vec::new();
    search(&cores, 0, &elements, 0, dim, &mut path, &mut best);
    Ok(NaiveResult { mu: best.0, witness: best.1.iter().map(|&i| subgroups[i].iter().cloned().collect()).collect() })
}

fn search(
    cores: &[(usize, Set)],
    from: usize,
    kernel: &Set,
    sum: usize,
    slots: usize,
    path: &mut Vec<usize>,
    best: &mut (usize, Vec<usize>),
) {
    if kernel.len() == 1 {
        if sum < best.0 {
            *best = (sum, path.clone());
        }
        return;
    }
    if slots == 0 {
        return;
    }
    for i in from..cores.len() {
        let (index, core) = &cores[i];
        if sum + index >= best.0 {
            continue;
        }
        let next: Set = kernel.intersection(core).cloned().collect();
        if next.len() < kernel.len() {
            path.push(i);
            search(cores, i + 1, &next, sum + index, slots - 1, path, best);
            path.pop();
        }
    }
}
