//! The faithful-collection problem as weighted set cover.
//!
//! A collection is faithful exactly when no minimal normal subgroup lies in
//! every core, so a subgroup "covers" the minimal normals outside its core
//! and the cheapest cover by total index is `mu(G)`.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::deadline::Deadline;
use crate::error::Result;
use crate::group::Subgroup;
use crate::normal::NormalLattice;

use super::enumerate::SubgroupLattice;

#[derive(Debug, Clone)]
pub struct Candidate {
    /// Index into the lattice's `subgroups`.
    pub subgroup: usize,
    /// Conjugacy class id of the subgroup.
    pub class: usize,
    pub weight: usize,
    pub fingerprint: u64,
    /// Universe elements (minimal normals) not inside the core.
    pub cover: FixedBitSet,
}

#[derive(Debug, Clone)]
pub struct CoverInstance {
    /// The minimal normal subgroups, in lattice order.
    pub universe: Vec<Subgroup>,
    /// Sorted by `(weight, fingerprint)`.
    pub candidates: Vec<Candidate>,
}

impl CoverInstance {
    pub fn universe_size(&self) -> usize {
        self.universe.len()
    }

    pub fn covers(&self, chosen: &[usize]) -> bool {
        let mut u = FixedBitSet::with_capacity(self.universe.len());
        for &c in chosen {
            u.union_with(&self.candidates[c].cover);
        }
        u.count_ones(..) == self.universe.len()
    }
}

fn cover_set(core: &Subgroup, universe: &[Subgroup]) -> FixedBitSet {
    let mut cover = FixedBitSet::with_capacity(universe.len());
    for (i, m) in universe.iter().enumerate() {
        if !m.is_subgroup_of(core) {
            cover.insert(i);
        }
    }
    cover
}

/// One candidate per distinct core (the largest subgroup with that core,
/// least fingerprint on ties). Candidates with an empty cover set, or whose
/// cover set is contained in that of an earlier candidate, are dropped. A
/// full cover never removes a partial one, so the intransitive mode still
/// sees every useful candidate.
pub fn build_cover(lattice: &SubgroupLattice, normals: &NormalLattice) -> CoverInstance {
    let universe: Vec<Subgroup> = normals.minimal_normals().cloned().collect();
    let mut best_by_core: HashMap<&FixedBitSet, usize> = HashMap::new();
    for (i, rec) in lattice.subgroups.iter().enumerate() {
        let key = rec.core.members();
        match best_by_core.get(key) {
            Some(&j) => {
                let other = &lattice.subgroups[j];
                if (rec.index, rec.fingerprint) < (other.index, other.fingerprint) {
                    best_by_core.insert(key, i);
                }
            }
            None => {
                best_by_core.insert(key, i);
            }
        }
    }
    let mut candidates: Vec<Candidate> = best_by_core
        .into_values()
        .map(|i| {
            let rec = &lattice.subgroups[i];
            Candidate {
                subgroup: i,
                class: rec.class,
                weight: rec.index,
                fingerprint: rec.fingerprint,
                cover: cover_set(&rec.core, &universe),
            }
        })
        .filter(|c| !c.cover.is_clear())
        .collect();
    candidates.sort_by_key(|c| (c.weight, c.fingerprint));

    let n = universe.len();
    let is_full = |c: &Candidate| c.cover.count_ones(..) == n;
    let mut kept: Vec<Candidate> = Vec::with_capacity(candidates.len());
    for c in candidates {
        if !kept.iter().any(|k| c.cover.is_subset(&k.cover) && (is_full(&c) || !is_full(k))) {
            kept.push(c);
        }
    }
    CoverInstance { universe, candidates: kept }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    /// Forbid candidates that cover the whole universe on their own, so
    /// every solution has at least two constituents.
    pub intransitive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSolution {
    pub weight: usize,
    /// Indices into the instance's candidates, in order of choice.
    pub chosen: Vec<usize>,
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy)]
enum Memo {
    Exact { cost: usize, choice: Option<usize> },
    AtLeast(usize),
}

struct Search<'a> {
    candidates: &'a [Candidate],
    allowed: Vec<usize>,
    /// Allowed candidates covering each universe element, in `(weight,
    /// fingerprint)` order.
    covering: Vec<Vec<usize>>,
    cheapest: Vec<usize>,
    memo: HashMap<FixedBitSet, Memo>,
    deadline: &'a Deadline,
    nodes: u64,
}

const INFEASIBLE: usize = usize::MAX / 2;

impl Search<'_> {
    fn bound(&self, uncovered: &FixedBitSet) -> usize {
        uncovered.ones().map(|e| self.cheapest[e]).max().unwrap_or(0)
    }

    /// Exact optimum for `uncovered` if it is at most `budget`, otherwise a
    /// lower bound exceeding `budget`.
    fn solve(&mut self, uncovered: &FixedBitSet, budget: usize) -> Result<Memo> {
        if uncovered.is_clear() {
            return Ok(Memo::Exact { cost: 0, choice: None });
        }
        match self.memo.get(uncovered) {
            Some(m @ Memo::Exact { .. }) => return Ok(*m),
            Some(&Memo::AtLeast(lb)) if lb > budget => return Ok(Memo::AtLeast(lb)),
            _ => {}
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) {
            self.deadline.check()?;
        }
        let lb = self.bound(uncovered);
        if lb > budget {
            self.memo.insert(uncovered.clone(), Memo::AtLeast(lb));
            return Ok(Memo::AtLeast(lb));
        }
        let pivot = uncovered.ones().min_by_key(|&e| (self.covering[e].len(), e)).expect("uncovered is nonempty");

        let mut best: Option<(usize, usize)> = None;
        let mut floor = INFEASIBLE;
        for k in 0..self.covering[pivot].len() {
            let c = self.covering[pivot][k];
            let w = self.candidates[c].weight;
            let limit = match best {
                Some((cost, _)) => budget.min(cost - 1),
                None => budget,
            };
            let mut rest = uncovered.clone();
            rest.difference_with(&self.candidates[c].cover);
            if w > limit {
                floor = floor.min(w + self.bound(&rest));
                continue;
            }
            match self.solve(&rest, limit - w)? {
                Memo::Exact { cost, .. } => {
                    if best.is_none_or(|(b, _)| w + cost < b) {
                        best = Some((w + cost, c));
                    }
                }
                Memo::AtLeast(b) => floor = floor.min(w + b),
            }
        }
        let outcome = match best {
            Some((cost, c)) if cost <= budget => Memo::Exact { cost, choice: Some(c) },
            _ => Memo::AtLeast(floor.max(lb).max(budget + 1)),
        };
        self.memo.insert(uncovered.clone(), outcome);
        Ok(outcome)
    }
}

/// Minimum-weight cover by branch and bound over the uncovered set,
/// memoized on that set. `None` when no cover exists under `options`.
pub fn solve_cover(
    instance: &CoverInstance,
    options: SolveOptions,
    deadline: &Deadline,
) -> Result<Option<CoverSolution>> {
    let n = instance.universe.len();
    let allowed: Vec<usize> = (0..instance.candidates.len())
        .filter(|&c| !(options.intransitive && instance.candidates[c].cover.count_ones(..) == n))
        .collect();
    let mut covering = vec![Vec::new(); n];
    for &c in &allowed {
        for e in instance.candidates[c].cover.ones() {
            covering[e].push(c);
        }
    }
    if covering.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let cheapest = covering.iter().map(|cs| instance.candidates[cs[0]].weight).collect();
    let mut search = Search {
        candidates: &instance.candidates,
        allowed,
        covering,
        cheapest,
        memo: HashMap::new(),
        deadline,
        nodes: 0,
    };
    let total: usize = search.allowed.iter().map(|&c| instance.candidates[c].weight).sum();
    let mut full = FixedBitSet::with_capacity(n);
    full.insert_range(..);
    let weight = match search.solve(&full, total)? {
        Memo::Exact { cost, .. } => cost,
        Memo::AtLeast(_) => return Ok(None),
    };
    let mut chosen = Vec::new();
    let mut u = full;
    while !u.is_clear() {
        let Some(Memo::Exact { choice: Some(c), .. }) = search.memo.get(&u).copied() else {
            unreachable!("optimal path is memoized");
        };
        chosen.push(c);
        u.difference_with(&instance.candidates[c].cover);
    }
    Ok(Some(CoverSolution { weight, chosen, nodes: search.nodes }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PermGroup;

    fn instance(n: usize, cands: &[(usize, &[usize])]) -> CoverInstance {
        let mut candidates: Vec<Candidate> = cands
            .iter()
            .enumerate()
            .map(|(i, &(weight, elems))| Candidate {
                subgroup: i,
                class: i,
                weight,
                fingerprint: i as u64,
                cover: {
                    let mut s = FixedBitSet::with_capacity(n);
                    elems.iter().for_each(|&e| s.insert(e));
                    s
                },
            })
            .collect();
        candidates.sort_by_key(|c| (c.weight, c.fingerprint));
        CoverInstance { universe: vec![PermGroup::trivial(1).trivial_subgroup(); n], candidates }
    }

    /// Cheapest cover by trying every subset.
    fn brute(inst: &CoverInstance, intransitive: bool) -> Option<usize> {
        let n = inst.universe.len();
        let m = inst.candidates.len();
        (1u32..(1 << m))
            .filter(|mask| {
                (0..m)
                    .filter(|&c| mask >> c & 1 == 1)
                    .all(|c| !(intransitive && inst.candidates[c].cover.count_ones(..) == n))
            })
            .filter(|mask| inst.covers(&(0..m).filter(|&c| mask >> c & 1 == 1).collect::<Vec<_>>()))
            .map(|mask| (0..m).filter(|&c| mask >> c & 1 == 1).map(|c| inst.candidates[c].weight).sum())
            .min()
    }

    #[test]
    fn klein_four_shape() {
        let inst = instance(3, &[(2, &[1, 2]), (2, &[0, 2]), (2, &[0, 1]), (4, &[0, 1, 2])]);
        let sol = solve_cover(&inst, SolveOptions::default(), &Deadline::none()).unwrap().unwrap();
        assert_eq!(sol.weight, 4);
        assert_eq!(sol.chosen.len(), 2);
    }

    #[test]
    fn intransitive_mode_skips_full_covers() {
        let inst = instance(2, &[(3, &[0, 1]), (2, &[0]), (5, &[1])]);
        let open = solve_cover(&inst, SolveOptions::default(), &Deadline::none()).unwrap().unwrap();
        assert_eq!(open.weight, 3);
        let restricted = solve_cover(&inst, SolveOptions { intransitive: true }, &Deadline::none()).unwrap().unwrap();
        assert_eq!(restricted.weight, 7);
        let none = instance(2, &[(3, &[0, 1]), (2, &[0])]);
        assert_eq!(solve_cover(&none, SolveOptions { intransitive: true }, &Deadline::none()).unwrap(), None);
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn matches_exhaustive_search(
            n in 1usize..6,
            raw in proptest::collection::vec((1usize..12, proptest::collection::vec(0usize..6, 1..4)), 1..9),
            intransitive in any::<bool>(),
        ) {
            let cands: Vec<(usize, Vec<usize>)> = raw
                .into_iter()
                .map(|(w, es)| (w, es.into_iter().filter(|&e| e < n).collect::<Vec<_>>()))
                .filter(|(_, es)| !es.is_empty())
                .collect();
            prop_assume!(!cands.is_empty());
            let refs: Vec<(usize, &[usize])> = cands.iter().map(|(w, es)| (*w, es.as_slice())).collect();
            let inst = instance(n, &refs);
            let got = solve_cover(&inst, SolveOptions { intransitive }, &Deadline::none()).unwrap();
            prop_assert_eq!(got.as_ref().map(|s| s.weight), brute(&inst, intransitive));
            if let Some(sol) = got {
                prop_assert!(inst.covers(&sol.chosen));
                let sum: usize = sol.chosen.iter().map(|&c| inst.candidates[c].weight).sum();
                prop_assert_eq!(sum, sol.weight);
            }
        }
    }
}
