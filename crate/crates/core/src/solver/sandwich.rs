//! Certifying `mu(G) = D` for a group on `D` moved points without
//! enumerating it: `mu(H) <= mu(G) <= D` for any `H <= G`, so a subgroup
//! with `mu(H) = D` closes the gap.

use std::time::Instant;

use crate::deadline::Deadline;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::schreier::StabChain;

use super::{mu_exact, LowerBoundEvidence, Method, MuCertificate, SolveStats, SolverConfig, WitnessSubgroup};

#[derive(Debug, Clone)]
pub enum SandwichOutcome {
    Certified(MuCertificate),
    /// `mu(H) = lower < mu(G) <= upper` is all that follows.
    Inconclusive {
        lower: usize,
        upper: usize,
        subgroup_certificate: MuCertificate,
    },
}

/// Orbits of length at least 2, each sorted, in order of least point.
pub fn point_orbits(degree: usize, generators: &[Perm]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut orbits = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            for g in generators {
                let y = g.image(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        if orbit.len() > 1 {
            orbit.sort_unstable();
            orbits.push(orbit);
        }
    }
    orbits
}

/// Generators of the stabilizer of `point` from Schreier's lemma, keeping
/// only those that enlarge the group generated so far.
fn stabilizer_generators(degree: usize, generators: &[Perm], point: usize) -> Vec<Perm> {
    let mut transversal: Vec<Option<Perm>> = vec![None; degree];
    transversal[point] = Some(Perm::identity(degree));
    let mut orbit = vec![point];
    let mut k = 0;
    while k < orbit.len() {
        let x = orbit[k];
        for g in generators {
            let y = g.image(x);
            if transversal[y].is_none() {
                transversal[y] = Some(transversal[x].as_ref().unwrap().then(g));
                orbit.push(y);
            }
        }
        k += 1;
    }
    let mut kept: Vec<Perm> = Vec::new();
    let mut chain = StabChain::new(degree, &[]);
    for &x in &orbit {
        let u = transversal[x].as_ref().unwrap();
        for g in generators {
            let s = u.then(g).then(&transversal[g.image(x)].as_ref().unwrap().inverse());
            if !chain.contains(&s) {
                kept.push(s);
                chain = StabChain::new(degree, &kept);
            }
        }
    }
    kept
}

/// Tries to certify `mu(G)` equal to the number of points `G` moves, using
/// `mu_exact` on the subgroup generated by `subgroup_generators`.
pub fn certify_sandwich(
    label: &str,
    degree: usize,
    generators: &[Perm],
    subgroup_label: &str,
    subgroup_generators: &[Perm],
    config: &SolverConfig,
    deadline: &Deadline,
) -> Result<SandwichOutcome> {
    let started = Instant::now();
    let chain = StabChain::new(degree, generators);
    if let Some(g) = subgroup_generators.iter().find(|g| !chain.contains(g)) {
        return Err(Error::SpecInvalid(format!("{g} is not an element of {label}")));
    }
    let h = PermGroup::generate(degree, subgroup_generators.to_vec(), config.materialize_cap)?;
    let sub = mu_exact(&h, subgroup_label, config, deadline)?;

    let orbits = point_orbits(degree, generators);
    let upper: usize = orbits.iter().map(Vec::len).sum();
    if sub.mu != upper {
        return Ok(SandwichOutcome::Inconclusive { lower: sub.mu, upper, subgroup_certificate: sub });
    }
    let order = chain.order();
    let witness = orbits
        .iter()
        .map(|orbit| WitnessSubgroup {
            generators: stabilizer_generators(degree, generators, orbit[0]),
            order: (order / orbit.len() as u128) as u64,
            index: orbit.len() as u64,
        })
        .collect();
    Ok(SandwichOutcome::Certified(MuCertificate {
        group: label.to_string(),
        order: order as u64,
        degree,
        mu: upper,
        method: Method::Sandwich,
        witness,
        lower_bound: Some(Box::new(LowerBoundEvidence {
            subgroup_generators: subgroup_generators.to_vec(),
            certificate: sub,
        })),
        config: *config,
        elapsed: started.elapsed(),
        stats: SolveStats::default(),
    }))
}
