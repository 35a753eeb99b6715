//! Exact minimal faithful permutation degree.
//!
//! [`mu_exact`] enumerates the subgroup lattice, reduces faithfulness to a
//! cover of the minimal normal subgroups and solves that exactly.
//! [`certify_sandwich`] handles groups too large to enumerate when a
//! subgroup already needs the group's natural degree.

pub mod cover;
pub mod enumerate;
pub mod naive;
pub mod sandwich;

pub use cover::{build_cover, solve_cover, Candidate, CoverInstance, CoverSolution, SolveOptions};
pub use enumerate::{enumerate_subgroups, SubgroupLattice, SubgroupRecord, DEFAULT_LATTICE_CAP};
pub use naive::{naive_mu, naive_search, NaiveResult, NAIVE_CAP};
pub use sandwich::{certify_sandwich, point_orbits, SandwichOutcome};

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::deadline::Deadline;
use crate::error::{Error, Result};
use crate::ff::DEFAULT_SEED;
use crate::group::{PermGroup, Subgroup, DEFAULT_MATERIALIZE_CAP};
use crate::normal::NormalLattice;
use crate::perm::Perm;
use crate::schreier::StabChain;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub materialize_cap: usize,
    pub lattice_cap: usize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> SolverConfig {
        SolverConfig { materialize_cap: DEFAULT_MATERIALIZE_CAP, lattice_cap: DEFAULT_LATTICE_CAP, seed: DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ExactCover,
    TransitiveScan,
    Naive,
    Sandwich,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ExactCover => "exact-cover",
            Method::TransitiveScan => "transitive-scan",
            Method::Naive => "naive",
            Method::Sandwich => "sandwich",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s {
            "exact" | "exact-cover" => Ok(Method::ExactCover),
            "transitive" | "transitive-scan" => Ok(Method::TransitiveScan),
            "naive" => Ok(Method::Naive),
            "sandwich" => Ok(Method::Sandwich),
            other => Err(Error::SpecInvalid(format!("unknown method `{other}`"))),
        }
    }
}

/// One transitive constituent of a representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSubgroup {
    pub generators: Vec<Perm>,
    pub order: u64,
    pub index: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundEvidence {
    pub subgroup_generators: Vec<Perm>,
    pub certificate: MuCertificate,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub subgroups: usize,
    pub classes: usize,
    pub universe: usize,
    pub candidates: usize,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuCertificate {
    pub group: String,
    pub order: u64,
    /// Degree of the group's own permutation realization.
    pub degree: usize,
    pub mu: usize,
    pub method: Method,
    pub witness: Vec<WitnessSubgroup>,
    pub lower_bound: Option<Box<LowerBoundEvidence>>,
    pub config: SolverConfig,
    pub elapsed: Duration,
    pub stats: SolveStats,
}

/// Everything `mu_exact` derives before solving.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub lattice: SubgroupLattice,
    pub normals: NormalLattice,
    pub instance: CoverInstance,
}

pub fn analyze(group: &PermGroup, config: &SolverConfig, deadline: &Deadline) -> Result<Analysis> {
    let lattice = enumerate_subgroups(group, config.lattice_cap, deadline)?;
    let normals = NormalLattice::compute(group, deadline)?;
    let instance = build_cover(&lattice, &normals);
    Ok(Analysis { lattice, normals, instance })
}

fn witness_of(group: &PermGroup, subgroups: &[&Subgroup]) -> Vec<WitnessSubgroup> {
    subgroups
        .iter()
        .map(|s| WitnessSubgroup {
            generators: group.generator_perms(s),
            order: s.order() as u64,
            index: group.index(s) as u64,
        })
        .collect()
}

/// Re-checks a collection through the coset action.
fn check_faithful(group: &PermGroup, subgroups: &[&Subgroup], mu: usize) -> Result<()> {
    let action = group.coset_action(subgroups);
    if action.degree != mu {
        return Err(Error::VerificationFailed(format!("witness degree {} differs from {mu}", action.degree)));
    }
    if !action.is_faithful() {
        return Err(Error::VerificationFailed("witness action has a nontrivial kernel".into()));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn certificate(
    group: &PermGroup,
    label: &str,
    mu: usize,
    method: Method,
    witness: &[&Subgroup],
    config: &SolverConfig,
    started: Instant,
    stats: SolveStats,
) -> Result<MuCertificate> {
    check_faithful(group, witness, mu)?;
    Ok(MuCertificate {
        group: label.to_string(),
        order: group.order() as u64,
        degree: group.degree(),
        mu,
        method,
        witness: witness_of(group, witness),
        lower_bound: None,
        config: *config,
        elapsed: started.elapsed(),
        stats,
    })
}

/// `mu(G)` by exact weighted set cover over the minimal normal subgroups.
/// The trivial group has `mu = 0`.
pub fn mu_exact(group: &PermGroup, label: &str, config: &SolverConfig, deadline: &Deadline) -> Result<MuCertificate> {
    let started = Instant::now();
    if group.is_trivial() {
        return certificate(group, label, 0, Method::ExactCover, &[], config, started, SolveStats::default());
    }
    let analysis = analyze(group, config, deadline)?;
    let solution = solve_cover(&analysis.instance, SolveOptions::default(), deadline)?
        .expect("the trivial subgroup covers every minimal normal subgroup");
    let chosen: Vec<&Subgroup> = solution
        .chosen
        .iter()
        .map(|&c| &analysis.lattice.subgroups[analysis.instance.candidates[c].subgroup].subgroup)
        .collect();
    let stats = SolveStats {
        subgroups: analysis.lattice.len(),
        classes: analysis.lattice.class_count(),
        universe: analysis.instance.universe_size(),
        candidates: analysis.instance.candidates.len(),
        nodes: solution.nodes,
    };
    certificate(group, label, solution.weight, Method::ExactCover, &chosen, config, started, stats)
}

#[derive(Debug, Clone)]
pub struct TransitiveScan {
    pub degree: usize,
    /// Index into the lattice of a least-index core-free subgroup.
    pub subgroup: usize,
    pub lattice: SubgroupLattice,
}

/// Least index of a nontrivial core-free subgroup, or `None` if every
/// nontrivial subgroup has a nontrivial core.
pub fn mu_transitive(group: &PermGroup, config: &SolverConfig, deadline: &Deadline) -> Result<Option<TransitiveScan>> {
    let lattice = enumerate_subgroups(group, config.lattice_cap, deadline)?;
    let best = lattice
        .subgroups
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.subgroup.is_trivial() && r.is_core_free())
        .min_by_key(|(_, r)| (r.index, r.fingerprint))
        .map(|(i, r)| (r.index, i));
    Ok(best.map(|(degree, subgroup)| TransitiveScan { degree, subgroup, lattice }))
}

/// `mu(G)` from the transitive scan alone. Only valid when `G` has a unique
/// minimal normal subgroup, since then every faithful collection contains a
/// core-free member.
pub fn certify_transitive(
    group: &PermGroup,
    label: &str,
    config: &SolverConfig,
    deadline: &Deadline,
) -> Result<MuCertificate> {
    let started = Instant::now();
    let normals = NormalLattice::compute(group, deadline)?;
    if normals.dim() != 1 {
        return Err(Error::Inapplicable(format!(
            "{label} has {} minimal normal subgroups; the transitive scan needs exactly one",
            normals.dim()
        )));
    }
    let trivial = group.trivial_subgroup();
    match mu_transitive(group, config, deadline)? {
        Some(scan) => {
            let s = &scan.lattice.subgroups[scan.subgroup].subgroup;
            let stats = SolveStats {
                subgroups: scan.lattice.len(),
                classes: scan.lattice.class_count(),
                universe: 1,
                ..SolveStats::default()
            };
            certificate(group, label, scan.degree, Method::TransitiveScan, &[s], config, started, stats)
        }
        None => certificate(
            group,
            label,
            group.order(),
            Method::TransitiveScan,
            &[&trivial],
            config,
            started,
            SolveStats::default(),
        ),
    }
}

/// `mu(G)` by the exhaustive oracle; orders up to [`NAIVE_CAP`] only.
pub fn certify_naive(group: &PermGroup, label: &str, config: &SolverConfig) -> Result<MuCertificate> {
    let started = Instant::now();
    let result = naive_search(group.degree(), group.generators())?;
    let subgroups: Vec<Subgroup> =
        result.witness.iter().map(|els| group.subgroup_from_perms(els)).collect::<Result<_>>()?;
    let refs: Vec<&Subgroup> = subgroups.iter().collect();
    certificate(group, label, result.mu, Method::Naive, &refs, config, started, SolveStats::default())
}

/// Independent check of a certificate against the group it claims to
/// describe: constituent orders and indices, the degree sum, faithfulness,
/// and for sandwich certificates the recorded lower bound.
pub fn verify_certificate(degree: usize, generators: &[Perm], cert: &MuCertificate) -> Result<()> {
    let fail = |msg: String| Err(Error::VerificationFailed(msg));
    let chain = StabChain::new(degree, generators);
    if chain.order() != u128::from(cert.order) {
        return fail(format!("group order is {}, certificate says {}", chain.order(), cert.order));
    }
    let sum: u64 = cert.witness.iter().map(|w| w.index).sum();
    if sum != cert.mu as u64 {
        return fail(format!("constituent indices sum to {sum}, not {}", cert.mu));
    }
    for w in &cert.witness {
        if let Some(g) = w.generators.iter().find(|g| !chain.contains(g)) {
            return fail(format!("witness generator {g} is not in the group"));
        }
        let order = StabChain::new(degree, &w.generators).order();
        if order != u128::from(w.order) || u128::from(w.order * w.index) != chain.order() {
            return fail(format!(
                "constituent of order {order} does not match order {} and index {}",
                w.order, w.index
            ));
        }
    }
    match cert.method {
        Method::Sandwich => verify_sandwich(degree, generators, &chain, cert),
        _ => {
            let group =
                PermGroup::generate(degree, generators.to_vec(), cert.config.materialize_cap.max(cert.order as usize))?;
            let subgroups: Vec<Subgroup> =
                cert.witness.iter().map(|w| group.subgroup_from_perms(&w.generators)).collect::<Result<_>>()?;
            check_faithful(&group, &subgroups.iter().collect::<Vec<_>>(), cert.mu)
        }
    }
}

fn verify_sandwich(degree: usize, generators: &[Perm], chain: &StabChain, cert: &MuCertificate) -> Result<()> {
    let fail = |msg: String| Err(Error::VerificationFailed(msg));
    let orbits = point_orbits(degree, generators);
    let mut used = vec![false; orbits.len()];
    for w in &cert.witness {
        let slot = orbits.iter().enumerate().position(|(k, orbit)| {
            !used[k]
                && orbit.len() as u64 == w.index
                && orbit.iter().any(|&x| w.generators.iter().all(|g| g.image(x) == x))
        });
        match slot {
            Some(k) => used[k] = true,
            None => return fail("a constituent is not a point stabilizer".into()),
        }
    }
    if used.iter().any(|u| !u) {
        return fail("the constituents miss a moved point, so the action is not faithful".into());
    }
    let Some(evidence) = &cert.lower_bound else {
        return fail("sandwich certificate has no lower bound".into());
    };
    if let Some(g) = evidence.subgroup_generators.iter().find(|g| !chain.contains(g)) {
        return fail(format!("lower-bound generator {g} is not in the group"));
    }
    if evidence.certificate.mu != cert.mu {
        return fail(format!("lower bound {} does not meet {}", evidence.certificate.mu, cert.mu));
    }
    verify_certificate(degree, &evidence.subgroup_generators, &evidence.certificate)
}
