//! Dispatch from a spec and a method to a certified `mu`.

use std::time::Duration;

use mindeg_core::solver::{
    certify_naive, certify_sandwich, certify_transitive, mu_exact, Method, MuCertificate, SandwichOutcome, SolverConfig,
};
use mindeg_core::{construct, Deadline, Error, GroupSpec, Result};

#[derive(Debug, Clone)]
pub struct MuRequest {
    pub spec: GroupSpec,
    pub method: Method,
    /// Lower-bound subgroup for the sandwich method, realized on the same points.
    pub subgroup: Option<GroupSpec>,
    pub config: SolverConfig,
    pub budget: Option<Duration>,
}

impl MuRequest {
    pub fn new(spec: GroupSpec, method: Method) -> MuRequest {
        MuRequest { spec, method, subgroup: None, config: SolverConfig::default(), budget: None }
    }
}

#[derive(Debug, Clone)]
pub enum MuOutcome {
    Certified(MuCertificate),
    /// The sandwich only bounded `mu` from both sides.
    Interval {
        lower: usize,
        upper: usize,
        subgroup_certificate: MuCertificate,
    },
}

pub fn compute_mu(req: &MuRequest) -> Result<MuOutcome> {
    let deadline = req.budget.map_or_else(Deadline::none, Deadline::after);
    let label = req.spec.to_string();
    if req.method == Method::Sandwich {
        let sub = req
            .subgroup
            .as_ref()
            .ok_or_else(|| Error::SpecInvalid("the sandwich method needs a subgroup spec".into()))?;
        let (degree, gens, _) = req.spec.realize()?;
        let (sub_degree, sub_gens, _) = sub.realize()?;
        if sub_degree != degree {
            return Err(Error::SpecInvalid(format!("{sub} lives on {sub_degree} points, {label} on {degree}")));
        }
        let out = certify_sandwich(&label, degree, &gens, &sub.to_string(), &sub_gens, &req.config, &deadline)?;
        return Ok(match out {
            SandwichOutcome::Certified(c) => MuOutcome::Certified(c),
            SandwichOutcome::Inconclusive { lower, upper, subgroup_certificate } => {
                MuOutcome::Interval { lower, upper, subgroup_certificate }
            }
        });
    }
    let group = construct(&req.spec, req.config.materialize_cap)?.group;
    let cert = match req.method {
        Method::ExactCover => mu_exact(&group, &label, &req.config, &deadline)?,
        Method::TransitiveScan => certify_transitive(&group, &label, &req.config, &deadline)?,
        Method::Naive => certify_naive(&group, &label, &req.config)?,
        Method::Sandwich => unreachable!(),
    };
    Ok(MuOutcome::Certified(cert))
}

/// Re-checks a certificate against the group named in its `group` field.
pub fn verify(cert: &MuCertificate) -> Result<()> {
    let spec = crate::parse::parse_spec(&cert.group).map_err(|e| Error::SpecInvalid(e.to_string()))?;
    let (degree, gens, _) = spec.realize()?;
    if degree != cert.degree {
        return Err(Error::VerificationFailed(format!(
            "{} has degree {degree}, certificate says {}",
            cert.group, cert.degree
        )));
    }
    mindeg_core::solver::verify_certificate(degree, &gens, cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn methods_agree_where_they_apply() {
        let spec = GroupSpec::Symmetric(4);
        let mut values = Vec::new();
        for method in [Method::ExactCover, Method::TransitiveScan, Method::Naive] {
            let MuOutcome::Certified(c) = compute_mu(&MuRequest::new(spec.clone(), method)).unwrap() else {
                panic!("{method} is not a bounding method");
            };
            verify(&c).unwrap();
            values.push(c.mu);
        }
        let mut req = MuRequest::new(spec, Method::Sandwich);
        req.subgroup = Some(GroupSpec::Abelian(vec![2, 2]));
        let MuOutcome::Certified(c) = compute_mu(&req).unwrap() else { panic!("C2 x C2 has mu 4") };
        verify(&c).unwrap();
        values.push(c.mu);
        assert_eq!(values, vec![4, 4, 4, 4]);
    }

    #[test]
    fn sandwich_needs_a_subgroup() {
        let req = MuRequest::new(GroupSpec::Symmetric(4), Method::Sandwich);
        assert!(matches!(compute_mu(&req), Err(Error::SpecInvalid(_))));
    }
}
