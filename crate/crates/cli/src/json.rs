//! On-disk forms of certificates and factorizations. Permutations are
//! stored as image lists on points `0..degree`.

use std::time::Duration;

use mindeg_core::ff::CyclotomicFactorization;
use mindeg_core::solver::{LowerBoundEvidence, Method, MuCertificate, SolveStats, SolverConfig, WitnessSubgroup};
use mindeg_core::Perm;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub group: String,
    pub order: u64,
    pub degree: usize,
    pub mu: usize,
    pub method: String,
    pub witness: Vec<WitnessJson>,
    pub lower_bound_evidence: Option<Box<LowerBoundJson>>,
    pub seed: u64,
    pub config: ConfigJson,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub generators: Vec<Vec<u32>>,
    pub order: u64,
    pub index: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundJson {
    pub subgroup_generators: Vec<Vec<u32>>,
    pub certificate: CertificateJson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub materialize_cap: usize,
    pub lattice_cap: usize,
    pub seed: u64,
}

fn perms_out(perms: &[Perm]) -> Vec<Vec<u32>> {
    perms.iter().map(|p| p.images().to_vec()).collect()
}

fn perms_in(images: &[Vec<u32>]) -> mindeg_core::Result<Vec<Perm>> {
    images.iter().map(|v| Perm::from_images(v.iter().map(|&x| x as usize).collect())).collect()
}

impl From<&MuCertificate> for CertificateJson {
    fn from(c: &MuCertificate) -> CertificateJson {
        CertificateJson {
            group: c.group.clone(),
            order: c.order,
            degree: c.degree,
            mu: c.mu,
            method: c.method.name().to_string(),
            witness: c
                .witness
                .iter()
                .map(|w| WitnessJson { generators: perms_out(&w.generators), order: w.order, index: w.index })
                .collect(),
            lower_bound_evidence: c.lower_bound.as_ref().map(|lb| {
                Box::new(LowerBoundJson {
                    subgroup_generators: perms_out(&lb.subgroup_generators),
                    certificate: CertificateJson::from(&lb.certificate),
                })
            }),
            seed: c.config.seed,
            config: ConfigJson {
                materialize_cap: c.config.materialize_cap,
                lattice_cap: c.config.lattice_cap,
                seed: c.config.seed,
            },
            elapsed_ms: c.elapsed.as_secs_f64() * 1e3,
        }
    }
}

impl CertificateJson {
    pub fn to_certificate(&self) -> mindeg_core::Result<MuCertificate> {
        let witness = self
            .witness
            .iter()
            .map(|w| Ok(WitnessSubgroup { generators: perms_in(&w.generators)?, order: w.order, index: w.index }))
            .collect::<mindeg_core::Result<Vec<_>>>()?;
        let lower_bound = match &self.lower_bound_evidence {
            Some(lb) => Some(Box::new(LowerBoundEvidence {
                subgroup_generators: perms_in(&lb.subgroup_generators)?,
                certificate: lb.certificate.to_certificate()?,
            })),
            None => None,
        };
        Ok(MuCertificate {
            group: self.group.clone(),
            order: self.order,
            degree: self.degree,
            mu: self.mu,
            method: self.method.parse::<Method>()?,
            witness,
            lower_bound,
            config: SolverConfig {
                materialize_cap: self.config.materialize_cap,
                lattice_cap: self.config.lattice_cap,
                seed: self.config.seed,
            },
            elapsed: Duration::from_secs_f64(self.elapsed_ms.max(0.0) / 1e3),
            stats: SolveStats::default(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationJson {
    pub r: u64,
    pub p: u64,
    pub d: u64,
    pub l: u64,
    /// Coefficients from the constant term up.
    pub factors: Vec<Vec<u64>>,
    pub seed: u64,
}

impl From<&CyclotomicFactorization> for FactorizationJson {
    fn from(f: &CyclotomicFactorization) -> FactorizationJson {
        FactorizationJson {
            r: f.r,
            p: f.p,
            d: f.d,
            l: f.l,
            factors: f.factors.iter().map(|g| g.coeffs().to_vec()).collect(),
            seed: f.seed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mindeg_core::solver::{mu_exact, verify_certificate};
    use mindeg_core::{construct, Deadline, GroupSpec};

    #[test]
    fn certificates_round_trip_through_json() {
        let spec = GroupSpec::Dihedral(6);
        let g = construct(&spec, 1000).unwrap().group;
        let cert = mu_exact(&g, "D(6)", &SolverConfig::default(), &Deadline::none()).unwrap();
        let json = serde_json::to_string(&CertificateJson::from(&cert)).unwrap();
        let back: CertificateJson = serde_json::from_str(&json).unwrap();
        let reloaded = back.to_certificate().unwrap();
        assert_eq!(reloaded.mu, 5);
        assert_eq!(reloaded.witness, cert.witness);
        verify_certificate(g.degree(), g.generators(), &reloaded).unwrap();
    }
}
