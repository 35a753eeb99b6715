use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use mindeg_cli::json::{CertificateJson, FactorizationJson};
use mindeg_cli::{campaign, compute_mu, parse_spec, run_campaign, verify, MuOutcome, MuRequest, RunOptions, CAMPAIGNS};
use mindeg_core::construct;
use mindeg_core::ff::factor_cyclotomic;
use mindeg_core::group::DEFAULT_MATERIALIZE_CAP;
use mindeg_core::solver::{Method, SolverConfig, DEFAULT_LATTICE_CAP};

/// Exact minimal faithful permutation degrees.
#[derive(Parser)]
#[command(name = "mindeg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Limits {
    /// Largest group order that may be materialized.
    #[arg(long, default_value_t = DEFAULT_MATERIALIZE_CAP)]
    max_order: usize,
    /// Largest subgroup lattice that may be enumerated.
    #[arg(long, default_value_t = DEFAULT_LATTICE_CAP)]
    lattice_cap: usize,
    #[arg(long)]
    budget_seconds: Option<u64>,
    #[arg(long, env = "MINDEG_SEED", default_value_t = mindeg_core::ff::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group and print its order and generators.
    Construct {
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        limits: Limits,
        #[arg(long)]
        json: bool,
    },
    /// Compute mu and print or store its certificate.
    Mu {
        #[arg(long)]
        spec: String,
        /// exact, transitive, naive or sandwich.
        #[arg(long, default_value = "exact")]
        method: Method,
        /// Lower-bound subgroup for the sandwich method, on the same points.
        #[arg(long)]
        subgroup: Option<String>,
        #[command(flatten)]
        limits: Limits,
        #[arg(long)]
        json: bool,
        /// Directory receiving `<spec>.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Factor 1 + x + ... + x^(r-1) over F_p.
    FactorCyclotomic {
        r: u64,
        p: u64,
        #[arg(long, env = "MINDEG_SEED", default_value_t = mindeg_core::ff::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Re-check a stored certificate against the group it names.
    Verify { certificate: PathBuf },
    /// Run a campaign and write `<out>/<campaign>.csv` and its certificates.
    Report {
        campaign: String,
        #[arg(long, default_value = "report")]
        out: PathBuf,
        #[command(flatten)]
        limits: Limits,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn config(limits: &Limits) -> SolverConfig {
    SolverConfig { materialize_cap: limits.max_order, lattice_cap: limits.lattice_cap, seed: limits.seed }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Construct { spec, limits, json } => {
            let spec = parse_spec(&spec)?;
            let c = construct(&spec, limits.max_order)?;
            if json {
                let doc = serde_json::json!({
                    "group": spec.to_string(),
                    "order": c.group.order(),
                    "degree": c.group.degree(),
                    "generators": c.group.generators().iter().map(|g| g.images().to_vec()).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                println!("{spec}: order {}, degree {}", c.group.order(), c.group.degree());
                for g in c.group.generators() {
                    println!("  {g}");
                }
            }
        }
        Command::Mu { spec, method, subgroup, limits, json, out } => {
            let spec = parse_spec(&spec)?;
            let req = MuRequest {
                spec: spec.clone(),
                method,
                subgroup: subgroup.as_deref().map(parse_spec).transpose()?,
                config: config(&limits),
                budget: limits.budget_seconds.map(Duration::from_secs),
            };
            match compute_mu(&req)? {
                MuOutcome::Certified(cert) => {
                    let doc = CertificateJson::from(&cert);
                    if let Some(dir) = out {
                        fs::create_dir_all(&dir)?;
                        let path = dir.join(format!("{spec}.json"));
                        fs::write(&path, serde_json::to_string_pretty(&doc)? + "\n")?;
                        eprintln!("wrote {}", path.display());
                    }
                    if json {
                        println!("{}", serde_json::to_string_pretty(&doc)?);
                    } else {
                        println!(
                            "mu({spec}) = {} [{}, {:.1} ms]",
                            cert.mu,
                            cert.method,
                            cert.elapsed.as_secs_f64() * 1e3
                        );
                        for w in &cert.witness {
                            println!("  constituent of order {} and index {}", w.order, w.index);
                        }
                    }
                }
                MuOutcome::Interval { lower, upper, .. } => {
                    println!("{lower} <= mu({spec}) <= {upper} (inconclusive)");
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::FactorCyclotomic { r, p, seed, json } => {
            let f = factor_cyclotomic(r, p, seed)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&FactorizationJson::from(&f))?);
            } else {
                println!("Q_{r} over F_{p}: {} factors of degree {}", f.l, f.d);
                for g in &f.factors {
                    println!("  {g}");
                }
            }
        }
        Command::Verify { certificate } => {
            let text =
                fs::read_to_string(&certificate).with_context(|| format!("reading {}", certificate.display()))?;
            let doc: CertificateJson = serde_json::from_str(&text)?;
            let cert = doc.to_certificate()?;
            match verify(&cert) {
                Ok(()) => println!("ok: mu({}) = {} [{}]", cert.group, cert.mu, cert.method),
                Err(e) => {
                    println!("rejected: {e}");
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Report { campaign: id, out, limits } => {
            let Some(c) = campaign(&id) else {
                bail!("unknown campaign {id:?}; expected one of {}", CAMPAIGNS.join(", "));
            };
            let opts = RunOptions {
                seed: limits.seed,
                budget: limits.budget_seconds.map(Duration::from_secs),
                materialize_cap: limits.max_order,
                lattice_cap: (limits.lattice_cap != DEFAULT_LATTICE_CAP).then_some(limits.lattice_cap),
            };
            let report = run_campaign(&c, &opts, Some(&out))?;
            for row in &report.rows {
                println!("{:<24} {:<40} {}", row.family, row.parameters, row.status);
            }
            let failures = report.failures();
            println!(
                "{} rows, {failures} failed; report in {}",
                report.rows.len(),
                out.join(format!("{id}.csv")).display()
            );
            if failures > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
