use std::fs;
use std::path::PathBuf;

use mindeg_cli::json::CertificateJson;
use mindeg_cli::{campaign, run_campaign, verify, Report, RunOptions};

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mindeg-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    dir
}

fn without_elapsed(report: &Report) -> String {
    let csv = report.to_csv().unwrap();
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let skip = headers.iter().position(|h| h == "elapsed_ms").unwrap();
    reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            r.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, f)| f).collect::<Vec<_>>().join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn reports_are_reproducible() {
    for id in ["products", "gppq", "cyclotomic"] {
        let c = campaign(id).unwrap();
        let opts = RunOptions::default();
        let a = run_campaign(&c, &opts, None).unwrap();
        let b = run_campaign(&c, &opts, None).unwrap();
        assert_eq!(without_elapsed(&a), without_elapsed(&b), "{id}");
    }
}

#[test]
fn csv_header_follows_the_row_layout() {
    let c = campaign("products").unwrap();
    let csv = run_campaign(&c, &RunOptions::default(), None).unwrap().to_csv().unwrap();
    assert_eq!(
        csv.lines().next().unwrap(),
        "family,parameters,order,degree,mu_predicted,mu_computed,method,relation,status,elapsed_ms,certificate"
    );
    assert!(csv.contains("strict (15 vs 20),pass"), "{csv}");
}

#[test]
fn stored_certificates_reverify() {
    let out = scratch_dir("certs");
    for id in ["gppq", "products", "hpq"] {
        let report = run_campaign(&campaign(id).unwrap(), &RunOptions::default(), Some(&out)).unwrap();
        assert_eq!(report.failures(), 0);
        assert!(out.join(format!("{id}.csv")).exists());
        for row in report.rows.iter().filter(|r| r.passed()) {
            let text = fs::read_to_string(out.join(&row.certificate)).unwrap();
            let doc: CertificateJson = serde_json::from_str(&text).unwrap();
            let value: serde_json::Value = serde_json::from_str(&text).unwrap();
            for key in [
                "group",
                "order",
                "degree",
                "mu",
                "method",
                "witness",
                "lower_bound_evidence",
                "seed",
                "config",
                "elapsed_ms",
            ] {
                assert!(value.get(key).is_some(), "{key} missing from {}", row.certificate);
            }
            verify(&doc.to_certificate().unwrap()).unwrap();
        }
    }
    fs::remove_dir_all(&out).unwrap();
}

#[test]
fn tampered_certificates_are_rejected() {
    let out = scratch_dir("tamper");
    run_campaign(&campaign("products").unwrap(), &RunOptions::default(), Some(&out)).unwrap();
    let text = fs::read_to_string(out.join("products/Wr(5,3).json")).unwrap();
    let mut doc: CertificateJson = serde_json::from_str(&text).unwrap();
    doc.mu -= 1;
    doc.witness[0].index -= 1;
    assert!(verify(&doc.to_certificate().unwrap()).is_err());
    fs::remove_dir_all(&out).unwrap();
}
