//! Spec parsing, certificate files and campaign reports on top of
//! `mindeg-core`.

pub mod campaign;
pub mod catalog;
pub mod compute;
pub mod json;
pub mod parse;

pub use campaign::{campaign, run_campaign, Campaign, Report, ReportRow, RunOptions, CAMPAIGNS};
pub use compute::{compute_mu, verify, MuOutcome, MuRequest};
pub use parse::{parse_spec, ParseError};
