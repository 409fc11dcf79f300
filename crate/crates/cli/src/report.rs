//! Report payloads for `analyze` and `verify`.

use std::fmt::Write as _;

use serde::Serialize;
use topsym_core::symmetry::RolledReport;
use topsym_core::{ActionReport, BettiTable, CheckStatus, SymmetryVerdict};

#[derive(Clone, Debug, Serialize)]
pub struct RolledJson {
    pub modulus: usize,
    pub entries: Vec<usize>,
    pub verdict: SymmetryVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeJson {
    pub name: String,
    pub betti_positive: Vec<(i64, usize)>,
    pub betti_negative: Vec<(i64, usize)>,
    pub verdict_positive: SymmetryVerdict,
    pub verdict_negative: SymmetryVerdict,
    pub duality: CheckStatus,
    pub factor2: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rolled: Option<RolledJson>,
}

impl AnalyzeJson {
    pub fn new(name: &str, report: &ActionReport) -> Self {
        Self {
            name: name.to_string(),
            betti_positive: report.positive.hull_entries(),
            betti_negative: report.negative.hull_entries(),
            verdict_positive: report.verdict_positive.clone(),
            verdict_negative: report.verdict_negative.clone(),
            duality: report.duality,
            factor2: report.factor2.status,
            rolled: report
                .rolled
                .as_ref()
                .map(|RolledReport { table, verdict }| RolledJson {
                    modulus: table.modulus,
                    entries: table.entries.clone(),
                    verdict: verdict.clone(),
                }),
        }
    }
}

fn format_table(t: &BettiTable) -> String {
    let entries = t.hull_entries();
    if entries.is_empty() {
        return "0".into();
    }
    entries
        .iter()
        .map(|(k, d)| format!("{k}:{d}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn analyze_text(name: &str, report: &ActionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{name}");
    let _ = writeln!(out, "  H_*(W, P)   {}", format_table(&report.positive));
    let _ = writeln!(out, "  H_*(W, Nn)  {}", format_table(&report.negative));
    let _ = writeln!(out, "  (W, P)   {}", report.verdict_positive);
    let _ = writeln!(out, "  (W, Nn)  {}", report.verdict_negative);
    let _ = writeln!(out, "  duality   {}", report.duality);
    let _ = writeln!(out, "  factor-2  {}", report.factor2.status);
    if let Some(r) = &report.rolled {
        let _ = writeln!(
            out,
            "  rolled mod {}  {:?}  {}",
            r.table.modulus, r.table.entries, r.verdict
        );
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyJson {
    pub name: String,
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
}

pub fn verify_text(report: &VerifyJson) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", report.name);
    for s in &report.suites {
        let _ = writeln!(
            out,
            "  {:<16} {:<14} {}",
            s.suite,
            s.status.to_string(),
            s.detail
        );
    }
    let _ = writeln!(
        out,
        "  {}",
        if report.passed {
            "all suites passed"
        } else {
            "IDENTITY FAILURE"
        }
    );
    out
}
