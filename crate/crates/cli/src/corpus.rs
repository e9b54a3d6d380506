//! The bundled example corpus and its expectation checks.

use rayon::prelude::*;
use serde::Serialize;

use crate::problem::{Analysis, InputError, Problem};
use crate::report::{Report, Status};
use crate::runner::{run, RunConfig};

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name, ".toml")))),*]
    };
}

/// `(name, TOML source)` of every bundled problem, sorted by name.
pub const BUNDLED: &[(&str, &str)] = bundled![
    "cusp_char0",
    "cusp_char2",
    "cylinder_char0",
    "shifted_cusp_char0",
    "y2x3_char3",
    "y2x5_char0",
    "y2x5_char2",
    "y2x5_char3",
    "y3x4_char0",
    "y3x4_char2",
    "y3x4_char3",
    "y3x5_char0",
    "y3x5_char2",
    "y3x5_char3",
];

pub fn bundled_problem(name: &str) -> Option<Problem> {
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, src)| Problem::parse(src).expect("bundled problems parse"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub item: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub pass: bool,
    #[serde(skip)]
    pub report: Report,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub filter: String,
    pub entries: Vec<CorpusEntry>,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl CorpusSummary {
    pub fn exit_code(&self) -> i32 {
        self.entries
            .iter()
            .filter(|e| !e.pass)
            .map(|e| e.report.exit_code().max(1))
            .max()
            .unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!("{:<22} {}\n", e.name, if e.pass { "PASS" } else { "FAIL" }));
            for c in &e.checks {
                out.push_str(&format!(
                    "    {:<28} expected {:<20} computed {:<20} {}\n",
                    c.item,
                    c.expected,
                    c.computed,
                    if c.ok { "ok" } else { "MISMATCH" }
                ));
            }
            for err in &e.report.errors {
                out.push_str(&format!("    error: {}\n", err.message));
            }
        }
        if let Some(w) = &self.warning {
            out.push_str(&format!("warning: {w}\n"));
        }
        out.push_str(&format!(
            "{} problems, {} passed, {} failed\n",
            self.entries.len(),
            self.passed,
            self.failed
        ));
        out
    }
}

fn check(item: impl Into<String>, expected: &str, computed: Option<String>) -> Check {
    let computed = computed.unwrap_or_else(|| "missing".into());
    Check {
        item: item.into(),
        expected: expected.to_string(),
        ok: computed == expected,
        computed,
    }
}

/// Compares the golden values of `problem` against `report`.
/// Only values of analyses that ran are compared.
pub fn check_expectations(problem: &Problem, report: &Report) -> Vec<Check> {
    let ex = &problem.expect;
    let ran = |a: Analysis| report.problem.analyses.iter().any(|n| n == a.name());
    let (nash_ran, contact_ran) = (ran(Analysis::Nash), ran(Analysis::Contact));
    let mut checks = Vec::new();
    if let Some(m) = ex.multiplicity {
        checks.push(check(
            "multiplicity",
            &m.to_string(),
            report.multiplicity.map(|m| m.to_string()),
        ));
    }
    if ran(Analysis::OrdD) {
        if let Some(v) = &ex.ord_d {
            checks.push(check("ord_d", v, report.ord_d.as_ref().map(|o| o.value.clone())));
        }
        if let Some(v) = &ex.method {
            checks.push(check("method", v, report.ord_d.as_ref().map(|o| o.method.clone())));
        }
    }
    if let (true, Some(v)) = (ran(Analysis::Verify), &ex.verdict) {
        checks.push(check("verdict", v, report.verify.as_ref().map(|o| o.verdict.clone())));
    }
    for (name, ae) in &ex.arcs {
        let arc = report.arcs.iter().find(|a| &a.name == name);
        let nash = arc.and_then(|a| a.nash.as_ref());
        let contact = arc.and_then(|a| a.contact.as_ref());
        if let (true, Some(s)) = (nash_ran, &ae.sequence) {
            checks.push(check(
                format!("{name}.sequence"),
                &format!("{s:?}"),
                nash.map(|n| format!("{:?}", n.sequence)),
            ));
        }
        if let Some(rho) = ae.rho {
            let expected = rho.to_string();
            if nash_ran {
                checks.push(check(
                    format!("{name}.rho (nash)"),
                    &expected,
                    nash.and_then(|n| n.rho).map(|r| r.to_string()),
                ));
            }
            if contact_ran {
                checks.push(check(
                    format!("{name}.rho (contact)"),
                    &expected,
                    contact.map(|c| c.rho.clone()),
                ));
            }
        }
        if !contact_ran {
            continue;
        }
        if let Some(r) = &ae.r {
            checks.push(check(format!("{name}.r"), r, contact.map(|c| c.r.clone())));
        }
        if let Some(rb) = &ae.r_bar {
            checks.push(check(format!("{name}.r_bar"), rb, contact.map(|c| c.r_bar.clone())));
        }
    }
    checks
}

/// Runs every bundled problem whose name matches the glob `filter`,
/// concurrently, and checks its expectations.
pub fn run_corpus(filter: &str, cfg: &RunConfig) -> Result<CorpusSummary, InputError> {
    let pattern = glob::Pattern::new(filter).map_err(|e| InputError {
        message: format!("invalid filter '{filter}': {e}"),
        line: None,
        column: Some(e.pos + 1),
    })?;
    let selected: Vec<&(&str, &str)> = BUNDLED.iter().filter(|(n, _)| pattern.matches(n)).collect();
    let entries: Vec<CorpusEntry> = selected
        .par_iter()
        .map(|(name, src)| {
            let problem = Problem::parse(src).expect("bundled problems parse");
            let report = run(&problem, cfg);
            CorpusEntry {
                name: name.to_string(),
                status: report.status,
                checks: report.checks.clone(),
                pass: report.status == Status::Pass,
                report,
            }
        })
        .collect();
    let passed = entries.iter().filter(|e| e.pass).count();
    Ok(CorpusSummary {
        filter: filter.to_string(),
        failed: entries.len() - passed,
        passed,
        warning: entries
            .is_empty()
            .then(|| format!("no bundled problem matches '{filter}'")),
        entries,
    })
}
