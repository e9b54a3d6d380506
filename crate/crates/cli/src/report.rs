//! Serializable reports. Exact rationals are written as `"p/q"` in lowest
//! terms, infinity as `"inf"`.

use std::fmt::Write as _;

use serde::Serialize;

use nashorder_core::blowup::NashStep;
use nashorder_core::contact::PhiSample;
use nashorder_core::elimination::{ArcCheck, ProjectionCheck};
use nashorder_core::{ContactResult, EliminationResult, Error, NashReport, TheoremReport};

use crate::corpus::Check;
use crate::problem::{Analysis, Problem, ResolvedOptions};

pub const ENGINE: &str = concat!("nashorder ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    Input,
    Engine,
}

pub fn classify(e: &Error) -> ErrorKind {
    match e {
        Error::PrecisionExhausted { .. }
        | Error::DivisionOrderError { .. }
        | Error::StepLimit { .. }
        | Error::NotPermissible { .. }
        | Error::CharDividesDegree { .. }
        | Error::NoRationalUnit(_)
        | Error::EmptySample => ErrorKind::Engine,
        _ => ErrorKind::Input,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorEntry {
    pub analysis: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arc: Option<String>,
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
    Error,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArcEcho {
    pub name: String,
    pub series: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParametrizationEcho {
    pub parameter: String,
    pub images: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProblemEcho {
    pub name: String,
    pub characteristic: u64,
    pub variables: Vec<String>,
    pub equation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber: Option<String>,
    pub center: Vec<i64>,
    pub analyses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parametrization: Option<ParametrizationEcho>,
    pub arcs: Vec<ArcEcho>,
    pub options: ResolvedOptions,
}

impl ProblemEcho {
    pub fn new(p: &Problem, analyses: &[Analysis], options: ResolvedOptions) -> Self {
        ProblemEcho {
            name: p.name.clone(),
            characteristic: p.field.characteristic(),
            variables: p.vars.clone(),
            equation: p.equation_text.clone(),
            fiber: p.fiber.clone(),
            center: p.center_ints.clone(),
            analyses: analyses.iter().map(|a| a.name().to_string()).collect(),
            parametrization: p.parametrization.as_ref().map(|(s, imgs)| ParametrizationEcho {
                parameter: s.clone(),
                images: imgs.clone(),
            }),
            arcs: p
                .arcs
                .iter()
                .map(|a| ArcEcho {
                    name: a.name.clone(),
                    series: a.series.clone(),
                })
                .collect(),
            options,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceRow {
    pub step: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chart: Option<String>,
    pub center: String,
    pub transform: String,
    pub multiplicity: u64,
}

impl From<&NashStep> for TraceRow {
    fn from(s: &NashStep) -> Self {
        TraceRow {
            step: s.step,
            chart: s.chart.clone(),
            center: s.center.to_string(),
            transform: s.transform.to_string(),
            multiplicity: s.multiplicity,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NashOut {
    pub sequence: Vec<u64>,
    pub rho: Option<u64>,
    pub truncated: bool,
    pub below_threshold: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceRow>>,
}

impl NashOut {
    pub fn new(r: &NashReport, trace: bool) -> Self {
        NashOut {
            sequence: r.sequence.clone(),
            rho: r.rho,
            truncated: r.truncated,
            below_threshold: r.below_threshold,
            trace: trace.then(|| r.trace.iter().map(TraceRow::from).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContactOut {
    pub r: String,
    pub nu: u64,
    pub r_bar: String,
    pub rho: String,
    pub per_generator: Vec<GeneratorOrder>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorOrder {
    pub generator: String,
    pub order: String,
}

impl ContactOut {
    pub fn new(c: &ContactResult, algebra: &nashorder_core::ReesAlgebra) -> Self {
        ContactOut {
            r: c.r.to_string(),
            nu: c.nu,
            r_bar: c.r_bar.to_string(),
            rho: c.rho.to_string(),
            per_generator: c
                .per_generator
                .iter()
                .map(|(i, o)| GeneratorOrder {
                    generator: algebra.generators()[*i].to_string(),
                    order: o.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArcOut {
    pub name: String,
    pub arc: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nash: Option<NashOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contact: Option<ContactOut>,
    /// Persistence from the blow-up engine equals `⌊r⌋`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub persistence_matches: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrdDOut {
    pub value: String,
    pub method: String,
    pub algebra: String,
    pub center: String,
}

impl From<&EliminationResult> for OrdDOut {
    fn from(e: &EliminationResult) -> Self {
        OrdDOut {
            value: e.ord_d.to_string(),
            method: e.method.to_string(),
            algebra: e.algebra.to_string(),
            center: e.center.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckedArc {
    pub arc: String,
    pub source: String,
    pub r: String,
    pub nu: u64,
    pub r_bar: String,
}

impl From<&ArcCheck> for CheckedArc {
    fn from(c: &ArcCheck) -> Self {
        CheckedArc {
            arc: c.arc.to_string(),
            source: format!("{:?}", c.origin).to_lowercase(),
            r: c.contact.r.to_string(),
            nu: c.contact.nu,
            r_bar: c.contact.r_bar.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionOut {
    pub contact_full: String,
    pub contact_base: String,
    pub nu_full: u64,
    pub nu_base: u64,
    pub holds: bool,
}

impl From<&ProjectionCheck> for ProjectionOut {
    fn from(p: &ProjectionCheck) -> Self {
        ProjectionOut {
            contact_full: p.contact_full.to_string(),
            contact_base: p.contact_base.to_string(),
            nu_full: p.nu_full,
            nu_base: p.nu_base,
            holds: p.holds(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleOut {
    pub monomial_admitted: usize,
    pub random_admitted: usize,
    pub random_draws: usize,
    pub exponent_bound: u32,
    pub seed: u64,
    pub values: Vec<String>,
}

impl From<&PhiSample> for SampleOut {
    fn from(s: &PhiSample) -> Self {
        SampleOut {
            monomial_admitted: s.monomial_admitted,
            random_admitted: s.random_admitted,
            random_draws: s.random_draws,
            exponent_bound: s.config.exponent_bound,
            seed: s.config.seed,
            values: s.values.iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOut {
    pub verdict: String,
    pub ord_d: String,
    pub observed_min: String,
    pub arcs_checked: usize,
    pub lower_bound: bool,
    pub witness: Option<CheckedArc>,
    pub projection: Option<ProjectionOut>,
    pub minimizing_arc: String,
    pub minimizing_r_bar: String,
    pub candidates: Vec<CheckedArc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample: Option<SampleOut>,
}

impl From<&TheoremReport> for VerifyOut {
    fn from(t: &TheoremReport) -> Self {
        VerifyOut {
            verdict: t.verdict.to_string(),
            ord_d: t.elimination.ord_d.to_string(),
            observed_min: t.observed_min.to_string(),
            arcs_checked: t.arcs_checked,
            lower_bound: t.lower_bound,
            witness: t.witness.as_ref().map(CheckedArc::from),
            projection: t.projection.as_ref().map(ProjectionOut::from),
            minimizing_arc: t.minimizing_arc.to_string(),
            minimizing_r_bar: t.minimizing_r_bar.to_string(),
            candidates: t.candidates.iter().map(CheckedArc::from).collect(),
            sample: t.sample.as_ref().map(SampleOut::from),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub engine: String,
    pub problem: ProblemEcho,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contact_algebra: Option<String>,
    pub arcs: Vec<ArcOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ord_d: Option<OrdDOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyOut>,
    pub errors: Vec<ErrorEntry>,
    /// Comparisons against the problem's `[expect]` table.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    pub status: Status,
}

impl Report {
    /// 0 success, 1 verification failure, 2 input error, 3 engine error.
    pub fn exit_code(&self) -> i32 {
        if self.errors.iter().any(|e| e.kind == ErrorKind::Input) {
            2
        } else if !self.errors.is_empty() {
            3
        } else if self.status == Status::Fail {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let p = &self.problem;
        let _ = writeln!(out, "{}  [{}]", p.name, self.engine);
        let field = if p.characteristic == 0 {
            "Q".to_string()
        } else {
            format!("F_{}", p.characteristic)
        };
        let _ = writeln!(
            out,
            "  X: {} = 0 over {field} in ({})",
            p.equation,
            p.variables.join(", ")
        );
        if let Some(m) = self.multiplicity {
            let _ = writeln!(out, "  multiplicity at center {:?}: {m}", p.center);
        }
        if let Some(g) = &self.contact_algebra {
            let _ = writeln!(out, "  G = {g}");
        }
        if self.arcs.iter().any(|a| a.nash.is_some() || a.contact.is_some()) {
            let name_w = self.arcs.iter().map(|a| a.name.len()).max().unwrap_or(0).max(3);
            let arc_w = self
                .arcs
                .iter()
                .map(|a| a.arc.chars().count())
                .max()
                .unwrap_or(0)
                .max(6);
            let seq_w = self
                .arcs
                .iter()
                .filter_map(|a| a.nash.as_ref())
                .map(|n| format!("{:?}", n.sequence).len() + 1)
                .max()
                .unwrap_or(0)
                .max(4);
            let _ = writeln!(
                out,
                "  {:<name_w$} {:<arc_w$} {:<seq_w$} {:>5} {:>6} {:>3} {:>6} {:>5}",
                "arc", "series", "nash", "rho", "r", "nu", "r_bar", "match"
            );
            for a in &self.arcs {
                let (seq, rho) = match &a.nash {
                    Some(n) => (
                        format!("{:?}{}", n.sequence, if n.truncated { "+" } else { "" }),
                        n.rho.map_or("-".to_string(), |r| r.to_string()),
                    ),
                    None => ("-".into(), "-".into()),
                };
                let (r, nu, rb) = match &a.contact {
                    Some(c) => (c.r.clone(), c.nu.to_string(), c.r_bar.clone()),
                    None => ("-".into(), "-".into(), "-".into()),
                };
                let m = a.persistence_matches.map_or("-", |b| if b { "yes" } else { "NO" });
                let _ = writeln!(
                    out,
                    "  {:<name_w$} {:<arc_w$} {:<seq_w$} {:>5} {:>6} {:>3} {:>6} {:>5}",
                    a.name, a.arc, seq, rho, r, nu, rb, m
                );
            }
        }
        if let Some(o) = &self.ord_d {
            let _ = writeln!(out, "  ord_d = {} via {} from {}", o.value, o.method, o.algebra);
        }
        if let Some(v) = &self.verify {
            let _ = writeln!(
                out,
                "  verify: {}  min r_bar = {} over {} arcs, ord_d = {}, minimizing base arc {} gives {}",
                v.verdict, v.observed_min, v.arcs_checked, v.ord_d, v.minimizing_arc, v.minimizing_r_bar
            );
            if let Some(w) = &v.witness {
                let _ = writeln!(out, "    witness {} ({}): r = {}, nu = {}", w.arc, w.source, w.r, w.nu);
            }
        }
        for c in self.checks.iter().filter(|c| !c.ok) {
            let _ = writeln!(
                out,
                "  mismatch in {}: expected {}, computed {}",
                c.item, c.expected, c.computed
            );
        }
        for e in &self.errors {
            let arc = e.arc.as_ref().map(|a| format!(" [{a}]")).unwrap_or_default();
            let kind = if e.kind == ErrorKind::Input { "input" } else { "engine" };
            let _ = writeln!(out, "  {kind} error in {}{arc}: {}", e.analysis, e.message);
        }
        let _ = writeln!(out, "  status: {}", self.status);
        out
    }
}
