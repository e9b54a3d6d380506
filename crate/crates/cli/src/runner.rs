//! Runs the requested analyses of a problem and assembles the report.

use rayon::prelude::*;

use nashorder_core::blowup::{nash_sequence, NashOptions};
use nashorder_core::contact::{normalized_contact, ArcSampler, SamplerConfig};
use nashorder_core::elimination::{ord_d, verify_main_theorem, MonicPresentation, Verdict};
use nashorder_core::{Error, MultiPoly, Order, Point, ReesAlgebra};

use crate::corpus::check_expectations;
use crate::problem::{Analysis, NamedArc, Options, Problem, ResolvedOptions};
use crate::report::{
    classify, ArcOut, ContactOut, ErrorEntry, NashOut, OrdDOut, ProblemEcho, Report, Status, VerifyOut, ENGINE,
};

#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    /// Replaces the problem's own analysis list.
    pub analyses: Option<Vec<Analysis>>,
    /// Overrides the problem's options.
    pub options: Options,
    pub trace: bool,
}

fn entry(analysis: Analysis, arc: Option<&str>, e: &Error) -> ErrorEntry {
    ErrorEntry {
        analysis: analysis.name().to_string(),
        arc: arc.map(str::to_string),
        kind: classify(e),
        message: e.to_string(),
    }
}

fn on_variety(f: &MultiPoly, a: &NamedArc) -> Result<(), Error> {
    let image = a.arc.substitute(f)?;
    match image.order()? {
        Order::Infinite => Ok(()),
        Order::Finite(_) => Err(Error::ArcNotOnVariety(image.to_string())),
    }
}

struct ArcRun {
    out: ArcOut,
    errors: Vec<ErrorEntry>,
}

fn run_arc(
    f: &MultiPoly,
    contact_algebra: Option<&ReesAlgebra>,
    a: &NamedArc,
    analyses: &[Analysis],
    opts: ResolvedOptions,
    trace: bool,
) -> ArcRun {
    let mut errors = Vec::new();
    let mut out = ArcOut {
        name: a.name.clone(),
        arc: a.arc.to_string(),
        nash: None,
        contact: None,
        persistence_matches: None,
    };
    let mut nash = None;
    if analyses.contains(&Analysis::Nash) {
        let nash_opts = NashOptions {
            max_steps: opts.max_steps,
            precision: opts.precision,
        };
        match nash_sequence(f, &a.arc, nash_opts) {
            Ok(r) => {
                out.nash = Some(NashOut::new(&r, trace));
                nash = Some(r);
            }
            Err(e) => errors.push(entry(Analysis::Nash, Some(&a.name), &e)),
        }
    }
    let mut contact = None;
    if let Some(g) = contact_algebra {
        match on_variety(f, a).and_then(|_| normalized_contact(g, &a.arc)) {
            Ok(c) => {
                out.contact = Some(ContactOut::new(&c, g));
                contact = Some(c);
            }
            Err(e) => errors.push(entry(Analysis::Contact, Some(&a.name), &e)),
        }
    }
    if let (Some(n), Some(c)) = (&nash, &contact) {
        if !n.below_threshold {
            match (n.rho, c.rho) {
                (Some(p), rho) => out.persistence_matches = Some(Order::Finite(p) == rho),
                (None, Order::Infinite) => out.persistence_matches = Some(true),
                (None, Order::Finite(_)) => errors.push(entry(
                    Analysis::Nash,
                    Some(&a.name),
                    &Error::StepLimit {
                        max_steps: opts.max_steps,
                    },
                )),
            }
        }
    }
    ArcRun { out, errors }
}

/// Runs `problem` and returns its report; never fails, errors are recorded
/// in the report.
pub fn run(problem: &Problem, cfg: &RunConfig) -> Report {
    let opts = problem.options.merged(&cfg.options).resolve();
    let analyses = cfg.analyses.clone().unwrap_or_else(|| problem.analyses.clone());
    let f = &problem.local_equation;
    let mut errors = Vec::new();

    let multiplicity = f.order_at_origin().finite();
    let center_on_x = multiplicity.is_some_and(|m| m >= 1);
    if !center_on_x {
        errors.push(ErrorEntry {
            analysis: "input".into(),
            arc: None,
            kind: crate::report::ErrorKind::Input,
            message: format!("the center {:?} is not a point of X", problem.center_ints),
        });
    }

    let contact_algebra = if center_on_x && analyses.contains(&Analysis::Contact) {
        let m = multiplicity.expect("finite") as u32;
        Some(
            ReesAlgebra::hypersurface(f, m)
                .expect("nonzero equation")
                .diff_closure(),
        )
    } else {
        None
    };

    let arcs: Vec<ArcRun> = if center_on_x {
        problem
            .arcs
            .par_iter()
            .map(|a| run_arc(f, contact_algebra.as_ref(), a, &analyses, opts, cfg.trace))
            .collect()
    } else {
        Vec::new()
    };
    let mut arc_outs = Vec::with_capacity(arcs.len());
    for r in arcs {
        errors.extend(r.errors);
        arc_outs.push(r.out);
    }

    let wants_presentation = analyses.contains(&Analysis::OrdD) || analyses.contains(&Analysis::Verify);
    let presentation = match (&problem.fiber, wants_presentation && center_on_x) {
        (_, false) => None,
        (None, true) => {
            errors.push(ErrorEntry {
                analysis: "ord_d".into(),
                arc: None,
                kind: crate::report::ErrorKind::Input,
                message: "ord_d and verify need a fiber variable".into(),
            });
            None
        }
        (Some(fiber), true) => match MonicPresentation::new(f, fiber) {
            Ok(p) => Some(p),
            Err(e) => {
                errors.push(entry(Analysis::OrdD, None, &e));
                None
            }
        },
    };

    let mut ord_out = None;
    let mut verify_out = None;
    let mut verdict = None;
    if let Some(p) = &presentation {
        if analyses.contains(&Analysis::OrdD) {
            match ord_d(p, &Point::origin(p.base().len())) {
                Ok(e) => ord_out = Some(OrdDOut::from(&e)),
                Err(e) => errors.push(entry(Analysis::OrdD, None, &e)),
            }
        }
        if analyses.contains(&Analysis::Verify) {
            let config = SamplerConfig {
                exponent_bound: opts.exponent_bound,
                random_arcs: opts.budget,
                seed: opts.seed,
                ..SamplerConfig::default()
            };
            let sampler = ArcSampler::new(&problem.vars, problem.field, vec![f.clone()], config).and_then(|s| {
                match &problem.local_parametrization {
                    Some(lp) => s.with_parametrization(lp.clone()),
                    None => Ok(s),
                }
            });
            let candidates: Vec<_> = problem.arcs.iter().map(|a| a.arc.clone()).collect();
            match sampler.and_then(|s| verify_main_theorem(p, &candidates, Some(&s))) {
                Ok(t) => {
                    verdict = Some(t.verdict);
                    verify_out = Some(VerifyOut::from(&t));
                }
                Err(e) => errors.push(entry(Analysis::Verify, None, &e)),
            }
        }
    }

    let mismatch = arc_outs.iter().any(|a| a.persistence_matches == Some(false));
    let status = if !errors.is_empty() {
        Status::Error
    } else if mismatch || verdict == Some(Verdict::Fail) {
        Status::Fail
    } else if verdict == Some(Verdict::Inconclusive) {
        Status::Inconclusive
    } else {
        Status::Pass
    };

    let mut report = Report {
        engine: ENGINE.to_string(),
        problem: ProblemEcho::new(problem, &analyses, opts),
        seed: opts.seed,
        multiplicity,
        contact_algebra: contact_algebra.map(|g| g.to_string()),
        arcs: arc_outs,
        ord_d: ord_out,
        verify: verify_out,
        errors,
        checks: Vec::new(),
        status,
    };
    report.checks = check_expectations(problem, &report);
    if report.checks.iter().any(|c| !c.ok) && report.status != Status::Error {
        report.status = Status::Fail;
    }
    report
}
