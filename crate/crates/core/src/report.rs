//! Uniform reports for the command line: a verdict, the inputs that shaped
//! it, and the witnesses or certificates behind it.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{Algebra, Coefficient, Element, Monomial};
use crate::epsilon::{
    AbsenceReason, EpsilonOutcome, EpsilonReport, EpsilonStrongReport, EpsilonStrongVerdict, LocalUnitPair,
    NearlyEpsilonReport, NondegeneracyWitness, StrongVerdict, StronglyGradedReport, SymmetricReport,
};
use crate::frobenius::{describe_absence, FrobeniusIdentity, FrobeniusReport, FrobeniusSystem};
use crate::grading::{DegreeMap, GradingAxiomReport, GroupElement, HomogeneousDecomposition};

/// How a report maps to an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Undetermined,
}

/// Every report has the same fields, so consumers can rely on the keys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub report: String,
    pub verdict: String,
    pub status: Status,
    pub degree: Option<String>,
    pub bound: Option<usize>,
    pub seed: Option<u64>,
    /// The computed element, if the report has one.
    pub result: Option<String>,
    pub witness: Vec<String>,
    pub certificate: Vec<String>,
    pub details: BTreeMap<String, String>,
}

impl Report {
    pub fn new(report: &str, verdict: &str, status: Status) -> Self {
        Report {
            report: report.into(),
            verdict: verdict.into(),
            status,
            degree: None,
            bound: None,
            seed: None,
            result: None,
            witness: Vec::new(),
            certificate: Vec::new(),
            details: BTreeMap::new(),
        }
    }

    pub fn detail(mut self, key: &str, value: impl ToString) -> Self {
        self.details.insert(key.into(), value.to_string());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// Text form: the result on its own line, then one `key: value` line per
/// populated field.
impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = &self.result {
            writeln!(f, "{r}")?;
        }
        writeln!(f, "{}: {}", self.report, self.verdict)?;
        if let Some(g) = &self.degree {
            writeln!(f, "degree: {g}")?;
        }
        if let Some(b) = self.bound {
            writeln!(f, "bound: {b}")?;
        }
        if let Some(s) = self.seed {
            writeln!(f, "seed: {s}")?;
        }
        for w in &self.witness {
            writeln!(f, "witness: {w}")?;
        }
        for c in &self.certificate {
            writeln!(f, "certificate: {c}")?;
        }
        for (k, v) in &self.details {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}

fn pair<R: Coefficient>(alg: &Algebra<R>, x: &Monomial, y: &Monomial) -> String {
    format!("({}, {})", alg.format_monomial(x), alg.format_monomial(y))
}

fn absence_verdict(reason: &AbsenceReason) -> (&'static str, Status) {
    match reason {
        AbsenceReason::InfiniteMinimalSet { .. } | AbsenceReason::PumpedMinimalSet { .. } => {
            ("ABSENT", Status::Fail)
        }
        AbsenceReason::Undetermined { .. } => ("UNDETERMINED", Status::Undetermined),
        AbsenceReason::VerificationFailed { .. } => ("UNDETERMINED", Status::Undetermined),
    }
}

pub fn epsilon_report<R: Coefficient>(alg: &Algebra<R>, d: &DegreeMap, r: &EpsilonReport<R>) -> Report {
    let mut out = match &r.outcome {
        EpsilonOutcome::Present { epsilon, certificate } => {
            let mut out = Report::new("epsilon", "PRESENT", Status::Pass);
            out.result = Some(alg.format(epsilon));
            out.certificate = certificate.iter().map(|(x, y)| pair(alg, x, y)).collect();
            out
        }
        EpsilonOutcome::Absent(reason) => {
            let (verdict, status) = absence_verdict(reason);
            let mut out = Report::new("epsilon", verdict, status);
            out.witness.push(describe_absence(alg, reason));
            out
        }
    };
    out.degree = Some(d.render(&r.g));
    out.bound = Some(r.bound_used);
    out.detail("identity_checked_on", r.identity_checked_on)
        .detail("minimal_classes", r.classes.classes.len())
}

pub fn local_units_report<R: Coefficient>(alg: &Algebra<R>, d: &DegreeMap, p: &LocalUnitPair<R>) -> Report {
    let (verdict, status) = if p.verified() {
        ("VERIFIED", Status::Pass)
    } else {
        ("FAILED", Status::Fail)
    };
    let mut out = Report::new("localunits", verdict, status);
    out.degree = Some(d.render(&p.degree));
    out.result = Some(format!("{} | {}", alg.format(&p.left.unit), alg.format(&p.right.unit)));
    out.certificate = p
        .left
        .certificate
        .iter()
        .map(|(x, y)| format!("left {}", pair(alg, x, y)))
        .chain(
            p.right
                .certificate
                .iter()
                .map(|(x, y)| format!("right {}", pair(alg, x, y))),
        )
        .collect();
    out.detail("s", alg.format(&p.s))
        .detail("left", alg.format(&p.left.unit))
        .detail("right", alg.format(&p.right.unit))
}

pub fn symmetric_report<R: Coefficient>(alg: &Algebra<R>, r: &SymmetricReport) -> Report {
    let mut out = match &r.counterexample {
        None => Report::new("symmetric", "PASS", Status::Pass),
        Some(m) => {
            let mut out = Report::new("symmetric", "FAIL", Status::Fail);
            out.witness.push(format!("m m* m != m for m = {}", alg.format_monomial(m)));
            out
        }
    };
    out.bound = Some(r.bound);
    out.detail("checked", r.checked)
}

fn window_text(d: &DegreeMap, w: &[GroupElement]) -> String {
    w.iter().map(|g| d.render(g)).collect::<Vec<_>>().join(" ")
}

fn epsilon_lines<R: Coefficient>(alg: &Algebra<R>, d: &DegreeMap, reports: &[EpsilonReport<R>]) -> Vec<String> {
    reports
        .iter()
        .map(|r| {
            let value = match &r.outcome {
                EpsilonOutcome::Present { epsilon, .. } => alg.format(epsilon),
                EpsilonOutcome::Absent(reason) => describe_absence(alg, reason),
            };
            format!("epsilon_{} = {}", d.render(&r.g), value)
        })
        .collect()
}

pub fn epsilon_strong_report<R: Coefficient>(
    alg: &Algebra<R>,
    d: &DegreeMap,
    r: &EpsilonStrongReport<R>,
) -> Report {
    let (verdict, status) = match r.verdict {
        EpsilonStrongVerdict::EpsilonStrong => ("EPSILON_STRONG", Status::Pass),
        EpsilonStrongVerdict::NotEpsilonStrong => ("NOT_EPSILON_STRONG", Status::Fail),
        EpsilonStrongVerdict::Undetermined => ("UNDETERMINED", Status::Undetermined),
    };
    let mut out = Report::new("epsilon-strong", verdict, status);
    out.bound = Some(r.bound);
    if let Some(g) = &r.witness {
        out.degree = Some(d.render(g));
        if let Some(bad) = r.reports.iter().find(|x| &x.g == g) {
            if let EpsilonOutcome::Absent(reason) = &bad.outcome {
                out.witness.push(describe_absence(alg, reason));
            }
        }
    }
    out.certificate = epsilon_lines(alg, d, &r.reports);
    out.detail("window", window_text(d, &r.window))
        .detail("theorem_applies", r.theorem_applies)
}

fn strong_name(v: StrongVerdict) -> &'static str {
    match v {
        StrongVerdict::Strong => "STRONG",
        StrongVerdict::NotStrong => "NOT_STRONG",
        StrongVerdict::Undetermined => "UNDETERMINED",
    }
}

pub fn strongly_graded_report<R: Coefficient>(
    alg: &Algebra<R>,
    d: &DegreeMap,
    r: &StronglyGradedReport<R>,
) -> Report {
    let status = match r.verdict {
        StrongVerdict::Strong => Status::Pass,
        StrongVerdict::NotStrong => Status::Fail,
        StrongVerdict::Undetermined => Status::Undetermined,
    };
    let mut out = Report::new("strong", strong_name(r.verdict), status);
    out.bound = Some(r.bound);
    if let Some(g) = &r.witness {
        out.degree = Some(d.render(g));
        if let Some(bad) = r.reports.iter().find(|x| &x.g == g) {
            out.witness.push(epsilon_lines(alg, d, std::slice::from_ref(bad)).remove(0));
        }
    }
    if !r.sinks.is_empty() {
        let names: Vec<&str> = r.sinks.iter().map(|&v| alg.graph().vertex_name(v)).collect();
        out.witness.push(format!("sinks: {}", names.join(" ")));
    }
    out.certificate = epsilon_lines(alg, d, &r.reports);
    let agree = match r.arms_agree {
        Some(true) => "yes",
        Some(false) => "NO",
        None => "n/a",
    };
    out.detail("window", window_text(d, &r.window))
        .detail("sink_criterion", r.structural.map_or("n/a", strong_name))
        .detail("epsilon_criterion", strong_name(r.computational))
        .detail("arms_agree", agree)
}

pub fn nearly_epsilon_report<R: Coefficient>(alg: &Algebra<R>, r: &NearlyEpsilonReport<R>) -> Report {
    let mut out = match r.failure {
        None => Report::new("nearly-epsilon", "PASS", Status::Pass),
        Some(i) => {
            let mut out = Report::new("nearly-epsilon", "FAIL", Status::Fail);
            out.witness.push(format!("local units fail on sample {i}"));
            out
        }
    };
    out.certificate = r
        .pairs
        .iter()
        .map(|p| {
            format!(
                "{} : left {} right {}",
                alg.format(&p.s),
                alg.format(&p.left.unit),
                alg.format(&p.right.unit)
            )
        })
        .collect();
    out.detail("checked", r.checked).detail("skipped_zero", r.skipped_zero)
}

pub fn nondegenerate_report<R: Coefficient>(
    alg: &Algebra<R>,
    d: &DegreeMap,
    s: &Element<R>,
    w: &NondegeneracyWitness<R>,
) -> Report {
    let (verdict, status) = if w.verified {
        ("NONDEGENERATE", Status::Pass)
    } else {
        ("FAILED", Status::Fail)
    };
    let mut out = Report::new("nondegenerate", verdict, status);
    out.degree = Some(d.render(&w.degree));
    out.result = Some(alg.format(&w.right.unit));
    out.witness.push(format!("s . ({}) = s", alg.format(&w.right.unit)));
    out.witness.push(format!("({}) . s = s", alg.format(&w.left.unit)));
    out.detail("s", alg.format(s))
}

pub fn grading_axiom_report<R: Coefficient>(alg: &Algebra<R>, d: &DegreeMap, r: &GradingAxiomReport) -> Report {
    let mut out = match &r.counterexample {
        None => Report::new("grading", "PASS", Status::Pass),
        Some(c) => {
            let mut out = Report::new("grading", "FAIL", Status::Fail);
            out.degree = Some(d.render(&c.expected));
            let found: Vec<String> = c.found.iter().map(|g| d.render(g)).collect();
            out.witness.push(format!(
                "({}) . ({}) has degrees {}",
                alg.format_monomial(&c.left),
                alg.format_monomial(&c.right),
                found.join(" ")
            ));
            out
        }
    };
    out.bound = Some(r.bound);
    out.detail("products_checked", r.products_checked)
}

pub fn decomposition_report<R: Coefficient>(
    alg: &Algebra<R>,
    d: &DegreeMap,
    h: &HomogeneousDecomposition<R>,
) -> Report {
    let mut out = Report::new("decompose", "OK", Status::Pass);
    out.result = Some(
        h.parts
            .iter()
            .map(|(g, e)| format!("{}: {}", d.render(g), alg.format(e)))
            .collect::<Vec<_>>()
            .join("\n"),
    );
    out.detail("parts", h.parts.len())
}

pub fn xg_report<R: Coefficient>(alg: &Algebra<R>, d: &DegreeMap, g: &GroupElement, bound: usize, xs: &[Monomial]) -> Report {
    let mut out = Report::new("xg", "OK", Status::Pass);
    out.degree = Some(d.render(g));
    out.bound = Some(bound);
    out.result = Some(
        xs.iter()
            .map(|m| alg.format_monomial(m))
            .collect::<Vec<_>>()
            .join(", "),
    );
    out.detail("count", xs.len())
}

pub fn frobenius_report<R: Coefficient>(
    alg: &Algebra<R>,
    sys: &FrobeniusSystem<R>,
    r: &FrobeniusReport<R>,
) -> Report {
    let d = &sys.degrees;
    let mut out = match &r.counterexample {
        None => Report::new("frobenius", "PASS", Status::Pass),
        Some(c) => {
            let mut out = Report::new("frobenius", "FAIL", Status::Fail);
            let which = match c.identity {
                FrobeniusIdentity::Left => "s = sum x_j E(y_j s)",
                FrobeniusIdentity::Right => "s = sum E(s x_j) y_j",
                FrobeniusIdentity::Bimodule => "E(t a t') = t E(a) t'",
            };
            out.witness.push(format!(
                "{which} fails for {}: expected {}, found {}",
                alg.format(&c.sample),
                alg.format(&c.expected),
                alg.format(&c.found)
            ));
            out
        }
    };
    out.bound = Some(sys.bound);
    out.certificate = sys
        .pairs
        .iter()
        .map(|p| format!("{}: ({}, {})", d.render(&p.degree), alg.format(&p.x), alg.format(&p.y)))
        .collect();
    out.detail("pairs", sys.pairs.len())
        .detail("samples_checked", r.samples_checked)
        .detail("triples_checked", r.triples_checked)
        .detail("group", d.group())
}

/// A Frobenius run that stopped because some `ε_g` is missing.
pub fn frobenius_absence_report(degree: &str, reason: &str, proven: bool, bound: usize) -> Report {
    let mut out = if proven {
        Report::new("frobenius", "NO_SYSTEM", Status::Fail)
    } else {
        Report::new("frobenius", "UNDETERMINED", Status::Undetermined)
    };
    out.degree = Some(degree.to_string());
    out.bound = Some(bound);
    out.witness.push(reason.to_string());
    out
}
