use leavitt_core::algebra::{Algebra, Coefficient, CoefficientRingSpec, Element};
use leavitt_core::epsilon::{
    check_epsilon_strong, check_nearly_epsilon, check_nondegenerate, check_strongly_graded, check_symmetric, epsilon,
    local_units,
};
use leavitt_core::frobenius::{build_frobenius_system, verify_frobenius, FrobeniusError};
use leavitt_core::grading::{check_grading_axiom, decompose, enumerate_xg, DegreeMap, MonomialCatalog};
use leavitt_core::report::{self, Report, Status};
use leavitt_core::sampling::Sampler;
use leavitt_core::{BigInt, BigRational, ZMod};

use crate::args::{Cli, Command, Property};
use crate::inputs::{expressions, load_degrees, load_graph, parse_degree, parse_window};
use crate::CliError;

pub struct Output {
    pub reports: Vec<Report>,
    /// Text mode prints only each report's result.
    pub plain: bool,
}

pub fn run(cli: &Cli, stdin: &str) -> Result<Output, CliError> {
    let ring: CoefficientRingSpec = cli.ring.parse().map_err(|e: leavitt_core::algebra::CoefficientError| {
        CliError::usage(e.to_string())
    })?;
    let graph = load_graph(cli.graph.as_deref())?;
    let degrees = load_degrees(&cli.degrees, &graph)?;
    let exprs = expressions(&cli.exprs, stdin);
    match ring {
        CoefficientRingSpec::Integers => execute(Algebra::<BigInt>::new(graph, ()), cli, &degrees, &exprs),
        CoefficientRingSpec::Rationals => execute(Algebra::<BigRational>::new(graph, ()), cli, &degrees, &exprs),
        CoefficientRingSpec::IntegersMod(m) => execute(Algebra::<ZMod>::new(graph, m), cli, &degrees, &exprs),
    }
}

fn parse_all<R: Coefficient>(alg: &Algebra<R>, exprs: &[String]) -> Result<Vec<Element<R>>, CliError> {
    if exprs.is_empty() {
        return Err(CliError::usage("no expression given (use --expr or standard input)"));
    }
    exprs
        .iter()
        .map(|s| alg.parse(s).map_err(|e| CliError::data(format!("`{s}` {e}"))))
        .collect()
}

fn element_report<R: Coefficient>(alg: &Algebra<R>, kind: &str, input: &str, e: &Element<R>) -> Report {
    let mut r = Report::new(kind, "OK", Status::Pass).detail("input", input);
    r.result = Some(alg.format(e));
    r
}

fn require_bound(bound: usize) -> Result<(), CliError> {
    if bound == 0 {
        return Err(CliError::usage("--bound must be at least 1"));
    }
    Ok(())
}

fn execute<R: Coefficient>(alg: Algebra<R>, cli: &Cli, d: &DegreeMap, exprs: &[String]) -> Result<Output, CliError> {
    let plain = |reports| Ok(Output { reports, plain: true });
    let full = |reports| Ok(Output { reports, plain: false });
    let bound = cli.bound;
    match &cli.command {
        Command::Nf => {
            let es = parse_all(&alg, exprs)?;
            plain(exprs.iter().zip(&es).map(|(s, e)| element_report(&alg, "nf", s, e)).collect())
        }
        Command::Mul => {
            let es = parse_all(&alg, exprs)?;
            let p = alg.product(&es);
            plain(vec![element_report(&alg, "mul", &exprs.join(" ; "), &p)])
        }
        Command::Involve => {
            let es = parse_all(&alg, exprs)?;
            plain(
                exprs
                    .iter()
                    .zip(&es)
                    .map(|(s, e)| element_report(&alg, "involve", s, &alg.involution(e)))
                    .collect(),
            )
        }
        Command::Decompose => {
            let es = parse_all(&alg, exprs)?;
            plain(
                exprs
                    .iter()
                    .zip(&es)
                    .map(|(s, e)| report::decomposition_report(&alg, d, &decompose(e, d)).detail("input", s))
                    .collect(),
            )
        }
        Command::Xg { g } => {
            let g = parse_degree(d, g)?;
            let xs = enumerate_xg(&alg, &g, d, bound);
            plain(vec![report::xg_report(&alg, d, &g, bound, &xs)])
        }
        Command::Epsilon { g } => {
            require_bound(bound)?;
            let g = parse_degree(d, g)?;
            full(vec![report::epsilon_report(&alg, d, &epsilon(&alg, &g, d, bound))])
        }
        Command::Localunits => {
            let es = parse_all(&alg, exprs)?;
            let mut out = Vec::new();
            for (s, e) in exprs.iter().zip(&es) {
                let p = local_units(&alg, e, d).map_err(|err| CliError::data(format!("`{s}`: {err}")))?;
                out.push(report::local_units_report(&alg, d, &p));
            }
            full(out)
        }
        Command::Check { property, samples } => check(&alg, cli, d, exprs, *property, *samples),
        Command::Frobenius { samples, triples } => {
            require_bound(bound)?;
            let sys = match build_frobenius_system(&alg, d, bound) {
                Ok(sys) => sys,
                Err(FrobeniusError::EpsilonAbsent { degree, reason, proven }) => {
                    return full(vec![report::frobenius_absence_report(&degree, &reason, proven, bound)]);
                }
                Err(e) => return Err(CliError::data(e.to_string())),
            };
            let catalog = MonomialCatalog::build(&alg, d, bound.min(4));
            let mut sampler = Sampler::new(&catalog, cli.seed);
            sampler.max_support = 6;
            let xs: Vec<_> = (0..*samples).map(|_| sampler.element(&alg)).collect();
            let e = d.group().identity();
            let ts: Vec<_> = (0..*triples)
                .map(|_| {
                    (
                        sampler.homogeneous_of(&alg, &e),
                        sampler.element(&alg),
                        sampler.homogeneous_of(&alg, &e),
                    )
                })
                .collect();
            let r = verify_frobenius(&alg, &sys, &xs, &ts);
            full(vec![report::frobenius_report(&alg, &sys, &r).with_seed(cli.seed)])
        }
    }
}

fn check<R: Coefficient>(
    alg: &Algebra<R>,
    cli: &Cli,
    d: &DegreeMap,
    exprs: &[String],
    property: Property,
    samples: usize,
) -> Result<Output, CliError> {
    let bound = cli.bound;
    require_bound(bound)?;
    let window = || parse_window(d, cli.window.as_deref(), bound);
    let data = |e: leavitt_core::epsilon::EpsilonError| CliError::usage(e.to_string());
    let reports = match property {
        Property::Symmetric => vec![report::symmetric_report(alg, &check_symmetric(alg, bound))],
        Property::Grading => vec![report::grading_axiom_report(alg, d, &check_grading_axiom(alg, d, bound))],
        Property::EpsilonStrong => {
            let r = check_epsilon_strong(alg, d, &window()?, bound).map_err(data)?;
            vec![report::epsilon_strong_report(alg, d, &r)]
        }
        Property::Strong => {
            let r = check_strongly_graded(alg, d, &window()?, bound).map_err(data)?;
            vec![report::strongly_graded_report(alg, d, &r)]
        }
        Property::NearlyEpsilon => {
            let (xs, seeded) = if exprs.is_empty() {
                (sampled(alg, d, bound, cli.seed, samples)?, true)
            } else {
                (parse_all(alg, exprs)?, false)
            };
            let r = check_nearly_epsilon(alg, d, &xs).map_err(|e| CliError::data(e.to_string()))?;
            let rep = report::nearly_epsilon_report(alg, &r);
            vec![if seeded { rep.with_seed(cli.seed) } else { rep }]
        }
        Property::Nondegenerate => {
            let es = parse_all(alg, exprs)?;
            let mut out = Vec::new();
            for (s, e) in exprs.iter().zip(&es) {
                let w = check_nondegenerate(alg, e, d).map_err(|err| CliError::data(format!("`{s}`: {err}")))?;
                out.push(report::nondegenerate_report(alg, d, e, &w));
            }
            out
        }
    };
    Ok(Output { reports, plain: false })
}

fn sampled<R: Coefficient>(
    alg: &Algebra<R>,
    d: &DegreeMap,
    bound: usize,
    seed: u64,
    n: usize,
) -> Result<Vec<Element<R>>, CliError> {
    let catalog = MonomialCatalog::build(alg, d, bound.min(4));
    if catalog.is_empty() {
        return Err(CliError::data("no monomials to sample from"));
    }
    let mut sampler = Sampler::new(&catalog, seed);
    Ok((0..n).map(|_| sampler.homogeneous(alg)).collect())
}

