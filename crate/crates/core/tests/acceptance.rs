//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use leavitt_core::algebra::{Algebra, Coefficient, Element, Modulus, Monomial, ZMod};
use leavitt_core::epsilon::{
    check_epsilon_strong, check_nearly_epsilon, check_nondegenerate, check_strongly_graded, class_leq, epsilon,
    epsilon_in, local_units, AbsenceReason, EpsilonOutcome, EpsilonStrongVerdict, StrongVerdict,
};
use leavitt_core::fixtures;
use leavitt_core::frobenius::{build_frobenius_system, verify_frobenius, FrobeniusIdentity};
use leavitt_core::grading::{DegreeMap, GroupElement, GroupSpec, MonomialCatalog};
use leavitt_core::sampling::Sampler;
use leavitt_core::{BigInt, BigRational, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn z(n: i64) -> GroupElement {
    GroupElement::int(n)
}

fn window(a: i64, b: i64) -> Vec<GroupElement> {
    (a..=b).map(z).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn parse<R: Coefficient>(alg: &Algebra<R>, s: &str) -> Result<Element<R>, String> {
    alg.parse(s).map_err(|e| format!("{s}: {e}"))
}

// 1. the five-vertex example: spanning sets and epsilons

fn zigzag_golden<R: Coefficient>(ctx: R::Context) -> Outcome {
    let alg = Algebra::<R>::new(fixtures::zigzag(), ctx);
    let d = DegreeMap::canonical(alg.graph());
    let catalog = MonomialCatalog::build(&alg, &d, 6);
    let spans: [(i64, &[&str]); 5] = [
        (0, &["v1", "v2", "v3", "v4", "v5", "f1.f1*", "f2.f3*", "f2.f2*", "f3.f2*"]),
        (1, &["f1", "f2", "f3", "f4", "f4.f3.f2*"]),
        (-1, &["f1*", "f2*", "f3*", "f4*", "f2.f3*.f4*"]),
        (2, &["f4.f3"]),
        (-2, &["f3*.f4*"]),
    ];
    for (g, listed) in spans {
        let listed: Vec<Element<R>> = listed.iter().map(|s| parse(&alg, s)).collect::<Result<_, _>>()?;
        let xg = catalog.of_degree(&z(g));
        // same span: every basis monomial is listed, every listed element is
        // supported on the basis
        for m in xg {
            let m = alg.monomial(m);
            ensure(listed.contains(&m), || format!("S_{g}: {} not listed", alg.format(&m)))?;
        }
        for e in &listed {
            ensure(e.monomials().all(|m| xg.contains(m)), || {
                format!("S_{g}: {} outside X_g", alg.format(e))
            })?;
        }
    }
    for n in (-12..=12).filter(|n: &i64| n.abs() > 2) {
        ensure(catalog.of_degree(&z(n)).is_empty(), || format!("S_{n} nonzero"))?;
    }
    let eps = [
        (0, "v1 + v2 + v3 + v4 + v5"),
        (1, "v2 + v4 + v5"),
        (-1, "f2.f2* + v1 + v3 + v4"),
        (2, "v5"),
        (-2, "v3"),
        (3, "0"),
        (-3, "0"),
    ];
    for (g, want) in eps {
        let r = epsilon_in(&alg, &z(g), &d, &catalog);
        let want = parse(&alg, want)?;
        ensure(r.epsilon() == Some(&want), || format!("epsilon_{g} = {:?}", r.outcome))?;
    }
    Ok(format!("S_0..S_{{+-2}}, S_n = 0, epsilon_0..epsilon_{{+-2}} over {}", alg.ring_name()))
}

// 2. strong / epsilon-strong / nearly epsilon-strong trichotomy

fn trichotomy() -> Outcome {
    let a = Algebra::<BigInt>::new(fixtures::loop_fed(), ());
    let da = DegreeMap::canonical(a.graph());
    let ra = check_strongly_graded(&a, &da, &window(-3, 3), 6).map_err(|e| e.to_string())?;
    ensure(ra.verdict == StrongVerdict::Strong && ra.arms_agree == Some(true), || {
        format!("graph A: {:?}", ra.verdict)
    })?;

    let b = Algebra::<BigInt>::new(fixtures::loop_exit(), ());
    let db = DegreeMap::canonical(b.graph());
    let rb = check_strongly_graded(&b, &db, &window(-3, 3), 6).map_err(|e| e.to_string())?;
    ensure(rb.verdict == StrongVerdict::NotStrong, || format!("graph B strong: {:?}", rb.verdict))?;
    let eb = check_epsilon_strong(&b, &db, &window(-2, 2), 4).map_err(|e| e.to_string())?;
    ensure(eb.verdict == EpsilonStrongVerdict::EpsilonStrong, || {
        format!("graph B epsilon-strong: {:?}", eb.verdict)
    })?;

    let c = Algebra::<BigInt>::new(fixtures::infinite_fan(), ());
    let dc = DegreeMap::canonical(c.graph());
    let ec = check_epsilon_strong(&c, &dc, &window(-1, 1), 3).map_err(|e| e.to_string())?;
    ensure(
        ec.verdict == EpsilonStrongVerdict::NotEpsilonStrong && ec.witness == Some(z(1)),
        || format!("graph C: {:?} at {:?}", ec.verdict, ec.witness),
    )?;
    let at_one = ec.reports.iter().find(|r| r.g == z(1)).expect("g = 1 in window");
    ensure(
        matches!(at_one.outcome, EpsilonOutcome::Absent(AbsenceReason::InfiniteMinimalSet { .. })),
        || "graph C: no infinite witness".into(),
    )?;
    let catalog = MonomialCatalog::build(&c, &dc, 3);
    let mut sampler = Sampler::new(&catalog, 2024);
    let samples: Vec<_> = (0..50).map(|_| sampler.homogeneous(&c)).collect();
    let nc = check_nearly_epsilon(&c, &dc, &samples).map_err(|e| e.to_string())?;
    ensure(nc.passed() && nc.checked == 50, || "graph C: nearly-epsilon failed".into())?;
    Ok("A STRONG; B NOT_STRONG, EPSILON_STRONG; C NOT_EPSILON_STRONG at 1, nearly-epsilon on 50".into())
}

// 3. sink criterion against the epsilon criterion on all small graphs

/// Connected graphs with at most three vertices and three edges, loops and
/// parallel edges allowed, one per isomorphism class.
fn small_graphs() -> Vec<(usize, Vec<(usize, usize)>)> {
    let perms: [&[usize]; 6] = [&[0, 1, 2], &[0, 2, 1], &[1, 0, 2], &[1, 2, 0], &[2, 0, 1], &[2, 1, 0]];
    let mut seen = BTreeSet::new();
    for n in 1..=3usize {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |r| (s, r))).collect();
        let mut multisets: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..3 {
            let next: Vec<Vec<usize>> = multisets
                .iter()
                .filter(|m| m.len() < 3)
                .flat_map(|m| {
                    let from = m.last().copied().unwrap_or(0);
                    (from..slots.len()).map(move |i| {
                        let mut m = m.clone();
                        m.push(i);
                        m
                    })
                })
                .collect();
            multisets.extend(next);
        }
        multisets.sort();
        multisets.dedup();
        for m in multisets {
            let edges: Vec<(usize, usize)> = m.iter().map(|&i| slots[i]).collect();
            if !connected(n, &edges) {
                continue;
            }
            let canon = perms
                .iter()
                .filter(|p| p.iter().take(n).all(|&x| x < n))
                .map(|p| {
                    let mut e: Vec<(usize, usize)> = edges.iter().map(|&(s, r)| (p[s], p[r])).collect();
                    e.sort();
                    e
                })
                .min()
                .expect("identity permutation");
            seen.insert((n, canon));
        }
    }
    seen.into_iter().collect()
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut reached = vec![false; n];
    reached[0] = true;
    loop {
        let mut grew = false;
        for &(s, r) in edges {
            if reached[s] != reached[r] {
                reached[s] = true;
                reached[r] = true;
                grew = true;
            }
        }
        if !grew {
            return reached.iter().all(|&x| x);
        }
    }
}

fn build_graph(n: usize, edges: &[(usize, usize)]) -> Arc<Graph> {
    let names = ["a", "b", "c"];
    let mut b = Graph::builder().vertices(names[..n].iter().copied());
    for (i, &(s, r)) in edges.iter().enumerate() {
        b = b.edge(format!("e{i}"), names[s], names[r]);
    }
    Arc::new(b.build().expect("valid small graph"))
}

fn hazrat_agreement() -> Outcome {
    use rayon::prelude::*;
    let graphs = small_graphs();
    let failures: Vec<String> = graphs
        .par_iter()
        .filter_map(|(n, edges)| {
            let g = build_graph(*n, edges);
            let alg = Algebra::<BigInt>::new(g, ());
            let d = DegreeMap::canonical(alg.graph());
            let r = check_strongly_graded(&alg, &d, &window(-3, 3), 6).ok()?;
            (r.arms_agree != Some(true)).then(|| {
                format!(
                    "{n} vertices {edges:?}: sink {:?}, epsilon {:?}",
                    r.structural, r.computational
                )
            })
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{} graphs, arms agree", graphs.len()))
}

// 4. relations and confluence

fn relations_and_confluence<R: Coefficient>(ctx: R::Context) -> Outcome {
    for (name, g) in fixtures::all() {
        let alg = Algebra::<R>::new(g, ctx.clone());
        let bad = alg.relation_violations();
        ensure(bad.is_empty(), || format!("{name}: {}", bad.join(", ")))?;
    }
    let graphs = [fixtures::zigzag(), fixtures::loop_fed(), fixtures::loop_exit(), fixtures::infinite_fan()];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut trials = 0;
    for g in graphs {
        let alg = Algebra::<R>::new(g.clone(), ctx.clone());
        let paths = g.enumerate_paths(3);
        let pool: Vec<Monomial> = paths
            .iter()
            .flat_map(|a| paths.iter().filter_map(move |b| Monomial::new(a.clone(), b.clone())))
            .collect();
        for _ in 0..250 {
            let n = rng.gen_range(1..6);
            let raw: Vec<(Monomial, R)> = (0..n)
                .map(|_| {
                    let m = pool[rng.gen_range(0..pool.len())].clone();
                    (m, alg.int(rng.gen_range(-3..=3)))
                })
                .collect();
            let reference = alg.normal_form(raw.clone());
            let other = alg.normal_form_by(raw.into_iter().rev(), |k| rng.gen_range(0..k));
            ensure(reference == other, || "rewrite order changed the normal form".into())?;
            trials += 1;
        }
    }
    Ok(format!("relations on {} graphs, {trials} rewrite orders over {}", fixtures::all().len(), {
        let a = Algebra::<R>::new(fixtures::point(), ctx);
        a.ring_name()
    }))
}

// 5. the order on X_g

fn order_theory() -> Outcome {
    let mut pairs = 0usize;
    for g in [fixtures::zigzag(), fixtures::loop_fed(), fixtures::loop_exit()] {
        let alg = Algebra::<BigInt>::new(g, ());
        let d = DegreeMap::canonical(alg.graph());
        let catalog = MonomialCatalog::build(&alg, &d, 5);
        for deg in catalog.degrees() {
            let xg = catalog.of_degree(deg);
            let leq: Vec<Vec<bool>> = xg
                .iter()
                .map(|x| xg.iter().map(|y| class_leq(x, y, &d).expect("same degree")).collect())
                .collect();
            for (i, x) in xg.iter().enumerate() {
                ensure(leq[i][i], || "not reflexive".into())?;
                let nx = alg.nmap(x);
                for (j, y) in xg.iter().enumerate() {
                    pairs += 1;
                    let y_el = alg.monomial(y);
                    let p = alg.mul(&nx, &y_el);
                    if leq[i][j] {
                        ensure(p == y_el, || format!("n(x)y != y for {} {}", alg.format_monomial(x), alg.format_monomial(y)))?;
                    } else if !leq[j][i] {
                        ensure(p.is_zero(), || format!("n(x)y != 0 for {} {}", alg.format_monomial(x), alg.format_monomial(y)))?;
                    }
                    if leq[i][j] && leq[j][i] {
                        ensure(x.alpha() == y.alpha(), || "quotient not antisymmetric".into())?;
                    }
                    if leq[i][j] {
                        for k in 0..xg.len() {
                            ensure(!leq[j][k] || leq[i][k], || "not transitive".into())?;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{pairs} ordered pairs up to bound 5"))
}

// 6 and 9. local units and non-degeneracy witnesses

fn local_unit_samples() -> Vec<(Algebra<BigInt>, DegreeMap, Vec<Element<BigInt>>)> {
    let graphs = [
        (fixtures::loop_fed(), 4),
        (fixtures::loop_exit(), 4),
        (fixtures::infinite_fan(), 3),
        (fixtures::zigzag(), 4),
    ];
    graphs
        .into_iter()
        .enumerate()
        .map(|(i, (g, bound))| {
            let alg = Algebra::<BigInt>::new(g, ());
            let d = DegreeMap::canonical(alg.graph());
            let catalog = MonomialCatalog::build(&alg, &d, bound);
            let mut sampler = Sampler::new(&catalog, 600 + i as u64);
            let samples = (0..50).map(|_| sampler.homogeneous(&alg)).collect();
            (alg, d, samples)
        })
        .collect()
}

fn nearly_epsilon_certificates() -> Outcome {
    let mut n = 0;
    for (alg, d, samples) in local_unit_samples() {
        for s in &samples {
            let p = local_units(&alg, s, &d).map_err(|e| e.to_string())?;
            ensure(alg.mul(&p.left.unit, s) == *s && alg.mul(s, &p.right.unit) == *s, || {
                format!("local units fail on {}", alg.format(s))
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} seeded homogeneous elements"))
}

fn nondegeneracy() -> Outcome {
    let mut n = 0;
    for (alg, d, samples) in local_unit_samples() {
        for s in samples.iter().filter(|s| !s.is_zero()) {
            let w = check_nondegenerate(&alg, s, &d).map_err(|e| e.to_string())?;
            let right = alg.mul(s, &w.right.unit);
            let left = alg.mul(&w.left.unit, s);
            ensure(w.verified && right == *s && left == *s && !right.is_zero(), || {
                format!("no witness for {}", alg.format(s))
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} witnesses verified"))
}

// 7. symmetric grading

fn symmetric<R: Coefficient>(ctx: R::Context) -> Outcome {
    let mut n = 0;
    for (name, g) in fixtures::all() {
        let alg = Algebra::<R>::new(g, ctx.clone());
        let r = leavitt_core::epsilon::check_symmetric(&alg, 5);
        ensure(r.passed(), || format!("{name}: {:?}", r.counterexample))?;
        n += r.checked;
    }
    Ok(format!("m m* m = m on {n} monomials"))
}

// 8. Frobenius systems

fn frobenius() -> Outcome {
    let cases = [(fixtures::loop_exit(), 2u64, 4usize, 3usize), (fixtures::zigzag(), 5, 4, 4)];
    let mut summary = Vec::new();
    for (i, (g, n, bound, sample_bound)) in cases.into_iter().enumerate() {
        let alg = Algebra::<BigInt>::new(g, ());
        let d = DegreeMap::canonical_in(alg.graph(), GroupSpec::Cyclic(n)).map_err(|e| e.to_string())?;
        let sys = build_frobenius_system(&alg, &d, bound).map_err(|e| e.to_string())?;
        let catalog = MonomialCatalog::build(&alg, &d, sample_bound);
        let mut sampler = Sampler::new(&catalog, 800 + i as u64);
        sampler.max_support = 6;
        let samples: Vec<_> = (0..100).map(|_| sampler.element(&alg)).collect();
        let e = z(0);
        let triples: Vec<_> = (0..50)
            .map(|_| {
                (
                    sampler.homogeneous_of(&alg, &e),
                    sampler.element(&alg),
                    sampler.homogeneous_of(&alg, &e),
                )
            })
            .collect();
        let r = verify_frobenius(&alg, &sys, &samples, &triples);
        ensure(r.passed(), || format!("Z/{n}: {:?}", r.counterexample.map(|c| c.identity)))?;

        let broken = sys.without_dual(0);
        let r = verify_frobenius(&alg, &broken, &[sys.pairs[0].x.clone()], &[]);
        ensure(
            r.counterexample.map(|c| c.identity) == Some(FrobeniusIdentity::Left),
            || "dropped dual not detected".into(),
        )?;
        summary.push(format!("Z/{n}: {} pairs", sys.pairs.len()));
    }
    Ok(format!("{}; 100 samples, 50 triples each", summary.join(", ")))
}

// 10. ring independence

fn ring_sweep() -> Outcome {
    let z2 = Modulus::new(2).expect("modulus");
    let z3 = Modulus::new(3).expect("modulus");
    let runs: Vec<(&str, Vec<Outcome>)> = vec![
        ("Z", vec![zigzag_golden::<BigInt>(()), relations_and_confluence::<BigInt>(()), symmetric::<BigInt>(())]),
        (
            "Q",
            vec![
                zigzag_golden::<BigRational>(()),
                relations_and_confluence::<BigRational>(()),
                symmetric::<BigRational>(()),
            ],
        ),
        ("Z/2", vec![zigzag_golden::<ZMod>(z2), relations_and_confluence::<ZMod>(z2), symmetric::<ZMod>(z2)]),
        ("Z/3", vec![zigzag_golden::<ZMod>(z3), relations_and_confluence::<ZMod>(z3), symmetric::<ZMod>(z3)]),
    ];
    for (ring, outcomes) in &runs {
        for (k, o) in outcomes.iter().enumerate() {
            if let Err(e) = o {
                return Err(format!("{ring}, criterion {}: {e}", [1, 4, 7][k]));
            }
        }
    }
    // the epsilons print identically in every ring
    let printed = |alg_format: Vec<String>| alg_format;
    let z_eps = printed(epsilon_strings::<BigInt>(()));
    for other in [epsilon_strings::<BigRational>(()), epsilon_strings::<ZMod>(z2), epsilon_strings::<ZMod>(z3)] {
        ensure(other == z_eps, || format!("{other:?} != {z_eps:?}"))?;
    }
    Ok("criteria 1, 4, 7 over Z, Q, Z/2, Z/3".into())
}

fn epsilon_strings<R: Coefficient>(ctx: R::Context) -> Vec<String> {
    let alg = Algebra::<R>::new(fixtures::zigzag(), ctx);
    let d = DegreeMap::canonical(alg.graph());
    (-3..=3)
        .map(|g| {
            let r = epsilon(&alg, &z(g), &d, 6);
            r.epsilon().map_or("absent".into(), |e| alg.format(e))
        })
        .collect()
}

fn main() {
    let criteria: Vec<(&str, Duration, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 five-vertex example golden values", Duration::from_secs(1), Box::new(|| zigzag_golden::<BigInt>(()))),
        ("2 strong / epsilon-strong / nearly epsilon-strong", Duration::from_secs(5), Box::new(trichotomy)),
        ("3 sink criterion agrees with epsilon criterion", Duration::from_secs(120), Box::new(hazrat_agreement)),
        (
            "4 relations and confluence",
            Duration::from_secs(60),
            Box::new(|| relations_and_confluence::<BigInt>(())),
        ),
        ("5 order on X_g", Duration::from_secs(60), Box::new(order_theory)),
        ("6 local units", Duration::from_secs(60), Box::new(nearly_epsilon_certificates)),
        ("7 symmetric grading", Duration::from_secs(60), Box::new(|| symmetric::<BigInt>(()))),
        ("8 Frobenius systems", Duration::from_secs(60), Box::new(frobenius)),
        ("9 non-degeneracy witnesses", Duration::from_secs(60), Box::new(nondegeneracy)),
        ("10 coefficient rings", Duration::from_secs(120), Box::new(ring_sweep)),
    ];
    let mut failed = 0;
    for (name, limit, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > *limit => Err(format!("{msg}; took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS  criterion {name} ({took:.2?}): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name} ({took:.2?}): {msg}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
