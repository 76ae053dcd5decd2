use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::algebra::{Algebra, Modulus, ZMod};
use crate::fixtures;

type Zalg = Algebra<BigInt>;

fn zigzag() -> (Zalg, DegreeMap) {
    let alg = Algebra::new(fixtures::zigzag(), ());
    let d = DegreeMap::canonical(alg.graph());
    (alg, d)
}

fn mono(alg: &Zalg, s: &str) -> Monomial {
    let e = alg.parse(s).unwrap();
    assert_eq!(e.len(), 1, "{s}");
    let m = e.monomials().next().unwrap().clone();
    m
}

fn names(alg: &Zalg, ms: &[Monomial]) -> Vec<String> {
    ms.iter().map(|m| alg.format(&alg.monomial(m))).collect()
}

#[test]
fn degrees_of_monomials() {
    let (alg, d) = zigzag();
    assert_eq!(d.degree_of(&mono(&alg, "f4.f3")), GroupElement::int(2));
    assert_eq!(d.degree_of(&mono(&alg, "f2.(f4.f3)*")), GroupElement::int(-1));
    for v in alg.graph().vertex_ids() {
        assert_eq!(d.degree_of(&Monomial::vertex(v)), GroupElement::int(0));
    }
}

#[test]
fn decompositions() {
    let (alg, d) = zigzag();
    let a = alg.parse("v1 + f1").unwrap();
    let parts = decompose(&a, &d);
    assert_eq!(parts.parts.len(), 2);
    assert_eq!(parts.part(&GroupElement::int(0)), alg.parse("v1").unwrap());
    assert_eq!(parts.part(&GroupElement::int(1)), alg.parse("f1").unwrap());
    assert_eq!(parts.reassemble(), a);

    let eps = alg.parse("f2.f2* + v1 + v3 + v4").unwrap();
    let parts = decompose(&eps, &d);
    assert_eq!(parts.homogeneous_degree(), Some(&GroupElement::int(0)));
    assert_eq!(parts.part(&GroupElement::int(0)), eps);

    assert!(decompose(&Element::<BigInt>::zero(), &d).parts.is_empty());
    assert_eq!(homogeneous_degree(&Element::<BigInt>::zero(), &d), None);
}

#[test]
fn spanning_sets() {
    let (alg, d) = zigzag();
    let xg = |g: i64, b| names(&alg, &enumerate_xg(&alg, &GroupElement::int(g), &d, b));
    assert_eq!(xg(2, 4), ["f4.f3"]);
    assert_eq!(xg(-2, 4), ["(f4.f3)*"]);
    assert_eq!(xg(1, 4), ["f1", "f2", "f3", "f4", "f4.f3.f2*"]);
    assert_eq!(xg(-1, 4), ["f1*", "f2*", "f3*", "f4*", "f2.(f4.f3)*"]);
    assert_eq!(xg(0, 4), ["v1", "v2", "v3", "v4", "v5", "f2.f2*", "f2.f3*", "f3.f2*"]);
    // the longer spanning list with f1.f1* spans the same module
    let x0 = enumerate_xg(&alg, &GroupElement::int(0), &d, 4);
    for s in ["f1.f1*", "f2.f3*", "f2.f2*", "f3.f2*", "v2"] {
        assert!(alg.parse(s).unwrap().monomials().all(|m| x0.contains(m)), "{s}");
    }
    for n in [3, -3, 4, -4, 7] {
        assert!(xg(n, 6).is_empty(), "{n}");
    }
}

#[test]
fn catalog_matches_direct_enumeration() {
    let (alg, d) = zigzag();
    let cat = MonomialCatalog::build(&alg, &d, 3);
    assert_eq!(cat.len(), alg.normal_monomials(3).len());
    for g in cat.degrees() {
        for m in cat.of_degree(g) {
            assert_eq!(homogeneous_degree(&alg.monomial(m), &d).as_ref(), Some(g));
        }
    }
}

#[test]
fn grading_axiom_holds() {
    let (alg, d) = zigzag();
    assert!(check_grading_axiom(&alg, &d, 3).passed());
    let a = Algebra::<BigInt>::new(fixtures::loop_fed(), ());
    let report = check_grading_axiom(&a, &DegreeMap::canonical(a.graph()), 3);
    assert!(report.passed());
    assert!(report.products_checked > 0);

    let m = Modulus::new(5).unwrap();
    let z5 = Algebra::<ZMod>::new(fixtures::zigzag(), m);
    let d5 = DegreeMap::canonical_in(z5.graph(), GroupSpec::Cyclic(5)).unwrap();
    assert!(check_grading_axiom(&z5, &d5, 3).passed());
}

#[test]
fn corrupted_degree_map_is_caught() {
    let (alg, d) = zigzag();
    let mut bad = d.clone();
    let f3 = alg.graph().edge_by_name("f3").unwrap();
    bad.set_edge_degree(f3, GroupElement::int(2));
    let report = check_grading_axiom_between(&alg, &d, &bad, 3);
    let cx = report.counterexample.expect("counterexample");
    assert!(cx.found.iter().any(|g| *g != cx.expected));
}

#[test]
fn degree_files() {
    let g = fixtures::zigzag();
    let text = "# five edges\ngroup Z/5\ndeg f1 = 1\ndeg f2 = 1\ndeg f3 = 6\ndeg f4 = -4\n";
    let d = DegreeMap::parse(text, &g, None).unwrap();
    assert_eq!(d, DegreeMap::canonical_in(&g, GroupSpec::Cyclic(5)).unwrap());
    assert_eq!(DegreeMap::parse(&d.to_text(&g), &g, None).unwrap(), d);

    let lattice = "group Z^2\ndeg f1 = (1,0)\ndeg f2 = (0,1)\ndeg f3 = (1,-1)\ndeg f4 = (0,0)\n";
    let d2 = DegreeMap::parse(lattice, &g, None).unwrap();
    assert_eq!(d2.render(d2.edge_degree(g.edge_by_name("f3").unwrap())), "1,-1");

    assert!(matches!(
        DegreeMap::parse("group Z\ndeg f1 = 1\n", &g, None),
        Err(GradingError::MissingDegree(e)) if e == "f2"
    ));
    assert!(matches!(
        DegreeMap::parse("group Z\ndeg f9 = 1\n", &g, None),
        Err(GradingError::UnknownEdge(_))
    ));
    assert!(matches!(
        DegreeMap::parse("group Z\nf1 = 1\n", &g, None),
        Err(GradingError::Syntax { line: 2, .. })
    ));
    assert!(matches!(
        DegreeMap::parse("deg f1 = 1\n", &g, None),
        Err(GradingError::Syntax { .. })
    ));
    assert!(matches!(
        DegreeMap::parse("group Z\ndeg f1 = x\n", &g, None),
        Err(GradingError::BadElement { .. })
    ));
}

#[test]
fn table_groups_from_files() {
    let dir = std::env::temp_dir().join(format!("leavitt-grading-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("z2.table"), "elements: e a\ne: e a\na: a e\n").unwrap();
    let g = fixtures::loop_exit();
    let d = DegreeMap::parse("group table z2.table\ndeg e = a\ndeg h = a\n", &g, Some(&dir)).unwrap();
    let alg = Algebra::<BigInt>::new(g.clone(), ());
    assert!(check_grading_axiom(&alg, &d, 3).passed());
    assert!(matches!(
        DegreeMap::parse("group table missing.table\ndeg e = a\ndeg h = a\n", &g, Some(&dir)),
        Err(GradingError::Io { .. })
    ));
    std::fs::remove_dir_all(&dir).ok();
}

fn pool() -> Vec<Monomial> {
    Algebra::<BigInt>::new(fixtures::loop_exit(), ()).normal_monomials(3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reassembly_and_involution_degree(spec in proptest::collection::vec((0usize..200, -3i64..=3), 0..6)) {
        let alg = Algebra::<BigInt>::new(fixtures::loop_exit(), ());
        let d = DegreeMap::canonical(alg.graph());
        let pool = pool();
        let a = alg.normal_form(spec.iter().map(|&(i, c)| (pool[i % pool.len()].clone(), BigInt::from(c))));
        let parts = decompose(&a, &d);
        prop_assert_eq!(parts.reassemble(), a);
        for (g, part) in &parts.parts {
            let star = alg.involution(part);
            prop_assert_eq!(homogeneous_degree(&star, &d), Some(d.group().inverse(g)));
        }
    }

    #[test]
    fn products_of_homogeneous_elements(i in 0usize..200, j in 0usize..200, k in 0usize..200) {
        let alg = Algebra::<BigInt>::new(fixtures::loop_exit(), ());
        let d = DegreeMap::canonical(alg.graph());
        let pool = pool();
        let x = &pool[i % pool.len()];
        let gx = d.degree_of(x);
        // a second monomial of the same degree as x, so a is homogeneous but not a monomial
        let same: Vec<&Monomial> = pool.iter().filter(|m| d.degree_of(m) == gx).collect();
        let a = &alg.monomial(x) + &alg.monomial(same[k % same.len()]);
        let b = alg.monomial(&pool[j % pool.len()]);
        let gb = d.degree_of(&pool[j % pool.len()]);
        let p = alg.mul(&a, &b);
        let degrees: Vec<_> = decompose(&p, &d).parts.into_keys().collect();
        prop_assert!(degrees.iter().all(|g| *g == d.group().op(&gx, &gb)));
    }
}
