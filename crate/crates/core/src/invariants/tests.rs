use super::*;

const SEED: u64 = DEFAULT_SEED;

fn cusp() -> GermProblem {
    GermProblem::parse(&["x", "y"], &[], ["x", "y^3+x*y"]).unwrap()
}

fn fold() -> GermProblem {
    GermProblem::parse(&["x", "y"], &[], ["x", "y^2"]).unwrap()
}

fn cone() -> GermProblem {
    GermProblem::parse(&["x", "y", "z"], &["x^2+y^2+z^2"], ["x", "y"]).unwrap()
}

#[test]
fn singular_locus_examples() {
    let p = GermProblem::parse(&["x", "y", "z"], &["x^3+y^3+z^4"], ["x+y-z", "2*x-y-z"]).unwrap();
    let s = singular_locus_ideal(&p).unwrap();
    let g: Vec<String> = s.generators().iter().map(|g| g.render()).collect();
    assert_eq!(g, vec!["x^3+y^3+z^4", "-6*x^2-3*y^2-12*z^3"]);

    let s = singular_locus_ideal(&cusp()).unwrap();
    assert_eq!(s.generators()[0].render(), "x+3*y^2");

    let id = GermProblem::parse(&["x", "y"], &[], ["x", "y"]).unwrap();
    assert!(singular_locus_ideal(&id).unwrap().generators()[0].is_local_unit());

    let bad = GermProblem::parse(&["x", "y"], &[], ["x", "x"]).unwrap();
    assert_eq!(singular_locus_ideal(&bad).unwrap_err().kind(), ErrorKind::Degenerate);
}

#[test]
fn milnor_numbers() {
    let r = PolyRing::new(["x", "y", "z"], MonomialOrder::NegDegRevLex).unwrap();
    let p = |s: &str| parse_poly(s, &r).unwrap();
    assert_eq!(milnor_icis(&[p("x^2+y^2+z^2")], SEED, 3).unwrap(), 1);
    assert_eq!(milnor_icis(&[p("x^3+y^3+z^4")], SEED, 3).unwrap(), 12);
    assert_eq!(milnor_icis(&[p("x")], SEED, 3).unwrap(), 0);
    // the A1 cone cut by z = 0 is a node
    assert_eq!(milnor_icis(&[p("x^2+y^2+z^2"), p("z")], SEED, 3).unwrap(), 1);
    let err = milnor_icis(&[p("x*y")], SEED, 3).unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Degenerate);
}

#[test]
fn degrees_and_cusps() {
    assert_eq!(degree_m(&cone()).unwrap(), 2);
    assert_eq!(degree_m(&GermProblem::parse(&["x", "y"], &[], ["x", "y"]).unwrap()).unwrap(), 1);
    assert_eq!(cusp_count(&cusp()).unwrap(), 1);
    assert_eq!(cusp_count(&cone()).unwrap(), 0);
    assert_eq!(cusp_count(&fold()).unwrap(), 0);
}

#[test]
fn discriminants() {
    let g = discriminant_equation(&fold()).unwrap();
    assert_eq!(g.render(), "v");
    assert_eq!(mu_plane_curve(&g).unwrap(), 0);

    let g = discriminant_equation(&cusp()).unwrap();
    let expect = parse_poly("4*u^3+27*v^2", g.ring()).unwrap();
    assert_eq!(g.monic(), expect.monic());
    assert_eq!(mu_plane_curve(&g).unwrap(), 2);
}

#[test]
fn arithmetic_steps() {
    assert_eq!(double_fold_count(35, 19, 8).unwrap(), 0);
    assert_eq!(double_fold_count(49, 17, 12).unwrap(), 4);
    assert_eq!(double_fold_count(2, 0, 1).unwrap(), 0);
    assert!(double_fold_count(36, 19, 8).is_err());
    assert_eq!(discriminant_milnor_number(35, 8, 0, 19).unwrap(), 19);
    assert_eq!(discriminant_milnor_number(49, 12, 4, 17).unwrap(), 21);
    assert_eq!(discriminant_milnor_number(0, 0, 0, 0).unwrap(), 0);
    assert!(discriminant_milnor_number(10, 1, 1, 1).is_err());
}

#[test]
fn preimage_curves() {
    let p = fold();
    let g = discriminant_equation(&p).unwrap();
    assert_eq!(preimage_equations(&p, &g).unwrap()[0].render(), "y");
    assert_eq!(preimage_curve_milnor(&p, &g).unwrap(), 0);

    let p = cusp();
    let g = discriminant_equation(&p).unwrap();
    assert_eq!(preimage_curve_milnor(&p, &g).unwrap(), 3);
}

#[test]
fn multiplicities() {
    let r = PolyRing::new(["u", "v"], MonomialOrder::NegDegRevLex).unwrap();
    let i = IdealBasis::new(&r, [parse_poly("u^3-v^2", &r).unwrap()]).unwrap();
    assert_eq!(germ_multiplicity(&i, 1, SEED, 3).unwrap(), 2);
    let i = IdealBasis::new(&r, [parse_poly("u*v", &r).unwrap()]).unwrap();
    assert_eq!(germ_multiplicity(&i, 1, SEED, 3).unwrap(), 2);
    let c = cone();
    let x = IdealBasis::new(c.ring(), c.phi().iter().cloned()).unwrap();
    assert_eq!(germ_multiplicity(&x, 2, SEED, 3).unwrap(), 2);
}

#[test]
fn small_reports() {
    let r = analyze(&fold(), SEED, 3).unwrap();
    assert_eq!((r.c, r.d, r.mu_delta, r.m, r.mu_preimage), (0, 0, 0, 2, 0));
    assert!(r.identity_checks.unwrap().all());

    let r = analyze(&cusp(), SEED, 3).unwrap();
    assert_eq!((r.c, r.d, r.mu_delta, r.m, r.mu_preimage, r.mu_s), (1, 0, 2, 3, 3, 0));
    assert!(r.identity_checks.unwrap().all());

    let r = analyze(&cone(), SEED, 3).unwrap();
    assert_eq!((r.mu_s, r.c, r.m, r.mu_x, r.mu_delta, r.d, r.mu_disc), (1, 0, 2, 1, 1, 0, 1));
    assert!(r.identity_checks.unwrap().all());

    let id = GermProblem::parse(&["x", "y"], &[], ["x", "y"]).unwrap();
    let r = analyze(&id, SEED, 3).unwrap();
    assert_eq!(r.m, 1);
    assert!(r.identity_checks.is_none());
    assert_eq!(r.notes, vec!["submersion germ, no singularity"]);
}

#[test]
fn problem_validation() {
    assert!(GermProblem::parse(&["x", "y", "z"], &[], ["x", "y"]).is_err());
    assert!(GermProblem::parse(&["x", "y"], &[], ["x+1", "y"]).is_err());
    let e = GermProblem::parse(&["x", "y"], &[], ["x", "w"]).unwrap_err();
    assert_eq!(e.kind(), ErrorKind::Input);
    let ok = cusp().with_weights(vec![2, 1], vec![], [2, 3]);
    assert!(ok.is_ok());
    assert!(cusp().with_weights(vec![1, 1], vec![], [2, 3]).is_err());
}
