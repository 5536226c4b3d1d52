use germlab_core::family::{family_profile, polar_multiplicity_m1, sampling_adequacy, specialize_family, FamilyProblem, SampleRecord};
use germlab_core::invariants::GermProblem;
use germlab_core::polyring::{parse_poly, rat};

fn samples() -> Vec<num_rational::BigRational> {
    [0, 1, 2, -1].map(rat).to_vec()
}

#[test]
fn smooth_family_is_equisingular() {
    let fam = FamilyProblem::parse(&["x", "y"], "t", &[], Some(["x", "y^3+x*y"]), samples()).unwrap();
    let profile = family_profile(&fam, 3, 3);
    assert!(profile.failures.is_empty());
    let v = profile.verdicts;
    assert_eq!((v.whitney_surfaces, v.whitney_unfolding, v.zariski), (Some(true), Some(true), Some(true)));
    for r in &profile.samples {
        assert_eq!((r.m1_x, r.c, r.mu_delta), (0, 1, 2));
    }
}

#[test]
fn briancon_speder_members() {
    let fam = FamilyProblem::parse(&["x", "y", "z"], "t", &["x^6+y^6+z^3+t*x^4*z"], None, samples()).unwrap();
    let zero = specialize_family(&fam, &rat(0), 5).unwrap();
    let one = specialize_family(&fam, &rat(1), 5).unwrap();
    assert_eq!(zero.phi()[0], parse_poly("x^6+y^6+z^3", zero.ring()).unwrap());
    assert_eq!(one.phi()[0], parse_poly("x^6+y^6+z^3+x^4*z", one.ring()).unwrap());
    assert_eq!(zero.f(), one.f());
}

#[test]
fn polar_multiplicity_of_e6_surface() {
    let p = GermProblem::parse(&["x", "y", "z"], &["x^3+y^3+z^4"], ["x+y-z", "2*x-y-z"]).unwrap();
    let a = polar_multiplicity_m1(&p, 1, 3).unwrap();
    let b = polar_multiplicity_m1(&p, 2, 3).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, 6);
}

fn row(t: i64, c: u64) -> SampleRecord {
    SampleRecord {
        t: rat(t),
        mu_x: 50,
        m0_x: 3,
        m1_x: 12,
        m2_x: 60,
        mu_s: 73,
        mu_delta: 121,
        c,
        d: 0,
        m: 3,
        m0_preimage: 24,
        identities: Some(true),
    }
}

#[test]
fn adequacy_warnings() {
    let fam = FamilyProblem::parse(&["x", "y", "z"], "t", &["x^2+y^2+z^2"], Some(["x", "y"]), vec![rat(0), rat(1)]).unwrap();
    let profile = family_profile(&fam, 1, 1);
    assert!(sampling_adequacy(&fam, &profile).iter().any(|w| w.contains("add nonzero samples")));

    let fam = fam.with_samples(vec![rat(0), rat(1), rat(2)]).unwrap();
    let mut profile = profile.clone();
    profile.samples = vec![row(0, 30), row(1, 24), row(2, 30)];
    assert!(sampling_adequacy(&fam, &profile).iter().any(|w| w.contains("nonzero samples disagree")));
    profile.samples = vec![row(0, 30), row(1, 24), row(2, 24)];
    assert!(!sampling_adequacy(&fam, &profile).iter().any(|w| w.contains("disagree")));
}
