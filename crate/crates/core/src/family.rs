//! One-parameter families: invariants sampled at finitely many parameter
//! values, and the equisingularity verdicts read off the resulting table.

use std::sync::Arc;

use num_traits::Zero;

use crate::invariants::{self, germ_multiplicity, singular_locus_ideal, GermProblem, InvariantError, Result, COEFF_BOUND};
use crate::polyring::{parse_poly, rat, MonomialOrder, PolyRing, Polynomial, Rational};
use crate::seed;

/// The map of a family: explicit components, or one generic linear
/// projection shared by every member.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyMap {
    Explicit([Polynomial; 2]),
    GenericProjection,
}

/// `phi_t` and `f_t` over the variables `x_1..x_n` and a parameter `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyProblem {
    ring: Arc<PolyRing>,
    parameter: String,
    phi: Vec<Polynomial>,
    f: FamilyMap,
    t_samples: Vec<Rational>,
}

impl FamilyProblem {
    /// `ring` holds the space variables and the parameter.
    pub fn new(ring: &Arc<PolyRing>, parameter: &str, phi: Vec<Polynomial>, f: FamilyMap, t_samples: Vec<Rational>) -> Result<Self> {
        let t = ring.var_index(parameter)?;
        let n = ring.nvars() - 1;
        if n < 2 {
            return Err(InvariantError::Input(format!("need at least 2 space variables besides `{parameter}`")));
        }
        if phi.len() != n - 2 {
            return Err(InvariantError::Input(format!("{n} variables need {} equations, got {}", n - 2, phi.len())));
        }
        if t_samples.is_empty() || !t_samples.iter().any(Zero::is_zero) {
            return Err(InvariantError::Input("the parameter samples must include 0".into()));
        }
        let phi: Vec<Polynomial> = phi.iter().map(|p| p.map_to_ring(ring)).collect::<std::result::Result<_, _>>()?;
        let f = match f {
            FamilyMap::Explicit([a, b]) => FamilyMap::Explicit([a.map_to_ring(ring)?, b.map_to_ring(ring)?]),
            FamilyMap::GenericProjection => FamilyMap::GenericProjection,
        };
        let explicit: &[Polynomial] = match &f {
            FamilyMap::Explicit(f) => f,
            FamilyMap::GenericProjection => &[],
        };
        // every member must fix the origin: no term may be a pure power of t
        for p in phi.iter().chain(explicit) {
            if p.terms().iter().any(|term| (0..ring.nvars()).all(|i| i == t || term.exps.as_slice()[i] == 0)) {
                return Err(InvariantError::Input(format!("{p} does not vanish at the origin for every {parameter}")));
            }
        }
        Ok(FamilyProblem { ring: ring.clone(), parameter: parameter.to_string(), phi, f, t_samples })
    }

    /// Parses over `vars` plus `parameter`; `f = None` asks for a generic projection.
    pub fn parse(vars: &[&str], parameter: &str, phi: &[&str], f: Option<[&str; 2]>, t_samples: Vec<Rational>) -> Result<Self> {
        let ring = PolyRing::new(vars.iter().copied().chain([parameter]), MonomialOrder::DegRevLex)?;
        let phi = phi.iter().map(|p| parse_poly(p, &ring)).collect::<std::result::Result<Vec<_>, _>>()?;
        let f = match f {
            Some([a, b]) => FamilyMap::Explicit([parse_poly(a, &ring)?, parse_poly(b, &ring)?]),
            None => FamilyMap::GenericProjection,
        };
        FamilyProblem::new(&ring, parameter, phi, f, t_samples)
    }

    pub fn parameter(&self) -> &str {
        &self.parameter
    }

    pub fn phi(&self) -> &[Polynomial] {
        &self.phi
    }

    pub fn map(&self) -> &FamilyMap {
        &self.f
    }

    pub fn t_samples(&self) -> &[Rational] {
        &self.t_samples
    }

    /// Same family, other samples (which must include 0).
    pub fn with_samples(&self, t_samples: Vec<Rational>) -> Result<Self> {
        FamilyProblem::new(&self.ring, &self.parameter, self.phi.clone(), self.f.clone(), t_samples)
    }

    /// The space variables, without the parameter.
    pub fn space_ring(&self) -> Result<Arc<PolyRing>> {
        let vars = self.ring.vars().iter().filter(|v| **v != self.parameter).cloned();
        Ok(PolyRing::new(vars, MonomialOrder::NegDegRevLex)?)
    }
}

/// A random linear map `C^n -> C^2` of rank 2, drawn from `seed`.
pub fn generic_projection(ring: &Arc<PolyRing>, seed: u64, label: &str) -> [Polynomial; 2] {
    let n = ring.nvars();
    let mut rng = seed::stream(seed, label);
    loop {
        let rows: Vec<Vec<i64>> = (0..2).map(|_| (0..n).map(|_| seed::coefficient(&mut rng, COEFF_BOUND)).collect()).collect();
        let independent = (0..n).any(|i| (i + 1..n).any(|j| rows[0][i] * rows[1][j] != rows[0][j] * rows[1][i]));
        if independent {
            return [0, 1].map(|r| {
                rows[r].iter().enumerate().fold(Polynomial::zero(ring), |acc, (i, &c)| &acc + &Polynomial::var_at(ring, i).scale(&rat(c)))
            });
        }
    }
}

/// The member at `t0`. A generic projection depends on `seed` only, so every
/// sample of one run sees the same linear map.
pub fn specialize_family(family: &FamilyProblem, t0: &Rational, seed: u64) -> Result<GermProblem> {
    if !family.t_samples.contains(t0) {
        return Err(InvariantError::Input(format!("{t0} is not among the parameter samples")));
    }
    let space = family.space_ring()?;
    let binding = [(family.parameter.as_str(), t0.clone())];
    let at = |p: &Polynomial| -> Result<Polynomial> { Ok(p.specialize(&binding)?.map_to_ring(&space)?) };
    let phi = family.phi.iter().map(at).collect::<Result<Vec<_>>>()?;
    let f = match &family.f {
        FamilyMap::Explicit([a, b]) => [at(a)?, at(b)?],
        FamilyMap::GenericProjection => generic_projection(&space, seed, "projection"),
    };
    GermProblem::new(&space, phi, f)
}

/// `X` is smooth at the origin: no equations, or independent linear parts.
fn is_smooth(p: &GermProblem) -> Result<bool> {
    if p.phi().is_empty() {
        return Ok(true);
    }
    let linear: Vec<Vec<Rational>> =
        crate::polyring::full_jacobian(p.phi()).iter().map(|row| row.iter().map(Polynomial::constant_coeff).collect()).collect();
    Ok(invariants::rational_rank(linear) == p.phi().len())
}

/// Multiplicity of the polar curve of a generic linear projection of `X`,
/// minimized over `trials` projections; 0 when `X` is smooth.
pub fn polar_multiplicity_m1(p: &GermProblem, seed: u64, trials: u32) -> Result<u64> {
    if is_smooth(p)? {
        return Ok(0);
    }
    let mut best: Option<u64> = None;
    for i in 0..trials.max(1) {
        let f = generic_projection(p.ring(), seed, &format!("polar/{i}"));
        let member = GermProblem::new(p.ring(), p.phi().to_vec(), f)?;
        let polar = singular_locus_ideal(&member)?;
        let m = germ_multiplicity(&polar, 1, seed::derive(seed, &format!("polar-cut/{i}")), 1)?;
        best = Some(best.map_or(m, |b| b.min(m)));
    }
    Ok(best.expect("at least one trial"))
}

/// Invariants of one member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleRecord {
    pub t: Rational,
    pub mu_x: u64,
    pub m0_x: u64,
    pub m1_x: u64,
    /// From `m0 + m2 = mu + m1 + 1`.
    pub m2_x: i64,
    pub mu_s: u64,
    pub mu_delta: u64,
    pub c: u64,
    pub d: u64,
    pub m: u64,
    pub m0_preimage: u64,
    /// The four identities hold (`None` for a submersion).
    pub identities: Option<bool>,
}

/// `None` means undetermined: some sample failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdicts {
    pub whitney_surfaces: Option<bool>,
    pub whitney_unfolding: Option<bool>,
    pub zariski: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyProfile {
    pub samples: Vec<SampleRecord>,
    /// Members that could not be analyzed.
    pub failures: Vec<(Rational, InvariantError)>,
    pub verdicts: Verdicts,
    pub notes: Vec<String>,
}

/// One row of the profile: the member at `t` analyzed under the run seed.
pub fn sample_record(family: &FamilyProblem, t: &Rational, seed: u64, trials: u32) -> Result<SampleRecord> {
    let member = specialize_family(family, t, seed)?;
    let task = format!("sample/{t}");
    let report = invariants::analyze(&member, seed::derive(seed, &task), trials)?;
    let m1_x = polar_multiplicity_m1(&member, seed::derive(seed, &format!("{task}/m1")), trials)?;
    let m2_x = report.mu_x as i64 + m1_x as i64 + 1 - report.m0_x as i64;
    Ok(SampleRecord {
        t: t.clone(),
        mu_x: report.mu_x,
        m0_x: report.m0_x,
        m1_x,
        m2_x,
        mu_s: report.mu_s,
        mu_delta: report.mu_delta,
        c: report.c,
        d: report.d,
        m: report.m,
        m0_preimage: report.m0_preimage,
        identities: report.identity_checks.map(|c| c.all()),
    })
}

type Column = (&'static str, fn(&SampleRecord) -> i64);

const COLUMNS: [Column; 10] = [
    ("mu_X", |r| r.mu_x as i64),
    ("m0_X", |r| r.m0_x as i64),
    ("m1_X", |r| r.m1_x as i64),
    ("m2_X", |r| r.m2_x),
    ("mu_S", |r| r.mu_s as i64),
    ("mu_Delta", |r| r.mu_delta as i64),
    ("c", |r| r.c as i64),
    ("d", |r| r.d as i64),
    ("m", |r| r.m as i64),
    ("m0_preimage", |r| r.m0_preimage as i64),
];

fn column(name: &str) -> fn(&SampleRecord) -> i64 {
    COLUMNS.iter().find(|(n, _)| *n == name).expect("known column").1
}

fn constant(samples: &[SampleRecord], names: &[&str]) -> bool {
    names.iter().all(|name| {
        let get = column(name);
        samples.windows(2).all(|w| get(&w[0]) == get(&w[1]))
    })
}

/// The verdicts as functions of the table alone.
pub fn verdicts(samples: &[SampleRecord], any_failed: bool) -> Verdicts {
    if any_failed || samples.is_empty() {
        return Verdicts { whitney_surfaces: None, whitney_unfolding: None, zariski: None };
    }
    let surfaces = constant(samples, &["mu_X", "m1_X"]);
    Verdicts {
        whitney_surfaces: Some(surfaces),
        whitney_unfolding: Some(constant(samples, &["mu_X", "m1_X", "mu_Delta", "m0_preimage"])),
        zariski: Some(surfaces && constant(samples, &["c", "d"])),
    }
}

/// Analyzes every sample and derives the verdicts.
pub fn family_profile(family: &FamilyProblem, seed: u64, trials: u32) -> FamilyProfile {
    let mut samples = Vec::new();
    let mut failures = Vec::new();
    for t in &family.t_samples {
        match sample_record(family, t, seed, trials) {
            Ok(r) => samples.push(r),
            Err(e) => failures.push((t.clone(), e)),
        }
    }
    let verdicts = verdicts(&samples, !failures.is_empty());
    let mut notes = Vec::new();
    for (t, e) in &failures {
        notes.push(format!("sample t={t} failed: {e}"));
    }
    if failures.is_empty() {
        notes.extend(jumps(&samples));
        for r in &samples {
            if r.identities == Some(false) {
                notes.push(format!("identity check failed at t={}", r.t));
            }
            if r.m2_x < 0 {
                notes.push(format!("negative m2 at t={}", r.t));
            }
        }
    }
    FamilyProfile { samples, failures, verdicts, notes }
}

/// Describes each column as "jump detected" or "no jump detected on samples",
/// and flags values at 0 below those elsewhere (semicontinuity).
fn jumps(samples: &[SampleRecord]) -> Vec<String> {
    let mut out = Vec::new();
    let zero = samples.iter().find(|r| r.t.is_zero());
    for (name, get) in COLUMNS {
        let values: Vec<i64> = samples.iter().map(get).collect();
        if values.windows(2).all(|w| w[0] == w[1]) {
            out.push(format!("{name}: no jump detected on samples"));
        } else {
            let listed: Vec<String> = samples.iter().map(|r| format!("{}@{}", get(r), r.t)).collect();
            out.push(format!("{name}: jump detected ({})", listed.join(", ")));
        }
        if let Some(z) = zero {
            if ["mu_X", "mu_S", "mu_Delta", "c", "d"].contains(&name) && samples.iter().any(|r| get(r) > get(z)) {
                out.push(format!("{name}: value at t=0 is below a nearby value, upper semicontinuity fails"));
            }
        }
    }
    out
}

/// Warnings about how much the samples can support.
pub fn sampling_adequacy(family: &FamilyProblem, profile: &FamilyProfile) -> Vec<String> {
    let mut out = Vec::new();
    let nonzero = family.t_samples.iter().filter(|t| !t.is_zero()).count();
    if nonzero < 3 {
        out.push(format!("add nonzero samples: only {nonzero} nonzero parameter value(s), at least 3 recommended"));
    }
    let generic: Vec<&SampleRecord> = profile.samples.iter().filter(|r| !r.t.is_zero()).collect();
    for (name, get) in COLUMNS {
        if generic.windows(2).any(|w| get(w[0]) != get(w[1])) {
            out.push(format!("nonzero samples disagree on {name}: some nonzero samples may be special"));
        }
    }
    let v = profile.verdicts;
    if [v.whitney_surfaces, v.whitney_unfolding, v.zariski].contains(&Some(true)) {
        out.push("constancy over finitely many samples is evidence, not proof".into());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::ratio;

    fn samples(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&k| rat(k)).collect()
    }

    #[test]
    fn samples_must_include_zero() {
        let err = FamilyProblem::parse(&["x", "y", "z"], "t", &["x^2+y^2+z^2"], None, samples(&[1, 2])).unwrap_err();
        assert!(err.to_string().contains("include 0"));
    }

    #[test]
    fn members_must_fix_the_origin() {
        let err = FamilyProblem::parse(&["x", "y", "z"], "t", &["x^2+y^2+z^2+t"], None, samples(&[0, 1])).unwrap_err();
        assert!(err.to_string().contains("vanish"));
    }

    #[test]
    fn specialization_drops_the_parameter() {
        let fam = FamilyProblem::parse(&["x", "y", "z"], "t", &["x^2+y^2+z^3+t*x*z"], Some(["x", "y"]), vec![rat(0), ratio(1, 2)]).unwrap();
        let member = specialize_family(&fam, &ratio(1, 2), 7).unwrap();
        assert_eq!(member.n(), 3);
        assert_eq!(member.phi()[0].to_string(), parse_poly("x^2+y^2+z^3+(1/2)*x*z", member.ring()).unwrap().to_string());
        assert!(specialize_family(&fam, &rat(5), 7).is_err());
    }

    #[test]
    fn projection_is_shared_across_samples() {
        let fam = FamilyProblem::parse(&["x", "y", "z"], "t", &["x^2+y^2+z^2+t*x*y*z"], None, samples(&[0, 1, 2])).unwrap();
        let a = specialize_family(&fam, &rat(0), 11).unwrap();
        let b = specialize_family(&fam, &rat(2), 11).unwrap();
        assert_eq!(a.f(), b.f());
    }

    #[test]
    fn polar_multiplicity_of_cone_and_smooth_surface() {
        let cone = GermProblem::parse(&["x", "y", "z"], &["x^2+y^2-z^2"], ["x", "y"]).unwrap();
        assert_eq!(polar_multiplicity_m1(&cone, 3, 3).unwrap(), 2);
        let plane = GermProblem::parse(&["x", "y", "z"], &["z+x^2"], ["x", "y"]).unwrap();
        assert_eq!(polar_multiplicity_m1(&plane, 3, 3).unwrap(), 0);
    }

    #[test]
    fn verdicts_follow_the_table() {
        let row = |t: i64, mu: u64, c: u64| SampleRecord {
            t: rat(t),
            mu_x: mu,
            m0_x: 2,
            m1_x: 2,
            m2_x: mu as i64 + 1,
            mu_s: 1,
            mu_delta: 3,
            c,
            d: 0,
            m: 2,
            m0_preimage: 2,
            identities: Some(true),
        };
        let v = verdicts(&[row(0, 1, 1), row(1, 1, 0)], false);
        assert_eq!(v.whitney_surfaces, Some(true));
        assert_eq!(v.zariski, Some(false));
        assert_eq!(verdicts(&[row(0, 1, 1)], true).zariski, None);
    }

    #[test]
    fn constant_family_profile() {
        let fam = FamilyProblem::parse(&["x", "y", "z"], "t", &["x^2+y^2+z^2"], Some(["x", "y+t*z"]), samples(&[0, 1, 2, -1])).unwrap();
        let profile = family_profile(&fam, 5, 2);
        assert!(profile.failures.is_empty(), "{:?}", profile.failures);
        assert_eq!(profile.verdicts.zariski, Some(true));
        assert!(sampling_adequacy(&fam, &profile).iter().any(|w| w.contains("evidence")));
    }
}
