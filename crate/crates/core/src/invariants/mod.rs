//! Invariants of a finite map germ `f: (X,0) -> (C^2,0)` where `X = V(phi)` is
//! a surface ICIS in `C^n`: singular locus, degree, cusps, discriminant,
//! double folds and the identities tying them together.

mod implicit;
mod report;
#[cfg(test)]
mod tests;

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::polyring::{determinant, jacobian_matrix, minors_ideal, parse_poly, rat, MonomialOrder, PolyError, PolyRing, Polynomial};
use crate::seed;
use crate::stdbasis::{self, Colength, IdealBasis};

pub use report::{analyze, IdentityChecks, InvariantReport};

/// Run seed used when none is given.
pub const DEFAULT_SEED: u64 = 20240101;
/// Independent randomizations that must agree.
pub const DEFAULT_TRIALS: u32 = 3;
/// Random coefficients are drawn from `[-COEFF_BOUND, COEFF_BOUND]`.
pub const COEFF_BOUND: i64 = 101;

/// Coarse error classes; the command line maps them to exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or inconsistent input.
    Input,
    /// The germ is degenerate, not finite or not A-finite.
    Degenerate,
    /// Random draws kept disagreeing.
    Genericity,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InvariantError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{invariant}: {reason}")]
    Degenerate { invariant: &'static str, reason: String },
    #[error("{invariant}: randomized computations disagree after escalation: {values}")]
    Genericity { invariant: &'static str, values: String },
}

impl InvariantError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            InvariantError::Input(_) | InvariantError::Poly(_) => ErrorKind::Input,
            InvariantError::Degenerate { .. } => ErrorKind::Degenerate,
            InvariantError::Genericity { .. } => ErrorKind::Genericity,
        }
    }

    /// Renames the failing invariant, keeping the error class.
    pub fn labelled(self, name: &'static str) -> Self {
        match self {
            InvariantError::Degenerate { reason, .. } => InvariantError::Degenerate { invariant: name, reason },
            InvariantError::Genericity { values, .. } => InvariantError::Genericity { invariant: name, values },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, InvariantError>;

fn degenerate(invariant: &'static str, reason: impl Into<String>) -> InvariantError {
    InvariantError::Degenerate { invariant, reason: reason.into() }
}

/// A presentation of `(X,0) = V(phi)` and of `f = (f1, f2)` on it.
#[derive(Clone, Debug, PartialEq)]
pub struct GermProblem {
    ring: Arc<PolyRing>,
    phi: Vec<Polynomial>,
    f: [Polynomial; 2],
    weights: Option<Vec<u32>>,
    phi_degrees: Option<Vec<u64>>,
    f_degrees: Option<[u64; 2]>,
}

impl GermProblem {
    /// `phi` must have `n - 2` entries; everything must vanish at the origin.
    pub fn new(ring: &Arc<PolyRing>, phi: Vec<Polynomial>, f: [Polynomial; 2]) -> Result<Self> {
        let n = ring.nvars();
        if n < 2 {
            return Err(InvariantError::Input(format!("need at least 2 variables, got {n}")));
        }
        if phi.len() != n - 2 {
            return Err(InvariantError::Input(format!("{n} variables need {} defining equations for a surface, got {}", n - 2, phi.len())));
        }
        let ring = ring.with_order(MonomialOrder::NegDegRevLex)?;
        let phi = phi.iter().map(|p| p.map_to_ring(&ring)).collect::<std::result::Result<Vec<_>, _>>()?;
        let f = [f[0].map_to_ring(&ring)?, f[1].map_to_ring(&ring)?];
        for (name, p) in phi.iter().map(|p| ("phi", p)).chain(f.iter().map(|p| ("f", p))) {
            if !p.vanishes_at_origin() {
                return Err(InvariantError::Input(format!("{name} component {p} does not vanish at the origin")));
            }
        }
        for (i, p) in phi.iter().enumerate() {
            if p.is_zero() {
                return Err(InvariantError::Input(format!("phi component {} is zero", i + 1)));
            }
        }
        Ok(GermProblem { ring, phi, f, weights: None, phi_degrees: None, f_degrees: None })
    }

    /// Parses every polynomial over the variables `vars`.
    pub fn parse(vars: &[&str], phi: &[&str], f: [&str; 2]) -> Result<Self> {
        let ring = PolyRing::new(vars.iter().copied(), MonomialOrder::NegDegRevLex)?;
        let phi = phi.iter().map(|p| parse_poly(p, &ring)).collect::<std::result::Result<Vec<_>, _>>()?;
        let f = [parse_poly(f[0], &ring)?, parse_poly(f[1], &ring)?];
        GermProblem::new(&ring, phi, f)
    }

    /// Attaches weights and degrees, checking weighted homogeneity term by term.
    pub fn with_weights(mut self, weights: Vec<u32>, phi_degrees: Vec<u64>, f_degrees: [u64; 2]) -> Result<Self> {
        let n = self.ring.nvars();
        if weights.len() != n || weights.contains(&0) {
            return Err(InvariantError::Input(format!("need {n} positive weights, got {weights:?}")));
        }
        if phi_degrees.len() != self.phi.len() || phi_degrees.contains(&0) || f_degrees.contains(&0) {
            return Err(InvariantError::Input("degrees must be positive, one per equation".into()));
        }
        for (p, d) in self.phi.iter().zip(&phi_degrees).chain(self.f.iter().zip(&f_degrees)) {
            if !p.is_weighted_homogeneous(&weights, *d) {
                return Err(InvariantError::Input(format!("{p} is not weighted homogeneous of degree {d} for weights {weights:?}")));
            }
        }
        self.weights = Some(weights);
        self.phi_degrees = Some(phi_degrees);
        self.f_degrees = Some(f_degrees);
        Ok(self)
    }

    /// The ring, with the local order.
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.ring.nvars()
    }

    pub fn phi(&self) -> &[Polynomial] {
        &self.phi
    }

    pub fn f(&self) -> &[Polynomial; 2] {
        &self.f
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn phi_degrees(&self) -> Option<&[u64]> {
        self.phi_degrees.as_deref()
    }

    pub fn f_degrees(&self) -> Option<[u64; 2]> {
        self.f_degrees
    }

    fn var_names(&self) -> Vec<&str> {
        self.ring.vars().iter().map(String::as_str).collect()
    }
}

fn local_colength(gens: impl IntoIterator<Item = Polynomial>, ring: &Arc<PolyRing>) -> Result<Colength> {
    let ideal = IdealBasis::new(ring, gens)?;
    Ok(stdbasis::colength_modular(&ideal, &MonomialOrder::NegDegRevLex)?)
}

/// `det J(f1, f2, phi_1, ..., phi_{n-2})` with respect to `x_1..x_n`.
pub fn delta(p: &GermProblem) -> Result<Polynomial> {
    let rows: Vec<Polynomial> = p.f.iter().chain(p.phi.iter()).cloned().collect();
    let j = jacobian_matrix(&rows, &p.var_names())?;
    Ok(determinant(&j)?)
}

/// Generators `(phi_1, ..., phi_{n-2}, delta)` of the singular locus of `f` on `X`.
pub fn singular_locus_ideal(p: &GermProblem) -> Result<IdealBasis> {
    let d = delta(p)?;
    if d.is_zero() {
        return Err(degenerate(
            "singular locus",
            "the jacobian determinant vanishes identically, f is not of finite singularity type on X",
        ));
    }
    Ok(IdealBasis::new(&p.ring, p.phi.iter().cloned().chain([d]))?)
}

/// Runs `run` for each trial (in parallel) and insists that all finite values
/// agree, escalating the coefficient range once before giving up.
fn agreed<F>(invariant: &'static str, seed: u64, trials: u32, run: F) -> Result<u64>
where
    F: Fn(u64, i64) -> Result<Colength> + Sync,
{
    let trials = trials.max(1);
    let mut seen = Vec::new();
    for bound in [COEFF_BOUND, COEFF_BOUND * 10] {
        let values = parallel_trials(trials, |i| run(seed::derive(seed, &format!("{bound}/{i}")), bound))?;
        if values.iter().all(|v| *v == values[0]) {
            return match values[0] {
                Colength::Finite(v) => Ok(v),
                Colength::Infinite => Err(degenerate(invariant, "infinite colength: the singularity is not isolated")),
            };
        }
        seen.push(format!("{:?}", values.iter().map(|v| v.to_string()).collect::<Vec<_>>()));
    }
    Err(InvariantError::Genericity { invariant, values: seen.join(" then ") })
}

fn parallel_trials<T, F>(trials: u32, run: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u32) -> Result<T> + Sync,
{
    if trials == 1 {
        return Ok(vec![run(0)?]);
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..trials)
            .map(|i| {
                s.spawn({
                    let run = &run;
                    move || run(i)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("trial thread panicked")).collect()
    })
}

/// A random `k x k` integer matrix with entries in `[-bound, bound]` and
/// nonzero determinant.
fn invertible_matrix(rng: &mut rand_chacha::ChaCha8Rng, k: usize, bound: i64) -> Vec<Vec<i64>> {
    loop {
        let m: Vec<Vec<i64>> = (0..k).map(|_| (0..k).map(|_| seed::coefficient(rng, bound)).collect()).collect();
        if rank(&m) == k {
            return m;
        }
    }
}

fn rank(m: &[Vec<i64>]) -> usize {
    rational_rank(m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
}

/// Rank over the rationals by forward elimination.
pub(crate) fn rational_rank(mut a: Vec<Vec<BigRational>>) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot = &head[r];
        for row in tail {
            if !row[c].is_zero() {
                let factor = &row[c] / &pivot[c];
                for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &factor * y;
                }
            }
        }
        r += 1;
    }
    r
}

fn combine(gens: &[Polynomial], rows: &[Vec<i64>]) -> Vec<Polynomial> {
    rows.iter().map(|row| gens.iter().zip(row).fold(Polynomial::zero(gens[0].ring()), |acc, (g, &c)| &acc + &g.scale(&rat(c)))).collect()
}

/// `mu(X_j) + mu(X_{j-1})` summed along the Lê–Greuel chain for one choice
/// of generators: returns `mu(X_k)` or infinite.
fn le_greuel_chain(g: &[Polynomial]) -> Result<Colength> {
    let ring = g[0].ring().clone();
    let vars: Vec<&str> = ring.vars().iter().map(String::as_str).collect();
    let mut mu: i64 = 0;
    for j in 1..=g.len() {
        let jac = jacobian_matrix(&g[..j], &vars)?;
        let minors = minors_ideal(&jac, j)?;
        let gens = g[..j - 1].iter().cloned().chain(minors);
        match local_colength(gens, &ring)? {
            Colength::Finite(l) => mu = l as i64 - mu,
            Colength::Infinite => return Ok(Colength::Infinite),
        }
    }
    if mu < 0 {
        return Err(InvariantError::Input("negative Milnor number: the equations do not define an ICIS".into()));
    }
    Ok(Colength::Finite(mu as u64))
}

/// Milnor number of the ICIS `V(gens)` at the origin via the Lê–Greuel
/// recursion over generic linear combinations of `gens`.
pub fn milnor_icis(gens: &[Polynomial], seed: u64, trials: u32) -> Result<u64> {
    let gens: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Ok(0);
    }
    if gens.len() > gens[0].ring().nvars() {
        return Err(InvariantError::Input("more equations than variables".into()));
    }
    if gens.iter().any(|g| g.is_local_unit()) {
        return Err(degenerate("milnor number", "the germ is empty (a generator is a unit)"));
    }
    if gens.len() == 1 {
        // nothing to randomize for a hypersurface
        return match le_greuel_chain(&gens)? {
            Colength::Finite(v) => Ok(v),
            Colength::Infinite => Err(degenerate("milnor number", "infinite colength: the singularity is not isolated")),
        };
    }
    agreed("milnor number", seed, trials, |s, bound| {
        let mut rng = seed::stream(s, "combination");
        let m = invertible_matrix(&mut rng, gens.len(), bound);
        le_greuel_chain(&combine(&gens, &m))
    })
}

/// `m = dim O_n / (phi, f1, f2)`, the local degree of `f` on `X`.
pub fn degree_m(p: &GermProblem) -> Result<u64> {
    match local_colength(p.phi.iter().chain(p.f.iter()).cloned(), &p.ring)? {
        Colength::Finite(m) => Ok(m),
        Colength::Infinite => Err(degenerate("degree m", "f^-1(0) is not isolated on X: f is not finite")),
    }
}

/// `c = dim O_n / (phi + I_n(J(f, phi, delta)))`.
pub fn cusp_count(p: &GermProblem) -> Result<u64> {
    let d = singular_locus_ideal(p)?.generators().last().cloned().expect("delta");
    let rows: Vec<Polynomial> = p.f.iter().chain(p.phi.iter()).chain([&d]).cloned().collect();
    let jac = jacobian_matrix(&rows, &p.var_names())?;
    let minors = minors_ideal(&jac, p.n())?;
    match local_colength(p.phi.iter().cloned().chain(minors), &p.ring)? {
        Colength::Finite(c) => Ok(c),
        Colength::Infinite => Err(degenerate("cusp count", "infinite colength: f is not A-finite")),
    }
}

/// Names for the target coordinates that do not clash with the source ones.
fn target_names(ring: &PolyRing) -> (String, String) {
    let mut u = String::from("u");
    let mut v = String::from("v");
    while ring.index_of(&u).is_some() || ring.index_of(&v).is_some() {
        u.push('_');
        v.push('_');
    }
    (u, v)
}

/// Reduced equation `g(u,v)` of the discriminant `f(S)`: the generator of the
/// elimination ideal of `(phi, delta, u - f1, v - f2)` with respect to `x`.
pub fn discriminant_equation(p: &GermProblem) -> Result<Polynomial> {
    const NAME: &str = "discriminant";
    let sing = singular_locus_ideal(p)?;
    check_fibre_over_origin(p, &sing)?;
    let (u, v) = target_names(&p.ring);
    let target = PolyRing::new([u.clone(), v.clone()], MonomialOrder::DegRevLex)?;
    let global = p.ring.with_order(MonomialOrder::DegRevLex)?;
    let gb = stdbasis::standard_basis(&IdealBasis::new(&global, sing.generators().iter().cloned())?, global.order())?;
    // Bezout bound on the degree of the image curve
    let bound = sing.generators().iter().map(|g| g.total_degree().max(1)).product::<u64>()
        * p.f.iter().map(|g| g.total_degree().max(1)).max().unwrap_or(1);
    let g = match implicit::image_equation(&gb, &p.f, &target, bound) {
        implicit::Image::Equation(g) => g,
        implicit::Image::Empty => return Err(degenerate(NAME, "zero elimination ideal: f restricted to S is not finite")),
        implicit::Image::NotPrincipal => {
            let mut vars: Vec<String> = p.ring.vars().to_vec();
            vars.push(u.clone());
            vars.push(v.clone());
            let big = PolyRing::new(vars, MonomialOrder::DegRevLex)?;
            let mut gens: Vec<Polynomial> = sing.generators().iter().map(|g| g.map_to_ring(&big)).collect::<std::result::Result<_, _>>()?;
            for (name, fi) in [(&u, &p.f[0]), (&v, &p.f[1])] {
                gens.push(&Polynomial::var(&big, name)? - &fi.map_to_ring(&big)?);
            }
            let elim = stdbasis::eliminate(&IdealBasis::new(&big, gens)?, &p.var_names())?;
            elim.generators()
                .iter()
                .min_by_key(|g| (g.total_degree(), g.len()))
                .cloned()
                .ok_or_else(|| degenerate(NAME, "zero elimination ideal: f restricted to S is not finite"))?
                .map_to_ring(&target)?
        }
    };
    if !g.vanishes_at_origin() {
        return Err(degenerate(NAME, "the singular locus does not pass through the origin"));
    }
    Ok(g.primitive())
}

/// Polynomial elimination sees all of `S`, not just its germ; other points of
/// `S` over the origin would add spurious branches to the discriminant germ.
fn check_fibre_over_origin(p: &GermProblem, sing: &IdealBasis) -> Result<()> {
    let fibre: Vec<Polynomial> = sing.generators().iter().chain(p.f.iter()).cloned().collect();
    let local = local_colength(fibre.clone(), &p.ring)?;
    let global_ring = p.ring.with_order(MonomialOrder::DegRevLex)?;
    let global = stdbasis::standard_basis(&IdealBasis::new(&global_ring, fibre)?, global_ring.order())?;
    if global.colength() != local {
        return Err(degenerate(
            "discriminant",
            format!(
                "S meets f^-1(0) away from the origin (global count {}, local {}); polynomial elimination cannot isolate the germ",
                global.colength(),
                local
            ),
        ));
    }
    Ok(())
}

/// `mu` of a plane curve germ: `dim O_2 / (g_u, g_v)`.
pub fn mu_plane_curve(g: &Polynomial) -> Result<u64> {
    if g.ring().nvars() != 2 {
        return Err(InvariantError::Input("a plane curve needs exactly two variables".into()));
    }
    if !g.vanishes_at_origin() {
        return Err(InvariantError::Input(format!("{g} does not vanish at the origin")));
    }
    let grads = [g.derivative_at(0), g.derivative_at(1)];
    match local_colength(grads, g.ring())? {
        Colength::Finite(m) => Ok(m),
        Colength::Infinite => Err(degenerate("mu(Delta)", "the discriminant is not reduced at 0: f is not A-finite")),
    }
}

/// `d = (mu(Delta) - mu(S))/2 - c`.
pub fn double_fold_count(mu_delta: u64, mu_s: u64, c: u64) -> Result<u64> {
    let diff = mu_delta as i128 - mu_s as i128;
    if diff < 0 || diff % 2 != 0 {
        return Err(degenerate(
            "double folds",
            format!("mu(Delta) - mu(S) = {diff} is not a non-negative even number (probably not A-finite)"),
        ));
    }
    let d = diff / 2 - c as i128;
    if d < 0 {
        return Err(degenerate("double folds", format!("negative double-fold count {d}")));
    }
    Ok(d as u64)
}

/// `mu_Delta(f) = mu(Delta) - 2c - d`, checked against `d + mu(S)`.
pub fn discriminant_milnor_number(mu_delta: u64, c: u64, d: u64, mu_s: u64) -> Result<u64> {
    let a = mu_delta as i128 - 2 * c as i128 - d as i128;
    let b = d as i128 + mu_s as i128;
    if a != b || a < 0 {
        return Err(degenerate("discriminant Milnor number", format!("mu(Delta)-2c-d = {a} but d+mu(S) = {b}")));
    }
    Ok(a as u64)
}

/// Equations `(phi, psi)` of the reduced preimage curve `f^-1(Delta)` on `X`.
///
/// `g(f)` vanishes to second order along `S` (a fold is two-to-one onto its
/// image), so `V(phi, g(f))` is never reduced. Writing `g(f) = a*phi + psi*delta`
/// removes exactly one copy of `S`; `psi` is unique modulo `phi`.
pub fn preimage_equations(p: &GermProblem, g: &Polynomial) -> Result<Vec<Polynomial>> {
    let sing = singular_locus_ideal(p)?;
    let global = p.ring.with_order(MonomialOrder::DegRevLex)?;
    let subs: Vec<Polynomial> = p.f.iter().map(|fi| fi.map_to_ring(&global)).collect::<std::result::Result<_, _>>()?;
    let pullback = g.compose(&subs)?;
    let ideal = IdealBasis::new(&global, sing.generators().iter().cloned())?;
    let lift =
        stdbasis::lift(&pullback, &ideal)?.ok_or_else(|| degenerate("preimage curve", "g(f) is not in the ideal of the singular locus"))?;
    let psi = lift.cofactors.last().expect("delta cofactor").map_to_ring(&p.ring)?;
    if psi.is_zero() {
        return Err(degenerate("preimage curve", "g(f) vanishes on X"));
    }
    Ok(p.phi.iter().cloned().chain([psi.primitive()]).collect())
}

/// `mu` of the ICIS `V(base, h)`, given `mu_base = mu(V(base))` for an ICIS
/// `V(base)`: one Lê–Greuel step along the flag `V(base) ⊃ V(base, h)`.
/// No genericity is involved, so the result is deterministic.
pub fn milnor_on(base: &[Polynomial], mu_base: u64, h: &Polynomial, invariant: &'static str) -> Result<u64> {
    if h.is_local_unit() {
        return Err(degenerate(invariant, "the germ is empty (a generator is a unit)"));
    }
    let ring = h.ring().clone();
    let vars: Vec<&str> = ring.vars().iter().map(String::as_str).collect();
    let all: Vec<Polynomial> = base.iter().cloned().chain([h.clone()]).collect();
    let jac = jacobian_matrix(&all, &vars)?;
    let minors = minors_ideal(&jac, all.len())?;
    match local_colength(base.iter().cloned().chain(minors), &ring)? {
        Colength::Finite(l) if l >= mu_base => Ok(l - mu_base),
        Colength::Finite(l) => {
            Err(InvariantError::Input(format!("{invariant}: flag colength {l} below mu = {mu_base} of the ambient germ")))
        }
        Colength::Infinite => Err(degenerate(invariant, "infinite colength: the singularity is not isolated")),
    }
}

/// `mu(S)` of the singular locus, given `mu_x = mu(X)`.
pub fn singular_locus_milnor(p: &GermProblem, mu_x: u64) -> Result<u64> {
    milnor_on(&p.phi, mu_x, &delta(p)?, "mu(S)")
}

/// `mu(f^-1(Delta))` of the reduced preimage curve.
pub fn preimage_curve_milnor(p: &GermProblem, g: &Polynomial) -> Result<u64> {
    let mu_x = milnor_icis(&p.phi, DEFAULT_SEED, DEFAULT_TRIALS).map_err(|e| e.labelled("mu(X)"))?;
    let eqs = preimage_equations(p, g)?;
    milnor_on(&p.phi, mu_x, eqs.last().expect("psi"), "mu(f^-1 Delta)")
}

/// Multiplicity of the germ `V(gens)` of dimension `dim` at the origin: the
/// colength after cutting with `dim` generic hyperplanes, minimized over trials.
pub fn germ_multiplicity(gens: &IdealBasis, dim: usize, seed: u64, trials: u32) -> Result<u64> {
    let ring = gens.ring().clone();
    let n = ring.nvars();
    if dim > n {
        return Err(InvariantError::Input(format!("dimension {dim} exceeds the {n} variables")));
    }
    let values = parallel_trials(trials.max(1), |i| {
        let mut rng = seed::stream(seed, &format!("hyperplanes/{i}"));
        let mut forms = Vec::with_capacity(dim);
        for _ in 0..dim {
            let coeffs: Vec<i64> = loop {
                let c: Vec<i64> = (0..n).map(|_| seed::coefficient(&mut rng, COEFF_BOUND)).collect();
                if c.iter().any(|&x| x != 0) {
                    break c;
                }
            };
            let form =
                coeffs.iter().enumerate().fold(Polynomial::zero(&ring), |acc, (k, &c)| &acc + &Polynomial::var_at(&ring, k).scale(&rat(c)));
            forms.push(form);
        }
        local_colength(gens.generators().iter().cloned().chain(forms), &ring)
    })?;
    values
        .into_iter()
        .filter_map(Colength::finite)
        .min()
        .ok_or_else(|| degenerate("multiplicity", format!("the germ is not of dimension {dim}")))
}
