//! Standard bases for global and local monomial orders, normal forms,
//! colengths and elimination.

mod engine;
mod lift;
mod staircase;
pub(crate) mod work;

use std::sync::Arc;

use crate::polyring::{ExponentVector, MonomialOrder, PolyRing, Polynomial, Result};

pub use lift::{lift, Lift};
pub use staircase::DEFAULT_CEILING;

use num_bigint::BigInt;

use engine::Engine;
use work::{reduce_step, Coeff, Fp, WPoly};

/// Generators of an ideal; the empty list is the zero ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealBasis {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
}

impl IdealBasis {
    /// Zero generators are dropped; all generators must live in `ring`.
    pub fn new(ring: &Arc<PolyRing>, generators: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            let g = g.map_to_ring(ring)?;
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(IdealBasis { ring: ring.clone(), generators: gens })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// This ideal plus more generators.
    pub fn extend(&self, more: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        IdealBasis::new(&self.ring, self.generators.iter().cloned().chain(more))
    }
}

/// A standard basis with respect to one monomial order.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    ideal: IdealBasis,
    ring: Arc<PolyRing>,
    basis: Vec<Polynomial>,
    leading_ideal: Vec<ExponentVector>,
    corner: Option<u64>,
}

impl StandardBasis {
    pub fn ideal(&self) -> &IdealBasis {
        &self.ideal
    }

    /// The ring of the basis elements (the ideal's variables with the basis order).
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    /// Monic, interreduced basis, sorted ascending by leading monomial.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    /// Minimal generators of the leading ideal.
    pub fn leading_ideal(&self) -> &[ExponentVector] {
        &self.leading_ideal
    }

    /// For local orders with finite colength: every monomial whose degree
    /// exceeds this bound lies in the ideal of the local ring.
    pub fn corner_bound(&self) -> Option<u64> {
        self.corner
    }

    pub fn staircase(&self) -> Staircase {
        self.staircase_with_ceiling(DEFAULT_CEILING)
    }

    pub fn staircase_with_ceiling(&self, ceiling: u32) -> Staircase {
        match staircase::enumerate(&self.leading_ideal, self.ring.nvars(), ceiling) {
            Some(list) => Staircase::Finite(list),
            None => Staircase::Infinite,
        }
    }

    pub fn colength(&self) -> Colength {
        match self.staircase() {
            Staircase::Finite(list) => Colength::Finite(list.len() as u64),
            Staircase::Infinite => Colength::Infinite,
        }
    }

    /// All s-polynomials of basis pairs reduce to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                let f = WPoly::from_poly(&self.basis[i]);
                let g = WPoly::from_poly(&self.basis[j]);
                let s = work::spoly(&f, &g, self.order()).to_poly(&self.ring);
                if !normal_form(&s, self).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// The standard monomials of a leading ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Staircase {
    Finite(Vec<ExponentVector>),
    Infinite,
}

/// Vector-space dimension of a quotient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<u64> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }
}

impl std::fmt::Display for Colength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Colength::Finite(n) => write!(f, "{n}"),
            Colength::Infinite => write!(f, "infinite"),
        }
    }
}

fn compute(ideal: &IdealBasis, order: &MonomialOrder, preset: Option<u64>) -> Result<StandardBasis> {
    let ring = ideal.ring().with_order(order.clone())?;
    let gens: Vec<WPoly<BigInt>> = ideal.generators().iter().map(|g| WPoly::from_poly(&g.reorder(&ring))).collect();
    let mut engine = Engine::new(ring.order(), ring.nvars(), DEFAULT_CEILING);
    if let Some(d) = preset {
        engine.preset_corner(d);
    }
    let outcome = engine.run(gens);
    let mut leading: Vec<ExponentVector> = outcome.basis.iter().map(|p| p.lm().clone()).collect();
    let mut basis: Vec<Polynomial> = outcome.basis.iter().map(|p| p.to_poly(&ring)).collect();
    if let Some(d) = outcome.corner {
        if let Some(standard) = staircase::enumerate_below(&leading, ring.order(), ring.nvars(), d) {
            for m in staircase::corner_generators(&standard, &leading, ring.order(), d) {
                basis.push(Polynomial::monomial(&ring, crate::polyring::rat(1), m.clone()));
                leading.push(m);
            }
        }
    }
    let leading = staircase::minimalize(leading);
    basis.sort_by(|a, b| ring.order().cmp(a.leading_exps().unwrap().as_slice(), b.leading_exps().unwrap().as_slice()));
    Ok(StandardBasis { ideal: ideal.clone(), ring, basis, leading_ideal: leading, corner: outcome.corner })
}

/// Standard basis of `ideal` with respect to `order`: Buchberger completion for
/// global orders, Mora's tangent-cone algorithm for local ones.
pub fn standard_basis(ideal: &IdealBasis, order: &MonomialOrder) -> Result<StandardBasis> {
    compute(ideal, order, None)
}

/// Remainder of `p` modulo the basis. For global orders this is the fully
/// reduced normal form. For local orders the leading term is reduced with
/// Mora's algorithm; tails are reduced too once the colength is known finite.
/// In both cases the result is zero iff `p` lies in the (localized) ideal.
pub fn normal_form(p: &Polynomial, basis: &StandardBasis) -> Polynomial {
    let ring = basis.ring();
    let order = ring.order();
    let p = p.map_to_ring(ring).expect("polynomial outside the basis ring").reorder(ring);
    let mut h = WPoly::from_poly(&p);
    let scale = p.leading_term().map(|t| t.coeff.clone());
    let gens: Vec<WPoly<BigInt>> = basis.basis.iter().map(WPoly::from_poly).collect();
    if order.is_global() || basis.corner.is_some() {
        // full reduction terminates here; done over the rationals so the
        // remainder is exact, not just a scalar multiple
        return remainder(&p, basis.basis(), basis.corner);
    }
    let mut extra: Vec<WPoly<BigInt>> = Vec::new();
    loop {
        if h.is_zero() {
            return Polynomial::zero(ring);
        }
        let lm = h.lm().clone();
        let reducer = gens.iter().chain(extra.iter()).filter(|g| g.lm().divides(&lm)).min_by_key(|g| (g.ecart(order), g.len())).cloned();
        let Some(g) = reducer else { break };
        if g.ecart(order) > h.ecart(order) {
            extra.push(h.clone());
        }
        h = reduce_step(&h, &g, order);
    }
    rescale(h.to_poly(ring), scale)
}

/// Exact remainder of `p` under full reduction by a monic `basis`, dropping
/// terms above `corner`.
fn remainder(p: &Polynomial, basis: &[Polynomial], corner: Option<u64>) -> Polynomial {
    let ring = p.ring().clone();
    let mut cur = match corner {
        Some(d) => p.truncate_above(d),
        None => p.clone(),
    };
    let mut done: Vec<crate::polyring::Term> = Vec::new();
    while let Some(lt) = cur.leading_term().cloned() {
        let reducer = basis.iter().filter(|g| g.leading_exps().unwrap().divides(&lt.exps)).min_by_key(|g| g.len());
        match reducer {
            Some(g) => {
                let glt = g.leading_term().unwrap();
                let c = &lt.coeff / &glt.coeff;
                cur = &cur - &g.mul_term(&c, &lt.exps.div(&glt.exps));
                if let Some(d) = corner {
                    cur = cur.truncate_above(d);
                }
            }
            None => {
                cur = &cur - &Polynomial::monomial(&ring, lt.coeff.clone(), lt.exps.clone());
                done.push(lt);
            }
        }
    }
    Polynomial::from_sorted_terms(&ring, done)
}

fn rescale(monic: Polynomial, scale: Option<crate::polyring::Rational>) -> Polynomial {
    match (monic.leading_term().map(|t| t.coeff.clone()), scale) {
        (Some(_), Some(s)) => monic.scale(&s),
        _ => monic,
    }
}

/// Degree bounds tried by [`colength`] before falling back to full Mora completion.
const TRUNCATION_ATTEMPTS: [u64; 7] = [4, 6, 8, 11, 15, 22, 32];

/// Primes used by [`colength_modular`].
const PRIME_A: u64 = (1 << 62) - 57;
const PRIME_B: u64 = (1 << 62) - 87;

/// dim of the local quotient `O/I` at the origin; `order` must be local.
///
/// Tries to work modulo a power of the maximal ideal first: if the staircase
/// of `I + m^(D+1)` stays below degree `D`, then `m^D` already lies in `I` and
/// the count is exact. Otherwise the full Mora completion decides.
pub fn colength(ideal: &IdealBasis, order: &MonomialOrder) -> Result<Colength> {
    if let Some(c) = trivial_colength(ideal, order) {
        return Ok(c);
    }
    let ring = ideal.ring().with_order(order.clone())?;
    let gens: Vec<WPoly<BigInt>> = ideal.generators().iter().map(|g| WPoly::from_poly(&g.reorder(&ring))).collect();
    Ok(local_count(gens, ring.order(), ring.nvars()))
}

/// Same count as [`colength`], computed over two large prime fields.
///
/// Reduction modulo a prime preserves the colength for all but finitely many
/// primes, so agreement of both images is accepted; on disagreement, or when a
/// prime divides a denominator, the exact rational computation decides.
pub fn colength_modular(ideal: &IdealBasis, order: &MonomialOrder) -> Result<Colength> {
    if let Some(c) = trivial_colength(ideal, order) {
        return Ok(c);
    }
    let ring = ideal.ring().with_order(order.clone())?;
    let reordered: Vec<Polynomial> = ideal.generators().iter().map(|g| g.reorder(&ring)).collect();
    let a = modular_count::<PRIME_A>(&reordered, ring.order(), ring.nvars());
    if let Some(count) = a.filter(|_| a == modular_count::<PRIME_B>(&reordered, ring.order(), ring.nvars())) {
        return Ok(count);
    }
    colength(ideal, order)
}

fn trivial_colength(ideal: &IdealBasis, order: &MonomialOrder) -> Option<Colength> {
    assert!(order.is_local(), "colength needs a local order");
    if ideal.is_zero() {
        return Some(if ideal.ring().nvars() == 0 { Colength::Finite(1) } else { Colength::Infinite });
    }
    if ideal.generators().iter().any(|g| g.is_local_unit()) {
        return Some(Colength::Finite(0));
    }
    None
}

fn modular_count<const P: u64>(gens: &[Polynomial], order: &MonomialOrder, nvars: usize) -> Option<Colength> {
    let gens: Vec<WPoly<Fp<P>>> = gens.iter().map(WPoly::from_poly_mod).collect::<Option<_>>()?;
    // a generator vanishing mod P changes the ideal
    if gens.iter().any(|g| g.is_zero()) {
        return None;
    }
    Some(local_count(gens, order, nvars))
}

fn local_count<C: Coeff>(gens: Vec<WPoly<C>>, order: &MonomialOrder, nvars: usize) -> Colength {
    if *order == MonomialOrder::NegDegRevLex {
        for bound in TRUNCATION_ATTEMPTS {
            let mut engine = Engine::new(order, nvars, DEFAULT_CEILING);
            engine.preset_corner(bound);
            let outcome = engine.run(gens.clone());
            let lms: Vec<ExponentVector> = outcome.basis.iter().map(|p| p.lm().clone()).collect();
            let d = outcome.corner.unwrap_or(bound);
            if let Some(list) = staircase::enumerate_below(&lms, order, nvars, d) {
                let top = list.iter().map(|e| order.degree(e.as_slice())).max().unwrap_or(0);
                if top < bound {
                    return Colength::Finite(list.len() as u64);
                }
            }
        }
    }
    let outcome = Engine::new(order, nvars, DEFAULT_CEILING).run(gens);
    let lms: Vec<ExponentVector> = outcome.basis.iter().map(|p| p.lm().clone()).collect();
    match staircase::enumerate(&staircase::minimalize(lms), nvars, DEFAULT_CEILING) {
        Some(list) => Colength::Finite(list.len() as u64),
        None => Colength::Infinite,
    }
}

/// Generators of `I ∩ Q[keep vars]`, via a block order that eliminates `drop_vars`.
pub fn eliminate(ideal: &IdealBasis, drop_vars: &[&str]) -> Result<IdealBasis> {
    let ring = ideal.ring();
    for v in drop_vars {
        ring.var_index(v)?;
    }
    let keep: Vec<String> = ring.vars().iter().filter(|v| !drop_vars.contains(&v.as_str())).cloned().collect();
    let keep_ring = PolyRing::new(keep.clone(), MonomialOrder::DegRevLex)?;
    if drop_vars.is_empty() {
        let sb = standard_basis(ideal, &MonomialOrder::DegRevLex)?;
        return IdealBasis::new(&keep_ring, sb.basis().iter().cloned());
    }
    if keep.is_empty() {
        return IdealBasis::new(&keep_ring, []);
    }
    let mut all: Vec<String> = drop_vars.iter().map(|s| s.to_string()).collect();
    all.extend(keep.iter().cloned());
    let block = PolyRing::new(all, MonomialOrder::elimination(drop_vars.len()))?;
    let moved = IdealBasis::new(&block, ideal.generators().iter().cloned())?;
    let sb = standard_basis(&moved, block.order())?;
    let free: Vec<Polynomial> = sb
        .basis()
        .iter()
        .filter(|p| (0..drop_vars.len()).all(|i| !p.uses_var(i)))
        .map(|p| p.map_to_ring(&keep_ring))
        .collect::<Result<_>>()?;
    IdealBasis::new(&keep_ring, free)
}
