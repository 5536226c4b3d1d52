//! Implicit equation of the image of a curve, by linear algebra on normal forms.
//!
//! `g(u,v)` lies in the elimination ideal of `(I, u - f1, v - f2)` exactly when
//! `g(f1, f2)` lies in `I`. Walking monomials `u^a v^b` by degree and reducing
//! `f1^a f2^b` modulo a Gröbner basis of `I`, the first linear dependency
//! among the normal forms is the lowest-degree element of the elimination
//! ideal. This avoids an elimination order, whose completions are far more
//! expensive than a degree-compatible one.
//!
//! The search runs modulo a sequence of primes first. Normal forms over the
//! rationals carry coefficients of thousands of bits, while the dependency
//! itself is comparatively small: it is rebuilt by Chinese remaindering and
//! rational reconstruction, and accepted once further primes confirm it.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::polyring::{ExponentVector, MonomialOrder, PolyRing, Polynomial, Rational};
use crate::stdbasis::work::{Fp, WPoly, WTerm};
use crate::stdbasis::{normal_form, StandardBasis};

struct Row {
    poly: Polynomial,
    combo: Vec<Rational>,
}

/// Outcome of the dependency search.
pub(crate) enum Image {
    /// The unique lowest-degree element, in `target`.
    Equation(Polynomial),
    /// Several independent elements share the lowest degree.
    NotPrincipal,
    /// No element up to `max_degree`.
    Empty,
}

/// `basis` must be a global Gröbner basis of `I`; `target` has two variables.
pub(crate) fn image_equation(basis: &StandardBasis, f: &[Polynomial; 2], target: &Arc<PolyRing>, max_degree: u64) -> Image {
    let ring = basis.ring().clone();
    let f: [Polynomial; 2] = [0, 1].map(|i| f[i].map_to_ring(&ring).expect("f in basis ring"));
    match modular_image(basis, &f, target, max_degree) {
        Some(image) => image,
        None => exact_image(basis, &f, target, max_degree),
    }
}

/// Residue of the first dependency modulo one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Residue {
    degree: u32,
    unique: bool,
    /// Coefficients over the walked monomials, the last one normalized to 1.
    combo: Vec<u64>,
}

type Run = fn(&[Polynomial], &[Polynomial; 2], &MonomialOrder, u64) -> Option<Option<Residue>>;

macro_rules! runs {
    ($($p:literal),* $(,)?) => { [$((image_mod::<$p> as Run, $p)),*] };
}

/// Primes just below 2^62.
const RUNS: [(Run, u64); 40] = runs![
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
    4611686018427387751,
    4611686018427387737,
    4611686018427387733,
    4611686018427387709,
    4611686018427387701,
    4611686018427387631,
    4611686018427387617,
    4611686018427387587,
    4611686018427387461,
    4611686018427387421,
    4611686018427387409,
    4611686018427387329,
    4611686018427387323,
    4611686018427387301,
    4611686018427387271,
    4611686018427387241,
    4611686018427387139,
    4611686018427387131,
    4611686018427387127,
    4611686018427387113,
    4611686018427387091,
    4611686018427387073,
    4611686018427386981,
    4611686018427386923,
    4611686018427386911,
    4611686018427386903,
    4611686018427386897,
    4611686018427386887,
    4611686018427386707,
    4611686018427386663,
    4611686018427386611,
    4611686018427386551,
    4611686018427386471,
    4611686018427386389,
    4611686018427386351,
    4611686018427386329,
];

/// Primes that must agree with a reconstruction before it is accepted.
const CONFIRMATIONS: usize = 2;

/// `None` when the primes run out before the reconstruction settles.
fn modular_image(basis: &StandardBasis, f: &[Polynomial; 2], target: &Arc<PolyRing>, max_degree: u64) -> Option<Image> {
    let order = basis.order().clone();
    if order != MonomialOrder::DegRevLex {
        return None;
    }
    let gens = basis.basis();
    // residues of the dependency with the largest (degree, length) seen so far;
    // an unlucky prime can only find a dependency earlier
    let mut best: Option<(u32, usize)> = None;
    let mut kept: Vec<(u64, Residue)> = Vec::new();
    let mut empty = 0usize;
    let mut candidate: Option<Vec<Rational>> = None;
    let mut confirmed = 0usize;
    let width = std::thread::available_parallelism().map_or(1, |n| n.get()).min(8);
    for batch in RUNS.chunks(width) {
        let results: Vec<(u64, Option<Option<Residue>>)> = std::thread::scope(|s| {
            let handles: Vec<_> = batch
                .iter()
                .map(|&(run, p)| {
                    let order = &order;
                    s.spawn(move || (p, run(gens, f, order, max_degree)))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("modular run panicked")).collect()
        });
        for (p, result) in results {
            let residue = match result {
                None => continue,
                Some(None) => {
                    empty += 1;
                    continue;
                }
                Some(Some(r)) => r,
            };
            let key = (residue.degree, residue.combo.len());
            if best.is_some_and(|b| key < b) {
                continue;
            }
            if best.is_some_and(|b| key > b) {
                kept.clear();
                candidate = None;
                confirmed = 0;
            }
            best = Some(key);
            if !residue.unique {
                // a good prime never has more dependencies than the rationals
                // have, but an unlucky one may; wait for a unique residue
                kept.push((p, residue));
                continue;
            }
            if let Some(c) = &candidate {
                if matches(c, &residue.combo, p) {
                    confirmed += 1;
                    if confirmed >= CONFIRMATIONS {
                        return Some(Image::Equation(equation(c, target)));
                    }
                    kept.push((p, residue));
                    continue;
                }
            }
            kept.push((p, residue));
            confirmed = 0;
            candidate = reconstruct(&kept);
        }
        if best.is_none() && empty > CONFIRMATIONS {
            return Some(Image::Empty);
        }
        if !kept.is_empty() && kept.iter().all(|(_, r)| !r.unique) && kept.len() > CONFIRMATIONS {
            return Some(Image::NotPrincipal);
        }
    }
    None
}

/// The candidate reduces to `combo` modulo `p`.
fn matches(candidate: &[Rational], combo: &[u64], p: u64) -> bool {
    let pb = BigInt::from(p);
    candidate.len() == combo.len()
        && candidate.iter().zip(combo).all(|(c, &r)| {
            let d = c.denom().mod_floor(&pb);
            !d.is_zero() && (c.numer() - d * BigInt::from(r)).mod_floor(&pb).is_zero()
        })
}

/// Chinese remaindering plus rational reconstruction over the unique residues.
fn reconstruct(kept: &[(u64, Residue)]) -> Option<Vec<Rational>> {
    let unique: Vec<&(u64, Residue)> = kept.iter().filter(|(_, r)| r.unique).collect();
    let len = unique.first()?.1.combo.len();
    let mut modulus = BigInt::one();
    let mut values = vec![BigInt::zero(); len];
    for (p, r) in unique {
        let pb = BigInt::from(*p);
        let m = modulus.mod_floor(&pb).to_u64().expect("residue below p");
        let inv = BigInt::from(inv_mod(m, *p));
        for (x, &res) in values.iter_mut().zip(&r.combo) {
            // x + M * ((res - x) / M mod p)
            let t = ((BigInt::from(res) - &*x) * &inv).mod_floor(&pb);
            *x += &modulus * t;
        }
        modulus *= pb;
    }
    values.iter().map(|x| rational_reconstruction(x, &modulus)).collect()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let (mut base, mut e, mut r) = (a, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    r
}

/// `r/s` with `r = s*a mod m` and `|r|, s <= sqrt(m/2)`, if there is one.
fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(Rational::new(r1, s1))
}

fn equation(combo: &[Rational], target: &Arc<PolyRing>) -> Polynomial {
    let monomials = walk_order(combo.len());
    let terms =
        combo.iter().zip(monomials).filter(|(c, _)| !c.is_zero()).map(|(c, (a, b))| (c.clone(), ExponentVector::from_slice(&[a, b])));
    Polynomial::from_terms(target, terms)
}

/// `(a, b)` of the first `len` monomials `u^a v^b` in walking order.
fn walk_order(len: usize) -> Vec<(u32, u32)> {
    (0u32..).flat_map(|deg| (0..=deg).rev().map(move |a| (a, deg - a))).take(len).collect()
}

/// Degree-reverse-lexicographic key, so ordered maps sort like the basis.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Key(ExponentVector);

impl Ord for Key {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        MonomialOrder::DegRevLex.cmp(self.0.as_slice(), other.0.as_slice())
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

type Sparse = BTreeMap<Key, u64>;

/// The dependency search over `Z/P`, for a degrevlex basis. `None` when `P`
/// divides a denominator.
fn image_mod<const P: u64>(basis: &[Polynomial], f: &[Polynomial; 2], order: &MonomialOrder, max_degree: u64) -> Option<Option<Residue>> {
    assert_eq!(*order, MonomialOrder::DegRevLex);
    let basis: Vec<WPoly<Fp<P>>> = basis.iter().map(WPoly::from_poly_mod).collect::<Option<_>>()?;
    if basis.iter().any(|b| b.is_zero()) {
        return None;
    }
    let f: Vec<Vec<WTerm<Fp<P>>>> = f.iter().map(raw_mod::<P>).collect::<Option<_>>()?;
    let n = basis[0].lm().len();
    let mut columns: HashMap<ExponentVector, usize> = HashMap::new();
    let mut echelon = Echelon::<P>::default();
    let mut prev: Vec<Vec<(ExponentVector, u64)>> = Vec::new();
    for deg in 0..=max_degree as u32 {
        let mut current = Vec::with_capacity(deg as usize + 1);
        let mut found: Option<Vec<u64>> = None;
        let mut extra = false;
        for a in (0..=deg).rev() {
            let b = deg - a;
            let product = if deg == 0 {
                Sparse::from([(Key(ExponentVector::zero(n)), 1)])
            } else if a > 0 {
                mul_mod::<P>(&f[0], &prev[b as usize])
            } else {
                mul_mod::<P>(&f[1], &prev[(b - 1) as usize])
            };
            let nf = remainder_mod::<P>(product, &basis);
            let mut dense = Vec::new();
            for (e, c) in &nf {
                let next = columns.len();
                let k = *columns.entry(e.clone()).or_insert(next);
                if dense.len() <= k {
                    dense.resize(k + 1, 0);
                }
                dense[k] = *c;
            }
            current.push(nf);
            if !echelon.insert(dense) {
                let combo = echelon.last_combo();
                if found.is_some() {
                    extra = true;
                } else {
                    found = Some(combo);
                }
            }
        }
        prev = current;
        if let Some(combo) = found {
            return Some(Some(Residue { degree: deg, unique: !extra, combo }));
        }
    }
    Some(None)
}

/// Incremental row echelon form over `Z/P` that tracks which input vectors
/// each row combines.
#[derive(Default)]
struct Echelon<const P: u64> {
    /// (pivot column, monic row, combination of inputs)
    rows: Vec<(usize, Vec<u64>, Vec<u64>)>,
    inputs: usize,
    last: Vec<u64>,
}

impl<const P: u64> Echelon<P> {
    /// Adds a vector; `false` when it depends on the earlier ones.
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let idx = self.inputs;
        self.inputs += 1;
        let mut combo = vec![0u64; idx + 1];
        combo[idx] = 1;
        for (pivot, row, row_combo) in &self.rows {
            let c = v.get(*pivot).copied().unwrap_or(0);
            if c == 0 {
                continue;
            }
            let neg = P - c;
            axpy::<P>(&mut v, row, neg);
            axpy::<P>(&mut combo, row_combo, neg);
        }
        match v.iter().position(|&x| x != 0) {
            Some(pivot) => {
                let inv = inv_mod(v[pivot], P);
                for x in v.iter_mut().chain(combo.iter_mut()) {
                    *x = Fp::<P>::mulmod(*x, inv);
                }
                self.rows.push((pivot, v, combo));
                true
            }
            None => {
                self.last = combo;
                false
            }
        }
    }

    /// Combination of the inputs that vanished at the last failed insert,
    /// with coefficient 1 on that input.
    fn last_combo(&self) -> Vec<u64> {
        self.last.clone()
    }
}

/// `y += c*x`, growing `y` as needed.
fn axpy<const P: u64>(y: &mut Vec<u64>, x: &[u64], c: u64) {
    if y.len() < x.len() {
        y.resize(x.len(), 0);
    }
    for (a, &b) in y.iter_mut().zip(x) {
        if b != 0 {
            let s = *a + Fp::<P>::mulmod(b, c);
            *a = if s >= P { s - P } else { s };
        }
    }
}

fn raw_mod<const P: u64>(p: &Polynomial) -> Option<Vec<WTerm<Fp<P>>>> {
    let mut out = Vec::with_capacity(p.len());
    for t in p.terms() {
        let c = Fp::<P>::from_rational(&t.coeff)?;
        if c.0 != 0 {
            out.push(WTerm { c, e: t.exps.clone() });
        }
    }
    Some(out)
}

fn add_to<const P: u64>(acc: &mut Sparse, e: ExponentVector, c: u64) {
    match acc.entry(Key(e)) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            let s = *slot.get() + c;
            let s = if s >= P { s - P } else { s };
            if s == 0 {
                slot.remove();
            } else {
                *slot.get_mut() = s;
            }
        }
    }
}

fn mul_mod<const P: u64>(a: &[WTerm<Fp<P>>], b: &[(ExponentVector, u64)]) -> Sparse {
    let mut acc = Sparse::new();
    for x in a {
        for (e, c) in b {
            add_to::<P>(&mut acc, x.e.mul(e), Fp::<P>::mulmod(x.c.0, *c));
        }
    }
    acc
}

/// Full remainder by a monic basis, without rescaling; terms come out in
/// descending order.
fn remainder_mod<const P: u64>(mut h: Sparse, basis: &[WPoly<Fp<P>>]) -> Vec<(ExponentVector, u64)> {
    let mut done = Vec::new();
    while let Some((Key(lm), c)) = h.pop_last() {
        let reducer = basis.iter().filter(|g| g.lm().divides(&lm)).min_by_key(|g| g.len());
        match reducer {
            Some(g) => {
                let shift = lm.div(g.lm());
                let neg = P - c;
                for t in &g.terms[1..] {
                    add_to::<P>(&mut h, t.e.mul(&shift), Fp::<P>::mulmod(t.c.0, neg));
                }
            }
            None => done.push((lm, c)),
        }
    }
    done
}

/// Exact search over the rationals.
fn exact_image(basis: &StandardBasis, f: &[Polynomial; 2], target: &Arc<PolyRing>, max_degree: u64) -> Image {
    let ring = basis.ring().clone();
    let mut monomials: Vec<(u32, u32)> = Vec::new();
    let mut rows: Vec<Row> = Vec::new();
    let mut pivots: HashMap<ExponentVector, usize> = HashMap::new();
    // normal forms of f2^b and of f1^a * f2^b for the previous degree
    let mut prev: Vec<Polynomial> = Vec::new();
    for deg in 0..=max_degree as u32 {
        let mut current = Vec::with_capacity(deg as usize + 1);
        let mut found: Option<Vec<Rational>> = None;
        let mut extra = false;
        for a in (0..=deg).rev() {
            let b = deg - a;
            let nf = if deg == 0 {
                normal_form(&Polynomial::one(&ring), basis)
            } else if a > 0 {
                // prev is indexed by b for the previous degree
                normal_form(&(&f[0] * &prev[b as usize]), basis)
            } else {
                normal_form(&(&f[1] * &prev[(b - 1) as usize]), basis)
            };
            current.push(nf.clone());
            let col = monomials.len();
            monomials.push((a, b));
            for r in &mut rows {
                r.combo.push(Rational::from_integer(0.into()));
            }
            let mut combo = vec![Rational::from_integer(0.into()); col + 1];
            combo[col] = Rational::from_integer(1.into());
            let mut q = nf;
            while let Some(lt) = q.leading_term().cloned() {
                let Some(&k) = pivots.get(&lt.exps) else { break };
                let r = &rows[k];
                let c = &lt.coeff / &r.poly.leading_term().unwrap().coeff;
                q = &q - &r.poly.scale(&c);
                for (x, y) in combo.iter_mut().zip(&r.combo) {
                    if !num_traits::Zero::is_zero(y) {
                        *x -= &c * y;
                    }
                }
            }
            if q.is_zero() {
                if found.is_some() {
                    extra = true;
                } else {
                    found = Some(combo);
                }
            } else {
                pivots.insert(q.leading_exps().unwrap().clone(), rows.len());
                rows.push(Row { poly: q, combo });
            }
        }
        // current[i] has a = deg - i, b = i, matching the indexing by b
        prev = current;
        if let Some(combo) = found {
            if extra {
                return Image::NotPrincipal;
            }
            let terms = combo
                .into_iter()
                .zip(&monomials)
                .filter(|(c, _)| !num_traits::Zero::is_zero(c))
                .map(|(c, &(a, b))| (c, ExponentVector::from_slice(&[a, b])));
            return Image::Equation(Polynomial::from_terms(target, terms));
        }
    }
    Image::Empty
}
