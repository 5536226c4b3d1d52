//! Exact sparse multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] keeps its terms in canonical form: nonzero coefficients,
//! pairwise distinct monomials, sorted descending by the ring's order.

mod matrix;
mod order;
mod parse;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use thiserror::Error;

pub(crate) use matrix::full_jacobian;
pub use matrix::{determinant, jacobian_matrix, minors_ideal, PolyMatrix};
pub use order::MonomialOrder;
pub use parse::parse_poly;

pub type Rational = BigRational;

/// Largest exponent a single variable may carry.
pub const MAX_EXPONENT: u32 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("exponent overflow (limit {MAX_EXPONENT})")]
    ExponentOverflow,
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("minor size {k} out of range for a {rows}x{cols} matrix")]
    MinorSize { k: usize, rows: usize, cols: usize },
}

pub type Result<T, E = PolyError> = std::result::Result<T, E>;

/// Exponents of a monomial, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExponentVector(SmallVec<[u32; 8]>);

impl ExponentVector {
    pub fn zero(n: usize) -> Self {
        ExponentVector(SmallVec::from_elem(0, n))
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = Self::zero(n);
        e.0[i] = 1;
        e
    }

    pub fn from_slice(e: &[u32]) -> Self {
        ExponentVector(SmallVec::from_slice(e))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// Exponentwise sum; panics past [`MAX_EXPONENT`].
    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        self.checked_mul(other).expect("exponent overflow")
    }

    pub fn checked_mul(&self, other: &ExponentVector) -> Result<ExponentVector> {
        let mut out = self.clone();
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a += *b;
            if *a > MAX_EXPONENT {
                return Err(PolyError::ExponentOverflow);
            }
        }
        Ok(out)
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub(crate) fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub(crate) fn set(&mut self, i: usize, v: u32) {
        self.0[i] = v;
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(SmallVec::from_vec(v))
    }
}

/// Variable names plus the active monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    order: MonomialOrder,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>, order: MonomialOrder) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(PolyError::InvalidRing(format!("`{v}` is not an identifier")));
            }
            if vars[..i].contains(v) {
                return Err(PolyError::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if let Some(a) = order.arity() {
            if a != vars.len() {
                return Err(PolyError::InvalidRing(format!("order {order} does not fit {} variables", vars.len())));
            }
        }
        if let MonomialOrder::Block { split, .. } = &order {
            if *split == 0 || *split >= vars.len() {
                return Err(PolyError::InvalidRing("block split out of range".into()));
            }
        }
        Ok(Arc::new(PolyRing { vars, order }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        PolyRing::new(self.vars.clone(), order)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub exps: ExponentVector,
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Rational) -> Self {
        Self::monomial(ring, c, ExponentVector::zero(ring.nvars()))
    }

    pub fn monomial(ring: &Arc<PolyRing>, c: Rational, exps: ExponentVector) -> Self {
        assert_eq!(exps.len(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![Term { coeff: c, exps }] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Arc<PolyRing>, name: &str) -> Result<Self> {
        let i = ring.var_index(name)?;
        Ok(Self::var_at(ring, i))
    }

    pub fn var_at(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::monomial(ring, Rational::one(), ExponentVector::unit(ring.nvars(), i))
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated, zero) terms.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Rational, ExponentVector)>) -> Self {
        let mut acc: HashMap<ExponentVector, Rational> = HashMap::new();
        for (c, e) in terms {
            assert_eq!(e.len(), ring.nvars());
            *acc.entry(e).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<PolyRing>, acc: HashMap<ExponentVector, Rational>) -> Self {
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(exps, coeff)| Term { coeff, exps }).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(b.exps.as_slice(), a.exps.as_slice()));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Wraps terms the caller guarantees to be canonical for `ring`.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        let p = Polynomial { ring: ring.clone(), terms };
        debug_assert!(p.is_canonical());
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.exps.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_exps(&self) -> Option<&ExponentVector> {
        self.terms.first().map(|t| &t.exps)
    }

    /// Value at the origin.
    pub fn constant_coeff(&self) -> Rational {
        self.terms.iter().find(|t| t.exps.is_one()).map(|t| t.coeff.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.constant_coeff().is_zero()
    }

    /// Nonzero at the origin, i.e. a unit of the local ring.
    pub fn is_local_unit(&self) -> bool {
        !self.vanishes_at_origin()
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|t| t.exps.total_degree()).max().unwrap_or(0)
    }

    /// Lowest total degree of a term (the order at the origin); `None` for zero.
    pub fn order_at_origin(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.exps.total_degree()).min()
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|t| t.exps.get(i) > 0)
    }

    pub fn is_canonical(&self) -> bool {
        let order = self.ring.order();
        self.terms.iter().all(|t| !t.coeff.is_zero() && t.exps.len() == self.ring.nvars())
            && self.terms.windows(2).all(|w| order.cmp(w[0].exps.as_slice(), w[1].exps.as_slice()) == std::cmp::Ordering::Greater)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        // multiply integer multiples, so each output term is reduced once
        let (da, db) = (self.denominator(), other.denominator());
        let ints =
            |p: &Polynomial, d: &BigInt| -> Vec<BigInt> { p.terms.iter().map(|t| t.coeff.numer() * (d / t.coeff.denom())).collect() };
        let (ia, ib) = (ints(self, &da), ints(other, &db));
        let mut acc: HashMap<ExponentVector, BigInt> = HashMap::with_capacity(self.len() * other.len());
        for (a, ca) in self.terms.iter().zip(&ia) {
            for (b, cb) in other.terms.iter().zip(&ib) {
                let e = a.exps.checked_mul(&b.exps)?;
                let c = ca * cb;
                match acc.get_mut(&e) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        let d = da * db;
        let acc = acc.into_iter().map(|(e, c)| (e, Rational::new(c, d.clone()))).collect();
        Ok(Self::from_map(&self.ring, acc))
    }

    /// Least common denominator of the coefficients.
    fn denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.terms.iter().fold(BigInt::one(), |acc, t| if t.coeff.denom().is_one() { acc } else { acc.lcm(t.coeff.denom()) })
    }

    fn merge(&self, other: &Polynomial, subtract: bool) -> Polynomial {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => order.cmp(a.exps.as_slice(), b.exps.as_slice()),
                (Some(_), None) => std::cmp::Ordering::Greater,
                _ => std::cmp::Ordering::Less,
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let t = &other.terms[j];
                    let coeff = if subtract { -t.coeff.clone() } else { t.coeff.clone() };
                    out.push(Term { coeff, exps: t.exps.clone() });
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c =
                        if subtract { &self.terms[i].coeff - &other.terms[j].coeff } else { &self.terms[i].coeff + &other.terms[j].coeff };
                    if !c.is_zero() {
                        out.push(Term { coeff: c, exps: self.terms[i].exps.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|t| Term { coeff: &t.coeff * c, exps: t.exps.clone() }).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Multiplies by the monomial `c * x^e`.
    pub fn mul_term(&self, c: &Rational, e: &ExponentVector) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|t| Term { coeff: &t.coeff * c, exps: t.exps.mul(e) }).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, k: u32) -> Result<Polynomial> {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Makes the leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            Some(t) => self.scale(&t.coeff.recip()),
            None => self.clone(),
        }
    }

    /// Scales to integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for t in &self.terms {
            den = num_integer::Integer::lcm(&den, t.coeff.denom());
            num = num_integer::Integer::gcd(&num, t.coeff.numer());
        }
        let mut f = Rational::new(den, num);
        if self.terms[0].coeff.is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    pub fn derivative(&self, var: &str) -> Result<Polynomial> {
        let i = self.ring.var_index(var)?;
        Ok(self.derivative_at(i))
    }

    pub fn derivative_at(&self, i: usize) -> Polynomial {
        let mut acc: Vec<(Rational, ExponentVector)> = Vec::new();
        for t in &self.terms {
            let k = t.exps.get(i);
            if k == 0 {
                continue;
            }
            let mut e = t.exps.clone();
            e.set(i, k - 1);
            acc.push((&t.coeff * Rational::from_integer(BigInt::from(k)), e));
        }
        // Differentiation keeps distinct monomials distinct, but may reorder them.
        Polynomial::from_terms(&self.ring, acc)
    }

    /// Substitutes rationals for the bound variables; the result lives in the
    /// ring of the remaining variables (same order kind, restricted).
    pub fn specialize(&self, bindings: &[(&str, Rational)]) -> Result<Polynomial> {
        let mut bound = vec![None; self.ring.nvars()];
        for (name, val) in bindings {
            let i = self.ring.var_index(name)?;
            bound[i] = Some(val.clone());
        }
        let keep: Vec<usize> = (0..self.ring.nvars()).filter(|&i| bound[i].is_none()).collect();
        let ring = PolyRing::new(keep.iter().map(|&i| self.ring.vars[i].clone()), self.ring.order().restrict(&keep))?;
        let mut acc = Vec::with_capacity(self.len());
        for t in &self.terms {
            let mut c = t.coeff.clone();
            for (i, b) in bound.iter().enumerate() {
                if let Some(v) = b {
                    let k = t.exps.get(i);
                    if k > 0 {
                        c *= num_traits::pow(v.clone(), k as usize);
                    }
                }
            }
            let e = ExponentVector(keep.iter().map(|&i| t.exps.get(i)).collect());
            acc.push((c, e));
        }
        Ok(Polynomial::from_terms(&ring, acc))
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    pub fn map_to_ring(&self, target: &Arc<PolyRing>) -> Result<Polynomial> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        let mut pos = Vec::with_capacity(self.ring.nvars());
        for (i, v) in self.ring.vars.iter().enumerate() {
            match target.index_of(v) {
                Some(j) => pos.push(Some(j)),
                None if !self.uses_var(i) => pos.push(None),
                None => return Err(PolyError::UnknownVariable(v.clone())),
            }
        }
        let n = target.nvars();
        let terms = self.terms.iter().map(|t| {
            let mut e = ExponentVector::zero(n);
            for (i, p) in pos.iter().enumerate() {
                if let Some(j) = p {
                    e.set(*j, t.exps.get(i));
                }
            }
            (t.coeff.clone(), e)
        });
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Replaces variable `i` by `subs[i]`; all substitutes share one target ring.
    pub fn compose(&self, subs: &[Polynomial]) -> Result<Polynomial> {
        assert_eq!(subs.len(), self.ring.nvars());
        let target = match subs.first() {
            Some(s) => s.ring.clone(),
            None => return Ok(self.clone()),
        };
        for s in subs {
            if !same_ring(&s.ring, &target) {
                return Err(PolyError::RingMismatch);
            }
        }
        let terms: Vec<&Term> = self.terms.iter().collect();
        horner(&terms, 0, subs, &target)
    }

    /// Same polynomial, same variables, other order.
    pub fn reorder(&self, ring: &Arc<PolyRing>) -> Polynomial {
        assert_eq!(ring.vars, self.ring.vars);
        let mut terms = self.terms.clone();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(b.exps.as_slice(), a.exps.as_slice()));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Every term has weighted degree `degree`.
    pub fn is_weighted_homogeneous(&self, weights: &[u32], degree: u64) -> bool {
        self.terms.iter().all(|t| t.exps.as_slice().iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum::<u64>() == degree)
    }

    /// Drops every term of `degree` (the order's grading) above `bound`.
    pub fn truncate_above(&self, bound: u64) -> Polynomial {
        let order = self.ring.order();
        let terms = self.terms.iter().filter(|t| order.degree(t.exps.as_slice()) <= bound).cloned().collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Canonical text form, e.g. `-6*x^2-3*y^2-12*z^3`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

/// Horner evaluation in variable `i` and beyond: groups terms by the exponent
/// of `x_i`, so each step multiplies by a single substitute.
fn horner(terms: &[&Term], i: usize, subs: &[Polynomial], target: &Arc<PolyRing>) -> Result<Polynomial> {
    if i == subs.len() {
        let c = terms.iter().fold(Rational::zero(), |acc, t| acc + &t.coeff);
        return Ok(Polynomial::constant(target, c));
    }
    let top = terms.iter().map(|t| t.exps.get(i)).max().unwrap_or(0);
    let mut groups: Vec<Vec<&Term>> = vec![Vec::new(); top as usize + 1];
    for t in terms {
        groups[t.exps.get(i) as usize].push(t);
    }
    let mut acc = Polynomial::zero(target);
    for group in groups.iter().rev() {
        if !acc.is_zero() {
            acc = acc.checked_mul(&subs[i])?;
        }
        if !group.is_empty() {
            acc = acc.checked_add(&horner(group, i + 1, subs, target)?)?;
        }
    }
    Ok(acc)
}

fn write_monomial(out: &mut String, vars: &[String], e: &ExponentVector) {
    let mut first = true;
    for (v, &k) in vars.iter().zip(e.as_slice()) {
        if k == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(v);
        if k > 1 {
            out.push('^');
            out.push_str(&k.to_string());
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (idx, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            if neg {
                out.push('-');
            } else if idx > 0 {
                out.push('+');
            }
            let abs = t.coeff.abs();
            if t.exps.is_one() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                write_monomial(&mut out, &self.ring.vars, &t.exps);
            }
        }
        f.write_str(&out)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

/// `n` as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` as a rational; panics on zero denominator.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Which binary arithmetic operation to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arithmetic(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(vars.iter().copied(), MonomialOrder::DegRevLex).unwrap()
    }

    fn p(s: &str, r: &Arc<PolyRing>) -> Polynomial {
        parse_poly(s, r).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring(&["x", "y"]);
        assert_eq!(&p("x+y", &r) + &p("x-y", &r), p("2*x", &r));
        assert!((&p("x+y", &r) * &Polynomial::zero(&r)).is_zero());
        assert_eq!(&p("x+3*y^2", &r) * &p("x-3*y^2", &r), p("x^2-9*y^4", &r));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = ring(&["x", "y"]);
        let b = ring(&["x", "z"]);
        let err = poly_arithmetic(&p("x", &a), &p("x", &b), ArithOp::Add).unwrap_err();
        assert_eq!(err, PolyError::RingMismatch);
    }

    #[test]
    fn derivatives() {
        let r = ring(&["x", "y", "z"]);
        assert_eq!(p("x^3+y^3+z^4", &r).derivative("z").unwrap(), p("4*z^3", &r));
        assert!(p("7/2", &r).derivative("x").unwrap().is_zero());
        assert_eq!(p("x^2*y^3", &r).derivative("y").unwrap(), p("3*x^2*y^2", &r));
        assert_eq!(p("x", &r).derivative("w").unwrap_err(), PolyError::UnknownVariable("w".into()));
    }

    #[test]
    fn specialize_examples() {
        let r = ring(&["t", "x", "y", "z"]);
        let f = p("x^6+y^6+z^3+t*x^4*z", &r);
        let f0 = f.specialize(&[("t", rat(0))]).unwrap();
        assert_eq!(f0.ring().vars(), &["x", "y", "z"]);
        assert_eq!(f0.render(), "x^6+y^6+z^3");
        let f1 = f.specialize(&[("t", rat(1))]).unwrap();
        assert_eq!(f1.render(), "x^6+y^6+x^4*z+z^3");
        let g = p("x+t", &r).specialize(&[("t", ratio(-1, 2))]).unwrap();
        assert_eq!(g.render(), "x-1/2");
        assert!(f.specialize(&[("s", rat(1))]).is_err());
    }

    #[test]
    fn rendering() {
        let r = ring(&["x", "y", "z"]);
        assert_eq!(p("-6*x^2-3*y^2-12*z^3", &r).render(), "-12*z^3-6*x^2-3*y^2");
        assert_eq!(Polynomial::zero(&r).render(), "0");
        assert_eq!(p("-x+2/3", &r).render(), "-x+2/3");
    }

    #[test]
    fn order_laws_for_one_plus_x() {
        let local = PolyRing::new(["x"], MonomialOrder::NegDegRevLex).unwrap();
        let global = PolyRing::new(["x"], MonomialOrder::DegRevLex).unwrap();
        assert!(p("1+x", &local).leading_exps().unwrap().is_one());
        assert_eq!(p("1+x", &global).leading_exps().unwrap().as_slice(), &[1]);
    }

    #[test]
    fn compose_and_map() {
        let uv = ring(&["u", "v"]);
        let xy = ring(&["x", "y"]);
        let g = p("4*u^3+27*v^2", &uv);
        let h = g.compose(&[p("x", &xy), p("y^3+x*y", &xy)]).unwrap();
        assert_eq!(h, p("4*x^3+27*x^2*y^2+54*x*y^4+27*y^6", &xy));
        let big = ring(&["x", "y", "u", "v"]);
        let m = p("x-u", &big);
        assert!(m.map_to_ring(&xy).is_err());
        assert_eq!(p("x*y", &xy).map_to_ring(&big).unwrap(), p("x*y", &big));
    }

    #[test]
    fn primitive_and_monic() {
        let r = ring(&["x", "y"]);
        assert_eq!(p("-2/3*x+4/9*y", &r).primitive(), p("3*x-2*y", &r));
        assert_eq!(p("2*x+4", &r).monic(), p("x+2", &r));
    }

    #[test]
    fn weighted_homogeneity() {
        let r = ring(&["x", "y"]);
        assert!(p("y^3+x*y", &r).is_weighted_homogeneous(&[2, 1], 3));
        assert!(!p("y^3+x", &r).is_weighted_homogeneous(&[2, 1], 3));
    }
}
