//! Working polynomials for the basis engine, generic over the coefficients.
//!
//! Over the integers every `WPoly` is kept primitive (content 1, positive
//! leading coefficient), so reductions are fraction free. Over a prime field
//! it is kept monic.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::polyring::{ExponentVector, MonomialOrder, PolyRing, Polynomial, Term};

/// Coefficient arithmetic the engine needs.
pub(crate) trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    /// `(a, b)` with `a*h = b*g`.
    fn cancel(h: &Self, g: &Self) -> (Self, Self);
    fn mul(&self, other: &Self) -> Self;
    /// `self*a - other*b`
    fn mul_sub(&self, a: &Self, other: &Self, b: &Self) -> Self;
    /// `-(other*b)`
    fn neg_mul(other: &Self, b: &Self) -> Self;
    /// Brings the terms to the canonical scaling.
    fn normalize(terms: &mut [WTerm<Self>]);
}

impl Coeff for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn cancel(h: &Self, g: &Self) -> (Self, Self) {
        let d = h.gcd(g);
        (g / &d, h / &d)
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn mul_sub(&self, a: &Self, other: &Self, b: &Self) -> Self {
        let left = if One::is_one(a) { self.clone() } else { self * a };
        left - other * b
    }

    fn neg_mul(other: &Self, b: &Self) -> Self {
        -(other * b)
    }

    fn normalize(terms: &mut [WTerm<Self>]) {
        if terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for t in terms.iter() {
            g = g.gcd(&t.c);
            if One::is_one(&g) {
                break;
            }
        }
        if terms[0].c.is_negative() {
            g = -g;
        }
        if !One::is_one(&g) {
            for t in terms.iter_mut() {
                t.c /= &g;
            }
        }
    }
}

/// An element of the prime field `Z/P`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    pub fn mulmod(a: u64, b: u64) -> u64 {
        let x = a as u128 * b as u128;
        if P < 1 << 62 && P > (1 << 62) - (1 << 20) {
            // P = 2^62 - k with k small: fold the high part twice
            const MASK: u128 = (1 << 62) - 1;
            let k = (1u128 << 62) - P as u128;
            let y = (x >> 62) * k + (x & MASK);
            let mut z = ((y >> 62) * k + (y & MASK)) as u64;
            while z >= P {
                z -= P;
            }
            z
        } else {
            (x % P as u128) as u64
        }
    }

    pub fn pow(mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = Self::mulmod(r, a);
            }
            a = Self::mulmod(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self) -> Self {
        Fp(Self::pow(self.0, P - 2))
    }

    /// Image of a rational, or `None` when `P` divides its denominator.
    pub fn from_rational(q: &BigRational) -> Option<Self> {
        let p = BigInt::from(P);
        let n = q.numer().mod_floor(&p).to_u64().unwrap();
        let d = q.denom().mod_floor(&p).to_u64().unwrap();
        if d == 0 {
            return None;
        }
        Some(Fp(Self::mulmod(n, Fp::<P>(d).inv().0)))
    }
}

impl<const P: u64> Coeff for Fp<P> {
    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn is_one(&self) -> bool {
        self.0 == 1
    }

    fn cancel(h: &Self, g: &Self) -> (Self, Self) {
        (Fp(1), Fp(Self::mulmod(h.0, g.inv().0)))
    }

    fn mul(&self, other: &Self) -> Self {
        Fp(Self::mulmod(self.0, other.0))
    }

    fn mul_sub(&self, a: &Self, other: &Self, b: &Self) -> Self {
        let left = if a.0 == 1 { self.0 } else { Self::mulmod(self.0, a.0) };
        let right = Self::mulmod(other.0, b.0);
        Fp(if left >= right { left - right } else { left + P - right })
    }

    fn neg_mul(other: &Self, b: &Self) -> Self {
        let r = Self::mulmod(other.0, b.0);
        Fp(if r == 0 { 0 } else { P - r })
    }

    fn normalize(terms: &mut [WTerm<Self>]) {
        let Some(first) = terms.first() else { return };
        if first.c.0 == 1 {
            return;
        }
        let inv = first.c.inv();
        for t in terms.iter_mut() {
            t.c = t.c.mul(&inv);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct WTerm<C> {
    pub c: C,
    pub e: ExponentVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct WPoly<C> {
    pub terms: Vec<WTerm<C>>,
}

impl<C> Default for WPoly<C> {
    fn default() -> Self {
        WPoly { terms: Vec::new() }
    }
}

impl WPoly<BigInt> {
    pub fn from_poly(p: &Polynomial) -> Self {
        let p = p.primitive();
        let terms = p
            .terms()
            .iter()
            .map(|t| {
                debug_assert!(t.coeff.is_integer());
                WTerm { c: t.coeff.numer().clone(), e: t.exps.clone() }
            })
            .collect();
        WPoly { terms }
    }

    /// Monic rational polynomial; `ring` must carry the order the terms are sorted by.
    pub fn to_poly(&self, ring: &Arc<PolyRing>) -> Polynomial {
        let lc = match self.terms.first() {
            Some(t) => t.c.clone(),
            None => return Polynomial::zero(ring),
        };
        let terms = self.terms.iter().map(|t| Term { coeff: BigRational::new(t.c.clone(), lc.clone()), exps: t.e.clone() }).collect();
        Polynomial::from_sorted_terms(ring, terms)
    }
}

impl<const P: u64> WPoly<Fp<P>> {
    /// Reduction modulo `P`, or `None` when `P` divides a denominator.
    pub fn from_poly_mod(p: &Polynomial) -> Option<Self> {
        let mut terms = Vec::with_capacity(p.len());
        for t in p.terms() {
            let c = Fp::<P>::from_rational(&t.coeff)?;
            if c.0 != 0 {
                terms.push(WTerm { c, e: t.exps.clone() });
            }
        }
        let mut w = WPoly { terms };
        w.make_primitive();
        Some(w)
    }
}

impl<C: Coeff> WPoly<C> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn lm(&self) -> &ExponentVector {
        &self.terms[0].e
    }

    pub fn lc(&self) -> &C {
        &self.terms[0].c
    }

    /// Largest degree of a term minus the degree of the leading monomial.
    pub fn ecart(&self, order: &MonomialOrder) -> u64 {
        let lead = order.degree(self.lm().as_slice());
        let top = self.terms.iter().map(|t| order.degree(t.e.as_slice())).max().unwrap_or(0);
        top - lead
    }

    pub fn truncate_above(&mut self, order: &MonomialOrder, bound: u64) {
        let before = self.terms.len();
        self.terms.retain(|t| order.degree(t.e.as_slice()) <= bound);
        if self.terms.len() != before {
            self.make_primitive();
        }
    }

    pub fn make_primitive(&mut self) {
        C::normalize(&mut self.terms);
    }
}

/// `a*h - b*x^shift*g`, where the leading terms are known to cancel.
/// Both inputs sorted descending by `order`; the output is too.
pub(crate) fn combine<C: Coeff>(
    h: &[WTerm<C>],
    a: &C,
    g: &[WTerm<C>],
    b: &C,
    shift: &ExponentVector,
    order: &MonomialOrder,
) -> Vec<WTerm<C>> {
    let mut out = Vec::with_capacity(h.len() + g.len());
    let (mut i, mut j) = (1, 1);
    let a_one = a.is_one();
    let mut shifted: Option<ExponentVector> = g.get(1).map(|t| t.e.mul(shift));
    while i < h.len() || j < g.len() {
        let ord = match (h.get(i), shifted.as_ref()) {
            (Some(x), Some(y)) => order.cmp(x.e.as_slice(), y.as_slice()),
            (Some(_), None) => Ordering::Greater,
            _ => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                let c = if a_one { h[i].c.clone() } else { h[i].c.mul(a) };
                out.push(WTerm { c, e: h[i].e.clone() });
                i += 1;
            }
            Ordering::Less => {
                let c = C::neg_mul(&g[j].c, b);
                out.push(WTerm { c, e: shifted.take().unwrap() });
                j += 1;
                shifted = g.get(j).map(|t| t.e.mul(shift));
            }
            Ordering::Equal => {
                let c = h[i].c.mul_sub(a, &g[j].c, b);
                if !c.is_zero() {
                    out.push(WTerm { c, e: h[i].e.clone() });
                }
                i += 1;
                j += 1;
                shifted = g.get(j).map(|t| t.e.mul(shift));
            }
        }
    }
    out
}

/// Cancels the leading term of `h` against `g`; `lm(g)` must divide `lm(h)`.
pub(crate) fn reduce_step<C: Coeff>(h: &WPoly<C>, g: &WPoly<C>, order: &MonomialOrder) -> WPoly<C> {
    let shift = h.lm().div(g.lm());
    let (a, b) = C::cancel(h.lc(), g.lc());
    let mut out = WPoly { terms: combine(&h.terms, &a, &g.terms, &b, &shift, order) };
    out.make_primitive();
    out
}

/// The s-polynomial of `f` and `g`.
pub(crate) fn spoly<C: Coeff>(f: &WPoly<C>, g: &WPoly<C>, order: &MonomialOrder) -> WPoly<C> {
    let lcm = f.lm().lcm(g.lm());
    let sf = lcm.div(f.lm());
    let sg = lcm.div(g.lm());
    let (a, b) = C::cancel(f.lc(), g.lc());
    // a*sf*f - b*sg*g
    let ft: Vec<WTerm<C>> = f.terms.iter().map(|t| WTerm { c: t.c.clone(), e: t.e.mul(&sf) }).collect();
    let mut out = WPoly { terms: combine(&ft, &a, &g.terms, &b, &sg, order) };
    out.make_primitive();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, ratio};

    #[test]
    fn spoly_of_binomials() {
        let r = PolyRing::new(["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let f = WPoly::from_poly(&parse_poly("y^2-x^3", &r).unwrap());
        let g = WPoly::from_poly(&parse_poly("x*y", &r).unwrap());
        let s = spoly(&f, &g, r.order());
        // x^3 leads under degrevlex: y*(x^3-y^2) - x^2*(x*y) = -y^3
        assert_eq!(s.to_poly(&r), parse_poly("y^3", &r).unwrap());
    }

    #[test]
    fn reduction_keeps_primitive_form() {
        let r = PolyRing::new(["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let h = WPoly::from_poly(&parse_poly("6*x^2+4*y", &r).unwrap());
        let g = WPoly::from_poly(&parse_poly("3*x+1", &r).unwrap());
        let out = reduce_step(&h, &g, r.order());
        // 3*x^2+2*y - x*(3*x+1) = -x + 2*y  -> primitive with positive lead
        assert_eq!(out.to_poly(&r), parse_poly("x-2*y", &r).unwrap());
        assert!(out.lc() > &BigInt::zero());
    }

    #[test]
    fn prime_field_arithmetic() {
        type F = Fp<101>;
        assert_eq!(F::from_rational(&ratio(1, 2)), Some(Fp(51)));
        assert_eq!(F::from_rational(&ratio(-1, 1)), Some(Fp(100)));
        assert_eq!(F::from_rational(&ratio(1, 101)), None);
        assert_eq!(Fp::<101>(7).mul_sub(&Fp(1), &Fp(3), &Fp(5)), Fp(93));
        // the folded reduction for primes just below 2^62
        const Q: u64 = (1 << 62) - 57;
        for (a, b) in [(Q - 1, Q - 1), (Q - 2, 12345), (1 << 61, 1 << 61), (0, Q - 1), (987654321987, 123456789123)] {
            let expect = ((a as u128 * b as u128) % Q as u128) as u64;
            assert_eq!(Fp::<Q>::mulmod(a, b), expect);
        }
        let r = PolyRing::new(["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let w = WPoly::<F>::from_poly_mod(&parse_poly("2*x+y", &r).unwrap()).unwrap();
        assert_eq!(w.terms[0].c, Fp(1));
        assert_eq!(w.terms[1].c, Fp(51));
    }
}
