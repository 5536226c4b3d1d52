//! Ideal membership with explicit cofactors, over a global order.

use crate::polyring::{MonomialOrder, Polynomial, Result};

use super::IdealBasis;

/// Cofactors `c` with `p = sum c[i] * generators[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lift {
    pub cofactors: Vec<Polynomial>,
}

struct Tracked {
    poly: Polynomial,
    cof: Vec<Polynomial>,
}

fn sub_multiple(a: &mut Tracked, b: &Tracked, c: &crate::polyring::Rational, e: &crate::polyring::ExponentVector) {
    a.poly = &a.poly - &b.poly.mul_term(c, e);
    for (x, y) in a.cof.iter_mut().zip(&b.cof) {
        if !y.is_zero() {
            *x = &*x - &y.mul_term(c, e);
        }
    }
}

/// Fully reduces `h` by `basis`, recording the quotients in `h.cof`.
fn reduce(h: &mut Tracked, basis: &[Tracked]) {
    let ring = h.poly.ring().clone();
    let mut rest = Tracked { poly: Polynomial::zero(&ring), cof: h.cof.clone() };
    let mut cur = std::mem::replace(&mut h.poly, Polynomial::zero(&ring));
    let mut remainder: Vec<(crate::polyring::Rational, crate::polyring::ExponentVector)> = Vec::new();
    while let Some(lt) = cur.leading_term().cloned() {
        match basis.iter().find(|g| g.poly.leading_exps().unwrap().divides(&lt.exps)) {
            Some(g) => {
                let glt = g.poly.leading_term().unwrap();
                let c = &lt.coeff / &glt.coeff;
                let e = lt.exps.div(&glt.exps);
                let mut tmp = Tracked { poly: cur, cof: rest.cof };
                sub_multiple(&mut tmp, g, &c, &e);
                cur = tmp.poly;
                rest.cof = tmp.cof;
            }
            None => {
                remainder.push((lt.coeff.clone(), lt.exps.clone()));
                cur = &cur - &Polynomial::monomial(&ring, lt.coeff, lt.exps);
            }
        }
    }
    h.poly = Polynomial::from_terms(&ring, remainder);
    h.cof = rest.cof;
}

/// Expresses `p` in terms of `ideal`'s generators, or returns `None` when `p`
/// is not in the ideal. Membership is global (in the polynomial ring).
pub fn lift(p: &Polynomial, ideal: &IdealBasis) -> Result<Option<Lift>> {
    let ring = ideal.ring().with_order(MonomialOrder::DegRevLex)?;
    let k = ideal.generators().len();
    let zero = Polynomial::zero(&ring);
    let mut basis: Vec<Tracked> = Vec::new();
    for (i, g) in ideal.generators().iter().enumerate() {
        let mut cof = vec![zero.clone(); k];
        cof[i] = Polynomial::one(&ring);
        let mut t = Tracked { poly: g.reorder(&ring), cof };
        reduce(&mut t, &basis);
        if !t.poly.is_zero() {
            basis.push(t);
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some(idx) = pairs
        .iter()
        .enumerate()
        .min_by_key(|(_, &(i, j))| {
            let l = basis[i].poly.leading_exps().unwrap().lcm(basis[j].poly.leading_exps().unwrap());
            (l.total_degree(), i, j)
        })
        .map(|(n, _)| n)
    {
        let (i, j) = pairs.swap_remove(idx);
        let (fi, fj) = (&basis[i], &basis[j]);
        let (li, lj) = (fi.poly.leading_term().unwrap(), fj.poly.leading_term().unwrap());
        if li.exps.is_coprime(&lj.exps) {
            continue;
        }
        let l = li.exps.lcm(&lj.exps);
        let mut s = Tracked {
            poly: fi.poly.mul_term(&li.coeff.recip(), &l.div(&li.exps)),
            cof: fi.cof.iter().map(|c| c.mul_term(&li.coeff.recip(), &l.div(&li.exps))).collect(),
        };
        sub_multiple(&mut s, fj, &lj.coeff.recip(), &l.div(&lj.exps));
        reduce(&mut s, &basis);
        if !s.poly.is_zero() {
            let n = basis.len();
            basis.push(s);
            pairs.extend((0..n).map(|i| (i, n)));
        }
    }
    let mut h = Tracked { poly: p.map_to_ring(ideal.ring())?.reorder(&ring), cof: vec![zero; k] };
    reduce(&mut h, &basis);
    if !h.poly.is_zero() {
        return Ok(None);
    }
    let cofactors = h.cof.into_iter().map(|c| c.map_to_ring(ideal.ring()).map(|c| -&c)).collect::<Result<Vec<_>>>()?;
    Ok(Some(Lift { cofactors }))
}
