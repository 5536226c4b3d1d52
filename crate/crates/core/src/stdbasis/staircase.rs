//! Standard monomials of a monomial ideal.

use crate::polyring::{ExponentVector, MonomialOrder};

/// Default ceiling on pure-power exponents explored before giving up.
pub const DEFAULT_CEILING: u32 = 512;

/// Drops generators divisible by an earlier or smaller one.
pub(crate) fn minimalize(mut gens: Vec<ExponentVector>) -> Vec<ExponentVector> {
    gens.sort_by_key(|e| (e.total_degree(), e.clone()));
    gens.dedup();
    let mut out: Vec<ExponentVector> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

pub(crate) fn in_ideal(gens: &[ExponentVector], e: &ExponentVector) -> bool {
    gens.iter().any(|g| g.divides(e))
}

/// Smallest `k` with `x_i^k` in the ideal, per variable.
pub(crate) fn pure_power_bounds(gens: &[ExponentVector], n: usize) -> Vec<Option<u32>> {
    let mut bounds = vec![None; n];
    for g in gens {
        let support: Vec<usize> = (0..n).filter(|&i| g.get(i) > 0).collect();
        match support.as_slice() {
            [] => return vec![Some(0); n],
            [i] => {
                let k = g.get(*i);
                bounds[*i] = Some(bounds[*i].map_or(k, |b: u32| b.min(k)));
            }
            _ => {}
        }
    }
    bounds
}

/// All standard monomials, or `None` when the staircase is infinite or some
/// pure power sits above `ceiling`.
pub(crate) fn enumerate(gens: &[ExponentVector], n: usize, ceiling: u32) -> Option<Vec<ExponentVector>> {
    let mut bounds = Vec::with_capacity(n);
    for b in pure_power_bounds(gens, n) {
        match b {
            Some(k) if k <= ceiling => bounds.push(k),
            _ => return None,
        }
    }
    let mut out = Vec::new();
    let mut cur = ExponentVector::zero(n);
    fn rec(v: usize, cur: &mut ExponentVector, bounds: &[u32], gens: &[ExponentVector], out: &mut Vec<ExponentVector>) {
        if v == bounds.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..bounds[v] {
            cur.set(v, k);
            if in_ideal(gens, cur) {
                break;
            }
            rec(v + 1, cur, bounds, gens, out);
        }
        cur.set(v, 0);
    }
    rec(0, &mut cur, &bounds, gens, &mut out);
    Some(out)
}

/// Standard monomials whose `order.degree` is at most `bound`.
pub(crate) fn enumerate_below(gens: &[ExponentVector], order: &MonomialOrder, n: usize, bound: u64) -> Option<Vec<ExponentVector>> {
    let mut out = Vec::new();
    let mut cur = ExponentVector::zero(n);
    fn rec(v: usize, cur: &mut ExponentVector, order: &MonomialOrder, bound: u64, gens: &[ExponentVector], out: &mut Vec<ExponentVector>) {
        if v == cur.len() {
            out.push(cur.clone());
            return;
        }
        let mut k = 0;
        loop {
            cur.set(v, k);
            if order.degree(cur.as_slice()) > bound || in_ideal(gens, cur) {
                break;
            }
            rec(v + 1, cur, order, bound, gens, out);
            k += 1;
        }
        cur.set(v, 0);
    }
    if n > 0 && (0..n).any(|i| order.degree(ExponentVector::unit(n, i).as_slice()) == 0) {
        return None;
    }
    rec(0, &mut cur, order, bound, gens, &mut out);
    Some(out)
}

/// Minimal monomials outside `gens` whose `order.degree` exceeds `bound`, given
/// the (finite) standard monomials of `gens` that lie at or below it.
pub(crate) fn corner_generators(
    standard: &[ExponentVector],
    gens: &[ExponentVector],
    order: &MonomialOrder,
    bound: u64,
) -> Vec<ExponentVector> {
    let n = gens.first().or(standard.first()).map(|e| e.len()).unwrap_or(0);
    let is_standard = |e: &ExponentVector| order.degree(e.as_slice()) <= bound && !in_ideal(gens, e);
    let mut out = Vec::new();
    for s in standard {
        for i in 0..n {
            let mut m = s.clone();
            m.set(i, m.get(i) + 1);
            if order.degree(m.as_slice()) <= bound || in_ideal(gens, &m) {
                continue;
            }
            let minimal = (0..n).filter(|&j| m.get(j) > 0).all(|j| {
                let mut d = m.clone();
                d.set(j, d.get(j) - 1);
                is_standard(&d)
            });
            if minimal {
                out.push(m);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(e: &[u32]) -> ExponentVector {
        ExponentVector::from_slice(e)
    }

    #[test]
    fn rectangle_staircase() {
        let st = enumerate(&[ev(&[2, 0]), ev(&[0, 3])], 2, DEFAULT_CEILING).unwrap();
        assert_eq!(st.len(), 6);
    }

    #[test]
    fn infinite_without_pure_power() {
        assert!(enumerate(&[ev(&[1, 1]), ev(&[3, 0])], 2, DEFAULT_CEILING).is_none());
        assert!(enumerate(&[ev(&[600, 0]), ev(&[0, 1])], 2, DEFAULT_CEILING).is_none());
    }

    #[test]
    fn unit_ideal_has_empty_staircase() {
        assert!(enumerate(&[ev(&[0, 0])], 2, DEFAULT_CEILING).unwrap().is_empty());
    }

    #[test]
    fn minimalize_keeps_minimal_generators() {
        let m = minimalize(vec![ev(&[1, 1]), ev(&[2, 1]), ev(&[0, 2]), ev(&[1, 1])]);
        assert_eq!(m, vec![ev(&[0, 2]), ev(&[1, 1])]);
    }

    #[test]
    fn corner_generators_of_square_of_maximal_ideal() {
        // staircase {1, x, y} of <x^2, xy, y^2> seen as "everything above degree 1"
        let st = vec![ev(&[0, 0]), ev(&[1, 0]), ev(&[0, 1])];
        let g = corner_generators(&st, &[], &MonomialOrder::NegDegRevLex, 1);
        assert_eq!(g, vec![ev(&[0, 2]), ev(&[1, 1]), ev(&[2, 0])]);
    }
}
