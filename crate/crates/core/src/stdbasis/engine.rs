//! Completion loop shared by Buchberger (global orders) and Mora (local orders).
//!
//! Pairs are managed with the Gebauer–Möller update and selected by the normal
//! strategy: smallest lcm degree first, ties by generator index. For local
//! orders, s-polynomials go through Mora's ecart normal form until the leading
//! ideal becomes zero-dimensional; from then on every monomial above the
//! highest corner lies in the ideal, so all polynomials are truncated there and
//! plain reduction terminates.

use crate::polyring::{ExponentVector, MonomialOrder};

use super::staircase;
use super::work::{combine, reduce_step, spoly, Coeff, WPoly, WTerm};

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: ExponentVector,
    deg: u64,
}

pub(crate) struct Outcome<C> {
    /// Interreduced basis, primitive, sorted by leading monomial (ascending).
    pub basis: Vec<WPoly<C>>,
    /// Degree bound above which every monomial is in the leading ideal.
    pub corner: Option<u64>,
}

pub(crate) struct Engine<'a, C> {
    order: &'a MonomialOrder,
    local: bool,
    nvars: usize,
    polys: Vec<WPoly<C>>,
    ecarts: Vec<u64>,
    /// Still a candidate basis element (not superseded, not truncated away).
    active: Vec<bool>,
    /// Usable as a reducer / pair partner at all.
    alive: Vec<bool>,
    pairs: Vec<Pair>,
    corner: Option<u64>,
    ceiling: u32,
    unit: bool,
}

impl<'a, C: Coeff> Engine<'a, C> {
    pub fn new(order: &'a MonomialOrder, nvars: usize, ceiling: u32) -> Self {
        Engine {
            order,
            local: !order.is_global(),
            nvars,
            polys: Vec::new(),
            ecarts: Vec::new(),
            active: Vec::new(),
            alive: Vec::new(),
            pairs: Vec::new(),
            corner: None,
            ceiling,
            unit: false,
        }
    }

    /// Work modulo every monomial of degree above `bound` from the start.
    pub fn preset_corner(&mut self, bound: u64) {
        self.corner = Some(bound);
    }

    pub fn run(mut self, gens: Vec<WPoly<C>>) -> Outcome<C> {
        for mut g in gens {
            if let Some(d) = self.corner {
                g.truncate_above(self.order, d);
            }
            if g.is_zero() {
                continue;
            }
            let g = if self.local && self.corner.is_none() { g } else { self.reduce_top(g) };
            if g.is_zero() {
                continue;
            }
            self.insert(g);
            if self.unit {
                break;
            }
            if self.local {
                self.update_corner();
            }
        }
        while !self.unit {
            let Some(pair) = self.pop_pair() else { break };
            if !self.alive[pair.i] || !self.alive[pair.j] {
                continue;
            }
            let mut s = spoly(&self.polys[pair.i], &self.polys[pair.j], self.order);
            if let Some(d) = self.corner {
                s.truncate_above(self.order, d);
            }
            if s.is_zero() {
                continue;
            }
            let h = if self.local && self.corner.is_none() { self.mora_nf(s) } else { self.reduce_top(s) };
            if h.is_zero() {
                continue;
            }
            self.insert(h);
            if self.local && !self.unit {
                self.update_corner();
            }
        }
        self.finish()
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let idx = self.pairs.iter().enumerate().min_by(|(_, a), (_, b)| (a.deg, a.i, a.j).cmp(&(b.deg, b.i, b.j)))?.0;
        Some(self.pairs.swap_remove(idx))
    }

    fn reducer_for(&self, e: &ExponentVector) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (k, p) in self.polys.iter().enumerate() {
            if self.active[k] && p.lm().divides(e) && best.is_none_or(|b| p.len() < self.polys[b].len()) {
                best = Some(k);
            }
        }
        best
    }

    /// Top reduction; terminates for global orders and in truncated mode.
    fn reduce_top(&self, mut h: WPoly<C>) -> WPoly<C> {
        while !h.is_zero() {
            let Some(k) = self.reducer_for(h.lm()) else { break };
            h = reduce_step(&h, &self.polys[k], self.order);
            if let Some(d) = self.corner {
                h.truncate_above(self.order, d);
            }
        }
        h
    }

    /// Mora's normal form: reduce by the divisor of least ecart, remembering
    /// intermediate results whose ecart is smaller than the reducer's.
    fn mora_nf(&self, mut h: WPoly<C>) -> WPoly<C> {
        let mut extra: Vec<(WPoly<C>, u64)> = Vec::new();
        loop {
            if h.is_zero() {
                return h;
            }
            let lm = h.lm().clone();
            // (ecart, length, source): source < 0 means extra[-source-1]
            let mut best: Option<(u64, usize, isize)> = None;
            for (k, p) in self.polys.iter().enumerate() {
                if self.active[k] && p.lm().divides(&lm) {
                    let key = (self.ecarts[k], p.len(), k as isize);
                    if best.as_ref().is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                        best = Some(key);
                    }
                }
            }
            for (k, (p, ec)) in extra.iter().enumerate() {
                if p.lm().divides(&lm) {
                    let key = (*ec, p.len(), -(k as isize) - 1);
                    if best.as_ref().is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                        best = Some(key);
                    }
                }
            }
            let Some((ec, _, src)) = best else { return h };
            let he = h.ecart(self.order);
            let reducer = if src >= 0 { self.polys[src as usize].clone() } else { extra[(-src - 1) as usize].0.clone() };
            if ec > he {
                extra.push((h.clone(), he));
            }
            h = reduce_step(&h, &reducer, self.order);
        }
    }

    /// Gebauer–Möller pair update for a new element.
    fn insert(&mut self, h: WPoly<C>) {
        let idx = self.polys.len();
        if h.lm().is_one() {
            self.unit = true;
        }
        let h_lm = h.lm().clone();
        self.ecarts.push(h.ecart(self.order));
        self.polys.push(h);
        self.active.push(true);
        self.alive.push(true);
        if self.unit {
            return;
        }

        let candidates: Vec<usize> = (0..idx).filter(|&k| self.active[k]).collect();
        let new_pairs: Vec<Pair> = candidates
            .iter()
            .map(|&k| {
                let lcm = self.polys[k].lm().lcm(&h_lm);
                let deg = lcm.total_degree();
                Pair { i: k, j: idx, lcm, deg }
            })
            .collect();
        let coprime = |p: &Pair| self.polys[p.i].lm().is_coprime(&h_lm);

        // chain criterion among the new pairs (Gebauer–Möller)
        let mut pending: std::collections::VecDeque<Pair> = new_pairs.into();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = pending.pop_front() {
            let dominated = pending.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime(&p) || !dominated {
                kept.push(p);
            }
        }
        // product criterion (global orders only)
        if !self.local {
            kept.retain(|p| !coprime(p));
        }
        let chosen = kept;

        // old pairs whose lcm is strictly divisible through h
        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !h_lm.divides(&p.lcm) {
                return true;
            }
            let li = polys[p.i].lm().lcm(&h_lm);
            let lj = polys[p.j].lm().lcm(&h_lm);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(chosen);

        for k in 0..idx {
            if self.active[k] && h_lm.divides(self.polys[k].lm()) {
                self.active[k] = false;
            }
        }
    }

    fn leading_monomials(&self) -> Vec<ExponentVector> {
        (0..self.polys.len()).filter(|&k| self.active[k]).map(|k| self.polys[k].lm().clone()).collect()
    }

    /// Recomputes the highest-corner bound and truncates everything above it.
    fn update_corner(&mut self) {
        let lms = staircase::minimalize(self.leading_monomials());
        if staircase::pure_power_bounds(&lms, self.nvars).iter().any(|b| b.is_none()) {
            return;
        }
        let Some(standard) = staircase::enumerate(&lms, self.nvars, self.ceiling) else { return };
        let d = standard.iter().map(|e| self.order.degree(e.as_slice())).max().unwrap_or(0);
        if self.corner.is_some_and(|c| c <= d) {
            return;
        }
        self.corner = Some(d);
        for k in 0..self.polys.len() {
            if !self.alive[k] {
                continue;
            }
            self.polys[k].truncate_above(self.order, d);
            if self.polys[k].is_zero() {
                self.alive[k] = false;
                self.active[k] = false;
            } else {
                self.ecarts[k] = self.polys[k].ecart(self.order);
            }
        }
        let alive = &self.alive;
        self.pairs.retain(|p| alive[p.i] && alive[p.j]);
    }

    fn finish(self) -> Outcome<C> {
        let order = self.order;
        if self.unit {
            let one = self.polys.iter().find(|p| p.lm().is_one()).unwrap().clone();
            let mut one = one;
            // the unit ideal: any element with leading monomial 1 generates it
            one.terms.truncate(1);
            one.make_primitive();
            return Outcome { basis: vec![one], corner: None };
        }
        let mut basis: Vec<WPoly<C>> = (0..self.polys.len()).filter(|&k| self.active[k]).map(|k| self.polys[k].clone()).collect();
        basis.sort_by(|a, b| order.cmp(a.lm().as_slice(), b.lm().as_slice()));
        // minimalize
        let mut minimal: Vec<WPoly<C>> = Vec::with_capacity(basis.len());
        for p in basis {
            if !minimal.iter().any(|q| q.lm().divides(p.lm())) {
                minimal.retain(|q| !p.lm().divides(q.lm()));
                minimal.push(p);
            }
        }
        if self.local && self.corner.is_none() {
            return Outcome { basis: minimal, corner: None };
        }
        // tail-interreduce
        let corner = self.corner;
        let reduced: Vec<WPoly<C>> = (0..minimal.len()).map(|k| tail_reduce(&minimal[k], &minimal, k, order, corner)).collect();
        Outcome { basis: reduced, corner }
    }
}

/// Reduces every non-leading term of `p` by the other basis elements.
pub(crate) fn tail_reduce<C: Coeff>(p: &WPoly<C>, basis: &[WPoly<C>], skip: usize, order: &MonomialOrder, corner: Option<u64>) -> WPoly<C> {
    let mut done: Vec<WTerm<C>> = vec![p.terms[0].clone()];
    let mut rest = WPoly { terms: p.terms[1..].to_vec() };
    while !rest.is_zero() {
        let lm = rest.lm().clone();
        let reducer =
            basis.iter().enumerate().filter(|(k, q)| *k != skip && q.lm().divides(&lm)).min_by_key(|(_, q)| q.len()).map(|(_, q)| q);
        match reducer {
            Some(q) => {
                let (a, b) = C::cancel(rest.lc(), q.lc());
                let shift = lm.div(q.lm());
                let terms = combine(&rest.terms, &a, &q.terms, &b, &shift, order);
                if !a.is_one() {
                    for t in &mut done {
                        t.c = t.c.mul(&a);
                    }
                }
                rest = WPoly { terms };
                if let Some(d) = corner {
                    rest.terms.retain(|t| order.degree(t.e.as_slice()) <= d);
                }
            }
            None => {
                done.push(rest.terms.remove(0));
            }
        }
    }
    let mut out = WPoly { terms: done };
    out.make_primitive();
    out
}
