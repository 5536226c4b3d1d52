//! Monomial orders.
//!
//! Global orders satisfy `1 < x_i`, local orders `1 > x_i`. Every order here is
//! a total, multiplicative order on exponent vectors; ties inside a degree
//! class are broken reverse-lexicographically, as in Singular's `dp`/`ds`/`wp`/`ws`.

use std::cmp::Ordering;
use std::fmt;

/// A monomial order on exponent vectors of a fixed length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Degree reverse lexicographic, global.
    DegRevLex,
    /// Pure lexicographic, global.
    Lex,
    /// Weighted degree with reverse-lexicographic tie break, global.
    Weighted(Vec<u32>),
    /// Negative degree reverse lexicographic, local (smaller degree is larger).
    NegDegRevLex,
    /// Negative weighted degree with reverse-lexicographic tie break, local.
    WeightedLocal(Vec<u32>),
    /// Compare the first `split` exponents by `first`, then the rest by `second`.
    Block { first: Box<MonomialOrder>, split: usize, second: Box<MonomialOrder> },
}

fn total(e: &[u32]) -> u64 {
    e.iter().map(|&x| x as u64).sum()
}

fn weighted(w: &[u32], e: &[u32]) -> u64 {
    w.iter().zip(e).map(|(&w, &x)| w as u64 * x as u64).sum()
}

fn revlex_tiebreak(a: &[u32], b: &[u32]) -> Ordering {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Elimination order: global degrevlex on the first `split` variables,
    /// then global degrevlex on the rest.
    pub fn elimination(split: usize) -> Self {
        MonomialOrder::Block { first: Box::new(MonomialOrder::DegRevLex), split, second: Box::new(MonomialOrder::DegRevLex) }
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match self {
            MonomialOrder::DegRevLex => total(a).cmp(&total(b)).then_with(|| revlex_tiebreak(a, b)),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Weighted(w) => weighted(w, a).cmp(&weighted(w, b)).then_with(|| revlex_tiebreak(a, b)),
            MonomialOrder::NegDegRevLex => total(b).cmp(&total(a)).then_with(|| revlex_tiebreak(a, b)),
            MonomialOrder::WeightedLocal(w) => weighted(w, b).cmp(&weighted(w, a)).then_with(|| revlex_tiebreak(a, b)),
            MonomialOrder::Block { first, split, second } => {
                first.cmp(&a[..*split], &b[..*split]).then_with(|| second.cmp(&a[*split..], &b[*split..]))
            }
        }
    }

    /// `1 < x_i` for every variable.
    pub fn is_global(&self) -> bool {
        match self {
            MonomialOrder::DegRevLex | MonomialOrder::Lex | MonomialOrder::Weighted(_) => true,
            MonomialOrder::NegDegRevLex | MonomialOrder::WeightedLocal(_) => false,
            MonomialOrder::Block { first, second, .. } => first.is_global() && second.is_global(),
        }
    }

    /// `1 > x_i` for every variable.
    pub fn is_local(&self) -> bool {
        match self {
            MonomialOrder::NegDegRevLex | MonomialOrder::WeightedLocal(_) => true,
            MonomialOrder::DegRevLex | MonomialOrder::Lex | MonomialOrder::Weighted(_) => false,
            MonomialOrder::Block { first, second, .. } => first.is_local() && second.is_local(),
        }
    }

    /// The degree function the order is graded by: weighted degree for weighted
    /// orders, total degree otherwise. Used for ecart and truncation.
    pub fn degree(&self, e: &[u32]) -> u64 {
        match self {
            MonomialOrder::Weighted(w) | MonomialOrder::WeightedLocal(w) => weighted(w, e),
            _ => total(e),
        }
    }

    /// Number of variables the order is tied to, if it carries per-variable data.
    pub(crate) fn arity(&self) -> Option<usize> {
        match self {
            MonomialOrder::Weighted(w) | MonomialOrder::WeightedLocal(w) => Some(w.len()),
            MonomialOrder::Block { first, split, second } => {
                let rest = second.arity();
                if let Some(a) = first.arity() {
                    if a != *split {
                        return Some(usize::MAX);
                    }
                }
                rest.map(|r| r + split)
            }
            _ => None,
        }
    }

    /// The order restricted to the variables whose positions are kept.
    pub(crate) fn restrict(&self, keep: &[usize]) -> MonomialOrder {
        match self {
            MonomialOrder::Weighted(w) => MonomialOrder::Weighted(keep.iter().map(|&i| w[i]).collect()),
            MonomialOrder::WeightedLocal(w) => MonomialOrder::WeightedLocal(keep.iter().map(|&i| w[i]).collect()),
            MonomialOrder::Block { first, split, second } => {
                let lo: Vec<usize> = keep.iter().copied().filter(|&i| i < *split).collect();
                let hi: Vec<usize> = keep.iter().filter(|&&i| i >= *split).map(|&i| i - split).collect();
                match (lo.is_empty(), hi.is_empty()) {
                    (true, _) => second.restrict(&hi),
                    (_, true) => first.restrict(&lo),
                    _ => MonomialOrder::Block {
                        first: Box::new(first.restrict(&lo)),
                        split: lo.len(),
                        second: Box::new(second.restrict(&hi)),
                    },
                }
            }
            other => other.clone(),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Weighted(w) => write!(f, "weighted{w:?}"),
            MonomialOrder::NegDegRevLex => write!(f, "negdegrevlex"),
            MonomialOrder::WeightedLocal(w) => write!(f, "weighted-local{w:?}"),
            MonomialOrder::Block { first, split, second } => write!(f, "block({first}|{split}|{second})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Ordering::*;

    #[test]
    fn degrevlex_basics() {
        let o = MonomialOrder::DegRevLex;
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 1, 0]), Greater);
        assert_eq!(o.cmp(&[0, 0, 0], &[1, 0, 0]), Less);
        // x*z < y^2 in degrevlex
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Less);
    }

    #[test]
    fn local_orders_put_one_first() {
        assert_eq!(MonomialOrder::NegDegRevLex.cmp(&[0, 0], &[1, 0]), Greater);
        assert_eq!(MonomialOrder::NegDegRevLex.cmp(&[2, 0], &[0, 1]), Less);
        let w = MonomialOrder::WeightedLocal(vec![2, 1]);
        assert_eq!(w.cmp(&[1, 0], &[0, 1]), Less);
        assert!(w.is_local() && !w.is_global());
    }

    #[test]
    fn block_compares_first_block_first() {
        let o = MonomialOrder::elimination(1);
        // t beats any power of u
        assert_eq!(o.cmp(&[1, 0], &[0, 9]), Greater);
        assert_eq!(o.cmp(&[1, 2], &[1, 1]), Greater);
        assert!(o.is_global());
    }

    #[test]
    fn restrict_drops_weights() {
        let o = MonomialOrder::Weighted(vec![1, 2, 3]);
        assert_eq!(o.restrict(&[0, 2]), MonomialOrder::Weighted(vec![1, 3]));
        let b = MonomialOrder::elimination(2);
        assert_eq!(b.restrict(&[2, 3]), MonomialOrder::DegRevLex);
    }
}
