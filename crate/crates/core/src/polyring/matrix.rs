//! Polynomial matrices: Jacobians, determinants and minor ideals.

use std::collections::HashMap;

use super::{PolyError, Polynomial, Result};

/// Row-major matrix of polynomials over one ring.
pub type PolyMatrix = Vec<Vec<Polynomial>>;

/// Entry `(i, j)` is `d funcs[i] / d vars[j]`.
pub fn jacobian_matrix(funcs: &[Polynomial], vars: &[&str]) -> Result<PolyMatrix> {
    funcs.iter().map(|f| vars.iter().map(|v| f.derivative(v)).collect()).collect()
}

/// Jacobian with respect to every ring variable, in ring order.
pub(crate) fn full_jacobian(funcs: &[Polynomial]) -> PolyMatrix {
    funcs.iter().map(|f| (0..f.ring().nvars()).map(|j| f.derivative_at(j)).collect()).collect()
}

/// Determinant of a square matrix by Laplace expansion along the first row,
/// memoised on the remaining column set.
pub fn determinant(m: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = m.len();
    if n == 0 {
        return Err(PolyError::MinorSize { k: 0, rows: 0, cols: 0 });
    }
    if m.iter().any(|r| r.len() != n) {
        return Err(PolyError::MinorSize { k: n, rows: n, cols: m[0].len() });
    }
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    Ok(minor(m, &rows, &cols))
}

fn minor(m: &[Vec<Polynomial>], rows: &[usize], cols: &[usize]) -> Polynomial {
    let mut memo: HashMap<u64, Polynomial> = HashMap::new();
    let mask: u64 = cols.iter().fold(0, |acc, &c| acc | (1 << c));
    expand(m, rows, 0, mask, &mut memo)
}

fn expand(m: &[Vec<Polynomial>], rows: &[usize], depth: usize, mask: u64, memo: &mut HashMap<u64, Polynomial>) -> Polynomial {
    let ring = m[0][0].ring();
    if depth == rows.len() {
        return Polynomial::one(ring);
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let row = rows[depth];
    let mut acc = Polynomial::zero(ring);
    let mut sign_positive = true;
    for c in 0..64 {
        if mask & (1 << c) == 0 {
            continue;
        }
        let entry = &m[row][c];
        if !entry.is_zero() {
            let sub = expand(m, rows, depth + 1, mask & !(1 << c), memo);
            if !sub.is_zero() {
                let prod = entry * &sub;
                acc = if sign_positive { &acc + &prod } else { &acc - &prod };
            }
        }
        sign_positive = !sign_positive;
    }
    memo.insert(mask, acc.clone());
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// All `k x k` minors, rows subsets outermost, both in lexicographic order.
/// Zero minors are kept so positions stay meaningful.
pub fn minors_ideal(m: &[Vec<Polynomial>], k: usize) -> Result<Vec<Polynomial>> {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    if k == 0 || k > rows.min(cols) || cols > 64 {
        return Err(PolyError::MinorSize { k, rows, cols });
    }
    let mut out = Vec::new();
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            out.push(minor(m, &rs, &cs));
        }
    }
    Ok(out)
}
