//! Closed-form invariants of weighted homogeneous germs, computed from the
//! weights and degrees alone, and their comparison with the general engine.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::invariants::{self, ErrorKind, GermProblem, InvariantError, InvariantReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeightedError {
    #[error("invalid weight data: {0}")]
    Input(String),
    /// A closed formula produced a fraction or a negative number.
    #[error("not realizable by an A-finite germ: {formula} = {value}")]
    NotRealizable { formula: &'static str, value: String },
    #[error("closed forms and engine disagree: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Engine(#[from] InvariantError),
}

impl WeightedError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            WeightedError::Input(_) => ErrorKind::Input,
            WeightedError::NotRealizable { .. } | WeightedError::Mismatch(_) => ErrorKind::Degenerate,
            WeightedError::Engine(e) => e.kind(),
        }
    }
}

pub type Result<T> = std::result::Result<T, WeightedError>;

/// Weights `w_1..w_n`, the degrees `d_1, d_2` of `f` and `d_3..d_n` of `phi`,
/// with the aggregates the closed forms use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WHSignature {
    pub weights: Vec<u64>,
    pub f_degrees: [u64; 2],
    pub phi_degrees: Vec<u64>,
    /// sum of the weights
    pub a: BigInt,
    /// sum of `w_i w_j` over `i < j`
    pub a2: BigInt,
    /// product of the weights
    pub b: BigInt,
    /// sum of all degrees
    pub c: BigInt,
    /// sum of `d_i d_j` over `3 <= i <= j <= n`
    pub c2: BigInt,
    /// product of all degrees
    pub d: BigInt,
}

pub fn wh_signature(weights: &[u64], f_degrees: [u64; 2], phi_degrees: &[u64]) -> Result<WHSignature> {
    let n = weights.len();
    if n < 2 {
        return Err(WeightedError::Input(format!("need at least two weights, got {n}")));
    }
    if phi_degrees.len() != n - 2 {
        return Err(WeightedError::Input(format!("{n} weights need {} phi degrees, got {}", n - 2, phi_degrees.len())));
    }
    if weights.iter().chain(&f_degrees).chain(phi_degrees).any(|&x| x == 0) {
        return Err(WeightedError::Input("weights and degrees must be positive".into()));
    }
    let big = |x: &u64| BigInt::from(*x);
    let w: Vec<BigInt> = weights.iter().map(big).collect();
    let all: Vec<BigInt> = f_degrees.iter().chain(phi_degrees).map(big).collect();
    let p: Vec<BigInt> = phi_degrees.iter().map(big).collect();
    let mut a2 = BigInt::zero();
    for i in 0..n {
        for j in i + 1..n {
            a2 += &w[i] * &w[j];
        }
    }
    let mut c2 = BigInt::zero();
    for i in 0..p.len() {
        for j in i..p.len() {
            c2 += &p[i] * &p[j];
        }
    }
    Ok(WHSignature {
        weights: weights.to_vec(),
        f_degrees,
        phi_degrees: phi_degrees.to_vec(),
        a: w.iter().sum(),
        a2,
        b: w.iter().product(),
        c: all.iter().sum(),
        c2,
        d: all.iter().product(),
    })
}

impl WHSignature {
    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// The aggregates agree with the primary data.
    pub fn is_consistent(&self) -> bool {
        wh_signature(&self.weights, self.f_degrees, &self.phi_degrees).is_ok_and(|s| s == *self)
    }
}

/// Invariants predicted by the closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WHInvariants {
    pub mu_s: u64,
    pub c: u64,
    pub m: u64,
    pub mu_x: u64,
    pub mu_delta: u64,
    pub d: u64,
    pub mu_disc: u64,
}

impl WHInvariants {
    /// `(name, value)` in report order.
    pub fn fields(&self) -> [(&'static str, u64); 7] {
        [
            ("mu_S", self.mu_s),
            ("c", self.c),
            ("m", self.m),
            ("mu_X", self.mu_x),
            ("mu_Delta", self.mu_delta),
            ("d", self.d),
            ("mu_disc", self.mu_disc),
        ]
    }
}

fn q(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn natural(formula: &'static str, v: &BigRational) -> Result<u64> {
    let bad = || WeightedError::NotRealizable { formula, value: v.to_string() };
    if !v.is_integer() || v.is_negative() {
        return Err(bad());
    }
    v.to_integer().to_u64().ok_or_else(bad)
}

/// The closed forms. `mu(Delta)` uses the denominator `d1 d2 B^2`: with
/// `E = D(C-A)/B` it reads `(E-d1)(E-d2)/(d1 d2)`, the Milnor–Orlik number of
/// a curve of type `(d1, d2; E)`. The variant with `d1 d2 B` gives 4 instead
/// of 2 on the cusp map.
pub fn wh_invariants(sig: &WHSignature) -> Result<WHInvariants> {
    let (a, a2, b, c, c2, d) = (q(&sig.a), q(&sig.a2), q(&sig.b), q(&sig.c), q(&sig.c2), q(&sig.d));
    let d1 = q(&BigInt::from(sig.f_degrees[0]));
    let d2 = q(&BigInt::from(sig.f_degrees[1]));
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let cma = &c - &a;
    let scale = &d / (&b * &d1 * &d2);

    let mu_s = &d * &cma * (&two * &cma - &d1 - &d2) / (&b * &d1 * &d2) + &one;
    let cusps = &scale * (&two * &cma * &cma - &c * (&d1 + &d2 - &a) + &d1 * &d2 - &a2 - &c2);
    let m = &d / &b;
    let mu_x = &scale * (&a2 + &c2 - &a * (&c - &d1 - &d2)) - &one;
    let e = &d * &cma / &b;
    let mu_delta = (&e - &d1) * (&e - &d2) / (&d1 * &d2);
    let folds = &mu_delta / &two - &mu_s / &two - &cusps;
    let mu_disc = &folds + &mu_s;

    Ok(WHInvariants {
        mu_s: natural("mu(S) = D(C-A)[2(C-A)-d1-d2]/(B d1 d2) + 1", &mu_s)?,
        c: natural("c = D/(B d1 d2) [2(C-A)^2 - C(d1+d2-A) + d1 d2 - A2 - C2]", &cusps)?,
        m: natural("m = D/B", &m)?,
        mu_x: natural("mu(X) = -1 + D/(d1 d2 B) (A2 + C2 - A(C-d1-d2))", &mu_x)?,
        mu_delta: natural("mu(Delta) = (E-d1)(E-d2)/(d1 d2), E = D(C-A)/B", &mu_delta)?,
        d: natural("d = mu(Delta)/2 - mu(S)/2 - c", &folds)?,
        mu_disc: natural("mu_Delta(f) = d + mu(S)", &mu_disc)?,
    })
}

/// Weights and degree of a weighted homogeneous type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WHType {
    pub weights: Vec<u64>,
    pub degree: u64,
}

/// Type of the discriminant `f(S)` when `S` has weights `w_1..w_n` and degrees
/// `c_1..c_{n-1}`, `f` has degrees `(c_n, c_{n+1})` and `f: S -> Delta` is
/// `s`-to-one: `(c_n, c_{n+1}; c_1...c_{n+1} / (s w_1...w_n))`.
pub fn wh_discriminant_type(s_weights: &[u64], s_degrees: &[u64], f_degrees: [u64; 2], s: u64) -> Result<WHType> {
    let n = s_weights.len();
    if n == 0 || s_degrees.len() + 1 != n {
        return Err(WeightedError::Input(format!("{n} weights need {} degrees for S, got {}", n.saturating_sub(1), s_degrees.len())));
    }
    if s == 0 || s_weights.iter().chain(s_degrees).chain(&f_degrees).any(|&x| x == 0) {
        return Err(WeightedError::Input("weights, degrees and s must be positive".into()));
    }
    let num: BigInt = s_degrees.iter().chain(&f_degrees).map(|&x| BigInt::from(x)).product();
    let den: BigInt = s_weights.iter().map(|&x| BigInt::from(x)).product::<BigInt>() * BigInt::from(s);
    let degree = BigRational::new(num, den);
    Ok(WHType { weights: f_degrees.to_vec(), degree: natural("discriminant degree c1...c(n+1)/(s w1...wn)", &degree)? })
}

/// The signature declared on a weighted problem.
pub fn signature_of(p: &GermProblem) -> Result<WHSignature> {
    let (Some(w), Some(phi), Some(fd)) = (p.weights(), p.phi_degrees(), p.f_degrees()) else {
        return Err(WeightedError::Input("the problem declares no weights".into()));
    };
    let w: Vec<u64> = w.iter().map(|&x| x as u64).collect();
    wh_signature(&w, fd, phi)
}

/// Field-by-field comparison of closed forms and engine.
#[derive(Clone, Debug)]
pub struct CrossValidation {
    pub closed_form: WHInvariants,
    pub engine: InvariantReport,
}

impl CrossValidation {
    /// `(name, closed form, engine)` for every compared field.
    pub fn rows(&self) -> Vec<(&'static str, u64, u64)> {
        let e = &self.engine;
        let engine = [e.mu_s, e.c, e.m, e.mu_x, e.mu_delta, e.d, e.mu_disc];
        self.closed_form.fields().iter().zip(engine).map(|(&(name, v), w)| (name, v, w)).collect()
    }

    pub fn all_equal(&self) -> bool {
        self.rows().iter().all(|(_, a, b)| a == b)
    }
}

/// Runs both pipelines on a problem whose weighted homogeneity has been
/// checked, failing on the first disagreement.
pub fn wh_cross_validate(p: &GermProblem, seed: u64, trials: u32) -> Result<CrossValidation> {
    let sig = signature_of(p)?;
    let closed_form = wh_invariants(&sig)?;
    let engine = invariants::analyze(p, seed, trials)?;
    let out = CrossValidation { closed_form, engine };
    let diffs: Vec<String> =
        out.rows().iter().filter(|(_, a, b)| a != b).map(|(name, a, b)| format!("{name}: closed form {a}, engine {b}")).collect();
    if !diffs.is_empty() {
        return Err(WeightedError::Mismatch(diffs.join("; ")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_aggregates() {
        let s = wh_signature(&[2, 1], [2, 3], &[]).unwrap();
        let v: Vec<i64> = [&s.a, &s.a2, &s.b, &s.c, &s.c2, &s.d].iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(v, [3, 2, 2, 5, 0, 6]);
        let s = wh_signature(&[1, 1, 1], [1, 1], &[2]).unwrap();
        let v: Vec<i64> = [&s.a, &s.a2, &s.b, &s.c, &s.c2, &s.d].iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(v, [3, 3, 1, 4, 4, 2]);
        assert!(s.is_consistent());
        assert!(wh_signature(&[1], [1, 1], &[]).is_err());
        assert!(wh_signature(&[1, 1, 1], [1, 1], &[]).is_err());
        assert!(wh_signature(&[1, 0], [1, 1], &[]).is_err());
    }

    #[test]
    fn cusp_and_cone_closed_forms() {
        let cusp = wh_invariants(&wh_signature(&[2, 1], [2, 3], &[]).unwrap()).unwrap();
        assert_eq!(cusp, WHInvariants { mu_s: 0, c: 1, m: 3, mu_x: 0, mu_delta: 2, d: 0, mu_disc: 0 });
        let cone = wh_invariants(&wh_signature(&[1, 1, 1], [1, 1], &[2]).unwrap()).unwrap();
        assert_eq!(cone, WHInvariants { mu_s: 1, c: 0, m: 2, mu_x: 1, mu_delta: 1, d: 0, mu_disc: 1 });
    }

    #[test]
    fn fractional_degree_is_rejected() {
        // m = D/B = 3/2
        let e = wh_invariants(&wh_signature(&[2, 1], [1, 3], &[]).unwrap()).unwrap_err();
        assert!(matches!(e, WeightedError::NotRealizable { .. }));
        assert_eq!(e.kind(), ErrorKind::Degenerate);
    }

    #[test]
    fn discriminant_types() {
        let cusp = wh_discriminant_type(&[2, 1], &[2], [2, 3], 1).unwrap();
        assert_eq!(cusp, WHType { weights: vec![2, 3], degree: 6 });
        let cone = wh_discriminant_type(&[1, 1, 1], &[2, 1], [1, 1], 1).unwrap();
        assert_eq!(cone, WHType { weights: vec![1, 1], degree: 2 });
        let halved = wh_discriminant_type(&[1, 1, 1], &[2, 1], [1, 1], 2).unwrap();
        assert_eq!(halved.degree, 1);
        assert!(wh_discriminant_type(&[2, 1], &[1], [1, 1], 1).is_err());
    }
}
