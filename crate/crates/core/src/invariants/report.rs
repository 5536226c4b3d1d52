use crate::polyring::Polynomial;
use crate::seed;
use crate::stdbasis::IdealBasis;

use super::*;

/// Verdicts of the four exact identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentityChecks {
    /// `2(c+d) = mu(Delta) - mu(S)`
    pub thm1: bool,
    /// `c + mu(X) = mu(S) + m - 2`
    pub thm2: bool,
    /// `mu(Delta) - 2c - d = d + mu(S)`
    pub cor_mu_disc: bool,
    /// `(m-1) mu(Delta) = mu(f^-1 Delta) + m - 2`
    pub lemma_preimage: bool,
}

impl IdentityChecks {
    pub fn evaluate(r: &InvariantReport) -> Self {
        let [mu_x, mu_s, mu_delta, m, c, d, mu_disc, mu_pre] =
            [r.mu_x, r.mu_s, r.mu_delta, r.m, r.c, r.d, r.mu_disc, r.mu_preimage].map(|v| v as i128);
        IdentityChecks {
            thm1: 2 * (c + d) == mu_delta - mu_s,
            thm2: c + mu_x == mu_s + m - 2,
            cor_mu_disc: mu_disc == mu_delta - 2 * c - d && mu_disc == d + mu_s,
            lemma_preimage: (m - 1) * mu_delta == mu_pre + m - 2,
        }
    }

    pub fn all(&self) -> bool {
        self.thm1 && self.thm2 && self.cor_mu_disc && self.lemma_preimage
    }
}

/// Everything [`analyze`] computes for one germ.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantReport {
    pub mu_x: u64,
    pub mu_s: u64,
    pub mu_delta: u64,
    pub m: u64,
    pub c: u64,
    pub d: u64,
    pub mu_disc: u64,
    pub mu_preimage: u64,
    pub m0_x: u64,
    /// Zero when the singular locus is empty.
    pub m0_s: u64,
    /// Zero when the discriminant is empty.
    pub m0_preimage: u64,
    /// Equation of the discriminant in the target coordinates; `None` when it is empty.
    pub discriminant_gen: Option<Polynomial>,
    /// `None` when the identities do not apply (empty singular locus).
    pub identity_checks: Option<IdentityChecks>,
    pub afinite: bool,
    pub notes: Vec<String>,
}

/// All invariants of `p`, with the identity checks evaluated.
pub fn analyze(p: &GermProblem, seed: u64, trials: u32) -> Result<InvariantReport> {
    let sing = singular_locus_ideal(p)?;
    let mu_x =
        if p.phi().is_empty() { 0 } else { milnor_icis(p.phi(), seed::derive(seed, "mu_X"), trials).map_err(|e| e.labelled("mu(X)"))? };
    let m0_x = if p.phi().is_empty() {
        1
    } else {
        let x = IdealBasis::new(p.ring(), p.phi().iter().cloned())?;
        germ_multiplicity(&x, 2, seed::derive(seed, "m0_X"), trials).map_err(|e| e.labelled("m0(X)"))?
    };
    let m = degree_m(p)?;

    let delta = sing.generators().last().expect("delta");
    if delta.is_local_unit() {
        return Ok(InvariantReport {
            mu_x,
            mu_s: 0,
            mu_delta: 0,
            m,
            c: 0,
            d: 0,
            mu_disc: 0,
            mu_preimage: 0,
            m0_x,
            m0_s: 0,
            m0_preimage: 0,
            discriminant_gen: None,
            identity_checks: None,
            afinite: true,
            notes: vec!["submersion germ, no singularity".into()],
        });
    }

    let mu_s = singular_locus_milnor(p, mu_x)?;
    let m0_s = germ_multiplicity(&sing, 1, seed::derive(seed, "m0_S"), trials).map_err(|e| e.labelled("m0(S)"))?;
    let c = cusp_count(p)?;
    let g = discriminant_equation(p)?;
    let mu_delta = mu_plane_curve(&g)?;
    let d = double_fold_count(mu_delta, mu_s, c)?;
    let mu_disc = discriminant_milnor_number(mu_delta, c, d, mu_s)?;
    let pre = preimage_equations(p, &g)?;
    let mu_preimage = milnor_on(p.phi(), mu_x, pre.last().expect("psi"), "mu(f^-1 Delta)")?;
    let pre_ideal = IdealBasis::new(p.ring(), pre)?;
    let m0_preimage =
        germ_multiplicity(&pre_ideal, 1, seed::derive(seed, "m0_preimage"), trials).map_err(|e| e.labelled("m0(f^-1 Delta)"))?;

    let mut report = InvariantReport {
        mu_x,
        mu_s,
        mu_delta,
        m,
        c,
        d,
        mu_disc,
        mu_preimage,
        m0_x,
        m0_s,
        m0_preimage,
        discriminant_gen: Some(g),
        identity_checks: None,
        afinite: true,
        notes: Vec::new(),
    };
    let checks = IdentityChecks::evaluate(&report);
    if !checks.all() {
        report.notes.push("identity check failed: inputs are probably not A-finite or not generic".into());
    }
    report.identity_checks = Some(checks);
    Ok(report)
}
