//! Class membership decided by exact identities on the fundamental tensor `F`.

use serde::Serialize;

use crate::error::Result;
use crate::model::{d_eta, fundamental_f, lee_forms, levi_civita, AlgebraModel};
use crate::report::{identity_check, tensor_zero_check, Check};
use crate::tensor::Tensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SubLabel {
    F4,
    F5,
    F6,
    #[serde(rename = "mixed")]
    Mixed,
    #[serde(rename = "not-applicable")]
    NotApplicable,
}

impl std::fmt::Display for SubLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SubLabel::F4 => "F4",
            SubLabel::F5 => "F5",
            SubLabel::F6 => "F6",
            SubLabel::Mixed => "mixed",
            SubLabel::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailedIdentity {
    pub name: String,
    /// 1-based frame indices.
    pub witness: Vec<usize>,
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub f0: bool,
    pub u: bool,
    pub u1: bool,
    pub u2: bool,
    pub u3: bool,
    pub sub_label: SubLabel,
    pub failed_identities: Vec<FailedIdentity>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

pub const SUB_LABEL_SCOPE_NOTE: &str = "F4/F5/F6 are told apart by the Lee forms only inside U3 = F4+F5+F6; \
     inside U1 the F9 summand is not controlled by theta and theta*, so no sub-label is assigned outside U3";

impl ClassReport {
    /// The inclusion lattice `u3 ⇒ u1 ∧ u2`, `u1 ∨ u2 ⇒ u`, `f0 ⇒ everything`.
    pub fn lattice_consistent(&self) -> bool {
        (!self.u3 || (self.u1 && self.u2))
            && (!(self.u1 || self.u2) || self.u)
            && (!self.f0 || (self.u && self.u1 && self.u2 && self.u3 && self.sub_label == SubLabel::F6))
    }

    pub fn identity_checks(&self) -> Vec<Check> {
        self.failed_identities
            .iter()
            .map(|f| {
                let mut c = Check::fail(f.name.clone(), format!("residual {}", f.residual));
                c.witness = Some(f.witness.clone());
                c
            })
            .collect()
    }
}

/// The defining identities, each quantified over every frame index tuple.
struct Identities {
    f_vanishes: Check,
    u_reduction: Check,
    u_xi_slot: Check,
    d_eta_vanishes: Check,
    phi_anti_invariant: Check,
    xi_symmetric: Check,
}

fn identities(m: &AlgebraModel, f: &Tensor, deta: &Tensor) -> Result<Identities> {
    let d = m.dim();
    let eta = m.eta();
    // F(x, y, ξ)
    let fxi = f.insert_vector(2, m.xi())?;
    let fxi_phi = fxi.apply_phi_slot(0, m.phi())?.apply_phi_slot(1, m.phi())?;
    let f_on_xi = f.insert_vector(0, m.xi())?;
    Ok(Identities {
        f_vanishes: tensor_zero_check("F-vanishes", f),
        u_reduction: identity_check("F-horizontal-reduction", d, 3, |i| {
            let (x, y, z) = (i[0], i[1], i[2]);
            &(f.get(i) - &(eta.get(&[y]) * fxi.get(&[x, z]))) - &(eta.get(&[z]) * fxi.get(&[x, y]))
        }),
        u_xi_slot: tensor_zero_check("F-xi-direction-vanishes", &f_on_xi),
        d_eta_vanishes: tensor_zero_check("d-eta-vanishes", deta),
        phi_anti_invariant: identity_check("F-xi-phi-anti-invariant", d, 2, |i| fxi.get(i) + fxi_phi.get(i)),
        xi_symmetric: identity_check("F-xi-symmetric", d, 2, |i| fxi.get(i) - fxi.get(&[i[1], i[0]])),
    })
}

fn failed(checks: &[&Check]) -> Vec<FailedIdentity> {
    checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| FailedIdentity {
            name: c.name.clone(),
            witness: c.witness.clone().unwrap_or_default(),
            residual: c
                .detail
                .as_deref()
                .map(|d| d.trim_start_matches("residual ").trim_start_matches("nonzero component ").to_string())
                .unwrap_or_default(),
        })
        .collect()
}

/// Decides F0, U, U1, U2, U3 and the F4/F5/F6 split.
pub fn classify(m: &AlgebraModel) -> Result<ClassReport> {
    let lc = levi_civita(m);
    let f = fundamental_f(m, &lc);
    let deta = d_eta(m, &lc);
    let ids = identities(m, &f, &deta)?;

    let f0 = ids.f_vanishes.passed();
    let u = ids.u_reduction.passed() && ids.u_xi_slot.passed();
    let u1 = u && ids.d_eta_vanishes.passed();
    let u2 = u && ids.phi_anti_invariant.passed();
    let u3 = u && ids.xi_symmetric.passed() && ids.phi_anti_invariant.passed();

    let sub_label = if u3 {
        let lee = lee_forms(m, &f)?;
        match (lee.theta.is_zero(), lee.theta_star.is_zero()) {
            (true, true) => SubLabel::F6,
            (false, true) => SubLabel::F4,
            (true, false) => SubLabel::F5,
            (false, false) => SubLabel::Mixed,
        }
    } else {
        SubLabel::NotApplicable
    };

    let failed_identities = failed(&[
        &ids.u_reduction,
        &ids.u_xi_slot,
        &ids.d_eta_vanishes,
        &ids.phi_anti_invariant,
        &ids.xi_symmetric,
    ]);
    let mut notes = Vec::new();
    if u1 && !u3 {
        notes.push(SUB_LABEL_SCOPE_NOTE.to_string());
    }
    Ok(ClassReport { f0, u, u1, u2, u3, sub_label, failed_identities, notes })
}
