//! The formality map `ψ(β) = (1+βσ)^{-1}β = β − βσβ + βσβσβ − ⋯`.

use crate::error::{Error, Result};
use crate::exterior::alt::Trunc;
use crate::exterior::forms::{bivector_matrix, d, form_from_matrix, form_matrix, MixedForm, Multivector};
use crate::exterior::polymat::{self, PolyMat};
use crate::model::Model;

/// `ψ(β)` for a series `β` without constant term, modulo `t^{order+1}`.
///
/// In matrix form `ψ = B(1 + SB)^{-1}`, where `B` and `S` are the matrices of
/// `β` and `σ` (see [`form_matrix`], [`bivector_matrix`]).
pub fn formality_psi(model: &Model, beta: &MixedForm, sigma: &Multivector, order: u32) -> Result<MixedForm> {
    let t = Trunc::new(model, order);
    let beta = beta.truncate(Some(t));
    if beta.comps().any(|(m, _)| m.count_ones() != 2) {
        return Err(Error::Degree("ψ takes a 2-form".into()));
    }
    if !beta.t_coeff(t.t_var, 0).is_zero() {
        return Err(Error::Precondition("β has a t-independent term; the Neumann series needs β(0) = 0".into()));
    }
    let db = d(&beta).truncate(Some(t));
    if !db.is_zero() {
        return Err(Error::NotClosed(db.render(model, &model.dir_names())));
    }
    Ok(psi_terms(&beta, sigma, t).into_iter().fold(MixedForm::zero(beta.dim()), |a, b| a.add(&b)))
}

/// The nonzero terms `(−βσ)^k β`, `k = 0, 1, …`, modulo `t^{max+1}`.
pub fn psi_terms(beta: &MixedForm, sigma: &Multivector, t: Trunc) -> Vec<MixedForm> {
    let dim = beta.dim();
    let b = form_matrix(beta);
    let s = polymat::pad(&bivector_matrix(sigma), dim);
    let tp = Some((t.t_var, t.max));
    let sb: PolyMat = polymat::mul(&s, &b, tp);
    let mut term = b;
    let mut out = Vec::new();
    while !polymat::is_zero(&term) && out.len() <= t.max as usize + 1 {
        out.push(form_from_matrix(&term));
        term = polymat::neg(&polymat::mul(&term, &sb, tp));
    }
    out
}
