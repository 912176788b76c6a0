//! Koszul bracket of forms and the two Maurer–Cartan residuals.

use crate::error::{Error, Result};
use crate::model::Model;
use crate::scalar::Scalar;

use super::alt::Trunc;
use super::forms::{d, interior, MixedForm, Multivector};
use super::multivector::{d_sigma, dgla_bracket_trunc, MVElement};

/// `δ_σ = i_σ d − d i_σ`.
pub fn delta_sigma(a: &MixedForm, sigma: &Multivector) -> MixedForm {
    let s = sigma.degree_part(2);
    interior(&s, &d(a)).sub(&d(&interior(&s, a)))
}

fn sign(k: u32) -> i32 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn signed(a: &MixedForm, s: i32) -> MixedForm {
    if s < 0 {
        a.neg()
    } else {
        a.clone()
    }
}

/// Derived bracket `[α,β]_σ = α∧δβ − (−1)^k δ(α∧β) + (−1)^k δα∧β`, extended
/// bilinearly over the homogeneous parts of `α`.
pub fn koszul_bracket(a: &MixedForm, b: &MixedForm, sigma: &Multivector) -> MixedForm {
    koszul_bracket_trunc(a, b, sigma, None)
}

pub fn koszul_bracket_trunc(a: &MixedForm, b: &MixedForm, sigma: &Multivector, t: Option<Trunc>) -> MixedForm {
    let mut r = MixedForm::zero(a.dim());
    let db = delta_sigma(b, sigma).truncate(t);
    for k in a.degrees() {
        let ak = a.degree_part(k);
        let s = sign(k);
        let t1 = ak.wedge_trunc(&db, t);
        let t2 = signed(&delta_sigma(&ak.wedge_trunc(b, t), sigma), -s);
        let t3 = signed(&delta_sigma(&ak, sigma).wedge_trunc(b, t), s);
        r = r.add(&t1).add(&t2).add(&t3);
    }
    r.truncate(t)
}

fn check_two_form(x: &MixedForm) -> Result<()> {
    if x.comps().any(|(m, _)| m.count_ones() != 2) {
        return Err(Error::Degree("Maurer–Cartan input must be a 2-form".into()));
    }
    Ok(())
}

/// `dω + ½[ω,ω]_σ`, truncated in `t` when requested.
pub fn mc_residual_koszul(omega: &MixedForm, sigma: &Multivector, t: Option<Trunc>) -> Result<MixedForm> {
    check_two_form(omega)?;
    let half = Scalar::from_frac(1, 2);
    Ok(d(omega).add(&koszul_bracket_trunc(omega, omega, sigma, t).scale(&half)).truncate(t))
}

/// `d_σ ε + ½[ε,ε]` on `∧•N`, truncated in `t` when requested.
pub fn mc_residual_dgla(model: &Model, eps: &MVElement, sigma: &MVElement, t: Option<Trunc>) -> Result<MVElement> {
    if eps.comps().any(|(m, _)| m.count_ones() != 2) {
        return Err(Error::Degree("Maurer–Cartan input must have dgLa degree 1".into()));
    }
    let half = Scalar::from_frac(1, 2);
    let lin = d_sigma(model, eps, sigma);
    Ok(lin.add(&dgla_bracket_trunc(model, eps, eps, t).scale(&half)).truncate(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::forms::{bivector_pair, dx, lie_derivative, sharp};
    use crate::poly::Poly;

    fn one_form_oracle(xi: &MixedForm, eta: &MixedForm, s: &Multivector) -> MixedForm {
        let a = lie_derivative(&sharp(s, xi), eta);
        let b = lie_derivative(&sharp(s, eta), xi);
        let c = d(&MixedForm::scalar(xi.dim(), bivector_pair(s, xi, eta)));
        a.sub(&b).sub(&c).neg()
    }

    #[test]
    fn constant_bivector_examples() {
        let s = Multivector::monomial(4, &[0, 1], Poly::one());
        assert!(koszul_bracket(&dx(4, 0), &dx(4, 1), &s).is_zero());
        let xi = MixedForm::monomial(4, &[0], Poly::var(1));
        let eta = dx(4, 1);
        let got = koszul_bracket(&xi, &eta, &s);
        assert_eq!(got, one_form_oracle(&xi, &eta, &s));
        assert!(koszul_bracket(&xi, &eta, &Multivector::zero(4)).is_zero());
    }
}
