//! Schouten bracket, the `∧•(T_{1,0} ⊕ T*_{0,1})` bracket and its differential.
//!
//! Both brackets come from one coordinate formula. For anchored directions
//! `a` (all of them for multivector fields, only `∂_{z_a}` for `∧•N`):
//!
//! `[P, Q] = Σ_a ( ∂ᴿ_a P ∧ ∂_{x_a} Q − ∂_{x_a} P ∧ ∂ᴸ_a Q )`
//!
//! where `∂ᴸ_a`, `∂ᴿ_a` remove `e_a` from the left or right. On vector fields
//! this is the Lie bracket; on degree-one elements of `∧•N` it is
//! `[X+ξ, Y+η] = [X,Y] + i_X∂η − i_Y∂ξ`.

use crate::model::Model;
use crate::poly::Poly;

use super::alt::{indices, Alt, Kind, NKind, Trunc};
use super::forms::{sharp, MixedForm, Multivector};

pub type MVElement = Alt<NKind>;

pub fn bracket_with_anchors<K: Kind>(p: &Alt<K>, q: &Alt<K>, anchors: u32, t: Option<Trunc>) -> Alt<K> {
    assert_eq!(p.dim(), q.dim(), "dimension mismatch");
    let mut r = Alt::<K>::zero(p.dim());
    for a in indices(anchors) {
        let rp = p.contract_right(a);
        if !rp.is_zero() {
            let dq = q.deriv(a);
            if !dq.is_zero() {
                r = r.add(&rp.wedge_trunc(&dq, t));
            }
        }
        let lq = q.contract_left(a);
        if !lq.is_zero() {
            let dp = p.deriv(a);
            if !dp.is_zero() {
                r = r.sub(&dp.wedge_trunc(&lq, t));
            }
        }
    }
    r
}

/// Schouten–Nijenhuis bracket of multivector fields.
pub fn schouten(p: &Multivector, q: &Multivector) -> Multivector {
    let all = (1u32 << p.dim()) - 1;
    bracket_with_anchors(p, q, all, None)
}

/// The graded bracket on `∧•N`; anchor is the projection to `T_{1,0}`.
pub fn dgla_bracket(model: &Model, e1: &MVElement, e2: &MVElement) -> MVElement {
    bracket_with_anchors(e1, e2, model.holo_mask(), None)
}

pub fn dgla_bracket_trunc(model: &Model, e1: &MVElement, e2: &MVElement, t: Option<Trunc>) -> MVElement {
    bracket_with_anchors(e1, e2, model.holo_mask(), t)
}

/// `∂̄` on `∧•N`: `Σ_j dz̄_j ∧ ∂_{z̄_j}` acting by left multiplication.
pub fn delbar_n(model: &Model, e: &MVElement) -> MVElement {
    let n = model.n();
    let mut r = MVElement::zero(e.dim());
    for j in n..2 * n {
        let de = e.deriv(j);
        if de.is_zero() {
            continue;
        }
        r = r.add(&MVElement::monomial(e.dim(), &[j], Poly::one()).wedge(&de));
    }
    r
}

/// `d_σ e = ∂̄e + [σ, e]`.
pub fn d_sigma(model: &Model, e: &MVElement, sigma: &MVElement) -> MVElement {
    delbar_n(model, e).add(&dgla_bracket(model, sigma, e))
}

/// View a multivector field in holomorphic directions as an element of `∧•N`.
pub fn holo_to_n(model: &Model, p: &Multivector) -> MVElement {
    debug_assert!(p.comps().all(|(m, _)| m & !model.holo_mask() == 0), "non-holomorphic direction");
    p.cast()
}

/// `(0,q)`-form as an element of `∧•N`.
pub fn form01_to_n(model: &Model, a: &MixedForm) -> MVElement {
    debug_assert!(a.comps().all(|(m, _)| m & model.holo_mask() == 0), "form has (1,0) legs");
    a.cast()
}

/// Transport of forms to `∧•N` along `σ`: each `(1,0)` leg `dz_h` goes to
/// `−σ(dz_h)`, each `(0,1)` leg is kept. An algebra homomorphism.
pub fn pi_star(model: &Model, omega: &MixedForm, sigma: &Multivector) -> MVElement {
    pi_star_trunc(model, omega, sigma, None)
}

pub fn pi_star_trunc(model: &Model, omega: &MixedForm, sigma: &Multivector, t: Option<Trunc>) -> MVElement {
    let n = model.n();
    let dim = 2 * n;
    let legs: Vec<MVElement> = (0..dim)
        .map(|h| {
            if h < n {
                let one = MixedForm::monomial(dim, &[h], Poly::one());
                sharp(sigma, &one).neg().cast()
            } else {
                MVElement::monomial(dim, &[h], Poly::one())
            }
        })
        .collect();
    let mut r = MVElement::zero(dim);
    for (mask, c) in omega.comps() {
        let mut acc = MVElement::scalar(dim, c.clone());
        for h in indices(mask) {
            acc = acc.wedge_trunc(&legs[h], t);
            if acc.is_zero() {
                break;
            }
        }
        r = r.add(&acc);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::forms::partial;

    #[test]
    fn lie_bracket_examples() {
        let x = partial(4, 0);
        let y = Multivector::monomial(4, &[1], Poly::var(0));
        assert_eq!(schouten(&x, &y), partial(4, 1));
        assert!(schouten(&partial(4, 0), &partial(4, 1)).is_zero());
        let s = Multivector::monomial(4, &[0, 1], Poly::var(0));
        assert!(schouten(&s, &s).is_zero());
    }

    #[test]
    fn phi_squared_single_term() {
        let m = Model::complex(2);
        // φ = z̄_1 dz̄_1 ⊗ ∂_2
        let phi = MVElement::monomial(4, &[1, 2], Poly::var(2));
        assert!(dgla_bracket(&m, &phi, &phi).is_zero());
    }
}
