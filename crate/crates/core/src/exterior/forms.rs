//! Differential forms and multivector fields on the model space.

use crate::error::{Error, Result};
use crate::model::Model;
use crate::poly::Poly;
use crate::scalar::Scalar;

use super::alt::{indices, Alt, FormKind, VecKind};

pub type MixedForm = Alt<FormKind>;
pub type Multivector = Alt<VecKind>;

/// `Σ_{a ∈ dirs} e_a ∧ ∂_{var a}` applied to a form.
fn d_over(a: &MixedForm, dirs: impl Iterator<Item = usize>) -> MixedForm {
    let dim = a.dim();
    let mut r = MixedForm::zero(dim);
    for v in dirs {
        let da = a.deriv(v);
        if da.is_zero() {
            continue;
        }
        r = r.add(&MixedForm::monomial(dim, &[v], Poly::one()).wedge(&da));
    }
    r
}

/// Exterior derivative over every direction the form lives on.
pub fn d(a: &MixedForm) -> MixedForm {
    d_over(a, 0..a.dim())
}

/// Holomorphic part `∂` of `d`.
pub fn del(model: &Model, a: &MixedForm) -> MixedForm {
    d_over(a, 0..model.n())
}

/// Antiholomorphic part `∂̄` of `d`.
pub fn delbar(model: &Model, a: &MixedForm) -> MixedForm {
    let n = model.n();
    d_over(a, n..2 * n)
}

/// The `(p, q)` component relative to the background complex structure.
pub fn project_type(model: &Model, a: &MixedForm, p: u32, q: u32) -> MixedForm {
    a.bidegree_part(model.n(), p, q)
}

/// `i_P a` with `i_{∂_{a1}∧…∧∂_{ak}} = i_{∂_{ak}} ∘ … ∘ i_{∂_{a1}}`.
///
/// So `i_{∂_1∧∂_2}(dz_1∧dz_2) = 1`. Degree underflow gives zero.
pub fn interior<K: super::alt::Kind>(p: &Alt<K>, a: &MixedForm) -> MixedForm {
    let mut r = MixedForm::zero(a.dim());
    for (mask, coeff) in p.comps() {
        let mut acc = a.clone();
        for i in indices(mask) {
            acc = acc.contract_left(i);
            if acc.is_zero() {
                break;
            }
        }
        r = r.add(&acc.mul_poly(coeff));
    }
    r
}

/// Interior product with a vector field.
pub fn interior_vec(x: &Multivector, a: &MixedForm) -> MixedForm {
    interior(&x.degree_part(1), a)
}

/// Lie derivative `L_X = i_X d + d i_X`.
pub fn lie_derivative(x: &Multivector, a: &MixedForm) -> MixedForm {
    interior_vec(x, &d(a)).add(&d(&interior_vec(x, a)))
}

/// `σ♯ξ`: contract a form into the first slot of a multivector.
///
/// For a bivector this is `σξ = Σ ξ_a σ^{ab} ∂_b`, and `σ(ξ, η) = η(σξ)`.
pub fn sharp(p: &Multivector, xi: &MixedForm) -> Multivector {
    let mut r = Multivector::zero(p.dim());
    for (mask, c) in xi.degree_part(1).comps() {
        let a = mask.trailing_zeros() as usize;
        r = r.add(&p.contract_left(a).mul_poly(c));
    }
    r
}

/// Pairing of a vector field with a 1-form.
pub fn pair(x: &Multivector, xi: &MixedForm) -> Poly {
    interior_vec(x, &xi.degree_part(1)).comp(0)
}

/// `dz_h` (or `dx_h`) as a form of the given dimension.
pub fn dx(dim: usize, a: usize) -> MixedForm {
    MixedForm::monomial(dim, &[a], Poly::one())
}

/// `∂_a` as a vector field of the given dimension.
pub fn partial(dim: usize, a: usize) -> Multivector {
    Multivector::monomial(dim, &[a], Poly::one())
}

/// Algebraic Poincaré homotopy for `∂̄` on `(0, q)`-forms, `q ≥ 1`.
///
/// Each piece whose coefficient has `z̄`-degree `m` maps to `ι_E(piece)/(m+q)`
/// with `E = Σ z̄_j ∂_{z̄_j}`. Then `∂̄h + h∂̄ = id` in positive degree.
pub fn euler_homotopy(model: &Model, a: &MixedForm) -> Result<MixedForm> {
    let n = model.n();
    if !model.is_complex() {
        return Err(Error::Precondition("homotopy needs a complex model".into()));
    }
    let anti = model.anti_mask();
    let mut r = MixedForm::zero(a.dim());
    for (mask, coeff) in a.comps() {
        if mask & !anti != 0 {
            return Err(Error::Degree("homotopy input has a component outside type (0,q)".into()));
        }
        let q = mask.count_ones();
        if q == 0 {
            return Err(Error::Degree("homotopy input has a (0,0) component".into()));
        }
        for (mono, c) in coeff.terms() {
            let m: u32 = (n..2 * n).map(|v| mono.exp(v)).sum();
            let piece = MixedForm::basis(a.dim(), mask, Poly::term(*mono, c.clone()));
            let mut contracted = MixedForm::zero(a.dim());
            for j in n..2 * n {
                contracted = contracted.add(&piece.contract_left(j).mul_poly(&Poly::var(j)));
            }
            let w = Scalar::from_frac(1, (m + q) as i64);
            r = r.add(&contracted.scale(&w));
        }
    }
    Ok(r)
}

/// Matrix `B[a][b]` of a 2-form, with `i_{∂_a}B = Σ_b B[a][b] dx_b`.
pub fn form_matrix(b: &MixedForm) -> Vec<Vec<Poly>> {
    two_matrix(b.dim(), b.degree_part(2).comps())
}

/// Matrix `S[a][b] = σ^{ab}` of a bivector, with `σξ = Σ ξ_a S[a][b] ∂_b`.
pub fn bivector_matrix(s: &Multivector) -> Vec<Vec<Poly>> {
    two_matrix(s.dim(), s.degree_part(2).comps())
}

fn two_matrix<'a>(dim: usize, comps: impl Iterator<Item = (u32, &'a Poly)>) -> Vec<Vec<Poly>> {
    let mut m = vec![vec![Poly::zero(); dim]; dim];
    for (mask, c) in comps {
        let ix = indices(mask);
        let (a, b) = (ix[0], ix[1]);
        m[a][b].add_assign(c);
        m[b][a].add_assign(&c.neg());
    }
    m
}

/// 2-form with the given antisymmetric matrix.
pub fn form_from_matrix(m: &[Vec<Poly>]) -> MixedForm {
    let dim = m.len();
    let mut r = MixedForm::zero(dim);
    for a in 0..dim {
        for b in a + 1..dim {
            r.add_comp((1 << a) | (1 << b), &m[a][b]);
        }
    }
    r
}

/// Bivector with the given antisymmetric matrix.
pub fn bivector_from_matrix(m: &[Vec<Poly>]) -> Multivector {
    form_from_matrix(m).cast()
}

/// `σ(ξ, η) = η(σξ)` for 1-forms.
pub fn bivector_pair(s: &Multivector, xi: &MixedForm, eta: &MixedForm) -> Poly {
    pair(&sharp(s, xi), eta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2() -> Model {
        Model::complex(2)
    }

    #[test]
    fn derivative_examples() {
        let m = m2();
        // ∂̄(z̄_1 dz_1) = dz̄_1 ∧ dz_1 = -dz_1 ∧ dz̄_1
        let a = MixedForm::monomial(4, &[0], Poly::var(2));
        assert_eq!(delbar(&m, &a), MixedForm::monomial(4, &[0, 2], Poly::int(-1)));
        // d(z_1 z̄_2) = z̄_2 dz_1 + z_1 dz̄_2
        let f = MixedForm::scalar(4, Poly::var(0).mul(&Poly::var(3)));
        let expect = MixedForm::monomial(4, &[0], Poly::var(3)).add(&MixedForm::monomial(4, &[3], Poly::var(0)));
        assert_eq!(d(&f), expect);
    }

    #[test]
    fn contraction_convention() {
        let biv = Multivector::monomial(4, &[0, 1], Poly::one());
        let vol = MixedForm::monomial(4, &[0, 1], Poly::one());
        assert_eq!(interior(&biv, &vol), MixedForm::scalar(4, Poly::one()));
        assert!(interior(&biv, &MixedForm::scalar(4, Poly::one())).is_zero());
        assert!(interior_vec(&partial(4, 0), &dx(4, 1)).is_zero());
        // σ(dz_1) = ∂_2 for σ = ∂_1 ∧ ∂_2
        assert_eq!(sharp(&biv, &dx(4, 0)), partial(4, 1));
        let s = bivector_matrix(&biv);
        assert_eq!(s[0][1], Poly::one());
        assert_eq!(s[1][0], Poly::int(-1));
        assert_eq!(bivector_from_matrix(&s), biv);
    }

    #[test]
    fn homotopy_on_volume() {
        let m = m2();
        let a = MixedForm::monomial(4, &[2, 3], Poly::one());
        let h = euler_homotopy(&m, &a).unwrap();
        let half = Scalar::from_frac(1, 2);
        let expect = MixedForm::monomial(4, &[3], Poly::var(2))
            .sub(&MixedForm::monomial(4, &[2], Poly::var(3)))
            .scale(&half);
        assert_eq!(h, expect);
        assert_eq!(delbar(&m, &h), a);
        assert!(euler_homotopy(&m, &dx(4, 0)).is_err());
        assert!(euler_homotopy(&m, &MixedForm::scalar(4, Poly::one())).is_err());
    }
}
