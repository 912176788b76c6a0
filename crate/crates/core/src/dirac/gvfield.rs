//! Generalized vector fields `X + ξ`, sections of `T_ℂ ⊕ T_ℂ*`.

use crate::exterior::alt::Trunc;
use crate::exterior::forms::{d, interior_vec, lie_derivative, MixedForm, Multivector};
use crate::exterior::multivector::schouten;
use crate::model::{Model, Point};
use crate::poly::Poly;
use crate::ring::TSeries;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GVField {
    /// Components of `X` along `∂_a`.
    pub vec: Vec<Poly>,
    /// Components of `ξ` along `dx_a`.
    pub form: Vec<Poly>,
}

impl GVField {
    pub fn zero(dim: usize) -> Self {
        GVField { vec: vec![Poly::zero(); dim], form: vec![Poly::zero(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    pub fn new(vec: Vec<Poly>, form: Vec<Poly>) -> Self {
        assert_eq!(vec.len(), form.len());
        GVField { vec, form }
    }

    /// `∂_a`.
    pub fn partial(dim: usize, a: usize) -> Self {
        let mut g = Self::zero(dim);
        g.vec[a] = Poly::one();
        g
    }

    /// `dx_a`.
    pub fn dx(dim: usize, a: usize) -> Self {
        let mut g = Self::zero(dim);
        g.form[a] = Poly::one();
        g
    }

    pub fn from_parts(x: &Multivector, xi: &MixedForm) -> Self {
        let dim = x.dim();
        let mut g = Self::zero(dim);
        for a in 0..dim {
            g.vec[a] = x.comp(1 << a);
            g.form[a] = xi.comp(1 << a);
        }
        g
    }

    pub fn vector(&self) -> Multivector {
        Multivector::one_from(self.dim(), &self.vec)
    }

    pub fn covector(&self) -> MixedForm {
        MixedForm::one_from(self.dim(), &self.form)
    }

    pub fn is_zero(&self) -> bool {
        self.vec.iter().chain(&self.form).all(Poly::is_zero)
    }

    fn zip(&self, o: &Self, f: impl Fn(&Poly, &Poly) -> Poly) -> Self {
        GVField {
            vec: self.vec.iter().zip(&o.vec).map(|(a, b)| f(a, b)).collect(),
            form: self.form.iter().zip(&o.form).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        GVField { vec: self.vec.iter().map(&f).collect(), form: self.form.iter().map(&f).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, Poly::add)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, Poly::sub)
    }

    pub fn neg(&self) -> Self {
        self.map(Poly::neg)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        self.map(|p| p.scale(s))
    }

    pub fn mul_poly(&self, f: &Poly, t: Option<Trunc>) -> Self {
        self.map(|p| p.mul_trunc(f, Trunc::pair(t)))
    }

    pub fn truncate(&self, t: Option<Trunc>) -> Self {
        match t {
            None => self.clone(),
            Some(t) => self.map(|p| p.truncate(t.t_var, t.max)),
        }
    }

    /// Multiply the covector part by `λ`.
    pub fn scale_form(&self, s: &Scalar) -> Self {
        GVField { vec: self.vec.clone(), form: self.form.iter().map(|p| p.scale(s)).collect() }
    }

    /// Complex conjugate: conjugate coefficients and swap `∂_{z}` with `∂_{z̄}`.
    pub fn conj(&self, model: &Model) -> Self {
        let dim = self.dim();
        let mut g = Self::zero(dim);
        for a in 0..dim {
            let b = model.conj_dir(a);
            g.vec[b] = model.conj_poly(&self.vec[a]);
            g.form[b] = model.conj_poly(&self.form[a]);
        }
        g
    }

    /// `2⟨u, v⟩ = ξ(Y) + η(X)`; the natural pairing without the factor ½.
    pub fn pairing2(&self, o: &Self, t: Option<Trunc>) -> Poly {
        let tp = Trunc::pair(t);
        let mut acc = Poly::zero();
        for a in 0..self.dim() {
            if !self.form[a].is_zero() && !o.vec[a].is_zero() {
                acc.add_assign(&self.form[a].mul_trunc(&o.vec[a], tp));
            }
            if !o.form[a].is_zero() && !self.vec[a].is_zero() {
                acc.add_assign(&o.form[a].mul_trunc(&self.vec[a], tp));
            }
        }
        acc
    }

    /// `⟨u, v⟩ = ½(ξ(Y) + η(X))`.
    pub fn pairing(&self, o: &Self) -> Poly {
        self.pairing2(o, None).scale(&Scalar::from_frac(1, 2))
    }

    /// Stack as `(X, ξ)` after substituting a point (and optionally `t`).
    pub fn at(&self, p: &Point, t: Option<&Scalar>) -> Vec<Scalar> {
        let vals = p.subst(t);
        self.vec.iter().chain(&self.form).map(|c| c.substitute(&vals).constant_term()).collect()
    }

    /// Stack as `(X, ξ)` with entries in `ℚ(i)[t]/t^{N+1}`.
    pub fn at_series(&self, p: &Point, t_var: usize, order: u32) -> Vec<TSeries> {
        let vals = p.subst(None);
        self.vec
            .iter()
            .chain(&self.form)
            .map(|c| TSeries::from_poly(&c.substitute(&vals), t_var, order))
            .collect()
    }

    /// Substitute a value for `t` only.
    pub fn at_t(&self, t_var: usize, t: &Scalar) -> Self {
        let mut vals = vec![None; t_var + 1];
        vals[t_var] = Some(t.clone());
        self.map(|p| p.substitute(&vals))
    }

    pub fn render(&self, model: &Model) -> String {
        let names = model.dir_names();
        let mut parts = Vec::new();
        for (a, c) in self.vec.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("({}) d/d{}", model.render(c), names[a]));
            }
        }
        for (a, c) in self.form.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("({}) d{}", model.render(c), names[a]));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Twisted Courant (Dorfman) bracket
/// `[X+ξ, Y+η]_H = [X,Y] + L_X η − i_Y dξ + i_Y i_X H`.
pub fn courant_bracket(u: &GVField, v: &GVField, h: Option<&MixedForm>) -> GVField {
    let x = u.vector();
    let y = v.vector();
    let xi = u.covector();
    let eta = v.covector();
    let vec = schouten(&x, &y);
    let mut form = lie_derivative(&x, &eta).sub(&interior_vec(&y, &d(&xi)));
    if let Some(h) = h {
        form = form.add(&interior_vec(&y, &interior_vec(&x, h)));
    }
    GVField::from_parts(&vec, &form.degree_part(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_examples() {
        let a = GVField::partial(2, 0);
        let b = GVField::partial(2, 1);
        assert!(courant_bracket(&a, &b, None).is_zero());
        // [X+ξ, X+ξ] = d(ξ(X))
        let x = Multivector::monomial(2, &[0], Poly::var(1));
        let xi = MixedForm::monomial(2, &[1], Poly::var(0).mul(&Poly::var(1)));
        let u = GVField::from_parts(&x, &xi);
        let sq = courant_bracket(&u, &u, None);
        let expect = d(&interior_vec(&x, &xi));
        assert!(sq.vector().is_zero());
        assert_eq!(sq.covector(), expect);
    }

    #[test]
    fn pairing_is_symmetric() {
        let u = GVField::new(vec![Poly::one(), Poly::var(0)], vec![Poly::var(1), Poly::zero()]);
        let v = GVField::new(vec![Poly::var(1), Poly::zero()], vec![Poly::int(3), Poly::one()]);
        assert_eq!(u.pairing(&v), v.pairing(&u));
    }
}
