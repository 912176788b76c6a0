//! Sparse elements of an exterior algebra `∧•E` with polynomial coefficients.
//!
//! A basis element `e_A` is indexed by a bitmask `A`; the wedge order is
//! increasing index. The marker type `K` says which bundle `E` is meant, so
//! forms, multivector fields and elements of `∧•(T_{1,0} ⊕ T*_{0,1})` cannot be
//! mixed up by accident while sharing one implementation.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::model::Model;
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Differential forms: `e_a = dx_a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct FormKind;
/// Multivector fields: `e_a = ∂_a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct VecKind;
/// `∧•N`, `N = T_{1,0} ⊕ T*_{0,1}`: `e_a = ∂_{z_a}` for `a < n`, `e_{n+j} = dz̄_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct NKind;

pub trait Kind: Clone + Copy + fmt::Debug + PartialEq + Eq + Default + Send + Sync + 'static {
    const NAME: &'static str;
}
impl Kind for FormKind {
    const NAME: &'static str = "form";
}
impl Kind for VecKind {
    const NAME: &'static str = "multivector";
}
impl Kind for NKind {
    const NAME: &'static str = "dgla element";
}

/// Truncation of the deformation parameter: drop `t^k` for `k > max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Trunc {
    pub t_var: usize,
    pub max: u32,
}

impl Trunc {
    pub fn new(model: &Model, max: u32) -> Self {
        Trunc { t_var: model.t_var(), max }
    }

    pub fn pair(t: Option<Trunc>) -> Option<(usize, u32)> {
        t.map(|t| (t.t_var, t.max))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Alt<K: Kind> {
    dim: usize,
    comps: BTreeMap<u32, Poly>,
    _k: PhantomData<K>,
}

/// Sign of `e_A ∧ e_B` relative to `e_{A∪B}`; zero if they overlap.
pub fn wedge_sign(a: u32, b: u32) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign of removing index `a` from the left of `e_A`: `(-1)^{#{b ∈ A: b < a}}`.
pub fn left_sign(mask: u32, a: usize) -> i32 {
    if (mask & ((1u32 << a) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign of removing index `a` from the right of `e_A`: `(-1)^{#{b ∈ A: b > a}}`.
pub fn right_sign(mask: u32, a: usize) -> i32 {
    if (mask >> (a + 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn signed(p: &Poly, s: i32) -> Poly {
    if s < 0 {
        p.neg()
    } else {
        p.clone()
    }
}

pub fn mask_of(idx: &[usize]) -> u32 {
    idx.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

impl<K: Kind> Alt<K> {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= 16);
        Alt { dim, comps: BTreeMap::new(), _k: PhantomData }
    }

    pub fn scalar(dim: usize, f: Poly) -> Self {
        Self::basis(dim, 0, f)
    }

    pub fn basis(dim: usize, mask: u32, f: Poly) -> Self {
        let mut a = Self::zero(dim);
        a.add_comp(mask, &f);
        a
    }

    /// `f e_{i1} ∧ … ∧ e_{ik}` for an index list in any order.
    pub fn monomial(dim: usize, idx: &[usize], f: Poly) -> Self {
        let mut mask = 0u32;
        let mut sign = 1;
        for &i in idx {
            assert!(i < dim, "index out of range");
            let s = wedge_sign(mask, 1 << i);
            if s == 0 {
                return Self::zero(dim);
            }
            sign *= s;
            mask |= 1 << i;
        }
        Self::basis(dim, mask, signed(&f, sign))
    }

    /// Degree-one element `Σ_a c_a e_a`.
    pub fn one_from(dim: usize, coeffs: &[Poly]) -> Self {
        let mut a = Self::zero(dim);
        for (i, c) in coeffs.iter().enumerate() {
            a.add_comp(1 << i, c);
        }
        a
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn comps(&self) -> impl Iterator<Item = (u32, &Poly)> {
        self.comps.iter().map(|(m, p)| (*m, p))
    }

    pub fn comp(&self, mask: u32) -> Poly {
        self.comps.get(&mask).cloned().unwrap_or_default()
    }

    pub fn add_comp(&mut self, mask: u32, f: &Poly) {
        if f.is_zero() {
            return;
        }
        assert!(mask >> self.dim == 0, "mask outside dimension");
        let e = self.comps.entry(mask).or_default();
        e.add_assign(f);
        if e.is_zero() {
            self.comps.remove(&mask);
        }
    }

    pub fn check_dim(&self, o: &Self) -> Result<()> {
        if self.dim != o.dim {
            return Err(Error::Dimension(format!("{} of dimension {} vs {}", K::NAME, self.dim, o.dim)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let mut r = self.clone();
        for (m, p) in &o.comps {
            r.add_comp(*m, p);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|p| p.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        self.map(|p| p.scale(s))
    }

    pub fn mul_poly(&self, f: &Poly) -> Self {
        self.map(|p| p.mul(f))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        let mut r = Self::zero(self.dim);
        for (m, p) in &self.comps {
            r.add_comp(*m, &f(p));
        }
        r
    }

    pub fn truncate(&self, t: Option<Trunc>) -> Self {
        match t {
            None => self.clone(),
            Some(t) => self.map(|p| p.truncate(t.t_var, t.max)),
        }
    }

    pub fn t_coeff(&self, t_var: usize, k: u32) -> Self {
        self.map(|p| p.t_coeff(t_var, k))
    }

    pub fn shift_t(&self, t_var: usize, k: u32) -> Self {
        self.map(|p| p.shift_t(t_var, k))
    }

    /// Derivative of every coefficient in one variable.
    pub fn deriv(&self, v: usize) -> Self {
        self.map(|p| p.deriv(v))
    }

    pub fn wedge(&self, o: &Self) -> Self {
        self.wedge_trunc(o, None)
    }

    pub fn wedge_trunc(&self, o: &Self, t: Option<Trunc>) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let mut r = Self::zero(self.dim);
        for (ma, pa) in &self.comps {
            for (mb, pb) in &o.comps {
                let s = wedge_sign(*ma, *mb);
                if s == 0 {
                    continue;
                }
                let prod = pa.mul_trunc(pb, Trunc::pair(t));
                r.add_comp(ma | mb, &signed(&prod, s));
            }
        }
        r
    }

    /// Homogeneous part of wedge degree `k`.
    pub fn degree_part(&self, k: u32) -> Self {
        self.filter(|m| m.count_ones() == k)
    }

    pub fn filter(&self, keep: impl Fn(u32) -> bool) -> Self {
        let mut r = Self::zero(self.dim);
        for (m, p) in &self.comps {
            if keep(*m) {
                r.comps.insert(*m, p.clone());
            }
        }
        r
    }

    /// Degrees present.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.comps.keys().map(|m| m.count_ones()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// `(p, q)` split of a mask into indices below `n` and indices in `[n, 2n)`.
    pub fn bidegree_of(mask: u32, n: usize) -> (u32, u32) {
        let holo = (1u32 << n) - 1;
        ((mask & holo).count_ones(), (mask & (holo << n)).count_ones())
    }

    /// Component of bidegree `(p, q)` relative to `n` holomorphic directions.
    pub fn bidegree_part(&self, n: usize, p: u32, q: u32) -> Self {
        self.filter(|m| Self::bidegree_of(m, n) == (p, q))
    }

    /// Left contraction by the dual basis element `e^a`.
    pub fn contract_left(&self, a: usize) -> Self {
        let mut r = Self::zero(self.dim);
        for (m, p) in &self.comps {
            if m & (1 << a) != 0 {
                r.add_comp(m & !(1 << a), &signed(p, left_sign(*m, a)));
            }
        }
        r
    }

    /// Right contraction by the dual basis element `e^a`.
    pub fn contract_right(&self, a: usize) -> Self {
        let mut r = Self::zero(self.dim);
        for (m, p) in &self.comps {
            if m & (1 << a) != 0 {
                r.add_comp(m & !(1 << a), &signed(p, right_sign(*m, a)));
            }
        }
        r
    }

    /// Left contraction by a degree-one dual element `Σ_a λ_a e^a`
    /// (a graded derivation of degree −1).
    pub fn contract_dual(&self, lambda: &[Poly]) -> Self {
        let mut r = Self::zero(self.dim);
        for (a, l) in lambda.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            r = r.add(&self.contract_left(a).mul_poly(l));
        }
        r
    }

    /// Evaluate coefficients at a point (optionally fixing `t`).
    pub fn substitute(&self, vals: &[Option<Scalar>]) -> Self {
        self.map(|p| p.substitute(vals))
    }

    /// Reinterpret the same coefficient table under another kind.
    pub fn cast<L: Kind>(&self) -> Alt<L> {
        Alt { dim: self.dim, comps: self.comps.clone(), _k: PhantomData }
    }

    /// Embed into a larger dimension (new directions appended).
    pub fn extend_dim(&self, dim: usize) -> Self {
        assert!(dim >= self.dim);
        Alt { dim, comps: self.comps.clone(), _k: PhantomData }
    }

    /// Restrict to the first `dim` directions; components involving dropped
    /// directions are an error.
    pub fn restrict_dim(&self, dim: usize) -> Result<Self> {
        if self.comps.keys().any(|m| m >> dim != 0) {
            return Err(Error::Dimension(format!("{} has components beyond direction {dim}", K::NAME)));
        }
        Ok(Alt { dim, comps: self.comps.clone(), _k: PhantomData })
    }

    /// Conjugation: conjugate coefficients and map `e_a ↦ e_{ā}` with reordering sign.
    pub fn conj(&self, model: &Model) -> Self {
        let mut r = Self::zero(self.dim);
        for (m, p) in &self.comps {
            let idx: Vec<usize> = indices(*m).into_iter().map(|a| model.conj_dir(a)).collect();
            r = r.add(&Self::monomial(self.dim, &idx, model.conj_poly(p)));
        }
        r
    }

    pub fn is_real(&self, model: &Model) -> bool {
        self.conj(model) == *self
    }

    pub fn max_t_degree(&self, t_var: usize) -> u32 {
        self.comps.values().map(|p| p.max_exp(t_var)).max().unwrap_or(0)
    }

    pub fn render(&self, model: &Model, symbols: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, p) in &self.comps {
            let basis: Vec<&str> = indices(*m).iter().map(|&i| symbols[i].as_str()).collect();
            let coeff = model.render(p);
            if basis.is_empty() {
                parts.push(format!("({coeff})"));
            } else {
                parts.push(format!("({coeff}) {}", basis.join("^")));
            }
        }
        parts.join(" + ")
    }
}

impl<K: Kind> fmt::Debug for Alt<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write!(f, "{}[", K::NAME)?;
        for (m, p) in &self.comps {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{:?}: {:?}", indices(*m), p)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = Alt<FormKind>;

    #[test]
    fn signs() {
        assert_eq!(wedge_sign(0b01, 0b10), 1);
        assert_eq!(wedge_sign(0b10, 0b01), -1);
        assert_eq!(wedge_sign(0b11, 0b01), 0);
        assert_eq!(wedge_sign(0b101, 0b010), -1);
        assert_eq!(left_sign(0b111, 2), 1);
        assert_eq!(left_sign(0b111, 1), -1);
        assert_eq!(right_sign(0b111, 0), 1);
        assert_eq!(right_sign(0b111, 1), -1);
    }

    #[test]
    fn graded_commutativity() {
        let a = F::monomial(4, &[0], Poly::var(2)).add(&F::monomial(4, &[2], Poly::one()));
        let b = F::monomial(4, &[1, 3], Poly::var(0));
        let c = F::monomial(4, &[1], Poly::var(3));
        assert_eq!(a.wedge(&b), b.wedge(&a));
        assert_eq!(a.wedge(&c), c.wedge(&a).neg());
        assert!(a.degree_part(1).wedge(&F::monomial(4, &[0], Poly::one())).wedge(&F::monomial(4, &[0], Poly::one())).is_zero());
    }

    #[test]
    fn monomial_reorders() {
        assert_eq!(F::monomial(3, &[2, 0], Poly::one()), F::monomial(3, &[0, 2], Poly::one()).neg());
        assert!(F::monomial(3, &[1, 1], Poly::one()).is_zero());
    }
}
