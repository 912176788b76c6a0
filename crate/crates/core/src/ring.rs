//! Coefficient rings for pointwise linear algebra.
//!
//! [`Scalar`] is a field. [`TSeries`] is the truncated power series ring
//! `ℚ(i)[t]/t^{N+1}`, a local ring whose units are the series with nonzero
//! constant term; elimination over it only ever pivots on units.

use std::fmt;

use crate::poly::Poly;
use crate::scalar::Scalar;

pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Inverse if the element is a unit.
    fn unit_inverse(&self) -> Option<Self>;
    fn render(&self) -> String;
}

impl Coeff for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero()
    }
    fn one_like(&self) -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(self.inv())
        }
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

/// Truncated series `Σ_{k ≤ N} c_k t^k`; `N = coeffs.len() - 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct TSeries {
    pub coeffs: Vec<Scalar>,
}

impl TSeries {
    pub fn zero(order: u32) -> Self {
        TSeries { coeffs: vec![Scalar::zero(); order as usize + 1] }
    }

    pub fn constant(order: u32, c: Scalar) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    /// Read a polynomial in `t` alone (other variables already substituted).
    pub fn from_poly(p: &Poly, t_var: usize, order: u32) -> Self {
        let mut s = Self::zero(order);
        for (m, c) in p.terms() {
            let k = m.exp(t_var) as usize;
            debug_assert_eq!(m.degree(), m.exp(t_var), "series entry depends on more than t");
            if k <= order as usize {
                s.coeffs[k] += c;
            }
        }
        s
    }

    pub fn to_poly(&self, t_var: usize) -> Poly {
        let mut p = Poly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            p.add_term(crate::poly::Monomial::var_pow(t_var, k as u32), c);
        }
        p
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    pub fn conj(&self) -> Self {
        TSeries { coeffs: self.coeffs.iter().map(Scalar::conj).collect() }
    }

    /// Lowest power of `t` with nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|k| k as u32)
    }
}

impl fmt::Debug for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Coeff for TSeries {
    fn zero_like(&self) -> Self {
        TSeries::zero(self.order())
    }
    fn one_like(&self) -> Self {
        TSeries::constant(self.order(), Scalar::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn add(&self, o: &Self) -> Self {
        TSeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
    fn sub(&self, o: &Self) -> Self {
        TSeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        let n = self.coeffs.len();
        let mut r = vec![Scalar::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    r[i + j] += &(a * b);
                }
            }
        }
        TSeries { coeffs: r }
    }
    fn neg(&self) -> Self {
        TSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn unit_inverse(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.inv();
        let n = self.coeffs.len();
        let mut r = vec![Scalar::zero(); n];
        r[0] = inv0.clone();
        for k in 1..n {
            let mut acc = Scalar::zero();
            for j in 1..=k {
                acc += &(&self.coeffs[j] * &r[k - j]);
            }
            r[k] = -(&acc * &inv0);
        }
        Some(TSeries { coeffs: r })
    }
    fn render(&self) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{k}"),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Polynomials, for division-free determinant and adjugate computations.
impl Coeff for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero()
    }
    fn one_like(&self) -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Poly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Poly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Poly::mul(self, o)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn unit_inverse(&self) -> Option<Self> {
        if self.is_constant() && !self.is_zero() {
            Some(Poly::constant(self.constant_term().inv()))
        } else {
            None
        }
    }
    fn render(&self) -> String {
        format!("{self:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_inverse() {
        let s = TSeries { coeffs: vec![Scalar::from_int(2), Scalar::from_int(1), Scalar::zero(), Scalar::i()] };
        let inv = s.unit_inverse().unwrap();
        assert_eq!(s.mul(&inv), s.one_like());
        let nil = TSeries { coeffs: vec![Scalar::zero(), Scalar::one()] };
        assert!(nil.unit_inverse().is_none());
        assert!(nil.mul(&nil).is_zero());
    }
}
