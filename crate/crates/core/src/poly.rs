//! Sparse multivariate polynomials over [`Scalar`].
//!
//! Exponent vectors are packed into a `u64`, eight bits per variable, so at most
//! [`MAX_VARS`] variables and degree 255 per variable. Variable slots are
//! assigned by the [`Model`](crate::model::Model): holomorphic coordinates,
//! then their conjugates (or real coordinates), then the deformation parameter `t`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use crate::scalar::Scalar;

pub const MAX_VARS: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(pub u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(v: usize) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: usize, e: u32) -> Self {
        assert!(v < MAX_VARS && e < 256);
        Monomial((e as u64) << (8 * v))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut m = 0u64;
        for (v, &e) in exps.iter().enumerate() {
            assert!(e < 256, "exponent too large");
            m |= (e as u64) << (8 * v);
        }
        Monomial(m)
    }

    pub fn exp(self, v: usize) -> u32 {
        ((self.0 >> (8 * v)) & 0xff) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|v| self.exp(v)).collect()
    }

    pub fn degree(self) -> u32 {
        (0..MAX_VARS).map(|v| self.exp(v)).sum()
    }

    pub fn mul(self, o: Monomial) -> Monomial {
        // per-byte overflow check
        for v in 0..MAX_VARS {
            debug_assert!(self.exp(v) + o.exp(v) < 256, "exponent overflow");
        }
        Monomial(self.0 + o.0)
    }

    pub fn with_exp(self, v: usize, e: u32) -> Monomial {
        let mask = !(0xffu64 << (8 * v));
        Monomial((self.0 & mask) | ((e as u64) << (8 * v)))
    }

    /// Swap variables `i` and `i + n` for `i < n`.
    pub fn swap_blocks(self, n: usize) -> Monomial {
        let mut m = self;
        for i in 0..n {
            let (a, b) = (self.exp(i), self.exp(i + n));
            m = m.with_exp(i, b).with_exp(i + n, a);
        }
        m
    }
}

#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::term(Monomial::ONE, c)
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(Scalar::from_int(n))
    }

    pub fn var(v: usize) -> Self {
        Poly::term(Monomial::var(v), Scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(Monomial::ONE)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn add_assign(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(*m, c);
        }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, &-c);
        }
        r
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        self.mul_trunc(o, None)
    }

    /// Product, discarding monomials whose exponent in `t_var` exceeds `max_t`.
    pub fn mul_trunc(&self, o: &Poly, trunc: Option<(usize, u32)>) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if self.len() == 1 || o.len() == 1 {
            let (single, other) = if self.len() == 1 { (self, o) } else { (o, self) };
            let (m0, c0) = single.terms.iter().next().unwrap();
            let mut terms = BTreeMap::new();
            for (m, c) in &other.terms {
                let mm = m.mul(*m0);
                if let Some((tv, mt)) = trunc {
                    if mm.exp(tv) > mt {
                        continue;
                    }
                }
                terms.insert(mm, c * c0);
            }
            return Poly { terms };
        }
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.len() * o.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let mm = ma.mul(*mb);
                if let Some((tv, mt)) = trunc {
                    if mm.exp(tv) > mt {
                        continue;
                    }
                }
                let prod = ca * cb;
                match acc.get_mut(&mm) {
                    Some(e) => *e += &prod,
                    None => {
                        acc.insert(mm, prod);
                    }
                }
            }
        }
        Poly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn deriv(&self, v: usize) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            terms.insert(m.with_exp(v, e - 1), c * &Scalar::from_int(e as i64));
        }
        Poly { terms }
    }

    /// Complex conjugation in a model with `n` holomorphic coordinates:
    /// swaps `z_i ↔ z̄_i` and conjugates coefficients. `n = 0` conjugates
    /// coefficients only (real models).
    pub fn conj(&self, n: usize) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.swap_blocks(n), c.conj())).collect() }
    }

    pub fn is_real_coefficients(&self) -> bool {
        self.terms.values().all(Scalar::is_real)
    }

    pub fn max_exp(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Drops every term with `t_var` exponent above `max_t`.
    pub fn truncate(&self, t_var: usize, max_t: u32) -> Poly {
        Poly {
            terms: self.terms.iter().filter(|(m, _)| m.exp(t_var) <= max_t).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Coefficient of `t^k` (a polynomial free of `t`).
    pub fn t_coeff(&self, t_var: usize, k: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(t_var) == k)
                .map(|(m, c)| (m.with_exp(t_var, 0), c.clone()))
                .collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift_t(&self, t_var: usize, k: u32) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.mul(Monomial::var_pow(t_var, k)), c.clone())).collect(),
        }
    }

    /// Divides by `t^k`; terms of lower `t` order must be absent.
    pub fn unshift_t(&self, t_var: usize, k: u32) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(t_var);
            if e < k {
                return None;
            }
            terms.insert(m.with_exp(t_var, e - k), c.clone());
        }
        Some(Poly { terms })
    }

    /// Substitutes values for some variables (`None` leaves a variable free).
    pub fn substitute(&self, vals: &[Option<Scalar>]) -> Poly {
        let mut powers: Vec<Vec<Scalar>> = vec![Vec::new(); vals.len()];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mm = *m;
            for (v, val) in vals.iter().enumerate() {
                let Some(x) = val else { continue };
                let e = m.exp(v) as usize;
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[v];
                if pw.is_empty() {
                    pw.push(Scalar::one());
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap() * x;
                    pw.push(next);
                }
                coeff = &coeff * &pw[e];
                mm = mm.with_exp(v, 0);
            }
            out.add_term(mm, &coeff);
        }
        out
    }

    /// Full evaluation; `vals` must cover every variable that occurs.
    pub fn eval(&self, vals: &[Scalar]) -> Scalar {
        let opt: Vec<Option<Scalar>> = vals.iter().cloned().map(Some).collect();
        let p = self.substitute(&opt);
        assert!(p.is_constant(), "eval: free variables remain");
        p.constant_term()
    }

    /// Canonical rendering with the given variable names.
    pub fn render(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut mono = Vec::new();
            for (v, name) in names.iter().enumerate() {
                match m.exp(v) {
                    0 => {}
                    1 => mono.push(name.to_string()),
                    e => mono.push(format!("{name}^{e}")),
                }
            }
            let cs = c.to_string();
            let cs = if !c.re.is_zero() && !c.im.is_zero() {
                format!("({cs})")
            } else {
                cs
            };
            if mono.is_empty() {
                parts.push(cs);
            } else if c.is_one() {
                parts.push(mono.join("*"));
            } else {
                parts.push(format!("{}*{}", cs, mono.join("*")));
            }
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..MAX_VARS).map(|v| format!("x{v}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "{}", self.render(&refs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: usize) -> Poly {
        Poly::var(v)
    }

    #[test]
    fn ring_ops() {
        let p = x(0).add(&x(1));
        let q = x(0).sub(&x(1));
        assert_eq!(p.mul(&q), x(0).mul(&x(0)).sub(&x(1).mul(&x(1))));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.pow(2).deriv(0), p.scale(&Scalar::from_int(2)));
    }

    #[test]
    fn conj_swaps_blocks_and_fixes_t() {
        // n = 2: vars z1 z2 zb1 zb2 t
        let p = Poly::term(Monomial::from_exponents(&[2, 0, 1, 0, 3]), Scalar::i());
        let c = p.conj(2);
        assert_eq!(c, Poly::term(Monomial::from_exponents(&[1, 0, 2, 0, 3]), -Scalar::i()));
        assert_eq!(c.conj(2), p);
    }

    #[test]
    fn truncation_and_t_coeffs() {
        let t = x(4);
        let p = Poly::one().add(&t).pow(5);
        let tr = p.truncate(4, 2);
        assert_eq!(tr.t_coeff(4, 2), Poly::int(10));
        assert_eq!(tr.max_exp(4), 2);
        assert_eq!(p.mul_trunc(&p, Some((4, 3))), p.mul(&p).truncate(4, 3));
    }

    #[test]
    fn evaluation() {
        let p = x(0).mul(&x(1)).add(&Poly::int(3));
        assert_eq!(p.eval(&[Scalar::from_int(2), Scalar::i()]), Scalar::gauss((3, 1), (2, 1)));
        let partial = p.substitute(&[Some(Scalar::from_int(2)), None]);
        assert_eq!(partial, x(1).scale(&Scalar::from_int(2)).add(&Poly::int(3)));
    }
}
