//! Maximal isotropic subbundles given by spanning frames.

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exterior::alt::Trunc;
use crate::exterior::forms::{d, form_matrix, sharp, MixedForm, Multivector};
use crate::linalg;
use crate::model::{Model, Point};
use crate::poly::Poly;
use crate::ring::{Coeff, TSeries};
use crate::scalar::Scalar;

use super::gvfield::{courant_bracket, GVField};
use super::point::PointDirac;

#[derive(Clone, Debug)]
pub struct DiracFrame {
    pub model: Model,
    pub dim: usize,
    pub gens: Vec<GVField>,
    /// Twisting 3-form, if any.
    pub twist: Option<MixedForm>,
    /// Coefficients are series in `t` truncated at this order.
    pub trunc: Option<Trunc>,
}

/// Outcome of a symbolic comparison of two frames.
#[derive(Clone, Debug)]
pub struct FrameComparison {
    pub equal: bool,
    /// Nonzero entries of `2⟨u_i, v_j⟩` (generator indices and residual).
    pub residuals: Vec<(usize, usize, Poly)>,
    pub rank_left: usize,
    pub rank_right: usize,
}

impl DiracFrame {
    pub fn new(model: Model, dim: usize, gens: Vec<GVField>, trunc: Option<Trunc>) -> Self {
        assert!(gens.iter().all(|g| g.dim() == dim), "generator of wrong dimension");
        let gens = gens.into_iter().map(|g| g.truncate(trunc)).collect();
        DiracFrame { model, dim, gens, twist: None, trunc }
    }

    pub fn with_twist(mut self, h: Option<MixedForm>) -> Self {
        self.twist = h;
        self
    }

    /// `T`.
    pub fn tangent(model: Model, dim: usize) -> Self {
        Self::new(model, dim, (0..dim).map(|a| GVField::partial(dim, a)).collect(), None)
    }

    /// `T*`.
    pub fn cotangent(model: Model, dim: usize) -> Self {
        Self::new(model, dim, (0..dim).map(|a| GVField::dx(dim, a)).collect(), None)
    }

    /// `Γ_B = {X + i_X B}`.
    pub fn graph_form(model: Model, b: &MixedForm, trunc: Option<Trunc>) -> Self {
        let dim = b.dim();
        let m = form_matrix(b);
        let gens = (0..dim)
            .map(|a| {
                let mut g = GVField::partial(dim, a);
                g.form = m[a].clone();
                g
            })
            .collect();
        Self::new(model, dim, gens, trunc)
    }

    /// `Γ_P = {Pξ + ξ}`.
    pub fn graph_bivector(model: Model, p: &Multivector, trunc: Option<Trunc>) -> Self {
        let dim = p.dim();
        let gens = (0..dim)
            .map(|a| {
                let xi = MixedForm::monomial(dim, &[a], Poly::one());
                GVField::from_parts(&sharp(p, &xi), &xi)
            })
            .collect();
        Self::new(model, dim, gens, trunc)
    }

    pub fn with_trunc(&self, trunc: Option<Trunc>) -> Self {
        let mut f = Self::new(self.model, self.dim, self.gens.clone(), trunc);
        f.twist = self.twist.clone();
        f
    }

    /// `λL = {X + λξ}`.
    pub fn scale(&self, lambda: &Scalar) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::Precondition("cannot rescale a Dirac structure by zero".into()));
        }
        let gens = self.gens.iter().map(|g| g.scale_form(lambda)).collect();
        let mut f = Self::new(self.model, self.dim, gens, self.trunc);
        f.twist = self.twist.as_ref().map(|h| h.scale(lambda));
        Ok(f)
    }

    /// `e^B L`: `X + ξ ↦ X + ξ + i_X B` for closed `B`.
    pub fn gauge(&self, b: &MixedForm) -> Result<Self> {
        if b.dim() != self.dim {
            return Err(Error::Dimension(format!("2-form on {} directions, frame on {}", b.dim(), self.dim)));
        }
        let db = d(b);
        if !db.truncate(self.trunc).is_zero() {
            return Err(Error::NotClosed(db.render(&self.model, &self.model.dir_names())));
        }
        Ok(self.shear(b))
    }

    /// The shear by a 2-form without the closedness check.
    pub fn shear(&self, b: &MixedForm) -> Self {
        let m = form_matrix(b);
        let tp = Trunc::pair(self.trunc);
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut out = g.clone();
                for a in 0..self.dim {
                    if g.vec[a].is_zero() {
                        continue;
                    }
                    for bb in 0..self.dim {
                        if !m[a][bb].is_zero() {
                            out.form[bb].add_assign(&g.vec[a].mul_trunc(&m[a][bb], tp));
                        }
                    }
                }
                out
            })
            .collect();
        let mut f = Self::new(self.model, self.dim, gens, self.trunc);
        f.twist = self.twist.clone();
        f
    }

    pub fn conjugate(&self) -> Self {
        let gens = self.gens.iter().map(|g| g.conj(&self.model)).collect();
        let mut f = Self::new(self.model, self.dim, gens, self.trunc);
        f.twist = self.twist.as_ref().map(|h| h.conj(&self.model));
        f
    }

    /// Substitute a value of `t` (drops truncation).
    pub fn at_t(&self, t: &Scalar) -> Self {
        let tv = self.model.t_var();
        Self::new(self.model, self.dim, self.gens.iter().map(|g| g.at_t(tv, t)).collect(), None)
    }

    pub fn eval(&self, p: &Point, t: Option<&Scalar>) -> Result<PointDirac<Scalar>> {
        let vecs = self.gens.iter().map(|g| g.at(p, t)).collect();
        PointDirac::new(self.dim, vecs, Scalar::zero())
    }

    pub fn eval_series(&self, p: &Point, order: u32) -> Result<PointDirac<TSeries>> {
        let tv = self.model.t_var();
        let vecs = self.gens.iter().map(|g| g.at_series(p, tv, order)).collect();
        PointDirac::new(self.dim, vecs, TSeries::zero(order))
    }

    /// Rank at a random point (random `t` too when coefficients depend on it).
    pub fn generic_rank(&self, rng: &mut ChaCha8Rng) -> Result<usize> {
        let p = self.model.random_point(rng);
        match self.trunc {
            Some(t) => Ok(self.eval_series(&p, t.max)?.rank()),
            None => {
                let tv = random_t(rng);
                Ok(self.eval(&p, Some(&tv))?.rank())
            }
        }
    }

    /// Nonzero pairings `2⟨u_i, u_j⟩`, `i ≤ j`.
    pub fn isotropy_residuals(&self) -> Vec<(usize, usize, Poly)> {
        pair_residuals(&self.gens, &self.gens, self.trunc, true)
    }

    /// Symbolic equality: both frames isotropic of full generic rank and
    /// mutually orthogonal, which for maximal isotropic subbundles means equal
    /// wherever both have full rank.
    pub fn compare(&self, o: &Self, rng: &mut ChaCha8Rng) -> Result<FrameComparison> {
        if self.dim != o.dim {
            return Err(Error::Dimension(format!("frames of dimension {} and {}", self.dim, o.dim)));
        }
        let trunc = common_trunc(self.trunc, o.trunc);
        let residuals = pair_residuals(&self.gens, &o.gens, trunc, false);
        let rank_left = self.generic_rank(rng)?;
        let rank_right = o.generic_rank(rng)?;
        let iso = self.isotropy_residuals().is_empty() && o.isotropy_residuals().is_empty();
        let equal = residuals.is_empty() && iso && rank_left == self.dim && rank_right == self.dim;
        Ok(FrameComparison { equal, residuals, rank_left, rank_right })
    }

    /// `L1 + L2 = {X + α + β : X + α ∈ L1, X + β ∈ L2}`, twist `H1 + H2`.
    ///
    /// The matched vector parts form the kernel of `[anchors(L1) | −anchors(L2)]`.
    /// A kernel basis is written down without division from an invertible
    /// maximal minor (Cramer's rule), chosen at a random point.
    pub fn sum(&self, o: &Self, rng: &mut ChaCha8Rng) -> Result<Self> {
        if self.dim != o.dim {
            return Err(Error::Dimension(format!("frames of dimension {} and {}", self.dim, o.dim)));
        }
        let dim = self.dim;
        let trunc = common_trunc(self.trunc, o.trunc);
        let k = self.gens.len();
        let cols: Vec<Vec<Poly>> = self
            .gens
            .iter()
            .map(|g| g.vec.clone())
            .chain(o.gens.iter().map(|g| g.vec.iter().map(Poly::neg).collect()))
            .collect();
        let ncols = cols.len();
        // anchor matrix rows
        let m: Vec<Vec<Poly>> = (0..dim).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        let pivots = self.pivot_columns(&m, trunc, rng)?;
        if pivots.len() < dim {
            return Err(Error::Transversality(format!(
                "anchors span rank {} < {} at a generic point",
                pivots.len(),
                dim
            )));
        }
        let ms: Vec<Vec<Poly>> = m.iter().map(|row| pivots.iter().map(|&c| row[c].clone()).collect()).collect();
        let det_s = truncate_poly(&linalg::det(&ms, &Poly::zero()), trunc);
        let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
        let normalizer = det_s.is_constant().then(|| det_s.constant_term().inv());
        let mut gens = Vec::new();
        for &j in &free {
            let mut x = vec![Poly::zero(); ncols];
            x[j] = det_s.clone();
            for (i, &pc) in pivots.iter().enumerate() {
                let mut mi = ms.clone();
                for r in 0..dim {
                    mi[r][i] = m[r][j].neg();
                }
                x[pc] = truncate_poly(&linalg::det(&mi, &Poly::zero()), trunc);
            }
            let mut g = GVField::zero(dim);
            let tp = Trunc::pair(trunc);
            for (c, xc) in x.iter().enumerate() {
                if xc.is_zero() {
                    continue;
                }
                if c < k {
                    g = g.add(&self.gens[c].mul_poly(xc, trunc));
                } else {
                    let src = &o.gens[c - k];
                    for a in 0..dim {
                        if !src.form[a].is_zero() {
                            g.form[a].add_assign(&src.form[a].mul_trunc(xc, tp));
                        }
                    }
                }
            }
            if let Some(s) = &normalizer {
                g = g.scale(s);
            }
            gens.push(g);
        }
        let twist = match (&self.twist, &o.twist) {
            (None, None) => None,
            (Some(h), None) | (None, Some(h)) => Some(h.clone()),
            (Some(a), Some(b)) => Some(a.add(b)),
        };
        let f = Self::new(self.model, dim, gens, trunc).with_twist(twist);
        Ok(f)
    }

    /// `o − self = (−1)·self + o`.
    pub fn difference_from(&self, o: &Self, rng: &mut ChaCha8Rng) -> Result<Self> {
        self.scale(&Scalar::from_int(-1))?.sum(o, rng)
    }

    fn pivot_columns(&self, m: &[Vec<Poly>], trunc: Option<Trunc>, rng: &mut ChaCha8Rng) -> Result<Vec<usize>> {
        let p = self.model.random_point(rng);
        let tv = self.model.t_var();
        let e = match trunc {
            Some(t) => {
                let vals = p.subst(None);
                let mm: Vec<Vec<TSeries>> = m
                    .iter()
                    .map(|row| row.iter().map(|c| TSeries::from_poly(&c.substitute(&vals), tv, t.max)).collect())
                    .collect();
                linalg::echelon(&mm)?.pivots
            }
            None => {
                let t = random_t(rng);
                let vals = p.subst(Some(&t));
                let mm: Vec<Vec<Scalar>> =
                    m.iter().map(|row| row.iter().map(|c| c.substitute(&vals).constant_term()).collect()).collect();
                linalg::echelon(&mm)?.pivots
            }
        };
        let mut piv = e;
        piv.sort_unstable();
        Ok(piv)
    }

    /// Courant brackets of all generator pairs, tested for membership by
    /// pairing against the frame.
    pub fn involutivity(&self) -> InvolutivityReport {
        let h = self.twist.as_ref();
        let mut failures = Vec::new();
        let mut pairs = 0;
        for i in 0..self.gens.len() {
            for j in 0..self.gens.len() {
                pairs += 1;
                let w = courant_bracket(&self.gens[i], &self.gens[j], h).truncate(self.trunc);
                for (k, g) in self.gens.iter().enumerate() {
                    let r = w.pairing2(g, self.trunc);
                    let r = truncate_poly(&r, self.trunc);
                    if !r.is_zero() {
                        failures.push((i, j, k, r));
                    }
                }
            }
        }
        InvolutivityReport { pairs, failures }
    }

    pub fn render(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.render(&self.model)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct InvolutivityReport {
    pub pairs: usize,
    /// `(i, j, k, 2⟨[e_i, e_j], e_k⟩)` for every nonzero pairing.
    pub failures: Vec<(usize, usize, usize, Poly)>,
}

impl InvolutivityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn random_t(rng: &mut ChaCha8Rng) -> Scalar {
    use rand::Rng;
    Scalar::from_frac(rng.gen_range(1..=9), rng.gen_range(11..=23))
}

fn common_trunc(a: Option<Trunc>, b: Option<Trunc>) -> Option<Trunc> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x.max <= y.max { x } else { y }),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

pub fn truncate_poly(p: &Poly, t: Option<Trunc>) -> Poly {
    match t {
        Some(t) => p.truncate(t.t_var, t.max),
        None => p.clone(),
    }
}

fn pair_residuals(a: &[GVField], b: &[GVField], t: Option<Trunc>, upper: bool) -> Vec<(usize, usize, Poly)> {
    let mut out = Vec::new();
    for (i, u) in a.iter().enumerate() {
        for (j, v) in b.iter().enumerate() {
            if upper && j < i {
                continue;
            }
            let r = truncate_poly(&u.pairing2(v, t), t);
            if !r.is_zero() {
                out.push((i, j, r));
            }
        }
    }
    out
}

/// Whether `v` pairs to zero with every generator (membership for maximal
/// isotropic frames of full rank).
pub fn orthogonal_to(v: &GVField, l: &DiracFrame) -> Vec<Poly> {
    l.gens
        .iter()
        .map(|g| truncate_poly(&v.pairing2(g, l.trunc), l.trunc))
        .filter(|p| !p.is_zero())
        .collect()
}

/// Lemma 2.1 surrogate at a point: `dim(L1 ∩ L2) = dim((L2 − L1) ∩ T)`.
pub fn intersection_dims<C: Coeff>(
    l1: &PointDirac<C>,
    l2: &PointDirac<C>,
    diff: &PointDirac<C>,
) -> Result<(usize, usize)> {
    Ok((l1.intersect(l2)?.rank(), diff.intersect_tangent()?.rank()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    #[test]
    fn graph_conventions() {
        let m = Model::real(2);
        let b = MixedForm::monomial(2, &[0, 1], Poly::one());
        let g = DiracFrame::graph_form(m, &b, None);
        // ∂x + dy, ∂y − dx
        assert_eq!(g.gens[0], GVField::new(vec![Poly::one(), Poly::zero()], vec![Poly::zero(), Poly::one()]));
        assert_eq!(g.gens[1], GVField::new(vec![Poly::zero(), Poly::one()], vec![Poly::int(-1), Poly::zero()]));
        assert!(g.isotropy_residuals().is_empty());
    }

    #[test]
    fn sums_of_graphs() {
        let m = Model::real(2);
        let mut rng = random::rng(1);
        let b1 = MixedForm::monomial(2, &[0, 1], Poly::var(0));
        let b2 = MixedForm::monomial(2, &[0, 1], Poly::int(3));
        let s = DiracFrame::graph_form(m, &b1, None).sum(&DiracFrame::graph_form(m, &b2, None), &mut rng).unwrap();
        let expect = DiracFrame::graph_form(m, &b1.add(&b2), None);
        assert!(s.compare(&expect, &mut rng).unwrap().equal);
        // Γ_π − Γ_π = T
        let pi = Multivector::monomial(2, &[0, 1], Poly::one());
        let gp = DiracFrame::graph_bivector(m, &pi, None);
        let diff = gp.difference_from(&gp, &mut rng).unwrap();
        assert!(diff.compare(&DiracFrame::tangent(m, 2), &mut rng).unwrap().equal);
        // T + T* fails transversality? No: anchors of T span T.
        let t = DiracFrame::tangent(m, 2);
        assert!(DiracFrame::cotangent(m, 2).sum(&DiracFrame::cotangent(m, 2), &mut rng).is_err());
        assert!(t.sum(&DiracFrame::cotangent(m, 2), &mut rng).is_ok());
    }
}
