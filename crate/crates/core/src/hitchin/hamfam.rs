//! Families of Poisson structures whose velocity is a gauge transformation.
//!
//! Real families `π_t = π_0(1 + B_tπ_0)^{-1}` are checked through the velocity
//! equation and the Dirac structure `D = {f∂_t + π_tξ + ξ}` on `M × ℝ`.
//! Holomorphic families come from the solver; their derivatives in `t` and `t̄`
//! are compared with the gauge velocity `α = ∂_tβ` split by type for `I_t`.
//!
//! In the operator identities below a 2-form acts on vectors by
//! `X ↦ B(·, X) = −i_XB` and a bivector on covectors by `ξ ↦ σ(ξ, ·)`. With
//! that reading the velocity equations, their conjugate counterpart and the
//! involutivity of `D` for `H = dt∧Ḃ` all hold exactly. A frame `e^C(L × T)`
//! with `L` involutive is involutive for `H = −dC`; the real family below is
//! `e^{−B_t}Γ_{π_0}` for the action `X + ξ ↦ X + ξ + i_XB`.

use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dirac::frame::DiracFrame;
use crate::dirac::gvfield::GVField;
use crate::error::{Error, Result};
use crate::exterior::alt::Trunc;
use crate::exterior::forms::{bivector_matrix, d, form_matrix, MixedForm, Multivector};
use crate::exterior::polymat::{self, PolyMat};
use crate::model::Model;
use crate::poisson::{gauge_real_poisson, HoloPoisson};
use crate::poly::{Poly, MAX_VARS};
use crate::scalar::Scalar;

use super::deformed::deformed_structures;
use super::solver::{DeformSeries, MCElement};

/// Real family on `ℝᵐ`: `π_t = π_0(1 + B_tπ_0)^{-1}` for closed `B_t` with `B_0 = 0`.
#[derive(Clone, Debug)]
pub struct RealFamily {
    pub model: Model,
    pub pi0: Multivector,
    pub b: MixedForm,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealFamilyReport {
    /// `π̇ = −πḂπ`, cleared of denominators.
    pub velocity: bool,
    /// `D` involutive for `H = dt∧Ḃ`.
    pub involutive_dt_bdot: bool,
    /// `D` involutive for `H = −dt∧Ḃ`.
    pub involutive_minus_dt_bdot: bool,
    /// `D − F = Γ_{π_t}` on `M × ℝ`.
    pub difference_is_graph: bool,
    /// `[∂_t, π_tξ + ξ]` matches `ξ̇ + π_tξ̇ + π̇_tξ + i_{π_tξ}Ḃ` term by term.
    pub bracket_expansion: bool,
}

impl RealFamily {
    fn dim(&self) -> usize {
        self.model.coords() + 1
    }

    fn check(&self) -> Result<()> {
        if self.model.is_complex() {
            return Err(Error::Precondition("real families live on a real model".into()));
        }
        if !d(&self.b).is_zero() {
            return Err(Error::NotClosed(self.b.render(&self.model, &self.model.dir_names())));
        }
        if !self.b.t_coeff(self.model.t_var(), 0).is_zero() {
            return Err(Error::Precondition("B_t must vanish at t = 0".into()));
        }
        Ok(())
    }

    /// `(δ, Q)` with `π_t = Q/δ`, as matrices on `M`.
    fn pi_parts(&self) -> Result<(Poly, PolyMat)> {
        let g = gauge_real_poisson(&self.model, &self.pi0, &self.b.neg())?;
        Ok((g.det, bivector_matrix(&g.pi_times_det)))
    }

    /// `D = ⟨∂_t, δ(π_tξ + ξ)⟩` on `M × ℝ`.
    pub fn d_frame(&self, twist: Option<MixedForm>) -> Result<DiracFrame> {
        let (det, q) = self.pi_parts()?;
        let m = self.model.coords();
        let dim = self.dim();
        let mut gens = vec![GVField::partial(dim, m)];
        for a in 0..m {
            let mut vec = vec![Poly::zero(); dim];
            vec[..m].clone_from_slice(&q[a]);
            let mut form = vec![Poly::zero(); dim];
            form[a] = det.clone();
            gens.push(GVField::new(vec, form));
        }
        Ok(DiracFrame::new(self.model, dim, gens, None).with_twist(twist))
    }

    /// `F = TM ⊕ T*ℝ`.
    pub fn f_frame(&self) -> DiracFrame {
        let m = self.model.coords();
        let dim = self.dim();
        let mut gens: Vec<GVField> = (0..m).map(|a| GVField::partial(dim, a)).collect();
        gens.push(GVField::dx(dim, m));
        DiracFrame::new(self.model, dim, gens, None)
    }

    /// `dt∧Ḃ` on `M × ℝ`.
    pub fn twist(&self) -> MixedForm {
        let m = self.model.coords();
        let dim = self.dim();
        let bdot = self.b.deriv(self.model.t_var()).extend_dim(dim);
        MixedForm::monomial(dim, &[m], Poly::one()).wedge(&bdot)
    }

    pub fn report(&self, rng: &mut ChaCha8Rng) -> Result<RealFamilyReport> {
        self.check()?;
        let tv = self.model.t_var();
        let (det, q) = self.pi_parts()?;
        let bdot = form_matrix(&self.b.deriv(tv));
        // π = Q/δ and Ḃ acts as −Ḃ on row vectors: π̇ + πḂπ = 0 ⇔ Q̇δ − Qδ̇ − QḂQ = 0
        let qdot = polymat::map(&q, |p| p.deriv(tv));
        let lhs = polymat::sub(
            &polymat::sub(&polymat::map(&qdot, |p| p.mul(&det)), &polymat::map(&q, |p| p.mul(&det.deriv(tv)))),
            &polymat::mul(&polymat::mul(&q, &bdot, None), &q, None),
        );
        let velocity = polymat::is_zero(&lhs);
        let h = self.twist();
        let involutive_dt_bdot = self.d_frame(Some(h.clone()))?.involutivity().passed();
        let involutive_minus_dt_bdot = self.d_frame(Some(h.neg()))?.involutivity().passed();
        let d = self.d_frame(None)?;
        let diff = self.f_frame().difference_from(&d, rng)?;
        let graph = {
            let m = self.model.coords();
            let dim = self.dim();
            let mut gens = d.gens[1..].to_vec();
            gens.push(GVField::dx(dim, m));
            DiracFrame::new(self.model, dim, gens, None)
        };
        let difference_is_graph = diff.compare(&graph, rng)?.equal;
        let bracket_expansion = self.bracket_expansion(&h)?;
        Ok(RealFamilyReport { velocity, involutive_dt_bdot, involutive_minus_dt_bdot, difference_is_graph, bracket_expansion })
    }

    /// Compares `δ²[∂_t, π_tξ + ξ]_H` with the expansion for `ξ = dx_a`.
    fn bracket_expansion(&self, h: &MixedForm) -> Result<bool> {
        let (det, q) = self.pi_parts()?;
        let m = self.model.coords();
        let dim = self.dim();
        let tv = self.model.t_var();
        let bdot = form_matrix(&self.b.deriv(tv));
        let dt = GVField::partial(dim, m);
        for a in 0..m {
            // δ·(π_t dx_a + dx_a) has t-dependent coefficients; bracket with ∂_t
            // differentiates them, so compare δ²·[∂_t, π_tξ + ξ] with
            // δ²(π̇ξ + i_{πξ}Ḃ) = (Q̇δ − Qδ̇)ξ + δ·i_{Qξ}Ḃ, using ξ̇ = 0.
            let mut vec = vec![Poly::zero(); dim];
            vec[..m].clone_from_slice(&q[a]);
            let mut form = vec![Poly::zero(); dim];
            form[a] = det.clone();
            let g = GVField::new(vec, form);
            let br = crate::dirac::gvfield::courant_bracket(&dt, &g, Some(h));
            // [∂_t, δe] = δ̇ e + δ[∂_t, e]
            let e_part = g.mul_poly(&det.deriv(tv), None);
            let lhs = br.mul_poly(&det, None).sub(&e_part);
            let mut exp_vec = vec![Poly::zero(); dim];
            let mut exp_form = vec![Poly::zero(); dim];
            for b in 0..m {
                exp_vec[b] = q[a][b].deriv(tv).mul(&det).sub(&q[a][b].mul(&det.deriv(tv)));
                let ib: Poly = (0..m).fold(Poly::zero(), |acc, c| acc.add(&q[a][c].mul(&bdot[c][b])));
                exp_form[b] = ib.mul(&det);
            }
            if lhs != GVField::new(exp_vec, exp_form) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Report on a holomorphic family `(I_t, σ_t)` produced by the solver.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexFamilyReport {
    pub order: u32,
    /// Identities are compared modulo `t^order`, `t̄^order`.
    pub modulus: u32,
    /// `P_t + P̄_t = 1`: `T_{1,0}(I_t)` and its conjugate split `T_ℂ`.
    pub projector_real: bool,
    /// `∂_tI_t = −2iσ_t(α^{1,1})`.
    pub complex_structure_velocity: bool,
    /// `∂_tσ_t = ∧²σ_t(α^{2,0})`.
    pub poisson_velocity: bool,
    /// `∂_t̄σ_t = σ̄_tᾱ^{1,1}σ_t + σ_tᾱ^{1,1}σ̄_t`.
    pub antiholomorphic_velocity: bool,
    /// `D = e^{β}L_σ × T_ℂℂ` involutive for `H = −dt∧α` on `M × ℂ`.
    pub d_involutive: bool,
    /// `D − F = L_σ × (T_{0,1}ℂ ⊕ T*_{1,0}ℂ)`.
    pub difference_is_poisson: bool,
}

impl ComplexFamilyReport {
    pub fn passed(&self) -> bool {
        self.projector_real
            && self.complex_structure_velocity
            && self.poisson_velocity
            && self.antiholomorphic_velocity
            && self.d_involutive
            && self.difference_is_poisson
    }
}

impl RealFamilyReport {
    pub fn passed(&self) -> bool {
        self.velocity && self.involutive_dt_bdot && !self.involutive_minus_dt_bdot && self.difference_is_graph && self.bracket_expansion
    }
}

/// Variables: `z, z̄, t` as in the model, then `t̄`.
struct Bivariate {
    model: Model,
    tv: usize,
    tb: usize,
    max: u32,
}

impl Bivariate {
    fn trunc(&self, p: &Poly) -> Poly {
        p.truncate(self.tv, self.max).truncate(self.tb, self.max)
    }

    fn trunc_mat(&self, m: &PolyMat) -> PolyMat {
        polymat::map(m, |p| self.trunc(p))
    }

    fn mul(&self, a: &PolyMat, b: &PolyMat) -> PolyMat {
        self.trunc_mat(&polymat::mul(a, b, Some((self.tv, self.max))))
    }

    /// Complex conjugation, with `t ↔ t̄`.
    fn conj(&self, p: &Poly) -> Poly {
        let c = self.model.conj_poly(p);
        Poly::from_terms(c.terms().map(|(m, s)| {
            let (a, b) = (m.exp(self.tv), m.exp(self.tb));
            (m.with_exp(self.tv, b).with_exp(self.tb, a), s.clone())
        }))
    }

    /// Conjugate of a matrix in the `(∂_z, ∂_z̄)` frame.
    fn conj_mat(&self, m: &PolyMat) -> PolyMat {
        let n = self.model.n();
        let sw = |a: usize| if a < n { a + n } else { a - n };
        (0..m.len()).map(|a| (0..m.len()).map(|b| self.conj(&m[sw(a)][sw(b)])).collect()).collect()
    }

    fn eq_mod(&self, a: &PolyMat, b: &PolyMat, k: u32) -> bool {
        let f = |p: &Poly| p.truncate(self.tv, k - 1).truncate(self.tb, k - 1);
        polymat::is_zero(&polymat::map(&polymat::sub(a, b), f))
    }
}

/// Checks the holomorphic Hamiltonian family of a solved series: identities
/// mod `t^N` for the solver order `N`.
pub fn complex_family_report(series: &DeformSeries, sigma: &Multivector, rng: &mut ChaCha8Rng) -> Result<ComplexFamilyReport> {
    let model = series.model;
    let n = model.n();
    let dim = 2 * n;
    let order = series.order;
    if order < 2 {
        return Err(Error::Precondition("family checks need order at least 2".into()));
    }
    if dim + 2 > MAX_VARS {
        return Err(Error::Dimension("no variable slot left for t̄".into()));
    }
    let bv = Bivariate { model, tv: model.t_var(), tb: model.t_var() + 1, max: order };
    let trunc = series.trunc();
    let eps = MCElement::from_form(&model, &series.omega, sigma, Some(trunc));
    let ds = deformed_structures(&model, &eps, sigma, Some(trunc))?;
    let phi = ds.phi_matrix.clone();
    let phi_bar: PolyMat = phi.iter().map(|r| r.iter().map(|p| bv.conj(p)).collect()).collect();
    // K = (1 − Φ̄Φ)^{-1}
    let m = bv.mul(&phi_bar, &phi);
    let mut k = polymat::identity(n);
    let mut term = polymat::identity(n);
    for _ in 0..order {
        term = bv.mul(&term, &m);
        k = polymat::add(&k, &term);
    }
    let k_pb = bv.mul(&k, &phi_bar);
    let ph_k = bv.mul(&phi, &k);
    let ph_k_pb = bv.mul(&ph_k, &phi_bar);
    let mut p = polymat::zeros(dim);
    for a in 0..n {
        for b in 0..n {
            p[a][b] = k[a][b].clone();
            p[a][n + b] = k_pb[a][b].clone();
            p[n + a][b] = ph_k[a][b].neg();
            p[n + a][n + b] = ph_k_pb[a][b].neg();
        }
    }
    let id = polymat::identity(dim);
    let p_bar = polymat::sub(&id, &p);
    let projector_real = polymat::is_zero(&bv.trunc_mat(&polymat::sub(&bv.conj_mat(&p), &p_bar)));
    let s0 = polymat::pad(&bivector_matrix(&ds.sigma_rho), dim);
    let s = bv.mul(&bv.mul(&polymat::transpose(&p), &s0), &p);
    let s_bar = bv.conj_mat(&s);
    let alpha = form_matrix(&series.beta().deriv(bv.tv));
    let a20 = bv.mul(&bv.mul(&p, &alpha), &polymat::transpose(&p));
    let a11 = polymat::add(
        &bv.mul(&bv.mul(&p, &alpha), &polymat::transpose(&p_bar)),
        &bv.mul(&bv.mul(&p_bar, &alpha), &polymat::transpose(&p)),
    );
    let a11_bar = bv.conj_mat(&a11);
    // I_t = i(2P − 1) on row vectors. X ↦ σ(α(·,X)) is X·(−A)·S, so
    // ∂_tI = −2iσ(α^{1,1}) reads 2i∂_tP = 2i·A^{1,1}S.
    let two_i = Scalar::gauss((0, 1), (2, 1));
    let di = polymat::map(&p, |c| c.deriv(bv.tv).scale(&two_i));
    let minus_a11 = polymat::neg(&a11);
    let sig_a = bv.mul(&minus_a11, &s);
    let complex_structure_velocity = bv.eq_mod(&di, &polymat::map(&sig_a, |c| c.scale(&two_i).neg()), order);
    // ∧²σ(α)(ξ, η) = α(σξ, ση)
    let ds_dt = polymat::map(&s, |c| c.deriv(bv.tv));
    let wedge2 = bv.mul(&bv.mul(&s, &a20), &polymat::transpose(&s));
    let poisson_velocity = bv.eq_mod(&ds_dt, &wedge2, order);
    // σ̄ᾱσ: ξ ↦ σ̄(ᾱ(·, σξ)), i.e. ξ·S·(−Ā)·S̄
    let ma = polymat::neg(&a11_bar);
    let ds_dtb = polymat::map(&s, |c| c.deriv(bv.tb));
    let rhs3 = polymat::add(&bv.mul(&bv.mul(&s, &ma), &s_bar), &bv.mul(&bv.mul(&s_bar, &ma), &s));
    let antiholomorphic_velocity = bv.eq_mod(&ds_dtb, &rhs3, order);
    let (d_involutive, difference_is_poisson) = total_space_frames(series, sigma, rng)?;
    Ok(ComplexFamilyReport {
        order,
        modulus: order,
        projector_real,
        complex_structure_velocity,
        poisson_velocity,
        antiholomorphic_velocity,
        d_involutive,
        difference_is_poisson,
    })
}

/// `D = e^{β}L_σ × ⟨∂_t, ∂_t̄⟩` and `F = T_ℂM × ⟨∂_t̄, dt⟩` on `M × ℂ`, with
/// directions `z, z̄, t, t̄`.
fn total_space_frames(series: &DeformSeries, sigma: &Multivector, rng: &mut ChaCha8Rng) -> Result<(bool, bool)> {
    let model = series.model;
    let dim = model.coords();
    let big = dim + 2;
    let (tdir, tbdir) = (dim, dim + 1);
    let hp = HoloPoisson::new(model, sigma.clone());
    let beta = series.beta();
    let l = hp.frame().gauge(&beta)?;
    let lift = |g: &GVField| {
        let mut v = g.vec.clone();
        let mut f = g.form.clone();
        v.resize(big, Poly::zero());
        f.resize(big, Poly::zero());
        GVField::new(v, f)
    };
    let mut dg: Vec<GVField> = l.gens.iter().map(lift).collect();
    dg.push(GVField::partial(big, tdir));
    dg.push(GVField::partial(big, tbdir));
    let alpha = beta.deriv(model.t_var()).extend_dim(big);
    let h = MixedForm::monomial(big, &[tdir], Poly::one()).wedge(&alpha).neg();
    let trunc = Some(Trunc::new(&model, series.order));
    let d = DiracFrame::new(model, big, dg.clone(), trunc).with_twist(Some(h));
    let d_involutive = d.involutivity().passed();
    let mut fg: Vec<GVField> = (0..dim).map(|a| GVField::partial(big, a)).collect();
    fg.push(GVField::partial(big, tbdir));
    fg.push(GVField::dx(big, tdir));
    let f = DiracFrame::new(model, big, fg, None);
    let diff = f.difference_from(&DiracFrame::new(model, big, dg, trunc), rng)?;
    let mut pg: Vec<GVField> = l.gens.iter().map(lift).collect();
    pg.push(GVField::partial(big, tbdir));
    pg.push(GVField::dx(big, tdir));
    let target = DiracFrame::new(model, big, pg, trunc);
    let difference_is_poisson = diff.compare(&target, rng)?.equal;
    Ok((d_involutive, difference_is_poisson))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hitchin::solver::{solve_hitchin, SolveMode};
    use crate::hyperkahler::FlatHyperKahler;
    use crate::random;

    fn r2_family() -> RealFamily {
        let m = Model::real(2);
        let pi0 = Multivector::monomial(2, &[0, 1], Poly::var(0));
        let b = MixedForm::monomial(2, &[0, 1], Poly::var(m.t_var()));
        RealFamily { model: m, pi0, b }
    }

    #[test]
    fn real_family() {
        let mut rng = random::rng(1);
        let r = r2_family().report(&mut rng).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn twistor_family() {
        let mut rng = random::rng(2);
        let hk = FlatHyperKahler::new();
        let sigma = hk.sigma1().unwrap();
        let w1 = hk.omega[0].scale(&Scalar::gauss((0, 1), (2, 1)));
        let s = solve_hitchin(&hk.model, &sigma, &w1, 4, SolveMode::Complex).unwrap();
        let r = complex_family_report(&s, &sigma, &mut rng).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn constant_family() {
        let mut rng = random::rng(3);
        let m = Model::real(2);
        let fam = RealFamily { model: m, pi0: Multivector::monomial(2, &[0, 1], Poly::var(1)), b: MixedForm::zero(2) };
        let r = fam.report(&mut rng).unwrap();
        // with H = 0 both signs agree
        assert!(r.velocity && r.involutive_dt_bdot && r.involutive_minus_dt_bdot && r.difference_is_graph);
    }

    #[test]
    fn polynomial_poisson_family() {
        let mut rng = random::rng(4);
        let m = Model::complex(2);
        let sigma = Multivector::monomial(4, &[0, 1], Poly::var(0));
        let hi = Poly::constant(Scalar::gauss((0, 1), (1, 2)));
        let w1 = MixedForm::monomial(4, &[0, 2], hi.clone()).add(&MixedForm::monomial(4, &[1, 3], hi));
        let s = solve_hitchin(&m, &sigma, &w1, 3, SolveMode::Real).unwrap();
        let r = complex_family_report(&s, &sigma, &mut rng).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
