//! Order-by-order construction of `β(t) = Σ t^k β_k` with `ψ(β)^{0,2} = 0`.
//!
//! Given `β_{≤k}`, the `t^{k+1}` coefficient `r_{k+1}` of `ψ(β_{≤k})^{0,2}` is
//! `∂̄`-closed, and with `γ = −h(r)` for the Euler homotopy `h` the choice
//! `β_{k+1} = dγ` (or `d(γ + γ̄)` for real families) cancels it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::alt::Trunc;
use crate::exterior::forms::{d, delbar, euler_homotopy, project_type, MixedForm, Multivector};
use crate::exterior::koszul::{mc_residual_dgla, mc_residual_koszul};
use crate::exterior::multivector::{d_sigma, holo_to_n, pi_star_trunc, MVElement};
use crate::model::Model;
use crate::poly::Poly;

use super::psi::formality_psi;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveMode {
    Complex,
    Real,
}

impl std::str::FromStr for SolveMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complex" => Ok(SolveMode::Complex),
            "real" => Ok(SolveMode::Real),
            _ => Err(Error::Usage(format!("unknown mode '{s}' (expected complex or real)"))),
        }
    }
}

/// `β(t)` with the per-order data of its construction.
#[derive(Clone, Debug)]
pub struct DeformSeries {
    pub model: Model,
    pub mode: SolveMode,
    pub order: u32,
    /// `β_1, …, β_N`, free of `t`.
    pub betas: Vec<MixedForm>,
    /// `r_2, …, r_N`.
    pub remainders: Vec<MixedForm>,
    /// `γ_2, …, γ_N`.
    pub gammas: Vec<MixedForm>,
    /// `ψ(β)` modulo `t^{N+1}`.
    pub omega: MixedForm,
}

impl DeformSeries {
    pub fn trunc(&self) -> Trunc {
        Trunc::new(&self.model, self.order)
    }

    /// `Σ t^k β_k`.
    pub fn beta(&self) -> MixedForm {
        let tv = self.model.t_var();
        self.betas
            .iter()
            .enumerate()
            .fold(MixedForm::zero(self.model.coords()), |acc, (k, b)| acc.add(&b.shift_t(tv, k as u32 + 1)))
    }

    /// `β_k` for `k ≥ 1` (zero past the truncation order).
    pub fn beta_k(&self, k: usize) -> MixedForm {
        self.betas.get(k.wrapping_sub(1)).cloned().unwrap_or_else(|| MixedForm::zero(self.model.coords()))
    }
}

/// `ε = ρ + φ + γ` split by type.
#[derive(Clone, Debug)]
pub struct MCElement {
    pub rho: MVElement,
    pub phi: MVElement,
    pub gamma: MVElement,
}

impl MCElement {
    pub fn split(model: &Model, eps: &MVElement) -> Self {
        let n = model.n();
        MCElement { rho: eps.bidegree_part(n, 2, 0), phi: eps.bidegree_part(n, 1, 1), gamma: eps.bidegree_part(n, 0, 2) }
    }

    pub fn total(&self) -> MVElement {
        self.rho.add(&self.phi).add(&self.gamma)
    }

    /// `π*ω = ∧²σ(ω^{2,0}) − σ(ω^{1,1}) + ω^{0,2}`.
    pub fn from_form(model: &Model, omega: &MixedForm, sigma: &Multivector, t: Option<Trunc>) -> Self {
        Self::split(model, &pi_star_trunc(model, omega, sigma, t).truncate(t))
    }
}

fn check_input(model: &Model, omega1: &MixedForm, mode: SolveMode) -> Result<()> {
    if !model.is_complex() {
        return Err(Error::Precondition("the solver needs a complex model".into()));
    }
    if omega1.comps().any(|(m, _)| m.count_ones() != 2) {
        return Err(Error::Degree("ω_1 must be a 2-form".into()));
    }
    if omega1.max_t_degree(model.t_var()) > 0 {
        return Err(Error::Precondition("ω_1 must not depend on t".into()));
    }
    let dw = d(omega1);
    if !dw.is_zero() {
        return Err(Error::NotClosed(dw.render(model, &model.dir_names())));
    }
    if !project_type(model, omega1, 0, 2).is_zero() {
        return Err(Error::Precondition("ω_1 has a (0,2) part".into()));
    }
    if mode == SolveMode::Real {
        if !omega1.is_real(model) {
            return Err(Error::Precondition("real mode needs a real ω_1".into()));
        }
        if !project_type(model, omega1, 2, 0).is_zero() {
            return Err(Error::Precondition("real mode needs ω_1 of type (1,1)".into()));
        }
    }
    Ok(())
}

/// Build `β(t)` to order `N` with `β_1 = ω_1`.
pub fn solve_hitchin(model: &Model, sigma: &Multivector, omega1: &MixedForm, order: u32, mode: SolveMode) -> Result<DeformSeries> {
    check_input(model, omega1, mode)?;
    if order == 0 {
        return Err(Error::Precondition("order must be at least 1".into()));
    }
    let tv = model.t_var();
    let mut betas = vec![omega1.clone()];
    let mut remainders = Vec::new();
    let mut gammas = Vec::new();
    let mut beta = omega1.shift_t(tv, 1);
    for k in 1..order {
        let psi = formality_psi(model, &beta, sigma, k + 1)?;
        let r = project_type(model, &psi, 0, 2).t_coeff(tv, k + 1);
        let lower = project_type(model, &psi, 0, 2).truncate(Some(Trunc::new(model, k)));
        if !lower.is_zero() {
            return Err(Error::Certificate(format!("ψ(β)^(0,2) does not vanish below order {}", k + 1)));
        }
        let dbar_r = delbar(model, &r);
        if !dbar_r.is_zero() {
            return Err(Error::Certificate(format!(
                "∂̄r_{} ≠ 0: {}",
                k + 1,
                dbar_r.render(model, &model.dir_names())
            )));
        }
        let gamma = if r.is_zero() { MixedForm::zero(model.coords()) } else { euler_homotopy(model, &r)?.neg() };
        let next = match mode {
            SolveMode::Complex => d(&gamma),
            SolveMode::Real => d(&gamma.add(&gamma.conj(model))),
        };
        beta = beta.add(&next.shift_t(tv, k + 1));
        betas.push(next);
        remainders.push(r);
        gammas.push(gamma);
    }
    let omega = formality_psi(model, &beta, sigma, order)?;
    Ok(DeformSeries { model: *model, mode, order, betas, remainders, gammas, omega })
}

/// Exact residuals of a solved series; all zero on success.
#[derive(Clone, Debug)]
pub struct SeriesCertificate {
    /// `ψ(β)^{0,2}` mod `t^{N+1}`.
    pub psi02: MixedForm,
    /// `dω + ½[ω,ω]_σ` mod `t^{N+1}`.
    pub koszul: MixedForm,
    /// `dβ_k` for each `k`.
    pub closed: Vec<MixedForm>,
    /// `β_k − β̄_k` in real mode.
    pub reality: Vec<MixedForm>,
    pub components: MCComponents,
}

impl SeriesCertificate {
    pub fn passed(&self) -> bool {
        self.psi02.is_zero()
            && self.koszul.is_zero()
            && self.closed.iter().all(MixedForm::is_zero)
            && self.reality.iter().all(MixedForm::is_zero)
            && self.components.passed()
    }
}

pub fn certify(series: &DeformSeries, sigma: &Multivector) -> Result<SeriesCertificate> {
    let m = &series.model;
    let t = Some(series.trunc());
    let psi02 = project_type(m, &series.omega, 0, 2);
    let koszul = mc_residual_koszul(&series.omega, sigma, t)?;
    let closed = series.betas.iter().map(d).collect();
    let reality = match series.mode {
        SolveMode::Real => series.betas.iter().map(|b| b.sub(&b.conj(m))).collect(),
        SolveMode::Complex => Vec::new(),
    };
    let eps = MCElement::from_form(m, &series.omega, sigma, t);
    let components = mc_component_check(m, &eps, sigma, t)?;
    Ok(SeriesCertificate { psi02, koszul, closed, reality, components })
}

/// The three parts of the Maurer–Cartan equation for `ε = ρ + φ` and the
/// linearized system for the `t¹` coefficients.
#[derive(Clone, Debug)]
pub struct MCComponents {
    /// `∂̄φ + ½[φ,φ]`.
    pub complex_structure: MVElement,
    /// `∂̄ρ + ∂_σφ + [ρ,φ]`.
    pub holomorphic: MVElement,
    /// `∂_σρ + ½[ρ,ρ]`.
    pub jacobi: MVElement,
    /// Everything else: the `γ` part and its brackets.
    pub rest: MVElement,
    /// `∂̄φ_1`, `∂̄ρ_1 + ∂_σφ_1`, `∂_σρ_1`.
    pub linear: [MVElement; 3],
}

impl MCComponents {
    pub fn passed(&self) -> bool {
        self.complex_structure.is_zero()
            && self.holomorphic.is_zero()
            && self.jacobi.is_zero()
            && self.rest.is_zero()
            && self.linear.iter().all(MVElement::is_zero)
    }
}

pub fn mc_component_check(model: &Model, eps: &MCElement, sigma: &Multivector, t: Option<Trunc>) -> Result<MCComponents> {
    let n = model.n();
    let s = holo_to_n(model, sigma);
    let res = mc_residual_dgla(model, &eps.total(), &s, t)?;
    let complex_structure = res.bidegree_part(n, 1, 2);
    let holomorphic = res.bidegree_part(n, 2, 1);
    let jacobi = res.bidegree_part(n, 3, 0);
    let rest = res.sub(&complex_structure).sub(&holomorphic).sub(&jacobi);
    let tv = model.t_var();
    let phi1 = eps.phi.t_coeff(tv, 1);
    let rho1 = eps.rho.t_coeff(tv, 1);
    let lin = d_sigma(model, &phi1.add(&rho1), &s);
    let linear = [lin.bidegree_part(n, 1, 2), lin.bidegree_part(n, 2, 1), lin.bidegree_part(n, 3, 0)];
    Ok(MCComponents { complex_structure, holomorphic, jacobi, rest, linear })
}

/// First-order Kodaira–Spencer representative `−σ(ω_1^{1,1})` as an element of `∧•N`.
pub fn kodaira_spencer(model: &Model, omega1: &MixedForm, sigma: &Multivector) -> MVElement {
    pi_star_trunc(model, &project_type(model, omega1, 1, 1), sigma, None)
}

/// Constant-in-`t` polynomial check helper: `p` has no terms past `t^max`.
pub fn t_degree_at_most(p: &Poly, t_var: usize, max: u32) -> bool {
    p.truncate(t_var, max) == *p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperkahler::FlatHyperKahler;
    use crate::scalar::Scalar;

    #[test]
    fn twistor_terminates() {
        let hk = FlatHyperKahler::new();
        let m = hk.model;
        let sigma = hk.sigma1().unwrap();
        let w1 = hk.omega[0].scale(&Scalar::gauss((0, 1), (2, 1)));
        let s = solve_hitchin(&m, &sigma, &w1, 8, SolveMode::Complex).unwrap();
        assert_eq!(s.remainders[0], hk.big_omega_bar().neg());
        assert_eq!(s.betas[1], hk.big_omega_bar());
        assert!(s.betas[2..].iter().all(MixedForm::is_zero));
        assert_eq!(s.beta(), hk.twistor_beta());
        assert!(certify(&s, &sigma).unwrap().passed());
    }

    #[test]
    fn zero_input() {
        let m = Model::complex(2);
        let s = solve_hitchin(&m, &Multivector::zero(4), &MixedForm::zero(4), 3, SolveMode::Complex).unwrap();
        assert!(s.beta().is_zero());
    }

    #[test]
    fn real_c2_order4() {
        let m = Model::complex(2);
        let sigma = Multivector::monomial(4, &[0, 1], Poly::var(0));
        let hi = Poly::constant(Scalar::gauss((0, 1), (1, 2)));
        let w1 = MixedForm::monomial(4, &[0, 2], hi.clone()).add(&MixedForm::monomial(4, &[1, 3], hi));
        let s = solve_hitchin(&m, &sigma, &w1, 4, SolveMode::Real).unwrap();
        assert!(certify(&s, &sigma).unwrap().passed());
        assert!(!s.betas[1].is_zero());
        let eps = MCElement::from_form(&m, &s.omega, &sigma, Some(s.trunc()));
        let ks = kodaira_spencer(&m, &w1, &sigma);
        assert_eq!(eps.phi.t_coeff(m.t_var(), 1), ks);
        // −(i/2)(σ(dz_1)∧dz̄_1 + σ(dz_2)∧dz̄_2) with σ(dz_1) = z_1∂_2, σ(dz_2) = −z_1∂_1
        let c = Poly::var(0).scale(&Scalar::gauss((0, 1), (1, 2)));
        let expected = MVElement::monomial(4, &[1, 2], c.neg()).add(&MVElement::monomial(4, &[0, 3], c));
        assert_eq!(ks, expected);
    }
}
