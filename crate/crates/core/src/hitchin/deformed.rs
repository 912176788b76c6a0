//! The holomorphic Poisson structure `(I_φ, σ̃)` carried by `L_σ^ε`.
//!
//! `T^φ_{0,1} = {X + φX}` and `T^φ_{1,0}` is its conjugate. Writing
//! `T^φ_{0,1} = {(xΦ, x)}` in (holomorphic, antiholomorphic) components and
//! `K = (1 − Φ̄Φ)^{-1}`, the projection onto `T^φ_{1,0}` along `T^φ_{0,1}` is
//! the row-vector matrix `P = [[K, KΦ̄], [−ΦK, −ΦKΦ̄]]`.

use crate::dirac::frame::DiracFrame;
use crate::dirac::gvfield::GVField;
use crate::error::{Error, Result};
use crate::exterior::alt::Trunc;
use crate::exterior::forms::{bivector_from_matrix, bivector_matrix, MixedForm, Multivector};
use crate::exterior::multivector::{delbar_n, dgla_bracket_trunc, holo_to_n, schouten, MVElement};
use crate::exterior::polymat::{self, PolyMat};
use crate::model::Model;
use crate::poisson::{epsilon_graph, HoloPoisson};
use crate::poly::Poly;

use super::solver::MCElement;

#[derive(Clone, Debug)]
pub struct DeformedStructures {
    pub model: Model,
    pub trunc: Option<Trunc>,
    /// `Φ[j][i]`: `φ(∂_{z̄_j}) = Σ_i Φ[j][i] ∂_{z_i}`.
    pub phi_matrix: PolyMat,
    /// `P^φ_{1,0}` acting on row vectors.
    pub projector: PolyMat,
    pub sigma_tilde: Multivector,
    /// `σ + ρ` as a bivector.
    pub sigma_rho: Multivector,
    /// `L_σ^ε`.
    pub frame: DiracFrame,
}

fn conj_mat(model: &Model, m: &PolyMat) -> PolyMat {
    polymat::map(m, |p| model.conj_poly(p))
}

/// `(1 − M)^{-1}` for `M` with `M(t=0) = 0`, as a truncated Neumann series;
/// without truncation `1 − M` must have a nonzero constant determinant.
fn inverse_one_minus(m: &PolyMat, trunc: Option<Trunc>) -> Result<PolyMat> {
    let n = m.len();
    let id = polymat::identity(n);
    match trunc {
        Some(t) => {
            if !polymat::is_zero(&polymat::map(m, |p| p.t_coeff(t.t_var, 0))) {
                return Err(Error::Precondition("series inversion needs φ to vanish at t = 0".into()));
            }
            let tp = Some((t.t_var, t.max));
            let mut acc = id.clone();
            let mut term = id;
            for _ in 0..t.max {
                term = polymat::mul(&term, m, tp);
                if polymat::is_zero(&term) {
                    break;
                }
                acc = polymat::add(&acc, &term);
            }
            Ok(acc)
        }
        None => {
            let a = polymat::sub(&id, m);
            let det = polymat::det(&a);
            if !det.is_constant() || det.is_zero() {
                return Err(Error::Singular(format!("det(1 − φ̄φ) = {det:?} is not a nonzero constant")));
            }
            let adj = crate::poisson::adjugate(&a);
            let inv = det.constant_term().inv();
            Ok(polymat::map(&adj, |p| p.scale(&inv)))
        }
    }
}

pub fn deformed_structures(model: &Model, eps: &MCElement, sigma: &Multivector, trunc: Option<Trunc>) -> Result<DeformedStructures> {
    let n = model.n();
    let dim = 2 * n;
    if !eps.gamma.is_zero() {
        return Err(Error::Precondition("ε has a (0,2) part; not a Poisson deformation".into()));
    }
    let tp = Trunc::pair(trunc);
    let phi_matrix: PolyMat =
        (0..n).map(|j| (0..n).map(|i| eps.phi.contract_left(n + j).comp(1 << i)).collect()).collect();
    let phi_bar = conj_mat(model, &phi_matrix);
    let k = inverse_one_minus(&polymat::mul(&phi_bar, &phi_matrix, tp), trunc)?;
    let k_pb = polymat::mul(&k, &phi_bar, tp);
    let ph_k = polymat::mul(&phi_matrix, &k, tp);
    let ph_k_pb = polymat::mul(&ph_k, &phi_bar, tp);
    let mut p = polymat::zeros(dim);
    for a in 0..n {
        for b in 0..n {
            p[a][b] = k[a][b].clone();
            p[a][n + b] = k_pb[a][b].clone();
            p[n + a][b] = ph_k[a][b].neg();
            p[n + a][n + b] = ph_k_pb[a][b].neg();
        }
    }
    let sigma_rho = sigma.add(&eps.rho.cast());
    let s = polymat::pad(&bivector_matrix(&sigma_rho), dim);
    let st = polymat::mul(&polymat::mul(&polymat::transpose(&p), &s, tp), &p, tp);
    let sigma_tilde = bivector_from_matrix(&st);
    let hp = HoloPoisson::new(*model, sigma.clone()).with_trunc(trunc);
    let frame = epsilon_graph(&hp.frame(), &eps.total(), trunc);
    Ok(DeformedStructures { model: *model, trunc, phi_matrix, projector: p, sigma_tilde, sigma_rho, frame })
}

fn gv_from_rows(vec: &[Poly], form: &[Poly]) -> GVField {
    GVField::new(vec.to_vec(), form.to_vec())
}

fn row_mul(v: &[Poly], m: &PolyMat, tp: Option<(usize, u32)>) -> Vec<Poly> {
    polymat::mul(&vec![v.to_vec()], m, tp).remove(0)
}

/// Certificates for a [`DeformedStructures`].
#[derive(Clone, Debug)]
pub struct DeformedReport {
    /// `P² − P`.
    pub idempotent: bool,
    /// `P` kills `T^φ_{0,1}`.
    pub kernel: bool,
    /// `σ̃` is of type `(2,0)` for `I_φ`: `σ̃ = Pᵀσ̃P` and it kills `(T^φ_{1,0})°`.
    pub type_20: bool,
    /// `L_σ^ε = {X + σ̃ξ + ξ : X ∈ T^φ_{0,1}, ξ ∈ (T^φ_{1,0})*}`.
    pub frame_form: bool,
    /// `Ψ(n) − n ∈ L_σ^ε` for a basis of `N`, so `Ψ` is the duality isomorphism.
    pub psi_duality: bool,
    /// `Ψ` keeps covectors in `(T^φ_{0,1})*` and vectors in `T^φ_{1,0}`.
    pub psi_filtration: bool,
}

impl DeformedReport {
    pub fn passed(&self) -> bool {
        self.idempotent && self.kernel && self.type_20 && self.frame_form && self.psi_duality && self.psi_filtration
    }
}

impl DeformedStructures {
    fn tp(&self) -> Option<(usize, u32)> {
        Trunc::pair(self.trunc)
    }

    fn n(&self) -> usize {
        self.model.n()
    }

    /// Generators `(xΦ, x)` of `T^φ_{0,1}`, one per `∂_{z̄_j}`.
    pub fn t01(&self) -> Vec<Vec<Poly>> {
        let n = self.n();
        (0..n)
            .map(|j| {
                let mut v = vec![Poly::zero(); 2 * n];
                for i in 0..n {
                    v[i] = self.phi_matrix[j][i].clone();
                }
                v[n + j] = Poly::one();
                v
            })
            .collect()
    }

    /// `P^φ_{0,1} = 1 − P`.
    pub fn projector01(&self) -> PolyMat {
        polymat::sub(&polymat::identity(2 * self.n()), &self.projector)
    }

    /// `Ψ(Y + η) = PY + P(σ+ρ)(P_{0,1})*η + (P_{0,1})*η` on row vectors.
    pub fn psi(&self, g: &GVField) -> GVField {
        let tp = self.tp();
        let dim = 2 * self.n();
        let p01t = polymat::transpose(&self.projector01());
        let s = polymat::pad(&bivector_matrix(&self.sigma_rho), dim);
        let eta = row_mul(&g.form, &p01t, tp);
        let from_eta = row_mul(&row_mul(&eta, &s, tp), &self.projector, tp);
        let vec: Vec<Poly> = row_mul(&g.vec, &self.projector, tp).iter().zip(&from_eta).map(|(a, b)| a.add(b)).collect();
        gv_from_rows(&vec, &eta)
    }

    pub fn report(&self) -> DeformedReport {
        let tp = self.tp();
        let n = self.n();
        let dim = 2 * n;
        let p = &self.projector;
        let trunc = |m: &PolyMat| polymat::map(m, |c| match self.trunc {
            Some(t) => c.truncate(t.t_var, t.max),
            None => c.clone(),
        });
        let idempotent = polymat::is_zero(&trunc(&polymat::sub(&polymat::mul(p, p, tp), p)));
        let t01 = self.t01();
        let kernel = t01.iter().all(|v| row_mul(v, p, tp).iter().all(Poly::is_zero));
        let st = polymat::pad(&bivector_matrix(&self.sigma_tilde), dim);
        let proj = polymat::mul(&polymat::mul(&polymat::transpose(p), &st, tp), p, tp);
        let type_20 = polymat::is_zero(&trunc(&polymat::sub(&proj, &st)));
        // L_σ^ε against its description through (I_φ, σ̃)
        let mut gens: Vec<GVField> = t01.iter().map(|v| gv_from_rows(v, &vec![Poly::zero(); dim])).collect();
        for i in 0..n {
            // ξ = (P_{1,0})* dz_i spans (T^φ_{1,0})*
            let mut dz = vec![Poly::zero(); dim];
            dz[i] = Poly::one();
            let xi = row_mul(&dz, &polymat::transpose(p), tp);
            let sx = row_mul(&xi, &st, tp);
            gens.push(gv_from_rows(&sx, &xi));
        }
        let other = DiracFrame::new(self.model, dim, gens, self.trunc);
        let frame_form = orthogonal(&self.frame, &other.gens);
        let mut basis_n = Vec::new();
        for i in 0..n {
            basis_n.push(GVField::partial(dim, i));
        }
        for j in 0..n {
            basis_n.push(GVField::dx(dim, n + j));
        }
        let images: Vec<GVField> = basis_n.iter().map(|g| self.psi(g)).collect();
        let diffs: Vec<GVField> = images.iter().zip(&basis_n).map(|(a, b)| a.sub(b)).collect();
        let psi_duality = orthogonal(&self.frame, &diffs);
        let psi_filtration = images.iter().all(|g| {
            let v_ok = row_mul(&g.vec, &self.projector01(), tp).iter().all(Poly::is_zero);
            // covector annihilates T^φ_{1,0}: ξ(P v) = 0 for all v
            let c_ok = row_mul(&g.form, &polymat::transpose(p), tp).iter().all(Poly::is_zero);
            v_ok && c_ok
        }) && images[..n].iter().all(|g| g.form.iter().all(Poly::is_zero));
        DeformedReport { idempotent, kernel, type_20, frame_form, psi_duality, psi_filtration }
    }

    /// `∂̄f + [φ, f]` and the derivatives of `f` along `T^φ_{0,1}`, as
    /// coefficient lists indexed by `j`; equal for every `f`.
    pub fn holomorphic_test(&self, f: &Poly) -> (Vec<Poly>, Vec<Poly>) {
        let n = self.n();
        let dim = 2 * n;
        let fe = MVElement::scalar(dim, f.clone());
        let phi = self.frame_phi();
        let lhs = delbar_n(&self.model, &fe).add(&dgla_bracket_trunc(&self.model, &phi, &fe, self.trunc));
        let a: Vec<Poly> = (0..n).map(|j| lhs.comp(1 << (n + j)).truncate_opt(self.trunc)).collect();
        let b: Vec<Poly> = self
            .t01()
            .iter()
            .map(|v| {
                let mut acc = Poly::zero();
                for (c, coef) in v.iter().enumerate() {
                    if !coef.is_zero() {
                        acc.add_assign(&coef.mul_trunc(&f.deriv(c), self.tp()));
                    }
                }
                acc
            })
            .collect();
        (a, b)
    }

    fn frame_phi(&self) -> MVElement {
        let n = self.n();
        let mut phi = MVElement::zero(2 * n);
        for j in 0..n {
            for i in 0..n {
                // φ(∂_{z̄_j}) = contract_left(n+j) of the (i, n+j) component = −c ∂_i
                let c = self.phi_matrix[j][i].neg();
                phi.add_comp((1 << i) | (1 << (n + j)), &c);
            }
        }
        phi
    }

    /// For `Z ∈ T_{1,0}`: the hypotheses `∂̄Z + [φ,Z] = 0`, `[σ+ρ, Z] = 0`, and
    /// when both hold the conclusion `[PZ, σ̃] = 0`. Returns
    /// `(hypotheses hold, conclusion holds)`.
    pub fn poisson_field_test(&self, z: &Multivector) -> (bool, bool) {
        let m = &self.model;
        let ze = holo_to_n(m, z);
        let h1 = delbar_n(m, &ze).add(&dgla_bracket_trunc(m, &self.frame_phi(), &ze, self.trunc)).truncate(self.trunc);
        let h2 = dgla_bracket_trunc(m, &holo_to_n(m, &self.sigma_rho), &ze, self.trunc).truncate(self.trunc);
        let hyp = h1.is_zero() && h2.is_zero();
        if !hyp {
            return (false, false);
        }
        let dim = 2 * self.n();
        let zrow: Vec<Poly> = (0..dim).map(|a| z.comp(1 << a)).collect();
        let pz = Multivector::one_from(dim, &row_mul(&zrow, &self.projector, self.tp()));
        let br = schouten(&pz, &self.sigma_tilde).truncate(self.trunc);
        (true, br.is_zero())
    }
}

trait TruncOpt {
    fn truncate_opt(&self, t: Option<Trunc>) -> Self;
}

impl TruncOpt for Poly {
    fn truncate_opt(&self, t: Option<Trunc>) -> Self {
        match t {
            Some(t) => self.truncate(t.t_var, t.max),
            None => self.clone(),
        }
    }
}

fn orthogonal(frame: &DiracFrame, vs: &[GVField]) -> bool {
    vs.iter().all(|v| frame.gens.iter().all(|g| g.pairing2(v, frame.trunc).truncate_opt(frame.trunc).is_zero()))
}

/// The `(2,0)` part of a 2-form: used by callers splitting `ω` into types.
pub fn type_20(model: &Model, w: &MixedForm) -> MixedForm {
    crate::exterior::forms::project_type(model, w, 2, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hitchin::solver::{solve_hitchin, SolveMode};
    use crate::scalar::Scalar;

    #[test]
    fn trivial_deformation() {
        let m = Model::complex(2);
        let sigma = Multivector::monomial(4, &[0, 1], Poly::var(0));
        let eps = MCElement::split(&m, &MVElement::zero(4));
        let ds = deformed_structures(&m, &eps, &sigma, None).unwrap();
        assert_eq!(ds.projector, {
            let mut p = polymat::zeros(4);
            p[0][0] = Poly::one();
            p[1][1] = Poly::one();
            p
        });
        assert_eq!(ds.sigma_tilde, sigma);
        assert!(ds.report().passed());
    }

    #[test]
    fn rho_only() {
        let m = Model::complex(2);
        let t = Poly::var(m.t_var());
        let sigma = Multivector::monomial(4, &[0, 1], Poly::var(0));
        let rho = holo_to_n(&m, &sigma.mul_poly(&t));
        let eps = MCElement::split(&m, &rho);
        let ds = deformed_structures(&m, &eps, &sigma, Some(Trunc::new(&m, 3))).unwrap();
        assert_eq!(ds.sigma_tilde, sigma.mul_poly(&t.add(&Poly::one())));
        assert!(ds.report().passed());
        assert_eq!(ds.poisson_field_test(&Multivector::monomial(4, &[1], Poly::one())), (true, true));
    }

    #[test]
    fn solver_output() {
        let m = Model::complex(2);
        let sigma = Multivector::monomial(4, &[0, 1], Poly::var(0));
        let hi = Poly::constant(Scalar::gauss((0, 1), (1, 2)));
        let w1 = MixedForm::monomial(4, &[0, 2], hi.clone()).add(&MixedForm::monomial(4, &[1, 3], hi));
        let s = solve_hitchin(&m, &sigma, &w1, 3, SolveMode::Real).unwrap();
        let eps = MCElement::from_form(&m, &s.omega, &sigma, Some(s.trunc()));
        let ds = deformed_structures(&m, &eps, &sigma, Some(s.trunc())).unwrap();
        let r = ds.report();
        assert!(r.passed(), "{r:?}");
        for f in [Poly::var(0), Poly::var(0).mul(&Poly::var(3)), Poly::var(2).mul(&Poly::var(1))] {
            let (a, b) = ds.holomorphic_test(&f);
            assert_eq!(a, b);
        }
    }
}
