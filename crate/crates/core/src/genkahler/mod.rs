//! Generalized complex and generalized Kähler structures as Dirac structures
//! and pairs of them.

mod check;
mod family;
mod roots;

pub use check::{gk_check, GKPair, GKPointReport, GKReport, GKVerdict};
pub use family::{gk_deform_family, gk_lift, kahler_sigma_family, small_points, FamilyReport, LiftReport, TCheck};
pub use roots::{gcd, nearest_roots, NearestRoots, RatPoly, RootBracket};

use crate::error::{Error, Result};
use crate::exterior::forms::{form_matrix, MixedForm};
use crate::hyperkahler::inverse;
use crate::linalg::{self, Mat};
use crate::model::{Model, Point};
use crate::poisson::imag_form;
use crate::ring::{Coeff, TSeries};
use crate::scalar::Scalar;
use crate::dirac::{DiracFrame, PointDirac};

/// Coefficients that can be conjugated and that contain `ℚ(i)`.
pub(crate) trait PointField: Coeff {
    fn lift(&self, s: &Scalar) -> Self;
    fn conj_c(&self) -> Self;
}

impl PointField for Scalar {
    fn lift(&self, s: &Scalar) -> Self {
        s.clone()
    }
    fn conj_c(&self) -> Self {
        self.conj()
    }
}

impl PointField for TSeries {
    fn lift(&self, s: &Scalar) -> Self {
        TSeries::constant(self.order(), s.clone())
    }
    fn conj_c(&self) -> Self {
        self.conj()
    }
}

/// Conjugate of a stacked vector `(X, ξ)`; `t` is real.
pub(crate) fn conj_stacked<C: PointField>(model: &Model, v: &[C]) -> Vec<C> {
    let d = v.len() / 2;
    let mut out = v.to_vec();
    for a in 0..d {
        let b = model.conj_dir(a);
        out[b] = v[a].conj_c();
        out[d + b] = v[d + a].conj_c();
    }
    out
}

pub(crate) fn conj_point<C: PointField>(model: &Model, l: &PointDirac<C>) -> Result<PointDirac<C>> {
    PointDirac::new(l.dim, l.basis.iter().map(|v| conj_stacked(model, v)).collect(), l.zero_elem().clone())
}

/// `(1/2i)(A − B)` at a point.
pub(crate) fn half_i_difference<C: PointField>(a: &PointDirac<C>, b: &PointDirac<C>) -> Result<PointDirac<C>> {
    let z = a.zero_elem();
    let minus = b.scale(&z.lift(&Scalar::from_int(-1)));
    Ok(minus.sum(a)?.scale(&z.lift(&Scalar::gauss((0, 1), (-1, 2)))))
}

/// `(1/2i)(A − B)` as a frame.
pub(crate) fn half_i_difference_frame(a: &DiracFrame, b: &DiracFrame, rng: &mut rand_chacha::ChaCha8Rng) -> Result<DiracFrame> {
    b.difference_from(a, rng)?.scale(&Scalar::gauss((0, 1), (-1, 2)))
}

pub(crate) fn anchors_transversal<C: PointField>(a: &PointDirac<C>, b: &PointDirac<C>) -> Result<bool> {
    let mut v = a.vector_parts();
    v.extend(b.vector_parts());
    Ok(linalg::span_rank(&v)? == a.dim)
}

pub(crate) fn eval_matrix(m: &[Vec<crate::poly::Poly>], p: &Point, t: Option<&Scalar>) -> Mat<Scalar> {
    let vals = p.subst(t);
    m.iter().map(|r| r.iter().map(|c| c.substitute(&vals).constant_term()).collect()).collect()
}

/// A generalized complex structure with its real Poisson structure `π`,
/// read off at sample points from `Γ_π = (1/2i)(L − L̄)`.
#[derive(Clone, Debug)]
pub struct GCStruct {
    pub frame: DiracFrame,
    pub points: Vec<Point>,
    pub t: Option<Scalar>,
    /// Matrix of `π` at each point, `ξ ↦ ξ·P`.
    pub pi: Vec<Mat<Scalar>>,
}

/// `π` at one point, certifying `L ∩ L̄ = 0` along the way.
fn pi_at(l: &PointDirac<Scalar>, model: &Model) -> Result<Mat<Scalar>> {
    let lb = conj_point(model, l)?;
    if !anchors_transversal(l, &lb)? {
        return Err(Error::Transversality("π(L) + π(L̄) is not the whole tangent space".into()));
    }
    let meet = l.intersect(&lb)?.rank();
    let gamma = half_i_difference(l, &lb)?;
    let vertical = gamma.intersect_tangent()?.rank();
    if meet != vertical {
        return Err(Error::Inconsistent(format!("dim L∩L̄ = {meet} but dim Γ∩T = {vertical}")));
    }
    if meet != 0 {
        return Err(Error::Degenerate(format!("L ∩ L̄ has rank {meet}")));
    }
    gamma.require_maximal("Γ_π")?;
    let zero = Scalar::zero();
    let covs = gamma.covector_parts();
    let vecs = gamma.vector_parts();
    Ok(linalg::mat_mul(&inverse(&covs)?, &vecs, &zero))
}

pub fn gc_from_dirac(l: &DiracFrame, points: &[Point], t: Option<&Scalar>) -> Result<GCStruct> {
    let pi = points.iter().map(|p| pi_at(&l.eval(p, t)?, &l.model)).collect::<Result<Vec<_>>>()?;
    Ok(GCStruct { frame: l.clone(), points: points.to_vec(), t: t.cloned(), pi })
}

/// `e^β L`, checking that the new `π` is the gauge transform of the old one
/// by `B = Im β`: `π' = (1 + πB)^{-1}π` in the row convention.
pub fn gc_deform(g: &GCStruct, beta: &MixedForm) -> Result<GCStruct> {
    let model = g.frame.model;
    let frame = g.frame.gauge(beta)?;
    let bm = form_matrix(&imag_form(&model, beta));
    let zero = Scalar::zero();
    let dim = g.frame.dim;
    let mut pi = Vec::new();
    for (p, p0) in g.points.iter().zip(&g.pi) {
        let b = eval_matrix(&bm, p, g.t.as_ref());
        let pb = linalg::mat_mul(p0, &b, &zero);
        let m: Mat<Scalar> = (0..dim).map(|i| (0..dim).map(|j| if i == j { &pb[i][j] + &Scalar::one() } else { pb[i][j].clone() }).collect()).collect();
        if linalg::det(&m, &zero).is_zero() {
            return Err(Error::Singular(format!("1 + Bπ is singular at {}", p.render())));
        }
        let expected = linalg::mat_mul(&inverse(&m)?, p0, &zero);
        let got = pi_at(&frame.eval(p, g.t.as_ref())?, &model)?;
        if got != expected {
            return Err(Error::Inconsistent(format!("π of e^β L differs from the gauge transform at {}", p.render())));
        }
        pi.push(got);
    }
    Ok(GCStruct { frame, points: g.points.clone(), t: g.t.clone(), pi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::forms::{bivector_matrix, Multivector};
    use crate::poisson::{base_frame, gauge_real_poisson};
    use crate::poly::Poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn omega_std(m: &Model) -> MixedForm {
        let hi = Poly::constant(Scalar::gauss((0, 1), (1, 2)));
        MixedForm::monomial(m.coords(), &[0, 2], hi.clone()).add(&MixedForm::monomial(m.coords(), &[1, 3], hi))
    }

    fn points(m: &Model, k: usize) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        (0..k).map(|_| m.random_point(&mut rng)).collect()
    }

    #[test]
    fn symplectic_type_inverts_omega() {
        let m = Model::complex(2);
        let w = omega_std(&m);
        let l = DiracFrame::graph_form(m, &w.scale(&Scalar::i()), None);
        let g = gc_from_dirac(&l, &points(&m, 5), None).unwrap();
        let wm = eval_matrix(&form_matrix(&w), &g.points[0], None);
        let inv = inverse(&wm).unwrap();
        assert!(g.pi.iter().all(|p| *p == inv));
    }

    #[test]
    fn complex_type_has_zero_pi() {
        let m = Model::complex(2);
        let g = gc_from_dirac(&base_frame(&m), &points(&m, 5), None).unwrap();
        assert!(g.pi.iter().all(|p| p.iter().flatten().all(Scalar::is_zero)));
    }

    #[test]
    fn degenerate_real_form_is_rejected() {
        let m = Model::complex(2);
        // i(dz_1∧dz̄_1) has a kernel, so Γ_{iω'} meets its conjugate
        let w = MixedForm::monomial(4, &[0, 2], Poly::constant(Scalar::gauss((0, 1), (1, 2))));
        let l = DiracFrame::graph_form(m, &w.scale(&Scalar::i()), None);
        assert!(matches!(gc_from_dirac(&l, &points(&m, 2), None), Err(Error::Degenerate(_))));
    }

    #[test]
    fn deformations_gauge_pi() {
        let m = Model::complex(2);
        let w = omega_std(&m);
        let pts = points(&m, 5);
        let g = gc_from_dirac(&DiracFrame::graph_form(m, &w.scale(&Scalar::i()), None), &pts, None).unwrap();
        // real β: π unchanged
        let real = MixedForm::monomial(4, &[0, 1], Poly::int(1)).add(&MixedForm::monomial(4, &[2, 3], Poly::int(1)));
        let g1 = gc_deform(&g, &real).unwrap();
        assert_eq!(g1.pi, g.pi);
        // β = iB with B a constant real form: compare with the symbolic gauge
        let b = MixedForm::monomial(4, &[0, 3], Poly::constant(Scalar::gauss((0, 1), (1, 3))))
            .add(&MixedForm::monomial(4, &[1, 2], Poly::constant(Scalar::gauss((0, 1), (1, 3)))));
        let g2 = gc_deform(&g, &b.scale(&Scalar::i())).unwrap();
        let pi0 = Multivector::zero(4).add(&crate::exterior::forms::bivector_from_matrix(
            &g.pi[0].iter().map(|r| r.iter().cloned().map(Poly::constant).collect()).collect::<Vec<_>>(),
        ));
        let gauged = gauge_real_poisson(&m, &pi0, &b).unwrap();
        let expected = eval_matrix(&bivector_matrix(&gauged.pi.unwrap()), &pts[0], None);
        assert_eq!(g2.pi[0], expected);
    }

    #[test]
    fn family_velocity_is_the_shear() {
        let m = Model::complex(2);
        let tv = m.t_var();
        let l = base_frame(&m).with_trunc(Some(crate::exterior::alt::Trunc::new(&m, 3)));
        let beta = MixedForm::monomial(4, &[0, 3], Poly::var(0)).add(&MixedForm::monomial(4, &[1, 2], Poly::int(2)));
        let lt = l.gauge(&beta.map(|p| p.mul(&Poly::var(tv)))).unwrap();
        let sh = l.shear(&beta);
        for ((g, s), g0) in lt.gens.iter().zip(&sh.gens).zip(&l.gens) {
            let vel: Vec<Poly> = g.form.iter().map(|p| p.deriv(tv)).collect();
            let expect: Vec<Poly> = s.form.iter().zip(&g0.form).map(|(a, b)| a.sub(b)).collect();
            assert_eq!(vel, expect);
        }
        // the family stays generalized complex for small t
        let g0 = gc_from_dirac(&base_frame(&m), &points(&m, 3), None).unwrap();
        assert!(gc_deform(&g0, &beta.map(|p| p.scale(&Scalar::from_frac(1, 10)))).is_ok());
    }
}
