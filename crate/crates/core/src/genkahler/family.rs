//! Lifting holomorphic Poisson deformations to generalized Kähler pairs, and
//! one-parameter families `(e^{iF_t}L_1, e^{−iF_t}L_2)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dirac::{DiracFrame, PointDirac};
use crate::error::{Error, Result};
use crate::exterior::alt::Trunc;
use crate::exterior::forms::{d, MixedForm, Multivector};
use crate::hitchin::{certify, DeformSeries, SolveMode};
use crate::linalg;
use crate::model::{Model, Point};
use crate::poisson::{base_frame, imag_form, real_part, HoloPoisson};
use crate::poly::Poly;
use crate::ring::TSeries;
use crate::scalar::Scalar;

use super::check::{gk_check, gram, positive_definite, sigmas_at, GKPair, GKReport};
use super::roots::{gcd, nearest_roots, RatPoly};
use super::{anchors_transversal, conj_point, half_i_difference, half_i_difference_frame};

#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    /// `(1/2i)(L'_1 − L'_2) = e^{β_+}L_{σ_+}`.
    pub plus_identity: bool,
    /// `(1/2i)(L'_1 − L̄'_2) = e^{β_−}L_{σ_−}`.
    pub minus_identity: bool,
    pub beta1: String,
    pub beta2: String,
    pub check: GKReport,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        self.plus_identity && self.minus_identity
    }
}

fn splits_at(frame: &DiracFrame, points: &[Point], t: Option<&Scalar>) -> Result<bool> {
    for p in points {
        let l = frame.eval(p, t)?;
        let lb = conj_point(&frame.model, &l)?;
        if crate::poisson::extract_holo_poisson(&l, &lb).is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lift of `(e^{β_+}L_{σ_+}, e^{β_−}L_{σ_−})` to `(e^{β_1}L_1, e^{β_2}L_2)` with
/// `β_1 = −B + i(F_− + F_+)`, `β_2 = B + i(F_− − F_+)`, `β_± = F_± + iB`.
pub fn gk_lift(beta_plus: &MixedForm, beta_minus: &MixedForm, pair: &GKPair, rng: &mut ChaCha8Rng) -> Result<(GKPair, LiftReport)> {
    let model = pair.l1.model;
    for b in [beta_plus, beta_minus] {
        let db = d(b);
        if !db.is_zero() {
            return Err(Error::NotClosed(db.render(&model, &model.dir_names())));
        }
    }
    let b = imag_form(&model, beta_plus);
    if b != imag_form(&model, beta_minus) {
        return Err(Error::Precondition("β_+ and β_− have different imaginary parts".into()));
    }
    let fp = real_part(&model, beta_plus);
    let fm = real_part(&model, beta_minus);
    let i = Scalar::i();
    let beta1 = b.neg().add(&fm.add(&fp).scale(&i));
    let beta2 = b.add(&fm.sub(&fp).scale(&i));
    let t = pair.t.as_ref();
    let lsp = half_i_difference_frame(&pair.l1, &pair.l2, rng)?;
    let lsm = half_i_difference_frame(&pair.l1, &pair.l2.conjugate(), rng)?;
    let target_p = lsp.gauge(beta_plus)?;
    let target_m = lsm.gauge(beta_minus)?;
    if !splits_at(&target_p, &pair.points, t)? || !splits_at(&target_m, &pair.points, t)? {
        return Err(Error::Precondition("e^{β_±}L_{σ_±} is not holomorphic Poisson at the sample points".into()));
    }
    let l1 = pair.l1.gauge(&beta1)?;
    let l2 = pair.l2.gauge(&beta2)?;
    let plus_identity = half_i_difference_frame(&l1, &l2, rng)?.compare(&target_p, rng)?.equal;
    let minus_identity = half_i_difference_frame(&l1, &l2.conjugate(), rng)?.compare(&target_m, rng)?.equal;
    let lifted = gk_check(&l1, &l2, &pair.points, t)?;
    let names = model.dir_names();
    let report = LiftReport {
        plus_identity,
        minus_identity,
        beta1: beta1.render(&model, &names),
        beta2: beta2.render(&model, &names),
        check: lifted.report.clone(),
    };
    Ok((lifted, report))
}

/// Conditions at one value of `t`.
#[derive(Clone, Debug, Serialize)]
pub struct TCheck {
    pub t: String,
    pub condition_i: bool,
    pub condition_ii: bool,
    /// Positivity of the Gram matrix of the jet of `ℓ_+`, evaluated at `t`.
    pub condition_iv: bool,
    pub gram_minors: Vec<Vec<String>>,
}

impl TCheck {
    pub fn passed(&self) -> bool {
        self.condition_i && self.condition_ii && self.condition_iv
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    /// Frames are series in `t` modulo `t^{order+1}`.
    pub order: u32,
    /// `e^{F_t}L_{σ_+}` splits `T_ℂ` modulo `t^{poisson_order+1}` at every point.
    pub poisson_order: u32,
    pub sigma_minus_unchanged: bool,
    pub sigma_plus_gauged: bool,
    /// Condition iii as series identities.
    pub sigma_plus_poisson: bool,
    pub sigma_minus_poisson: bool,
    /// No root of `det(L'_k ⊕ L̄'_k)` in `(−negative_bound, positive_bound)` at
    /// any sample point; `None` when there is no root on that side.
    pub positive_bound: Option<String>,
    pub negative_bound: Option<String>,
    pub t_checks: Vec<TCheck>,
    /// At `t = 0` the family is the given Kähler pair.
    pub initial_pair_matches: Option<bool>,
    /// Per-order certificate of the series behind `F`.
    pub residuals_vanish: Option<bool>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.sigma_minus_unchanged
            && self.sigma_plus_gauged
            && self.sigma_plus_poisson
            && self.sigma_minus_poisson
            && self.t_checks.len() >= 3
            && self.t_checks.iter().all(TCheck::passed)
            && self.initial_pair_matches != Some(false)
            && self.residuals_vanish != Some(false)
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `det` of the `L ⊕ L̄` generator matrix at `p`, as a polynomial in `t`.
fn splitting_det(l: &DiracFrame, p: &Point) -> Result<(RatPoly, RatPoly)> {
    if l.gens.len() != l.dim {
        return Err(Error::Precondition("determinant bounds need exactly one generator per rank".into()));
    }
    let vals = p.subst(None);
    let rows: Vec<Vec<Poly>> = l
        .gens
        .iter()
        .chain(l.conjugate().gens.iter())
        .map(|g| g.vec.iter().chain(&g.form).map(|c| c.substitute(&vals)).collect())
        .collect();
    let det = linalg::det(&rows, &Poly::zero());
    let tv = l.model.t_var();
    let deg = det.max_exp(tv) as usize;
    let mut re = vec![BigRational::zero(); deg + 1];
    let mut im = vec![BigRational::zero(); deg + 1];
    for (m, c) in det.terms() {
        let k = m.exp(tv) as usize;
        re[k] += &c.re;
        im[k] += &c.im;
    }
    Ok((RatPoly::new(re), RatPoly::new(im)))
}

struct Bounds {
    pos: Option<BigRational>,
    neg: Option<BigRational>,
}

impl Bounds {
    fn contains(&self, t: &BigRational) -> bool {
        if t.is_positive() {
            self.pos.as_ref().is_none_or(|b| t < b)
        } else {
            self.neg.as_ref().is_none_or(|b| &-t < b)
        }
    }
}

fn interval(frames: &[&DiracFrame], points: &[Point]) -> Result<Bounds> {
    let mut bounds = Bounds { pos: None, neg: None };
    let tighten = |slot: &mut Option<BigRational>, v: BigRational| {
        if slot.as_ref().is_none_or(|s| v < *s) {
            *slot = Some(v);
        }
    };
    for l in frames {
        for p in points {
            let (re, im) = splitting_det(l, p)?;
            let g = if im.is_zero() { re.clone() } else { gcd(&re, &im) };
            let at0 = g.eval(&BigRational::zero());
            if g.is_zero() || at0.is_zero() {
                return Err(Error::Degenerate(format!("L ∩ L̄ ≠ 0 at t = 0 at {}", p.render())));
            }
            let nr = nearest_roots(&g, 40);
            if let Some(b) = nr.positive {
                tighten(&mut bounds.pos, b.lo);
            }
            if let Some(b) = nr.negative {
                tighten(&mut bounds.neg, b.lo);
            }
        }
    }
    Ok(bounds)
}

/// Sample values `±1/4, ±1/8, …` inside the bounds, at most three.
fn sample_ts(b: &Bounds) -> Vec<BigRational> {
    let mut out = Vec::new();
    for k in 2..40 {
        for s in [1, -1] {
            let t = rat(s, 1i64 << k);
            if out.len() < 3 && b.contains(&t) && !t.is_zero() {
                out.push(t);
            }
        }
    }
    out
}

fn jet_gram_positive(
    l1: &DiracFrame,
    l2: &DiracFrame,
    p: &Point,
    order: u32,
    t: &Scalar,
) -> Result<(bool, Vec<String>)> {
    let a1 = l1.eval_series(p, order)?;
    let a2 = l2.eval_series(p, order)?;
    let ell: PointDirac<TSeries> = a1.intersect(&a2)?;
    if ell.rank() * 2 != a1.dim {
        return Ok((false, Vec::new()));
    }
    let us: Vec<Vec<Scalar>> = ell.basis.iter().map(|u| u.iter().map(|c| c.eval(t)).collect()).collect();
    Ok(positive_definite(&gram(&l1.model, &us)))
}

fn series_splits(frames: (&DiracFrame, &DiracFrame), points: &[Point], order: u32) -> Result<(bool, bool)> {
    let model = frames.0.model;
    let tr = Some(Trunc::new(&model, order));
    let (l1, l2) = (frames.0.with_trunc(tr), frames.1.with_trunc(tr));
    let mut ok = (true, true);
    for p in points {
        let (sp, sm) = sigmas_at(&model, &l1.eval_series(p, order)?, &l2.eval_series(p, order)?)?;
        ok.0 &= sp.is_some();
        ok.1 &= sm.is_some();
    }
    Ok(ok)
}

struct Engine<'a> {
    l1: &'a DiracFrame,
    l2: &'a DiracFrame,
    /// Real closed 2-form, polynomial in `t`.
    f: &'a MixedForm,
    order: u32,
    poisson_order: u32,
    points: &'a [Point],
}

impl Engine<'_> {
    fn run(&self, rng: &mut ChaCha8Rng) -> Result<(DiracFrame, DiracFrame, FamilyReport)> {
        let model = self.l1.model;
        if !self.f.is_real(&model) {
            return Err(Error::Precondition("F_t must be real".into()));
        }
        let tr = Some(Trunc::new(&model, self.order));
        let (l1, l2) = (self.l1.with_trunc(tr), self.l2.with_trunc(tr));
        let i = Scalar::i();
        let l1p = l1.gauge(&self.f.scale(&i))?;
        let l2p = l2.gauge(&self.f.scale(&-&i))?;
        let lsp = half_i_difference_frame(&l1, &l2, rng)?;
        let lsm = half_i_difference_frame(&l1, &l2.conjugate(), rng)?;
        let sigma_plus_gauged = half_i_difference_frame(&l1p, &l2p, rng)?.compare(&lsp.gauge(self.f)?, rng)?.equal;
        let sigma_minus_unchanged = half_i_difference_frame(&l1p, &l2p.conjugate(), rng)?.compare(&lsm, rng)?.equal;
        let (sigma_plus_poisson, sigma_minus_poisson) = series_splits((&l1p, &l2p), self.points, self.poisson_order)?;
        let bounds = interval(&[&l1p, &l2p], self.points)?;
        let exact1 = l1p.with_trunc(None);
        let exact2 = l2p.with_trunc(None);
        let mut t_checks = Vec::new();
        for tq in sample_ts(&bounds) {
            let t = Scalar::from_rational(tq);
            let (mut ci, mut cii, mut civ) = (true, true, true);
            let mut minors = Vec::new();
            for p in self.points {
                let a1 = exact1.eval(p, Some(&t))?;
                let a2 = exact2.eval(p, Some(&t))?;
                for a in [&a1, &a2] {
                    let b = conj_point(&model, a)?;
                    ci &= anchors_transversal(a, &b)?;
                    let g = half_i_difference(a, &b)?;
                    cii &= g.rank() == a.dim && g.intersect_tangent()?.rank() == 0;
                }
                let (pos, m) = jet_gram_positive(&l1p, &l2p, p, self.poisson_order, &t)?;
                civ &= pos;
                minors.push(m);
            }
            t_checks.push(TCheck { t: t.to_string(), condition_i: ci, condition_ii: cii, condition_iv: civ, gram_minors: minors });
        }
        // rounded down to six decimals, which keeps them lower bounds
        let scale = BigRational::from_integer(BigInt::from(1_000_000));
        let show = |b: &Option<BigRational>| b.as_ref().map(|v| ((v * &scale).floor() / &scale).to_string());
        let report = FamilyReport {
            order: self.order,
            poisson_order: self.poisson_order,
            sigma_minus_unchanged,
            sigma_plus_gauged,
            sigma_plus_poisson,
            sigma_minus_poisson,
            positive_bound: show(&bounds.pos),
            negative_bound: show(&bounds.neg),
            t_checks,
            initial_pair_matches: None,
            residuals_vanish: None,
        };
        Ok((l1p, l2p, report))
    }
}

/// `(e^{iF_t}L_1, e^{−iF_t}L_2)` for a real family `F_t` with `F_0 = 0`,
/// polynomial in `t` and truncated at `order`.
pub fn gk_deform_family(pair: &GKPair, f: &MixedForm, order: u32, rng: &mut ChaCha8Rng) -> Result<(DiracFrame, DiracFrame, FamilyReport)> {
    let model = pair.l1.model;
    let tv = model.t_var();
    if !f.t_coeff(tv, 0).is_zero() {
        return Err(Error::Precondition("F_0 must vanish".into()));
    }
    Engine { l1: &pair.l1, l2: &pair.l2, f, order, poisson_order: order, points: &pair.points }.run(rng)
}

/// Random points scaled by `1/4`, keeping the admissible `t` interval away
/// from zero.
pub fn small_points(m: &Model, rng: &mut ChaCha8Rng, k: usize) -> Vec<Point> {
    let q = Scalar::from_frac(1, 4);
    (0..k).map(|_| Point { coords: m.random_point(rng).coords.iter().map(|c| c * &q).collect() }).collect()
}

/// The Kähler pair `(T_{0,1} ⊕ T*_{1,0}, Γ_{iω})` deformed along a holomorphic
/// Poisson structure `σ`.
///
/// `series` solves the real problem with `β_1 = ω`; with `F = t^{-1}β(t)` the
/// family is `(e^{−iF}L_{−tσ/2i}, Γ_{iF})`. At `t = 0` this is the Kähler pair,
/// `σ_− = −tσ` is fixed and `σ_+` moves to `e^{−F}L_{−tσ}`.
pub fn kahler_sigma_family(
    omega: &MixedForm,
    sigma: &Multivector,
    series: &DeformSeries,
    points: &[Point],
    rng: &mut ChaCha8Rng,
) -> Result<(DiracFrame, DiracFrame, FamilyReport)> {
    let model: Model = series.model;
    if series.mode != SolveMode::Real {
        return Err(Error::Precondition("the Kähler family needs a real series".into()));
    }
    if series.beta_k(1) != *omega {
        return Err(Error::Precondition("the series does not start at the Kähler form".into()));
    }
    if series.order < 2 {
        return Err(Error::Precondition("the Kähler family needs order at least 2".into()));
    }
    let tv = model.t_var();
    let dim = model.coords();
    let f = series
        .betas
        .iter()
        .enumerate()
        .fold(MixedForm::zero(dim), |acc, (k, b)| acc.add(&b.shift_t(tv, k as u32)))
        .neg();
    let tsigma = sigma.mul_poly(&Poly::var(tv));
    let l1 = HoloPoisson::new(model, tsigma.scale(&Scalar::gauss((0, 1), (1, 2)))).frame();
    let l2 = DiracFrame::tangent(model, dim);
    let engine = Engine { l1: &l1, l2: &l2, f: &f, order: series.order, poisson_order: series.order - 1, points };
    let (l1p, l2p, mut report) = engine.run(rng)?;
    let zero = Scalar::zero();
    let kahler2 = DiracFrame::graph_form(model, &omega.scale(&Scalar::i()), None);
    let m1 = l1p.with_trunc(None).at_t(&zero).compare(&base_frame(&model), rng)?.equal;
    let m2 = l2p.with_trunc(None).at_t(&zero).compare(&kahler2, rng)?.equal;
    report.initial_pair_matches = Some(m1 && m2);
    report.residuals_vanish = Some(certify(series, sigma)?.passed());
    Ok((l1p, l2p, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hitchin::solve_hitchin;
    use rand::SeedableRng;

    fn kahler_form(m: &Model) -> MixedForm {
        let c = Poly::constant(Scalar::gauss((0, 1), (1, 2)));
        MixedForm::monomial(m.coords(), &[0, 2], c.clone()).add(&MixedForm::monomial(m.coords(), &[1, 3], c))
    }

    fn kahler_pair(rng: &mut ChaCha8Rng) -> GKPair {
        let m = Model::complex(2);
        let l2 = DiracFrame::graph_form(m, &kahler_form(&m).scale(&Scalar::i()), None);
        let pts = small_points(&m, rng, 5);
        gk_check(&base_frame(&m), &l2, &pts, None).unwrap()
    }

    #[test]
    fn trivial_lift_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pair = kahler_pair(&mut rng);
        let z = MixedForm::zero(4);
        let (lifted, r) = gk_lift(&z, &z, &pair, &mut rng).unwrap();
        assert!(r.passed());
        assert!(lifted.l1.compare(&pair.l1, &mut rng).unwrap().equal);
        assert!(lifted.l2.compare(&pair.l2, &mut rng).unwrap().equal);
        assert_eq!(r.check.conditions(), [true; 4]);
    }

    #[test]
    fn lift_with_f_plus_only() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let pair = kahler_pair(&mut rng);
        let m = pair.l1.model;
        // a small real constant (1,1)-form
        let c = Poly::constant(Scalar::gauss((0, 1), (1, 10)));
        let f = MixedForm::monomial(4, &[0, 3], c.clone()).add(&MixedForm::monomial(4, &[1, 2], c.clone()))
            .add(&MixedForm::monomial(4, &[0, 2], c));
        assert!(f.is_real(&m));
        let (_, r) = gk_lift(&f, &MixedForm::zero(4), &pair, &mut rng).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.check.conditions(), [true; 4]);
    }

    #[test]
    fn lift_reproduces_the_sigma_family() {
        // B = 0, F_+ = 0, F_− = F on the degenerate pair (L_{tσ/2i}, T_ℂ)
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = Model::complex(2);
        let tv = m.t_var();
        let sigma = Multivector::monomial(4, &[0, 1], Poly::var(0)).mul_poly(&Poly::var(tv));
        let l1 = HoloPoisson::new(m, sigma.scale(&Scalar::gauss((0, 1), (-1, 2)))).frame();
        let l2 = DiracFrame::tangent(m, 4);
        let pts = small_points(&m, &mut rng, 3);
        let t = Scalar::from_frac(1, 5);
        let pair = gk_check(&l1, &l2, &pts, Some(&t)).unwrap();
        // degenerate enough that e^F L_{tσ} stays holomorphic Poisson
        let f = MixedForm::monomial(4, &[0, 2], Poly::constant(Scalar::gauss((0, 1), (1, 2))));
        let (lifted, r) = gk_lift(&MixedForm::zero(4), &f, &pair, &mut rng).unwrap();
        assert!(r.passed());
        assert!(lifted.l1.compare(&l1.gauge(&f.scale(&Scalar::i())).unwrap(), &mut rng).unwrap().equal);
        let gamma = DiracFrame::graph_form(m, &f.scale(&Scalar::i()), None);
        assert!(lifted.l2.compare(&gamma, &mut rng).unwrap().equal);
    }

    #[test]
    fn lift_rejects_mismatched_imaginary_parts() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let pair = kahler_pair(&mut rng);
        let b = MixedForm::monomial(4, &[0, 1], Poly::constant(Scalar::i()));
        assert!(matches!(gk_lift(&b, &MixedForm::zero(4), &pair, &mut rng), Err(Error::Precondition(_))));
    }

    #[test]
    fn zero_family_keeps_the_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pair = kahler_pair(&mut rng);
        let (_, _, r) = gk_deform_family(&pair, &MixedForm::zero(4), 3, &mut rng).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!((r.positive_bound.as_deref(), r.negative_bound.as_deref()), (None, None));
    }

    #[test]
    fn nonzero_start_is_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let pair = kahler_pair(&mut rng);
        let f = kahler_form(&pair.l1.model);
        assert!(matches!(gk_deform_family(&pair, &f, 2, &mut rng), Err(Error::Precondition(_))));
    }

    #[test]
    fn kahler_with_sigma_order_four() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = Model::complex(2);
        let w = kahler_form(&m);
        let sigma = Multivector::monomial(4, &[0, 1], Poly::var(0));
        let s = solve_hitchin(&m, &sigma, &w, 4, SolveMode::Real).unwrap();
        let pts = small_points(&m, &mut rng, 5);
        let (_, _, r) = kahler_sigma_family(&w, &sigma, &s, &pts, &mut rng).unwrap();
        assert!(r.passed(), "{r:#?}");
    }
}
