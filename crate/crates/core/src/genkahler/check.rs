//! The pointwise checker for generalized Kähler pairs `(L_1, L_2)`.

use num_traits::Signed;
use serde::Serialize;

use crate::dirac::{DiracFrame, PointDirac};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::model::Point;
use crate::poisson::{extract_holo_poisson, imag_q_matrix};
use crate::scalar::Scalar;

use super::{anchors_transversal, conj_point, conj_stacked, half_i_difference, PointField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GKVerdict {
    /// Conditions i–iv.
    Gk,
    /// Only the holomorphic Poisson condition iii.
    DegenerateGk,
    None,
}

#[derive(Clone, Debug, Serialize)]
pub struct GKPointReport {
    pub point: String,
    /// `π(L_k) + π(L̄_k) = T_ℂ`.
    pub transversal: [bool; 2],
    /// `(1/2i)(L_k − L̄_k)` meets `T` trivially.
    pub generalized_complex: [bool; 2],
    /// `L_{σ_+}` and `L_{σ_−}` split `T_ℂ`.
    pub holomorphic_poisson: [bool; 2],
    pub sigma_plus: Option<Vec<Vec<String>>>,
    pub sigma_minus: Option<Vec<Vec<String>>>,
    pub imaginary_parts_agree: Option<bool>,
    pub ell_plus_rank: usize,
    /// Leading principal minors of `⟨u_i, ū_j⟩` on `ℓ_+ = L_1 ∩ L_2`.
    pub gram_minors: Vec<String>,
    pub positive: bool,
    /// `ℓ_± ⊕ ℓ̄_±` is the whole fiber (only when i–iii hold).
    pub spans_fiber: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GKReport {
    pub t: Option<String>,
    pub points: Vec<GKPointReport>,
    pub condition_i: bool,
    pub condition_ii: bool,
    pub condition_iii: bool,
    pub condition_iv: bool,
    pub imaginary_parts_agree: bool,
    /// ii and iii imply i, at every point.
    pub implication_holds: bool,
    pub spans_fiber: bool,
    pub verdict: GKVerdict,
    /// Positivity is certified at the listed points only.
    pub positivity_scope: String,
}

impl GKReport {
    pub fn conditions(&self) -> [bool; 4] {
        [self.condition_i, self.condition_ii, self.condition_iii, self.condition_iv]
    }
}

#[derive(Clone, Debug)]
pub struct GKPair {
    pub l1: DiracFrame,
    pub l2: DiracFrame,
    pub points: Vec<Point>,
    pub t: Option<Scalar>,
    /// `σ_±` at each point, when extracted.
    pub sigma_plus: Vec<Option<Mat<Scalar>>>,
    pub sigma_minus: Vec<Option<Mat<Scalar>>>,
    pub report: GKReport,
}

fn render_mat(m: &Mat<Scalar>) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect()
}

fn sigma_of<C: PointField>(model: &crate::model::Model, l: &PointDirac<C>) -> Result<Option<Mat<C>>> {
    let lb = conj_point(model, l)?;
    match extract_holo_poisson(l, &lb) {
        Ok(h) => Ok(Some(h.sigma)),
        Err(Error::Degenerate(_)) | Err(Error::Inconsistent(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `L_{σ_+} = (1/2i)(L_1 − L_2)` and `L_{σ_−} = (1/2i)(L_1 − L̄_2)` at a point.
pub(crate) fn sigma_structures<C: PointField>(
    model: &crate::model::Model,
    a1: &PointDirac<C>,
    a2: &PointDirac<C>,
) -> Result<(PointDirac<C>, PointDirac<C>)> {
    let b2 = conj_point(model, a2)?;
    Ok((half_i_difference(a1, a2)?, half_i_difference(a1, &b2)?))
}

/// Holomorphic Poisson extraction of both `σ_±` at a point.
pub(crate) fn sigmas_at<C: PointField>(
    model: &crate::model::Model,
    a1: &PointDirac<C>,
    a2: &PointDirac<C>,
) -> Result<(Option<Mat<C>>, Option<Mat<C>>)> {
    let (lp, lm) = sigma_structures(model, a1, a2)?;
    Ok((sigma_of(model, &lp)?, sigma_of(model, &lm)?))
}

/// Gram matrix `⟨u_i, ū_j⟩` of a list of vectors.
pub(crate) fn gram(model: &crate::model::Model, us: &[Vec<Scalar>]) -> Mat<Scalar> {
    let d = us.first().map_or(0, |u| u.len() / 2);
    let half = Scalar::from_frac(1, 2);
    us.iter()
        .map(|u| {
            us.iter()
                .map(|v| {
                    let vb = conj_stacked(model, v);
                    let mut acc = Scalar::zero();
                    for a in 0..d {
                        acc = &acc + &(&(&u[d + a] * &vb[a]) + &(&vb[d + a] * &u[a]));
                    }
                    &acc * &half
                })
                .collect()
        })
        .collect()
}

/// Sylvester's criterion in exact arithmetic.
pub(crate) fn positive_definite(g: &Mat<Scalar>) -> (bool, Vec<String>) {
    let minors = linalg::leading_minors(g, &Scalar::zero());
    let ok = !g.is_empty() && minors.iter().all(|m| m.is_real() && m.re.is_positive());
    (ok, minors.iter().map(|m| m.to_string()).collect())
}

fn check_point(l1: &DiracFrame, l2: &DiracFrame, p: &Point, t: Option<&Scalar>) -> Result<(GKPointReport, Option<Mat<Scalar>>, Option<Mat<Scalar>>)> {
    let model = l1.model;
    let a1 = l1.eval(p, t)?;
    let a2 = l2.eval(p, t)?;
    let b1 = conj_point(&model, &a1)?;
    let b2 = conj_point(&model, &a2)?;
    let transversal = [anchors_transversal(&a1, &b1)?, anchors_transversal(&a2, &b2)?];
    let gc = |a: &PointDirac<Scalar>, b: &PointDirac<Scalar>| -> Result<bool> {
        let g = half_i_difference(a, b)?;
        Ok(g.rank() == a.dim && g.intersect_tangent()?.rank() == 0)
    };
    let generalized_complex = [gc(&a1, &b1)?, gc(&a2, &b2)?];
    let (sp, sm) = sigmas_at(&model, &a1, &a2)?;
    let imaginary_parts_agree = match (&sp, &sm) {
        (Some(x), Some(y)) => Some(imag_q_matrix(&model, x) == imag_q_matrix(&model, y)),
        _ => None,
    };
    let ell = a1.intersect(&a2)?;
    let (positive, gram_minors) = if ell.rank() * 2 == a1.dim {
        positive_definite(&gram(&model, &ell.basis))
    } else {
        (false, Vec::new())
    };
    let first_three = transversal.iter().all(|&b| b) && generalized_complex.iter().all(|&b| b) && sp.is_some() && sm.is_some();
    let spans_fiber = if first_three {
        let ellm = a1.intersect(&b2)?;
        let mut all = ell.basis.clone();
        all.extend(ellm.basis.iter().cloned());
        all.extend(ell.basis.iter().map(|u| conj_stacked(&model, u)));
        all.extend(ellm.basis.iter().map(|u| conj_stacked(&model, u)));
        Some(linalg::span_rank(&all)? == 2 * a1.dim)
    } else {
        None
    };
    let r = GKPointReport {
        point: p.render(),
        transversal,
        generalized_complex,
        holomorphic_poisson: [sp.is_some(), sm.is_some()],
        sigma_plus: sp.as_ref().map(render_mat),
        sigma_minus: sm.as_ref().map(render_mat),
        imaginary_parts_agree,
        ell_plus_rank: ell.rank(),
        gram_minors,
        positive,
        spans_fiber,
    };
    Ok((r, sp, sm))
}

/// Conditions i–iv at each sample point. Frames depending on `t` are
/// evaluated at the real value `t`; points must be physical.
pub fn gk_check(l1: &DiracFrame, l2: &DiracFrame, points: &[Point], t: Option<&Scalar>) -> Result<GKPair> {
    if l1.dim != l2.dim || l1.model != l2.model {
        return Err(Error::Dimension("the two Dirac structures live on different spaces".into()));
    }
    if points.is_empty() {
        return Err(Error::Precondition("the checker needs at least one sample point".into()));
    }
    if t.is_some_and(|t| !t.is_real()) {
        return Err(Error::Precondition("t must be real".into()));
    }
    let mut reports = Vec::new();
    let mut sigma_plus = Vec::new();
    let mut sigma_minus = Vec::new();
    for p in points {
        let (r, sp, sm) = check_point(l1, l2, p, t)?;
        reports.push(r);
        sigma_plus.push(sp);
        sigma_minus.push(sm);
    }
    let all = |f: &dyn Fn(&GKPointReport) -> bool| reports.iter().all(f);
    let condition_i = all(&|r| r.transversal.iter().all(|&b| b));
    let condition_ii = all(&|r| r.generalized_complex.iter().all(|&b| b));
    let condition_iii = all(&|r| r.holomorphic_poisson.iter().all(|&b| b));
    let condition_iv = all(&|r| r.positive);
    let implication_holds = all(&|r| {
        let ii = r.generalized_complex.iter().all(|&b| b);
        let iii = r.holomorphic_poisson.iter().all(|&b| b);
        !(ii && iii) || r.transversal.iter().all(|&b| b)
    });
    let verdict = if condition_i && condition_ii && condition_iii && condition_iv {
        GKVerdict::Gk
    } else if condition_iii {
        GKVerdict::DegenerateGk
    } else {
        GKVerdict::None
    };
    let report = GKReport {
        t: t.map(|t| t.to_string()),
        imaginary_parts_agree: all(&|r| r.imaginary_parts_agree != Some(false)),
        spans_fiber: all(&|r| r.spans_fiber != Some(false)),
        positivity_scope: format!("checked at {} sample points", points.len()),
        points: reports,
        condition_i,
        condition_ii,
        condition_iii,
        condition_iv,
        implication_holds,
        verdict,
    };
    Ok(GKPair { l1: l1.clone(), l2: l2.clone(), points: points.to_vec(), t: t.cloned(), sigma_plus, sigma_minus, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::forms::{bivector_matrix, MixedForm, Multivector};
    use crate::genkahler::eval_matrix;
    use crate::model::Model;
    use crate::poisson::{base_frame, HoloPoisson};
    use crate::poly::Poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn kahler_form(m: &Model, signs: [i64; 2]) -> MixedForm {
        let c = |s: i64| Poly::constant(Scalar::gauss((0, 1), (s, 2)));
        MixedForm::monomial(m.coords(), &[0, 2], c(signs[0])).add(&MixedForm::monomial(m.coords(), &[1, 3], c(signs[1])))
    }

    fn points(m: &Model) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        (0..5).map(|_| m.random_point(&mut rng)).collect()
    }

    #[test]
    fn kahler_pair_passes() {
        let m = Model::complex(2);
        let l2 = DiracFrame::graph_form(m, &kahler_form(&m, [1, 1]).scale(&Scalar::i()), None);
        let pair = gk_check(&base_frame(&m), &l2, &points(&m), None).unwrap();
        let r = &pair.report;
        assert_eq!(r.conditions(), [true; 4], "{r:?}");
        assert_eq!(r.verdict, GKVerdict::Gk);
        assert!(r.implication_holds && r.spans_fiber && r.imaginary_parts_agree);
        let zero = vec![vec![Scalar::zero(); 4]; 4];
        assert!(pair.sigma_plus.iter().chain(&pair.sigma_minus).all(|s| s.as_ref() == Some(&zero)));
    }

    #[test]
    fn indefinite_pair_fails_positivity_only() {
        let m = Model::complex(2);
        let l2 = DiracFrame::graph_form(m, &kahler_form(&m, [1, -1]).scale(&Scalar::i()), None);
        let r = gk_check(&base_frame(&m), &l2, &points(&m), None).unwrap().report;
        assert_eq!(r.conditions(), [true, true, true, false]);
        assert_eq!(r.verdict, GKVerdict::DegenerateGk);
    }

    #[test]
    fn holomorphic_poisson_pair_is_degenerate() {
        let m = Model::complex(2);
        let tv = m.t_var();
        let sigma = Multivector::monomial(4, &[0, 1], Poly::var(0));
        let tsigma = sigma.mul_poly(&Poly::var(tv));
        // 2i·L_{tσ} = L_{tσ/2i}
        let l1 = HoloPoisson::new(m, tsigma.scale(&Scalar::gauss((0, 1), (-1, 2)))).frame();
        let l2 = DiracFrame::tangent(m, 4);
        let pts = points(&m);
        for t in [Scalar::from_frac(1, 3), Scalar::from_int(-2)] {
            let pair = gk_check(&l1, &l2, &pts, Some(&t)).unwrap();
            assert_eq!(pair.report.verdict, GKVerdict::DegenerateGk);
            assert!(!pair.report.condition_ii && !pair.report.condition_iv);
            for (k, p) in pts.iter().enumerate() {
                let expected = eval_matrix(&bivector_matrix(&tsigma), p, Some(&t));
                assert_eq!(pair.sigma_plus[k].as_ref(), Some(&expected));
                assert_eq!(pair.sigma_minus[k].as_ref(), Some(&expected));
            }
        }
    }
}
