//! The twistor family of flat `ℝ⁴`: `Ω(t) = Ω_1 + 2itω_1 + t²Ω̄_1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::forms::{delbar, euler_homotopy, form_matrix, MixedForm};
use crate::hyperkahler::FlatHyperKahler;
use crate::linalg;
use crate::model::Point;
use crate::poisson::{extract_holo_poisson, HoloPoisson};
use crate::scalar::Scalar;

use super::solver::{certify, solve_hitchin, SolveMode};

#[derive(Clone, Debug, Serialize)]
pub struct InverseCheck {
    pub t: String,
    /// `σ_t(i_X Ω(t)) = X` for `X ∈ T_{1,0}(I_t)`, read off `e^{β(t)}L_{σ_1}`.
    pub inverse: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistorReport {
    pub order: u32,
    pub quaternion_relations: bool,
    /// `σ_1 = ¼(ω_2^{-1} − iω_3^{-1}) = −∂_1∧∂_2`.
    pub sigma1: String,
    /// `r_2 = −Ω̄_1`.
    pub r2_matches: bool,
    /// `β_2 = Ω̄_1`.
    pub beta2_matches: bool,
    /// `β_k = 0` for `k ≥ 3`.
    pub terminates: bool,
    /// `Ω_1 + β(t)` is the twistor family.
    pub family_matches: bool,
    /// `∂̄ h(−r_2) = −r_2`.
    pub homotopy_closes: bool,
    /// Per-order certificate of the solve.
    pub certified: bool,
    pub inverse_checks: Vec<InverseCheck>,
    pub beta: String,
}

impl TwistorReport {
    pub fn passed(&self) -> bool {
        self.quaternion_relations
            && self.r2_matches
            && self.beta2_matches
            && self.terminates
            && self.family_matches
            && self.homotopy_closes
            && self.certified
            && !self.inverse_checks.is_empty()
            && self.inverse_checks.iter().all(|c| c.inverse)
    }
}

/// Sample parameters for the inverse-family check.
fn sample_ts() -> Vec<Scalar> {
    vec![
        Scalar::from_frac(1, 3),
        Scalar::gauss((1, 2), (1, 3)),
        Scalar::from_frac(-2, 5),
        Scalar::gauss((0, 1), (3, 4)),
        Scalar::from_int(2),
    ]
}

pub fn twistor_demo(order: u32) -> Result<TwistorReport> {
    if order < 2 {
        return Err(Error::Precondition("the twistor check needs order at least 2".into()));
    }
    let hk = FlatHyperKahler::new();
    let m = hk.model;
    let sigma = hk.sigma1()?;
    let w1 = hk.omega[0].scale(&Scalar::gauss((0, 1), (2, 1)));
    let s = solve_hitchin(&m, &sigma, &w1, order, SolveMode::Complex)?;
    let omega_bar = hk.big_omega_bar();
    let r2 = s.remainders[0].clone();
    let h = euler_homotopy(&m, &r2.neg())?;
    let homotopy_closes = delbar(&m, &h) == r2.neg();
    let terminates = s.betas[2..].iter().all(MixedForm::is_zero);
    let beta = s.beta();
    let family_matches = hk.big_omega.add(&beta) == hk.twistor_family();
    let certified = certify(&s, &sigma)?.passed();
    let hp = HoloPoisson::new(m, sigma.clone());
    let l = hp.frame().gauge(&beta)?;
    let origin = Point { coords: vec![Scalar::zero(); m.coords()] };
    let mut inverse_checks = Vec::new();
    for t in sample_ts() {
        let lt = l.at_t(&t);
        let a = lt.eval(&origin, None)?;
        let b = lt.conjugate().eval(&origin, None)?;
        let ph = match extract_holo_poisson(&a, &b) {
            Ok(ph) => ph,
            Err(Error::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        };
        let w: Vec<Vec<Scalar>> = form_matrix(&hk.twistor_family())
            .iter()
            .map(|r| r.iter().map(|c| c.substitute(&origin.subst(Some(&t))).constant_term()).collect())
            .collect();
        let zero = Scalar::zero();
        // T_{1,0}(I_t) is the conjugate of T_{0,1}(I_t)
        let inverse = ph.t01.iter().all(|x| {
            let n = m.n();
            let xb: Vec<Scalar> = (0..2 * n).map(|a| x[(a + n) % (2 * n)].conj()).collect();
            let xi = linalg::mat_mul(&vec![xb.clone()], &w, &zero);
            let back = linalg::mat_mul(&xi, &ph.sigma, &zero).remove(0);
            back == xb
        });
        inverse_checks.push(InverseCheck { t: t.to_string(), inverse });
    }
    Ok(TwistorReport {
        order,
        quaternion_relations: hk.quaternion_relations()?,
        sigma1: sigma.render(&m, &m.dir_names()),
        r2_matches: r2 == omega_bar.neg(),
        beta2_matches: s.betas[1] == omega_bar,
        terminates,
        family_matches,
        homotopy_closes,
        certified,
        inverse_checks,
        beta: beta.render(&m, &m.dir_names()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two_and_eight() {
        for n in [2, 8] {
            let r = twistor_demo(n).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.inverse_checks.len(), 5);
        }
    }
}
