//! Random Maurer–Cartan instances on `ℂ²`: a closed series `β`, a holomorphic
//! Poisson `σ`, and the checks that `ψ(β)` solves the Koszul equation and
//! that `e^β L_σ` is the graph of `π*ψ(β)`.

use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::alt::Trunc;
use crate::exterior::koszul::mc_residual_koszul;
use crate::hitchin::graph::{verify_graph_identity, GraphIdentityReport};
use crate::hitchin::psi::formality_psi;
use crate::model::Model;
use crate::poisson::HoloPoisson;
use crate::poly::Poly;
use crate::random;

#[derive(Clone, Debug, Serialize)]
pub struct MCInstanceReport {
    pub sigma: String,
    pub beta: String,
    pub sigma_certified: bool,
    /// Number of nonzero components of the Koszul residual of `ψ(β)`.
    pub koszul_residual_terms: usize,
    pub graph: GraphIdentityReport,
}

impl MCInstanceReport {
    pub fn passed(&self) -> bool {
        self.sigma_certified && self.koszul_residual_terms == 0 && self.graph.passed()
    }
}

/// `β = tβ_1 + t²β_2` with closed `β_k` of coefficient degree at most 2, and
/// `σ = f(z)∂_1∧∂_2` with `deg f ≤ 2`. Everything modulo `t^{order+1}`.
pub fn random_mc_instance(rng: &mut ChaCha8Rng, order: u32, points: usize) -> Result<MCInstanceReport> {
    let model = Model::complex(2);
    let tv = model.t_var();
    let sigma = loop {
        let s = random::holo_bivector_c2(rng, &model, 2, 2);
        if !s.is_zero() {
            break s;
        }
    };
    let hp = HoloPoisson::new(model, sigma.clone());
    let sigma_certified = hp.certificates()?.passed();
    if !sigma_certified {
        return Err(Error::Certificate("random bivector is not holomorphic Poisson".into()));
    }
    let b1 = random::closed_two_form(rng, &model, 2, 3);
    let b2 = random::closed_two_form(rng, &model, 2, 2);
    let beta = b1.mul_poly(&Poly::var(tv)).add(&b2.mul_poly(&Poly::var(tv).pow(2)));
    let omega = formality_psi(&model, &beta, &sigma, order)?;
    let residual = mc_residual_koszul(&omega, &sigma, Some(Trunc::new(&model, order)))?;
    let graph = verify_graph_identity(&beta, &hp, order, points, rng)?;
    let names = model.dir_names();
    Ok(MCInstanceReport {
        sigma: sigma.render(&model, &names),
        beta: beta.render(&model, &names),
        sigma_certified,
        koszul_residual_terms: residual.comps().count(),
        graph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_instances_pass() {
        let mut rng = random::rng(5);
        for _ in 0..2 {
            let r = random_mc_instance(&mut rng, 3, 2).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
