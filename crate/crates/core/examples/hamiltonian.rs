//! Hamiltonian families: the real family `π_t` on `ℝ²` gauged by `B_t = t dx∧dy`,
//! and the holomorphic family carried by the twistor series.

use gkd::exterior::{MixedForm, Multivector};
use gkd::hitchin::{complex_family_report, solve_hitchin, RealFamily, SolveMode};
use gkd::hyperkahler::FlatHyperKahler;
use gkd::{random, Model, Poly, Scalar};

fn main() -> gkd::Result<()> {
    let mut rng = random::rng(5);
    let m = Model::real(2);
    let fam = RealFamily {
        model: m,
        pi0: Multivector::monomial(2, &[0, 1], Poly::var(0)),
        b: MixedForm::monomial(2, &[0, 1], Poly::var(m.t_var())),
    };
    let r = fam.report(&mut rng)?;
    println!("real: velocity {} involutive with dt^Bdot {} bracket expansion {}", r.velocity, r.involutive_dt_bdot, r.bracket_expansion);

    let hk = FlatHyperKahler::new();
    let sigma = hk.sigma1()?;
    let series = solve_hitchin(&hk.model, &sigma, &hk.omega[0].scale(&Scalar::gauss((0, 1), (2, 1))), 6, SolveMode::Complex)?;
    let c = complex_family_report(&series, &sigma, &mut rng)?;
    println!("twistor family mod t^{}: passed {}", c.modulus, c.passed());
    Ok(())
}
