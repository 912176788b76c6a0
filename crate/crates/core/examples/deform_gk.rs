//! Deforms the flat Kähler pair on `ℂ²` along `σ = z_1∂_1∧∂_2` and checks the
//! family at rational `t` inside the admissible interval.

use gkd::exterior::{MixedForm, Multivector};
use gkd::genkahler::{kahler_sigma_family, small_points};
use gkd::hitchin::{solve_hitchin, SolveMode};
use gkd::{random, Model, Poly, Scalar};

fn main() -> gkd::Result<()> {
    let m = Model::complex(2);
    let half_i = Poly::constant(Scalar::gauss((0, 1), (1, 2)));
    let omega = MixedForm::monomial(4, &[0, 2], half_i.clone()).add(&MixedForm::monomial(4, &[1, 3], half_i));
    let sigma = Multivector::monomial(4, &[0, 1], Poly::var(0));
    let series = solve_hitchin(&m, &sigma, &omega, 4, SolveMode::Real)?;
    let mut rng = random::rng(7);
    let points = small_points(&m, &mut rng, 5);
    let (_, _, r) = kahler_sigma_family(&omega, &sigma, &series, &points, &mut rng)?;
    println!("sigma_minus unchanged: {}", r.sigma_minus_unchanged);
    println!("admissible t: (-{}, {})", r.negative_bound.as_deref().unwrap_or("inf"), r.positive_bound.as_deref().unwrap_or("inf"));
    for c in &r.t_checks {
        println!("t = {:<5} i={} ii={} iv={}  gram minors {:?}", c.t, c.condition_i, c.condition_ii, c.condition_iv, c.gram_minors);
    }
    println!("passed: {}", r.passed());
    Ok(())
}
