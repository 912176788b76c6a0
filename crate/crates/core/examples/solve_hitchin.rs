//! Solves the deformation series for the Kähler form of `ℂ²` with
//! `σ = z_1∂_1∧∂_2`, in both modes, and certifies each order.

use gkd::exterior::{MixedForm, Multivector};
use gkd::hitchin::{certify, solve_hitchin, SolveMode};
use gkd::{Model, Poly, Scalar};

fn main() -> gkd::Result<()> {
    let m = Model::complex(2);
    let half_i = Poly::constant(Scalar::gauss((0, 1), (1, 2)));
    let omega = MixedForm::monomial(4, &[0, 2], half_i.clone()).add(&MixedForm::monomial(4, &[1, 3], half_i));
    let sigma = Multivector::monomial(4, &[0, 1], Poly::var(0));
    let names = m.dir_names();
    for mode in [SolveMode::Complex, SolveMode::Real] {
        let s = solve_hitchin(&m, &sigma, &omega, 4, mode)?;
        println!("{mode:?}: certified {}", certify(&s, &sigma)?.passed());
        for k in 1..=4 {
            println!("  beta_{k} = {}", s.beta_k(k).render(&m, &names));
        }
    }
    Ok(())
}
