//! Runs the generalized Kähler checker on the flat Kähler pair, an indefinite
//! variant, and a holomorphic Poisson pair.

use gkd::dirac::DiracFrame;
use gkd::exterior::{MixedForm, Multivector};
use gkd::genkahler::gk_check;
use gkd::poisson::{base_frame, HoloPoisson};
use gkd::{random, Model, Poly, Scalar};

fn main() -> gkd::Result<()> {
    let m = Model::complex(2);
    let mut rng = random::rng(1);
    let points: Vec<_> = (0..4).map(|_| m.random_point(&mut rng)).collect();
    let half_i = |s: i64| Poly::constant(Scalar::gauss((0, 1), (s, 2)));
    let omega = |s: i64| MixedForm::monomial(4, &[0, 2], half_i(1)).add(&MixedForm::monomial(4, &[1, 3], half_i(s)));
    let graph = |w: MixedForm| DiracFrame::graph_form(m, &w.scale(&Scalar::i()), None);

    let sigma = Multivector::monomial(4, &[0, 1], Poly::var(0).mul(&Poly::var(m.t_var())));
    let l_sigma = HoloPoisson::new(m, sigma.scale(&Scalar::gauss((0, 1), (-1, 2)))).frame();

    let cases = [
        ("kahler", base_frame(&m), graph(omega(1)), None),
        ("indefinite", base_frame(&m), graph(omega(-1)), None),
        ("holomorphic poisson", l_sigma, DiracFrame::tangent(m, 4), Some(Scalar::from_frac(1, 3))),
    ];
    for (name, l1, l2, t) in cases {
        let r = gk_check(&l1, &l2, &points, t.as_ref())?.report;
        let [i, ii, iii, iv] = r.conditions();
        println!("{name:<20} {:?}  i={i} ii={ii} iii={iii} iv={iv}", r.verdict);
    }
    Ok(())
}
