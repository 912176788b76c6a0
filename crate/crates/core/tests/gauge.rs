use gkd::dirac::frame::DiracFrame;
use gkd::exterior::forms::MixedForm;
use gkd::hyperkahler::FlatHyperKahler;
use gkd::poisson::{check_gauge_equiv, sample_gauge_pair, GaugeMode, HoloPoisson};
use gkd::{random, Model, Scalar};

fn points(seed: u64, k: usize) -> Vec<gkd::Point> {
    let mut rng = random::rng(seed);
    (0..k).map(|_| Model::complex(2).random_point(&mut rng)).collect()
}

#[test]
fn random_pairs_biconditional() {
    let mut rng = random::rng(11);
    let pts = points(1, 5);
    let mut seen = [0usize; 2];
    for k in 0..24 {
        let s = sample_gauge_pair(&mut rng, k).unwrap();
        let r = check_gauge_equiv(&s.l0, &s.l1, &s.beta, GaugeMode::Complex, &pts, None).unwrap();
        assert!(r.verdicts_agree(), "case {k}: {:?}", r.points[0]);
        assert_eq!(r.equivalent(), s.built_equivalent, "case {k}");
        seen[r.equivalent() as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}

#[test]
fn twistor_increments() {
    let hk = FlatHyperKahler::new();
    let m = hk.model;
    let fam = hk.twistor_family();
    let pts = points(2, 5);
    let ts = [Scalar::zero(), Scalar::from_frac(1, 3), Scalar::from_frac(1, 2), Scalar::from_frac(-2, 5)];
    for w in ts.windows(2) {
        let o0 = fam.map(|c| c.substitute(&[None, None, None, None, Some(w[0].clone())]));
        let o1 = fam.map(|c| c.substitute(&[None, None, None, None, Some(w[1].clone())]));
        let l0 = DiracFrame::graph_form(m, &o0, None);
        let l1 = DiracFrame::graph_form(m, &o1, None);
        let r = check_gauge_equiv(&l0, &l1, &o1.sub(&o0), GaugeMode::Complex, &pts, None).unwrap();
        assert!(r.equivalent() && r.verdicts_agree());
    }
    // L_{σ_1} is the graph of Ω_1
    let l_sigma = HoloPoisson::new(m, hk.sigma1().unwrap()).frame();
    let mut rng = random::rng(0);
    assert!(l_sigma.compare(&DiracFrame::graph_form(m, &hk.big_omega, None), &mut rng).unwrap().equal);
}

#[test]
fn real_gauge_on_hyperkahler() {
    let hk = FlatHyperKahler::new();
    let m = hk.model;
    let pts = points(3, 5);
    let l0 = HoloPoisson::new(m, hk.sigma1().unwrap()).frame();
    let f: MixedForm = hk.omega[0].scale(&Scalar::from_frac(3, 5)).sub(&hk.omega[1].scale(&Scalar::from_frac(1, 5)));
    let l1 = DiracFrame::graph_form(m, &hk.big_omega.add(&f), None);
    let r = check_gauge_equiv(&l0, &l1, &f, GaugeMode::Real, &pts, None).unwrap();
    let p = &r.points[0];
    assert!(r.equivalent() && r.verdicts_agree(), "{p:?}");
    assert_eq!(p.reconstruction, Some(true));
    let wrong = hk.omega[0].scale(&Scalar::from_frac(1, 2));
    let r = check_gauge_equiv(&l0, &l1, &wrong, GaugeMode::Real, &pts, None).unwrap();
    assert!(!r.equivalent() && r.verdicts_agree(), "{:?}", r.points[0]);
}
