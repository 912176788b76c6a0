//! Gauge equivalence of holomorphic Poisson structures on `ℂ²`, decided twice:
//! by the pointwise conditions and by comparing subspaces.

use gkd::poisson::{check_gauge_equiv, sample_gauge_pair, GaugeMode};
use gkd::{random, Model};

fn main() -> gkd::Result<()> {
    let mut rng = random::rng(3);
    let m = Model::complex(2);
    let points: Vec<_> = (0..5).map(|_| m.random_point(&mut rng)).collect();
    for k in 0..8 {
        let s = sample_gauge_pair(&mut rng, k)?;
        let r = check_gauge_equiv(&s.l0, &s.l1, &s.beta, GaugeMode::Complex, &points, None)?;
        println!("case {k}: built equivalent {:<5} conditions {:?} frame identity {}", s.built_equivalent, r.points[0].conditions, r.points[0].frame_identity);
    }
    Ok(())
}
