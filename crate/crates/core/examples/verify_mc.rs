//! Random closed `β` and holomorphic Poisson `σ` on `ℂ²`: checks that `ψ(β)`
//! solves the Koszul Maurer–Cartan equation modulo `t⁹` and that
//! `e^β L_σ` is the graph of `π*ψ(β)`.

use gkd::hitchin::random_mc_instance;
use gkd::random;

fn main() -> gkd::Result<()> {
    let mut rng = random::rng(17);
    for k in 0..20 {
        let r = random_mc_instance(&mut rng, 8, 5)?;
        println!("{k:2}  {}  σ = {}", if r.passed() { "ok  " } else { "FAIL" }, r.sigma);
    }
    Ok(())
}
