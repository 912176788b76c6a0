//! The twistor family of flat `ℝ⁴`: solving from `β_1 = 2iω_1` with
//! `σ_1 = −∂_1∧∂_2` gives `β(t) = 2itω_1 + t²Ω̄_1`, and the series stops there.

use gkd::hitchin::twistor_demo;

fn main() -> gkd::Result<()> {
    let r = twistor_demo(8)?;
    println!("sigma_1 = {}", r.sigma1);
    println!("beta(t) = {}", r.beta);
    println!("r2 = -conj(Omega_1): {}", r.r2_matches);
    println!("beta_k = 0 for k >= 3: {}", r.terminates);
    for c in &r.inverse_checks {
        println!("t = {:<10} sigma_t inverts Omega(t): {}", c.t, c.inverse);
    }
    println!("passed: {}", r.passed());
    Ok(())
}
