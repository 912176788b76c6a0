//! The nine acceptance criteria, one status line each. All criteria run even
//! when an earlier one fails; the test fails at the end if any did.

use std::io::Write;
use std::time::{Duration, Instant};

use gkd::cli::{load_scene, run, Command, Options};
use gkd::exterior::alt::{Alt, Kind};
use gkd::exterior::forms::{d, delbar, euler_homotopy};
use gkd::exterior::koszul::{koszul_bracket, mc_residual_dgla, mc_residual_koszul};
use gkd::exterior::multivector::{d_sigma, dgla_bracket, holo_to_n, pi_star, schouten};
use gkd::exterior::{MVElement, MixedForm, Multivector};
use gkd::hitchin::{random_mc_instance, solve_hitchin, twistor_demo, SolveMode};
use gkd::hyperkahler::FlatHyperKahler;
use gkd::poisson::{check_gauge_equiv, sample_gauge_pair, GaugeMode};
use gkd::{random, Model, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if let Some(l) = limit {
        if took > l {
            o.ok = false;
            o.detail = format!("{} (over the {}s limit)", o.detail, l.as_secs());
        }
    }
    (o, took)
}

fn twistor() -> Outcome {
    let r = match twistor_demo(8) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    // independent of the demo: solve directly and compare coefficients
    let hk = FlatHyperKahler::new();
    let m = hk.model;
    let sigma = hk.sigma1().unwrap();
    let two_i = Scalar::gauss((0, 1), (2, 1));
    let s = solve_hitchin(&m, &sigma, &hk.omega[0].scale(&two_i), 8, SolveMode::Complex).unwrap();
    let conj_big = hk.big_omega.conj(&m);
    let coeffs = s.beta_k(1) == hk.omega[0].scale(&two_i) && s.beta_k(2) == conj_big && (3..=8).all(|k| s.beta_k(k).is_zero());
    let r2 = s.remainders.first().is_some_and(|r| *r == conj_big.neg());
    outcome(r.passed() && coeffs && r2, format!("beta = {}; r2 = -conj(Omega_1): {r2}", r.beta))
}

fn mc_instances() -> (Outcome, Outcome) {
    let mut rng = random::rng(2026);
    let mut residual_ok = 0;
    let mut graph_ok = 0;
    let mut errors = Vec::new();
    let n = 20;
    for _ in 0..n {
        match random_mc_instance(&mut rng, 8, 5) {
            Ok(r) => {
                residual_ok += (r.sigma_certified && r.koszul_residual_terms == 0) as usize;
                graph_ok += (r.graph.points.len() >= 5 && r.graph.passed()) as usize;
            }
            Err(e) => errors.push(e.to_string()),
        }
    }
    let err = errors.first().map(|e| format!(", first error: {e}")).unwrap_or_default();
    (
        outcome(residual_ok == n, format!("{residual_ok}/{n} instances with zero Koszul residual mod t^9{err}")),
        outcome(graph_ok == n, format!("{graph_ok}/{n} instances with the graph identity at 5 points{err}")),
    )
}

fn gauge_pairs() -> Outcome {
    let mut rng = random::rng(44);
    let m = Model::complex(2);
    let pts: Vec<_> = (0..5).map(|_| m.random_point(&mut rng)).collect();
    let mut agree = 0;
    let mut counts = [0; 2];
    let n = 24;
    for k in 0..n {
        let s = sample_gauge_pair(&mut rng, k).unwrap();
        let r = check_gauge_equiv(&s.l0, &s.l1, &s.beta, GaugeMode::Complex, &pts, None).unwrap();
        agree += (r.verdicts_agree() && r.equivalent() == s.built_equivalent) as usize;
        counts[r.equivalent() as usize] += 1;
    }
    outcome(
        agree == n && counts[0] > 0 && counts[1] > 0,
        format!("{agree}/{n} pairs where i-iv hold iff the frame identity holds ({} equivalent, {} not)", counts[1], counts[0]),
    )
}

fn cli_report(cmd: Command, scene: &str, opts: Options) -> Result<gkd::cli::Report, String> {
    let s = load_scene(scene).map_err(|e| e.to_string())?;
    run(cmd, &s, &opts, s.seed).map_err(|e| e.to_string())
}

fn checker() -> Outcome {
    match cli_report(Command::CheckGk, "kahler-c2", Options::default()) {
        Ok(r) => {
            let pairs = r.json["result"]["pairs"].as_array().cloned().unwrap_or_default();
            let names: Vec<String> = pairs
                .iter()
                .map(|p| format!("{}={}", p["name"].as_str().unwrap_or("?"), p["report"]["verdict"].as_str().unwrap_or("?")))
                .collect();
            let sigma_checked = pairs.iter().any(|p| p["sigma_plus_matches"] == true && p["sigma_minus_matches"] == true && p["name"] == "holomorphic-poisson");
            outcome(r.passed && pairs.len() == 3 && sigma_checked, names.join(", "))
        }
        Err(e) => outcome(false, e),
    }
}

fn deform() -> Outcome {
    let opts = Options { order: Some(4), mode: Some(SolveMode::Real), ..Options::default() };
    match cli_report(Command::DeformGk, "kahler-c2", opts) {
        Ok(r) => {
            let f = &r.json["result"]["family"];
            let ts: Vec<&str> = f["t_checks"].as_array().map(|a| a.iter().filter_map(|c| c["t"].as_str()).collect()).unwrap_or_default();
            let ok = r.passed
                && r.json["result"]["certified"] == true
                && f["residuals_vanish"] == true
                && f["sigma_minus_unchanged"] == true
                && ts.len() >= 3;
            outcome(ok, format!("interval (-{}, {}), t = {}", f["negative_bound"].as_str().unwrap_or("inf"), f["positive_bound"].as_str().unwrap_or("inf"), ts.join(", ")))
        }
        Err(e) => outcome(false, e),
    }
}

fn hamiltonian() -> Outcome {
    match cli_report(Command::HamfamCheck, "r2-poisson", Options { order: Some(8), ..Options::default() }) {
        Ok(r) => {
            let real = &r.json["result"]["real"];
            let c = &r.json["result"]["complex"];
            let ok = r.passed && real["velocity"] == true && real["involutive_dt_bdot"] == true && c["modulus"] == 8;
            outcome(ok, format!("real family {}, twistor identities mod t^{}", real["velocity"], c["modulus"]))
        }
        Err(e) => outcome(false, e),
    }
}

fn sgn(k: i64) -> i32 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn times<K: Kind>(a: &Alt<K>, s: i32) -> Alt<K> {
    if s < 0 {
        a.neg()
    } else {
        a.clone()
    }
}

fn elem<K: Kind>(r: &mut ChaCha8Rng, k: u32) -> Alt<K> {
    random::element(r, 4, 0b1111, k, &random::coord_vars(&Model::complex(2)), 2, 3)
}

fn dgla() -> Outcome {
    let m = Model::complex(2);
    let mut r = random::rng(88);
    let n = 50;
    let mut counts = [0usize; 6];
    for _ in 0..n {
        let s = random::holo_bivector_c2(&mut r, &m, 2, 2);
        let sn = holo_to_n(&m, &s);
        let (p, q, u) = (r.gen_range(1..3u32), r.gen_range(1..3u32), r.gen_range(1..3u32));
        let e = ((p - 1) * (q - 1)) as i64;
        // Schouten
        let a: Multivector = elem(&mut r, p);
        let b: Multivector = elem(&mut r, q);
        let c: Multivector = elem(&mut r, u);
        let ok = schouten(&a, &schouten(&b, &c)) == schouten(&schouten(&a, &b), &c).add(&times(&schouten(&b, &schouten(&a, &c)), sgn(e)));
        counts[0] += ok as usize;
        // bracket on ∧•N
        let a: MVElement = elem(&mut r, p);
        let b: MVElement = elem(&mut r, q);
        let c: MVElement = elem(&mut r, u);
        let ok = dgla_bracket(&m, &a, &dgla_bracket(&m, &b, &c))
            == dgla_bracket(&m, &dgla_bracket(&m, &a, &b), &c).add(&times(&dgla_bracket(&m, &b, &dgla_bracket(&m, &a, &c)), sgn(e)));
        counts[1] += ok as usize;
        // Koszul bracket, degrees shifted by one
        let (kp, kq) = (p - 1, q - 1);
        let a: MixedForm = elem(&mut r, kp);
        let b: MixedForm = elem(&mut r, kq);
        let c: MixedForm = elem(&mut r, u - 1);
        let ke = (kp as i64 - 1) * (kq as i64 - 1);
        let ok = koszul_bracket(&a, &koszul_bracket(&b, &c, &s), &s)
            == koszul_bracket(&koszul_bracket(&a, &b, &s), &c, &s).add(&times(&koszul_bracket(&b, &koszul_bracket(&a, &c, &s), &s), sgn(ke)));
        counts[2] += ok as usize;
        // homotopy for ∂̄ on (0,q)-forms
        let w: MixedForm = random::element(&mut r, 4, m.anti_mask(), q, &random::coord_vars(&m), 3, 4);
        let ok = delbar(&m, &euler_homotopy(&m, &w).unwrap()).add(&euler_homotopy(&m, &delbar(&m, &w)).unwrap()) == w;
        counts[3] += ok as usize;
        // d_σ² = 0
        let x: MVElement = elem(&mut r, p);
        counts[4] += d_sigma(&m, &d_sigma(&m, &x, &sn), &sn).is_zero() as usize;
        // π* intertwines d, brackets and the Maurer–Cartan maps
        let a: MixedForm = elem(&mut r, kp);
        let b: MixedForm = elem(&mut r, kq);
        let w: MixedForm = elem(&mut r, 2);
        let ok = pi_star(&m, &d(&a), &s) == d_sigma(&m, &pi_star(&m, &a, &s), &sn)
            && pi_star(&m, &koszul_bracket(&a, &b, &s), &s) == dgla_bracket(&m, &pi_star(&m, &a, &s), &pi_star(&m, &b, &s))
            && pi_star(&m, &mc_residual_koszul(&w, &s, None).unwrap(), &s) == mc_residual_dgla(&m, &pi_star(&m, &w, &s), &sn, None).unwrap();
        counts[5] += ok as usize;
    }
    outcome(
        counts.iter().all(|&c| c == n),
        format!(
            "Jacobi schouten {}/{n}, N {}/{n}, koszul {}/{n}; homotopy {}/{n}; d_sigma^2 {}/{n}; pi_star {}/{n}",
            counts[0], counts[1], counts[2], counts[3], counts[4], counts[5]
        ),
    )
}

fn determinism() -> Outcome {
    let mut same = 0;
    let mut bad = Vec::new();
    for cmd in Command::ALL {
        let s = load_scene(cmd.default_scene()).unwrap();
        let opts = Options::default();
        let a = run(cmd, &s, &opts, 12345).map(|r| r.to_json_string());
        let b = run(cmd, &s, &opts, 12345).map(|r| r.to_json_string());
        match (a, b) {
            (Ok(a), Ok(b)) if a == b => same += 1,
            _ => bad.push(cmd.name()),
        }
    }
    outcome(bad.is_empty(), format!("{same}/{} commands byte-identical for a fixed seed {}", Command::ALL.len(), bad.join(" ")))
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let (mc_res, mc_graph) = {
        let start = Instant::now();
        let (a, b) = mc_instances();
        let took = start.elapsed();
        let over = took > secs(60);
        let fix = |mut o: Outcome| {
            if over {
                o.ok = false;
                o.detail += " (over the 60s limit)";
            }
            (o, took)
        };
        (fix(a), fix(b))
    };
    let results = vec![
        ("1 twistor family", timed(Some(secs(10)), twistor)),
        ("2 Koszul MC of psi(beta)", mc_res),
        ("3 graph identity", mc_graph),
        ("4 gauge biconditional", timed(None, gauge_pairs)),
        ("5 GK checker", timed(None, checker)),
        ("6 Kahler + sigma deformation", timed(Some(secs(120)), deform)),
        ("7 Hamiltonian families", timed(None, hamiltonian)),
        ("8 dgLa identities", timed(None, dgla)),
        ("9 deterministic JSON", timed(None, determinism)),
    ];
    let mut err = std::io::stderr().lock();
    let mut failed = Vec::new();
    for (name, (o, took)) in &results {
        writeln!(err, "[{}] {name:<30} {:>7.2}s  {}", if o.ok { "PASS" } else { "FAIL" }, took.as_secs_f64(), o.detail).unwrap();
        if !o.ok {
            failed.push(*name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
