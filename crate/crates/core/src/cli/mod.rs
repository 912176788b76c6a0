//! The `gkd` command layer: scene loading, seeding, and one function per
//! command returning a canonical JSON report.

pub mod scene;

use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exterior::forms::{bivector_matrix, MixedForm, Multivector};
use crate::genkahler::{eval_matrix, gk_check, kahler_sigma_family, small_points};
use crate::hitchin::{certify, complex_family_report, random_mc_instance, solve_hitchin, twistor_demo, DeformSeries, RealFamily, SolveMode};
use crate::hyperkahler::FlatHyperKahler;
use crate::model::Point;
use crate::poisson::{check_gauge_equiv, sample_gauge_pair, GaugeMode};
use crate::random;

pub use scene::{load_scene, parse_scene, Scene};

pub const SEED_ENV: &str = "GKD_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    CheckGk,
    Gauge,
    Solve,
    DeformGk,
    VerifyMc,
    HamfamCheck,
    Twistor,
}

impl Command {
    pub const ALL: [Command; 7] =
        [Command::CheckGk, Command::Gauge, Command::Solve, Command::DeformGk, Command::VerifyMc, Command::HamfamCheck, Command::Twistor];

    pub fn name(self) -> &'static str {
        match self {
            Command::CheckGk => "check-gk",
            Command::Gauge => "gauge",
            Command::Solve => "solve",
            Command::DeformGk => "deform-gk",
            Command::VerifyMc => "verify-mc",
            Command::HamfamCheck => "hamfam-check",
            Command::Twistor => "twistor",
        }
    }

    /// Fixture used when no scene is given.
    pub fn default_scene(self) -> &'static str {
        match self {
            Command::CheckGk | Command::DeformGk | Command::VerifyMc | Command::Gauge => "kahler-c2",
            Command::Solve | Command::Twistor => "hk-r4",
            Command::HamfamCheck => "r2-poisson",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::Usage(format!("unknown command '{s}'")))
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub order: Option<u32>,
    pub mode: Option<SolveMode>,
    pub seed: Option<u64>,
    pub omega1: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub passed: bool,
    /// Keys sorted, no timings: identical for identical inputs.
    pub json: Value,
    pub lines: Vec<String>,
}

impl Report {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.json).expect("reports serialize") + "\n"
    }
}

/// `--seed`, then `GKD_SEED`, then the scene's seed.
pub fn resolve_seed(flag: Option<u64>, env: Option<&str>, scene: u64) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match env {
        Some(v) => v.trim().parse().map_err(|_| Error::Usage(format!("{SEED_ENV}='{v}' is not an unsigned integer"))),
        None => Ok(scene),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn sample_points(scene: &Scene, rng: &mut ChaCha8Rng) -> Vec<Point> {
    (0..scene.points).map(|_| scene.model.random_point(rng)).collect()
}

fn require_complex(scene: &Scene, cmd: Command) -> Result<()> {
    if !scene.model.is_complex() {
        return Err(Error::Scene(format!("{cmd} needs a complex model, scene '{}' is real", scene.name)));
    }
    Ok(())
}

fn scene_form(scene: &Scene, name: &str, what: &str) -> Result<MixedForm> {
    scene.forms.get(name).cloned().ok_or_else(|| Error::Scene(format!("{what}: unknown form '{name}'")))
}

fn scene_bivector(scene: &Scene, name: &str, what: &str) -> Result<Multivector> {
    scene.bivectors.get(name).cloned().ok_or_else(|| Error::Scene(format!("{what}: unknown bivector '{name}'")))
}

fn default_name(v: &Option<String>, key: &str, scene: &Scene) -> Result<String> {
    v.clone().ok_or_else(|| Error::Scene(format!("scene '{}' has no defaults.{key}", scene.name)))
}

/// Solves with the scene's `σ` and `ω_1`, honouring `--omega1` and `--mode`.
fn scene_solve(scene: &Scene, opts: &Options, order: u32) -> Result<(Multivector, MixedForm, String, DeformSeries)> {
    let sigma = scene_bivector(scene, &default_name(&scene.defaults.sigma, "sigma", scene)?, "defaults.sigma")?;
    let omega_name = match &opts.omega1 {
        Some(n) => n.clone(),
        None => default_name(&scene.defaults.omega1, "omega1", scene)?,
    };
    let omega1 = scene_form(scene, &omega_name, "--omega1")?;
    let mode = opts.mode.or(scene.defaults.mode).unwrap_or(SolveMode::Complex);
    let series = solve_hitchin(&scene.model, &sigma, &omega1, order, mode)?;
    Ok((sigma, omega1, omega_name, series))
}

pub fn run(cmd: Command, scene: &Scene, opts: &Options, seed: u64) -> Result<Report> {
    let mut rng = random::rng(seed);
    // verify-mc certifies modulo t⁹ unless told otherwise
    let order = opts.order.unwrap_or(if cmd == Command::VerifyMc { scene.order.max(8) } else { scene.order });
    let (passed, result, lines) = match cmd {
        Command::CheckGk => check_gk(scene, &mut rng)?,
        Command::Gauge => gauge(scene, &mut rng)?,
        Command::Solve => solve(scene, opts, order)?,
        Command::DeformGk => deform_gk(scene, opts, order, &mut rng)?,
        Command::VerifyMc => verify_mc(scene, order, &mut rng)?,
        Command::HamfamCheck => hamfam(scene, order, &mut rng)?,
        Command::Twistor => twistor(scene, order)?,
    };
    let json = json!({
        "command": cmd.name(),
        "scene": scene.name,
        "seed": seed,
        "order": order,
        "passed": passed,
        "result": result,
    });
    Ok(Report { passed, json, lines })
}

type Outcome = (bool, Value, Vec<String>);

fn check_gk(scene: &Scene, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    require_complex(scene, Command::CheckGk)?;
    if scene.pairs.is_empty() {
        return Err(Error::Scene(format!("scene '{}' has no pairs", scene.name)));
    }
    let points = sample_points(scene, rng);
    let mut all = true;
    let mut out = Vec::new();
    let mut lines = Vec::new();
    for spec in &scene.pairs {
        let pair = gk_check(&scene.frames[&spec.l1], &scene.frames[&spec.l2], &points, spec.t.as_ref())?;
        let r = &pair.report;
        let verdict_ok = r.verdict == spec.expect;
        let conditions_ok = spec.conditions.is_none_or(|c| c == r.conditions());
        let sigma_ok = |expected: &Option<scene::BivectorRef>, got: &[Option<crate::linalg::Mat<crate::Scalar>>]| -> Option<bool> {
            let e = expected.as_ref()?;
            let m = bivector_matrix(&e.value);
            Some(points.iter().zip(got).all(|(p, g)| g.as_ref() == Some(&eval_matrix(&m, p, spec.t.as_ref()))))
        };
        let plus = sigma_ok(&spec.sigma_plus, &pair.sigma_plus);
        let minus = sigma_ok(&spec.sigma_minus, &pair.sigma_minus);
        let ok = verdict_ok && conditions_ok && plus != Some(false) && minus != Some(false);
        all &= ok;
        let c = r.conditions();
        lines.push(format!(
            "{} {:<22} verdict {:<14} i={} ii={} iii={} iv={}",
            mark(ok),
            spec.name,
            to_value(&r.verdict).as_str().unwrap_or_default(),
            c[0],
            c[1],
            c[2],
            c[3]
        ));
        out.push(json!({
            "name": spec.name,
            "expect": spec.expect,
            "verdict_matches": verdict_ok,
            "conditions_match": conditions_ok,
            "sigma_plus_matches": plus,
            "sigma_minus_matches": minus,
            "passed": ok,
            "report": r,
        }));
    }
    Ok((all, json!({ "pairs": out }), lines))
}

fn gauge(scene: &Scene, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let points: Vec<Point> = {
        let m = crate::model::Model::complex(2);
        (0..scene.points).map(|_| m.random_point(rng)).collect()
    };
    let mut cases = Vec::new();
    let mut agree = true;
    let mut counts = [0usize; 2];
    for k in 0..24 {
        let s = sample_gauge_pair(rng, k)?;
        let r = check_gauge_equiv(&s.l0, &s.l1, &s.beta, GaugeMode::Complex, &points, None)?;
        let ok = r.verdicts_agree() && r.equivalent() == s.built_equivalent;
        agree &= ok;
        counts[r.equivalent() as usize] += 1;
        cases.push(json!({ "case": k, "built_equivalent": s.built_equivalent, "equivalent": r.equivalent(), "verdicts_agree": r.verdicts_agree(), "points": r.points }));
    }
    let passed = agree && counts[0] > 0 && counts[1] > 0;
    let lines = vec![format!(
        "{} 24 random pairs: {} equivalent, {} not; conditions i-iv agree with the frame identity at every point: {agree}",
        mark(passed),
        counts[1],
        counts[0]
    )];
    Ok((passed, json!({ "cases": cases, "equivalent": counts[1], "inequivalent": counts[0] }), lines))
}

fn render_series(series: &DeformSeries) -> Vec<String> {
    let names = series.model.dir_names();
    (1..=series.order as usize).map(|k| series.beta_k(k).render(&series.model, &names)).collect()
}

fn mode_name(m: SolveMode) -> &'static str {
    match m {
        SolveMode::Complex => "complex",
        SolveMode::Real => "real",
    }
}

fn solve(scene: &Scene, opts: &Options, order: u32) -> Result<Outcome> {
    require_complex(scene, Command::Solve)?;
    let (sigma, _, omega_name, series) = scene_solve(scene, opts, order)?;
    let cert = certify(&series, &sigma)?;
    let betas = render_series(&series);
    let mut lines = vec![format!("{} solve {} order {order} from {omega_name}: certificate {}", mark(cert.passed()), mode_name(series.mode), cert.passed())];
    for (k, b) in betas.iter().enumerate() {
        lines.push(format!("  beta_{} = {b}", k + 1));
    }
    let result = json!({
        "mode": mode_name(series.mode),
        "omega1": omega_name,
        "betas": betas,
        "certified": cert.passed(),
        "components_certified": cert.components.passed(),
    });
    Ok((cert.passed(), result, lines))
}

fn deform_gk(scene: &Scene, opts: &Options, order: u32, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    require_complex(scene, Command::DeformGk)?;
    let opts = Options { mode: Some(opts.mode.unwrap_or(SolveMode::Real)), ..opts.clone() };
    if opts.mode != Some(SolveMode::Real) {
        return Err(Error::Usage("deform-gk needs --mode real".into()));
    }
    let (sigma, omega, omega_name, series) = scene_solve(scene, &opts, order)?;
    let cert = certify(&series, &sigma)?;
    let points = small_points(&scene.model, rng, scene.points);
    let (_, _, fam) = kahler_sigma_family(&omega, &sigma, &series, &points, rng)?;
    let passed = cert.passed() && fam.passed();
    let mut lines = vec![
        format!("{} real solve order {order} from {omega_name}: certificate {}", mark(cert.passed()), cert.passed()),
        format!("{} sigma_minus unchanged: {}", mark(fam.sigma_minus_unchanged), fam.sigma_minus_unchanged),
        format!(
            "{} admissible t in (-{}, {})",
            mark(fam.positive_bound.is_some() || fam.negative_bound.is_some()),
            fam.negative_bound.as_deref().unwrap_or("inf"),
            fam.positive_bound.as_deref().unwrap_or("inf")
        ),
    ];
    for c in &fam.t_checks {
        lines.push(format!("{} t = {:<6} i={} ii={} iv={}", mark(c.passed()), c.t, c.condition_i, c.condition_ii, c.condition_iv));
    }
    Ok((passed, json!({ "betas": render_series(&series), "certified": cert.passed(), "family": fam }), lines))
}

fn verify_mc(scene: &Scene, order: u32, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let instances = 20;
    let mut out = Vec::new();
    let mut passed = true;
    let mut lines = Vec::new();
    for k in 0..instances {
        let r = random_mc_instance(rng, order, scene.points)?;
        passed &= r.passed();
        lines.push(format!(
            "{} instance {k:2}: residual terms {}, graph identity {}",
            mark(r.passed()),
            r.koszul_residual_terms,
            r.graph.passed()
        ));
        out.push(to_value(&r));
    }
    Ok((passed, json!({ "modulus": order + 1, "instances": out }), lines))
}

fn hamfam(scene: &Scene, order: u32, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    if scene.model.is_complex() {
        return Err(Error::Scene(format!("hamfam-check takes a real scene, '{}' is complex", scene.name)));
    }
    let pi0 = scene_bivector(scene, &default_name(&scene.defaults.pi0, "pi0", scene)?, "defaults.pi0")?;
    let b = scene_form(scene, &default_name(&scene.defaults.b, "b", scene)?, "defaults.b")?;
    let real = RealFamily { model: scene.model, pi0, b }.report(rng)?;
    let hk = FlatHyperKahler::new();
    let sigma = hk.sigma1()?;
    let omega1 = hk.omega[0].scale(&crate::Scalar::gauss((0, 1), (2, 1)));
    let series = solve_hitchin(&hk.model, &sigma, &omega1, order, SolveMode::Complex)?;
    let complex = complex_family_report(&series, &sigma, rng)?;
    let lines = vec![
        format!("{} real family on {}: Hamiltonian velocity {}, D involutive with dt^Bdot {}", mark(real.passed()), scene.name, real.velocity, real.involutive_dt_bdot),
        format!("{} twistor family identities mod t^{}", mark(complex.passed()), complex.modulus),
    ];
    let passed = real.passed() && complex.passed();
    Ok((passed, json!({ "real": real, "complex": complex }), lines))
}

fn twistor(scene: &Scene, order: u32) -> Result<Outcome> {
    require_complex(scene, Command::Twistor)?;
    let hk = FlatHyperKahler::new();
    let expected: [(&str, MixedForm); 5] = [
        ("omega_1", hk.omega[0].clone()),
        ("omega_2", hk.omega[1].clone()),
        ("omega_3", hk.omega[2].clone()),
        ("Omega_1", hk.big_omega.clone()),
        ("two_i_omega_1", hk.omega[0].scale(&crate::Scalar::gauss((0, 1), (2, 1)))),
    ];
    let mut scene_matches = scene.model == hk.model && scene.bivectors.get("sigma_1") == Some(&hk.sigma1()?);
    for (name, form) in &expected {
        scene_matches &= scene.forms.get(*name) == Some(form);
    }
    let r = twistor_demo(order)?;
    let passed = scene_matches && r.passed();
    let lines = vec![
        format!("{} scene forms are the flat hyperkahler structure: {scene_matches}", mark(scene_matches)),
        format!("{} beta(t) = {}", mark(r.family_matches), r.beta),
        format!("{} r2 = -conj(Omega_1): {}, beta_k = 0 for k >= 3: {}", mark(r.r2_matches && r.terminates), r.r2_matches, r.terminates),
        format!("{} certificate {}, inverse checks {}", mark(r.certified), r.certified, r.inverse_checks.iter().all(|c| c.inverse)),
    ];
    Ok((passed, json!({ "scene_matches": scene_matches, "twistor": r }), lines))
}
