//! Scene files: JSON with exact complex rationals written as strings.
//!
//! Monomials are exponent arrays over `[z_1..z_n, z̄_1..z̄_n, t]` (or
//! `[x_1..x_m, t]` on a real model). Forms and bivectors are arrays of
//! `{indices: {holo, anti} | {real}, coeff}` with 1-based indices and
//! `coeff` an array of `{c, exp}` terms.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::dirac::DiracFrame;
use crate::error::{Error, Result};
use crate::exterior::alt::{Alt, Kind};
use crate::exterior::forms::{MixedForm, Multivector};
use crate::genkahler::GKVerdict;
use crate::hitchin::SolveMode;
use crate::model::Model;
use crate::poisson::{base_frame, HoloPoisson};
use crate::poly::{Monomial, Poly};
use crate::scalar::Scalar;

/// `coefficient · t^k · P` for a named bivector, `k ∈ {0, 1}`.
#[derive(Clone, Debug)]
pub struct BivectorRef {
    pub name: String,
    pub value: Multivector,
}

#[derive(Clone, Debug)]
pub struct PairSpec {
    pub name: String,
    pub l1: String,
    pub l2: String,
    pub t: Option<Scalar>,
    pub expect: GKVerdict,
    pub conditions: Option<[bool; 4]>,
    pub sigma_plus: Option<BivectorRef>,
    pub sigma_minus: Option<BivectorRef>,
}

#[derive(Clone, Debug, Default)]
pub struct Defaults {
    pub sigma: Option<String>,
    pub omega1: Option<String>,
    pub mode: Option<SolveMode>,
    pub pi0: Option<String>,
    pub b: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Scene {
    pub name: String,
    pub model: Model,
    pub seed: u64,
    pub order: u32,
    pub points: usize,
    pub forms: BTreeMap<String, MixedForm>,
    pub bivectors: BTreeMap<String, Multivector>,
    pub frames: BTreeMap<String, DiracFrame>,
    pub pairs: Vec<PairSpec>,
    pub defaults: Defaults,
}

pub const FIXTURES: [(&str, &str); 3] = [
    ("kahler-c2", include_str!("../../fixtures/kahler-c2.json")),
    ("hk-r4", include_str!("../../fixtures/hk-r4.json")),
    ("r2-poisson", include_str!("../../fixtures/r2-poisson.json")),
];

/// A shipped fixture by name, or a scene file by path.
pub fn load_scene(name_or_path: &str) -> Result<Scene> {
    if let Some((_, text)) = FIXTURES.iter().find(|(n, _)| *n == name_or_path) {
        return parse_scene(text);
    }
    let text = std::fs::read_to_string(name_or_path)
        .map_err(|e| Error::Scene(format!("'{name_or_path}' is neither a fixture nor a readable file: {e}")))?;
    parse_scene(&text)
}

fn err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Scene(format!("{path}: {msg}"))
}

fn obj<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(path, "expected an object"))
}

fn arr<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn get<'a>(m: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| err(path, format!("missing key '{key}'")))
}

fn string(v: &Value, path: &str) -> Result<String> {
    v.as_str().map(str::to_string).ok_or_else(|| err(path, "expected a string"))
}

fn uint(v: &Value, path: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| err(path, "expected a non-negative integer"))
}

fn scalar(v: &Value, path: &str) -> Result<Scalar> {
    let s = string(v, path)?;
    s.parse().map_err(|e| err(path, e))
}

fn parse_model(v: &Value) -> Result<Model> {
    let m = obj(v, "model")?;
    let kind = string(get(m, "kind", "model")?, "model.kind")?;
    let dim = uint(get(m, "dim", "model")?, "model.dim")? as usize;
    let coords = match kind.as_str() {
        "complex" => 2 * dim,
        "real" => dim,
        other => return Err(err("model.kind", format!("unknown kind '{other}'"))),
    };
    if dim == 0 || coords >= crate::poly::MAX_VARS {
        return Err(err("model.dim", format!("dimension {dim} is out of range")));
    }
    Ok(if kind == "complex" { Model::complex(dim) } else { Model::real(dim) })
}

fn parse_poly(model: &Model, v: &Value, path: &str) -> Result<Poly> {
    let nvars = model.coords() + 1;
    let mut p = Poly::zero();
    for (k, term) in arr(v, path)?.iter().enumerate() {
        let tp = format!("{path}[{k}]");
        let t = obj(term, &tp)?;
        let c = scalar(get(t, "c", &tp)?, &format!("{tp}.c"))?;
        let ep = format!("{tp}.exp");
        let exps = arr(get(t, "exp", &tp)?, &ep)?;
        if exps.len() != nvars {
            return Err(err(&ep, format!("expected {nvars} exponents, got {}", exps.len())));
        }
        let e = exps
            .iter()
            .enumerate()
            .map(|(j, x)| uint(x, &format!("{ep}[{j}]")).map(|u| u as u32))
            .collect::<Result<Vec<u32>>>()?;
        p.add_term(Monomial::from_exponents(&e), &c);
    }
    Ok(p)
}

fn parse_indices(model: &Model, v: &Value, path: &str) -> Result<Vec<usize>> {
    let m = obj(v, path)?;
    let read = |key: &str, offset: usize, bound: usize| -> Result<Vec<usize>> {
        let kp = format!("{path}.{key}");
        let Some(list) = m.get(key) else { return Ok(Vec::new()) };
        arr(list, &kp)?
            .iter()
            .enumerate()
            .map(|(j, x)| {
                let i = uint(x, &format!("{kp}[{j}]"))? as usize;
                if i == 0 || i > bound {
                    return Err(err(&format!("{kp}[{j}]"), format!("index {i} outside 1..={bound}")));
                }
                Ok(offset + i - 1)
            })
            .collect()
    };
    for key in m.keys() {
        let ok = if model.is_complex() { key == "holo" || key == "anti" } else { key == "real" };
        if !ok {
            return Err(err(path, format!("unexpected key '{key}' for a {} model", if model.is_complex() { "complex" } else { "real" })));
        }
    }
    if model.is_complex() {
        let n = model.n();
        let mut idx = read("holo", 0, n)?;
        idx.extend(read("anti", n, n)?);
        Ok(idx)
    } else {
        read("real", 0, model.coords())
    }
}

fn parse_alt<K: Kind>(model: &Model, v: &Value, path: &str) -> Result<Alt<K>> {
    let dim = model.coords();
    let mut out = Alt::<K>::zero(dim);
    for (k, term) in arr(v, path)?.iter().enumerate() {
        let tp = format!("{path}[{k}]");
        let t = obj(term, &tp)?;
        let idx = parse_indices(model, get(t, "indices", &tp)?, &format!("{tp}.indices"))?;
        let coeff = parse_poly(model, get(t, "coeff", &tp)?, &format!("{tp}.coeff"))?;
        out = out.add(&Alt::<K>::monomial(dim, &idx, coeff));
    }
    Ok(out)
}

fn named<T>(map: &BTreeMap<String, T>, name: &str, path: &str, what: &str) -> Result<T>
where
    T: Clone,
{
    map.get(name).cloned().ok_or_else(|| err(path, format!("unknown {what} '{name}'")))
}

fn parse_bivector_ref(model: &Model, bivectors: &BTreeMap<String, Multivector>, v: &Value, path: &str) -> Result<BivectorRef> {
    let m = obj(v, path)?;
    let name = string(get(m, "bivector", path)?, &format!("{path}.bivector"))?;
    let mut value = named(bivectors, &name, &format!("{path}.bivector"), "bivector")?;
    if let Some(c) = m.get("coefficient") {
        value = value.scale(&scalar(c, &format!("{path}.coefficient"))?);
    }
    if m.get("times_t").and_then(Value::as_bool).unwrap_or(false) {
        value = value.mul_poly(&Poly::var(model.t_var()));
    }
    Ok(BivectorRef { name, value })
}

fn parse_frame(scene: &Scene, v: &Value, path: &str) -> Result<DiracFrame> {
    let m = obj(v, path)?;
    let model = scene.model;
    let dim = model.coords();
    let kind = string(get(m, "kind", path)?, &format!("{path}.kind"))?;
    let coefficient = m.get("coefficient").map(|c| scalar(c, &format!("{path}.coefficient"))).transpose()?.unwrap_or_else(Scalar::one);
    let frame = match kind.as_str() {
        "tangent" => DiracFrame::tangent(model, dim),
        "cotangent" => DiracFrame::cotangent(model, dim),
        "complex-type" => {
            if !model.is_complex() {
                return Err(err(path, "complex-type frames need a complex model"));
            }
            base_frame(&model)
        }
        "graph-form" => {
            let name = string(get(m, "form", path)?, &format!("{path}.form"))?;
            let f = named(&scene.forms, &name, &format!("{path}.form"), "form")?;
            DiracFrame::graph_form(model, &f.scale(&coefficient), None)
        }
        "graph-bivector" => {
            let r = parse_bivector_ref(&model, &scene.bivectors, v, path)?;
            DiracFrame::graph_bivector(model, &r.value, None)
        }
        "holo-poisson" => {
            if !model.is_complex() {
                return Err(err(path, "holo-poisson frames need a complex model"));
            }
            let r = parse_bivector_ref(&model, &scene.bivectors, v, path)?;
            HoloPoisson::new(model, r.value).frame()
        }
        other => return Err(err(&format!("{path}.kind"), format!("unknown frame kind '{other}'"))),
    };
    Ok(frame)
}

fn parse_verdict(v: &Value, path: &str) -> Result<GKVerdict> {
    match string(v, path)?.as_str() {
        "gk" => Ok(GKVerdict::Gk),
        "degenerate-gk" => Ok(GKVerdict::DegenerateGk),
        "none" => Ok(GKVerdict::None),
        other => Err(err(path, format!("unknown verdict '{other}'"))),
    }
}

fn parse_pair(scene: &Scene, v: &Value, path: &str) -> Result<PairSpec> {
    let m = obj(v, path)?;
    let frame_name = |key: &str| -> Result<String> {
        let kp = format!("{path}.{key}");
        let name = string(get(m, key, path)?, &kp)?;
        if !scene.frames.contains_key(&name) {
            return Err(err(&kp, format!("unknown frame '{name}'")));
        }
        Ok(name)
    };
    let conditions = match m.get("conditions") {
        None => None,
        Some(c) => {
            let cp = format!("{path}.conditions");
            let list = arr(c, &cp)?;
            let vals: Vec<bool> = list.iter().map(|b| b.as_bool().ok_or_else(|| err(&cp, "expected booleans"))).collect::<Result<_>>()?;
            Some(<[bool; 4]>::try_from(vals).map_err(|_| err(&cp, "expected four booleans"))?)
        }
    };
    let bref = |key: &str| m.get(key).map(|b| parse_bivector_ref(&scene.model, &scene.bivectors, b, &format!("{path}.{key}"))).transpose();
    Ok(PairSpec {
        name: string(get(m, "name", path)?, &format!("{path}.name"))?,
        l1: frame_name("l1")?,
        l2: frame_name("l2")?,
        t: m.get("t").map(|t| scalar(t, &format!("{path}.t"))).transpose()?,
        expect: parse_verdict(get(m, "expect", path)?, &format!("{path}.expect"))?,
        conditions,
        sigma_plus: bref("sigma_plus")?,
        sigma_minus: bref("sigma_minus")?,
    })
}

pub fn parse_scene(text: &str) -> Result<Scene> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let r = obj(&root, "scene")?;
    for key in r.keys() {
        if !["name", "model", "seed", "order", "points", "forms", "bivectors", "frames", "pairs", "defaults"].contains(&key.as_str()) {
            return Err(err("scene", format!("unknown key '{key}'")));
        }
    }
    let model = parse_model(get(r, "model", "scene")?)?;
    let mut scene = Scene {
        name: string(get(r, "name", "scene")?, "name")?,
        model,
        seed: r.get("seed").map(|s| uint(s, "seed")).transpose()?.unwrap_or(0),
        order: r.get("order").map(|s| uint(s, "order")).transpose()?.unwrap_or(4) as u32,
        points: r.get("points").map(|s| uint(s, "points")).transpose()?.unwrap_or(5) as usize,
        forms: BTreeMap::new(),
        bivectors: BTreeMap::new(),
        frames: BTreeMap::new(),
        pairs: Vec::new(),
        defaults: Defaults::default(),
    };
    if let Some(f) = r.get("forms") {
        for (k, v) in obj(f, "forms")? {
            scene.forms.insert(k.clone(), parse_alt(&model, v, &format!("forms.{k}"))?);
        }
    }
    if let Some(b) = r.get("bivectors") {
        for (k, v) in obj(b, "bivectors")? {
            let p: Multivector = parse_alt(&model, v, &format!("bivectors.{k}"))?;
            scene.bivectors.insert(k.clone(), p);
        }
    }
    if let Some(f) = r.get("frames") {
        for (k, v) in obj(f, "frames")? {
            let frame = parse_frame(&scene, v, &format!("frames.{k}"))?;
            scene.frames.insert(k.clone(), frame);
        }
    }
    if let Some(p) = r.get("pairs") {
        for (k, v) in arr(p, "pairs")?.iter().enumerate() {
            let pair = parse_pair(&scene, v, &format!("pairs[{k}]"))?;
            scene.pairs.push(pair);
        }
    }
    if let Some(d) = r.get("defaults") {
        let dm = obj(d, "defaults")?;
        let name_in = |key: &str, forms: bool| -> Result<Option<String>> {
            let Some(v) = dm.get(key) else { return Ok(None) };
            let kp = format!("defaults.{key}");
            let n = string(v, &kp)?;
            let known = if forms { scene.forms.contains_key(&n) } else { scene.bivectors.contains_key(&n) };
            if !known {
                return Err(err(&kp, format!("unknown {} '{n}'", if forms { "form" } else { "bivector" })));
            }
            Ok(Some(n))
        };
        scene.defaults = Defaults {
            sigma: name_in("sigma", false)?,
            omega1: name_in("omega1", true)?,
            pi0: name_in("pi0", false)?,
            b: name_in("b", true)?,
            mode: dm.get("mode").map(|m| string(m, "defaults.mode")?.parse()).transpose()?,
        };
    }
    Ok(scene)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperkahler::FlatHyperKahler;

    #[test]
    fn fixtures_parse() {
        for (name, _) in FIXTURES {
            let s = load_scene(name).unwrap();
            assert_eq!(s.name, name);
        }
    }

    #[test]
    fn hk_fixture_is_the_flat_hyperkahler_structure() {
        let s = load_scene("hk-r4").unwrap();
        let hk = FlatHyperKahler::new();
        assert_eq!(s.forms["omega_1"], hk.omega[0]);
        assert_eq!(s.forms["omega_2"], hk.omega[1]);
        assert_eq!(s.forms["omega_3"], hk.omega[2]);
        assert_eq!(s.forms["Omega_1"], hk.big_omega);
        assert_eq!(s.bivectors["sigma_1"], hk.sigma1().unwrap());
        assert_eq!(s.forms["two_i_omega_1"], hk.omega[0].scale(&Scalar::gauss((0, 1), (2, 1))));
    }

    #[test]
    fn kahler_fixture_values() {
        let s = load_scene("kahler-c2").unwrap();
        let sigma = Multivector::monomial(4, &[0, 1], Poly::var(0));
        assert_eq!(s.bivectors["sigma"], sigma);
        assert_eq!(s.pairs.len(), 3);
        assert_eq!(s.defaults.mode, Some(SolveMode::Real));
    }

    #[test]
    fn malformed_exponents_name_the_key() {
        let text = crate::cli::scene::FIXTURES[0].1.replacen("\"exp\": [0, 0, 0, 0, 0]", "\"exp\": [0, 0, 0]", 1);
        let e = parse_scene(&text).unwrap_err().to_string();
        assert!(e.contains("forms.omega_std[0].coeff[0].exp"), "{e}");
        assert!(e.contains("expected 5 exponents, got 3"), "{e}");
    }

    #[test]
    fn unresolved_names_and_bad_indices() {
        let text = FIXTURES[0].1.replace("\"form\": \"omega_std\"", "\"form\": \"omega_missing\"");
        assert!(parse_scene(&text).unwrap_err().to_string().contains("frames.kahler.form: unknown form 'omega_missing'"));
        let text = FIXTURES[2].1.replace("\"real\": [1, 2] }, \"coeff\": [{ \"c\": \"1\", \"exp\": [1", "\"real\": [1, 3] }, \"coeff\": [{ \"c\": \"1\", \"exp\": [1");
        assert!(parse_scene(&text).unwrap_err().to_string().contains("bivectors.pi0[0].indices.real[1]"));
        assert!(matches!(parse_scene("{ \"name\": "), Err(Error::Parse(_))));
    }

    #[test]
    fn scalars_round_trip() {
        for s in ["0", "1", "-3/4", "2*i", "-1/2*i", "1/2+1/3*i", "-5-7/2*i"] {
            let x: Scalar = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
    }
}
