//! Real and holomorphic Poisson structures viewed as Dirac structures.

use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dirac::frame::DiracFrame;
use crate::dirac::gvfield::GVField;
use crate::dirac::point::PointDirac;
use crate::error::{Error, Result};
use crate::exterior::alt::{Alt, Trunc};
use crate::exterior::forms::{bivector_from_matrix, bivector_matrix, form_matrix, MixedForm, Multivector};
use crate::exterior::koszul::mc_residual_dgla;
use crate::exterior::multivector::{dgla_bracket, holo_to_n, MVElement};
use crate::exterior::polymat;
use crate::exterior::schouten;
use crate::linalg::{self, Mat};
use crate::model::{Model, Point};
use crate::poly::Poly;
use crate::ring::Coeff;
use crate::scalar::Scalar;

/// A holomorphic Poisson structure `(I, σ)` presented as a deformation of the
/// background: `L = L_0^{σ+φ}` where `L_0 = T_{0,1} ⊕ T*_{1,0}`, `φ` is the
/// `(1,1)` part and `σ` the `(2,0)` part of `ε = σ + φ ∈ ∧²N`.
///
/// The complex structure has `T_{0,1}(I) = {X + φX}`; the Poisson tensor is the
/// `(2,0)` part of `σ` with respect to `I`.
#[derive(Clone, Debug)]
pub struct HoloPoisson {
    pub model: Model,
    pub phi: MVElement,
    pub sigma: Multivector,
    pub trunc: Option<Trunc>,
}

#[derive(Clone, Debug)]
pub struct HoloCertificates {
    /// `∂̄φ + ½[φ,φ]`.
    pub complex_structure: MVElement,
    /// `∂̄σ + [σ, φ]`.
    pub holomorphic: MVElement,
    /// `½[σ,σ]`.
    pub jacobi: MVElement,
}

impl HoloCertificates {
    pub fn passed(&self) -> bool {
        self.complex_structure.is_zero() && self.holomorphic.is_zero() && self.jacobi.is_zero()
    }
}

impl HoloPoisson {
    /// Background complex structure with a bivector in holomorphic directions.
    pub fn new(model: Model, sigma: Multivector) -> Self {
        let dim = model.coords();
        HoloPoisson { model, phi: MVElement::zero(dim), sigma, trunc: None }
    }

    pub fn with_phi(mut self, phi: MVElement) -> Self {
        self.phi = phi;
        self
    }

    pub fn with_trunc(mut self, t: Option<Trunc>) -> Self {
        self.trunc = t;
        self
    }

    /// `ε = σ + φ` as an element of `∧²N`.
    pub fn epsilon(&self) -> MVElement {
        holo_to_n(&self.model, &self.sigma).add(&self.phi)
    }

    /// The three components of the Maurer–Cartan equation of `ε` over `L_0`.
    pub fn certificates(&self) -> Result<HoloCertificates> {
        let m = &self.model;
        if self.sigma.comps().any(|(mask, _)| mask & !m.holo_mask() != 0) {
            return Err(Error::Precondition("σ must be given in holomorphic directions".into()));
        }
        let eps = self.epsilon();
        let zero = MVElement::zero(eps.dim());
        let res = mc_residual_dgla(m, &eps, &zero, self.trunc)?;
        let n = m.n();
        Ok(HoloCertificates {
            complex_structure: res.bidegree_part(n, 1, 2),
            holomorphic: res.bidegree_part(n, 2, 1),
            jacobi: res.bidegree_part(n, 3, 0),
        })
    }

    /// `L_σ = {X + σζ + ζ}` as a frame.
    pub fn frame(&self) -> DiracFrame {
        epsilon_graph(&base_frame(&self.model), &self.epsilon(), self.trunc)
    }

    /// `Q = Im(4σ)` as a real bivector (background complex structure only).
    pub fn imag_q(&self) -> Result<Multivector> {
        if !self.phi.is_zero() {
            return Err(Error::Precondition("Q is computed for the background complex structure".into()));
        }
        Ok(imag_part(&self.model, &self.sigma.scale(&Scalar::from_int(4))))
    }
}

/// Imaginary part `(P − P̄)/2i` of a complex multivector.
pub fn imag_part(model: &Model, p: &Multivector) -> Multivector {
    p.sub(&p.conj(model)).scale(&Scalar::gauss((0, 1), (-1, 2)))
}

/// Real part `(P + P̄)/2`.
pub fn real_part<K: crate::exterior::alt::Kind>(model: &Model, p: &Alt<K>) -> Alt<K> {
    p.add(&p.conj(model)).scale(&Scalar::from_frac(1, 2))
}

/// Imaginary part of a form.
pub fn imag_form(model: &Model, p: &MixedForm) -> MixedForm {
    p.sub(&p.conj(model)).scale(&Scalar::gauss((0, 1), (-1, 2)))
}

/// `L_0 = T_{0,1} ⊕ T*_{1,0}` with generators `∂_{z̄_j}` and `dz_i`.
pub fn base_frame(model: &Model) -> DiracFrame {
    let n = model.n();
    let dim = model.coords();
    let mut gens = Vec::new();
    for j in 0..n {
        gens.push(GVField::partial(dim, n + j));
    }
    for i in 0..n {
        gens.push(GVField::dx(dim, i));
    }
    DiracFrame::new(*model, dim, gens, None)
}

/// Deformation of a frame `L` complementary to `N = T_{1,0} ⊕ T*_{0,1}` by
/// `ε ∈ ∧²N`: each generator `ℓ` goes to `ℓ + i_{λ_ℓ} ε`, where `λ_ℓ` is `ℓ`
/// seen as a functional on `N` through `2⟨·,·⟩`: `λ_ℓ(∂_{z_i}) = ζ_i` and
/// `λ_ℓ(dz̄_j) = X^{z̄_j}` for `ℓ = X + ζ`.
pub fn epsilon_graph(base: &DiracFrame, eps: &MVElement, trunc: Option<Trunc>) -> DiracFrame {
    let model = base.model;
    let n = model.n();
    let dim = base.dim;
    let e2 = eps.degree_part(2);
    let gens = base
        .gens
        .iter()
        .map(|l| {
            let lambda: Vec<Poly> = (0..2 * n).map(|a| if a < n { l.form[a].clone() } else { l.vec[a].clone() }).collect();
            let v = contract_trunc(&e2, &lambda, trunc);
            let mut g = l.clone();
            for a in 0..2 * n {
                let c = v.comp(1 << a);
                if c.is_zero() {
                    continue;
                }
                if a < n {
                    g.vec[a].add_assign(&c);
                } else {
                    g.form[a].add_assign(&c);
                }
            }
            g
        })
        .collect();
    DiracFrame::new(model, dim, gens, trunc.or(base.trunc))
}

fn contract_trunc(e: &MVElement, lambda: &[Poly], t: Option<Trunc>) -> MVElement {
    let mut r = MVElement::zero(e.dim());
    for (a, l) in lambda.iter().enumerate() {
        if l.is_zero() {
            continue;
        }
        let c = e.contract_left(a);
        r = r.add(&c.map(|p| p.mul_trunc(l, Trunc::pair(t))));
    }
    r
}

/// `[σ,σ]` for a multivector field.
pub fn is_poisson(p: &Multivector) -> bool {
    schouten(p, p).is_zero()
}

/// `π_1 = π_0 (1 + Bπ_0)^{-1}` on a real model, exact when `det(1 + Bπ_0)`
/// is a nonzero constant; otherwise the determinant is reported.
#[derive(Clone, Debug)]
pub struct RealGauge {
    pub det: Poly,
    /// `π_1` times `det(1 + Bπ_0)`; equals `π_1` when the determinant is one.
    pub pi_times_det: Multivector,
    pub pi: Option<Multivector>,
}

/// Gauge transformation of a real Poisson structure by a closed 2-form.
pub fn gauge_real_poisson(model: &Model, pi0: &Multivector, b: &MixedForm) -> Result<RealGauge> {
    let dbf = crate::exterior::forms::d(b);
    if !dbf.is_zero() {
        return Err(Error::NotClosed(dbf.render(model, &model.dir_names())));
    }
    let dim = pi0.dim();
    let bm = form_matrix(b);
    let pm = bivector_matrix(pi0);
    // as maps on row covectors: ξ ↦ ξ(1 + Bπ)… in row convention the operator is π·B
    let m = polymat::add(&polymat::identity(dim), &polymat::mul(&pm, &bm, None));
    let det = linalg::det(&m, &Poly::zero());
    if det.is_zero() {
        return Err(Error::Singular("det(1 + Bπ) vanishes identically".into()));
    }
    let adj = adjugate(&m);
    let pi_times_det = bivector_from_matrix(&polymat::mul(&adj, &pm, None));
    let pi = det.is_constant().then(|| pi_times_det.scale(&det.constant_term().inv()));
    Ok(RealGauge { det, pi_times_det, pi })
}

/// Adjugate of a polynomial matrix.
pub fn adjugate(m: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let n = m.len();
    let mut adj = vec![vec![Poly::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<Poly>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c].clone()).collect())
                .collect();
            let dm = if minor.is_empty() { Poly::one() } else { linalg::det(&minor, &Poly::zero()) };
            adj[i][j] = if (i + j) % 2 == 0 { dm } else { dm.neg() };
        }
    }
    adj
}

/// Holomorphic Poisson data read off a Dirac structure at a point.
#[derive(Clone, Debug)]
pub struct PointHolo<C> {
    /// Basis of `T_{0,1}(I) = L ∩ T_ℂ`.
    pub t01: Vec<Vec<C>>,
    /// Basis of `T*_{1,0}(I)`, the covector projection of `L`.
    pub t10_star: Vec<Vec<C>>,
    /// Matrix `S` of `σ`, `σξ = ξ S`, in the coordinate frame.
    pub sigma: Mat<C>,
}

/// Extraction of `(I, σ)` from `L` at a point, given also `L̄` there.
///
/// Requires `T_ℂ = (L ∩ T_ℂ) ⊕ (L̄ ∩ T_ℂ)`.
pub fn extract_holo_poisson<C: Coeff>(l: &PointDirac<C>, lbar: &PointDirac<C>) -> Result<PointHolo<C>> {
    let dim = l.dim;
    let zero = l.zero_elem().clone();
    let t01: Vec<Vec<C>> = l.intersect_tangent()?.vector_parts();
    let t10: Vec<Vec<C>> = lbar.intersect_tangent()?.vector_parts();
    let mut both = t01.clone();
    both.extend(t10.iter().cloned());
    if t01.len() * 2 != dim || linalg::span_rank(&both)? != dim {
        return Err(Error::Degenerate(format!(
            "splitting fails: dim L∩T = {}, dim L̄∩T = {}, total rank {}",
            t01.len(),
            t10.len(),
            linalg::span_rank(&both)?
        )));
    }
    let t10_star = linalg::span_basis(&l.covector_parts())?;
    // T*_{0,1}(I) = annihilator of T_{1,0}(I)
    let t10_mat: Mat<C> = t10.clone();
    let t01_star = linalg::kernel(&t10_mat, dim, &zero)?;
    // lift each ζ in T*_{1,0} to L and project its vector part to T_{1,0}
    let mut rows: Mat<C> = Vec::new();
    let mut images: Mat<C> = Vec::new();
    for zeta in &t10_star {
        let target: Vec<C> = zeta.clone();
        // find u ∈ L with covector part ζ: solve Σ c_k cov_k = ζ
        let covs = l.covector_parts();
        let m: Mat<C> = (0..dim).map(|a| covs.iter().map(|v| v[a].clone()).collect()).collect();
        let c = linalg::solve(&m, &target, &zero)?.ok_or_else(|| Error::Inconsistent("covector has no lift".into()))?;
        let mut v = vec![zero.clone(); dim];
        for (k, u) in l.vector_parts().iter().enumerate() {
            for a in 0..dim {
                v[a] = v[a].add(&c[k].mul(&u[a]));
            }
        }
        // project along T_{0,1}: v = a + b, a ∈ T_{1,0}, b ∈ T_{0,1}
        let mut basis = t10.clone();
        basis.extend(t01.iter().cloned());
        let bm: Mat<C> = (0..dim).map(|a| basis.iter().map(|w| w[a].clone()).collect()).collect();
        let coef = linalg::solve(&bm, &v, &zero)?.ok_or_else(|| Error::Inconsistent("projection failed".into()))?;
        let mut proj = vec![zero.clone(); dim];
        for (k, w) in t10.iter().enumerate() {
            for a in 0..dim {
                proj[a] = proj[a].add(&coef[k].mul(&w[a]));
            }
        }
        rows.push(zeta.clone());
        images.push(proj);
    }
    for eta in &t01_star {
        rows.push(eta.clone());
        images.push(vec![zero.clone(); dim]);
    }
    // rows · S = images  ⇒  S = rows^{-1} images, column by column
    let mut s = vec![vec![zero.clone(); dim]; dim];
    for col in 0..dim {
        let rhs: Vec<C> = images.iter().map(|r| r[col].clone()).collect();
        let x = linalg::solve(&rows, &rhs, &zero)?.ok_or_else(|| Error::Inconsistent("coframe not invertible".into()))?;
        for a in 0..dim {
            s[a][col] = x[a].clone();
        }
    }
    Ok(PointHolo { t01, t10_star, sigma: s })
}

/// Dirac structure of `(I, σ)` at a point from extracted data.
pub fn point_l_sigma<C: Coeff>(h: &PointHolo<C>, zero: &C) -> Result<PointDirac<C>> {
    let dim = h.sigma.len();
    let mut vecs = Vec::new();
    for x in &h.t01 {
        let mut v = x.clone();
        v.extend(std::iter::repeat_n(zero.clone(), dim));
        vecs.push(v);
    }
    for z in &h.t10_star {
        let sz = linalg::mat_mul(&vec![z.clone()], &h.sigma, zero).remove(0);
        let mut v = sz;
        v.extend(z.iter().cloned());
        vecs.push(v);
    }
    PointDirac::new(dim, vecs, zero.clone())
}

/// Sample `count` points where `ok` holds, re-sampling up to a bound.
pub fn sample_points(
    model: &Model,
    rng: &mut ChaCha8Rng,
    count: usize,
    mut ok: impl FnMut(&Point) -> bool,
) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count {
        tries += 1;
        if tries > 50 * count + 50 {
            return Err(Error::Degenerate("could not find enough nondegenerate sample points".into()));
        }
        let p = model.random_point(rng);
        if ok(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

/// `[φ, φ]` helper kept for reports.
pub fn phi_square(model: &Model, phi: &MVElement) -> MVElement {
    dgla_bracket(model, phi, phi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GaugeMode {
    Complex,
    Real,
}

#[derive(Clone, Debug, Serialize)]
pub struct GaugePointReport {
    pub point: String,
    /// Conditions i)–iv) for complex gauge transformations.
    pub conditions: [bool; 4],
    /// Real mode: `FI_0 + I_1*F = 0`, `I_0 − I_1 = Q_1F`, `I_0 − I_1 = Q_0F`,
    /// `Q_0 = Q_1`, and the single-structure form `FI_0 + I_0*F = FQF`.
    pub real_conditions: Option<[bool; 5]>,
    /// `σ_k = ¼(I_kQ_k + iQ_k)` for both structures (real mode).
    pub reconstruction: Option<bool>,
    pub frame_identity: bool,
}

impl GaugePointReport {
    pub fn conditions_hold(&self) -> bool {
        self.conditions.iter().all(|&c| c) && self.real_conditions.is_none_or(|r| r.iter().all(|&c| c))
    }

    /// The condition verdict and the subspace verdict coincide.
    pub fn agree(&self) -> bool {
        self.conditions_hold() == self.frame_identity
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GaugeEquivReport {
    pub mode: GaugeMode,
    pub points: Vec<GaugePointReport>,
}

impl GaugeEquivReport {
    /// Every point reports gauge equivalence, by both criteria.
    pub fn equivalent(&self) -> bool {
        self.points.iter().all(|p| p.conditions_hold() && p.frame_identity)
    }

    pub fn verdicts_agree(&self) -> bool {
        self.points.iter().all(GaugePointReport::agree)
    }
}

fn scalar_matrix(m: &[Vec<Poly>], vals: &[Option<Scalar>]) -> Mat<Scalar> {
    m.iter().map(|r| r.iter().map(|c| c.substitute(vals).constant_term()).collect()).collect()
}

pub(crate) fn mat_add(a: &Mat<Scalar>, b: &Mat<Scalar>) -> Mat<Scalar> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub(crate) fn mat_sub(a: &Mat<Scalar>, b: &Mat<Scalar>) -> Mat<Scalar> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

pub(crate) fn mat_scale(a: &Mat<Scalar>, c: &Scalar) -> Mat<Scalar> {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

fn transpose(a: &Mat<Scalar>) -> Mat<Scalar> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].clone()).collect()).collect()
}

fn is_zero_mat(a: &Mat<Scalar>) -> bool {
    a.iter().flatten().all(Scalar::is_zero)
}

fn row_times(v: &[Scalar], m: &Mat<Scalar>) -> Vec<Scalar> {
    linalg::mat_mul(&vec![v.to_vec()], m, &Scalar::zero()).remove(0)
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| &acc + &(x * y))
}

/// Complex conjugate of a vector of components in the model's directions.
pub(crate) fn conj_vec(model: &Model, v: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); v.len()];
    for (a, c) in v.iter().enumerate() {
        out[model.conj_dir(a)] = c.conj();
    }
    out
}

/// Conjugate of a bivector matrix.
pub(crate) fn conj_mat(model: &Model, m: &Mat<Scalar>) -> Mat<Scalar> {
    let n = m.len();
    let mut out = vec![vec![Scalar::zero(); n]; n];
    for a in 0..n {
        for b in 0..n {
            out[model.conj_dir(a)][model.conj_dir(b)] = m[a][b].conj();
        }
    }
    out
}

/// Matrix `M` of the complex structure, `IX = X·M`: `+i` on `T_{1,0}`, `−i` on `T_{0,1}`.
pub fn complex_structure_matrix(model: &Model, h: &PointHolo<Scalar>) -> Result<Mat<Scalar>> {
    let t10: Vec<Vec<Scalar>> = h.t01.iter().map(|v| conj_vec(model, v)).collect();
    let mut e = t10.clone();
    e.extend(h.t01.iter().cloned());
    let images: Vec<Vec<Scalar>> = t10
        .iter()
        .map(|v| v.iter().map(Scalar::mul_i).collect())
        .chain(h.t01.iter().map(|v| v.iter().map(|c| -c.mul_i()).collect()))
        .collect();
    let dim = e.len();
    let zero = Scalar::zero();
    let mut m = vec![vec![zero.clone(); dim]; dim];
    for col in 0..dim {
        let rhs: Vec<Scalar> = images.iter().map(|r| r[col].clone()).collect();
        let x = linalg::solve(&e, &rhs, &zero)?.ok_or_else(|| Error::Degenerate("T_{1,0} + T_{0,1} is not everything".into()))?;
        for a in 0..dim {
            m[a][col] = x[a].clone();
        }
    }
    Ok(m)
}

/// `Q = Im(4σ)` at a point, as a matrix.
pub fn imag_q_matrix(model: &Model, s: &Mat<Scalar>) -> Mat<Scalar> {
    let four = mat_scale(s, &Scalar::from_int(4));
    mat_scale(&mat_sub(&four, &conj_mat(model, &four)), &Scalar::gauss((0, 1), (-1, 2)))
}

/// Gauge equivalence `e^β L_0 = L_1` at sample points, tested twice: through
/// the conditions on `(I_k, σ_k)` read off at each point, and directly as an
/// equality of subspaces. In real mode `β` must be real and the conditions
/// are stated through `I_k` and `Q_k = Im(4σ_k)`.
///
/// Frames depending on `t` are evaluated at `t_value`, which must be real.
pub fn check_gauge_equiv(
    l0: &DiracFrame,
    l1: &DiracFrame,
    beta: &MixedForm,
    mode: GaugeMode,
    points: &[Point],
    t_value: Option<&Scalar>,
) -> Result<GaugeEquivReport> {
    let model = l0.model;
    if !model.is_complex() {
        return Err(Error::Precondition("holomorphic Poisson structures need a complex model".into()));
    }
    if t_value.is_some_and(|t| !t.is_real()) {
        return Err(Error::Precondition("t must be real for conjugation to fix it".into()));
    }
    if mode == GaugeMode::Real && !beta.is_real(&model) {
        return Err(Error::Precondition("real gauge mode takes a real 2-form".into()));
    }
    let lhs_frame = l0.gauge(beta)?;
    let l0bar = l0.conjugate();
    let l1bar = l1.conjugate();
    let bm = form_matrix(beta);
    let zero = Scalar::zero();
    let mut out = Vec::new();
    for p in points {
        let vals = p.subst(t_value);
        let h0 = extract_holo_poisson(&l0.eval(p, t_value)?, &l0bar.eval(p, t_value)?)?;
        let h1 = extract_holo_poisson(&l1.eval(p, t_value)?, &l1bar.eval(p, t_value)?)?;
        let b = scalar_matrix(&bm, &vals);
        let (s0, s1) = (&h0.sigma, &h1.sigma);
        let in_t01_1 = |v: &[Scalar]| linalg::in_span(&h1.t01, v);
        let in_t01_0 = |v: &[Scalar]| linalg::in_span(&h0.t01, v);
        let mut c = [true; 4];
        for x in &h0.t01 {
            let bx = row_times(x, &b);
            c[0] &= h1.t01.iter().all(|y| dot(&bx, y).is_zero());
            let v: Vec<Scalar> = x.iter().zip(row_times(&bx, s1)).map(|(a, b)| a - &b).collect();
            c[1] &= in_t01_1(&v)?;
        }
        for y in &h1.t01 {
            let v: Vec<Scalar> = y.iter().zip(row_times(&row_times(y, &b), s0)).map(|(a, b)| a + &b).collect();
            c[2] &= in_t01_0(&v)?;
        }
        let op = mat_add(&mat_sub(s1, s0), &linalg::mat_mul(&linalg::mat_mul(s0, &b, &zero), s1, &zero));
        for xi in &h0.t10_star {
            c[3] &= in_t01_1(&row_times(xi, &op))?;
        }
        let (real_conditions, reconstruction) = if mode == GaugeMode::Real {
            let m0 = complex_structure_matrix(&model, &h0)?;
            let m1 = complex_structure_matrix(&model, &h1)?;
            let q0 = imag_q_matrix(&model, s0);
            let q1 = imag_q_matrix(&model, s1);
            let mb = |x: &Mat<Scalar>, y: &Mat<Scalar>| linalg::mat_mul(x, y, &zero);
            let diff = mat_sub(&m0, &m1);
            let r = [
                is_zero_mat(&mat_add(&mb(&m0, &b), &mb(&b, &transpose(&m1)))),
                is_zero_mat(&mat_sub(&diff, &mb(&b, &q1))),
                is_zero_mat(&mat_sub(&diff, &mb(&b, &q0))),
                is_zero_mat(&mat_sub(&q0, &q1)),
                is_zero_mat(&mat_sub(&mat_add(&mb(&m0, &b), &mb(&b, &transpose(&m0))), &mb(&mb(&b, &q0), &b))),
            ];
            let quarter = Scalar::from_frac(1, 4);
            let rec = |s: &Mat<Scalar>, q: &Mat<Scalar>, m: &Mat<Scalar>| {
                let iq = mat_scale(q, &Scalar::i());
                is_zero_mat(&mat_sub(s, &mat_scale(&mat_add(&mb(q, m), &iq), &quarter)))
            };
            (Some(r), Some(rec(s0, &q0, &m0) && rec(s1, &q1, &m1)))
        } else {
            (None, None)
        };
        let frame_identity = lhs_frame.eval(p, t_value)?.equals(&l1.eval(p, t_value)?)?;
        out.push(GaugePointReport { point: p.render(), conditions: c, real_conditions, reconstruction, frame_identity });
    }
    Ok(GaugeEquivReport { mode, points: out })
}

/// A pair of holomorphic Poisson structures on `ℂ²` and a closed 2-form,
/// for exercising [`check_gauge_equiv`].
#[derive(Clone, Debug)]
pub struct GaugeSample {
    pub l0: DiracFrame,
    pub l1: DiracFrame,
    pub beta: MixedForm,
    /// Whether `β` was built to be a gauge transformation from `l0` to `l1`.
    pub built_equivalent: bool,
}

/// Random invertible real-linear map of `ℝ⁴ = ℂ²` as a matrix on row vectors
/// in complex coordinates.
pub fn random_real_linear(model: &Model, rng: &mut ChaCha8Rng) -> Mat<Scalar> {
    use rand::Rng;
    let n = model.n();
    loop {
        let mut a = vec![vec![Scalar::zero(); 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                let p = Scalar::gauss((rng.gen_range(-3..=3), 1), (rng.gen_range(-3..=3), 1));
                let r = Scalar::gauss((rng.gen_range(-2..=2), rng.gen_range(1..=3)), (rng.gen_range(-2..=2), 1));
                a[n + i][n + j] = p.conj();
                a[i][j] = p;
                a[n + i][j] = r.conj();
                a[i][n + j] = r;
            }
        }
        if !linalg::det(&a, &Scalar::zero()).is_zero() {
            return a;
        }
    }
}

/// Pullback of a constant 2-form by a linear map: `W ↦ A W Aᵀ`.
pub fn pullback_constant(w: &MixedForm, a: &Mat<Scalar>) -> Result<MixedForm> {
    let wm = crate::hyperkahler::constant_matrix(w)?;
    let zero = Scalar::zero();
    let r = linalg::mat_mul(&linalg::mat_mul(a, &wm, &zero), &transpose(a), &zero);
    Ok(crate::exterior::forms::form_from_matrix(&r.iter().map(|row| row.iter().cloned().map(Poly::constant).collect()).collect::<Vec<_>>()))
}

/// `kind % 4 == 0` builds an equivalent pair; the others build pairs where
/// `β` is a random closed form, a mismatched pullback, or a `(1,1)` form.
pub fn sample_gauge_pair(rng: &mut ChaCha8Rng, kind: usize) -> Result<GaugeSample> {
    use rand::Rng;
    let model = Model::complex(2);
    let c = loop {
        let c = crate::random::small_scalar(rng, false);
        if !c.is_zero() {
            break c;
        }
    };
    let sigma0 = Multivector::monomial(4, &[0, 1], Poly::constant(c.clone()));
    let omega0 = MixedForm::monomial(4, &[0, 1], Poly::constant(c.inv().neg()));
    let l0 = HoloPoisson::new(model, sigma0).frame();
    let a = random_real_linear(&model, rng);
    let target = pullback_constant(&omega0, &a)?;
    let l1 = DiracFrame::graph_form(model, &target, None);
    let (beta, built_equivalent) = match kind % 4 {
        0 => (target.sub(&omega0), true),
        1 => {
            let deg = rng.gen_range(0..=1);
            (crate::random::closed_two_form(rng, &model, deg + 1, 3), false)
        }
        2 => {
            let a2 = random_real_linear(&model, rng);
            (pullback_constant(&omega0, &a2)?.sub(&omega0), false)
        }
        _ => {
            let s = crate::random::small_scalar(rng, false);
            let s = if s.is_zero() { Scalar::one() } else { s };
            (MixedForm::monomial(4, &[0, 2], Poly::constant(s)), false)
        }
    };
    let l1 = if kind % 4 == 3 { l0.clone() } else { l1 };
    Ok(GaugeSample { l0, l1, beta, built_equivalent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    #[test]
    fn l_sigma_is_involutive() {
        let m = Model::complex(2);
        let s = Multivector::monomial(4, &[0, 1], Poly::var(0));
        let hp = HoloPoisson::new(m, s);
        assert!(hp.certificates().unwrap().passed());
        let f = hp.frame();
        assert!(f.isotropy_residuals().is_empty());
        assert!(f.involutivity().passed());
        // σ(dz_1) = z_1 ∂_2
        assert_eq!(f.gens[2].vec[1], Poly::var(0));
    }

    #[test]
    fn real_gauge_scalar() {
        let m = Model::real(2);
        let pi = Multivector::monomial(2, &[0, 1], Poly::one());
        let b = MixedForm::monomial(2, &[0, 1], Poly::constant(Scalar::from_frac(1, 3)));
        let g = gauge_real_poisson(&m, &pi, &b).unwrap();
        assert_eq!(g.det, Poly::constant(Scalar::from_frac(4, 9)));
        assert_eq!(g.pi.unwrap(), pi.scale(&Scalar::from_frac(3, 2)));
        let mut rng = random::rng(0);
        let lhs = DiracFrame::graph_bivector(m, &pi, None).gauge(&b).unwrap();
        let rhs = DiracFrame::graph_bivector(m, &pi.scale(&Scalar::from_frac(3, 2)), None);
        assert!(lhs.compare(&rhs, &mut rng).unwrap().equal);
    }
}
