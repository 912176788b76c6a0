//! Seeded random inputs for property checks and the acceptance runs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::alt::{indices, Alt, Kind};
use crate::exterior::forms::{d, MixedForm, Multivector};
use crate::model::Model;
use crate::poly::{Monomial, Poly};
use crate::scalar::Scalar;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small Gaussian integer in `[-3, 3] + [-3, 3]i`, real if `real` is set.
pub fn small_scalar(rng: &mut ChaCha8Rng, real: bool) -> Scalar {
    let re = rng.gen_range(-3..=3);
    let im = if real { 0 } else { rng.gen_range(-3..=3) };
    Scalar::gauss((re, 1), (im, 1))
}

/// Sparse polynomial in the given variables with total degree at most `max_deg`.
pub fn poly(rng: &mut ChaCha8Rng, vars: &[usize], max_deg: u32, terms: usize) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..terms {
        let deg = rng.gen_range(0..=max_deg);
        let mut m = Monomial::ONE;
        for _ in 0..deg {
            if let Some(&v) = vars.choose(rng) {
                m = m.mul(Monomial::var(v));
            }
        }
        p.add_term(m, &small_scalar(rng, false));
    }
    p
}

/// All masks of `k` directions drawn from `allowed`.
pub fn masks_of_degree(allowed: u32, k: u32) -> Vec<u32> {
    let idx = indices(allowed);
    (0u32..(1 << idx.len()))
        .filter(|s| s.count_ones() == k)
        .map(|s| indices(s).iter().fold(0, |m, &i| m | (1 << idx[i])))
        .collect()
}

/// Random homogeneous element of degree `k` over directions in `allowed`.
pub fn element<K: Kind>(
    rng: &mut ChaCha8Rng,
    dim: usize,
    allowed: u32,
    k: u32,
    vars: &[usize],
    max_deg: u32,
    terms: usize,
) -> Alt<K> {
    let masks = masks_of_degree(allowed, k);
    let mut r = Alt::<K>::zero(dim);
    if masks.is_empty() {
        return r;
    }
    for _ in 0..terms {
        let m = *masks.choose(rng).unwrap();
        r.add_comp(m, &poly(rng, vars, max_deg, 1));
    }
    r
}

/// Coordinate variables of a model (no `t`).
pub fn coord_vars(model: &Model) -> Vec<usize> {
    (0..model.coords()).collect()
}

/// Holomorphic coordinate variables.
pub fn holo_vars(model: &Model) -> Vec<usize> {
    (0..model.n()).collect()
}

/// Closed 2-form `dα` whose coefficients have degree at most `max_deg`.
pub fn closed_two_form(rng: &mut ChaCha8Rng, model: &Model, max_deg: u32, terms: usize) -> MixedForm {
    let dim = model.coords();
    let all = (1u32 << dim) - 1;
    let alpha: MixedForm = element(rng, dim, all, 1, &coord_vars(model), max_deg + 1, terms);
    d(&alpha)
}

/// Holomorphic bivector on `ℂ²`, `f(z) ∂_1∧∂_2`, which is always Poisson.
pub fn holo_bivector_c2(rng: &mut ChaCha8Rng, model: &Model, max_deg: u32, terms: usize) -> Multivector {
    assert_eq!(model.n(), 2, "bivector generator is for complex dimension two");
    let f = poly(rng, &holo_vars(model), max_deg, terms);
    Multivector::monomial(model.coords(), &[0, 1], f)
}
