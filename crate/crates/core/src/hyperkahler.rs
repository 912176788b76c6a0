//! Flat hyperkähler `ℝ⁴ = ℂ²` with its three Kähler forms.
//!
//! In the coordinates `z_1, z_2` of `I_1`: `ω_1 = (i/2)(dz_1∧dz̄_1 + dz_2∧dz̄_2)`
//! and `Ω_1 = ω_2 + iω_3 = dz_1∧dz_2`. The metric is `g = Σ ½(dz_k ⊗ dz̄_k +
//! dz̄_k ⊗ dz_k)` and `ω_a = g(I_a ·, ·)`.

use crate::error::{Error, Result};
use crate::exterior::forms::{bivector_from_matrix, form_matrix, MixedForm, Multivector};
use crate::linalg::{self, Mat};
use crate::model::Model;
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct FlatHyperKahler {
    pub model: Model,
    /// `ω_1, ω_2, ω_3`.
    pub omega: [MixedForm; 3],
    /// `Ω_1 = ω_2 + iω_3`.
    pub big_omega: MixedForm,
}

fn c(s: Scalar) -> Poly {
    Poly::constant(s)
}

impl FlatHyperKahler {
    pub fn new() -> Self {
        let model = Model::complex(2);
        let half_i = Scalar::gauss((0, 1), (1, 2));
        let omega1 = MixedForm::monomial(4, &[0, 2], c(half_i.clone())).add(&MixedForm::monomial(4, &[1, 3], c(half_i)));
        let big = MixedForm::monomial(4, &[0, 1], Poly::one());
        let big_bar = big.conj(&model);
        let half = Scalar::from_frac(1, 2);
        let omega2 = big.add(&big_bar).scale(&half);
        let omega3 = big.sub(&big_bar).scale(&Scalar::gauss((0, 1), (-1, 2)));
        FlatHyperKahler { model, omega: [omega1, omega2, omega3], big_omega: big }
    }

    pub fn big_omega_bar(&self) -> MixedForm {
        self.big_omega.conj(&self.model)
    }

    /// Matrix of the flat metric, `G[a][b] = g(∂_a, ∂_b)`.
    pub fn metric(&self) -> Mat<Scalar> {
        let mut g = vec![vec![Scalar::zero(); 4]; 4];
        for k in 0..2 {
            g[k][k + 2] = Scalar::from_frac(1, 2);
            g[k + 2][k] = Scalar::from_frac(1, 2);
        }
        g
    }

    /// `I_a` as a matrix acting on row vectors, from `ω_a = g(I_a·,·)`.
    pub fn complex_structure(&self, a: usize) -> Result<Mat<Scalar>> {
        let w = constant_matrix(&self.omega[a])?;
        let g_inv = inverse(&self.metric())?;
        Ok(linalg::mat_mul(&w, &g_inv, &Scalar::zero()))
    }

    /// `I_1² = I_2² = I_3² = −1` and `I_1I_2 = I_3` (composition of maps).
    pub fn quaternion_relations(&self) -> Result<bool> {
        let m: Vec<Mat<Scalar>> = (0..3).map(|a| self.complex_structure(a)).collect::<Result<_>>()?;
        let zero = Scalar::zero();
        let minus_one: Mat<Scalar> =
            (0..4).map(|i| (0..4).map(|j| if i == j { -Scalar::one() } else { Scalar::zero() }).collect()).collect();
        let squares = m.iter().all(|x| linalg::mat_mul(x, x, &zero) == minus_one);
        // (I_1 I_2) X = X·M_2·M_1 in the row convention
        let prod = linalg::mat_mul(&m[1], &m[0], &zero);
        Ok(squares && prod == m[2])
    }

    /// Inverse of a nondegenerate constant 2-form as a bivector.
    pub fn inverse_bivector(&self, w: &MixedForm) -> Result<Multivector> {
        let inv = inverse(&constant_matrix(w)?)?;
        Ok(bivector_from_matrix(&inv.iter().map(|r| r.iter().cloned().map(Poly::constant).collect()).collect::<Vec<_>>()))
    }

    /// `σ_1 = ¼(ω_2^{-1} − iω_3^{-1})`.
    pub fn sigma1(&self) -> Result<Multivector> {
        let a = self.inverse_bivector(&self.omega[1])?;
        let b = self.inverse_bivector(&self.omega[2])?;
        Ok(a.sub(&b.scale(&Scalar::i())).scale(&Scalar::from_frac(1, 4)))
    }

    /// `Ω(t) = Ω_1 + 2itω_1 + t²Ω̄_1` with `t` the model's parameter.
    pub fn twistor_family(&self) -> MixedForm {
        self.big_omega.add(&self.twistor_beta())
    }

    /// `β(t) = 2itω_1 + t²Ω̄_1`.
    pub fn twistor_beta(&self) -> MixedForm {
        let t = Poly::var(self.model.t_var());
        let two_i = Scalar::gauss((0, 1), (2, 1));
        self.omega[0].scale(&two_i).mul_poly(&t).add(&self.big_omega_bar().mul_poly(&t.mul(&t)))
    }
}

impl Default for FlatHyperKahler {
    fn default() -> Self {
        Self::new()
    }
}

/// Matrix of a 2-form with constant coefficients.
pub fn constant_matrix(w: &MixedForm) -> Result<Mat<Scalar>> {
    let m = form_matrix(w);
    m.iter()
        .map(|r| {
            r.iter()
                .map(|p| {
                    if p.is_constant() {
                        Ok(p.constant_term())
                    } else {
                        Err(Error::Precondition("expected constant coefficients".into()))
                    }
                })
                .collect()
        })
        .collect()
}

/// Exact inverse of a square scalar matrix.
pub fn inverse(m: &Mat<Scalar>) -> Result<Mat<Scalar>> {
    let n = m.len();
    let zero = Scalar::zero();
    let mut inv = vec![vec![zero.clone(); n]; n];
    for col in 0..n {
        let e = linalg::unit_vec(n, col, &zero);
        let x = linalg::solve(m, &e, &zero)?.ok_or_else(|| Error::Singular("matrix is not invertible".into()))?;
        for r in 0..n {
            inv[r][col] = x[r].clone();
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternions_and_sigma() {
        let hk = FlatHyperKahler::new();
        assert!(hk.quaternion_relations().unwrap());
        let s = hk.sigma1().unwrap();
        assert_eq!(s, Multivector::monomial(4, &[0, 1], Poly::int(-1)));
        // σ_1 inverts Ω_1 on T*_{1,0}
        let sm = crate::exterior::forms::bivector_matrix(&s);
        let w = form_matrix(&hk.big_omega);
        for a in 0..2 {
            for b in 0..2 {
                let e: Poly = (0..4).fold(Poly::zero(), |acc, k| acc.add(&sm[a][k].mul(&w[k][b])));
                assert_eq!(e, if a == b { Poly::one() } else { Poly::zero() });
            }
        }
    }
}
