//! Coordinate layout of the flat model space.
//!
//! A complex model `ℂⁿ` uses variables `z_1..z_n, z̄_1..z̄_n, t`; a real model
//! `ℝᵐ` uses `x_1..x_m, t`. Directions of tangent and cotangent frames use the
//! same indices as the variables, so direction `a` is `∂/∂(var a)`. Frames on
//! the total space of a family (`M × ℝ`) add the `t` direction as the last one.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::poly::{Poly, MAX_VARS};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "dim")]
pub enum Model {
    /// `ℂⁿ` with holomorphic coordinates and their conjugates.
    Complex(usize),
    /// `ℝᵐ` with real coordinates.
    Real(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirKind {
    Holo,
    Anti,
    Real,
    Param,
}

impl Model {
    pub fn complex(n: usize) -> Self {
        assert!(2 * n < MAX_VARS, "complex dimension too large");
        Model::Complex(n)
    }

    pub fn real(m: usize) -> Self {
        assert!(m < MAX_VARS, "real dimension too large");
        Model::Real(m)
    }

    /// Number of coordinate directions (real dimension of the model).
    pub fn coords(&self) -> usize {
        match *self {
            Model::Complex(n) => 2 * n,
            Model::Real(m) => m,
        }
    }

    /// Holomorphic dimension, zero for real models.
    pub fn n(&self) -> usize {
        match *self {
            Model::Complex(n) => n,
            Model::Real(_) => 0,
        }
    }

    pub fn is_complex(&self) -> bool {
        matches!(self, Model::Complex(_))
    }

    pub fn t_var(&self) -> usize {
        self.coords()
    }

    pub fn dir_kind(&self, a: usize) -> DirKind {
        let c = self.coords();
        match *self {
            _ if a == c => DirKind::Param,
            Model::Complex(n) if a < n => DirKind::Holo,
            Model::Complex(_) => DirKind::Anti,
            Model::Real(_) => DirKind::Real,
        }
    }

    /// Index of the conjugate direction.
    pub fn conj_dir(&self, a: usize) -> usize {
        match *self {
            Model::Complex(n) if a < n => a + n,
            Model::Complex(n) if a < 2 * n => a - n,
            _ => a,
        }
    }

    pub fn conj_poly(&self, p: &Poly) -> Poly {
        p.conj(self.n())
    }

    pub fn holo_mask(&self) -> u32 {
        (1u32 << self.n()) - 1
    }

    pub fn anti_mask(&self) -> u32 {
        self.holo_mask() << self.n()
    }

    pub fn var_names(&self) -> Vec<String> {
        let mut names = Vec::new();
        match *self {
            Model::Complex(n) => {
                names.extend((1..=n).map(|i| format!("z{i}")));
                names.extend((1..=n).map(|i| format!("zb{i}")));
            }
            Model::Real(m) => names.extend((1..=m).map(|i| format!("x{i}"))),
        }
        names.push("t".into());
        names
    }

    pub fn dir_names(&self) -> Vec<String> {
        self.var_names()
    }

    pub fn render(&self, p: &Poly) -> String {
        let names = self.var_names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        p.render(&refs)
    }

    /// A random physical point: `z̄` is the conjugate of `z`. Coordinates are
    /// small Gaussian rationals (real rationals in real models).
    pub fn random_point(&self, rng: &mut ChaCha8Rng) -> Point {
        let rat = |rng: &mut ChaCha8Rng| {
            let num: i64 = rng.gen_range(-7..=7);
            let den: i64 = rng.gen_range(1..=5);
            (num, den)
        };
        let mut vals = vec![Scalar::zero(); self.coords()];
        match *self {
            Model::Complex(n) => {
                for i in 0..n {
                    let z = Scalar::gauss(rat(rng), rat(rng));
                    vals[i + n] = z.conj();
                    vals[i] = z;
                }
            }
            Model::Real(m) => {
                for v in vals.iter_mut().take(m) {
                    *v = Scalar::from_frac(rat(rng).0, rat(rng).1);
                }
            }
        }
        Point { coords: vals }
    }
}

/// A physical sample point (values of every coordinate variable; `t` free).
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub coords: Vec<Scalar>,
}

impl Point {
    /// Substitution vector for [`Poly::substitute`], optionally fixing `t`.
    pub fn subst(&self, t: Option<&Scalar>) -> Vec<Option<Scalar>> {
        let mut v: Vec<Option<Scalar>> = self.coords.iter().cloned().map(Some).collect();
        v.push(t.cloned());
        v
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn layout() {
        let m = Model::complex(2);
        assert_eq!(m.coords(), 4);
        assert_eq!(m.t_var(), 4);
        assert_eq!(m.dir_kind(1), DirKind::Holo);
        assert_eq!(m.dir_kind(3), DirKind::Anti);
        assert_eq!(m.dir_kind(4), DirKind::Param);
        assert_eq!(m.conj_dir(0), 2);
        assert_eq!(m.conj_dir(3), 1);
        assert_eq!(m.var_names(), ["z1", "z2", "zb1", "zb2", "t"]);
        let r = Model::real(2);
        assert_eq!(r.conj_dir(1), 1);
        assert_eq!(r.dir_kind(2), DirKind::Param);
    }

    #[test]
    fn points_are_physical() {
        let m = Model::complex(2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = m.random_point(&mut rng);
        assert_eq!(p.coords[2], p.coords[0].conj());
        assert_eq!(p.coords[3], p.coords[1].conj());
    }
}
