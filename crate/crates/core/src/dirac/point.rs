//! Dirac structures evaluated at a point: subspaces of `ℂ^{2d}` (or of the
//! free module over truncated series), stacked as `(vector part, covector part)`.

use crate::error::{Error, Result};
use crate::linalg;
use crate::ring::Coeff;

#[derive(Clone, Debug)]
pub struct PointDirac<C> {
    /// Half dimension `d`: vectors have length `2d`.
    pub dim: usize,
    pub basis: Vec<Vec<C>>,
    zero: C,
}

impl<C: Coeff> PointDirac<C> {
    pub fn new(dim: usize, vecs: Vec<Vec<C>>, zero: C) -> Result<Self> {
        let basis = linalg::span_basis(&vecs)?;
        Ok(PointDirac { dim, basis, zero })
    }

    pub fn zero_elem(&self) -> &C {
        &self.zero
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `T` as a subspace.
    pub fn tangent(dim: usize, zero: C) -> Self {
        let vecs = (0..dim).map(|a| linalg::unit_vec(2 * dim, a, &zero)).collect();
        PointDirac { dim, basis: vecs, zero }
    }

    /// `T*` as a subspace.
    pub fn cotangent(dim: usize, zero: C) -> Self {
        let vecs = (0..dim).map(|a| linalg::unit_vec(2 * dim, dim + a, &zero)).collect();
        PointDirac { dim, basis: vecs, zero }
    }

    pub fn equals(&self, o: &Self) -> Result<bool> {
        linalg::span_equal(&self.basis, &o.basis)
    }

    pub fn contains(&self, v: &[C]) -> Result<bool> {
        linalg::in_span(&self.basis, v)
    }

    pub fn intersect(&self, o: &Self) -> Result<Self> {
        let basis = linalg::intersect(&self.basis, &o.basis, &self.zero)?;
        Ok(PointDirac { dim: self.dim, basis, zero: self.zero.clone() })
    }

    pub fn intersect_tangent(&self) -> Result<Self> {
        self.intersect(&Self::tangent(self.dim, self.zero.clone()))
    }

    pub fn intersect_cotangent(&self) -> Result<Self> {
        self.intersect(&Self::cotangent(self.dim, self.zero.clone()))
    }

    /// Vector parts of the basis.
    pub fn vector_parts(&self) -> Vec<Vec<C>> {
        self.basis.iter().map(|v| v[..self.dim].to_vec()).collect()
    }

    /// Covector parts of the basis.
    pub fn covector_parts(&self) -> Vec<Vec<C>> {
        self.basis.iter().map(|v| v[self.dim..].to_vec()).collect()
    }

    /// `2⟨u, v⟩` for stacked vectors.
    pub fn pairing2(&self, u: &[C], v: &[C]) -> C {
        let d = self.dim;
        let mut acc = self.zero.clone();
        for a in 0..d {
            acc = acc.add(&u[d + a].mul(&v[a])).add(&v[d + a].mul(&u[a]));
        }
        acc
    }

    pub fn is_isotropic(&self) -> bool {
        self.basis.iter().all(|u| self.basis.iter().all(|v| self.pairing2(u, v).is_zero()))
    }

    /// `λL = {X + λξ}`.
    pub fn scale(&self, lambda: &C) -> Self {
        let d = self.dim;
        let basis = self
            .basis
            .iter()
            .map(|v| v.iter().enumerate().map(|(k, c)| if k < d { c.clone() } else { c.mul(lambda) }).collect())
            .collect();
        PointDirac { dim: d, basis, zero: self.zero.clone() }
    }

    /// `L1 + L2 = {X + α + β : X + α ∈ L1, X + β ∈ L2}`.
    pub fn sum(&self, o: &Self) -> Result<Self> {
        let d = self.dim;
        let k = self.basis.len();
        let cols: Vec<&Vec<C>> = self.basis.iter().chain(o.basis.iter()).collect();
        let m: Vec<Vec<C>> = (0..d)
            .map(|r| cols.iter().enumerate().map(|(j, c)| if j < k { c[r].clone() } else { c[r].neg() }).collect())
            .collect();
        let ker = linalg::kernel(&m, cols.len(), &self.zero)?;
        let vecs = ker
            .iter()
            .map(|x| {
                let mut v = vec![self.zero.clone(); 2 * d];
                for (j, c) in cols.iter().enumerate() {
                    if x[j].is_zero() {
                        continue;
                    }
                    for a in 0..2 * d {
                        // the vector part is counted once, from the first summand
                        if j >= k && a < d {
                            continue;
                        }
                        v[a] = v[a].add(&x[j].mul(&c[a]));
                    }
                }
                v
            })
            .collect();
        Self::new(d, vecs, self.zero.clone())
    }

    /// Require full rank `d`.
    pub fn require_maximal(&self, what: &str) -> Result<()> {
        if self.rank() != self.dim {
            return Err(Error::Degenerate(format!("{what} has rank {} instead of {} at this point", self.rank(), self.dim)));
        }
        Ok(())
    }
}
