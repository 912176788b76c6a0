//! Exact linear algebra over a [`Coeff`] ring.
//!
//! Matrices are row-major `Vec<Vec<C>>`. Subspaces are given by lists of
//! spanning vectors. Over truncated series only unit pivots are used; if the
//! remaining block is nonzero but has no unit, the rank is not constant near
//! `t = 0` and a [`Error::Degenerate`] is raised.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ring::Coeff;

pub type Mat<C> = Vec<Vec<C>>;

#[derive(Clone, Debug)]
pub struct Echelon<C> {
    /// Reduced rows (pivot rows first).
    pub rows: Mat<C>,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
}

impl<C: Coeff> Echelon<C> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Reduced row echelon form with unit pivots.
pub fn echelon<C: Coeff>(m: &Mat<C>) -> Result<Echelon<C>> {
    let mut rows = m.clone();
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut col_done = vec![false; ncols];
    while r < nrows {
        // choose any unit in the remaining block, scanning columns left to right
        let mut found = None;
        'search: for c in 0..ncols {
            if col_done[c] {
                continue;
            }
            for (i, row) in rows.iter().enumerate().skip(r) {
                if let Some(inv) = row[c].unit_inverse() {
                    found = Some((i, c, inv));
                    break 'search;
                }
            }
        }
        let Some((i, c, inv)) = found else {
            let rest_zero = rows.iter().skip(r).all(|row| row.iter().all(Coeff::is_zero));
            if rest_zero {
                break;
            }
            return Err(Error::Degenerate("rank drops at the base point of the series ring".into()));
        };
        rows.swap(r, i);
        let pr: Vec<C> = rows[r].iter().map(|x| x.mul(&inv)).collect();
        rows[r] = pr;
        for k in 0..nrows {
            if k == r || rows[k][c].is_zero() {
                continue;
            }
            let f = rows[k][c].clone();
            for j in 0..ncols {
                if rows[r][j].is_zero() {
                    continue;
                }
                let v = rows[k][j].sub(&f.mul(&rows[r][j]));
                rows[k][j] = v;
            }
        }
        col_done[c] = true;
        pivots.push(c);
        r += 1;
    }
    Ok(Echelon { rows, pivots })
}

pub fn rank<C: Coeff>(m: &Mat<C>) -> Result<usize> {
    if m.is_empty() {
        return Ok(0);
    }
    Ok(echelon(m)?.rank())
}

/// Basis of `{x : m x = 0}`.
pub fn kernel<C: Coeff>(m: &Mat<C>, ncols: usize, zero: &C) -> Result<Vec<Vec<C>>> {
    if m.is_empty() {
        return Ok((0..ncols).map(|j| unit_vec(ncols, j, zero)).collect());
    }
    let e = echelon(m)?;
    let free: Vec<usize> = (0..ncols).filter(|c| !e.pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut x = vec![zero.clone(); ncols];
        x[f] = zero.one_like();
        for (r, &p) in e.pivots.iter().enumerate() {
            x[p] = e.rows[r][f].neg();
        }
        basis.push(x);
    }
    Ok(basis)
}

pub fn unit_vec<C: Coeff>(n: usize, j: usize, zero: &C) -> Vec<C> {
    let mut v = vec![zero.clone(); n];
    v[j] = zero.one_like();
    v
}

/// Matrix whose columns are the given vectors.
pub fn columns<C: Coeff>(vecs: &[Vec<C>], len: usize) -> Mat<C> {
    (0..len).map(|i| vecs.iter().map(|v| v[i].clone()).collect()).collect()
}

/// Dimension of the span of a list of vectors.
pub fn span_rank<C: Coeff>(vecs: &[Vec<C>]) -> Result<usize> {
    if vecs.is_empty() {
        return Ok(0);
    }
    // vectors as rows: same rank
    rank(&vecs.to_vec())
}

/// An independent subset spanning the same space (rows of the echelon form).
pub fn span_basis<C: Coeff>(vecs: &[Vec<C>]) -> Result<Vec<Vec<C>>> {
    if vecs.is_empty() {
        return Ok(vec![]);
    }
    let e = echelon(&vecs.to_vec())?;
    Ok(e.rows.into_iter().take(e.pivots.len()).collect())
}

pub fn span_equal<C: Coeff>(a: &[Vec<C>], b: &[Vec<C>]) -> Result<bool> {
    let ra = span_rank(a)?;
    let rb = span_rank(b)?;
    if ra != rb {
        return Ok(false);
    }
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    Ok(span_rank(&both)? == ra)
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span<C: Coeff>(basis: &[Vec<C>], v: &[C]) -> Result<bool> {
    let r = span_rank(basis)?;
    let mut both = basis.to_vec();
    both.push(v.to_vec());
    Ok(span_rank(&both)? == r)
}

/// Basis of `span(a) ∩ span(b)`.
pub fn intersect<C: Coeff>(a: &[Vec<C>], b: &[Vec<C>], zero: &C) -> Result<Vec<Vec<C>>> {
    if a.is_empty() || b.is_empty() {
        return Ok(vec![]);
    }
    let len = a[0].len();
    let na = a.len();
    let nb = b.len();
    // rows i: Σ_k x_k a_k[i] − Σ_l y_l b_l[i] = 0
    let m: Mat<C> = (0..len)
        .map(|i| a.iter().map(|v| v[i].clone()).chain(b.iter().map(|v| v[i].neg())).collect())
        .collect();
    let ker = kernel(&m, na + nb, zero)?;
    let mut out = Vec::new();
    for x in ker {
        let mut v = vec![zero.clone(); len];
        for (k, ak) in a.iter().enumerate() {
            if x[k].is_zero() {
                continue;
            }
            for i in 0..len {
                v[i] = v[i].add(&x[k].mul(&ak[i]));
            }
        }
        out.push(v);
    }
    span_basis(&out)
}

/// A solution of `m x = b`, if one exists.
pub fn solve<C: Coeff>(m: &Mat<C>, b: &[C], zero: &C) -> Result<Option<Vec<C>>> {
    let ncols = m.first().map_or(0, |r| r.len());
    let aug: Mat<C> = m.iter().zip(b).map(|(r, bi)| r.iter().cloned().chain(std::iter::once(bi.clone())).collect()).collect();
    let e = echelon(&aug)?;
    if e.pivots.contains(&ncols) {
        return Ok(None);
    }
    let mut x = vec![zero.clone(); ncols];
    for (r, &p) in e.pivots.iter().enumerate() {
        x[p] = e.rows[r][ncols].clone();
    }
    Ok(Some(x))
}

/// Determinant by Laplace expansion along rows with memoized column subsets.
pub fn det<C: Coeff>(m: &Mat<C>, zero: &C) -> C {
    let n = m.len();
    let mut memo: HashMap<u32, C> = HashMap::new();
    det_rec(m, 0, (1u32 << n) - 1, zero, &mut memo)
}

fn det_rec<C: Coeff>(m: &Mat<C>, row: usize, cols: u32, zero: &C, memo: &mut HashMap<u32, C>) -> C {
    if cols == 0 {
        return zero.one_like();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = zero.clone();
    let mut k = 0;
    for c in 0..32 {
        if cols & (1 << c) == 0 {
            continue;
        }
        if !m[row][c].is_zero() {
            let minor = det_rec(m, row + 1, cols & !(1 << c), zero, memo);
            let term = m[row][c].mul(&minor);
            acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        k += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

pub fn mat_mul<C: Coeff>(a: &Mat<C>, b: &Mat<C>, zero: &C) -> Mat<C> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = zero.clone();
                    for (l, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[l][j].is_zero() {
                            acc = acc.add(&x.mul(&b[l][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Leading principal minors of a square matrix.
pub fn leading_minors<C: Coeff>(m: &Mat<C>, zero: &C) -> Vec<C> {
    (1..=m.len())
        .map(|k| {
            let sub: Mat<C> = m.iter().take(k).map(|r| r.iter().take(k).cloned().collect()).collect();
            det(&sub, zero)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn kernel_and_rank() {
        let m = vec![vec![s(1), s(2), s(3)], vec![s(2), s(4), s(6)]];
        assert_eq!(rank(&m).unwrap(), 1);
        let k = kernel(&m, 3, &Scalar::zero()).unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            let r: Scalar = (0..3).fold(Scalar::zero(), |acc, j| &acc + &(&m[0][j] * &v[j]));
            assert!(r.is_zero());
        }
    }

    #[test]
    fn spans() {
        let a = vec![vec![s(1), s(0), s(0)], vec![s(0), s(1), s(0)]];
        let b = vec![vec![s(1), s(1), s(0)], vec![s(0), s(0), s(1)]];
        let i = intersect(&a, &b, &Scalar::zero()).unwrap();
        assert_eq!(i.len(), 1);
        assert!(in_span(&a, &i[0]).unwrap() && in_span(&b, &i[0]).unwrap());
        assert!(span_equal(&a, &[vec![s(1), s(1), s(0)], vec![s(1), s(-1), s(0)]]).unwrap());
        let m = vec![vec![s(2), s(1)], vec![s(1), s(3)]];
        assert_eq!(det(&m, &Scalar::zero()), s(5));
        let x = solve(&m, &[s(3), s(4)], &Scalar::zero()).unwrap().unwrap();
        assert_eq!(x, vec![s(1), s(1)]);
    }
}
