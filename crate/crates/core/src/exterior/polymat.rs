//! Square matrices of polynomials, used for 2-forms, bivectors and their composites.

use crate::poly::Poly;

pub type PolyMat = Vec<Vec<Poly>>;

pub fn zeros(n: usize) -> PolyMat {
    vec![vec![Poly::zero(); n]; n]
}

pub fn identity(n: usize) -> PolyMat {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Poly::one();
    }
    m
}

pub fn mul(a: &PolyMat, b: &PolyMat, trunc: Option<(usize, u32)>) -> PolyMat {
    let n = a.len();
    let k = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    let mut r = vec![vec![Poly::zero(); cols]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..cols {
                if b[l][j].is_zero() {
                    continue;
                }
                let p = a[i][l].mul_trunc(&b[l][j], trunc);
                r[i][j].add_assign(&p);
            }
        }
    }
    r
}

pub fn add(a: &PolyMat, b: &PolyMat) -> PolyMat {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.add(y)).collect()).collect()
}

pub fn neg(a: &PolyMat) -> PolyMat {
    map(a, Poly::neg)
}

pub fn sub(a: &PolyMat, b: &PolyMat) -> PolyMat {
    add(a, &neg(b))
}

pub fn map(a: &PolyMat, f: impl Fn(&Poly) -> Poly) -> PolyMat {
    a.iter().map(|r| r.iter().map(&f).collect()).collect()
}

pub fn transpose(a: &PolyMat) -> PolyMat {
    let n = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn is_zero(a: &PolyMat) -> bool {
    a.iter().all(|r| r.iter().all(Poly::is_zero))
}

/// Pad a square matrix with zero rows and columns up to size `n`.
pub fn pad(a: &PolyMat, n: usize) -> PolyMat {
    let mut m = zeros(n);
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            m[i][j] = x.clone();
        }
    }
    m
}

/// Exact determinant by cofactor expansion (small sizes only).
pub fn det(a: &PolyMat) -> Poly {
    let n = a.len();
    let cols: Vec<usize> = (0..n).collect();
    det_rec(a, 0, &cols)
}

fn det_rec(a: &PolyMat, row: usize, cols: &[usize]) -> Poly {
    if cols.is_empty() {
        return Poly::one();
    }
    let mut r = Poly::zero();
    for (k, &c) in cols.iter().enumerate() {
        if a[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(a, row + 1, &rest);
        let term = a[row][c].mul(&minor);
        if k % 2 == 0 {
            r.add_assign(&term);
        } else {
            r.add_assign(&term.neg());
        }
    }
    r
}
