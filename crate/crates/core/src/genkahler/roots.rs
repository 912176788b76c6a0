//! Real roots of rational polynomials nearest the origin, isolated with Sturm
//! sequences and bisection in exact arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Ascending coefficients, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct RatPoly(pub Vec<BigRational>);

impl RatPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        RatPoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.0.iter().enumerate().skip(1).map(|(k, c)| c * BigRational::from_integer(BigInt::from(k))).collect())
    }

    /// `p(−x)`.
    pub fn reflect(&self) -> Self {
        Self::new(self.0.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect())
    }

    fn neg(&self) -> Self {
        RatPoly(self.0.iter().map(|c| -c).collect())
    }

    fn rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.0[dd].clone();
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let q = &r[k] / &lead;
            for (j, c) in d.0.iter().enumerate() {
                let v = &r[k - dd + j] - &q * c;
                r[k - dd + j] = v;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Self::new(r)
    }

    fn quot(&self, d: &Self) -> Self {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.0[dd].clone();
        let mut r = self.0.clone();
        let Some(deg) = self.degree() else { return RatPoly(vec![]) };
        if deg < dd {
            return RatPoly(vec![]);
        }
        let mut q = vec![BigRational::zero(); deg - dd + 1];
        for k in (dd..=deg).rev() {
            let c = &r[k] / &lead;
            for (j, dc) in d.0.iter().enumerate() {
                let v = &r[k - dd + j] - &c * dc;
                r[k - dd + j] = v;
            }
            q[k - dd] = c;
        }
        Self::new(q)
    }

    fn monic(&self) -> Self {
        match self.0.last() {
            Some(l) => RatPoly(self.0.iter().map(|c| c / l).collect()),
            None => self.clone(),
        }
    }
}

pub fn gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y);
        x = y;
        y = r;
    }
    x.monic()
}

fn sturm(p: &RatPoly) -> Vec<RatPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq[seq.len() - 1].is_zero() {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq.retain(|q| !q.is_zero());
    seq
}

fn sign_changes(seq: &[RatPoly], x: &BigRational) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|q| {
            let v = q.eval(x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct roots in `(a, b]`.
fn count(seq: &[RatPoly], a: &BigRational, b: &BigRational) -> usize {
    sign_changes(seq, a).saturating_sub(sign_changes(seq, b))
}

/// The smallest positive real root lies in `(lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootBracket {
    pub lo: BigRational,
    pub hi: BigRational,
}

/// Real roots of `p` nearest `0` on either side. `p(0)` must be nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct NearestRoots {
    pub positive: Option<RootBracket>,
    /// Bracket of `−r` for the largest negative root `r`.
    pub negative: Option<RootBracket>,
}

fn smallest_positive(p: &RatPoly, steps: u32) -> Option<RootBracket> {
    let deg = p.degree()?;
    if deg == 0 {
        return None;
    }
    let sq = p.quot(&gcd(p, &p.derivative()));
    let seq = sturm(&sq);
    let lead = sq.0.last()?.abs();
    // Cauchy bound
    let bound = BigRational::one() + sq.0.iter().map(|c| c.abs() / &lead).fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    let zero = BigRational::zero();
    if count(&seq, &zero, &bound) == 0 {
        return None;
    }
    let (mut lo, mut hi) = (zero.clone(), bound);
    let two = BigRational::from_integer(BigInt::from(2));
    for _ in 0..steps {
        let mid = (&lo + &hi) / &two;
        if count(&seq, &zero, &mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(RootBracket { lo, hi })
}

pub fn nearest_roots(p: &RatPoly, steps: u32) -> NearestRoots {
    NearestRoots { positive: smallest_positive(p, steps), negative: smallest_positive(&p.reflect(), steps) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn brackets_contain_the_roots() {
        // (t − 1/3)(t + 2)² (t − 5)
        let mut p = RatPoly::new(vec![r(-1, 3), r(1, 1)]);
        for f in [vec![r(2, 1), r(1, 1)], vec![r(2, 1), r(1, 1)], vec![r(-5, 1), r(1, 1)]] {
            let mut c = vec![BigRational::zero(); p.0.len() + 1];
            for (i, a) in p.0.iter().enumerate() {
                for (j, b) in f.iter().enumerate() {
                    c[i + j] += a * b;
                }
            }
            p = RatPoly::new(c);
        }
        let nr = nearest_roots(&p, 40);
        let pos = nr.positive.unwrap();
        assert!(pos.lo < r(1, 3) && r(1, 3) <= pos.hi);
        let neg = nr.negative.unwrap();
        assert!(neg.lo < r(2, 1) && r(2, 1) <= neg.hi);
    }

    #[test]
    fn no_real_roots() {
        let p = RatPoly::new(vec![r(1, 1), r(0, 1), r(1, 1)]);
        assert_eq!(nearest_roots(&p, 10), NearestRoots { positive: None, negative: None });
    }
}
