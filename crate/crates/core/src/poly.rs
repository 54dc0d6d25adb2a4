//! Dense univariate integer polynomials in `t`, enough for Hilbert series.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

/// Coefficients ascending by degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Poly(Vec<i64>);

impl Poly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![1])
    }

    /// `c · t^k`
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "t")?,
                (1, m) => write!(f, "{m}t")?,
                (k, 1) => write!(f, "t^{k}")?,
                (k, m) => write!(f, "{m}t^{k}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0i64; self.0.len() + rhs.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(Poly::new(vec![1, 5, -4]).to_string(), "1 + 5t - 4t^2");
        assert_eq!(Poly::new(vec![1, 1]).to_string(), "1 + t");
        assert_eq!(
            Poly::new(vec![1, 19, 19, 1]).to_string(),
            "1 + 19t + 19t^2 + t^3"
        );
        assert_eq!(Poly::new(vec![0, -1, 0, 0]).to_string(), "-t");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn arithmetic() {
        let one_minus_t = Poly::new(vec![1, -1]);
        assert_eq!(one_minus_t.pow(2), Poly::new(vec![1, -2, 1]));
        let p = Poly::new(vec![1, 2, 3]);
        assert_eq!(&(&p - &p), &Poly::zero());
        assert_eq!(&p + &(-&p), Poly::zero());
        assert_eq!(Poly::monomial(3, 2).degree(), Some(2));
        assert!(Poly::new(vec![1, 4, 1]).is_palindromic());
        assert!(!Poly::new(vec![1, 4, 2]).is_palindromic());
    }
}
