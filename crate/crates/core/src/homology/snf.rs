//! Smith normal form over the integers.
//!
//! Elimination runs on `i64` with checked arithmetic and restarts on
//! `BigInt` when an entry would overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntegerMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Panics on a dimension mismatch.
    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// Nonzero invariant factors `d_1 | d_2 | …`, all positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    pub rank: usize,
    #[serde(serialize_with = "as_strings")]
    pub factors: Vec<BigInt>,
}

fn as_strings<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl SmithForm {
    /// Factors greater than one, i.e. the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

trait Entry: Clone + PartialEq + Sized {
    fn vanishes(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn quot(&self, p: &Self) -> Option<Self>;
    /// `self − q·p`, `None` on overflow.
    fn sub_mul(&self, q: &Self, p: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quot(&self, p: &Self) -> Option<Self> {
        self.checked_div(*p)
    }
    fn sub_mul(&self, q: &Self, p: &Self) -> Option<Self> {
        q.checked_mul(*p).and_then(|x| self.checked_sub(x))
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn quot(&self, p: &Self) -> Option<Self> {
        Some(self / p)
    }
    fn sub_mul(&self, q: &Self, p: &Self) -> Option<Self> {
        Some(self - q * p)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Reduces to a diagonal by unimodular row and column operations; returns the
/// nonzero diagonal, or `None` if an `i64` entry overflowed.
fn diagonalize<T: Entry>(mut a: Vec<Vec<T>>, cols: usize) -> Option<Vec<T>> {
    let rows = a.len();
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest(&a, t..rows, t..cols) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].vanishes() {
                    continue;
                }
                let q = a[i][t].quot(&a[t][t])?;
                for j in t..cols {
                    a[i][j] = a[i][j].sub_mul(&q, &a[t][j])?;
                }
                clean &= a[i][t].vanishes();
            }
            for j in t + 1..cols {
                if a[t][j].vanishes() {
                    continue;
                }
                let q = a[t][j].quot(&a[t][t])?;
                for row in a.iter_mut().skip(t) {
                    row[j] = row[j].sub_mul(&q, &row[t])?;
                }
                clean &= a[t][j].vanishes();
            }
            if clean {
                break;
            }
            // a remainder is smaller than the pivot; move it into place
            let in_col = smallest(&a, t..rows, t..t + 1);
            let in_row = smallest(&a, t..t + 1, t..cols);
            let (pi, pj) = match (in_col, in_row) {
                (Some(c), Some(r)) if a[r.0][r.1].abs_lt(&a[c.0][c.1]) => r,
                (Some(c), _) => c,
                (None, Some(r)) => r,
                (None, None) => unreachable!("pivot vanished"),
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
        }
        diagonal.push(a[t][t].clone());
        t += 1;
    }
    Some(diagonal)
}

fn smallest<T: Entry>(
    a: &[Vec<T>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j].vanishes() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].abs_lt(&a[bi][bj])) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn nonzero_diagonal(m: &IntegerMatrix) -> Vec<BigInt> {
    let small: Option<Vec<Vec<i64>>> = (0..m.rows)
        .map(|r| (0..m.cols).map(|c| m.get(r, c).to_i64()).collect())
        .collect();
    small
        .and_then(|a| diagonalize(a, m.cols))
        .map(|d| d.iter().map(Entry::to_big).collect())
        .unwrap_or_else(|| {
            let a = (0..m.rows)
                .map(|r| (0..m.cols).map(|c| m.get(r, c).clone()).collect())
                .collect();
            diagonalize(a, m.cols).expect("bigint elimination cannot overflow")
        })
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let mut factors: Vec<BigInt> = nonzero_diagonal(m).iter().map(Signed::abs).collect();
    // (d_i, d_j) -> (gcd, lcm) turns any diagonal into the divisibility chain
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            let (g, l) = (factors[i].gcd(&factors[j]), factors[i].lcm(&factors[j]));
            factors[i] = g;
            factors[j] = l;
        }
    }
    SmithForm {
        rank: factors.len(),
        factors,
    }
}

/// Rank over `ℚ`, skipping the divisibility fix-up.
pub fn rank(m: &IntegerMatrix) -> usize {
    nonzero_diagonal(m).len()
}
