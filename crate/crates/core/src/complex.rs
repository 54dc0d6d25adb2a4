//! The simplicial complex `Δ([n])` on the prime powers `<= n`.
//!
//! A set of pairwise coprime prime powers is a face when its product is
//! `<= n`, so faces correspond to the integers `1..=n` and are stored as such.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_integer::Integer;
use serde::Serialize;

use crate::arith::{self, Sieve};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// `Δ([n])` or one of its induced subcomplexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: u64,
    vertices: Vec<u64>,
    /// `faces[c]` holds the faces with `c` vertices, ascending.
    faces: Vec<Vec<u64>>,
}

/// Prime-power components of `k`, ascending by value.
pub(crate) fn split(mut k: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            let mut q = 1;
            while k.is_multiple_of(p) {
                k /= p;
                q *= p;
            }
            out.push(q);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if k > 1 {
        out.push(k);
    }
    out.sort_unstable();
    out
}

impl SimplicialComplex {
    pub fn build(sieve: &Sieve, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("the complex needs n >= 1"));
        }
        sieve.check(n)?;
        let mut faces: Vec<Vec<u64>> = vec![Vec::new(); arith::ell(n as u128) as usize + 1];
        for k in 1..=n {
            faces[sieve.omega(k) as usize].push(k);
        }
        Ok(SimplicialComplex {
            n,
            vertices: sieve.prime_powers_upto(n).to_vec(),
            faces,
        })
    }

    /// `Δ_U`: the faces contained in `U`.
    pub fn induced(&self, u: &[u64]) -> Result<Self> {
        let mut vertices = u.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        if let Some(&bad) = vertices
            .iter()
            .find(|v| self.vertices.binary_search(v).is_err())
        {
            return Err(Error::NotAVertex(bad));
        }
        let mut faces: Vec<Vec<u64>> = vec![Vec::new()];
        collect_faces(&vertices, self.n, 0, 1, 0, &mut faces);
        for level in &mut faces {
            level.sort_unstable();
        }
        Ok(SimplicialComplex {
            n: self.n,
            vertices,
            faces,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    /// Faces with `card` vertices, as integers.
    pub fn faces(&self, card: usize) -> &[u64] {
        self.faces.get(card).map_or(&[], Vec::as_slice)
    }

    /// All faces, grouped by cardinality starting from the empty face.
    pub fn face_levels(&self) -> &[Vec<u64>] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    /// `−1` for the complex whose only face is empty.
    pub fn dim(&self) -> i64 {
        self.faces.len() as i64 - 2
    }

    /// `(f_{−1}, f_0, …, f_{dim})`.
    pub fn f_vector(&self) -> Vec<u64> {
        self.faces.iter().map(|l| l.len() as u64).collect()
    }

    pub fn contains_face(&self, k: u64) -> bool {
        k >= 1
            && k <= self.n
            && split(k)
                .iter()
                .all(|q| self.vertices.binary_search(q).is_ok())
    }

    /// The vertices of the face `k`, ascending.
    pub fn vertex_set(&self, k: u64) -> Vec<u64> {
        split(k)
    }

    /// Faces without a coprime vertex extension staying `<= n`.
    pub fn facets(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .faces
            .iter()
            .flatten()
            .copied()
            .filter(|&k| {
                !self
                    .vertices
                    .iter()
                    .any(|&q| k.gcd(&q) == 1 && k.saturating_mul(q) <= self.n)
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Edges of the 1-skeleton as vertex pairs.
    pub fn edges(&self) -> Vec<(u64, u64)> {
        self.faces(2)
            .iter()
            .map(|&k| {
                let vs = split(k);
                (vs[0], vs[1])
            })
            .collect()
    }

    pub fn connectivity(&self) -> Connectivity {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn root(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        let index = |v: u64| self.vertices.binary_search(&v).expect("edge vertex");
        for (a, b) in self.edges() {
            let (ra, rb) = (root(&mut parent, index(a)), root(&mut parent, index(b)));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<u64>> = Default::default();
        for (a, &v) in self.vertices.iter().enumerate() {
            groups.entry(root(&mut parent, a)).or_default().push(v);
        }
        let mut components: Vec<Vec<u64>> = groups.into_values().collect();
        components.sort();
        let isolated = components
            .iter()
            .filter(|c| c.len() == 1)
            .map(|c| c[0])
            .collect();
        let big: Vec<Vec<u64>> = components.into_iter().filter(|c| c.len() > 1).collect();
        Connectivity {
            isolated,
            big_component: big.first().cloned().unwrap_or_default(),
            nontrivial_components: big.len(),
        }
    }

    pub fn summary(&self) -> ComplexSummary {
        ComplexSummary {
            n: self.n,
            vertices: self.vertices.clone(),
            facets: self.facets(),
        }
    }

    /// The 1-skeleton in Graphviz DOT.
    pub fn to_dot(&self) -> String {
        let mut out = format!("graph delta_{} {{\n", self.n);
        for v in &self.vertices {
            let _ = writeln!(out, "  {v};");
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  {a} -- {b};");
        }
        out.push_str("}\n");
        out
    }
}

fn collect_faces(
    vertices: &[u64],
    n: u64,
    start: usize,
    product: u64,
    card: usize,
    faces: &mut Vec<Vec<u64>>,
) {
    if faces.len() <= card {
        faces.push(Vec::new());
    }
    faces[card].push(product);
    for (a, &q) in vertices.iter().enumerate().skip(start) {
        if product.gcd(&q) == 1 {
            if let Some(next) = product.checked_mul(q).filter(|&x| x <= n) {
                collect_faces(vertices, n, a + 1, next, card + 1, faces);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexSummary {
    pub n: u64,
    pub vertices: Vec<u64>,
    pub facets: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    pub isolated: Vec<u64>,
    pub big_component: Vec<u64>,
    /// Components with more than one vertex; at most one for `Δ([n])`.
    pub nontrivial_components: usize,
}

pub fn connectivity(sieve: &Sieve, n: u64) -> Result<Connectivity> {
    Ok(SimplicialComplex::build(sieve, n)?.connectivity())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FHVectors {
    pub n: u64,
    pub f: Vec<u64>,
    pub h: Vec<i64>,
}

fn binom(a: i64, b: i64) -> i64 {
    if b < 0 || a < b {
        return 0;
    }
    let b = b.min(a - b);
    (0..b).fold(1i64, |acc, j| acc * (a - j) / (j + 1))
}

/// `h_k = Σ_{i<=k} (−1)^{k−i} C(ℓ−i, k−i) f_{i−1}` with `ℓ = dim + 1`.
pub fn h_from_f(f: &[u64]) -> Vec<i64> {
    let ell = f.len() as i64 - 1;
    (0..=ell)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binom(ell - i, k - i) * f[i as usize] as i64
                })
                .sum()
        })
        .collect()
}

/// Inverse transform: `f_{k−1} = Σ_{i<=k} C(ℓ−i, k−i) h_i`.
pub fn f_from_h(h: &[i64]) -> Vec<i64> {
    let ell = h.len() as i64 - 1;
    (0..=ell)
        .map(|k| (0..=k).map(|i| binom(ell - i, k - i) * h[i as usize]).sum())
        .collect()
}

pub fn f_h_vectors(sieve: &Sieve, n: u64) -> Result<FHVectors> {
    if n == 0 {
        return Err(Error::domain("f- and h-vectors need n >= 1"));
    }
    let f = sieve.pi_k(n)?;
    let h = h_from_f(&f);
    Ok(FHVectors { n, f, h })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    pub n: u64,
    /// `Σ f_{i−1} t^i`, the Hilbert series of the artinified ring.
    pub artinified: Poly,
    /// `Σ h_k t^k`, over `(1 − t)^ℓ`.
    pub numerator: Poly,
    pub denominator_exponent: u32,
}

impl HilbertSeries {
    /// Checks `ℂ[Δ](t) = ℂ[Δ̄](t/(1−t))` after clearing `(1−t)^ℓ`.
    pub fn froberg_identity_holds(&self) -> bool {
        let ell = self.denominator_exponent;
        let one_minus_t = Poly::new(vec![1, -1]);
        let lhs = self
            .artinified
            .coeffs()
            .iter()
            .enumerate()
            .fold(Poly::zero(), |acc, (i, &c)| {
                let term = &Poly::monomial(c, i) * &one_minus_t.pow(ell - i as u32);
                &acc + &term
            });
        lhs == self.numerator
    }

    /// `t ↦ t/(1−t)` applied to the artinified series.
    pub fn stanley_reisner_display(&self) -> String {
        match self.denominator_exponent {
            0 => self.numerator.to_string(),
            1 => format!("({})/(1-t)", self.numerator),
            e => format!("({})/(1-t)^{e}", self.numerator),
        }
    }
}

pub fn hilbert_series(sieve: &Sieve, n: u64) -> Result<HilbertSeries> {
    let fh = f_h_vectors(sieve, n)?;
    Ok(HilbertSeries {
        n,
        artinified: Poly::new(fh.f.iter().map(|&x| x as i64).collect()),
        numerator: Poly::new(fh.h.clone()),
        denominator_exponent: fh.f.len() as u32 - 1,
    })
}

/// A palindromic artinified Hilbert polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetricMatch {
    pub r: usize,
    pub n: u64,
    pub polynomial: Poly,
}

/// How an `r`-interval was settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntervalCheck {
    Scanned,
    /// `π′(lo) > π_{r−1}(hi − 1)`, so `f_0 != f_{r−2}` on the whole interval.
    Excluded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetricScan {
    pub matches: Vec<SymmetricMatch>,
    /// `(r, lo, hi, how)` with `lo <= n < hi`.
    pub intervals: Vec<(usize, u64, u64, IntervalCheck)>,
}

/// Scans `p_1⋯p_r <= n < p_{r+1} p_1⋯p_{r−1}` for `r <= r_max`, the range
/// where `ℓ(n) = r` and `π_r(n) = 1`, for palindromic `Σ π_i(n) t^i`.
pub fn symmetric_scan(sieve: &Sieve, r_max: usize) -> Result<SymmetricScan> {
    if r_max == 0 {
        return Err(Error::domain("symmetric scan needs r_max >= 1"));
    }
    let mut matches = Vec::new();
    let mut intervals = Vec::new();
    for r in 1..=r_max {
        let (lo, hi) = scan_interval(r)?;
        if hi - 1 <= sieve.limit() {
            let mut counts = vec![0u64; r + 1];
            for k in 1..lo {
                counts[sieve.omega(k) as usize] += 1;
            }
            for n in lo..hi {
                counts[sieve.omega(n) as usize] += 1;
                if counts.iter().eq(counts.iter().rev()) {
                    let coeffs = counts.iter().map(|&c| c as i64).collect();
                    matches.push(SymmetricMatch {
                        r,
                        n,
                        polynomial: Poly::new(coeffs),
                    });
                }
            }
            intervals.push((r, lo, hi, IntervalCheck::Scanned));
        } else {
            let low_powers = arith::prime_power_count(lo);
            let high_tail = count_omega_exact(sieve, hi - 1, r - 1)?;
            if low_powers <= high_tail {
                return Err(Error::domain(format!(
                    "r = {r}: interval [{lo}, {hi}) needs a sieve limit of at least {}",
                    hi - 1
                )));
            }
            intervals.push((r, lo, hi, IntervalCheck::Excluded));
        }
    }
    Ok(SymmetricScan { matches, intervals })
}

fn scan_interval(r: usize) -> Result<(u64, u64)> {
    let overflow = Error::Overflow("symmetric scan interval");
    let lo = arith::primorial(r).ok_or(overflow.clone())?;
    let next = *arith::FIRST_PRIMES.get(r).ok_or(overflow.clone())? as u128;
    let hi = arith::primorial(r - 1).ok_or(overflow.clone())? * next;
    let lo = u64::try_from(lo).map_err(|_| overflow.clone())?;
    let hi = u64::try_from(hi).map_err(|_| overflow)?;
    Ok((lo, hi))
}

/// `π_k(x)` by enumerating products of `k` prime powers with increasing
/// primes; only the sieve's primes up to `x / p_1⋯p_{k−1}` are touched.
pub fn count_omega_exact(sieve: &Sieve, x: u64, k: usize) -> Result<u64> {
    fn go(primes: &[u64], x: u64, start: usize, k: usize) -> u64 {
        if k == 0 {
            return 1;
        }
        let mut total = 0;
        for (a, &p) in primes.iter().enumerate().skip(start) {
            // smallest completion uses the next k primes
            let least = primes[a..]
                .iter()
                .take(k)
                .try_fold(1u64, |acc, &q| acc.checked_mul(q).filter(|&m| m <= x));
            if least.is_none() || primes.len() < a + k {
                break;
            }
            let mut q = p;
            loop {
                total += go(primes, x / q, a + 1, k - 1);
                match q.checked_mul(p) {
                    Some(next) if next <= x => q = next,
                    _ => break,
                }
            }
        }
        total
    }
    // the largest prime in such a product is at most x / p_1⋯p_{k−1}
    if k >= 1 {
        let least = arith::primorial(k - 1).ok_or(Error::Overflow("primorial"))?;
        sieve.check((x as u128 / least) as u64)?;
    }
    Ok(go(sieve.primes(), x, 0, k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct H2Row {
    pub n: u64,
    pub h2: i64,
    /// `ℓ(n) < ℓ(n + 1)`.
    pub ell_jump: bool,
    /// `h2(n − 1) < h2(n) > h2(n + 1)`.
    pub local_max: bool,
}

/// `h_2` of `Δ([n])` for `n_min <= n <= n_max`; zero while `ℓ(n) < 2`.
pub fn h2_scan(sieve: &Sieve, n_min: u64, n_max: u64) -> Result<Vec<H2Row>> {
    if n_min < 2 || n_max < n_min {
        return Err(Error::domain("h2 scan needs 2 <= n_min <= n_max"));
    }
    sieve.check(n_max + 1)?;
    let mut counts = vec![0i64; 3];
    let h2 = |counts: &[i64], n: u64| -> i64 {
        let ell = arith::ell(n as u128) as i64;
        if ell < 2 {
            0
        } else {
            binom(ell, 2) - (ell - 1) * counts[1] + counts[2]
        }
    };
    let mut values = Vec::with_capacity((n_max - n_min + 3) as usize);
    for k in 1..=n_max + 1 {
        let w = sieve.omega(k) as usize;
        if w <= 2 {
            counts[w] += 1;
        }
        if k + 1 >= n_min {
            values.push(h2(&counts, k));
        }
    }
    // values[0] belongs to n_min − 1
    Ok((n_min..=n_max)
        .enumerate()
        .map(|(a, n)| {
            let here = values[a + 1];
            H2Row {
                n,
                h2: here,
                ell_jump: arith::ell(n as u128) < arith::ell(n as u128 + 1),
                local_max: here > values[a] && here > values[a + 2],
            }
        })
        .collect())
}

/// The vertices of every face, for callers that want explicit sets.
pub fn faces_as_sets(complex: &SimplicialComplex) -> BTreeSet<Vec<u64>> {
    complex
        .face_levels()
        .iter()
        .flatten()
        .map(|&k| split(k))
        .collect()
}
