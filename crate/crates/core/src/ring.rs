//! The truncated algebra `𝒜_[n]`: functions on `1..=n` multiplied by unitary
//! convolution, with every product landing above `n` discarded.
//!
//! Coefficients are exact rationals. Every structure constant of the algebra
//! is 0 or 1, so nothing is lost by working over ℚ instead of ℂ.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::Sieve;
use crate::error::{Error, Result};

/// An element of `𝒜_[n]`, stored sparsely. No key exceeds `n` and no stored
/// coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedFunction {
    n: u64,
    coeffs: BTreeMap<u64, BigRational>,
}

impl TruncatedFunction {
    pub fn zero(n: u64) -> Self {
        TruncatedFunction {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis element `e_k`.
    pub fn basis(n: u64, k: u64) -> Result<Self> {
        let mut f = Self::zero(n);
        f.set(k, BigRational::one())?;
        Ok(f)
    }

    /// The identity `e_1`.
    pub fn identity(n: u64) -> Self {
        Self::basis(n, 1).expect("1 <= n")
    }

    pub fn from_pairs<I>(n: u64, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, BigRational)>,
    {
        let mut f = Self::zero(n);
        for (k, c) in pairs {
            let c = f.get(k) + c;
            f.set(k, c)?;
        }
        Ok(f)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn get(&self, k: u64) -> BigRational {
        self.coeffs
            .get(&k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn set(&mut self, k: u64, c: BigRational) -> Result<()> {
        if k == 0 || k > self.n {
            return Err(Error::domain(format!("index {k} outside 1..={}", self.n)));
        }
        if c.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    fn same_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::TruncationMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        let mut out = self.clone();
        for (&k, c) in &other.coeffs {
            let sum = out.get(k) + c;
            out.set(k, sum)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        TruncatedFunction {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// `(f ⊕ g)(k) = Σ f(d) g(m)` over `d m = k`, `gcd(d, m) = 1`, `k <= n`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        let mut acc: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (&d, a) in &self.coeffs {
            for (&m, b) in &other.coeffs {
                if d.gcd(&m) != 1 {
                    continue;
                }
                // d, m <= n <= u32::MAX in practice, but stay checked
                let Some(k) = d.checked_mul(m).filter(|&k| k <= self.n) else {
                    continue;
                };
                *acc.entry(k).or_insert_with(BigRational::zero) += a * b;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(TruncatedFunction {
            n: self.n,
            coeffs: acc,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct TruncatedFunctionRepr {
    n: u64,
    coeffs: Vec<(u64, String)>,
}

impl Serialize for TruncatedFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TruncatedFunctionRepr {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&k, c)| (k, format!("{}/{}", c.numer(), c.denom())))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncatedFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = TruncatedFunctionRepr::deserialize(d)?;
        let pairs = repr
            .coeffs
            .into_iter()
            .map(|(k, c)| {
                BigRational::from_str(&c)
                    .map(|c| (k, c))
                    .map_err(|e| D::Error::custom(format!("bad coefficient {c:?}: {e}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        TruncatedFunction::from_pairs(repr.n, pairs).map_err(D::Error::custom)
    }
}

/// Indices `k` with `e_k` in the socle of `𝒜_[n]`: `1 < k <= n` and every
/// prime `p` coprime to `k` has `k p > n`.
pub fn socle_basis(sieve: &Sieve, n: u64) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(Error::domain("socle needs n >= 2"));
    }
    sieve.check(n)?;
    let primes = sieve.primes();
    Ok((2..=n)
        .filter(|&k| {
            let m = n / k;
            // every prime p <= n/k must divide k
            primes.iter().take_while(|&&p| p <= m).all(|&p| k % p == 0)
        })
        .collect())
}

pub fn is_gorenstein(sieve: &Sieve, n: u64) -> Result<bool> {
    Ok(socle_basis(sieve, n)?.len() == 1)
}

/// `dim Socle(𝒜_[n]) / n`, by exact counting.
pub fn socle_density_empirical(sieve: &Sieve, n: u64) -> Result<f64> {
    Ok(socle_basis(sieve, n)?.len() as f64 / n as f64)
}

/// One interval `[n/p_{k+1}, n/p_k)` of the socle-count decomposition
/// (`k = 0` is `[n/2, n]`), with its exact socle count and the smooth
/// approximation `(n/p_k − n/p_{k+1}) / (p_1 ⋯ p_k)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SocleInterval {
    pub k: usize,
    pub count: u64,
    pub approx: f64,
}

/// Diagnostic: per-interval socle counts against their approximations.
pub fn socle_intervals(sieve: &Sieve, n: u64) -> Result<Vec<SocleInterval>> {
    let socle = socle_basis(sieve, n)?;
    let nf = n as f64;
    let mut out = vec![SocleInterval {
        k: 0,
        count: socle.iter().filter(|&&v| 2 * v >= n).count() as u64,
        approx: nf / 2.0,
    }];
    let primes = sieve.primes();
    let mut primorial = 1f64;
    for k in 1.. {
        let (Some(&pk), Some(&pk1)) = (primes.get(k - 1), primes.get(k)) else {
            break;
        };
        if 2 * pk > n {
            break;
        }
        primorial *= pk as f64;
        let count = socle
            .iter()
            .filter(|&&v| v * pk < n && v * pk1 >= n)
            .count() as u64;
        out.push(SocleInterval {
            k,
            count,
            approx: (nf / pk as f64 - nf / pk1 as f64) / primorial,
        });
    }
    Ok(out)
}

/// `½ + Σ_{i=1}^{terms} (1/p_i − 1/p_{i+1}) / (p_1 ⋯ p_i)` as an exact rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocleConstant {
    pub terms: usize,
    pub exact: BigRational,
}

impl SocleConstant {
    pub fn to_f64(&self) -> f64 {
        self.exact.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal expansion truncated to `digits` places.
    pub fn decimal(&self, digits: usize) -> String {
        let scaled =
            self.exact.numer() * BigInt::from(10u32).pow(digits as u32) / self.exact.denom();
        let s = scaled.to_string();
        let s = format!("{s:0>width$}", width = digits + 1);
        let (int, frac) = s.split_at(s.len() - digits);
        format!("{int}.{frac}")
    }
}

pub fn socle_density_constant(sieve: &Sieve, terms: usize) -> Result<SocleConstant> {
    if terms == 0 {
        return Err(Error::domain("socle constant needs at least one term"));
    }
    let primes = sieve.primes();
    if primes.len() <= terms {
        return Err(Error::domain(format!(
            "{} primes needed, sieve holds {}",
            terms + 1,
            primes.len()
        )));
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut sum = BigRational::one() - half;
    let mut primorial = BigInt::one();
    for w in primes[..=terms].windows(2) {
        let (p, q) = (BigInt::from(w[0]), BigInt::from(w[1]));
        primorial *= &p;
        let gap = BigRational::new(BigInt::one(), p) - BigRational::new(BigInt::one(), q);
        sum += gap / BigRational::from_integer(primorial.clone());
    }
    Ok(SocleConstant { terms, exact: sum })
}

/// The monomial multiplicative syzygies `M([n])`: lattice points `(i, j)`,
/// `1 < i, j <= n`, with `i j > n` or `gcd(i, j) > 1`. Membership is
/// answered arithmetically; the set is never materialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SyzygySet {
    n: u64,
}

impl SyzygySet {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn contains(&self, i: u64, j: u64) -> bool {
        let range = 2..=self.n;
        range.contains(&i) && range.contains(&j) && (i * j > self.n || i.gcd(&j) > 1)
    }

    /// `|M([n])|`, counted through the complement (coprime pairs with `ij <= n`).
    pub fn len(&self) -> u64 {
        if self.n < 2 {
            return 0;
        }
        let side = self.n - 1;
        let mut coprime_small = 0u64;
        for i in 2..=self.n / 2 {
            coprime_small += (2..=self.n / i).filter(|&j| i.gcd(&j) == 1).count() as u64;
        }
        side * side - coprime_small
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Column `{(i, j) : 1 < j <= n}` lies entirely in the set; exactly the
    /// socle indices.
    pub fn column_contained(&self, i: u64) -> bool {
        (2..=self.n).all(|j| self.contains(i, j))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        (2..=self.n).flat_map(move |i| {
            (2..=self.n)
                .filter(move |&j| self.contains(i, j))
                .map(move |j| (i, j))
        })
    }
}

pub fn monomial_syzygies(n: u64) -> Result<SyzygySet> {
    if n < 2 {
        return Err(Error::domain("syzygies need n >= 2"));
    }
    Ok(SyzygySet { n })
}

/// `(n−1)² − (n−1)`, the closed form given for `dim K₂([n])`.
pub fn k2_dimension(n: u64) -> u64 {
    let side = n.saturating_sub(1);
    side * side - side
}

/// `dim K₂([n])` by rank-nullity: the product map `𝒜⁺ ⊗ 𝒜⁺ → 𝒜⁺` sends
/// `e_a ⊗ e_b` to a basis vector or zero, so its rank is the number of
/// `k <= n` with at least two prime-power components.
pub fn k2_dimension_exact(sieve: &Sieve, n: u64) -> Result<u64> {
    sieve.check(n)?;
    let side = n.saturating_sub(1);
    let image = (2..=n).filter(|&k| sieve.omega(k) >= 2).count() as u64;
    Ok(side * side - image)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn sieve() -> Sieve {
        Sieve::new(2000).unwrap()
    }

    #[test]
    fn convolution_examples() {
        let e = |k| TruncatedFunction::basis(10, k).unwrap();
        assert_eq!(e(2).convolve(&e(3)).unwrap(), e(6));
        assert!(e(2).convolve(&e(6)).unwrap().is_zero());
        assert!(e(2).convolve(&e(9)).unwrap().is_zero());
        assert_eq!(
            TruncatedFunction::identity(10).convolve(&e(7)).unwrap(),
            e(7)
        );
        let other = TruncatedFunction::basis(11, 2).unwrap();
        assert!(matches!(
            e(2).convolve(&other),
            Err(Error::TruncationMismatch {
                left: 10,
                right: 11
            })
        ));
        assert!(TruncatedFunction::basis(10, 11).is_err());
    }

    #[test]
    fn convolution_matches_definition() {
        let n = 30;
        let f = TruncatedFunction::from_pairs(n, (1..=n).map(|k| (k, q(k as i64, 3)))).unwrap();
        let g = TruncatedFunction::from_pairs(n, (1..=n).map(|k| (k, q(1, k as i64)))).unwrap();
        let h = f.convolve(&g).unwrap();
        for k in 1..=n {
            let mut expect = q(0, 1);
            for d in 1..=k {
                if k % d == 0 && d.gcd(&(k / d)) == 1 {
                    expect += f.get(d) * g.get(k / d);
                }
            }
            assert_eq!(h.get(k), expect, "k = {k}");
        }
    }

    #[test]
    fn json_round_trip() {
        let f = TruncatedFunction::from_pairs(10, [(2, q(1, 2)), (9, q(-3, 1))]).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(text, r#"{"n":10,"coeffs":[[2,"1/2"],[9,"-3/1"]]}"#);
        let back: TruncatedFunction = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        assert!(
            serde_json::from_str::<TruncatedFunction>(r#"{"n":3,"coeffs":[[4,"1"]]}"#).is_err()
        );
    }

    fn socle_brute(n: u64) -> Vec<u64> {
        let primes: Vec<u64> = (2..=n).filter(|&p| (2..p).all(|d| p % d != 0)).collect();
        (2..=n)
            .filter(|&k| primes.iter().all(|&p| k.gcd(&p) != 1 || k * p > n))
            .collect()
    }

    #[test]
    fn socle_examples() {
        let s = sieve();
        assert_eq!(socle_basis(&s, 10).unwrap(), vec![4, 6, 7, 8, 9, 10]);
        assert_eq!(socle_basis(&s, 2).unwrap(), vec![2]);
        for n in 3..=300 {
            let socle = socle_basis(&s, n).unwrap();
            assert_eq!(socle, socle_brute(n), "n = {n}");
            assert!(socle.contains(&(n - 1)) && socle.contains(&n));
        }
        assert!(socle_basis(&s, 1).is_err());
    }

    #[test]
    fn socle_annihilates_augmentation_ideal() {
        let s = sieve();
        for n in 2..=60 {
            let socle = socle_basis(&s, n).unwrap();
            for k in 2..=n {
                let ek = TruncatedFunction::basis(n, k).unwrap();
                let annihilated = (2..=n).all(|a| {
                    ek.convolve(&TruncatedFunction::basis(n, a).unwrap())
                        .unwrap()
                        .is_zero()
                });
                assert_eq!(annihilated, socle.contains(&k), "n = {n}, k = {k}");
                if !annihilated {
                    assert!(s.primes_upto(n).iter().any(|&p| !ek
                        .convolve(&TruncatedFunction::basis(n, p).unwrap())
                        .unwrap()
                        .is_zero()));
                }
            }
        }
    }

    #[test]
    fn gorenstein_only_at_two() {
        let s = sieve();
        assert!(is_gorenstein(&s, 2).unwrap());
        assert!(!is_gorenstein(&s, 3).unwrap());
        assert!(!is_gorenstein(&s, 40).unwrap());
        assert!((3..=500).all(|n| !is_gorenstein(&s, n).unwrap()));
    }

    #[test]
    fn syzygy_examples() {
        let m = monomial_syzygies(3).unwrap();
        let pairs: Vec<_> = m.iter().collect();
        assert_eq!(pairs, vec![(2, 2), (2, 3), (3, 2), (3, 3)]);
        assert_eq!(m.len(), 4);
        assert_eq!(k2_dimension(3), 2);
        assert_eq!(k2_dimension_exact(&sieve(), 3).unwrap(), 4);

        let m30 = monomial_syzygies(30).unwrap();
        assert!(m30.column_contained(12));
        let socle = socle_basis(&sieve(), 30).unwrap();
        for i in 2..=30 {
            assert_eq!(m30.column_contained(i), socle.contains(&i));
        }
    }

    #[test]
    fn syzygy_count_matches_enumeration() {
        let s = sieve();
        for n in 2..=80 {
            let m = monomial_syzygies(n).unwrap();
            assert_eq!(m.len(), m.iter().count() as u64);
            for i in 2..=n {
                for j in 2..=n {
                    assert_eq!(m.contains(i, j), m.contains(j, i));
                }
            }
            // exact kernel dimension bounds the independent monomial syzygies
            assert!(m.len() <= k2_dimension_exact(&s, n).unwrap());
        }
    }

    #[test]
    fn socle_constant_partial_sums() {
        let s = sieve();
        let one = socle_density_constant(&s, 1).unwrap();
        assert_eq!(one.exact, q(7, 12));
        let c10 = socle_density_constant(&s, 10).unwrap().to_f64();
        let c50 = socle_density_constant(&s, 50).unwrap();
        assert!((c10 - c50.to_f64()).abs() < 1e-9);
        assert!((c50.to_f64() - 0.607_714_359_516_618_2).abs() < 1e-15);
        assert_eq!(&c50.decimal(17), "0.60771435951661818");
        assert!(socle_density_constant(&s, 0).is_err());
    }

    #[test]
    fn empirical_density_small() {
        let s = sieve();
        assert_eq!(socle_density_empirical(&s, 10).unwrap(), 0.6);
        assert_eq!(socle_density_empirical(&s, 2).unwrap(), 0.5);
    }

    #[test]
    fn socle_intervals_partition_the_socle() {
        let s = sieve();
        for n in [100, 1000, 2000] {
            let parts = socle_intervals(&s, n).unwrap();
            let total: u64 = parts.iter().map(|p| p.count).sum();
            assert_eq!(total, socle_basis(&s, n).unwrap().len() as u64);
            for p in &parts[1..] {
                assert!((p.count as f64 - p.approx).abs() < 1.0 + 1e-9, "{p:?}");
            }
        }
    }
}
