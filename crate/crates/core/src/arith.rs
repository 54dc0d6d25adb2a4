//! Prime sieve, the special arithmetical functions, unitary arithmetic on
//! positive integers, and the codec between integers and separated monomials.
//!
//! A positive integer `k` factors uniquely as a product of pairwise coprime
//! prime powers. Reading each prime power `p_i^j` as the variable `y_{i,j}`
//! turns `k` into a *separated* monomial (no two variables share a prime),
//! and unitary multiplication of integers becomes monomial multiplication
//! with every non-separated product sent to zero.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_SIEVE_LIMIT: u64 = 10_000_000;

/// The first primes, enough for primorials past `2^128`.
pub(crate) const FIRST_PRIMES: [u64; 30] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113,
];

/// A prime power `prime^exp` with `exp >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PrimePower {
    pub prime: u64,
    pub exp: u32,
}

impl PrimePower {
    pub fn new(prime: u64, exp: u32) -> Self {
        PrimePower { prime, exp }
    }

    pub fn value(&self) -> Result<u64> {
        self.prime
            .checked_pow(self.exp)
            .ok_or(Error::Overflow("prime power"))
    }
}

/// Result of a unitary product: either a positive integer or the zero of the
/// monoid-with-zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitaryProduct {
    Zero,
    Value(u64),
}

impl UnitaryProduct {
    pub fn value(self) -> Option<u64> {
        match self {
            UnitaryProduct::Zero => None,
            UnitaryProduct::Value(v) => Some(v),
        }
    }

    pub fn is_zero(self) -> bool {
        self == UnitaryProduct::Zero
    }
}

/// `d ⊕ m`: the ordinary product when `gcd(d, m) = 1`, zero otherwise.
pub fn unitary_product(d: u64, m: u64) -> Result<UnitaryProduct> {
    if d == 0 || m == 0 {
        return Err(Error::domain("unitary product of non-positive integers"));
    }
    if d.gcd(&m) != 1 {
        return Ok(UnitaryProduct::Zero);
    }
    d.checked_mul(m)
        .map(UnitaryProduct::Value)
        .ok_or(Error::Overflow("unitary product"))
}

/// Encodes a separated monomial, given as prime-power components, as an
/// integer. Two components sharing a prime give zero.
pub fn phi_encode(components: &[PrimePower]) -> Result<UnitaryProduct> {
    let mut primes: Vec<u64> = components.iter().map(|c| c.prime).collect();
    primes.sort_unstable();
    if primes.windows(2).any(|w| w[0] == w[1]) {
        return Ok(UnitaryProduct::Zero);
    }
    let mut acc = 1u64;
    for c in components {
        if c.exp == 0 {
            return Err(Error::domain("prime-power component with exponent 0"));
        }
        acc = acc
            .checked_mul(c.value()?)
            .ok_or(Error::Overflow("phi_encode"))?;
    }
    Ok(UnitaryProduct::Value(acc))
}

/// A positive integer together with its pairwise coprime prime-power
/// components, sorted by prime. This is the separated monomial `Φ⁻¹(value)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct UnitaryFactorization {
    value: u64,
    components: Vec<PrimePower>,
}

impl UnitaryFactorization {
    pub fn one() -> Self {
        UnitaryFactorization {
            value: 1,
            components: Vec::new(),
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn components(&self) -> &[PrimePower] {
        &self.components
    }

    /// Prime-power values of the components, ascending by prime.
    pub fn component_values(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.prime.pow(c.exp)).collect()
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.components.len()
    }

    /// Product in the monoid-with-zero of separated monomials; `None` is zero.
    pub fn monomial_product(&self, other: &Self) -> Result<Option<Self>> {
        let mut components = self.components.clone();
        components.extend_from_slice(&other.components);
        components.sort_unstable();
        if components.windows(2).any(|w| w[0].prime == w[1].prime) {
            return Ok(None);
        }
        let value = self
            .value
            .checked_mul(other.value)
            .ok_or(Error::Overflow("monomial product"))?;
        Ok(Some(UnitaryFactorization { value, components }))
    }
}

/// Smallest-prime-factor table up to a fixed limit, with the derived prime
/// and prime-power lists and `ω` for every entry.
#[derive(Debug, Clone)]
pub struct Sieve {
    limit: u64,
    spf: Vec<u32>,
    omega: Vec<u8>,
    primes: Vec<u64>,
    prime_powers: Vec<u64>,
}

impl Sieve {
    pub fn new(limit: u64) -> Result<Self> {
        if limit > u32::MAX as u64 {
            return Err(Error::domain(format!(
                "sieve limit {limit} exceeds {}",
                u32::MAX
            )));
        }
        let len = limit as usize + 1;
        let mut spf = vec![0u32; len];
        let mut primes: Vec<u64> = Vec::new();
        for i in 2..len {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u64);
            }
            let si = spf[i] as u64;
            for &p in &primes {
                let ip = i as u64 * p;
                if p > si || ip > limit {
                    break;
                }
                spf[ip as usize] = p as u32;
            }
        }

        let mut omega = vec![0u8; len];
        for k in 2..len {
            let p = spf[k] as usize;
            let q = k / p;
            omega[k] = omega[q] + u8::from(!q.is_multiple_of(p));
        }

        let mut prime_powers = Vec::new();
        for &p in &primes {
            let mut q = p;
            while q <= limit {
                prime_powers.push(q);
                match q.checked_mul(p) {
                    Some(next) => q = next,
                    None => break,
                }
            }
        }
        prime_powers.sort_unstable();

        Ok(Sieve {
            limit,
            spf,
            omega,
            primes,
            prime_powers,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn check(&self, k: u64) -> Result<()> {
        if k > self.limit {
            Err(Error::BeyondSieve {
                value: k,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    /// All primes up to the limit, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// All prime powers `p^a` (`a >= 1`) up to the limit, ascending.
    pub fn prime_powers(&self) -> &[u64] {
        &self.prime_powers
    }

    /// Prime powers `<= n`. Panics if `n` exceeds the limit.
    pub fn prime_powers_upto(&self, n: u64) -> &[u64] {
        assert!(n <= self.limit, "{n} beyond sieve limit {}", self.limit);
        let end = self.prime_powers.partition_point(|&q| q <= n);
        &self.prime_powers[..end]
    }

    /// Primes `<= n`. Panics if `n` exceeds the limit.
    pub fn primes_upto(&self, n: u64) -> &[u64] {
        assert!(n <= self.limit, "{n} beyond sieve limit {}", self.limit);
        let end = self.primes.partition_point(|&p| p <= n);
        &self.primes[..end]
    }

    /// The `i`-th prime, 1-based.
    pub fn nth_prime(&self, i: usize) -> Option<u64> {
        i.checked_sub(1).and_then(|j| self.primes.get(j).copied())
    }

    /// 1-based index of the prime `p`.
    pub fn prime_index(&self, p: u64) -> Option<usize> {
        self.primes.binary_search(&p).ok().map(|j| j + 1)
    }

    pub fn smallest_prime_factor(&self, k: u64) -> Result<u64> {
        self.check(k)?;
        if k < 2 {
            return Err(Error::domain("smallest prime factor of k < 2"));
        }
        Ok(self.spf[k as usize] as u64)
    }

    /// Panics if `k` exceeds the limit.
    pub fn is_prime(&self, k: u64) -> bool {
        k >= 2 && self.spf[k as usize] as u64 == k
    }

    /// `Some` when `k` is a prime power. Panics if `k` exceeds the limit.
    pub fn as_prime_power(&self, k: u64) -> Option<PrimePower> {
        if k < 2 {
            return None;
        }
        let p = self.spf[k as usize] as u64;
        let mut rest = k;
        let mut exp = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            exp += 1;
        }
        (rest == 1).then_some(PrimePower { prime: p, exp })
    }

    /// Number of distinct prime factors. Panics if `k` exceeds the limit.
    pub fn omega(&self, k: u64) -> u32 {
        self.omega[k as usize] as u32
    }

    /// `Φ⁻¹(k)`: the prime-power components of `k`.
    pub fn phi_decode(&self, k: u64) -> Result<UnitaryFactorization> {
        self.check(k)?;
        if k == 0 {
            return Err(Error::domain("phi_decode(0)"));
        }
        let mut components = Vec::with_capacity(self.omega(k) as usize);
        let mut rest = k;
        while rest > 1 {
            let p = self.spf[rest as usize] as u64;
            let mut exp = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                exp += 1;
            }
            components.push(PrimePower { prime: p, exp });
        }
        Ok(UnitaryFactorization {
            value: k,
            components,
        })
    }

    /// Unitary divisors of `k`, ascending: products of subsets of its
    /// prime-power components.
    pub fn unitary_divisors(&self, k: u64) -> Result<Vec<u64>> {
        let parts = self.phi_decode(k)?.component_values();
        let mut divisors = vec![1u64];
        for q in parts {
            let extended: Vec<u64> = divisors.iter().map(|d| d * q).collect();
            divisors.extend(extended);
        }
        divisors.sort_unstable();
        Ok(divisors)
    }

    /// `π(n)`, the number of primes `<= n`.
    pub fn pi(&self, n: u64) -> Result<u64> {
        self.check(n)?;
        Ok(self.primes.partition_point(|&p| p <= n) as u64)
    }

    /// `π′(n)`, the number of prime powers `<= n`.
    pub fn pi_prime(&self, n: u64) -> Result<u64> {
        self.check(n)?;
        Ok(self.prime_powers.partition_point(|&q| q <= n) as u64)
    }

    /// `π_k(n)` for `0 <= k <= ℓ(n)`.
    pub fn pi_k(&self, n: u64) -> Result<Vec<u64>> {
        self.check(n)?;
        let mut counts = vec![0u64; ell(n as u128) as usize + 1];
        for j in 1..=n {
            counts[self.omega[j as usize] as usize] += 1;
        }
        Ok(counts)
    }

    pub fn special_functions(&self, n: u64) -> Result<SpecialFunctions> {
        if n == 0 {
            return Err(Error::domain("special functions need n >= 1"));
        }
        Ok(SpecialFunctions {
            n,
            pi: self.pi(n)?,
            pi_prime: self.pi_prime(n)?,
            ell: ell(n as u128),
            v: v(n),
            pi_k: self.pi_k(n)?,
        })
    }

    /// `λ^{[n]}`: for each prime `p_i <= n`, the largest `j` with `p_i^j <= n`.
    pub fn lambda_vector(&self, n: u64) -> Result<LambdaPartition> {
        if n < 2 {
            return Err(Error::domain("lambda vector needs n >= 2"));
        }
        self.check(n)?;
        let parts = self
            .primes_upto(n)
            .iter()
            .map(|&p| {
                let mut j = 0;
                let mut q = 1u64;
                while let Some(next) = q.checked_mul(p).filter(|&x| x <= n) {
                    q = next;
                    j += 1;
                }
                j
            })
            .collect();
        Ok(LambdaPartition { n, parts })
    }

    /// `ln(n) / ln(p_i)` for `n = 10^log10_n`; the real-valued growth of `λ_i`.
    pub fn lambda_estimate(&self, log10_n: f64, i: usize) -> Result<f64> {
        if !(log10_n > 0.0) {
            return Err(Error::domain("lambda estimate needs log10(n) > 0"));
        }
        let p = self
            .nth_prime(i)
            .ok_or_else(|| Error::domain(format!("prime index {i} beyond the sieve limit")))?;
        Ok(log10_n * std::f64::consts::LN_10 / (p as f64).ln())
    }
}

/// The special functions at one `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialFunctions {
    pub n: u64,
    pub pi: u64,
    pub pi_prime: u64,
    pub ell: u32,
    pub v: i64,
    /// `pi_k[k] = #{ j <= n : ω(j) = k }`.
    pub pi_k: Vec<u64>,
}

/// `λ^{[n]}` as a weakly decreasing partition of `π′(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaPartition {
    pub n: u64,
    pub parts: Vec<u32>,
}

impl LambdaPartition {
    pub fn sum(&self) -> u64 {
        self.parts.iter().map(|&x| x as u64).sum()
    }

    /// Number of parts greater than one.
    pub fn big_parts(&self) -> usize {
        self.parts.iter().filter(|&&x| x > 1).count()
    }
}

/// Product of the first `r` primes, if it fits in 128 bits.
pub fn primorial(r: usize) -> Option<u128> {
    if r > FIRST_PRIMES.len() {
        return None;
    }
    FIRST_PRIMES[..r]
        .iter()
        .try_fold(1u128, |acc, &p| acc.checked_mul(p as u128))
}

/// `ℓ(n)`: the largest `r` with `p_1 ⋯ p_r <= n`.
pub fn ell(n: u128) -> u32 {
    let mut acc = 1u128;
    let mut r = 0;
    for &p in FIRST_PRIMES.iter() {
        match acc.checked_mul(p as u128) {
            Some(next) if next <= n => {
                acc = next;
                r += 1;
            }
            _ => break,
        }
    }
    r
}

/// `v(n) = ℓ(2n) − 2`; `v(1) = v(2) = −1`.
pub fn v(n: u64) -> i64 {
    ell(2 * n as u128) as i64 - 2
}

/// Greatest common divisor, re-exported for callers that do not pull in
/// `num-integer`.
pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `⌊x^{1/k}⌋`.
pub fn iroot(x: u64, k: u32) -> u64 {
    if k == 1 || x < 2 {
        return x;
    }
    let mut r = (x as f64).powf(1.0 / k as f64) as u64;
    while r > 0 && (r as u128).pow(k) > x as u128 {
        r -= 1;
    }
    while ((r + 1) as u128).pow(k) <= x as u128 {
        r += 1;
    }
    r
}

/// `π(x)` without a sieve up to `x` (Lucy_Hedgehog's method, `O(x^{3/4})`).
pub fn prime_count(x: u64) -> u64 {
    if x < 2 {
        return 0;
    }
    let root = iroot(x, 2);
    // small[v] = S(v) for v <= root, large[i] = S(x / i) for i <= root
    let mut small: Vec<u64> = (0..=root).map(|v| v.saturating_sub(1)).collect();
    let mut large: Vec<u64> = (0..=root)
        .map(|i| if i == 0 { 0 } else { x / i - 1 })
        .collect();
    for p in 2..=root {
        if small[p as usize] == small[p as usize - 1] {
            continue;
        }
        let below = small[p as usize - 1];
        let p2 = p * p;
        for i in 1..=root.min(x / p2) {
            let d = i * p;
            let s = if d <= root {
                large[d as usize]
            } else {
                small[(x / d) as usize]
            };
            large[i as usize] -= s - below;
        }
        let mut v = root;
        while v >= p2 {
            small[v as usize] -= small[(v / p) as usize] - below;
            v -= 1;
        }
    }
    large[1]
}

/// `π′(x)`, counted as `Σ_k π(x^{1/k})`.
pub fn prime_power_count(x: u64) -> u64 {
    (1..64)
        .map(|k| iroot(x, k))
        .take_while(|&r| r >= 2)
        .map(prime_count)
        .sum()
}
