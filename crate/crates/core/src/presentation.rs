//! The presentation `𝒜_[n] ≅ ℚ[Y([n])] / (A + B + C)`.
//!
//! `Y([n])` has one variable `y_{i,j}` per prime power `p_i^j <= n`. `A` holds
//! the squares, `B` the products of two distinct variables from the same
//! column `i`, and `C` the separated monomials whose `Φ`-value exceeds `n`.
//! Minimal generators of `C` are kept as their integer `Φ`-values.

use serde::Serialize;

use crate::arith::{Sieve, UnitaryFactorization};
use crate::error::{Error, Result};

/// The variable `y_{i,j}`, standing for `p_i^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    /// 1-based prime index `i`.
    pub index: usize,
    pub exp: u32,
    pub prime: u64,
}

impl Variable {
    pub fn value(&self) -> u64 {
        self.prime.pow(self.exp)
    }
}

impl Serialize for Variable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.index, self.exp).serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VariableSet {
    pub n: u64,
    /// Sorted by `(i, j)`.
    pub vars: Vec<Variable>,
}

impl VariableSet {
    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    /// Column heights; column `i` holds `y_{i,1}, …, y_{i,λ_i}`.
    pub fn column_heights(&self) -> Vec<u32> {
        let mut heights: Vec<u32> = Vec::new();
        for v in &self.vars {
            if heights.len() < v.index {
                heights.resize(v.index, 0);
            }
            heights[v.index - 1] = heights[v.index - 1].max(v.exp);
        }
        heights
    }

    /// Number of columns of height at least two.
    pub fn tall_columns(&self) -> usize {
        self.column_heights().iter().filter(|&&h| h >= 2).count()
    }
}

pub fn variables(sieve: &Sieve, n: u64) -> Result<VariableSet> {
    let lambda = sieve.lambda_vector(n)?;
    let vars = lambda
        .parts
        .iter()
        .zip(sieve.primes())
        .enumerate()
        .flat_map(|(i, (&height, &prime))| {
            (1..=height).map(move |exp| Variable {
                index: i + 1,
                exp,
                prime,
            })
        })
        .collect();
    Ok(VariableSet { n, vars })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealPresentation {
    pub n: u64,
    pub variables: VariableSet,
    /// `y_{i,j}²`, one per variable.
    #[serde(rename = "A")]
    pub gens_a: Vec<Variable>,
    /// `y_{i,j} y_{i,k}` with `j < k`.
    #[serde(rename = "B")]
    pub gens_b: Vec<(Variable, Variable)>,
    /// `Φ`-values of the minimal generators of `C`, ascending.
    #[serde(rename = "C")]
    pub gens_c: Vec<u64>,
}

impl IdealPresentation {
    /// The separated monomial of a `C` generator.
    pub fn c_monomial(&self, k: u64) -> Option<Vec<Variable>> {
        if self.gens_c.binary_search(&k).is_err() {
            return None;
        }
        let mut rest = k;
        let mut out = Vec::new();
        for v in self.variables.vars.iter().rev() {
            let q = v.value();
            // highest power of this prime first, so the exponent is exact
            if rest.is_multiple_of(q) && !(rest / q).is_multiple_of(v.prime) {
                out.push(*v);
                rest /= q;
            }
        }
        out.sort();
        (rest == 1).then_some(out)
    }
}

/// `true` when every proper unitary divisor of the product of the coprime
/// prime powers `parts` is `<= n`. Each proper unitary divisor divides some
/// `value / part`, so only those are tested.
fn proper_unitary_divisors_within(value: u64, parts: &[u64], n: u64) -> bool {
    parts.iter().all(|&c| value / c <= n)
}

/// Minimal generators of `A`, `B` and `C` for `V = [n]`.
///
/// `C` is built from the candidates `y_{i,j} · Φ⁻¹(k)`, `p_i^j <= n`,
/// `k <= n`, separated with value above `n`, then filtered by the minimality
/// criterion. Each candidate value is produced once, from its smallest
/// component.
pub fn generators(sieve: &Sieve, n: u64) -> Result<IdealPresentation> {
    let variables = variables(sieve, n)?;
    let gens_a = variables.vars.clone();
    let mut gens_b = Vec::new();
    for (a, x) in variables.vars.iter().enumerate() {
        for y in &variables.vars[a + 1..] {
            if x.index == y.index {
                gens_b.push((*x, *y));
            }
        }
    }

    let prime_powers = sieve.prime_powers_upto(n);
    let mut gens_c = Vec::new();
    for k in 2..=n {
        let parts = sieve.phi_decode(k)?.component_values();
        let smallest = parts.iter().copied().min().unwrap_or(u64::MAX);
        let start = prime_powers.partition_point(|&q| q <= n / k);
        for &q in prime_powers[start..].iter().take_while(|&&q| q < smallest) {
            let p = sieve.smallest_prime_factor(q)?;
            if k % p == 0 {
                continue;
            }
            let value = q
                .checked_mul(k)
                .ok_or(Error::Overflow("generator candidate"))?;
            let mut all = parts.clone();
            all.push(q);
            if proper_unitary_divisors_within(value, &all, n) {
                gens_c.push(value);
            }
        }
    }
    gens_c.sort_unstable();
    gens_c.dedup();

    Ok(IdealPresentation {
        n,
        variables,
        gens_a,
        gens_b,
        gens_c,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MuCounts {
    pub mu_a: u64,
    pub mu_b: u64,
    pub mu_c: u64,
}

pub fn mu_counts(sieve: &Sieve, n: u64) -> Result<MuCounts> {
    let pres = generators(sieve, n)?;
    let mu_b = sieve
        .lambda_vector(n)?
        .parts
        .iter()
        .map(|&l| l as u64 * l.saturating_sub(1) as u64 / 2)
        .sum();
    Ok(MuCounts {
        mu_a: sieve.pi_prime(n)?,
        mu_b,
        mu_c: pres.gens_c.len() as u64,
    })
}

/// Largest degree among the minimal generators of `A + B + C`.
pub fn max_generator_degree(sieve: &Sieve, n: u64) -> Result<usize> {
    let pres = generators(sieve, n)?;
    pres.gens_c
        .iter()
        .try_fold(2usize, |acc, &k| Ok(acc.max(generator_degree(sieve, k)?)))
}

fn generator_degree(sieve: &Sieve, k: u64) -> Result<usize> {
    // C generators can exceed the sieve; factor by trial division over primes
    if k <= sieve.limit() {
        return Ok(sieve.omega(k) as usize);
    }
    let mut rest = k;
    let mut count = 0;
    for &p in sieve.primes() {
        if p * p > rest {
            break;
        }
        if rest.is_multiple_of(p) {
            count += 1;
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
    }
    Ok(count + usize::from(rest > 1))
}

pub fn is_quadratic(sieve: &Sieve, n: u64) -> Result<bool> {
    Ok(max_generator_degree(sieve, n)? <= 2)
}

/// A monomial of the ideal whose exchange leaves the ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeViolation {
    /// `Φ`-values of the variables of `m`, with multiplicity.
    pub monomial: Vec<u64>,
    pub from: u64,
    pub to: u64,
}

/// Checks the strong multi-stability exchange property on every monomial of
/// degree `<= degree_cap` (default: the maximal generator degree).
///
/// Groups are the columns of height at least two plus one residual group
/// holding every remaining variable; within a group variables are ordered by
/// `Φ`. For `m` in the ideal, `y | m` and `Φ(y) < Φ(y′)` in the same group,
/// `(y′/y) m` must lie in the ideal again.
pub fn check_multistability(
    sieve: &Sieve,
    n: u64,
    degree_cap: Option<usize>,
) -> Result<Option<ExchangeViolation>> {
    let vars = variables(sieve, n)?.vars;
    let cap = match degree_cap {
        Some(d) => d,
        None => max_generator_degree(sieve, n)?,
    };
    let heights = sieve.lambda_vector(n)?.parts;
    let group = |v: &Variable| {
        if heights[v.index - 1] >= 2 {
            v.index
        } else {
            0
        }
    };
    let values: Vec<u64> = vars.iter().map(Variable::value).collect();
    // larger Φ within the same group, per variable
    let successors: Vec<Vec<usize>> = (0..vars.len())
        .map(|a| {
            (0..vars.len())
                .filter(|&b| group(&vars[a]) == group(&vars[b]) && values[b] > values[a])
                .collect()
        })
        .collect();

    let in_ideal = |m: &[usize]| -> bool {
        let mut product: u128 = 1;
        for (x, &a) in m.iter().enumerate() {
            if m[x + 1..]
                .iter()
                .any(|&b| b == a || vars[b].index == vars[a].index)
            {
                return true;
            }
            product *= values[a] as u128;
            if product > n as u128 {
                return true;
            }
        }
        false
    };

    let mut stack: Vec<usize> = Vec::new();
    let mut witness = None;
    visit_multisets(vars.len(), cap, &mut stack, 0, &mut |m| {
        if !in_ideal(m) {
            return true;
        }
        for (x, &a) in m.iter().enumerate() {
            for &b in &successors[a] {
                let mut exchanged = m.to_vec();
                exchanged[x] = b;
                if !in_ideal(&exchanged) {
                    witness = Some(ExchangeViolation {
                        monomial: m.iter().map(|&c| values[c]).collect(),
                        from: values[a],
                        to: values[b],
                    });
                    return false;
                }
            }
        }
        true
    });
    Ok(witness)
}

/// Visits every nonempty multiset of `0..r` of size `<= cap` in
/// non-decreasing index order; stops when `f` returns `false`.
fn visit_multisets(
    r: usize,
    cap: usize,
    stack: &mut Vec<usize>,
    start: usize,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if stack.len() == cap {
        return true;
    }
    for a in start..r {
        stack.push(a);
        let go_on = f(stack) && visit_multisets(r, cap, stack, a, f);
        stack.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// Factorization helper for callers holding a generator value.
pub fn generator_monomial(sieve: &Sieve, k: u64) -> Result<UnitaryFactorization> {
    sieve.phi_decode(k)
}
