//! Reduced simplicial homology of `Δ([n])` and its induced subcomplexes, and
//! the Betti numbers, regularity and Poincaré series read off from it by
//! Hochster's formula.

pub mod snf;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::Sieve;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

pub use snf::{smith_normal_form, IntegerMatrix, SmithForm};

/// Default bound on the vertex count for subset scans.
pub const DEFAULT_SUBSET_CAP: usize = 20;

/// `∂_c`: faces with `c` vertices to faces with `c − 1` vertices, for
/// `c = 1..=dim + 1`; `∂_1` is the augmentation onto the empty face.
///
/// Vertices are ordered by value and dropping the vertex in position `p`
/// carries the sign `(−1)^p`.
pub fn boundary_matrices(complex: &SimplicialComplex) -> Vec<IntegerMatrix> {
    let levels = complex.face_levels();
    (1..levels.len())
        .map(|c| {
            let (lower, upper) = (&levels[c - 1], &levels[c]);
            let mut m = IntegerMatrix::zeros(lower.len(), upper.len());
            for (col, &k) in upper.iter().enumerate() {
                for (p, v) in complex.vertex_set(k).iter().enumerate() {
                    let row = lower
                        .binary_search(&(k / v))
                        .expect("faces are closed under removal");
                    m.set(row, col, if p % 2 == 0 { 1.into() } else { (-1).into() });
                }
            }
            m
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: i64,
    /// Rank of `H̃_degree` (its dimension over `ℚ` or `ℂ`).
    pub rank: u64,
    /// Torsion coefficients, each greater than one.
    pub torsion: Vec<u64>,
}

/// `H̃_i` for `i = −1..=dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn rank(&self, degree: i64) -> u64 {
        usize::try_from(degree + 1)
            .ok()
            .and_then(|i| self.groups.get(i))
            .map_or(0, |g| g.rank)
    }

    /// Largest degree with nonzero rank.
    pub fn top_degree(&self) -> Option<i64> {
        self.groups
            .iter()
            .rev()
            .find(|g| g.rank > 0)
            .map(|g| g.degree)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.iter().all(|g| g.torsion.is_empty())
    }

    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .map(|g| {
                if g.degree.rem_euclid(2) == 0 {
                    g.rank as i64
                } else {
                    -(g.rank as i64)
                }
            })
            .sum()
    }
}

pub fn reduced_homology(complex: &SimplicialComplex) -> Result<HomologyProfile> {
    let f = complex.f_vector();
    let forms: Vec<SmithForm> = boundary_matrices(complex)
        .iter()
        .map(smith_normal_form)
        .collect();
    // forms[c − 1] is ∂_c
    let rank_of = |c: usize| -> usize {
        c.checked_sub(1)
            .and_then(|i| forms.get(i))
            .map_or(0, |s| s.rank)
    };
    let groups = f
        .iter()
        .enumerate()
        .map(|(c, &faces)| {
            let torsion = forms
                .get(c)
                .map(|s| {
                    s.torsion()
                        .iter()
                        .map(|d| d.to_u64().ok_or(Error::Overflow("torsion coefficient")))
                        .collect::<Result<Vec<u64>>>()
                })
                .transpose()?
                .unwrap_or_default();
            Ok(HomologyGroup {
                degree: c as i64 - 1,
                rank: faces - rank_of(c) as u64 - rank_of(c + 1) as u64,
                torsion,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HomologyProfile { groups })
}

/// Ranks only, indexed by `degree + 1`.
fn ranks(complex: &SimplicialComplex) -> Vec<u64> {
    let f = complex.f_vector();
    let r: Vec<usize> = boundary_matrices(complex).iter().map(snf::rank).collect();
    let rank_of = |c: usize| {
        c.checked_sub(1)
            .and_then(|i| r.get(i))
            .copied()
            .unwrap_or(0) as u64
    };
    f.iter()
        .enumerate()
        .map(|(c, &faces)| faces - rank_of(c) - rank_of(c + 1))
        .collect()
}

/// Largest `i` with `H̃_i(Δ([n])) != 0`, and `−1` when there is none above
/// degree `−1`.
pub fn homological_degree(sieve: &Sieve, n: u64) -> Result<i64> {
    let profile = reduced_homology(&SimplicialComplex::build(sieve, n)?)?;
    Ok(profile.top_degree().unwrap_or(-1).max(-1))
}

/// Ranks of `H̃_*(Δ_U)` for every `U ⊆ V`, `U` encoded as a bit mask over the
/// ascending vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetScan {
    pub n: u64,
    pub vertices: Vec<u64>,
    /// `ranks[mask][degree + 1]`.
    ranks: Vec<Vec<u64>>,
}

pub fn subset_homology_scan(sieve: &Sieve, n: u64, cap: usize) -> Result<SubsetScan> {
    let complex = SimplicialComplex::build(sieve, n)?;
    let vertices = complex.vertices().to_vec();
    let r = vertices.len();
    if r > cap || r >= 63 {
        return Err(Error::SubsetCap { vertices: r, cap });
    }
    let ranks = (0..1u64 << r)
        .into_par_iter()
        .map(|mask| {
            let u: Vec<u64> = (0..r)
                .filter(|&b| mask >> b & 1 == 1)
                .map(|b| vertices[b])
                .collect();
            complex.induced(&u).map(|sub| ranks(&sub))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SubsetScan { n, vertices, ranks })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiEntry {
    pub i: usize,
    #[serde(rename = "U")]
    pub u: Vec<u64>,
    pub value: u64,
}

/// Nonzero `β_{i,U}`, ordered by `i` and then by mask.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub n: u64,
    pub entries: Vec<BettiEntry>,
}

impl BettiTable {
    /// `β_i = Σ_U β_{i,U}`.
    pub fn coarse(&self) -> Vec<u64> {
        let top = self.entries.iter().map(|e| e.i).max().unwrap_or(0);
        let mut out = vec![0; top + 1];
        for e in &self.entries {
            out[e.i] += e.value;
        }
        out
    }
}

/// One nonzero `H̃_i(Δ_U)` from a subset scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetHomology {
    #[serde(rename = "U")]
    pub u: Vec<u64>,
    pub degree: i64,
    pub rank: u64,
}

/// `C(a, b)` with `C(a, b) = 0` for `b < 0`, `1` for `b = 0` and `0` for
/// `a < b`.
fn binom(a: i64, b: i64) -> Result<u64> {
    if b < 0 {
        return Ok(0);
    }
    if b == 0 {
        return Ok(1);
    }
    if a < b {
        return Ok(0);
    }
    let b = b.min(a - b);
    let mut acc = 1u128;
    for j in 0..b {
        acc = acc
            .checked_mul((a - j) as u128)
            .ok_or(Error::Overflow("binomial"))?
            / (j + 1) as u128;
    }
    u64::try_from(acc).map_err(|_| Error::Overflow("binomial"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoincareSeries {
    pub n: u64,
    pub t_max: usize,
    /// `Σ_i β_i t^i` for `ℂ[Δ([n])]` over the polynomial ring.
    pub polynomial_ring: Vec<u64>,
    /// `Σ_U (1 − t)^{−|U|} Σ_i β_{i,U} t^i`, the series of `𝒜_[n]` over the
    /// square-zero quotient ring, truncated at `t^{t_max}`.
    pub square_zero_ring: Vec<u64>,
}

impl SubsetScan {
    pub fn subset_count(&self) -> usize {
        self.ranks.len()
    }

    pub fn subset(&self, mask: u64) -> Vec<u64> {
        (0..self.vertices.len())
            .filter(|&b| mask >> b & 1 == 1)
            .map(|b| self.vertices[b])
            .collect()
    }

    pub fn rank(&self, mask: u64, degree: i64) -> u64 {
        usize::try_from(degree + 1)
            .ok()
            .and_then(|i| self.ranks.get(mask as usize)?.get(i).copied())
            .unwrap_or(0)
    }

    pub fn top_degree(&self, mask: u64) -> Option<i64> {
        let ranks = &self.ranks[mask as usize];
        ranks.iter().rposition(|&r| r > 0).map(|i| i as i64 - 1)
    }

    /// Max over all `U`, including `U = ∅` with `H̃_{−1} ≅ ℂ`.
    pub fn max_top_degree(&self) -> i64 {
        (0..self.ranks.len() as u64)
            .filter_map(|m| self.top_degree(m))
            .max()
            .unwrap_or(-1)
    }

    /// `1 + max { i : H̃_i(Δ_U) != 0 for some U }`.
    pub fn regularity(&self) -> i64 {
        1 + self.max_top_degree()
    }

    /// `β_{i,U} = rank H̃_{|U|−i−1}(Δ_U)`.
    pub fn betti(&self, i: usize, mask: u64) -> u64 {
        self.rank(mask, mask.count_ones() as i64 - i as i64 - 1)
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut entries = Vec::new();
        for i in 0..=self.vertices.len() {
            for mask in 0..self.ranks.len() as u64 {
                let value = self.betti(i, mask);
                if value > 0 {
                    entries.push(BettiEntry {
                        i,
                        u: self.subset(mask),
                        value,
                    });
                }
            }
        }
        BettiTable { n: self.n, entries }
    }

    pub fn betti_coarse(&self, i: usize) -> u64 {
        (0..self.ranks.len() as u64).map(|m| self.betti(i, m)).sum()
    }

    /// Every nonzero `H̃_i(Δ_U)`.
    pub fn nonzero(&self) -> Vec<SubsetHomology> {
        let mut out = Vec::new();
        for mask in 0..self.ranks.len() as u64 {
            for (i, &rank) in self.ranks[mask as usize].iter().enumerate() {
                if rank > 0 {
                    out.push(SubsetHomology {
                        u: self.subset(mask),
                        degree: i as i64 - 1,
                        rank,
                    });
                }
            }
        }
        out
    }

    /// `β_1 − Σ_i C(λ_i, 2)`, the number of minimal generators of `C`.
    pub fn mu_c(&self, sieve: &Sieve) -> Result<u64> {
        if self.n < 2 {
            return Ok(0);
        }
        let pairs: u64 = sieve
            .lambda_vector(self.n)?
            .parts
            .iter()
            .map(|&l| binom(l as i64, 2))
            .sum::<Result<u64>>()?;
        self.betti_coarse(1)
            .checked_sub(pairs)
            .ok_or_else(|| Error::domain("β_1 below the column pair count"))
    }

    pub fn poincare_series(&self, t_max: usize) -> Result<PoincareSeries> {
        let polynomial_ring = (0..=t_max).map(|i| self.betti_coarse(i)).collect();
        let mut square_zero_ring = vec![0u64; t_max + 1];
        for mask in 0..self.ranks.len() as u64 {
            let size = mask.count_ones() as i64;
            for i in 0..=t_max.min(size as usize) {
                let b = self.betti(i, mask);
                if b == 0 {
                    continue;
                }
                for (k, slot) in square_zero_ring.iter_mut().enumerate().skip(i) {
                    let d = (k - i) as i64;
                    let add = binom(size + d - 1, d)?
                        .checked_mul(b)
                        .ok_or(Error::Overflow("Poincaré coefficient"))?;
                    *slot = slot
                        .checked_add(add)
                        .ok_or(Error::Overflow("Poincaré coefficient"))?;
                }
            }
        }
        Ok(PoincareSeries {
            n: self.n,
            t_max,
            polynomial_ring,
            square_zero_ring,
        })
    }

    /// `Σ_U Σ_{ℓ=−1}^{|U|−1} C(ℓ+i, ℓ+1+i−|U|) rank H̃_ℓ(Δ_U)`.
    pub fn exterior_betti(&self, i: usize) -> Result<u64> {
        let i = i as i64;
        let mut total = 0u64;
        for mask in 0..self.ranks.len() as u64 {
            let size = mask.count_ones() as i64;
            for l in -1..size {
                let rank = self.rank(mask, l);
                if rank == 0 {
                    continue;
                }
                let term = binom(l + i, l + 1 + i - size)?
                    .checked_mul(rank)
                    .ok_or(Error::Overflow("exterior Betti number"))?;
                total = total
                    .checked_add(term)
                    .ok_or(Error::Overflow("exterior Betti number"))?;
            }
        }
        Ok(total)
    }
}

pub fn hochster_betti(sieve: &Sieve, n: u64, cap: usize) -> Result<BettiTable> {
    Ok(subset_homology_scan(sieve, n, cap)?.betti_table())
}

pub fn mu_c_via_homology(sieve: &Sieve, n: u64, cap: usize) -> Result<u64> {
    subset_homology_scan(sieve, n, cap)?.mu_c(sieve)
}

pub fn regularity(sieve: &Sieve, n: u64, cap: usize) -> Result<i64> {
    Ok(subset_homology_scan(sieve, n, cap)?.regularity())
}

pub fn poincare_series(sieve: &Sieve, n: u64, t_max: usize, cap: usize) -> Result<PoincareSeries> {
    subset_homology_scan(sieve, n, cap)?.poincare_series(t_max)
}

pub fn exterior_betti(sieve: &Sieve, n: u64, i: usize, cap: usize) -> Result<u64> {
    subset_homology_scan(sieve, n, cap)?.exterior_betti(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith;
    use crate::presentation::{generators, mu_counts};
    use proptest::prelude::*;

    fn sieve() -> Sieve {
        Sieve::new(10_000).unwrap()
    }

    /// Number of connected components of the 1-skeleton, by flood fill.
    fn components(c: &SimplicialComplex) -> usize {
        let vs = c.vertices();
        let edges = c.edges();
        let mut seen = vec![false; vs.len()];
        let mut count = 0;
        for start in 0..vs.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(a) = stack.pop() {
                for &(x, y) in &edges {
                    for (from, to) in [(x, y), (y, x)] {
                        if from == vs[a] {
                            let b = vs.binary_search(&to).unwrap();
                            if !seen[b] {
                                seen[b] = true;
                                stack.push(b);
                            }
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn delta_ten_homology() {
        let s = sieve();
        let c = SimplicialComplex::build(&s, 10).unwrap();
        let h = reduced_homology(&c).unwrap();
        assert_eq!(h.rank(-1), 0);
        assert_eq!(h.rank(0), 4);
        assert_eq!(h.rank(1), 0);
        assert_eq!(components(&c) as u64 - 1, h.rank(0));
        assert_eq!(homological_degree(&s, 10).unwrap(), 0);
    }

    #[test]
    fn hollow_triangle_and_empty() {
        let s = sieve();
        let c = SimplicialComplex::build(&s, 29).unwrap();
        let hollow = c.induced(&[2, 3, 5]).unwrap();
        let h = reduced_homology(&hollow).unwrap();
        assert_eq!(h.rank(1), 1);
        assert_eq!(h.rank(0), 0);
        // 3 vertices, 3 edges: χ̃ = −1 + 3 − 3
        assert_eq!(h.reduced_euler_characteristic(), -1);
        let empty = reduced_homology(&c.induced(&[]).unwrap()).unwrap();
        assert_eq!(empty.rank(-1), 1);
        assert_eq!(empty.top_degree(), Some(-1));
    }

    #[test]
    fn boundary_squares_vanish() {
        let s = sieve();
        for n in [10, 30, 60, 210, 420] {
            let ms = boundary_matrices(&SimplicialComplex::build(&s, n).unwrap());
            for w in ms.windows(2) {
                assert!(w[0].mul(&w[1]).is_zero(), "n = {n}");
            }
        }
    }

    #[test]
    fn homological_degree_is_v() {
        let s = sieve();
        assert_eq!(homological_degree(&s, 15).unwrap(), 1);
        assert_eq!(homological_degree(&s, 30).unwrap(), 1);
        assert_eq!(homological_degree(&s, 1).unwrap(), -1);
        assert_eq!(homological_degree(&s, 2).unwrap(), -1);
        for n in 3..=60 {
            assert_eq!(homological_degree(&s, n).unwrap(), arith::v(n), "n = {n}");
        }
    }

    #[test]
    fn torsion_free() {
        let s = sieve();
        for n in 1..=100 {
            let h = reduced_homology(&SimplicialComplex::build(&s, n).unwrap()).unwrap();
            assert!(h.is_torsion_free(), "n = {n}");
        }
    }

    #[test]
    fn subset_scan_examples() {
        let s = sieve();
        let ten = subset_homology_scan(&s, 10, 20).unwrap();
        assert_eq!(ten.subset_count(), 128);
        assert_eq!(ten.max_top_degree(), 0);
        assert_eq!(
            subset_homology_scan(&s, 15, 20).unwrap().max_top_degree(),
            1
        );
        let six = subset_homology_scan(&s, 6, 20).unwrap();
        // vertices 2,3,4,5: U = {2,3} is mask 0b0011
        assert_eq!(six.rank(0b0011, 0), 0);
        assert_eq!(six.rank(0b0101, 0), 1);
        assert_eq!(
            subset_homology_scan(&s, 100, 20),
            Err(Error::SubsetCap {
                vertices: 35,
                cap: 20
            })
        );
    }

    #[test]
    fn betti_numbers() {
        let s = sieve();
        let ten = subset_homology_scan(&s, 10, 20).unwrap();
        let table = ten.betti_table();
        assert_eq!(table.coarse()[0], 1);
        assert_eq!(table.coarse()[1], 19);
        assert!(table.entries.iter().all(|e| e.u.len() >= e.i));
        for n in 2..=30 {
            let scan = subset_homology_scan(&s, n, 20).unwrap();
            let mu = mu_counts(&s, n).unwrap();
            assert_eq!(scan.betti_coarse(0), 1);
            assert_eq!(scan.betti_coarse(1), mu.mu_b + mu.mu_c, "n = {n}");
            assert_eq!(scan.mu_c(&s).unwrap(), mu.mu_c, "n = {n}");
        }
    }

    /// Minimal non-faces counted directly: subsets of vertices that are not
    /// faces while every proper subset is.
    #[test]
    fn beta_one_is_minimal_nonfaces() {
        let s = sieve();
        for n in [6, 10, 12, 15] {
            let c = SimplicialComplex::build(&s, n).unwrap();
            let vs = c.vertices();
            let is_face = |set: &[u64]| -> bool {
                let product: u128 = set.iter().map(|&x| x as u128).product();
                set.iter().enumerate().all(|(a, x)| {
                    set[a + 1..]
                        .iter()
                        .all(|y| num_integer::Integer::gcd(x, y) == 1)
                }) && product <= n as u128
            };
            let mut count = 0;
            for mask in 1u64..1 << vs.len() {
                let set: Vec<u64> = (0..vs.len())
                    .filter(|&b| mask >> b & 1 == 1)
                    .map(|b| vs[b])
                    .collect();
                if !is_face(&set)
                    && (0..set.len()).all(|d| {
                        let mut sub = set.clone();
                        sub.remove(d);
                        is_face(&sub)
                    })
                {
                    count += 1;
                }
            }
            let betti = subset_homology_scan(&s, n, 20).unwrap().betti_coarse(1);
            assert_eq!(betti, count, "n = {n}");
            let pres = generators(&s, n).unwrap();
            assert_eq!(count, (pres.gens_b.len() + pres.gens_c.len()) as u64);
        }
    }

    #[test]
    fn regularity_is_one_plus_v() {
        let s = sieve();
        assert_eq!(regularity(&s, 10, 20).unwrap(), 1);
        assert_eq!(regularity(&s, 15, 20).unwrap(), 2);
        for n in 1..=22 {
            assert_eq!(regularity(&s, n, 20).unwrap(), 1 + arith::v(n), "n = {n}");
        }
    }

    #[test]
    fn poincare_examples() {
        let s = sieve();
        let ten = poincare_series(&s, 10, 6, 20).unwrap();
        assert_eq!(ten.polynomial_ring[0], 1);
        assert_eq!(ten.polynomial_ring[1], 19);
        assert_eq!(ten.square_zero_ring[0], 1);
        // Δ([3]) is two points: 1 + t/(1 − t)², by hand
        let three = poincare_series(&s, 3, 6, 20).unwrap();
        assert_eq!(three.square_zero_ring, vec![1, 1, 2, 3, 4, 5, 6]);
        assert_eq!(three.polynomial_ring, vec![1, 1, 0, 0, 0, 0, 0]);
        // 𝒜_[2] is the square-zero ring itself
        assert_eq!(
            poincare_series(&s, 2, 4, 20).unwrap().square_zero_ring,
            vec![1, 0, 0, 0, 0]
        );
    }

    #[test]
    fn exterior_matches_square_zero_series() {
        let s = sieve();
        for n in [1, 2, 3, 6, 10, 15, 20] {
            let scan = subset_homology_scan(&s, n, 20).unwrap();
            let series = scan.poincare_series(8).unwrap();
            assert_eq!(scan.exterior_betti(0).unwrap(), 1);
            for i in 0..=8 {
                assert_eq!(
                    scan.exterior_betti(i).unwrap(),
                    series.square_zero_ring[i],
                    "n={n} i={i}"
                );
            }
        }
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binom(-1, 0).unwrap(), 1);
        assert_eq!(binom(-1, 1).unwrap(), 0);
        assert_eq!(binom(3, -1).unwrap(), 0);
        assert_eq!(binom(2, 3).unwrap(), 0);
        assert_eq!(binom(10, 3).unwrap(), 120);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn euler_characteristic(n in 1u64..200, mask in any::<u64>()) {
            let s = Sieve::new(200).unwrap();
            let c = SimplicialComplex::build(&s, n).unwrap();
            let vs = c.vertices();
            let u: Vec<u64> = (0..vs.len()).filter(|&b| mask >> (b % 64) & 1 == 1).map(|b| vs[b]).collect();
            let sub = c.induced(&u).unwrap();
            let alternating: i64 = sub
                .f_vector()
                .iter()
                .enumerate()
                .map(|(card, &f)| if card % 2 == 1 { f as i64 } else { -(f as i64) })
                .sum();
            prop_assert_eq!(reduced_homology(&sub).unwrap().reduced_euler_characteristic(), alternating);
        }
    }
}
