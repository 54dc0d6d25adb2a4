//! The lexicographic facet order of `Δ([n])` and a Björner–Wachs shelling
//! check for arbitrary facet orders.

use std::cmp::Ordering;

use serde::Serialize;

use crate::arith::Sieve;
use crate::complex::SimplicialComplex;
use crate::error::Result;

/// `σ` beats `τ` when the least element of `σ Δ τ` lies in `σ`; the empty set
/// is the least set.
pub fn lex_compare(sigma: &[u64], tau: &[u64]) -> Ordering {
    let (mut a, mut b) = (sigma.iter().peekable(), tau.iter().peekable());
    loop {
        match (a.peek(), b.peek()) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(x), Some(y)) => match x.cmp(y) {
                Ordering::Equal => {
                    a.next();
                    b.next();
                }
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            },
        }
    }
}

/// Facets as ascending vertex sets, in the order to be tested.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetOrder {
    pub facets: Vec<Vec<u64>>,
}

impl FacetOrder {
    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn reversed(&self) -> FacetOrder {
        FacetOrder {
            facets: self.facets.iter().rev().cloned().collect(),
        }
    }
}

/// Facets of `Δ([n])`, strictly decreasing under [`lex_compare`].
pub fn shelling_order(sieve: &Sieve, n: u64) -> Result<FacetOrder> {
    let complex = SimplicialComplex::build(sieve, n)?;
    let mut facets: Vec<Vec<u64>> = complex
        .facets()
        .into_iter()
        .map(|k| complex.vertex_set(k))
        .collect();
    facets.sort_by(|a, b| lex_compare(b, a));
    Ok(FacetOrder { facets })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ShellingVerdict {
    Shelling,
    /// 0-based positions `i < k` where no admissible `j, x` exists.
    Violation {
        i: usize,
        k: usize,
    },
}

impl ShellingVerdict {
    pub fn is_shelling(&self) -> bool {
        matches!(self, ShellingVerdict::Shelling)
    }
}

/// For all `i < k` there must be `j < k` and `x ∈ F_k` with
/// `F_i ∩ F_k ⊆ F_j ∩ F_k = F_k ∖ {x}`.
///
/// `F_j ∩ F_k = F_k ∖ {x}` only depends on `k` and `x`, so the admissible `x`
/// are collected once per `k`; the condition for `i` is then `x ∉ F_i`.
pub fn verify_shelling(order: &FacetOrder) -> ShellingVerdict {
    let facets = &order.facets;
    for k in 1..facets.len() {
        let fk = &facets[k];
        let admissible: Vec<u64> = fk
            .iter()
            .copied()
            .filter(|&x| {
                facets[..k]
                    .iter()
                    .any(|fj| !fj.contains(&x) && fk.iter().all(|&y| y == x || fj.contains(&y)))
            })
            .collect();
        for (i, fi) in facets[..k].iter().enumerate() {
            if !admissible.iter().any(|x| !fi.contains(x)) {
                return ShellingVerdict::Violation { i, k };
            }
        }
    }
    ShellingVerdict::Shelling
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sieve() -> Sieve {
        Sieve::new(10_000).unwrap()
    }

    /// The recursion `σ ≥ τ` iff `τ = ∅`, or `a₁ > b₁`, or equal heads and the
    /// tails compare, read literally on ascending lists.
    fn printed_lex_compare(sigma: &[u64], tau: &[u64]) -> Ordering {
        match (sigma.first(), tau.first()) {
            (None, None) => Ordering::Equal,
            (_, None) => Ordering::Greater,
            (None, _) => Ordering::Less,
            (Some(a), Some(b)) if a == b => printed_lex_compare(&sigma[1..], &tau[1..]),
            (Some(a), Some(b)) => a.cmp(b),
        }
    }

    #[test]
    fn compare_examples() {
        assert_eq!(lex_compare(&[2, 3], &[2, 5]), Ordering::Greater);
        assert_eq!(lex_compare(&[2, 5], &[4]), Ordering::Greater);
        assert_eq!(lex_compare(&[7], &[]), Ordering::Greater);
        assert_eq!(lex_compare(&[], &[]), Ordering::Equal);
        assert_eq!(lex_compare(&[2, 3], &[2]), Ordering::Greater);
    }

    #[test]
    fn order_examples() {
        let s = sieve();
        assert_eq!(
            shelling_order(&s, 10).unwrap().facets,
            vec![vec![2, 3], vec![2, 5], vec![4], vec![7], vec![8], vec![9]]
        );
        assert_eq!(
            shelling_order(&s, 6).unwrap().facets,
            vec![vec![2, 3], vec![4], vec![5]]
        );
        assert_eq!(shelling_order(&s, 2).unwrap().facets, vec![vec![2]]);
    }

    #[test]
    fn lex_order_shells() {
        let s = sieve();
        for n in 2..=200 {
            let order = shelling_order(&s, n).unwrap();
            assert_eq!(
                verify_shelling(&order),
                ShellingVerdict::Shelling,
                "n = {n}"
            );
        }
    }

    #[test]
    fn other_orders_are_only_reported() {
        let s = sieve();
        let order = shelling_order(&s, 10).unwrap();
        // the printed recursion orders facets by their smallest vertex, which
        // here is the reverse of the shelling order; the edge {2,5} then meets
        // nothing earlier in a codimension-one face
        let mut printed = order.facets.clone();
        printed.sort_by(|a, b| printed_lex_compare(b, a));
        assert_eq!(
            printed,
            vec![vec![9], vec![8], vec![7], vec![4], vec![2, 5], vec![2, 3]]
        );
        assert_eq!(printed, order.reversed().facets);
        assert_eq!(
            verify_shelling(&FacetOrder { facets: printed }),
            ShellingVerdict::Violation { i: 0, k: 4 }
        );
    }

    #[test]
    fn two_disjoint_edges_do_not_shell() {
        let order = FacetOrder {
            facets: vec![vec![1, 2], vec![3, 4]],
        };
        assert_eq!(
            verify_shelling(&order),
            ShellingVerdict::Violation { i: 0, k: 1 }
        );
        let path = FacetOrder {
            facets: vec![vec![1, 2], vec![2, 3], vec![3, 4]],
        };
        assert!(verify_shelling(&path).is_shelling());
    }

    fn subset() -> impl Strategy<Value = Vec<u64>> {
        let s = Sieve::new(100).unwrap();
        let pps = s.prime_powers().to_vec();
        proptest::sample::subsequence(pps.clone(), 0..=pps.len())
    }

    proptest! {
        #[test]
        fn boolean_term_order(a in subset(), b in subset(), w in 0usize..25) {
            let s = Sieve::new(100).unwrap();
            let w = s.prime_powers()[w];
            prop_assume!(!a.contains(&w) && !b.contains(&w));
            let (hi, lo) = if lex_compare(&a, &b) == Ordering::Less { (b, a) } else { (a, b) };
            let add = |set: &[u64]| {
                let mut out = set.to_vec();
                out.push(w);
                out.sort_unstable();
                out
            };
            prop_assert_ne!(lex_compare(&add(&hi), &add(&lo)), Ordering::Less);
            prop_assert_ne!(lex_compare(&add(&lo), &lo), Ordering::Less);
        }

        #[test]
        fn total_and_antisymmetric(a in subset(), b in subset()) {
            prop_assert_eq!(lex_compare(&a, &b), lex_compare(&b, &a).reverse());
            prop_assert_eq!(lex_compare(&a, &b) == Ordering::Equal, a == b);
        }
    }
}
