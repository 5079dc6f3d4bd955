//! Seifert data of a Brieskorn homology sphere `Σ(a_1, ..., a_n)`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// A validated tuple together with every derived Seifert quantity.
///
/// For each fiber `i`:
/// `b_i = A / a_i`, `beta_i * b_i = -1 (mod a_i)`, `q_i = -b_i (mod a_i)`
/// (the inverse of `beta_i`), and `gamma_i = m * beta_i (mod a_i)`, all
/// normalized to `[0, a_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrieskornData {
    pub a: Vec<u64>,
    /// `A`, the product of the `a_i`.
    #[serde(rename = "A")]
    pub product: u64,
    pub b: Vec<u64>,
    pub beta: Vec<u64>,
    pub q: Vec<u64>,
    /// Degree of the orbifold canonical bundle, `(n - 2) - sum 1/a_i`.
    pub kappa: Rational,
    /// Degree of the fibration, `-1/A`.
    pub ell: Rational,
    /// `sum b_i`.
    pub u: u64,
    /// Fractional part of `kappa / (2 ell)`: `1/2` for even `A`, `0` for odd.
    pub rho: Rational,
    /// `kappa / (2 ell) - rho`.
    pub m: i64,
    pub gamma: Vec<u64>,
}

impl BrieskornData {
    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn is_product_even(&self) -> bool {
        self.product % 2 == 0
    }
}

pub fn is_pairwise_coprime(a: &[u64]) -> bool {
    first_common_factor(a).is_none()
}

fn first_common_factor(a: &[u64]) -> Option<(usize, usize)> {
    (0..a.len())
        .flat_map(|i| (i + 1..a.len()).map(move |j| (i, j)))
        .find(|&(i, j)| a[i].gcd(&a[j]) != 1)
}

/// Inverse of `value` modulo `modulus`, in `[0, modulus)`. Requires coprimality.
fn mod_inverse(value: u64, modulus: u64) -> u64 {
    let m = modulus as i128;
    let g = (value as i128).extended_gcd(&m);
    debug_assert_eq!(g.gcd, 1);
    g.x.mod_floor(&m) as u64
}

/// Validates `a` and derives the full Seifert data. Order of `a` is kept.
pub fn derive(a: &[u64]) -> Result<BrieskornData> {
    let n = a.len();
    if n < 3 {
        return Err(Error::TooFewFibers(n));
    }
    if let Some(index) = a.iter().position(|&v| v < 2) {
        return Err(Error::BadGenerator {
            index,
            value: a[index],
        });
    }
    if let Some((i, j)) = first_common_factor(a) {
        return Err(Error::NotPairwiseCoprime {
            first: i,
            second: j,
            first_value: a[i],
            second_value: a[j],
        });
    }
    let product = a
        .iter()
        .try_fold(1u64, |acc, &v| acc.checked_mul(v))
        .filter(|&p| p <= i64::MAX as u64 / 8)
        .ok_or(Error::Overflow)?;

    let b: Vec<u64> = a.iter().map(|&ai| product / ai).collect();
    let beta: Vec<u64> = a
        .iter()
        .zip(&b)
        .map(|(&ai, &bi)| (ai - mod_inverse(bi % ai, ai)) % ai)
        .collect();
    let q: Vec<u64> = a.iter().zip(&b).map(|(&ai, &bi)| (ai - bi % ai) % ai).collect();

    let kappa = Rational::from((n - 2) as u64)
        - a.iter().map(|&ai| Rational::new(1, ai)).sum::<Rational>();
    let ell = Rational::new(-1, product);
    let u: u64 = b.iter().sum();
    let even = product % 2 == 0;
    let rho = if even { Rational::half() } else { Rational::zero() };

    // kappa / (2 ell) = (u - (n-2) A) / 2
    let twice_m = u as i128 - (n as i128 - 2) * product as i128 - i128::from(even);
    if twice_m % 2 != 0 {
        return Err(Error::InternalInconsistency(format!(
            "kappa/(2 ell) - rho is not an integer for {a:?}"
        )));
    }
    let m = (twice_m / 2) as i64;
    let gamma: Vec<u64> = a
        .iter()
        .zip(&beta)
        .map(|(&ai, &bi)| (m as i128 * bi as i128).mod_floor(&(ai as i128)) as u64)
        .collect();

    Ok(BrieskornData {
        a: a.to_vec(),
        product,
        b,
        beta,
        q,
        kappa,
        ell,
        u,
        rho,
        m,
        gamma,
    })
}

/// Sorted pairwise-coprime tuples `2 <= a_1 < ... < a_n` with product at most
/// `max_product`, in lexicographic order.
pub fn enumerate_tuples(n: usize, max_product: u64) -> TupleIter {
    TupleIter {
        n,
        max_product: max_product as u128,
        current: if n == 0 { Vec::new() } else { vec![2] },
    }
}

/// Depth-first walk over candidate prefixes. A prefix is abandoned once even
/// the smallest conceivable completion `v (v+1) ... (v+r)` exceeds the bound.
#[derive(Debug, Clone)]
pub struct TupleIter {
    n: usize,
    max_product: u128,
    current: Vec<u64>,
}

impl TupleIter {
    fn prefix_product(&self, len: usize) -> u128 {
        self.current[..len].iter().map(|&v| v as u128).product()
    }

    fn completion_bound(&self, depth: usize, value: u64) -> u128 {
        let mut bound = self.prefix_product(depth);
        for j in 0..(self.n - depth) as u64 {
            bound = bound.saturating_mul(value as u128 + j as u128);
        }
        bound
    }

    fn bump_last(&mut self) {
        if let Some(last) = self.current.last_mut() {
            *last += 1;
        }
    }
}

impl Iterator for TupleIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        loop {
            let depth = self.current.len().checked_sub(1)?;
            let value = self.current[depth];
            if self.completion_bound(depth, value) > self.max_product {
                self.current.pop();
                self.bump_last();
                continue;
            }
            if self.current[..depth].iter().any(|&p| p.gcd(&value) != 1) {
                self.bump_last();
                continue;
            }
            if depth + 1 == self.n {
                let out = self.current.clone();
                self.bump_last();
                return Some(out);
            }
            self.current.push(value + 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn derive_235() {
        let d = derive(&[2, 3, 5]).unwrap();
        assert_eq!(d.product, 30);
        assert_eq!(d.b, vec![15, 10, 6]);
        assert_eq!(d.beta, vec![1, 2, 4]);
        assert_eq!(d.q, vec![1, 2, 4]);
        assert_eq!(d.kappa, r(-1, 30));
        assert_eq!(d.ell, r(-1, 30));
        assert_eq!(d.u, 31);
        assert_eq!(d.rho, r(1, 2));
        assert_eq!(d.m, 0);
        assert_eq!(d.gamma, vec![0, 0, 0]);
    }

    #[test]
    fn derive_237_and_errors() {
        let d = derive(&[2, 3, 7]).unwrap();
        assert_eq!(d.product, 42);
        assert_eq!(d.kappa, r(1, 42));
        assert_eq!(d.rho, r(1, 2));
        assert_eq!(
            derive(&[2, 4, 5]),
            Err(Error::NotPairwiseCoprime {
                first: 0,
                second: 1,
                first_value: 2,
                second_value: 4
            })
        );
        assert_eq!(derive(&[2, 3]), Err(Error::TooFewFibers(2)));
        assert_eq!(
            derive(&[2, 1, 5]),
            Err(Error::BadGenerator { index: 1, value: 1 })
        );
        assert_eq!(derive(&[2, 4, 5]).unwrap_err().to_string(), "not pairwise coprime (2,4)");
    }

    #[test]
    fn derive_four_fibers_uses_general_m() {
        // A odd, n = 4: u - A is odd, but u - 2A is even
        let d = derive(&[3, 5, 7, 11]).unwrap();
        assert_eq!(d.rho, Rational::zero());
        assert_eq!(d.m, -712);
        assert_eq!(d.gamma, vec![1, 2, 3, 5]);
        let d = derive(&[2, 3, 5, 7]).unwrap();
        assert_eq!(d.m, -87);
        assert_eq!(d.gamma, vec![1, 0, 1, 5]);
    }

    #[test]
    fn unsorted_input_is_accepted() {
        let d = derive(&[5, 2, 3]).unwrap();
        assert_eq!(d.beta, vec![4, 1, 2]);
    }

    #[test]
    fn coprimality() {
        assert!(is_pairwise_coprime(&[2, 3, 5]));
        assert!(!is_pairwise_coprime(&[6, 10, 15]));
        assert!(is_pairwise_coprime(&[2, 3, 5, 7]));
    }

    fn brute_force(n: usize, max_product: u64) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let top = max_product / 2 + 1;
        match n {
            3 => {
                for a in 2..top {
                    for b in a + 1..top {
                        for c in b + 1..top {
                            let t = vec![a, b, c];
                            if a * b * c <= max_product && is_pairwise_coprime(&t) {
                                out.push(t);
                            }
                        }
                    }
                }
            }
            4 => {
                for a in 2..top {
                    for b in a + 1..top {
                        for c in b + 1..top {
                            if a * b * c > max_product {
                                break;
                            }
                            for d in c + 1..top {
                                let t = vec![a, b, c, d];
                                if a * b * c * d <= max_product && is_pairwise_coprime(&t) {
                                    out.push(t);
                                }
                            }
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
        out
    }

    #[test]
    fn enumeration_examples() {
        let t30: Vec<_> = enumerate_tuples(3, 30).collect();
        assert_eq!(t30, vec![vec![2, 3, 5]]);
        assert!(enumerate_tuples(3, 29).next().is_none());
        let t105: Vec<_> = enumerate_tuples(3, 105).collect();
        assert_eq!(t105, brute_force(3, 105));
        assert_eq!(t105.len(), 10);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for bound in [210, 500, 1000] {
            assert_eq!(enumerate_tuples(3, bound).collect::<Vec<_>>(), brute_force(3, bound));
        }
        for bound in [210, 2310, 5000] {
            assert_eq!(enumerate_tuples(4, bound).collect::<Vec<_>>(), brute_force(4, bound));
        }
        assert_eq!(enumerate_tuples(4, 2310).count(), 111);
    }

    fn coprime_tuple() -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(2u64..60, 3..=5).prop_filter("pairwise coprime", |a| is_pairwise_coprime(a))
    }

    proptest! {
        #[test]
        fn derived_congruences(a in coprime_tuple()) {
            let d = derive(&a).unwrap();
            for i in 0..a.len() {
                let (ai, bi, be, qi) = (a[i], d.b[i], d.beta[i], d.q[i]);
                prop_assert_eq!(ai * bi, d.product);
                prop_assert_eq!((be * bi + 1) % ai, 0);
                prop_assert_eq!((qi + bi) % ai, 0);
                prop_assert_eq!((qi * be) % ai, 1 % ai);
                prop_assert!(be < ai && qi < ai && d.gamma[i] < ai);
                prop_assert_eq!((d.m as i128 * be as i128 - d.gamma[i] as i128).rem_euclid(ai as i128), 0);
            }
            // kappa / (2 ell) = m + rho
            prop_assert_eq!(&d.kappa / (&d.ell * Rational::from(2)), Rational::from(d.m) + &d.rho);
            prop_assert_eq!(d.rho == Rational::half(), d.product % 2 == 0);
        }
    }
}
