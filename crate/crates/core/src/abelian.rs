//! Invariants of finitely generated abelian groups, `Z^r × C_d1 × … × C_dk`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Free rank plus invariant factors `d1 | d2 | … | dk`, every `di ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    #[serde(with = "factor_serde")]
    pub factors: Vec<BigUint>,
}

mod factor_serde {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    // small factors go out as JSON numbers, big ones as decimal strings
    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Factor {
        Small(u64),
        Big(String),
    }

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|d| match u64::try_from(d) {
                Ok(x) => Factor::Small(x),
                Err(_) => Factor::Big(d.to_string()),
            })
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<Factor>::deserialize(d)?
            .into_iter()
            .map(|f| match f {
                Factor::Small(x) => Ok(BigUint::from(x)),
                Factor::Big(s) => s.parse().map_err(serde::de::Error::custom),
            })
            .collect()
    }
}

impl AbelianInvariants {
    /// Checked constructor: factors must be ≥ 2 and form a divisibility chain.
    pub fn new(free_rank: usize, factors: Vec<BigUint>) -> Result<Self> {
        if factors.iter().any(|d| d < &BigUint::from(2u32)) {
            return Err(Error::InvalidArgument(
                "invariant factors must be at least 2".into(),
            ));
        }
        if factors.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
            return Err(Error::InvalidArgument(
                "invariant factors must form a divisibility chain".into(),
            ));
        }
        Ok(AbelianInvariants { free_rank, factors })
    }

    pub fn from_u64(free_rank: usize, factors: &[u64]) -> Result<Self> {
        AbelianInvariants::new(free_rank, factors.iter().map(|&d| d.into()).collect())
    }

    pub fn trivial() -> Self {
        AbelianInvariants {
            free_rank: 0,
            factors: vec![],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.factors.is_empty()
    }

    pub fn factors_u64(&self) -> Option<Vec<u64>> {
        self.factors.iter().map(|d| d.to_u64()).collect()
    }

    /// Order of the group, `None` when the free rank is positive.
    pub fn order(&self) -> Option<BigUint> {
        (self.free_rank == 0).then(|| self.factors.iter().product())
    }

    /// Minimal number of generators; 0 exactly for the trivial group.
    pub fn weight(&self) -> usize {
        self.free_rank + self.factors.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.weight() <= 1
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={}, [", self.free_rank)?;
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("])")
    }
}

/// Invariant factors of a finite abelian group.
///
/// Each Sylow subgroup's cyclic decomposition is read off from how many
/// elements have order dividing `p^k` for each `k`; the per-prime exponent
/// lists are then merged into a single divisibility chain.
pub fn abelian_invariants_finite(a: &FiniteGroup) -> Result<AbelianInvariants> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let orders = a.element_orders();
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for p in prime_factors(a.order() as u64) {
        // |{x : x^(p^k) = e}| = p^(sum_i min(k, e_i)), so the jump in the
        // exponent from k-1 to k counts the cyclic factors with e_i ≥ k
        let mut exponents_desc: Vec<u32> = Vec::new();
        let mut prev_log = 0u32;
        for k in 1u32.. {
            let pk = p.pow(k);
            let count = orders.iter().filter(|&&o| pk % o as u64 == 0).count() as u64;
            let log = ilog(p, count);
            let at_least_k = (log - prev_log) as usize;
            if at_least_k == 0 {
                break;
            }
            exponents_desc.resize(exponents_desc.len().max(at_least_k), 0);
            for e in exponents_desc.iter_mut().take(at_least_k) {
                *e = k;
            }
            prev_log = log;
        }
        per_prime.push((p, exponents_desc));
    }
    let len = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    // largest factor first: position i takes the i-th largest exponent of every prime
    let mut factors: Vec<BigUint> = (0..len)
        .map(|i| {
            per_prime
                .iter()
                .map(|(p, es)| BigUint::from(*p).pow(es.get(i).copied().unwrap_or(0)))
                .product()
        })
        .collect();
    factors.reverse();
    AbelianInvariants::new(0, factors)
}

fn ilog(p: u64, mut n: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0);
        n /= p;
        k += 1;
    }
    k
}

/// Distinct prime divisors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && prime_factors(p) == [p]
}

fn smallest_prime_factor(n: &BigUint) -> BigUint {
    let mut d = BigUint::from(2u32);
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            return d;
        }
        d += BigUint::one();
    }
    n.clone()
}

/// Minimal generator count of the abelian group; 0 iff trivial.
pub fn abelian_weight(inv: &AbelianInvariants) -> usize {
    inv.weight()
}

/// Largest `k` with a surjection onto `(C_p)^k`.
pub fn elementary_p_rank(inv: &AbelianInvariants, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = BigUint::from(p);
    Ok(inv.free_rank + inv.factors.iter().filter(|d| d.is_multiple_of(&p)).count())
}

/// A prime attaining the largest elementary rank, with that rank.
///
/// Every prime dividing the smallest factor attains rank `free_rank + k`,
/// so the answer is its smallest prime divisor; without torsion the prime
/// is 2 by convention.
pub fn max_elementary_rank(inv: &AbelianInvariants) -> (BigUint, usize) {
    match inv.factors.first() {
        Some(d1) => (smallest_prime_factor(d1), inv.weight()),
        None => (BigUint::from(2u32), inv.free_rank),
    }
}
