use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::prime::{is_prime, small_primes, TRIAL_BOUND};
use super::{abs_diff, gcd_nat};
use crate::error::{Error, Result};

/// Prime factorization of a positive integer.
///
/// Primes are strictly increasing and every exponent is at least 1. The
/// factorization of 1 is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: BigUint,
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn n(&self) -> &BigUint {
        &self.n
    }

    /// `(prime, exponent)` pairs in increasing prime order.
    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiplies the factors back together.
    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    /// φ(n) = ∏ p^(e-1) (p - 1).
    pub fn totient(&self) -> BigUint {
        self.factors.iter().fold(BigUint::one(), |acc, (p, e)| {
            acc * p.pow(*e - 1) * (p - 1u32)
        })
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factors `n` by trial division over the primes below 1000, then splits any
/// composite remainder with Brent's variant of Pollard rho.
pub fn factorize(n: &BigUint) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroArgument("factorize"));
    }
    let mut counts: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut rest = n.clone();

    for &p in small_primes() {
        if rest.is_one() {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&BigUint::from(p));
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            counts.insert(BigUint::from(p), e);
        }
    }

    let bound_sq = BigUint::from(TRIAL_BOUND) * TRIAL_BOUND;
    let mut pending = Vec::new();
    if !rest.is_one() {
        pending.push(rest);
    }
    while let Some(x) = pending.pop() {
        // no prime factor below TRIAL_BOUND remains, so x < TRIAL_BOUND^2 is prime
        if x < bound_sq || is_prime(&x) {
            *counts.entry(x).or_insert(0) += 1;
            continue;
        }
        if let Some((root, k)) = perfect_power(&x) {
            pending.extend(std::iter::repeat_n(root, k as usize));
            continue;
        }
        let d = split(&x);
        let other = &x / &d;
        pending.push(d);
        pending.push(other);
    }

    Ok(Factorization {
        n: n.clone(),
        factors: counts.into_iter().collect(),
    })
}

/// Euler's φ(n), computed from the factorization of `n`.
pub fn totient(n: &BigUint) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::ZeroArgument("totient"));
    }
    Ok(factorize(n)?.totient())
}

/// `(r, k)` with `r^k = n` and `k ≥ 2`, preferring the largest `k`. `n` has
/// no prime factor below 1000, so `r ≥ 1000` bounds `k`.
fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    let max_k = n.bits() / 9 + 1;
    (2..=max_k as u32).rev().find_map(|k| {
        let r = n.nth_root(k);
        (r.pow(k) == *n).then_some((r, k))
    })
}

/// A nontrivial divisor of the odd composite `n`.
fn split(n: &BigUint) -> BigUint {
    (1u32..)
        .find_map(|c| brent_attempt(n, &BigUint::from(c)))
        .expect("some polynomial x^2 + c splits every composite")
}

const GCD_BATCH: usize = 128;

fn brent_attempt(n: &BigUint, c: &BigUint) -> Option<BigUint> {
    let step = |x: &BigUint| (x * x + c) % n;

    let one = BigUint::one();
    let mut y = BigUint::from(2u8);
    let mut x = y.clone();
    let mut saved = y.clone();
    let mut q = one.clone();
    let mut g = one.clone();
    let mut r = 1usize;

    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            saved = y.clone();
            for _ in 0..GCD_BATCH.min(r - k) {
                y = step(&y);
                q = (q * abs_diff(&x, &y)) % n;
            }
            g = gcd_nat(&q, n);
            k += GCD_BATCH;
        }
        r *= 2;
    }

    if &g == n {
        // the batch overshot; replay it one gcd at a time
        loop {
            saved = step(&saved);
            g = gcd_nat(&abs_diff(&x, &saved), n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}
