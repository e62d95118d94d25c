use std::sync::OnceLock;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::pow_mod_nat;

/// Bases that make Miller-Rabin deterministic for every n < 3.3 * 10^24,
/// which covers all of u64.
const DETERMINISTIC_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Extra random-base Miller-Rabin rounds run on inputs above 2^64, after the
/// fixed bases. A composite survives with probability at most 4^-20.
pub const PROBABILISTIC_ROUNDS: usize = 20;

/// Random bases are drawn from a fixed seed so results are reproducible.
const WITNESS_SEED: u64 = 0x0067_656e_636f_6e67;

/// Primes below this bound are kept in a table for trial division.
pub(crate) const TRIAL_BOUND: u32 = 1000;

pub(crate) fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_BOUND as usize;
        let mut sieve = vec![true; n];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i < n {
            if sieve[i] {
                for j in (i * i..n).step_by(i) {
                    sieve[j] = false;
                }
            }
            i += 1;
        }
        (0..n as u32).filter(|&p| sieve[p as usize]).collect()
    })
}

/// Primality test.
///
/// Exact for every n < 2^64. Above that, Miller-Rabin with the fixed bases
/// plus [`PROBABILISTIC_ROUNDS`] seeded random bases.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    for &p in small_primes() {
        if (n % p).to_u32() == Some(0) {
            return false;
        }
    }

    let one = BigUint::one();
    let n_minus_one = n - &one;
    let twos = n_minus_one.trailing_zeros().unwrap_or(0);
    let odd = &n_minus_one >> twos;

    let strong_probable_prime = |base: &BigUint| -> bool {
        let mut x = pow_mod_nat(base, &odd, n);
        if x == one || x == n_minus_one {
            return true;
        }
        for _ in 1..twos {
            x = (&x * &x) % n;
            if x == n_minus_one {
                return true;
            }
            if x == one {
                return false;
            }
        }
        false
    };

    if !DETERMINISTIC_BASES
        .iter()
        .all(|&b| strong_probable_prime(&BigUint::from(b)))
    {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(WITNESS_SEED);
    let low = BigUint::from(2u8);
    (0..PROBABILISTIC_ROUNDS).all(|_| {
        let base = rng.gen_biguint_range(&low, &n_minus_one);
        strong_probable_prime(&base)
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &DETERMINISTIC_BASES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    let twos = (n - 1).trailing_zeros();
    let odd = (n - 1) >> twos;
    'witness: for &a in &DETERMINISTIC_BASES {
        let mut x = pow_mod_u64(a, odd, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..twos {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
