//! Exact integer primitives: gcd, primality, factorization, φ and modpow.
//!
//! Everything here is arbitrary precision. Signed inputs follow the usual
//! conventions: the gcd is always non-negative and residues live in `[0, m)`.

mod factor;
mod prime;

pub use factor::{factorize, totient, Factorization};
pub use prime::{is_prime, PROBABILISTIC_ROUNDS};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Greatest common divisor of `|a|` and `|b|`.
///
/// Never negative; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigUint {
    gcd_nat(a.magnitude(), b.magnitude())
}

/// Euclid on naturals.
pub fn gcd_nat(a: &BigUint, b: &BigUint) -> BigUint {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let r = &x % &y;
        x = std::mem::replace(&mut y, r);
    }
    x
}

/// Least non-negative residue of `a` modulo `m`. `m` must be nonzero.
pub fn residue(a: &BigInt, m: &BigUint) -> BigUint {
    let r = a.magnitude() % m;
    if a.sign() == Sign::Minus && !r.is_zero() {
        m - r
    } else {
        r
    }
}

/// `base^exp mod m` in `[0, m)` by left-to-right square-and-multiply.
///
/// `0^0` is taken to be 1, so `mod_pow(0, 0, m) = 1 mod m`.
pub fn mod_pow(base: &BigInt, exp: &BigUint, m: &BigUint) -> Result<BigUint> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    Ok(pow_mod_nat(&residue(base, m), exp, m))
}

/// Square-and-multiply on an already reduced base. `m` must be nonzero.
pub(crate) fn pow_mod_nat(base: &BigUint, exp: &BigUint, m: &BigUint) -> BigUint {
    if m.is_one() {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in (0..exp.bits()).rev() {
        acc = (&acc * &acc) % m;
        if exp.bit(i) {
            acc = (acc * base) % m;
        }
    }
    acc
}

/// `|a - b|` for naturals.
pub(crate) fn abs_diff(a: &BigUint, b: &BigUint) -> BigUint {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

/// Exact quotient helper used where divisibility is an invariant.
pub(crate) fn div_exact(n: &BigUint, d: &BigUint) -> BigUint {
    let (q, r) = n.div_rem(d);
    debug_assert!(r.is_zero(), "{d} does not divide {n}");
    q
}
