//! Generalized Euler congruence for arbitrary integers.
//!
//! For any integer `a` and nonzero modulus `m`, repeatedly splitting off
//! gcds yields a depth `s` and a reduced modulus `m_s` coprime to `a` with
//!
//! ```text
//! a^(φ(m_s) + s) ≡ a^s  (mod m)
//! ```
//!
//! which holds even when `gcd(a, m) ≠ 1`. The [`reduction`] module builds
//! that chain and uses it to fold huge exponents; [`arith`] supplies the exact
//! integer primitives; [`cli`] is the `gencong` front end.
//!
//! ```
//! use gencong::{build_chain, reduced_pow};
//! use num_bigint::{BigInt, BigUint};
//!
//! let chain = build_chain(&BigInt::from(6), &BigInt::from(105765)).unwrap();
//! assert_eq!(chain.depth(), 1);
//! assert_eq!(chain.reduced_modulus(), &BigUint::from(35255u32));
//!
//! let r = reduced_pow(&BigInt::from(6), &BigUint::from(25604u32), &BigInt::from(105765)).unwrap();
//! assert_eq!(r, BigUint::from(1296u32));
//! ```

pub mod arith;
pub mod cli;
mod error;
pub mod reduction;

pub use arith::{factorize, gcd, is_prime, mod_pow, totient, Factorization};
pub use error::{Error, Result};
pub use reduction::{
    build_chain, reduce_exponent, reduced_pow, verify_theorem, ReductionChain, ReductionStep,
    TheoremCheck,
};
