//! gcd reduction chains and exponent folding.
//!
//! Starting from `A = a`, `M = |m|`, each step takes `d = gcd(A, M)` and
//! `M' = M / d`. The walk stops at the first `d = 1`; its index is the depth
//! `s` and its `M'` is the reduced modulus `m_s`. Then
//! `a^(φ(m_s) + s) ≡ a^s (mod m)` for every integer `a` and nonzero `m`, so
//! any exponent `N ≥ s` can be replaced by `s + (N - s) mod φ(m_s)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::{div_exact, gcd, gcd_nat, mod_pow, pow_mod_nat, residue, totient};
use crate::error::{Error, Result};

/// One `(d_i, m_i)` row of a reduction chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReductionStep {
    pub index: usize,
    /// `d_0 = gcd(a, m)`, then `d_i = gcd(d_{i-1}, m_{i-1})`.
    pub d: BigUint,
    /// `m_i = m_{i-1} / d_i`, with `m_{-1} = |m|`.
    pub m_rem: BigUint,
}

/// The full chain for a pair `(a, m)`.
///
/// The terminal row (the one with `d = 1`) is kept, so `steps().len()` is
/// always `depth() + 1`. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionChain {
    a_input: BigInt,
    m_input: BigInt,
    m_norm: BigUint,
    steps: Vec<ReductionStep>,
    phi_ms: BigUint,
    a0: BigInt,
}

/// Builds the reduction chain of `a` modulo `m`.
///
/// The sign of `m` is irrelevant, and `a` only matters through
/// `gcd(a, m)`, so `a` and `a mod m` give the same steps.
pub fn build_chain(a: &BigInt, m: &BigInt) -> Result<ReductionChain> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    let m_norm = m.magnitude().clone();

    let mut steps = Vec::new();
    let mut carry = gcd(a, m);
    let mut modulus = m_norm.clone();
    for index in 0.. {
        let d = if index == 0 {
            carry.clone()
        } else {
            gcd_nat(&carry, &modulus)
        };
        let next = div_exact(&modulus, &d);
        let done = d.is_one();
        steps.push(ReductionStep {
            index,
            d: d.clone(),
            m_rem: next.clone(),
        });
        if done {
            break;
        }
        carry = d;
        modulus = next;
    }

    let m_s = &steps.last().expect("chain is nonempty").m_rem;
    let phi_ms = totient(m_s)?;
    let a0 = a / BigInt::from(steps[0].d.clone());

    Ok(ReductionChain {
        a_input: a.clone(),
        m_input: m.clone(),
        m_norm,
        steps,
        phi_ms,
        a0,
    })
}

impl ReductionChain {
    pub fn a_input(&self) -> &BigInt {
        &self.a_input
    }

    pub fn m_input(&self) -> &BigInt {
        &self.m_input
    }

    /// `|m|`.
    pub fn modulus(&self) -> &BigUint {
        &self.m_norm
    }

    pub fn steps(&self) -> &[ReductionStep] {
        &self.steps
    }

    /// `s`: index of the first step with `d = 1`.
    pub fn depth(&self) -> usize {
        self.steps.len() - 1
    }

    /// `m_s`, the part of `|m|` coprime to `a`.
    pub fn reduced_modulus(&self) -> &BigUint {
        &self.steps[self.depth()].m_rem
    }

    /// `φ(m_s)`.
    pub fn reduced_totient(&self) -> &BigUint {
        &self.phi_ms
    }

    /// `a / gcd(a, m)`.
    pub fn coprime_part(&self) -> &BigInt {
        &self.a0
    }

    /// `c_i = d_i / d_{i+1}` for `i < s`. Satisfies
    /// `|m| = m_s * ∏ c_i^(i+1)`.
    pub fn cofactors(&self) -> Vec<BigUint> {
        self.steps
            .windows(2)
            .map(|w| div_exact(&w[0].d, &w[1].d))
            .collect()
    }

    /// Folds `n` into `[0, s + φ(m_s))` without changing `a^n mod m`.
    ///
    /// Exponents below `s` are returned unchanged.
    pub fn reduce_exponent(&self, n: &BigUint) -> BigUint {
        let s = BigUint::from(self.depth());
        if n < &s {
            return n.clone();
        }
        (n - &s) % &self.phi_ms + s
    }
}

impl fmt::Display for ReductionChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut carry = self.a_input.to_string();
        let mut modulus = self.m_norm.clone();
        for step in &self.steps {
            let i = step.index;
            writeln!(
                f,
                "d_{i} = ({carry}, {modulus}) = {d}   m_{i} = {modulus} / {d} = {m}",
                d = step.d,
                m = step.m_rem
            )?;
            carry = step.d.to_string();
            modulus = step.m_rem.clone();
        }
        write!(
            f,
            "s={} m_s={} phi(m_s)={}",
            self.depth(),
            self.reduced_modulus(),
            self.phi_ms
        )
    }
}

/// Free-function form of [`ReductionChain::cofactors`].
pub fn cofactors(chain: &ReductionChain) -> Vec<BigUint> {
    chain.cofactors()
}

/// Free-function form of [`ReductionChain::reduce_exponent`].
pub fn reduce_exponent(chain: &ReductionChain, n: &BigUint) -> BigUint {
    chain.reduce_exponent(n)
}

/// Both sides of `a^(φ(m_s) + s) ≡ a^s (mod |m|)`, evaluated directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremCheck {
    pub chain: ReductionChain,
    /// `a^(φ(m_s) + s) mod |m|`.
    pub lhs: BigUint,
    /// `a^s mod |m|`.
    pub rhs: BigUint,
}

impl TheoremCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl fmt::Display for TheoremCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.chain;
        writeln!(f, "{c}")?;
        write!(
            f,
            "{a}^({phi}+{s}) mod {m} = {l}, {a}^{s} mod {m} = {r}: {verdict}",
            a = c.a_input,
            phi = c.phi_ms,
            s = c.depth(),
            m = c.m_norm,
            l = self.lhs,
            r = self.rhs,
            verdict = if self.holds() { "ok" } else { "FAILED" }
        )
    }
}

/// Builds the chain for `(a, m)` and evaluates both sides of the congruence
/// on the unreduced exponents.
pub fn verify_theorem(a: &BigInt, m: &BigInt) -> Result<TheoremCheck> {
    let chain = build_chain(a, m)?;
    let s = BigUint::from(chain.depth());
    let lhs = mod_pow(a, &(chain.reduced_totient() + &s), chain.modulus())?;
    let rhs = mod_pow(a, &s, chain.modulus())?;
    Ok(TheoremCheck { chain, lhs, rhs })
}

/// `a^n mod |m|` through exponent reduction.
pub fn reduced_pow(a: &BigInt, n: &BigUint, m: &BigInt) -> Result<BigUint> {
    let chain = build_chain(a, m)?;
    Ok(pow_with_chain(&chain, n))
}

/// `a^n mod |m|` for the `a` and `m` the chain was built from.
pub fn pow_with_chain(chain: &ReductionChain, n: &BigUint) -> BigUint {
    let base = residue(&chain.a_input, &chain.m_norm);
    pow_mod_nat(&base, &chain.reduce_exponent(n), &chain.m_norm)
}
