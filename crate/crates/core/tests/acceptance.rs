//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails. All checks are exact.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use gencong::{build_chain, gcd, mod_pow, reduced_pow, totient, verify_theorem};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_gencong");

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, elapsed: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

fn cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(BIN)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("{args:?} exited with {:?}", out.status.code())
    })?;
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn naive_pow(base: u64, exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    for _ in 0..exp {
        acc = acc * base % m;
    }
    acc
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn brute_totient(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd_u64(k, n) == 1).count() as u64
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn nat_u64(v: &BigUint) -> u64 {
    v.to_u64().expect("small value")
}

fn c1_paper_example() -> Outcome {
    let start = Instant::now();
    let reduce = cli(&["reduce", "6", "105765"])?;
    let pow = cli(&["pow", "6", "25604", "105765"])?;
    let elapsed = start.elapsed();

    for needle in [
        "d_0 = (6, 105765) = 3",
        "m_0 = 105765 / 3 = 35255",
        "d_1 = (3, 35255) = 1",
        "s=1 m_s=35255",
    ] {
        ensure(reduce.contains(needle), || {
            format!("reduce output lacks {needle:?}:\n{reduce}")
        })?;
    }
    ensure(pow.contains("reduced_exponent=4 residue=1296"), || {
        format!("pow output: {pow}")
    })?;
    ensure(6u64.pow(4) == 1296, || "6^4".into())?;
    within(Duration::from_secs(1), elapsed)?;
    Ok(format!("{elapsed:?}"))
}

fn c2_theorem_sweep() -> Outcome {
    let start = Instant::now();
    let mut checked = 0u64;
    for m in 1i64..=300 {
        for a in -m..=m {
            let check = verify_theorem(&int(a), &int(m)).map_err(|e| e.to_string())?;
            ensure(check.holds(), || format!("({a}, {m}):\n{check}"))?;
            // both sides again by plain repeated multiplication
            let s = check.chain.depth() as u64;
            let phi = nat_u64(check.chain.reduced_totient());
            let base = a.rem_euclid(m) as u64;
            let (l, r) = (
                naive_pow(base, phi + s, m as u64),
                naive_pow(base, s, m as u64),
            );
            ensure(l == r && l == nat_u64(&check.lhs), || {
                format!("({a}, {m}): naive sides {l}, {r}")
            })?;
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    within(Duration::from_secs(60), elapsed)?;
    Ok(format!("{checked} pairs, {elapsed:?}"))
}

fn c3_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut checked = 0u64;
    for m in 1u64..=100 {
        for a in 0..m {
            for n in 0u64..=60 {
                let got = reduced_pow(&BigInt::from(a), &BigUint::from(n), &BigInt::from(m))
                    .map_err(|e| e.to_string())?;
                let want = naive_pow(a, n, m);
                ensure(nat_u64(&got) == want, || {
                    format!("{a}^{n} mod {m}: got {got}, want {want}")
                })?;
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    within(Duration::from_secs(60), elapsed)?;
    Ok(format!("{checked} cases, {elapsed:?}"))
}

fn c4_euler_recovery() -> Outcome {
    let mut checked = 0u64;
    for m in 1i64..=300 {
        for a in -m..=m {
            if gcd_u64(a.unsigned_abs(), m as u64) != 1 {
                continue;
            }
            let c = build_chain(&int(a), &int(m)).map_err(|e| e.to_string())?;
            ensure(c.depth() == 0, || format!("({a}, {m}): s = {}", c.depth()))?;
            ensure(c.reduced_modulus() == &BigUint::from(m as u64), || {
                format!("({a}, {m}): m_s = {}", c.reduced_modulus())
            })?;
            if m > 1 {
                let r = mod_pow(&int(a), c.reduced_totient(), c.modulus())
                    .map_err(|e| e.to_string())?;
                ensure(r.is_one(), || format!("{a}^φ({m}) ≡ {r} (mod {m})"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} coprime pairs"))
}

fn c5_fermat_like() -> Outcome {
    let mut checked = 0u64;
    for m in 1i64..=300 {
        for a in -m..=m {
            let d0 = gcd_u64(a.unsigned_abs(), m as u64);
            let m0 = m as u64 / d0;
            if d0 == 1 || gcd_u64(d0, m0) != 1 {
                continue;
            }
            let c = build_chain(&int(a), &int(m)).map_err(|e| e.to_string())?;
            ensure(c.depth() == 1, || format!("({a}, {m}): s = {}", c.depth()))?;
            ensure(nat_u64(c.reduced_modulus()) == m0, || {
                format!("({a}, {m}): m_s = {}", c.reduced_modulus())
            })?;
            let lhs = mod_pow(&int(a), &(c.reduced_totient() + 1u32), c.modulus())
                .map_err(|e| e.to_string())?;
            let rhs = int(a).mod_floor(&int(m));
            ensure(BigInt::from(lhs.clone()) == rhs, || {
                format!("({a}, {m}): a^(φ+1) ≡ {lhs}, a ≡ {rhs}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} qualifying pairs"))
}

fn c6_structural_identities() -> Outcome {
    let mut checked = 0u64;
    for m_abs in 1i64..=300 {
        let log2 = 63 - m_abs.leading_zeros() as usize;
        for m in [m_abs, -m_abs] {
            for a in -m_abs..=m_abs {
                let c = build_chain(&int(a), &int(m)).map_err(|e| e.to_string())?;
                let m_s = c.reduced_modulus();
                let norm = BigUint::from(m_abs as u64);
                ensure(norm.is_multiple_of(m_s), || format!("({a}, {m}): m_s ∤ m"))?;
                ensure(gcd(&int(a), &BigInt::from(m_s.clone())).is_one(), || {
                    format!("({a}, {m}): gcd(a, m_s) ≠ 1")
                })?;
                let product = c
                    .cofactors()
                    .iter()
                    .enumerate()
                    .fold(m_s.clone(), |acc, (i, ci)| acc * ci.pow(i as u32 + 1));
                ensure(product == norm, || {
                    format!("({a}, {m}): m_s·∏c_i^(i+1) = {product}")
                })?;
                ensure(c.steps().len() <= log2 + 2, || {
                    format!("({a}, {m}): {} steps", c.steps().len())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs"))
}

fn c7_totient_oracle() -> Outcome {
    for n in 1u64..=10_000 {
        let phi = totient(&BigUint::from(n)).map_err(|e| e.to_string())?;
        let want = brute_totient(n);
        ensure(nat_u64(&phi) == want, || {
            format!("φ({n}) = {phi}, want {want}")
        })?;
    }
    let phi = totient(&BigUint::from(35255u32)).map_err(|e| e.to_string())?;
    ensure(phi == BigUint::from(25600u32), || {
        format!("φ(35255) = {phi}")
    })?;
    Ok("n ≤ 10000".into())
}

/// `digits mod q` by schoolbook long division over the decimal string.
fn decimal_mod(digits: &str, q: u64) -> u64 {
    digits
        .bytes()
        .fold(0u128, |r, b| (r * 10 + (b - b'0') as u128) % q as u128) as u64
}

/// Chain depth and reduced modulus by the plain gcd walk on u64.
fn chain_u64(a: i64, m: u64) -> (u64, u64) {
    let mut d = gcd_u64(a.unsigned_abs(), m);
    let mut rem = m / d;
    let mut s = 0;
    while d != 1 {
        d = gcd_u64(d, rem);
        rem /= d;
        s += 1;
    }
    (s, rem)
}

fn c8_large_exponent() -> Outcome {
    // deterministic 10,000-digit exponent
    let mut state = 0x2545_f491_4f6c_dd1du64;
    let mut digits = String::with_capacity(10_000);
    digits.push('7');
    while digits.len() < 10_000 {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        digits.push(char::from(b'0' + (state % 10) as u8));
    }

    let cases: [(i64, u64); 6] = [
        (6, 105_765),
        (12, 66_528),      // 2^5 · 3^3 · 7 · 11
        (-35, 32_248_125), // 3^4 · 5^4 · 7^2 · 13
        (2, 4),
        (7, 1_000_003),
        (30, 2 * 2 * 2 * 2 * 3 * 3 * 5 * 5 * 5 * 97),
    ];
    let mut slowest = Duration::ZERO;
    for (a, m) in cases {
        let start = Instant::now();
        let out = cli(&["pow", "--json", &a.to_string(), &digits, &m.to_string()])?;
        let elapsed = start.elapsed();
        within(Duration::from_secs(1), elapsed)?;
        slowest = slowest.max(elapsed);

        let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        let residue: u64 = v["residue"]
            .as_str()
            .unwrap_or("")
            .parse()
            .map_err(|_| out.clone())?;

        let (s, m_s) = chain_u64(a, m);
        let phi = brute_totient(m_s);
        // N ≥ s trivially; e = s + (N - s) mod φ
        let e = s + (decimal_mod(&digits, phi) + phi - s % phi) % phi;
        let base = BigUint::from(a.rem_euclid(m as i64) as u64);
        let want = base.modpow(&BigUint::from(e), &BigUint::from(m));
        ensure(BigUint::from(residue) == want, || {
            format!("({a}, N, {m}): residue {residue}, independent {want}")
        })?;
        ensure(
            v["reduced_exponent"].as_str() == Some(e.to_string().as_str()),
            || {
                format!(
                    "({a}, N, {m}): reduced exponent {}, independent {e}",
                    v["reduced_exponent"]
                )
            },
        )?;
    }
    Ok(format!("10000-digit exponent, slowest run {slowest:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 paper example regression", c1_paper_example),
        ("2 exhaustive theorem sweep", c2_theorem_sweep),
        ("3 oracle equivalence", c3_oracle_equivalence),
        ("4 Euler recovery", c4_euler_recovery),
        ("5 Fermat-like case", c5_fermat_like),
        ("6 structural identities", c6_structural_identities),
        ("7 totient oracle", c7_totient_oracle),
        ("8 large-exponent smoke test", c8_large_exponent),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name} ({detail})"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
