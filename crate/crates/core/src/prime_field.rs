//! Word-size arithmetic modulo a prime.
//!
//! Residues are always kept in the canonical range `0..m`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::sign::LegendreSign;

/// Largest prime accepted for `p` or `q` (exclusive).
pub const PRIME_LIMIT: u32 = 1 << 16;

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_odd_prime(n: u64) -> bool {
    n != 2 && is_prime(n)
}

/// All odd primes `<= bound`, ascending.
pub fn odd_primes_up_to(bound: u32) -> Vec<u32> {
    (3..=bound)
        .step_by(2)
        .filter(|&n| is_prime(n as u64))
        .collect()
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `base^exp mod modulus` by square-and-multiply.
pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> Result<u64> {
    if modulus < 2 {
        return invalid(format!("modulus must be at least 2, got {modulus}"));
    }
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    Ok(acc as u64)
}

/// Smallest `e >= 1` with `a^e = 1 (mod p)`, by successive multiplication.
pub fn multiplicative_order(a: u64, p: u64) -> Result<u64> {
    if p < 2 {
        return invalid(format!("modulus must be at least 2, got {p}"));
    }
    let a = a % p;
    if a == 0 {
        return invalid(format!("0 has no multiplicative order modulo {p}"));
    }
    let mut x = a;
    let mut e = 1;
    while x != 1 {
        x = x * a % p;
        e += 1;
        if e > p {
            return invalid(format!("{a} is not a unit modulo {p}"));
        }
    }
    Ok(e)
}

/// Legendre symbol `(a/p)` from `a^((p-1)/2) mod p`.
pub fn euler_criterion(a: u64, p: u64) -> Result<LegendreSign> {
    if p < 3 || p % 2 == 0 {
        return invalid(format!(
            "Euler's criterion needs an odd prime modulus, got {p}"
        ));
    }
    if a % p == 0 {
        return invalid(format!("{a} is divisible by {p}"));
    }
    let r = mod_pow(a, (p - 1) / 2, p)?;
    if r == 1 {
        Ok(LegendreSign::Plus)
    } else if r == p - 1 {
        Ok(LegendreSign::Minus)
    } else {
        invalid(format!("{p} is not prime: {a}^((p-1)/2) = {r}"))
    }
}

/// Reduce a signed integer into `0..m`.
pub fn reduce_signed(x: i64, m: u32) -> u32 {
    x.rem_euclid(m as i64) as u32
}

/// A pair of distinct odd primes together with `e = ord_p(q)` and
/// `p* = (-1)^((p-1)/2) p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReciprocityInstance {
    pub p: u32,
    pub q: u32,
    pub e: u32,
    pub p_star: i64,
}

impl ReciprocityInstance {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        for (name, v) in [("p", p), ("q", q)] {
            if !is_odd_prime(v as u64) {
                return Err(Error::InvalidInstance(format!(
                    "{name} = {v} is not an odd prime"
                )));
            }
            if v >= PRIME_LIMIT {
                return Err(Error::OutOfBounds(format!(
                    "{name} = {v} must be below {PRIME_LIMIT}"
                )));
            }
        }
        if p == q {
            return Err(Error::InvalidInstance(format!(
                "p and q must be distinct, both are {p}"
            )));
        }
        let e = multiplicative_order(q as u64, p as u64)? as u32;
        let half = (p as i64 - 1) / 2;
        let p_star = if half % 2 == 0 { p as i64 } else { -(p as i64) };
        Ok(ReciprocityInstance { p, q, e, p_star })
    }

    /// `p*` reduced modulo `q`.
    pub fn p_star_mod_q(&self) -> u32 {
        reduce_signed(self.p_star, self.q)
    }

    /// `(p-1)/2`.
    pub fn half_p(&self) -> u32 {
        (self.p - 1) / 2
    }
}
