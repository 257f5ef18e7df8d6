//! Legendre symbols by several independent routes, and the reciprocity law
//! identities checked with them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::gauss::gauss_lemma_symbol;
use crate::prime_field::{euler_criterion, is_odd_prime, prime_factors};
use crate::sign::{LegendreSign, Sign};

/// `(a/p)` by checking whether `a` is among the squares `x^2`, `x = 1..p-1`.
pub fn brute_force_qr(a: u64, p: u64) -> Result<LegendreSign> {
    if !is_odd_prime(p) {
        return invalid(format!("{p} is not an odd prime"));
    }
    if a % p == 0 {
        return invalid(format!("{a} is divisible by {p}"));
    }
    let a = a % p;
    let found = (1..p).any(|x| x * x % p == a);
    Ok(if found { Sign::Plus } else { Sign::Minus })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Euler,
    Gauss,
    Reciprocity,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Euler,
        Method::Gauss,
        Method::Reciprocity,
        Method::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Euler => "euler",
            Method::Gauss => "gauss",
            Method::Reciprocity => "reciprocity",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown method `{s}`")))
    }
}

/// Supplementary law for `(-1/p)`.
pub fn minus_one_symbol(p: u64) -> LegendreSign {
    Sign::from_parity((p - 1) / 2)
}

/// Supplementary law for `(2/p)`.
pub fn two_symbol(p: u64) -> LegendreSign {
    Sign::from_parity((p * p - 1) / 8)
}

/// The reciprocity sign `(-1)^((a-1)/2 (p-1)/2)`.
pub fn reciprocity_sign(a: u64, p: u64) -> Sign {
    Sign::from_parity((a - 1) / 2 * ((p - 1) / 2))
}

/// One step of a reciprocity evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Step {
    /// `(a/p)` replaced by the symbol of the signed residue `r = a mod p`.
    Reduce { a: u64, p: u64, residue: i64 },
    /// `(-1/p)` from the supplementary law.
    MinusOne { p: u64, value: Sign },
    /// `(2/p)^count` from the supplementary law.
    Two { p: u64, count: u32, value: Sign },
    /// `(r/p) = sign * (p/r)` for distinct odd primes.
    Flip { r: u64, p: u64, sign: Sign },
    /// `(1/p) = 1`.
    Ground { p: u64 },
}

impl Step {
    /// True for steps that rely on the supplementary laws.
    pub fn is_supplementary(&self) -> bool {
        matches!(self, Step::MinusOne { .. } | Step::Two { .. })
    }
}

/// A full reciprocity evaluation with its steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub value: LegendreSign,
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn uses_supplementary_laws(&self) -> bool {
        self.steps.iter().any(Step::is_supplementary)
    }
}

/// `(a/p)` for any `a` prime to the odd prime `p`, by reduction to a signed
/// residue, supplementary laws for the sign and the factors of 2, and the
/// reciprocity flip on each odd prime factor. Every modulus along the way is
/// prime and strictly smaller than the previous one.
fn derive(a: i64, p: u64, steps: &mut Vec<Step>) -> Sign {
    let pi = p as i64;
    let mut r = a.rem_euclid(pi);
    if r > pi / 2 {
        r -= pi;
    }
    if r != a {
        steps.push(Step::Reduce {
            a: a.unsigned_abs(),
            p,
            residue: r,
        });
    }
    let mut value = Sign::Plus;
    if r < 0 {
        let s = minus_one_symbol(p);
        steps.push(Step::MinusOne { p, value: s });
        value = value * s;
    }
    let mut m = r.unsigned_abs();
    let twos = m.trailing_zeros();
    if twos > 0 {
        m >>= twos;
        let s = if twos % 2 == 0 {
            Sign::Plus
        } else {
            two_symbol(p)
        };
        steps.push(Step::Two {
            p,
            count: twos,
            value: s,
        });
        value = value * s;
    }
    if m == 1 {
        steps.push(Step::Ground { p });
        return value;
    }
    // Multiplicity of each odd prime factor of the residue.
    for f in prime_factors(m) {
        let mut k = 0;
        while m % f == 0 {
            m /= f;
            k += 1;
        }
        if k % 2 == 0 {
            continue;
        }
        let sign = reciprocity_sign(f, p);
        steps.push(Step::Flip { r: f, p, sign });
        value = value * sign * derive(p as i64, f, steps);
    }
    value
}

/// `(a/p)` for distinct odd primes, with the derivation steps.
pub fn reciprocity_derivation(a: u64, p: u64) -> Result<Derivation> {
    if !is_odd_prime(a) || !is_odd_prime(p) {
        return invalid(format!("({a}/{p}) needs two odd primes"));
    }
    if a == p {
        return invalid(format!("({a}/{p}) needs distinct primes"));
    }
    let mut steps = Vec::new();
    let value = if a < p {
        let sign = reciprocity_sign(a, p);
        steps.push(Step::Flip { r: a, p, sign });
        sign * derive(p as i64, a, &mut steps)
    } else {
        derive(a as i64, p, &mut steps)
    };
    Ok(Derivation { value, steps })
}

/// `(a/p)` for distinct odd primes, by recursive use of reciprocity.
pub fn reciprocity_recursive(a: u64, p: u64) -> Result<LegendreSign> {
    Ok(reciprocity_derivation(a, p)?.value)
}

fn unsupported(method: Method, a: u64, p: u64, reason: impl Into<String>) -> Error {
    Error::UnsupportedMethod {
        method: method.name(),
        a: a as i64,
        p: p as u32,
        reason: reason.into(),
    }
}

/// `(a/p)` by the chosen method.
///
/// `euler` and `oracle` accept any `a` prime to `p`. `gauss` accepts an odd
/// prime `a != p`. `reciprocity` accepts an odd prime `a != p`, and also
/// `a = 1`, `a = 2` and `a = p - 1`, which are settled by `(1/p) = 1` and
/// the supplementary laws.
pub fn legendre(a: u64, p: u64, method: Method) -> Result<LegendreSign> {
    if !is_odd_prime(p) {
        return invalid(format!("{p} is not an odd prime"));
    }
    if a % p == 0 {
        return invalid(format!("{a} is divisible by {p}"));
    }
    if p >= u32::MAX as u64 {
        return Err(Error::OutOfBounds(format!("p = {p} is too large")));
    }
    match method {
        Method::Euler => euler_criterion(a, p),
        Method::Oracle => brute_force_qr(a, p),
        Method::Gauss => {
            if !is_odd_prime(a) {
                return Err(unsupported(
                    method,
                    a,
                    p,
                    "the numerator must be an odd prime",
                ));
            }
            gauss_lemma_symbol(p as u32, (a % p) as u32)
        }
        Method::Reciprocity => {
            if a == 1 {
                Ok(Sign::Plus)
            } else if a == 2 {
                Ok(two_symbol(p))
            } else if a == p - 1 {
                Ok(minus_one_symbol(p))
            } else if is_odd_prime(a) {
                reciprocity_recursive(a, p)
            } else {
                Err(unsupported(
                    method,
                    a,
                    p,
                    "the numerator must be an odd prime, 1, 2 or p - 1",
                ))
            }
        }
    }
}

/// Checks `(p/q)(q/p) = (-1)^((p-1)/2 (q-1)/2)` and
/// `(p*/q) = 1 <=> (q/p) = 1` with Euler-criterion symbols.
pub fn reciprocity_law_check(p: u64, q: u64) -> Result<crate::Verdict> {
    if !is_odd_prime(p) || !is_odd_prime(q) || p == q {
        return invalid(format!("({p}, {q}) must be distinct odd primes"));
    }
    let pq = euler_criterion(p, q)?;
    let qp = euler_criterion(q, p)?;
    let expected = reciprocity_sign(p, q);
    if pq * qp != expected {
        return Ok(crate::Verdict::fail(format!(
            "({p}/{q})({q}/{p}) = {} but (-1)^((p-1)/2 (q-1)/2) = {expected}",
            pq * qp
        )));
    }
    let p_star = if (p - 1) / 2 % 2 == 0 {
        p as i64
    } else {
        -(p as i64)
    };
    let p_star_q = euler_criterion(p_star.rem_euclid(q as i64) as u64, q)?;
    Ok(crate::Verdict::from_condition(
        p_star_q.is_plus() == qp.is_plus(),
        || format!("(p*/{q}) = {p_star_q} but ({q}/{p}) = {qp}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime_field::odd_primes_up_to;

    #[test]
    fn oracle_examples() {
        assert_eq!(brute_force_qr(5, 13).unwrap(), Sign::Minus);
        assert_eq!(brute_force_qr(3, 7).unwrap(), Sign::Minus);
        assert_eq!(brute_force_qr(2, 7).unwrap(), Sign::Plus);
        for p in odd_primes_up_to(50) {
            assert_eq!(brute_force_qr(1, p as u64).unwrap(), Sign::Plus);
        }
        assert!(brute_force_qr(0, 7).is_err());
        assert!(brute_force_qr(3, 9).is_err());
    }

    #[test]
    fn every_method_on_5_13() {
        for m in Method::ALL {
            assert_eq!(legendre(5, 13, m).unwrap(), Sign::Minus, "{m}");
        }
    }

    #[test]
    fn method_examples() {
        assert_eq!(legendre(1, 7, Method::Euler).unwrap(), Sign::Plus);
        assert_eq!(legendre(3, 7, Method::Reciprocity).unwrap(), Sign::Minus);
        assert_eq!(legendre(1, 7, Method::Reciprocity).unwrap(), Sign::Plus);
        assert_eq!(legendre(2, 7, Method::Reciprocity).unwrap(), Sign::Plus);
        assert_eq!(legendre(6, 7, Method::Reciprocity).unwrap(), Sign::Minus);
    }

    #[test]
    fn unsupported_inputs() {
        assert!(matches!(
            legendre(4, 7, Method::Gauss),
            Err(Error::UnsupportedMethod {
                method: "gauss",
                ..
            })
        ));
        assert!(matches!(
            legendre(9, 7, Method::Reciprocity),
            Err(Error::UnsupportedMethod {
                method: "reciprocity",
                ..
            })
        ));
        assert!(matches!(
            legendre(7, 7, Method::Euler),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            legendre(3, 9, Method::Oracle),
            Err(Error::InvalidInput(_))
        ));
        assert!(reciprocity_recursive(4, 7).is_err());
        assert!(reciprocity_recursive(7, 7).is_err());
        assert!(reciprocity_recursive(3, 2).is_err());
        assert!("legendre".parse::<Method>().is_err());
        assert_eq!("gauss".parse::<Method>().unwrap(), Method::Gauss);
    }

    #[test]
    fn supplementary_laws_match_oracle() {
        for p in odd_primes_up_to(499) {
            let p = p as u64;
            assert_eq!(minus_one_symbol(p), brute_force_qr(p - 1, p).unwrap());
            assert_eq!(two_symbol(p), brute_force_qr(2, p).unwrap());
        }
    }

    #[test]
    fn recursion_path_for_5_13() {
        let d = reciprocity_derivation(5, 13).unwrap();
        assert_eq!(d.value, Sign::Minus);
        // (5/13) = (13/5) = (-2/5) = (-1/5)(2/5).
        assert_eq!(
            d.steps,
            vec![
                Step::Flip {
                    r: 5,
                    p: 13,
                    sign: Sign::Plus
                },
                Step::Reduce {
                    a: 13,
                    p: 5,
                    residue: -2
                },
                Step::MinusOne {
                    p: 5,
                    value: Sign::Plus
                },
                Step::Two {
                    p: 5,
                    count: 1,
                    value: Sign::Minus
                },
                Step::Ground { p: 5 },
            ]
        );
        assert!(d.uses_supplementary_laws());
    }

    #[test]
    fn recursion_handles_square_residues() {
        // 97 = 9 (mod 11), an odd composite square.
        let d = reciprocity_derivation(11, 97).unwrap();
        assert_eq!(d.value, brute_force_qr(11, 97).unwrap());
    }

    #[test]
    fn recursion_for_one_mod_p() {
        for (q, p) in [(29u64, 7u64), (53, 13), (311, 31)] {
            assert_eq!(reciprocity_recursive(q, p).unwrap(), Sign::Plus);
        }
    }

    #[test]
    fn recursion_matches_oracle() {
        let primes = odd_primes_up_to(499);
        for &p in &primes {
            for &a in &primes {
                if a == p {
                    continue;
                }
                assert_eq!(
                    reciprocity_recursive(a as u64, p as u64).unwrap(),
                    brute_force_qr(a as u64, p as u64).unwrap(),
                    "({a}/{p})"
                );
            }
        }
    }

    #[test]
    fn law_examples() {
        assert!(reciprocity_law_check(13, 5).unwrap().holds);
        assert!(reciprocity_law_check(3, 7).unwrap().holds);
        assert_eq!(
            brute_force_qr(3, 7).unwrap() * brute_force_qr(7, 3).unwrap(),
            Sign::Minus
        );
        assert!(reciprocity_law_check(3, 3).is_err());
    }

    #[test]
    fn multiplicativity() {
        for p in odd_primes_up_to(97) {
            let p = p as u64;
            for a in 1..p {
                for b in 1..p {
                    assert_eq!(
                        legendre(a, p, Method::Euler).unwrap()
                            * legendre(b, p, Method::Euler).unwrap(),
                        legendre(a * b % p, p, Method::Euler).unwrap()
                    );
                }
            }
        }
    }
}
