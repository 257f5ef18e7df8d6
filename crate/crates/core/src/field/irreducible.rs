use crate::error::{invalid, Result};
use crate::prime_field::{is_prime, prime_factors};

use super::poly::Poly;

/// `x^(q^k) mod m` for `k = 0..=max_k`, by iterated q-th powers.
fn frobenius_orbit_of_x(m: &Poly, max_k: usize) -> Vec<Poly> {
    let q = m.modulus();
    let mut out = Vec::with_capacity(max_k + 1);
    let mut y = Poly::x(q).rem(m).expect("nonzero modulus");
    out.push(y.clone());
    for _ in 0..max_k {
        y = y.pow_mod(q as u64, m);
        out.push(y.clone());
    }
    out
}

/// Rabin's test: a polynomial `m` of degree `e >= 1` over `F_q` is irreducible
/// iff `x^(q^e) = x (mod m)` and `gcd(x^(q^(e/r)) - x, m) = 1` for every
/// prime `r | e`.
pub fn is_irreducible(m: &Poly) -> bool {
    let Some(e) = m.degree() else {
        return false;
    };
    if e == 0 {
        return false;
    }
    if e == 1 {
        return true;
    }
    let q = m.modulus();
    let x = Poly::x(q);
    let orbit = frobenius_orbit_of_x(m, e);
    if orbit[e] != x.rem(m).expect("nonzero modulus") {
        return false;
    }
    prime_factors(e as u64).into_iter().all(|r| {
        let k = e / r as usize;
        orbit[k].sub(&x).gcd(m).degree() == Some(0)
    })
}

/// Cheap necessary condition: no irreducible factor of degree `k <= e/2`,
/// i.e. `gcd(x^(q^k) - x, m) = 1`. Stops at the first factor found, which
/// for a random candidate is almost always at `k = 1` or `k = 2`.
fn has_no_small_factor(m: &Poly) -> bool {
    let e = m.degree().unwrap_or(0);
    let q = m.modulus();
    let x = Poly::x(q);
    let mut y = x.rem(m).expect("nonzero modulus");
    for _ in 1..=e / 2 {
        y = y.pow_mod(q as u64, m);
        if y.sub(&x).gcd(m).degree() != Some(0) {
            return false;
        }
    }
    true
}

/// Advances a coefficient tuple to its successor in lexicographic order
/// (position 0 most significant). Returns `false` on wrap-around.
pub(crate) fn lex_increment(digits: &mut [u32], q: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

/// The lexicographically smallest monic irreducible polynomial of degree `e`
/// over `F_q`.
///
/// Candidates `c_0 + c_1 x + ... + c_{e-1} x^{e-1} + x^e` are ordered by the
/// tuple `(c_0, ..., c_{e-1})` with `c_0` most significant. For `e >= 2`
/// every candidate with `c_0 = 0` is divisible by `x`, so the scan starts at
/// `c_0 = 1`.
pub fn find_irreducible(q: u32, e: usize) -> Result<Poly> {
    if !is_prime(q as u64) {
        return invalid(format!("field characteristic {q} is not prime"));
    }
    if e == 0 {
        return invalid("extension degree must be at least 1");
    }
    if e == 1 {
        return Ok(Poly::x(q));
    }
    let mut digits = vec![0u32; e];
    digits[0] = 1;
    loop {
        let coeffs = digits.iter().map(|&c| c as u64).chain([1]);
        let cand = Poly::new(q, coeffs);
        if has_no_small_factor(&cand) && is_irreducible(&cand) {
            return Ok(cand);
        }
        if !lex_increment(&mut digits, q) {
            unreachable!("an irreducible polynomial of degree {e} exists over F_{q}");
        }
    }
}
