use crate::error::{Error, Result};
use crate::prime_field::is_odd_prime;

use super::{ExtElem, ExtField};

/// Base-`q` digits (least significant first) of `(q^e - 1) / p`, by schoolbook
/// long division of the digit string `(q-1)(q-1)...(q-1)`.
///
/// Fails unless `p` divides `q^e - 1`.
pub fn pth_root_exponent_digits(q: u32, e: usize, p: u32) -> Result<Vec<u32>> {
    let (q64, p64) = (q as u64, p as u64);
    let mut quotient = vec![0u32; e];
    let mut rem = 0u64;
    for i in (0..e).rev() {
        let cur = rem * q64 + (q64 - 1);
        quotient[i] = (cur / p64) as u32;
        rem = cur % p64;
    }
    if rem != 0 {
        return Err(Error::InvalidInstance(format!(
            "{p} does not divide {q}^{e} - 1 (remainder {rem})"
        )));
    }
    while quotient.last() == Some(&0) {
        quotient.pop();
    }
    Ok(quotient)
}

/// An element `theta` with `theta^p = 1` and `theta != 1`; since `p` is prime
/// its order is exactly `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootOfUnity<'f> {
    theta: ExtElem<'f>,
    p: u32,
}

impl<'f> RootOfUnity<'f> {
    /// Validates an arbitrary element as a primitive `p`-th root of unity.
    pub fn new(theta: ExtElem<'f>, p: u32) -> Result<Self> {
        if !is_odd_prime(p as u64) {
            return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
        }
        if theta.is_one() || !theta.pow(p as u64).is_one() {
            return Err(Error::InvalidInput(format!(
                "{theta} is not a primitive {p}-th root of unity"
            )));
        }
        Ok(RootOfUnity { theta, p })
    }

    pub fn theta(&self) -> &ExtElem<'f> {
        &self.theta
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn field(&self) -> &'f ExtField {
        self.theta.field()
    }

    /// `theta^k` for any integer `k`, reducing the exponent mod `p`.
    pub fn power(&self, k: i64) -> ExtElem<'f> {
        self.theta.pow(k.rem_euclid(self.p as i64) as u64)
    }

    /// `[theta^0, theta^1, ..., theta^(p-1)]`.
    pub fn powers(&self) -> Vec<ExtElem<'f>> {
        let mut out = Vec::with_capacity(self.p as usize);
        let mut cur = self.field().one();
        for _ in 0..self.p {
            let next = &cur * &self.theta;
            out.push(cur);
            cur = next;
        }
        out
    }
}

/// Deterministic primitive `p`-th root: scan nonzero elements `c` in
/// lexicographic coefficient order and return `c^((q^e-1)/p)` for the first
/// `c` where that power is not 1.
pub fn find_primitive_pth_root(field: &ExtField, p: u32) -> Result<RootOfUnity<'_>> {
    if !is_odd_prime(p as u64) {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    let digits = pth_root_exponent_digits(field.characteristic(), field.degree(), p)?;
    for c in field.elements().skip(1) {
        let theta = c.pow_base_q(&digits);
        if !theta.is_one() {
            return RootOfUnity::new(theta, p);
        }
    }
    Err(Error::InvalidInstance(format!(
        "no primitive {p}-th root of unity in F_{}^{}",
        field.characteristic(),
        field.degree()
    )))
}

/// `f(theta^k) = 1 + theta^k + theta^(2k) + ... + theta^((p-1)k)`.
pub fn eval_f<'f>(root: &RootOfUnity<'f>, k: i64) -> ExtElem<'f> {
    let step = root.power(k);
    let mut term = root.field().one();
    let mut sum = root.field().zero();
    for _ in 0..root.p() {
        sum = &sum + &term;
        term = &term * &step;
    }
    sum
}
