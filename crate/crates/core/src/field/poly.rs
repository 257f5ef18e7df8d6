use std::fmt;

use crate::error::{invalid, Error, Result};

/// Dense polynomial over `F_q`, lowest degree first.
///
/// Always trimmed: the last coefficient is nonzero unless the polynomial is
/// zero, in which case `coeffs` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    q: u32,
    coeffs: Vec<u32>,
}

#[inline]
fn mul_mod(a: u32, b: u32, q: u32) -> u32 {
    (a as u64 * b as u64 % q as u64) as u32
}

#[inline]
fn add_mod(a: u32, b: u32, q: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= q as u64 { s - q as u64 } else { s }) as u32
}

#[inline]
fn sub_mod(a: u32, b: u32, q: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        q - (b - a)
    }
}

/// Inverse of a nonzero residue modulo the prime `q` (extended Euclid).
pub(crate) fn inv_mod(a: u32, q: u32) -> Result<u32> {
    let (mut r0, mut r1) = (q as i64, (a % q) as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    if r1 == 0 {
        return Err(Error::DivisionByZero);
    }
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    if r0 != 1 {
        return invalid(format!("{a} is not invertible modulo {q}"));
    }
    Ok(s0.rem_euclid(q as i64) as u32)
}

impl Poly {
    /// Builds a polynomial from arbitrary coefficients, reducing them mod `q`.
    pub fn new(q: u32, coeffs: impl IntoIterator<Item = u64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| (c % q as u64) as u32).collect();
        Self::from_canonical(q, coeffs)
    }

    pub(crate) fn from_canonical(q: u32, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { q, coeffs }
    }

    pub fn zero(q: u32) -> Self {
        Poly {
            q,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(q: u32, c: u64) -> Self {
        Self::new(q, [c])
    }

    pub fn one(q: u32) -> Self {
        Self::constant(q, 1)
    }

    /// `c * x^k`.
    pub fn monomial(q: u32, k: usize, c: u64) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::new(q, v)
    }

    pub fn x(q: u32) -> Self {
        Self::monomial(q, 1, 1)
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> u32 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn check_same(&self, other: &Poly) {
        assert_eq!(self.q, other.q, "polynomials over different prime fields");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_same(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| add_mod(self.coeff(i), other.coeff(i), self.q))
            .collect();
        Poly::from_canonical(self.q, v)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.check_same(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| sub_mod(self.coeff(i), other.coeff(i), self.q))
            .collect();
        Poly::from_canonical(self.q, v)
    }

    pub fn neg(&self) -> Poly {
        Poly::zero(self.q).sub(self)
    }

    pub fn scale(&self, c: u32) -> Poly {
        let v = self.coeffs.iter().map(|&a| mul_mod(a, c, self.q)).collect();
        Poly::from_canonical(self.q, v)
    }

    /// Schoolbook product.
    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_same(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.q);
        }
        let q = self.q as u64;
        // Terms are < 2^32; slots cannot overflow below 2^32 summands.
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] += a as u64 * b as u64;
            }
        }
        Poly::from_canonical(self.q, acc.into_iter().map(|c| (c % q) as u32).collect())
    }

    /// Euclidean division: `self = quot * divisor + rem` with `deg rem < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_same(divisor);
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let q = self.q;
        let lead_inv = inv_mod(divisor.leading(), q)?;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(q), self.clone()));
        }
        // Subtraction is done lazily as addition of `c * (q - d)`: each slot
        // receives one term below 2^32 per quotient coefficient and is
        // reduced only when it becomes the leading term.
        let q64 = q as u64;
        let neg_div: Vec<u64> = divisor
            .coeffs
            .iter()
            .map(|&d| (q - d) as u64 % q64)
            .collect();
        let mut rem: Vec<u64> = self.coeffs.iter().map(|&c| c as u64).collect();
        let mut quot = vec![0u32; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let lead = (rem[k + dd] % q64) as u32;
            let c = mul_mod(lead, lead_inv, q);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (slot, &nd) in rem[k..k + dd].iter_mut().zip(&neg_div) {
                *slot += c as u64 * nd;
            }
        }
        let rem: Vec<u32> = rem[..dd].iter().map(|&r| (r % q64) as u32).collect();
        Ok((Poly::from_canonical(q, quot), Poly::from_canonical(q, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.q).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self * other mod m`.
    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m).expect("nonzero modulus")
    }

    /// `self^exp mod m` by square-and-multiply.
    pub fn pow_mod(&self, mut exp: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m).expect("nonzero modulus");
        let mut acc = Poly::one(self.q).rem(m).expect("nonzero modulus");
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    /// Inverse of `self` modulo `m` via the extended Euclidean algorithm.
    pub fn inv_mod(&self, m: &Poly) -> Result<Poly> {
        let a = self.rem(m)?;
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = self.q;
        let (mut r0, mut r1) = (m.clone(), a);
        let (mut s0, mut s1) = (Poly::zero(q), Poly::one(q));
        while !r1.is_zero() {
            let (t, r) = r0.div_rem(&r1)?;
            let s = s0.sub(&t.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return invalid("element shares a factor with the modulus");
        }
        let c = inv_mod(r0.leading(), q)?;
        s0.scale(c).rem(m)
    }

    /// Horner evaluation at a residue.
    pub fn eval(&self, x: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.q), c, self.q))
    }

    /// Renders as `c0 + c1*t + c2*t^2 + ...` in the given variable, skipping
    /// zero terms.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match k {
                0 => c.to_string(),
                1 => format!("{c}*{var}"),
                _ => format!("{c}*{var}^{k}"),
            })
            .collect();
        terms.join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trimming_and_degree() {
        let p = Poly::new(5, [1, 0, 5, 10]);
        assert_eq!(p.coeffs(), &[1]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(Poly::new(5, [0, 0]).degree(), None);
        assert_eq!(Poly::new(7, [8, 9]).coeffs(), &[1, 2]);
    }

    #[test]
    fn division_identity() {
        let a = Poly::new(7, [3, 1, 4, 1, 5, 6]);
        let b = Poly::new(7, [2, 0, 3]);
        let (quot, rem) = a.div_rem(&b).unwrap();
        assert!(rem.degree().is_none_or(|d| d < 2));
        assert_eq!(quot.mul(&b).add(&rem), a);
        assert_eq!(a.div_rem(&Poly::zero(7)), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_of_products() {
        let q = 11;
        let f = Poly::new(q, [1, 1]); // x + 1
        let g = Poly::new(q, [3, 0, 1]);
        let h = Poly::new(q, [5, 1]);
        let d = f.mul(&g).gcd(&f.mul(&h));
        assert_eq!(d, f);
        assert_eq!(g.gcd(&h), Poly::one(q));
    }

    #[test]
    fn modular_inverse() {
        let q = 3;
        let m = Poly::new(q, [1, 0, 1]);
        for c0 in 0..3 {
            for c1 in 0..3 {
                let a = Poly::new(q, [c0, c1]);
                if a.is_zero() {
                    assert_eq!(a.inv_mod(&m), Err(Error::DivisionByZero));
                    continue;
                }
                let inv = a.inv_mod(&m).unwrap();
                assert_eq!(a.mul_mod(&inv, &m), Poly::one(q));
            }
        }
        // x is not invertible modulo x^2.
        assert!(Poly::x(q).inv_mod(&Poly::monomial(q, 2, 1)).is_err());
    }

    #[test]
    fn scalar_inverse() {
        for q in [3u32, 5, 7, 65521] {
            for a in [1u32, 2, q - 1] {
                assert_eq!(mul_mod(a, inv_mod(a, q).unwrap(), q), 1);
            }
        }
        assert_eq!(inv_mod(0, 7), Err(Error::DivisionByZero));
    }

    #[test]
    fn wide_modulus_no_overflow() {
        let q = 65521;
        let a = Poly::new(q, vec![(q - 1) as u64; 40]);
        let sq = a.mul(&a);
        // (q-1)^2 = 1, so coefficient k of the square counts the products.
        for k in 0..79 {
            let n = (k.min(78 - k) + 1) as u32;
            assert_eq!(sq.coeff(k), n % q);
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(Poly::new(3, [1, 0, 1]).render("t"), "1 + 1*t^2");
        assert_eq!(Poly::new(5, [0, 4]).render("t"), "4*t");
        assert_eq!(Poly::zero(5).render("t"), "0");
        assert_eq!(Poly::new(5, [2, 3, 1]).to_string(), "2 + 3*x + 1*x^2");
    }

    #[test]
    fn evaluation() {
        let f = Poly::new(3, [1, 0, 1]);
        let vals: Vec<u32> = (0..3).map(|x| f.eval(x)).collect();
        assert_eq!(vals, vec![1, 2, 2]);
    }
}
