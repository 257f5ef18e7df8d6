//! The extension field `F_{q^e} = F_q[x]/(m(x))`.
//!
//! Elements are coefficient vectors of length at most `e` over `F_q`. All
//! arithmetic is polynomial; `q^e` is never formed as an integer except in
//! [`ExtElem::pow_big`].

mod irreducible;
mod poly;
mod root;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use crate::error::{invalid, Error, Result};
use crate::prime_field::{is_prime, PRIME_LIMIT};

pub use irreducible::{find_irreducible, is_irreducible};
pub use poly::Poly;
pub use root::{eval_f, find_primitive_pth_root, pth_root_exponent_digits, RootOfUnity};

/// Variable name used when rendering elements and moduli.
pub const RENDER_VAR: &str = "t";

/// `F_q[x]/(m)` for a monic irreducible `m` of degree `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    q: u32,
    degree: usize,
    modulus: Poly,
}

impl ExtField {
    /// Builds `F_{q^e}` on the lexicographically smallest irreducible modulus.
    pub fn new(q: u32, e: usize) -> Result<Self> {
        if q >= PRIME_LIMIT {
            return Err(Error::OutOfBounds(format!(
                "q = {q} must be below {PRIME_LIMIT}"
            )));
        }
        let modulus = find_irreducible(q, e)?;
        Ok(ExtField {
            q,
            degree: e,
            modulus,
        })
    }

    /// Builds the field on a caller-supplied modulus, which must be monic and
    /// irreducible.
    pub fn with_modulus(modulus: Poly) -> Result<Self> {
        let q = modulus.modulus();
        if !is_prime(q as u64) || q >= PRIME_LIMIT {
            return invalid(format!(
                "characteristic {q} must be a prime below {PRIME_LIMIT}"
            ));
        }
        if !modulus.is_monic() || !is_irreducible(&modulus) {
            return invalid(format!("{modulus} is not a monic irreducible polynomial"));
        }
        let degree = modulus.degree().expect("nonzero modulus");
        Ok(ExtField { q, degree, modulus })
    }

    pub fn characteristic(&self) -> u32 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// `q^e` when it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        (self.q as u64).checked_pow(self.degree as u32)
    }

    pub fn zero(&self) -> ExtElem<'_> {
        self.wrap(Poly::zero(self.q))
    }

    pub fn one(&self) -> ExtElem<'_> {
        self.constant(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn constant(&self, c: u64) -> ExtElem<'_> {
        self.wrap(Poly::constant(self.q, c))
    }

    /// The class of `x`, i.e. a root of the modulus.
    pub fn generator(&self) -> ExtElem<'_> {
        self.reduce(Poly::x(self.q))
    }

    /// Element with the given coefficients (lowest degree first), reduced.
    pub fn element(&self, coeffs: impl IntoIterator<Item = u64>) -> ExtElem<'_> {
        self.reduce(Poly::new(self.q, coeffs))
    }

    pub fn reduce(&self, poly: Poly) -> ExtElem<'_> {
        assert_eq!(
            poly.modulus(),
            self.q,
            "polynomial over a different prime field"
        );
        let rep = poly.rem(&self.modulus).expect("nonzero modulus");
        self.wrap(rep)
    }

    fn wrap(&self, rep: Poly) -> ExtElem<'_> {
        ExtElem { field: self, rep }
    }

    /// Every element in lexicographic coefficient order (`c_0` most
    /// significant), starting with zero.
    pub fn elements(&self) -> impl Iterator<Item = ExtElem<'_>> + '_ {
        let mut digits = Some(vec![0u32; self.degree]);
        std::iter::from_fn(move || {
            let current = digits.take()?;
            let mut next = current.clone();
            if irreducible::lex_increment(&mut next, self.q) {
                digits = Some(next);
            }
            Some(self.element(current.into_iter().map(u64::from)))
        })
    }

    pub fn render_modulus(&self) -> String {
        self.modulus.render(RENDER_VAR)
    }
}

/// An element of an [`ExtField`], held in canonical reduced form so that
/// equality is coefficient-wise.
#[derive(Clone)]
pub struct ExtElem<'f> {
    field: &'f ExtField,
    rep: Poly,
}

impl<'f> ExtElem<'f> {
    pub fn field(&self) -> &'f ExtField {
        self.field
    }

    pub fn rep(&self) -> &Poly {
        &self.rep
    }

    /// Coefficients padded to length `e`.
    pub fn coeffs(&self) -> Vec<u32> {
        (0..self.field.degree).map(|k| self.rep.coeff(k)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep.degree() == Some(0) && self.rep.coeff(0) == 1
    }

    /// The residue if this element is a constant.
    pub fn as_constant(&self) -> Option<u32> {
        match self.rep.degree() {
            None => Some(0),
            Some(0) => Some(self.rep.coeff(0)),
            _ => None,
        }
    }

    fn same_field(&self, other: &ExtElem<'_>) -> Result<()> {
        if std::ptr::eq(self.field, other.field) || self.field == other.field {
            Ok(())
        } else {
            invalid("operands belong to different fields")
        }
    }

    pub fn checked_add(&self, other: &ExtElem<'_>) -> Result<ExtElem<'f>> {
        self.same_field(other)?;
        Ok(self.field.wrap(self.rep.add(&other.rep)))
    }

    pub fn checked_sub(&self, other: &ExtElem<'_>) -> Result<ExtElem<'f>> {
        self.same_field(other)?;
        Ok(self.field.wrap(self.rep.sub(&other.rep)))
    }

    pub fn checked_mul(&self, other: &ExtElem<'_>) -> Result<ExtElem<'f>> {
        self.same_field(other)?;
        Ok(self.field.reduce(self.rep.mul(&other.rep)))
    }

    /// `self * other^-1`.
    pub fn checked_div(&self, other: &ExtElem<'_>) -> Result<ExtElem<'f>> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// Multiplicative inverse via extended Euclid on the representatives.
    pub fn inv(&self) -> Result<ExtElem<'f>> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.field.wrap(self.rep.inv_mod(&self.field.modulus)?))
    }

    pub fn pow(&self, exp: u64) -> ExtElem<'f> {
        self.field.wrap(self.rep.pow_mod(exp, &self.field.modulus))
    }

    /// Square-and-multiply over the bits of an arbitrary-size exponent.
    pub fn pow_big(&self, exp: &BigUint) -> ExtElem<'f> {
        let mut acc = self.field.one();
        for i in (0..exp.bits()).rev() {
            acc = &acc * &acc;
            if exp.bit(i) {
                acc = &acc * self;
            }
        }
        acc
    }

    /// `self^n` where `n = sum_i digits[i] * q^i`, using
    /// `self^n = prod_i (self^(q^i))^digits[i]` so that only word-size
    /// exponents appear.
    pub fn pow_base_q(&self, digits: &[u32]) -> ExtElem<'f> {
        let mut acc = self.field.one();
        let mut conj = self.clone();
        for (i, &d) in digits.iter().enumerate() {
            if d != 0 {
                acc = &acc * &conj.pow(d as u64);
            }
            if i + 1 < digits.len() {
                conj = conj.frobenius();
            }
        }
        acc
    }

    /// The Frobenius automorphism `a -> a^q`.
    pub fn frobenius(&self) -> ExtElem<'f> {
        self.pow(self.field.q as u64)
    }

    /// `k`-fold Frobenius.
    pub fn frobenius_iter(&self, k: usize) -> ExtElem<'f> {
        (0..k).fold(self.clone(), |a, _| a.frobenius())
    }

    /// Fixed points of Frobenius are exactly `F_q`.
    pub fn is_in_prime_subfield(&self) -> bool {
        self.frobenius() == *self
    }

    pub fn render(&self) -> String {
        self.rep.render(RENDER_VAR)
    }
}

impl PartialEq for ExtElem<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other).is_ok() && self.rep == other.rep
    }
}

impl Eq for ExtElem<'_> {}

impl fmt::Debug for ExtElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtElem({})", self.render())
    }
}

impl fmt::Display for ExtElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

// Operator forms panic on a field mismatch; use the `checked_*` methods to
// get an error instead.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'f> $trait<&ExtElem<'f>> for &ExtElem<'f> {
            type Output = ExtElem<'f>;

            fn $method(self, rhs: &ExtElem<'f>) -> ExtElem<'f> {
                self.$checked(rhs).expect("field mismatch")
            }
        }

        impl<'f> $trait for ExtElem<'f> {
            type Output = ExtElem<'f>;

            fn $method(self, rhs: ExtElem<'f>) -> ExtElem<'f> {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<'f> Neg for &ExtElem<'f> {
    type Output = ExtElem<'f>;

    fn neg(self) -> ExtElem<'f> {
        self.field.wrap(self.rep.neg())
    }
}
