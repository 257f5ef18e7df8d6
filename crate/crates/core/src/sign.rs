use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

/// An element of the multiplicative group {+1, -1}.
///
/// Used both for Legendre symbol values and for permutation parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

/// The value of a Legendre symbol (a/p) for a not divisible by p.
pub type LegendreSign = Sign;

impl Sign {
    /// `(-1)^k`.
    pub fn from_parity(k: u64) -> Self {
        if k % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// Canonical residue of the sign modulo an odd modulus: +1 -> 1, -1 -> m - 1.
    pub fn to_residue(self, modulus: u32) -> u32 {
        match self {
            Sign::Plus => 1 % modulus,
            Sign::Minus => modulus - 1,
        }
    }

    /// Inverse of [`Sign::to_residue`]; `None` for residues other than ±1.
    pub fn from_residue(r: u32, modulus: u32) -> Option<Self> {
        if r == 1 {
            Some(Sign::Plus)
        } else if modulus > 2 && r == modulus - 1 {
            Some(Sign::Minus)
        } else {
            None
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.to_i8()
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> Result<Self, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(format!("sign must be +1 or -1, got {v}")),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => f.write_str("+1"),
            Sign::Minus => f.write_str("-1"),
        }
    }
}
