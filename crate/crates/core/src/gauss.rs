//! Half systems, the multiplication permutation `rho_q : x -> q x` on
//! `F_p^*`, Gauss's lemma, and the sign-corrected permutation `pi`.
//!
//! Residues of `F_p^*` are written as signed representatives
//! `1, ..., h, -h, ..., -1` with `h = (p - 1) / 2`. That listing order is the
//! same as the canonical order `1, ..., p - 1`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::prime_field::is_odd_prime;
use crate::sign::{LegendreSign, Sign};
use crate::verdict::Verdict;

/// Signed representative of `x` in `-(p-1)/2 ..= (p-1)/2`.
pub fn signed_rep(x: u32, p: u32) -> Result<i32> {
    if p < 3 || p % 2 == 0 {
        return invalid(format!("modulus {p} must be odd and at least 3"));
    }
    let x = x % p;
    if x == 0 {
        return invalid(format!("0 has no representative in F_{p}^*"));
    }
    Ok(if x <= (p - 1) / 2 {
        x as i32
    } else {
        x as i32 - p as i32
    })
}

fn canonical(x: i32, p: u32) -> u32 {
    (x as i64).rem_euclid(p as i64) as u32
}

/// `H = {1, ..., (p-1)/2}`; `H` and `-H` partition `F_p^*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfSystem {
    p: u32,
}

impl HalfSystem {
    pub fn new(p: u32) -> Result<Self> {
        if !is_odd_prime(p as u64) {
            return invalid(format!("{p} is not an odd prime"));
        }
        Ok(HalfSystem { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn half(&self) -> i32 {
        ((self.p - 1) / 2) as i32
    }

    pub fn contains(&self, x: i32) -> bool {
        (1..=self.half()).contains(&x)
    }

    pub fn elements(&self) -> impl Iterator<Item = i32> {
        1..=self.half()
    }

    /// All of `F_p^*` in listing order `1..=h, -h..=-1`.
    pub fn listing(&self) -> impl Iterator<Item = i32> {
        let h = self.half();
        (1..=h).chain(-h..=-1)
    }
}

/// A bijection of `F_p^*` written on signed representatives.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    p: u32,
    /// `images[r - 1]` is the image of the residue `r`.
    images: Vec<i32>,
}

impl SignedPermutation {
    /// Builds from images listed in the order `1..=h, -h..=-1`.
    pub fn from_listing(p: u32, images: Vec<i32>) -> Result<Self> {
        let half = HalfSystem::new(p)?;
        if images.len() != (p - 1) as usize {
            return invalid(format!("expected {} images, got {}", p - 1, images.len()));
        }
        let h = half.half();
        let mut seen = vec![false; p as usize];
        for &y in &images {
            if y == 0 || y.abs() > h {
                return invalid(format!("{y} is not a signed representative mod {p}"));
            }
            let r = canonical(y, p) as usize;
            if std::mem::replace(&mut seen[r], true) {
                return invalid(format!("{y} appears twice; not a bijection"));
            }
        }
        Ok(SignedPermutation { p, images })
    }

    pub fn identity(p: u32) -> Result<Self> {
        let half = HalfSystem::new(p)?;
        Ok(SignedPermutation {
            p,
            images: half.listing().collect(),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn half_system(&self) -> HalfSystem {
        HalfSystem { p: self.p }
    }

    /// Image of a signed (or canonical) representative.
    pub fn apply(&self, x: i32) -> i32 {
        let r = canonical(x, self.p);
        assert_ne!(r, 0, "0 is not in F_p^*");
        self.images[r as usize - 1]
    }

    /// Images in listing order.
    pub fn images(&self) -> &[i32] {
        &self.images
    }

    /// `(x, self(x))` in listing order.
    pub fn pairs(&self) -> impl Iterator<Item = (i32, i32)> + '_ {
        self.half_system()
            .listing()
            .zip(self.images.iter().copied())
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.p, other.p, "permutations on different groups");
        let images = other.images.iter().map(|&y| self.apply(y)).collect();
        SignedPermutation { p: self.p, images }
    }

    /// `t ∘ self` for a transposition `t`.
    pub fn then_swap(&self, t: Transposition) -> SignedPermutation {
        let images = self.images.iter().map(|&y| t.apply(y, self.p)).collect();
        SignedPermutation { p: self.p, images }
    }

    pub fn is_identity(&self) -> bool {
        self.pairs().all(|(x, y)| x == y)
    }

    /// Cycles as listing-ordered signed points, each starting at its first
    /// point in listing order; fixed points included.
    pub fn cycles(&self) -> Vec<Vec<i32>> {
        let mut seen = vec![false; self.p as usize];
        let mut out = Vec::new();
        for start in self.half_system().listing() {
            if seen[canonical(start, self.p) as usize] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[canonical(x, self.p) as usize] {
                seen[canonical(x, self.p) as usize] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// One-line form: comma-separated images in listing order.
    pub fn render(&self) -> String {
        render_listing(&self.images)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn render_listing(values: &[i32]) -> String {
    values
        .iter()
        .map(i32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// An interchange of two points of `F_p^*`, stored with the smaller absolute
/// value first (ties put the negative point first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transposition(i32, i32);

impl Transposition {
    pub fn new(a: i32, b: i32) -> Self {
        let key = |x: i32| (x.abs(), x);
        if key(a) <= key(b) {
            Transposition(a, b)
        } else {
            Transposition(b, a)
        }
    }

    pub fn points(&self) -> (i32, i32) {
        (self.0, self.1)
    }

    pub fn mirrored(&self) -> Self {
        Transposition::new(-self.0, -self.1)
    }

    /// Action on a signed representative modulo `p`.
    pub fn apply(&self, x: i32, p: u32) -> i32 {
        let c = canonical(x, p);
        if c == canonical(self.0, p) {
            self.1
        } else if c == canonical(self.1, p) {
            self.0
        } else {
            x
        }
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// `rho_q : x -> q x` on `F_p^*`.
pub fn build_rho(p: u32, q: u32) -> Result<SignedPermutation> {
    let half = HalfSystem::new(p)?;
    if q % p == 0 {
        return invalid(format!("q = {q} must be prime to p = {p}"));
    }
    let images = half
        .listing()
        .map(|x| {
            let r = (canonical(x, p) as u64 * q as u64 % p as u64) as u32;
            signed_rep(r, p)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SignedPermutation { p, images })
}

/// `S = {x in H : rho(x) not in H}` together with `mu = |S|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussWitness {
    pub mu: usize,
    pub s: BTreeSet<i32>,
}

impl GaussWitness {
    /// `(-1)^mu`.
    pub fn symbol(&self) -> LegendreSign {
        Sign::from_parity(self.mu as u64)
    }
}

pub fn mu_and_s(rho: &SignedPermutation, half: &HalfSystem) -> GaussWitness {
    let s: BTreeSet<i32> = half.elements().filter(|&x| rho.apply(x) < 0).collect();
    GaussWitness { mu: s.len(), s }
}

/// `(q/p) = (-1)^mu`.
pub fn gauss_lemma_symbol(p: u32, q: u32) -> Result<LegendreSign> {
    Ok(gauss_witness(p, q)?.symbol())
}

pub fn gauss_witness(p: u32, q: u32) -> Result<GaussWitness> {
    let rho = build_rho(p, q)?;
    Ok(mu_and_s(&rho, &rho.half_system()))
}

/// `pi = [prod_{y in S} (rho(y), -rho(y))] ∘ rho`.
///
/// The transpositions are disjoint because `rho` is a bijection commuting
/// with negation, so their order does not matter.
pub fn build_pi(rho: &SignedPermutation, s: &BTreeSet<i32>) -> SignedPermutation {
    let swaps = s.iter().map(|&y| {
        let image = rho.apply(y);
        Transposition::new(image, -image)
    });
    swap_images(rho, swaps)
}

/// `t_m ∘ ... ∘ t_1 ∘ perm`, updating only the two images each `t_i` touches.
fn swap_images(
    perm: &SignedPermutation,
    list: impl IntoIterator<Item = Transposition>,
) -> SignedPermutation {
    let p = perm.p;
    let mut images = perm.images.clone();
    let mut slot = vec![0usize; p as usize];
    for (i, &y) in images.iter().enumerate() {
        slot[canonical(y, p) as usize] = i;
    }
    for t in list {
        let (a, b) = t.points();
        let (ca, cb) = (canonical(a, p) as usize, canonical(b, p) as usize);
        if ca == cb {
            continue;
        }
        let (i, j) = (slot[ca], slot[cb]);
        images[i] = b;
        images[j] = a;
        slot.swap(ca, cb);
    }
    SignedPermutation { p, images }
}

/// Checks `pi(x) = -pi(-x)`, `pi(H) = H` and `pi(-H) = -H`.
pub fn pi_property_check(pi: &SignedPermutation, half: &HalfSystem) -> Verdict {
    for x in half.elements() {
        let (pos, neg) = (pi.apply(x), pi.apply(-x));
        if pos != -neg {
            return Verdict::fail(format!("pi({x}) = {pos} but pi(-{x}) = {neg}"));
        }
        if !half.contains(pos) {
            return Verdict::fail(format!("pi({x}) = {pos} is not in H"));
        }
        if !half.contains(-neg) {
            return Verdict::fail(format!("pi(-{x}) = {neg} is not in -H"));
        }
    }
    Verdict::pass()
}

/// `(-1)^(n - c)` for `n = p - 1` points and `c` cycles.
pub fn permutation_sign(perm: &SignedPermutation) -> Sign {
    let n = perm.images.len();
    Sign::from_parity((n - perm.cycles().len()) as u64)
}

/// Interchanges that turn `pi` into the identity, paired across `H` and `-H`.
///
/// Cycles of `pi` on `H` are taken in order of their smallest element `a`;
/// the cycle `(a c_1 ... c_k)` contributes `(a c_k), ..., (a c_1)` and each of
/// those is followed by its mirror `(-a, -c_i)`. Applying the list in order
/// after `pi` gives the identity.
pub fn paired_interchange_decomposition(
    pi: &SignedPermutation,
    half: &HalfSystem,
) -> Result<Vec<Transposition>> {
    let check = pi_property_check(pi, half);
    if !check.holds {
        return invalid(format!(
            "permutation does not preserve the half system: {}",
            check.diagnostic.unwrap_or_default()
        ));
    }
    let mut out = Vec::new();
    for cycle in pi.cycles().into_iter().filter(|c| c[0] > 0) {
        let a = cycle[0];
        for &c in cycle[1..].iter().rev() {
            let t = Transposition::new(a, c);
            out.push(t);
            out.push(t.mirrored());
        }
    }
    Ok(out)
}

/// `t_m ∘ ... ∘ t_1 ∘ perm` for the list `[t_1, ..., t_m]`.
pub fn apply_interchanges(perm: &SignedPermutation, list: &[Transposition]) -> SignedPermutation {
    swap_images(perm, list.iter().copied())
}
