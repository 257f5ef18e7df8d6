//! The `p x p` matrix `M` of root-of-unity powers, its exact determinant
//! `delta`, and the identities relating `delta` to `p*` and to Frobenius.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{eval_f, ExtElem, ExtField, Poly, RootOfUnity};
use crate::prime_field::{euler_criterion, ReciprocityInstance};
use crate::sign::LegendreSign;
use crate::verdict::Verdict;

/// Largest `p` accepted by the determinant-based checks.
pub const DETERMINANT_P_BOUND: u32 = 61;

/// Dense square matrix over one extension field, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtMatrix<'f> {
    n: usize,
    entries: Vec<ExtElem<'f>>,
}

impl<'f> ExtMatrix<'f> {
    /// Builds a matrix from rows; all rows must have length `rows.len()` and
    /// all entries must share a field.
    pub fn from_rows(rows: Vec<Vec<ExtElem<'f>>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidInput("matrix must be non-empty".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("matrix must be square".into()));
        }
        let field = rows[0][0].field();
        let entries: Vec<_> = rows.into_iter().flatten().collect();
        if entries.iter().any(|a| a.field() != field) {
            return Err(Error::InvalidInput(
                "entries belong to different fields".into(),
            ));
        }
        Ok(ExtMatrix { n, entries })
    }

    pub fn identity(field: &'f ExtField, n: usize) -> Self {
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    field.one()
                } else {
                    field.zero()
                }
            })
            .collect();
        ExtMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &'f ExtField {
        self.entries[0].field()
    }

    /// Zero-based entry.
    pub fn get(&self, row: usize, col: usize) -> &ExtElem<'f> {
        &self.entries[row * self.n + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ExtElem<'f>]> {
        self.entries.chunks(self.n)
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect();
        ExtMatrix { n, entries }
    }

    pub fn mul(&self, other: &ExtMatrix<'f>) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let field = self.field();
        let entries = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                // Sum the unreduced products and reduce once.
                let sum = (0..n).fold(Poly::zero(field.characteristic()), |acc, l| {
                    acc.add(&self.get(i, l).rep().mul(other.get(l, j).rep()))
                });
                field.reduce(sum)
            })
            .collect();
        ExtMatrix { n, entries }
    }

    /// Applies `f` to every entry.
    pub fn map(&self, f: impl Fn(&ExtElem<'f>) -> ExtElem<'f>) -> Self {
        ExtMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Entrywise Frobenius image.
    pub fn frobenius(&self) -> Self {
        self.map(ExtElem::frobenius)
    }

    /// Zero-based column swap.
    pub fn swap_columns(&mut self, a: usize, b: usize) {
        for row in 0..self.n {
            self.entries.swap(row * self.n + a, row * self.n + b);
        }
    }

    /// Zero-based column `col`.
    pub fn column(&self, col: usize) -> Vec<ExtElem<'f>> {
        (0..self.n).map(|row| self.get(row, col).clone()).collect()
    }
}

impl fmt::Debug for ExtMatrix<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for row in self.rows() {
            list.entry(&row.iter().map(ExtElem::render).collect::<Vec<_>>());
        }
        list.finish()
    }
}

/// The matrix with entry `theta^(i (j-1))` in row `i`, column `j`
/// (one-based): row 1 is `(1, theta, ..., theta^(p-1))` and row `p` is all
/// ones.
pub fn build_m<'f>(root: &RootOfUnity<'f>) -> ExtMatrix<'f> {
    let p = root.p() as usize;
    let powers = root.powers();
    let entries = (0..p * p)
        .map(|k| {
            let (i, j) = (k / p + 1, k % p);
            powers[(i * j) % p].clone()
        })
        .collect();
    ExtMatrix { n: p, entries }
}

/// Exact determinant by Gaussian elimination with the first nonzero pivot of
/// each column; `(-1)^swaps` times the product of pivots.
pub fn determinant<'f>(m: &ExtMatrix<'f>) -> ExtElem<'f> {
    let n = m.n;
    let field = m.field();
    let mut a: Vec<Vec<ExtElem<'f>>> = m.rows().map(|r| r.to_vec()).collect();
    let mut det = field.one();
    let mut swaps = 0usize;
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return field.zero();
        };
        if pivot_row != col {
            a.swap(pivot_row, col);
            swaps += 1;
        }
        let pivot = a[col][col].clone();
        det = &det * &pivot;
        let pivot_inv = pivot.inv().expect("nonzero pivot");
        let (top, bottom) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in bottom.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] * &pivot_inv;
            for k in col..n {
                row[k] = &row[k] - &(&factor * &pivot_row[k]);
            }
        }
    }
    if swaps % 2 == 1 {
        -&det
    } else {
        det
    }
}

/// Embeds a sign as the field constant `1` or `q - 1`.
pub fn embed_sign<'f>(field: &'f ExtField, s: LegendreSign) -> ExtElem<'f> {
    field.constant(s.to_residue(field.characteristic()) as u64)
}

/// Everything derived from one root of unity: `M` and `delta = det M`.
#[derive(Debug, Clone)]
pub struct DeterminantLab<'f> {
    instance: ReciprocityInstance,
    root: RootOfUnity<'f>,
    matrix: ExtMatrix<'f>,
    delta: ExtElem<'f>,
}

impl<'f> DeterminantLab<'f> {
    pub fn new(instance: ReciprocityInstance, root: RootOfUnity<'f>) -> Result<Self> {
        if instance.p > DETERMINANT_P_BOUND {
            return Err(Error::OutOfBounds(format!(
                "determinant checks need p <= {DETERMINANT_P_BOUND}, got {}",
                instance.p
            )));
        }
        let field = root.field();
        if root.p() != instance.p || field.characteristic() != instance.q {
            return Err(Error::InvalidInstance(format!(
                "root of unity of order {} in characteristic {} does not match (p, q) = ({}, {})",
                root.p(),
                field.characteristic(),
                instance.p,
                instance.q
            )));
        }
        let matrix = build_m(&root);
        let delta = determinant(&matrix);
        Ok(DeterminantLab {
            instance,
            root,
            matrix,
            delta,
        })
    }

    pub fn instance(&self) -> &ReciprocityInstance {
        &self.instance
    }

    pub fn root(&self) -> &RootOfUnity<'f> {
        &self.root
    }

    pub fn matrix(&self) -> &ExtMatrix<'f> {
        &self.matrix
    }

    pub fn delta(&self) -> &ExtElem<'f> {
        &self.delta
    }

    fn field(&self) -> &'f ExtField {
        self.root.field()
    }

    /// `M^T M` has entry `f(theta^(i+j-2))`, which is `p` where
    /// `i + j - 2 = 0 (mod p)` and zero elsewhere.
    pub fn gram_check(&self) -> Verdict {
        let p = self.instance.p as usize;
        let gram = self.matrix.transpose().mul(&self.matrix);
        let p_const = self.field().constant(p as u64);
        let f_values: Vec<_> = (0..p as i64).map(|k| eval_f(&self.root, k)).collect();
        for i in 1..=p {
            for j in 1..=p {
                let got = gram.get(i - 1, j - 1);
                let k = i + j - 2;
                let via_f = &f_values[k % p];
                if got != via_f {
                    return Verdict::fail(format!(
                        "(M^T M)[{i},{j}] = {got}, but f(theta^{k}) = {via_f}"
                    ));
                }
                let expect_p = (i + j - 2) % p == 0;
                let pattern_ok = if expect_p {
                    *got == p_const
                } else {
                    got.is_zero()
                };
                if !pattern_ok {
                    return Verdict::fail(format!(
                        "(M^T M)[{i},{j}] = {got} breaks the p/0 pattern"
                    ));
                }
            }
        }
        Verdict::pass()
    }

    /// `delta^2 = p* p^(p-1)` with the right side computed in `F_q`.
    pub fn theorem1_check(&self) -> Verdict {
        let q = self.instance.q as u64;
        let p_mod_q = self.instance.p as u64 % q;
        let p_star = self.instance.p_star_mod_q() as u64;
        let mut rhs = p_star;
        for _ in 0..self.instance.p - 1 {
            rhs = rhs * p_mod_q % q;
        }
        let lhs = &self.delta * &self.delta;
        let rhs = self.field().constant(rhs);
        if lhs == rhs {
            Verdict::pass()
        } else {
            Verdict::fail(format!("delta^2 = {lhs}, p* p^(p-1) = {rhs}"))
        }
    }

    /// `phi_q(delta) = (q/p) delta`, cross-checked against the determinant of
    /// the entrywise Frobenius image of `M` and against the column
    /// permutation `j -> q j (mod p)` that Frobenius induces on `M`.
    pub fn theorem2_check(&self) -> Verdict {
        let inst = &self.instance;
        let symbol = euler_criterion(inst.q as u64, inst.p as u64).expect("p, q distinct primes");
        let frob_delta = self.delta.frobenius();
        let expected = &embed_sign(self.field(), symbol) * &self.delta;
        if frob_delta != expected {
            return Verdict::fail(format!(
                "phi_q(delta) = {frob_delta}, but ({}/{}) delta = {expected}",
                inst.q, inst.p
            ));
        }
        let frob_m = self.matrix.frobenius();
        let p = inst.p as usize;
        for col in 0..p {
            let target = col * inst.q as usize % p;
            if frob_m.column(col) != self.matrix.column(target) {
                return Verdict::fail(format!(
                    "Frobenius image of column {} is not column {}",
                    col + 1,
                    target + 1
                ));
            }
        }
        let det_frob = determinant(&frob_m);
        if det_frob != frob_delta {
            return Verdict::fail(format!(
                "det(phi_q(M)) = {det_frob} differs from phi_q(delta) = {frob_delta}"
            ));
        }
        Verdict::pass()
    }

    /// `(p*/q) = 1 <=> (q/p) = 1`, and `(p*/q) = 1 <=> delta in F_q`.
    pub fn conclusion_check(&self) -> Verdict {
        let inst = &self.instance;
        let p_star_symbol =
            euler_criterion(inst.p_star_mod_q() as u64, inst.q as u64).expect("q prime");
        let q_symbol = euler_criterion(inst.q as u64, inst.p as u64).expect("p prime");
        if p_star_symbol.is_plus() != q_symbol.is_plus() {
            return Verdict::fail(format!("(p*/q) = {p_star_symbol} but (q/p) = {q_symbol}"));
        }
        let in_subfield = self.delta.is_in_prime_subfield();
        if p_star_symbol.is_plus() != in_subfield {
            return Verdict::fail(format!(
                "(p*/q) = {p_star_symbol} but delta {} F_q",
                if in_subfield { "lies in" } else { "is outside" }
            ));
        }
        Verdict::pass()
    }
}

pub fn gram_check(instance: ReciprocityInstance, root: &RootOfUnity<'_>) -> Result<Verdict> {
    Ok(DeterminantLab::new(instance, root.clone())?.gram_check())
}

pub fn theorem1_check(instance: ReciprocityInstance, root: &RootOfUnity<'_>) -> Result<Verdict> {
    Ok(DeterminantLab::new(instance, root.clone())?.theorem1_check())
}

pub fn theorem2_check(instance: ReciprocityInstance, root: &RootOfUnity<'_>) -> Result<Verdict> {
    Ok(DeterminantLab::new(instance, root.clone())?.theorem2_check())
}

pub fn conclusion_check(instance: ReciprocityInstance, root: &RootOfUnity<'_>) -> Result<Verdict> {
    Ok(DeterminantLab::new(instance, root.clone())?.conclusion_check())
}
