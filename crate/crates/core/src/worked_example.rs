//! The `p = 13`, `q = 5` example, with its reference values embedded as data
//! and compared against freshly computed ones.

use serde::{Deserialize, Serialize};

use crate::gauss::{
    build_pi, build_rho, mu_and_s, paired_interchange_decomposition, signed_rep, Transposition,
};
use crate::legendre::{legendre, Method};
use crate::report::Status;
use crate::sign::Sign;

pub const P: u32 = 13;
pub const Q: u32 = 5;

/// Reference values, stored as data rather than recomputed.
pub mod fixture {
    pub const CLASSES: [i32; 12] = [1, 2, 3, 4, 5, 6, -6, -5, -4, -3, -2, -1];
    pub const RHO: [i32; 12] = [5, -3, 2, -6, -1, 4, -4, 1, 6, -2, 3, -5];
    pub const MU: usize = 3;
    pub const S: [i32; 3] = [2, 4, 5];
    pub const PI: [i32; 12] = [5, 3, 2, 6, 1, 4, -4, -1, -6, -2, -3, -5];
    pub const INTERCHANGES: [(i32, i32); 6] =
        [(-2, -3), (2, 3), (-4, -6), (4, 6), (-5, -1), (5, 1)];
    pub const SYMBOL: i8 = -1;
}

/// One compared item.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison<T> {
    pub computed: T,
    pub expected: T,
    pub matches: bool,
}

impl<T: PartialEq> Comparison<T> {
    fn new(computed: T, expected: T) -> Self {
        let matches = computed == expected;
        Comparison {
            computed,
            expected,
            matches,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub p: u32,
    pub q: u32,
    pub classes: Comparison<Vec<i32>>,
    pub rho: Comparison<Vec<i32>>,
    pub mu: Comparison<usize>,
    #[serde(rename = "S")]
    pub s: Comparison<Vec<i32>>,
    pub pi: Comparison<Vec<i32>>,
    /// Sorted multiset of normalized pairs.
    pub interchanges: Comparison<Vec<Transposition>>,
    pub symbol: Comparison<Sign>,
    pub status: Status,
}

impl ExampleReport {
    /// `(name, matches)` for every compared item.
    pub fn items(&self) -> [(&'static str, bool); 7] {
        [
            ("classes", self.classes.matches),
            ("rho", self.rho.matches),
            ("mu", self.mu.matches),
            ("S", self.s.matches),
            ("pi", self.pi.matches),
            ("interchanges", self.interchanges.matches),
            ("symbol", self.symbol.matches),
        ]
    }
}

fn sorted_pairs(pairs: impl IntoIterator<Item = Transposition>) -> Vec<Transposition> {
    let mut v: Vec<_> = pairs.into_iter().collect();
    v.sort();
    v
}

/// Recomputes every value of the example and compares it with the fixture.
pub fn run_worked_example() -> ExampleReport {
    let classes: Vec<i32> = (1..P)
        .map(|x| signed_rep(x, P).expect("nonzero residue"))
        .collect();
    let rho = build_rho(P, Q).expect("distinct primes");
    let half = rho.half_system();
    let witness = mu_and_s(&rho, &half);
    let pi = build_pi(&rho, &witness.s);
    let interchanges = paired_interchange_decomposition(&pi, &half).unwrap_or_default();
    let symbol = legendre(Q as u64, P as u64, Method::Gauss).expect("odd prime numerator");

    let expected_symbol = Sign::try_from(fixture::SYMBOL).expect("fixture sign");
    let mut report = ExampleReport {
        p: P,
        q: Q,
        classes: Comparison::new(classes, fixture::CLASSES.to_vec()),
        rho: Comparison::new(rho.images().to_vec(), fixture::RHO.to_vec()),
        mu: Comparison::new(witness.mu, fixture::MU),
        s: Comparison::new(witness.s.into_iter().collect(), fixture::S.to_vec()),
        pi: Comparison::new(pi.images().to_vec(), fixture::PI.to_vec()),
        interchanges: Comparison::new(
            sorted_pairs(interchanges),
            sorted_pairs(
                fixture::INTERCHANGES
                    .iter()
                    .map(|&(a, b)| Transposition::new(a, b)),
            ),
        ),
        symbol: Comparison::new(symbol, expected_symbol),
        status: Status::Fail,
    };
    report.status = Status::from_bool(report.items().iter().all(|&(_, ok)| ok));
    report
}
