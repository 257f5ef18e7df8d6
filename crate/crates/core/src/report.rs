//! Per-instance verification reports and sweep summaries.
//!
//! The JSON form has the top-level keys `instance`, `checks`, `witnesses`,
//! `timings_ms` and `status`.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::determinant::{DeterminantLab, DETERMINANT_P_BOUND};
use crate::error::{Error, Result};
use crate::field::{find_primitive_pth_root, ExtField};
use crate::gauss::{
    apply_interchanges, build_pi, build_rho, mu_and_s, paired_interchange_decomposition,
    permutation_sign, pi_property_check, Transposition,
};
use crate::legendre::{legendre, reciprocity_law_check, Method};
use crate::prime_field::{euler_criterion, odd_primes_up_to, ReciprocityInstance};
use crate::sign::Sign;
use crate::verdict::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

/// Check outcomes. Determinant checks are `None` when skipped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub gram: Option<bool>,
    pub theorem1: Option<bool>,
    pub theorem2: Option<bool>,
    pub conclusion: Option<bool>,
    pub gauss_lemma_consistency: bool,
    pub pi_properties: bool,
    pub sign_consistency: bool,
    pub interchanges: bool,
    pub legendre_agreement: bool,
    pub reciprocity_law: bool,
}

impl Checks {
    /// `(name, outcome)` for every check that ran.
    pub fn entries(&self) -> Vec<(&'static str, bool)> {
        let optional = [
            ("gram", self.gram),
            ("theorem1", self.theorem1),
            ("theorem2", self.theorem2),
            ("conclusion", self.conclusion),
        ];
        optional
            .into_iter()
            .filter_map(|(n, v)| v.map(|v| (n, v)))
            .chain([
                ("gauss_lemma_consistency", self.gauss_lemma_consistency),
                ("pi_properties", self.pi_properties),
                ("sign_consistency", self.sign_consistency),
                ("interchanges", self.interchanges),
                ("legendre_agreement", self.legendre_agreement),
                ("reciprocity_law", self.reciprocity_law),
            ])
            .collect()
    }

    pub fn all_pass(&self) -> bool {
        self.entries().iter().all(|&(_, ok)| ok)
    }

    pub fn failing(&self) -> Vec<&'static str> {
        self.entries()
            .into_iter()
            .filter(|&(_, ok)| !ok)
            .map(|(n, _)| n)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub modulus: Option<String>,
    pub theta: Option<String>,
    pub delta: Option<String>,
    /// `(q/p)` by Euler's criterion.
    pub symbol: Sign,
    pub mu: usize,
    #[serde(rename = "S")]
    pub s: Vec<i32>,
    pub rho: String,
    pub pi: String,
    pub interchanges: Vec<Transposition>,
    /// Diagnostics for failed checks, keyed by check name.
    pub diagnostics: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub instance: ReciprocityInstance,
    pub checks: Checks,
    pub witnesses: Witnesses,
    pub timings_ms: BTreeMap<String, f64>,
    pub status: Status,
}

struct Timer(BTreeMap<String, f64>);

impl Timer {
    fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.0
            .insert(name.to_string(), start.elapsed().as_secs_f64() * 1e3);
        out
    }
}

fn record(v: Verdict, name: &str, diagnostics: &mut BTreeMap<String, String>) -> bool {
    if let Some(d) = v.diagnostic {
        diagnostics.insert(name.to_string(), d);
    }
    v.holds
}

/// Runs every check for `(p, q)`. Determinant checks run only when
/// `with_determinant` is set, and then require `p <= 61`.
pub fn verify_instance(p: u32, q: u32, with_determinant: bool) -> Result<VerificationReport> {
    let instance = ReciprocityInstance::new(p, q)?;
    if with_determinant && p > DETERMINANT_P_BOUND {
        return Err(Error::OutOfBounds(format!(
            "determinant checks need p <= {DETERMINANT_P_BOUND}, got {p}"
        )));
    }
    let mut timer = Timer(BTreeMap::new());
    let mut diagnostics = BTreeMap::new();
    let symbol = euler_criterion(q as u64, p as u64)?;

    let mut modulus = None;
    let mut theta = None;
    let mut delta = None;
    let mut det = [None; 4];
    if with_determinant {
        let field = timer.time("field", || ExtField::new(q, instance.e as usize))?;
        let root = timer.time("root", || find_primitive_pth_root(&field, p))?;
        let lab = timer.time("determinant", || DeterminantLab::new(instance, root))?;
        modulus = Some(field.render_modulus());
        theta = Some(lab.root().theta().render());
        delta = Some(lab.delta().render());
        let names = ["gram", "theorem1", "theorem2", "conclusion"];
        let runs: [&dyn Fn() -> Verdict; 4] = [
            &|| lab.gram_check(),
            &|| lab.theorem1_check(),
            &|| lab.theorem2_check(),
            &|| lab.conclusion_check(),
        ];
        for (k, (name, run)) in names.into_iter().zip(runs).enumerate() {
            let v = timer.time(name, run);
            det[k] = Some(record(v, name, &mut diagnostics));
        }
    }

    let rho = build_rho(p, q)?;
    let half = rho.half_system();
    let witness = mu_and_s(&rho, &half);
    let pi = build_pi(&rho, &witness.s);

    let gauss_ok = timer.time("gauss_lemma_consistency", || {
        Verdict::from_condition(witness.symbol() == symbol, || {
            format!("(-1)^mu = {} but Euler gives {symbol}", witness.symbol())
        })
    });
    let gauss_ok = record(gauss_ok, "gauss_lemma_consistency", &mut diagnostics);

    let pi_ok = timer.time("pi_properties", || pi_property_check(&pi, &half));
    let pi_ok = record(pi_ok, "pi_properties", &mut diagnostics);

    let sign_ok = timer.time("sign_consistency", || {
        let (rho_sign, pi_sign) = (permutation_sign(&rho), permutation_sign(&pi));
        Verdict::from_condition(
            rho_sign == witness.symbol() && pi_sign == Sign::Plus,
            || {
                format!(
                    "sign(rho) = {rho_sign}, (-1)^mu = {}, sign(pi) = {pi_sign}",
                    witness.symbol()
                )
            },
        )
    });
    let sign_ok = record(sign_ok, "sign_consistency", &mut diagnostics);

    let mut interchanges = Vec::new();
    let inter_ok = timer.time("interchanges", || {
        match paired_interchange_decomposition(&pi, &half) {
            Ok(list) => {
                let v = Verdict::from_condition(
                    list.len() % 2 == 0 && apply_interchanges(&pi, &list).is_identity(),
                    || {
                        format!(
                            "{} interchanges do not reduce pi to the identity",
                            list.len()
                        )
                    },
                );
                interchanges = list;
                v
            }
            Err(e) => Verdict::fail(e.to_string()),
        }
    });
    let inter_ok = record(inter_ok, "interchanges", &mut diagnostics);

    let agree_ok = timer.time("legendre_agreement", || {
        let values: Result<Vec<_>> = Method::ALL
            .into_iter()
            .map(|m| legendre(q as u64, p as u64, m).map(|v| (m, v)))
            .collect();
        match values {
            Ok(values) => Verdict::from_condition(values.iter().all(|&(_, v)| v == symbol), || {
                let parts: Vec<String> = values.iter().map(|(m, v)| format!("{m}={v}")).collect();
                parts.join(", ")
            }),
            Err(e) => Verdict::fail(e.to_string()),
        }
    });
    let agree_ok = record(agree_ok, "legendre_agreement", &mut diagnostics);

    let law = timer.time("reciprocity_law", || {
        reciprocity_law_check(p as u64, q as u64)
    })?;
    let law_ok = record(law, "reciprocity_law", &mut diagnostics);

    let checks = Checks {
        gram: det[0],
        theorem1: det[1],
        theorem2: det[2],
        conclusion: det[3],
        gauss_lemma_consistency: gauss_ok,
        pi_properties: pi_ok,
        sign_consistency: sign_ok,
        interchanges: inter_ok,
        legendre_agreement: agree_ok,
        reciprocity_law: law_ok,
    };
    let status = Status::from_bool(checks.all_pass());
    Ok(VerificationReport {
        instance,
        checks,
        witnesses: Witnesses {
            modulus,
            theta,
            delta,
            symbol,
            mu: witness.mu,
            s: witness.s.into_iter().collect(),
            rho: rho.render(),
            pi: pi.render(),
            interchanges,
            diagnostics,
        },
        timings_ms: timer.0,
        status,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub max_p: u32,
    pub max_q: u32,
    /// Determinant checks run only for `p <= det_bound`.
    pub det_bound: u32,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.det_bound > DETERMINANT_P_BOUND {
            return Err(Error::OutOfBounds(format!(
                "det bound {} exceeds {DETERMINANT_P_BOUND}",
                self.det_bound
            )));
        }
        for (name, v) in [("max p", self.max_p), ("max q", self.max_q)] {
            if v >= crate::prime_field::PRIME_LIMIT {
                return Err(Error::OutOfBounds(format!("{name} = {v} is too large")));
            }
        }
        Ok(())
    }

    /// Distinct odd prime pairs in `(p, q)` lexicographic order.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        let qs = odd_primes_up_to(self.max_q);
        odd_primes_up_to(self.max_p)
            .into_iter()
            .flat_map(|p| qs.iter().filter(move |&&q| q != p).map(move |&q| (p, q)))
            .collect()
    }

    pub fn verify(&self, (p, q): (u32, u32)) -> Result<VerificationReport> {
        verify_instance(p, q, p <= self.det_bound)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub p: u32,
    pub q: u32,
    pub failing: Vec<String>,
    pub diagnostics: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub config: SweepConfig,
    pub pairs: usize,
    pub determinant_pairs: usize,
    pub passed: usize,
    pub failed: usize,
    /// Per-check pass counts.
    pub check_passes: BTreeMap<String, usize>,
    pub first_failure: Option<SweepFailure>,
    pub status: Status,
}

impl SweepSummary {
    /// Merges reports, which must already be in `(p, q)` order.
    pub fn from_reports(config: SweepConfig, reports: &[VerificationReport]) -> Self {
        let mut check_passes = BTreeMap::new();
        let mut first_failure = None;
        let mut passed = 0;
        let mut determinant_pairs = 0;
        for r in reports {
            if r.checks.gram.is_some() {
                determinant_pairs += 1;
            }
            for (name, ok) in r.checks.entries() {
                *check_passes.entry(name.to_string()).or_insert(0) += usize::from(ok);
            }
            if r.status.is_pass() {
                passed += 1;
            } else if first_failure.is_none() {
                first_failure = Some(SweepFailure {
                    p: r.instance.p,
                    q: r.instance.q,
                    failing: r.checks.failing().into_iter().map(String::from).collect(),
                    diagnostics: r.witnesses.diagnostics.clone(),
                });
            }
        }
        let failed = reports.len() - passed;
        SweepSummary {
            config,
            pairs: reports.len(),
            determinant_pairs,
            passed,
            failed,
            check_passes,
            first_failure,
            status: Status::from_bool(failed == 0),
        }
    }
}

/// Sequential sweep.
pub fn run_sweep(config: SweepConfig) -> Result<SweepSummary> {
    config.validate()?;
    let reports = config
        .pairs()
        .into_iter()
        .map(|pair| config.verify(pair))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepSummary::from_reports(config, &reports))
}
