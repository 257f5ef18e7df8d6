//! One line per acceptance criterion, with a pinned time budget where one
//! applies. Exits non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use reciprocity_cli::{cmd_example, Format, EXIT_PASS};
use reciprocity_core::determinant::{determinant, DeterminantLab, ExtMatrix};
use reciprocity_core::field::{find_irreducible, find_primitive_pth_root, ExtElem, ExtField};
use reciprocity_core::gauss::{
    apply_interchanges, build_pi, build_rho, mu_and_s, paired_interchange_decomposition,
    permutation_sign, pi_property_check,
};
use reciprocity_core::legendre::{legendre, reciprocity_law_check, Method};
use reciprocity_core::prime_field::{
    euler_criterion, is_prime, odd_primes_up_to, ReciprocityInstance,
};
use reciprocity_core::worked_example::run_worked_example;
use reciprocity_core::Sign;

const GOLDEN_BUDGET: Duration = Duration::from_millis(100);
const DETERMINANT_BUDGET: Duration = Duration::from_secs(60);
const PERMUTATION_BUDGET: Duration = Duration::from_secs(30);
const LEGENDRE_BUDGET: Duration = Duration::from_secs(30);

const DETERMINANT_MAX: u32 = 31;
const SWEEP_MAX: u32 = 499;
const RANDOM_MATRICES: usize = 128;
const IRREDUCIBLE_ORDER_MAX: u64 = 3000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn distinct_pairs(max: u32) -> Vec<(u32, u32)> {
    let primes = odd_primes_up_to(max);
    let mut out = Vec::new();
    for &p in &primes {
        for &q in &primes {
            if p != q {
                out.push((p, q));
            }
        }
    }
    out
}

/// Quadratic residues mod `p` by squaring every residue.
fn squares(p: u32) -> Vec<bool> {
    let mut is_square = vec![false; p as usize];
    for x in 1..p as u64 {
        is_square[(x * x % p as u64) as usize] = true;
    }
    is_square
}

fn oracle_symbol(table: &[bool], a: i64) -> Sign {
    let p = table.len() as i64;
    if table[a.rem_euclid(p) as usize] {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn normalize_pairs(pairs: impl IntoIterator<Item = (i32, i32)>) -> Vec<(i32, i32)> {
    let mut v: Vec<_> = pairs
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    v.sort();
    v
}

fn golden_example() -> Outcome {
    let start = Instant::now();
    let out = cmd_example(Format::Text);
    let report = run_worked_example();
    let elapsed = start.elapsed();

    let r = &report;
    ensure(out.code == EXIT_PASS, || {
        format!("example exited {}", out.code)
    })?;
    ensure(
        r.rho.computed == [5, -3, 2, -6, -1, 4, -4, 1, 6, -2, 3, -5],
        || format!("rho_5 = {:?}", r.rho.computed),
    )?;
    ensure(r.mu.computed == 3, || format!("mu = {}", r.mu.computed))?;
    ensure(r.s.computed == [2, 4, 5], || {
        format!("S = {:?}", r.s.computed)
    })?;
    ensure(
        r.pi.computed == [5, 3, 2, 6, 1, 4, -4, -1, -6, -2, -3, -5],
        || format!("pi = {:?}", r.pi.computed),
    )?;
    let expected = [(-2, -3), (2, 3), (-4, -6), (4, 6), (-5, -1), (5, 1)];
    let computed = normalize_pairs(r.interchanges.computed.iter().map(|t| t.points()));
    ensure(computed == normalize_pairs(expected), || {
        format!("interchanges = {computed:?}")
    })?;
    ensure(r.symbol.computed == Sign::Minus, || {
        format!("(5/13) = {}", r.symbol.computed)
    })?;
    for line in [
        "rho_5         5,-3,2,-6,-1,4,-4,1,6,-2,3,-5",
        "pi            5,3,2,6,1,4,-4,-1,-6,-2,-3,-5",
    ] {
        ensure(out.stdout.lines().any(|l| l == line), || {
            format!("missing line `{line}`")
        })?;
    }
    ensure(elapsed < GOLDEN_BUDGET, || format!("took {elapsed:?}"))?;

    let bin = Command::new(env!("CARGO_BIN_EXE_reciprocity"))
        .arg("example")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(bin.status.code() == Some(0), || {
        format!("binary exited {:?}", bin.status.code())
    })?;
    ensure(String::from_utf8_lossy(&bin.stdout) == out.stdout, || {
        "binary output differs".into()
    })?;
    Ok(format!(
        "all values exact, {:.2} ms",
        elapsed.as_secs_f64() * 1e3
    ))
}

fn determinant_tier() -> Outcome {
    let start = Instant::now();
    let pairs = distinct_pairs(DETERMINANT_MAX);
    for &(p, q) in &pairs {
        let instance = ReciprocityInstance::new(p, q).map_err(|e| e.to_string())?;
        let field = ExtField::new(q, instance.e as usize).map_err(|e| e.to_string())?;
        let root = find_primitive_pth_root(&field, p).map_err(|e| e.to_string())?;
        let lab = DeterminantLab::new(instance, root).map_err(|e| e.to_string())?;
        let checks = [
            ("gram", lab.gram_check()),
            ("theorem1", lab.theorem1_check()),
            ("theorem2", lab.theorem2_check()),
            ("conclusion", lab.conclusion_check()),
        ];
        for (name, v) in checks {
            ensure(v.holds, || {
                format!("{name} fails for ({p},{q}): {:?}", v.diagnostic)
            })?;
        }
    }
    let elapsed = start.elapsed();
    ensure(pairs.len() >= 55, || format!("only {} pairs", pairs.len()))?;
    ensure(elapsed < DETERMINANT_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} pairs, single-threaded, {:.1} s",
        pairs.len(),
        elapsed.as_secs_f64()
    ))
}

fn permutation_tier() -> Outcome {
    let start = Instant::now();
    let pairs = distinct_pairs(SWEEP_MAX);
    for &(p, q) in &pairs {
        let rho = build_rho(p, q).map_err(|e| e.to_string())?;
        let half = rho.half_system();
        let w = mu_and_s(&rho, &half);
        let pi = build_pi(&rho, &w.s);
        ensure(
            permutation_sign(&rho) == Sign::from_parity(w.mu as u64),
            || format!("sign(rho) != (-1)^mu for ({p},{q})"),
        )?;
        ensure(permutation_sign(&pi) == Sign::Plus, || {
            format!("sign(pi) = -1 for ({p},{q})")
        })?;
        let h = (p / 2) as i32;
        for x in 1..=h {
            ensure(pi.apply(-x) == -pi.apply(x), || {
                format!("pi(-{x}) != -pi({x}) for ({p},{q})")
            })?;
            let y = pi.apply(x);
            ensure((1..=h).contains(&y), || {
                format!("pi({x}) = {y} outside H for ({p},{q})")
            })?;
        }
        ensure(pi_property_check(&pi, &half).holds, || {
            format!("pi property check fails for ({p},{q})")
        })?;
        let list = paired_interchange_decomposition(&pi, &half).map_err(|e| e.to_string())?;
        ensure(list.len() % 2 == 0, || {
            format!("odd decomposition for ({p},{q})")
        })?;
        ensure(apply_interchanges(&pi, &list).is_identity(), || {
            format!("decomposition does not reach the identity for ({p},{q})")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < PERMUTATION_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} pairs, {:.1} s",
        pairs.len(),
        elapsed.as_secs_f64()
    ))
}

fn legendre_agreement() -> Outcome {
    let start = Instant::now();
    let primes = odd_primes_up_to(SWEEP_MAX);
    let mut pairs = 0;
    let mut euler_cases = 0;
    for &p in &primes {
        let table = squares(p);
        for &q in primes.iter().filter(|&&q| q < p) {
            let expected = oracle_symbol(&table, q as i64);
            for m in Method::ALL {
                let v = legendre(q as u64, p as u64, m).map_err(|e| e.to_string())?;
                ensure(v == expected, || {
                    format!("{m} gives ({q}/{p}) = {v}, expected {expected}")
                })?;
            }
            pairs += 1;
        }
        for a in 1..p {
            let v = euler_criterion(a as u64, p as u64).map_err(|e| e.to_string())?;
            ensure(v == oracle_symbol(&table, a as i64), || {
                format!("euler wrong for ({a}/{p})")
            })?;
            euler_cases += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < LEGENDRE_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{pairs} pairs x 4 methods, {euler_cases} euler cases, {:.1} s",
        elapsed.as_secs_f64()
    ))
}

fn reciprocity_law() -> Outcome {
    let pairs = distinct_pairs(SWEEP_MAX);
    let tables: Vec<Vec<bool>> = (0..=SWEEP_MAX)
        .map(|n| {
            if is_prime(n as u64) {
                squares(n)
            } else {
                Vec::new()
            }
        })
        .collect();
    for &(p, q) in &pairs {
        let (tp, tq) = (&tables[p as usize], &tables[q as usize]);
        let qp = oracle_symbol(tp, q as i64);
        let pq = oracle_symbol(tq, p as i64);
        let sign = Sign::from_parity(((p - 1) / 2 * ((q - 1) / 2)) as u64);
        ensure(pq * qp == sign, || {
            format!("product law fails for ({p},{q})")
        })?;
        let p_star = if p % 4 == 1 { p as i64 } else { -(p as i64) };
        let star = oracle_symbol(tq, p_star);
        ensure(star.is_plus() == qp.is_plus(), || {
            format!("equivalence fails for ({p},{q})")
        })?;
        let v = reciprocity_law_check(p as u64, q as u64).map_err(|e| e.to_string())?;
        ensure(v.holds, || {
            format!("library check fails for ({p},{q}): {:?}", v.diagnostic)
        })?;
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn cofactor<'f>(m: &[Vec<ExtElem<'f>>]) -> ExtElem<'f> {
    let field = m[0][0].field();
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = field.zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<_>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, a)| a.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &cofactor(&minor);
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// `true` when no monic polynomial of degree `1..=deg/2` divides `m`.
/// Coefficients are lowest degree first; `m` is monic.
fn trial_division_irreducible(m: &[u32], q: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let mut lower = vec![0u32; d];
        loop {
            let mut divisor = lower.clone();
            divisor.push(1);
            if remainder(m, &divisor, q).iter().all(|&c| c == 0) {
                return false;
            }
            let mut i = 0;
            while i < d {
                lower[i] += 1;
                if lower[i] < q {
                    break;
                }
                lower[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    true
}

fn remainder(a: &[u32], monic: &[u32], q: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let d = monic.len() - 1;
    let q = q as u64;
    for top in (d..r.len()).rev() {
        let c = r[top] % q;
        if c == 0 {
            continue;
        }
        for (k, &b) in monic.iter().enumerate() {
            let idx = top - d + k;
            r[idx] = (r[idx] + (q - c) * b as u64) % q;
        }
    }
    r.truncate(d);
    r.into_iter().map(|c| (c % q) as u32).collect()
}

fn kernel_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let fields = [
        ExtField::new(3, 2).map_err(|e| e.to_string())?,
        ExtField::new(5, 2).map_err(|e| e.to_string())?,
    ];
    for i in 0..RANDOM_MATRICES {
        let field = &fields[i % 2];
        let n = rng.gen_range(1..=4);
        let order = field.order().expect("small field");
        let rows: Vec<Vec<ExtElem<'_>>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let k = rng.gen_range(0..order);
                        field.elements().nth(k as usize).expect("in range")
                    })
                    .collect()
            })
            .collect();
        let expected = cofactor(&rows);
        let m = ExtMatrix::from_rows(rows).map_err(|e| e.to_string())?;
        let got = determinant(&m);
        ensure(got == expected, || {
            format!(
                "determinant mismatch on matrix {i}: {} vs {}",
                got.render(),
                expected.render()
            )
        })?;
    }

    let mut frob_pairs = 0;
    for (q, e) in [(3, 2), (5, 2), (3, 3)] {
        let field = ExtField::new(q, e).map_err(|e| e.to_string())?;
        let elems: Vec<_> = field.elements().collect();
        let mut images = Vec::with_capacity(elems.len());
        for x in &elems {
            let mut acc = field.one();
            for _ in 0..q {
                acc = &acc * x;
            }
            ensure(acc == x.frobenius(), || {
                format!("frobenius is not x^{q} in F_{q}^{e}")
            })?;
            images.push(acc);
        }
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let sum = (a + b).frobenius();
                let prod = (a * b).frobenius();
                ensure(
                    sum == &images[i] + &images[j] && prod == &images[i] * &images[j],
                    || {
                        format!(
                            "frobenius not a homomorphism at ({}, {}) in F_{q}^{e}",
                            a.render(),
                            b.render()
                        )
                    },
                )?;
                frob_pairs += 1;
            }
        }
    }

    let mut moduli = 0;
    for q in (2..=IRREDUCIBLE_ORDER_MAX as u32).filter(|&q| is_prime(q as u64)) {
        let mut e = 1usize;
        while (q as u64).pow(e as u32) <= IRREDUCIBLE_ORDER_MAX {
            let m = find_irreducible(q, e).map_err(|err| err.to_string())?;
            ensure(m.degree() == Some(e) && m.is_monic(), || {
                format!("bad modulus for ({q},{e})")
            })?;
            ensure(trial_division_irreducible(m.coeffs(), q), || {
                format!("reducible modulus for ({q},{e})")
            })?;
            moduli += 1;
            e += 1;
        }
    }
    Ok(format!(
        "{RANDOM_MATRICES} random matrices, {frob_pairs} frobenius pairs, {moduli} moduli"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("golden p=13 q=5 example", golden_example),
        ("determinant tier, p,q <= 31", determinant_tier),
        ("permutation tier, p,q <= 499", permutation_tier),
        ("legendre four-way agreement, p <= 499", legendre_agreement),
        ("reciprocity law identity, p,q <= 499", reciprocity_law),
        ("kernel oracle equivalence", kernel_oracles),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
