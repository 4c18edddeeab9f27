//! Self-contained verification suites behind the `selftest` command.
//!
//! `fast` runs the symmetric-function and plethystic property suites and the pentagon
//! identity; `full` adds the one-vertex DT tables, the finite-field oracle corpus and the
//! two-route DT comparison. Randomized suites draw from a ChaCha RNG seeded with the
//! reported seed, so every report is reproducible.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{q_pochhammer, LaurentPolyQ, RationalFunctionQ, UPolyQ};
use crate::invariants::{dt_table_via_symfunc, dt_via_qseries, SymmetricQuiverProblem};
use crate::oracle::{default_corpus, oracle_check};
use crate::partitions::{enumerate_partitions, MultiPartition, Partition};
use crate::plethlog::{GradedSeries, Truncation};
use crate::quiver::Quiver;
use crate::symfunc::{
    hall_littlewood_transformed, p_basis, schur, top_degree_pairing, top_degree_u_limit, u_specialize,
    HomogSymFunc,
};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// `DT_n` for the one-vertex quiver with `m` loops, `n = 1, 2, …`.
pub const LOOP_TABLE_M2: [&str; 6] = [
    "1",
    "1",
    "q",
    "q^3 + q",
    "q^6 + q^4 + q^3 + q^2 + q",
    "q^10 + q^8 + q^7 + 2q^6 + q^5 + 3q^4 + q^3 + 2q^2 + q",
];
pub const LOOP_TABLE_M3: [&str; 5] = [
    "1",
    "q",
    "q^4 + q^2 + q",
    "q^9 + q^7 + q^6 + 2q^5 + q^4 + 2q^3 + q^2 + q",
    "q^16 + q^14 + q^13 + 2q^12 + 2q^11 + 3q^10 + 3q^9 + 4q^8 + 4q^7 + 5q^6 + 4q^5 + 4q^4 + 3q^3 + 2q^2 + q",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Fast,
    Full,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct SelftestReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed={}", self.seed)?;
        for c in &self.checks {
            writeln!(
                f,
                "{} {} ({}) [{:.3}s]",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail,
                c.elapsed.as_secs_f64()
            )?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

type Check = Result<String, String>;

fn timed(name: &'static str, f: impl FnOnce() -> Check) -> CheckResult {
    let start = Instant::now();
    let r = f();
    let elapsed = start.elapsed();
    match r {
        Ok(detail) => CheckResult {
            name,
            passed: true,
            detail,
            elapsed,
        },
        Err(detail) => CheckResult {
            name,
            passed: false,
            detail,
            elapsed,
        },
    }
}

pub fn run(level: Level, seed: u64) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = vec![
        timed("schur-hook-specialization", || schur_hook_specialization(7)),
        timed("hall-littlewood-specialization", || hall_littlewood_specialization(6)),
        timed("hall-littlewood-top-degree", || hall_littlewood_top_degree(6)),
        timed("top-degree-routes", || top_degree_routes(&mut rng, 100, 6)),
        timed("log-commutes-with-specialization", || {
            log_commutes_with_specialization(&mut rng, 50, 5)
        }),
        timed("log-commutes-with-top-degree", || log_commutes_with_top_degree(&mut rng, 50, 5)),
        timed("exp-log-round-trip", || exp_log_round_trip(&mut rng, 20, 5)),
        timed("pentagon", || pentagon(4)),
    ];
    if level == Level::Full {
        checks.push(timed("loop-table-m2", || loop_table(2, &LOOP_TABLE_M2)));
        checks.push(timed("loop-table-m3", || loop_table(3, &LOOP_TABLE_M3)));
        checks.push(timed("oracle-corpus", oracle_corpus));
        checks.push(timed("dt-two-routes", two_routes));
    }
    SelftestReport { seed, checks }
}

fn one_slot(p: Partition) -> MultiPartition {
    MultiPartition::new(vec![p])
}

fn rf(c: i64) -> RationalFunctionQ {
    RationalFunctionQ::from_int(c)
}

/// `1 − c u^k` style binomials and their products.
fn u_binomial(a: RationalFunctionQ, k: u32, b: RationalFunctionQ) -> UPolyQ {
    UPolyQ::from_terms([(0, a), (k, b)])
}

/// `s_λ[1 − u] = (−u)^{n−r}(1 − u)` for hooks `(r, 1^{n−r})`, zero otherwise.
pub fn schur_hook_specialization(max: usize) -> Check {
    let mut count = 0;
    for n in 1..=max {
        for lambda in enumerate_partitions(n) {
            let got = u_specialize(&schur(&one_slot(lambda.clone()))).map_err(|e| e.to_string())?;
            let expected = if lambda.is_hook() {
                let k = (n - lambda.part(0)) as u32;
                let sign = if k % 2 == 0 { 1 } else { -1 };
                UPolyQ::from_terms([(k, rf(sign)), (k + 1, rf(-sign))])
            } else {
                UPolyQ::zero()
            };
            if got != expected {
                return Err(format!("s_{lambda}[1-u] = {got:?}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} partitions"))
}

/// `H̃_λ[1 − u] = ∏_{i=1}^{l(λ)} (1 − q^{i−1} u)`.
pub fn hall_littlewood_specialization(max: usize) -> Check {
    let mut count = 0;
    for n in 1..=max {
        for lambda in enumerate_partitions(n) {
            let got = u_specialize(&hall_littlewood_transformed(&lambda, 0, 1)).map_err(|e| e.to_string())?;
            let expected = (0..lambda.len()).fold(UPolyQ::one(), |acc, i| {
                acc.mul(&u_binomial(rf(1), 1, RationalFunctionQ::monomial(-1, i as i64)))
            });
            if got != expected {
                return Err(format!("H_{lambda}[1-u] = {got:?}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} partitions"))
}

/// `[H̃_λ] = 0` unless `λ = (1^n)`, where it is `(−1)^n q^{n(n−1)/2}`.
pub fn hall_littlewood_top_degree(max: usize) -> Check {
    let mut count = 0;
    for n in 1..=max {
        for lambda in enumerate_partitions(n) {
            let h = hall_littlewood_transformed(&lambda, 0, 1);
            let expected = if lambda == Partition::column(n) {
                let sign = if n % 2 == 0 { 1 } else { -1 };
                RationalFunctionQ::monomial(sign, (n * (n - 1) / 2) as i64)
            } else {
                RationalFunctionQ::zero()
            };
            for (route, got) in [("u-limit", top_degree_u_limit(&h)), ("pairing", top_degree_pairing(&h))] {
                if got != expected {
                    return Err(format!("[H_{lambda}] by {route} = {got}"));
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} partitions"))
}

/// A small random coefficient: `c q^e`, sometimes over `1 − q^k`.
pub fn random_coefficient(rng: &mut impl Rng) -> RationalFunctionQ {
    let c = loop {
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 {
            break c;
        }
    };
    let num = LaurentPolyQ::monomial(c, rng.gen_range(-1..=2));
    if rng.gen_bool(0.3) {
        let k = rng.gen_range(1..=2);
        let den = &LaurentPolyQ::one() - &LaurentPolyQ::monomial(1, k);
        RationalFunctionQ::new(num, den).expect("non-zero denominator")
    } else {
        RationalFunctionQ::from_poly(num)
    }
}

/// A random single-alphabet symmetric function of degree `n` in the power-sum basis.
pub fn random_symfunc(rng: &mut impl Rng, n: usize) -> HomogSymFunc {
    let parts = enumerate_partitions(n);
    let mut f = HomogSymFunc::zero(vec![n]);
    let terms = rng.gen_range(1..=3.min(parts.len()));
    for _ in 0..terms {
        let lambda = parts[rng.gen_range(0..parts.len())].clone();
        f = f.add(&p_basis(&one_slot(lambda)).scale(&random_coefficient(rng)));
    }
    f
}

/// `1 + Σ_{n=1}^{bound} f_n T^n` with random single-alphabet `f_n`.
pub fn random_series(rng: &mut impl Rng, bound: usize) -> GradedSeries<HomogSymFunc> {
    let mut s = GradedSeries::one(vec![0], Truncation::boxed(vec![bound]));
    for n in 1..=bound {
        if rng.gen_bool(0.85) {
            s.insert(vec![n], random_symfunc(rng, n));
        }
    }
    s
}

pub fn top_degree_routes(rng: &mut impl Rng, count: usize, max_degree: usize) -> Check {
    for i in 0..count {
        let n = rng.gen_range(1..=max_degree);
        let f = random_symfunc(rng, n);
        let a = top_degree_u_limit(&f);
        let b = top_degree_pairing(&f);
        if a != b {
            return Err(format!("sample {i}: {a} vs {b} for {f:?}"));
        }
    }
    Ok(format!("{count} samples"))
}

pub fn log_commutes_with_specialization(rng: &mut impl Rng, count: usize, bound: usize) -> Check {
    let spec = |f: &HomogSymFunc| u_specialize(f).expect("single alphabet");
    for i in 0..count {
        let s = random_series(rng, bound);
        let lhs = s.pleth_log().map_err(|e| e.to_string())?.convert(Vec::new(), spec);
        let rhs = s.convert(Vec::new(), spec).pleth_log().map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("sample {i} differs"));
        }
    }
    Ok(format!("{count} series"))
}

pub fn log_commutes_with_top_degree(rng: &mut impl Rng, count: usize, bound: usize) -> Check {
    for i in 0..count {
        let s = random_series(rng, bound);
        let lhs = s.pleth_log().map_err(|e| e.to_string())?.convert(Vec::new(), top_degree_u_limit);
        let rhs = s
            .convert(Vec::new(), top_degree_u_limit)
            .pleth_log()
            .map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("sample {i} differs"));
        }
    }
    Ok(format!("{count} series"))
}

pub fn exp_log_round_trip(rng: &mut impl Rng, count: usize, bound: usize) -> Check {
    for i in 0..count {
        let s = random_series(rng, bound);
        let back = s
            .pleth_log()
            .and_then(|l| l.pleth_exp())
            .map_err(|e| e.to_string())?;
        if back != s {
            return Err(format!("sample {i} differs"));
        }
    }
    Ok(format!("{count} series"))
}

/// `(q − 1) Log Σ q^{n₁n₂} T₁^{n₁}T₂^{n₂} / ((q)_{n₁}(q)_{n₂}) = −T₁ − T₂ + T₁T₂`.
pub fn pentagon(bound: usize) -> Check {
    let t = Truncation::boxed(vec![bound, bound]);
    let mut s = GradedSeries::zero(Vec::new(), t.clone());
    for v in t.keys() {
        let den = &q_pochhammer(v[0] as u32, false) * &q_pochhammer(v[1] as u32, false);
        let c = RationalFunctionQ::new(LaurentPolyQ::monomial(1, (v[0] * v[1]) as i64), den)
            .expect("non-zero denominator");
        s.insert(v, c);
    }
    let log = s.pleth_log().map_err(|e| e.to_string())?;
    let q_minus_one = &RationalFunctionQ::q() - &rf(1);
    for v in t.keys() {
        let got = &log.coeff_or_zero(&v) * &q_minus_one;
        let expected = match v.as_slice() {
            [1, 0] | [0, 1] => rf(-1),
            [1, 1] => rf(1),
            _ => RationalFunctionQ::zero(),
        };
        if got != expected {
            return Err(format!("coefficient at {v:?} is {got}"));
        }
    }
    Ok(format!("truncation ({bound},{bound})"))
}

pub fn loop_table(m: usize, table: &[&str]) -> Check {
    let p = SymmetricQuiverProblem::with_default_weights(Quiver::loops(m)).map_err(|e| e.to_string())?;
    let dt = dt_via_qseries(&p, &Truncation::boxed(vec![table.len()])).map_err(|e| e.to_string())?;
    for (n, s) in table.iter().enumerate() {
        let expected = LaurentPolyQ::parse_human(s).expect("well-formed table entry");
        let got = dt.get(&vec![n + 1]).cloned().unwrap_or_else(LaurentPolyQ::zero);
        if got != expected {
            return Err(format!("DT_{} = {got}, expected {expected}", n + 1));
        }
    }
    Ok(format!("n <= {}", table.len()))
}

pub fn oracle_corpus() -> Check {
    let corpus = default_corpus();
    for (name, quiver, v, q) in &corpus {
        let r = oracle_check(quiver, v, *q).map_err(|e| e.to_string())?;
        if !r.matches() {
            return Err(format!("{name}: {r}"));
        }
    }
    Ok(format!("{} instances", corpus.len()))
}

pub fn two_routes() -> Check {
    let cases: Vec<(&str, Quiver, Truncation)> = vec![
        ("two loops", Quiver::loops(2), Truncation::boxed(vec![5])),
        ("three loops", Quiver::loops(3), Truncation::boxed(vec![4])),
        ("double A2", Quiver::linear(2).double(), Truncation::new(vec![4, 4], Some(4))),
        ("double Kronecker", Quiver::kronecker(2).double(), Truncation::new(vec![4, 4], Some(4))),
    ];
    for (name, quiver, t) in &cases {
        let p = SymmetricQuiverProblem::with_default_weights(quiver.clone()).map_err(|e| e.to_string())?;
        let a = dt_via_qseries(&p, t).map_err(|e| e.to_string())?;
        let b = dt_table_via_symfunc(&p, t).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("{name}: routes differ"));
        }
    }
    Ok(format!("{} quivers", cases.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_level_passes() {
        let r = run(Level::Fast, DEFAULT_SEED);
        assert!(r.passed(), "{r}");
        assert!(r.to_string().starts_with(&format!("seed={DEFAULT_SEED}")));
    }
}
