//! The acceptance suite as a library call: nine criteria, one report detail
//! each. Randomized criteria draw from fixed seeds, so the report is the same
//! on every run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::case;
use crate::lattice::{mobius_transform, zeta_transform, zeta_transform_with, mobius_transform_with, LatticeTable, TransformMode};
use crate::matrix::{self, EntryRule, MatrixRegime};
use crate::oracle::{self, CoverInstance};
use crate::poly::{check_double_star_relation, construct_extremal, MultilinearPoly};
use crate::report::{Detail, Report, Status};
use crate::scalar::{FieldKind, Scalar};
use crate::sums;

/// The default prime for finite-field checks.
pub const DEFAULT_PRIME: u64 = 10007;

/// Deliberate corruptions, used to confirm the suite notices them.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Flips the sign of the matrix column indexed by the empty set.
    EntrySign,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SelftestConfig {
    /// Smaller ranges, for smoke testing.
    pub quick: bool,
    #[doc(hidden)]
    pub fault: Option<Fault>,
}

/// Number of criteria.
pub const CRITERIA: usize = 9;

/// Short name of criterion `k` (1-based).
pub fn criterion_name(k: usize) -> &'static str {
    match k {
        1 => "involution",
        2 => "high-regime structure",
        3 => "sum identities",
        4 => "recurrence certificates",
        5 => "alternating sum",
        6 => "minimal covering degree",
        7 => "extremal construction",
        8 => "transform consistency",
        9 => "coefficient relation",
        _ => panic!("there are {CRITERIA} criteria"),
    }
}

/// Runs every criterion in order.
pub fn run(config: SelftestConfig) -> Report {
    let mut report = Report::new("selftest").param("quick", config.quick);
    for k in 1..=CRITERIA {
        report.push(run_criterion(k, config));
    }
    report
}

/// Runs criterion `k` (1-based) and summarizes it as one detail.
pub fn run_criterion(k: usize, config: SelftestConfig) -> Detail {
    let q = config.quick;
    let outcome = match k {
        1 => involution(if q { 8 } else { 10 }, !q, config.fault),
        2 => high_regime(if q { 8 } else { 10 }),
        3 => from_report(sums::verify_sums(if q { 10 } else { 14 })),
        4 => from_report(sums::verify_recurrences(if q { 10 } else { 14 })),
        5 => from_report(sums::verify_alt_sum(if q { 12 } else { 20 })),
        6 => covering_degree(if q { 5 } else { 8 }),
        7 => extremal(if q { 10 } else { 16 }),
        8 => transforms(if q { 8 } else { 10 }, if q { 12 } else { 16 }),
        9 => coefficient_relation(if q { 6 } else { 10 }, if q { 20 } else { 100 }),
        _ => panic!("there are {CRITERIA} criteria"),
    };
    let (status, summary) = outcome;
    Detail::new(
        case! {"criterion" => k, "name" => criterion_name(k)},
        status,
        "pass",
        status,
    )
    .note(summary)
}

type Outcome = (Status, String);

fn judge(failures: Vec<String>, checked: usize, what: &str) -> Outcome {
    match failures.first() {
        None => (Status::Pass, format!("{checked} {what}")),
        Some(first) => (
            Status::Fail,
            format!("{} of {checked} {what} failed; first: {first}", failures.len()),
        ),
    }
}

fn from_report(report: crate::error::Result<Report>) -> Outcome {
    match report {
        Err(e) => (Status::Fail, e.to_string()),
        Ok(r) => {
            let summary = r
                .details
                .iter()
                .filter(|d| d.status == Status::Pass)
                .map(|d| {
                    d.case
                        .iter()
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join("; ");
            let status = if r.status == Status::Fail { Status::Fail } else { Status::Pass };
            match r.failures().next() {
                None => (status, summary),
                Some(d) => (status, format!("{}: expected {}, got {}", describe(d), d.expected, d.got)),
            }
        }
    }
}

fn describe(d: &Detail) -> String {
    d.case
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn involution(n_max: usize, spot: bool, fault: Option<Fault>) -> Outcome {
    let rule = match fault {
        Some(Fault::EntrySign) => EntryRule::FlipEmptyColumn,
        None => EntryRule::Standard,
    };
    let mut cases: Vec<(usize, usize)> = (2..=n_max)
        .flat_map(|n| (0..n).filter(move |r| 2 * r < n).map(move |r| (n, r)))
        .collect();
    if spot {
        cases.push((12, 5));
    }
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|&(n, r)| match matrix::verify_involution_with_rule(n, r, rule) {
            Err(e) => Some(format!("(n, r) = ({n}, {r}): {e}")),
            Ok(rep) if rep.status == Status::Fail => Some(format!(
                "(n, r) = ({n}, {r}): {}",
                rep.details[0].note.clone().unwrap_or_default()
            )),
            Ok(_) => None,
        })
        .collect();
    judge(failures, cases.len(), "matrices squared to the identity")
}

fn high_regime(n_max: usize) -> Outcome {
    let cases: Vec<(usize, usize)> = (2..=n_max)
        .flat_map(|n| (0..=n).filter(move |&r| MatrixRegime::of(n, r) == MatrixRegime::High).map(move |r| (n, r)))
        .collect();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|&(n, r)| match matrix::verify_high_regime(n, r) {
            Err(e) => Some(format!("(n, r) = ({n}, {r}): {e}")),
            Ok(rep) => rep
                .failures()
                .next()
                .map(|d| format!("(n, r) = ({n}, {r}): {} got {}", describe(d), d.got)),
        })
        .collect();
    judge(failures, cases.len(), "block structures with nonzero determinant")
}

fn covering_degree(n_max: usize) -> Outcome {
    let field = FieldKind::prime(DEFAULT_PRIME).expect("prime");
    match oracle::verify_theorem(n_max, field) {
        Err(e) => (Status::Fail, e.to_string()),
        Ok(r) => {
            let failures: Vec<String> = r
                .failures()
                .map(|d| format!("{}: expected {}, got {}", describe(d), d.expected, d.got))
                .collect();
            let instances = r.params["instances"].parse().unwrap_or(0);
            judge(failures, instances, "instances with d_min = n - r, certified")
        }
    }
}

fn extremal(n_max: usize) -> Outcome {
    let fields = [FieldKind::Rational, FieldKind::prime(DEFAULT_PRIME).expect("prime")];
    let mut failures = Vec::new();
    let mut checked = 0;
    for field in fields {
        for n in 0..=n_max {
            for r in 0..=n {
                checked += 1;
                match construct_extremal(n, r, field) {
                    Ok(p) if p.has_covering_pattern() => {}
                    Ok(_) => failures.push(format!("n={n} r={r} field={field}: wrong pattern")),
                    Err(e) => failures.push(format!("n={n} r={r} field={field}: {e}")),
                }
            }
        }
    }
    judge(failures, checked, "weight profiles with the covering pattern")
}

fn random_scalar(rng: &mut ChaCha8Rng, field: FieldKind) -> Scalar {
    match field {
        FieldKind::Rational => {
            let num: i64 = rng.gen_range(-50..=50);
            let den: i64 = rng.gen_range(1..=12);
            field
                .from_fraction(&num.into(), &den.into())
                .expect("nonzero denominator")
        }
        FieldKind::Prime(p) => field.from_i64(rng.gen_range(0..p.modulus() as i64)),
    }
}

fn random_table(rng: &mut ChaCha8Rng, n: usize, field: FieldKind) -> LatticeTable {
    LatticeTable::from_fn(n, field, |_| random_scalar(rng, field)).expect("n fits")
}

fn transforms(n_naive: usize, n_round_trip: usize) -> Outcome {
    let fields = [FieldKind::Rational, FieldKind::prime(DEFAULT_PRIME).expect("prime")];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 0..=n_naive {
        for i in 0..20 {
            let field = fields[i % 2];
            let t = random_table(&mut rng, n, field);
            checked += 1;
            if zeta_transform_with(&t, TransformMode::Fast) != zeta_transform_with(&t, TransformMode::Naive) {
                failures.push(format!("zeta n={n} sample={i} field={field}"));
            }
            if mobius_transform_with(&t, TransformMode::Fast) != mobius_transform_with(&t, TransformMode::Naive) {
                failures.push(format!("mobius n={n} sample={i} field={field}"));
            }
        }
    }
    for n in 0..=n_round_trip {
        for field in fields {
            let t = random_table(&mut rng, n, field);
            checked += 1;
            if mobius_transform(&zeta_transform(&t)) != t || zeta_transform(&mobius_transform(&t)) != t {
                failures.push(format!("round trip n={n} field={field}"));
            }
        }
    }
    judge(failures, checked, "random tables")
}

fn coefficient_relation(n_max: usize, samples: usize) -> Outcome {
    let field = FieldKind::prime(DEFAULT_PRIME).expect("prime");
    let cases: Vec<(usize, usize)> = (2..=n_max).flat_map(|n| (1..n).map(move |r| (n, r))).collect();
    let failures: Vec<String> = cases
        .par_iter()
        .flat_map_iter(|&(n, r)| {
            let mut rng = ChaCha8Rng::seed_from_u64(((n as u64) << 32) | r as u64);
            let inst = CoverInstance::new(n, r, field).expect("n <= 12");
            let basis = match oracle::vanishing_nullspace(&inst, n) {
                Ok(b) => b,
                Err(e) => return vec![format!("n={n} r={r}: {e}")],
            };
            (0..samples)
                .filter_map(|i| {
                    let mut f = MultilinearPoly::zero(n, field).expect("n fits");
                    for h in &basis {
                        f = f.add(&h.scale(&random_scalar(&mut rng, field))).expect("same field");
                    }
                    match check_double_star_relation(&f, r) {
                        Ok(rep) if rep.status == Status::Pass => None,
                        Ok(rep) => Some(format!(
                            "n={n} r={r} sample={i}: {}",
                            rep.details[0].note.clone().unwrap_or_default()
                        )),
                        Err(e) => Some(format!("n={n} r={r} sample={i}: {e}")),
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    judge(failures, cases.len() * samples, "sampled vanishing polynomials")
}
