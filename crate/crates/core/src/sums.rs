//! The two hypergeometric sums behind the involution, their three-term
//! recurrences in `r`, and the alternating binomial sum used when solving
//! for the coefficients `alpha_J`.
//!
//! Both sums are claimed for `r < n/2`: `S1(r) = 1` and `S2(r) = 0`. They are
//! evaluated anywhere on request, but results outside that range are
//! reported as exploratory.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::case;
use crate::error::{Error, Result};
use crate::report::{Detail, Report, Status};
use crate::scalar::{binomial, sign, Integer};

// C(m, k) with the counting convention: zero when k < 0, k > m, or m < 0.
// Inside the claimed range every upper index is nonnegative.
fn choose(m: i64, k: i64) -> Integer {
    if m < 0 || k < 0 || k > m {
        Integer::zero()
    } else {
        binomial(m, k).expect("nonnegative upper index")
    }
}

fn in_claim_domain(n: usize, r: usize) -> bool {
    2 * r < n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct S1Params {
    n: usize,
    a: usize,
    r: usize,
}

impl S1Params {
    pub fn new(n: usize, a: usize, r: usize) -> Result<Self> {
        if a > r {
            return Err(Error::InvalidParams(format!("S1 needs a <= r, got a={a} r={r}")));
        }
        if r > n {
            return Err(Error::RankOutOfRange { r, n });
        }
        Ok(Self { n, a, r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `m = n - a`
    pub fn m(&self) -> usize {
        self.n - self.a
    }

    pub fn in_domain(&self) -> bool {
        in_claim_domain(self.n, self.r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct S2Params {
    n: usize,
    a: usize,
    b: usize,
    w: usize,
    r: usize,
}

impl S2Params {
    /// `a = |A|`, `b = |B|`, `w = |A ∩ B|`, with `A != B`.
    pub fn new(n: usize, a: usize, b: usize, w: usize, r: usize) -> Result<Self> {
        if a > r || b > r {
            return Err(Error::InvalidParams(format!(
                "S2 needs a, b <= r, got a={a} b={b} r={r}"
            )));
        }
        if r > n {
            return Err(Error::RankOutOfRange { r, n });
        }
        if w > a.min(b) {
            return Err(Error::InvalidParams(format!("S2 needs w <= min(a, b), got w={w}")));
        }
        if a == b && b == w {
            return Err(Error::InvalidParams(format!(
                "(a, b, w) = ({a}, {b}, {w}) forces A = B"
            )));
        }
        if a + b - w > n {
            return Err(Error::InvalidParams(format!("|A ∪ B| = {} exceeds n = {n}", a + b - w)));
        }
        Ok(Self { n, a, b, w, r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `m = n - |A ∪ B| = n - a - b + w`
    pub fn m(&self) -> usize {
        self.n + self.w - self.a - self.b
    }

    pub fn in_domain(&self) -> bool {
        in_claim_domain(self.n, self.r)
    }
}

/// Which sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SumId {
    S1,
    S2,
}

impl SumId {
    /// The value the sum takes for `r < n/2`.
    pub fn claimed_value(self) -> i64 {
        match self {
            SumId::S1 => 1,
            SumId::S2 => 0,
        }
    }
}

impl std::fmt::Display for SumId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SumId::S1 => "S1",
            SumId::S2 => "S2",
        })
    }
}

/// A sum with every parameter fixed except `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumShape {
    S1 { n: usize, a: usize },
    S2 { n: usize, a: usize, b: usize, w: usize },
}

impl SumShape {
    pub fn s1(n: usize, a: usize) -> Result<Self> {
        if a > n {
            return Err(Error::InvalidParams(format!("a={a} exceeds n={n}")));
        }
        Ok(SumShape::S1 { n, a })
    }

    pub fn s2(n: usize, a: usize, b: usize, w: usize) -> Result<Self> {
        if a.max(b) > n {
            return Err(Error::InvalidParams(format!("a={a}, b={b} exceed n={n}")));
        }
        S2Params::new(n, a, b, w, a.max(b))?;
        Ok(SumShape::S2 { n, a, b, w })
    }

    pub fn id(&self) -> SumId {
        match self {
            SumShape::S1 { .. } => SumId::S1,
            SumShape::S2 { .. } => SumId::S2,
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            SumShape::S1 { n, .. } | SumShape::S2 { n, .. } => n,
        }
    }

    /// Smallest `r` at which the sum's parameters are valid.
    pub fn min_r(&self) -> usize {
        match *self {
            SumShape::S1 { a, .. } => a,
            SumShape::S2 { a, b, .. } => a.max(b),
        }
    }

    /// Evaluates the displayed sum at any `r`; below [`min_r`](Self::min_r)
    /// the last binomial vanishes and the sum is zero.
    pub fn eval(&self, r: usize) -> Integer {
        match *self {
            SumShape::S1 { n, a } => raw_sum(n, a, a, n - a, r),
            SumShape::S2 { n, a, b, w } => raw_sum(n, a, b, n + w - a - b, r),
        }
    }

    fn case(&self) -> std::collections::BTreeMap<String, String> {
        match *self {
            SumShape::S1 { n, a } => case! {"sum" => "S1", "n" => n, "a" => a},
            SumShape::S2 { n, a, b, w } => {
                case! {"sum" => "S2", "n" => n, "a" => a, "b" => b, "w" => w}
            }
        }
    }
}

// sum_{u=0}^{r} (-1)^{u+a} C(m, u) C(n-1-a-u, r-u) C(n-1-b-u, r-b)
// S1 is the case b = a, m = n - a.
fn raw_sum(n: usize, a: usize, b: usize, m: usize, r: usize) -> Integer {
    let (n, a, b, m, r) = (n as i64, a as i64, b as i64, m as i64, r as i64);
    (0..=r).fold(Integer::zero(), |acc, u| {
        let term = choose(m, u) * choose(n - 1 - a - u, r - u) * choose(n - 1 - b - u, r - b);
        if sign(u + a) > 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

pub fn s1(p: S1Params) -> Integer {
    raw_sum(p.n, p.a, p.a, p.m(), p.r)
}

pub fn s2(p: S2Params) -> Integer {
    raw_sum(p.n, p.a, p.b, p.m(), p.r)
}

/// Direct value and closed form of `sum_{u=t}^{r*} (-1)^{s-u} C(s-t, u-t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingSum {
    pub direct: Integer,
    pub closed_form: Integer,
}

impl AlternatingSum {
    pub fn agrees(&self) -> bool {
        self.direct == self.closed_form
    }
}

/// Requires `t <= r_star <= s`. The closed form is 1 when `t = s = r*`, 0
/// when `t < s = r*`, and `(-1)^{s-r*} C(s-1-t, r*-t)` when `r* < s`.
pub fn partial_alternating_sum(s: usize, t: usize, r_star: usize) -> Result<AlternatingSum> {
    if !(t <= r_star && r_star <= s) {
        return Err(Error::InvalidParams(format!(
            "need t <= r* <= s, got t={t} r*={r_star} s={s}"
        )));
    }
    let (s, t, rs) = (s as i64, t as i64, r_star as i64);
    let direct = (t..=rs).fold(Integer::zero(), |acc, u| {
        acc + choose(s - t, u - t) * sign(s - u)
    });
    let closed_form = if rs == s {
        if t == s {
            Integer::one()
        } else {
            Integer::zero()
        }
    } else {
        choose(s - 1 - t, rs - t) * sign(s - rs)
    };
    Ok(AlternatingSum { direct, closed_form })
}

/// The coefficients `c0, c1, c2` of the recurrence
/// `c0 S(r) + c1 S(r+1) + c2 S(r+2) = 0`, transcribed factor by factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecurrenceCertificate {
    pub id: SumId,
}

impl RecurrenceCertificate {
    pub fn for_sum(id: SumId) -> Self {
        Self { id }
    }

    /// S1 coefficients in `(a, m, r)`.
    pub fn s1_coefficients(a: i128, m: i128, r: i128) -> [i128; 3] {
        let c0 = -(a - r - 1) * (m - r - 1) * (a + m - 2 * r - 4) * (a + m - r - 1);
        let c1 = (a + m - 2 * r - 3)
            * (a * a * m - a * a * r - a * a + a * m * m - 2 * a * m * r - 2 * a * m + a * r * r
                + a * r
                - a
                - m * m * r
                - m * m
                + m * r * r
                + m * r
                - m
                + 2 * r * r
                + 6 * r
                + 4);
        let c2 = -(r + 2) * (a - r - 2) * (m - r - 2) * (a + m - 2 * r - 2);
        [c0, c1, c2]
    }

    /// S2 coefficients in `(a, b, m, r, w)`.
    pub fn s2_coefficients(a: i128, b: i128, m: i128, r: i128, w: i128) -> [i128; 3] {
        let c0 = -(a - r - 1)
            * (b + m - r - w - 1)
            * (a + b + m - 2 * r - w - 4)
            * (a + b + m - r - w - 1);
        let p = a * a * b - a * a * r - a * a * w - 2 * a * a + a * b * b + a * b * m
            - 2 * a * b * r
            - 3 * a * b * w
            - 4 * a * b
            - 2 * a * m * w
            - a * m
            + a * r * r
            + 4 * a * r * w
            + 5 * a * r
            + 2 * a * w * w
            + 7 * a * w
            + 5 * a
            - b * b * r
            - b * b * w
            - 2 * b * b
            - 2 * b * m * w
            - b * m
            + b * r * r
            + 4 * b * r * w
            + 5 * b * r
            + 2 * b * w * w
            + 7 * b * w
            + 5 * b
            + m * m * r
            - m * m * w
            + m * m
            - m * r * r
            + 2 * m * r * w
            - m * r
            + 2 * m * w * w
            + 4 * m * w
            + m
            - 3 * r * r * w
            - 2 * r * r
            - 3 * r * w * w
            - 11 * r * w
            - 6 * r
            - w * w * w
            - 5 * w * w
            - 9 * w
            - 4;
        let c1 = -(a + b + m - 2 * r - w - 3) * p;
        let c2 = (r + 2) * (b - r - 2) * (-a - m + r + w + 2) * (a + b + m - 2 * r - w - 2);
        [c0, c1, c2]
    }

    /// Coefficients at a given shape and `r`.
    pub fn coefficients(shape: &SumShape, r: usize) -> [Integer; 3] {
        let r = r as i128;
        let cs = match *shape {
            SumShape::S1 { n, a } => Self::s1_coefficients(a as i128, (n - a) as i128, r),
            SumShape::S2 { n, a, b, w } => Self::s2_coefficients(
                a as i128,
                b as i128,
                (n + w - a - b) as i128,
                r,
                w as i128,
            ),
        };
        cs.map(BigInt::from)
    }
}

/// `c0 S(r) + c1 S(r+1) + c2 S(r+2)` with `S` summed directly. Requires
/// `r + 2 < n/2`.
pub fn recurrence_residual(shape: &SumShape, r: usize) -> Result<Integer> {
    let n = shape.n();
    if !in_claim_domain(n, r + 2) {
        return Err(Error::Domain(format!(
            "recurrence residual needs r + 2 < n/2, got n={n} r={r}"
        )));
    }
    let [c0, c1, c2] = RecurrenceCertificate::coefficients(shape, r);
    Ok(c0 * shape.eval(r) + c1 * shape.eval(r + 1) + c2 * shape.eval(r + 2))
}

/// Replays the induction: starting from the two smallest valid `r`, each
/// further value is propagated through the recurrence and compared with the
/// direct sum and with the claimed value.
///
/// The sums are only defined for `r >= max(a, b)` (they vanish below), so
/// the base cases sit at `r0 = max(a, b)` and `r0 + 1`. When `r0 > r_max`
/// there is nothing to replay and the report passes with a note.
pub fn replay_induction(shape: &SumShape, r_max: usize) -> Result<Report> {
    let n = shape.n();
    if !in_claim_domain(n, r_max) {
        return Err(Error::Domain(format!(
            "induction replay needs r_max < n/2, got n={n} r_max={r_max}"
        )));
    }
    let id = shape.id();
    let claim = BigInt::from(id.claimed_value());
    let mut report = Report::new("replay-induction").param("sum", id).param("r_max", r_max);
    for (k, v) in shape.case() {
        report.params.insert(k, v);
    }
    let r0 = shape.min_r();
    if r0 > r_max {
        report.push(
            Detail::new(shape.case(), Status::Pass, "vacuous", "vacuous")
                .note(format!("smallest valid r is {r0}, beyond r_max")),
        );
        return Ok(report);
    }

    let mut propagated: Vec<Integer> = Vec::new();
    for r in r0..=r_max.min(r0 + 1) {
        let direct = shape.eval(r);
        let mut cell = shape.case();
        cell.insert("r".into(), r.to_string());
        cell.insert("step".into(), "base".into());
        report.push(Detail::compare(cell, &claim, &direct));
        propagated.push(direct);
    }

    for r in r0..r_max.saturating_sub(1) {
        let mut cell = shape.case();
        cell.insert("r".into(), (r + 2).to_string());
        cell.insert("step".into(), "propagate".into());
        let [c0, c1, c2] = RecurrenceCertificate::coefficients(shape, r);
        if c2.is_zero() {
            report.push(
                Detail::new(cell, Status::Fail, "c2 != 0", "c2 = 0")
                    .note("leading coefficient vanishes; induction cannot proceed"),
            );
            return Ok(report);
        }
        let i = r - r0;
        let numerator = -(&c0 * &propagated[i] + &c1 * &propagated[i + 1]);
        let (value, remainder) = numerator.div_rem(&c2);
        if !remainder.is_zero() {
            report.push(
                Detail::new(cell, Status::Fail, "integer", format!("{numerator}/{c2}"))
                    .note("propagated value is not an integer"),
            );
            return Ok(report);
        }
        let direct = shape.eval(r + 2);
        let status = if value == direct && value == claim {
            Status::Pass
        } else {
            Status::Fail
        };
        report.push(
            Detail::new(cell, status, &claim, &value)
                .certificate(format!("c0={} c1={} c2={}", c0, c1, c2))
                .note(format!("direct sum {direct}")),
        );
        propagated.push(value);
    }
    Ok(report)
}

/// Sweeps S1 and S2 over every valid tuple with `2 <= n <= n_max` and
/// `r < n/2`. Only mismatches get their own detail; one summary line per
/// sum records how many tuples were checked.
pub fn verify_sums(n_max: usize) -> Result<Report> {
    if n_max < 2 {
        return Err(Error::InvalidParams(format!("n_max must be at least 2, got {n_max}")));
    }
    let mut report = Report::new("verify-sums").param("n_max", n_max);
    let mut s1_checked = 0u64;
    let mut s2_checked = 0u64;
    for n in 2..=n_max {
        for r in 0..=(n - 1) / 2 {
            for a in 0..=r {
                let v = s1(S1Params::new(n, a, r)?);
                s1_checked += 1;
                if v != BigInt::one() {
                    report.push(Detail::compare(case! {"sum" => "S1", "n" => n, "a" => a, "r" => r}, 1, v));
                }
                for b in 0..=r {
                    for w in 0..=a.min(b) {
                        if a == b && b == w {
                            continue;
                        }
                        let v = s2(S2Params::new(n, a, b, w, r)?);
                        s2_checked += 1;
                        if !v.is_zero() {
                            report.push(Detail::compare(
                                case! {"sum" => "S2", "n" => n, "a" => a, "b" => b, "w" => w, "r" => r},
                                0,
                                v,
                            ));
                        }
                    }
                }
            }
        }
    }
    let s1_failed = report.details.iter().filter(|d| d.case["sum"] == "S1").count();
    let s2_failed = report.details.len() - s1_failed;
    report.push(
        Detail::compare(case! {"sum" => "S1", "tuples" => s1_checked}, 0, s1_failed)
            .note("number of tuples with S1 != 1"),
    );
    report.push(
        Detail::compare(case! {"sum" => "S2", "tuples" => s2_checked}, 0, s2_failed)
            .note("number of tuples with S2 != 0"),
    );
    Ok(report)
}

/// Every shape `(n, a)` and `(n, a, b, w)` with `n <= n_max` whose smallest
/// valid `r` lies below `n/2`, in canonical order.
pub fn shapes_up_to(n_max: usize) -> Vec<SumShape> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        let top = (n - 1) / 2;
        for a in 0..=top {
            out.push(SumShape::S1 { n, a });
        }
        for a in 0..=top {
            for b in 0..=top {
                for w in 0..=a.min(b) {
                    if !(a == b && b == w) {
                        out.push(SumShape::S2 { n, a, b, w });
                    }
                }
            }
        }
    }
    out
}

/// Residuals at every in-range point and induction replays for every shape
/// with `n <= n_max`.
pub fn verify_recurrences(n_max: usize) -> Result<Report> {
    if n_max < 2 {
        return Err(Error::InvalidParams(format!("n_max must be at least 2, got {n_max}")));
    }
    use rayon::prelude::*;
    let shapes = shapes_up_to(n_max);
    let per_shape: Vec<Vec<Detail>> = shapes
        .par_iter()
        .map(|shape| {
            let n = shape.n();
            let mut details = Vec::new();
            let mut r = 0;
            while in_claim_domain(n, r + 2) {
                let residual = recurrence_residual(shape, r).expect("r is in range");
                let [_, _, c2] = RecurrenceCertificate::coefficients(shape, r);
                let mut cell = shape.case();
                cell.insert("r".into(), r.to_string());
                if !residual.is_zero() {
                    cell.insert("check".into(), "residual".into());
                    details.push(Detail::compare(cell, 0, residual));
                } else if r >= shape.min_r() && c2.is_zero() {
                    cell.insert("check".into(), "leading coefficient".into());
                    details.push(Detail::new(cell, Status::Fail, "c2 != 0", "c2 = 0"));
                }
                r += 1;
            }
            let replay = replay_induction(shape, (n - 1) / 2).expect("r_max is in range");
            details.extend(replay.failures().cloned());
            details
        })
        .collect();
    let mut report = Report::new("verify-recurrences").param("n_max", n_max);
    let failures: Vec<Detail> = per_shape.into_iter().flatten().collect();
    let failed = failures.len();
    report.extend(failures);
    report.push(
        Detail::compare(case! {"shapes" => shapes.len()}, 0, failed)
            .note("failing residuals, leading coefficients, and replay steps"),
    );
    Ok(report)
}

/// Checks the closed form for every `0 <= t <= r* <= s <= s_max`.
pub fn verify_alt_sum(s_max: usize) -> Result<Report> {
    let mut report = Report::new("verify-alt-sum").param("s_max", s_max);
    let mut checked = 0u64;
    for s in 0..=s_max {
        for r_star in 0..=s {
            for t in 0..=r_star {
                let sum = partial_alternating_sum(s, t, r_star)?;
                checked += 1;
                if !sum.agrees() {
                    report.push(Detail::compare(
                        case! {"s" => s, "t" => t, "r_star" => r_star},
                        &sum.closed_form,
                        &sum.direct,
                    ));
                }
            }
        }
    }
    let failed = report.details.len();
    report.push(Detail::compare(case! {"triples" => checked}, 0, failed).note("mismatching triples"));
    Ok(report)
}

/// Evaluates a sum outside the claimed range; always exploratory.
pub fn explore(shape: &SumShape, r: usize) -> Detail {
    let mut cell = shape.case();
    cell.insert("r".into(), r.to_string());
    let v = shape.eval(r);
    let status = if in_claim_domain(shape.n(), r) && r >= shape.min_r() {
        if v == BigInt::from(shape.id().claimed_value()) {
            Status::Pass
        } else {
            Status::Fail
        }
    } else {
        Status::Exploratory
    };
    Detail::new(cell, status, shape.id().claimed_value(), v)
}
