//! Multilinear polynomials on the Boolean cube.
//!
//! On `{0,1}^n` we have `x^k = x`, so every polynomial agrees on the cube with
//! a unique multilinear one of no larger degree. Only the multilinear form is
//! stored. The coefficient sum `alpha_J` of all terms containing exactly the
//! variables in `J` is then simply the coefficient of `prod_{j in J} x_j`,
//! and the degree condition `alpha_J = 0 for |J| >= n - r` is a statement
//! about the support.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::{self, LatticeTable, SubsetMask, MAX_DIM};
use crate::report::{Detail, Report, Status};
use crate::scalar::{binomial, sign, FieldKind, Scalar};

/// Degree of a polynomial. The zero polynomial sorts below every
/// finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    Zero,
    Finite(usize),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Zero => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearPoly {
    n: usize,
    field: FieldKind,
    coeffs: BTreeMap<SubsetMask, Scalar>,
}

impl MultilinearPoly {
    pub fn zero(n: usize, field: FieldKind) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::DimensionTooLarge { n, max: MAX_DIM });
        }
        Ok(Self {
            n,
            field,
            coeffs: BTreeMap::new(),
        })
    }

    /// The constant polynomial `c`.
    pub fn constant(n: usize, c: Scalar) -> Result<Self> {
        let field = c.field();
        Self::from_terms(n, field, [(SubsetMask::EMPTY, c)])
    }

    /// Sums the given terms; repeated masks accumulate.
    pub fn from_terms(
        n: usize,
        field: FieldKind,
        terms: impl IntoIterator<Item = (SubsetMask, Scalar)>,
    ) -> Result<Self> {
        let mut p = Self::zero(n, field)?;
        for (mask, c) in terms {
            p.add_term(mask, c)?;
        }
        Ok(p)
    }

    /// Coefficients read off a table indexed by monomial support.
    pub fn from_coefficient_table(table: &LatticeTable) -> Self {
        let coeffs = table
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(m, v)| (m, v.clone()))
            .collect();
        Self {
            n: table.n(),
            field: table.field(),
            coeffs,
        }
    }

    /// The multilinear interpolant of a table of cube values.
    pub fn interpolate(values: &LatticeTable) -> Self {
        Self::from_coefficient_table(&lattice::mobius_transform(values))
    }

    pub fn add_term(&mut self, mask: SubsetMask, c: Scalar) -> Result<()> {
        if !mask.fits(self.n) {
            return Err(Error::MaskOutOfRange {
                bits: mask.bits(),
                n: self.n,
            });
        }
        if !self.field.contains(&c) {
            return Err(Error::FieldMismatch {
                expected: self.field,
                found: c.field(),
            });
        }
        let sum = match self.coeffs.get(&mask) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.coeffs.remove(&mask);
        } else {
            self.coeffs.insert(mask, sum);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, mask: SubsetMask) -> Scalar {
        self.coeffs
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Nonzero terms in increasing mask order.
    pub fn terms(&self) -> impl Iterator<Item = (SubsetMask, &Scalar)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    pub fn degree(&self) -> Degree {
        self.coeffs
            .keys()
            .map(|m| m.weight())
            .max()
            .map_or(Degree::Zero, Degree::Finite)
    }

    pub fn coefficient_table(&self) -> LatticeTable {
        let mut values = vec![self.field.zero(); 1 << self.n];
        for (m, c) in &self.coeffs {
            values[m.index()] = c.clone();
        }
        LatticeTable::new(self.n, self.field, values).expect("valid by construction")
    }

    pub fn scale(&self, c: &Scalar) -> MultilinearPoly {
        let terms = self.coeffs.iter().map(|(m, v)| (*m, v * c));
        Self::from_terms(self.n, self.field, terms).expect("same field")
    }

    pub fn add(&self, other: &MultilinearPoly) -> Result<MultilinearPoly> {
        if other.field != self.field {
            return Err(Error::FieldMismatch {
                expected: self.field,
                found: other.field,
            });
        }
        if other.n != self.n {
            return Err(Error::InvalidParams(format!(
                "dimension mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        let mut sum = self.clone();
        for (m, c) in other.terms() {
            sum.add_term(m, c.clone())?;
        }
        Ok(sum)
    }
}

/// `f(v)`: the sum of the coefficients whose support lies inside `v`.
pub fn evaluate(f: &MultilinearPoly, v: SubsetMask) -> Result<Scalar> {
    if !v.fits(f.n) {
        return Err(Error::MaskOutOfRange {
            bits: v.bits(),
            n: f.n,
        });
    }
    Ok(f.terms()
        .filter(|(m, _)| m.is_subset_of(v))
        .fold(f.field.zero(), |acc, (_, c)| &acc + c))
}

/// `f` at every vertex of the cube, by one zeta transform.
pub fn eval_table(f: &MultilinearPoly) -> LatticeTable {
    lattice::zeta_transform(&f.coefficient_table())
}

/// The coefficient sums `alpha_J`, recovered from the cube values by Möbius
/// inversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaTable(pub LatticeTable);

impl AlphaTable {
    pub fn get(&self, j: SubsetMask) -> &Scalar {
        self.0.get(j)
    }

    pub fn table(&self) -> &LatticeTable {
        &self.0
    }
}

pub fn alpha_of(f: &MultilinearPoly) -> AlphaTable {
    AlphaTable(lattice::mobius_transform(&eval_table(f)))
}

fn case(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn check_r(f: &MultilinearPoly, r: usize) -> Result<()> {
    if r > f.n {
        return Err(Error::RankOutOfRange { r, n: f.n });
    }
    Ok(())
}

/// Checks `alpha_J = 0` for every `|J| >= n - r`. A violation is reported
/// with the first offending `J` in mask order.
pub fn check_star(f: &MultilinearPoly, r: usize) -> Result<Report> {
    check_r(f, r)?;
    let alpha = alpha_of(f);
    let bound = f.n - r;
    let mut report = Report::new("check-star")
        .param("n", f.n)
        .param("r", r)
        .param("field", f.field);
    let violation = alpha
        .0
        .iter()
        .find(|(j, a)| j.weight() >= bound && !a.is_zero());
    let detail = match violation {
        None => Detail::new(
            case(&[("support", format!("|J| >= {bound}"))]),
            Status::Pass,
            "0",
            "0",
        ),
        Some((j, a)) => Detail::new(
            case(&[("J", j.to_string())]),
            Status::Fail,
            "0",
            a.to_string(),
        )
        .note(format!("alpha_J nonzero with |J| = {} >= {bound}", j.weight())),
    };
    report.push(detail);
    Ok(report)
}

/// For `f` vanishing on every vertex of weight `> r`, checks
///
/// `alpha_J = (-1)^{s-r} sum_{t=0}^{r} C(s-1-t, r-t) sum_{B ⊆ J, |B| = t} alpha_B`
///
/// for every `J` with `s = |J| > r`. A nonzero value at a heavy vertex is
/// reported as a precondition failure, distinct from a relation failure.
pub fn check_double_star_relation(f: &MultilinearPoly, r: usize) -> Result<Report> {
    check_r(f, r)?;
    let n = f.n;
    let field = f.field;
    let mut report = Report::new("check-double-star")
        .param("n", n)
        .param("r", r)
        .param("field", field);

    let values = eval_table(f);
    if let Some((v, val)) = values.iter().find(|(v, x)| v.weight() > r && !x.is_zero()) {
        report.push(
            Detail::new(case(&[("vertex", v.to_string())]), Status::Fail, "0", val.to_string())
                .note("precondition: f must vanish on every vertex of weight > r"),
        );
        return Ok(report);
    }

    let alpha = lattice::mobius_transform(&values);
    // graded[t][J] = sum of alpha_B over B ⊆ J with |B| = t
    let graded: Vec<LatticeTable> = (0..=r)
        .map(|t| lattice::zeta_transform(&alpha.restrict_to_weight(t)))
        .collect();
    let coefficient = |s: usize, t: usize| -> Scalar {
        let c = binomial(s as i64 - 1 - t as i64, (r - t) as i64).expect("s > r >= t");
        field.from_integer(&c)
    };

    let mut checked = 0usize;
    for (j, lhs) in alpha.iter() {
        let s = j.weight();
        if s <= r {
            continue;
        }
        let sum = (0..=r).fold(field.zero(), |acc, t| {
            &acc + &(&coefficient(s, t) * graded[t].get(j))
        });
        let rhs = if sign(s as i64 - r as i64) < 0 { -sum } else { sum };
        checked += 1;
        if *lhs != rhs {
            report.push(
                Detail::new(case(&[("J", j.to_string())]), Status::Fail, rhs.to_string(), lhs.to_string())
                    .note("relation violated"),
            );
            return Ok(report);
        }
    }
    report.push(Detail::new(
        case(&[("relations", checked.to_string())]),
        Status::Pass,
        "all hold",
        "all hold",
    ));
    Ok(report)
}

/// Values of `prod_{s=r+1}^{n} (w - s)` at each weight `w = 0..n`, i.e. the
/// symmetric polynomial `prod (x_1 + ... + x_n - s)` on the cube.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightProfile {
    n: usize,
    r: usize,
    field: FieldKind,
    values: Vec<Scalar>,
}

impl WeightProfile {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn at_weight(&self, w: usize) -> &Scalar {
        &self.values[w]
    }

    /// Number of linear factors, `n - r`.
    pub fn degree(&self) -> usize {
        self.n - self.r
    }

    /// Zero exactly on weights `r+1..=n`.
    pub fn has_covering_pattern(&self) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(w, v)| v.is_zero() == (w > self.r))
    }

    /// The profile's value at vertex `v`.
    pub fn evaluate(&self, v: SubsetMask) -> &Scalar {
        &self.values[v.weight()]
    }
}

/// The extremal covering polynomial, valid over the rationals or over `F_p`
/// with `p > n`.
pub fn construct_extremal(n: usize, r: usize, field: FieldKind) -> Result<WeightProfile> {
    if r > n {
        return Err(Error::RankOutOfRange { r, n });
    }
    let p = field.characteristic();
    if p != 0 && p <= n as u64 {
        return Err(Error::FieldTooSmall {
            characteristic: p,
            required: n as u64,
        });
    }
    let values = (0..=n)
        .map(|w| {
            (r + 1..=n).fold(field.one(), |acc, s| {
                &acc * &field.from_i64(w as i64 - s as i64)
            })
        })
        .collect();
    Ok(WeightProfile { n, r, field, values })
}

impl fmt::Display for MultilinearPoly {
    /// The text format: a header line, then one `<coefficient> <mask-hex>`
    /// line per nonzero term in increasing mask order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={} field={}", self.n, self.field)?;
        for (m, c) in self.terms() {
            writeln!(f, "{c} {:x}", m.bits())?;
        }
        Ok(())
    }
}

impl FromStr for MultilinearPoly {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or_else(|| err(1, "missing header".into()))?;
        let mut n = None;
        let mut field = None;
        for token in header.split_whitespace() {
            match token.split_once('=') {
                Some(("n", v)) => {
                    n = Some(v.parse::<usize>().map_err(|_| err(hline, format!("bad n `{v}`")))?)
                }
                Some(("field", v)) => {
                    field = Some(v.parse::<FieldKind>().map_err(|e| err(hline, e.to_string()))?)
                }
                _ => return Err(err(hline, format!("unexpected header token `{token}`"))),
            }
        }
        let n = n.ok_or_else(|| err(hline, "header lacks n=".into()))?;
        let field = field.ok_or_else(|| err(hline, "header lacks field=".into()))?;
        let mut poly = Self::zero(n, field).map_err(|e| err(hline, e.to_string()))?;

        for (line, content) in lines {
            let mut parts = content.split_whitespace();
            let (Some(coeff), Some(mask), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err(line, "expected `<coefficient> <mask-hex>`".into()));
            };
            let c = field.parse_scalar(coeff).map_err(|e| match e {
                Error::Parse { message, .. } => err(line, message),
                other => err(line, other.to_string()),
            })?;
            let hex = mask.trim_start_matches("0x");
            let bits = u32::from_str_radix(hex, 16)
                .map_err(|_| err(line, format!("invalid mask `{mask}`")))?;
            let mask = SubsetMask::new(bits, n).map_err(|e| err(line, e.to_string()))?;
            poly.add_term(mask, c).map_err(|e| err(line, e.to_string()))?;
        }
        Ok(poly)
    }
}
