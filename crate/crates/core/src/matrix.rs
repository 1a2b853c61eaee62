//! The subset-indexed matrix `M` of the covering-degree argument.
//!
//! Rows and columns are indexed by the subsets of `{1..n}` of size at most
//! `r`, in [`RankOrder`]. Row `A` encodes the relation obtained from the
//! vanishing coefficient sum `alpha_J` with `J` the complement of `A`:
//!
//! * if `|A| < n - r`, `m[A][B] = (-1)^{n-r-|A|} C(n-1-|A|-|B|, r-|B|)` for
//!   `B` disjoint from `A` and zero otherwise;
//! * if `|A| >= n - r` (possible only when `2r >= n`), the row is the unit
//!   vector at `B = complement(A)`.
//!
//! For `2r < n` the matrix is an involution. For `2r >= n` the rows of the
//! second kind form a complement permutation in the bottom-right corner, and
//! the top-left block on sizes below `n - r` is again an involution.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::case;
use crate::error::{Error, Result};
use crate::lattice::{enumerate_up_to_rank, RankOrder, SubsetMask};
use crate::linalg::{bareiss_determinant, row_reduce};
use crate::report::{Detail, Report, Status};
use crate::scalar::{binomial_i64, sign, Integer, Rationals};

/// Largest `n` a matrix may be built for.
pub const MAX_N: usize = 20;

/// Largest dimension stored densely. `(12, 5)` has dimension 1586 and
/// `(10, 10)` has 1024.
pub const MAX_DIM: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixRegime {
    /// `r < n/2`
    Low,
    /// `r >= n/2`
    High,
}

impl MatrixRegime {
    pub fn of(n: usize, r: usize) -> Self {
        if 2 * r < n {
            MatrixRegime::Low
        } else {
            MatrixRegime::High
        }
    }

    fn name(self) -> &'static str {
        match self {
            MatrixRegime::Low => "low (r < n/2)",
            MatrixRegime::High => "high (r >= n/2)",
        }
    }
}

/// How entries are computed. Anything but `Standard` deliberately corrupts
/// the matrix; it exists so harnesses can check that verification notices.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EntryRule {
    #[default]
    Standard,
    /// Negates every entry in the column of the empty set.
    FlipEmptyColumn,
}

fn entry_i64(n: usize, r: usize, a: SubsetMask, b: SubsetMask, rule: EntryRule) -> i64 {
    let (sa, sb) = (a.weight(), b.weight());
    if MatrixRegime::of(n, r) == MatrixRegime::High && sa + r >= n {
        return (b == a.complement(n)) as i64;
    }
    if !a.is_disjoint(b) {
        return 0;
    }
    let value = sign(n as i64 - r as i64 - sa as i64)
        * binomial_i64(n as i64 - 1 - sa as i64 - sb as i64, r as i64 - sb as i64)
            .expect("upper index is nonnegative for |A| < n - r and |B| <= r");
    if rule == EntryRule::FlipEmptyColumn && b == SubsetMask::EMPTY {
        -value
    } else {
        value
    }
}

fn check_params(n: usize, r: usize) -> Result<()> {
    if r > n {
        return Err(Error::RankOutOfRange { r, n });
    }
    if n > MAX_N {
        return Err(Error::DimensionTooLarge { n, max: MAX_N });
    }
    Ok(())
}

/// A single entry `m[A][B]`.
pub fn entry(n: usize, r: usize, a: SubsetMask, b: SubsetMask) -> Result<Integer> {
    check_params(n, r)?;
    for s in [a, b] {
        if !s.fits(n) {
            return Err(Error::MaskOutOfRange { bits: s.bits(), n });
        }
        if s.weight() > r {
            return Err(Error::SubsetTooLarge { size: s.weight(), r });
        }
    }
    Ok(entry_i64(n, r, a, b, EntryRule::Standard).into())
}

/// Dense square matrix over the subsets of size at most `r`.
///
/// Entries are exact integers; they are stored as `i64` because the
/// dimension guard keeps every binomial far below `2^63`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetMatrix {
    n: usize,
    r: usize,
    order: RankOrder,
    entries: Vec<i64>,
}

pub fn build(n: usize, r: usize) -> Result<SubsetMatrix> {
    build_with_rule(n, r, EntryRule::Standard)
}

#[doc(hidden)]
pub fn build_with_rule(n: usize, r: usize, rule: EntryRule) -> Result<SubsetMatrix> {
    check_params(n, r)?;
    let order = enumerate_up_to_rank(n, r)?;
    let dim = order.len();
    if dim > MAX_DIM {
        return Err(Error::DimensionTooLarge { n: dim, max: MAX_DIM });
    }
    let masks = order.masks();
    let entries: Vec<i64> = masks
        .par_iter()
        .flat_map_iter(|&a| masks.iter().map(move |&b| entry_i64(n, r, a, b, rule)))
        .collect();
    Ok(SubsetMatrix {
        n,
        r,
        order,
        entries,
    })
}

impl SubsetMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn regime(&self) -> MatrixRegime {
        MatrixRegime::of(self.n, self.r)
    }

    pub fn order(&self) -> &RankOrder {
        &self.order
    }

    pub fn dim(&self) -> usize {
        self.order.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim() + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        let d = self.dim();
        &self.entries[i * d..(i + 1) * d]
    }

    /// Index of the first row whose subset has size `>= n - r`; rows before
    /// it carry the binomial formula.
    pub fn formula_rows(&self) -> usize {
        match self.regime() {
            MatrixRegime::Low => self.dim(),
            MatrixRegime::High => self.order.count_below_size(self.n - self.r),
        }
    }

    /// Debug dump: a `n=<N> r=<R> dim=<D>` header, then one line of `D`
    /// integers per row in canonical order.
    pub fn dump(&self) -> String {
        let mut out = format!("n={} r={} dim={}\n", self.n, self.r, self.dim());
        for i in 0..self.dim() {
            let line: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    fn sparse_rows(&self, cols: usize) -> Vec<Vec<(usize, i64)>> {
        (0..self.dim())
            .map(|i| {
                self.row(i)[..cols]
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(j, &v)| (j, v))
                    .collect()
            })
            .collect()
    }

    /// First cell (row-major) where the square of the leading `k x k` block
    /// differs from the identity, with its value.
    fn square_defect(&self, k: usize) -> Option<(usize, usize, i128)> {
        let rows = self.sparse_rows(k);
        (0..k)
            .into_par_iter()
            .map(|i| {
                let mut acc = vec![0i128; k];
                for &(mid, x) in &rows[i] {
                    if mid >= k {
                        continue;
                    }
                    for &(j, y) in &rows[mid] {
                        acc[j] += x as i128 * y as i128;
                    }
                }
                acc.iter()
                    .enumerate()
                    .find(|&(j, &v)| v != (i == j) as i128)
                    .map(|(j, &v)| (i, j, v))
            })
            .find_first(|found| found.is_some())
            .flatten()
    }

    fn to_integer_rows(&self) -> Vec<Vec<Integer>> {
        (0..self.dim())
            .map(|i| self.row(i).iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> Integer {
        // Reversing both rows and columns leaves the determinant unchanged and
        // puts the unit rows of the high regime first, where they eliminate
        // without fill.
        let d = self.dim();
        let reversed: Vec<Vec<Integer>> = (0..d)
            .rev()
            .map(|i| (0..d).rev().map(|j| BigInt::from(self.get(i, j))).collect())
            .collect();
        bareiss_determinant(&reversed)
    }
}

/// Checks `M * M = I` exactly in the low regime.
pub fn verify_involution(n: usize, r: usize) -> Result<Report> {
    verify_involution_with_rule(n, r, EntryRule::Standard)
}

#[doc(hidden)]
pub fn verify_involution_with_rule(n: usize, r: usize, rule: EntryRule) -> Result<Report> {
    check_params(n, r)?;
    if MatrixRegime::of(n, r) != MatrixRegime::Low {
        return Err(Error::WrongRegime {
            n,
            r,
            expected: MatrixRegime::Low.name(),
        });
    }
    let m = build_with_rule(n, r, rule)?;
    let mut report = Report::new("verify-involution").param("n", n).param("r", r);
    let cell = case! {"n" => n, "r" => r, "dim" => m.dim()};
    let detail = match m.square_defect(m.dim()) {
        None => Detail::new(cell, Status::Pass, "M*M = I", "M*M = I"),
        Some((i, j, v)) => Detail::new(
            cell,
            Status::Fail,
            format!("{}", (i == j) as i64),
            v,
        )
        .note(format!(
            "first defect at (A, B) = ({}, {})",
            m.order.get(i),
            m.order.get(j)
        )),
    };
    report.push(detail);
    Ok(report)
}

/// Checks the block structure of the high regime: the top-left block is an
/// involution, the block below it is zero, the bottom-right block is the
/// complement permutation, and the whole matrix is nonsingular.
pub fn verify_high_regime(n: usize, r: usize) -> Result<Report> {
    check_params(n, r)?;
    if MatrixRegime::of(n, r) != MatrixRegime::High {
        return Err(Error::WrongRegime {
            n,
            r,
            expected: MatrixRegime::High.name(),
        });
    }
    let m = build(n, r)?;
    let d = m.dim();
    let k = m.formula_rows();
    let mut report = Report::new("verify-high-regime").param("n", n).param("r", r);
    let base = |check: &str| case! {"n" => n, "r" => r, "check" => check};

    report.push(match m.square_defect(k) {
        None => Detail::new(base("top-left involution"), Status::Pass, "M0*M0 = I", "M0*M0 = I"),
        Some((i, j, v)) => Detail::new(base("top-left involution"), Status::Fail, (i == j) as i64, v)
            .note(format!("first defect at ({}, {})", m.order.get(i), m.order.get(j))),
    }
    .note(format!("block size {k}")));

    let nonzero_below = (k..d).flat_map(|i| (0..k).map(move |j| (i, j))).find(|&(i, j)| m.get(i, j) != 0);
    report.push(match nonzero_below {
        None => Detail::new(base("zero block"), Status::Pass, "0", "0"),
        Some((i, j)) => Detail::new(base("zero block"), Status::Fail, 0, m.get(i, j))
            .note(format!("at ({}, {})", m.order.get(i), m.order.get(j))),
    });

    // Each bottom row is the unit vector at the complement of its subset,
    // which lies inside the bottom-right block; complement is an involution.
    let bad_row = (k..d).find(|&i| {
        let target = m.order.get(i).complement(n);
        let Some(tj) = m.order.position(target) else { return true };
        tj < k
            || m.order.get(tj).complement(n) != m.order.get(i)
            || (k..d).any(|j| m.get(i, j) != (j == tj) as i64)
    });
    report.push(match bad_row {
        None => Detail::new(base("complement permutation"), Status::Pass, "permutation", "permutation"),
        Some(i) => Detail::new(base("complement permutation"), Status::Fail, "permutation", "not a permutation")
            .note(format!("row {}", m.order.get(i))),
    });

    let det = m.determinant();
    let full_square_is_identity = m.square_defect(d).is_none();
    let status = if det == BigInt::from(0) { Status::Fail } else { Status::Pass };
    report.push(
        Detail::new(base("nonsingular"), status, "det != 0", format!("det = {det}")).note(format!(
            "measured, not asserted: full M*M = I is {full_square_is_identity}"
        )),
    );
    Ok(report)
}

/// Basis of the rational nullspace of `m`; empty iff `m` is nonsingular.
pub fn solve_homogeneous(m: &SubsetMatrix) -> Vec<Vec<BigRational>> {
    let rows: Vec<Vec<BigRational>> = (0..m.dim())
        .map(|i| m.row(i).iter().map(|&v| BigRational::from_integer(v.into())).collect())
        .collect();
    row_reduce(&Rationals, m.dim(), rows).nullspace(&Rationals)
}

#[doc(hidden)]
pub fn integer_rows(m: &SubsetMatrix) -> Vec<Vec<Integer>> {
    m.to_integer_rows()
}
