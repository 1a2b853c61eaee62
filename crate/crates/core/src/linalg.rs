//! Exact elimination: sparse Gauss–Jordan over any [`Field`] and a
//! fraction-free (Bareiss) determinant over the integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::{Field, Integer};

type SparseRow<E> = Vec<(usize, E)>;

/// Result of Gauss–Jordan elimination: every pivot row is normalized to 1 at
/// its pivot column and is zero in every other pivot column.
#[derive(Debug, Clone)]
pub struct RowReduction<E> {
    cols: usize,
    rows: Vec<SparseRow<E>>,
    // (pivot column, row holding it), in the order pivots were chosen
    pivots: Vec<(usize, usize)>,
}

impl<E: Clone> RowReduction<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = self.pivots.iter().map(|&(c, _)| c).collect();
        cols.sort_unstable();
        cols
    }

    /// One basis vector per free column, in increasing column order: 1 at the
    /// free column, minus the reduced row entries at the pivot columns.
    pub fn nullspace<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let mut is_pivot = vec![false; self.cols];
        for &(c, _) in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![field.zero(); self.cols];
                v[free] = field.one();
                for &(pc, row) in &self.pivots {
                    if let Some(x) = lookup(&self.rows[row], free) {
                        v[pc] = field.neg(x);
                    }
                }
                v
            })
            .collect()
    }
}

fn lookup<E>(row: &SparseRow<E>, col: usize) -> Option<&E> {
    row.binary_search_by_key(&col, |&(c, _)| c)
        .ok()
        .map(|i| &row[i].1)
}

fn to_sparse<F: Field>(field: &F, dense: Vec<F::Elem>) -> SparseRow<F::Elem> {
    dense
        .into_iter()
        .enumerate()
        .filter(|(_, x)| !field.is_zero(x))
        .collect()
}

// row - coef * pivot, merging two sorted sparse rows.
fn axpy<F: Field>(
    field: &F,
    row: &SparseRow<F::Elem>,
    coef: &F::Elem,
    pivot: &SparseRow<F::Elem>,
) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, field.neg(&field.mul(coef, &pivot[j].1))));
            j += 1;
        } else {
            let v = field.sub(&row[i].1, &field.mul(coef, &pivot[j].1));
            if !field.is_zero(&v) {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Gauss–Jordan elimination visiting columns in natural order.
pub fn row_reduce<F: Field>(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> RowReduction<F::Elem> {
    let order: Vec<usize> = (0..cols).collect();
    row_reduce_ordered(field, cols, rows, &order)
}

/// Gauss–Jordan elimination visiting columns in `column_order`.
///
/// Rows with a single nonzero entry are used as pivots first, since they
/// clear their column without fill. Remaining columns take the sparsest
/// candidate row as pivot. The rank and the row space do not depend on
/// either choice.
pub fn row_reduce_ordered<F: Field>(
    field: &F,
    cols: usize,
    rows: Vec<Vec<F::Elem>>,
    column_order: &[usize],
) -> RowReduction<F::Elem> {
    let mut rows: Vec<SparseRow<F::Elem>> = rows
        .into_iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged matrix");
            to_sparse(field, r)
        })
        .collect();
    let mut used_row = vec![false; rows.len()];
    let mut used_col = vec![false; cols];
    let mut pivots = Vec::new();

    let eliminate = |rows: &mut Vec<SparseRow<F::Elem>>, p: usize, c: usize| {
        let inv = field.inv(lookup(&rows[p], c).expect("pivot entry")).expect("nonzero pivot");
        for e in rows[p].iter_mut() {
            e.1 = field.mul(&e.1, &inv);
        }
        let pivot = std::mem::take(&mut rows[p]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i == p {
                continue;
            }
            if let Some(coef) = lookup(row, c).cloned() {
                *row = axpy(field, row, &coef, &pivot);
            }
        }
        rows[p] = pivot;
    };

    // Singleton rows, repeated until none are left.
    loop {
        let next = (0..rows.len())
            .find(|&i| !used_row[i] && rows[i].len() == 1 && !used_col[rows[i][0].0]);
        let Some(p) = next else { break };
        let c = rows[p][0].0;
        eliminate(&mut rows, p, c);
        used_row[p] = true;
        used_col[c] = true;
        pivots.push((c, p));
    }

    for &c in column_order {
        if used_col[c] {
            continue;
        }
        let pivot = (0..rows.len())
            .filter(|&i| !used_row[i] && lookup(&rows[i], c).is_some())
            .min_by_key(|&i| (rows[i].len(), i));
        let Some(p) = pivot else { continue };
        eliminate(&mut rows, p, c);
        used_row[p] = true;
        used_col[c] = true;
        pivots.push((c, p));
    }

    RowReduction { cols, rows, pivots }
}

/// Rank by eliminating rows of `m`.
pub fn rank_by_rows<F: Field>(field: &F, cols: usize, m: &[Vec<F::Elem>]) -> usize {
    row_reduce(field, cols, m.to_vec()).rank()
}

/// Rank by eliminating the columns of `m` (rows of the transpose).
pub fn rank_by_columns<F: Field>(field: &F, cols: usize, m: &[Vec<F::Elem>]) -> usize {
    let transpose: Vec<Vec<F::Elem>> = (0..cols)
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect();
    row_reduce(field, m.len(), transpose).rank()
}

/// Determinant of a square integer matrix by Bareiss elimination.
///
/// Every intermediate entry is a minor of the input, so all divisions are
/// exact. Rows whose update is the identity are skipped, which keeps
/// permutation-like blocks cheap.
pub fn bareiss_determinant(matrix: &[Vec<Integer>]) -> Integer {
    let d = matrix.len();
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    assert!(a.iter().all(|r| r.len() == d), "matrix must be square");
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..d {
        let Some(p) = (k..d).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot = &pivot_row[k];
        let unit_scale = *pivot == prev;
        let support: Vec<usize> = (k + 1..d).filter(|&j| !pivot_row[j].is_zero()).collect();
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            if lead.is_zero() {
                if !unit_scale {
                    for x in row[k + 1..].iter_mut() {
                        if !x.is_zero() {
                            *x = &*x * pivot / &prev;
                        }
                    }
                }
                continue;
            }
            if unit_scale {
                for &j in &support {
                    row[j] -= &lead * &pivot_row[j] / &prev;
                }
            } else {
                for j in k + 1..d {
                    row[j] = (pivot * &row[j] - &lead * &pivot_row[j]) / &prev;
                }
            }
        }
        prev = a[k][k].clone();
    }
    if d == 0 {
        return BigInt::one();
    }
    if negate {
        -prev
    } else {
        prev
    }
}
