//! Brute-force certification of the covering-degree bound.
//!
//! A polynomial of degree at most `d` that vanishes on every vertex of
//! weight `> r` is a vector in the nullspace of the constraint matrix whose
//! rows are those vertices and whose columns are the monomials of degree
//! `<= d` (entry 1 iff the monomial's support lies inside the vertex). The
//! minimal degree of a polynomial that is in addition nonzero on every
//! vertex of weight `<= r` is found by walking `d` upwards:
//!
//! * if some light vertex `v` evaluates to zero on the whole nullspace,
//!   `v` blocks degree `d` and is recorded as a certificate;
//! * otherwise a deterministic combination of basis vectors is nonzero on
//!   every light vertex and is returned as the witness.
//!
//! The lower bound is certified within the chosen field only. The bound
//! itself holds over every field.

use rayon::prelude::*;

use crate::case;
use crate::error::{Error, Result};
use crate::lattice::{enumerate_up_to_rank, LatticeTable, RankOrder, SubsetMask};
use crate::linalg::{rank_by_columns, rank_by_rows, row_reduce_ordered};
use crate::poly::{construct_extremal, evaluate, Degree, MultilinearPoly};
use crate::report::{Detail, Report, Status};
use crate::scalar::{Field, FieldKind, Rationals, Scalar};

/// Largest dimension the oracle accepts.
pub const MAX_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverInstance {
    n: usize,
    r: usize,
    field: FieldKind,
}

impl CoverInstance {
    pub fn new(n: usize, r: usize, field: FieldKind) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::DimensionTooLarge { n, max: MAX_N });
        }
        if r > n {
            return Err(Error::RankOutOfRange { r, n });
        }
        Ok(Self { n, r, field })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    /// Vertices of weight `<= r`, in mask order.
    pub fn light_vertices(&self) -> Vec<SubsetMask> {
        self.vertices(|w| w <= self.r)
    }

    /// Vertices of weight `> r`, in mask order.
    pub fn heavy_vertices(&self) -> Vec<SubsetMask> {
        self.vertices(|w| w > self.r)
    }

    fn vertices(&self, keep: impl Fn(usize) -> bool) -> Vec<SubsetMask> {
        (0..1u32 << self.n)
            .map(SubsetMask::from_bits)
            .filter(|v| keep(v.weight()))
            .collect()
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.n {
            return Err(Error::InvalidParams(format!("degree {d} exceeds n = {}", self.n)));
        }
        Ok(())
    }
}

/// Rows are heavy vertices, columns the monomials of degree `<= d` in
/// [`RankOrder`].
pub fn constraint_matrix(inst: &CoverInstance, d: usize) -> Result<(RankOrder, Vec<Vec<Scalar>>)> {
    inst.check_degree(d)?;
    let (order, rows) = constraint_rows(&inst.field, inst, d);
    Ok((order, rows))
}

fn constraint_rows<F: Field>(field: &F, inst: &CoverInstance, d: usize) -> (RankOrder, Vec<Vec<F::Elem>>) {
    let order = enumerate_up_to_rank(inst.n, d).expect("d <= n <= MAX_N");
    let rows = inst
        .heavy_vertices()
        .into_iter()
        .map(|v| {
            order
                .masks()
                .iter()
                .map(|m| if m.is_subset_of(v) { field.one() } else { field.zero() })
                .collect()
        })
        .collect();
    (order, rows)
}

// Nullspace basis as coefficient vectors over `order`. Columns are
// eliminated from the highest degree down.
fn nullspace_vectors<F: Field>(field: &F, inst: &CoverInstance, d: usize) -> (RankOrder, Vec<Vec<F::Elem>>) {
    let (order, rows) = constraint_rows(field, inst, d);
    let cols = order.len();
    let column_order: Vec<usize> = (0..cols).rev().collect();
    let reduced = row_reduce_ordered(field, cols, rows, &column_order);
    (order, reduced.nullspace(field))
}

fn to_poly<F: Field>(field: &F, n: usize, order: &RankOrder, coeffs: &[F::Elem]) -> MultilinearPoly {
    MultilinearPoly::from_terms(
        n,
        field.kind(),
        order
            .masks()
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(&m, c)| (m, field.to_scalar(c))),
    )
    .expect("masks fit and scalars belong to the field")
}

/// Basis of the multilinear polynomials of degree `<= d` that vanish on every
/// vertex of weight `> r`.
pub fn vanishing_nullspace(inst: &CoverInstance, d: usize) -> Result<Vec<MultilinearPoly>> {
    inst.check_degree(d)?;
    Ok(match inst.field {
        FieldKind::Rational => basis_polys(&Rationals, inst, d),
        FieldKind::Prime(p) => basis_polys(&p, inst, d),
    })
}

fn basis_polys<F: Field>(field: &F, inst: &CoverInstance, d: usize) -> Vec<MultilinearPoly> {
    let (order, basis) = nullspace_vectors(field, inst, d);
    basis.iter().map(|h| to_poly(field, inst.n, &order, h)).collect()
}

/// Nullspace dimension at degree `d` together with the constraint rank
/// computed by row and by column elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankCheck {
    pub monomials: usize,
    pub rank_by_rows: usize,
    pub rank_by_columns: usize,
    pub nullspace_dim: usize,
}

impl RankCheck {
    pub fn consistent(&self) -> bool {
        self.rank_by_rows == self.rank_by_columns
            && self.nullspace_dim + self.rank_by_rows == self.monomials
    }
}

pub fn rank_check(inst: &CoverInstance, d: usize) -> Result<RankCheck> {
    inst.check_degree(d)?;
    fn run<F: Field>(field: &F, inst: &CoverInstance, d: usize) -> RankCheck {
        let (order, rows) = constraint_rows(field, inst, d);
        let cols = order.len();
        RankCheck {
            monomials: cols,
            rank_by_rows: rank_by_rows(field, cols, &rows),
            rank_by_columns: rank_by_columns(field, cols, &rows),
            nullspace_dim: nullspace_vectors(field, inst, d).1.len(),
        }
    }
    Ok(match inst.field {
        FieldKind::Rational => run(&Rationals, inst, d),
        FieldKind::Prime(p) => run(&p, inst, d),
    })
}

/// Why no witness could be assembled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessFailure {
    /// Every basis element vanishes at this vertex.
    Blocked(SubsetMask),
    /// No multiplier in the field keeps the earlier vertices nonzero. Cannot
    /// happen when the field has more elements than there are vertices.
    FieldExhausted(SubsetMask),
}

// Combines basis vectors into one that is nonzero at every vertex.
// `evals[k][i]` is basis element `k` at vertex `i`. Returns the multiplier of
// each basis element, or the index of the failing vertex.
//
// Vertices are secured in order. When the running combination `g` vanishes
// at vertex `i`, the first `h` with `h(i) != 0` is added as `g + λh`, scanning
// `λ = 1, 2, ...`; each earlier vertex rules out at most one `λ`.
fn combine<F: Field>(field: &F, evals: &[Vec<F::Elem>], vertices: usize) -> std::result::Result<Vec<F::Elem>, (bool, usize)> {
    let p = field.kind().characteristic();
    let mut weights = vec![field.zero(); evals.len()];
    let mut g = vec![field.zero(); vertices];
    for i in 0..vertices {
        if !field.is_zero(&g[i]) {
            continue;
        }
        let Some(k) = (0..evals.len()).find(|&k| !field.is_zero(&evals[k][i])) else {
            return Err((true, i));
        };
        let h = &evals[k];
        let mut lambda = 1u64;
        let chosen = loop {
            if p != 0 && lambda >= p {
                return Err((false, i));
            }
            let l = field.from_i64(lambda as i64);
            if (0..i).all(|u| !field.is_zero(&field.add(&g[u], &field.mul(&l, &h[u])))) {
                break l;
            }
            lambda += 1;
        };
        for (gu, hu) in g.iter_mut().zip(h) {
            *gu = field.add(gu, &field.mul(&chosen, hu));
        }
        weights[k] = field.add(&weights[k], &chosen);
    }
    Ok(weights)
}

/// A combination of `basis` that is nonzero at every vertex in `vertices`.
///
/// The scan is deterministic, so the same input always yields the same
/// polynomial.
pub fn witness_from_nullspace(
    n: usize,
    field: FieldKind,
    basis: &[MultilinearPoly],
    vertices: &[SubsetMask],
) -> std::result::Result<MultilinearPoly, WitnessFailure> {
    let evals: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|h| vertices.iter().map(|&v| evaluate(h, v).expect("vertex fits")).collect())
        .collect();
    let weights = combine(&field, &evals, vertices.len()).map_err(|(blocked, i)| {
        if blocked {
            WitnessFailure::Blocked(vertices[i])
        } else {
            WitnessFailure::FieldExhausted(vertices[i])
        }
    })?;
    let mut out = MultilinearPoly::zero(n, field).expect("n fits");
    for (h, w) in basis.iter().zip(&weights) {
        out = out.add(&h.scale(w)).expect("same field and dimension");
    }
    Ok(out)
}

/// A light vertex on which the whole degree-`degree` nullspace vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blocker {
    pub degree: usize,
    pub vertex: SubsetMask,
    pub basis: Vec<MultilinearPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCertificate {
    pub instance: CoverInstance,
    pub d_min: usize,
    pub witness: MultilinearPoly,
    /// One entry per degree below `d_min`, in increasing degree.
    pub blockers: Vec<Blocker>,
}

impl DegreeCertificate {
    /// Re-checks every claim from scratch: the witness pattern pointwise,
    /// and for each blocker that its basis spans the vanishing space at that
    /// degree and vanishes at the blocking vertex.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let inst = &self.instance;
        if self.witness.degree() > Degree::Finite(self.d_min) {
            return Err(format!("witness degree {} exceeds {}", self.witness.degree(), self.d_min));
        }
        for v in (0..1u32 << inst.n).map(SubsetMask::from_bits) {
            let value = evaluate(&self.witness, v).map_err(|e| e.to_string())?;
            if value.is_zero() != (v.weight() > inst.r) {
                return Err(format!("witness has the wrong pattern at {v}: value {value}"));
            }
        }
        if self.blockers.len() != self.d_min {
            return Err(format!("{} blockers for d_min = {}", self.blockers.len(), self.d_min));
        }
        for (d, b) in self.blockers.iter().enumerate() {
            if b.degree != d || b.vertex.weight() > inst.r || !b.vertex.fits(inst.n) {
                return Err(format!("blocker at degree {} is malformed", b.degree));
            }
            let ranks = rank_check(inst, d).map_err(|e| e.to_string())?;
            if !ranks.consistent() || ranks.nullspace_dim != b.basis.len() {
                return Err(format!("blocker basis at degree {d} has the wrong dimension"));
            }
            if basis_rank(inst, d, &b.basis) != b.basis.len() {
                return Err(format!("blocker basis at degree {d} is dependent"));
            }
            for h in &b.basis {
                if h.degree() > Degree::Finite(d) {
                    return Err(format!("basis element of degree {} at degree {d}", h.degree()));
                }
                for v in inst.heavy_vertices() {
                    if !evaluate(h, v).map_err(|e| e.to_string())?.is_zero() {
                        return Err(format!("basis element at degree {d} is nonzero at heavy {v}"));
                    }
                }
                if !evaluate(h, b.vertex).map_err(|e| e.to_string())?.is_zero() {
                    return Err(format!("basis element at degree {d} is nonzero at {}", b.vertex));
                }
            }
        }
        Ok(())
    }

    /// The certificate in text: the witness polynomial followed by one
    /// comment line per blocker.
    pub fn render(&self) -> String {
        let mut out = format!("# d_min = {}\n", self.d_min);
        for b in &self.blockers {
            out.push_str(&format!(
                "# degree {} blocked at {} (nullspace dimension {})\n",
                b.degree,
                b.vertex,
                b.basis.len()
            ));
        }
        out.push_str(&self.witness.to_string());
        out
    }
}

fn basis_rank(inst: &CoverInstance, d: usize, basis: &[MultilinearPoly]) -> usize {
    let order = enumerate_up_to_rank(inst.n, d).expect("d <= n");
    let rows: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|h| order.masks().iter().map(|&m| h.coefficient(m)).collect())
        .collect();
    rank_by_rows(&inst.field, order.len(), &rows)
}

/// Smallest `d` admitting a polynomial of degree `<= d` that is zero on every
/// vertex of weight `> r` and nonzero on every vertex of weight `<= r`.
///
/// Requires a field with more elements than there are light vertices, so the
/// witness scan cannot run out of multipliers.
pub fn min_cover_degree(inst: &CoverInstance) -> Result<DegreeCertificate> {
    let light = inst.light_vertices();
    let p = inst.field.characteristic();
    if p != 0 && p <= light.len() as u64 {
        return Err(Error::FieldTooSmall {
            characteristic: p,
            required: light.len() as u64,
        });
    }
    match inst.field {
        FieldKind::Rational => certify(&Rationals, inst, &light),
        FieldKind::Prime(f) => certify(&f, inst, &light),
    }
}

fn certify<F: Field>(field: &F, inst: &CoverInstance, light: &[SubsetMask]) -> Result<DegreeCertificate> {
    let mut blockers = Vec::new();
    for d in 0..=inst.n {
        let (order, basis) = nullspace_vectors(field, inst, d);
        let evals: Vec<Vec<F::Elem>> = basis
            .iter()
            .map(|h| {
                light
                    .iter()
                    .map(|&v| {
                        order
                            .masks()
                            .iter()
                            .zip(h)
                            .filter(|(m, _)| m.is_subset_of(v))
                            .fold(field.zero(), |acc, (_, c)| field.add(&acc, c))
                    })
                    .collect()
            })
            .collect();
        match combine(field, &evals, light.len()) {
            Ok(weights) => {
                let mut coeffs = vec![field.zero(); order.len()];
                for (h, w) in basis.iter().zip(&weights) {
                    for (c, x) in coeffs.iter_mut().zip(h) {
                        *c = field.add(c, &field.mul(w, x));
                    }
                }
                return Ok(DegreeCertificate {
                    instance: *inst,
                    d_min: d,
                    witness: to_poly(field, inst.n, &order, &coeffs),
                    blockers,
                });
            }
            Err((true, i)) => blockers.push(Blocker {
                degree: d,
                vertex: light[i],
                basis: basis.iter().map(|h| to_poly(field, inst.n, &order, h)).collect(),
            }),
            Err((false, i)) => {
                return Err(Error::FieldTooSmall {
                    characteristic: field.kind().characteristic(),
                    required: i as u64 + 1,
                })
            }
        }
    }
    unreachable!("at degree n the indicator of the light vertices is a witness")
}

/// Interpolates the extremal weight profile and checks that it is a covering
/// polynomial of degree exactly `n - r`.
fn extremal_cross_check(n: usize, r: usize, field: FieldKind) -> Detail {
    let cell = case! {"n" => n, "r" => r, "check" => "extremal"};
    let profile = match construct_extremal(n, r, field) {
        Ok(p) => p,
        Err(e) => return Detail::new(cell, Status::Fail, "profile", e),
    };
    let table = LatticeTable::from_fn(n, field, |v| profile.evaluate(v).clone()).expect("n fits");
    let f = MultilinearPoly::interpolate(&table);
    let degree = f.degree();
    let expected = Degree::Finite(n - r);
    let ok = profile.has_covering_pattern() && degree == expected;
    Detail::new(cell, if ok { Status::Pass } else { Status::Fail }, expected, degree)
}

/// Certifies `d_min = n - r` for every `1 <= n <= n_max` and `0 <= r <= n`,
/// and cross-checks the extremal construction as an upper-bound witness.
pub fn verify_theorem(n_max: usize, field: FieldKind) -> Result<Report> {
    if n_max > MAX_N {
        return Err(Error::DimensionTooLarge { n: n_max, max: MAX_N });
    }
    let p = field.characteristic();
    if p != 0 && p <= 1u64 << n_max {
        return Err(Error::FieldTooSmall {
            characteristic: p,
            required: 1u64 << n_max,
        });
    }
    let instances: Vec<(usize, usize)> = (1..=n_max).flat_map(|n| (0..=n).map(move |r| (n, r))).collect();
    let details: Vec<Vec<Detail>> = instances
        .par_iter()
        .map(|&(n, r)| {
            let cell = case! {"n" => n, "r" => r, "check" => "d_min"};
            let inst = CoverInstance::new(n, r, field).expect("n <= MAX_N");
            let main = match min_cover_degree(&inst) {
                Err(e) => Detail::new(cell, Status::Fail, n - r, e),
                Ok(cert) => {
                    let verified = cert.verify();
                    let status = if cert.d_min == n - r && verified.is_ok() {
                        Status::Pass
                    } else {
                        Status::Fail
                    };
                    let mut d = Detail::new(cell, status, n - r, cert.d_min);
                    if status == Status::Fail {
                        d = d.certificate(cert.render());
                        if let Err(why) = verified {
                            d = d.note(why);
                        }
                    }
                    d
                }
            };
            vec![main, extremal_cross_check(n, r, field)]
        })
        .collect();
    let mut report = Report::new("min-degree")
        .param("n_max", n_max)
        .param("field", field)
        .param("instances", instances.len());
    report.extend(details.into_iter().flatten());
    Ok(report)
}

/// Report for a single instance.
pub fn min_degree_report(inst: &CoverInstance) -> Result<(Report, DegreeCertificate)> {
    let cert = min_cover_degree(inst)?;
    let (n, r) = (inst.n, inst.r);
    let mut report = Report::new("min-degree")
        .param("n", n)
        .param("r", r)
        .param("field", inst.field);
    let verified = cert.verify();
    let status = if cert.d_min == n - r && verified.is_ok() {
        Status::Pass
    } else {
        Status::Fail
    };
    let mut detail = Detail::new(case! {"n" => n, "r" => r}, status, n - r, cert.d_min)
        .certificate(cert.render())
        .note("lower bound certified within this field");
    if let Err(why) = verified {
        detail = detail.note(why);
    }
    report.push(detail);
    Ok((report, cert))
}
