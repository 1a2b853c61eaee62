//! Subsets of `{1..n}` as bit masks, rank-ordered enumeration, and the zeta
//! and Möbius transforms over the Boolean lattice.
//!
//! A [`SubsetMask`] doubles as a cube vertex: bit `i` set means element
//! `i + 1` is in the subset, i.e. coordinate `x_{i+1} = 1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldKind, Scalar};

/// Largest dimension a [`LatticeTable`] may have.
pub const MAX_DIM: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// Checked constructor: `bits` must fit in `n` bits.
    pub fn new(bits: u32, n: usize) -> Result<Self> {
        if n > MAX_DIM || (n < 32 && bits >> n != 0) {
            return Err(Error::MaskOutOfRange { bits, n });
        }
        Ok(SubsetMask(bits))
    }

    pub const fn from_bits(bits: u32) -> Self {
        SubsetMask(bits)
    }

    /// Builds a mask from 1-based elements.
    pub fn from_elements(elements: &[usize]) -> Self {
        SubsetMask(elements.iter().fold(0, |acc, &e| acc | 1 << (e - 1)))
    }

    /// `{1..n}`.
    pub fn full(n: usize) -> Self {
        SubsetMask(((1u64 << n) - 1) as u32)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    /// Number of elements, equivalently the Hamming weight of the vertex.
    pub const fn weight(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: SubsetMask) -> bool {
        self.0 & other.0 == 0
    }

    pub const fn union(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | other.0)
    }

    pub const fn intersection(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & other.0)
    }

    pub fn complement(self, n: usize) -> SubsetMask {
        SubsetMask(!self.0 & Self::full(n).0)
    }

    pub fn fits(self, n: usize) -> bool {
        self.is_subset_of(Self::full(n))
    }

    /// 1-based elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1).map(|i| i + 1)
    }

    /// All subsets of `self`, in decreasing numeric order ending with the
    /// empty set.
    pub fn subsets(self) -> impl Iterator<Item = SubsetMask> {
        let full = self.0;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let current = next?;
            next = (current != 0).then(|| (current - 1) & full);
            Some(SubsetMask(current))
        })
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Masks of popcount `k` below `2^n`, in increasing numeric order.
pub fn masks_of_weight(n: usize, k: usize) -> impl Iterator<Item = SubsetMask> {
    let limit = 1u64 << n;
    let mut next = if k > n { None } else { Some((1u64 << k) - 1) };
    std::iter::from_fn(move || {
        let current = next.filter(|&c| c < limit)?;
        next = if current == 0 {
            None
        } else {
            // Gosper's hack: next integer with the same popcount.
            let low = current & current.wrapping_neg();
            let ripple = current + low;
            Some((((ripple ^ current) >> 2) / low) | ripple)
        };
        Some(SubsetMask(current as u32))
    })
}

/// A function from the subsets of `{1..n}` to one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeTable {
    n: usize,
    field: FieldKind,
    values: Vec<Scalar>,
}

impl LatticeTable {
    pub fn new(n: usize, field: FieldKind, values: Vec<Scalar>) -> Result<Self> {
        check_dim(n)?;
        let expected = 1usize << n;
        if values.len() != expected {
            return Err(Error::TableLength {
                n,
                expected,
                found: values.len(),
            });
        }
        if let Some(bad) = values.iter().find(|v| !field.contains(v)) {
            return Err(Error::FieldMismatch {
                expected: field,
                found: bad.field(),
            });
        }
        Ok(Self { n, field, values })
    }

    pub fn zeros(n: usize, field: FieldKind) -> Result<Self> {
        check_dim(n)?;
        Ok(Self {
            n,
            field,
            values: vec![field.zero(); 1 << n],
        })
    }

    pub fn from_fn(n: usize, field: FieldKind, f: impl FnMut(SubsetMask) -> Scalar) -> Result<Self> {
        check_dim(n)?;
        let values: Vec<Scalar> = (0..1u32 << n).map(SubsetMask).map(f).collect();
        Self::new(n, field, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn get(&self, mask: SubsetMask) -> &Scalar {
        &self.values[mask.index()]
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Scalar> {
        self.values
    }

    /// Entries paired with their masks.
    pub fn iter(&self) -> impl Iterator<Item = (SubsetMask, &Scalar)> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (SubsetMask(i as u32), v))
    }

    /// Copy keeping only the entries whose mask has the given weight.
    pub fn restrict_to_weight(&self, weight: usize) -> LatticeTable {
        let zero = self.field.zero();
        let values = self
            .iter()
            .map(|(m, v)| if m.weight() == weight { v.clone() } else { zero.clone() })
            .collect();
        LatticeTable { values, ..*self }
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n > MAX_DIM {
        return Err(Error::DimensionTooLarge { n, max: MAX_DIM });
    }
    Ok(())
}

/// Which algorithm computes a transform. `Naive` is the quadratic-time
/// definition, kept as the reference the fast path is tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TransformMode {
    #[default]
    Fast,
    Naive,
}

/// `out[J] = sum over B ⊆ J of t[B]`.
pub fn zeta_transform(t: &LatticeTable) -> LatticeTable {
    zeta_transform_with(t, TransformMode::Fast)
}

/// `out[J] = sum over A ⊆ J of (-1)^{|J \ A|} t[A]`; inverse of
/// [`zeta_transform`].
pub fn mobius_transform(t: &LatticeTable) -> LatticeTable {
    mobius_transform_with(t, TransformMode::Fast)
}

pub fn zeta_transform_with(t: &LatticeTable, mode: TransformMode) -> LatticeTable {
    match mode {
        TransformMode::Fast => butterfly(t, |low, high| *high = &*high + low),
        TransformMode::Naive => naive(t, false),
    }
}

pub fn mobius_transform_with(t: &LatticeTable, mode: TransformMode) -> LatticeTable {
    match mode {
        TransformMode::Fast => butterfly(t, |low, high| *high = &*high - low),
        TransformMode::Naive => naive(t, true),
    }
}

// One pass per coordinate: fold each entry without bit `i` into its partner
// with bit `i`.
fn butterfly(t: &LatticeTable, step: impl Fn(&Scalar, &mut Scalar)) -> LatticeTable {
    let mut values = t.values.clone();
    for i in 0..t.n {
        let half = 1usize << i;
        for block in values.chunks_exact_mut(half * 2) {
            let (low, high) = block.split_at_mut(half);
            for (l, h) in low.iter().zip(high.iter_mut()) {
                step(l, h);
            }
        }
    }
    LatticeTable { values, ..*t }
}

fn naive(t: &LatticeTable, alternating: bool) -> LatticeTable {
    let values = (0..t.values.len())
        .map(|j| {
            let j = SubsetMask(j as u32);
            j.subsets().fold(t.field.zero(), |acc, a| {
                let v = &t.values[a.index()];
                if alternating && (j.weight() - a.weight()) % 2 == 1 {
                    &acc - v
                } else {
                    &acc + v
                }
            })
        })
        .collect();
    LatticeTable { values, ..*t }
}

/// The subsets of `{1..n}` of size at most `r`, ordered by size and then by
/// numeric mask value, with constant-time position lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOrder {
    n: usize,
    r: usize,
    masks: Vec<SubsetMask>,
    position: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

pub fn enumerate_up_to_rank(n: usize, r: usize) -> Result<RankOrder> {
    check_dim(n)?;
    if r > n {
        return Err(Error::RankOutOfRange { r, n });
    }
    let masks: Vec<SubsetMask> = (0..=r).flat_map(|k| masks_of_weight(n, k)).collect();
    let mut position = vec![ABSENT; 1 << n];
    for (i, m) in masks.iter().enumerate() {
        position[m.index()] = i as u32;
    }
    Ok(RankOrder {
        n,
        r,
        masks,
        position,
    })
}

impl RankOrder {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn masks(&self) -> &[SubsetMask] {
        &self.masks
    }

    pub fn get(&self, i: usize) -> SubsetMask {
        self.masks[i]
    }

    pub fn position(&self, mask: SubsetMask) -> Option<usize> {
        self.position
            .get(mask.index())
            .filter(|&&p| p != ABSENT)
            .map(|&p| p as usize)
    }

    /// Number of leading entries with size below `k`.
    pub fn count_below_size(&self, k: usize) -> usize {
        self.masks.partition_point(|m| m.weight() < k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> FieldKind {
        FieldKind::Rational
    }

    fn table(values: &[i64]) -> LatticeTable {
        let n = values.len().trailing_zeros() as usize;
        LatticeTable::new(n, q(), values.iter().map(|&v| q().from_i64(v)).collect()).unwrap()
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(zeta_transform(&table(&[1, 0])), table(&[1, 1]));
        assert_eq!(zeta_transform(&table(&[1, 1, 2, 3])), table(&[1, 2, 3, 7]));
        let zero = LatticeTable::zeros(5, q()).unwrap();
        assert_eq!(zeta_transform(&zero), zero);
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius_transform(&table(&[1, 2, 3, 7])), table(&[1, 1, 2, 3]));
        let mut constant = vec![0; 16];
        constant[0] = 5;
        assert_eq!(mobius_transform(&table(&[5; 16])), table(&constant));
        let zero = LatticeTable::zeros(3, q()).unwrap();
        assert_eq!(mobius_transform(&zero), zero);
    }

    #[test]
    fn table_validation() {
        assert!(matches!(
            LatticeTable::new(2, q(), vec![q().zero(); 3]),
            Err(Error::TableLength { expected: 4, found: 3, .. })
        ));
        let f5 = FieldKind::prime(5).unwrap();
        assert!(matches!(
            LatticeTable::new(1, q(), vec![q().zero(), f5.one()]),
            Err(Error::FieldMismatch { .. })
        ));
        assert!(LatticeTable::zeros(25, q()).is_err());
    }

    #[test]
    fn rank_order_examples() {
        let o = enumerate_up_to_rank(2, 1).unwrap();
        assert_eq!(
            o.masks(),
            &[SubsetMask::EMPTY, SubsetMask::from_elements(&[1]), SubsetMask::from_elements(&[2])]
        );
        let all = enumerate_up_to_rank(3, 3).unwrap();
        assert_eq!(all.len(), 8);
        assert!(all.masks().windows(2).all(|w| w[0].weight() <= w[1].weight()));
        assert_eq!(enumerate_up_to_rank(10, 2).unwrap().len(), 56);
        assert_eq!(
            enumerate_up_to_rank(2, 3),
            Err(Error::RankOutOfRange { r: 3, n: 2 })
        );
    }

    #[test]
    fn rank_order_is_canonical_and_invertible() {
        for n in 0..=10 {
            for r in 0..=n {
                let o = enumerate_up_to_rank(n, r).unwrap();
                let expected: usize = (0..=r).map(|i| crate::scalar::binomial_i64(n as i64, i as i64).unwrap() as usize).sum();
                assert_eq!(o.len(), expected);
                assert!(o
                    .masks()
                    .windows(2)
                    .all(|w| (w[0].weight(), w[0].bits()) < (w[1].weight(), w[1].bits())));
                for (i, &m) in o.masks().iter().enumerate() {
                    assert_eq!(o.position(m), Some(i));
                }
                let outside = (0..1u32 << n).filter(|&b| b.count_ones() as usize > r);
                for b in outside {
                    assert_eq!(o.position(SubsetMask::from_bits(b)), None);
                }
            }
        }
        let full = enumerate_up_to_rank(12, 12).unwrap();
        let mut bits: Vec<u32> = full.masks().iter().map(|m| m.bits()).collect();
        bits.sort_unstable();
        bits.dedup();
        assert_eq!(bits.len(), 1 << 12);
    }

    #[test]
    fn mask_helpers() {
        let a = SubsetMask::from_elements(&[1, 3]);
        assert_eq!(a.bits(), 0b101);
        assert_eq!(a.to_string(), "{1,3}");
        assert_eq!(a.complement(4), SubsetMask::from_elements(&[2, 4]));
        assert_eq!(a.subsets().count(), 4);
        assert!(SubsetMask::new(0b100, 2).is_err());
        assert!(SubsetMask::new(0b11, 2).is_ok());
        assert_eq!(SubsetMask::full(24).weight(), 24);
    }

    fn small_table() -> impl Strategy<Value = (usize, Vec<i64>)> {
        (0usize..=10).prop_flat_map(|n| (Just(n), prop::collection::vec(-50i64..50, 1 << n)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn fast_matches_naive((n, raw) in small_table(), prime in prop::bool::ANY) {
            let field = if prime { FieldKind::prime(10007).unwrap() } else { q() };
            let t = LatticeTable::new(n, field, raw.iter().map(|&v| field.from_i64(v)).collect()).unwrap();
            prop_assert_eq!(zeta_transform(&t), zeta_transform_with(&t, TransformMode::Naive));
            prop_assert_eq!(mobius_transform(&t), mobius_transform_with(&t, TransformMode::Naive));
        }

        #[test]
        fn transforms_are_mutually_inverse(n in 0usize..=16, seed in any::<u64>(), prime in prop::bool::ANY) {
            let field = if prime { FieldKind::prime(10007).unwrap() } else { q() };
            let mut state = seed | 1;
            let t = LatticeTable::from_fn(n, field, |_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                field.from_i64((state % 2001) as i64 - 1000)
            }).unwrap();
            prop_assert_eq!(&mobius_transform(&zeta_transform(&t)), &t);
            prop_assert_eq!(&zeta_transform(&mobius_transform(&t)), &t);
        }
    }
}
