//! Exact scalars: unbounded integers, rationals and prime fields.
//!
//! Two layers live here. [`Scalar`] is a dynamically tagged element that
//! carries its own field ([`FieldKind`]), which is what polynomials, lattice
//! tables and the text formats use. The [`Field`] trait is a static context
//! (`Rationals`, `PrimeField`, or `FieldKind` itself) that the elimination
//! routines are generic over, so hot loops over `F_p` run on plain `u64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-size signed integer.
pub type Integer = BigInt;

/// Reduced fraction with positive denominator.
pub type Rational = BigRational;

// Pascal rows up to this upper index are memoized; larger requests fall back
// to the multiplicative formula.
const MEMO_LIMIT: i64 = 1024;

static PASCAL: RwLock<Vec<Vec<BigInt>>> = RwLock::new(Vec::new());

/// `C(m, k)`, zero when `k < 0` or `k > m`.
///
/// Negative upper indices are rejected instead of being evaluated through the
/// generalized binomial: every formula in this crate keeps `m >= 0`, so a
/// negative `m` means a caller computed its parameters wrong.
pub fn binomial(m: i64, k: i64) -> Result<Integer> {
    if m < 0 {
        return Err(Error::NegativeUpperIndex(m));
    }
    if k < 0 || k > m {
        return Ok(BigInt::zero());
    }
    let k = k.min(m - k);
    if m > MEMO_LIMIT {
        let mut acc = BigInt::one();
        for i in 0..k {
            acc = acc * BigInt::from(m - i) / BigInt::from(i + 1);
        }
        return Ok(acc);
    }
    let (m, k) = (m as usize, k as usize);
    {
        let table = PASCAL.read().expect("binomial memo poisoned");
        if m < table.len() {
            return Ok(table[m][k].clone());
        }
    }
    let mut table = PASCAL.write().expect("binomial memo poisoned");
    while table.len() <= m {
        let row = match table.last() {
            None => vec![BigInt::one()],
            Some(prev) => {
                let mut row = Vec::with_capacity(prev.len() + 1);
                row.push(BigInt::one());
                for w in prev.windows(2) {
                    row.push(&w[0] + &w[1]);
                }
                row.push(BigInt::one());
                row
            }
        };
        table.push(row);
    }
    Ok(table[m][k].clone())
}

/// `C(m, k)` as a machine integer. Panics on overflow, which cannot happen
/// for the small parameters the matrices and sums use.
pub(crate) fn binomial_i64(m: i64, k: i64) -> Result<i64> {
    binomial(m, k).map(|b| b.to_i64().expect("binomial overflows i64"))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field `F_p` for a verified prime `p < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    modulus: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { modulus: p })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn element(&self, value: i64) -> Fp {
        Fp {
            residue: value.rem_euclid(self.modulus as i64) as u64,
            modulus: self.modulus,
        }
    }

    fn reduce_bigint(&self, value: &BigInt) -> u64 {
        value
            .mod_floor(&BigInt::from(self.modulus))
            .to_u64()
            .expect("residue fits u64")
    }
}

/// Element of `F_p`: a residue in `[0, p)` tagged with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    residue: u64,
    modulus: u64,
}

impl Fp {
    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }
}

/// Multiplicative inverse in `F_p`.
pub fn field_inverse(x: Fp) -> Result<Fp> {
    inverse_mod(x.residue, x.modulus)
        .map(|residue| Fp {
            residue,
            modulus: x.modulus,
        })
        .ok_or(Error::DivisionByZero)
}

fn inverse_mod(x: u64, p: u64) -> Option<u64> {
    if x % p == 0 {
        return None;
    }
    let (mut old_r, mut r) = (x as i64, p as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    Some(old_s.rem_euclid(p as i64) as u64)
}

/// Which field a [`Scalar`] lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Prime(PrimeField),
}

impl FieldKind {
    pub fn prime(p: u64) -> Result<Self> {
        PrimeField::new(p).map(FieldKind::Prime)
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldKind::Rational => 0,
            FieldKind::Prime(f) => f.modulus,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, value: i64) -> Scalar {
        match self {
            FieldKind::Rational => Scalar::Rational(BigRational::from_integer(value.into())),
            FieldKind::Prime(f) => Scalar::Prime(f.element(value)),
        }
    }

    pub fn from_integer(&self, value: &Integer) -> Scalar {
        match self {
            FieldKind::Rational => Scalar::Rational(BigRational::from_integer(value.clone())),
            FieldKind::Prime(f) => Scalar::Prime(Fp {
                residue: f.reduce_bigint(value),
                modulus: f.modulus,
            }),
        }
    }

    /// `numerator / denominator` embedded in this field.
    pub fn from_fraction(&self, numerator: &Integer, denominator: &Integer) -> Result<Scalar> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldKind::Rational => Ok(Scalar::Rational(BigRational::new(
                numerator.clone(),
                denominator.clone(),
            ))),
            FieldKind::Prime(_) => {
                let den = self.from_integer(denominator).inverse()?;
                Ok(&self.from_integer(numerator) * &den)
            }
        }
    }

    /// Parses `"123"`, `"-4"` or `"a/b"`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let bad = |message: String| Error::Parse { line: 0, message };
        let parse_int = |s: &str| {
            s.trim()
                .parse::<BigInt>()
                .map_err(|_| bad(format!("invalid integer `{s}`")))
        };
        match text.split_once('/') {
            None => Ok(self.from_integer(&parse_int(text)?)),
            Some((num, den)) => {
                let den = parse_int(den)?;
                if den.is_zero() {
                    return Err(bad(format!("zero denominator in `{text}`")));
                }
                self.from_fraction(&parse_int(num)?, &den)
            }
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        x.field() == *self
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "rational"),
            FieldKind::Prime(p) => write!(f, "fp:{}", p.modulus),
        }
    }
}

impl FromStr for FieldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "rational" {
            return Ok(FieldKind::Rational);
        }
        let p = s
            .strip_prefix("fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("unknown field `{s}`, expected `rational` or `fp:P`"),
            })?;
        FieldKind::prime(p)
    }
}

/// An exact field element.
///
/// Binary operations between scalars of different fields panic; values that
/// cross an API boundary are checked with [`FieldKind::contains`] first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Prime(Fp),
}

impl Scalar {
    pub fn field(&self) -> FieldKind {
        match self {
            Scalar::Rational(_) => FieldKind::Rational,
            Scalar::Prime(x) => FieldKind::Prime(PrimeField { modulus: x.modulus }),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Prime(x) => x.is_zero(),
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(x) if x.is_zero() => Err(Error::DivisionByZero),
            Scalar::Rational(x) => Ok(Scalar::Rational(x.recip())),
            Scalar::Prime(x) => field_inverse(*x).map(Scalar::Prime),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(x) => Some(x),
            Scalar::Prime(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(x) if x.is_integer() => write!(f, "{}", x.numer()),
            Scalar::Rational(x) => write!(f, "{}/{}", x.numer(), x.denom()),
            Scalar::Prime(x) => write!(f, "{}", x.residue),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

fn same_modulus(x: &Fp, y: &Fp) -> u64 {
    assert_eq!(x.modulus, y.modulus, "field mismatch between prime fields");
    x.modulus
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::Prime(x), Scalar::Prime(y)) => {
                let p = same_modulus(x, y);
                Scalar::Prime(Fp {
                    residue: (x.residue + y.residue) % p,
                    modulus: p,
                })
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x - y),
            (Scalar::Prime(x), Scalar::Prime(y)) => {
                let p = same_modulus(x, y);
                Scalar::Prime(Fp {
                    residue: (x.residue + p - y.residue) % p,
                    modulus: p,
                })
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Prime(x), Scalar::Prime(y)) => {
                let p = same_modulus(x, y);
                Scalar::Prime(Fp {
                    residue: x.residue * y.residue % p,
                    modulus: p,
                })
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Prime(x) => Scalar::Prime(Fp {
                residue: (x.modulus - x.residue) % x.modulus,
                modulus: x.modulus,
            }),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $method:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// A field as a static context for generic elimination.
pub trait Field: Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn kind(&self) -> FieldKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, value: i64) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Option<Self::Elem>;
    fn to_scalar(&self, x: &Self::Elem) -> Scalar;
}

/// The field of rationals.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rational
    }
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_i64(&self, value: i64) -> Rational {
        Rational::from_integer(value.into())
    }
    fn is_zero(&self, x: &Rational) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &Rational, y: &Rational) -> Rational {
        x + y
    }
    fn sub(&self, x: &Rational, y: &Rational) -> Rational {
        x - y
    }
    fn mul(&self, x: &Rational, y: &Rational) -> Rational {
        x * y
    }
    fn neg(&self, x: &Rational) -> Rational {
        -x
    }
    fn inv(&self, x: &Rational) -> Option<Rational> {
        (!x.is_zero()).then(|| x.recip())
    }
    fn to_scalar(&self, x: &Rational) -> Scalar {
        Scalar::Rational(x.clone())
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn kind(&self) -> FieldKind {
        FieldKind::Prime(*self)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, value: i64) -> u64 {
        value.rem_euclid(self.modulus as i64) as u64
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn add(&self, x: &u64, y: &u64) -> u64 {
        (x + y) % self.modulus
    }
    fn sub(&self, x: &u64, y: &u64) -> u64 {
        (x + self.modulus - y) % self.modulus
    }
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        x * y % self.modulus
    }
    fn neg(&self, x: &u64) -> u64 {
        (self.modulus - x) % self.modulus
    }
    fn inv(&self, x: &u64) -> Option<u64> {
        inverse_mod(*x, self.modulus)
    }
    fn to_scalar(&self, x: &u64) -> Scalar {
        Scalar::Prime(Fp {
            residue: *x,
            modulus: self.modulus,
        })
    }
}

impl Field for FieldKind {
    type Elem = Scalar;

    fn kind(&self) -> FieldKind {
        *self
    }
    fn zero(&self) -> Scalar {
        FieldKind::zero(self)
    }
    fn one(&self) -> Scalar {
        FieldKind::one(self)
    }
    fn from_i64(&self, value: i64) -> Scalar {
        FieldKind::from_i64(self, value)
    }
    fn is_zero(&self, x: &Scalar) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &Scalar, y: &Scalar) -> Scalar {
        x + y
    }
    fn sub(&self, x: &Scalar, y: &Scalar) -> Scalar {
        x - y
    }
    fn mul(&self, x: &Scalar, y: &Scalar) -> Scalar {
        x * y
    }
    fn neg(&self, x: &Scalar) -> Scalar {
        -x
    }
    fn inv(&self, x: &Scalar) -> Option<Scalar> {
        x.inverse().ok()
    }
    fn to_scalar(&self, x: &Scalar) -> Scalar {
        x.clone()
    }
}

pub(crate) fn sign(exponent: i64) -> i64 {
    if exponent.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
