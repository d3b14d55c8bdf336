//! Exact scalars, vectors, norms, rounding and bit-size accounting.

use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, Zero};

/// Arbitrary-precision integer.
pub type Integer = BigInt;
/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = BigRational;

/// Scalar requirements for vector arithmetic.
pub trait Scalar: Num + Signed + Clone + PartialOrd + fmt::Debug {}

impl<T> Scalar for T where T: Num + Signed + Clone + PartialOrd + fmt::Debug {}

/// Which norm to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormKind {
    L1,
    Linf,
}

/// Fixed-dimension vector over a scalar type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector<T>(Vec<T>);

pub type RatVector = Vector<Rational>;
pub type IntVector = Vector<Integer>;

impl<T> Vector<T> {
    pub fn new(entries: Vec<T>) -> Self {
        Vector(entries)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[T] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<T> {
        self.0
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Vector<U> {
        Vector(self.0.iter().map(f).collect())
    }
}

impl<T: Scalar> Vector<T> {
    pub fn zeros(n: usize) -> Self {
        Vector(vec![T::zero(); n])
    }

    /// The `i`-th standard basis vector of dimension `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = T::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Self) -> T {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in dot product");
        self.0
            .iter()
            .zip(&other.0)
            .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    }

    pub fn norm(&self, kind: NormKind) -> T {
        match kind {
            NormKind::L1 => self.norm_l1(),
            NormKind::Linf => self.norm_linf(),
        }
    }

    pub fn norm_l1(&self) -> T {
        self.0.iter().fold(T::zero(), |acc, x| acc + x.abs())
    }

    pub fn norm_linf(&self) -> T {
        self.0.iter().fold(T::zero(), |acc, x| {
            let a = x.abs();
            if a > acc {
                a
            } else {
                acc
            }
        })
    }

    pub fn scale(&self, s: &T) -> Self {
        Vector(self.0.iter().map(|x| x.clone() * s.clone()).collect())
    }

    pub fn count_zeros(&self) -> usize {
        self.0.iter().filter(|x| x.is_zero()).count()
    }
}

impl IntVector {
    pub fn from_i64s(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| Integer::from(x)).collect())
    }

    pub fn to_rational(&self) -> RatVector {
        self.map(|x| Rational::from_integer(x.clone()))
    }
}

impl RatVector {
    pub fn from_i64s(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    /// Entries given as `(numerator, denominator)` pairs.
    pub fn from_ratios(xs: &[(i64, i64)]) -> Self {
        Vector(xs.iter().map(|&(p, q)| Rational::new(p.into(), q.into())).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// Integer entries, or `None` if some entry is fractional.
    pub fn to_integer(&self) -> Option<IntVector> {
        if self.is_integral() {
            Some(self.map(|x| x.to_integer()))
        } else {
            None
        }
    }
}

impl<T> Deref for Vector<T> {
    type Target = [T];
    fn deref(&self) -> &[T] {
        &self.0
    }
}

impl<T> From<Vec<T>> for Vector<T> {
    fn from(v: Vec<T>) -> Self {
        Vector(v)
    }
}

impl<T> FromIterator<T> for Vector<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Vector(iter.into_iter().collect())
    }
}

impl<T: Scalar> Add for &Vector<T> {
    type Output = Vector<T>;
    fn add(self, rhs: Self) -> Vector<T> {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in addition");
        self.0.iter().zip(&rhs.0).map(|(x, y)| x.clone() + y.clone()).collect()
    }
}

impl<T: Scalar> Sub for &Vector<T> {
    type Output = Vector<T>;
    fn sub(self, rhs: Self) -> Vector<T> {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in subtraction");
        self.0.iter().zip(&rhs.0).map(|(x, y)| x.clone() - y.clone()).collect()
    }
}

impl<T: Scalar> Neg for &Vector<T> {
    type Output = Vector<T>;
    fn neg(self) -> Vector<T> {
        self.0.iter().map(|x| -x.clone()).collect()
    }
}

impl<T: Scalar> Mul<&T> for &Vector<T> {
    type Output = Vector<T>;
    fn mul(self, rhs: &T) -> Vector<T> {
        self.scale(rhs)
    }
}

impl<T: fmt::Display> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Round each coordinate to the nearest integer, halves away from zero.
pub fn round_nearest(v: &RatVector) -> IntVector {
    v.map(|x| x.round().to_integer())
}

/// Floor of a rational as an integer.
pub fn floor(x: &Rational) -> Integer {
    x.floor().to_integer()
}

/// Ceiling of a rational as an integer.
pub fn ceil(x: &Rational) -> Integer {
    x.ceil().to_integer()
}

pub fn rational(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

pub fn to_rational(x: &Integer) -> Rational {
    Rational::from_integer(x.clone())
}

/// `⌈log₂(k+1)⌉` for `k = |x|`, i.e. the bit length of `|x|`.
pub fn log_bits(x: &Integer) -> u64 {
    x.bits()
}

/// Encoding length in bits.
pub trait BitSize {
    fn bit_size(&self) -> u64;
}

impl BitSize for Rational {
    fn bit_size(&self) -> u64 {
        1 + log_bits(self.numer()) + log_bits(self.denom())
    }
}

impl BitSize for Integer {
    fn bit_size(&self) -> u64 {
        // denominator 1 contributes one bit
        2 + log_bits(self)
    }
}

impl<T: BitSize> BitSize for Vector<T> {
    fn bit_size(&self) -> u64 {
        self.dim() as u64 + self.0.iter().map(BitSize::bit_size).sum::<u64>()
    }
}

impl<T: BitSize> BitSize for Option<T> {
    fn bit_size(&self) -> u64 {
        self.as_ref().map_or(0, BitSize::bit_size)
    }
}

/// Bit size of a matrix given by its rows: `mn` plus the entries.
pub fn matrix_bit_size<T: BitSize>(rows: &[Vector<T>]) -> u64 {
    rows.iter()
        .map(|r| r.iter().map(BitSize::bit_size).sum::<u64>() + r.dim() as u64)
        .sum()
}

/// Bit size of a labeled tree: nodes, edges and the label sizes.
pub fn tree_bit_size(nodes: u64, edges: u64, label_bits: u64) -> u64 {
    nodes + edges + label_bits
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms() {
        let v = RatVector::from_i64s(&[1, -2, 3]);
        assert_eq!(v.norm(NormKind::L1), rational(6));
        assert_eq!(v.norm(NormKind::Linf), rational(3));
        assert_eq!(RatVector::zeros(4).norm_l1(), rational(0));
    }

    #[test]
    fn rounding() {
        let v = RatVector::from_ratios(&[(7, 3), (-1, 4)]);
        assert_eq!(round_nearest(&v), IntVector::from_i64s(&[2, 0]));
        let v = RatVector::from_ratios(&[(1, 2), (-1, 2)]);
        assert_eq!(round_nearest(&v), IntVector::from_i64s(&[1, -1]));
        let v = RatVector::from_i64s(&[5, -2]);
        assert_eq!(round_nearest(&v), IntVector::from_i64s(&[5, -2]));
    }

    #[test]
    fn bit_sizes() {
        assert_eq!(rational(0).bit_size(), 2);
        assert_eq!(ratio(3, 2).bit_size(), 5);
        assert_eq!(RatVector::from_i64s(&[1, 1]).bit_size(), 8);
        assert_eq!(Integer::from(3).bit_size(), rational(3).bit_size());
        assert_eq!(Integer::from(-4).bit_size(), 1 + 3 + 1);
    }

    #[test]
    fn vector_ops() {
        let a = IntVector::from_i64s(&[1, 2]);
        let b = IntVector::from_i64s(&[3, -1]);
        assert_eq!(&a + &b, IntVector::from_i64s(&[4, 1]));
        assert_eq!(&a - &b, IntVector::from_i64s(&[-2, 3]));
        assert_eq!(-&a, IntVector::from_i64s(&[-1, -2]));
        assert_eq!(a.dot(&b), Integer::from(1));
        assert_eq!(IntVector::unit(3, 1), IntVector::from_i64s(&[0, 1, 0]));
    }
}
