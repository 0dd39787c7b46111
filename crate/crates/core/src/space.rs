//! Finite-dimensional coordinate spaces with pluggable norms.

use std::ops::{Add, Index, Sub};

use crate::{Error, Real};

/// Dense coordinate vector of fixed dimension.
///
/// Vectors are immutable values; every operation returns a new vector.
/// Arithmetic on mismatched dimensions panics (it is a programming error);
/// the fallible entry points of this crate validate dimensions up front.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector<T> {
    components: Vec<T>,
}

impl<T: Real> Vector<T> {
    /// Builds a vector from its components. Panics on an empty list.
    pub fn new(components: Vec<T>) -> Self {
        assert!(!components.is_empty(), "vectors must have dimension >= 1");
        Self { components }
    }

    /// Converts a slice of `f64` literals into a vector of `T`.
    pub fn from_f64s(components: &[f64]) -> Self {
        Self::new(components.iter().map(|&x| T::of(x)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![T::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.components
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.components.iter()
    }

    pub fn scale(&self, factor: T) -> Self {
        Self::new(self.iter().map(|&x| factor * x).collect())
    }

    pub fn dot(&self, other: &Self) -> T {
        assert_eq!(self.dim(), other.dim(), "dot product dimension mismatch");
        self.iter()
            .zip(other.iter())
            .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
    }

    pub fn is_finite(&self) -> bool {
        self.iter().all(|x| x.is_finite())
    }
}

impl<T: Real> Index<usize> for Vector<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.components[i]
    }
}

impl<T: Real> Add for &Vector<T> {
    type Output = Vector<T>;

    fn add(self, rhs: &Vector<T>) -> Vector<T> {
        assert_eq!(self.dim(), rhs.dim(), "vector add dimension mismatch");
        Vector::new(self.iter().zip(rhs.iter()).map(|(&a, &b)| a + b).collect())
    }
}

impl<T: Real> Sub for &Vector<T> {
    type Output = Vector<T>;

    fn sub(self, rhs: &Vector<T>) -> Vector<T> {
        assert_eq!(self.dim(), rhs.dim(), "vector sub dimension mismatch");
        Vector::new(self.iter().zip(rhs.iter()).map(|(&a, &b)| a - b).collect())
    }
}

/// Norm selector for a [`NormedSpace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    /// Sum of absolute components.
    L1,
    /// Euclidean norm.
    L2,
    /// Maximum absolute component.
    LInf,
    /// Maximum absolute entry of a row-major flattened `rows x cols` matrix.
    /// Numerically identical to `LInf`; carries the shape so that matrix
    /// spaces validate `dimension == rows * cols`.
    MatrixMax { rows: usize, cols: usize },
}

/// A finite-dimensional coordinate space together with a chosen norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormedSpace {
    dimension: usize,
    norm_kind: NormKind,
}

impl NormedSpace {
    pub fn new(dimension: usize, norm_kind: NormKind) -> Result<Self, Error> {
        if dimension == 0 {
            return Err(Error::invalid("space dimension must be >= 1"));
        }
        if let NormKind::MatrixMax { rows, cols } = norm_kind {
            if rows * cols != dimension {
                return Err(Error::invalid(format!(
                    "matrix_max norm needs dimension == rows*cols, got {dimension} != {rows}*{cols}"
                )));
            }
        }
        Ok(Self {
            dimension,
            norm_kind,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn norm_kind(&self) -> NormKind {
        self.norm_kind
    }

    /// Evaluates the space's norm.
    pub fn norm<T: Real>(&self, v: &Vector<T>) -> Result<T, Error> {
        if v.dim() != self.dimension {
            return Err(Error::dims(self.dimension, v.dim()));
        }
        let value = match self.norm_kind {
            NormKind::L1 => v.iter().fold(T::zero(), |acc, &x| acc + x.abs()),
            NormKind::L2 => v.dot(v).sqrt(),
            NormKind::LInf | NormKind::MatrixMax { .. } => {
                v.iter().fold(T::zero(), |acc, &x| acc.max(x.abs()))
            }
        };
        Ok(value)
    }
}

/// Returns `(1 - lambda) * p + lambda * q` componentwise.
///
/// This is the single combination primitive behind every averaged map and
/// iteration scheme in the crate, so that distinct code paths produce
/// bit-identical arithmetic.
pub fn affine_combine<T: Real>(
    lambda: T,
    p: &Vector<T>,
    q: &Vector<T>,
) -> Result<Vector<T>, Error> {
    if p.dim() != q.dim() {
        return Err(Error::dims(p.dim(), q.dim()));
    }
    let rest = T::one() - lambda;
    Ok(Vector::new(
        p.iter()
            .zip(q.iter())
            .map(|(&a, &b)| rest * a + lambda * b)
            .collect(),
    ))
}
