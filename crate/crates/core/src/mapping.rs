//! Self-mappings of a normed space: the example catalog, the averaged
//! transform, and fixed-point residuals.

use std::sync::Arc;

use crate::scfp::{LinearOperator, ScfpProblem};
use crate::space::{affine_combine, NormedSpace, Vector};
use crate::{Error, Real};

#[derive(Debug, Clone)]
enum MapKind<T: Real> {
    /// `p -> alpha * p`
    Scale { alpha: T },
    /// `(x, y) -> (-y, x)`, a quarter rotation of the plane.
    QuarterTurn,
    /// `p -> A p + b`
    Affine {
        matrix: LinearOperator<T>,
        offset: Vector<T>,
    },
    /// Projection-based split-feasibility operator; see [`crate::scfp`].
    SplitFeasibility(Arc<ScfpProblem<T>>),
    /// `p -> (1 - lambda) p + lambda * inner(p)`
    Averaged { inner: Box<Mapping<T>>, lambda: T },
}

/// A self-map `R` of a [`NormedSpace`].
///
/// Mappings are immutable after construction and `apply` is pure, so a
/// mapping can be evaluated concurrently from any number of threads.
#[derive(Debug, Clone)]
pub struct Mapping<T: Real> {
    space: NormedSpace,
    kind: MapKind<T>,
}

impl<T: Real> Mapping<T> {
    /// Scaling map `p -> alpha * p`.
    pub fn scale(space: NormedSpace, alpha: T) -> Self {
        assert!(alpha.is_finite(), "scale factor must be finite");
        Self {
            space,
            kind: MapKind::Scale { alpha },
        }
    }

    /// Quarter rotation `(x, y) -> (-y, x)`; requires a two-dimensional space.
    pub fn quarter_turn(space: NormedSpace) -> Result<Self, Error> {
        if space.dimension() != 2 {
            return Err(Error::invalid(format!(
                "quarter_turn needs dimension 2, got {}",
                space.dimension()
            )));
        }
        Ok(Self {
            space,
            kind: MapKind::QuarterTurn,
        })
    }

    /// Affine map `p -> A p + b` with a square matrix matching the space.
    pub fn affine(
        space: NormedSpace,
        matrix: LinearOperator<T>,
        offset: Vector<T>,
    ) -> Result<Self, Error> {
        let d = space.dimension();
        if matrix.rows() != d || matrix.cols() != d {
            return Err(Error::invalid(format!(
                "affine map needs a {d}x{d} matrix, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if offset.dim() != d {
            return Err(Error::dims(d, offset.dim()));
        }
        Ok(Self {
            space,
            kind: MapKind::Affine { matrix, offset },
        })
    }

    pub(crate) fn split_feasibility(space: NormedSpace, problem: Arc<ScfpProblem<T>>) -> Self {
        Self {
            space,
            kind: MapKind::SplitFeasibility(problem),
        }
    }

    pub fn space(&self) -> NormedSpace {
        self.space
    }

    /// The averaged map `R_lambda: p -> (1 - lambda) p + lambda R p` for
    /// `lambda` in `(0, 1]`. Sharing its fixed-point set with `R`, it is the
    /// map the Krasnoselskij scheme actually iterates. `lambda = 1` returns
    /// the map itself.
    pub fn averaged(&self, lambda: T) -> Result<Self, Error> {
        if !(lambda > T::zero() && lambda <= T::one()) {
            return Err(Error::invalid(format!(
                "averaging parameter must lie in (0, 1], got {lambda}"
            )));
        }
        if lambda == T::one() {
            return Ok(self.clone());
        }
        Ok(Self {
            space: self.space,
            kind: MapKind::Averaged {
                inner: Box::new(self.clone()),
                lambda,
            },
        })
    }

    /// Evaluates `R p`.
    pub fn apply(&self, p: &Vector<T>) -> Result<Vector<T>, Error> {
        if p.dim() != self.space.dimension() {
            return Err(Error::dims(self.space.dimension(), p.dim()));
        }
        match &self.kind {
            MapKind::Scale { alpha } => Ok(p.scale(*alpha)),
            MapKind::QuarterTurn => Ok(Vector::new(vec![-p[1], p[0]])),
            MapKind::Affine { matrix, offset } => Ok(&matrix.apply(p)? + offset),
            MapKind::SplitFeasibility(problem) => problem.apply_fixed_point(p),
            MapKind::Averaged { inner, lambda } => affine_combine(*lambda, p, &inner.apply(p)?),
        }
    }

    /// `||p - R p||` in the space's norm; zero exactly at fixed points.
    ///
    /// Panics if `p` does not match the mapping's dimension.
    pub fn fix_residual(&self, p: &Vector<T>) -> T {
        let rp = self.apply(p).expect("fix_residual: dimension mismatch");
        self.space
            .norm(&(p - &rp))
            .expect("residual has the space's dimension")
    }
}
