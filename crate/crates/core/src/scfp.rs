//! Split convex feasibility: closed-form projections, spectral-norm
//! estimation, and the projection-based fixed-point operator
//!
//! ```text
//! L p = P_C( p + T*/||T||^2 (P_Q(T p) - T p) )
//! ```
//!
//! whose fixed points are exactly the solutions of "find x in C with
//! T x in Q". Projections always use the Euclidean metric, whatever norm a
//! caller prefers for iteration reporting; the closed forms need the inner
//! product.

use std::sync::Arc;

use crate::iterate::{krasnoselskij, IterationConfig, IterationError, IterationTrace};
use crate::mapping::Mapping;
use crate::space::{NormKind, NormedSpace, Vector};
use crate::{Error, Real};

fn l2<T: Real>(v: &Vector<T>) -> T {
    v.dot(v).sqrt()
}

/// A closed convex set with a closed-form Euclidean projection.
///
/// Use the `new_*` constructors; they validate the invariants (ordered box
/// bounds, positive radius, nonzero normal).
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexSet<T: Real> {
    /// `{ x : lo <= x <= hi }` componentwise.
    Box { lo: Vector<T>, hi: Vector<T> },
    /// Euclidean ball.
    Ball { center: Vector<T>, radius: T },
    /// `{ x : <normal, x> <= offset }`
    Halfspace { normal: Vector<T>, offset: T },
    /// `{ x : <normal, x> = offset }`
    Hyperplane { normal: Vector<T>, offset: T },
}

impl<T: Real> ConvexSet<T> {
    pub fn new_box(lo: Vector<T>, hi: Vector<T>) -> Result<Self, Error> {
        if lo.dim() != hi.dim() {
            return Err(Error::dims(lo.dim(), hi.dim()));
        }
        if lo.iter().zip(hi.iter()).any(|(&l, &h)| !(l <= h)) {
            return Err(Error::invalid("box needs lo <= hi componentwise"));
        }
        Ok(ConvexSet::Box { lo, hi })
    }

    pub fn new_ball(center: Vector<T>, radius: T) -> Result<Self, Error> {
        if !(radius > T::zero() && radius.is_finite()) {
            return Err(Error::invalid(format!(
                "ball radius must be positive, got {radius}"
            )));
        }
        Ok(ConvexSet::Ball { center, radius })
    }

    pub fn new_halfspace(normal: Vector<T>, offset: T) -> Result<Self, Error> {
        if l2(&normal) == T::zero() {
            return Err(Error::invalid("halfspace normal must be nonzero"));
        }
        Ok(ConvexSet::Halfspace { normal, offset })
    }

    pub fn new_hyperplane(normal: Vector<T>, offset: T) -> Result<Self, Error> {
        if l2(&normal) == T::zero() {
            return Err(Error::invalid("hyperplane normal must be nonzero"));
        }
        Ok(ConvexSet::Hyperplane { normal, offset })
    }

    pub fn dimension(&self) -> usize {
        match self {
            ConvexSet::Box { lo, .. } => lo.dim(),
            ConvexSet::Ball { center, .. } => center.dim(),
            ConvexSet::Halfspace { normal, .. } | ConvexSet::Hyperplane { normal, .. } => {
                normal.dim()
            }
        }
    }

    /// Euclidean nearest-point projection. Idempotent; points already in the
    /// set come back unchanged.
    pub fn project(&self, p: &Vector<T>) -> Result<Vector<T>, Error> {
        if p.dim() != self.dimension() {
            return Err(Error::dims(self.dimension(), p.dim()));
        }
        let projected = match self {
            ConvexSet::Box { lo, hi } => Vector::new(
                p.iter()
                    .zip(lo.iter().zip(hi.iter()))
                    .map(|(&x, (&l, &h))| x.max(l).min(h))
                    .collect(),
            ),
            ConvexSet::Ball { center, radius } => {
                let offset = p - center;
                let dist = l2(&offset);
                if dist <= *radius {
                    p.clone()
                } else {
                    center + &offset.scale(*radius / dist)
                }
            }
            ConvexSet::Halfspace { normal, offset } => {
                let excess = normal.dot(p) - *offset;
                if excess <= T::zero() {
                    p.clone()
                } else {
                    p - &normal.scale(excess / normal.dot(normal))
                }
            }
            ConvexSet::Hyperplane { normal, offset } => {
                let excess = normal.dot(p) - *offset;
                p - &normal.scale(excess / normal.dot(normal))
            }
        };
        Ok(projected)
    }

    /// Euclidean distance from `p` to the set.
    pub fn distance(&self, p: &Vector<T>) -> Result<T, Error> {
        Ok(l2(&(p - &self.project(p)?)))
    }
}

/// Dense linear operator (row-major matrix) between coordinate spaces; its
/// adjoint is the transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> LinearOperator<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, Error> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::invalid("operator matrix must be nonempty"));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid(
                "operator matrix rows must have equal length",
            ));
        }
        let data: Vec<T> = rows.into_iter().flatten().collect();
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("operator matrix entries must be finite"));
        }
        Ok(Self {
            rows: data.len() / cols,
            cols,
            data,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![T::one(); n])
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        assert!(n > 0, "diagonal operator needs at least one entry");
        let mut data = vec![T::zero(); n * n];
        for (i, &e) in entries.iter().enumerate() {
            data[i * n + i] = e;
        }
        Self {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> T {
        self.data[row * self.cols + col]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == T::zero())
    }

    /// `T v`: maps a `cols`-vector to a `rows`-vector.
    pub fn apply(&self, v: &Vector<T>) -> Result<Vector<T>, Error> {
        if v.dim() != self.cols {
            return Err(Error::dims(self.cols, v.dim()));
        }
        Ok(Vector::new(
            (0..self.rows)
                .map(|r| (0..self.cols).fold(T::zero(), |acc, c| acc + self.entry(r, c) * v[c]))
                .collect(),
        ))
    }

    /// `T* v`: the transpose applied to a `rows`-vector.
    pub fn adjoint_apply(&self, v: &Vector<T>) -> Result<Vector<T>, Error> {
        if v.dim() != self.rows {
            return Err(Error::dims(self.rows, v.dim()));
        }
        Ok(Vector::new(
            (0..self.cols)
                .map(|c| (0..self.rows).fold(T::zero(), |acc, r| acc + self.entry(r, c) * v[r]))
                .collect(),
        ))
    }
}

/// Estimates the spectral norm of `op` by power iteration on `T* T`, then
/// multiplies by the safety factor 1.01 so the estimate does not fall below
/// the true norm at the iteration's tolerance.
///
/// The run is deterministic: it starts from the normalized all-ones vector
/// and falls back to basis vectors in order if the Gram product annihilates
/// a start (possible when the start lies in the kernel).
pub fn operator_norm<T: Real>(
    op: &LinearOperator<T>,
    tol: T,
    max_iters: usize,
) -> Result<T, Error> {
    if op.is_zero() {
        return Err(Error::invalid("operator norm of the zero operator"));
    }
    if !(tol > T::zero()) || max_iters == 0 {
        return Err(Error::invalid(
            "operator_norm needs tol > 0 and max_iters >= 1",
        ));
    }
    let safety = T::of(1.01);
    let n = op.cols();

    let mut starts = Vec::with_capacity(n + 1);
    starts.push(Vector::new(vec![T::one(); n]).scale(T::of(1.0 / (n as f64).sqrt())));
    for i in 0..n {
        let mut e = vec![T::zero(); n];
        e[i] = T::one();
        starts.push(Vector::new(e));
    }

    'starts: for start in &starts {
        let mut v = start.clone();
        let mut previous = T::zero();
        for _ in 0..max_iters {
            let w = op.adjoint_apply(&op.apply(&v)?)?;
            let w_norm = l2(&w);
            if w_norm == T::zero() {
                continue 'starts;
            }
            let rayleigh = v.dot(&w);
            let estimate = rayleigh.max(T::zero()).sqrt();
            v = w.scale(w_norm.recip());
            if (estimate - previous).abs() <= tol * estimate.max(T::one()) {
                return Ok(estimate * safety);
            }
            previous = estimate;
        }
        return Ok(previous * safety);
    }
    // Unreachable for a nonzero operator: some basis vector survives T* T.
    Err(Error::invalid("power iteration collapsed on every start"))
}

/// A split convex feasibility instance: find `x` in `C` whose image `T x`
/// lies in `Q`. The operator may be rectangular; `C` lives in its domain and
/// `Q` in its codomain.
#[derive(Debug, Clone)]
pub struct ScfpProblem<T: Real> {
    domain_set: ConvexSet<T>,
    codomain_set: ConvexSet<T>,
    operator: LinearOperator<T>,
    norm_estimate: T,
}

impl<T: Real> ScfpProblem<T> {
    /// Builds a problem, estimating the operator norm by power iteration.
    pub fn new(
        domain_set: ConvexSet<T>,
        codomain_set: ConvexSet<T>,
        operator: LinearOperator<T>,
    ) -> Result<Self, Error> {
        let estimate = operator_norm(&operator, T::of(1e-13), 200_000)?;
        Self::with_norm_estimate(domain_set, codomain_set, operator, estimate)
    }

    /// Builds a problem with a caller-supplied norm estimate. The estimate
    /// must not undershoot the true spectral norm, or the correction step in
    /// the fixed-point operator loses its nonexpansive character.
    pub fn with_norm_estimate(
        domain_set: ConvexSet<T>,
        codomain_set: ConvexSet<T>,
        operator: LinearOperator<T>,
        norm_estimate: T,
    ) -> Result<Self, Error> {
        if domain_set.dimension() != operator.cols() {
            return Err(Error::dims(operator.cols(), domain_set.dimension()));
        }
        if codomain_set.dimension() != operator.rows() {
            return Err(Error::dims(operator.rows(), codomain_set.dimension()));
        }
        if !(norm_estimate > T::zero() && norm_estimate.is_finite()) {
            return Err(Error::invalid(format!(
                "norm estimate must be positive, got {norm_estimate}"
            )));
        }
        Ok(Self {
            domain_set,
            codomain_set,
            operator,
            norm_estimate,
        })
    }

    pub fn domain_set(&self) -> &ConvexSet<T> {
        &self.domain_set
    }

    pub fn codomain_set(&self) -> &ConvexSet<T> {
        &self.codomain_set
    }

    pub fn operator(&self) -> &LinearOperator<T> {
        &self.operator
    }

    pub fn norm_estimate(&self) -> T {
        self.norm_estimate
    }

    pub(crate) fn apply_fixed_point(&self, p: &Vector<T>) -> Result<Vector<T>, Error> {
        let image = self.operator.apply(p)?;
        let residual = &self.codomain_set.project(&image)? - &image;
        let correction = self
            .operator
            .adjoint_apply(&residual)?
            .scale((self.norm_estimate * self.norm_estimate).recip());
        self.domain_set.project(&(p + &correction))
    }

    /// The fixed-point operator `L` as a [`Mapping`] on the domain space with
    /// the Euclidean norm.
    pub fn fixed_point_operator(&self) -> Mapping<T> {
        let space = NormedSpace::new(self.operator.cols(), NormKind::L2)
            .expect("operator has at least one column");
        Mapping::split_feasibility(space, Arc::new(self.clone()))
    }

    /// Feasibility distances `(||x - P_C x||, ||T x - P_Q(T x)||)`.
    pub fn feasibility(&self, x: &Vector<T>) -> Result<(T, T), Error> {
        let dist_c = self.domain_set.distance(x)?;
        let image = self.operator.apply(x)?;
        let dist_q = self.codomain_set.distance(&image)?;
        Ok((dist_c, dist_q))
    }

    /// Runs the Krasnoselskij scheme on the fixed-point operator and reports
    /// the feasibility distances at the final iterate.
    pub fn solve(
        &self,
        config: &IterationConfig<T>,
        p0: &Vector<T>,
    ) -> Result<ScfpSolution<T>, IterationError<T>> {
        let map = self.fixed_point_operator();
        let trace = krasnoselskij(&map, config, p0)?;
        let (dist_c, dist_q) = self.feasibility(trace.final_point())?;
        Ok(ScfpSolution {
            trace,
            dist_c,
            dist_q,
        })
    }
}

/// Outcome of [`ScfpProblem::solve`].
#[derive(Debug, Clone)]
pub struct ScfpSolution<T: Real> {
    pub trace: IterationTrace<T>,
    pub dist_c: T,
    pub dist_q: T,
}
