//! Comparison functions: nondecreasing self-maps of `[0, inf)` whose iterates
//! vanish pointwise. Such functions necessarily satisfy `zeta(t) < t` for
//! `t > 0` and `zeta(0) = 0`, and they drive every contraction condition in
//! this crate.
//!
//! Membership in the class is undecidable numerically for an arbitrary
//! function, so [`ComparisonFn::check_membership`] only ever produces a
//! *sampled certificate* over a finite grid, never a proof.

use std::fmt;
use std::sync::Arc;

use crate::{Error, Real};

/// Absolute slack absorbed by the monotonicity check, so that rounding noise
/// on a genuinely nondecreasing function does not register as a violation.
pub const MONOTONE_SLACK: f64 = 1e-12;

#[derive(Clone)]
enum ZetaKind<T: Real> {
    Linear {
        c: T,
    },
    PowerScaled {
        c: T,
        p: T,
    },
    Custom {
        f: Arc<dyn Fn(T) -> T + Send + Sync>,
    },
}

/// A scalar comparison function `zeta: [0, inf) -> [0, inf)`.
#[derive(Clone)]
pub struct ComparisonFn<T: Real> {
    kind: ZetaKind<T>,
}

impl<T: Real> fmt::Debug for ComparisonFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ZetaKind::Linear { c } => write!(f, "ComparisonFn::linear({c:?})"),
            ZetaKind::PowerScaled { c, p } => {
                write!(f, "ComparisonFn::power_scaled({c:?}, {p:?})")
            }
            ZetaKind::Custom { .. } => write!(f, "ComparisonFn::custom(..)"),
        }
    }
}

impl<T: Real> ComparisonFn<T> {
    /// `zeta(t) = c * t` with `0 <= c < 1`.
    pub fn linear(c: T) -> Result<Self, Error> {
        if !(c >= T::zero() && c < T::one()) {
            return Err(Error::invalid(format!(
                "linear comparison function needs 0 <= c < 1, got {c}"
            )));
        }
        Ok(Self {
            kind: ZetaKind::Linear { c },
        })
    }

    /// `zeta(t) = c * t^p` with `c >= 0` and `p > 0`.
    ///
    /// The constructor only guarantees `zeta(0) = 0` and nonnegativity;
    /// whether a given `(c, p)` pair actually has vanishing iterates must be
    /// certified through [`check_membership`](Self::check_membership).
    pub fn power_scaled(c: T, p: T) -> Result<Self, Error> {
        if !(c >= T::zero() && c.is_finite()) {
            return Err(Error::invalid(format!(
                "power-scaled comparison function needs c >= 0, got {c}"
            )));
        }
        if !(p > T::zero() && p.is_finite()) {
            return Err(Error::invalid(format!(
                "power-scaled comparison function needs p > 0, got {p}"
            )));
        }
        Ok(Self {
            kind: ZetaKind::PowerScaled { c, p },
        })
    }

    /// Wraps a user-supplied scalar function.
    ///
    /// Construction checks that `f(0) == 0` and that `f` is nonnegative on
    /// the default grid; everything beyond that sanity check is the caller's
    /// responsibility until certified via `check_membership`.
    pub fn custom(f: impl Fn(T) -> T + Send + Sync + 'static) -> Result<Self, Error> {
        if f(T::zero()) != T::zero() {
            return Err(Error::invalid("comparison function must map 0 to 0"));
        }
        for &t in &Self::default_grid() {
            let y = f(t);
            if y < T::zero() || y.is_nan() {
                return Err(Error::invalid(format!(
                    "comparison function is negative or NaN at t = {t}"
                )));
            }
        }
        Ok(Self {
            kind: ZetaKind::Custom { f: Arc::new(f) },
        })
    }

    /// 32 logarithmically spaced points spanning `[1e-6, 1e3]`.
    pub fn default_grid() -> Vec<T> {
        let n = 32;
        (0..n)
            .map(|i| T::of(10f64.powf(-6.0 + 9.0 * i as f64 / (n - 1) as f64)))
            .collect()
    }

    pub fn default_n_max() -> usize {
        200
    }

    pub fn default_tol() -> T {
        T::of(1e-9)
    }

    fn apply(&self, t: T) -> T {
        match &self.kind {
            ZetaKind::Linear { c } => *c * t,
            ZetaKind::PowerScaled { c, p } => *c * t.powf(*p),
            ZetaKind::Custom { f } => f(t),
        }
    }

    /// Evaluates `zeta(t)` for `t >= 0`.
    pub fn eval(&self, t: T) -> Result<T, Error> {
        if t < T::zero() {
            return Err(Error::Domain(format!(
                "comparison functions are defined on [0, inf), got t = {t}"
            )));
        }
        Ok(self.apply(t))
    }

    /// Evaluates the n-fold composition `zeta^n(t)`; `zeta^0(t) = t`.
    pub fn iterate(&self, t: T, n: usize) -> Result<T, Error> {
        let mut value = t;
        if t < T::zero() {
            return Err(Error::Domain(format!(
                "comparison functions are defined on [0, inf), got t = {t}"
            )));
        }
        for _ in 0..n {
            value = self.apply(value);
        }
        Ok(value)
    }

    /// Certifies class membership on a finite grid.
    ///
    /// The result is a sampled certificate with the documented `n_max` and
    /// `tol`, not a proof: a function can pass on every grid point and still
    /// fail off the grid.
    pub fn check_membership(
        &self,
        grid: &[T],
        n_max: usize,
        tol: T,
    ) -> Result<MembershipReport<T>, Error> {
        if grid.is_empty() {
            return Err(Error::invalid("membership grid must be nonempty"));
        }
        if grid.iter().any(|&t| !(t > T::zero()) || !t.is_finite()) {
            return Err(Error::invalid("membership grid entries must be positive"));
        }
        if n_max == 0 {
            return Err(Error::invalid("n_max must be >= 1"));
        }
        if !(tol > T::zero()) {
            return Err(Error::invalid("tol must be positive"));
        }

        let mut sorted = grid.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("grid entries are finite"));

        let slack = T::of(MONOTONE_SLACK);
        let mut nondecreasing_ok = true;
        let mut iterates_vanish_ok = true;
        let mut strict_below_identity_ok = true;
        let mut worst: Option<(T, T)> = None;
        let mut record = |t: T, detail: T| {
            if worst.is_none_or(|(_, d)| detail > d) {
                worst = Some((t, detail));
            }
        };

        for pair in sorted.windows(2) {
            let (lo, hi) = (pair[0], pair[1]);
            let drop = self.apply(lo) - self.apply(hi);
            if drop > slack {
                nondecreasing_ok = false;
                record(lo, drop);
            }
        }
        for &t in &sorted {
            let tail = self.iterate(t, n_max)?;
            if !(tail < tol) {
                iterates_vanish_ok = false;
                record(t, tail);
            }
            let y = self.apply(t);
            if !(y < t) {
                strict_below_identity_ok = false;
                record(t, y - t);
            }
        }

        Ok(MembershipReport {
            nondecreasing_ok,
            iterates_vanish_ok,
            strict_below_identity_ok,
            worst_violation: worst,
        })
    }
}

/// Outcome of a sampled membership check. `worst_violation` carries the grid
/// point with the largest violation magnitude and is present exactly when at
/// least one flag is false.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport<T> {
    pub nondecreasing_ok: bool,
    pub iterates_vanish_ok: bool,
    pub strict_below_identity_ok: bool,
    pub worst_violation: Option<(T, T)>,
}

impl<T> MembershipReport<T> {
    pub fn is_member(&self) -> bool {
        self.nondecreasing_ok && self.iterates_vanish_ok && self.strict_below_identity_ok
    }
}
