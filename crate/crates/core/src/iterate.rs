//! Picard, Krasnoselskij, and alternating two-map iteration with stopping
//! rules, cycle detection, and full trace capture.
//!
//! All three schemes stop on the first satisfied rule:
//!
//! * step norm below `tol` (converged; the alternating scheme additionally
//!   requires both raw fix-residuals below `tol`, since a small step alone
//!   cannot tell a common fixed point from a two-cycle between the two maps'
//!   fixed-point sets),
//! * a revisit of a recent iterate (cycle detected),
//! * the iteration budget (max iters reached).

use std::io::Write;

use crate::mapping::Mapping;
use crate::space::{affine_combine, NormedSpace, Vector};
use crate::{Error, Real};

/// Tolerance for declaring two iterates equal during cycle detection.
pub const CYCLE_TOL: f64 = 1e-9;

/// A candidate cycle only counts if the iterates moved at least this factor
/// times [`CYCLE_TOL`] within the period, so a slowly converging run is never
/// misread as a cycle.
const CYCLE_MOVEMENT_FACTOR: f64 = 10.0;

/// Controls for a single iteration run.
#[derive(Debug, Clone, Copy)]
pub struct IterationConfig<T> {
    /// Averaging parameter in (0, 1].
    pub lambda: T,
    /// Hard cap on the number of steps. Must be >= 1.
    pub max_iters: usize,
    /// Stop once the step norm drops below this. Must be positive.
    pub tol: T,
    /// How many trailing iterates to scan for revisits; 0 disables cycle
    /// detection.
    pub cycle_window: usize,
}

impl<T: Real> Default for IterationConfig<T> {
    fn default() -> Self {
        Self {
            lambda: T::of(0.5),
            max_iters: 10_000,
            tol: T::of(1e-10),
            cycle_window: 0,
        }
    }
}

impl<T: Real> IterationConfig<T> {
    pub fn with_lambda(mut self, lambda: T) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }

    pub fn with_tol(mut self, tol: T) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_cycle_window(mut self, cycle_window: usize) -> Self {
        self.cycle_window = cycle_window;
        self
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(self.lambda > T::zero() && self.lambda <= T::one()) {
            return Err(Error::invalid(format!(
                "lambda must lie in (0, 1], got {}",
                self.lambda
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::invalid("max_iters must be >= 1"));
        }
        if !(self.tol > T::zero() && self.tol.is_finite()) {
            return Err(Error::invalid(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}

/// The averaging parameter `1 / (k + 1)` guaranteed to work for an enriched
/// contraction with constant `k >= 0`. Callers may override it.
pub fn lambda_from_enrichment<T: Real>(k: T) -> Result<T, Error> {
    if !(k >= T::zero() && k.is_finite()) {
        return Err(Error::invalid(format!(
            "enrichment constant must be finite and >= 0, got {k}"
        )));
    }
    Ok((k + T::one()).recip())
}

/// Why a run stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IterationStatus {
    Converged,
    MaxItersReached,
    /// The current iterate matched one seen `period` steps earlier.
    CycleDetected {
        period: usize,
    },
}

/// Ordered record of a run: every iterate, every step norm, the final status,
/// and the limit point when the run converged.
///
/// Invariant: `step_norms.len() == iterates.len() - 1`.
#[derive(Debug, Clone)]
pub struct IterationTrace<T: Real> {
    pub iterates: Vec<Vector<T>>,
    pub step_norms: Vec<T>,
    pub status: IterationStatus,
    pub limit: Option<Vector<T>>,
}

impl<T: Real> IterationTrace<T> {
    /// Number of steps actually taken.
    pub fn iterations(&self) -> usize {
        self.step_norms.len()
    }

    pub fn final_point(&self) -> &Vector<T> {
        self.iterates.last().expect("traces hold at least p0")
    }

    /// Writes the trace as CSV: header `n,step_norm,x0,...`, one row per
    /// iterate, an empty step norm on row 0, and every number printed with
    /// 17 significant digits so the file round-trips exactly.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let dim = self.iterates[0].dim();
        write!(out, "n,step_norm")?;
        for i in 0..dim {
            write!(out, ",x{i}")?;
        }
        writeln!(out)?;
        for (n, point) in self.iterates.iter().enumerate() {
            write!(out, "{n}")?;
            if n == 0 {
                write!(out, ",")?;
            } else {
                write!(out, ",{:.16e}", self.step_norms[n - 1])?;
            }
            for x in point.iter() {
                write!(out, ",{x:.16e}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is ascii")
    }
}

/// Iteration failure. `NonFinite` carries the partial trace accumulated
/// before the overflow.
#[derive(Debug, thiserror::Error)]
pub enum IterationError<T: Real> {
    #[error(transparent)]
    Invalid(#[from] Error),
    #[error("non-finite iterate produced at step {step}")]
    NonFinite {
        step: usize,
        iterates: Vec<Vector<T>>,
        step_norms: Vec<T>,
    },
}

/// Krasnoselskij scheme `p_{m+1} = (1 - lambda) p_m + lambda R p_m`.
///
/// Step for step this is the Picard iteration of `map.averaged(lambda)`; the
/// two routes produce bit-identical traces.
pub fn krasnoselskij<T: Real>(
    map: &Mapping<T>,
    config: &IterationConfig<T>,
    p0: &Vector<T>,
) -> Result<IterationTrace<T>, IterationError<T>> {
    config.validate()?;
    let lambda = config.lambda;
    run(
        map.space(),
        config,
        p0,
        |_, p| affine_combine(lambda, p, &map.apply(p)?),
        |_| true,
    )
}

/// Picard scheme `p_{m+1} = R p_m` (the `lambda = 1` case). Any `lambda` in
/// the config is ignored.
pub fn picard<T: Real>(
    map: &Mapping<T>,
    config: &IterationConfig<T>,
    p0: &Vector<T>,
) -> Result<IterationTrace<T>, IterationError<T>> {
    let config = IterationConfig {
        lambda: T::one(),
        ..*config
    };
    config.validate()?;
    run(map.space(), &config, p0, |_, p| map.apply(p), |_| true)
}

/// Alternating scheme for a mapping pair: odd-indexed iterates come from
/// `R_lambda`, even-indexed ones from `S_lambda`. Convergence requires the
/// step norm *and* both raw fix-residuals below `tol`, certifying a common
/// fixed point.
pub fn alternating<T: Real>(
    map_r: &Mapping<T>,
    map_s: &Mapping<T>,
    config: &IterationConfig<T>,
    p0: &Vector<T>,
) -> Result<IterationTrace<T>, IterationError<T>> {
    config.validate()?;
    if map_r.space() != map_s.space() {
        return Err(Error::invalid("alternating maps must share one space").into());
    }
    let avg_r = map_r.averaged(config.lambda)?;
    let avg_s = map_s.averaged(config.lambda)?;
    let tol = config.tol;
    run(
        map_r.space(),
        config,
        p0,
        |m, p| {
            if m % 2 == 0 {
                avg_r.apply(p)
            } else {
                avg_s.apply(p)
            }
        },
        |x| map_r.fix_residual(x) < tol && map_s.fix_residual(x) < tol,
    )
}

fn run<T: Real>(
    space: NormedSpace,
    config: &IterationConfig<T>,
    p0: &Vector<T>,
    mut step: impl FnMut(usize, &Vector<T>) -> Result<Vector<T>, Error>,
    mut settled: impl FnMut(&Vector<T>) -> bool,
) -> Result<IterationTrace<T>, IterationError<T>> {
    if p0.dim() != space.dimension() {
        return Err(Error::dims(space.dimension(), p0.dim()).into());
    }

    let mut iterates = vec![p0.clone()];
    let mut step_norms: Vec<T> = Vec::new();

    for m in 0..config.max_iters {
        let current = iterates.last().expect("nonempty").clone();
        let next = step(m, &current)?;
        if !next.is_finite() {
            return Err(IterationError::NonFinite {
                step: m + 1,
                iterates,
                step_norms,
            });
        }
        let step_norm = space.norm(&(&next - &current))?;

        // A starting point that is already (within tol) stationary converges
        // with zero recorded steps.
        if m == 0 && step_norm < config.tol && settled(&current) {
            return Ok(IterationTrace {
                iterates,
                step_norms,
                status: IterationStatus::Converged,
                limit: Some(current),
            });
        }

        iterates.push(next.clone());
        step_norms.push(step_norm);

        if step_norm < config.tol && settled(&next) {
            return Ok(IterationTrace {
                iterates,
                step_norms,
                status: IterationStatus::Converged,
                limit: Some(next),
            });
        }

        if config.cycle_window > 0 {
            if let Some(period) = detect_cycle(space, &iterates, &step_norms, config.cycle_window) {
                return Ok(IterationTrace {
                    iterates,
                    step_norms,
                    status: IterationStatus::CycleDetected { period },
                    limit: None,
                });
            }
        }
    }

    Ok(IterationTrace {
        iterates,
        step_norms,
        status: IterationStatus::MaxItersReached,
        limit: None,
    })
}

/// Smallest period `2 <= j <= window` such that the newest iterate revisits
/// the one `j` steps back, provided the iterates genuinely moved in between.
fn detect_cycle<T: Real>(
    space: NormedSpace,
    iterates: &[Vector<T>],
    step_norms: &[T],
    window: usize,
) -> Option<usize> {
    let n = iterates.len();
    let newest = &iterates[n - 1];
    let ctol = T::of(CYCLE_TOL);
    let movement = T::of(CYCLE_MOVEMENT_FACTOR) * ctol;
    for period in 2..=window.min(n - 1) {
        let revisited = &iterates[n - 1 - period];
        let dist = space
            .norm(&(newest - revisited))
            .expect("iterates share the space dimension");
        if dist <= ctol {
            let moved = step_norms[step_norms.len() - period..]
                .iter()
                .fold(T::zero(), |acc, &s| acc.max(s));
            if moved > movement {
                return Some(period);
            }
        }
    }
    None
}
