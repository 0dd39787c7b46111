//! Numerical checking of the interpolative and enriched interpolative
//! contraction inequalities over point pairs.
//!
//! The enriched inequality compares
//!
//! ```text
//! ||k(p - q) + Rp - Rq||
//! ```
//!
//! against
//!
//! ```text
//! zeta[ ||(k+1)(p-q)||^b * ||p - Rp||^a * ||q - Rq||^c
//!       * ( (||(k+1)(p-q) + q - Rq|| + ||(k+1)(q-p) + p - Rp||) / 2 )^(1-a-b-c) ]
//! ```
//!
//! for pairs drawn outside the mapping's fixed-point set. Setting `k = 0`
//! recovers the plain interpolative inequality, for which an independent code
//! path is provided so the reduction can be cross-checked.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::comparison::ComparisonFn;
use crate::mapping::Mapping;
use crate::space::Vector;
use crate::{Error, Real};

/// `lhs <= rhs + HOLDS_SLACK` counts as the inequality holding.
pub const HOLDS_SLACK: f64 = 1e-12;

/// Default fixed-point exclusion tolerance, matching the iteration engine's
/// convergence tolerance order.
pub const DEFAULT_FIX_TOL: f64 = 1e-9;

/// At most this many violating pairs are retained as witnesses.
pub const WITNESS_CAP: usize = 16;

/// Exponents `a, b, c` in `(0, 1)` with `a + b + c < 1`, plus the enrichment
/// constant `k >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractionParams<T> {
    a: T,
    b: T,
    c: T,
    k: T,
}

impl<T: Real> ContractionParams<T> {
    pub fn new(a: T, b: T, c: T, k: T) -> Result<Self, Error> {
        for (name, value) in [("a", a), ("b", b), ("c", c)] {
            if !(value > T::zero() && value < T::one()) {
                return Err(Error::invalid(format!(
                    "exponent {name} must lie in (0, 1), got {value}"
                )));
            }
        }
        if !(a + b + c < T::one()) {
            return Err(Error::invalid(format!(
                "exponents must satisfy a + b + c < 1, got {}",
                a + b + c
            )));
        }
        if !(k >= T::zero() && k.is_finite()) {
            return Err(Error::invalid(format!(
                "enrichment constant must be finite and >= 0, got {k}"
            )));
        }
        Ok(Self { a, b, c, k })
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn c(&self) -> T {
        self.c
    }

    pub fn k(&self) -> T {
        self.k
    }

    /// Returns the same exponents with a different enrichment constant.
    pub fn with_k(&self, k: T) -> Result<Self, Error> {
        Self::new(self.a, self.b, self.c, k)
    }

    fn tail_exponent(&self) -> T {
        T::one() - self.a - self.b - self.c
    }
}

/// Left side of the enriched inequality: `||k(p - q) + Rp - Rq||`.
///
/// Panics if the pair does not match the mapping's dimension.
pub fn lhs_enriched<T: Real>(
    params: &ContractionParams<T>,
    map: &Mapping<T>,
    p: &Vector<T>,
    q: &Vector<T>,
) -> T {
    let rp = map.apply(p).expect("lhs_enriched: dimension mismatch");
    let rq = map.apply(q).expect("lhs_enriched: dimension mismatch");
    let shifted = &(p - q).scale(params.k) + &(&rp - &rq);
    map.space()
        .norm(&shifted)
        .expect("operands share the space dimension")
}

/// Right side of the enriched inequality (see the module docs).
///
/// Factors with base 0 and positive exponent contribute 0; a zero exponent
/// contributes 1, the usual continuous extension.
pub fn rhs_enriched<T: Real>(
    params: &ContractionParams<T>,
    zeta: &ComparisonFn<T>,
    map: &Mapping<T>,
    p: &Vector<T>,
    q: &Vector<T>,
) -> T {
    let space = map.space();
    let norm = |v: &Vector<T>| space.norm(v).expect("operands share the space dimension");
    let rp = map.apply(p).expect("rhs_enriched: dimension mismatch");
    let rq = map.apply(q).expect("rhs_enriched: dimension mismatch");
    let kp1 = params.k + T::one();
    let diff = (p - q).scale(kp1);

    let spread = norm(&diff).powf(params.b);
    let res_p = norm(&(p - &rp)).powf(params.a);
    let res_q = norm(&(q - &rq)).powf(params.c);
    let cross =
        T::of(0.5) * (norm(&(&diff + &(q - &rq))) + norm(&(&diff.scale(-T::one()) + &(p - &rp))));
    let tail = cross.powf(params.tail_exponent());

    zeta.eval(spread * res_p * res_q * tail)
        .expect("product of norms is nonnegative")
}

/// Left side of the plain interpolative inequality: `||Rp - Rq||`.
pub fn lhs_interpolative<T: Real>(map: &Mapping<T>, p: &Vector<T>, q: &Vector<T>) -> T {
    let rp = map.apply(p).expect("lhs_interpolative: dimension mismatch");
    let rq = map.apply(q).expect("lhs_interpolative: dimension mismatch");
    map.space()
        .norm(&(&rp - &rq))
        .expect("operands share the space dimension")
}

/// Right side of the plain interpolative inequality:
/// `zeta[ ||p-q||^b ||p-Rp||^a ||q-Rq||^c ((||p-Rq|| + ||q-Rp||)/2)^(1-a-b-c) ]`.
///
/// The enrichment constant in `params` is ignored; this is the independent
/// route used to cross-check the `k = 0` reduction of [`rhs_enriched`].
pub fn rhs_interpolative<T: Real>(
    params: &ContractionParams<T>,
    zeta: &ComparisonFn<T>,
    map: &Mapping<T>,
    p: &Vector<T>,
    q: &Vector<T>,
) -> T {
    let space = map.space();
    let norm = |v: &Vector<T>| space.norm(v).expect("operands share the space dimension");
    let rp = map.apply(p).expect("rhs_interpolative: dimension mismatch");
    let rq = map.apply(q).expect("rhs_interpolative: dimension mismatch");

    let spread = norm(&(p - q)).powf(params.b);
    let res_p = norm(&(p - &rp)).powf(params.a);
    let res_q = norm(&(q - &rq)).powf(params.c);
    let cross = T::of(0.5) * (norm(&(p - &rq)) + norm(&(q - &rp)));
    let tail = cross.powf(params.tail_exponent());

    zeta.eval(spread * res_p * res_q * tail)
        .expect("product of norms is nonnegative")
}

/// Evaluation of the enriched inequality at one pair. Pairs touching the
/// fixed-point set (residual below the fix tolerance) are skipped, since the
/// inequality is only required away from fixed points.
#[derive(Debug, Clone)]
pub struct PairCheck<T: Real> {
    pub p: Vector<T>,
    pub q: Vector<T>,
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
    pub skipped: bool,
}

/// Checks a single pair; skipped pairs carry zero lhs/rhs and hold vacuously.
pub fn check_pair<T: Real>(
    params: &ContractionParams<T>,
    zeta: &ComparisonFn<T>,
    map: &Mapping<T>,
    p: &Vector<T>,
    q: &Vector<T>,
    fix_tol: T,
) -> PairCheck<T> {
    if map.fix_residual(p) < fix_tol || map.fix_residual(q) < fix_tol {
        return PairCheck {
            p: p.clone(),
            q: q.clone(),
            lhs: T::zero(),
            rhs: T::zero(),
            holds: true,
            skipped: true,
        };
    }
    let lhs = lhs_enriched(params, map, p, q);
    let rhs = rhs_enriched(params, zeta, map, p, q);
    PairCheck {
        p: p.clone(),
        q: q.clone(),
        lhs,
        rhs,
        holds: lhs <= rhs + T::of(HOLDS_SLACK),
        skipped: false,
    }
}

/// Pair source for [`sample_verify`]: optional explicitly injected pairs
/// followed by `n_pairs` pairs drawn uniformly from the box `[lo, hi]`,
/// deterministically from `seed`.
#[derive(Debug, Clone)]
pub struct PairSampler<T: Real> {
    pub lo: Vector<T>,
    pub hi: Vector<T>,
    pub n_pairs: usize,
    pub seed: u64,
    pub injected: Vec<(Vector<T>, Vector<T>)>,
}

impl<T: Real> PairSampler<T> {
    pub fn uniform(lo: Vector<T>, hi: Vector<T>, n_pairs: usize, seed: u64) -> Self {
        Self {
            lo,
            hi,
            n_pairs,
            seed,
            injected: Vec::new(),
        }
    }

    pub fn with_injected(mut self, pairs: Vec<(Vector<T>, Vector<T>)>) -> Self {
        self.injected = pairs;
        self
    }

    fn validate(&self, dimension: usize) -> Result<(), Error> {
        if self.lo.dim() != dimension {
            return Err(Error::dims(dimension, self.lo.dim()));
        }
        if self.hi.dim() != dimension {
            return Err(Error::dims(dimension, self.hi.dim()));
        }
        if self
            .lo
            .iter()
            .zip(self.hi.iter())
            .any(|(&lo, &hi)| !(hi > lo))
        {
            return Err(Error::invalid(
                "sampling box must have positive volume (hi > lo componentwise)",
            ));
        }
        if self.n_pairs == 0 {
            return Err(Error::invalid("n_pairs must be >= 1"));
        }
        for (p, q) in &self.injected {
            if p.dim() != dimension || q.dim() != dimension {
                return Err(Error::dims(dimension, p.dim().min(q.dim())));
            }
        }
        Ok(())
    }
}

/// Aggregate outcome of a pair sweep. `worst_margin` is the minimum of
/// `rhs - lhs` over evaluated pairs (`None` when every pair was skipped);
/// nonnegative margins mean the inequality held with slack.
#[derive(Debug, Clone)]
pub struct VerificationReport<T: Real> {
    pub n_pairs: usize,
    pub n_skipped: usize,
    pub n_violations: usize,
    pub worst_margin: Option<T>,
    pub witnesses: Vec<PairCheck<T>>,
}

/// Sweeps the enriched inequality over sampled pairs.
///
/// The sweep is deterministic given the sampler's seed, and the report is a
/// sampled statement about the drawn pairs only, not a proof over the box.
pub fn sample_verify<T: Real>(
    params: &ContractionParams<T>,
    zeta: &ComparisonFn<T>,
    map: &Mapping<T>,
    sampler: &PairSampler<T>,
    fix_tol: T,
) -> Result<VerificationReport<T>, Error> {
    let dimension = map.space().dimension();
    sampler.validate(dimension)?;
    if !(fix_tol > T::zero()) {
        return Err(Error::invalid("fix tolerance must be positive"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(sampler.seed);
    let draw = |rng: &mut ChaCha8Rng| {
        Vector::new(
            sampler
                .lo
                .iter()
                .zip(sampler.hi.iter())
                .map(|(&lo, &hi)| lo + T::of(rng.gen::<f64>()) * (hi - lo))
                .collect(),
        )
    };

    let mut n_skipped = 0;
    let mut n_violations = 0;
    let mut worst_margin: Option<T> = None;
    let mut witnesses = Vec::new();
    let total = sampler.injected.len() + sampler.n_pairs;

    for index in 0..total {
        let (p, q) = if index < sampler.injected.len() {
            sampler.injected[index].clone()
        } else {
            let p = draw(&mut rng);
            let q = draw(&mut rng);
            (p, q)
        };
        let check = check_pair(params, zeta, map, &p, &q, fix_tol);
        if check.skipped {
            n_skipped += 1;
            continue;
        }
        let margin = check.rhs - check.lhs;
        if worst_margin.is_none_or(|w| margin < w) {
            worst_margin = Some(margin);
        }
        if !check.holds {
            n_violations += 1;
            if witnesses.len() < WITNESS_CAP {
                witnesses.push(check);
            }
        }
    }

    Ok(VerificationReport {
        n_pairs: total,
        n_skipped,
        n_violations,
        worst_margin,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{NormKind, NormedSpace};

    fn v(xs: &[f64]) -> Vector<f64> {
        Vector::from_f64s(xs)
    }

    /// Example setup on 2x2 matrices: R(A) = -A/4 with k = 1/4.
    fn matrix_quarter() -> (ContractionParams<f64>, ComparisonFn<f64>, Mapping<f64>) {
        let space = NormedSpace::new(4, NormKind::MatrixMax { rows: 2, cols: 2 }).unwrap();
        let map = Mapping::scale(space, -0.25);
        let params = ContractionParams::new(0.3, 0.3, 0.3, 0.25).unwrap();
        let zeta = ComparisonFn::linear(2.0 / 3.0).unwrap();
        (params, zeta, map)
    }

    /// Example setup on R^3 with the l1 norm: R(z) = -z/2 with k = 1/2.
    fn halving_l1() -> Mapping<f64> {
        let space = NormedSpace::new(3, NormKind::L1).unwrap();
        Mapping::scale(space, -0.5)
    }

    #[test]
    fn lhs_vanishes_when_enrichment_cancels_the_map() {
        let (params, _, map) = matrix_quarter();
        let p = v(&[1.0, -2.0, 0.3, 4.0]);
        let q = v(&[0.1, 0.2, -0.7, 1.5]);
        assert_eq!(lhs_enriched(&params, &map, &p, &q), 0.0);

        let map3 = halving_l1();
        let params3 = ContractionParams::new(0.125, 0.5, 0.125, 0.5).unwrap();
        let x = v(&[2.0, 2.0, 2.0]);
        let y = v(&[-2.0, -2.0, -2.0]);
        assert_eq!(lhs_enriched(&params3, &map3, &x, &y), 0.0);
    }

    #[test]
    fn lhs_is_zero_for_identical_arguments() {
        let map = halving_l1();
        let params = ContractionParams::new(0.2, 0.2, 0.2, 0.0).unwrap();
        let p = v(&[1.0, 2.0, 3.0]);
        assert_eq!(lhs_enriched(&params, &map, &p, &p), 0.0);
    }

    #[test]
    fn rhs_factors_match_independent_recomputation() {
        // Direct factor-by-factor recomputation of the witness pair.
        let map = halving_l1();
        let params = ContractionParams::new(0.125, 0.5, 0.125, 0.0).unwrap();
        let zeta = ComparisonFn::linear(1.0 / 14.0).unwrap();
        let x = v(&[2.0, 2.0, 2.0]);
        let y = v(&[-2.0, -2.0, -2.0]);

        let f_spread = 12.0f64.powf(0.5);
        let f_res = 9.0f64.powf(0.125);
        let f_cross = 3.0f64.powf(0.25);
        let product = f_spread * f_res * f_res * f_cross;
        assert!((f_spread - 3.464).abs() < 1e-3);
        assert!((f_res - 1.316).abs() < 1e-3);
        assert!((f_cross - 1.316).abs() < 1e-3);

        let got = rhs_enriched(&params, &zeta, &map, &x, &y);
        assert!((got - product / 14.0).abs() < 1e-12);
        // The recomputed product is ~7.896, far from 13.67664; either way the
        // bound stays below the lhs of 6.
        assert!((product - 7.896444077714953).abs() < 1e-9);
        assert!(got < 6.0);
    }

    #[test]
    fn rhs_vanishes_for_identical_nonfixed_arguments() {
        let map = halving_l1();
        let params = ContractionParams::new(0.125, 0.5, 0.125, 0.5).unwrap();
        let zeta = ComparisonFn::linear(1.0 / 14.0).unwrap();
        let p = v(&[1.0, 1.0, 1.0]);
        assert_eq!(rhs_enriched(&params, &zeta, &map, &p, &p), 0.0);
    }

    #[test]
    fn check_pair_holds_with_zero_lhs_on_matrix_example() {
        let (params, zeta, map) = matrix_quarter();
        let p = v(&[3.0, 1.0, -2.0, 0.5]);
        let q = v(&[0.4, -1.2, 2.2, 1.0]);
        let check = check_pair(&params, &zeta, &map, &p, &q, 1e-9);
        assert!(!check.skipped);
        assert!(check.holds);
        assert_eq!(check.lhs, 0.0);
    }

    #[test]
    fn check_pair_finds_the_interpolative_violation() {
        let map = halving_l1();
        let params = ContractionParams::new(0.125, 0.5, 0.125, 0.0).unwrap();
        let zeta = ComparisonFn::linear(1.0 / 14.0).unwrap();
        let x = v(&[2.0, 2.0, 2.0]);
        let y = v(&[-2.0, -2.0, -2.0]);
        let check = check_pair(&params, &zeta, &map, &x, &y, 1e-9);
        assert!(!check.skipped);
        assert!(!check.holds);
        assert_eq!(check.lhs, 6.0);
        assert_eq!(lhs_interpolative(&map, &x, &y), 6.0);
    }

    #[test]
    fn check_pair_skips_fixed_points() {
        let (params, zeta, map) = matrix_quarter();
        let fixed = Vector::zeros(4);
        let other = v(&[1.0, 0.0, 0.0, 0.0]);
        let check = check_pair(&params, &zeta, &map, &other, &fixed, 1e-9);
        assert!(check.skipped);
        assert!(check.holds);
    }

    #[test]
    fn sweep_of_matrix_example_has_no_violations() {
        let (params, zeta, map) = matrix_quarter();
        let sampler = PairSampler::uniform(
            Vector::from_f64s(&[-5.0; 4]),
            Vector::from_f64s(&[5.0; 4]),
            10_000,
            7,
        );
        let report = sample_verify(&params, &zeta, &map, &sampler, 1e-9).unwrap();
        assert_eq!(report.n_pairs, 10_000);
        assert_eq!(report.n_violations, 0);
        assert!(report.worst_margin.unwrap() >= -HOLDS_SLACK);
    }

    #[test]
    fn sweep_with_injected_witness_reports_the_violation() {
        let map = halving_l1();
        let params = ContractionParams::new(0.125, 0.5, 0.125, 0.0).unwrap();
        let zeta = ComparisonFn::linear(1.0 / 14.0).unwrap();
        let witness = (v(&[2.0, 2.0, 2.0]), v(&[-2.0, -2.0, -2.0]));
        let sampler = PairSampler::uniform(
            Vector::from_f64s(&[-5.0; 3]),
            Vector::from_f64s(&[5.0; 3]),
            100,
            11,
        )
        .with_injected(vec![witness]);
        let report = sample_verify(&params, &zeta, &map, &sampler, 1e-9).unwrap();
        assert!(report.n_violations >= 1);
        assert_eq!(report.witnesses[0].lhs, 6.0);
    }

    #[test]
    fn sweep_is_deterministic_for_a_fixed_seed() {
        let (params, zeta, map) = matrix_quarter();
        let sampler = PairSampler::uniform(
            Vector::from_f64s(&[-5.0; 4]),
            Vector::from_f64s(&[5.0; 4]),
            500,
            1234,
        );
        let a = sample_verify(&params, &zeta, &map, &sampler, 1e-9).unwrap();
        let b = sample_verify(&params, &zeta, &map, &sampler, 1e-9).unwrap();
        assert_eq!(a.worst_margin, b.worst_margin);
        assert_eq!(a.n_skipped, b.n_skipped);
    }

    #[test]
    fn degenerate_box_is_rejected() {
        let (params, zeta, map) = matrix_quarter();
        let sampler = PairSampler::uniform(
            Vector::from_f64s(&[0.0; 4]),
            Vector::from_f64s(&[0.0; 4]),
            10,
            1,
        );
        assert!(sample_verify(&params, &zeta, &map, &sampler, 1e-9).is_err());
        let empty = PairSampler::uniform(
            Vector::from_f64s(&[-1.0; 4]),
            Vector::from_f64s(&[1.0; 4]),
            0,
            1,
        );
        assert!(sample_verify(&params, &zeta, &map, &empty, 1e-9).is_err());
    }

    #[test]
    fn params_reject_invalid_exponents() {
        assert!(ContractionParams::new(0.4, 0.4, 0.4, 0.0f64).is_err()); // sum >= 1
        assert!(ContractionParams::new(0.0, 0.3, 0.3, 0.0f64).is_err());
        assert!(ContractionParams::new(0.3, 1.0, 0.3, 0.0f64).is_err());
        assert!(ContractionParams::new(0.3, 0.3, 0.3, -1.0f64).is_err());
        assert!(ContractionParams::new(0.3, 0.3, 0.3, 0.0f64).is_ok());
    }

    #[test]
    fn swap_symmetry_with_exponent_exchange() {
        let map = halving_l1();
        let zeta = ComparisonFn::linear(0.5).unwrap();
        let params = ContractionParams::new(0.2, 0.3, 0.1, 0.7).unwrap();
        let swapped = ContractionParams::new(0.1, 0.3, 0.2, 0.7).unwrap();
        let p = v(&[1.0, -2.0, 0.5]);
        let q = v(&[0.3, 1.1, -0.4]);
        assert_eq!(
            lhs_enriched(&params, &map, &p, &q),
            lhs_enriched(&params, &map, &q, &p)
        );
        let forward = rhs_enriched(&params, &zeta, &map, &p, &q);
        let backward = rhs_enriched(&swapped, &zeta, &map, &q, &p);
        assert!((forward - backward).abs() < 1e-12);
    }
}
