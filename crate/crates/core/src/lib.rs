//! Fixed-point toolkit for finite-dimensional normed spaces.
//!
//! The crate approximates fixed points of self-maps by averaged
//! (Krasnoselskij) iteration, checks interpolative contraction inequalities
//! on sampled point pairs, computes common fixed points of mapping pairs by
//! an alternating scheme, and solves split convex feasibility problems
//! through a projection-based fixed-point operator.
//!
//! Everything is generic over the scalar type (`f32` or `f64`) through the
//! [`Real`] trait; the `*64` aliases at the crate root cover the common
//! double-precision case.
//!
//! ```
//! use kfix_core::{krasnoselskij, IterationConfig, Mapping, NormKind, NormedSpace, Vector64};
//!
//! let space = NormedSpace::new(3, NormKind::L2).unwrap();
//! let map = Mapping::scale(space, -0.5);
//! let config = IterationConfig::default().with_lambda(0.5);
//! let trace = krasnoselskij(&map, &config, &Vector64::from_f64s(&[3.0, 2.0, 1.0])).unwrap();
//! assert!(trace.limit.is_some());
//! ```

// Negated float comparisons in validation guards are deliberate: `!(x > 0)`
// rejects NaN, the positive rewrite would not.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod comparison;
mod error;
pub mod iterate;
pub mod mapping;
mod scalar;
pub mod scfp;
pub mod space;
pub mod verify;

pub use comparison::{ComparisonFn, MembershipReport};
pub use error::Error;
pub use iterate::{
    alternating, krasnoselskij, lambda_from_enrichment, picard, IterationConfig, IterationError,
    IterationStatus, IterationTrace,
};
pub use mapping::Mapping;
pub use scalar::Real;
pub use scfp::{operator_norm, ConvexSet, LinearOperator, ScfpProblem, ScfpSolution};
pub use space::{affine_combine, NormKind, NormedSpace, Vector};
pub use verify::{
    check_pair, lhs_enriched, lhs_interpolative, rhs_enriched, rhs_interpolative, sample_verify,
    ContractionParams, PairCheck, PairSampler, VerificationReport,
};

pub type Vector64 = Vector<f64>;
pub type Mapping64 = Mapping<f64>;
pub type ComparisonFn64 = ComparisonFn<f64>;
pub type IterationConfig64 = IterationConfig<f64>;
pub type IterationTrace64 = IterationTrace<f64>;
pub type ContractionParams64 = ContractionParams<f64>;
pub type PairSampler64 = PairSampler<f64>;
pub type VerificationReport64 = VerificationReport<f64>;
pub type ConvexSet64 = ConvexSet<f64>;
pub type LinearOperator64 = LinearOperator<f64>;
pub type ScfpProblem64 = ScfpProblem<f64>;
pub type ScfpSolution64 = ScfpSolution<f64>;
