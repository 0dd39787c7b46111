//! Problem-file schemas and their conversion into core types, plus the JSON
//! shapes the commands write back out.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use kfix_core::{
    ComparisonFn64, ContractionParams64, ConvexSet64, IterationStatus, LinearOperator64, Mapping64,
    NormKind, NormedSpace, PairSampler64, ScfpProblem64, Vector64, VerificationReport64,
};

pub fn to_vector(xs: &[f64], what: &str) -> Result<Vector64> {
    if xs.is_empty() {
        bail!("field `{what}` must be a nonempty array of numbers");
    }
    Ok(Vector64::from_f64s(xs))
}

pub fn from_vector(v: &Vector64) -> Vec<f64> {
    v.as_slice().to_vec()
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormSpec {
    L1,
    L2,
    Linf,
    MatrixMax { rows: usize, cols: usize },
}

impl NormSpec {
    fn to_kind(&self) -> NormKind {
        match self {
            NormSpec::L1 => NormKind::L1,
            NormSpec::L2 => NormKind::L2,
            NormSpec::Linf => NormKind::LInf,
            NormSpec::MatrixMax { rows, cols } => NormKind::MatrixMax {
                rows: *rows,
                cols: *cols,
            },
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MappingSpec {
    Scale {
        alpha: f64,
        dim: usize,
    },
    QuarterTurn,
    Affine {
        #[serde(rename = "A")]
        matrix: Vec<Vec<f64>>,
        b: Vec<f64>,
    },
}

impl MappingSpec {
    fn dimension(&self) -> usize {
        match self {
            MappingSpec::Scale { dim, .. } => *dim,
            MappingSpec::QuarterTurn => 2,
            MappingSpec::Affine { b, .. } => b.len(),
        }
    }

    pub fn build(&self, norm: Option<&NormSpec>) -> Result<Mapping64> {
        let kind = norm.map_or(NormKind::L2, NormSpec::to_kind);
        let space = NormedSpace::new(self.dimension(), kind)
            .context("field `norm` is incompatible with the mapping dimension")?;
        let map = match self {
            MappingSpec::Scale { alpha, .. } => Mapping64::scale(space, *alpha),
            MappingSpec::QuarterTurn => {
                Mapping64::quarter_turn(space).context("field `mapping`")?
            }
            MappingSpec::Affine { matrix, b } => {
                let operator =
                    LinearOperator64::from_rows(matrix.clone()).context("field `mapping.A`")?;
                Mapping64::affine(space, operator, to_vector(b, "mapping.b")?)
                    .context("field `mapping`")?
            }
        };
        Ok(map)
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ZetaSpec {
    Linear { c: f64 },
    PowerScaled { c: f64, p: f64 },
}

impl ZetaSpec {
    pub fn build(&self) -> Result<ComparisonFn64> {
        let zeta = match self {
            ZetaSpec::Linear { c } => ComparisonFn64::linear(*c),
            ZetaSpec::PowerScaled { c, p } => ComparisonFn64::power_scaled(*c, *p),
        };
        zeta.context("field `zeta`")
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IterateProblem {
    pub mapping: MappingSpec,
    #[serde(default)]
    pub norm: Option<NormSpec>,
    #[serde(default)]
    pub lambda: Option<f64>,
    pub p0: Vec<f64>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub max_iters: Option<usize>,
    #[serde(default)]
    pub cycle_window: Option<usize>,
    #[serde(default)]
    pub picard: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSpec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    #[serde(default)]
    pub k: f64,
}

impl ParamsSpec {
    pub fn build(&self) -> Result<ContractionParams64> {
        ContractionParams64::new(self.a, self.b, self.c, self.k).context("field `params`")
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplerSpec {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub n_pairs: usize,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyProblem {
    pub mapping: MappingSpec,
    #[serde(default)]
    pub norm: Option<NormSpec>,
    pub params: ParamsSpec,
    pub zeta: ZetaSpec,
    pub sampler: SamplerSpec,
    #[serde(default)]
    pub witness_pairs: Vec<(Vec<f64>, Vec<f64>)>,
    #[serde(default)]
    pub fix_tol: Option<f64>,
}

impl VerifyProblem {
    pub fn build_sampler(&self, seed_override: Option<u64>) -> Result<PairSampler64> {
        let mut injected = Vec::with_capacity(self.witness_pairs.len());
        for (p, q) in &self.witness_pairs {
            injected.push((
                to_vector(p, "witness_pairs")?,
                to_vector(q, "witness_pairs")?,
            ));
        }
        Ok(PairSampler64::uniform(
            to_vector(&self.sampler.lo, "sampler.lo")?,
            to_vector(&self.sampler.hi, "sampler.hi")?,
            self.sampler.n_pairs,
            seed_override.unwrap_or(self.sampler.seed),
        )
        .with_injected(injected))
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetSpec {
    Box { lo: Vec<f64>, hi: Vec<f64> },
    Ball { center: Vec<f64>, radius: f64 },
    Halfspace { normal: Vec<f64>, offset: f64 },
    Hyperplane { normal: Vec<f64>, offset: f64 },
}

impl SetSpec {
    pub fn build(&self, what: &str) -> Result<ConvexSet64> {
        let set = match self {
            SetSpec::Box { lo, hi } => ConvexSet64::new_box(
                to_vector(lo, &format!("{what}.lo"))?,
                to_vector(hi, &format!("{what}.hi"))?,
            ),
            SetSpec::Ball { center, radius } => {
                ConvexSet64::new_ball(to_vector(center, &format!("{what}.center"))?, *radius)
            }
            SetSpec::Halfspace { normal, offset } => {
                ConvexSet64::new_halfspace(to_vector(normal, &format!("{what}.normal"))?, *offset)
            }
            SetSpec::Hyperplane { normal, offset } => {
                ConvexSet64::new_hyperplane(to_vector(normal, &format!("{what}.normal"))?, *offset)
            }
        };
        set.with_context(|| format!("field `{what}`"))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScfpSpec {
    #[serde(rename = "C")]
    pub c: SetSpec,
    #[serde(rename = "Q")]
    pub q: SetSpec,
    #[serde(rename = "T")]
    pub t: Vec<Vec<f64>>,
    #[serde(default)]
    pub norm_estimate: Option<f64>,
    #[serde(default)]
    pub p0: Option<Vec<f64>>,
    #[serde(default)]
    pub lambda: Option<f64>,
    #[serde(default)]
    pub k: Option<f64>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub max_iters: Option<usize>,
}

impl ScfpSpec {
    pub fn build(&self) -> Result<ScfpProblem64> {
        let c = self.c.build("C")?;
        let q = self.q.build("Q")?;
        let operator = LinearOperator64::from_rows(self.t.clone()).context("field `T`")?;
        let problem = match self.norm_estimate {
            Some(estimate) => ScfpProblem64::with_norm_estimate(c, q, operator, estimate),
            None => ScfpProblem64::new(c, q, operator),
        };
        problem.context("fields `C`/`Q`/`T` are inconsistent")
    }
}

pub fn status_str(status: &IterationStatus) -> &'static str {
    match status {
        IterationStatus::Converged => "converged",
        IterationStatus::MaxItersReached => "max_iters_reached",
        IterationStatus::CycleDetected { .. } => "cycle_detected",
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessJson {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Serialize)]
pub struct ReportJson {
    pub n_pairs: usize,
    pub n_skipped: usize,
    pub n_violations: usize,
    pub worst_margin: Option<f64>,
    pub witnesses: Vec<WitnessJson>,
}

impl ReportJson {
    pub fn from_report(report: &VerificationReport64) -> Self {
        Self {
            n_pairs: report.n_pairs,
            n_skipped: report.n_skipped,
            n_violations: report.n_violations,
            worst_margin: report.worst_margin,
            witnesses: report
                .witnesses
                .iter()
                .map(|w| WitnessJson {
                    p: from_vector(&w.p),
                    q: from_vector(&w.q),
                    lhs: w.lhs,
                    rhs: w.rhs,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SolutionJson {
    pub x: Vec<f64>,
    pub iterations: usize,
    #[serde(rename = "dist_C")]
    pub dist_c: f64,
    #[serde(rename = "dist_Q")]
    pub dist_q: f64,
    pub status: String,
}
