//! Measurable functions on the unit-interval probability space Ω = (0, 1)
//! with Lebesgue measure, and their integration.
//!
//! Functions are built from closed-form profiles (constants, √|log x|,
//! indicators) by scalar multiples, affine substitution onto a subinterval,
//! and disjoint block unions. The integrator exploits this structure: an
//! affine block contributes its length times the profile integral, a block
//! union contributes the sum over blocks, and only leaf profiles ever reach
//! the adaptive quadrature kernel. Leaves flagged singular at an endpoint
//! are tamed by the substitution x = e^(-t), which maps (0, 1) onto (0, ∞)
//! and turns logarithmic singularities into smooth Gamma-type integrands.

use crate::quad;
use thiserror::Error;

/// Substituted integrals are truncated at this t; e^(-t) is ~1e-304 there,
/// so the a remainder is far below any tolerance this crate works at.
const SUBSTITUTION_CUTOFF: f64 = 700.0;

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("invalid quadrature config: {0}")]
    InvalidConfig(String),
    #[error("quadrature did not converge: best estimate {best:e}, achieved error {achieved:e}, requested {requested:e}")]
    NoConvergence { best: f64, achieved: f64, requested: f64 },
    #[error("integrand is non-finite near x = {x}")]
    NonFinite { x: f64 },
    #[error("block supports overlap: [{lo_a}, {hi_a}) and [{lo_b}, {hi_b})")]
    OverlappingSupports { lo_a: f64, hi_a: f64, lo_b: f64, hi_b: f64 },
    #[error("invalid function: {0}")]
    InvalidFunction(String),
}

/// Half-open interval [lo, hi) inside [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, MeasureError> {
        if !(lo.is_finite() && hi.is_finite()) || lo < 0.0 || hi > 1.0 || lo >= hi {
            return Err(MeasureError::InvalidFunction(format!(
                "support [{lo}, {hi}) is not a subinterval of [0, 1]"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x < self.hi
    }
}

/// Controls the adaptive integrator.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    /// Relative tolerance on the returned value.
    pub rel_tol: f64,
    /// Absolute tolerance floor.
    pub abs_tol: f64,
    /// Maximum bisection depth per interval.
    pub max_depth: u32,
    /// When set, leaves flagged endpoint-singular are integrated through
    /// the exponential substitution instead of raw refinement.
    pub substitute_singularities: bool,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-9, abs_tol: 1e-12, max_depth: 60, substitute_singularities: true }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<(), MeasureError> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(MeasureError::InvalidConfig("tolerances must be strictly positive".into()));
        }
        if self.max_depth < 1 {
            return Err(MeasureError::InvalidConfig("max_depth must be at least 1".into()));
        }
        Ok(())
    }
}

/// Integral value with its accumulated error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub abs_error: f64,
}

/// Structural tag of a [`UnitIntervalFunction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionKind {
    Profile,
    Scaled,
    Affine,
    BlockUnion,
}

#[derive(Debug, Clone)]
pub(crate) enum Node {
    /// Constant c ≥ 0 on all of (0, 1).
    Constant(f64),
    /// √|log x|; endpoint-singular at 0, vanishes at 1.
    SqrtLog,
    /// Indicator of (0, mass).
    Indicator { mass: f64 },
    /// factor · inner, factor > 0.
    Scaled { factor: f64, inner: Box<Node> },
    /// inner((hi - x)/(hi - lo)) on [lo, hi), zero elsewhere. The argument
    /// runs over (0, 1] as x sweeps the half-open support.
    Affine { support: Interval, inner: Box<Node> },
    /// Disjoint union; parts sorted by support, `bounds[i]` caches part i's
    /// support for binary-search evaluation.
    Union { parts: Vec<Node>, bounds: Vec<Interval> },
}

/// A non-negative measurable function on Ω = (0, 1).
#[derive(Debug, Clone)]
pub struct UnitIntervalFunction {
    pub(crate) node: Node,
}

impl UnitIntervalFunction {
    pub fn constant(c: f64) -> Result<Self, MeasureError> {
        if !c.is_finite() || c < 0.0 {
            return Err(MeasureError::InvalidFunction(format!("constant must be finite and non-negative, got {c}")));
        }
        Ok(Self { node: Node::Constant(c) })
    }

    /// The profile √|log x| (all moments finite, unbounded near 0).
    pub fn sqrt_log() -> Self {
        Self { node: Node::SqrtLog }
    }

    /// Indicator of the interval (0, mass).
    pub fn indicator(mass: f64) -> Result<Self, MeasureError> {
        if !(mass > 0.0 && mass <= 1.0) {
            return Err(MeasureError::InvalidFunction(format!("indicator mass must lie in (0, 1], got {mass}")));
        }
        Ok(Self { node: Node::Indicator { mass } })
    }

    pub fn scaled(factor: f64, inner: UnitIntervalFunction) -> Result<Self, MeasureError> {
        if !factor.is_finite() || factor <= 0.0 {
            return Err(MeasureError::InvalidFunction(format!("scale factor must be finite and positive, got {factor}")));
        }
        Ok(Self { node: Node::Scaled { factor, inner: Box::new(inner.node) } })
    }

    /// Places `inner` on `support` by the substitution s = (hi - x)/len,
    /// so the block's value at x is inner(s). Zero outside the support.
    pub fn on_interval(support: Interval, inner: UnitIntervalFunction) -> Self {
        Self { node: Node::Affine { support, inner: Box::new(inner.node) } }
    }

    /// Disjoint union of blocks. Fails if any two supports overlap.
    pub fn block_union(parts: Vec<UnitIntervalFunction>) -> Result<Self, MeasureError> {
        let mut tagged: Vec<(Interval, Node)> =
            parts.into_iter().map(|p| (p.node.support(), p.node)).collect();
        tagged.sort_by(|a, b| a.0.lo.total_cmp(&b.0.lo));
        for w in tagged.windows(2) {
            if w[1].0.lo < w[0].0.hi {
                return Err(MeasureError::OverlappingSupports {
                    lo_a: w[0].0.lo,
                    hi_a: w[0].0.hi,
                    lo_b: w[1].0.lo,
                    hi_b: w[1].0.hi,
                });
            }
        }
        let bounds = tagged.iter().map(|t| t.0).collect();
        let parts = tagged.into_iter().map(|t| t.1).collect();
        Ok(Self { node: Node::Union { parts, bounds } })
    }

    pub fn kind(&self) -> FunctionKind {
        match self.node {
            Node::Constant(_) | Node::SqrtLog | Node::Indicator { .. } => FunctionKind::Profile,
            Node::Scaled { .. } => FunctionKind::Scaled,
            Node::Affine { .. } => FunctionKind::Affine,
            Node::Union { .. } => FunctionKind::BlockUnion,
        }
    }

    /// Value at x ∈ (0, 1).
    pub fn eval(&self, x: f64) -> f64 {
        self.node.eval(x)
    }

    /// Smallest half-open interval carrying all of the mass.
    pub fn support(&self) -> Interval {
        self.node.support()
    }

    pub fn singular_at_zero(&self) -> bool {
        self.node.singular_at_zero()
    }

    /// True when the function is essentially unbounded (its distribution
    /// function stays positive for every threshold).
    pub fn essentially_unbounded(&self) -> bool {
        self.node.essentially_unbounded()
    }
}

impl Node {
    pub(crate) fn eval(&self, x: f64) -> f64 {
        match self {
            Node::Constant(c) => *c,
            Node::SqrtLog => (-x.ln()).max(0.0).sqrt(),
            Node::Indicator { mass } => {
                if x < *mass {
                    1.0
                } else {
                    0.0
                }
            }
            Node::Scaled { factor, inner } => factor * inner.eval(x),
            Node::Affine { support, inner } => {
                if support.contains(x) {
                    inner.eval((support.hi - x) / support.len())
                } else {
                    0.0
                }
            }
            Node::Union { parts, bounds } => {
                // Last part whose lower bound is ≤ x is the only candidate.
                let idx = bounds.partition_point(|iv| iv.lo <= x);
                if idx == 0 {
                    return 0.0;
                }
                let i = idx - 1;
                if x < bounds[i].hi {
                    parts[i].eval(x)
                } else {
                    0.0
                }
            }
        }
    }

    fn support(&self) -> Interval {
        match self {
            Node::Constant(_) | Node::SqrtLog => Interval { lo: 0.0, hi: 1.0 },
            Node::Indicator { mass } => Interval { lo: 0.0, hi: *mass },
            Node::Scaled { inner, .. } => inner.support(),
            Node::Affine { support, .. } => *support,
            Node::Union { bounds, .. } => {
                if bounds.is_empty() {
                    Interval { lo: 0.0, hi: 1.0 }
                } else {
                    Interval { lo: bounds[0].lo, hi: bounds[bounds.len() - 1].hi }
                }
            }
        }
    }

    fn singular_at_zero(&self) -> bool {
        match self {
            Node::SqrtLog => true,
            Node::Constant(_) | Node::Indicator { .. } => false,
            Node::Scaled { inner, .. } => inner.singular_at_zero(),
            Node::Affine { inner, .. } => inner.singular_at_zero(),
            Node::Union { parts, .. } => parts.iter().any(|p| p.singular_at_zero()),
        }
    }

    fn essentially_unbounded(&self) -> bool {
        match self {
            Node::SqrtLog => true,
            Node::Constant(_) | Node::Indicator { .. } => false,
            Node::Scaled { inner, .. } => inner.essentially_unbounded(),
            Node::Affine { inner, .. } => inner.essentially_unbounded(),
            Node::Union { parts, .. } => parts.iter().any(|p| p.essentially_unbounded()),
        }
    }
}

/// Evaluate a disjoint family at x: the value of the single block whose
/// support contains x, or zero. Fails on overlapping supports.
pub fn evaluate_block_union(blocks: &[UnitIntervalFunction], x: f64) -> Result<f64, MeasureError> {
    let union = UnitIntervalFunction::block_union(blocks.to_vec())?;
    Ok(union.eval(x))
}

/// Leaf integration job produced by flattening the structure tree: the leaf
/// profile is integrated over (0, 1) with its values pre-multiplied by
/// `value_factor`, and the result weighted by `measure_factor`.
struct LeafJob<'a> {
    measure_factor: f64,
    value_factor: f64,
    leaf: &'a Node,
}

fn collect_jobs<'a>(node: &'a Node, measure_factor: f64, value_factor: f64, out: &mut Vec<LeafJob<'a>>) {
    match node {
        Node::Constant(_) | Node::SqrtLog | Node::Indicator { .. } => {
            out.push(LeafJob { measure_factor, value_factor, leaf: node });
        }
        Node::Scaled { factor, inner } => collect_jobs(inner, measure_factor, value_factor * factor, out),
        Node::Affine { support, inner } => {
            collect_jobs(inner, measure_factor * support.len(), value_factor, out)
        }
        Node::Union { parts, .. } => {
            for p in parts {
                collect_jobs(p, measure_factor, value_factor, out);
            }
        }
    }
}

/// ∫₀¹ f dx with a certified error estimate.
pub fn integrate(f: &UnitIntervalFunction, cfg: &QuadratureConfig) -> Result<Quadrature, MeasureError> {
    integrate_transformed(f, &|y| y, cfg)
}

/// ∫₀¹ t(f(x)) dx for a transform with t(0) = 0 (gaps between blocks must
/// contribute nothing). This is the common engine behind plain integrals
/// (t = identity), Lp moments (t = y^p) and Orlicz modulars (t = Φ(y/k)).
pub fn integrate_transformed(
    f: &UnitIntervalFunction,
    transform: &dyn Fn(f64) -> f64,
    cfg: &QuadratureConfig,
) -> Result<Quadrature, MeasureError> {
    cfg.validate()?;
    let t0 = transform(0.0);
    if t0 != 0.0 {
        return Err(MeasureError::InvalidFunction(format!(
            "integrand transform must vanish at 0 (got {t0})"
        )));
    }

    let mut jobs = Vec::new();
    collect_jobs(&f.node, 1.0, 1.0, &mut jobs);

    // Magnitude probe (single rule application per piece) to size the
    // relative-error target, then up to two refinement passes in case the
    // probe misjudged the scale.
    let mut scale = run_jobs(&jobs, transform, f64::INFINITY, cfg)?.value.abs();
    for _ in 0..2 {
        let target = cfg.abs_tol.max(cfg.rel_tol * scale);
        let refined = run_jobs(&jobs, transform, target, cfg)?;
        let wanted = cfg.abs_tol.max(cfg.rel_tol * refined.value.abs());
        if refined.abs_error <= wanted {
            return Ok(refined);
        }
        scale = refined.value.abs();
    }
    let target = cfg.abs_tol.max(cfg.rel_tol * scale);
    let last = run_jobs(&jobs, transform, target, cfg)?;
    let wanted = cfg.abs_tol.max(cfg.rel_tol * last.value.abs());
    if last.abs_error <= wanted {
        Ok(last)
    } else {
        Err(MeasureError::NoConvergence { best: last.value, achieved: last.abs_error, requested: wanted })
    }
}

fn run_jobs(
    jobs: &[LeafJob<'_>],
    transform: &dyn Fn(f64) -> f64,
    abs_target: f64,
    cfg: &QuadratureConfig,
) -> Result<Quadrature, MeasureError> {
    let mut value = 0.0;
    let mut error = 0.0;
    let per_job = abs_target / jobs.len().max(1) as f64;
    for job in jobs {
        if job.measure_factor == 0.0 {
            continue;
        }
        // Tolerance for the leaf integral in its own (0,1) coordinates.
        let leaf_tol = per_job / job.measure_factor;
        let q = integrate_leaf(job.leaf, job.value_factor, transform, leaf_tol, cfg)?;
        value += job.measure_factor * q.value;
        error += job.measure_factor * q.abs_error;
        if !value.is_finite() {
            return Err(MeasureError::NonFinite { x: f64::NAN });
        }
    }
    Ok(Quadrature { value, abs_error: error })
}

fn integrate_leaf(
    leaf: &Node,
    value_factor: f64,
    transform: &dyn Fn(f64) -> f64,
    abs_tol: f64,
    cfg: &QuadratureConfig,
) -> Result<Quadrature, MeasureError> {
    // Indicators restrict to their support, where the integrand is constant.
    if let Node::Indicator { mass } = leaf {
        let v = transform(value_factor);
        if !v.is_finite() {
            return Err(MeasureError::NonFinite { x: 0.5 * mass });
        }
        return Ok(Quadrature { value: mass * v, abs_error: mass * v.abs() * f64::EPSILON });
    }

    if leaf.singular_at_zero() && cfg.substitute_singularities {
        return substituted_leaf(leaf, value_factor, transform, abs_tol, cfg);
    }

    let g = |x: f64| transform(value_factor * leaf.eval(x));
    let out = quad::adaptive(&g, 0.0, 1.0, abs_tol, cfg.max_depth);
    finish(out, abs_tol)
}

/// Integrate a 0-singular leaf through x = e^(-t): the integral becomes
/// ∫₀^∞ t(vf · leaf(e^(-t))) e^(-t) dt, truncated where e^(-t) underflows.
fn substituted_leaf(
    leaf: &Node,
    value_factor: f64,
    transform: &dyn Fn(f64) -> f64,
    abs_tol: f64,
    cfg: &QuadratureConfig,
) -> Result<Quadrature, MeasureError> {
    let g = |t: f64| {
        let x = (-t).exp();
        transform(value_factor * leaf.eval(x)) * x
    };
    // Dyadic segments [0,1], [1,2], [2,4], ... up to the cutoff; the weight
    // e^(-t) makes late segments vanish.
    let mut cuts = vec![0.0, 1.0];
    let mut hi = 1.0;
    while hi < SUBSTITUTION_CUTOFF {
        hi = (hi * 2.0).min(SUBSTITUTION_CUTOFF);
        cuts.push(hi);
    }
    let per_seg = abs_tol / (cuts.len() - 1) as f64;
    let mut total = Quadrature { value: 0.0, abs_error: 0.0 };
    for w in cuts.windows(2) {
        let out = quad::adaptive(&g, w[0], w[1], per_seg, cfg.max_depth);
        let seg = finish(out, per_seg)?;
        total.value += seg.value;
        total.abs_error += seg.abs_error;
    }
    Ok(total)
}

fn finish(out: quad::AdaptiveOutcome, abs_tol: f64) -> Result<Quadrature, MeasureError> {
    if let Some(x) = out.bad_point {
        return Err(MeasureError::NonFinite { x });
    }
    if !out.converged && out.abs_error > abs_tol {
        return Err(MeasureError::NoConvergence {
            best: out.value,
            achieved: out.abs_error,
            requested: abs_tol,
        });
    }
    Ok(Quadrature { value: out.value, abs_error: out.abs_error })
}

/// (∫₀¹ f^p dx)^(1/p) together with the propagated error estimate.
/// Shared by the norm engine and the natural-function construction.
pub(crate) fn lp_value(
    f: &UnitIntervalFunction,
    p: f64,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64), MeasureError> {
    let q = integrate_transformed(f, &|y: f64| y.powf(p), cfg)?;
    let moment = q.value.max(0.0);
    let norm = moment.powf(1.0 / p);
    let err = if moment > 0.0 {
        norm / moment * q.abs_error / p
    } else {
        q.abs_error.powf(1.0 / p)
    };
    Ok((norm, err))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn constant_integrates_to_itself() {
        let f = UnitIntervalFunction::constant(1.0).unwrap();
        let q = integrate(&f, &cfg()).unwrap();
        assert!((q.value - 1.0).abs() <= q.abs_error.max(1e-12));
    }

    #[test]
    fn sqrt_log_square_has_unit_integral() {
        // ∫₀¹ (-ln x) dx = 1 exactly (antiderivative x - x ln x).
        let f = UnitIntervalFunction::sqrt_log();
        let q = integrate_transformed(&f, &|y| y * y, &cfg()).unwrap();
        assert!((q.value - 1.0).abs() < 1e-9, "value {}", q.value);
    }

    #[test]
    fn sqrt_log_cube_is_gamma_five_halves() {
        // ∫₀¹ (-ln x)^{3/2} dx = Γ(5/2) = (3/4)√π.
        let expect = 0.75 * std::f64::consts::PI.sqrt();
        let f = UnitIntervalFunction::sqrt_log();
        let q = integrate_transformed(&f, &|y| y.powi(3), &cfg()).unwrap();
        assert!((q.value - expect).abs() < 1e-9 * expect, "value {} expect {expect}", q.value);
    }

    #[test]
    fn substitution_switch_agrees_on_singular_profile() {
        let f = UnitIntervalFunction::sqrt_log();
        let on = integrate(&f, &cfg()).unwrap();
        let off = integrate(&f, &QuadratureConfig { substitute_singularities: false, ..cfg() }).unwrap();
        let gap = (on.value - off.value).abs();
        assert!(gap <= on.abs_error + off.abs_error + 1e-12, "gap {gap}");
    }

    #[test]
    fn block_union_evaluates_the_covering_block() {
        let lo = UnitIntervalFunction::on_interval(
            Interval::new(0.0, 0.5).unwrap(),
            UnitIntervalFunction::constant(2.0).unwrap(),
        );
        let hi = UnitIntervalFunction::on_interval(
            Interval::new(0.5, 1.0).unwrap(),
            UnitIntervalFunction::constant(3.0).unwrap(),
        );
        let blocks = vec![lo, hi];
        assert_eq!(evaluate_block_union(&blocks, 0.25).unwrap(), 2.0);
        assert_eq!(evaluate_block_union(&blocks, 0.75).unwrap(), 3.0);

        let narrow = vec![UnitIntervalFunction::on_interval(
            Interval::new(0.2, 0.3).unwrap(),
            UnitIntervalFunction::constant(5.0).unwrap(),
        )];
        assert_eq!(evaluate_block_union(&narrow, 0.9).unwrap(), 0.0);
    }

    #[test]
    fn overlapping_blocks_are_rejected() {
        let a = UnitIntervalFunction::on_interval(
            Interval::new(0.0, 0.6).unwrap(),
            UnitIntervalFunction::constant(1.0).unwrap(),
        );
        let b = UnitIntervalFunction::on_interval(
            Interval::new(0.5, 1.0).unwrap(),
            UnitIntervalFunction::constant(1.0).unwrap(),
        );
        let err = UnitIntervalFunction::block_union(vec![a, b]).unwrap_err();
        assert!(matches!(err, MeasureError::OverlappingSupports { .. }));
    }

    #[test]
    fn affine_block_integrates_to_length_times_profile() {
        let support = Interval::new(0.25, 0.75).unwrap();
        let block = UnitIntervalFunction::on_interval(support, UnitIntervalFunction::sqrt_log());
        let q = integrate(&block, &cfg()).unwrap();
        let whole = integrate(&UnitIntervalFunction::sqrt_log(), &cfg()).unwrap();
        assert!((q.value - 0.5 * whole.value).abs() < 1e-10);
    }

    #[test]
    fn half_open_support_endpoint_convention() {
        let support = Interval::new(0.25, 0.75).unwrap();
        let block = UnitIntervalFunction::on_interval(support, UnitIntervalFunction::constant(4.0).unwrap());
        assert_eq!(block.eval(0.75), 0.0);
        assert_eq!(block.eval(0.25), 4.0);
    }

    #[test]
    fn invalid_config_is_rejected() {
        let f = UnitIntervalFunction::constant(1.0).unwrap();
        let bad = QuadratureConfig { rel_tol: -1.0, ..cfg() };
        assert!(matches!(integrate(&f, &bad), Err(MeasureError::InvalidConfig(_))));
    }

    #[test]
    fn exhausted_depth_budget_is_a_diagnostic_error() {
        // A strangled budget on a raw (unsubstituted) singular integrand
        // must surface as a diagnostic carrying the best estimate.
        let f = UnitIntervalFunction::sqrt_log();
        let starved = QuadratureConfig { max_depth: 2, substitute_singularities: false, ..cfg() };
        match integrate_transformed(&f, &|y| y.powi(9), &starved) {
            Err(MeasureError::NoConvergence { best, achieved, requested }) => {
                assert!(best > 0.0 && achieved > requested);
            }
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }
}
