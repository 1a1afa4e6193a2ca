//! ψ-functions generating Grand Lebesgue spaces, Young functions generating
//! Orlicz spaces, and the two embedding relations between them.
//!
//! A ψ-function is positive on an exponent interval and +∞ outside it, with
//! the convention C/∞ = 0. The "significantly weaker" relations are
//! asymptotic statements; this module certifies them on finite grids with
//! explicit escape/decay thresholds and returns the evaluation trace so the
//! caller can inspect or tighten the verdict.

use crate::measure::{self, MeasureError, QuadratureConfig, UnitIntervalFunction};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PsiError {
    #[error("Lp norm at p = {p} did not converge; profile appears to leave L_pmax")]
    DivergentNorm { p: f64 },
    #[error("natural function needs a profile with positive L1 mass")]
    ZeroProfile,
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("functions are not supported up to a common right endpoint ({lhs} vs {rhs})")]
    SupportMismatch { lhs: f64, rhs: f64 },
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

/// Exponent range on which a ψ-function is finite, clipped to p ≥ 1.
#[derive(Debug, Clone, Copy)]
pub struct PsiSupport {
    pub lo: f64,
    pub hi: f64,
    /// Whether ψ is finite at `hi` itself.
    pub hi_closed: bool,
}

impl PsiSupport {
    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }
}

#[derive(Debug, Clone)]
pub(crate) enum PsiFamily {
    /// ν(p) = |f|_p on [1, pmax]: the natural function of a profile.
    Natural { profile: UnitIntervalFunction, pmax: f64, cfg: QuadratureConfig },
    /// (b - p)^(-beta) on [1, b).
    PowerSingular { beta: f64, endpoint: f64 },
    /// 1 at a single exponent, +∞ elsewhere; its space is classical L_r.
    Degenerate { at: f64 },
    /// A constant value on [lo, hi].
    Constant { value: f64, lo: f64, hi: f64 },
    /// p^gamma on [lo, hi] (γ = 1/2 gives the subgaussian generator √p).
    PPower { gamma: f64, lo: f64, hi: f64 },
}

/// A ψ-function: family tag, parameters and evaluator.
#[derive(Debug, Clone)]
pub struct PsiFunction {
    pub(crate) family: PsiFamily,
}

impl PsiFunction {
    /// The natural function ν(p) = |f|_p for p ∈ [1, pmax], computed by
    /// quadrature on demand. Fails if |f|_pmax diverges or f is null.
    pub fn natural(
        profile: UnitIntervalFunction,
        pmax: f64,
        cfg: QuadratureConfig,
    ) -> Result<Self, PsiError> {
        if !(pmax > 1.0) {
            return Err(PsiError::InvalidFamily(format!("pmax must exceed 1, got {pmax}")));
        }
        let (norm, _) = measure::lp_value(&profile, pmax, &cfg)
            .map_err(|e| match e {
                MeasureError::NoConvergence { .. } | MeasureError::NonFinite { .. } => {
                    PsiError::DivergentNorm { p: pmax }
                }
                other => PsiError::Measure(other),
            })?;
        if !(norm > 0.0) {
            return Err(PsiError::ZeroProfile);
        }
        Ok(Self { family: PsiFamily::Natural { profile, pmax, cfg } })
    }

    /// ψ^(β,b)(p) = (b - p)^(-β) on [1, b), β ≥ 0.
    pub fn power_singular(beta: f64, endpoint: f64) -> Result<Self, PsiError> {
        if !(beta >= 0.0) || !(endpoint > 1.0) {
            return Err(PsiError::InvalidFamily(format!(
                "power-singular needs beta ≥ 0 and endpoint > 1, got ({beta}, {endpoint})"
            )));
        }
        Ok(Self { family: PsiFamily::PowerSingular { beta, endpoint } })
    }

    /// Degenerate ψ_(r): 1 at r, +∞ elsewhere.
    pub fn degenerate(at: f64) -> Result<Self, PsiError> {
        if !(at >= 1.0) {
            return Err(PsiError::InvalidFamily(format!("degenerate point must be ≥ 1, got {at}")));
        }
        Ok(Self { family: PsiFamily::Degenerate { at } })
    }

    pub fn constant(value: f64, lo: f64, hi: f64) -> Result<Self, PsiError> {
        if !(value > 0.0) || !(1.0 <= lo && lo < hi) {
            return Err(PsiError::InvalidFamily(format!(
                "constant family needs value > 0 and 1 ≤ lo < hi, got ({value}, {lo}, {hi})"
            )));
        }
        Ok(Self { family: PsiFamily::Constant { value, lo, hi } })
    }

    /// p^γ on [lo, hi].
    pub fn p_power(gamma: f64, lo: f64, hi: f64) -> Result<Self, PsiError> {
        if !(1.0 <= lo && lo < hi) {
            return Err(PsiError::InvalidFamily(format!("p-power needs 1 ≤ lo < hi, got ({lo}, {hi})")));
        }
        Ok(Self { family: PsiFamily::PPower { gamma, lo, hi } })
    }

    pub fn family_name(&self) -> &'static str {
        match self.family {
            PsiFamily::Natural { .. } => "natural",
            PsiFamily::PowerSingular { .. } => "power-singular",
            PsiFamily::Degenerate { .. } => "degenerate",
            PsiFamily::Constant { .. } => "constant",
            PsiFamily::PPower { .. } => "p-power",
        }
    }

    /// ψ(p), +∞ outside the support.
    pub fn eval(&self, p: f64) -> f64 {
        match &self.family {
            PsiFamily::Natural { profile, pmax, cfg } => {
                if p < 1.0 || p > *pmax {
                    f64::INFINITY
                } else {
                    measure::lp_value(profile, p, cfg).map(|(v, _)| v).unwrap_or(f64::INFINITY)
                }
            }
            PsiFamily::PowerSingular { beta, endpoint } => {
                if p < 1.0 || p >= *endpoint {
                    f64::INFINITY
                } else {
                    (endpoint - p).powf(-beta)
                }
            }
            PsiFamily::Degenerate { at } => {
                if p == *at {
                    1.0
                } else {
                    f64::INFINITY
                }
            }
            PsiFamily::Constant { value, lo, hi } => {
                if p < *lo || p > *hi {
                    f64::INFINITY
                } else {
                    *value
                }
            }
            PsiFamily::PPower { gamma, lo, hi } => {
                if p < *lo || p > *hi {
                    f64::INFINITY
                } else {
                    p.powf(*gamma)
                }
            }
        }
    }

    pub fn support(&self) -> PsiSupport {
        match &self.family {
            PsiFamily::Natural { pmax, .. } => PsiSupport { lo: 1.0, hi: *pmax, hi_closed: true },
            PsiFamily::PowerSingular { endpoint, .. } => {
                PsiSupport { lo: 1.0, hi: *endpoint, hi_closed: false }
            }
            PsiFamily::Degenerate { at } => PsiSupport { lo: *at, hi: *at, hi_closed: true },
            PsiFamily::Constant { lo, hi, .. } => PsiSupport { lo: *lo, hi: *hi, hi_closed: true },
            PsiFamily::PPower { lo, hi, .. } => PsiSupport { lo: *lo, hi: *hi, hi_closed: true },
        }
    }

    /// ψ(b - gap) for a gap > 0 below the right support endpoint b, with
    /// the singular factor computed from the gap itself. Near b the p-grid
    /// saturates in f64 (4 - 4·2^(-k) rounds to 4 past k ≈ 52) while the
    /// gap stays exactly representable, so power-law comparisons keep their
    /// full range.
    pub fn eval_near_endpoint(&self, gap: f64) -> f64 {
        if !(gap > 0.0) {
            return f64::INFINITY;
        }
        match &self.family {
            PsiFamily::PowerSingular { beta, endpoint } => {
                if gap > endpoint - 1.0 {
                    f64::INFINITY
                } else {
                    gap.powf(-beta)
                }
            }
            // p = b - gap < b misses a degenerate support entirely.
            PsiFamily::Degenerate { .. } => f64::INFINITY,
            PsiFamily::Constant { value, lo, hi } => {
                if gap > hi - lo {
                    f64::INFINITY
                } else {
                    *value
                }
            }
            PsiFamily::PPower { .. } | PsiFamily::Natural { .. } => {
                let hi = self.support().hi;
                self.eval((hi - gap).min(hi))
            }
        }
    }
}

/// The natural function of `f` up to `pmax` (alias for [`PsiFunction::natural`]).
pub fn make_natural_psi(
    f: UnitIntervalFunction,
    pmax: f64,
    cfg: QuadratureConfig,
) -> Result<PsiFunction, PsiError> {
    PsiFunction::natural(f, pmax, cfg)
}

#[derive(Debug, Clone)]
pub(crate) enum YoungFamily {
    /// u^p, p ≥ 1.
    Power { exponent: f64 },
    /// exp(u²/2) - 1, the subgaussian Young function.
    ExpSquare,
    /// exp(u) - 1.
    ExpLinear,
}

/// An even convex Young function Φ with Φ(0) = 0 and Φ(∞) = ∞.
#[derive(Debug, Clone)]
pub struct YoungFunction {
    pub(crate) family: YoungFamily,
}

impl YoungFunction {
    pub fn power(exponent: f64) -> Result<Self, PsiError> {
        if !(exponent >= 1.0) {
            return Err(PsiError::InvalidFamily(format!(
                "power Young function needs exponent ≥ 1 for convexity, got {exponent}"
            )));
        }
        Ok(Self { family: YoungFamily::Power { exponent } })
    }

    pub fn exp_square() -> Self {
        Self { family: YoungFamily::ExpSquare }
    }

    pub fn exp_linear() -> Self {
        Self { family: YoungFamily::ExpLinear }
    }

    pub fn family_name(&self) -> &'static str {
        match self.family {
            YoungFamily::Power { .. } => "power",
            YoungFamily::ExpSquare => "exp-square",
            YoungFamily::ExpLinear => "exp-linear",
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        let u = u.abs();
        match &self.family {
            YoungFamily::Power { exponent } => u.powf(*exponent),
            YoungFamily::ExpSquare => (0.5 * u * u).exp_m1(),
            YoungFamily::ExpLinear => u.exp_m1(),
        }
    }

    /// ln Φ(u) for u > 0, stable where Φ itself overflows.
    pub fn log_eval(&self, u: f64) -> f64 {
        let u = u.abs();
        match &self.family {
            YoungFamily::Power { exponent } => exponent * u.ln(),
            YoungFamily::ExpSquare => {
                let z = 0.5 * u * u;
                // ln(e^z - 1) = z + ln(1 - e^(-z))
                z + (-(-z).exp()).ln_1p()
            }
            YoungFamily::ExpLinear => u + (-(-u).exp()).ln_1p(),
        }
    }

    /// Sampled convexity certificate: second differences of Φ on the grid
    /// must be non-negative (up to rounding).
    pub fn convexity_certificate(&self, grid: &[f64]) -> bool {
        grid.windows(3).all(|w| {
            let (a, b, c) = (self.eval(w[0]), self.eval(w[1]), self.eval(w[2]));
            if !(a.is_finite() && b.is_finite() && c.is_finite()) {
                return true;
            }
            a + c - 2.0 * b >= -1e-9 * (a.abs() + c.abs()).max(1.0)
        })
    }
}

/// Verdict of a finite-resolution limit check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Weaker,
    NotWeaker,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Weaker => "weaker",
            Verdict::NotWeaker => "not-weaker",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Thresholds for certifying the asymptotic relations on a finite grid.
#[derive(Debug, Clone, Copy)]
pub struct RelationConfig {
    /// A grid point enters the GLS escape set once φ(p) exceeds this.
    pub escape_threshold: f64,
    /// The GLS ratio must end above this to certify divergence.
    pub ratio_threshold: f64,
    /// The Orlicz ratio must end below this to certify decay to zero.
    pub decay_threshold: f64,
    /// Number of trailing grid points over which monotonicity is required.
    pub tail_window: usize,
}

impl Default for RelationConfig {
    fn default() -> Self {
        Self { escape_threshold: 1e3, ratio_threshold: 1e3, decay_threshold: 1e-3, tail_window: 10 }
    }
}

/// One evaluation point of a GLS comparison at p = b - gap.
#[derive(Debug, Clone, Copy)]
pub struct GlsTraceRow {
    pub p: f64,
    /// Distance b - p to the right support endpoint (exact, not recovered
    /// from the rounded p).
    pub gap: f64,
    pub phi: f64,
    pub psi: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone)]
pub struct GlsRelationReport {
    pub verdict: Verdict,
    pub trace: Vec<GlsTraceRow>,
}

/// Grid accumulating geometrically at the right endpoint b, represented by
/// gaps: b·2^(-k) for k = 1..=kmax, clipped so p = b - gap stays ≥
/// max(1, lo). Returned in decreasing order (p increasing toward b).
pub fn endpoint_gap_grid(lo: f64, b: f64, kmax: u32) -> Vec<f64> {
    let floor = lo.max(1.0);
    (1..=kmax)
        .map(|k| b * 0.5f64.powi(k as i32))
        .filter(|&gap| gap <= b - floor)
        .collect()
}

/// Decides whether φ is significantly weaker than ψ in the GLS sense:
/// φ(p)/ψ(p) → ∞ along the escape set of φ. The grid is given as gaps to
/// the common right endpoint of the two supports and must accumulate at 0.
pub fn gls_weaker(
    phi: &PsiFunction,
    psi: &PsiFunction,
    gaps: &[f64],
    cfg: &RelationConfig,
) -> Result<GlsRelationReport, PsiError> {
    let (sp, sq) = (phi.support(), psi.support());
    if (sp.hi - sq.hi).abs() > 1e-9 {
        return Err(PsiError::SupportMismatch { lhs: sp.hi, rhs: sq.hi });
    }
    if gaps.is_empty() || gaps.iter().any(|&g| !(g > 0.0)) || gaps.windows(2).any(|w| w[1] >= w[0]) {
        return Err(PsiError::InvalidFamily(
            "gap grid must be positive and strictly decreasing toward the endpoint".into(),
        ));
    }

    let mut trace = Vec::with_capacity(gaps.len());
    for &gap in gaps {
        let fv = phi.eval_near_endpoint(gap);
        let gv = psi.eval_near_endpoint(gap);
        // C/∞ = 0 by convention; ∞/∞ has no information, record NaN.
        let ratio = if fv.is_finite() && gv.is_finite() {
            fv / gv
        } else if fv.is_finite() {
            0.0
        } else {
            f64::NAN
        };
        trace.push(GlsTraceRow { p: sp.hi - gap, gap, phi: fv, psi: gv, ratio });
    }

    let escape: Vec<&GlsTraceRow> = trace
        .iter()
        .filter(|r| r.phi.is_finite() && r.phi >= cfg.escape_threshold && r.ratio.is_finite())
        .collect();
    if escape.len() < cfg.tail_window {
        // φ stays bounded at this resolution: the limit set is empty.
        return Ok(GlsRelationReport { verdict: Verdict::Inconclusive, trace });
    }

    let tail = &escape[escape.len() - cfg.tail_window..];
    let increasing = tail.windows(2).all(|w| w[1].ratio > w[0].ratio);
    let last = tail[tail.len() - 1].ratio;
    let verdict = if increasing && last >= cfg.ratio_threshold {
        Verdict::Weaker
    } else if increasing {
        // Still growing but below the certification threshold.
        Verdict::Inconclusive
    } else {
        Verdict::NotWeaker
    };
    Ok(GlsRelationReport { verdict, trace })
}

/// One evaluation point of an Orlicz comparison at a fixed λ.
#[derive(Debug, Clone, Copy)]
pub struct OrliczTraceRow {
    pub lambda: f64,
    pub u: f64,
    /// ln[Ψ(λu)/Φ(u)], evaluated in logarithmic form.
    pub log_ratio: f64,
}

#[derive(Debug, Clone)]
pub struct OrliczRelationReport {
    pub verdict: Verdict,
    pub trace: Vec<OrliczTraceRow>,
}

/// Decides whether Ψ is significantly weaker than Φ in the Orlicz sense:
/// Ψ(λu)/Φ(u) → 0 as u → ∞, for every λ in `lambdas`. Ratios are formed
/// in logarithmic coordinates so exponential families cannot overflow.
pub fn orlicz_weaker(
    weak: &YoungFunction,
    strong: &YoungFunction,
    lambdas: &[f64],
    ugrid: &[f64],
    cfg: &RelationConfig,
) -> Result<OrliczRelationReport, PsiError> {
    if lambdas.is_empty() || lambdas.iter().any(|&l| !(l > 0.0)) {
        return Err(PsiError::InvalidFamily("lambdas must be positive and non-empty".into()));
    }
    if ugrid.len() < cfg.tail_window + 1 || ugrid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(PsiError::InvalidFamily("u-grid must be increasing and long enough".into()));
    }

    let mut trace = Vec::with_capacity(lambdas.len() * ugrid.len());
    let mut verdict = Verdict::Weaker;
    let log_decay = cfg.decay_threshold.ln();

    for &lambda in lambdas {
        let rows: Vec<OrliczTraceRow> = ugrid
            .iter()
            .map(|&u| OrliczTraceRow {
                lambda,
                u,
                log_ratio: weak.log_eval(lambda * u) - strong.log_eval(u),
            })
            .collect();
        let tail = &rows[rows.len() - cfg.tail_window..];
        let indeterminate = tail.iter().any(|r| r.log_ratio.is_nan());
        let decreasing = tail.windows(2).all(|w| w[1].log_ratio < w[0].log_ratio);
        let small = tail[tail.len() - 1].log_ratio <= log_decay;
        if indeterminate {
            verdict = Verdict::Inconclusive;
        } else if !(decreasing && small) && verdict == Verdict::Weaker {
            verdict = Verdict::NotWeaker;
        }
        trace.extend(rows);
    }
    Ok(OrliczRelationReport { verdict, trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qcfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn natural_of_constant_is_flat() {
        let f = UnitIntervalFunction::constant(1.0).unwrap();
        let nu = PsiFunction::natural(f, 4.0, qcfg()).unwrap();
        for p in [1.0, 2.0, 3.3, 4.0] {
            assert!((nu.eval(p) - 1.0).abs() < 1e-9, "p = {p}");
        }
        assert!(nu.eval(4.5).is_infinite());
        assert!(nu.eval(0.5).is_infinite());
    }

    #[test]
    fn natural_of_half_indicator_is_two_to_minus_one_over_p() {
        let f = UnitIntervalFunction::indicator(0.5).unwrap();
        let nu = PsiFunction::natural(f, 4.0, qcfg()).unwrap();
        for p in [1.0, 2.0, 4.0] {
            let expect = 0.5f64.powf(1.0 / p);
            assert!((nu.eval(p) - expect).abs() < 1e-10, "p = {p}");
        }
    }

    #[test]
    fn natural_rejects_null_profile() {
        let f = UnitIntervalFunction::constant(0.0).unwrap();
        assert!(matches!(PsiFunction::natural(f, 4.0, qcfg()), Err(PsiError::ZeroProfile)));
    }

    #[test]
    fn natural_scales_homogeneously() {
        let f = UnitIntervalFunction::sqrt_log();
        let cf = UnitIntervalFunction::scaled(3.0, UnitIntervalFunction::sqrt_log()).unwrap();
        let nu = PsiFunction::natural(f, 6.0, qcfg()).unwrap();
        let nu3 = PsiFunction::natural(cf, 6.0, qcfg()).unwrap();
        for p in [1.0, 2.5, 6.0] {
            let (a, b) = (nu.eval(p), nu3.eval(p));
            assert!((b - 3.0 * a).abs() < 1e-8 * b, "p = {p}: {b} vs 3·{a}");
        }
    }

    #[test]
    fn degenerate_psi_is_a_point_mass() {
        let psi = PsiFunction::degenerate(4.0).unwrap();
        assert_eq!(psi.eval(4.0), 1.0);
        assert!(psi.eval(3.9999).is_infinite());
        assert!(psi.support().is_degenerate());
    }

    #[test]
    fn power_singular_blows_up_at_endpoint() {
        let psi = PsiFunction::power_singular(0.125, 4.0).unwrap();
        let near = psi.eval(4.0 - 1e-8);
        assert!((near - 1e1).abs() < 1e-6 * 1e1, "got {near}");
        assert!(psi.eval(4.0).is_infinite());
    }

    #[test]
    fn gls_weaker_certifies_the_power_singular_order() {
        let cfg = RelationConfig::default();
        let grid = endpoint_gap_grid(1.0, 4.0, 128);
        let phi0 = PsiFunction::power_singular(0.125, 4.0).unwrap();
        let one = PsiFunction::power_singular(0.0, 4.0).unwrap();
        let rep = gls_weaker(&phi0, &one, &grid, &cfg).unwrap();
        assert_eq!(rep.verdict, Verdict::Weaker);

        // Same function: ratio ≡ 1.
        let rep = gls_weaker(&phi0, &phi0, &grid, &cfg).unwrap();
        assert_eq!(rep.verdict, Verdict::NotWeaker);

        // Exponent 1/4 versus 1/8: ratio (4-p)^(-1/8) → ∞.
        let quarter = PsiFunction::power_singular(0.25, 4.0).unwrap();
        let eighth = PsiFunction::power_singular(0.125, 4.0).unwrap();
        let rep = gls_weaker(&quarter, &eighth, &grid, &cfg).unwrap();
        assert_eq!(rep.verdict, Verdict::Weaker);

        // Reverse direction must not certify.
        let rep = gls_weaker(&eighth, &quarter, &grid, &cfg).unwrap();
        assert_ne!(rep.verdict, Verdict::Weaker);
    }

    #[test]
    fn gls_weaker_is_inconclusive_for_bounded_phi() {
        let cfg = RelationConfig::default();
        let grid = endpoint_gap_grid(1.0, 4.0, 128);
        let one = PsiFunction::power_singular(0.0, 4.0).unwrap();
        let phi0 = PsiFunction::power_singular(0.125, 4.0).unwrap();
        let rep = gls_weaker(&one, &phi0, &grid, &cfg).unwrap();
        assert_eq!(rep.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn gls_weaker_requires_common_endpoint() {
        let cfg = RelationConfig::default();
        let grid = endpoint_gap_grid(1.0, 4.0, 32);
        let a = PsiFunction::power_singular(0.5, 4.0).unwrap();
        let b = PsiFunction::power_singular(0.5, 3.0).unwrap();
        assert!(matches!(gls_weaker(&a, &b, &grid, &cfg), Err(PsiError::SupportMismatch { .. })));
    }

    fn geometric_ugrid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        let r = (hi / lo).powf(1.0 / (n - 1) as f64);
        (0..n).map(|i| lo * r.powi(i as i32)).collect()
    }

    #[test]
    fn orlicz_weaker_certifies_power_under_exp_square() {
        let cfg = RelationConfig::default();
        let ugrid = geometric_ugrid(1.0, 1e3, 40);
        let lambdas = [0.5, 1.0, 2.0, 10.0];
        let weak = YoungFunction::power(2.0).unwrap();
        let strong = YoungFunction::exp_square();
        let rep = orlicz_weaker(&weak, &strong, &lambdas, &ugrid, &cfg).unwrap();
        assert_eq!(rep.verdict, Verdict::Weaker);

        // exp(u) - 1 is also weaker than exp(u²/2) - 1.
        let rep =
            orlicz_weaker(&YoungFunction::exp_linear(), &strong, &lambdas, &ugrid, &cfg).unwrap();
        assert_eq!(rep.verdict, Verdict::Weaker);

        // Identical functions: λ = 1 pins the ratio at 1.
        let rep = orlicz_weaker(&strong.clone(), &strong, &lambdas, &ugrid, &cfg).unwrap();
        assert_eq!(rep.verdict, Verdict::NotWeaker);
    }

    #[test]
    fn young_families_are_convex_on_samples() {
        let grid: Vec<f64> = (0..200).map(|i| i as f64 * 0.1).collect();
        assert!(YoungFunction::power(1.5).unwrap().convexity_certificate(&grid));
        assert!(YoungFunction::exp_square().convexity_certificate(&grid));
        assert!(YoungFunction::exp_linear().convexity_certificate(&grid));
    }

    #[test]
    fn young_log_eval_matches_direct_eval_in_range() {
        for phi in [YoungFunction::power(3.0).unwrap(), YoungFunction::exp_square(), YoungFunction::exp_linear()] {
            for u in [0.5, 1.0, 3.0, 10.0] {
                let direct = phi.eval(u).ln();
                let logged = phi.log_eval(u);
                assert!((direct - logged).abs() < 1e-12 * direct.abs().max(1.0), "{u}");
            }
        }
    }
}
