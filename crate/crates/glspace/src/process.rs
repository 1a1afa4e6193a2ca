//! The disjoint-block process on T = {1, 2, …, ∞}.
//!
//! Blocks g_n = c_n · f((a_n - x)/Δ_n) · 1_[a_{n+1}, a_n) with c_n = n^β and
//! Δ_n = C(β) n^(-4β-1) tile (0, 1). Every individual block has uniformly
//! bounded L1..L4 norms, yet the supremum sup_n g_n acquires the blow-up
//! |sup_n g_n|_p ~ C₂(β)(4-p)^(-1/4) near p = 4, which pushes it out of the
//! Grand Lebesgue space generated by (4-p)^(-1/8). Series are certified by
//! partial sums with integral-test tail brackets.

use crate::measure::{self, Interval, MeasureError, QuadratureConfig, UnitIntervalFunction};
use crate::norms::{self, NormError, NormReport};
use crate::psi::{PsiError, PsiFunction};
use crate::series::{self, Bracket};
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

/// Trailing window of the divergence certificate that must be monotone.
pub const CERTIFICATE_WINDOW: usize = 8;
/// The final certificate ratio must exceed this multiple of the first.
pub const CERTIFICATE_GROWTH: f64 = 10.0;

#[derive(Debug, Error)]
pub enum ProcessError {
    #[error("beta must be positive (the block series diverges otherwise), got {0}")]
    BadBeta(f64),
    #[error("nmax must be at least 10, got {0}")]
    BadNmax(u64),
    #[error("profile is not in L4")]
    NotInL4,
    #[error("block index {n} outside 1..={nmax}")]
    BlockRange { n: u64, nmax: u64 },
    #[error("block-norm series diverges at p = {p} (finite only for p < 4)")]
    SeriesDivergent { p: f64 },
    #[error("exponent {p} outside [1, 4)")]
    BadExponent { p: f64 },
    #[error(transparent)]
    Norm(#[from] NormError),
    #[error(transparent)]
    Psi(#[from] PsiError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

/// A point of the index space T = {1, 2, …} ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TPoint {
    Finite(u64),
    Infinity,
}

impl TPoint {
    pub fn label(&self) -> String {
        match self {
            TPoint::Finite(n) => n.to_string(),
            TPoint::Infinity => "inf".to_string(),
        }
    }
}

/// The compact metric space (T, d) with d(i, j) = |1/i - 1/j| and ∞ as the
/// unique limit point. `horizon` truncates enumeration.
#[derive(Debug, Clone, Copy)]
pub struct MetricSpace {
    pub horizon: u64,
}

impl MetricSpace {
    pub fn distance(&self, a: TPoint, b: TPoint) -> f64 {
        let inv = |t: TPoint| match t {
            TPoint::Finite(n) => 1.0 / n as f64,
            TPoint::Infinity => 0.0,
        };
        (inv(a) - inv(b)).abs()
    }

    pub fn points(&self) -> impl Iterator<Item = TPoint> {
        (1..=self.horizon).map(TPoint::Finite).chain(std::iter::once(TPoint::Infinity))
    }
}

/// Parameters and certified sequences of the block construction.
#[derive(Debug, Clone)]
pub struct ProcessSpec {
    beta: f64,
    profile: UnitIntervalFunction,
    nmax: u64,
    cfg: QuadratureConfig,
    /// Exponent of the mass series: Δ_n ∝ n^(-series_exponent).
    series_exponent: f64,
    /// C(β), fixed so Σ Δ_n = 1.
    normalization: f64,
    /// Certified bound on the absolute error of C(β).
    normalization_error: f64,
    /// a_n = C(β)(suffix[n] + tail) for n in 1..=nmax+1; suffix[nmax+1] = 0.
    left_edges: Vec<f64>,
    /// Certified bound on the absolute error of each a_n.
    edge_error: f64,
}

/// Builds the sequences c_n, Δ_n, a_n for a given β and base profile,
/// certifying the normalization with an integral-test tail bracket.
pub fn build_spec(
    beta: f64,
    profile: UnitIntervalFunction,
    nmax: u64,
    cfg: QuadratureConfig,
) -> Result<ProcessSpec, ProcessError> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(ProcessError::BadBeta(beta));
    }
    if nmax < 10 {
        return Err(ProcessError::BadNmax(nmax));
    }
    // Membership in L4 (and non-degeneracy) of the base profile.
    let l4 = norms::lp_norm(&profile, 4.0, &cfg).map_err(|_| ProcessError::NotInL4)?;
    let nu4 = l4.expect_finite();
    if !(nu4 > 0.0) || !nu4.is_finite() {
        return Err(ProcessError::NotInL4);
    }

    let s = 4.0 * beta + 1.0;
    let suffix = series::suffix_power_sums(s, nmax);
    let tail = series::power_tail_bracket(s, nmax);
    let total = suffix[1] + tail.mid();
    let normalization = 1.0 / total;
    // d(1/S) = dS/S²; add a few ulps of summation slack.
    let normalization_error =
        (tail.halfwidth() + 1e-15 * suffix[1]) / (total * total) * (1.0 + 1e-12);

    let mut left_edges = vec![0.0; nmax as usize + 2];
    for n in 1..=nmax as usize + 1 {
        left_edges[n] = normalization * (suffix[n] + tail.mid());
    }
    let edge_error = normalization * tail.halfwidth()
        + normalization_error * (suffix[1] + tail.mid())
        + 1e-15;

    Ok(ProcessSpec {
        beta,
        profile,
        nmax,
        cfg,
        series_exponent: s,
        normalization,
        normalization_error,
        left_edges,
        edge_error,
    })
}

impl ProcessSpec {
    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn nmax(&self) -> u64 {
        self.nmax
    }

    pub fn profile(&self) -> &UnitIntervalFunction {
        &self.profile
    }

    pub fn quadrature(&self) -> &QuadratureConfig {
        &self.cfg
    }

    /// C(β) with its certified error bound.
    pub fn normalization(&self) -> (f64, f64) {
        (self.normalization, self.normalization_error)
    }

    /// Block height c_n = n^β.
    pub fn height(&self, n: u64) -> f64 {
        (n as f64).powf(self.beta)
    }

    /// Block width Δ_n = C(β) n^(-4β-1).
    pub fn width(&self, n: u64) -> f64 {
        self.normalization * (n as f64).powf(-self.series_exponent)
    }

    /// Left tail mass a_n = Σ_{m ≥ n} Δ_m, for n in 1..=nmax+1.
    pub fn edge(&self, n: u64) -> f64 {
        self.left_edges[n as usize]
    }

    /// Certified bound on |edge(n) - Σ_{m≥n} Δ_m|.
    pub fn edge_error(&self) -> f64 {
        self.edge_error
    }

    /// Support of block n: [a_{n+1}, a_n).
    pub fn block_support(&self, n: u64) -> Result<Interval, ProcessError> {
        self.check_range(n)?;
        Interval::new(self.left_edges[n as usize + 1], self.left_edges[n as usize])
            .map_err(ProcessError::from)
    }

    /// The block g_n as a measurable function.
    pub fn block(&self, n: u64) -> Result<UnitIntervalFunction, ProcessError> {
        let support = self.block_support(n)?;
        let scaled = UnitIntervalFunction::scaled(self.height(n), self.profile.clone())?;
        Ok(UnitIntervalFunction::on_interval(support, scaled))
    }

    fn check_range(&self, n: u64) -> Result<(), ProcessError> {
        if n < 1 || n > self.nmax {
            return Err(ProcessError::BlockRange { n, nmax: self.nmax });
        }
        Ok(())
    }

    /// ν(p) = |f|_p of the base profile, with quadrature error.
    pub fn nu(&self, p: f64) -> Result<(f64, f64), ProcessError> {
        Ok(measure::lp_value(&self.profile, p, &self.cfg)?)
    }

    /// The natural function of the base profile on [1, 4].
    pub fn natural_psi(&self) -> Result<PsiFunction, ProcessError> {
        Ok(PsiFunction::natural(self.profile.clone(), 4.0, self.cfg)?)
    }

    /// |g_n|_p in closed form: c_n Δ_n^(1/p) ν(p).
    pub fn block_lp_closed_form(&self, n: u64, p: f64) -> Result<f64, ProcessError> {
        self.check_range(n)?;
        if !(1.0..=4.0).contains(&p) {
            return Err(ProcessError::BadExponent { p });
        }
        let (nu, _) = self.nu(p)?;
        Ok(self.height(n) * self.width(n).powf(1.0 / p) * nu)
    }

    /// Σ_n |g_n|_p^p = C(β) ν(p)^p Σ_n n^(pβ-4β-1), which by disjointness is
    /// exactly |sup_n g_n|_p^p. Finite only for p < 4.
    pub fn sup_lp_series(&self, p: f64) -> Result<SeriesValue, ProcessError> {
        if !(1.0..4.0).contains(&p) {
            return Err(if p >= 4.0 {
                ProcessError::SeriesDivergent { p }
            } else {
                ProcessError::BadExponent { p }
            });
        }
        let s_p = 1.0 + self.beta * (4.0 - p);
        let bracket = series::power_series(s_p, self.nmax);
        let (nu, nu_err) = self.nu(p)?;
        let nu_p = nu.powf(p);
        let value = self.normalization * nu_p * bracket.mid();
        let err = self.normalization * nu_p * bracket.halfwidth()
            + self.normalization_error * nu_p * bracket.mid()
            + self.normalization * bracket.mid() * p * nu.powf(p - 1.0) * nu_err;
        Ok(SeriesValue { value, abs_error: err, series_bracket: bracket })
    }

    /// Grand Lebesgue modulus of continuity between two index points:
    /// ||θ(t) - θ(s)||Gψ. Distinct finite points form a two-block disjoint
    /// union; the point at infinity contributes nothing.
    pub fn continuity_modulus(
        &self,
        psi: &PsiFunction,
        t: TPoint,
        s: TPoint,
    ) -> Result<NormReport, ProcessError> {
        if t == s {
            return Ok(NormReport {
                value: norms::NormValue::Finite(0.0),
                method: norms::NormMethod::GrandLebesgue,
                abs_error: 0.0,
                location: None,
            });
        }
        let mut blocks = Vec::new();
        for point in [t, s] {
            if let TPoint::Finite(n) = point {
                blocks.push(self.block(n)?);
            }
        }
        let diff = UnitIntervalFunction::block_union(blocks)?;
        Ok(norms::gls_norm(&diff, psi, &self.cfg)?)
    }

    /// Certificate that ||sup_n |g_n|||Gφ = ∞: the ratio of the supremum's
    /// Lp norm to φ(p) along a grid accumulating at 4 must grow monotonically
    /// over the last `CERTIFICATE_WINDOW` points and multiply by at least
    /// `CERTIFICATE_GROWTH` across the grid.
    pub fn weaker_norm_divergence(
        &self,
        phi: &PsiFunction,
        pgrid: &[f64],
    ) -> Result<DivergenceCertificate, ProcessError> {
        if pgrid.len() <= CERTIFICATE_WINDOW {
            return Err(ProcessError::BadExponent { p: f64::NAN });
        }
        let mut rows = Vec::with_capacity(pgrid.len());
        for &p in pgrid {
            let series = self.sup_lp_series(p)?;
            let sup_norm = series.value.powf(1.0 / p);
            let scale = phi.eval(p);
            let ratio = if scale.is_finite() { sup_norm / scale } else { 0.0 };
            rows.push(CertificateRow { p, sup_norm, ratio });
        }
        let tail = &rows[rows.len() - CERTIFICATE_WINDOW..];
        let monotone = tail.windows(2).all(|w| w[1].ratio > w[0].ratio);
        let grown = rows.last().unwrap().ratio >= CERTIFICATE_GROWTH * rows[0].ratio;
        Ok(DivergenceCertificate { rows, certified: monotone && grown })
    }

    /// Table of the supremum's norm blow-up at p_k = 4 - 2^(-k).
    pub fn blowup_table(&self, ks: &[u32]) -> Result<Vec<BlowupRow>, ProcessError> {
        ks.iter()
            .map(|&k| {
                let gap = 0.5f64.powi(k as i32);
                let p = 4.0 - gap;
                let series = self.sup_lp_series(p)?;
                let sup_norm = series.value.powf(1.0 / p);
                Ok(BlowupRow {
                    k,
                    p,
                    sup_norm,
                    scaled_power: gap * series.value,
                    scaled_norm: gap.powf(0.25) * sup_norm,
                    series_rel_bracket: series.series_bracket.halfwidth()
                        / series.series_bracket.mid(),
                })
            })
            .collect()
    }

    /// The limit of (4-p)·|sup g_n|_p^p as p → 4: C(β) ν(4)^4 / β.
    pub fn blowup_limit(&self) -> Result<f64, ProcessError> {
        let (nu4, _) = self.nu(4.0)?;
        Ok(self.normalization * nu4.powi(4) / self.beta)
    }
}

/// Value of a certified series computation.
#[derive(Debug, Clone, Copy)]
pub struct SeriesValue {
    pub value: f64,
    pub abs_error: f64,
    /// Enclosure of the dimensionless Σ n^(pβ-4β-1) factor.
    pub series_bracket: Bracket,
}

#[derive(Debug, Clone, Copy)]
pub struct CertificateRow {
    pub p: f64,
    pub sup_norm: f64,
    pub ratio: f64,
}

/// Trace of the weaker-norm divergence check.
#[derive(Debug, Clone)]
pub struct DivergenceCertificate {
    pub rows: Vec<CertificateRow>,
    pub certified: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct BlowupRow {
    pub k: u32,
    pub p: f64,
    pub sup_norm: f64,
    /// (4-p) · |sup g|_p^p; converges to C(β)ν⁴(4)/β.
    pub scaled_power: f64,
    /// (4-p)^(1/4) · |sup g|_p; converges to the blow-up constant C₂(β).
    pub scaled_norm: f64,
    pub series_rel_bracket: f64,
}

/// Default grid for the divergence certificate: p_k = 4 - 2^(-k) for
/// k = 6..=40. The deep end is required because the certified ratio grows
/// only like (4-p)^(-1/8).
pub fn default_certificate_grid() -> Vec<f64> {
    (6..=40).map(|k| 4.0 - 0.5f64.powi(k)).collect()
}

/// The process θ(t) = g_t (θ(∞) = 0), optionally carrying Rademacher signs.
#[derive(Debug, Clone)]
pub struct BlockProcess {
    spec: ProcessSpec,
    /// signs[n] ∈ {-1, +1} for n in 1..=nmax; None means unsymmetrized.
    signs: Option<Vec<i8>>,
    envelope: UnitIntervalFunction,
}

impl BlockProcess {
    pub fn new(spec: ProcessSpec) -> Result<Self, ProcessError> {
        let mut blocks = Vec::with_capacity(spec.nmax as usize);
        for n in (1..=spec.nmax).rev() {
            blocks.push(spec.block(n)?);
        }
        let envelope = UnitIntervalFunction::block_union(blocks)?;
        Ok(Self { spec, signs: None, envelope })
    }

    pub fn spec(&self) -> &ProcessSpec {
        &self.spec
    }

    /// g = Σ g_n = sup_n g_n as a single measurable function.
    pub fn envelope(&self) -> &UnitIntervalFunction {
        &self.envelope
    }

    pub fn is_symmetrized(&self) -> bool {
        self.signs.is_some()
    }

    /// Rademacher symmetrization: independent fair ±1 signs per block index,
    /// reproducible from the seed. Absolute values are untouched.
    pub fn symmetrize(&self, seed: u64) -> Self {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut signs = vec![0i8; self.spec.nmax as usize + 1];
        for slot in signs.iter_mut().skip(1) {
            *slot = if rng.next_u64() & 1 == 0 { 1 } else { -1 };
        }
        Self { spec: self.spec.clone(), signs: Some(signs), envelope: self.envelope.clone() }
    }

    pub fn sign(&self, n: u64) -> f64 {
        match &self.signs {
            Some(signs) => signs[n as usize] as f64,
            None => 1.0,
        }
    }

    /// θ(t)(x): the signed block value at a finite index, 0 at infinity.
    pub fn theta(&self, t: TPoint, x: f64) -> f64 {
        match t {
            TPoint::Infinity => 0.0,
            TPoint::Finite(n) => self.sign(n) * self.block_value(n, x),
        }
    }

    /// |θ(t)(x)|, which symmetrization leaves unchanged.
    pub fn theta_abs(&self, t: TPoint, x: f64) -> f64 {
        match t {
            TPoint::Infinity => 0.0,
            TPoint::Finite(n) => self.block_value(n, x),
        }
    }

    /// Unsigned value of block n at x, without building the block object.
    pub fn block_value(&self, n: u64, x: f64) -> f64 {
        if n < 1 || n > self.spec.nmax {
            return 0.0;
        }
        let hi = self.spec.left_edges[n as usize];
        let lo = self.spec.left_edges[n as usize + 1];
        if lo <= x && x < hi {
            self.spec.height(n) * self.spec.profile.eval((hi - x) / (hi - lo))
        } else {
            0.0
        }
    }

    /// Index of the block whose support contains x, by binary search over
    /// the decreasing edge sequence.
    pub fn locate_block(&self, x: f64) -> Option<u64> {
        let edges = &self.spec.left_edges;
        let nmax = self.spec.nmax as usize;
        if x < edges[nmax + 1] || x >= edges[1] {
            return None;
        }
        // Find the largest n with x < edges[n]; then edges[n+1] ≤ x holds.
        let (mut lo, mut hi) = (1usize, nmax);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if x < edges[mid] {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        Some(lo as u64)
    }

    /// sup_{t ∈ T} θ(t)(x). The point at infinity keeps the supremum ≥ 0.
    pub fn pointwise_sup(&self, x: f64) -> f64 {
        match self.locate_block(x) {
            None => 0.0,
            Some(n) => (self.sign(n) * self.block_value(n, x)).max(0.0),
        }
    }
}
