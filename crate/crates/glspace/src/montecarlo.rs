//! Stochastic diagnostics: tail and moment estimation on uniform draws,
//! the Borel–Cantelli summability check, and the union-bound comparison
//! over partitions of the index set.
//!
//! Randomness is reproducible by construction. A batch owns a master seed;
//! generator streams are split off it with a fixed rule (ChaCha8, stream 0
//! for uniform draws, stream 1 for Rademacher signs), so identical seeds
//! and counts give bit-identical summaries.

use crate::norms::distribution_function;
use crate::process::{BlockProcess, ProcessSpec, TPoint};
use crate::series::{self, Bracket, KahanSum};
use crate::measure::UnitIntervalFunction;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum McError {
    #[error("batch must draw at least one sample")]
    EmptyBatch,
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("partition does not cover the index set disjointly: {0}")]
    BadPartition(String),
    #[error(transparent)]
    Process(#[from] crate::process::ProcessError),
}

const STREAM_UNIFORM: u64 = 0;
const STREAM_SIGNS: u64 = 1;

/// A reproducible sampling plan: master seed plus draw count.
#[derive(Debug, Clone, Copy)]
pub struct SampleBatch {
    pub seed: u64,
    pub count: usize,
}

impl SampleBatch {
    pub fn new(seed: u64, count: usize) -> Result<Self, McError> {
        if count == 0 {
            return Err(McError::EmptyBatch);
        }
        Ok(Self { seed, count })
    }

    fn stream(&self, idx: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(idx);
        rng
    }

    pub fn uniform_rng(&self) -> ChaCha8Rng {
        self.stream(STREAM_UNIFORM)
    }

    pub fn sign_rng(&self) -> ChaCha8Rng {
        self.stream(STREAM_SIGNS)
    }
}

/// A uniform draw in the open interval (0, 1): 53 mantissa bits centered
/// half a step off the lattice, so 0 and 1 are never produced.
pub fn open_unit(rng: &mut ChaCha8Rng) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

/// A fair ±1 draw.
pub fn rademacher(rng: &mut ChaCha8Rng) -> f64 {
    if rng.next_u64() & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Empirical exceedance probability at one threshold.
#[derive(Debug, Clone, Copy)]
pub struct TailEstimate {
    pub threshold: f64,
    pub estimate: f64,
    pub std_error: f64,
    pub count: usize,
    /// Exact value from the distribution function of the sampled function.
    pub exact: f64,
}

/// Empirical tail P{f > u} on a shared set of draws, one estimate per
/// threshold, each with its exact overlay.
pub fn tail_curve(
    f: &UnitIntervalFunction,
    ugrid: &[f64],
    batch: &SampleBatch,
) -> Result<Vec<TailEstimate>, McError> {
    if ugrid.is_empty() || ugrid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(McError::BadParameter("u-grid must be non-empty and increasing".into()));
    }
    let mut rng = batch.uniform_rng();
    let mut hits = vec![0u64; ugrid.len()];
    for _ in 0..batch.count {
        let v = f.eval(open_unit(&mut rng));
        // The grid is increasing, so exceedances form a prefix.
        for (i, &u) in ugrid.iter().enumerate() {
            if v > u {
                hits[i] += 1;
            } else {
                break;
            }
        }
    }
    let n = batch.count as f64;
    Ok(ugrid
        .iter()
        .zip(&hits)
        .map(|(&u, &h)| {
            let p = h as f64 / n;
            TailEstimate {
                threshold: u,
                estimate: p,
                std_error: (p * (1.0 - p) / n).sqrt(),
                count: batch.count,
                exact: distribution_function(f, u),
            }
        })
        .collect())
}

/// Empirical Lp estimate (mean of f^p, rooted) with a delta-method
/// standard error.
#[derive(Debug, Clone, Copy)]
pub struct MomentEstimate {
    pub p: f64,
    pub estimate: f64,
    pub std_error: f64,
    pub count: usize,
}

pub fn estimate_lp(
    f: &UnitIntervalFunction,
    p: f64,
    batch: &SampleBatch,
) -> Result<MomentEstimate, McError> {
    if !(1.0..4.0).contains(&p) {
        return Err(McError::BadParameter(format!(
            "moment estimation is supported for p in [1, 4), got {p}"
        )));
    }
    let mut rng = batch.uniform_rng();
    let mut sum = KahanSum::default();
    let mut sumsq = KahanSum::default();
    for _ in 0..batch.count {
        let v = f.eval(open_unit(&mut rng)).powf(p);
        sum.add(v);
        sumsq.add(v * v);
    }
    let n = batch.count as f64;
    let mean = sum.value() / n;
    let var = (sumsq.value() / n - mean * mean).max(0.0);
    let se_mean = (var / n).sqrt();
    let (estimate, std_error) = if mean > 0.0 {
        let root = mean.powf(1.0 / p);
        (root, root / mean * se_mean / p)
    } else {
        (0.0, se_mean.powf(1.0 / p))
    };
    Ok(MomentEstimate { p, estimate, std_error, count: batch.count })
}

/// Summability diagnostic for Σ_n P{|g_n| > ε}.
#[derive(Debug, Clone)]
pub struct BorelCantelliReport {
    pub epsilon: f64,
    /// (n, P{|g_n| > ε}, partial sum) for a prefix of indices.
    pub prefix: Vec<(u64, f64, f64)>,
    /// Partial sum over all explicitly built blocks.
    pub partial_sum: f64,
    /// Enclosure of the untruncated remainder Σ_{n > nmax}.
    pub tail: Bracket,
    /// The Chebyshev majorant C(β) ν(1) Σ n^(-3β-1) / ε.
    pub chebyshev_bound: f64,
    pub bound_respected: bool,
}

/// Exceedance probabilities are exact per block (each block is an affine
/// copy of the profile, so its distribution function is closed-form); the
/// partial sums come with an integral-test bracket for the truncated tail
/// and are compared against the Chebyshev majorant.
pub fn borel_cantelli_diagnostic(
    spec: &ProcessSpec,
    epsilon: f64,
    prefix_len: usize,
) -> Result<BorelCantelliReport, McError> {
    if !(epsilon > 0.0) {
        return Err(McError::BadParameter(format!("epsilon must be positive, got {epsilon}")));
    }
    let mut acc = KahanSum::default();
    let mut prefix = Vec::with_capacity(prefix_len.min(spec.nmax() as usize));
    for n in 1..=spec.nmax() {
        let block = spec.block(n)?;
        let prob = distribution_function(&block, epsilon);
        acc.add(prob);
        if (n as usize) <= prefix_len {
            prefix.push((n, prob, acc.value()));
        }
    }
    let (c, _) = spec.normalization();
    // P{|g_n| > ε} ≤ Δ_n for every n, so the remainder is enclosed by the
    // remaining mass.
    let mass_tail = series::power_tail_bracket(4.0 * spec.beta() + 1.0, spec.nmax());
    let tail = Bracket { lower: 0.0, upper: c * mass_tail.upper };
    let (nu1, _) = spec.nu(1.0)?;
    let chebyshev_bound =
        c * nu1 * series::power_series(3.0 * spec.beta() + 1.0, spec.nmax()).upper / epsilon;
    let partial_sum = acc.value();
    Ok(BorelCantelliReport {
        epsilon,
        prefix,
        partial_sum,
        tail,
        chebyshev_bound,
        bound_respected: partial_sum + tail.upper <= chebyshev_bound * (1.0 + 1e-12),
    })
}

/// Two-sided Monte Carlo comparison of P{sup κ > u} with the partitioned
/// union bound Σ_k P{sup_{T_k} κ > u}, both sides estimated on shared draws.
#[derive(Debug, Clone, Copy)]
pub struct UnionBoundReport {
    pub u: f64,
    pub cells: usize,
    pub lhs: f64,
    pub lhs_std_error: f64,
    pub rhs: f64,
    pub rhs_std_error: f64,
    /// rhs - lhs; non-negative up to sampling noise.
    pub slack: f64,
    pub count: usize,
}

/// Partition of {1..nmax} ∪ {∞} into singletons (∞ in its own cell).
pub fn singleton_partition(nmax: u64) -> Vec<Vec<TPoint>> {
    let mut cells: Vec<Vec<TPoint>> = (1..=nmax).map(|n| vec![TPoint::Finite(n)]).collect();
    cells.push(vec![TPoint::Infinity]);
    cells
}

/// Dyadic partition: {1}, {2,3}, {4..7}, …, with ∞ joining the last cell.
pub fn dyadic_partition(nmax: u64) -> Vec<Vec<TPoint>> {
    let mut cells = Vec::new();
    let mut lo = 1u64;
    while lo <= nmax {
        let hi = (2 * lo - 1).min(nmax);
        let mut cell: Vec<TPoint> = (lo..=hi).map(TPoint::Finite).collect();
        if hi == nmax {
            cell.push(TPoint::Infinity);
        }
        cells.push(cell);
        lo *= 2;
    }
    cells
}

pub fn union_bound_check(
    process: &BlockProcess,
    partition: &[Vec<TPoint>],
    u: f64,
    batch: &SampleBatch,
) -> Result<UnionBoundReport, McError> {
    let nmax = process.spec().nmax();
    // Validate the partition: every finite index once, infinity once.
    let mut cell_of_block = vec![u32::MAX; nmax as usize + 1];
    let mut infinity_cell: Option<usize> = None;
    let mut multi_point = vec![false; partition.len()];
    for (k, cell) in partition.iter().enumerate() {
        multi_point[k] = cell.len() > 1;
        for &t in cell {
            match t {
                TPoint::Finite(n) => {
                    if n < 1 || n > nmax {
                        return Err(McError::BadPartition(format!("index {n} outside 1..={nmax}")));
                    }
                    if cell_of_block[n as usize] != u32::MAX {
                        return Err(McError::BadPartition(format!("index {n} appears twice")));
                    }
                    cell_of_block[n as usize] = k as u32;
                }
                TPoint::Infinity => {
                    if infinity_cell.is_some() {
                        return Err(McError::BadPartition("infinity appears twice".into()));
                    }
                    infinity_cell = Some(k);
                }
            }
        }
    }
    if infinity_cell.is_none() || cell_of_block[1..].contains(&u32::MAX) {
        return Err(McError::BadPartition("partition must cover every index and infinity".into()));
    }

    let zero_hits = u < 0.0; // cells seeing only θ ≡ 0 still exceed a negative u
    let mut rng = batch.uniform_rng();
    let mut lhs_count = 0u64;
    let mut rhs_sum = 0.0f64;
    let mut rhs_sumsq = 0.0f64;
    for _ in 0..batch.count {
        let x = open_unit(&mut rng);
        let located = process.locate_block(x);
        let (theta_val, home_cell) = match located {
            Some(n) => (
                process.sign(n) * process.block_value(n, x),
                Some(cell_of_block[n as usize] as usize),
            ),
            None => (0.0, None),
        };

        let global_sup = theta_val.max(0.0);
        if global_sup > u {
            lhs_count += 1;
        }

        let mut hits = 0u64;
        if zero_hits {
            hits += partition.len() as u64; // every cell's sup is ≥ 0 > u
            if let Some(k) = home_cell {
                // ... except the home cell if even its max is not > u
                let cell_sup =
                    if multi_point[k] || Some(k) == infinity_cell { theta_val.max(0.0) } else { theta_val };
                if !(cell_sup > u) {
                    hits -= 1;
                }
            }
        } else if let Some(k) = home_cell {
            let cell_sup =
                if multi_point[k] || Some(k) == infinity_cell { theta_val.max(0.0) } else { theta_val };
            if cell_sup > u {
                hits += 1;
            }
        }
        let h = hits as f64;
        rhs_sum += h;
        rhs_sumsq += h * h;
    }

    let n = batch.count as f64;
    let lhs = lhs_count as f64 / n;
    let rhs = rhs_sum / n;
    let rhs_var = (rhs_sumsq / n - rhs * rhs).max(0.0);
    Ok(UnionBoundReport {
        u,
        cells: partition.len(),
        lhs,
        lhs_std_error: (lhs * (1.0 - lhs) / n).sqrt(),
        rhs,
        rhs_std_error: (rhs_var / n).sqrt(),
        slack: rhs - lhs,
        count: batch.count,
    })
}

/// Empirical mean of the symmetrized block value ε·g_n(x) over independent
/// (sign, x) draws. Centered by construction; returns (mean, std_error).
pub fn symmetrized_block_mean(
    process: &BlockProcess,
    n: u64,
    batch: &SampleBatch,
) -> Result<(f64, f64), McError> {
    if n < 1 || n > process.spec().nmax() {
        return Err(McError::BadParameter(format!("block index {n} out of range")));
    }
    let mut xs = batch.uniform_rng();
    let mut signs = batch.sign_rng();
    let mut sum = KahanSum::default();
    let mut sumsq = KahanSum::default();
    for _ in 0..batch.count {
        let v = rademacher(&mut signs) * process.block_value(n, open_unit(&mut xs));
        sum.add(v);
        sumsq.add(v * v);
    }
    let count = batch.count as f64;
    let mean = sum.value() / count;
    let var = (sumsq.value() / count - mean * mean).max(0.0);
    Ok((mean, (var / count).sqrt()))
}
