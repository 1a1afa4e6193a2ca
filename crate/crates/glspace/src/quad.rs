//! Adaptive quadrature on finite intervals, built on the 7/15-point
//! Gauss–Kronrod pair. Intervals whose embedded error estimate misses the
//! local tolerance are bisected, with a depth budget guarding recursion.

/// Kronrod abscissae (positive half) for the 7/15 pair.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

/// 7-point Gauss weights.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// 15-point Kronrod weights.
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// One Gauss–Kronrod pass over `[a, b]`. Returns `(kronrod, error_estimate)`.
pub(crate) fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center);
    let mut res_gauss = f_center * WG[3];
    let mut res_kronrod = f_center * WGK[7];
    let mut res_abs = res_kronrod.abs();

    let mut values = [0.0f64; 15];
    values[14] = f_center;

    for j in 0..7 {
        let dx = half * XGK[j];
        let lo = f(center - dx);
        let hi = f(center + dx);
        values[2 * j] = lo;
        values[2 * j + 1] = hi;
        let pair = lo + hi;
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * pair;
        }
        res_kronrod += WGK[j] * pair;
        res_abs += WGK[j] * (lo.abs() + hi.abs());
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((values[2 * j] - mean).abs() + (values[2 * j + 1] - mean).abs());
    }

    let raw_err = ((res_kronrod - res_gauss) * half).abs();
    res_abs *= half.abs();
    res_asc *= half.abs();

    // QUADPACK-style error rescaling: sharpen the raw Gauss/Kronrod gap.
    let mut err = raw_err;
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }

    (res_kronrod * half, err)
}

pub(crate) struct AdaptiveOutcome {
    pub value: f64,
    pub abs_error: f64,
    /// True when every sub-interval met its local tolerance before the
    /// depth or work budget ran out.
    pub converged: bool,
    /// Location of a non-finite integrand value, if one was observed.
    pub bad_point: Option<f64>,
}

/// Hard cap on sub-intervals per call: unattainable tolerances degrade to
/// a non-convergence report instead of unbounded subdivision.
const INTERVAL_BUDGET: usize = 1 << 16;

struct Cell {
    err: f64,
    a: f64,
    b: f64,
    value: f64,
    depth: u32,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.a == other.a
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cell {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err).then(self.a.total_cmp(&other.a))
    }
}

/// Integrate `f` over `[a, b]` to the absolute tolerance `tol`, always
/// bisecting the interval with the currently largest error estimate.
/// Splitting the worst interval keeps integrable endpoint singularities
/// convergent, where a per-interval tolerance share would stall.
pub(crate) fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> AdaptiveOutcome {
    let mut out = AdaptiveOutcome { value: 0.0, abs_error: 0.0, converged: true, bad_point: None };
    let (value, err) = gauss_kronrod_15(f, a, b);
    if !value.is_finite() {
        out.converged = false;
        out.bad_point = Some(0.5 * (a + b));
        return out;
    }
    let mut cells = std::collections::BinaryHeap::new();
    cells.push(Cell { err, a, b, value, depth: max_depth });
    let mut total_err = err;
    while total_err > tol && cells.len() < INTERVAL_BUDGET {
        let worst = cells.peek().expect("heap never empty");
        if worst.depth == 0 || !(worst.err > 0.0) {
            break;
        }
        let cell = cells.pop().expect("peeked");
        let mid = 0.5 * (cell.a + cell.b);
        let (v1, e1) = gauss_kronrod_15(f, cell.a, mid);
        let (v2, e2) = gauss_kronrod_15(f, mid, cell.b);
        if !(v1.is_finite() && v2.is_finite()) {
            out.converged = false;
            out.bad_point = Some(mid);
            cells.push(cell);
            break;
        }
        total_err += e1 + e2 - cell.err;
        cells.push(Cell { err: e1, a: cell.a, b: mid, value: v1, depth: cell.depth - 1 });
        cells.push(Cell { err: e2, a: mid, b: cell.b, value: v2, depth: cell.depth - 1 });
    }
    // Deterministic final reduction: sum in interval order, not heap order.
    let mut ordered: Vec<Cell> = cells.into_vec();
    ordered.sort_by(|x, y| x.a.total_cmp(&y.a));
    out.value = ordered.iter().map(|c| c.value).sum();
    out.abs_error = ordered.iter().map(|c| c.err).sum();
    if out.abs_error > tol {
        out.converged = false;
    }
    out
}
