//! Partial sums of p-series with certified integral-test tail brackets.
//!
//! Every series this crate sums has the form Σ n^(-s) with s > 1. The sum
//! is split into an explicit prefix (compensated accumulation, ascending n
//! so the small late terms are not swallowed) and a tail enclosed by the
//! integral test: ∫_{m+1}^∞ x^(-s) dx ≤ Σ_{n>m} n^(-s) ≤ ∫_m^∞ x^(-s) dx.

/// A certified enclosure [lower, upper] of a real number.
#[derive(Debug, Clone, Copy)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
}

impl Bracket {
    pub fn point(v: f64) -> Self {
        Self { lower: v, upper: v }
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn halfwidth(&self) -> f64 {
        0.5 * (self.upper - self.lower)
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }
}

/// Kahan-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Integral-test enclosure of the tail Σ_{n > m} n^(-s), for s > 1.
pub fn power_tail_bracket(s: f64, m: u64) -> Bracket {
    assert!(s > 1.0, "tail bracket needs s > 1, got {s}");
    let m = m as f64;
    let lower = (m + 1.0).powf(1.0 - s) / (s - 1.0);
    let upper = m.powf(1.0 - s) / (s - 1.0);
    Bracket { lower, upper }
}

/// Enclosure of the full series Σ_{n ≥ 1} n^(-s) from `nmax` explicit terms.
/// The bracket is widened by a few ulps of the prefix to cover compensated
/// summation rounding, so it stays a true enclosure.
pub fn power_series(s: f64, nmax: u64) -> Bracket {
    let mut acc = KahanSum::default();
    for n in 1..=nmax {
        acc.add((n as f64).powf(-s));
    }
    let prefix = acc.value();
    let tail = power_tail_bracket(s, nmax);
    let slop = 4.0 * f64::EPSILON * prefix.abs();
    Bracket { lower: prefix + tail.lower - slop, upper: prefix + tail.upper + slop }
}

/// Suffix sums A[n] = Σ_{m = n..=nmax} m^(-s) for n in 1..=nmax+1, with
/// A[nmax+1] = 0. Accumulated from the small end so each suffix is summed
/// ascending in magnitude. Index 0 is unused.
pub(crate) fn suffix_power_sums(s: f64, nmax: u64) -> Vec<f64> {
    let len = nmax as usize + 2;
    let mut suffix = vec![0.0_f64; len];
    let mut acc = KahanSum::default();
    for n in (1..=nmax).rev() {
        acc.add((n as f64).powf(-s));
        suffix[n as usize] = acc.value();
    }
    suffix
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_values_match_closed_forms() {
        // ζ(2) = π²/6 and ζ(4) = π⁴/90.
        let pi = std::f64::consts::PI;
        let z2 = power_series(2.0, 200_000);
        assert!(z2.contains(pi * pi / 6.0), "ζ(2) bracket [{}, {}]", z2.lower, z2.upper);
        let z4 = power_series(4.0, 100_000);
        assert!(z4.contains(pi.powi(4) / 90.0));
        assert!(z4.halfwidth() < 1e-12);
    }

    #[test]
    fn suffix_sums_telescope() {
        // Consecutive suffix sums differ by one term, up to the rounding of
        // the stored suffix values (which dominates when the term is much
        // smaller than the suffix).
        let s = 5.0;
        let suffix = suffix_power_sums(s, 1000);
        for n in [1u64, 7, 500, 1000] {
            let diff = suffix[n as usize] - suffix[n as usize + 1];
            let term = (n as f64).powf(-s);
            let slack = 1e-13 * suffix[n as usize].max(term);
            assert!((diff - term).abs() <= slack, "n = {n}: diff {diff} vs term {term}");
        }
    }

    #[test]
    fn tail_bracket_encloses_true_tail() {
        // Σ_{n>10} n^(-2) = ζ(2) - Σ_{n≤10} n^(-2); compare with the bracket.
        let pi = std::f64::consts::PI;
        let prefix: f64 = (1..=10).map(|n| (n as f64).powi(-2)).sum();
        let true_tail = pi * pi / 6.0 - prefix;
        let b = power_tail_bracket(2.0, 10);
        assert!(b.contains(true_tail), "true {true_tail} bracket [{}, {}]", b.lower, b.upper);
    }
}
