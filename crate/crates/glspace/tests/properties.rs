//! Property tests for the norm calculus: disjoint additivity, homogeneity,
//! monotonicity, specialization and rearrangement invariance on randomized
//! block families.

use glspace::measure::{integrate_transformed, Interval, QuadratureConfig, UnitIntervalFunction};
use glspace::norms::{
    decreasing_rearrangement, distribution_function, gls_norm, lp_norm, luxemburg_norm,
};
use glspace::psi::{endpoint_gap_grid, gls_weaker, PsiFunction, RelationConfig, Verdict};
use glspace::YoungFunction;
use proptest::prelude::*;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

/// A randomized disjoint block family: cut (0,1) at sorted points, keep a
/// subset of the gaps, and fill each kept gap with a scaled profile copy.
#[derive(Debug, Clone)]
struct BlockFamily {
    blocks: Vec<UnitIntervalFunction>,
}

fn arb_family() -> impl Strategy<Value = BlockFamily> {
    let cuts = prop::collection::vec(0.02f64..0.98, 1..6);
    let heights = prop::collection::vec(0.25f64..8.0, 8);
    let keeps = prop::collection::vec(any::<bool>(), 8);
    let profiles = prop::collection::vec(0u8..3, 8);
    (cuts, heights, keeps, profiles).prop_map(|(mut cuts, heights, keeps, profiles)| {
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
        let mut edges = vec![0.0];
        edges.extend(cuts);
        edges.push(1.0);
        let mut blocks = Vec::new();
        for (i, w) in edges.windows(2).enumerate() {
            if w[1] - w[0] < 1e-3 {
                continue;
            }
            // Keep at least the first gap so the family is never empty.
            if i > 0 && !keeps[i % keeps.len()] {
                continue;
            }
            let profile = match profiles[i % profiles.len()] {
                0 => UnitIntervalFunction::constant(1.0).unwrap(),
                1 => UnitIntervalFunction::sqrt_log(),
                _ => UnitIntervalFunction::indicator(0.5).unwrap(),
            };
            let scaled =
                UnitIntervalFunction::scaled(heights[i % heights.len()], profile).unwrap();
            blocks.push(UnitIntervalFunction::on_interval(
                Interval::new(w[0], w[1]).unwrap(),
                scaled,
            ));
        }
        BlockFamily { blocks }
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    /// Disjointness identity: ∫ (Σ h_n)^p = Σ ∫ h_n^p.
    #[test]
    fn disjoint_lp_powers_add(family in arb_family(), p in 1.0f64..4.0) {
        let union = UnitIntervalFunction::block_union(family.blocks.clone()).unwrap();
        let whole = integrate_transformed(&union, &|y: f64| y.powf(p), &cfg()).unwrap();
        let mut sum = 0.0;
        let mut err = 0.0;
        for b in &family.blocks {
            let q = integrate_transformed(b, &|y: f64| y.powf(p), &cfg()).unwrap();
            sum += q.value;
            err += q.abs_error;
        }
        let tol = (whole.abs_error + err).max(1e-11 * whole.value.abs().max(1.0));
        prop_assert!((whole.value - sum).abs() <= tol,
            "whole {} vs sum {}", whole.value, sum);
    }

    /// Pointwise: the union evaluates to the sup and the sum of its blocks.
    #[test]
    fn union_eval_is_sup_and_sum(family in arb_family(), xs in prop::collection::vec(0.0001f64..0.9999, 32)) {
        let union = UnitIntervalFunction::block_union(family.blocks.clone()).unwrap();
        for x in xs {
            let direct = union.eval(x);
            let sum: f64 = family.blocks.iter().map(|b| b.eval(x)).sum();
            let sup = family.blocks.iter().map(|b| b.eval(x)).fold(0.0, f64::max);
            prop_assert_eq!(direct, sum);
            prop_assert_eq!(direct, sup);
        }
    }

    /// Homogeneity: N(c f) = c N(f) for the Lp, Luxemburg and Grand
    /// Lebesgue norms.
    #[test]
    fn norms_are_homogeneous(family in arb_family(), c in prop::sample::select(vec![0.5f64, 2.0, 10.0])) {
        let f = UnitIntervalFunction::block_union(family.blocks.clone()).unwrap();
        let cf = UnitIntervalFunction::scaled(c, f.clone()).unwrap();

        let a = lp_norm(&f, 2.5, &cfg()).unwrap().expect_finite();
        let b = lp_norm(&cf, 2.5, &cfg()).unwrap().expect_finite();
        prop_assert!((b - c * a).abs() <= 1e-8 * b.max(1e-9), "lp: {b} vs {}", c * a);

        let phi = YoungFunction::exp_square();
        let a = luxemburg_norm(&f, &phi, &cfg()).unwrap().expect_finite();
        let b = luxemburg_norm(&cf, &phi, &cfg()).unwrap().expect_finite();
        prop_assert!((b - c * a).abs() <= 1e-6 * b.max(1e-9), "luxemburg: {b} vs {}", c * a);

        let psi = PsiFunction::constant(1.0, 1.0, 4.0).unwrap();
        let a = gls_norm(&f, &psi, &cfg()).unwrap().expect_finite();
        let b = gls_norm(&cf, &psi, &cfg()).unwrap().expect_finite();
        prop_assert!((b - c * a).abs() <= 1e-7 * b.max(1e-9), "gls: {b} vs {}", c * a);
    }

    /// Integration is monotone: f ≤ g pointwise implies ∫f ≤ ∫g up to the
    /// combined error estimates. Pointwise-comparable pairs are built by
    /// scaling up and by adding blocks on the complementary gaps.
    #[test]
    fn integrate_is_monotone(family in arb_family(), c in 1.0f64..4.0) {
        let f = UnitIntervalFunction::block_union(family.blocks.clone()).unwrap();
        let g = UnitIntervalFunction::scaled(c, f.clone()).unwrap();
        // Sanity on a sample grid first.
        for i in 1..50 {
            let x = i as f64 / 50.0 - 0.003;
            prop_assert!(f.eval(x) <= g.eval(x));
        }
        let qf = glspace::integrate(&f, &cfg()).unwrap();
        let qg = glspace::integrate(&g, &cfg()).unwrap();
        prop_assert!(qf.value <= qg.value + qf.abs_error + qg.abs_error + 1e-12);
    }

    /// Lp norms are nondecreasing in p on a probability space.
    #[test]
    fn lp_monotone_in_p(family in arb_family(), p1 in 1.0f64..3.9, dp in 0.05f64..1.0) {
        let f = UnitIntervalFunction::block_union(family.blocks.clone()).unwrap();
        let p2 = (p1 + dp).min(4.0);
        let a = lp_norm(&f, p1, &cfg()).unwrap();
        let b = lp_norm(&f, p2, &cfg()).unwrap();
        prop_assert!(
            a.expect_finite() <= b.expect_finite() + a.abs_error + b.abs_error + 1e-12,
            "p {} -> {}: {} > {}", p1, p2, a.expect_finite(), b.expect_finite()
        );
    }

    /// Specialization: the degenerate generator reduces the Grand Lebesgue
    /// norm to the classical Lp norm.
    #[test]
    fn degenerate_psi_specializes(family in arb_family(), r in prop::sample::select(vec![1.0f64, 2.0, 3.0, 4.0])) {
        let f = UnitIntervalFunction::block_union(family.blocks.clone()).unwrap();
        let psi = PsiFunction::degenerate(r).unwrap();
        let g = gls_norm(&f, &psi, &cfg()).unwrap().expect_finite();
        let l = lp_norm(&f, r, &cfg()).unwrap().expect_finite();
        prop_assert!((g - l).abs() <= 1e-9 * l.max(1e-12), "r = {r}: {g} vs {l}");
    }

    /// The Luxemburg root certificate: at the returned k the modular lies
    /// in [1 - 1e-6, 1].
    #[test]
    fn luxemburg_root_certificate(family in arb_family()) {
        let f = UnitIntervalFunction::block_union(family.blocks.clone()).unwrap();
        let phi = YoungFunction::exp_square();
        let rep = luxemburg_norm(&f, &phi, &cfg()).unwrap();
        let k = rep.expect_finite();
        let modular = integrate_transformed(&f, &|y: f64| phi.eval(y / k), &cfg()).unwrap();
        prop_assert!(modular.value <= 1.0 + 1e-9, "modular {} at k {}", modular.value, k);
        prop_assert!(modular.value >= 1.0 - 1e-6 - modular.abs_error,
            "modular {} at k {}", modular.value, k);
    }

    /// The rearrangement is equimeasurable with the function, so its Lp
    /// norms match. f* is evaluated by inverting the distribution function
    /// and integrated on its own axis (an independent route).
    #[test]
    fn rearrangement_preserves_lp(family in arb_family(), p in prop::sample::select(vec![1.0f64, 2.0, 3.0])) {
        let f = UnitIntervalFunction::block_union(family.blocks.clone()).unwrap();
        let direct = lp_norm(&f, p, &cfg()).unwrap().expect_finite();
        // Riemann sum over the rearranged axis; midpoint rule on 4000 cells
        // is plenty for step functions away from the jump points.
        let cells = 4000;
        let mut moment = 0.0;
        for i in 0..cells {
            let s = (i as f64 + 0.5) / cells as f64;
            moment += decreasing_rearrangement(&f, s).unwrap().powf(p) / cells as f64;
        }
        let star = moment.powf(1.0 / p);
        prop_assert!((direct - star).abs() <= 5e-3 * direct.max(1e-9),
            "p = {p}: direct {direct} vs rearranged {star}");
    }

    /// The level-set reduction behind the Lorentz norm: no sampled
    /// measurable set A beats sup_t K(t)/v(t), where K uses the decreasing
    /// rearrangement. Candidate sets are random interval unions, integrated
    /// by an independent midpoint rule.
    #[test]
    fn lorentz_level_sets_dominate_random_sets(
        family in arb_family(),
        set_cuts in prop::collection::vec(0.001f64..0.999, 4..10),
    ) {
        let f = UnitIntervalFunction::block_union(family.blocks.clone()).unwrap();
        let weight = glspace::LorentzWeight::power(1.0).unwrap();
        let report =
            glspace::lorentz_norm(&f, &weight, &glspace::norms::lorentz_default_tgrid(), &cfg())
                .unwrap();
        // A certified-divergent norm dominates every finite candidate.
        let norm = match report.finite() {
            Some(v) => v,
            None => return Ok(()),
        };

        // Alternate gaps/kept-intervals between sorted cut points.
        let mut cuts = set_cuts;
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-4);
        let mut measure = 0.0;
        let mut integral = 0.0;
        for (i, w) in cuts.windows(2).enumerate() {
            if i % 2 == 1 {
                continue;
            }
            measure += w[1] - w[0];
            let cells = 2000;
            for j in 0..cells {
                let x = w[0] + (j as f64 + 0.5) / cells as f64 * (w[1] - w[0]);
                integral += f.eval(x) * (w[1] - w[0]) / cells as f64;
            }
        }
        prop_assume!(measure > 1e-4);
        let candidate = integral / weight.eval(measure);
        prop_assert!(
            candidate <= norm * (1.0 + 1e-3) + 1e-9,
            "set of measure {measure} gives {candidate} above the norm {norm}"
        );
    }

    /// f and f* share the distribution function at sampled thresholds.
    #[test]
    fn rearrangement_is_equimeasurable(family in arb_family(), lambda in 0.0f64..6.0) {
        let f = UnitIntervalFunction::block_union(family.blocks.clone()).unwrap();
        let m = distribution_function(&f, lambda);
        // measure{s : f*(s) > λ} by bisection on the decreasing f*.
        let mut lo = 0.0f64;
        let mut hi = 1.0f64;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if decreasing_rearrangement(&f, mid).unwrap() > lambda {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        prop_assert!((m - lo).abs() <= 1e-9 + 1e-6 * m, "lambda {lambda}: {m} vs {lo}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    /// On the power-singular family the grid verdict matches the exponent
    /// order, and certified weakness is antisymmetric.
    #[test]
    fn power_singular_verdicts_follow_exponents(
        b1 in prop::sample::select(vec![0.0f64, 0.125, 0.25, 0.5, 1.0]),
        b2 in prop::sample::select(vec![0.0f64, 0.125, 0.25, 0.5, 1.0]),
    ) {
        let rcfg = RelationConfig::default();
        let gaps = endpoint_gap_grid(1.0, 4.0, 128);
        let phi = PsiFunction::power_singular(b1, 4.0).unwrap();
        let psi = PsiFunction::power_singular(b2, 4.0).unwrap();
        let verdict = gls_weaker(&phi, &psi, &gaps, &rcfg).unwrap().verdict;
        if b1 > b2 {
            prop_assert_eq!(verdict, Verdict::Weaker);
        } else {
            prop_assert_ne!(verdict, Verdict::Weaker);
        }
        if verdict == Verdict::Weaker {
            let reverse = gls_weaker(&psi, &phi, &gaps, &rcfg).unwrap().verdict;
            prop_assert_ne!(reverse, Verdict::Weaker);
        }
    }
}
