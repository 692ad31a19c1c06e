//! Invariants of the exact count, checked against the brute-force oracle
//! and the closed-form bounds over the reference families.

use exptract::bounds::{block_bounds, product_block_bound, saturation_bound, LOG_COMPARISON_SLACK};
use exptract::counting::{count_block_bruteforce, count_bruteforce, count_exact, CountOutcome};
use exptract::seqcore::{
    d_of_epsilon, envelope_regularize, envelope_violations, j_of_epsilon, IndexBound,
    ProblemInstance,
};
use exptract::tract::{eigenvalue_registry, weight_registry};
use proptest::prelude::*;

const CAP: u64 = 1_000_000;
/// Largest brute-force box the properties enumerate.
const BOX_LIMIT: f64 = 2e5;

fn instance(li: usize, gi: usize, d: u64) -> ProblemInstance {
    let l = &eigenvalue_registry()[li];
    let g = &weight_registry()[gi];
    ProblemInstance::new(d, l.model.clone(), g.model.clone()).unwrap()
}

fn exact(inst: &ProblemInstance, eps: f64) -> Option<u64> {
    exact_under(inst, eps, CAP)
}

fn exact_under(inst: &ProblemInstance, eps: f64, cap: u64) -> Option<u64> {
    count_exact(inst, eps, cap).unwrap().count.exact()
}

fn pair_strategy() -> impl Strategy<Value = (usize, usize)> {
    (0..eigenvalue_registry().len(), 0..weight_registry().len())
}

/// `ε = 10^x` for `x ∈ [-4, log10 0.9]`.
fn eps_strategy() -> impl Strategy<Value = f64> {
    (-4.0..0.9f64.log10()).prop_map(|x: f64| 10f64.powf(x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn exact_count_matches_bruteforce((li, gi) in pair_strategy(), d in 1u64..=4, eps in eps_strategy()) {
        let inst = instance(li, gi, d);
        let j = j_of_epsilon(inst.lambdas(), eps).unwrap().max(1);
        prop_assume!((j as f64).powi(d as i32) <= BOX_LIMIT);
        let oracle = count_bruteforce(&inst, eps, j).unwrap();
        let fast = count_exact(&inst, eps, u64::MAX).unwrap();
        prop_assert_eq!(fast.count, CountOutcome::Exact(oracle));
    }

    #[test]
    fn count_is_monotone((li, gi) in pair_strategy(), d in 1u64..=5, a in eps_strategy(), b in eps_strategy()) {
        let (small, large) = if a <= b { (a, b) } else { (b, a) };
        let inst = instance(li, gi, d);
        let wider = instance(li, gi, d + 1);
        let count = |i: &ProblemInstance, e: f64| exact_under(i, e, CAP / 10);
        if let (Some(n_small), Some(n_large)) = (count(&inst, small), count(&inst, large)) {
            prop_assert!(n_small >= n_large, "eps {small} -> {n_small}, eps {large} -> {n_large}");
        }
        if let (Some(n), Some(n_wider)) = (count(&inst, small), count(&wider, small)) {
            prop_assert!(n_wider >= n);
        }
    }

    #[test]
    fn dimension_saturates((li, gi) in pair_strategy(), d in 1u64..=4, eps in eps_strategy()) {
        let inst = instance(li, gi, d);
        prop_assume!(inst.gammas().tends_to_zero());
        let s = saturation_bound(&inst, eps).unwrap();
        if let Some(n) = exact(&inst, eps) {
            prop_assert!((n as f64).ln() <= s.ln_upper + LOG_COMPARISON_SLACK);
        }
        prop_assume!(s.saturation_d <= 8);
        let at_saturation = exact(&inst.with_dimension(s.saturation_d.max(1)).unwrap(), eps);
        for extra in [0, 1, 3] {
            let dd = s.saturation_d.max(1) + extra;
            let here = exact(&inst.with_dimension(dd).unwrap(), eps);
            if let (Some(a), Some(b)) = (at_saturation, here) {
                prop_assert_eq!(a, b, "d = {} against d(eps) = {}", dd, s.saturation_d);
            }
        }
    }

    #[test]
    fn block_bounds_dominate(gi in 0..weight_registry().len(), d in prop::sample::select(vec![8u64, 12, 16]), eps in (0.05f64..0.9)) {
        let geometric = eigenvalue_registry().iter().position(|e| e.name == "geometric(0.5)").unwrap();
        let inst = instance(geometric, gi, d);
        // γ λ_2 ≥ 1 for some block leaves the budget undefined
        let Ok(blocks) = block_bounds(&inst, eps) else { return Ok(()) };
        if let Some(n) = exact(&inst, eps) {
            let product = product_block_bound(&inst, eps).unwrap();
            prop_assert!((n as f64).ln() <= product + LOG_COMPARISON_SLACK);
        }
        let j = j_of_epsilon(inst.lambdas(), eps).unwrap().max(1);
        for b in blocks {
            let len = b.block.len();
            if (j as f64).powi(len as i32) > BOX_LIMIT {
                continue;
            }
            let n = count_block_bruteforce(&inst, b.block.first, len, eps, j).unwrap() as f64;
            prop_assert!(n.ln() <= b.ln_power_bound + LOG_COMPARISON_SLACK, "{b:?}: {n}");
            prop_assert!(n.ln() <= b.ln_sum_bound + LOG_COMPARISON_SLACK, "{b:?}: {n}");
        }
    }

    #[test]
    fn envelope_postconditions(values in prop::collection::vec(1e-6f64..1e6, 1..200)) {
        let h = envelope_regularize(&values).unwrap();
        prop_assert!(envelope_violations(&values, &h).is_empty());
    }
}

#[test]
fn d_of_epsilon_agrees_with_direct_scan() {
    for g in weight_registry() {
        for eps in [0.9f64, 0.5, 0.1, 0.01] {
            let direct = (1..=10_000u64)
                .take_while(|&k| g.model.ln_at(k) > 2.0 * eps.ln())
                .count() as u64;
            match d_of_epsilon(&g.model, eps).unwrap() {
                IndexBound::Finite(n) => assert_eq!(n, direct, "{} at {eps}", g.name),
                IndexBound::Infinite => assert_eq!(direct, 10_000, "{} at {eps}", g.name),
            }
        }
    }
}
