use serde::{Deserialize, Serialize};

use super::{SeqError, SequenceModel};

/// Upper end of the exponential search. Thresholds needing larger indices
/// produce [`SeqError::RangeExceeded`].
pub const SEARCH_CAP: u64 = 1 << 62;

/// `max{j : s_j > threshold}`, or `Infinite` when no entry drops to the threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexBound {
    Finite(u64),
    Infinite,
}

impl IndexBound {
    pub fn finite(self) -> Option<u64> {
        match self {
            IndexBound::Finite(n) => Some(n),
            IndexBound::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, IndexBound::Infinite)
    }
}

impl std::fmt::Display for IndexBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IndexBound::Finite(n) => write!(f, "{n}"),
            IndexBound::Infinite => f.write_str("inf"),
        }
    }
}

/// Largest `j` with `ln s_j > ln_threshold` (strict), by doubling from 1 and bisecting.
///
/// Ties count as "not greater". `0` when even `s_1` fails.
pub fn threshold_index(model: &SequenceModel, ln_threshold: f64) -> Result<IndexBound, SeqError> {
    if ln_threshold.is_nan() {
        return Err(SeqError::InvalidArgument("threshold is NaN".into()));
    }
    let above = |j: u64| model.ln_at(j) > ln_threshold;
    if !above(1) {
        return Ok(IndexBound::Finite(0));
    }
    if model.ln_infimum() > ln_threshold {
        return Ok(IndexBound::Infinite);
    }
    if let Some(last) = model.zero_after() {
        if ln_threshold == f64::NEG_INFINITY {
            return Ok(IndexBound::Finite(last));
        }
    }
    let mut lo = 1u64;
    let mut hi = 2u64;
    while above(hi) {
        lo = hi;
        if hi >= SEARCH_CAP {
            return Err(SeqError::RangeExceeded { ln_threshold });
        }
        hi = hi.saturating_mul(2).min(SEARCH_CAP);
    }
    // above(lo) && !above(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if above(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(IndexBound::Finite(lo))
}

fn check_eps(eps: f64) -> Result<(), SeqError> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(SeqError::InvalidArgument(format!(
            "epsilon must be a positive finite number, got {eps}"
        )));
    }
    Ok(())
}

/// `j(ε) = max{j : λ_j > ε²}`; `0` for `ε ≥ 1`.
pub fn j_of_epsilon(lambdas: &SequenceModel, eps: f64) -> Result<u64, SeqError> {
    check_eps(eps)?;
    if eps >= 1.0 {
        return Ok(0);
    }
    match threshold_index(lambdas, 2.0 * eps.ln())? {
        IndexBound::Finite(n) => Ok(n),
        // eigenvalue models always tend to zero
        IndexBound::Infinite => Err(SeqError::InvalidArgument(
            "eigenvalue sequence does not tend to zero".into(),
        )),
    }
}

/// `d(ε) = sup{d : γ_d > ε²}`; `0` when `γ_1 ≤ ε²`, `Infinite` when the
/// declared infimum of the weights exceeds `ε²`.
pub fn d_of_epsilon(gammas: &SequenceModel, eps: f64) -> Result<IndexBound, SeqError> {
    check_eps(eps)?;
    threshold_index(gammas, 2.0 * eps.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::{Family, Tail};
    use proptest::prelude::*;

    fn eig(f: Family) -> SequenceModel {
        SequenceModel::eigenvalues(f).unwrap()
    }
    fn wt(f: Family) -> SequenceModel {
        SequenceModel::weights(f).unwrap()
    }

    // Reference: smallest j with the strict predicate failing, by linear scan.
    fn scan(model: &SequenceModel, ln_threshold: f64, limit: u64) -> u64 {
        (1..=limit)
            .take_while(|&j| model.ln_at(j) > ln_threshold)
            .last()
            .unwrap_or(0)
    }

    #[test]
    fn halving_eigenvalues_at_quarter() {
        // 2^{1-j} > 2^{-4}  <=>  j <= 4
        assert_eq!(
            j_of_epsilon(&eig(Family::Geometric { q: 0.5 }), 0.25).unwrap(),
            4
        );
    }

    #[test]
    fn epsilon_one_gives_zero() {
        for f in [Family::Geometric { q: 0.5 }, Family::Poly { alpha: 1.0 }] {
            assert_eq!(j_of_epsilon(&eig(f), 1.0).unwrap(), 0);
        }
        assert_eq!(
            j_of_epsilon(&eig(Family::Poly { alpha: 1.0 }), 3.0).unwrap(),
            0
        );
    }

    #[test]
    fn strict_boundary_excludes_equality() {
        // j^{-2} > 0.01 <=> j < 10; j = 10 is the tie.
        assert_eq!(
            j_of_epsilon(&eig(Family::Poly { alpha: 2.0 }), 0.1).unwrap(),
            9
        );
    }

    #[test]
    fn weights_threshold_examples() {
        assert_eq!(
            d_of_epsilon(&wt(Family::Geometric { q: 0.5 }), 0.25).unwrap(),
            IndexBound::Finite(3)
        );
        assert_eq!(
            d_of_epsilon(&wt(Family::Constant { value: 1.0 }), 0.5).unwrap(),
            IndexBound::Infinite
        );
        let small = wt(Family::List {
            values: vec![0.01],
            tail: Tail::Geometric { q: 0.5 },
        });
        assert_eq!(d_of_epsilon(&small, 0.5).unwrap(), IndexBound::Finite(0));
    }

    #[test]
    fn constant_weight_below_threshold_is_zero_not_infinite() {
        let m = wt(Family::Constant { value: 0.1 });
        assert_eq!(d_of_epsilon(&m, 0.5).unwrap(), IndexBound::Finite(0));
        assert_eq!(d_of_epsilon(&m, 0.2).unwrap(), IndexBound::Infinite);
    }

    #[test]
    fn zero_tail_caps_the_index() {
        let m = eig(Family::List {
            values: vec![1.0, 0.5, 0.25],
            tail: Tail::Zero,
        });
        assert_eq!(j_of_epsilon(&m, 1e-12).unwrap(), 3);
        assert_eq!(
            threshold_index(&m, f64::NEG_INFINITY).unwrap(),
            IndexBound::Finite(3)
        );
    }

    #[test]
    fn slowly_decaying_family_exceeds_search_range() {
        let m = eig(Family::LogPower { beta: 1.01 });
        let err = j_of_epsilon(&m, 1e-10).unwrap_err();
        assert!(matches!(err, SeqError::RangeExceeded { .. }), "{err:?}");
    }

    #[test]
    fn rejects_nonpositive_epsilon() {
        assert!(j_of_epsilon(&eig(Family::Poly { alpha: 1.0 }), 0.0).is_err());
        assert!(d_of_epsilon(&wt(Family::Poly { alpha: 1.0 }), -1.0).is_err());
    }

    fn any_eig() -> impl Strategy<Value = SequenceModel> {
        prop_oneof![
            (0.2f64..4.0).prop_map(|a| eig(Family::Poly { alpha: a })),
            (0.05f64..0.95).prop_map(|q| eig(Family::Geometric { q })),
            (1.1f64..3.0).prop_map(|b| eig(Family::LogPower { beta: b })),
            (0.1f64..2.0, 0.3f64..2.0).prop_map(|(c, b)| eig(Family::ExpPower { c, beta: b })),
            (0.05f64..1.0).prop_map(|c| eig(Family::DoubleExp { c })),
        ]
    }

    proptest! {
        #[test]
        fn bracketing_and_scan_agreement(model in any_eig(), eps in 0.02f64..0.99) {
            let j = j_of_epsilon(&model, eps).unwrap();
            let t = 2.0 * eps.ln();
            prop_assert!(j >= 1);
            prop_assert!(model.ln_at(j) > t);
            prop_assert!(model.ln_at(j + 1) <= t);
            if j < 100_000 {
                prop_assert_eq!(j, scan(&model, t, 200_000));
            }
        }

        #[test]
        fn nondecreasing_as_eps_shrinks(model in any_eig(), a in 0.02f64..0.99, b in 0.02f64..0.99) {
            let (small, large) = if a < b { (a, b) } else { (b, a) };
            prop_assert!(j_of_epsilon(&model, small).unwrap() >= j_of_epsilon(&model, large).unwrap());
        }

        #[test]
        fn weights_bracketing(q in 0.05f64..0.95, eps in 0.001f64..0.99) {
            let m = wt(Family::Geometric { q });
            let d = d_of_epsilon(&m, eps).unwrap().finite().unwrap();
            let t = 2.0 * eps.ln();
            if d >= 1 {
                prop_assert!(m.ln_at(d) > t);
            }
            prop_assert!(m.ln_at(d + 1) <= t);
        }

        #[test]
        fn evaluation_is_monotone(model in any_eig(), j in 1u64..1_000_000) {
            prop_assert!(model.ln_at(j + 1) <= model.ln_at(j));
        }
    }
}
