use super::SeqError;

/// Non-decreasing minorant of a positive sequence with controlled growth.
///
/// With `h̃(k) = min_{j ≥ k} ĥ(j)` over the finite input, the output is
/// `h(1) = h̃(1)` and `h(k+1) = min{ ln(k+2)/ln(k+1) · h(k), h̃(k+1) }`.
/// The result is non-decreasing, bounded by `h̃ ≤ ĥ`, satisfies
/// `h(m) ≤ ln(m+1)/ln(n+1) · h(n)` for `m > n`, and `h(2n) ≤ 2 h(n)`.
pub fn envelope_regularize(values: &[f64]) -> Result<Vec<f64>, SeqError> {
    if values.is_empty() {
        return Err(SeqError::InvalidArgument(
            "envelope needs at least one value".into(),
        ));
    }
    if let Some((i, v)) = values
        .iter()
        .enumerate()
        .find(|(_, v)| !(v.is_finite() && **v > 0.0))
    {
        return Err(SeqError::InvalidArgument(format!(
            "envelope input must be positive and finite; index {} holds {v}",
            i + 1
        )));
    }
    let mut suffix_min = values.to_vec();
    for k in (0..suffix_min.len().saturating_sub(1)).rev() {
        suffix_min[k] = suffix_min[k].min(suffix_min[k + 1]);
    }
    let mut h = Vec::with_capacity(values.len());
    h.push(suffix_min[0]);
    for idx in 1..values.len() {
        // idx is zero-based position of k+1, so k = idx
        let k = idx as f64;
        let growth = (k + 2.0).ln() / (k + 1.0).ln();
        h.push((growth * h[idx - 1]).min(suffix_min[idx]));
    }
    Ok(h)
}

/// Relative slack for the ratio postconditions, covering rounding in the
/// telescoped products only.
pub const ENVELOPE_RELATIVE_SLACK: f64 = 1e-12;

/// Replays the envelope postconditions by direct scan, returning a
/// description of every violation found.
pub fn envelope_violations(input: &[f64], h: &[f64]) -> Vec<String> {
    let mut out = Vec::new();
    if input.len() != h.len() {
        out.push(format!("length mismatch: {} vs {}", input.len(), h.len()));
        return out;
    }
    let n = h.len();
    for k in 0..n {
        let inf_tail = input[k..].iter().copied().fold(f64::INFINITY, f64::min);
        if h[k] > inf_tail || inf_tail > input[k] {
            out.push(format!(
                "h({}) = {} exceeds tail infimum {}",
                k + 1,
                h[k],
                inf_tail
            ));
        }
        if k + 1 < n && h[k + 1] < h[k] {
            out.push(format!("h decreases at {}", k + 2));
        }
        let two = 2 * (k + 1);
        if two <= n && h[two - 1] > 2.0 * h[k] * (1.0 + ENVELOPE_RELATIVE_SLACK) {
            out.push(format!("h({two}) > 2 h({})", k + 1));
        }
    }
    for small in 0..n {
        let lhs_den = (small as f64 + 2.0).ln();
        for large in small + 1..n {
            let ratio = (large as f64 + 2.0).ln() / lhs_den;
            if h[large] > ratio * h[small] * (1.0 + ENVELOPE_RELATIVE_SLACK) {
                out.push(format!(
                    "h({}) exceeds ln({})/ln({}) h({})",
                    large + 1,
                    large + 2,
                    small + 2,
                    small + 1
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constant_input_is_fixed() {
        assert_eq!(envelope_regularize(&[2.5; 6]).unwrap(), vec![2.5; 6]);
    }

    #[test]
    fn hand_executed_recursion() {
        let h = envelope_regularize(&[4.0, 1.0, 9.0]).unwrap();
        assert_eq!(h[0], 1.0);
        assert_eq!(h[1], 1.0);
        let expected = 4f64.ln() / 3f64.ln();
        assert!((h[2] - expected).abs() < 1e-15);
        assert!((h[2] - 1.2619).abs() < 1e-4);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(envelope_regularize(&[1.0, 0.0]).is_err());
        assert!(envelope_regularize(&[-1.0]).is_err());
        assert!(envelope_regularize(&[]).is_err());
    }

    proptest! {
        #[test]
        fn postconditions_hold(values in proptest::collection::vec(1e-3f64..1e3, 1..80)) {
            let h = envelope_regularize(&values).unwrap();
            let violations = crate::seqcore::envelope_violations(&values, &h);
            prop_assert!(violations.is_empty(), "{:?}", violations);
        }
    }
}
