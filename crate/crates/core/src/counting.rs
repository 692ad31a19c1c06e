//! Exact information complexity by enumeration of the index set
//! `A_{ε,d} = {j ∈ N^d : ∏_k λ_{k,j_k} > ε²}`.
//!
//! The enumerator walks multi-indices by their support: the coordinates
//! whose index is at least 2. Starting from the all-ones index, it tries
//! coordinates in increasing order and, for each, indices `2, 3, …` in
//! increasing order, descending whenever the running log product still
//! exceeds `2 ln ε`. Two cut-offs make it output-sensitive:
//!
//! * for fixed `k`, `λ_{k,j}` is non-increasing in `j`, so the first failing
//!   `j` ends the index loop;
//! * `γ_k` is non-increasing in `k`, so once `γ_k λ_2` fails no later
//!   coordinate can leave index 1 either.
//!
//! Every step the walker takes either counts an index or is one of these
//! cut-offs, so work is proportional to the count.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::seqcore::{threshold_index, IndexBound, ProblemInstance, SeqError, SequenceModel};

/// Default upper limit on the number of counted indices.
pub const DEFAULT_CAP: u64 = 1_000_000_000;

/// Largest grid the brute-force oracle agrees to enumerate.
pub const BRUTEFORCE_GRID_LIMIT: u64 = 100_000_000;

/// Longest sequence prefix kept in memory; later entries are evaluated on demand.
const CACHE_LIMIT: u64 = 1 << 24;

/// Increments a parallel worker accumulates before publishing to the shared counter.
const FLUSH_EVERY: u64 = 1 << 12;

#[derive(Debug, Error)]
pub enum CountError {
    #[error(transparent)]
    Sequence(#[from] SeqError),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("brute-force grid of {points} points exceeds the limit of {limit}")]
    GridTooLarge { points: String, limit: u64 },
}

/// Exact cardinality, or the marker that it exceeds the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum CountOutcome {
    Exact(u64),
    /// The true count is strictly larger than the carried cap.
    Capped(u64),
}

impl CountOutcome {
    pub fn exact(self) -> Option<u64> {
        match self {
            CountOutcome::Exact(n) => Some(n),
            CountOutcome::Capped(_) => None,
        }
    }

    pub fn is_capped(self) -> bool {
        matches!(self, CountOutcome::Capped(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CountResult {
    pub count: CountOutcome,
    /// Candidate `(coordinate, index)` pairs examined, plus the root.
    pub nodes_visited: u64,
    /// Largest coordinate index the enumeration reached.
    pub max_depth_reached: u64,
    #[serde(serialize_with = "serialize_millis")]
    pub elapsed: Duration,
}

fn serialize_millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

impl CountResult {
    fn zero(start: Instant) -> Self {
        CountResult {
            count: CountOutcome::Exact(0),
            nodes_visited: 0,
            max_depth_reached: 0,
            elapsed: start.elapsed(),
        }
    }
}

/// Where per-coordinate weights come from.
#[derive(Clone, Copy)]
enum Weights<'a> {
    Model(&'a SequenceModel),
    /// Every coordinate carries the same weight, given by its logarithm.
    Frozen(f64),
}

/// Log-domain view of an instance prepared for enumeration at one `ε`.
struct Lattice {
    d: u64,
    ln_threshold: f64,
    /// `ln λ_j` at position `j - 1`, covering `j = 1..=j(ε)+1` up to the cache limit.
    ln_lambda: Vec<f64>,
    /// `ln γ_k` at position `k - 1`, covering every coordinate that can leave index 1.
    ln_gamma: Vec<f64>,
    lambdas: SequenceModel,
    weights: WeightsOwned,
    /// Coordinates beyond this cannot leave index 1.
    k_limit: u64,
}

enum WeightsOwned {
    Model(SequenceModel),
    Frozen(f64),
}

impl Lattice {
    fn new(
        d: u64,
        lambdas: &SequenceModel,
        weights: Weights<'_>,
        eps: f64,
    ) -> Result<Option<Self>, CountError> {
        check_eps(eps)?;
        if eps >= 1.0 {
            return Ok(None);
        }
        let ln_threshold = 2.0 * eps.ln();
        let j_eps = match threshold_index(lambdas, ln_threshold)? {
            IndexBound::Finite(n) => n,
            IndexBound::Infinite => {
                return Err(SeqError::InvalidArgument(
                    "eigenvalue sequence does not tend to zero".into(),
                )
                .into())
            }
        };
        let lambda_len = j_eps.saturating_add(1).min(CACHE_LIMIT);
        let ln_lambda: Vec<f64> = (1..=lambda_len).map(|j| lambdas.ln_at(j)).collect();
        let ln_lambda2 = lambdas.ln_at(2);

        // γ_k λ_2 > ε² is needed for coordinate k to leave index 1.
        let (k_limit, ln_gamma, weights) = match weights {
            Weights::Model(g) => {
                let active = match threshold_index(g, ln_threshold - ln_lambda2) {
                    Ok(IndexBound::Finite(n)) => n,
                    Ok(IndexBound::Infinite) | Err(SeqError::RangeExceeded { .. }) => u64::MAX,
                    Err(e) => return Err(e.into()),
                };
                let k_limit = active.min(d);
                let cache = k_limit.min(CACHE_LIMIT);
                let ln_gamma = (1..=cache).map(|k| g.ln_at(k)).collect();
                (k_limit, ln_gamma, WeightsOwned::Model(g.clone()))
            }
            Weights::Frozen(lg) => {
                let k_limit = if lg + ln_lambda2 > ln_threshold { d } else { 0 };
                (k_limit, Vec::new(), WeightsOwned::Frozen(lg))
            }
        };
        Ok(Some(Lattice {
            d,
            ln_threshold,
            ln_lambda,
            ln_gamma,
            lambdas: lambdas.clone(),
            weights,
            k_limit,
        }))
    }

    #[inline]
    fn ln_lambda(&self, j: u64) -> f64 {
        match self.ln_lambda.get((j - 1) as usize) {
            Some(v) => *v,
            None => self.lambdas.ln_at(j),
        }
    }

    #[inline]
    fn ln_gamma(&self, k: u64) -> f64 {
        match &self.weights {
            WeightsOwned::Frozen(lg) => *lg,
            WeightsOwned::Model(g) => match self.ln_gamma.get((k - 1) as usize) {
                Some(v) => *v,
                None => g.ln_at(k),
            },
        }
    }
}

/// Per-walk enumeration statistics.
struct Stats {
    nodes: u64,
    max_depth: u64,
}

/// Extends the support behind `prefix` by coordinates `≥ first_k`, calling
/// `sink` once per counted index. The index described by `prefix` itself is
/// not counted here. Returns `false` when `sink` asked to stop.
fn walk<F: FnMut() -> bool>(
    lat: &Lattice,
    first_k: u64,
    first_j: u64,
    prefix: f64,
    stats: &mut Stats,
    mut sink: F,
) -> bool {
    // frame: (prefix, next coordinate, next index at that coordinate)
    let mut stack: Vec<(f64, u64, u64)> = vec![(prefix, first_k, first_j)];
    while let Some(top) = stack.last_mut() {
        let (pre, k, j) = *top;
        if k > lat.k_limit {
            stack.pop();
            continue;
        }
        stats.nodes += 1;
        stats.max_depth = stats.max_depth.max(k);
        let val = pre + lat.ln_gamma(k) + lat.ln_lambda(j);
        if val > lat.ln_threshold {
            if !sink() {
                return false;
            }
            top.2 = j + 1;
            if k < lat.d {
                stack.push((val, k + 1, 2));
            }
        } else if j == 2 {
            // γ is non-increasing: no later coordinate can leave index 1 either.
            stack.pop();
        } else {
            *top = (pre, k + 1, 2);
        }
    }
    true
}

fn check_eps(eps: f64) -> Result<(), CountError> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(CountError::InvalidArgument(format!(
            "epsilon must be a positive finite number, got {eps}"
        )));
    }
    Ok(())
}

fn check_cap(cap: u64) -> Result<(), CountError> {
    if cap == 0 {
        return Err(CountError::InvalidArgument("cap must be at least 1".into()));
    }
    Ok(())
}

fn count_sequential(lat: Option<Lattice>, cap: u64, start: Instant) -> CountResult {
    let Some(lat) = lat else {
        return CountResult::zero(start);
    };
    // the all-ones index is always counted: its product is 1 > ε²
    let mut count: u64 = 1;
    let mut stats = Stats {
        nodes: 1,
        max_depth: 0,
    };
    let capped = !walk(&lat, 1, 2, 0.0, &mut stats, || {
        if count >= cap {
            false
        } else {
            count += 1;
            true
        }
    });
    CountResult {
        count: if capped {
            CountOutcome::Capped(cap)
        } else {
            CountOutcome::Exact(count)
        },
        nodes_visited: stats.nodes,
        max_depth_reached: stats.max_depth,
        elapsed: start.elapsed(),
    }
}

/// Exact `|A_{ε,d}|`, aborting with [`CountOutcome::Capped`] the moment the
/// count would exceed `cap`. `ε ≥ 1` gives 0.
pub fn count_exact(
    instance: &ProblemInstance,
    eps: f64,
    cap: u64,
) -> Result<CountResult, CountError> {
    let start = Instant::now();
    check_cap(cap)?;
    let lat = Lattice::new(
        instance.d(),
        instance.lambdas(),
        Weights::Model(instance.gammas()),
        eps,
    )?;
    Ok(count_sequential(lat, cap, start))
}

/// Block count with every weight frozen at `γ_{first}`: the cardinality of
/// `{j ∈ N^len : ∏ λ_{γ_first, j_k} > ε²}`.
pub fn count_block_exact(
    instance: &ProblemInstance,
    first: u64,
    len: u64,
    eps: f64,
    cap: u64,
) -> Result<CountResult, CountError> {
    let start = Instant::now();
    check_cap(cap)?;
    let lg = frozen_weight(instance, first, len)?;
    let lat = Lattice::new(len, instance.lambdas(), Weights::Frozen(lg), eps)?;
    Ok(count_sequential(lat, cap, start))
}

fn frozen_weight(instance: &ProblemInstance, first: u64, len: u64) -> Result<f64, CountError> {
    if first == 0 || len == 0 {
        return Err(CountError::InvalidArgument(
            "block start and length must be positive".into(),
        ));
    }
    Ok(instance.gammas().ln_at(first))
}

/// Same result as [`count_exact`], with the subtrees rooted at each first
/// active coordinate counted on the rayon pool. Uncapped counts are
/// identical to the sequential ones.
pub fn count_exact_parallel(
    instance: &ProblemInstance,
    eps: f64,
    cap: u64,
) -> Result<CountResult, CountError> {
    let start = Instant::now();
    check_cap(cap)?;
    let Some(lat) = Lattice::new(
        instance.d(),
        instance.lambdas(),
        Weights::Model(instance.gammas()),
        eps,
    )?
    else {
        return Ok(CountResult::zero(start));
    };
    let total = AtomicU64::new(1);
    let stop = AtomicBool::new(false);
    let nodes = AtomicU64::new(1);
    let depth = AtomicU64::new(0);
    let kmax = lat.k_limit;
    (1..=kmax).into_par_iter().for_each(|k| {
        if stop.load(Ordering::Relaxed) {
            return;
        }
        let mut stats = Stats {
            nodes: 0,
            max_depth: 0,
        };
        let mut local = 0u64;
        // Restrict the walk to supports whose first coordinate is exactly k:
        // iterate the index at k here and hand each subtree to the walker.
        let mut j = 2u64;
        loop {
            stats.nodes += 1;
            stats.max_depth = stats.max_depth.max(k);
            let val = lat.ln_gamma(k) + lat.ln_lambda(j);
            if val <= lat.ln_threshold {
                break;
            }
            local += 1;
            let finished = k >= lat.d
                || walk(&lat, k + 1, 2, val, &mut stats, || {
                    local += 1;
                    if local >= FLUSH_EVERY {
                        let seen = total.fetch_add(local, Ordering::Relaxed) + local;
                        local = 0;
                        if seen > cap {
                            stop.store(true, Ordering::Relaxed);
                        }
                    }
                    !stop.load(Ordering::Relaxed)
                });
            if !finished || stop.load(Ordering::Relaxed) {
                break;
            }
            j += 1;
        }
        let seen = total.fetch_add(local, Ordering::Relaxed) + local;
        if seen > cap {
            stop.store(true, Ordering::Relaxed);
        }
        nodes.fetch_add(stats.nodes, Ordering::Relaxed);
        depth.fetch_max(stats.max_depth, Ordering::Relaxed);
    });
    let total = total.into_inner();
    let count = if stop.into_inner() || total > cap {
        CountOutcome::Capped(cap)
    } else {
        CountOutcome::Exact(total)
    };
    Ok(CountResult {
        count,
        nodes_visited: nodes.into_inner(),
        max_depth_reached: depth.into_inner(),
        elapsed: start.elapsed(),
    })
}

fn grid_points(side: u64, d: u64) -> Result<u64, CountError> {
    let too_large = || CountError::GridTooLarge {
        points: format!("{side}^{d}"),
        limit: BRUTEFORCE_GRID_LIMIT,
    };
    let exp = u32::try_from(d).map_err(|_| too_large())?;
    match side.checked_pow(exp) {
        Some(n) if n <= BRUTEFORCE_GRID_LIMIT => Ok(n),
        _ if side == 1 => Ok(1),
        _ => Err(too_large()),
    }
}

fn bruteforce(
    d: u64,
    lambdas: &SequenceModel,
    ln_gamma: &dyn Fn(u64) -> f64,
    eps: f64,
    per_coord_limit: u64,
) -> Result<u64, CountError> {
    check_eps(eps)?;
    if per_coord_limit == 0 {
        return Err(CountError::InvalidArgument(
            "per-coordinate limit must be at least 1".into(),
        ));
    }
    if eps >= 1.0 {
        return Ok(0);
    }
    let j_eps = crate::seqcore::j_of_epsilon(lambdas, eps)?;
    if per_coord_limit < j_eps {
        return Err(CountError::InvalidArgument(format!(
            "per-coordinate limit {per_coord_limit} is below j(eps) = {j_eps}; the box would miss indices"
        )));
    }
    grid_points(per_coord_limit, d)?;
    let ln_threshold = 2.0 * eps.ln();
    if per_coord_limit == 1 {
        return Ok(1);
    }
    let dims = d as usize;
    let ln_lambda: Vec<f64> = (1..=per_coord_limit).map(|j| lambdas.ln_at(j)).collect();
    let ln_g: Vec<f64> = (1..=d).map(ln_gamma).collect();
    let mut idx = vec![1u64; dims];
    let mut count = 0u64;
    loop {
        let mut total = 0.0;
        for (k, &j) in idx.iter().enumerate() {
            if j >= 2 {
                total += ln_g[k] + ln_lambda[(j - 1) as usize];
            }
        }
        if total > ln_threshold {
            count += 1;
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == dims {
                return Ok(count);
            }
            if idx[pos] < per_coord_limit {
                idx[pos] += 1;
                break;
            }
            idx[pos] = 1;
            pos += 1;
        }
    }
}

/// Unpruned count over the box `{1..per_coord_limit}^d`; the independent
/// oracle for [`count_exact`]. Refuses boxes above
/// [`BRUTEFORCE_GRID_LIMIT`] points and boxes smaller than `j(ε)` per side.
pub fn count_bruteforce(
    instance: &ProblemInstance,
    eps: f64,
    per_coord_limit: u64,
) -> Result<u64, CountError> {
    let g = instance.gammas();
    bruteforce(
        instance.d(),
        instance.lambdas(),
        &|k| g.ln_at(k),
        eps,
        per_coord_limit,
    )
}

/// Brute-force counterpart of [`count_block_exact`].
pub fn count_block_bruteforce(
    instance: &ProblemInstance,
    first: u64,
    len: u64,
    eps: f64,
    per_coord_limit: u64,
) -> Result<u64, CountError> {
    let lg = frozen_weight(instance, first, len)?;
    bruteforce(len, instance.lambdas(), &|_| lg, eps, per_coord_limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::{j_of_epsilon, Family, Tail};
    use proptest::prelude::*;

    fn inst(d: u64, lam: Family, gam: Family) -> ProblemInstance {
        ProblemInstance::new(
            d,
            SequenceModel::eigenvalues(lam).unwrap(),
            SequenceModel::weights(gam).unwrap(),
        )
        .unwrap()
    }

    fn halving(d: u64) -> ProblemInstance {
        inst(
            d,
            Family::Geometric { q: 0.5 },
            Family::Geometric { q: 0.5 },
        )
    }

    #[test]
    fn halving_pair_in_two_dimensions() {
        // (1,1), (2,1), (3,1), (1,2)
        let r = count_exact(&halving(2), 0.25, DEFAULT_CAP).unwrap();
        assert_eq!(r.count, CountOutcome::Exact(4));
        assert!(r.nodes_visited >= 4);
        assert_eq!(count_bruteforce(&halving(2), 0.25, 4).unwrap(), 4);
    }

    #[test]
    fn epsilon_one_counts_nothing() {
        assert_eq!(
            count_exact(&halving(3), 1.0, 10).unwrap().count,
            CountOutcome::Exact(0)
        );
        assert_eq!(count_bruteforce(&halving(3), 1.0, 4).unwrap(), 0);
    }

    #[test]
    fn single_unit_weight_reduces_to_threshold_index() {
        for eps in [0.5, 0.1, 0.013] {
            let i = inst(
                1,
                Family::Poly { alpha: 1.5 },
                Family::Constant { value: 1.0 },
            );
            let j = j_of_epsilon(i.lambdas(), eps).unwrap();
            assert_eq!(
                count_exact(&i, eps, DEFAULT_CAP).unwrap().count,
                CountOutcome::Exact(j)
            );
        }
    }

    #[test]
    fn zero_tail_after_first_index() {
        let i = inst(
            3,
            Family::List {
                values: vec![1.0],
                tail: Tail::Zero,
            },
            Family::Poly { alpha: 1.0 },
        );
        assert_eq!(count_bruteforce(&i, 0.01, 1).unwrap(), 1);
        assert_eq!(
            count_exact(&i, 0.01, 5).unwrap().count,
            CountOutcome::Exact(1)
        );
    }

    #[test]
    fn just_below_the_largest_single_product() {
        // ε² slightly below γ_1 λ_2: only single-coordinate moves to index 2 survive
        let i = inst(5, Family::Geometric { q: 0.5 }, Family::Poly { alpha: 0.1 });
        let top = i.gammas().ln_at(1) + i.lambdas().ln_at(2);
        let eps = ((top - 1e-9) / 2.0).exp();
        let singles = (1..=5u64)
            .filter(|&k| i.gammas().ln_at(k) + i.lambdas().ln_at(2) > 2.0 * eps.ln())
            .count() as u64;
        assert_eq!(
            count_exact(&i, eps, 100).unwrap().count,
            CountOutcome::Exact(1 + singles)
        );
        assert_eq!(count_bruteforce(&i, eps, 2).unwrap(), 1 + singles);
    }

    #[test]
    fn cap_marks_larger_counts() {
        let i = inst(
            4,
            Family::Poly { alpha: 1.0 },
            Family::Constant { value: 1.0 },
        );
        let truth = count_exact(&i, 0.1, DEFAULT_CAP)
            .unwrap()
            .count
            .exact()
            .unwrap();
        assert_eq!(
            count_exact(&i, 0.1, truth).unwrap().count,
            CountOutcome::Exact(truth)
        );
        assert_eq!(
            count_exact(&i, 0.1, truth - 1).unwrap().count,
            CountOutcome::Capped(truth - 1)
        );
        assert!(count_exact_parallel(&i, 0.1, truth - 1)
            .unwrap()
            .count
            .is_capped());
    }

    #[test]
    fn huge_dimension_with_decaying_weights_is_cheap() {
        let i = halving(1_000_000_000_000);
        let r = count_exact(&i, 1e-3, DEFAULT_CAP).unwrap();
        let saturated = count_exact(&halving(40), 1e-3, DEFAULT_CAP).unwrap();
        assert_eq!(r.count, saturated.count);
    }

    #[test]
    fn bruteforce_guards() {
        assert!(matches!(
            count_bruteforce(&halving(10), 0.1, 20),
            Err(CountError::GridTooLarge { .. })
        ));
        assert!(count_bruteforce(&halving(2), 0.1, 2).is_err());
        assert!(count_exact(&halving(2), 0.0, 5).is_err());
        assert!(count_exact(&halving(2), 0.5, 0).is_err());
    }

    #[test]
    fn frozen_block_counts_agree() {
        let i = inst(16, Family::Poly { alpha: 2.0 }, Family::Poly { alpha: 1.0 });
        for (first, len) in [(1u64, 1u64), (2, 2), (4, 4)] {
            for eps in [0.3, 0.1, 0.05] {
                let j = j_of_epsilon(i.lambdas(), eps).unwrap();
                let exact = count_block_exact(&i, first, len, eps, DEFAULT_CAP).unwrap();
                let brute = count_block_bruteforce(&i, first, len, eps, j.max(1)).unwrap();
                assert_eq!(
                    exact.count,
                    CountOutcome::Exact(brute),
                    "block {first}+{len} eps {eps}"
                );
            }
        }
    }

    fn any_pair() -> impl Strategy<Value = (Family, Family)> {
        let lam = prop_oneof![
            (0.5f64..4.0).prop_map(|a| Family::Poly { alpha: a }),
            (0.1f64..0.9).prop_map(|q| Family::Geometric { q }),
            (1.2f64..3.0).prop_map(|b| Family::LogPower { beta: b }),
            (0.3f64..2.0).prop_map(|c| Family::ExpPower { c, beta: 1.0 }),
            (0.2f64..1.0).prop_map(|c| Family::DoubleExp { c }),
        ];
        let gam = prop_oneof![
            (0.1f64..3.0).prop_map(|a| Family::Poly { alpha: a }),
            (0.1f64..0.95).prop_map(|q| Family::Geometric { q }),
            (0.1f64..1.0).prop_map(|c| Family::ExpPower { c, beta: 1.5 }),
            (0.05f64..0.5).prop_map(|c| Family::DoubleExp { c }),
            (0.3f64..=1.0).prop_map(|value| Family::Constant { value }),
        ];
        (lam, gam)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn exact_matches_bruteforce((lam, gam) in any_pair(), d in 1u64..=3, eps in 0.05f64..0.95) {
            let i = inst(d, lam, gam);
            let j = j_of_epsilon(i.lambdas(), eps).unwrap();
            prop_assume!(grid_points(j.max(1), d).is_ok());
            let brute = count_bruteforce(&i, eps, j.max(1)).unwrap();
            prop_assert_eq!(count_exact(&i, eps, DEFAULT_CAP).unwrap().count, CountOutcome::Exact(brute));
        }

        #[test]
        fn parallel_is_bit_identical((lam, gam) in any_pair(), d in 1u64..=6, eps in 0.01f64..0.95) {
            let i = inst(d, lam, gam);
            let seq = count_exact(&i, eps, 2_000_000).unwrap();
            let par = count_exact_parallel(&i, eps, 2_000_000).unwrap();
            if let CountOutcome::Exact(n) = seq.count {
                prop_assert_eq!(par.count, CountOutcome::Exact(n));
            } else {
                prop_assert!(par.count.is_capped());
            }
        }

        #[test]
        fn monotone_in_epsilon_and_dimension((lam, gam) in any_pair(), d in 1u64..=4, a in 0.05f64..0.95, b in 0.05f64..0.95) {
            let (small, large) = if a < b { (a, b) } else { (b, a) };
            let i = inst(d, lam, gam);
            let n = |inst: &ProblemInstance, e: f64| count_exact(inst, e, 5_000_000).unwrap().count.exact();
            if let (Some(x), Some(y)) = (n(&i, small), n(&i, large)) {
                prop_assert!(x >= y);
            }
            let wider = i.with_dimension(d + 1).unwrap();
            if let (Some(x), Some(y)) = (n(&wider, large), n(&i, large)) {
                prop_assert!(x >= y);
            }
        }
    }
}
