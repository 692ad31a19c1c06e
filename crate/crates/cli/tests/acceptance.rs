//! Acceptance suite: eight criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the verdict lines always reach the
//! console; the process exits non-zero if any criterion fails.

use std::fs;
use std::process::Command;
use std::time::Instant;

use exptract::bounds::{
    block_bounds, ln_binomial_bound, product_block_bound, saturation_bound, LOG_COMPARISON_SLACK,
};
use exptract::counting::{count_block_bruteforce, count_bruteforce, count_exact, DEFAULT_CAP};
use exptract::seqcore::{
    envelope_regularize, envelope_violations, j_of_epsilon, Family, ProblemInstance, SequenceModel,
};
use exptract::tract::{
    classify, eigenvalue_registry, registry, weight_registry, TractContext, Verdict,
};
use exptract_cli::config::log_grid;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest brute-force box enumerated by the suite.
const ORACLE_BOX: f64 = 1e6;

type Criterion = fn() -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(violations: &[String], detail: String) -> Outcome {
    let mut detail = detail;
    if !violations.is_empty() {
        detail.push_str(&format!(
            "; {} violations, first: {}",
            violations.len(),
            violations[0]
        ));
    }
    Outcome {
        pass: violations.is_empty(),
        detail,
    }
}

fn exact(inst: &ProblemInstance, eps: f64, cap: u64) -> Option<u64> {
    count_exact(inst, eps, cap).unwrap().count.exact()
}

/// Registry pairs × d ∈ {1..4} × a 10-point ε grid, kept when the
/// brute-force box `j(ε)^d` is within [`ORACLE_BOX`].
fn oracle_instances() -> Vec<(String, ProblemInstance, f64)> {
    let grid = log_grid(0.9, 1e-4, 10);
    let mut out = Vec::new();
    for (l, g) in registry() {
        for d in 1..=4u64 {
            for &eps in &grid {
                let j = j_of_epsilon(&l.model, eps).unwrap().max(1);
                if (j as f64).powi(d as i32) <= ORACLE_BOX {
                    let inst = ProblemInstance::new(d, l.model.clone(), g.model.clone()).unwrap();
                    out.push((
                        format!("{} / {} d={d} eps={eps}", l.name, g.name),
                        inst,
                        eps,
                    ));
                }
            }
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let instances = oracle_instances();
    let mut violations = Vec::new();
    for (name, inst, eps) in &instances {
        let j = j_of_epsilon(inst.lambdas(), *eps).unwrap().max(1);
        let oracle = count_bruteforce(inst, *eps, j).unwrap();
        let fast = exact(inst, *eps, u64::MAX);
        if fast != Some(oracle) {
            violations.push(format!("{name}: exact {fast:?}, brute force {oracle}"));
        }
    }
    if instances.len() < 200 {
        violations.push(format!(
            "only {} instances within the oracle guard",
            instances.len()
        ));
    }
    outcome(
        &violations,
        format!("{} instances, tolerance 0", instances.len()),
    )
}

fn criterion_2() -> Outcome {
    let mut violations = Vec::new();
    let mut checked = 0;
    let mut saturations = 0;
    for (name, inst, eps) in oracle_instances() {
        if !inst.gammas().tends_to_zero() {
            continue;
        }
        checked += 1;
        let s = saturation_bound(&inst, eps).unwrap();
        let Some(n) = exact(&inst, eps, DEFAULT_CAP) else {
            violations.push(format!("{name}: count capped"));
            continue;
        };
        if (n as f64).ln() > s.ln_upper + LOG_COMPARISON_SLACK {
            violations.push(format!(
                "{name}: ln count {} > {}",
                (n as f64).ln(),
                s.ln_upper
            ));
        }
        if inst.d() < s.saturation_d {
            continue;
        }
        let base = exact(
            &inst.with_dimension(s.saturation_d.max(1)).unwrap(),
            eps,
            DEFAULT_CAP,
        );
        for extra in [0, 1, 5, 1000] {
            let dd = inst.d() + extra;
            saturations += 1;
            let here = exact(&inst.with_dimension(dd).unwrap(), eps, DEFAULT_CAP);
            if here != base {
                violations.push(format!(
                    "{name}: count at d={dd} is {here:?}, at d(eps)={} is {base:?}",
                    s.saturation_d
                ));
            }
        }
    }
    outcome(
        &violations,
        format!("{checked} instances with decaying weights, {saturations} saturation comparisons"),
    )
}

fn criterion_3() -> Outcome {
    let fast: Vec<_> = eigenvalue_registry()
        .into_iter()
        .filter(|e| {
            [
                "geometric(0.5)",
                "exppower(1,1)",
                "doubleexp(1)",
                "list(1,0.5,0.25;zero)",
                "list(1,0.6;geometric(0.3))",
            ]
            .contains(&e.name.as_str())
        })
        .collect();
    let grid = log_grid(0.9, 1e-3, 10);
    let mut violations = Vec::new();
    let (mut products, mut blocks, mut skipped) = (0, 0, 0);
    for l in &fast {
        for g in weight_registry() {
            for d in [8u64, 12, 16] {
                let inst = ProblemInstance::new(d, l.model.clone(), g.model.clone()).unwrap();
                for &eps in &grid {
                    let name = format!("{} / {} d={d} eps={eps}", l.name, g.name);
                    let Ok(bounds) = block_bounds(&inst, eps) else {
                        skipped += 1;
                        continue;
                    };
                    if let Some(n) = exact(&inst, eps, 1_000_000) {
                        products += 1;
                        let p = product_block_bound(&inst, eps).unwrap();
                        if (n as f64).ln() > p + LOG_COMPARISON_SLACK {
                            violations.push(format!(
                                "{name}: ln count {} > product {p}",
                                (n as f64).ln()
                            ));
                        }
                    }
                    let j = j_of_epsilon(inst.lambdas(), eps).unwrap().max(1);
                    for b in bounds {
                        let len = b.block.len();
                        if (j as f64).powi(len as i32) > ORACLE_BOX {
                            continue;
                        }
                        blocks += 1;
                        let n = count_block_bruteforce(&inst, b.block.first, len, eps, j).unwrap()
                            as f64;
                        if n.ln() > b.ln_power_bound + LOG_COMPARISON_SLACK
                            || n.ln() > b.ln_sum_bound + LOG_COMPARISON_SLACK
                        {
                            violations.push(format!(
                                "{name} block {}: ln {} vs {} / {}",
                                b.block.index,
                                n.ln(),
                                b.ln_power_bound,
                                b.ln_sum_bound
                            ));
                        }
                    }
                }
            }
        }
    }
    if products == 0 || blocks == 0 {
        violations.push("nothing was checked".into());
    }
    outcome(
        &violations,
        format!("{products} product comparisons, {blocks} block comparisons, {skipped} undefined budgets skipped"),
    )
}

fn criterion_4() -> Outcome {
    let mut violations = Vec::new();
    let mut pairs = 0;
    for m in 1..=60u64 {
        for s in 1..=m {
            pairs += 1;
            let (exact, bound) = ln_binomial_bound(m, s).unwrap();
            if exact > bound + LOG_COMPARISON_SLACK {
                violations.push(format!("m={m} s={s}: {exact} > {bound}"));
            }
        }
    }
    outcome(&violations, format!("{pairs} pairs with 1 <= s <= m <= 60"))
}

fn criterion_5() -> Outcome {
    let mut violations = Vec::new();
    let (mut checks, mut agreements, mut flagged) = (0, 0, Vec::new());
    for (l, g) in registry() {
        let r = classify(&l.model, &g.model).unwrap();
        for c in &r.cross_checks {
            checks += 1;
            if !c.consistent {
                violations.push(format!(
                    "{} / {}: {} ({} vs {})",
                    l.name, g.name, c.name, c.left, c.right
                ));
            } else if c.decided_agreement() {
                agreements += 1;
            } else if c.left != c.right {
                flagged.push(format!("{} / {}: {}", l.name, g.name, c.name));
            }
        }
    }
    let mut detail = format!("{checks} paired diagnostics, {agreements} decided agreements, {} inconclusive disagreements", flagged.len());
    if let Some(f) = flagged.first() {
        detail.push_str(&format!(" (first: {f})"));
    }
    outcome(&violations, detail)
}

fn criterion_6() -> Outcome {
    let eig = |f| SequenceModel::eigenvalues(f).unwrap();
    let wt = |f| SequenceModel::weights(f).unwrap();
    let halving = Family::Geometric { q: 0.5 };
    let mut violations = Vec::new();
    let mut expect = |what: &str, got: Option<Verdict>, want: Verdict| {
        if got != Some(want) {
            violations.push(format!("{what}: got {got:?}, expected {want}"));
        }
    };

    let r = classify(&eig(halving.clone()), &wt(Family::DoubleExp { c: 1.0 })).unwrap();
    expect(
        "geometric / doubleexp EXP-UWT",
        r.verdict("EXP-UWT"),
        Verdict::Holds,
    );

    let l = eig(halving);
    let g = wt(Family::ExpPower { c: 1.0, beta: 2.0 });
    let c = TractContext::with_defaults(&l, &g).unwrap();
    expect(
        "geometric / gaussian weak criterion",
        Some(c.weak_criterion(0.5, 1.0).unwrap().verdict),
        Verdict::Holds,
    );
    expect(
        "geometric / gaussian EXP-UWT",
        Some(c.uwt().verdict),
        Verdict::Fails,
    );

    for alpha in [1.0, 2.0] {
        for gf in [
            Family::Geometric { q: 0.5 },
            Family::ExpPower { c: 1.0, beta: 2.0 },
            Family::DoubleExp { c: 1.0 },
            Family::Constant { value: 1.0 },
        ] {
            let c =
                TractContext::with_defaults(&eig(Family::Poly { alpha }), &wt(gf.clone())).unwrap();
            let what = format!("poly({alpha}) / {gf}");
            expect(
                &format!("{what} eigenvalue decay"),
                Some(c.eigenvalue_doubly_log_decay().verdict),
                Verdict::Fails,
            );
            expect(
                &format!("{what} weak criterion"),
                Some(c.weak_criterion(0.5, 1.0).unwrap().verdict),
                Verdict::Fails,
            );
        }
    }
    outcome(&violations, "3 fixtures, 19 verdicts".into())
}

fn criterion_7() -> Outcome {
    let lambdas = eigenvalue_registry();
    let gammas = weight_registry();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let grid = log_grid(0.9, 0.02, 20);
    let mut violations = Vec::new();
    let (mut comparisons, mut capped) = (0, 0);
    for _ in 0..20 {
        let l = &lambdas[rng.gen_range(0..lambdas.len())];
        let g = &gammas[rng.gen_range(0..gammas.len())];
        let name = format!("{} / {}", l.name, g.name);
        let mut table = Vec::new();
        for d in 1..=6u64 {
            let inst = ProblemInstance::new(d, l.model.clone(), g.model.clone()).unwrap();
            table.push(
                grid.iter()
                    .map(|&e| exact(&inst, e, 10_000_000))
                    .collect::<Vec<_>>(),
            );
        }
        for (di, row) in table.iter().enumerate() {
            for (ei, n) in row.iter().enumerate() {
                let Some(n) = *n else {
                    capped += 1;
                    continue;
                };
                // ε grows towards the start of the grid, the dimension down the table
                if ei > 0 {
                    if let Some(coarser) = row[ei - 1] {
                        comparisons += 1;
                        if coarser > n {
                            violations.push(format!(
                                "{name} d={}: count rises with eps at {}",
                                di + 1,
                                grid[ei]
                            ));
                        }
                    }
                }
                if di > 0 {
                    if let Some(smaller) = table[di - 1][ei] {
                        comparisons += 1;
                        if smaller > n {
                            violations.push(format!(
                                "{name}: count falls from d={di} at eps {}",
                                grid[ei]
                            ));
                        }
                    }
                }
            }
        }
    }
    let mut envelopes = 0;
    for _ in 0..1000 {
        let len = rng.gen_range(1..=200);
        let values: Vec<f64> = (0..len)
            .map(|_| 10f64.powf(rng.gen_range(-6.0..6.0)))
            .collect();
        let h = envelope_regularize(&values).unwrap();
        envelopes += 1;
        for v in envelope_violations(&values, &h) {
            violations.push(format!("envelope: {v}"));
        }
    }
    outcome(
        &violations,
        format!("{comparisons} monotonicity comparisons over 20 instances ({capped} capped counts skipped), {envelopes} envelopes"),
    )
}

fn criterion_8() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.toml");
    fs::write(
        &config,
        r#"
command = "sweep"
cap = 1000000
[instance]
lambda = { family = "geometric", q = 0.5 }
gamma = { family = "exppower", c = 1.0, beta = 0.5 }
[grids]
epsilon_min = 0.001
epsilon_max = 0.9
epsilon_points = 12
d = [1, 2, 4, 8, 16]
"#,
    )
    .unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_exptract"))
            .arg("--config")
            .arg(&config)
            .arg("--output")
            .arg(&out)
            .arg("--no-timestamp")
            .status()
            .unwrap();
        (status.success(), fs::read(&out).unwrap_or_default())
    };
    let (ok_a, a) = run("a.csv");
    let (ok_b, b) = run("b.csv");
    let mut violations = Vec::new();
    if !(ok_a && ok_b) {
        violations.push("a sweep run failed".into());
    }
    if a != b {
        violations.push("outputs differ".into());
    }
    if a.is_empty() {
        violations.push("empty output".into());
    }
    let rows = a.iter().filter(|&&c| c == b'\n').count().saturating_sub(1);
    outcome(
        &violations,
        format!("two sweep runs, {rows} rows, {} bytes each", a.len()),
    )
}

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("oracle equivalence", criterion_1),
        ("dimension saturation", criterion_2),
        ("block-bound domination", criterion_3),
        ("binomial estimate", criterion_4),
        ("equivalent-condition consistency", criterion_5),
        ("analytic classification fixtures", criterion_6),
        ("monotonicity and envelopes", criterion_7),
        ("CLI reproducibility", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {} {:<34} {} ({:.2}s): {}",
            i + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
