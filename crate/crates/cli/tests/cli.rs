//! End-to-end runs of the `exptract` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn exptract(dir: &Path, config: &str, extra: &[&str]) -> Output {
    let path = dir.join("run.toml");
    fs::write(&path, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_exptract"))
        .arg("--config")
        .arg(&path)
        .args(extra)
        .current_dir(dir)
        .env_remove("EXPTRACT_THREADS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const HALVING: &str = r#"
[instance]
d = 2
lambda = { family = "geometric", q = 0.5 }
gamma = { family = "geometric", q = 0.5 }
"#;

#[test]
fn count_row_for_the_halving_pair() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = format!("command = \"count\"\n{HALVING}\n[grids]\nepsilon = [0.25]\n");
    let o = exptract(dir.path(), &cfg, &["--no-timestamp"]);
    assert!(o.status.success(), "{o:?}");
    assert_eq!(
        stdout(&o),
        "epsilon,d,count,capped,nodes_visited,elapsed_ms\n0.25,2,4,false,8,\n"
    );
}

#[test]
fn timestamp_header_and_elapsed_column_by_default() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = format!("command = \"count\"\n{HALVING}\n[grids]\nepsilon = [0.25]\n");
    let out = stdout(&exptract(dir.path(), &cfg, &[]));
    let lines: Vec<_> = out.lines().collect();
    assert!(lines[0].starts_with("# generated "));
    let row: Vec<_> = lines[2].split(',').collect();
    assert!(row[5].parse::<f64>().unwrap() >= 0.0);
}

#[test]
fn classify_reports_uniform_weak_tractability() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"
command = "classify"
output = "report.csv"
[instance]
lambda = { family = "geometric", q = 0.5 }
gamma = { family = "doubleexp", c = 1.0 }
"#;
    let o = exptract(dir.path(), cfg, &["--no-timestamp"]);
    assert!(o.status.success(), "{o:?}");
    let csv = fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(csv.lines().any(|l| l.starts_with("EXP-UWT,holds")), "{csv}");
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.csv.json")).unwrap())
            .unwrap();
    assert!(json["report"]["entries"].as_array().unwrap().len() > 5);
    assert_eq!(json["report"]["thresholds"]["t_div"], 1000.0);
    assert!(json.get("generated").is_none());
    assert!(stdout(&o).contains("EXP-UWT"));
}

#[test]
fn invalid_config_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"
command = "count"
output = "out.csv"
[instance]
d = 2
lambda = { family = "list", values = [1.0, 0.2, 0.5], tail = "zero" }
gamma = { family = "geometric" }
[grids]
epsilon = [0.25]
"#;
    let o = exptract(dir.path(), cfg, &[]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(
        err.contains("non-increasing") && err.contains("needs `q`"),
        "{err}"
    );
    assert!(!dir.path().join("out.csv").exists());
    assert!(!dir.path().join("out.csv.partial").exists());
}

#[test]
fn range_exceeded_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"
command = "thresholds"
output = "t.csv"
[instance]
lambda = { family = "poly", alpha = 0.01 }
gamma = { family = "geometric", q = 0.5 }
[grids]
epsilon = [0.5]
"#;
    let o = exptract(dir.path(), cfg, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!dir.path().join("t.csv").exists());
}

#[test]
fn capped_count_exits_with_three_when_exactness_is_required() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = format!(
        "command = \"count\"\nrequire_exact = true\n{HALVING}\n[grids]\nepsilon = [0.5, 0.05]\n"
    );
    let o = exptract(
        dir.path(),
        &cfg,
        &["--cap", "5", "--output", "c.csv", "--no-timestamp"],
    );
    assert_eq!(o.status.code(), Some(3));
    let csv = fs::read_to_string(dir.path().join("c.csv")).unwrap();
    assert!(
        csv.lines().nth(2).unwrap().starts_with("0.05,2,5,true,"),
        "{csv}"
    );
    // without the requirement the same run succeeds
    let cfg = cfg.replace("require_exact = true", "");
    assert!(exptract(dir.path(), &cfg, &["--cap", "5"]).status.success());
}

#[test]
fn bounds_columns_and_blocks() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = format!(
        "command = \"bounds\"\n{}\n[grids]\nepsilon = [0.1]\n",
        HALVING.replace("d = 2", "d = 12")
    );
    let out = stdout(&exptract(dir.path(), &cfg, &["--no-timestamp"]));
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(
        lines[0],
        "epsilon,d,ln_count,ln_lemma1,ln_product_bound,block_index,ln_eq2_8,ln_eq2_9"
    );
    assert_eq!(lines.len(), 4, "{out}");
    for row in &lines[1..] {
        let cells: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
        assert!(cells[2] <= cells[3] && cells[2] <= cells[4], "{row}");
    }
    let small = format!("command = \"bounds\"\n{HALVING}\n[grids]\nepsilon = [0.1]\n");
    let out = stdout(&exptract(dir.path(), &small, &["--no-timestamp"]));
    assert!(out.lines().nth(1).unwrap().ends_with(",,,,"), "{out}");
}

#[test]
fn thresholds_table() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"
command = "thresholds"
[instance]
lambda = { family = "geometric", q = 0.5 }
gamma = { family = "constant", value = 1.0 }
[grids]
epsilon = [1.0, 0.25]
"#;
    let out = stdout(&exptract(dir.path(), cfg, &["--no-timestamp"]));
    assert_eq!(out, "epsilon,j_eps,d_eps\n1.0,0,0\n0.25,4,inf\n");
}

#[test]
fn sweep_rows_follow_grid_order_for_any_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"
command = "sweep"
[instance]
lambda = { family = "geometric", q = 0.5 }
gamma = { family = "poly", alpha = 2.0 }
[grids]
epsilon_min = 0.01
epsilon_max = 0.5
epsilon_points = 6
d = [1, 2, 3, 8]
"#;
    let one = stdout(&exptract(
        dir.path(),
        cfg,
        &["--no-timestamp", "--threads", "1"],
    ));
    let four = stdout(&exptract(
        dir.path(),
        cfg,
        &["--no-timestamp", "--threads", "4"],
    ));
    assert_eq!(one, four);
    let rows: Vec<(f64, u64)> = one
        .lines()
        .skip(1)
        .map(|l| {
            let c: Vec<_> = l.split(',').collect();
            (c[0].parse().unwrap(), c[1].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 24);
    assert_eq!(rows[0], (0.5, 1));
    assert_eq!(rows[3], (0.5, 8));
    assert_eq!(rows[23], (0.01, 8));
}
