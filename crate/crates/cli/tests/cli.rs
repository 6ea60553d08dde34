use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use statest::model_gen::planted_clique_instance;
use statest_cli::ResultTable;

fn statest(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_statest")).args(args).output().expect("binary runs")
}

fn read_table(dir: &Path, stem: &str) -> ResultTable {
    ResultTable::from_csv(&fs::read_to_string(dir.join(format!("{stem}.csv"))).unwrap()).unwrap()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(statest(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(statest(&["denoise", "--replicates", "many"]).status.code(), Some(2));
    assert_eq!(statest(&["denoise", "--set", "bogus=1", "--out", out]).status.code(), Some(2));
    assert_eq!(statest(&["phase-diagram", "--set", "eps_max=2", "--out", out]).status.code(), Some(2));
    let missing = dir.path().join("missing.conf");
    assert_eq!(statest(&["denoise", "--config", missing.to_str().unwrap()]).status.code(), Some(1));

    let bad = dir.path().join("bad.conf");
    fs::write(&bad, "[denoise]\nlambda = 3\n").unwrap();
    let o = statest(&["denoise", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("lambda"));

    // Output directory path occupied by a file.
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let o = statest(&["phase-diagram", "--out", blocker.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(statest(&["--help"]).status.code(), Some(0));
}

#[test]
fn identical_config_gives_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    fs::write(
        &conf,
        "[run]\nseed = 11\nreplicates = 4\n\n[denoise]\nn = 512\ns0 = 5\nlambda_scales = 0.5, 1, 2\n\n[bias_variance]\nns = 128, 256, 512\nj_max = 16\n",
    )
    .unwrap();
    for cmd in ["denoise", "bias-variance", "phase-diagram"] {
        let mut bytes = Vec::new();
        for (run, jobs) in [("a", "1"), ("b", "2")] {
            let out = dir.path().join(run);
            let o = statest(&[cmd, "--config", conf.to_str().unwrap(), "--jobs", jobs, "--out", out.to_str().unwrap()]);
            assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
            let stem = statest_cli::Experiment::from_name(cmd).unwrap().name();
            bytes.push((fs::read(out.join(format!("{stem}.csv"))).unwrap(), fs::read(out.join(format!("{stem}.svg"))).unwrap()));
        }
        assert_eq!(bytes[0], bytes[1], "{cmd}");
        assert!(!bytes[0].0.contains(&b'\r'));
    }
}

#[test]
fn replicate_rows_do_not_depend_on_the_replicate_count() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for (out, reps) in [(&a, "2"), (&b, "4")] {
        let o = statest(&["lasso", "--seed", "30", "--replicates", reps, "--set", "p=300", "--out", out.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let (ta, tb) = (read_table(&a, "lasso_compare"), read_table(&b, "lasso_compare"));
    assert_eq!(ta.rows(), &tb.rows()[..2]);
}

#[test]
fn amp_needs_fewer_iterations_than_ista() {
    let dir = tempfile::tempdir().unwrap();
    let o = statest(&["lasso", "--replicates", "10", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let t = read_table(dir.path(), "lasso_compare");
    let amp = t.column("amp_iterations").unwrap();
    let ista = t.column("ista_iterations").unwrap();
    assert_eq!(t.column("failures").unwrap().iter().sum::<f64>(), 0.0);
    for (a, i) in amp.iter().zip(&ista) {
        assert!(a.is_finite() && a <= i, "{a} vs {i}");
    }
}

#[test]
fn phase_diagram_plot_is_one_monotone_curve() {
    let dir = tempfile::tempdir().unwrap();
    assert!(statest(&["phase-diagram", "--out", dir.path().to_str().unwrap()]).status.success());
    let t = read_table(dir.path(), "se_phase_diagram");
    assert_eq!(t.rows().len(), 20);
    assert!(t.column("delta_c").unwrap().windows(2).all(|w| w[1] > w[0]));
    let svg = fs::read_to_string(dir.path().join("se_phase_diagram.svg")).unwrap();
    assert_eq!(svg.matches("<path").count(), 1);
}

#[test]
fn clique_from_edge_list() {
    let inst = planted_clique_instance(400, 60, 3).unwrap();
    let mut text = String::from("# planted instance\n");
    for i in 0..400 {
        for j in i + 1..400 {
            if inst.graph.get(i, j) == 1 {
                text.push_str(&format!("{i} {j}\n"));
            }
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    fs::write(&path, text).unwrap();
    let graph_arg = format!("graph={}", path.display());
    let o = statest(&["clique", "--set", &graph_arg, "--set", "k=60", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let t = read_table(dir.path(), "clique_sweep");
    assert_eq!(t.rows().len(), 400);
    for m in ["amp", "spectral", "degree"] {
        let sel: Vec<usize> =
            t.column(m).unwrap().iter().enumerate().filter(|(_, v)| **v == 1.0).map(|(i, _)| i).collect();
        assert_eq!(sel.len(), 60);
        if m != "degree" {
            assert_eq!(sel, inst.support, "{m}");
        }
    }
    let o = statest(&["clique", "--set", &graph_arg, "--set", "k=0", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let missing = format!("graph={}", dir.path().join("none.txt").display());
    assert_eq!(statest(&["clique", "--set", &missing, "--set", "k=5"]).status.code(), Some(1));
}

#[test]
fn amp_success_rate_crosses_one_half_near_the_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let o = statest(&[
        "clique",
        "--replicates",
        "20",
        "--set",
        "n=8000",
        "--set",
        "kappas=0.55, 0.75",
        "--set",
        "methods=amp",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let rate = read_table(dir.path(), "clique_sweep").column("amp_success_rate").unwrap();
    assert!(rate[0] < 0.5 && rate[1] > 0.5, "{rate:?}");
}
