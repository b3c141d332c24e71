use std::process::{Command, Output};

fn homverify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homverify"))
        .args(args)
        .env_remove("HOMVERIFY_WORKERS")
        .output()
        .expect("spawn homverify")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn counts_independent_sets_of_a_path() {
    let o = homverify(&["count", "ind", "--graph", "g6:Ch"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"count":"8"}"#);
}

#[test]
fn counts_colorings_and_homs() {
    let o = homverify(&["count", "chrom", "--graph", "g6:Bw", "--q", "3"]);
    assert_eq!(json_lines(&o)[0]["count"], "6");
    let o = homverify(&["count", "hom", "--graph", "g6:Bw", "--target", "@K3"]);
    assert_eq!(json_lines(&o)[0]["count"], "6");
    let o = homverify(&["count", "wr", "--graph", "g6:A_"]);
    assert_eq!(json_lines(&o)[0]["count"], "7");
}

#[test]
fn reads_edge_list_files() {
    let dir = std::env::temp_dir().join(format!("homverify-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("c4.txt");
    std::fs::write(&p, "4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let o = homverify(&["poly", "--graph", p.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v = &json_lines(&o)[0];
    assert_eq!(v["degree"], 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn single_edge_widom_ratio_is_tight() {
    let o = homverify(&["verify", "eq_wr", "--graph", "g6:A_", "--edge", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &json_lines(&o)[0];
    assert_eq!(r["verdict"], "holds");
    assert_eq!(r["margin"], "0/1");
}

#[test]
fn small_sweep_holds() {
    let o = homverify(&["sweep", "--claim", "eq_ind", "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    let summary = &lines.last().unwrap()["summary"];
    assert_eq!(summary["violated"], 0);
    assert_eq!(summary["holds"].as_u64().unwrap() as usize, lines.len() - 1);
}

#[test]
fn usage_errors_exit_two_with_one_line() {
    for args in [
        &["count", "bogus", "--graph", "g6:A_"][..],
        &["sweep", "--claim", "eq_ind"],
        &["verify", "not_a_claim", "--graph", "g6:A_"],
        &["count", "ind", "--graph", "g6:??"],
        &["count", "ind", "--graph", "g6:A_", "--workers", "0"],
    ] {
        let o = homverify(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("homverify: "));
    }
}

#[test]
fn output_is_identical_across_worker_counts() {
    let run = |w: &str| {
        let o = homverify(&[
            "--workers",
            w,
            "sweep",
            "--claim",
            "eq_col",
            "--max-n",
            "5",
            "--qs",
            "3,4",
        ]);
        assert_eq!(o.status.code(), Some(0));
        o.stdout
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn scan_finds_the_hardcore_target_monotone() {
    let o = homverify(&["scan", "--target", "@hardcore", "--max-n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o)[0]["satisfies_all"], true);
}

#[test]
fn search_exit_codes() {
    // A single edge can never break monotonicity.
    let o = homverify(&[
        "search",
        "--H",
        "g6:A_",
        "--k",
        "3",
        "--samples",
        "200",
        "--seed",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o)[0]["found"], false);

    let o = homverify(&[
        "search",
        "--H",
        "g6:A_",
        "--k",
        "9",
        "--samples",
        "10",
        "--seed",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
}
