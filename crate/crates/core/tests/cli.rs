use std::process::{Command, Output};

fn rmga(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rmga"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn run_quad_json_reports_zero_bp() {
    let o = rmga(&["run", "--function", "quad", "--seed", "0", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let run = &v["functions"][0]["runs"][0];
    assert_eq!(run["bp"].as_f64(), Some(0.0));
    assert_eq!(run["function"], "quad");
    assert_eq!(run["best_point"], serde_json::json!([0.0, 0.4]));
    assert_eq!(run["terminated_by"], "stalled");
}

#[test]
fn suite_csv_has_header_and_one_row_per_run() {
    let o = rmga(&["suite", "--replicates", "3", "--output", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "function,rms,trm,best_point,bp,sd,seed,terminated_by");
    assert_eq!(lines.len(), 1 + 21);
    assert!(lines.iter().any(|l| l.starts_with("f2,0.1,")));
}

#[test]
fn unknown_function_exits_two_with_no_data() {
    let o = rmga(&["run", "--function", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("nosuch"));
}

#[test]
fn malformed_numbers_exit_two() {
    for args in [
        &["run", "--function", "f1", "--seed", "-1"][..],
        &["run", "--function", "f1", "--replicates", "0"],
        &["run", "--function", "f1", "--max-generations", "many"],
        &["oracle", "--function", "quad", "--resolution", "0"],
    ] {
        let o = rmga(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn identical_argv_gives_identical_bytes() {
    for args in [
        &["suite", "--replicates", "2", "--output", "json"][..],
        &["suite", "--output", "text"],
        &["run", "--function", "f4", "--seed", "3", "--output", "csv"],
        &["trace", "--function", "beale", "--output", "json"],
    ] {
        let a = rmga(args);
        let b = rmga(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn trace_is_line_delimited() {
    let o = rmga(&["trace", "--function", "quad"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("generation,kind,point,value"));
    assert_eq!(lines.next(), Some("0,elite_selected,-2;2,6.56"));
    assert_eq!(lines.last(), Some("20,stalled,0;0.4,0"));

    let o = rmga(&["trace", "--function", "quad", "--output", "json"]);
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["generation"].is_u64());
        assert!(v["kind"].is_string());
    }
}

#[test]
fn oracle_subcommand() {
    let o = rmga(&["oracle", "--function", "quad", "--resolution", "0.1", "--output", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().nth(1), Some("quad,grid,0.1,,,,0;0.4,0"));

    let o = rmga(&["oracle", "--function", "quad", "--oracle", "reachability", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["optimum_reachable"], true);
    assert_eq!(v["partial"], false);
}

#[test]
fn help_exits_zero() {
    let o = rmga(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("suite"));
}
