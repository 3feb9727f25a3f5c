use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvecov"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn dist_with_oracle() {
    assert_eq!(
        stdout(&["dist", "0/1", "5/26", "--oracle-bound", "30"]),
        "a,b,distance,intersection,oracle_distance\n0/1,5/26,2,5,2\n"
    );
}

#[test]
fn lift_and_project() {
    assert_eq!(
        stdout(&["lift", "[[2,0],[0,1]]", "1/1"]),
        "cover,slope,lifted,wrap,components\n\"[[2,0],[0,1]]\",1/1,1/2,2,1\n"
    );
    assert!(stdout(&["project", "[[2,0],[0,1]]", "1/2"]).ends_with(",1/2,1/1,2\n"));
    assert!(stdout(&["lift", "pillowcase", "3/7"]).ends_with("pillowcase,3/7,3/7,1,1\n"));
}

#[test]
fn antichain_json() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["antichain", "0/1", "5/26", "--format", "json"])).unwrap();
    assert_eq!(v["schema"], "curvecov-report/1");
    assert_eq!(v["summary"]["size"], 1);
    assert_eq!(v["records"][0]["member"], "1/5");
}

#[test]
fn sweeps_are_seeded_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("est.csv");
    let args = [
        "--seed",
        "3",
        "estimate",
        "--samples",
        "20",
        "--slope-bound",
        "200",
    ];
    let printed = stdout(&args);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert_eq!(stdout(&with_out), "");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), printed);
    assert_eq!(stdout(&[&["--sequential"][..], &args].concat()), printed);
    assert_ne!(
        stdout(&[
            "--seed",
            "4",
            "estimate",
            "--samples",
            "20",
            "--slope-bound",
            "200"
        ]),
        printed
    );
}

#[test]
fn config_file_is_read() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(
        &path,
        "sample_count = 4\nslope_size_bound = 50\ncover = [[2,0],[0,1]]\n",
    )
    .unwrap();
    let out = stdout(&["cover-qi", "--config", path.to_str().unwrap()]);
    assert_eq!(out.lines().count(), 5);
}

#[test]
fn checks_and_exit_codes() {
    assert!(run(&["retraction-check", "--radius", "2"]).status.success());
    assert!(run(&["retraction-check", "--chord"]).status.success());
    assert!(run(&[
        "bgi",
        "--samples",
        "30",
        "--slope-bound",
        "30",
        "--oracle-bound",
        "40"
    ])
    .status
    .success());
    assert!(
        run(&["backtrack", "--samples", "10", "--slope-bound", "100"])
            .status
            .success()
    );
    assert!(stdout(&["profile", "0/1", "5/26", "--step", "0.25"])
        .starts_with("time,systole,realizer,thin\n"));
    assert!(stdout(&[
        "--format",
        "svg",
        "estimate",
        "--samples",
        "5",
        "--slope-bound",
        "50"
    ])
    .starts_with("<svg"));
    assert_eq!(run(&["dist", "1/0", "0/0"]).status.code(), Some(2));
    assert_eq!(
        run(&["antichain", "0/1", "1/0", "--threshold", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["--model", "klein", "dist", "0/1", "1/0"])
            .status
            .code(),
        Some(2)
    );
}
