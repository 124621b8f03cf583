use std::path::Path;
use std::process::{Command, Output};

fn bctree(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bctree"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("run bctree")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn gen_build_validate_render() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(
        code(&bctree(
            d,
            &["gen", "--red", "8", "--blue", "4", "--seed", "7", "-o", "a.json"]
        )),
        0
    );
    assert_eq!(
        code(&bctree(d, &["build", "-i", "a.json", "-o", "a.tree.json"])),
        0
    );

    let v = bctree(d, &["validate", "-i", "a.json", "-t", "a.tree.json"]);
    assert_eq!(code(&v), 0);
    assert!(String::from_utf8_lossy(&v.stdout).contains("pass"));
    assert_eq!(
        code(&bctree(
            d,
            &[
                "validate",
                "-i",
                "a.json",
                "-t",
                "a.tree.json",
                "--bound",
                "1"
            ]
        )),
        1
    );

    let tree = std::fs::read_to_string(d.join("a.tree.json")).unwrap();
    for key in [
        "instance_hash",
        "strategy",
        "delta",
        "bound",
        "wall_time_ms",
    ] {
        assert!(tree.contains(key), "{key}");
    }

    assert_eq!(
        code(&bctree(
            d,
            &["render", "-i", "a.json", "-t", "a.tree.json", "-o", "a.svg"]
        )),
        0
    );
    let svg = std::fs::read_to_string(d.join("a.svg")).unwrap();
    assert_eq!(svg.matches("<line ").count(), 11);
    assert_eq!(svg.matches("<circle ").count(), 12);
}

#[test]
fn hash_mismatch_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    bctree(
        d,
        &[
            "gen", "--red", "6", "--blue", "3", "--seed", "1", "-o", "a.json",
        ],
    );
    bctree(
        d,
        &[
            "gen", "--red", "6", "--blue", "3", "--seed", "2", "-o", "b.json",
        ],
    );
    bctree(d, &["build", "-i", "a.json", "-o", "a.tree.json"]);
    assert_eq!(
        code(&bctree(
            d,
            &["validate", "-i", "b.json", "-t", "a.tree.json"]
        )),
        2
    );
    assert_eq!(
        code(&bctree(d, &["render", "-i", "b.json", "-t", "a.tree.json"])),
        2
    );
}

#[test]
fn oracle_and_decision() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    bctree(
        d,
        &[
            "gen",
            "--kind",
            "double-chain",
            "--m",
            "3",
            "--plus-red",
            "-o",
            "dc.json",
        ],
    );
    let o = Command::new(env!("CARGO_BIN_EXE_bctree"))
        .current_dir(d)
        .env("BCTREE_ORACLE_CAP", "13")
        .args(["oracle", "-i", "dc.json"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "d_star=3");
    let decide = |deg: &str| {
        Command::new(env!("CARGO_BIN_EXE_bctree"))
            .current_dir(d)
            .env("BCTREE_ORACLE_CAP", "13")
            .args(["oracle", "-i", "dc.json", "--decision", deg])
            .output()
            .unwrap()
    };
    assert_eq!(code(&decide("2")), 1);
    assert_eq!(code(&decide("3")), 0);
    // Above the default cap.
    assert_eq!(code(&bctree(d, &["oracle", "-i", "dc.json"])), 2);
}

#[test]
fn batch_builds_every_instance() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::create_dir(d.join("in")).unwrap();
    for s in 0..4 {
        let name = format!("in/i{s}.json");
        bctree(
            d,
            &[
                "gen",
                "--red",
                "9",
                "--blue",
                "4",
                "--seed",
                &s.to_string(),
                "-o",
                &name,
            ],
        );
    }
    assert_eq!(
        code(&bctree(d, &["build", "--batch", "in", "-o", "out"])),
        0
    );
    for s in 0..4 {
        let t = format!("out/i{s}.tree.json");
        let i = format!("in/i{s}.json");
        assert_eq!(code(&bctree(d, &["validate", "-i", &i, "-t", &t])), 0);
    }
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&bctree(d, &["frobnicate"])), 2);
    assert_eq!(code(&bctree(d, &["build", "-i", "missing.json"])), 2);
    assert_eq!(code(&bctree(d, &["gen", "--red", "1", "--blue", "2"])), 2);
    std::fs::write(
        d.join("f.json"),
        r#"{"version":1,"points":[{"id":0,"x":0.5,"y":"0","color":"R"}]}"#,
    )
    .unwrap();
    assert_eq!(code(&bctree(d, &["plan", "-i", "f.json"])), 2);
}

#[test]
fn plan_reports_the_branch() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    bctree(
        d,
        &[
            "gen", "--red", "7", "--blue", "3", "--seed", "5", "-o", "a.json",
        ],
    );
    let o = bctree(d, &["plan", "-i", "a.json"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(
        text.contains("branch=dummy-route") || text.contains("branch=kprime1"),
        "{text}"
    );
}
