use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn kariforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kariforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn maps_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../maps"))
}

fn map(name: &str) -> String {
    maps_dir().join(name).to_string_lossy().into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

#[test]
fn gen_is_deterministic_and_reads_maps() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(&dir, "a.json"), path(&dir, "b.json"));
    let o = kariforge(&["gen", "--map", &map("kari.json"), "--out", &a]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "22 tiles\n");
    kariforge(&["gen", "--preset", "z-kari", "--out", &b]);
    let (ja, jb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    // same tiles; the preset file also names its generator
    assert!(String::from_utf8(jb)
        .unwrap()
        .starts_with(r#"{"generators":["f"]"#));
    let o = kariforge(&["gen", "--map", &map("kari.json"), "--out", &b]);
    assert!(o.status.success());
    assert_eq!(ja, std::fs::read(&b).unwrap());
}

#[test]
fn gen_without_fast_path_is_larger() {
    let o = kariforge(&["gen", "--map", &map("kari.json"), "--fast-path", "off"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with(r#"{"in_max":1"#));
    let count: usize = String::from_utf8_lossy(&o.stderr)
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(count > 22);
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("kari.json", 0),
        ("identity.json", 2),
        ("half-turn.json", 2),
    ];
    for (name, code) in cases {
        let tiles = path(&dir, name);
        assert!(kariforge(&["gen", "--map", &map(name), "--out", &tiles])
            .status
            .success());
        let o = kariforge(&[
            "verify",
            "--tiles",
            &tiles,
            "--map",
            &map(name),
            "--max-n",
            "4",
            "--max-k",
            "3",
        ]);
        assert_eq!(o.status.code(), Some(code), "{name}: {}", stdout(&o));
        assert!(stdout(&o).starts_with(r#"{"nonempty":true"#));
    }
    // identity tiles do not realize Kari's map
    let tiles = path(&dir, "identity.json");
    let o = kariforge(&[
        "verify",
        "--tiles",
        &tiles,
        "--map",
        &map("kari.json"),
        "--max-n",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_group_sets_per_generator() {
    let dir = TempDir::new().unwrap();
    let tiles = path(&dir, "kari.json");
    kariforge(&["gen", "--preset", "z-kari", "--out", &tiles]);
    let o = kariforge(&[
        "verify", "--tiles", &tiles, "--preset", "z-kari", "--max-n", "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = kariforge(&[
        "verify", "--tiles", &tiles, "--preset", "psl2z", "--max-n", "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn simulate_prints_a_row() {
    let o = kariforge(&[
        "simulate", "--preset", "z-kari", "--x", "5/7", "--window", "4",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("f(5/7) = 1/7\n"));
    let top = out
        .lines()
        .find_map(|l| l.strip_prefix("top     "))
        .unwrap();
    assert_eq!(top.len(), 9);
    let o = kariforge(&[
        "simulate",
        "--map",
        &map("kari.json"),
        "--x",
        "3/4",
        "--piece",
        "2",
    ]);
    assert!(stdout(&o).starts_with("f(3/4) = 1/6\n"));
    let o = kariforge(&[
        "simulate",
        "--map",
        &map("kari.json"),
        "--x",
        "1/4",
        "--piece",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn group_word_problem_and_witness() {
    let o = kariforge(&[
        "group",
        "--preset",
        "psl2z",
        "--word",
        "ddd",
        "--is-identity",
    ]);
    assert_eq!(stdout(&o), "true\n");
    let o = kariforge(&[
        "group",
        "--preset",
        "psl2z",
        "--word",
        "dede",
        "--is-identity",
    ]);
    assert_eq!(stdout(&o), "false\n");
    let o = kariforge(&["group", "--preset", "psl2z", "--word", "de", "--witness"]);
    assert!(stdout(&o).starts_with("witness t = "));
    let o = Command::new(env!("CARGO_BIN_EXE_kariforge"))
        .args(["group", "--preset", "psl2z", "--word", "ee", "--witness"])
        .env("KARIFORGE_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "unknown\n");
    let o = kariforge(&["group", "--preset", "nope", "--word", "d", "--is-identity"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn freegroup_commands() {
    let dir = TempDir::new().unwrap();
    let problem = path(&dir, "xleq1.json");
    let o = kariforge(&["freegroup", "xleq1", "--rank", "2", "--radius", "1"]);
    std::fs::write(&problem, &o.stdout).unwrap();
    assert_eq!(
        stdout(&kariforge(&["freegroup", "empty", "--problem", &problem])),
        "nonempty\n"
    );

    let two_ones = path(&dir, "two.json");
    std::fs::write(
        &two_ones,
        r#"{"cells":[{"word":"","letter":1},{"word":"x1","letter":1}]}"#,
    )
    .unwrap();
    let o = kariforge(&[
        "freegroup",
        "member",
        "--problem",
        &problem,
        "--pattern",
        &two_ones,
    ]);
    assert_eq!(stdout(&o), "true\n");
    let one_one = path(&dir, "one.json");
    std::fs::write(&one_one, r#"{"cells":[{"word":"","letter":1}]}"#).unwrap();
    let o = kariforge(&[
        "freegroup",
        "member",
        "--problem",
        &problem,
        "--pattern",
        &one_one,
    ]);
    assert_eq!(stdout(&o), "false\n");

    let o = kariforge(&["freegroup", "perg", "--oracle", "abelian", "--radius", "2"]);
    let out = stdout(&o);
    assert!(out.contains(r#"{"cells":[{"word":"x1x2","letter":0},{"word":"x2x1","letter":1}]}"#));

    let o = kariforge(&[
        "freegroup",
        "simple",
        "--oracle",
        "cyclic:2",
        "--rank",
        "1",
        "--a",
        "x1",
    ]);
    assert!(stdout(&o).starts_with(r#"{"cells":"#));
    let o = kariforge(&[
        "freegroup",
        "simple",
        "--oracle",
        "trivial",
        "--rank",
        "1",
        "--a",
        "x1",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn render_writes_svg_and_refuses_large_sets() {
    let dir = TempDir::new().unwrap();
    let (tiles, svg) = (path(&dir, "t.json"), path(&dir, "t.svg"));
    kariforge(&["gen", "--preset", "z-kari", "--out", &tiles]);
    assert!(kariforge(&["render", "--tiles", &tiles, "--out", &svg])
        .status
        .success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains("Z x &lt;f&gt;"));
    kariforge(&[
        "gen",
        "--map",
        &map("kari.json"),
        "--fast-path",
        "off",
        "--out",
        &tiles,
    ]);
    let o = kariforge(&["render", "--tiles", &tiles, "--out", &svg]);
    assert_eq!(o.status.code(), Some(1));
}
