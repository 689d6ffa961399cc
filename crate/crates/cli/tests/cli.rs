use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_pathdecomp"));
    c.env_remove("PD_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let p = dir.path().join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", s(&p)]);
    let o = run(&full);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    p
}

#[test]
fn gen_cyclic_12() {
    let dir = TempDir::new().unwrap();
    let p = gen(&dir, "z12.txt", &["--group", "cyclic:12", "--g", "1", "--r", "3", "--seed", "7"]);
    let text = fs::read_to_string(&p).unwrap();
    let line = text.lines().find(|l| l.starts_with("matching")).unwrap();
    assert_eq!(line.split_whitespace().count(), 7);
}

#[test]
fn gen_is_deterministic_and_reads_pd_seed() {
    let dir = TempDir::new().unwrap();
    let args = ["--group", "cyclic:40", "--g", "1", "--r", "3", "--seed", "11"];
    let a = fs::read(gen(&dir, "a.txt", &args)).unwrap();
    let b = fs::read(gen(&dir, "b.txt", &args)).unwrap();
    assert_eq!(a, b);
    let o = bin().args(["gen", "--group", "cyclic:40", "--g", "1", "--r", "3"]).env("PD_SEED", "11").output().unwrap();
    assert_eq!(o.stdout, a);
}

#[test]
fn gen_rejects_non_scg_pair() {
    let o = run(&["gen", "--group", "cyclic:12", "--g", "6", "--r", "3"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("condition (a)"));
}

#[test]
fn decompose_then_verify() {
    let dir = TempDir::new().unwrap();
    let inst = gen(&dir, "z12.txt", &["--group", "cyclic:12", "--g", "1", "--r", "3", "--seed", "7"]);
    let out = dir.path().join("z12.paths");
    let o = run(&["decompose", s(&inst), "-o", s(&out)]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("route engine"));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("paths 6 length 5\n"));
    let v = run(&["verify", s(&inst), s(&out)]);
    assert_eq!(code(&v), 0, "{}", String::from_utf8_lossy(&v.stdout));
    assert!(String::from_utf8_lossy(&v.stdout).lines().all(|l| l.starts_with("CHECK ") && l.contains(" PASS")));
}

#[test]
fn degenerate_reports_k44() {
    let dir = TempDir::new().unwrap();
    let inst = gen(&dir, "d.txt", &["--group", "product:4,2", "--g", "1,0", "--r", "1,1"]);
    let out = dir.path().join("d.paths");
    let o = run(&["decompose", s(&inst), "-o", s(&out)]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("route k44"));
    assert_eq!(code(&run(&["verify", "--m-centered", s(&inst), s(&out)])), 0);
}

#[test]
fn sign_flip_route() {
    let dir = TempDir::new().unwrap();
    let inst = gen(&dir, "f.txt", &["--group", "cyclic:12", "--g", "1", "--r", "5"]);
    let out = dir.path().join("f.paths");
    let o = run(&["decompose", s(&inst), "-o", s(&out)]);
    assert!(String::from_utf8_lossy(&o.stdout).contains("route sign-flip engine"));
    assert_eq!(code(&run(&["verify", s(&inst), s(&out)])), 0);
}

#[test]
fn power_instance_contains_witness_path() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("p.txt");
    fs::write(&inst, "power 10 3\nmatching 2-8 0-5 1-6 3-7 4-9\n").unwrap();
    let out = dir.path().join("p.paths");
    let o = run(&["decompose", s(&inst), "-o", s(&out)]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("route power"));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.lines().any(|l| l == "4 1 3 2 8 9 7 0"), "{text}");
    assert_eq!(code(&run(&["verify", "--m-centered", s(&inst), s(&out)])), 0);
}

#[test]
fn tampered_decomposition_fails_with_witness() {
    let dir = TempDir::new().unwrap();
    let inst = gen(&dir, "z.txt", &["--group", "cyclic:16", "--g", "1", "--r", "3", "--seed", "2"]);
    let out = dir.path().join("z.paths");
    assert_eq!(code(&run(&["decompose", s(&inst), "-o", s(&out)])), 0);
    let text = fs::read_to_string(&out).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut toks: Vec<&str> = lines[1].split(' ').collect();
    toks.swap(0, 1);
    lines[1] = toks.join(" ");
    fs::write(&out, lines.join("\n") + "\n").unwrap();
    let v = run(&["verify", s(&inst), s(&out)]);
    assert_eq!(code(&v), 1);
    let report = String::from_utf8_lossy(&v.stdout);
    assert!(report.lines().any(|l| l.contains("FAIL") && l.split_whitespace().count() > 3), "{report}");
}

#[test]
fn parse_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "group cyclic 12\ng 1\nr three\nmatching 0-6\n").unwrap();
    assert_eq!(code(&run(&["decompose", s(&bad)])), 2);
    assert_eq!(code(&run(&["decompose", "/nonexistent/instance"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn batch_matches_single_runs_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let mut inputs = Vec::new();
    for (i, n) in [12, 18, 24, 30, 36, 42].iter().enumerate() {
        let g = format!("cyclic:{n}");
        inputs.push(gen(&dir, &format!("i{i}.txt"), &["--group", &g, "--g", "1", "--r", "3", "--seed", &i.to_string()]));
    }
    let args = |out: &Path, jobs: &str| {
        let mut a: Vec<String> = vec!["decompose".into(), "--jobs".into(), jobs.into(), "--out-dir".into(), s(out).into()];
        a.extend(inputs.iter().map(|p| s(p).to_string()));
        a
    };
    let (b1, b2) = (dir.path().join("b1"), dir.path().join("b2"));
    assert_eq!(bin().args(args(&b1, "4")).output().unwrap().status.code(), Some(0));
    assert_eq!(bin().args(args(&b2, "1")).output().unwrap().status.code(), Some(0));
    for i in 0..inputs.len() {
        for ext in ["paths", "trace"] {
            let f = format!("i{i}.{ext}");
            assert_eq!(fs::read(b1.join(&f)).unwrap(), fs::read(b2.join(&f)).unwrap(), "{f}");
        }
        let single = dir.path().join(format!("s{i}.paths"));
        let trace = dir.path().join(format!("s{i}.trace"));
        assert_eq!(code(&run(&["decompose", s(&inputs[i]), "-o", s(&single), "--trace", s(&trace)])), 0);
        assert_eq!(fs::read(&single).unwrap(), fs::read(b1.join(format!("i{i}.paths"))).unwrap());
        assert_eq!(fs::read(&trace).unwrap(), fs::read(b1.join(format!("i{i}.trace"))).unwrap());
    }
}

#[test]
fn power_and_complete_generators() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("p.txt");
    assert_eq!(code(&run(&["power", "--n", "20", "--k", "4", "--seed", "3", "-o", s(&inst)])), 0);
    let out = dir.path().join("p.paths");
    assert_eq!(code(&run(&["decompose", s(&inst), "-o", s(&out)])), 0);
    assert!(fs::read_to_string(&out).unwrap().starts_with("paths 10 length 9\n"));
    let o = run(&["complete", "7"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("paths 4 length 7\n"));
    assert_eq!(code(&run(&["complete", "4"])), 2);
}

#[test]
fn oracle_finds_a_verified_decomposition() {
    let dir = TempDir::new().unwrap();
    let inst = gen(&dir, "z.txt", &["--group", "cyclic:10", "--g", "1", "--r", "2"]);
    let out = dir.path().join("z.paths");
    let o = run(&["oracle", s(&inst), "-o", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&run(&["verify", s(&inst), s(&out)])), 0);
    assert_eq!(code(&run(&["oracle", s(&inst), "--budget", "3"])), 1);
}
