use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tightdec")).current_dir(dir).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

/// Tight 3-uniform ℓ-cycles on base..base+ℓ for each base, with `v` lines when sparse.
fn cycles(l: u32, bases: &[u32]) -> String {
    let n = bases.iter().max().unwrap() + l;
    let mut s = format!("v1 kgraph 3 {n}\n");
    if bases != [0] && bases.len() as u32 * l != n {
        for &b in bases {
            for v in b..b + l {
                s.push_str(&format!("v {v}\n"));
            }
        }
    }
    let mut edges: Vec<[u32; 3]> = Vec::new();
    for &base in bases {
        for i in 0..l {
            let mut e = [base + i, base + (i + 1) % l, base + (i + 2) % l];
            e.sort();
            edges.push(e);
        }
    }
    edges.sort();
    for e in edges {
        s.push_str(&format!("e {} {} {}\n", e[0], e[1], e[2]));
    }
    s
}

fn two_cycles() -> String {
    cycles(7, &[0, 10])
}

#[test]
fn gen_complete() {
    let d = TempDir::new().unwrap();
    let o = run(d.path(), &["gen", "--complete", "5", "3"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("v1 kgraph 3 5\ne 0 1 2\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 10);
}

#[test]
fn decompose_cycle_and_verify() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&run(d.path(), &["gen", "--cycle", "7", "3", "-o", "c7.g"])), 0);
    let o = run(d.path(), &["decompose", "c7.g", "--kind", "cycles", "--l", "7", "-o", "c7.cert"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(fs::read_to_string(d.path().join("c7.cert")).unwrap(), "v1 cert cycles:7 1 3\nwt 0 1 2 3 4 5 6 0 1\n");
    let o = run(d.path(), &["verify", "c7.g", "c7.cert"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn tampered_certificate_names_piece() {
    let d = TempDir::new().unwrap();
    write(d.path(), "two.g", &two_cycles());
    let o = run(d.path(), &["decompose", "two.g", "--kind", "cycles", "--l", "7", "-o", "two.cert"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let cert = fs::read_to_string(d.path().join("two.cert")).unwrap();
    let tampered: Vec<String> = cert
        .lines()
        .enumerate()
        .map(|(i, l)| if i == 2 { l.split(' ').map(|t| if t == "16" { "99" } else { t }).collect::<Vec<_>>().join(" ") } else { l.to_string() })
        .collect();
    write(d.path(), "bad.cert", &(tampered.join("\n") + "\n"));
    let o = run(d.path(), &["verify", "two.g", "bad.cert"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("piece 1"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    let d = TempDir::new().unwrap();
    write(d.path(), "k.g", "v1 kgraph 3 4\ne 0 1 2\n");
    let o = run(d.path(), &["vortex", "k.g"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--seed"));
    assert_eq!(code(&run(d.path(), &["frobnicate"])), 2);
}

#[test]
fn malformed_input_reports_line() {
    let d = TempDir::new().unwrap();
    write(d.path(), "bad.g", "v1 kgraph 3 4\n# fine\ne 0 1 9\n");
    let o = run(d.path(), &["stats", "bad.g"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn no_versus_budget() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&run(d.path(), &["gen", "--complete", "6", "3", "-o", "k6.g"])), 0);
    let o = run(d.path(), &["decompose", "k6.g", "--kind", "mixed"]);
    assert_eq!(code(&o), 1, "{}", stderr(&o));
    write(d.path(), "two.g", &two_cycles());
    let o = run(d.path(), &["decompose", "two.g", "--kind", "mixed", "--budget", "1"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert_eq!(code(&run(d.path(), &["divisible", "k6.g", "--l", "7"])), 1);
}

#[test]
fn gadget_verifies() {
    let d = TempDir::new().unwrap();
    for (kind, k, j) in [("basic", "3", "2"), ("balancer", "4", "2"), ("f1", "3", "1"), ("swapper1", "3", "1"), ("swapper", "4", "2")] {
        let o = run(d.path(), &["gadget", "--type", kind, "--k", k, "--j", j, "--verify"]);
        assert_eq!(code(&o), 0, "{kind}: {}", stderr(&o));
        assert!(stdout(&o).starts_with("v1 cert cycles:"));
    }
}

#[test]
fn seeded_runs_are_byte_identical() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&run(d.path(), &["gen", "--random", "14", "3", "0.9", "--seed", "5", "-o", "r.g"])), 0);
    let again = run(d.path(), &["gen", "--random", "14", "3", "0.9", "--seed", "5"]);
    assert_eq!(stdout(&again), fs::read_to_string(d.path().join("r.g")).unwrap());
    let a = run(d.path(), &["vortex", "r.g", "--seed", "3", "--m", "6", "--delta", "0.3", "--xi", "0.5"]);
    let b = run(d.path(), &["vortex", "r.g", "--seed", "3", "--m", "6", "--delta", "0.3", "--xi", "0.5"]);
    assert_eq!(code(&a), code(&b));
    assert_eq!(a.stdout, b.stdout);
    let a = run(d.path(), &["adjust-degrees", "r.g", "--l", "7", "--seed", "9", "--cert", "a.cert"]);
    let b = run(d.path(), &["adjust-degrees", "r.g", "--l", "7", "--seed", "9", "--cert", "b.cert"]);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(fs::read(d.path().join("a.cert")).unwrap(), fs::read(d.path().join("b.cert")).unwrap());
}

#[test]
fn emitted_certificates_verify() {
    let d = TempDir::new().unwrap();
    write(d.path(), "two.g", &two_cycles());
    assert_eq!(code(&run(d.path(), &["gen", "--complete", "4", "3", "-o", "k4.g"])), 0);
    assert_eq!(code(&run(d.path(), &["gen", "--path", "11", "3", "-o", "p11.g"])), 0);
    let cases: [(&str, &[&str]); 5] = [
        ("two.g", &["--kind", "cycles", "--l", "7"]),
        ("two.g", &["--kind", "mixed"]),
        ("k4.g", &["--kind", "euler"]),
        ("k4.g", &["--kind", "cycles", "--l", "4"]),
        ("p11.g", &["--kind", "paths", "--l", "5"]),
    ];
    for (g, flags) in cases {
        let mut args = vec!["decompose", g];
        args.extend_from_slice(flags);
        args.extend_from_slice(&["-o", "out.cert"]);
        let o = run(d.path(), &args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stderr(&o));
        let o = run(d.path(), &["verify", g, "out.cert"]);
        assert_eq!(code(&o), 0, "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn augmentation_ledger() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&run(d.path(), &["gen", "--cycle", "7", "3", "-o", "c7.g"])), 0);
    let o = run(d.path(), &["tour-augment", "c7.g", "--l", "7", "--ledger", "run.tsv", "--decomposition", "final.ttd", "-o", "j.cert"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let ledger = fs::read_to_string(d.path().join("run.tsv")).unwrap();
    assert!(ledger.starts_with("v1\tledger\n"));
    assert!(ledger.contains("result\tm1\t107\n"));
    let ttd = fs::read_to_string(d.path().join("final.ttd")).unwrap();
    assert!(ttd.starts_with("v1 ttd 3 "));
    assert!(ttd.lines().skip(1).all(|l| l.starts_with("wt ")));
}

#[test]
fn transformer_between_cycles() {
    let d = TempDir::new().unwrap();
    write(d.path(), "g.g", &cycles(13, &[0]));
    write(d.path(), "g2.g", &cycles(13, &[20]));
    write(d.path(), "phi", &(0..13).map(|v| format!("{v}:{} ", v + 20)).collect::<String>());
    let o = run(d.path(), &["transformer", "g.g", "g2.g", "--phi", "phi", "--l", "13", "-o", "t.g", "--cert-g", "tg.cert"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let t = fs::read_to_string(d.path().join("t.g")).unwrap();
    assert!(t.starts_with("v1 kgraph 3 "));
    assert!(fs::read_to_string(d.path().join("tg.cert")).unwrap().starts_with("v1 cert cycles:13 "));
}

#[test]
fn extremal_outputs() {
    let d = TempDir::new().unwrap();
    let o = run(d.path(), &["extremal", "--kind", "bound", "--k", "3", "--l", "7"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("bound\tvalue\t9/16\n"));
    let o = run(d.path(), &["extremal", "--kind", "euler-cex", "--k", "3", "--m", "2", "--ledger", "cex.tsv"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("v1 kgraph 3 "));
    let o = run(d.path(), &["extremal", "--kind", "freeness", "--k", "3", "--l", "7", "--i", "1", "--a", "3", "--b", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(code(&run(d.path(), &["extremal", "--kind", "bound", "--k", "3"])), 2);
}
