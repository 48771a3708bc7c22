use std::fs;
use std::process::{Command, Output};

use abcycle::fklab::fk_bound;
use abcycle::format::{parse_cert, parse_hypergraph, write_hypergraph};
use abcycle::oracle::random_hypergraph;
use tempfile::TempDir;

/// Runs the binary on a whitespace-separated command line.
fn run(line: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abcycle"))
        .args(line.split_whitespace())
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(TempDir::new().unwrap())
    }

    fn path(&self, name: &str) -> String {
        let p = self.0.path().join(name);
        let p = p.to_str().unwrap();
        assert!(!p.contains(char::is_whitespace));
        p.to_string()
    }

    fn write(&self, name: &str, text: &str) -> String {
        let p = self.path(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn read(&self, name: &str) -> String {
        fs::read_to_string(self.path(name)).unwrap()
    }
}

fn csv_column(text: &str, name: &str) -> Vec<String> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap();
    lines
        .map(|l| l.split(',').nth(idx).unwrap().to_string())
        .collect()
}

#[test]
fn degrees_reports_minimum() {
    let dir = Dir::new();
    let k6 = dir.path("k6.uhg");
    assert_eq!(code(&run(&format!("gen complete -n 6 -k 3 --out {k6}"))), 0);
    let out = run(&format!("degrees {k6} -d 2"));
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).lines().any(|l| l == "min_degree=4"));

    let four = dir.write("four.uhg", "6 3\n1 2 3\n2 3 4\n4 5 6\n5 6 1\n");
    let out = run(&format!("degrees {four} -d 1"));
    assert!(stdout(&out).lines().any(|l| l == "min_degree=2"));

    let empty = dir.write("empty.uhg", "");
    assert_eq!(code(&run(&format!("degrees {empty} -d 1"))), 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run("find")), 2);
    assert_eq!(code(&run("no-such-command")), 2);
    assert_eq!(code(&run("verify /nonexistent/a /nonexistent/b")), 2);
}

#[test]
fn find_then_verify() {
    let dir = Dir::new();
    let (h, cert, report) = (dir.path("k15.uhg"), dir.path("c.txt"), dir.path("r.csv"));
    run(&format!("gen complete -n 15 -k 3 --out {h}"));
    let out = run(&format!(
        "find {h} -a 1 -b 2 --seed 4 --out {cert} --report {report}"
    ));
    assert_eq!(code(&out), 0);
    let out = run(&format!("verify {h} {cert}"));
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "valid");

    let csv = dir.read("r.csv");
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "master_seed,success_attempt,attempts,ore_failures,solver_failures,ore_holds,succeeded"
    );
    assert!(lines.next().unwrap().starts_with("4,"));

    run(&format!("find {h} -a 1 -b 2 --report {report} --timing"));
    assert!(dir
        .read("r.csv")
        .lines()
        .next()
        .unwrap()
        .ends_with(",elapsed_ms"));
}

#[test]
fn find_on_empty_hypergraph_is_negative() {
    let dir = Dir::new();
    let h = dir.write("e.uhg", "9 3\n");
    let report = dir.path("r.csv");
    let out = run(&format!("find {h} -a 1 -b 2 --report {report}"));
    assert_eq!(code(&out), 1);
    assert!(dir
        .read("r.csv")
        .lines()
        .nth(1)
        .unwrap()
        .ends_with(",false"));
}

#[test]
fn planted_cycle_is_recovered() {
    let dir = Dir::new();
    let (h, planted, found) = (
        dir.path("p.uhg"),
        dir.path("planted.txt"),
        dir.path("found.txt"),
    );
    let gen = run(&format!(
        "gen planted -n 6 -a 1 -b 2 --seed 8 --cert {planted} --out {h}"
    ));
    assert_eq!(code(&gen), 0);
    let out = run(&format!("find {h} -a 1 -b 2 --attempts 2000 --out {found}"));
    assert_eq!(code(&out), 0);
    assert_eq!(dir.read("found.txt"), dir.read("planted.txt"));

    let out = run(&format!("oracle {h} -a 1 -b 2"));
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), dir.read("planted.txt"));
}

#[test]
fn product_instances_flow_through() {
    let dir = Dir::new();
    let (h, planted, found) = (
        dir.path("p.uhg"),
        dir.path("planted.txt"),
        dir.path("found.txt"),
    );
    run(&format!(
        "gen planted-product -t 3 -a 2 -b 1 --seed 2 --cert {planted} --out {h}"
    ));
    assert!(dir.read("p.uhg").starts_with("product 6 3 2 1\n"));
    let out = run(&format!("find {h} --attempts 1000 --out {found}"));
    assert_eq!(code(&out), 0);
    assert_eq!(dir.read("found.txt"), dir.read("planted.txt"));
    assert_eq!(code(&run(&format!("find {h} -a 1"))), 2);
}

#[test]
fn verify_reports_violations() {
    let dir = Dir::new();
    let (h, cert) = (dir.path("p.uhg"), dir.path("c.txt"));
    run(&format!(
        "gen planted -n 9 -a 1 -b 2 --seed 1 --cert {cert} --out {h}"
    ));
    assert_eq!(code(&run(&format!("verify {h} {cert}"))), 0);

    let text = dir.read("c.txt");
    let parsed = parse_cert(&text).unwrap();
    // drop one vertex from the first B-block
    let b0: Vec<String> = parsed.b_blocks[0].iter().map(|v| v.to_string()).collect();
    let corrupted = text.replacen(&format!("B: {}", b0.join(" ")), &format!("B: {}", b0[0]), 1);
    let bad = dir.write("bad.txt", &corrupted);
    let out = run(&format!("verify {h} {bad}"));
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("block size"));

    let hg = parse_hypergraph(&dir.read("p.uhg")).unwrap();
    let victim = parsed.witness_edges()[3].clone();
    let cut = dir.write("cut.uhg", &write_hypergraph(&hg.without_edge(&victim)));
    let out = run(&format!("verify {cut} {cert}"));
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains(&format!("missing edge: {victim}")));
}

#[test]
fn gen_roundtrips_through_files() {
    let dir = Dir::new();
    let h = dir.path("r.uhg");
    run(&format!("gen random -n 8 -k 4 -p 0.4 --seed 12 --out {h}"));
    let loaded = parse_hypergraph(&dir.read("r.uhg")).unwrap();
    assert_eq!(loaded, random_hypergraph(8, 4, 0.4, 12).unwrap());
}

#[test]
fn oracle_exit_codes() {
    let dir = Dir::new();
    let par = dir.path("par.uhg");
    run(&format!("gen parity -n 6 -k 3 --d 1,2,3 --out {par}"));
    assert_eq!(code(&run(&format!("oracle {par} -a 1 -b 2"))), 1);

    let k12 = dir.path("k12.uhg");
    run(&format!("gen complete -n 12 -k 3 --out {k12}"));
    let out = run(&format!("oracle {k12} -a 1 -b 2 --count --budget 10"));
    assert_eq!(code(&out), 3);

    let k6 = dir.path("k6.uhg");
    run(&format!("gen complete -n 6 -k 3 --out {k6}"));
    let out = run(&format!("oracle {k6} -a 1 -b 2 --count"));
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("cycles=45"));
}

#[test]
fn check_reports_thresholds() {
    let dir = Dir::new();
    let k = dir.path("k.uhg");
    run(&format!("gen complete -n 15 -k 3 --out {k}"));
    let out = run(&format!("check {k} -a 1 --alpha 0.5"));
    // the error term exceeds 1 at this size, so even K_15 fails the hypothesis
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("hypothesis_holds=false"));
    assert!(text.contains("delta_a=91"));
    assert_eq!(code(&run(&format!("check {k} -a 1 --alpha 1.5"))), 2);
}

#[test]
fn bipartite_subcommands() {
    let dir = Dir::new();
    let c6 = dir.write("c6.txt", "3\n110\n011\n101\n");
    assert_eq!(code(&run(&format!("orecheck {c6}"))), 0);
    assert_eq!(code(&run(&format!("biham {c6}"))), 0);
    let out = run(&format!("biham {c6} --exact --count"));
    assert_eq!(stdout(&out).trim(), "cycles=1");

    let matching = dir.write("m.txt", "3\n100\n010\n001\n");
    let out = run(&format!("orecheck {matching}"));
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("violated"));
    assert_eq!(code(&run(&format!("biham {matching}"))), 1);
    assert_eq!(code(&run(&format!("biham {matching} --exact"))), 1);
}

#[test]
fn fk_csv_and_script() {
    let dir = Dir::new();
    let csv_path = dir.path("fk.csv");
    let out = run(&format!("fk --theta 1 --trials 500 --out {csv_path}"));
    assert_eq!(code(&out), 0);
    let csv = dir.read("fk.csv");
    assert!(csv_column(&csv, "empirical_tail")
        .iter()
        .all(|v| v.parse::<f64>().unwrap() == 0.0));
    for (g, b) in csv_column(&csv, "gamma")
        .iter()
        .zip(csv_column(&csv, "bound"))
    {
        let expected = fk_bound(g.parse().unwrap()).unwrap();
        assert!((b.parse::<f64>().unwrap() - expected).abs() < 1e-6);
    }
    assert!(dir.read("fk.csv.gp").contains("'fk.csv'"));
}

#[test]
fn fk_mean_matches_density() {
    let out = run("fk --trials 20000");
    let err = stderr(&out);
    let field = |key: &str| -> f64 {
        err.split_whitespace()
            .find_map(|kv| kv.strip_prefix(key))
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!((field("mean_eta=") - field("expected=")).abs() <= 0.1);
}

#[test]
fn experiments_are_byte_deterministic() {
    let dir = Dir::new();
    let sweep = "sweep -n 6 -k 3 -a 1 -b 2 --trials 8 --seed 5";
    for jobs in ["1", "4"] {
        let (out, trials) = (
            dir.path(&format!("s{jobs}.csv")),
            dir.path(&format!("st{jobs}.csv")),
        );
        let o = run(&format!(
            "--jobs {jobs} {sweep} --out {out} --trials-out {trials}"
        ));
        assert_eq!(code(&o), 0);
    }
    assert_eq!(dir.read("s1.csv"), dir.read("s4.csv"));
    assert_eq!(dir.read("st1.csv"), dir.read("st4.csv"));

    let k = dir.path("k.uhg");
    run(&format!("gen random -n 30 -k 3 -p 0.9 --seed 1 --out {k}"));
    for cmd in ["oresucc", "linkconc"] {
        for jobs in ["1", "3"] {
            let out = dir.path(&format!("{cmd}{jobs}.csv"));
            let trials = dir.path(&format!("{cmd}-trials{jobs}.csv"));
            let o = run(&format!(
                "--jobs {jobs} {cmd} {k} -a 1 --trials 300 --out {out} --trials-out {trials}"
            ));
            assert_eq!(code(&o), 0, "{cmd}");
        }
        assert_eq!(
            dir.read(&format!("{cmd}1.csv")),
            dir.read(&format!("{cmd}3.csv"))
        );
        assert_eq!(
            dir.read(&format!("{cmd}-trials1.csv")),
            dir.read(&format!("{cmd}-trials3.csv"))
        );
        assert!(dir
            .read(&format!("{cmd}1.csv.gp"))
            .contains(&format!("'{cmd}1.csv'")));
    }
}

#[test]
fn sweep_columns_behave() {
    let out = run("sweep -n 6 -k 3 -a 1 -b 2 --trials 12 --attempts 50");
    assert_eq!(code(&out), 0);
    let csv = stdout(&out);
    let p = csv_column(&csv, "p");
    let found = csv_column(&csv, "finder_success");
    let exists = csv_column(&csv, "oracle_exists");
    for ((p, f), e) in p.iter().zip(&found).zip(&exists) {
        let (f, e): (f64, f64) = (f.parse().unwrap(), e.parse().unwrap());
        assert!(f <= e, "p={p}: finder {f} > oracle {e}");
        match p.as_str() {
            "0" => assert_eq!(f, 0.0),
            "1" => assert_eq!(f, 1.0),
            _ => {}
        }
    }
}

#[test]
fn sweep_skips_oracle_for_large_n() {
    let out = run("sweep -n 15 -k 3 -a 1 -b 2 --trials 2 --p-grid 1");
    assert_eq!(code(&out), 0);
    let csv = stdout(&out);
    assert_eq!(csv_column(&csv, "oracle_exists"), vec![String::new()]);
    assert_eq!(
        csv_column(&csv, "finder_success"),
        vec!["1.000000".to_string()]
    );
}
