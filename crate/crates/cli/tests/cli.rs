use std::io::Write;
use std::process::{Command, Output, Stdio};

use lexcycle::certify::{is_umbrella_free, BadTriple, Witness};
use lexcycle::classes::{classify, gen_interval, ClassTag};
use lexcycle::io::{from_graph6, to_graph6};
use lexcycle::lexcycle::theorem_check;
use lexcycle::Ordering;
use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lexcycle"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn ordering(v: &Value) -> Vec<usize> {
    serde_json::from_value(v.clone()).unwrap()
}

#[test]
fn lexcycle_values() {
    let out = run(&["lexcycle", "--exact"], "Bw\n");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["value"], 2);

    let out = run(&["lexcycle"], "@\n");
    assert_eq!(records(&out)[0]["value"], 1);

    let interval = to_graph6(&gen_interval(25, 7).graph);
    let out = run(
        &["lexcycle", "--sampled", "--trials", "50"],
        &format!("{interval}\n"),
    );
    let r = &records(&out)[0];
    assert_eq!(
        (r["value"].as_u64(), r["mode"].as_str()),
        (Some(2), Some("sampled"))
    );
}

#[test]
fn lexcycle_size_guard_is_a_record() {
    let out = run(&["lexcycle", "--exact"], "Bw\nH~~~~~~\n");
    assert_eq!(out.status.code(), Some(3));
    let rs = records(&out);
    assert_eq!(rs[0]["value"], 2);
    assert_eq!(rs[1]["error"]["kind"], "size-guard");
}

#[test]
fn certify_exit_codes() {
    let p4 = "Ch\n";
    let out = run(
        &["certify", "--ordering", "0 1 2 3", "--check", "umbrella"],
        p4,
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["verdict"], "pass");

    let out = run(
        &["certify", "--ordering", "1 3 0 2", "--check", "umbrella"],
        p4,
    );
    assert_eq!(out.status.code(), Some(1));
    let w = &records(&out)[0]["witness"];
    assert_eq!(
        (w["x"].as_u64(), w["y"].as_u64(), w["z"].as_u64()),
        (Some(1), Some(3), Some(0))
    );

    let out = run(&["certify", "--ordering", "0 2 1 3", "--check", "lbfs"], p4);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["certify", "--ordering", "1 3 0 2", "--check", "c4"], p4);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(records(&out)[0]["verdict"], "not-applicable");

    let out = run(
        &[
            "certify",
            "--ordering",
            "0 1 2 3",
            "--check",
            "flip",
            "--tau",
            "3 2 1 0",
        ],
        p4,
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn malformed_input_exits_three_with_error_record() {
    let out = run(&["certify", "--ordering", "0 1 2"], "Ch\n");
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "malformed-ordering");

    let out = run(&["recognize"], "C\x7f\n");
    assert_eq!(out.status.code(), Some(3));

    let out = run(&["recognize", "--no-such-flag"], "");
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(run(&["--help"], "").status.code(), Some(0));
}

#[test]
fn recognize_examples() {
    // C5, C4, K4 minus an edge
    let rs = records(&run(&["recognize"], "Dhc\nCl\nC}\n"));
    assert_eq!(rs[0]["cocomparability"], false);
    assert!(rs[0].get("witness").is_none());

    assert_eq!(rs[1]["cocomparability"], true);
    let c4 = from_graph6("Cl").unwrap();
    let w = Ordering::from_seq(ordering(&rs[1]["witness"])).unwrap();
    assert!(is_umbrella_free(&c4, &w).passed());

    let tags: Vec<&str> = rs[2]["tags"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t.as_str().unwrap())
        .collect();
    assert!(!tags.contains(&"diamond-free"));
    assert!(tags.contains(&"cocomparability"));
}

#[test]
fn generate_shapes_and_sidecars() {
    let dir = tempfile::tempdir().unwrap();
    let wdir = dir.path().join("w");
    let out = run(
        &[
            "generate",
            "--class",
            "interval",
            "--n",
            "10",
            "--count",
            "3",
            "--seed",
            "1",
            "--format",
            "plain",
            "--witness-dir",
            wdir.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<String> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(lines.len(), 3);
    for (i, line) in lines.iter().enumerate() {
        let g = from_graph6(line).unwrap();
        assert_eq!(g.n(), 10);
        let sidecar = std::fs::read_to_string(wdir.join(format!("{i:06}.txt"))).unwrap();
        let model: Vec<(f64, f64)> = sidecar
            .lines()
            .map(|l| {
                let mut it = l.split_whitespace().map(|t| t.parse::<f64>().unwrap());
                (it.next().unwrap(), it.next().unwrap())
            })
            .collect();
        assert_eq!(model.len(), 10);
        for u in 0..10 {
            for v in u + 1..10 {
                let meet = model[u].0 <= model[v].1 && model[v].0 <= model[u].1;
                assert_eq!(meet, g.has_edge(u, v));
            }
        }
    }

    let out = run(
        &[
            "generate",
            "--class",
            "p2p3bar-free-cocomp",
            "--n",
            "8",
            "--count",
            "5",
            "--seed",
            "2",
        ],
        "",
    );
    let rs = records(&out);
    assert_eq!(rs.len(), 5);
    for r in rs {
        let g = from_graph6(r["graph6"].as_str().unwrap()).unwrap();
        assert!(classify(&g).contains(&ClassTag::Theorem31Applicable));
    }

    let rs = records(&run(&["generate", "--named", "k_ladder", "--k", "3"], ""));
    assert_eq!(rs.len(), 1);
    assert_eq!(
        (rs[0]["n"].as_u64(), rs[0]["m"].as_u64()),
        (Some(8), Some(10))
    );
}

#[test]
fn generate_sidecars_follow_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("graphs.jsonl");
    let out = run(
        &[
            "generate",
            "--class",
            "cocomp",
            "--n",
            "6",
            "--count",
            "2",
            "--output",
            path.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 2);
    let sidecar =
        std::fs::read_to_string(dir.path().join("graphs.jsonl.witness/000001.txt")).unwrap();
    let r: Value = serde_json::from_str(text.lines().nth(1).unwrap()).unwrap();
    let g = from_graph6(r["graph6"].as_str().unwrap()).unwrap();
    let sigma = Ordering::parse(sidecar.trim(), g.n()).unwrap();
    assert!(is_umbrella_free(&g, &sigma).passed());
}

#[test]
fn rejection_exhaustion_is_reported_per_instance() {
    let out = run(
        &[
            "generate",
            "--class",
            "girth4-cocomp",
            "--n",
            "12",
            "--p",
            "0.0",
            "--budget",
            "3",
            "--count",
            "2",
        ],
        "",
    );
    assert_eq!(out.status.code(), Some(3));
    let rs = records(&out);
    assert_eq!(rs.len(), 2);
    assert!(rs
        .iter()
        .all(|r| r["error"]["kind"] == "rejection-exhausted"));
}

#[test]
fn theorem_suites_pass() {
    for class in [
        "p2p3bar-free-cocomp",
        "diamond-free-cocomp",
        "girth4-cocomp",
    ] {
        let out = run(
            &[
                "check-theorem",
                "--class",
                class,
                "--count",
                "100",
                "--n-max",
                "12",
            ],
            "",
        );
        assert_eq!(out.status.code(), Some(0), "{class}");
        let rs = records(&out);
        assert_eq!(rs.len(), 101);
        let s = &rs[100]["summary"];
        assert_eq!(
            (s["pass"].as_u64(), s["fail"].as_u64()),
            (Some(100), Some(0)),
            "{class}"
        );
        assert_eq!(rs[100]["config"]["class"], class);
    }
}

#[test]
fn reports_are_identical_across_thread_counts() {
    let args = [
        "check-theorem",
        "--class",
        "cocomp",
        "--count",
        "150",
        "--seed",
        "9",
    ];
    let one = run(&[&args[..], &["--jobs", "1"]].concat(), "");
    let many = run(&[&args[..], &["--jobs", "4"]].concat(), "");
    assert_eq!(one.stdout, many.stdout);
    let rs = records(&one);
    let indices: Vec<u64> = rs[..150]
        .iter()
        .map(|r| r["index"].as_u64().unwrap())
        .collect();
    assert_eq!(indices, (0..150).collect::<Vec<_>>());
    let s = &rs[150]["summary"];
    let tally = ["pass", "fail", "not_applicable", "errors"]
        .iter()
        .map(|k| s[k].as_u64().unwrap())
        .sum::<u64>();
    assert_eq!(tally, 150);
}

#[test]
fn failure_records_replay() {
    // the hypothesis-free class produces genuine failures to replay
    let out = run(
        &[
            "check-theorem",
            "--class",
            "cocomp",
            "--count",
            "600",
            "--n-min",
            "6",
        ],
        "",
    );
    assert_eq!(out.status.code(), Some(1));
    let mut replayed = 0;
    for r in records(&out).iter().filter(|r| r["verdict"] == "fail") {
        let g6 = r["graph6"].as_str().unwrap();
        let g = from_graph6(g6).unwrap();
        for c in r["checks"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|c| c["verdict"] == "fail")
        {
            let pi = Ordering::from_seq(ordering(&c["start"])).unwrap();
            let report = theorem_check(&g, &pi).unwrap();
            let sweeps: Vec<Vec<usize>> = c["sweeps"]
                .as_array()
                .unwrap()
                .iter()
                .map(ordering)
                .collect();
            let expected: Vec<Vec<usize>> = report
                .sweeps
                .iter()
                .map(|s| s.as_slice().to_vec())
                .collect();
            assert_eq!(sweeps, expected);
            let d = report.divergence.unwrap();
            assert_eq!(
                c["divergence"]["position"].as_u64(),
                Some(d.position as u64)
            );
            assert_ne!(sweeps[1], sweeps[3]);

            let start = pi.to_string();
            let cert = run(
                &["certify", "--ordering", &start, "--check", "umbrella"],
                &format!("{g6}\n"),
            );
            assert_eq!(cert.status.code(), Some(0));
            replayed += 1;
        }
    }
    assert!(replayed > 0);

    let out = run(
        &["certify", "--ordering", "1 3 0 2", "--check", "umbrella"],
        "Ch\n",
    );
    let v = &records(&out)[0]["witness"];
    let at = |k: &str| v[k].as_u64().unwrap() as usize;
    let w = Witness::Umbrella(BadTriple {
        x: at("x"),
        y: at("y"),
        z: at("z"),
    });
    let p4 = from_graph6("Ch").unwrap();
    assert!(w.violates(&p4, &Ordering::parse("1 3 0 2", 4).unwrap(), None));
}
