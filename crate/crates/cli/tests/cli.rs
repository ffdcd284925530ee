use std::fs;
use std::path::PathBuf;

use boundchain_cli::{run, Outcome, EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK};
use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

fn cli(args: &[&str]) -> Outcome {
    let argv: Vec<String> = std::iter::once("boundchain")
        .chain(args.iter().copied())
        .map(|a| {
            if [".cplx", ".chain", ".w", ".td"]
                .iter()
                .any(|e| a.ends_with(e))
                && !a.starts_with('/')
            {
                fixture(a)
            } else {
                a.to_string()
            }
        })
        .collect();
    run(argv)
}

fn normalised(stdout: &str) -> Value {
    let mut v: Value = serde_json::from_str(stdout).expect("JSON report");
    v["wall_time_ms"] = Value::from(0.0);
    v
}

fn golden(name: &str) -> Value {
    let text = fs::read_to_string(fixtures().join("golden").join(name)).unwrap();
    serde_json::from_str(&text).unwrap()
}

const REPORT_KEYS: [&str; 11] = [
    "command",
    "inputs",
    "decomposition",
    "status",
    "weight",
    "witness",
    "homologous",
    "peak_table_entries",
    "total_table_entries",
    "details",
    "wall_time_ms",
];

#[test]
fn triangle_is_filled() {
    let out = cli(&[
        "solve-obcp",
        "--complex",
        "triangle.cplx",
        "--boundary",
        "triangle_boundary.chain",
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(out.stdout, "weight 1\n0 1 2\n");
}

#[test]
fn non_cycle_is_infeasible() {
    let out = cli(&[
        "solve-obcp",
        "--complex",
        "triangle.cplx",
        "--boundary",
        "triangle_edge.chain",
    ]);
    assert_eq!(out.code, EXIT_NEGATIVE);
    assert_eq!(out.stdout, "infeasible\n");
    let fast = cli(&[
        "solve-obcp",
        "--complex",
        "triangle.cplx",
        "--boundary",
        "triangle_edge.chain",
        "--check-cycle",
    ]);
    assert_eq!(fast.code, EXIT_NEGATIVE);
}

#[test]
fn homology_exit_codes() {
    let no = cli(&[
        "test-null-homologous",
        "--complex",
        "annulus.cplx",
        "--chain",
        "annulus_inner.chain",
    ]);
    assert_eq!((no.code, no.stdout.as_str()), (EXIT_NEGATIVE, "false\n"));
    let yes = cli(&[
        "test-null-homologous",
        "--complex",
        "octahedron.cplx",
        "--chain",
        "equator.chain",
    ]);
    assert_eq!((yes.code, yes.stdout.as_str()), (EXIT_OK, "true\n"));
    let pair = cli(&[
        "test-homologous",
        "--complex",
        "annulus.cplx",
        "--chain",
        "annulus_outer.chain",
        "--other",
        "annulus_inner.chain",
    ]);
    assert_eq!(pair.code, EXIT_OK);
}

#[test]
fn ohcp_plain_output() {
    let out = cli(&[
        "solve-ohcp",
        "--complex",
        "annulus.cplx",
        "--chain",
        "annulus_outer.chain",
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out
        .stdout
        .starts_with("weight 3\nhomologous:\n6 7\n6 8\n7 8\nwitness:\n"));
}

#[test]
fn weighted_solve() {
    let out = cli(&[
        "solve-obcp",
        "--complex",
        "octahedron.cplx",
        "--boundary",
        "equator.chain",
        "--weights",
        "octahedron_north.w",
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "weight 4\n1 2 5\n1 4 5\n2 3 5\n3 4 5\n");
}

#[test]
fn json_reports_match_goldens() {
    let cases: [(&[&str], &str); 5] = [
        (
            &[
                "solve-obcp",
                "--complex",
                "octahedron.cplx",
                "--boundary",
                "equator.chain",
                "--json",
            ],
            "solve_obcp_octahedron.json",
        ),
        (
            &[
                "solve-obcp",
                "--complex",
                "triangle.cplx",
                "--boundary",
                "triangle_edge.chain",
                "--json",
            ],
            "solve_obcp_infeasible.json",
        ),
        (
            &[
                "solve-ohcp",
                "--complex",
                "annulus.cplx",
                "--chain",
                "annulus_outer.chain",
                "--json",
            ],
            "solve_ohcp_annulus.json",
        ),
        (
            &[
                "test-null-homologous",
                "--complex",
                "annulus.cplx",
                "--chain",
                "annulus_inner.chain",
                "--json",
            ],
            "null_annulus_inner.json",
        ),
        (
            &[
                "hasse-stats",
                "--delta",
                "5",
                "-d",
                "2",
                "--exact-expansion",
                "--json",
            ],
            "hasse_stats_delta5_d2.json",
        ),
    ];
    for (args, file) in cases {
        let out = cli(args);
        let report = normalised(&out.stdout);
        for key in REPORT_KEYS {
            assert!(report.get(key).is_some(), "{file}: missing {key}");
        }
        assert_eq!(report, golden(file), "{file}");
        assert_eq!(
            report["weight"].is_null(),
            report["status"] != "solved",
            "{file}"
        );
    }
}

#[test]
fn decomposition_files_feed_back_in() {
    let dir = tempfile::tempdir().unwrap();
    let td = dir.path().join("octahedron.td");
    let td_path = td.display().to_string();
    let out = cli(&[
        "build-decomposition",
        "--complex",
        "octahedron.cplx",
        "-o",
        &td_path,
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let solved = cli(&[
        "solve-obcp",
        "--complex",
        "octahedron.cplx",
        "--boundary",
        "equator.chain",
        "--td",
        &td_path,
    ]);
    assert_eq!(solved.code, EXIT_OK);
    assert!(solved.stdout.starts_with("weight 4\n"));

    let hasse = dir.path().join("hasse.td").display().to_string();
    let out = cli(&[
        "build-hasse-td",
        "--complex",
        "octahedron.cplx",
        "--td",
        &td_path,
        "-d",
        "2",
        "-o",
        &hasse,
    ]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let text = fs::read_to_string(&hasse).unwrap();
    let raw = boundchain::io::parse_td_raw(&text).unwrap();
    assert_eq!(raw.vertex_count, 20);
}

#[test]
fn bad_decomposition_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let td = dir.path().join("bad.td");
    fs::write(&td, "s td 2 2 3\nb 1 0 1\nb 2 1 2\n1 2\n").unwrap();
    let out = cli(&[
        "solve-obcp",
        "--complex",
        "triangle.cplx",
        "--boundary",
        "triangle_boundary.chain",
        "--td",
        &td.display().to_string(),
    ]);
    assert_eq!(out.code, EXIT_ERROR);
    assert!(out.stderr.contains("edge"), "{}", out.stderr);
}

#[test]
fn oracle_commands() {
    let out = cli(&[
        "oracle",
        "obcp",
        "--complex",
        "octahedron.cplx",
        "--boundary",
        "equator.chain",
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("weight 4\n"));
    let out = cli(&[
        "oracle",
        "ohcp",
        "--complex",
        "annulus.cplx",
        "--chain",
        "annulus_outer.chain",
    ]);
    assert!(out.stdout.starts_with("weight 3\n"));
    let out = cli(&[
        "oracle",
        "obcp",
        "--complex",
        "annulus.cplx",
        "--boundary",
        "annulus_outer.chain",
    ]);
    assert_eq!(out.code, EXIT_NEGATIVE);
    let out = cli(&["oracle", "tw", "--complex", "octahedron.cplx"]);
    assert_eq!(out.stdout, "treewidth 4\n");
}

#[test]
fn usage_and_input_errors_exit_one() {
    assert_eq!(cli(&["frobnicate"]).code, EXIT_ERROR);
    assert_eq!(
        cli(&["solve-obcp", "--complex", "triangle.cplx"]).code,
        EXIT_ERROR
    );
    assert_eq!(
        cli(&[
            "solve-obcp",
            "--complex",
            "/nonexistent.cplx",
            "--boundary",
            "equator.chain"
        ])
        .code,
        EXIT_ERROR
    );
    let dir = tempfile::tempdir().unwrap();
    let chain = dir.path().join("dup.chain");
    fs::write(&chain, "dim 1\n0 1\n1 0\n").unwrap();
    let out = cli(&[
        "solve-obcp",
        "--complex",
        "triangle.cplx",
        "--boundary",
        &chain.display().to_string(),
    ]);
    assert_eq!(out.code, EXIT_ERROR);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);
    assert_eq!(cli(&["--help"]).code, EXIT_OK);
}

#[test]
fn generated_instances_are_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = cli(&[
            "generate",
            "--seed",
            "42",
            "-d",
            "2",
            "--count",
            "4",
            "--out",
            &dir.path().display().to_string(),
        ]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    }
    for i in 0..4 {
        for ext in ["cplx", "chain"] {
            let name = format!("instance_{i:03}.{ext}");
            assert_eq!(
                fs::read(a.path().join(&name)).unwrap(),
                fs::read(b.path().join(&name)).unwrap()
            );
        }
        let cplx = a
            .path()
            .join(format!("instance_{i:03}.cplx"))
            .display()
            .to_string();
        let chain = a
            .path()
            .join(format!("instance_{i:03}.chain"))
            .display()
            .to_string();
        let dp = cli(&[
            "solve-ohcp",
            "--complex",
            &cplx,
            "--chain",
            &chain,
            "--json",
        ]);
        let oracle = cli(&[
            "oracle",
            "ohcp",
            "--complex",
            &cplx,
            "--chain",
            &chain,
            "--json",
        ]);
        assert_eq!(
            normalised(&dp.stdout)["weight"],
            normalised(&oracle.stdout)["weight"]
        );
    }
}
