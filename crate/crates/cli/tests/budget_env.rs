use boundchain_cli::{run, BUDGET_ENV, EXIT_ERROR, EXIT_OK};

#[test]
fn entry_budget_comes_from_the_environment() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let args = [
        "boundchain".to_string(),
        "solve-obcp".into(),
        "--complex".into(),
        format!("{dir}/tests/fixtures/octahedron.cplx"),
        "--boundary".into(),
        format!("{dir}/tests/fixtures/equator.chain"),
    ];
    std::env::set_var(BUDGET_ENV, "4");
    let refused = run(args.clone());
    assert_eq!(refused.code, EXIT_ERROR);
    assert!(refused.stderr.contains("budget"), "{}", refused.stderr);

    std::env::set_var(BUDGET_ENV, "lots");
    assert_eq!(run(args.clone()).code, EXIT_ERROR);

    std::env::set_var(BUDGET_ENV, "1048576");
    assert_eq!(run(args).code, EXIT_OK);
    std::env::remove_var(BUDGET_ENV);
}
