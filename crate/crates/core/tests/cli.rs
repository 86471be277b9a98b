use rzint::cli::{run_cli, EXIT_OK, EXIT_VALIDATION};

const ROT: &str = r#"{"layer":"reduced","p":3,"t":2,"omega_gram":[[1,0],[0,1]],"gbar":[[0,2],[1,0]],"P":[1,0,1]}"#;

fn run(args: &[&str], env_seed: Option<&str>) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("rzint").chain(args.iter().copied());
    let code = run_cli(argv, env_seed.map(String::from), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("{e}: {s}"))
}

#[test]
fn analyze_small_instance() {
    let (code, out, _) = run(&["analyze", ROT, "--with-oracles"], None);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("points"), "{out}");

    let (code, out, _) = run(&["--json", "analyze", ROT, "--with-oracles"], None);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["report"]["point_count"], 2);
    assert_eq!(v["report"]["c"], 1);
    assert_eq!(v["report"]["total"], 2);
    assert_eq!(v["report"]["oracle"]["point_count"], 2);
}

#[test]
fn json_is_reproducible() {
    let gen = run(&["gen", "--p", "7", "--n", "4"], Some("42")).1;
    let a = run(&["--json", "analyze", gen.trim(), "--with-oracles"], Some("42"));
    let b = run(&["--json", "analyze", gen.trim(), "--with-oracles"], Some("42"));
    assert_eq!(a.0, EXIT_OK, "{}", a.2);
    assert_eq!(a.1, b.1);
    assert_eq!(json(&a.1)["seed"], 42);
}

#[test]
fn env_seed_overrides_flag() {
    let a = run(&["--seed", "5", "gen", "--p", "5", "--shape", "q:2:1,pair:1:1"], Some("9")).1;
    let b = run(&["--seed", "9", "gen", "--p", "5", "--shape", "q:2:1,pair:1:1"], None).1;
    assert_eq!(a, b);
    let (code, _, err) = run(&["gen", "--p", "5"], Some("nope"));
    assert_eq!(code, EXIT_VALIDATION);
    assert!(err.contains("RZ_SEED"));
}

#[test]
fn generated_instances_are_valid() {
    for shape in ["q:2:1", "q:4:1", "q:2:1,pair:1:1"] {
        for seed in ["1", "2", "3"] {
            let (code, out, err) = run(&["gen", "--p", "7", "--shape", shape], Some(seed));
            assert_eq!(code, EXIT_OK, "{err}");
            let v = json(&out);
            assert_eq!(v["layer"], "reduced");
            let (code, _, err) = run(&["analyze", out.trim(), "--with-oracles"], None);
            assert_eq!(code, EXIT_OK, "{shape} {seed}: {err}");
        }
    }
}

#[test]
fn empty_instance_reports_no_points() {
    let (_, inst, _) = run(&["gen", "--p", "5", "--relaxed", "--shape", "q:1:1,q:1:1"], Some("3"));
    let (code, out, err) = run(&["--json", "analyze", inst.trim(), "--with-oracles"], None);
    assert_eq!(code, EXIT_OK, "{err}");
    let v = json(&out);
    assert_eq!(v["report"]["nonempty"], false);
    assert_eq!(v["report"]["point_count"], 0);
    assert_eq!(v["report"]["oracle"]["point_count"], 0);
}

#[test]
fn malformed_input_is_a_validation_error() {
    let bad = r#"{"layer":"reduced","p":3,"t":2,"omega_gram":[[1,0],[0,"x"]],"gbar":[[0,2],[1,0]],"P":[1,0,1]}"#;
    let (code, _, err) = run(&["analyze", bad], None);
    assert_eq!(code, EXIT_VALIDATION);
    assert!(err.contains("omega_gram"), "{err}");

    // split form: hyperbolic plane
    let split = r#"{"layer":"reduced","p":3,"t":2,"omega_gram":[[0,1],[1,0]],"gbar":[[2,0],[0,2]],"P":[1,2,1]}"#;
    assert_eq!(run(&["analyze", split], None).0, EXIT_VALIDATION);
    assert_eq!(run(&["analyze", "/no/such/file.json"], None).0, EXIT_VALIDATION);
    assert_eq!(run(&["frobnicate"], None).0, EXIT_VALIDATION);
    assert_eq!(run(&["--help"], None).0, EXIT_OK);
}

#[test]
fn oracle_subcommands() {
    let (code, out, _) = run(&["oracle", "strata", ROT], None);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("oracle point count 2"), "{out}");

    let (code, out, _) = run(&["--json", "oracle", "dl", ROT], None);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["fixed_points"], 2);

    let jd = r#"{"p":5,"h1":[[2,1],[0,2]],"h2":[0,1],"h4":2}"#;
    let (code, out, _) = run(&["--json", "oracle", "local-ring", jd], None);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["length"], 3);

    let (code, out, _) = run(&["--json", "oracle", "local-ring", "--c", "2", "--d", "4", "--p", "7"], None);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["length"], 2);

    let (code, out, _) = run(&["--json", "oracle", "hilbert", "--p", "3", "3", "2"], None);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!((v["formula"].clone(), v["search"].clone()), (serde_json::json!(-1), serde_json::json!(-1)));
}
