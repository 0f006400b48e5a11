use clusterloop_cli::run;

fn ok(args: &[&str], stdin: &str) -> String {
    let mut full = vec!["clusterloop"];
    full.extend_from_slice(args);
    let r = run(full, stdin);
    assert_eq!(r.code, 0, "{args:?} failed: {}", r.stderr);
    r.stdout
}

fn code(args: &[&str], stdin: &str) -> (i32, String) {
    let mut full = vec!["clusterloop"];
    full.extend_from_slice(args);
    let r = run(full, stdin);
    (r.code, r.stderr)
}

const A2: &str = "quiver 2 0\n0 1 1\n";

#[test]
fn mutate_reverses_arrow() {
    let out = ok(&["quiver", "mutate", "--at", "1"], A2);
    assert_eq!(out, "quiver 2 0\n1 0 1\n");
    // mutating twice is the identity
    assert_eq!(ok(&["quiver", "mutate", "--at", "1"], &out), A2);
    assert_eq!(ok(&["quiver", "mutate", "--at", "v0", "v0"], A2), A2);
}

#[test]
fn rho_pipes_into_order() {
    let rho = ok(&["loop", "rho", "--k", "2", "--n", "3"], "");
    assert_eq!(ok(&["aut", "order"], &rho), "order: 5\n");
}

#[test]
fn dtilde_theta1_classifies_reducible_infinite() {
    let t = ok(&["loop", "theta", "--dtilde", "6", "--which", "1"], "");
    let out = ok(&["aut", "classify"], &t);
    assert!(out.starts_with("kind: reducible\n"), "{out}");
    assert!(out.contains("reduced_type: infinite\n"));
}

#[test]
fn classes_and_types() {
    assert_eq!(ok(&["quiver", "class"], "quiver 3 0\n0 1 1\n1 2 1\n"), "size: 4\ntruncated: false\n");
    let out = ok(&["quiver", "finite"], "quiver 4 0\n1 0 1\n2 0 1\n3 0 1\n");
    assert!(out.starts_with("finite: true\ntype: D4"), "{out}");
    let out = ok(&["quiver", "finite"], "quiver 2 0\n0 1 3\n");
    assert!(out.starts_with("finite: false\n"), "{out}");
}

#[test]
fn tuple_override() {
    let out = ok(&["aut", "order", "--tuple", "(0; (0 1))"], A2);
    assert_eq!(out, "order: 5\n");
}

#[test]
fn fences() {
    let f = ok(&["fence", "braid", "--word", "s1^3", "--strands", "2"], "");
    let q = ok(&["fence", "quiver"], &f);
    assert!(q.starts_with("quiver "), "{q}");
    let dt = ok(&["fence", "dt"], &f);
    assert!(dt.contains("mut: "), "{dt}");
    let rot = ok(&["fence", "rotate"], &f);
    assert!(rot.contains("closed: "), "{rot}");
}

#[test]
fn tau_relations() {
    let out = ok(&["loop", "verify", "--tails", "2,3"], "");
    assert!(out.ends_with("all_hold: true\n"), "{out}");
    let tau = ok(&["loop", "tau", "--tails", "2,3", "--i", "1"], "");
    assert!(tau.contains("mut: "));
}

#[test]
fn folding_commands() {
    let a3 = "quiver 3 0\n0 1 1\n2 1 1\n";
    assert_eq!(ok(&["fold", "check", "--gen", "(v0 v2)"], a3), "admissible: true\n");
    let out = ok(&["fold", "apply", "--gen", "(v0 v2)"], a3);
    assert!(out.contains("d: 2 1\n"), "{out}");
    assert!(out.contains("skew_symmetrizable: true\n"));
    let out = ok(&["fold", "check", "--gen", "(v0 v1)"], A2);
    assert!(out.contains("admissible: false\ncondition: 3\n"), "{out}");
    let out = ok(&["fold", "explore", "--gen", "(v0 v2)"], a3);
    assert!(out.starts_with("globally_foldable: yes\n"), "{out}");
}

#[test]
fn grassmann_commands() {
    let cfg = "grassmann 2 4\n1 0 -1 0\n0 1 0 -1\n";
    assert_eq!(ok(&["grass", "plucker", "--cols", "1,2"], cfg), "plucker: 1\n");
    let once = ok(&["grass", "rho"], cfg);
    let back = ok(&["grass", "rho", "--inverse"], &once);
    assert_eq!(ok(&["grass", "plucker", "--cols", "1,2"], &back), "plucker: 1\n");
    assert!(ok(&["grass", "sigma", "--i", "1"], cfg).starts_with("grassmann 2 4\n"));
    assert_eq!(ok(&["grass", "xratio", "--lines", "1,0;0,1;1,1;1,-1"], ""), "cross_ratio: 2\n");
}

#[test]
fn fixpoints_are_seeded_and_deterministic() {
    let bundle = "quiver 2 0\n0 1 1\nmut: v0 ; perm: (v0 v1)\n";
    let a = ok(&["fixpoint", "find", "--seed", "7"], bundle);
    assert!(a.starts_with("outcome: found\n"), "{a}");
    assert!(a.ends_with("seed: 7\n"));
    assert_eq!(a, ok(&["fixpoint", "find", "--seed", "7"], bundle));
    let j = ok(&["fixpoint", "find", "--json"], bundle);
    let v: serde_json::Value = serde_json::from_str(&j).unwrap();
    assert_eq!(v["outcome"], "found");
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(code(&["quiver", "bogus"], "").0, 2);
    assert_eq!(code(&["quiver", "class", "--max", "0"], A2).0, 2);
    assert_eq!(code(&["aut", "order"], A2).0, 2);
    // domain errors carry a position
    let (c, err) = code(&["quiver", "mutate", "--at", "0"], "quiver 2 0\n0 x 1\n");
    assert_eq!(c, 1);
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(code(&["quiver", "mutate", "--at", "q"], A2).0, 1);
    assert_eq!(code(&["quiver", "mutate", "--at", "0"], "/nonexistent").0, 1);
}
