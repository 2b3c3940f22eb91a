use std::fs;

use aniso_lgp::cli::run;
use aniso_lgp::Construction;

fn argv(args: &[&str]) -> Vec<String> {
    std::iter::once("aniso-lgp").chain(args.iter().copied()).map(String::from).collect()
}

#[test]
fn construct_writes_dump_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let code = run(argv(&[
        "construct", "--norm", "lp:2", "--alpha0", "0.1", "--depth", "10", "--mode", "equality",
        "--out-dir", out,
    ]));
    assert_eq!(code, 0);
    let text = fs::read_to_string(dir.path().join("construction.json")).unwrap();
    let c = Construction::from_json(&text).unwrap();
    assert_eq!(c.node_count(), (1 << 11) - 1);
    assert_eq!(c.to_json().unwrap(), text);
    let csv = fs::read_to_string(dir.path().join("nodes.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + (1 << 11) - 1);
}

#[test]
fn construct_accepts_degrees_and_depth_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let code = run(argv(&[
        "construct", "--depth", "0", "--theta-center", "90deg", "--json", "--out-dir", out,
    ]));
    assert_eq!(code, 0);
    let c = Construction::from_json(&fs::read_to_string(dir.path().join("construction.json")).unwrap()).unwrap();
    assert_eq!(c.node_count(), 1);
    assert!((c.config().theta_center - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    assert!(!dir.path().join("nodes.csv").exists());
}

#[test]
fn square_example_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let code = run(argv(&[
        "square-example", "--a", "0.5", "--b", "0.4", "--p", "2", "--p", "3", "--csv", "--out-dir", out,
    ]));
    assert_eq!(code, 0);
    let csv = fs::read_to_string(dir.path().join("square.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "p,value_e1,value_e2,winner,solution_exists");
    assert!(lines[1].ends_with("E2,false"));
    assert!(lines[2].ends_with("E1,true"));
    assert_eq!(lines.len(), 3);
}

#[test]
fn solve_check_h_and_render_from_dump() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(
        run(argv(&[
            "construct", "--mode", "equality-fraction", "--rho", "0.8", "--depth", "4", "--out-dir", out,
        ])),
        0
    );
    let dump = dir.path().join("construction.json");
    let dump = dump.to_str().unwrap();
    assert_eq!(run(argv(&["solve", "--input", dump, "--out-dir", out])), 0);
    let csv = fs::read_to_string(dir.path().join("solve.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "level,m,optimal_value,uniqueness_gap,n_ties,area_in");
    assert_eq!(csv.lines().count(), 6);

    assert_eq!(
        run(argv(&["check-h", "--input", dump, "--other", "lp:2", "--require-positive", "--out-dir", out])),
        0
    );
    // touching children make h negative for every strictly convex norm
    let wide = dir.path().join("wide");
    assert_eq!(
        run(argv(&[
            "construct", "--mode", "fixed-ratio", "--rho", "1", "--depth", "3", "--json",
            "--out-dir", wide.to_str().unwrap(),
        ])),
        0
    );
    let wide_dump = wide.join("construction.json");
    assert_eq!(
        run(argv(&[
            "check-h", "--input", wide_dump.to_str().unwrap(), "--other", "lp:3", "--require-positive",
            "--out-dir", out,
        ])),
        1
    );

    let svg = dir.path().join("fig.svg");
    assert_eq!(
        run(argv(&["render", "--input", dump, "--level", "3", "--out", svg.to_str().unwrap()])),
        0
    );
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert!(text.contains("viewBox=\"-1.1 -1.1 2.2 2.2\""));
    assert_eq!(run(argv(&["render", "--input", dump, "--matching", "bogus"])), 1);
}

#[test]
fn solve_explicit_arcs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let code = run(argv(&[
        "solve", "--arcs", "0:0.5,1:0.5,2.5:0.3", "--norm", "lp:3", "--svg", "--json", "--out-dir", out,
    ]));
    assert_eq!(code, 0);
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("solve.json")).unwrap()).unwrap();
    assert_eq!(v["report"]["optimal"]["pairs"].as_array().unwrap().len(), 3);
    assert!(dir.path().join("solve.svg").exists());
    assert_eq!(run(argv(&["solve", "--arcs", "0:0.5,0.2:0.5"])), 1);
}

#[test]
fn experiment_commands_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(
        run(argv(&["cross-norm", "--depth", "8", "--skip-solves", "--out-dir", out])),
        0
    );
    assert!(dir.path().join("g_scan.csv").exists());
    // the same norm twice cannot be certified
    assert_eq!(
        run(argv(&["cross-norm", "--phi2", "lp:3", "--depth", "4", "--skip-solves", "--out-dir", out])),
        1
    );
    assert_eq!(run(argv(&["perturbation", "--depth", "6", "--out-dir", out])), 0);
    assert_eq!(run(argv(&["perturbation", "--theta-center", "120deg", "--out-dir", out])), 1);
    assert_eq!(
        run(argv(&[
            "l1-quadrant", "--mode", "fixed-ratio", "--rho", "0.6", "--theta-center", "45deg",
            "--depth", "6", "--out-dir", out,
        ])),
        0
    );
    assert_eq!(
        run(argv(&["indicators", "--depth", "5", "--out-dir", out])),
        0
    );
    assert!(dir.path().join("existence.json").exists());
    assert_eq!(
        run(argv(&[
            "indicators", "--mode", "equality-fraction", "--rho", "0.8", "--depth", "6", "--out-dir", out,
        ])),
        0
    );
    assert!(dir.path().join("nonexistence.json").exists());
}

#[test]
fn usage_errors() {
    assert_eq!(run(argv(&[])), 2);
    assert_eq!(run(argv(&["construct", "--theta-center", "north"])), 2);
    assert_eq!(run(argv(&["construct", "--mode", "equality-fraction"])), 1);
    assert_eq!(run(argv(&["--help"])), 0);
}
