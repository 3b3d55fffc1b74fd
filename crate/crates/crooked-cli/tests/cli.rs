//! End-to-end tests of the `crooked` binary: exit codes, report wording,
//! output determinism, and file exports.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn crooked(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crooked"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Bundled scenes, relative to the workspace root.
fn scene(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenes")
        .join(name);
    path.display().to_string()
}

#[test]
fn classify_reports_every_section() {
    let out = crooked(&["classify", &scene("demo.toml")]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    for needle in [
        "[vectors]",
        "u0 = spacelike unit",
        "w = null",
        "(u0, u1) = ultraparallel",
        "boost = hyperbolic",
        "shear = parabolic",
        "boost/o = axis",
        "boost/q = S(1)",
    ] {
        assert!(text.contains(needle), "missing `{needle}` in:\n{text}");
    }
}

#[test]
fn scene_errors_exit_2_with_context() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "[vectors]\nu = [1, 0, 0\n").unwrap();
    let out = crooked(&["classify", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(
        stderr(&out).contains("line"),
        "parse errors must be line-anchored: {}",
        stderr(&out)
    );

    let out = crooked(&["disjoint", &scene("demo.toml"), "c0", "nope"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown crooked plane `nope`"));

    let missing = dir.path().join("missing.toml");
    let out = crooked(&["classify", missing.to_str().unwrap()]);
    assert_eq!(code(&out), 1, "I/O failures exit 1: {}", stderr(&out));
}

#[test]
fn disjoint_methods_agree_on_the_demo_pair() {
    let out = crooked(&["disjoint", &scene("demo.toml"), "c0", "c1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("directors = ultraparallel"), "{text}");
    // Axis-vertex leaves one boost step apart: lhs = sinh(1), rhs = 0.
    assert!(
        text.contains("dg = disjoint (lhs = 1.1752011936438014e0"),
        "{text}"
    );
    assert!(text.contains("rhs = 0.0000000000000000e0"), "{text}");
    assert!(text.contains("cone = disjoint"), "{text}");
    assert!(text.contains("oracle = no intersection found"), "{text}");
    assert!(text.contains("agreement = true"), "{text}");

    let out = crooked(&["disjoint", &scene("demo.toml"), "c0", "c0"]);
    assert_eq!(code(&out), 2, "parallel directors are degenerate");
    assert!(stderr(&out).contains("parallel"), "{}", stderr(&out));
}

/// The demo pair is disjoint but its wings hug the light cone, so the two
/// planes pass within 0.05 of each other inside the sampled extent. With a
/// contact tolerance that loose, the oracle reports an intersection while
/// the exact criteria do not, and the command surfaces the disagreement.
#[test]
fn disjoint_exits_3_when_methods_disagree() {
    let args = [
        "disjoint",
        &scene("demo.toml"),
        "c0",
        "c1",
        "--eps",
        "0.05",
        "--resolution",
        "24",
    ];
    let out = crooked(&args);
    assert_eq!(code(&out), 3, "{}\n{}", stdout(&out), stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("dg = disjoint"), "{text}");
    assert!(text.contains("cone = disjoint"), "{text}");
    assert!(text.contains("oracle = intersecting"), "{text}");
    assert!(text.contains("agreement = false"), "{text}");

    // A single method never exits 3, even when it would disagree.
    let mut single = args.to_vec();
    single.extend(["--method", "oracle"]);
    let out = crooked(&single);
    assert_eq!(code(&out), 0);
}

#[test]
fn verify_exit_codes_and_witnesses() {
    let out = crooked(&["verify", &scene("foliations.toml"), "s-boundary"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("result = PASS"));

    let out = crooked(&["verify", &scene("foliations.toml"), "too-wide"]);
    assert_eq!(code(&out), 4);
    let text = stdout(&out);
    assert!(text.contains("result = FAIL"), "{text}");
    assert!(text.contains("infinitesimal_witness"), "{text}");
    assert!(text.contains("pair_witness"), "{text}");

    let out = crooked(&["verify", &scene("foliations.toml"), "nope"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown foliation spec `nope`"));

    // Structural problems in overrides are usage errors, not failed runs.
    let out = crooked(&[
        "verify",
        &scene("foliations.toml"),
        "s-boundary",
        "--interval",
        "2,-2",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("interval"), "{}", stderr(&out));

    // Overrides are honored: shrinking the grid still passes.
    let out = crooked(&[
        "verify",
        &scene("foliations.toml"),
        "s-boundary",
        "--interval",
        "-1,1",
        "--samples",
        "9",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("samples = 9"));
}

#[test]
fn foliate_writes_meshes_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("leaves");
    let out = crooked(&[
        "foliate",
        &scene("demo.toml"),
        "s-half",
        "--out",
        out_dir.to_str().unwrap(),
        "--count",
        "3",
        "--resolution",
        "6",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let manifest_text = fs::read_to_string(out_dir.join("manifest.toml")).unwrap();
    let manifest: toml::Value = toml::from_str(&manifest_text).unwrap();
    let leaves = manifest["leaves"].as_array().unwrap();
    assert_eq!(leaves.len(), 3);
    assert_eq!(manifest["spec"].as_str(), Some("s-half"));
    assert_eq!(manifest["resolution"].as_integer(), Some(6));

    for (i, leaf) in leaves.iter().enumerate() {
        let file = leaf["file"].as_str().unwrap();
        assert_eq!(file, format!("leaf_{i:03}.obj"));
        let obj = fs::read_to_string(out_dir.join(file)).unwrap();
        assert!(obj.starts_with("# crooked plane leaves\n"));
        assert!(obj.contains(&format!("o leaf_{i:03}\n")));
        for group in ["g stem", "g wing_plus", "g wing_minus"] {
            assert!(obj.contains(group), "missing {group} in {file}");
        }
        let v_count = obj.lines().filter(|l| l.starts_with("v ")).count();
        let f_count = obj.lines().filter(|l| l.starts_with("f ")).count();
        assert_eq!(v_count as i64, leaf["vertices"].as_integer().unwrap());
        assert_eq!(f_count as i64, leaf["triangles"].as_integer().unwrap());
    }
}

#[test]
fn foliate_refuses_failing_specs_unless_forced() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("leaves");
    let out = crooked(&[
        "foliate",
        &scene("foliations.toml"),
        "too-wide",
        "--out",
        out_dir.to_str().unwrap(),
        "--count",
        "2",
        "--resolution",
        "4",
    ]);
    assert_eq!(code(&out), 4);
    assert!(stdout(&out).contains("skipped"), "{}", stdout(&out));
    assert!(!out_dir.exists(), "refused exports must not write files");

    let out = crooked(&[
        "foliate",
        &scene("foliations.toml"),
        "too-wide",
        "--out",
        out_dir.to_str().unwrap(),
        "--count",
        "2",
        "--resolution",
        "4",
        "--force",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(out_dir.join("leaf_001.obj").exists());
    assert!(out_dir.join("manifest.toml").exists());
}

#[test]
fn calibrate_emits_a_verifiable_scene() {
    let (l, k, t1) = (1.0f64, 0.5f64, 1.0f64);
    let out = crooked(&[
        "calibrate",
        "--p0",
        &format!("{k},0,0"),
        "--u0",
        "1,0,0",
        "--p1",
        &format!("{},{t1},{}", k * (l * t1).cosh(), k * (l * t1).sinh()),
        "--u1",
        &format!("{},0,{}", (l * t1).cosh(), (l * t1).sinh()),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("# kind = calibrated"), "{text}");
    assert!(text.contains("# calibrated = true"), "{text}");

    // The whole stdout is one valid scene document (comments and all), and
    // the emitted spec verifies.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("calibrated.toml");
    fs::write(&path, &text).unwrap();
    let verify_out = crooked(&["verify", path.to_str().unwrap(), "interpolating"]);
    assert_eq!(code(&verify_out), 0, "{}", stderr(&verify_out));
    assert!(stdout(&verify_out).contains("result = PASS"));
}

#[test]
fn calibrate_axis_and_intersecting_exit_codes() {
    // Vertices on the flow axis: the S-orbit degenerates to the axis.
    let out = crooked(&[
        "calibrate",
        "--p0",
        "0,0,0",
        "--u0",
        "1,0,0",
        "--p1",
        "0,1,0",
        "--u1",
        "1.5430806348152437,0,1.1752011936438014",
    ]);
    assert_eq!(code(&out), 6, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("# kind = axis"), "{text}");
    assert!(text.contains("region = \"axis\""), "{text}");

    // Vertices too close together: not disjoint, nothing to interpolate.
    let out = crooked(&[
        "calibrate",
        "--p0",
        "0,0,0",
        "--u0",
        "1,0,0",
        "--p1",
        "0.1,0.05,0",
        "--u1",
        "1.5430806348152437,0,1.1752011936438014",
    ]);
    assert_eq!(code(&out), 5);
    assert!(stdout(&out).contains("# kind = not disjoint"));
    assert!(stdout(&out).contains("# dg_margin = -"));
}

#[test]
fn repro_names_all_run_clean() {
    for name in [
        "basicex",
        "alpha-kl",
        "ss-boundary",
        "parabolic",
        "table1",
        "asymptotic-cases",
    ] {
        let out = crooked(&["repro", name]);
        assert_eq!(code(&out), 0, "repro {name}: {}", stderr(&out));
        assert!(!stdout(&out).is_empty(), "repro {name} printed nothing");
    }
    let table = stdout(&crooked(&["repro", "table1"]));
    assert!(table.contains("reference = "), "{table}");
    assert!(table.contains("computed = "), "{table}");

    let out = crooked(&["repro", "nope"]);
    assert_eq!(code(&out), 2, "unknown repro names are usage errors");
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["repro", "ss-boundary"],
        vec!["classify", &scene("demo.toml")],
        vec!["disjoint", &scene("demo.toml"), "c0", "c1"],
        vec!["verify", &scene("foliations.toml"), "w-contracting"],
    ] {
        let a = crooked(&args);
        let b = crooked(&args);
        assert_eq!(a.stdout, b.stdout, "nondeterministic stdout for {args:?}");
        assert_eq!(code(&a), code(&b));
    }

    // Mesh exports too.
    let dir = tempfile::tempdir().unwrap();
    let (d1, d2) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&d1, &d2] {
        let out = crooked(&[
            "foliate",
            &scene("demo.toml"),
            "shear-orbit",
            "--out",
            d.to_str().unwrap(),
            "--count",
            "2",
            "--resolution",
            "5",
        ]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
    }
    for file in ["leaf_000.obj", "leaf_001.obj", "manifest.toml"] {
        assert_eq!(
            fs::read(d1.join(file)).unwrap(),
            fs::read(d2.join(file)).unwrap(),
            "{file} differs between runs"
        );
    }
}

#[test]
fn usage_errors_exit_2() {
    let out = crooked(&["disjoint", &scene("demo.toml")]);
    assert_eq!(code(&out), 2, "missing positional args");

    let out = crooked(&[
        "calibrate",
        "--p0",
        "1,2",
        "--u0",
        "1,0,0",
        "--p1",
        "0,1,0",
        "--u1",
        "1,0,0",
    ]);
    assert_eq!(code(&out), 2, "malformed triple");
    assert!(stderr(&out).contains("x,y,z"), "{}", stderr(&out));
}
