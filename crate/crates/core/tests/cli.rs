use std::process::Command;

use dualfield::cli::{self, Outcome, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_OK, EXIT_USAGE};

fn run(args: &str) -> Outcome {
    cli::run(std::iter::once("dualfield").chain(args.split_whitespace()))
}

fn value(out: &Outcome, name: &str) -> String {
    let key = format!("record=output name={name} value=");
    out.stdout
        .lines()
        .find_map(|l| l.strip_prefix(&key))
        .unwrap_or_else(|| panic!("no output {name} in\n{}", out.stdout))
        .to_string()
}

#[test]
fn hyper_boost_reference() {
    let out = run("hyper boost --beta 0.6 --absE 1 --absH 1");
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(value(&out, "absE"), "2.0");
    assert_eq!(value(&out, "absH"), "0.5");
}

#[test]
fn dual_invariants_of_null_field() {
    let out = run("dual invariants --theta 0 --E 1,0,0 --H 0,1,0");
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(value(&out, "I1"), "0.0");
    assert_eq!(value(&out, "I2"), "0.0");
}

#[test]
fn negative_vector_components_parse() {
    let out = run("dual transform --theta 1.5707963267948966 --E -1,2,-3 --H 0.5,-0.25,4");
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(value(&out, "E"), "0.5,-0.25,4.0");
    assert_eq!(value(&out, "H"), "1.0,-2.0,3.0");
}

#[test]
fn unknown_subcommand_exits_2() {
    assert_eq!(run("frobnicate").code, EXIT_USAGE);
    assert_eq!(run("cavity melt").code, EXIT_USAGE);
    let out = run("dual invariants --theta 0 --E 1,0 --H 0,1,0");
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stdout.is_empty() && !out.stderr.is_empty());
}

#[test]
fn invalid_parameter_exits_2() {
    let out = run("hyper boost --beta 1.5 --absE 1 --absH 1");
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.starts_with("error:"));
}

#[test]
fn help_exits_0() {
    let out = run("--help");
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("verify"));
}

#[test]
fn bad_config_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.toml");
    std::fs::write(&p, "[cavity]\nlength = -1.0\n").unwrap();
    let out = run(&format!("--config {} algebra check", p.display()));
    assert_eq!(out.code, EXIT_CONFIG);
    std::fs::write(&p, "[cavity]\nlenght = 1.0\n").unwrap();
    assert_eq!(
        run(&format!("--config {} algebra check", p.display())).code,
        EXIT_CONFIG
    );
    let missing = dir.path().join("absent.toml");
    assert_eq!(
        run(&format!("--config {} algebra check", missing.display())).code,
        EXIT_CONFIG
    );
}

#[test]
fn config_from_environment_variable() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("unit.toml");
    std::fs::write(
        &p,
        "[constants]\neps0 = 1.0\nmu0 = 1.0\nc = 1.0\nhbar = 1.0\ne_charge = 1.0\n\n[cavity]\nlength = 1.0\nvolume = 1.0\nmodes = 1\n",
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_dualfield"))
        .args(["qfield", "evolve", "--phase", "1.0"])
        .env("DUALFIELD_CONFIG", &p)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = String::from_utf8(out.stdout).unwrap();
    // omega = pi c / L = pi
    assert!(
        text.contains(&format!("name=t value={:?}", 1.0 / std::f64::consts::PI)),
        "{text}"
    );

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "[constants]\nc = 2.0\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_dualfield"))
        .args(["algebra", "check"])
        .env("DUALFIELD_CONFIG", &bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_CONFIG));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8(out.stderr).unwrap().contains("error"));
}

#[test]
fn reports_are_byte_identical_without_timing() {
    let a = run("verify all --seed 7");
    let b = run("verify all --seed 7");
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.contains("wall_time"));
    let t = run("--timing verify all --seed 7");
    assert!(t.stdout.contains("wall_time_s="));
}

#[test]
fn verify_all_reports_every_criterion() {
    let out = run("verify all --seed 42");
    for id in 1..=10 {
        assert!(
            out.stdout.contains(&format!("name=criterion_{id} ")),
            "criterion {id}"
        );
    }
    // the Fock-algebra criterion carries checks the construction cannot meet
    assert_eq!(value(&out, "criterion_8"), "FAIL");
    assert_eq!(out.code, EXIT_CHECK_FAILED);
    let failed: Vec<&str> = out
        .stdout
        .lines()
        .filter(|l| l.starts_with("record=check") && l.contains("pass=false"))
        .collect();
    assert_eq!(failed.len(), 3, "{failed:#?}");
    assert!(out
        .stdout
        .ends_with("record=summary checks=42 failed=3 pass=false\n"));
}

#[test]
fn every_check_record_has_tolerance_and_outcome() {
    let out = run("--format csv verify all");
    let mut lines = out.stdout.lines();
    assert_eq!(
        lines.next(),
        Some("record,name,identity,value,tolerance,pass")
    );
    for l in out.stdout.lines().filter(|l| l.starts_with("check,")) {
        let pass = l.rsplit(',').next().unwrap();
        assert!(pass == "true" || pass == "false", "{l}");
        let tol = l.rsplit(',').nth(1).unwrap();
        assert!(tol.parse::<f64>().is_ok(), "{l}");
    }
}

#[test]
fn inputs_digest_tracks_arguments() {
    let digest = |o: &Outcome| {
        o.stdout
            .lines()
            .next()
            .unwrap()
            .split("inputs_digest=")
            .nth(1)
            .unwrap()
            .to_string()
    };
    let a = run("gauge irrep --alpha 0.3 --beta 2 --m 1 --k 1");
    let b = run("gauge irrep --alpha 0.3 --beta 2 --m 1 --k 2");
    assert_eq!(digest(&a).len(), 64);
    assert_ne!(digest(&a), digest(&b));
    assert_eq!(
        digest(&a),
        digest(&run("gauge irrep --alpha 0.3 --beta 2 --m 1 --k 1"))
    );
}

#[test]
fn every_subcommand_runs() {
    let dir = tempfile::tempdir().unwrap();
    let snap = dir.path().join("fields");
    let quat = dir.path().join("quat");
    let cases = [
        ("algebra check", EXIT_OK),
        ("dual transform --theta 0.3 --E 1,2,3 --H -1,0,2", EXIT_OK),
        ("dual invariants --theta 0.3 --E 1,2,3 --H -1,0,2", EXIT_OK),
        (
            "hyper transform --vartheta -0.4 --E 1,2,3 --H -1,0,2",
            EXIT_OK,
        ),
        (
            "hyper invariants --vartheta 0.4 --E 1,2,3 --H -1,0,2",
            EXIT_OK,
        ),
        ("hyper boost --beta -0.3 --absE 2 --absH 1", EXIT_OK),
        ("gauge irrep --alpha 0.3 --beta -2 --m 2 --k -1", EXIT_OK),
        (
            "gauge transform --alpha 0.5 --beta -2 --u 1+2i,-0.5i,3",
            EXIT_OK,
        ),
        ("cavity fields --z 0.3 --t 1e-9", EXIT_OK),
        (
            &format!(
                "cavity fields --out {} --nz 17 --nt 9 --encoding csv",
                snap.display()
            ),
            EXIT_OK,
        ),
        ("cavity energy --t 1e-9", EXIT_OK),
        ("cavity residual", EXIT_OK),
        ("cavity residual --branch second --nz 65 --nt 65", EXIT_OK),
        (
            &format!("cavity residual --input {}", snap.display()),
            EXIT_OK,
        ),
        ("currents evaluate --family j2 --mu 3", EXIT_OK),
        ("currents continuity", EXIT_OK),
        ("currents charge --t 2e-9", EXIT_OK),
        ("currents spin --mu 3", EXIT_OK),
        ("qfield commutators", EXIT_CHECK_FAILED),
        ("qfield operators --dim 4", EXIT_CHECK_FAILED),
        ("qfield evolve --phase 2.5", EXIT_OK),
        ("qfield contradiction", EXIT_OK),
        (
            &format!("quat assemble --nz 33 --nt 33 --out {}", quat.display()),
            EXIT_OK,
        ),
        ("quat residual", EXIT_OK),
        ("quat gradient --mode spatial --nz 33 --nt 33", EXIT_OK),
    ];
    for (args, code) in cases {
        let out = run(args);
        assert_eq!(out.code, code, "{args}\n{}{}", out.stdout, out.stderr);
        assert!(
            out.stdout
                .lines()
                .last()
                .unwrap()
                .starts_with("record=summary"),
            "{args}"
        );
    }
    assert!(dir.path().join("fields.csv").exists());
    assert!(dir.path().join("quat.hdr").exists());
}

#[test]
fn quat_reads_component_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("components");
    let cfg = dualfield::config::Config::default();
    cli::write_embedded_snapshot(&cfg, 65, 65, &base, dualfield::snapshot::Encoding::F64Le)
        .unwrap();
    let from_file = run(&format!("quat residual --input {}", base.display()));
    let built_in = run("quat residual --nz 65 --nt 65");
    assert_eq!(from_file.code, EXIT_OK);
    for name in ["faraday", "ampere", "gauss_e", "gauss_h"] {
        assert_eq!(value(&from_file, name), value(&built_in, name), "{name}");
    }
    let strict = run(&format!(
        "quat residual --input {} --tolerance 1.0",
        base.display()
    ));
    assert_eq!(strict.code, EXIT_CHECK_FAILED);
}

#[test]
fn component_snapshot_labels_are_validated() {
    use dualfield::grid::{Grid, SampledField, UniformAxis};
    use dualfield::Complex64;
    let g = Grid::xyzt(
        UniformAxis::point(0.0),
        UniformAxis::point(0.0),
        UniformAxis::point(0.0),
        UniformAxis::point(0.0),
    );
    let one = vec![Complex64::new(1.0, 0.0)];
    for label in ["E5x", "Ew1", "Q1x", "E1", "RhoE0"] {
        let f = SampledField::new(g.clone(), vec![label.into()], vec![one.clone()]).unwrap();
        assert!(cli::components_from_snapshot(&f).is_err(), "{label}");
    }
    let f = SampledField::new(
        g.clone(),
        vec!["Jg3z".into(), "RhoG4".into()],
        vec![one.clone(), one.clone()],
    )
    .unwrap();
    let c = cli::components_from_snapshot(&f).unwrap();
    assert_eq!(c.jg[2][2], vec![1.0]);
    assert_eq!(c.rho_g[3], vec![1.0]);
    let complex =
        SampledField::new(g, vec!["E1x".into()], vec![vec![Complex64::new(0.0, 1.0)]]).unwrap();
    assert!(cli::components_from_snapshot(&complex).is_err());
}
