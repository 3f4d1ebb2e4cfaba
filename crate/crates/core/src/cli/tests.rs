use super::*;

fn cli(args: &str) -> Outcome {
    run(std::iter::once("ncperiod").chain(args.split_whitespace()))
}

#[test]
fn hh_of_dual_numbers() {
    let o = cli("hh compute --algebra trunc_poly:2 --degree-range 0..4");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout, "2 1 1 1 1\n");
}

#[test]
fn hhc_of_matrices() {
    let o = cli("hhc compute --algebra matrix:2 --degree-range 0..3");
    assert_eq!(o.stdout, "1 0 0 0\n");
}

#[test]
fn torelli_vacuous_and_not() {
    assert_eq!(cli("period torelli --algebra matrix:2 --degree-range 0..4").stdout, "dim HH²=0, injective (vacuous)\n");
    assert_eq!(cli("period torelli --algebra trunc_poly:2 --degree-range 0..4").stdout, "dim HH²=1, rank 1, injective\n");
}

#[test]
fn calc_verify_prints_exact_lines() {
    let o = cli("calc verify --algebra trunc_poly:2 --arity 2 --bar 3");
    assert_eq!(o.code, 0);
    assert!(!o.stdout.is_empty());
    assert!(o.stdout.lines().filter(|l| !l.starts_with(' ')).all(|l| l.contains(": holds exactly")), "{}", o.stdout);
}

#[test]
fn structured_output_is_deterministic_json() {
    let args = "--format structured hh compute --algebra path:a2 --degree-range 0..3";
    let (a, b) = (cli(args), cli(args));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["command"], "hh compute");
    assert_eq!(v["algebra"], "path:a2");
    assert_eq!(v["result"]["dims"]["0"], 2);
}

#[test]
fn exit_codes() {
    assert_eq!(cli("hh compute --algebra nonsense").code, 2);
    assert_eq!(cli("hh compute --algebra field --degree-range 3..1").code, 2);
    assert_eq!(cli("bogus").code, 2);
    assert_eq!(cli("deform lift --algebra trunc_poly:2 --term zz:x,x->1=1 --to eps^3").code, 2);
    assert_eq!(cli("--help").code, 0);
}

#[test]
fn validation_failure_exits_one() {
    let dir = std::env::temp_dir().join(format!("ncperiod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("bad.alg");
    std::fs::write(&f, "basis 1 x\nmult 1 1 1 1\n").unwrap();
    let o = cli(&format!("hh compute --algebra {}", f.display()));
    assert_eq!(o.code, 1, "{}", o.stderr);
    let g = dir.join("good.alg");
    std::fs::write(&g, "name d\ntrunc_poly 2\n").unwrap();
    assert_eq!(cli(&format!("hh compute --algebra {} --degree-range 0..2", g.display())).stdout, "2 1 1\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn period_window_beyond_stability_exits_one() {
    // HN of trunc3 in degree 6 needs more of the t-window than -1..2 offers.
    let o = cli("cyclic --algebra trunc_poly:3 --t-window -1..2 --degree-range 0..6");
    assert_eq!(o.code, 1, "{}", o.stdout);
    assert!(o.stderr.contains("not stable"));
}

#[test]
fn deform_lift_dual_numbers() {
    let o = cli("deform lift --algebra trunc_poly:2 --hh2 0 --ring dual --to eps^3");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout, "eps: x,x -> 1 = 1\n");
}

#[test]
fn ptd_comparison_of_scaled_classes() {
    let o = cli("period ptd --algebra trunc_poly:2 --hh2 0 --other-term eps:x,x->1=2");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("comparison: NotIsomorphic"), "{}", o.stdout);
    let small = cli("period ptd --algebra trunc_poly:2 --hh2 0 --t-window -2..2 --degree-range 0..3");
    assert_eq!(small.code, 0, "{}", small.stderr);
    let big = cli("period ptd --algebra trunc_poly:2 --hh2 0 --t-window -2..2 --degree-range 0..4");
    assert_eq!(big.code, 1);
    assert!(big.stderr.contains("outside the computed range"));
}

#[test]
fn range_and_term_parsing() {
    assert_eq!(parse_range("-6..6"), Ok((-6, 6)));
    assert_eq!(parse_range("0..=4"), Ok((0, 4)));
    assert!(parse_range("4..0").is_err());
    let t = parse_term("e: x , x -> 1 = -1/2").unwrap();
    assert_eq!(t.inputs, ["x", "x"]);
    assert_eq!(t.value, Rational::new(-1, 2));
}

#[test]
fn calc_verify_path_algebra_full_bounds() {
    let o = cli("calc verify --algebra path:a2 --arity 3 --bar 4");
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout.lines().filter(|l| l.contains(": holds exactly")).count(), 4, "{}", o.stdout);
}

/// The structured result of each command equals the library value.
#[test]
fn commands_are_thin_adapters() {
    let result = |args: &str| -> serde_json::Value {
        let o = cli(&format!("--format structured {args}"));
        assert_eq!(o.code, 0, "{}", o.stderr);
        serde_json::from_str::<serde_json::Value>(&o.stdout).unwrap()["result"].clone()
    };
    fn json(v: &impl serde::Serialize) -> serde_json::Value {
        serde_json::to_value(v).unwrap()
    }
    let m2 = build_matrix_algebra(2);
    let d = build_truncated_polynomial_algebra(2);
    assert_eq!(
        result("hh compute --algebra matrix:2 --degree-range 0..3"),
        json(&hochschild_homology(&m2, 0..=3).unwrap().dims())
    );
    assert_eq!(
        result("hhc compute --algebra trunc_poly:2 --degree-range 0..3"),
        json(&hochschild_cohomology(&d, 0..=3, 4).unwrap().dims())
    );
    assert_eq!(
        result("ss --algebra matrix:2"),
        json(&hodge_spectral_sequence(&m2, TWindow::default()).unwrap())
    );
    assert_eq!(result("period matrix --algebra trunc_poly:2"), json(&first_order_period_matrix(&d, 0..=4).unwrap()));
    assert_eq!(result("period torelli --algebra trunc_poly:2"), json(&torelli_rank(&d, 0..=4).unwrap()));
    assert_eq!(
        result("period vdb --algebra matrix:2"),
        json(&vdb_duality_check(&m2, 0, &unit_class(&m2), 0..=4).unwrap())
    );
    assert_eq!(
        result("calc verify --algebra trunc_poly:2 --arity 2 --bar 3"),
        json(&verify_lie_dagger(&d, VerifyBounds { arity: 2, weight: 3 }))
    );
}

