mod common;

use std::process::Command;

use metaplectic_cli::expr::parse_expr;
use metaplectic_cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use metaplectic_core::enumerate::{enumerate, EnumerateOptions};
use metaplectic_core::scalar::q;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn mpso(args: &[&str]) -> metaplectic_cli::Outcome {
    run(std::iter::once("mpso").chain(args.iter().copied()))
}

#[test]
fn parse_print_round_trip_on_random_expressions() {
    let mut rng = StdRng::seed_from_u64(7);
    let all = common::random_parameters(&mut rng, 1000);
    let texts: Vec<String> = all.iter().map(|(_, p)| p.to_string()).collect();
    assert!(texts.iter().filter(|t| t.contains("rho(")).count() > 100);
    assert!(texts.iter().filter(|t| t.contains("unr(")).count() > 100);
    for (raw, p) in all {
        let canonical = p.to_string();
        let reparsed = parse_expr(&canonical).unwrap();
        assert_eq!(reparsed.to_string(), canonical);
        assert_eq!(reparsed.to_parameter().unwrap(), p, "{raw}");
        let once = parse_expr(&raw).unwrap().to_string();
        assert_eq!(parse_expr(&once).unwrap().to_string(), once);
    }
}

#[test]
fn round_trip_on_enumerated_parameters() {
    let opts = EnumerateOptions {
        phases: vec![q(0, 1), q(1, 4), q(1, 2), q(3, 4)],
        exponents: vec![q(0, 1), q(1, 2)],
        ..EnumerateOptions::default()
    };
    for n in 0..=3 {
        for p in enumerate(n, &opts).unwrap() {
            assert_eq!(parse_expr(&p.to_string()).unwrap().to_parameter().unwrap(), p);
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(mpso(&["analyze", "[1 x S(2)]"]).code, EXIT_OK);
    assert_eq!(mpso(&["analyze", "[1 x S(0)]"]).code, EXIT_DOMAIN);
    assert_eq!(mpso(&["analyze", "[1 x S(3)]"]).code, EXIT_DOMAIN);
    let bad = mpso(&["analyze", "[1 x S(2)"]);
    assert_eq!(bad.code, EXIT_USAGE);
    assert!(bad.stderr.contains('^'));
    assert_eq!(mpso(&["transfer", "[1 x S(2)]", "--chi", "+,+"]).code, EXIT_DOMAIN);
    assert_eq!(mpso(&["transfer", "[1 x S(2)]", "--chi", "x"]).code, EXIT_USAGE);
    assert_eq!(mpso(&["nonsense"]).code, EXIT_USAGE);
    assert_eq!(mpso(&["verify"]).code, EXIT_USAGE);
    assert_eq!(mpso(&["enumerate", "--rank", "9"]).code, EXIT_DOMAIN);
    assert_eq!(mpso(&["verify", "[sgn x S(2)]", "--chi", "-"]).code, EXIT_DOMAIN);
}

#[test]
fn documented_examples() {
    let out = mpso(&["transfer", "[1 x S(2)] + [sgn x S(2)]", "--chi", "+,+"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["transfer"]["chiOut"], "-,+");
    let out = mpso(&["weyl", "--n", "2", "--word", "1,2,1,2"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!((v["t"].as_u64(), v["length"].as_u64()), (Some(2), Some(4)));
    assert_eq!(v["comparison"]["-"]["scalar"], "q^(-2)");
    let out = mpso(&["verify", "--rank", "2", "--exhaustive"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["allAgree"], true);
    assert_eq!(v["iwahori"], 18);
    let out = mpso(&["factors", "[1 x S(2)]"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["factors"]["epsHalf"], "-1");
    assert_eq!(v["factors"]["L"], "(1 - q^(-1/2) X)^-1");
    let out = mpso(&["descend", "[1 x S(4)] + [1 x S(2)]", "--chi", "+,+", "--block", "1,4"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["descent"]["case"], 2);
    assert_eq!(v["descent"]["phiMinus"], "2*[1 x S(2)]");
    let out = mpso(&["enumerate", "--rank", "3", "--discrete"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["count"], 6);
    let out = mpso(&["endoscopy", "[1 x S(2)] + [sgn x S(2)]", "--s", "1,0"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["endoscopy"]["datum"], "(1,1)");
}

#[test]
fn text_output() {
    let out = mpso(&["--text", "weyl", "--n", "2", "--word", "1,2"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("length: 2"));
}

#[test]
fn binary_output_is_byte_identical() {
    let bin = env!("CARGO_BIN_EXE_mpso");
    let args = ["verify", "[1 x S(4)] + [1 x S(2)]", "--chi", "+,+"];
    let a = Command::new(bin).args(args).output().unwrap();
    let b = Command::new(bin).args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let bad = Command::new(bin).args(["analyze", "[1 x S(0)]"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_DOMAIN));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn chi_order_ignores_term_order(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (_, p) = common::random_parameters(&mut rng, 1).remove(0);
        let shuffled = common::shuffled_text(&mut rng, &p);
        let k = p.component_group().rank();
        let chi: Vec<&str> = (0..k).map(|i| if (seed >> i) & 1 == 1 { "-" } else { "+" }).collect();
        let chi = chi.join(",");
        let a = mpso(&["transfer", &p.to_string(), "--chi", &chi]);
        let b = mpso(&["transfer", &shuffled, "--chi", &chi]);
        prop_assert_eq!(a.code, b.code);
        prop_assert_eq!(&a.stdout, &b.stdout);
    }
}
