#![allow(dead_code)]

use metaplectic_core::params::Parameter;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

const ROTS: [&str; 4] = ["0", "1/4", "1/2", "3/4"];
const EXPS: [&str; 5] = ["0", "1/2", "-1/2", "1", "3/2"];

fn sign(rng: &mut StdRng) -> &'static str {
    if rng.gen_bool(0.5) { "+" } else { "-" }
}

fn neg(e: &str) -> String {
    match e.strip_prefix('-') {
        Some(x) => x.to_string(),
        None if e == "0" => "0".to_string(),
        None => format!("-{e}"),
    }
}

/// One or two random terms: a non-self-dual unramified term comes with its dual.
fn random_terms(rng: &mut StdRng) -> Vec<String> {
    let a = rng.gen_range(1..=5);
    let m = rng.gen_range(1..=3);
    let term = |chr: &str| if m == 1 { format!("[{chr} x S({a})]") } else { format!("{m}*[{chr} x S({a})]") };
    match rng.gen_range(0..10) {
        0..=2 => vec![term("1")],
        3..=4 => vec![term("sgn")],
        5..=7 => {
            let r = rng.gen_range(0..4);
            let e = *EXPS.choose(rng).unwrap();
            let dual = format!("unr({},{})", ROTS[(4 - r) % 4], neg(e));
            vec![term(&format!("unr({},{e})", ROTS[r])), term(&dual)]
        }
        8 => vec![term(&format!("rho(tau{};dim=2,sd=symp,eps={},wm1={})", rng.gen_range(0..3), sign(rng), sign(rng)))],
        _ => vec![term(&format!(
            "rho(sig{};dim=1,sd=orth,eps={},wm1={},frob={})",
            rng.gen_range(0..3),
            sign(rng),
            sign(rng),
            sign(rng)
        ))],
    }
}

/// Random valid parameters as raw, non-canonical texts and their parameters.
/// Candidates failing `normalize` are retried with every multiplicity doubled.
pub fn random_parameters(rng: &mut StdRng, count: usize) -> Vec<(String, Parameter)> {
    let mut out = Vec::new();
    while out.len() < count {
        let k = rng.gen_range(1..=3);
        let mut terms: Vec<String> = (0..k).flat_map(|_| random_terms(rng)).collect();
        terms.shuffle(rng);
        for text in [terms.join(" + "), terms.iter().map(|t| format!("{t} + {t}")).collect::<Vec<_>>().join(" + ")] {
            let expr = metaplectic_cli::expr::parse_expr(&text).unwrap_or_else(|e| panic!("{text}: {e}"));
            if let Ok(p) = expr.to_parameter() {
                out.push((text, p));
                break;
            }
        }
    }
    out
}

/// The canonical text of `p` with its terms shuffled.
pub fn shuffled_text(rng: &mut StdRng, p: &Parameter) -> String {
    let mut terms: Vec<String> = p
        .blocks()
        .iter()
        .map(|(b, m)| if *m == 1 { b.to_string() } else { format!("{m}*{b}") })
        .collect();
    terms.shuffle(rng);
    if terms.is_empty() { "0".into() } else { terms.join(" + ") }
}
