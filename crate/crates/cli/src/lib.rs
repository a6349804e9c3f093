//! The `mpso` command line: parameter expressions in, JSON reports out.

pub mod expr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use metaplectic_core::correspondence::{central_sign_and_sides, tw_transfer, Direction, Engine, StageNode, VerifyReport};
use metaplectic_core::descent::{component_descent, jacquet_enhanced, symbolic_jacquet, valid_choices};
use metaplectic_core::endoscopy::{factorize, involutions, t_phi_s, InvolutionSignature};
use metaplectic_core::enumerate::{enumerate, enumerate_enhanced, EnumerateOptions};
use metaplectic_core::factors::{eps_half, eps_minus_part, gamma_half, l_function, l_regular_right_half_plane, nu_char, PsiConductor};
use metaplectic_core::group::Character;
use metaplectic_core::levi::{discrete_support, good_parity_split, tempered_support};
use metaplectic_core::params::{BlockClass, EnhancedParameter, Parameter};
use metaplectic_core::scalar::{format_rational, Q};
use metaplectic_core::weyl::{comparison_scalar, evaluate_and_reduce, t_invariant, Side, SignedPermutation, TMode};

use expr::{parse_block, parse_expr};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "mpso", version, about = "Exact parameter-side computations for Mp(2n) and SO(2n+1)")]
pub struct Cli {
    /// Conductor exponent of ψ [default: 2·e2]
    #[arg(long, global = true)]
    pub d_psi: Option<u32>,
    /// Valuation of 2, so |2| = q^(-e2)
    #[arg(long, global = true, default_value_t = 0)]
    pub e2: u32,
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    #[arg(long, global = true)]
    pub text: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classification, component group, ν and z_φ of a parameter
    Analyze {
        expr: String,
        /// Include the tempered, good-parity and discrete supports
        #[arg(long)]
        support: bool,
    },
    /// χ ↦ χν_φ
    Transfer {
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
        #[arg(long, value_enum, default_value_t = DirectionArg::MpToSo)]
        direction: DirectionArg,
    },
    /// Run the recursive pipeline on one enhanced parameter or on all of a rank
    Verify(VerifyArgs),
    /// ε(1/2), L(s) and γ(1/2)
    Factors {
        expr: String,
        /// Involution signature, one k per centralizer factor
        #[arg(long)]
        s: Option<String>,
    },
    /// Endoscopic factorization for one signature, or for all of them
    Endoscopy {
        expr: String,
        #[arg(long)]
        s: Option<String>,
    },
    /// Jacquet descent along a block "char,a"
    Descend {
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
        #[arg(long)]
        block: String,
    },
    /// Signed permutations from words in t_1..t_n
    Weyl {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value = "-", allow_hyphen_values = true)]
        side: String,
    },
    /// List inertia-trivial parameters of a rank
    Enumerate {
        #[arg(long)]
        rank: u32,
        #[arg(long)]
        discrete: bool,
        #[arg(long)]
        bounded: bool,
        /// Values of χ(ϖ): 1, -1, i, -i or a rotation p/q
        #[arg(long, allow_hyphen_values = true, default_value = "1,-1")]
        phases: String,
        /// Exponents t of |·|^t, closed under negation
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        exponents: String,
        /// Cross with every character
        #[arg(long)]
        enhanced: bool,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    expr: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    chi: Option<String>,
    #[arg(long)]
    rank: Option<u32>,
    #[arg(long)]
    exhaustive: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum DirectionArg {
    MpToSo,
    SoToMp,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl From<metaplectic_core::Error> for CliError {
    fn from(e: metaplectic_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// Exit code, standard output and standard error of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok(v) => {
            let stdout = if cli.text { render_text(&v, 0) } else { to_json(&v) };
            Outcome { code: EXIT_OK, stdout, stderr: String::new() }
        }
        Err(CliError::Usage(m)) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(CliError::Domain(m)) => Outcome { code: EXIT_DOMAIN, stdout: String::new(), stderr: format!("error: {m}\n") },
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn render_text(v: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    let mut out = String::new();
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                        out.push_str(&format!("{pad}{k}:\n{}", render_text(x, indent + 1)));
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar_text(x))),
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar_text(x)));
                } else {
                    out.push_str(&format!("{pad}-\n{}", render_text(x, indent + 1)));
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar_text(v))),
    }
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(m) => m.is_empty(),
        _ => true,
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(scalar_text).collect::<Vec<_>>().join(", "),
        Value::Object(_) => "{}".into(),
        other => other.to_string(),
    }
}

fn psi_of(cli: &Cli) -> PsiConductor {
    match cli.d_psi {
        Some(d) => PsiConductor::new(d, cli.e2),
        None => PsiConductor::standard(cli.e2),
    }
}

fn dispatch(cli: &Cli) -> CliResult<Value> {
    let psi = psi_of(cli);
    match &cli.command {
        Command::Analyze { expr, support } => analyze(expr, *support, psi),
        Command::Transfer { expr, chi, direction } => transfer(expr, chi, *direction, psi),
        Command::Verify(args) => verify(args, psi),
        Command::Factors { expr, s } => factors(expr, s.as_deref(), psi),
        Command::Endoscopy { expr, s } => endoscopy(expr, s.as_deref(), psi),
        Command::Descend { expr, chi, block } => descend(expr, chi, block, psi),
        Command::Weyl { n, word, side } => weyl(*n, word, side, cli.e2),
        Command::Enumerate { rank, discrete, bounded, phases, exponents, enhanced } => {
            let opts = EnumerateOptions {
                discrete_only: *discrete,
                bounded_only: *bounded,
                phases: parse_list(phases, parse_phase)?,
                exponents: parse_list(exponents, parse_rational)?,
            };
            enumerate_cmd(*rank, &opts, *enhanced)
        }
    }
}

pub fn parse_param(text: &str) -> CliResult<Parameter> {
    let e = parse_expr(text).map_err(|e| CliError::Usage(e.render(text)))?;
    Ok(e.to_parameter()?)
}

fn parse_chi(phi: &Parameter, text: &str) -> CliResult<Character> {
    let t = text.trim().trim_start_matches('(').trim_end_matches(')');
    let chi = Character::parse(t).ok_or_else(|| CliError::Usage(format!("bad character '{text}': expected signs like \"+,-\"")))?;
    phi.component_group().check_character(&chi)?;
    Ok(chi)
}

fn parse_signature(phi: &Parameter, text: &str) -> CliResult<InvolutionSignature> {
    let s = InvolutionSignature::parse(text).ok_or_else(|| CliError::Usage(format!("bad signature '{text}': expected \"k1,k2,...\"")))?;
    s.validate(phi)?;
    Ok(s)
}

fn parse_rational(text: &str) -> Option<Q> {
    let t = text.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| Q::new(n, d))
        }
        None => t.parse::<i64>().ok().map(Q::from),
    }
}

/// `1, -1, i, -i`, or a rotation `p/q` with `χ(ϖ) = e^{2πi·p/q}`.
fn parse_phase(text: &str) -> Option<Q> {
    match text.trim() {
        "1" | "+1" => Some(Q::new(0, 1)),
        "-1" => Some(Q::new(1, 2)),
        "i" => Some(Q::new(1, 4)),
        "-i" => Some(Q::new(3, 4)),
        other => parse_rational(other),
    }
}

fn parse_list(text: &str, f: impl Fn(&str) -> Option<Q>) -> CliResult<Vec<Q>> {
    text.split(',')
        .map(|x| f(x).ok_or_else(|| CliError::Usage(format!("bad list entry '{x}'"))))
        .collect()
}

fn class_name(c: BlockClass) -> &'static str {
    match c {
        BlockClass::Plus => "plus",
        BlockClass::Minus => "minus",
        BlockClass::Pair(_) => "pair",
    }
}

pub fn param_summary(phi: &Parameter, psi: PsiConductor) -> Value {
    let (shape, group, z) = phi.component_data();
    let blocks: Vec<Value> = phi
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, (b, m))| {
            let mut o = json!({ "block": b.to_string(), "multiplicity": m, "class": class_name(phi.class(i)) });
            if let BlockClass::Pair(j) = phi.class(i) {
                o["partner"] = json!(phi.block(j).to_string());
            }
            o
        })
        .collect();
    let names = |ix: Vec<usize>| -> Vec<String> { ix.into_iter().map(|i| phi.block(i).to_string()).collect() };
    let pairs: Vec<Value> = phi
        .pairs()
        .into_iter()
        .map(|(i, j)| json!([phi.block(i).to_string(), phi.block(j).to_string()]))
        .collect();
    let flags = phi.flags();
    let mut out = json!({
        "param": phi.to_string(),
        "rank": phi.rank(),
        "blocks": blocks,
        "classification": { "plus": names(phi.plus_indices()), "minus": names(phi.minus_indices()), "pairs": pairs },
        "centralizer": shape.to_string(),
        "componentGroupRank": group.rank(),
        "chiOrder": group.basis.iter().map(|i| phi.block(*i).to_string()).collect::<Vec<_>>(),
        "zPhi": z.to_string(),
        "flags": {
            "bounded": flags.bounded,
            "discrete": flags.discrete,
            "goodParity": flags.good_parity,
            "unramified": phi.is_unramified(),
            "jordan": flags.jordan.iter().map(|(b, m)| json!({ "block": b.to_string(), "multiplicity": m })).collect::<Vec<_>>(),
        },
    });
    match nu_char(phi, psi) {
        Ok(nu) => out["nu"] = json!(nu.to_string()),
        Err(e) => {
            out["nu"] = Value::Null;
            out["nuError"] = json!(e.to_string());
        }
    }
    out
}

fn analyze(text: &str, support: bool, psi: PsiConductor) -> CliResult<Value> {
    let phi = parse_param(text)?;
    let mut out = param_summary(&phi, psi);
    if support {
        let ts = tempered_support(&phi);
        let gl: Vec<Value> = ts
            .gl_parts
            .iter()
            .map(|g| json!({ "blocks": g.blocks.to_string(), "dual": g.dual.to_string(), "exponent": format_rational(&g.exponent) }))
            .collect();
        let mut sup = Map::new();
        sup.insert(
            "tempered".into(),
            json!({ "phi0": ts.phi0.to_string(), "levi": ts.shape.to_string(), "gl": gl, "iso": ts.iso }),
        );
        match good_parity_split(&phi) {
            Ok(s) => {
                sup.insert(
                    "goodParity".into(),
                    json!({ "gp": s.gp.to_string(), "ngp": s.ngp.to_string(), "ngpDual": s.ngp_dual.to_string(), "iso": s.iso }),
                );
                if s.gp.is_good_parity() && phi.is_good_parity() {
                    let ds = discrete_support(&phi)?;
                    sup.insert(
                        "discrete".into(),
                        json!({
                            "phi0": ds.phi0.to_string(),
                            "levi": ds.shape.to_string(),
                            "gl": ds.gl_copies.iter().map(|(b, d)| json!([b.to_string(), d.to_string()])).collect::<Vec<_>>(),
                            "rSlots": ds.tower.r_slots,
                            "phi0Slots": ds.tower.phi0_slots,
                            "weylOrder": ds.tower.weyl_order(),
                        }),
                    );
                }
            }
            Err(e) => {
                sup.insert("goodParity".into(), json!({ "error": e.to_string() }));
            }
        }
        out["support"] = Value::Object(sup);
    }
    Ok(out)
}

fn transfer(text: &str, chi: &str, dir: DirectionArg, psi: PsiConductor) -> CliResult<Value> {
    let phi = parse_param(text)?;
    let chi = parse_chi(&phi, chi)?;
    let e = EnhancedParameter::new(phi.clone(), chi)?;
    let direction = match dir {
        DirectionArg::MpToSo => Direction::MpToSo,
        DirectionArg::SoToMp => Direction::SoToMp,
    };
    let out_e = tw_transfer(&e, psi, direction)?;
    let mp = if direction == Direction::MpToSo { &e } else { &out_e };
    let sides = central_sign_and_sides(mp, psi)?;
    let mut out = param_summary(&phi, psi);
    out["transfer"] = json!({
        "direction": match direction { Direction::MpToSo => "mp-to-so", Direction::SoToMp => "so-to-mp" },
        "chiIn": e.chi.to_string(),
        "chiOut": out_e.chi.to_string(),
        "centralSign": sides.central_sign.to_string(),
        "soSide": sides.so_side.to_string(),
    });
    Ok(out)
}

fn tree_json(n: &StageNode) -> Value {
    json!({
        "stage": n.stage.to_string(),
        "param": n.param,
        "chi": n.chi,
        "chiSO": n.chi_so,
        "detail": n.detail,
        "children": n.children.iter().map(tree_json).collect::<Vec<_>>(),
    })
}

fn report_json(r: &VerifyReport, with_tree: bool) -> Value {
    let mut o = json!({
        "param": r.input.param.to_string(),
        "chi": r.input.chi.to_string(),
        "derived": r.derived.to_string(),
        "closedForm": r.closed_form.to_string(),
        "agreement": r.agreement,
        "pathIndependent": r.path_independent,
        "side": r.side.to_string(),
        "centralSign": r.central_sign.to_string(),
        "stages": r.tree.trace().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    });
    if with_tree {
        o["tree"] = tree_json(&r.tree);
    }
    o
}

fn verify(args: &VerifyArgs, psi: PsiConductor) -> CliResult<Value> {
    let engine = Engine::new(psi);
    match (&args.expr, args.rank, args.exhaustive) {
        (None, Some(n), true) => {
            let all = enumerate_enhanced(n, &EnumerateOptions::default())?;
            let results: Vec<Value> = all
                .par_iter()
                .map(|e| match engine.verify_pipeline(e) {
                    Ok(r) => Ok(report_json(&r, false)),
                    Err(metaplectic_core::Error::OutsideBlock) => Ok(json!({
                        "param": e.param.to_string(),
                        "chi": e.chi.to_string(),
                        "side": "outside",
                    })),
                    Err(err) => Err(CliError::from(err)),
                })
                .collect::<CliResult<_>>()?;
            let classified: Vec<&Value> = results.iter().filter(|r| r["side"] != "outside").collect();
            let all_agree = classified.iter().all(|r| r["agreement"] == true && r["pathIndependent"] == true);
            Ok(json!({
                "rank": n,
                "total": results.len(),
                "iwahori": classified.len(),
                "outside": results.len() - classified.len(),
                "allAgree": all_agree,
                "results": results,
            }))
        }
        (Some(text), None, false) => {
            let phi = parse_param(text)?;
            let chi_text = args.chi.as_deref().ok_or_else(|| CliError::Usage("verify EXPR needs --chi".into()))?;
            let chi = parse_chi(&phi, chi_text)?;
            let e = EnhancedParameter::new(phi.clone(), chi)?;
            let mut out = param_summary(&phi, psi);
            out["membership"] = json!(engine.block_membership(&e)?.side.to_string());
            out["verify"] = report_json(&engine.verify_pipeline(&e)?, true);
            Ok(out)
        }
        _ => Err(CliError::Usage("use either `verify --rank N --exhaustive` or `verify EXPR --chi SIGNS`".into())),
    }
}

fn factors(text: &str, s: Option<&str>, psi: PsiConductor) -> CliResult<Value> {
    let phi = parse_param(text)?;
    let mut out = param_summary(&phi, psi);
    let mut f = Map::new();
    let mut errors = Map::new();
    match eps_half(&phi, psi) {
        Ok(v) => {
            f.insert("epsHalf".into(), json!(v.to_string()));
        }
        Err(e) => {
            errors.insert("epsHalf".into(), json!(e.to_string()));
        }
    }
    match l_function(&phi) {
        Ok(l) => {
            f.insert("L".into(), json!(l.to_string()));
            f.insert("lRegularRightHalfPlane".into(), json!(l_regular_right_half_plane(&l)));
        }
        Err(e) => {
            errors.insert("L".into(), json!(e.to_string()));
        }
    }
    match gamma_half(&phi, psi) {
        Ok(g) => {
            f.insert("gammaHalf".into(), json!(g.to_string()));
        }
        Err(e) => {
            errors.insert("gammaHalf".into(), json!(e.to_string()));
        }
    }
    if let Some(s) = s {
        let sig = parse_signature(&phi, s)?;
        f.insert("signature".into(), json!(sig.to_string()));
        f.insert("image".into(), json!(sig.image(&phi).to_string()));
        match eps_minus_part(&phi, &sig, psi) {
            Ok(v) => {
                f.insert("epsMinusPart".into(), json!(v.to_string()));
            }
            Err(e) => {
                errors.insert("epsMinusPart".into(), json!(e.to_string()));
            }
        }
    }
    if !errors.is_empty() {
        f.insert("errors".into(), Value::Object(errors));
    }
    out["factors"] = Value::Object(f);
    Ok(out)
}

fn endoscopy_entry(phi: &Parameter, sig: &InvolutionSignature, psi: PsiConductor) -> CliResult<Value> {
    let (d, p1, p2) = factorize(phi, sig)?;
    let mut o = json!({
        "signature": sig.to_string(),
        "image": sig.image(phi).to_string(),
        "datum": d.to_string(),
        "plus": p1.to_string(),
        "minus": p2.to_string(),
    });
    match eps_minus_part(phi, sig, psi) {
        Ok(v) => o["epsMinusPart"] = json!(v.to_string()),
        Err(e) => o["epsMinusPartError"] = json!(e.to_string()),
    }
    if phi.is_bounded() {
        match t_phi_s(phi, sig, psi) {
            Ok(t) => o["stableTransfer"] = json!(t.to_string()),
            Err(e) => o["stableTransferError"] = json!(e.to_string()),
        }
    }
    Ok(o)
}

fn endoscopy(text: &str, s: Option<&str>, psi: PsiConductor) -> CliResult<Value> {
    let phi = parse_param(text)?;
    let mut out = param_summary(&phi, psi);
    match s {
        Some(s) => {
            let sig = parse_signature(&phi, s)?;
            out["endoscopy"] = endoscopy_entry(&phi, &sig, psi)?;
        }
        None => {
            let all = involutions(&phi)
                .iter()
                .map(|(sig, _)| endoscopy_entry(&phi, sig, psi))
                .collect::<CliResult<Vec<_>>>()?;
            out["endoscopy"] = json!(all);
        }
    }
    Ok(out)
}

fn descend(text: &str, chi: &str, block: &str, psi: PsiConductor) -> CliResult<Value> {
    let phi = parse_param(text)?;
    let chi = parse_chi(&phi, chi)?;
    let block = parse_block(block).map_err(|e| CliError::Usage(e.render(block)))?;
    let cd = component_descent(&phi, &block)?;
    let choices = valid_choices(&phi, &chi, psi)?;
    let valid = choices.iter().any(|c| c.block == block);
    let mut d = json!({
        "block": block.to_string(),
        "phiMinus": cd.phi_minus.to_string(),
        "case": cd.case.number(),
        "kernel": cd.kernel.to_string(),
        "kernelOrder": cd.kernel.order(),
        "valid": valid,
        "validChoices": choices.iter().map(|c| c.block.to_string()).collect::<Vec<_>>(),
        "jacquet": symbolic_jacquet(&phi, &chi, &block, psi)?.to_string(),
    });
    if valid {
        let e = jacquet_enhanced(&phi, &chi, &block, psi)?;
        d["chiMinus"] = json!(e.chi.to_string());
    }
    let mut out = param_summary(&phi, psi);
    out["chi"] = json!(chi.to_string());
    out["descent"] = d;
    Ok(out)
}

fn weyl(n: usize, word: &str, side: &str, e2: u32) -> CliResult<Value> {
    let word = SignedPermutation::parse_word(word).ok_or_else(|| CliError::Usage(format!("bad word '{word}'")))?;
    let side = match side.trim() {
        "+" | "plus" => Side::Plus,
        "-" | "minus" => Side::Minus,
        other => return Err(CliError::Usage(format!("bad side '{other}': expected + or -"))),
    };
    let (w, reduced, len) = evaluate_and_reduce(n, &word)?;
    let scalar = |s: Side| {
        let c = comparison_scalar(&w, s, e2);
        json!({ "scalar": c.scalar.to_string(), "gammaExponent": c.gamma_exponent })
    };
    let chosen = comparison_scalar(&w, side, e2);
    Ok(json!({
        "n": n,
        "word": word,
        "element": w.to_string(),
        "reducedWord": reduced,
        "length": len,
        "t": chosen.t,
        "tModes": {
            "roots": t_invariant(&w, TMode::Roots),
            "components": t_invariant(&w, TMode::Components),
            "word": t_invariant(&w, TMode::Word),
        },
        "side": if side == Side::Plus { "+" } else { "-" },
        "scalar": chosen.scalar.to_string(),
        "gammaExponent": chosen.gamma_exponent,
        "comparison": { "+": scalar(Side::Plus), "-": scalar(Side::Minus) },
        "e2": e2,
    }))
}

fn enumerate_cmd(rank: u32, opts: &EnumerateOptions, enhanced: bool) -> CliResult<Value> {
    if enhanced {
        let all = enumerate_enhanced(rank, opts)?;
        Ok(json!({
            "rank": rank,
            "count": all.len(),
            "enhanced": all.iter().map(|e| json!({ "param": e.param.to_string(), "chi": e.chi.to_string() })).collect::<Vec<_>>(),
        }))
    } else {
        let all = enumerate(rank, opts)?;
        Ok(json!({
            "rank": rank,
            "count": all.len(),
            "parameters": all.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        }))
    }
}
