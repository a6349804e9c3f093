//! The Takeda–Wood transfer on enhanced parameters, the rank-one base table,
//! Iwahori-block membership, and the recursive pipeline verifier.

use std::fmt;

use dashmap::DashMap;

use crate::descent::{component_descent, symbolic_jacquet, valid_choices};
use crate::endoscopy::Symbol;
use crate::error::{Error, Result};
use crate::factors::{gamma_half_block, nu_char, PsiConductor};
use crate::group::{Character, Sign};
use crate::levi::{discrete_support, good_parity_split, restrict_char, tempered_support};
use crate::params::{EnhancedParameter, Label, Parameter, SimpleBlock};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    MpToSo,
    SoToMp,
}

/// `χ ↦ χν_φ`; the same formula in both directions since `ν_φ² = 1`.
pub fn tw_transfer(e: &EnhancedParameter, psi: PsiConductor, _dir: Direction) -> Result<EnhancedParameter> {
    let nu = nu_char(&e.param, psi)?;
    EnhancedParameter::new(e.param.clone(), e.chi.mul(&nu))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sides {
    /// `(χν_φ)(z_φ)`.
    pub central_sign: Sign,
    /// `χ°(z_φ)` for the transferred `χ°`.
    pub so_side: Sign,
}

pub fn central_sign_and_sides(e: &EnhancedParameter, psi: PsiConductor) -> Result<Sides> {
    let z = e.param.z_phi();
    let nu = nu_char(&e.param, psi)?;
    let central_sign = e.chi.eval(&z) * nu.eval(&z);
    let so = tw_transfer(e, psi, Direction::MpToSo)?;
    Ok(Sides { central_sign, so_side: so.chi.eval(&z) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockSide {
    Plus,
    Minus,
    Outside,
}

impl fmt::Display for BlockSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BlockSide::Plus => "plus",
            BlockSide::Minus => "minus",
            BlockSide::Outside => "outside",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseTableEntry {
    pub enhanced: EnhancedParameter,
    pub side: BlockSide,
    pub name: &'static str,
}

impl BaseTableEntry {
    /// The orthogonal-side character: trivial on `G⁺`, non-trivial on `G⁻`.
    pub fn chi_so(&self) -> Option<Character> {
        let len = self.enhanced.chi.len();
        match self.side {
            BlockSide::Plus => Some(Character::trivial(len)),
            BlockSide::Minus => Some(Character(vec![Sign::Minus; len])),
            BlockSide::Outside => None,
        }
    }
}

fn xi_s2(xi: Label) -> Parameter {
    Parameter::normalize([(SimpleBlock::new(xi, 2), 1)]).expect("ξ ⊠ S(2) is a valid parameter")
}

fn entry(param: Parameter, chi: Sign, side: BlockSide, name: &'static str) -> BaseTableEntry {
    BaseTableEntry { enhanced: EnhancedParameter { param, chi: Character(vec![chi]) }, side, name }
}

/// Enhanced parameters of rank at most one with unramified `ξ ⊠ S(2)`.
pub fn base_table() -> Vec<BaseTableEntry> {
    vec![
        BaseTableEntry {
            enhanced: EnhancedParameter { param: Parameter::empty(), chi: Character(Vec::new()) },
            side: BlockSide::Plus,
            name: "empty",
        },
        entry(xi_s2(Label::trivial()), Sign::Minus, BlockSide::Plus, "st(1)"),
        entry(xi_s2(Label::sgn()), Sign::Plus, BlockSide::Plus, "st(sgn)"),
        entry(xi_s2(Label::trivial()), Sign::Plus, BlockSide::Minus, "weil-odd"),
        entry(xi_s2(Label::sgn()), Sign::Minus, BlockSide::Outside, "other-supercuspidal"),
    ]
}

fn base_lookup(e: &EnhancedParameter) -> Option<BaseTableEntry> {
    base_table().into_iter().find(|x| x.enhanced == *e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MembershipOutcome {
    pub side: BlockSide,
    /// All descent choices reached the same side.
    pub path_independent: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    Langlands,
    GoodParity,
    Lir,
    Descent,
    Base,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Langlands => "Langlands",
            Stage::GoodParity => "GoodParity",
            Stage::Lir => "LIR",
            Stage::Descent => "Descent",
            Stage::Base => "Base",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageNode {
    pub stage: Stage,
    pub param: String,
    pub chi: String,
    pub chi_so: String,
    /// The descent block, or the base-table name.
    pub detail: String,
    pub children: Vec<StageNode>,
}

impl StageNode {
    /// Stages along the first branch.
    pub fn trace(&self) -> Vec<Stage> {
        let mut out = vec![self.stage];
        if let Some(c) = self.children.first() {
            out.extend(c.trace());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Derivation {
    node: StageNode,
    chi_so: Character,
    side: BlockSide,
    path_independent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub input: EnhancedParameter,
    pub tree: StageNode,
    pub derived: Character,
    pub closed_form: Character,
    pub agreement: bool,
    pub path_independent: bool,
    pub side: BlockSide,
    pub central_sign: Sign,
}

/// Shared state for membership and verification: `ψ` and two concurrent memo tables.
#[derive(Debug, Default)]
pub struct Engine {
    pub psi: PsiConductor,
    membership: DashMap<String, Result<MembershipOutcome>>,
    derivations: DashMap<String, Result<Derivation>>,
}

fn transport(chi_sub: &Character, slots: &[usize], len: usize) -> Character {
    let mut out = vec![Sign::Plus; len];
    for (k, s) in slots.iter().enumerate() {
        out[*s] = chi_sub.get(k);
    }
    Character(out)
}

impl Engine {
    pub fn new(psi: PsiConductor) -> Self {
        Self { psi, ..Self::default() }
    }

    pub fn block_membership(&self, e: &EnhancedParameter) -> Result<MembershipOutcome> {
        let key = e.key();
        if let Some(r) = self.membership.get(&key) {
            return r.clone();
        }
        let r = self.membership_uncached(e);
        self.membership.insert(key, r.clone());
        r
    }

    fn membership_uncached(&self, e: &EnhancedParameter) -> Result<MembershipOutcome> {
        let phi = &e.param;
        if !phi.is_unramified() {
            return Err(Error::NotEvaluable(format!("membership of {phi}")));
        }
        if !phi.is_bounded() {
            let ts = tempered_support(phi);
            let chi0 = restrict_char(&e.chi, &ts.iso);
            return self.block_membership(&EnhancedParameter::new(ts.phi0, chi0)?);
        }
        if !phi.is_good_parity() {
            let split = good_parity_split(phi)?;
            let chi0 = restrict_char(&e.chi, &split.iso);
            return self.block_membership(&EnhancedParameter::new(split.gp, chi0)?);
        }
        if !phi.is_discrete() {
            let ds = discrete_support(phi)?;
            let chi0 = restrict_char(&e.chi, &ds.tower.phi0_slots);
            return self.block_membership(&EnhancedParameter::new(ds.phi0, chi0)?);
        }
        if phi.rank() <= 1 {
            let side = base_lookup(e).map(|b| b.side).unwrap_or(BlockSide::Outside);
            return Ok(MembershipOutcome { side, path_independent: true });
        }
        let choices = valid_choices(phi, &e.chi, self.psi)?;
        let mut sides = Vec::new();
        let mut independent = true;
        for c in &choices {
            let down = crate::descent::jacquet_enhanced(phi, &e.chi, &c.block, self.psi)?;
            let r = self.block_membership(&down)?;
            independent &= r.path_independent;
            sides.push(r.side);
        }
        let Some(first) = sides.first().copied() else {
            return Ok(MembershipOutcome { side: BlockSide::Outside, path_independent: true });
        };
        independent &= sides.iter().all(|s| *s == first);
        Ok(MembershipOutcome { side: first, path_independent: independent })
    }

    pub fn verify_pipeline(&self, e: &EnhancedParameter) -> Result<VerifyReport> {
        e.param.component_group().check_character(&e.chi)?;
        let d = self.derive(e)?;
        let closed_form = tw_transfer(e, self.psi, Direction::MpToSo)?.chi;
        let sides = central_sign_and_sides(e, self.psi)?;
        Ok(VerifyReport {
            input: e.clone(),
            agreement: d.chi_so == closed_form,
            derived: d.chi_so,
            closed_form,
            path_independent: d.path_independent,
            side: d.side,
            central_sign: sides.central_sign,
            tree: d.node,
        })
    }

    fn derive(&self, e: &EnhancedParameter) -> Result<Derivation> {
        let key = e.key();
        if let Some(r) = self.derivations.get(&key) {
            return r.clone();
        }
        let r = self.derive_uncached(e);
        self.derivations.insert(key, r.clone());
        r
    }

    fn node(e: &EnhancedParameter, stage: Stage, chi_so: &Character, detail: String, children: Vec<StageNode>) -> StageNode {
        StageNode {
            stage,
            param: e.param.to_string(),
            chi: e.chi.to_string(),
            chi_so: chi_so.to_string(),
            detail,
            children,
        }
    }

    fn derive_uncached(&self, e: &EnhancedParameter) -> Result<Derivation> {
        let phi = &e.param;
        let len = e.chi.len();
        if !phi.is_unramified() {
            return Err(Error::NotEvaluable(format!("pipeline for {phi}")));
        }
        // (a) Langlands quotient: pass to the tempered support.
        if !phi.is_bounded() {
            let ts = tempered_support(phi);
            let sub = self.derive(&EnhancedParameter::new(ts.phi0, restrict_char(&e.chi, &ts.iso))?)?;
            let chi_so = transport(&sub.chi_so, &ts.iso, len);
            let node = Self::node(e, Stage::Langlands, &chi_so, ts.shape.to_string(), vec![sub.node]);
            return Ok(Derivation { node, chi_so, ..sub });
        }
        // (b) good parity.
        if !phi.is_good_parity() {
            let split = good_parity_split(phi)?;
            let sub = self.derive(&EnhancedParameter::new(split.gp, restrict_char(&e.chi, &split.iso))?)?;
            let chi_so = transport(&sub.chi_so, &split.iso, len);
            let node = Self::node(e, Stage::GoodParity, &chi_so, split.ngp.to_string(), vec![sub.node]);
            return Ok(Derivation { node, chi_so, ..sub });
        }
        // (c) LIR: discrete support plus the R-group part from γ(1/2, φ_i)^{−1}.
        if !phi.is_discrete() {
            let ds = discrete_support(phi)?;
            let slots = &ds.tower.phi0_slots;
            let sub = self.derive(&EnhancedParameter::new(ds.phi0.clone(), restrict_char(&e.chi, slots))?)?;
            let mut chi_so = transport(&sub.chi_so, slots, len);
            for f in &ds.tower.factors {
                let Some(slot) = f.slot.filter(|s| ds.tower.r_slots.contains(s)) else { continue };
                let gamma = gamma_half_block(phi.block(f.block), self.psi)?;
                let sign = gamma
                    .inv()
                    .and_then(|g| g.as_sign())
                    .ok_or_else(|| Error::GammaNotScalar(gamma.to_string()))?;
                chi_so.0[slot] = e.chi.get(slot) * sign;
            }
            let node = Self::node(e, Stage::Lir, &chi_so, ds.shape.to_string(), vec![sub.node]);
            return Ok(Derivation { node, chi_so, ..sub });
        }
        // (e) base case.
        if phi.rank() <= 1 {
            let b = base_lookup(e).ok_or(Error::OutsideBlock)?;
            let chi_so = b.chi_so().ok_or(Error::OutsideBlock)?;
            let node = Self::node(e, Stage::Base, &chi_so, b.name.to_string(), Vec::new());
            return Ok(Derivation { node, chi_so, side: b.side, path_independent: true });
        }
        // (d) Jacquet descent over every valid choice.
        let choices = valid_choices(phi, &e.chi, self.psi)?;
        let mut results = Vec::new();
        let mut failures = 0usize;
        for c in &choices {
            let r = symbolic_jacquet(phi, &e.chi, &c.block, self.psi)?;
            let mut terms = r.terms();
            let down = match (terms.next(), terms.next()) {
                (Some((Symbol::PacketMember(p, eta), coeff)), None) if *coeff == 1.into() => {
                    EnhancedParameter::new(p.clone(), eta.clone())?
                }
                _ => return Err(Error::NotEvaluable(format!("Jacquet module of {e} along {} is {r}", c.block))),
            };
            match self.derive(&down) {
                Ok(sub) => {
                    let cd = component_descent(phi, &c.block)?;
                    let chi_so = cd.pull_back(&sub.chi_so);
                    results.push((c.block.clone(), chi_so, sub));
                }
                Err(Error::OutsideBlock) => failures += 1,
                Err(err) => return Err(err),
            }
        }
        let Some((_, chi_so, first)) = results.first().cloned() else {
            return Err(Error::OutsideBlock);
        };
        let independent = failures == 0
            && results.iter().all(|(_, c, d)| *c == chi_so && d.path_independent && d.side == first.side);
        let detail = results.iter().map(|(b, _, _)| b.to_string()).collect::<Vec<_>>().join(" ");
        let children = results.into_iter().map(|(_, _, d)| d.node).collect();
        let node = Self::node(e, Stage::Descent, &chi_so, detail, children);
        Ok(Derivation { node, chi_so, side: first.side, path_independent: independent })
    }
}

/// One-shot membership query.
pub fn block_membership(e: &EnhancedParameter, psi: PsiConductor) -> Result<BlockSide> {
    Engine::new(psi).block_membership(e).map(|m| m.side)
}

/// One-shot pipeline run.
pub fn verify_pipeline(e: &EnhancedParameter, psi: PsiConductor) -> Result<VerifyReport> {
    Engine::new(psi).verify_pipeline(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enh(blocks: &[(Label, u32)], chi: &str) -> EnhancedParameter {
        let p = Parameter::normalize(blocks.iter().map(|(l, a)| (SimpleBlock::new(l.clone(), *a), 1))).unwrap();
        EnhancedParameter::new(p, Character::parse(chi).unwrap()).unwrap()
    }

    #[test]
    fn transfer_examples() {
        let psi = PsiConductor::default();
        let e = enh(&[(Label::trivial(), 2), (Label::sgn(), 2)], "+,+");
        let t = tw_transfer(&e, psi, Direction::MpToSo).unwrap();
        assert_eq!(t.chi.to_string(), "-,+");
        assert_eq!(tw_transfer(&t, psi, Direction::SoToMp).unwrap(), e);
    }

    #[test]
    fn base_table_central_signs() {
        let psi = PsiConductor::default();
        for b in base_table() {
            let s = central_sign_and_sides(&b.enhanced, psi).unwrap();
            assert_eq!(s.central_sign, s.so_side);
            match b.side {
                BlockSide::Plus => assert_eq!(s.central_sign, Sign::Plus, "{}", b.name),
                BlockSide::Minus => assert_eq!(s.central_sign, Sign::Minus, "{}", b.name),
                BlockSide::Outside => {}
            }
        }
    }

    #[test]
    fn membership_examples() {
        let psi = PsiConductor::default();
        let e = enh(&[(Label::sgn(), 2)], "-");
        assert_eq!(block_membership(&e, psi).unwrap(), BlockSide::Outside);
        let empty = EnhancedParameter::new(Parameter::empty(), Character(Vec::new())).unwrap();
        assert_eq!(block_membership(&empty, psi).unwrap(), BlockSide::Plus);
    }

    #[test]
    fn pipeline_on_a_case_two_descent() {
        let e = enh(&[(Label::trivial(), 4), (Label::trivial(), 2)], "+,+");
        let r = verify_pipeline(&e, PsiConductor::default()).unwrap();
        assert!(r.agreement && r.path_independent);
        assert_eq!(r.tree.trace(), vec![Stage::Descent, Stage::Lir, Stage::Base]);
        let empty = EnhancedParameter::new(Parameter::empty(), Character(Vec::new())).unwrap();
        assert!(verify_pipeline(&empty, PsiConductor::default()).unwrap().agreement);
    }
}
