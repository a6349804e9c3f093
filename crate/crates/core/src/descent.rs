//! Jacquet descent at the level of parameters: `ρ ⊠ S(a) ↦ ρ ⊠ S(a−2)`, the
//! induced surjection `𝒮_φ → 𝒮_{φ₋}` with kernel `𝒯`, and its effect on
//! characters and endoscopic data.

use std::fmt;

use crate::endoscopy::{
    factorize, involutions, stable_table, to_stable, member_symbols, EndoDatum,
    InvolutionSignature, Symbol, VirtualCharacter,
};
use crate::error::{Error, Result};
use crate::factors::{nu_char, PsiConductor};
use crate::group::{Character, GroupElement, Sign};
use crate::params::{EnhancedParameter, Parameter, SimpleBlock};
use crate::scalar::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DescentCase {
    /// `a > 2` and `(ρ, a−2)` is not a Jordan block.
    Case1,
    /// `a > 2` and `(ρ, a−2)` is the block with the given index.
    Case2 { partner: usize },
    /// `a = 2`.
    Case3,
}

impl DescentCase {
    pub fn number(&self) -> u8 {
        match self {
            DescentCase::Case1 => 1,
            DescentCase::Case2 { .. } => 2,
            DescentCase::Case3 => 3,
        }
    }
}

/// The kernel `𝒯`, in basis slots of `𝒮_φ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelT {
    Trivial,
    Diagonal(usize, usize),
    Coordinate(usize),
}

impl KernelT {
    pub fn order(&self) -> u64 {
        match self {
            KernelT::Trivial => 1,
            _ => 2,
        }
    }

    pub fn generator(&self, rank: usize) -> Option<GroupElement> {
        let mut x = GroupElement::trivial(rank);
        match *self {
            KernelT::Trivial => return None,
            KernelT::Diagonal(i, j) => {
                x.0[i] = Sign::Minus;
                x.0[j] = Sign::Minus;
            }
            KernelT::Coordinate(i) => x.0[i] = Sign::Minus,
        }
        Some(x)
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.is_trivial() || self.generator(x.len()).as_ref() == Some(x)
    }

    /// True if `χ` is trivial on `𝒯`.
    pub fn is_trivial_on(&self, chi: &Character) -> bool {
        match self.generator(chi.len()) {
            None => true,
            Some(t) => chi.eval(&t) == Sign::Plus,
        }
    }
}

impl fmt::Display for KernelT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelT::Trivial => write!(f, "trivial"),
            KernelT::Diagonal(i, j) => write!(f, "diagonal({},{})", i + 1, j + 1),
            KernelT::Coordinate(i) => write!(f, "coordinate({})", i + 1),
        }
    }
}

fn lowered(block: &SimpleBlock) -> SimpleBlock {
    SimpleBlock::new(block.rho.clone(), block.a - 2)
}

fn locate(phi: &Parameter, block: &SimpleBlock) -> Result<usize> {
    let i = phi.index_of(block).ok_or_else(|| Error::BlockNotPresent(block.to_string()))?;
    if block.a < 2 {
        return Err(Error::BadA(block.a));
    }
    if phi.multiplicity(i) != 1 {
        return Err(Error::BlockNotMultiplicityFree(block.to_string()));
    }
    Ok(i)
}

/// Replaces one copy of `block` by its lowered form (or removes it when `a = 2`).
fn replace_block(phi: &Parameter, block: &SimpleBlock) -> Result<Parameter> {
    let mut blocks: Vec<(SimpleBlock, u32)> = Vec::new();
    let mut removed = false;
    for (b, m) in phi.blocks() {
        if b == block && !removed {
            removed = true;
            if *m > 1 {
                blocks.push((b.clone(), m - 1));
            }
            if b.a > 2 {
                blocks.push((lowered(b), 1));
            }
        } else {
            blocks.push((b.clone(), *m));
        }
    }
    if !removed {
        return Err(Error::BlockNotPresent(block.to_string()));
    }
    Parameter::normalize(blocks)
}

/// `φ ↦ φ₋` for a multiplicity-free Jordan block with `a ≥ 2`.
pub fn descend_param(phi: &Parameter, block: &SimpleBlock) -> Result<(Parameter, DescentCase)> {
    locate(phi, block)?;
    let case = if block.a == 2 {
        DescentCase::Case3
    } else {
        match phi.index_of(&lowered(block)) {
            Some(partner) => DescentCase::Case2 { partner },
            None => DescentCase::Case1,
        }
    };
    Ok((replace_block(phi, block)?, case))
}

/// `𝒮_φ → 𝒮_{φ₋}` for discrete `φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDescent {
    pub phi_minus: Parameter,
    pub case: DescentCase,
    pub kernel: KernelT,
    /// For each slot of `𝒮_{φ₋}`, the slots of `𝒮_φ` multiplied into it.
    pub sources: Vec<Vec<usize>>,
    pub rank: usize,
}

impl ComponentDescent {
    pub fn map(&self, x: &GroupElement) -> GroupElement {
        GroupElement(self.sources.iter().map(|src| src.iter().map(|s| x.get(*s)).product()).collect())
    }

    /// `χ₋` for `χ` trivial on `𝒯`.
    pub fn descend_char(&self, chi: &Character) -> Option<Character> {
        if !self.kernel.is_trivial_on(chi) {
            return None;
        }
        Some(Character(self.sources.iter().map(|src| chi.get(src[0])).collect()))
    }

    /// Pullback of a character of `𝒮_{φ₋}`, trivial on `𝒯` by construction.
    pub fn pull_back(&self, chi_minus: &Character) -> Character {
        let mut out = vec![Sign::Plus; self.rank];
        for (slot, src) in self.sources.iter().enumerate() {
            for s in src {
                out[*s] = chi_minus.get(slot);
            }
        }
        Character(out)
    }
}

pub fn component_descent(phi: &Parameter, block: &SimpleBlock) -> Result<ComponentDescent> {
    if !phi.is_discrete() {
        return Err(Error::NotDiscrete);
    }
    let i0 = locate(phi, block)?;
    let (phi_minus, case) = descend_param(phi, block)?;
    let g = phi.component_group();
    let g_minus = phi_minus.component_group();
    let slot = |i: usize| g.slot_of(i).expect("discrete parameter: every block is in I+");
    let low = (block.a > 2).then(|| lowered(block));
    let sources: Vec<Vec<usize>> = g_minus
        .basis
        .iter()
        .map(|j| {
            let b = phi_minus.block(*j);
            if Some(b) == low.as_ref() {
                match case {
                    DescentCase::Case2 { partner } => vec![slot(i0), slot(partner)],
                    _ => vec![slot(i0)],
                }
            } else {
                vec![slot(phi.index_of(b).expect("surviving block"))]
            }
        })
        .collect();
    let kernel = match case {
        DescentCase::Case1 => KernelT::Trivial,
        DescentCase::Case2 { partner } => KernelT::Diagonal(slot(i0), slot(partner)),
        DescentCase::Case3 => KernelT::Coordinate(slot(i0)),
    };
    Ok(ComponentDescent { phi_minus, case, kernel, sources, rank: g.rank() })
}

/// A block admissible for descent, with the sign `α` on each endoscopic side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Choice {
    pub block: SimpleBlock,
    pub case: DescentCase,
    pub kernel: KernelT,
    /// `α` when the block is routed to `φ′`.
    pub alpha_plus: Sign,
    /// `α` when the block is routed to `φ″`: `ω_ρ(−1)`.
    pub alpha_minus: Sign,
}

/// Blocks `(ρ, a)` with `ρ` unramified, `a ≥ 2` and `χν_φ` trivial on `𝒯`.
pub fn valid_choices(phi: &Parameter, chi: &Character, psi: PsiConductor) -> Result<Vec<Choice>> {
    if !phi.is_discrete() {
        return Err(Error::NotDiscrete);
    }
    phi.component_group().check_character(chi)?;
    if phi.rank() <= 1 {
        return Ok(Vec::new());
    }
    let chi_nu = chi.mul(&nu_char(phi, psi)?);
    let mut out = Vec::new();
    for (b, _) in phi.blocks() {
        if !b.is_unramified() || b.a < 2 {
            continue;
        }
        let cd = component_descent(phi, b)?;
        if cd.kernel.is_trivial_on(&chi_nu) {
            out.push(Choice {
                block: b.clone(),
                case: cd.case,
                kernel: cd.kernel,
                alpha_plus: Sign::Plus,
                alpha_minus: b.rho.central_sign(),
            });
        }
    }
    Ok(out)
}

/// `(φ₋, (χν_φ)₋ · ν_{φ₋})`.
pub fn jacquet_enhanced(
    phi: &Parameter,
    chi: &Character,
    block: &SimpleBlock,
    psi: PsiConductor,
) -> Result<EnhancedParameter> {
    if !valid_choices(phi, chi, psi)?.iter().any(|c| c.block == *block) {
        return Err(Error::ChoiceInvalid(block.to_string()));
    }
    let cd = component_descent(phi, block)?;
    let chi_nu = chi.mul(&nu_char(phi, psi)?);
    let descended = cd.descend_char(&chi_nu).expect("valid choice is trivial on T");
    let eta = descended.mul(&nu_char(&cd.phi_minus, psi)?);
    EnhancedParameter::new(cd.phi_minus, eta)
}

/// The signature of the image `s₋` of `s` in `S_{φ₋}`.
pub fn descend_signature(
    phi: &Parameter,
    s: &InvolutionSignature,
    block: &SimpleBlock,
) -> Result<InvolutionSignature> {
    s.validate(phi)?;
    let i0 = locate(phi, block)?;
    let (phi_minus, _) = descend_param(phi, block)?;
    let (shape, _, _) = phi_minus.component_data();
    let k0 = s.k_at_block(phi, i0);
    let low = (block.a > 2).then(|| lowered(block));
    let k = shape
        .factors
        .iter()
        .map(|f| {
            let b = phi_minus.block(f.block);
            let inherited = phi.index_of(b).map(|i| s.k_at_block(phi, i)).unwrap_or(0);
            if Some(b) == low.as_ref() {
                k0 + inherited
            } else {
                inherited
            }
        })
        .collect();
    Ok(InvolutionSignature::new(k))
}

/// Descends the side of `φ′ ⊕ φ″` that carries the block.
pub fn endoscopic_descent(
    phi: &Parameter,
    s: &InvolutionSignature,
    block: &SimpleBlock,
) -> Result<(EndoDatum, Parameter, Parameter)> {
    let i0 = locate(phi, block)?;
    let (_, plus, minus) = factorize(phi, s)?;
    let (plus, minus) = if s.k_at_block(phi, i0) == 1 {
        (plus, replace_block(&minus, block)?)
    } else {
        (replace_block(&plus, block)?, minus)
    };
    Ok((EndoDatum { n1: plus.rank(), n2: minus.rank() }, plus, minus))
}

/// `r_{ρ,(a−1)/2}(π_{φ,χ})` computed from the endoscopic character relation:
/// expand the member in stable transfers, descend each transfer (with its `α`),
/// identify the transfers that differ only by the routing of the `GL(a−2)`
/// factor (Case 2, weighted by `ω_τ(−1)`), and expand back into members of the
/// packet of `φ₋`.
pub fn symbolic_jacquet(
    phi: &Parameter,
    chi: &Character,
    block: &SimpleBlock,
    psi: PsiConductor,
) -> Result<VirtualCharacter> {
    let cd = component_descent(phi, block)?;
    let i0 = phi.index_of(block).expect("located above");
    let group = phi.component_group();
    let table = stable_table(phi, psi)?;
    // member(χ) = |𝒮|^{−1} Σ_x χ(x) T(x)
    let mut member = VirtualCharacter::zero();
    for x in group.elements() {
        member = member.add(&table[&x].scale_sign(chi.eval(&x)));
    }
    member = member.scale(Q::new(1, group.order() as i64));

    // the signature behind each transfer symbol of φ
    let mut origin = std::collections::BTreeMap::new();
    for (s, _) in involutions(phi) {
        let (d, p1, p2) = factorize(phi, &s)?;
        origin.insert(Symbol::StableTransfer(d, p1, p2), s);
    }

    let phi_minus = &cd.phi_minus;
    let (shape_minus, _, _) = phi_minus.component_data();
    let case2_factor = match cd.case {
        DescentCase::Case2 { .. } => {
            let low = lowered(block);
            shape_minus.factors.iter().position(|f| *phi_minus.block(f.block) == low)
        }
        _ => None,
    };
    let omega_tau = block.rho.central_sign().pow(block.a as u64 - 2);

    // canonical stable transfers of φ₋, one per element of 𝒮_{φ₋}
    let table_minus = stable_table(phi_minus, psi)?;
    let members_minus = to_stable(&phi_minus.component_group(), &member_symbols(phi_minus))?;
    let mut canonical = std::collections::BTreeMap::new();
    for (x, t) in &table_minus {
        let (sym, c) = t.terms().next().expect("single transfer symbol");
        canonical.insert(sym.clone(), (x.clone(), *c));
    }

    let mut unmatched = None;
    let descended = member.map_symbols(|sym| {
        let s = match origin.get(sym) {
            Some(s) => s,
            None => {
                unmatched = Some(sym.to_string());
                return VirtualCharacter::zero();
            }
        };
        let routed_minus = s.k_at_block(phi, i0) == 1;
        let alpha = if routed_minus { block.rho.central_sign() } else { Sign::Plus };
        let mut s_minus = descend_signature(phi, s, block).expect("valid signature");
        let mut weight = alpha;
        if let Some(f) = case2_factor {
            if s_minus.k[f] == 2 {
                s_minus.k[f] = 0;
                weight = weight * omega_tau;
            }
        }
        let (d, p1, p2) = factorize(phi_minus, &s_minus).expect("descended signature is valid");
        let target = Symbol::StableTransfer(d, p1, p2);
        match canonical.get(&target) {
            // Trans = ε · T(x₋), and T(x₋) = Σ_η η(x₋) π_η
            Some((x, eps)) => members_minus[x].scale(*eps).scale_sign(weight),
            None => {
                unmatched = Some(target.to_string());
                VirtualCharacter::zero()
            }
        }
    });
    match unmatched {
        Some(sym) => Err(Error::NotEvaluable(format!("untracked transfer symbol {sym}"))),
        None => Ok(descended),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Label;

    fn one(a: u32) -> SimpleBlock {
        SimpleBlock::new(Label::trivial(), a)
    }

    fn sgn(a: u32) -> SimpleBlock {
        SimpleBlock::new(Label::sgn(), a)
    }

    fn p(blocks: &[SimpleBlock]) -> Parameter {
        Parameter::normalize(blocks.iter().map(|b| (b.clone(), 1))).unwrap()
    }

    #[test]
    fn cases() {
        let phi = p(&[one(4), one(2)]);
        let (m, c) = descend_param(&phi, &one(4)).unwrap();
        assert_eq!(m.to_string(), "2*[1 x S(2)]");
        assert!(matches!(c, DescentCase::Case2 { .. }));
        let (m, c) = descend_param(&phi, &one(2)).unwrap();
        assert_eq!(m.to_string(), "[1 x S(4)]");
        assert_eq!(c, DescentCase::Case3);
        let phi = p(&[one(4), sgn(2)]);
        let (m, c) = descend_param(&phi, &one(4)).unwrap();
        assert_eq!(m.to_string(), "[1 x S(2)] + [sgn x S(2)]");
        assert_eq!(c, DescentCase::Case1);
        assert!(matches!(descend_param(&phi, &one(6)), Err(Error::BlockNotPresent(_))));
    }

    #[test]
    fn kernels() {
        let phi = p(&[one(4), one(2)]);
        let cd = component_descent(&phi, &one(4)).unwrap();
        assert_eq!(cd.kernel, KernelT::Diagonal(1, 0));
        assert_eq!(cd.phi_minus.component_group().order(), 2);
        let cd = component_descent(&phi, &one(2)).unwrap();
        assert_eq!(cd.kernel, KernelT::Coordinate(0));
        let cd = component_descent(&p(&[one(4), sgn(2)]), &one(4)).unwrap();
        assert_eq!(cd.kernel, KernelT::Trivial);
    }

    #[test]
    fn choices() {
        let psi = PsiConductor::default();
        let phi = p(&[one(4), one(2)]);
        let chi = Character::parse("+,+").unwrap();
        let blocks: Vec<_> = valid_choices(&phi, &chi, psi).unwrap().into_iter().map(|c| c.block).collect();
        assert_eq!(blocks, vec![one(4)]);
        let phi = p(&[one(2), sgn(2)]);
        let chi = Character::parse("-,+").unwrap();
        assert_eq!(valid_choices(&phi, &chi, psi).unwrap().len(), 2);
        let phi = p(&[sgn(2)]);
        assert!(valid_choices(&phi, &Character::parse("-").unwrap(), psi).unwrap().is_empty());
    }

    #[test]
    fn enhanced_descent() {
        let psi = PsiConductor::default();
        let phi = p(&[one(4), one(2)]);
        let e = jacquet_enhanced(&phi, &Character::parse("+,+").unwrap(), &one(4), psi).unwrap();
        assert_eq!(e.param.to_string(), "2*[1 x S(2)]");
        assert_eq!(e.chi.to_string(), "+");
        assert!(matches!(
            jacquet_enhanced(&phi, &Character::parse("+,+").unwrap(), &one(2), psi),
            Err(Error::ChoiceInvalid(_))
        ));
        let phi = p(&[one(2), sgn(2)]);
        let e = jacquet_enhanced(&phi, &Character::parse("-,+").unwrap(), &sgn(2), psi).unwrap();
        assert_eq!(e.param.to_string(), "[1 x S(2)]");
        assert_eq!(e.chi.to_string(), "-");
    }

    #[test]
    fn endoscopic_examples() {
        let phi = p(&[one(2), sgn(2)]);
        let s = InvolutionSignature::new(vec![1, 0]);
        let (d, p1, p2) = endoscopic_descent(&phi, &s, &one(2)).unwrap();
        assert_eq!(d, EndoDatum { n1: 1, n2: 0 });
        assert_eq!(p1.to_string(), "[sgn x S(2)]");
        assert!(p2.is_empty());
        let id = InvolutionSignature::identity(&phi);
        let (d, _, _) = endoscopic_descent(&phi, &id, &sgn(2)).unwrap();
        assert_eq!(d, EndoDatum { n1: 1, n2: 0 });
    }

    #[test]
    fn symbolic_matches_closed_form() {
        let psi = PsiConductor::default();
        let phi = p(&[one(4), one(2)]);
        let chi = Character::parse("+,+").unwrap();
        let r = symbolic_jacquet(&phi, &chi, &one(4), psi).unwrap();
        let e = jacquet_enhanced(&phi, &chi, &one(4), psi).unwrap();
        assert_eq!(r, VirtualCharacter::symbol(Symbol::PacketMember(e.param, e.chi)));
        // an invalid choice descends to zero
        assert!(symbolic_jacquet(&phi, &chi, &one(2), psi).unwrap().is_zero());
    }
}
