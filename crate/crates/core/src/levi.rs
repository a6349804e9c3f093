//! Reductions of a parameter to a Levi subgroup: tempered support, good-parity
//! split and discrete support, with the centralizer tower of the last.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::{Character, GroupElement, Sign};
use crate::params::{BlockClass, FactorKind, Label, Parameter, SimpleBlock};
use crate::scalar::{format_rational, Q};
use crate::weyl::SignedPermutation;

/// `M = Sp(2·sp_rank) × Π GL(n_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeviShape {
    pub sp_rank: u32,
    pub gl_sizes: Vec<u32>,
}

impl LeviShape {
    pub fn rank(&self) -> u32 {
        self.sp_rank + self.gl_sizes.iter().sum::<u32>()
    }
}

impl fmt::Display for LeviShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gl: Vec<String> = self.gl_sizes.iter().map(|s| s.to_string()).collect();
        write!(f, "({};[{}])", self.sp_rank, gl.join(","))
    }
}

/// A multiset of blocks that need not be symplectic: a parameter of a `GL` factor.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BlockMultiset(pub Vec<(SimpleBlock, u32)>);

impl BlockMultiset {
    fn from_map(map: BTreeMap<SimpleBlock, u32>) -> Self {
        Self(map.into_iter().collect())
    }

    pub fn dim(&self) -> u32 {
        self.0.iter().map(|(b, m)| b.dim() * m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for BlockMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(b, m)| if *m > 1 { format!("{m}*{b}") } else { b.to_string() })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlPart {
    pub blocks: BlockMultiset,
    pub dual: BlockMultiset,
    pub exponent: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemperedSupport {
    pub phi0: Parameter,
    pub gl_parts: Vec<GlPart>,
    pub shape: LeviShape,
    /// For each basis slot of `𝒮_{φ₀}`, the matching slot of `𝒮_φ`.
    pub iso: Vec<usize>,
}

fn label_exponent(b: &SimpleBlock) -> Q {
    match &b.rho {
        Label::Unramified(c) => c.texp(),
        Label::Abstract(_) => Q::zero(),
    }
}

fn slots_of(phi: &Parameter, sub: &Parameter) -> Vec<usize> {
    let g = phi.component_group();
    sub.plus_indices()
        .into_iter()
        .map(|i| {
            let j = phi.index_of(sub.block(i)).expect("sub-parameter block present");
            g.slot_of(j).expect("I+ block of the sub-parameter is I+ upstairs")
        })
        .collect()
}

pub fn tempered_support(phi: &Parameter) -> TemperedSupport {
    let mut bounded = Vec::new();
    let mut by_exp: BTreeMap<Q, (BTreeMap<SimpleBlock, u32>, BTreeMap<SimpleBlock, u32>)> = BTreeMap::new();
    for (i, (b, m)) in phi.blocks().iter().enumerate() {
        let t = label_exponent(b);
        if t.is_zero() {
            bounded.push((b.clone(), *m));
        } else if t > Q::zero() {
            // the partner with exponent −t is accounted for as the dual
            let entry = by_exp.entry(t).or_default();
            entry.0.insert(b.clone(), *m);
            if let BlockClass::Pair(j) = phi.class(i) {
                entry.1.insert(phi.block(j).clone(), *m);
            }
        }
    }
    let phi0 = Parameter::normalize(bounded).expect("bounded part of a valid parameter is valid");
    let gl_parts: Vec<GlPart> = by_exp
        .into_iter()
        .rev()
        .map(|(t, (blocks, dual))| GlPart {
            blocks: BlockMultiset::from_map(blocks),
            dual: BlockMultiset::from_map(dual),
            exponent: t,
        })
        .collect();
    let shape = LeviShape {
        sp_rank: phi0.rank(),
        gl_sizes: gl_parts.iter().map(|g| g.blocks.dim()).collect(),
    };
    let iso = slots_of(phi, &phi0);
    TemperedSupport { phi0, gl_parts, shape, iso }
}

impl TemperedSupport {
    pub fn reassemble(&self) -> Result<Parameter> {
        let mut all: Vec<(SimpleBlock, u32)> = self.phi0.blocks().to_vec();
        for g in &self.gl_parts {
            all.extend(g.blocks.0.iter().cloned());
            all.extend(g.dual.0.iter().cloned());
        }
        Parameter::normalize(all)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodParitySplit {
    pub gp: Parameter,
    pub ngp: BlockMultiset,
    pub ngp_dual: BlockMultiset,
    /// For each basis slot of `𝒮_{φ_gp}`, the matching slot of `𝒮_φ`.
    pub iso: Vec<usize>,
}

impl GoodParitySplit {
    pub fn reassemble(&self) -> Result<Parameter> {
        let all = self
            .gp
            .blocks()
            .iter()
            .chain(self.ngp.0.iter())
            .chain(self.ngp_dual.0.iter())
            .cloned();
        Parameter::normalize(all.collect::<Vec<_>>())
    }
}

/// `φ = φ_gp ⊕ (φ_ngp ⊕ φ_ngp^∨)`; from each dual pair the canonically smaller block is kept.
pub fn good_parity_split(phi: &Parameter) -> Result<GoodParitySplit> {
    if !phi.is_bounded() {
        return Err(Error::NotBounded);
    }
    let mut gp = Vec::new();
    let mut ngp = BTreeMap::new();
    let mut ngp_dual = BTreeMap::new();
    for (i, (b, m)) in phi.blocks().iter().enumerate() {
        match phi.class(i) {
            BlockClass::Plus => gp.push((b.clone(), *m)),
            BlockClass::Minus => {
                ngp.insert(b.clone(), m / 2);
                ngp_dual.insert(b.clone(), m / 2);
            }
            BlockClass::Pair(j) if i < j => {
                ngp.insert(b.clone(), *m);
                ngp_dual.insert(phi.block(j).clone(), *m);
            }
            BlockClass::Pair(_) => {}
        }
    }
    let gp = Parameter::normalize(gp)?;
    let iso = slots_of(phi, &gp);
    Ok(GoodParitySplit {
        gp,
        ngp: BlockMultiset::from_map(ngp),
        ngp_dual: BlockMultiset::from_map(ngp_dual),
        iso,
    })
}

/// One factor of `W_φ(M̃, G̃)`, attached to a centralizer factor of `φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerFactor {
    pub kind: FactorKind,
    pub m: u32,
    pub block: usize,
    /// Rank of the Weyl group: `⌊m/2⌋`, `m/2` or `m`.
    pub weyl_rank: u32,
    /// Basis slot in `𝒮_φ` for orthogonal factors.
    pub slot: Option<usize>,
}

impl TowerFactor {
    /// Order of this factor of `W_φ`.
    pub fn weyl_order(&self) -> u64 {
        let r = self.weyl_rank as u64;
        let fact: u64 = (1..=r).product();
        match self.kind {
            FactorKind::GeneralLinear => fact,
            _ => (1u64 << r) * fact,
        }
    }

    /// `|N(T)/T°|` of the centralizer factor, computed from the group itself.
    pub fn normalizer_order(&self) -> u64 {
        let m = self.m as u64;
        match self.kind {
            FactorKind::Orthogonal => (1u64 << m.div_ceil(2)) * (1..=m / 2).product::<u64>(),
            FactorKind::Symplectic => (1u64 << (m / 2)) * (1..=m / 2).product::<u64>(),
            FactorKind::GeneralLinear => (1..=m).product(),
        }
    }

    fn elements(&self) -> Vec<SignedPermutation> {
        let all = SignedPermutation::all(self.weyl_rank as usize);
        match self.kind {
            FactorKind::GeneralLinear => {
                all.into_iter().filter(|w| w.images().iter().all(|(_, s)| *s == Sign::Plus)).collect()
            }
            _ => all,
        }
    }

    fn generators(&self) -> Vec<SignedPermutation> {
        let r = self.weyl_rank as usize;
        let first = if self.kind == FactorKind::GeneralLinear { 2 } else { 1 };
        (first..=r).map(|i| SignedPermutation::generator(r, i).expect("in range")).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    pub factors: Vec<TowerFactor>,
    pub group_rank: usize,
    /// Slots of `I⁺_even`, the basis of `R_φ`.
    pub r_slots: Vec<usize>,
    /// Slots of `I⁺_odd`, the basis of `𝒮_{φ₀}`.
    pub phi0_slots: Vec<usize>,
}

/// An element of `W_φ`, one Weyl element per factor.
pub type TowerElement = Vec<SignedPermutation>;

impl Tower {
    pub fn weyl_order(&self) -> u64 {
        self.factors.iter().map(TowerFactor::weyl_order).product()
    }

    /// `|𝔑_φ|` as a product over the centralizer factors.
    pub fn normalizer_order(&self) -> u64 {
        self.factors.iter().map(TowerFactor::normalizer_order).product()
    }

    pub fn identity(&self) -> TowerElement {
        self.factors.iter().map(|f| SignedPermutation::identity(f.weyl_rank as usize)).collect()
    }

    /// Generators of `W_φ`, each placed in its own factor.
    pub fn generators(&self) -> Vec<TowerElement> {
        let mut out = Vec::new();
        for (k, f) in self.factors.iter().enumerate() {
            for g in f.generators() {
                let mut e = self.identity();
                e[k] = g;
                out.push(e);
            }
        }
        out
    }

    pub fn elements(&self) -> Vec<TowerElement> {
        let mut out: Vec<TowerElement> = vec![Vec::new()];
        for f in &self.factors {
            let els = f.elements();
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    els.iter().map(move |w| {
                        let mut v = prefix.clone();
                        v.push(w.clone());
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// `p: W_φ → 𝒮_φ`: the total sign of an orthogonal factor of even size.
    pub fn p(&self, w: &TowerElement) -> GroupElement {
        let mut x = vec![Sign::Plus; self.group_rank];
        for (f, wf) in self.factors.iter().zip(w) {
            if let (FactorKind::Orthogonal, Some(slot), true) = (f.kind, f.slot, f.m % 2 == 0) {
                x[slot] = wf.images().iter().map(|(_, s)| *s).product();
            }
        }
        GroupElement(x)
    }

    /// Projection `𝒮_φ → R_φ`.
    pub fn to_r(&self, x: &GroupElement) -> GroupElement {
        GroupElement(self.r_slots.iter().map(|s| x.get(*s)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteSupport {
    pub phi0: Parameter,
    /// One entry per `GL` copy, with its dual.
    pub gl_copies: Vec<(SimpleBlock, SimpleBlock)>,
    pub shape: LeviShape,
    pub tower: Tower,
}

impl DiscreteSupport {
    pub fn reassemble(&self) -> Result<Parameter> {
        let mut all: Vec<(SimpleBlock, u32)> = self.phi0.blocks().to_vec();
        for (b, d) in &self.gl_copies {
            all.push((b.clone(), 1));
            all.push((d.clone(), 1));
        }
        Parameter::normalize(all)
    }
}

pub fn discrete_support(phi: &Parameter) -> Result<DiscreteSupport> {
    if !phi.is_bounded() {
        return Err(Error::NotBounded);
    }
    let group = phi.component_group();
    let (shape, _, _) = phi.component_data();
    let mut phi0 = Vec::new();
    let mut gl_copies = Vec::new();
    let mut factors = Vec::new();
    let mut r_slots = Vec::new();
    let mut phi0_slots = Vec::new();
    for f in &shape.factors {
        let b = phi.block(f.block);
        let m = f.size;
        let slot = group.slot_of(f.block);
        let (weyl_rank, copies, partner) = match f.kind {
            FactorKind::Orthogonal => {
                let s = slot.expect("orthogonal factor has a slot");
                if m % 2 == 1 {
                    phi0.push((b.clone(), 1));
                    phi0_slots.push(s);
                } else {
                    r_slots.push(s);
                }
                (m / 2, m / 2, b.clone())
            }
            FactorKind::Symplectic => (m / 2, m / 2, b.clone()),
            FactorKind::GeneralLinear => {
                let j = match phi.class(f.block) {
                    BlockClass::Pair(j) => j,
                    _ => unreachable!("GL factor on a self-dual block"),
                };
                (m, m, phi.block(j).clone())
            }
        };
        for _ in 0..copies {
            gl_copies.push((b.clone(), partner.clone()));
        }
        factors.push(TowerFactor { kind: f.kind, m, block: f.block, weyl_rank, slot });
    }
    let phi0 = Parameter::normalize(phi0)?;
    let levi = LeviShape {
        sp_rank: phi0.rank(),
        gl_sizes: gl_copies.iter().map(|(b, _)| b.dim()).collect(),
    };
    phi0_slots.sort_unstable();
    r_slots.sort_unstable();
    Ok(DiscreteSupport {
        phi0,
        gl_copies,
        shape: levi,
        tower: Tower { factors, group_rank: group.rank(), r_slots, phi0_slots },
    })
}

/// Pulls a character of `𝒮_φ` back along `𝒮_{φ₀} ↪ 𝒮_φ` given by slots.
pub fn restrict_char(chi: &Character, slots: &[usize]) -> Character {
    Character(slots.iter().map(|s| chi.get(*s)).collect())
}

impl fmt::Display for GlPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ {}", self.blocks, format_rational(&self.exponent))
    }
}
