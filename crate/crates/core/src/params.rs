//! Symplectic-type parameters as multisets of simple blocks `ρ ⊠ S(a)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::{Character, ComponentGroup, GroupElement, Sign};
use crate::scalar::{format_rational, Monomial, Q};

pub const DEFAULT_PHASE_BOUND: u32 = 8;

/// An unramified character `ϖ ↦ ζ · q^texp`, `ζ = exp(2πi·rot)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnramifiedCharacter {
    rot: Q,
    texp: Q,
}

fn frac_part(x: Q) -> Q {
    x - x.floor()
}

impl UnramifiedCharacter {
    pub fn new(rot: Q, texp: Q) -> Self {
        Self { rot: frac_part(rot), texp }
    }

    pub fn trivial() -> Self {
        Self::new(Q::zero(), Q::zero())
    }

    pub fn sgn() -> Self {
        Self::new(Q::new(1, 2), Q::zero())
    }

    pub fn rot(&self) -> Q {
        self.rot
    }

    pub fn texp(&self) -> Q {
        self.texp
    }

    pub fn dual(&self) -> Self {
        Self::new(-self.rot, -self.texp)
    }

    pub fn is_self_dual(&self) -> bool {
        (self.rot * 2).is_integer() && self.texp.is_zero()
    }

    pub fn is_bounded(&self) -> bool {
        self.texp.is_zero()
    }

    /// `χ(ϖ) ∈ {±1}` as a sign, when self-dual.
    pub fn quadratic_value(&self) -> Option<Sign> {
        if !self.is_self_dual() {
            None
        } else {
            Some(Sign::from_parity(!self.rot.is_zero()))
        }
    }

    pub fn check_phase(&self, bound: u32) -> Result<()> {
        let scaled = self.rot * bound as i64;
        if bound == 0 || !DEFAULT_PHASE_BOUND.is_multiple_of(bound) || !scaled.is_integer() {
            return Err(Error::UnsupportedPhase { rot: format_rational(&self.rot), bound });
        }
        Ok(())
    }

    /// `χ(ϖ)` as an exact monomial. Requires the phase to be an 8th root of unity.
    pub fn value(&self) -> Monomial {
        let k = self.rot * 8;
        debug_assert!(k.is_integer(), "phase outside the 8th roots of unity");
        Monomial::new(k.to_integer(), self.texp)
    }
}

impl fmt::Display for UnramifiedCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Self::trivial() {
            write!(f, "1")
        } else if *self == Self::sgn() {
            write!(f, "sgn")
        } else {
            write!(f, "unr({},{})", format_rational(&self.rot), format_rational(&self.texp))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Duality {
    Symplectic,
    Orthogonal,
    NotSelfDual(String),
}

/// A supercuspidal label known only through declared invariants.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbstractLabel {
    pub name: String,
    pub dim: u32,
    pub duality: Duality,
    pub eps_half: Option<Sign>,
    pub central_sign: Sign,
    pub frob_sign: Option<Sign>,
}

impl AbstractLabel {
    fn check(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InconsistentLabel(format!("{}: {msg}", self.name)));
        if self.name.is_empty() || self.name == "1" || self.name == "sgn" {
            return bad("reserved or empty name");
        }
        if self.dim == 0 {
            return bad("dim must be positive");
        }
        match &self.duality {
            Duality::Symplectic if self.dim % 2 == 1 => bad("symplectic label of odd dimension"),
            Duality::NotSelfDual(_) if self.eps_half.is_some() => bad("eps given for a non-self-dual label"),
            Duality::NotSelfDual(d) if *d == self.name => bad("dual name equals own name"),
            Duality::Symplectic | Duality::Orthogonal if self.eps_half.is_none() => {
                bad("self-dual label needs eps")
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for AbstractLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sd = match &self.duality {
            Duality::Symplectic => "symp".to_string(),
            Duality::Orthogonal => "orth".to_string(),
            Duality::NotSelfDual(d) => format!("dual:{d}"),
        };
        write!(f, "rho({};dim={},sd={}", self.name, self.dim, sd)?;
        if let Some(e) = self.eps_half {
            write!(f, ",eps={e}")?;
        }
        write!(f, ",wm1={}", self.central_sign)?;
        if let Some(s) = self.frob_sign {
            write!(f, ",frob={s}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Unramified(UnramifiedCharacter),
    Abstract(AbstractLabel),
}

impl Label {
    pub fn trivial() -> Self {
        Label::Unramified(UnramifiedCharacter::trivial())
    }

    pub fn sgn() -> Self {
        Label::Unramified(UnramifiedCharacter::sgn())
    }

    pub fn unr(rot: Q, texp: Q) -> Self {
        Label::Unramified(UnramifiedCharacter::new(rot, texp))
    }

    pub fn dim(&self) -> u32 {
        match self {
            Label::Unramified(_) => 1,
            Label::Abstract(l) => l.dim,
        }
    }

    pub fn duality(&self) -> Duality {
        match self {
            Label::Unramified(c) if c.is_self_dual() => Duality::Orthogonal,
            Label::Unramified(c) => Duality::NotSelfDual(c.dual().to_string()),
            Label::Abstract(l) => l.duality.clone(),
        }
    }

    pub fn is_self_dual(&self) -> bool {
        !matches!(self.duality(), Duality::NotSelfDual(_))
    }

    pub fn is_bounded(&self) -> bool {
        match self {
            Label::Unramified(c) => c.is_bounded(),
            Label::Abstract(_) => true,
        }
    }

    pub fn is_unramified(&self) -> bool {
        matches!(self, Label::Unramified(_))
    }

    pub fn as_unramified(&self) -> Option<&UnramifiedCharacter> {
        match self {
            Label::Unramified(c) => Some(c),
            Label::Abstract(_) => None,
        }
    }

    /// `ω_ρ(−1)`; unramified characters are trivial on `−1`.
    pub fn central_sign(&self) -> Sign {
        match self {
            Label::Unramified(_) => Sign::Plus,
            Label::Abstract(l) => l.central_sign,
        }
    }

    fn name(&self) -> &str {
        match self {
            Label::Unramified(_) => "",
            Label::Abstract(l) => &l.name,
        }
    }

    fn rot_texp(&self) -> (Q, Q) {
        match self {
            Label::Unramified(c) => (c.rot, c.texp),
            Label::Abstract(_) => (Q::zero(), Q::zero()),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Unramified(c) => write!(f, "{c}"),
            Label::Abstract(l) => write!(f, "{l}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockType {
    Symplectic,
    Orthogonal,
    NotSelfDual,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleBlock {
    pub rho: Label,
    pub a: u32,
}

impl SimpleBlock {
    pub fn new(rho: Label, a: u32) -> Self {
        Self { rho, a }
    }

    pub fn dim(&self) -> u32 {
        self.rho.dim() * self.a
    }

    pub fn block_type(&self) -> BlockType {
        let odd = self.a % 2 == 1;
        match self.rho.duality() {
            Duality::NotSelfDual(_) => BlockType::NotSelfDual,
            Duality::Symplectic if odd => BlockType::Symplectic,
            Duality::Orthogonal if !odd => BlockType::Symplectic,
            _ => BlockType::Orthogonal,
        }
    }

    /// Inertia-trivial blocks: unramified, bounded or not.
    pub fn is_unramified(&self) -> bool {
        self.rho.is_unramified()
    }
}

impl Ord for SimpleBlock {
    fn cmp(&self, other: &Self) -> Ordering {
        let (r1, t1) = self.rho.rot_texp();
        let (r2, t2) = other.rho.rot_texp();
        self.rho
            .dim()
            .cmp(&other.rho.dim())
            .then(r1.cmp(&r2))
            .then(t1.cmp(&t2))
            .then(self.a.cmp(&other.a))
            .then_with(|| self.rho.name().cmp(other.rho.name()))
            .then_with(|| match (&self.rho, &other.rho) {
                (Label::Abstract(x), Label::Abstract(y)) => x.cmp(y),
                (Label::Unramified(_), Label::Abstract(_)) => Ordering::Less,
                (Label::Abstract(_), Label::Unramified(_)) => Ordering::Greater,
                (Label::Unramified(_), Label::Unramified(_)) => Ordering::Equal,
            })
    }
}

impl PartialOrd for SimpleBlock {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SimpleBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} x S({})]", self.rho, self.a)
    }
}

/// Position of a block in the `I⁺ / I⁻ / J` trichotomy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockClass {
    Plus,
    Minus,
    /// Non-self-dual, with the index of its dual partner.
    Pair(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Parameter {
    blocks: Vec<(SimpleBlock, u32)>,
    classes: Vec<BlockClass>,
    rank: u32,
}

impl Parameter {
    pub fn empty() -> Self {
        Self { blocks: Vec::new(), classes: Vec::new(), rank: 0 }
    }

    pub fn normalize<I>(input: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SimpleBlock, u32)>,
    {
        Self::normalize_with_bound(input, DEFAULT_PHASE_BOUND)
    }

    pub fn normalize_with_bound<I>(input: I, phase_bound: u32) -> Result<Self>
    where
        I: IntoIterator<Item = (SimpleBlock, u32)>,
    {
        let mut merged: BTreeMap<SimpleBlock, u32> = BTreeMap::new();
        let mut labels: HashMap<String, AbstractLabel> = HashMap::new();
        for (block, m) in input {
            if m == 0 {
                return Err(Error::ZeroMultiplicity);
            }
            if block.a == 0 {
                return Err(Error::BadA(0));
            }
            match &block.rho {
                Label::Unramified(c) => c.check_phase(phase_bound)?,
                Label::Abstract(l) => {
                    l.check()?;
                    if let Some(prev) = labels.get(&l.name) {
                        if prev != l {
                            return Err(Error::InconsistentLabel(format!(
                                "{} declared with different attributes",
                                l.name
                            )));
                        }
                    } else {
                        labels.insert(l.name.clone(), l.clone());
                    }
                }
            }
            *merged.entry(block).or_insert(0) += m;
        }
        let blocks: Vec<(SimpleBlock, u32)> = merged.into_iter().collect();
        let classes = classify(&blocks, &labels)?;
        let dim: u32 = blocks.iter().map(|(b, m)| b.dim() * m).sum();
        if dim % 2 == 1 {
            return Err(Error::OddTotalDimension { dim });
        }
        Ok(Self { blocks, classes, rank: dim / 2 })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[(SimpleBlock, u32)] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &SimpleBlock {
        &self.blocks[i].0
    }

    pub fn multiplicity(&self, i: usize) -> u32 {
        self.blocks[i].1
    }

    pub fn class(&self, i: usize) -> BlockClass {
        self.classes[i]
    }

    pub fn index_of(&self, block: &SimpleBlock) -> Option<usize> {
        self.blocks.iter().position(|(b, _)| b == block)
    }

    pub fn contains(&self, block: &SimpleBlock) -> bool {
        self.index_of(block).is_some()
    }

    pub fn plus_indices(&self) -> Vec<usize> {
        self.indices_where(|c| c == BlockClass::Plus)
    }

    pub fn minus_indices(&self) -> Vec<usize> {
        self.indices_where(|c| c == BlockClass::Minus)
    }

    /// Dual pairs `(j, j′)` with `j < j′`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter_map(|i| match self.classes[i] {
                BlockClass::Pair(j) if i < j => Some((i, j)),
                _ => None,
            })
            .collect()
    }

    fn indices_where(&self, f: impl Fn(BlockClass) -> bool) -> Vec<usize> {
        (0..self.len()).filter(|i| f(self.classes[*i])).collect()
    }

    pub fn component_group(&self) -> ComponentGroup {
        ComponentGroup::new(self.plus_indices())
    }

    pub fn component_data(&self) -> (CentralizerShape, ComponentGroup, GroupElement) {
        let mut factors = Vec::new();
        for i in 0..self.len() {
            let size = self.multiplicity(i);
            let kind = match self.classes[i] {
                BlockClass::Plus => FactorKind::Orthogonal,
                BlockClass::Minus => FactorKind::Symplectic,
                BlockClass::Pair(j) if i < j => FactorKind::GeneralLinear,
                BlockClass::Pair(_) => continue,
            };
            factors.push(CentralizerFactor { kind, size, block: i });
        }
        let group = self.component_group();
        let z = self.z_phi();
        (CentralizerShape { factors }, group, z)
    }

    /// Image of `−1 ∈ Sp(2n)`: `(−1)^{m_i}` at each `i ∈ I⁺`.
    pub fn z_phi(&self) -> GroupElement {
        GroupElement(
            self.plus_indices()
                .into_iter()
                .map(|i| Sign::pow_minus_one(self.multiplicity(i) as u64))
                .collect(),
        )
    }

    pub fn is_bounded(&self) -> bool {
        self.blocks.iter().all(|(b, _)| b.rho.is_bounded())
    }

    pub fn is_good_parity(&self) -> bool {
        self.classes.iter().all(|c| *c == BlockClass::Plus)
    }

    pub fn is_discrete(&self) -> bool {
        self.is_good_parity() && self.blocks.iter().all(|(_, m)| *m == 1)
    }

    pub fn is_unramified(&self) -> bool {
        self.blocks.iter().all(|(b, _)| b.is_unramified())
    }

    pub fn flags(&self) -> Flags {
        Flags {
            bounded: self.is_bounded(),
            discrete: self.is_discrete(),
            good_parity: self.is_good_parity(),
            jordan: self.blocks.clone(),
        }
    }

    /// Blockwise contragredient.
    pub fn dual(&self) -> Parameter {
        let out: Vec<(SimpleBlock, u32)> =
            self.blocks.iter().map(|(b, m)| (self.dual_block(b), *m)).collect();
        Parameter::normalize(out).expect("dual of a valid parameter is valid")
    }

    /// The contragredient of a block, resolving abstract partners through this parameter.
    pub fn dual_block(&self, b: &SimpleBlock) -> SimpleBlock {
        let rho = match &b.rho {
            Label::Unramified(c) => Label::Unramified(c.dual()),
            Label::Abstract(l) => match &l.duality {
                Duality::NotSelfDual(d) => self
                    .blocks
                    .iter()
                    .find_map(|(x, _)| match &x.rho {
                        Label::Abstract(y) if y.name == *d => Some(x.rho.clone()),
                        _ => None,
                    })
                    .unwrap_or_else(|| b.rho.clone()),
                _ => b.rho.clone(),
            },
        };
        SimpleBlock::new(rho, b.a)
    }

    /// Multiset sum.
    pub fn direct_sum(&self, other: &Parameter) -> Result<Parameter> {
        Parameter::normalize(self.blocks.iter().chain(other.blocks.iter()).cloned())
    }

    /// Same blocks with replaced multiplicities; zero entries are dropped.
    pub fn with_multiplicities(&self, mults: &[u32]) -> Result<Parameter> {
        Parameter::normalize(
            self.blocks
                .iter()
                .zip(mults)
                .filter(|(_, m)| **m > 0)
                .map(|((b, _), m)| (b.clone(), *m)),
        )
    }

    /// Canonical string, also used as a memo key.
    pub fn key(&self) -> String {
        self.to_string()
    }
}

fn classify(
    blocks: &[(SimpleBlock, u32)],
    labels: &HashMap<String, AbstractLabel>,
) -> Result<Vec<BlockClass>> {
    let mut classes = Vec::with_capacity(blocks.len());
    for (b, m) in blocks {
        match b.block_type() {
            BlockType::Symplectic => classes.push(BlockClass::Plus),
            BlockType::Orthogonal => {
                if m % 2 == 1 {
                    return Err(Error::OddOrthogonalMultiplicity {
                        block: b.to_string(),
                        multiplicity: *m,
                    });
                }
                classes.push(BlockClass::Minus)
            }
            BlockType::NotSelfDual => classes.push(BlockClass::Pair(usize::MAX)),
        }
    }
    for i in 0..blocks.len() {
        if classes[i] != BlockClass::Pair(usize::MAX) {
            continue;
        }
        let (b, m) = &blocks[i];
        let partner_label = match &b.rho {
            Label::Unramified(c) => Some(Label::Unramified(c.dual())),
            Label::Abstract(l) => match &l.duality {
                Duality::NotSelfDual(d) => match labels.get(d) {
                    Some(p) if p.duality != Duality::NotSelfDual(l.name.clone()) => {
                        return Err(Error::InconsistentLabel(format!(
                            "{} and {} do not name each other as duals",
                            l.name, d
                        )));
                    }
                    Some(p) if p.dim != l.dim || p.central_sign != l.central_sign => {
                        return Err(Error::InconsistentLabel(format!(
                            "{} and {} differ in dim or central sign",
                            l.name, d
                        )));
                    }
                    Some(p) => Some(Label::Abstract(p.clone())),
                    None => None,
                },
                _ => unreachable!("self-dual label classified as non-self-dual"),
            },
        };
        let partner = partner_label.map(|rho| SimpleBlock::new(rho, b.a));
        let j = partner
            .as_ref()
            .and_then(|p| blocks.iter().position(|(x, mx)| x == p && mx == m));
        match j {
            Some(j) => {
                classes[i] = BlockClass::Pair(j);
                classes[j] = BlockClass::Pair(i);
            }
            None => return Err(Error::UnpairedNonSelfDual { block: b.to_string() }),
        }
    }
    Ok(classes)
}

impl Ord for Parameter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank.cmp(&other.rank).then_with(|| self.blocks.cmp(&other.blocks))
    }
}

impl PartialOrd for Parameter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "0");
        }
        for (idx, (b, m)) in self.blocks.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if *m > 1 {
                write!(f, "{m}*")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorKind {
    Orthogonal,
    Symplectic,
    GeneralLinear,
}

impl FactorKind {
    pub fn group_name(self, m: u32) -> String {
        match self {
            FactorKind::Orthogonal => format!("O({m})"),
            FactorKind::Symplectic => format!("Sp({m})"),
            FactorKind::GeneralLinear => format!("GL({m})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CentralizerFactor {
    pub kind: FactorKind,
    pub size: u32,
    pub block: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CentralizerShape {
    pub factors: Vec<CentralizerFactor>,
}

impl fmt::Display for CentralizerShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| x.kind.group_name(x.size)).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    pub bounded: bool,
    pub discrete: bool,
    pub good_parity: bool,
    pub jordan: Vec<(SimpleBlock, u32)>,
}

/// A parameter with a character of its component group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnhancedParameter {
    pub param: Parameter,
    pub chi: Character,
}

impl EnhancedParameter {
    pub fn new(param: Parameter, chi: Character) -> Result<Self> {
        param.component_group().check_character(&chi)?;
        Ok(Self { param, chi })
    }

    pub fn key(&self) -> String {
        format!("{} | {}", self.param, self.chi)
    }
}

impl fmt::Display for EnhancedParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} with chi = ({})", self.param, self.chi)
    }
}

/// Shorthand used throughout: the block `[χ x S(a)]` for an unramified `χ`.
pub fn unr_block(c: UnramifiedCharacter, a: u32) -> SimpleBlock {
    SimpleBlock::new(Label::Unramified(c), a)
}
