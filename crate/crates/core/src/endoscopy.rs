//! Elliptic endoscopic data, involution signatures, and the formal character
//! algebra of packets and stable transfers.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::factors::{eps_minus_part, PsiConductor};
use crate::group::{Character, ComponentGroup, GroupElement, Sign};
use crate::params::{BlockClass, FactorKind, Parameter, SimpleBlock};
use crate::scalar::{format_rational, Q};

/// `(n′, n″)`, standing for `SO(2n′+1) × SO(2n″+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EndoDatum {
    pub n1: u32,
    pub n2: u32,
}

impl fmt::Display for EndoDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n1, self.n2)
    }
}

/// Multiplicity of the eigenvalue `−1` on each centralizer factor, in the
/// factor order of `Parameter::component_data`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvolutionSignature {
    pub k: Vec<u32>,
}

impl InvolutionSignature {
    pub fn new(k: Vec<u32>) -> Self {
        Self { k }
    }

    pub fn identity(phi: &Parameter) -> Self {
        Self { k: vec![0; phi.component_data().0.factors.len()] }
    }

    pub fn validate(&self, phi: &Parameter) -> Result<()> {
        let (shape, _, _) = phi.component_data();
        if shape.factors.len() != self.k.len() {
            return Err(Error::InvalidSignature(format!(
                "{} entries for {} centralizer factors",
                self.k.len(),
                shape.factors.len()
            )));
        }
        for (f, k) in shape.factors.iter().zip(&self.k) {
            if *k > f.size {
                return Err(Error::InvalidSignature(format!(
                    "k = {k} exceeds {}",
                    f.kind.group_name(f.size)
                )));
            }
            if f.kind == FactorKind::Symplectic && k % 2 == 1 {
                return Err(Error::InvalidSignature(format!(
                    "odd k = {k} on {}",
                    f.kind.group_name(f.size)
                )));
            }
        }
        Ok(())
    }

    /// Image in `𝒮_φ`: `(−1)^{k_i}` on each orthogonal factor.
    pub fn image(&self, phi: &Parameter) -> GroupElement {
        let (shape, _, _) = phi.component_data();
        GroupElement(
            shape
                .factors
                .iter()
                .zip(&self.k)
                .filter(|(f, _)| f.kind == FactorKind::Orthogonal)
                .map(|(_, k)| Sign::pow_minus_one(*k as u64))
                .collect(),
        )
    }

    /// `k` on the factor of block `i`.
    pub fn k_at_block(&self, phi: &Parameter, i: usize) -> u32 {
        let j = match phi.class(i) {
            BlockClass::Pair(j) => j.min(i),
            _ => i,
        };
        let (shape, _, _) = phi.component_data();
        let slot = shape.factors.iter().position(|f| f.block == j).expect("block has a factor");
        self.k[slot]
    }

    pub fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Some(Self { k: Vec::new() });
        }
        text.split(',').map(|t| t.trim().parse().ok()).collect::<Option<Vec<u32>>>().map(Self::new)
    }
}

impl fmt::Display for InvolutionSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.k.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// All involution signatures of `φ` with their images.
pub fn involutions(phi: &Parameter) -> Vec<(InvolutionSignature, GroupElement)> {
    let (shape, _, _) = phi.component_data();
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for f in &shape.factors {
        let step = if f.kind == FactorKind::Symplectic { 2 } else { 1 };
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=f.size).step_by(step).map(move |k| {
                    let mut v = prefix.clone();
                    v.push(k);
                    v
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|k| {
            let s = InvolutionSignature::new(k);
            let x = s.image(phi);
            (s, x)
        })
        .collect()
}

/// The endoscopic datum and the `(+1)`- and `(−1)`-eigenparts of `φ` under `s`.
pub fn factorize(
    phi: &Parameter,
    s: &InvolutionSignature,
) -> Result<(EndoDatum, Parameter, Parameter)> {
    s.validate(phi)?;
    let mut plus: Vec<(SimpleBlock, u32)> = Vec::new();
    let mut minus: Vec<(SimpleBlock, u32)> = Vec::new();
    for i in 0..phi.len() {
        let k = s.k_at_block(phi, i);
        let m = phi.multiplicity(i);
        let b = phi.block(i);
        if k > 0 {
            minus.push((b.clone(), k));
        }
        if m > k {
            plus.push((b.clone(), m - k));
        }
    }
    let plus = Parameter::normalize(plus)?;
    let minus = Parameter::normalize(minus)?;
    Ok((EndoDatum { n1: plus.rank(), n2: minus.rank() }, plus, minus))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// The character of `π_{φ,χ}`.
    PacketMember(Parameter, Character),
    /// The transfer of the stable character of `φ′ ⊠ φ″` from the datum.
    StableTransfer(EndoDatum, Parameter, Parameter),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::PacketMember(p, chi) => write!(f, "pi[{p} ; {chi}]"),
            Symbol::StableTransfer(d, p1, p2) => write!(f, "Trans{d}[{p1} ; {p2}]"),
        }
    }
}

/// A finite `ℚ`-linear combination of symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VirtualCharacter {
    terms: BTreeMap<Symbol, Q>,
}

impl VirtualCharacter {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::term(s, Q::one())
    }

    pub fn term(s: Symbol, c: Q) -> Self {
        let mut v = Self::zero();
        v.add_term(s, c);
        v
    }

    pub fn add_term(&mut self, s: Symbol, c: Q) {
        let entry = self.terms.entry(s.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn add(&self, other: &VirtualCharacter) -> VirtualCharacter {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), *c);
        }
        out
    }

    pub fn scale(&self, c: Q) -> VirtualCharacter {
        let mut out = Self::zero();
        for (s, x) in &self.terms {
            out.add_term(s.clone(), *x * c);
        }
        out
    }

    pub fn scale_sign(&self, s: Sign) -> VirtualCharacter {
        self.scale(Q::from(s.to_i64()))
    }

    pub fn coefficient(&self, s: &Symbol) -> Q {
        self.terms.get(s).copied().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Symbol, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Rewrites every symbol through `f`, summing coefficients of colliding images.
    pub fn map_symbols(&self, mut f: impl FnMut(&Symbol) -> VirtualCharacter) -> VirtualCharacter {
        let mut out = Self::zero();
        for (s, c) in &self.terms {
            out = out.add(&f(s).scale(*c));
        }
        out
    }
}

impl fmt::Display for VirtualCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(s, c)| format!("{} {s}", format_rational(c))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `T_{φ,s} = ε(1/2, φ^{s=−1}, ψ) · Trans(φ′ ⊠ φ″)`.
pub fn t_phi_s(
    phi: &Parameter,
    s: &InvolutionSignature,
    psi: PsiConductor,
) -> Result<VirtualCharacter> {
    if !phi.is_bounded() {
        return Err(Error::NotBounded);
    }
    let (datum, plus, minus) = factorize(phi, s)?;
    let eps = eps_minus_part(phi, s, psi)?;
    let sign = eps
        .as_sign()
        .ok_or_else(|| Error::NotEvaluable(format!("epsilon of the (-1)-part is {eps}")))?;
    Ok(VirtualCharacter::symbol(Symbol::StableTransfer(datum, plus, minus)).scale_sign(sign))
}

pub type MemberTable = BTreeMap<Character, VirtualCharacter>;
pub type StableTable = BTreeMap<GroupElement, VirtualCharacter>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FourierTable {
    Members(MemberTable),
    Stable(StableTable),
}

/// `out[y] = c · Σ_x (−1)^{|x ∧ y|} input[x]`, one butterfly per symbol.
fn walsh(k: usize, input: &[&VirtualCharacter], c: Q) -> Vec<VirtualCharacter> {
    let n = 1usize << k;
    let mut coeffs: BTreeMap<&Symbol, Vec<Q>> = BTreeMap::new();
    for (x, v) in input.iter().enumerate() {
        for (s, a) in v.terms() {
            coeffs.entry(s).or_insert_with(|| vec![Q::zero(); n])[x] = *a;
        }
    }
    let mut out = vec![VirtualCharacter::zero(); n];
    for (s, mut v) in coeffs {
        let mut h = 1;
        while h < n {
            for i in (0..n).step_by(2 * h) {
                for j in i..i + h {
                    let (a, b) = (v[j], v[j + h]);
                    v[j] = a + b;
                    v[j + h] = a - b;
                }
            }
            h *= 2;
        }
        for (y, a) in v.into_iter().enumerate() {
            if !a.is_zero() {
                out[y].terms.insert(s.clone(), a * c);
            }
        }
    }
    out
}

/// `T(x) = Σ_χ χ(x) · member(χ)`.
pub fn to_stable(group: &ComponentGroup, members: &MemberTable) -> Result<StableTable> {
    let input = group
        .characters()
        .map(|chi| members.get(&chi).ok_or_else(|| Error::IncompleteTable(chi.to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok(group.elements().zip(walsh(group.rank(), &input, Q::one())).collect())
}

/// `member(χ) = |𝒮|^{−1} Σ_x χ(x) · T(x)`.
pub fn to_members(group: &ComponentGroup, stable: &StableTable) -> Result<MemberTable> {
    let input = group
        .elements()
        .map(|x| stable.get(&x).ok_or_else(|| Error::IncompleteTable(x.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let inv_order = Q::new(1, group.order() as i64);
    Ok(group.characters().zip(walsh(group.rank(), &input, inv_order)).collect())
}

pub fn packet_fourier(group: &ComponentGroup, table: &FourierTable) -> Result<FourierTable> {
    match table {
        FourierTable::Members(m) => to_stable(group, m).map(FourierTable::Stable),
        FourierTable::Stable(t) => to_members(group, t).map(FourierTable::Members),
    }
}

/// The packet of `φ` as member symbols.
pub fn member_symbols(phi: &Parameter) -> MemberTable {
    phi.component_group()
        .characters()
        .map(|chi| (chi.clone(), VirtualCharacter::symbol(Symbol::PacketMember(phi.clone(), chi))))
        .collect()
}

/// One `T_{φ,s}` per element of `𝒮_φ`, using the first signature with that image.
pub fn stable_table(phi: &Parameter, psi: PsiConductor) -> Result<StableTable> {
    let mut out = StableTable::new();
    for (s, x) in involutions(phi) {
        if let std::collections::btree_map::Entry::Vacant(slot) = out.entry(x) {
            slot.insert(t_phi_s(phi, &s, psi)?);
        }
    }
    Ok(out)
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

    #[test]
    fn signature_counts() {
        let p = Parameter::normalize([(one(2), 1), (sgn(2), 1)]).unwrap();
        assert_eq!(involutions(&p).len(), 4);
        let p = Parameter::normalize([(one(2), 2)]).unwrap();
        let images: Vec<String> = involutions(&p).into_iter().map(|(_, x)| x.to_string()).collect();
        assert_eq!(images, vec!["+", "-", "+"]);
        assert_eq!(involutions(&Parameter::empty()).len(), 1);
    }

    #[test]
    fn factorization_examples() {
        let p = Parameter::normalize([(one(2), 1), (sgn(2), 1)]).unwrap();
        let (d, p1, p2) = factorize(&p, &InvolutionSignature::new(vec![1, 0])).unwrap();
        assert_eq!(d, EndoDatum { n1: 1, n2: 1 });
        assert_eq!(p1.to_string(), "[sgn x S(2)]");
        assert_eq!(p2.to_string(), "[1 x S(2)]");
        let (d, _, p2) = factorize(&p, &InvolutionSignature::identity(&p)).unwrap();
        assert_eq!(d, EndoDatum { n1: 2, n2: 0 });
        assert!(p2.is_empty());

        let p = Parameter::normalize([(one(2), 2)]).unwrap();
        let (d, p1, p2) = factorize(&p, &InvolutionSignature::new(vec![1])).unwrap();
        assert_eq!(d, EndoDatum { n1: 1, n2: 1 });
        assert_eq!(p1, p2);
        assert!(factorize(&p, &InvolutionSignature::new(vec![3])).is_err());
    }

    #[test]
    fn minus_one_on_sp_factor_needs_even_k() {
        let p = Parameter::normalize([(sgn(1), 2)]).unwrap();
        assert!(InvolutionSignature::new(vec![1]).validate(&p).is_err());
        assert!(InvolutionSignature::new(vec![2]).validate(&p).is_ok());
    }

    #[test]
    fn transfer_signs() {
        let psi = PsiConductor::default();
        let p = Parameter::normalize([(one(2), 1), (sgn(2), 1)]).unwrap();
        let t = t_phi_s(&p, &InvolutionSignature::new(vec![1, 0]), psi).unwrap();
        let (_, c) = t.terms().next().unwrap();
        assert_eq!(*c, Q::from(-1));
        let p = Parameter::normalize([(one(2), 2)]).unwrap();
        let t = t_phi_s(&p, &InvolutionSignature::new(vec![2]), psi).unwrap();
        assert_eq!(*t.terms().next().unwrap().1, Q::one());
    }

    #[test]
    fn fourier_on_order_two() {
        let p = Parameter::normalize([(one(2), 1)]).unwrap();
        let g = p.component_group();
        let members = member_symbols(&p);
        let stable = to_stable(&g, &members).unwrap();
        let minus = GroupElement(vec![Sign::Minus]);
        let plus_member = Symbol::PacketMember(p.clone(), Character(vec![Sign::Plus]));
        let minus_member = Symbol::PacketMember(p.clone(), Character(vec![Sign::Minus]));
        assert_eq!(stable[&minus].coefficient(&plus_member), Q::one());
        assert_eq!(stable[&minus].coefficient(&minus_member), -Q::one());
        assert_eq!(to_members(&g, &stable).unwrap(), members);

        let mut partial = members.clone();
        partial.remove(&Character(vec![Sign::Minus]));
        assert!(matches!(to_stable(&g, &partial), Err(Error::IncompleteTable(_))));
    }
}
