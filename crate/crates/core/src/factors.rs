//! Local L-, ε- and γ-factors of inertia-trivial parameters, and the root-number
//! character `ν_φ`.

use num_traits::Zero;

use crate::endoscopy::InvolutionSignature;
use crate::error::{Error, Result};
use crate::group::{Character, Sign};
use crate::params::{BlockClass, Duality, Label, Parameter, SimpleBlock};
use crate::scalar::{Monomial, RationalFunction, Scalar, Q};

/// Conductor data of the additive character `ψ`: `ψ` is trivial on `𝔭^d` and
/// not on `𝔭^{d−1}`; `e2` is the valuation of 2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PsiConductor {
    pub d: u32,
    pub e2: u32,
}

impl PsiConductor {
    pub fn new(d: u32, e2: u32) -> Self {
        Self { d, e2 }
    }

    /// Conductor `4𝔬`, i.e. `d = 2·e2`.
    pub fn standard(e2: u32) -> Self {
        Self { d: 2 * e2, e2 }
    }
}

/// `ε(1/2, ρ ⊠ S(a), ψ)`.
pub fn eps_half_block(block: &SimpleBlock, psi: PsiConductor) -> Result<Scalar> {
    let a = block.a as i64;
    match &block.rho {
        Label::Unramified(c) => {
            let z = c.value();
            let minus_z = &Monomial::sign(Sign::Minus) * &z;
            Ok(Scalar::from(&z.pow(psi.d as i64 * a) * &minus_z.pow(a - 1)))
        }
        Label::Abstract(l) => {
            let eps = match (&l.duality, l.eps_half) {
                (Duality::NotSelfDual(_), _) | (_, None) => {
                    return Err(Error::NotEvaluable(format!("epsilon of {block}")))
                }
                (_, Some(e)) => e,
            };
            let frob_part = if a % 2 == 1 {
                Sign::Plus
            } else {
                match l.frob_sign {
                    Some(f) => -f,
                    None => {
                        return Err(Error::NotEvaluable(format!(
                            "{block} needs a declared frob sign"
                        )))
                    }
                }
            };
            Ok(Scalar::from(eps.pow(a as u64) * frob_part))
        }
    }
}

fn sign_of(value: Scalar, what: &SimpleBlock) -> Result<Sign> {
    value
        .as_sign()
        .ok_or_else(|| Error::NotEvaluable(format!("epsilon of {what} is not a sign: {value}")))
}

/// `ν_φ`: the root numbers of the `I⁺` blocks, in basis order.
pub fn nu_char(phi: &Parameter, psi: PsiConductor) -> Result<Character> {
    phi.plus_indices()
        .into_iter()
        .map(|i| sign_of(eps_half_block(phi.block(i), psi)?, phi.block(i)))
        .collect::<Result<Vec<_>>>()
        .map(Character)
}

/// `ε(1/2, φ, ψ)` over the whole parameter.
pub fn eps_half(phi: &Parameter, psi: PsiConductor) -> Result<Scalar> {
    let mut acc = Scalar::one();
    for (b, m) in phi.blocks() {
        acc = &acc * &eps_half_block(b, psi)?.pow(*m);
    }
    Ok(acc)
}

/// `L(s, φ)` with only the monodromy-invariant line of each block contributing.
pub fn l_function(phi: &Parameter) -> Result<RationalFunction> {
    let mut l = RationalFunction::one();
    for (b, m) in phi.blocks() {
        let c = b
            .rho
            .as_unramified()
            .ok_or_else(|| Error::NotEvaluable(format!("L-factor of {b}")))?;
        let shift = Monomial::q_power(Q::new(-(b.a as i64 - 1), 2));
        l.push(&c.value() * &shift, -(*m as i64));
    }
    Ok(l)
}

/// `γ(1/2, φ, ψ) = ε(1/2, φ, ψ) · L(1/2, φ̌) / L(1/2, φ)`.
pub fn gamma_half(phi: &Parameter, psi: PsiConductor) -> Result<Scalar> {
    let half = Q::new(1, 2);
    let l = l_function(phi)?.eval_at_s(half);
    let l_dual = l_function(&phi.dual())?.eval_at_s(half);
    if l.has_pole() || l_dual.has_pole() {
        return Err(Error::PoleAtHalf);
    }
    let ratio = l_dual.div(&l);
    let value = ratio.to_scalar().ok_or_else(|| Error::GammaNotScalar(ratio.to_string()))?;
    Ok(&eps_half(phi, psi)? * &value)
}

/// `L` together with `γ(1/2)`.
pub fn l_and_gamma(phi: &Parameter, psi: PsiConductor) -> Result<(RationalFunction, Scalar)> {
    Ok((l_function(phi)?, gamma_half(phi, psi)?))
}

/// `γ(1/2, ρ ⊠ S(a), ψ)` for a single block.
pub fn gamma_half_block(block: &SimpleBlock, psi: PsiConductor) -> Result<Scalar> {
    let single = Parameter::normalize([(block.clone(), 1)])?;
    gamma_half(&single, psi)
}

/// `ε(1/2, φ^{s=−1}, ψ) = Π ε(1/2, φ_i, ψ)^{k_i}`.
///
/// A dual pair contributes `det(φ_j)(−1)^{k}`, and a `μ₂`-valued factor raised
/// to an even power contributes 1, so neither needs to be evaluated.
pub fn eps_minus_part(
    phi: &Parameter,
    s: &InvolutionSignature,
    psi: PsiConductor,
) -> Result<Scalar> {
    s.validate(phi)?;
    let (shape, _, _) = phi.component_data();
    let mut acc = Scalar::one();
    for (f, k) in shape.factors.iter().zip(&s.k) {
        let b = phi.block(f.block);
        let factor = match phi.class(f.block) {
            BlockClass::Pair(_) => {
                Scalar::from(b.rho.central_sign().pow(b.a as u64 * *k as u64))
            }
            _ if k % 2 == 0 => Scalar::one(),
            _ => eps_half_block(b, psi)?.pow(*k),
        };
        acc = &acc * &factor;
    }
    Ok(acc)
}

/// True if `L(s, φ)` has neither zero nor pole on `Re s > 0`.
pub fn l_regular_right_half_plane(l: &RationalFunction) -> bool {
    l.pole_real_parts().iter().chain(l.zero_real_parts().iter()).all(|re| *re <= Q::zero())
}
