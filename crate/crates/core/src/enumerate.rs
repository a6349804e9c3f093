//! Exhaustive enumeration of inertia-trivial parameters of a given rank.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::Character;
use crate::params::{EnhancedParameter, Label, Parameter, SimpleBlock, UnramifiedCharacter};
use crate::scalar::Q;

pub const MAX_RANK: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub discrete_only: bool,
    pub bounded_only: bool,
    /// Phases `rot` of `χ(ϖ)`, a subset of `{0, 1/2, 1/4, 3/4}`.
    pub phases: Vec<Q>,
    /// Exponents `texp`; the set is closed under negation before use.
    pub exponents: Vec<Q>,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        Self {
            discrete_only: false,
            bounded_only: false,
            phases: vec![Q::zero(), Q::new(1, 2)],
            exponents: vec![Q::zero()],
        }
    }
}

impl EnumerateOptions {
    pub fn discrete() -> Self {
        Self { discrete_only: true, ..Self::default() }
    }
}

fn block_types(n: u32, opts: &EnumerateOptions) -> Vec<SimpleBlock> {
    let mut exps: BTreeSet<Q> = BTreeSet::new();
    for e in &opts.exponents {
        exps.insert(*e);
        exps.insert(-*e);
    }
    let phases: BTreeSet<Q> = opts.phases.iter().copied().collect();
    let mut out = Vec::new();
    for rot in &phases {
        for t in &exps {
            for a in 1..=2 * n {
                out.push(SimpleBlock::new(Label::Unramified(UnramifiedCharacter::new(*rot, *t)), a));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn multisets(
    types: &[SimpleBlock],
    start: usize,
    remaining: u32,
    current: &mut Vec<(SimpleBlock, u32)>,
    out: &mut Vec<Vec<(SimpleBlock, u32)>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for idx in start..types.len() {
        let d = types[idx].dim();
        for m in 1..=remaining / d {
            current.push((types[idx].clone(), m));
            multisets(types, idx + 1, remaining - m * d, current, out);
            current.pop();
        }
    }
}

/// All valid parameters of rank `n` built from the allowed block types.
pub fn enumerate(n: u32, opts: &EnumerateOptions) -> Result<Vec<Parameter>> {
    if n > MAX_RANK {
        return Err(Error::RankBound { rank: n, bound: MAX_RANK });
    }
    let types = block_types(n, opts);
    let mut raw = Vec::new();
    multisets(&types, 0, 2 * n, &mut Vec::new(), &mut raw);
    let mut out: Vec<Parameter> = raw
        .into_iter()
        .filter_map(|blocks| Parameter::normalize(blocks).ok())
        .filter(|p| !opts.discrete_only || p.is_discrete())
        .filter(|p| !opts.bounded_only || p.is_bounded())
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Every parameter crossed with every character of its component group.
pub fn enumerate_enhanced(n: u32, opts: &EnumerateOptions) -> Result<Vec<EnhancedParameter>> {
    Ok(enumerate(n, opts)?
        .into_iter()
        .flat_map(|p| {
            let chars: Vec<Character> = p.component_group().characters().collect();
            chars.into_iter().map(move |chi| EnhancedParameter { param: p.clone(), chi })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_counts() {
        let opts = EnumerateOptions::discrete();
        let counts: Vec<usize> = (1..=3).map(|n| enumerate(n, &opts).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 3, 6]);
    }

    #[test]
    fn rank_bound() {
        assert!(matches!(
            enumerate(MAX_RANK + 1, &EnumerateOptions::default()),
            Err(Error::RankBound { .. })
        ));
    }

    #[test]
    fn rank_zero_is_the_empty_parameter() {
        let all = enumerate(0, &EnumerateOptions::default()).unwrap();
        assert_eq!(all, vec![Parameter::empty()]);
    }
}
