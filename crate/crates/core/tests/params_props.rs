use metaplectic_core::enumerate::{enumerate, EnumerateOptions};
use metaplectic_core::params::*;
use metaplectic_core::scalar::q;
use metaplectic_core::Error;
use proptest::prelude::*;

fn wide() -> EnumerateOptions {
    EnumerateOptions {
        phases: vec![q(0, 1), q(1, 4), q(1, 2), q(3, 4)],
        exponents: vec![q(0, 1), q(1, 2)],
        ..EnumerateOptions::default()
    }
}

#[test]
fn structural_invariants_over_enumeration() {
    for n in 0..=3 {
        for phi in enumerate(n, &wide()).unwrap() {
            assert_eq!(phi.dual(), phi, "{phi}");
            let g = phi.component_group();
            assert_eq!(g.order(), 1 << phi.plus_indices().len());
            let (shape, group, z) = phi.component_data();
            let orth: Vec<usize> = shape
                .factors
                .iter()
                .filter(|f| f.kind == FactorKind::Orthogonal)
                .map(|f| f.block)
                .collect();
            assert_eq!(group.basis, orth);
            for (k, i) in group.basis.iter().enumerate() {
                assert_eq!(z.get(k).is_minus(), phi.multiplicity(*i) % 2 == 1);
            }
            let f = phi.flags();
            if f.discrete {
                assert!(f.good_parity);
                assert!(phi.blocks().iter().all(|(_, m)| *m == 1));
            }
            if f.good_parity {
                assert!(f.bounded);
                assert!(phi.minus_indices().is_empty() && phi.pairs().is_empty());
            }
            let dim: u32 = phi.blocks().iter().map(|(b, m)| b.dim() * m).sum();
            assert_eq!(dim, 2 * n);
        }
    }
}

#[test]
fn canonical_order_and_display() {
    let p = Parameter::normalize([
        (unr_block(UnramifiedCharacter::sgn(), 2), 1),
        (unr_block(UnramifiedCharacter::trivial(), 2), 2),
    ])
    .unwrap();
    assert_eq!(p.to_string(), "2*[1 x S(2)] + [sgn x S(2)]");
    assert_eq!(p.rank(), 3);
    assert_eq!(Parameter::empty().to_string(), "0");
}

#[test]
fn validation_errors() {
    let triv = UnramifiedCharacter::trivial;
    let odd_orth = Parameter::normalize([(unr_block(triv(), 3), 1), (unr_block(triv(), 1), 1)]);
    assert!(matches!(odd_orth, Err(Error::OddOrthogonalMultiplicity { .. })));
    let even_orth = Parameter::normalize([(unr_block(triv(), 1), 2)]).unwrap();
    assert_eq!(even_orth.rank(), 1);
    let odd_dim = Parameter::normalize([(unr_block(triv(), 3), 2), (unr_block(triv(), 1), 1)]);
    assert!(odd_dim.is_err());
    let unpaired = Parameter::normalize([(unr_block(UnramifiedCharacter::new(q(1, 4), q(0, 1)), 1), 2)]);
    assert!(matches!(unpaired, Err(Error::UnpairedNonSelfDual { .. })));
    let bad_a = Parameter::normalize([(unr_block(triv(), 0), 1)]);
    assert!(matches!(bad_a, Err(Error::BadA(0))));
    let zero = Parameter::normalize([(unr_block(triv(), 2), 0)]);
    assert!(matches!(zero, Err(Error::ZeroMultiplicity)));
    let quarter = UnramifiedCharacter::new(q(1, 4), q(0, 1));
    let phase = Parameter::normalize_with_bound([(unr_block(quarter, 1), 1), (unr_block(quarter.dual(), 1), 1)], 2);
    assert!(matches!(phase, Err(Error::UnsupportedPhase { .. })));
}

fn block_strategy() -> impl Strategy<Value = (SimpleBlock, u32)> {
    (0usize..4, prop_oneof![Just(q(0, 1)), Just(q(1, 2)), Just(q(-1, 2))], 1u32..5, 1u32..3).prop_map(
        |(r, t, a, m)| {
            let rot = [q(0, 1), q(1, 4), q(1, 2), q(3, 4)][r];
            (unr_block(UnramifiedCharacter::new(rot, t), a), m)
        },
    )
}

proptest! {
    #[test]
    fn normalize_is_order_insensitive_and_idempotent(
        blocks in proptest::collection::vec(block_strategy(), 0..6),
        seed in any::<u64>(),
    ) {
        let mut shuffled = blocks.clone();
        let len = shuffled.len();
        if len > 1 {
            for i in 0..len {
                let j = (seed.rotate_left(i as u32 * 7) as usize) % len;
                shuffled.swap(i, j);
            }
        }
        let a = Parameter::normalize(blocks.clone());
        let b = Parameter::normalize(shuffled);
        prop_assert_eq!(a.is_ok(), b.is_ok());
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert_eq!(&a, &b);
            let again = Parameter::normalize(a.blocks().iter().cloned()).unwrap();
            prop_assert_eq!(&again, &a);
            let sorted: Vec<_> = a.blocks().iter().map(|(b, _)| b.clone()).collect();
            let mut check = sorted.clone();
            check.sort();
            check.dedup();
            prop_assert_eq!(check, sorted);
        }
    }
}
