use metaplectic_core::correspondence::*;
use metaplectic_core::enumerate::{enumerate_enhanced, EnumerateOptions};
use metaplectic_core::factors::PsiConductor;
use metaplectic_core::group::{Character, Sign};
use metaplectic_core::params::*;
use metaplectic_core::scalar::q;
use metaplectic_core::Error;
use rayon::prelude::*;

fn enh(blocks: &[(UnramifiedCharacter, u32, u32)], chi: &str) -> EnhancedParameter {
    let p = Parameter::normalize(blocks.iter().map(|(c, a, m)| (unr_block(*c, *a), *m))).unwrap();
    EnhancedParameter::new(p, Character::parse(chi).unwrap()).unwrap()
}

#[test]
fn transfer_is_an_involution_and_side_coherent() {
    let opts = EnumerateOptions {
        phases: vec![q(0, 1), q(1, 4), q(1, 2), q(3, 4)],
        exponents: vec![q(0, 1), q(1, 2)],
        ..EnumerateOptions::default()
    };
    for psi in [PsiConductor::default(), PsiConductor::standard(1)] {
        for n in 0..=3 {
            for e in enumerate_enhanced(n, &opts).unwrap() {
                let so = tw_transfer(&e, psi, Direction::MpToSo).unwrap();
                assert_eq!(tw_transfer(&so, psi, Direction::SoToMp).unwrap(), e);
                let s = central_sign_and_sides(&e, psi).unwrap();
                assert_eq!(s.central_sign, s.so_side, "{e}");
            }
        }
    }
}

#[test]
fn base_table_matches_the_rank_one_description() {
    let table = base_table();
    let iwahori: Vec<_> = table
        .iter()
        .filter(|b| b.enhanced.param.rank() == 1 && b.side != BlockSide::Outside)
        .map(|b| (b.name, b.side))
        .collect();
    assert_eq!(
        iwahori,
        vec![("st(1)", BlockSide::Plus), ("st(sgn)", BlockSide::Plus), ("weil-odd", BlockSide::Minus)]
    );
    let psi = PsiConductor::default();
    for b in &table {
        let s = central_sign_and_sides(&b.enhanced, psi).unwrap();
        let expected = match b.name {
            "empty" | "st(1)" | "st(sgn)" => Some(Sign::Plus),
            "weil-odd" => Some(Sign::Minus),
            _ => None,
        };
        if let Some(sign) = expected {
            assert_eq!(s.central_sign, sign, "{}", b.name);
        }
    }
}

#[test]
fn pipeline_soundness_up_to_rank_four() {
    let psi = PsiConductor::default();
    let engine = Engine::new(psi);
    let mut agreed = 0;
    for n in 0..=4 {
        let all = enumerate_enhanced(n, &EnumerateOptions::default()).unwrap();
        let results: Vec<_> = all.par_iter().map(|e| (e, engine.verify_pipeline(e), engine.block_membership(e))).collect();
        for (e, report, membership) in results {
            let membership = membership.unwrap();
            let sides = central_sign_and_sides(e, psi).unwrap();
            match membership.side {
                BlockSide::Plus => assert_eq!(sides.central_sign, Sign::Plus, "{e}"),
                BlockSide::Minus => assert_eq!(sides.central_sign, Sign::Minus, "{e}"),
                BlockSide::Outside => {}
            }
            match report {
                Ok(r) => {
                    assert!(r.agreement, "{e}: derived {} closed {}", r.derived, r.closed_form);
                    assert!(r.path_independent, "{e}");
                    assert_eq!(r.side, membership.side);
                    agreed += 1;
                }
                Err(Error::OutsideBlock) => assert_eq!(membership.side, BlockSide::Outside, "{e}"),
                Err(err) => panic!("{e}: {err}"),
            }
        }
    }
    assert_eq!(agreed, 1 + 5 + 18 + 54 + 145);
}

#[test]
fn rank_two_discrete_classification() {
    let psi = PsiConductor::default();
    let triv = UnramifiedCharacter::trivial();
    let sgn = UnramifiedCharacter::sgn();
    let cases = [
        (enh(&[(triv, 4, 1)], "+"), BlockSide::Minus),
        (enh(&[(triv, 4, 1)], "-"), BlockSide::Plus),
        (enh(&[(sgn, 4, 1)], "+"), BlockSide::Plus),
        (enh(&[(sgn, 4, 1)], "-"), BlockSide::Outside),
        (enh(&[(triv, 2, 1), (sgn, 2, 1)], "+,+"), BlockSide::Minus),
        (enh(&[(triv, 2, 1), (sgn, 2, 1)], "-,+"), BlockSide::Plus),
        (enh(&[(triv, 2, 1), (sgn, 2, 1)], "+,-"), BlockSide::Outside),
        (enh(&[(triv, 2, 1), (sgn, 2, 1)], "-,-"), BlockSide::Outside),
    ];
    for (e, side) in cases {
        assert_eq!(block_membership(&e, psi).unwrap(), side, "{e}");
    }
}

#[test]
fn descent_then_lir_trace() {
    let triv = UnramifiedCharacter::trivial();
    let e = enh(&[(triv, 4, 1), (triv, 2, 1)], "+,+");
    let r = verify_pipeline(&e, PsiConductor::default()).unwrap();
    assert_eq!(r.tree.trace(), vec![Stage::Descent, Stage::Lir, Stage::Base]);
    let unbounded = enh(&[(UnramifiedCharacter::new(q(0, 1), q(1, 2)), 2, 1), (UnramifiedCharacter::new(q(0, 1), q(-1, 2)), 2, 1)], "");
    let r = verify_pipeline(&unbounded, PsiConductor::default()).unwrap();
    assert_eq!(r.tree.stage, Stage::Langlands);
    assert!(r.agreement);
}

#[test]
fn abstract_labels_are_not_evaluable() {
    let label = Label::Abstract(AbstractLabel {
        name: "tau".into(),
        dim: 2,
        duality: Duality::Symplectic,
        eps_half: Some(Sign::Minus),
        central_sign: Sign::Plus,
        frob_sign: None,
    });
    let p = Parameter::normalize([(SimpleBlock::new(label, 1), 1)]).unwrap();
    let e = EnhancedParameter::new(p, Character::parse("+").unwrap()).unwrap();
    assert!(matches!(block_membership(&e, PsiConductor::default()), Err(Error::NotEvaluable(_))));
}
