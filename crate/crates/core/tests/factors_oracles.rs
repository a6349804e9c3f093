use metaplectic_core::endoscopy::{involutions, t_phi_s, Symbol};
use metaplectic_core::enumerate::{enumerate, EnumerateOptions};
use metaplectic_core::factors::*;
use metaplectic_core::group::Sign;
use metaplectic_core::params::*;
use metaplectic_core::scalar::{q, Monomial, Scalar};

fn block(c: UnramifiedCharacter, a: u32) -> SimpleBlock {
    unr_block(c, a)
}

#[test]
fn root_number_closed_form() {
    for psi in [PsiConductor::default(), PsiConductor::standard(1), PsiConductor::new(4, 1)] {
        for (c, z) in [(UnramifiedCharacter::trivial(), Sign::Plus), (UnramifiedCharacter::sgn(), Sign::Minus)] {
            for a in (2..=12).step_by(2) {
                let b = block(c, a);
                let eps = eps_half_block(&b, psi).unwrap();
                // (−z)^{a−1} = −z for even a
                assert_eq!(eps, Scalar::from(-z.pow(a as u64 - 1)));
                assert_eq!(eps, Scalar::from(-z));
                let gamma = gamma_half_block(&b, psi).unwrap();
                assert_eq!(gamma.inv().unwrap(), eps, "{b}");
            }
        }
    }
}

#[test]
fn gamma_path_for_other_symplectic_blocks() {
    let psi = PsiConductor::default();
    for rot in [q(0, 1), q(1, 2)] {
        for a in (2..=12).step_by(2) {
            let b = block(UnramifiedCharacter::new(rot, q(0, 1)), a);
            assert_eq!(gamma_half_block(&b, psi).unwrap().inv().unwrap(), eps_half_block(&b, psi).unwrap());
        }
    }
}

#[test]
fn eps_is_multiplicative_and_l_is_regular() {
    let opts = EnumerateOptions {
        phases: vec![q(0, 1), q(1, 4), q(1, 2), q(3, 4)],
        exponents: vec![q(0, 1), q(1, 2)],
        ..EnumerateOptions::default()
    };
    let psi = PsiConductor::default();
    for n in 0..=3 {
        for phi in enumerate(n, &opts).unwrap() {
            let mut prod = Scalar::one();
            for (b, m) in phi.blocks() {
                prod = &prod * &eps_half_block(b, psi).unwrap().pow(*m);
            }
            assert_eq!(eps_half(&phi, psi).unwrap(), prod, "{phi}");
            if phi.is_bounded() {
                let l = l_function(&phi).unwrap();
                assert!(l_regular_right_half_plane(&l), "{phi}: {l}");
            }
        }
    }
}

#[test]
fn l_function_example() {
    let phi = Parameter::normalize([(block(UnramifiedCharacter::trivial(), 2), 1)]).unwrap();
    assert_eq!(l_function(&phi).unwrap().to_string(), "(1 - q^(-1/2) X)^-1");
    let unbounded = Parameter::normalize([
        (block(UnramifiedCharacter::new(q(0, 1), q(1, 1)), 1), 1),
        (block(UnramifiedCharacter::new(q(0, 1), q(-1, 1)), 1), 1),
    ])
    .unwrap();
    assert!(!l_regular_right_half_plane(&l_function(&unbounded).unwrap()));
}

#[test]
fn nu_examples() {
    let phi = Parameter::normalize([
        (block(UnramifiedCharacter::trivial(), 2), 1),
        (block(UnramifiedCharacter::sgn(), 2), 1),
    ])
    .unwrap();
    assert_eq!(nu_char(&phi, PsiConductor::default()).unwrap().to_string(), "-,+");
}

#[test]
fn eps_equals_nu_on_involutions() {
    let psi = PsiConductor::default();
    let mut checked = 0;
    for n in 0..=4 {
        for phi in enumerate(n, &EnumerateOptions::default()).unwrap() {
            if !phi.is_good_parity() {
                continue;
            }
            let nu = nu_char(&phi, psi).unwrap();
            for (s, x) in involutions(&phi) {
                let eps = eps_minus_part(&phi, &s, psi).unwrap();
                assert_eq!(eps, Scalar::from(nu.eval(&x)), "{phi} {s}");
                let t = t_phi_s(&phi, &s, psi).unwrap();
                let (sym, c) = t.terms().next().unwrap();
                assert!(matches!(sym, Symbol::StableTransfer(..)));
                assert_eq!(*c, q(nu.eval(&x).to_i64(), 1));
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn eps_of_non_quadratic_blocks() {
    let psi = PsiConductor::new(1, 0);
    let b = block(UnramifiedCharacter::new(q(1, 4), q(0, 1)), 1);
    // χ(ϖ)^d with χ(ϖ) = i
    assert_eq!(eps_half_block(&b, psi).unwrap(), Scalar::from(Monomial::new(2, q(0, 1))));
}
