//! The small varieties used as references: groups, Boolean algebras and the
//! pseudo-complemented 3-chain, each with its ternary difference term.

use super::finite::{boolean_algebra, cyclic_group, p_semilattice_chain3, FiniteAlgebra};
use super::term::Term;

#[derive(Debug, Clone)]
pub struct ReferenceCase {
    pub name: &'static str,
    pub algebra: FiniteAlgebra,
    pub g: Term,
    pub tau: Vec<Term>,
}

fn case(name: &'static str, algebra: FiniteAlgebra, term: &str) -> ReferenceCase {
    let tau = vec![Term::ternary(&algebra, term).expect("reference terms parse")];
    ReferenceCase {
        name,
        algebra,
        g: Term::identity(),
        tau,
    }
}

/// `Z2`, `Z3`, `Z4` with `(a - b) + z`; the two- and four-element Boolean
/// algebras with `(a ⊕ b) ⊕ z`.
pub fn reference_cases() -> Vec<ReferenceCase> {
    let group = "(add (add a (neg b)) z)";
    let xor = "(xor (xor a b) z)";
    vec![
        case("Z2", cyclic_group(2), group),
        case("Z3", cyclic_group(3), group),
        case("Z4", cyclic_group(4), group),
        case("B2", boolean_algebra(1), xor),
        case("B4", boolean_algebra(2), xor),
    ]
}

/// The 3-chain with `(a ⊕ b) ⊕ z`, `⊕` built from the pseudo complement.
pub fn p_semilattice_case() -> ReferenceCase {
    case("P3", p_semilattice_chain3(), "(xor (xor a b) z)")
}
